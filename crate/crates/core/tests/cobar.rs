use std::time::Instant;

use supvar::cohomology::{CobarComplex, Cochain};
use supvar::homvariety::TargetFamily;
use supvar::Fq;

fn complex(fam: TargetFamily, q: u32, n_max: usize) -> CobarComplex {
    let f = Fq::of_order(q).unwrap();
    CobarComplex::new(fam.coordinate_algebra(&f).unwrap(), n_max).unwrap()
}

fn dims(c: &CobarComplex, n_max: usize) -> Vec<usize> {
    (0..=n_max).map(|n| c.cohomology(n, false).unwrap().dim).collect()
}

#[test]
fn d_squared_vanishes() {
    for fam in [
        TargetFamily::gaminus(),
        TargetFamily::gar(1),
        TargetFamily::gar(2),
        TargetFamily::mr1(1),
        TargetFamily::mrs(1, 2),
        TargetFamily::mrs_eta(2, 1, 1),
    ] {
        let c = complex(fam, 3, 3);
        assert!(c.check_d_squared().unwrap().pass(), "{}", fam.label());
    }
}

#[test]
fn small_dimensions() {
    assert_eq!(dims(&complex(TargetFamily::gaminus(), 3, 4), 4), vec![1; 5]);
    assert_eq!(dims(&complex(TargetFamily::gar(1), 3, 2), 2)[2], 1);
    assert_eq!(dims(&complex(TargetFamily::mr1(1), 3, 4), 4), vec![1, 2, 3, 4, 5]);
}

#[test]
fn timing_m12() {
    let c = complex(TargetFamily::mrs(1, 2), 3, 4);
    let t = Instant::now();
    let d = dims(&c, 4);
    eprintln!("M12 dims {:?} in {:?}", d, t.elapsed());
    let c = complex(TargetFamily::gar(2), 3, 4);
    let t = Instant::now();
    let d = dims(&c, 4);
    eprintln!("Ga2 dims {:?} in {:?}", d, t.elapsed());
}

#[test]
fn cochain_cup_is_concatenation() {
    let f = Fq::prime(3).unwrap();
    let mut a = Cochain::zero(1);
    a.add_term(&f, vec![1], 2);
    let b = a.cup(&f, &a);
    assert_eq!(b.terms.get(&vec![1, 1]), Some(&1));
}
