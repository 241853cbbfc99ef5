use supvar::cohomology::psi::check_psi_degrees;
use supvar::cohomology::{
    family_cohomology, naturality_check, psi_map, psi_point_check, psi_point_map, verify_psi_properties,
};
use supvar::homvariety::{classify_homs, HomParams, TargetFamily};
use supvar::Fq;

fn elementary() -> Vec<TargetFamily> {
    let mut v = vec![TargetFamily::gaminus()];
    for r in 1..=2 {
        v.push(TargetFamily::gar(r));
        v.push(TargetFamily::mr1(r));
        v.push(TargetFamily::mrs(r, 2));
    }
    v.push(TargetFamily::mrs_eta(2, 1, 1));
    v.push(TargetFamily::mrs_eta(2, 2, 2));
    v
}

#[test]
fn psi_examples() {
    let f = Fq::prime(3).unwrap();
    let psi = psi_map(&TargetFamily::mr1(2), &f).unwrap();
    let img = |name: &str| psi.target.format(&psi.images[psi.source.gen_index(name).unwrap()]);
    assert_eq!(img("y"), "mu");
    assert_eq!(img("x1"), "a1^3");
    assert_eq!(img("x2"), "a0^9");

    let psi = psi_map(&TargetFamily::mrs(1, 2), &f).unwrap();
    assert_eq!(psi.target.format(&psi.images[psi.source.gen_index("w").unwrap()]), "b2^3");

    let psi = psi_map(&TargetFamily::mrs_eta(2, 1, 1), &f).unwrap();
    assert_eq!(psi.target.format(&psi.images[psi.source.gen_index("w").unwrap()]), "2*a1^3");
}

#[test]
fn degrees_and_properties() {
    for q in [3, 9] {
        let f = Fq::of_order(q).unwrap();
        for fam in elementary() {
            let psi = psi_map(&fam, &f).unwrap();
            let pr = 3u64.pow(fam.r);
            assert!(check_psi_degrees(&psi, pr as i64).pass(), "{}", fam.label());
            let props = verify_psi_properties(&psi, pr, 6).unwrap();
            assert!(props.kernel_nilpotent && props.pr_power_surjective, "{}: {:?}", fam.label(), props.failures);
            let pm = psi_point_map(&fam, &f).unwrap();
            assert!(pm.bijective(), "{} over F_{q}: {:?}", fam.label(), pm);
        }
    }
}

#[test]
fn m12_kernel_is_zero_in_low_degree() {
    let f = Fq::prime(3).unwrap();
    let psi = psi_map(&TargetFamily::mrs(1, 2), &f).unwrap();
    let props = verify_psi_properties(&psi, 3, 4).unwrap();
    assert!(props.kernel_elements.is_empty());
}

#[test]
fn point_check_all_r1_params() {
    let f = Fq::prime(3).unwrap();
    for fam in [TargetFamily::gaminus(), TargetFamily::gar(1), TargetFamily::mr1(1), TargetFamily::mrs(1, 2)] {
        let h = family_cohomology(&fam, &f).unwrap();
        let mut classes = Vec::new();
        for z in ["y", "x1", "w", "y*w"] {
            if z.split('*').all(|g| h.ring.gen_index(g).is_some()) {
                classes.push(h.ring.parse(z).unwrap());
            }
        }
        if fam == TargetFamily::mr1(1) {
            classes.push(h.ring.parse("x1 - y^2").unwrap());
            classes.push(h.ring.parse("y*x1 - y^3").unwrap());
        }
        for p in classify_homs(&fam, &f, true).unwrap().params.unwrap() {
            for z in &classes {
                let rep = psi_point_check(&p, z, &f).unwrap();
                assert!(rep.pass(), "{} {:?} {}: {:?}", fam.label(), p.coords(), h.ring.format(z), rep.first_failure());
            }
        }
    }
    let fam = TargetFamily::mrs(1, 2);
    let w = family_cohomology(&fam, &f).unwrap().ring.parse("w").unwrap();
    assert!(psi_point_check(&HomParams::zero(fam), &w, &f).unwrap().pass());
}

#[test]
fn naturality_along_quotients() {
    for q in [3, 9] {
        let f = Fq::of_order(q).unwrap();
        for from in [TargetFamily::mr1(1), TargetFamily::mr1(2), TargetFamily::mrs(1, 2), TargetFamily::mrs(2, 2)] {
            let mut tos = vec![from, TargetFamily::gar(from.r), TargetFamily::gaminus()];
            if from.s > 1 {
                tos.push(TargetFamily::mr1(from.r));
            }
            for to in tos {
                let rep = naturality_check(&from, &to, &f).unwrap();
                assert!(rep.pass(), "{} -> {}: {:?}", from.label(), to.label(), rep.first_failure());
            }
        }
    }
}

#[test]
fn kernel_contains_exterior_products() {
    let f = Fq::prime(3).unwrap();
    let psi = psi_map(&TargetFamily::mrs(2, 2), &f).unwrap();
    let props = verify_psi_properties(&psi, 9, 3).unwrap();
    assert!(props.kernel_elements.iter().any(|s| s == "lambda1*lambda2"), "{:?}", props.kernel_elements);
    assert!(props.exhibits.contains(&"a0^9 = psi(x2)^1".to_string()), "{:?}", props.exhibits);
    assert!(props.exhibits.contains(&"a1^9 = psi(x1)^3".to_string()), "{:?}", props.exhibits);
}

#[test]
fn point_check_detects_wrong_class() {
    // x1 restricts to a0^3·y² but ψ(y²)(φ) = μ²; they differ when μ² != a0^3
    let f = Fq::prime(3).unwrap();
    let fam = TargetFamily::mr1(1);
    let h = family_cohomology(&fam, &f).unwrap();
    let p = HomParams::new(fam, Some(0), vec![1], None);
    let x1 = h.ring.parse("x1").unwrap();
    let y2 = h.ring.parse("y^2").unwrap();
    assert!(psi_point_check(&p, &x1, &f).unwrap().pass());
    assert!(psi_point_check(&p, &y2, &f).unwrap().pass());
    let psi = psi_map(&fam, &f).unwrap();
    assert_ne!(supvar::cohomology::psi::psi_value(&psi, &x1, &p), supvar::cohomology::psi::psi_value(&psi, &y2, &p));
}
