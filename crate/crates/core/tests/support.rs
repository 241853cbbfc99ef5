use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use supvar::homvariety::tuple::random_valid_tuple;
use supvar::homvariety::{compose_endos, params_from_point, TargetFamily};
use supvar::support::cohom::{kg_cohomology, EndAction};
use supvar::support::p1::{betti_numbers, check_resolution, residue_field_presentation};
use supvar::support::sets::{automorphisms, pullback_along_endo, variety_params};
use supvar::support::*;
use supvar::{Fe, Fq};

fn f3() -> Fq {
    Fq::prime(3).unwrap()
}

fn random_p1(f: &Fq, seed: u64, m: usize, n: usize) -> GradedP1Module {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = random_valid_tuple(&mut rng, f, 1, m, n, 1).unwrap();
    let parity = (0..m + n).map(|i| (i >= m) as u8).collect();
    GradedP1Module::new(f, parity, t.alpha[0].clone(), t.beta.clone(), None).unwrap()
}

fn is_origin(pt: &[Fe]) -> bool {
    pt.iter().all(|&x| x == 0)
}

#[test]
fn residue_field_resolution_starts_u_v() {
    let f = f3();
    let cfg = SyzygyConfig::for_prime(3);
    let pres = residue_field_presentation(&f);
    assert_eq!(pres.columns.len(), 2);
    let step = syzygy_step(&f, &pres, 2, &cfg).unwrap();
    assert!(step.betti > 0);
    let steps = resolve_module(&GradedP1Module::trivial(&f, 1, 0), 5, &cfg).unwrap();
    let betti: Vec<usize> = steps.iter().map(|s| s.betti).collect();
    assert_eq!(betti, vec![1, 2, 2, 2, 2, 2]);
    assert_eq!(steps[1].matrix, vec![vec!["u".to_string(), "v".to_string()]]);
    assert!(check_resolution(&f, &steps).pass());
}

#[test]
fn quotient_by_v_has_a_free_first_syzygy() {
    let f = f3();
    let steps = resolve_module(&GradedP1Module::quotient_by_v(&f), 4, &SyzygyConfig::for_prime(3)).unwrap();
    let betti: Vec<usize> = steps.iter().map(|s| s.betti).collect();
    assert_eq!(betti, vec![1, 1, 0, 0, 0]);
}

#[test]
fn zero_module_has_empty_resolution() {
    let f = f3();
    let steps = resolve_module(&GradedP1Module::zero(&f), 3, &SyzygyConfig::for_prime(3)).unwrap();
    assert!(steps.iter().all(|s| s.betti == 0));
}

#[test]
fn id_decision_examples() {
    let f = f3();
    let k = id_infinite(&GradedP1Module::trivial(&f, 1, 0)).unwrap();
    assert!(k.infinite && k.agree() && k.periodic);
    let q = id_infinite(&GradedP1Module::quotient_by_v(&f)).unwrap();
    assert!(!q.infinite && q.agree());
    assert!(!id_infinite(&GradedP1Module::zero(&f)).unwrap().infinite);
}

#[test]
fn graded_resolution_matches_tor() {
    for q in [3, 5] {
        let f = Fq::prime(q).unwrap();
        let cfg = SyzygyConfig::for_prime(q);
        let mut mods = vec![GradedP1Module::trivial(&f, 1, 0), GradedP1Module::quotient_by_v(&f)];
        for j in 1..=q as usize + 2 {
            mods.push(GradedP1Module::quotient_by_u_power(&f, j).unwrap());
        }
        mods.push(mods[0].direct_sum(&mods[3]));
        for m in &mods {
            let steps = resolve_module(m, 5, &cfg).unwrap();
            assert!(check_resolution(&f, &steps).pass());
            let graded: Vec<usize> = steps.iter().map(|s| s.betti).collect();
            assert_eq!(graded, betti_numbers(m, 5).unwrap(), "dim {}", m.dim());
        }
    }
}

#[test]
fn pullback_examples() {
    let f = f3();
    let fam = TargetFamily::mr1(1);
    let reg = battery_module(&fam, "regular", &f).unwrap().module;
    let m = pullback_module(&params_from_point(&fam, &[0, 0]), &reg, &f).unwrap();
    assert!(m.alpha.is_zero() && m.beta.is_zero());
    // (1,1): u and v act by left multiplication
    let m = pullback_module(&params_from_point(&fam, &[1, 1]), &reg, &f).unwrap();
    let t = reg.tuple();
    assert_eq!(m.alpha, t.alpha[0]);
    assert_eq!(m.beta, t.beta);
    let m = pullback_module(&params_from_point(&fam, &[0, 1]), &reg, &f).unwrap();
    assert!(m.beta.is_zero() && !m.alpha.is_zero());
}

#[test]
fn support_set_examples() {
    let f = f3();
    for fam in battery_families() {
        let k = battery_module(&fam, "trivial", &f).unwrap();
        let rep = support_set(&fam, &k.module, "k", &f).unwrap();
        assert!(rep.non_members.is_empty(), "{}", fam.label());
        let reg = battery_module(&fam, "regular", &f).unwrap();
        let rep = support_set(&fam, &reg.module, "regular", &f).unwrap();
        assert_eq!(rep.members.len(), 1, "{}", fam.label());
        assert!(is_origin(&rep.members[0]));
        assert!(rep.cross_validated());
    }
}

#[test]
fn free_pullback_point_is_not_a_member() {
    // P₁/⟨v⟩ over M_{1;1} pulls back along (1,1) to itself, which has a
    // length-one resolution
    let f = f3();
    let fam = TargetFamily::mr1(1);
    let j = battery_module(&fam, "jordan", &f).unwrap();
    let rep = support_set(&fam, &j.module, "jordan", &f).unwrap();
    assert!(rep.non_members.contains(&vec![1, 1]));
}

#[test]
fn kg_transport_verifies() {
    for f in [f3(), Fq::new(3, 2).unwrap()] {
        for fam in battery_families() {
            let h = kg_cohomology(&fam, &f, 6).unwrap();
            let rep = h.verify().unwrap();
            assert!(rep.pass(), "{}: {:?}", fam.label(), rep.first_failure());
        }
    }
}

#[test]
fn end_action_is_a_module() {
    let f = f3();
    for fam in battery_families() {
        for b in battery(&fam, &f).unwrap().into_iter().filter(|b| b.dim() <= 6) {
            let rep = EndAction::new(&b.module).check(b.module.group());
            assert!(rep.pass(), "{} {}: {:?}", fam.label(), b.name, rep.first_failure());
        }
    }
}

#[test]
fn cohomological_support_examples() {
    let f = f3();
    let fam = TargetFamily::mr1(1);
    let all = variety_params(&fam, &f).unwrap().len();
    let k = battery_module(&fam, "trivial", &f).unwrap();
    let s = cohomological_support(&fam, &k.module, &f, 4).unwrap();
    assert!(s.ideal.is_empty());
    assert_eq!(s.points.len(), all);
    let reg = battery_module(&fam, "regular", &f).unwrap();
    let s = cohomological_support(&fam, &reg.module, &f, 4).unwrap();
    assert_eq!(s.points.len(), 1);
    assert!(is_origin(&s.points[0]));
}

#[test]
fn compare_examples() {
    let f = f3();
    let m11 = TargetFamily::mr1(1);
    let k = battery_module(&m11, "trivial", &f).unwrap();
    let rep = compare_supports(&m11, &k.module, "k", &f, 6).unwrap();
    assert_eq!(rep.status, CompareStatus::Pass);
    let m12 = TargetFamily::mrs(1, 2);
    let reg = battery_module(&m12, "regular", &f).unwrap();
    let rep = compare_supports(&m12, &reg.module, "regular", &f, 6).unwrap();
    assert_eq!(rep.status, CompareStatus::Pass);
    assert_eq!(rep.cohomological.len(), 1);
    let j = battery_module(&m12, "jordan", &f).unwrap();
    let rep = compare_supports(&m12, &j.module, "jordan", &f, 6).unwrap();
    assert_eq!(rep.status, CompareStatus::Pass);
    assert!(rep.cohomological.len() > 1);
    assert!(rep.cohomological.len() < rep.support.members.len() + rep.support.non_members.len());
}

#[test]
fn compare_passes_on_battery_f3() {
    let f = f3();
    for fam in battery_families() {
        for b in battery(&fam, &f).unwrap() {
            let rep = compare_supports(&fam, &b.module, &b.descriptor(), &f, 6).unwrap();
            assert_eq!(rep.status, CompareStatus::Pass, "{} {}", fam.label(), b.name);
            assert!(rep.support.cross_validated());
        }
    }
}

#[test]
fn compare_passes_on_battery_f9() {
    let f = Fq::new(3, 2).unwrap();
    for fam in battery_families() {
        for b in battery(&fam, &f).unwrap().into_iter().filter(|b| b.dim() <= 6) {
            let rep = compare_supports(&fam, &b.module, &b.descriptor(), &f, 6).unwrap();
            assert_eq!(rep.status, CompareStatus::Pass, "{} {}", fam.label(), b.name);
        }
    }
}

#[test]
fn battery_cross_validates_and_is_periodic() {
    let f = f3();
    let mut small = 0;
    for fam in battery_families() {
        for b in battery(&fam, &f).unwrap() {
            small += (b.dim() <= 6) as usize;
            let rep = support_set(&fam, &b.module, &b.descriptor(), &f).unwrap();
            for c in &rep.certificates {
                assert!(c.decision.agree(), "{} {} at {:?}", fam.label(), b.name, c.point);
                if c.decision.infinite {
                    assert!(c.decision.periodic, "{} {} at {:?}: {:?}", fam.label(), b.name, c.point, c.decision.betti);
                }
            }
        }
    }
    assert!(small >= 12);
}

#[test]
fn id_is_preserved_by_end() {
    let f = f3();
    for fam in battery_families() {
        for b in battery(&fam, &f).unwrap().into_iter().filter(|b| b.dim() <= 4) {
            for phi in variety_params(&fam, &f).unwrap() {
                let m = pullback_module(&phi, &b.module, &f).unwrap();
                let e = m.tensor(&m.dual().unwrap()).unwrap();
                assert_eq!(
                    id_infinite(&m).unwrap().infinite,
                    id_infinite(&e).unwrap().infinite,
                    "{} {} at {:?}",
                    fam.label(),
                    b.name,
                    phi.coords()
                );
            }
        }
    }
}

#[test]
fn support_is_equivariant() {
    let f = f3();
    for fam in battery_families() {
        let points = variety_params(&fam, &f).unwrap();
        for b in battery(&fam, &f).unwrap().into_iter().filter(|b| b.dim() <= 6) {
            let base = support_set(&fam, &b.module, "", &f).unwrap();
            for nu in automorphisms(&fam, &f).unwrap() {
                let twisted = pullback_along_endo(&nu, &b.module, &f).unwrap();
                let rep = support_set(&fam, &twisted, "", &f).unwrap();
                for phi in &points {
                    let moved = compose_endos(phi, &nu, &f).unwrap().coords();
                    assert_eq!(
                        rep.members.contains(&phi.coords()),
                        base.members.contains(&moved),
                        "{} {} ν = {:?} φ = {:?}",
                        fam.label(),
                        b.name,
                        nu.coords(),
                        phi.coords()
                    );
                }
            }
        }
    }
}

#[test]
fn orbit_examples() {
    let f = f3();
    let rep = aut_orbits(&TargetFamily::gaminus(), &f).unwrap();
    assert_eq!(rep.orbits, vec![vec![vec![0]], vec![vec![1], vec![2]]]);
    for fam in battery_families() {
        let rep = aut_orbits(&fam, &f).unwrap();
        let zero = rep.orbits.iter().find(|o| o.iter().any(|p| is_origin(p))).unwrap();
        assert_eq!(zero.len(), 1, "{}", fam.label());
        assert_eq!(rep.counts.iter().sum::<usize>(), variety_params(&fam, &f).unwrap().len());
    }
    let rep = aut_orbits(&TargetFamily::mrs(1, 2), &f).unwrap();
    let has = |pt: Vec<Fe>| rep.orbits.iter().any(|o| o.contains(&pt));
    assert!(has(vec![1, 1, 0]) && has(vec![0, 0, 1]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn betti_numbers_are_eventually_two_periodic(seed in any::<u64>(), m in 1usize..3, n in 1usize..3) {
        let f = f3();
        let d = id_infinite(&random_p1(&f, seed, m, n)).unwrap();
        prop_assert!(d.periodic, "{:?}", d.betti);
        prop_assert!(d.agree());
    }

    #[test]
    fn id_of_direct_sum_is_the_max(s1 in any::<u64>(), s2 in any::<u64>()) {
        let f = f3();
        let a = random_p1(&f, s1, 1, 1);
        let b = if s2 % 3 == 0 { GradedP1Module::quotient_by_v(&f) } else { random_p1(&f, s2, 2, 1) };
        let sum = id_infinite(&a.direct_sum(&b)).unwrap().infinite;
        prop_assert_eq!(sum, id_infinite(&a).unwrap().infinite || id_infinite(&b).unwrap().infinite);
    }

    #[test]
    fn id_of_end_matches(seed in any::<u64>(), m in 1usize..3, n in 1usize..3) {
        let f = f3();
        let a = random_p1(&f, seed, m, n);
        let e = a.tensor(&a.dual().unwrap()).unwrap();
        prop_assert_eq!(id_infinite(&a).unwrap().infinite, id_infinite(&e).unwrap().infinite);
    }
}
