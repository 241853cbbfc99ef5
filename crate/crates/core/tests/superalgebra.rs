use proptest::prelude::*;
use supvar::superalgebra::{
    build_coordinate_hopf, build_gar_pair, build_group_hopf, build_group_pair, duality_check, verify_hopf_axioms,
    CoordFamily, FinDimHopf, PPolynomial,
};
use supvar::{Fe, Fq};

fn f3() -> Fq {
    Fq::prime(3).unwrap()
}

/// (family, r, s, η) for every coordinate algebra with p = 3, r, s ≤ 2.
fn coordinate_cases() -> Vec<(CoordFamily, u32, u32, Fe)> {
    let mut v = vec![(CoordFamily::Gaminus, 1, 1, 0)];
    for r in 1..=2 {
        v.push((CoordFamily::Gar, r, 1, 0));
        for s in 1..=2 {
            v.push((CoordFamily::Mrs, r, s, 0));
            if r >= 2 {
                v.push((CoordFamily::MrsEta, r, s, 1));
                v.push((CoordFamily::MrsEta, r, s, 2));
            }
        }
    }
    v
}

#[test]
fn coordinate_algebras_pass() {
    let f = f3();
    for (c, r, s, eta) in coordinate_cases() {
        let h = build_coordinate_hopf(c, r, s, eta, &f).unwrap();
        let rep = verify_hopf_axioms(&h);
        assert_eq!(rep.checks.len(), 5);
        assert!(rep.pass(), "{c:?} {r} {s} {eta}: {:?}", rep.first_failure());
    }
}

#[test]
fn group_algebras_pass_and_pair() {
    let f = f3();
    for r in 1..=2 {
        for s in 1..=2 {
            for eta in 0..=2 {
                if r == 1 && eta != 0 {
                    continue;
                }
                let dp = build_group_pair(r, &PPolynomial::monomial(1, s), eta, &f).unwrap();
                let rep = verify_hopf_axioms(&dp.group);
                assert!(rep.pass(), "{r} {s} {eta}: {:?}", rep.first_failure());
                let d = duality_check(&dp.coord, &dp.group, &dp.pairing).unwrap();
                assert!(d.pass(), "{r} {s} {eta}: {:?}", d.first_failure());
            }
        }
    }
}

#[test]
fn basis_dimensions() {
    let f = f3();
    let m11 = build_coordinate_hopf(CoordFamily::Mrs, 1, 1, 0, &f).unwrap();
    assert_eq!(m11.dim(), 6);
    let lam = build_coordinate_hopf(CoordFamily::Gaminus, 1, 1, 0, &f).unwrap();
    assert_eq!(lam.dim(), 2);
    assert_eq!(lam.parity(1), 1);
    assert_eq!(build_coordinate_hopf(CoordFamily::Gar, 2, 1, 0, &f).unwrap().dim(), 9);
    assert_eq!(build_group_hopf(1, &PPolynomial::monomial(1, 1), 0, &f).unwrap().dim(), 6);
    assert_eq!(build_group_hopf(2, &PPolynomial::monomial(1, 1), 1, &f).unwrap().dim(), 18);
    assert_eq!(build_group_hopf(1, &PPolynomial::monomial(1, 2), 0, &f).unwrap().dim(), 18);
    assert!(verify_hopf_axioms(&build_group_hopf(2, &PPolynomial::monomial(1, 1), 2, &f).unwrap()).pass());
}

#[test]
fn invalid_inputs() {
    let f = f3();
    assert!(build_coordinate_hopf(CoordFamily::MrsEta, 1, 1, 1, &f).is_err());
    assert!(PPolynomial::from_dense(&f, &[1, 0, 0, 1]).is_err());
    assert!(build_group_hopf(1, &PPolynomial { coeffs: vec![0, 0] }, 0, &f).is_err());
}

#[test]
fn gar_pairs_over_f9() {
    let f = Fq::of_order(9).unwrap();
    for r in 1..=2 {
        let dp = build_gar_pair(r, &f).unwrap();
        assert!(verify_hopf_axioms(&dp.group).pass());
        assert!(duality_check(&dp.coord, &dp.group, &dp.pairing).unwrap().pass());
    }
}

#[test]
fn corrupted_comult_is_caught() {
    let f = f3();
    let mut h = build_coordinate_hopf(CoordFamily::Mrs, 1, 2, 0, &f).unwrap();
    assert!(verify_hopf_axioms(&h).pass());
    let i = h.index_of("σ1").unwrap();
    // drop one term of Δ(σ1)
    h.comult[i].pop();
    let rep = verify_hopf_axioms(&h);
    let bad = rep.first_failure().expect("defect detected");
    assert!(bad.witness.is_some());
}

#[test]
fn corrupted_pairing_is_caught() {
    let f = f3();
    let mut dp = build_group_pair(1, &PPolynomial::monomial(1, 1), 0, &f).unwrap();
    let x = dp.pairing.get(1, 1);
    dp.pairing.set(1, 1, f.add(x, 1));
    assert!(!duality_check(&dp.coord, &dp.group, &dp.pairing).unwrap().pass());
}

fn element(h: &FinDimHopf, seed: &[u32]) -> Vec<Fe> {
    (0..h.dim()).map(|i| (seed[i % seed.len()] % h.field.q()) as Fe).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn products_and_coproducts(case in 0usize..13, a in prop::collection::vec(any::<u32>(), 1..20), b in prop::collection::vec(any::<u32>(), 1..20), c in prop::collection::vec(any::<u32>(), 1..20)) {
        let f = f3();
        let cases = coordinate_cases();
        let (fam, r, s, eta) = cases[case % cases.len()];
        let h = build_coordinate_hopf(fam, r, s, eta, &f).unwrap();
        let (a, b, c) = (element(&h, &a), element(&h, &b), element(&h, &c));
        prop_assert_eq!(h.mul(&h.mul(&a, &b), &c), h.mul(&a, &h.mul(&b, &c)));
        prop_assert_eq!(h.mul(&h.unit, &a), a.clone());
        // Δ and ε are algebra maps (the tensor product carries Koszul signs)
        let lhs = h.comult_vec(&h.mul(&a, &b));
        let rhs = h.tensor_mul(&h.comult_vec(&a), &h.comult_vec(&b));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(h.counit_of(&h.mul(&a, &b)), f.mul(h.counit_of(&a), h.counit_of(&b)));
    }
}
