use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use supvar::homvariety::tuple::*;
use supvar::homvariety::{comorphism_from_params, HomParams, TargetFamily};
use supvar::superalgebra::cache::ambient;
use supvar::{Fq, Matrix};

fn jordan(f: &Fq, n: usize, shift: usize) -> Matrix {
    let mut j = Matrix::zeros(f, 2 * n, 2 * n);
    for k in 0..n - 1 {
        j.set(shift + k, shift + k + 1, 1);
    }
    j
}

/// α = J_3 ⊕ J_3 on k^{3|3}, β = (0, J², J, 0) so that β² = 0 = −α³.
fn jordan_pair(f: &Fq) -> SuperMatrixTuple {
    let alpha = jordan(f, 3, 0).add(&jordan(f, 3, 3)).unwrap();
    let mut beta = Matrix::zeros(f, 6, 6);
    beta.set(0, 5, 1);
    for k in 0..2 {
        beta.set(3 + k, k + 1, 1);
    }
    SuperMatrixTuple { m: 3, n: 3, alpha: vec![alpha], beta }
}

#[test]
fn example_tuples_validate() {
    let f = Fq::prime(3).unwrap();
    let mut t = SuperMatrixTuple::zero(&f, 1, 1, 1);
    t.beta.set(0, 1, 1);
    assert!(validate_tuple(&t).pass());

    let t = jordan_pair(&f);
    assert!(t.beta.mul(&t.beta).unwrap().is_zero());
    assert!(validate_tuple(&t).pass(), "{:?}", validate_tuple(&t));
    assert!(check_module(&t, 1));

    for r in 1..=2 {
        let mut bad = SuperMatrixTuple::zero(&f, r, 2, 0);
        bad.alpha[r - 1] = Matrix::identity(&f, 2);
        let rep = validate_tuple(&bad);
        let c = rep.first_failure().unwrap();
        assert!(rep.checks.iter().any(|c| c.name == "alpha_last_nilpotent" && !c.pass));
        assert!(c.witness.is_some());
    }
}

fn check_module(t: &SuperMatrixTuple, s: u32) -> bool {
    let m = module_from_tuple(t, s).unwrap();
    m.check().pass()
}

#[test]
fn module_needs_truncation_bound() {
    // α = J_4 ⊕ J_4 on k^{4|4}, β = (0, 1; −J³, 0): α³ = −β² != 0 = α⁴
    let f = Fq::prime(3).unwrap();
    let alpha = jordan(&f, 4, 0).add(&jordan(&f, 4, 4)).unwrap();
    let mut beta = Matrix::zeros(&f, 8, 8);
    for k in 0..4 {
        beta.set(k, 4 + k, 1);
    }
    beta.set(4, 3, f.neg(1));
    let t = SuperMatrixTuple { m: 4, n: 4, alpha: vec![alpha], beta };
    assert!(validate_tuple(&t).pass(), "{:?}", validate_tuple(&t));
    assert!(!check_module(&t, 1));
    assert!(check_module(&t, 2));
    assert!(comodule_from_tuple(&t, 1).is_err());
    let c = comodule_from_tuple(&t, 2).unwrap();
    assert!(check_comodule_axioms(&c, &ambient(1, 2, &f).unwrap()).pass());
}

#[test]
fn invalid_tuple_gives_bad_module() {
    let f = Fq::prime(3).unwrap();
    let mut t = SuperMatrixTuple::zero(&f, 1, 1, 1);
    t.beta.set(0, 1, 1);
    t.beta.set(1, 0, 1);
    assert!(!validate_tuple(&t).pass());
    assert!(!check_module(&t, 1));
}

#[test]
fn r1_coefficients_are_powers() {
    let f = Fq::prime(3).unwrap();
    let t = jordan_pair(&f);
    let c = comodule_from_tuple(&t, 1).unwrap();
    for j in 0..3 {
        assert_eq!(c.alpha(0, j), &t.alpha[0].pow(j as u64));
    }
    let k = ambient(1, 1, &f).unwrap();
    assert!(check_comodule_axioms(&c, &k).pass());
}

#[test]
fn exp_at_identity_point_is_identity() {
    let f = Fq::prime(3).unwrap();
    let t = jordan_pair(&f);
    let b = ambient(1, 1, &f).unwrap();
    let zero = vec![0; b.dim()];
    let g = MrPoint { tau: zero.clone(), theta: zero, sigma: vec![] };
    assert_eq!(exp_evaluate(&t, &b, &g).unwrap(), AlgMatrix::identity(&b, 6));
}

#[test]
fn exp_matches_comodule_at_universal_point() {
    let f = Fq::prime(3).unwrap();
    let t = jordan_pair(&f);
    let b = ambient(1, 1, &f).unwrap();
    let g = MrPoint::universal(&b, 1, 1);
    let c = comodule_from_tuple(&t, 1).unwrap();
    assert_eq!(exp_evaluate(&t, &b, &g).unwrap(), comodule_evaluate(&c, &b, &g));
}

#[test]
fn json_round_trip() {
    let f = Fq::of_order(9).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let t = random_valid_tuple(&mut rng, &f, 1, 2, 2, 1).unwrap();
    let v = t.to_json();
    assert_eq!(v["m"], 2);
    assert_eq!(SuperMatrixTuple::from_json(&v, &f).unwrap(), t);
}

/// (r, s, m, n) shapes small enough for exhaustive axiom checks.
const SHAPES: [(usize, u32, usize, usize); 5] = [(1, 1, 1, 1), (1, 1, 2, 2), (1, 2, 2, 1), (2, 1, 1, 1), (2, 1, 2, 2)];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_tuples_round_trip(seed in any::<u64>(), shape in 0..SHAPES.len(), q in prop::sample::select(vec![3u32, 9])) {
        let f = Fq::of_order(q).unwrap();
        let (r, s, m, n) = SHAPES[shape];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_valid_tuple(&mut rng, &f, r, m, n, s).unwrap();
        let module = module_from_tuple(&t, s).unwrap();
        prop_assert!(module.check().pass());
        prop_assert_eq!(module.tuple(), t.clone());

        let c = comodule_from_tuple(&t, s).unwrap();
        let k = ambient(r as u32, s, &f).unwrap();
        prop_assert!(check_comodule_axioms(&c, &k).pass());
        let g = MrPoint::universal(&k, r as u32, s);
        prop_assert_eq!(exp_evaluate(&t, &k, &g).unwrap(), comodule_evaluate(&c, &k, &g));
    }

    /// Points pulled back along a classified comorphism k[M_{r;s}] -> k[M_{r;s+1}].
    #[test]
    fn exp_matches_comodule_at_transported_points(seed in any::<u64>(), shape in 0..SHAPES.len(), mu in 0u8..3, a in prop::collection::vec(0u8..3, 2), b in 0u8..3) {
        let f = Fq::prime(3).unwrap();
        let (r, s, m, n) = SHAPES[shape];
        let fam = TargetFamily::elementary(r as u32, s);
        let a0_pow = f.pow(a[0], 3u64.pow(r as u32));
        prop_assume!(f.mul(mu, mu) == a0_pow);
        let params = HomParams::new(fam, Some(mu), a[..r].to_vec(), fam.has_b().then_some(b));
        let phi = comorphism_from_params(&params, &f, s + 1).unwrap();
        let bt = ambient(r as u32, s + 1, &f).unwrap();
        let src = ambient(r as u32, s, &f).unwrap();
        let u = MrPoint::universal(&src, r as u32, s);
        let g = MrPoint { tau: phi.apply(&u.tau), theta: phi.apply(&u.theta), sigma: u.sigma.iter().map(|x| phi.apply(x)).collect() };
        let sh = fam.shape(3);
        for x in 0..src.dim() {
            prop_assert_eq!(g.eval(&bt, &sh, x), phi.image(x));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_valid_tuple(&mut rng, &f, r, m, n, s).unwrap();
        let c = comodule_from_tuple(&t, s).unwrap();
        prop_assert_eq!(exp_evaluate(&t, &bt, &g).unwrap(), comodule_evaluate(&c, &bt, &g));
    }
}
