use proptest::prelude::*;
use supvar::fields::{canonical_modulus, is_irreducible, linear_solve, Solution};
use supvar::{Error, Fe, Fq, Matrix};

const ORDERS: [u32; 6] = [3, 5, 7, 9, 25, 27];

fn field(i: usize) -> Fq {
    Fq::of_order(ORDERS[i % ORDERS.len()]).unwrap()
}

fn matrix(f: &Fq, rows: usize, cols: usize, seed: &[u32]) -> Matrix {
    let mut m = Matrix::zeros(f, rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, (seed[(r * cols + c) % seed.len()] % f.q()) as Fe);
        }
    }
    m
}

#[test]
fn canonical_moduli_are_irreducible() {
    for (p, e) in [(3, 1), (3, 2), (3, 3), (5, 2), (7, 2), (3, 4)] {
        let m = canonical_modulus(p, e);
        assert_eq!(m.len(), e as usize + 1);
        assert_eq!(*m.last().unwrap(), 1, "monic");
        assert!(is_irreducible(&m, p), "{p} {e}: {m:?}");
    }
    // x² + 1 is the least monic irreducible quadratic over F₃; x² is not
    assert!(!is_irreducible(&[0, 0, 1], 3));
    assert!(!is_irreducible(&[2, 0, 1], 3));
}

#[test]
fn characteristic_two_is_rejected() {
    assert!(Fq::prime(2).is_err());
    assert!(Fq::of_order(6).is_err());
}

#[test]
fn field_spec_roundtrip() {
    let f = Fq::of_order(9).unwrap();
    let g = Fq::from_spec(&f.spec()).unwrap();
    assert!(f.same(&g));
    let s = serde_json::to_value(f.spec()).unwrap();
    assert_eq!(s, serde_json::json!({"p": 3, "e": 2, "modulus": [1, 0, 1]}));
}

#[test]
fn solve_rejects_mixed_fields_and_shapes() {
    let f3 = Fq::prime(3).unwrap();
    let f9 = Fq::of_order(9).unwrap();
    let a = Matrix::identity(&f3, 2);
    assert!(matches!(linear_solve(&a, &Matrix::zeros(&f9, 2, 1)), Err(Error::FieldMismatch)));
    assert!(matches!(linear_solve(&a, &Matrix::zeros(&f3, 3, 1)), Err(Error::Shape(_))));
}

#[test]
fn inconsistent_system() {
    let f = Fq::prime(3).unwrap();
    let a = Matrix::from_ints(&f, &[vec![1, 1], vec![2, 2]]);
    let b = Matrix::column(&f, &[1, 0]);
    assert!(matches!(linear_solve(&a, &b).unwrap(), Solution::Inconsistent));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_plus_nullity(fi in 0usize..6, rows in 1usize..7, cols in 1usize..7, seed in prop::collection::vec(any::<u32>(), 1..50)) {
        let f = field(fi);
        let a = matrix(&f, rows, cols, &seed);
        let ker = a.kernel();
        prop_assert_eq!(a.rank() + ker.len(), cols);
        for v in &ker {
            prop_assert!(a.apply(v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn solutions_satisfy_the_system(fi in 0usize..6, rows in 1usize..6, cols in 1usize..6, seed in prop::collection::vec(any::<u32>(), 1..40), x in prop::collection::vec(any::<u32>(), 6)) {
        let f = field(fi);
        let a = matrix(&f, rows, cols, &seed);
        let x0: Vec<Fe> = (0..cols).map(|i| (x[i] % f.q()) as Fe).collect();
        let b = Matrix::column(&f, &a.apply(&x0));
        match linear_solve(&a, &b).unwrap() {
            Solution::Solved { particular, kernel } => {
                prop_assert_eq!(a.mul(&particular).unwrap(), b);
                prop_assert_eq!(kernel.len(), cols - a.rank());
            }
            Solution::Inconsistent => prop_assert!(false, "b lies in the image"),
        }
    }

    #[test]
    fn inverse_when_full_rank(fi in 0usize..6, n in 1usize..6, seed in prop::collection::vec(any::<u32>(), 1..40)) {
        let f = field(fi);
        let a = matrix(&f, n, n, &seed);
        match a.inverse() {
            Some(inv) => prop_assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(&f, n)),
            None => prop_assert!(a.rank() < n),
        }
    }

    #[test]
    fn frobenius_is_additive_and_multiplicative(fi in 0usize..6, x in any::<u32>(), y in any::<u32>()) {
        let f = field(fi);
        let (x, y) = ((x % f.q()) as Fe, (y % f.q()) as Fe);
        let p = f.p() as u64;
        prop_assert_eq!(f.pow(f.add(x, y), p), f.add(f.pow(x, p), f.pow(y, p)));
        prop_assert_eq!(f.pow(f.mul(x, y), p), f.mul(f.pow(x, p), f.pow(y, p)));
        prop_assert_eq!(f.frob(x, 1), f.pow(x, p));
    }

    #[test]
    fn every_element_has_a_pth_root(fi in 0usize..6, x in any::<u32>()) {
        let f = field(fi);
        let x = (x % f.q()) as Fe;
        let p = f.p() as u64;
        prop_assert!(f.elements().any(|y| f.pow(y, p) == x));
    }

    #[test]
    fn field_axioms(fi in 0usize..6, x in any::<u32>(), y in any::<u32>(), z in any::<u32>()) {
        let f = field(fi);
        let (x, y, z) = ((x % f.q()) as Fe, (y % f.q()) as Fe, (z % f.q()) as Fe);
        prop_assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
        prop_assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
        prop_assert_eq!(f.add(x, f.neg(x)), 0);
        prop_assert_eq!(f.sub(x, y), f.add(x, f.neg(y)));
        if x != 0 {
            prop_assert_eq!(f.mul(x, f.inv(x)), 1);
            prop_assert_eq!(f.div(y, x), f.mul(y, f.inv(x)));
        }
        prop_assert_eq!(f.from_coeffs(&f.coeffs(x)).unwrap(), x);
    }
}
