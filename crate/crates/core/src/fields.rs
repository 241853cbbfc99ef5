//! Finite fields F_q (q = p^e, p odd) and dense linear algebra over them.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// A field element, stored as the integer sum c_i p^i of its coefficient
/// vector in the power basis of the defining modulus.
pub type Fe = u8;

struct Tables {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<Fe>,
    mul: Vec<Fe>,
    neg: Vec<Fe>,
    inv: Vec<Fe>,
}

/// F_{p^e} with the canonical modulus. Cheap to clone.
#[derive(Clone)]
pub struct Fq(Arc<Tables>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub e: u32,
    pub modulus: Vec<u32>,
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn poly_mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let e = m.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for k in (e..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        // m is monic: x^e = -(m_0 + ... + m_{e-1} x^{e-1})
        for t in 0..e {
            prod[k - e + t] = (prod[k - e + t] + (p - c) * m[t]) % p;
        }
        prod[k] = 0;
    }
    prod.truncate(e);
    prod.resize(e, 0);
    prod
}

fn digits(mut x: u32, p: u32, e: u32) -> Vec<u32> {
    (0..e)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of a modulo monic b over F_p.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if c != 0 {
            for (t, &bc) in b.iter().enumerate() {
                r[shift + t] = (r[shift + t] + (p - c) * bc % p) % p;
            }
        }
        r.pop();
    }
    r
}

/// Exhaustive irreducibility test: no monic factor of degree 1..=deg/2.
pub fn is_irreducible(m: &[u32], p: u32) -> bool {
    let e = m.len() - 1;
    if e == 0 || m[e] != 1 {
        return false;
    }
    for d in 1..=e / 2 {
        for low in 0..p.pow(d as u32) {
            let mut f = digits(low, p, d as u32);
            f.push(1);
            if poly_rem(m, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically least monic irreducible polynomial of degree e,
/// comparing coefficient vectors from the constant term upwards.
pub fn canonical_modulus(p: u32, e: u32) -> Vec<u32> {
    if e == 1 {
        return vec![0, 1];
    }
    for low in 0..p.pow(e) {
        let mut m = digits(low, p, e);
        m.push(1);
        if is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Fq {
    pub fn new(p: u32, e: u32) -> Result<Fq> {
        if !is_prime(p) || p < 3 {
            return invalid(format!("characteristic must be an odd prime, got {p}"));
        }
        if e == 0 {
            return invalid("extension degree must be at least 1");
        }
        let q = p.checked_pow(e).filter(|&q| q <= 256);
        let Some(q) = q else {
            return invalid(format!("field size {p}^{e} exceeds 256"));
        };
        let modulus = canonical_modulus(p, e);
        let qu = q as usize;
        let mut add = vec![0; qu * qu];
        let mut mul = vec![0; qu * qu];
        let mut neg = vec![0; qu];
        let mut inv = vec![0; qu];
        let dig: Vec<Vec<u32>> = (0..q).map(|x| digits(x, p, e)).collect();
        for a in 0..qu {
            neg[a] = undigits(&dig[a].iter().map(|&c| (p - c) % p).collect::<Vec<_>>(), p) as Fe;
            for b in 0..qu {
                let s: Vec<u32> = dig[a].iter().zip(&dig[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * qu + b] = undigits(&s, p) as Fe;
                mul[a * qu + b] = undigits(&poly_mul_mod(&dig[a], &dig[b], &modulus, p), p) as Fe;
            }
        }
        for a in 1..qu {
            inv[a] = (1..qu).find(|&b| mul[a * qu + b] == 1).unwrap() as Fe;
        }
        Ok(Fq(Arc::new(Tables { p, e, q, modulus, add, mul, neg, inv })))
    }

    pub fn prime(p: u32) -> Result<Fq> {
        Fq::new(p, 1)
    }

    /// Field of order q, q a power of an odd prime.
    pub fn of_order(q: u32) -> Result<Fq> {
        let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap_or(q);
        let mut e = 0;
        let mut t = q;
        while t > 1 && t.is_multiple_of(p) {
            t /= p;
            e += 1;
        }
        if t != 1 || q < 3 {
            return invalid(format!("{q} is not an odd prime power"));
        }
        Fq::new(p, e)
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Fq> {
        let f = Fq::new(spec.p, spec.e)?;
        if f.0.modulus != spec.modulus {
            return invalid("only the canonical modulus is supported");
        }
        Ok(f)
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec { p: self.0.p, e: self.0.e, modulus: self.0.modulus.clone() }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }
    #[inline]
    pub fn e(&self) -> u32 {
        self.0.e
    }
    #[inline]
    pub fn q(&self) -> u32 {
        self.0.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        self.0.add[a as usize * self.0.q as usize + b as usize]
    }
    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }
    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        self.0.mul[a as usize * self.0.q as usize + b as usize]
    }
    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        self.0.neg[a as usize]
    }
    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: Fe) -> Fe {
        assert!(a != 0, "inverse of zero");
        self.0.inv[a as usize]
    }
    pub fn div(&self, a: Fe, b: Fe) -> Fe {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Fe, mut n: u64) -> Fe {
        let mut base = a;
        let mut acc: Fe = 1;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// a^(p^k), computed by repeated Frobenius.
    pub fn frob(&self, a: Fe, k: u32) -> Fe {
        (0..k % self.e()).fold(a, |x, _| self.pow(x, self.p() as u64))
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Fe {
        n.rem_euclid(self.p() as i64) as Fe
    }

    /// Prime-field elements as integers in 0..p; None outside F_p.
    pub fn to_int(&self, a: Fe) -> Option<u32> {
        ((a as u32) < self.p()).then_some(a as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q()).map(|x| x as Fe)
    }

    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        digits(a as u32, self.p(), self.e())
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<Fe> {
        if c.len() > self.e() as usize || c.iter().any(|&x| x >= self.p()) {
            return invalid(format!("bad coefficient vector {c:?}"));
        }
        Ok(undigits(c, self.p()) as Fe)
    }

    /// Sum of a slice of elements.
    pub fn sum(&self, it: impl IntoIterator<Item = Fe>) -> Fe {
        it.into_iter().fold(0, |a, b| self.add(a, b))
    }

    /// n! mod p as a field element (zero once n >= p).
    pub fn factorial(&self, n: u64) -> Fe {
        (1..=n).fold(1, |acc, k| self.mul(acc, self.from_int(k as i64)))
    }

    /// Binomial coefficient C(n, k) mod p via Lucas.
    pub fn binom(&self, n: u64, k: u64) -> Fe {
        self.from_int(binom_mod_p(n, k, self.p() as u64) as i64)
    }

    pub fn same(&self, other: &Fq) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.p() == other.p() && self.e() == other.e())
    }
}

impl PartialEq for Fq {
    fn eq(&self, other: &Fq) -> bool {
        self.same(other)
    }
}
impl Eq for Fq {}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.p(), self.e())
    }
}

/// C(n, k) mod p by Lucas's theorem.
pub fn binom_mod_p(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let (a, b) = (n % p, k % p);
        if b > a {
            return 0;
        }
        let mut c = 1u64;
        for i in 0..b {
            c = c * (a - i) % p;
        }
        // divide by b! mod p
        let mut bf = 1u64;
        for i in 1..=b {
            bf = bf * i % p;
        }
        c = c * modpow(bf, p - 2, p) % p;
        acc = acc * c % p;
        n /= p;
        k /= p;
    }
    acc
}

fn modpow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Row-major dense matrix over F_q.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Fq,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    /// `particular` is cols(A) x cols(b); `kernel` holds null-space vectors.
    Solved {
        particular: Matrix,
        kernel: Vec<Vec<Fe>>,
    },
    Inconsistent,
}

impl Matrix {
    pub fn zeros(field: &Fq, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &Fq, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: &Fq, rows: &[Vec<Fe>]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        if rows.iter().flatten().any(|&x| x as u32 >= field.q()) {
            return invalid("entry outside the field");
        }
        Ok(Matrix { field: field.clone(), rows: rows.len(), cols, data: rows.concat() })
    }

    pub fn from_ints(field: &Fq, rows: &[Vec<i64>]) -> Matrix {
        let conv: Vec<Vec<Fe>> = rows.iter().map(|r| r.iter().map(|&x| field.from_int(x)).collect()).collect();
        Matrix::from_rows(field, &conv).expect("integer rows")
    }

    pub fn column(field: &Fq, v: &[Fe]) -> Matrix {
        Matrix { field: field.clone(), rows: v.len(), cols: 1, data: v.to_vec() }
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }
    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn row_mut(&mut self, r: usize) -> &mut [Fe] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn col(&self, c: usize) -> Vec<Fe> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }
    pub fn to_rows(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    fn check(&self, other: &Matrix) -> Result<()> {
        if !self.field.same(&other.field) {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check(other)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
                axpy(f, dst, a, orow);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape("addition of differently sized matrices".into()));
        }
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(&other.scale(self.field.neg(1)))
    }

    pub fn scale(&self, c: Fe) -> Matrix {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn apply(&self, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows).map(|r| f.sum(self.row(r).iter().zip(v).map(|(&a, &b)| f.mul(a, b)))).collect()
    }

    pub fn pow(&self, n: u64) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = Matrix::identity(&self.field, self.rows);
        for _ in 0..n {
            acc = acc.mul(self).unwrap();
        }
        acc
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for k in 0..self.cols {
                    self.data.swap(pr * self.cols + k, r * self.cols + k);
                }
            }
            let iv = f.inv(self.get(r, c));
            for x in self.row_mut(r) {
                *x = f.mul(*x, iv);
            }
            let prow = self.row(r).to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let a = self.get(i, c);
                if a != 0 {
                    axpy(&f, self.row_mut(i), f.neg(a), &prow);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right null space in reduced row echelon form.
    pub fn kernel(&self) -> Vec<Vec<Fe>> {
        let raw = self.kernel_raw();
        if raw.is_empty() {
            return raw;
        }
        let mut k = Matrix::from_rows(&self.field, &raw).unwrap();
        k.rref();
        k.to_rows()
    }

    /// Null space basis, one vector per free column (free entry 1).
    pub fn kernel_raw(&self) -> Vec<Vec<Fe>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let f = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0; self.cols];
                v[free] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m.get(i, free));
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(&self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, 1);
        }
        let piv = aug.rref();
        if n > 0 && (piv.len() < n || piv[n - 1] != n - 1) {
            return None;
        }
        let mut inv = Matrix::zeros(&self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, aug.get(r, n + c));
            }
        }
        Some(inv)
    }
}

/// dst += a * src.
#[inline]
pub fn axpy(f: &Fq, dst: &mut [Fe], a: Fe, src: &[Fe]) {
    if a == 0 {
        return;
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        if s != 0 {
            *d = f.add(*d, f.mul(a, s));
        }
    }
}

/// Solve A x = b for every column of b.
pub fn linear_solve(a: &Matrix, b: &Matrix) -> Result<Solution> {
    a.check(b)?;
    if a.rows != b.rows {
        return Err(Error::Shape(format!("A has {} rows, b has {}", a.rows, b.rows)));
    }
    let f = a.field.clone();
    let (n, k) = (a.cols, b.cols);
    let mut aug = Matrix::zeros(&f, a.rows, n + k);
    for r in 0..a.rows {
        aug.row_mut(r)[..n].copy_from_slice(a.row(r));
        aug.row_mut(r)[n..].copy_from_slice(b.row(r));
    }
    let pivots = aug.rref();
    if pivots.iter().any(|&c| c >= n) {
        return Ok(Solution::Inconsistent);
    }
    let mut particular = Matrix::zeros(&f, n, k);
    for (i, &pc) in pivots.iter().enumerate() {
        for j in 0..k {
            particular.set(pc, j, aug.get(i, n + j));
        }
    }
    Ok(Solution::Solved { particular, kernel: a.kernel() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f9_modulus_is_x2_plus_1() {
        assert_eq!(canonical_modulus(3, 2), vec![1, 0, 1]);
        assert_eq!(canonical_modulus(3, 3), vec![1, 2, 0, 1]);
        let f = Fq::new(3, 2).unwrap();
        // x * x = -1
        assert_eq!(f.mul(3, 3), 2);
    }

    #[test]
    fn lucas() {
        assert_eq!(binom_mod_p(9, 3, 3), 0);
        assert_eq!(binom_mod_p(4, 1, 3), 1);
        assert_eq!(binom_mod_p(6, 3, 3), 2);
        assert_eq!(binom_mod_p(10, 4, 5), 0);
        assert_eq!(binom_mod_p(7, 2, 5), 1);
    }

    #[test]
    fn solve_examples() {
        let f = Fq::prime(3).unwrap();
        let id = Matrix::identity(&f, 3);
        match linear_solve(&id, &Matrix::column(&f, &[1, 2, 0])).unwrap() {
            Solution::Solved { particular, kernel } => {
                assert_eq!(particular.col(0), vec![1, 2, 0]);
                assert!(kernel.is_empty());
            }
            _ => panic!(),
        }
        let z = Matrix::zeros(&f, 2, 2);
        match linear_solve(&z, &Matrix::column(&f, &[0, 0])).unwrap() {
            Solution::Solved { kernel, .. } => assert_eq!(kernel.len(), 2),
            _ => panic!(),
        }
        let a = Matrix::from_ints(&f, &[vec![1, 1], vec![2, 2]]);
        match linear_solve(&a, &Matrix::column(&f, &[0, 0])).unwrap() {
            Solution::Solved { kernel, .. } => assert_eq!(kernel, vec![vec![1, 2]]),
            _ => panic!(),
        }
        assert_eq!(linear_solve(&a, &Matrix::column(&f, &[1, 0])).unwrap(), Solution::Inconsistent);
    }

    #[test]
    fn shape_and_field_errors() {
        let f3 = Fq::prime(3).unwrap();
        let f5 = Fq::prime(5).unwrap();
        let a = Matrix::identity(&f3, 2);
        assert!(matches!(linear_solve(&a, &Matrix::column(&f3, &[1, 2, 0])), Err(Error::Shape(_))));
        assert_eq!(linear_solve(&a, &Matrix::column(&f5, &[1, 2])), Err(Error::FieldMismatch));
        assert!(Fq::new(2, 1).is_err());
        assert!(Fq::new(9, 1).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let f = Fq::new(3, 2).unwrap();
        let a = Matrix::from_rows(&f, &[vec![1, 4], vec![3, 2]]).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(&f, 2));
    }
}
