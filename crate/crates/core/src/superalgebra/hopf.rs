//! Finite-dimensional Hopf superalgebras given by structure constants.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fields::{axpy, Fe, Fq, Matrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisElem {
    pub label: String,
    pub parity: u8,
    pub degree: i64,
}

/// Sparse tensor in A ⊗ A: (i, j, coefficient).
pub type Tensor2 = Vec<(u32, u32, Fe)>;

#[derive(Clone, Debug)]
pub struct FinDimHopf {
    pub field: Fq,
    pub basis: Vec<BasisElem>,
    /// Whether `degree` is a genuine Z-grading of the structure.
    pub graded: bool,
    /// mult[i * n + j] = b_i b_j as a sparse vector.
    pub mult: Vec<Vec<(u32, Fe)>>,
    pub unit: Vec<Fe>,
    pub comult: Vec<Tensor2>,
    pub counit: Vec<Fe>,
    /// Column c holds S(b_c).
    pub antipode: Matrix,
}

pub type HopfRef = Arc<FinDimHopf>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<AxiomCheck>,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
    pub fn push(&mut self, name: &str, witness: Option<String>) {
        self.checks.push(AxiomCheck { name: name.into(), pass: witness.is_none(), witness });
    }
    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.pass)
    }
}

/// Koszul sign (-1)^(a*b) as a field element.
#[inline]
pub fn ksign(f: &Fq, a: u8, b: u8) -> Fe {
    if a & b & 1 == 1 {
        f.neg(1)
    } else {
        1
    }
}

impl FinDimHopf {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn parity(&self, i: usize) -> u8 {
        self.basis[i].parity
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.label == label)
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Fe> {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        v
    }

    /// Product of basis elements.
    pub fn mul_basis(&self, i: usize, j: usize) -> &[(u32, Fe)] {
        &self.mult[i * self.dim() + j]
    }

    /// v · b_j
    pub fn mul_vec_basis(&self, v: &[Fe], j: usize) -> Vec<Fe> {
        let f = &self.field;
        let mut out = vec![0; self.dim()];
        for (i, &x) in v.iter().enumerate() {
            if x != 0 {
                for &(k, s) in self.mul_basis(i, j) {
                    out[k as usize] = f.add(out[k as usize], f.mul(x, s));
                }
            }
        }
        out
    }

    /// b_i · v
    pub fn mul_basis_vec(&self, i: usize, v: &[Fe]) -> Vec<Fe> {
        let f = &self.field;
        let mut out = vec![0; self.dim()];
        for (j, &x) in v.iter().enumerate() {
            if x != 0 {
                for &(k, s) in self.mul_basis(i, j) {
                    out[k as usize] = f.add(out[k as usize], f.mul(x, s));
                }
            }
        }
        out
    }

    pub fn mul(&self, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
        let f = &self.field;
        let mut out = vec![0; self.dim()];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let c = f.mul(x, y);
                for &(k, s) in self.mul_basis(i, j) {
                    out[k as usize] = f.add(out[k as usize], f.mul(c, s));
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &[Fe], n: u64) -> Vec<Fe> {
        (0..n).fold(self.unit.clone(), |acc, _| self.mul(&acc, a))
    }

    /// Δ(a) as a dense n*n vector.
    pub fn comult_vec(&self, a: &[Fe]) -> Vec<Fe> {
        let f = &self.field;
        let n = self.dim();
        let mut out = vec![0; n * n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for &(l, r, c) in &self.comult[i] {
                let idx = l as usize * n + r as usize;
                out[idx] = f.add(out[idx], f.mul(x, c));
            }
        }
        out
    }

    /// Reduced coproduct Δ(a) - a⊗1 - 1⊗a, valid for a in the augmentation ideal.
    pub fn reduced_comult_vec(&self, a: &[Fe]) -> Vec<Fe> {
        let f = &self.field;
        let n = self.dim();
        let mut out = self.comult_vec(a);
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (k, &u) in self.unit.iter().enumerate() {
                if u == 0 {
                    continue;
                }
                let c = f.neg(f.mul(x, u));
                out[i * n + k] = f.add(out[i * n + k], c);
                out[k * n + i] = f.add(out[k * n + i], c);
            }
        }
        out
    }

    pub fn counit_of(&self, a: &[Fe]) -> Fe {
        let f = &self.field;
        f.sum(a.iter().zip(&self.counit).map(|(&x, &e)| f.mul(x, e)))
    }

    /// Product in A ⊗ A with the Koszul rule (a⊗b)(c⊗d) = (-1)^{|b||c|} ac⊗bd.
    pub fn tensor_mul(&self, x: &[Fe], y: &[Fe]) -> Vec<Fe> {
        let f = &self.field;
        let n = self.dim();
        let xs: Vec<(usize, usize, Fe)> = nonzero2(x, n);
        let ys: Vec<(usize, usize, Fe)> = nonzero2(y, n);
        let mut out = vec![0; n * n];
        for &(a, b, c1) in &xs {
            for &(c, d, c2) in &ys {
                let l = self.mul_basis(a, c);
                if l.is_empty() {
                    continue;
                }
                let r = self.mul_basis(b, d);
                if r.is_empty() {
                    continue;
                }
                let coef = f.mul(f.mul(c1, c2), ksign(f, self.parity(b), self.parity(c)));
                for &(k1, s1) in l {
                    for &(k2, s2) in r {
                        let idx = k1 as usize * n + k2 as usize;
                        out[idx] = f.add(out[idx], f.mul(coef, f.mul(s1, s2)));
                    }
                }
            }
        }
        out
    }

    pub fn antipode_of(&self, a: &[Fe]) -> Vec<Fe> {
        self.antipode.apply(a)
    }

    pub fn is_homogeneous_parity(&self, a: &[Fe]) -> Option<u8> {
        let mut par = None;
        for (i, &x) in a.iter().enumerate() {
            if x != 0 {
                match par {
                    None => par = Some(self.parity(i)),
                    Some(q) if q != self.parity(i) => return None,
                    _ => {}
                }
            }
        }
        Some(par.unwrap_or(0))
    }

    pub fn format_vec(&self, a: &[Fe]) -> String {
        let mut s = String::new();
        for (i, &x) in a.iter().enumerate() {
            if x != 0 {
                if !s.is_empty() {
                    s.push_str(" + ");
                }
                let _ = write!(s, "{}*{}", x, self.basis[i].label);
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }

    pub fn to_json(&self) -> Value {
        let n = self.dim();
        let mut mult = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for &(k, c) in self.mul_basis(i, j) {
                    mult.push(json!([i, j, k, c]));
                }
            }
        }
        let mut comult = Vec::new();
        for (i, t) in self.comult.iter().enumerate() {
            for &(l, r, c) in t {
                comult.push(json!([i, l, r, c]));
            }
        }
        json!({
            "field": self.field.spec(),
            "basis": self.basis,
            "mult": mult,
            "comult": comult,
            "counit": self.counit,
            "antipode": self.antipode.to_rows(),
        })
    }
}

fn nonzero2(x: &[Fe], n: usize) -> Vec<(usize, usize, Fe)> {
    x.iter().enumerate().filter(|(_, &c)| c != 0).map(|(idx, &c)| (idx / n, idx % n, c)).collect()
}

fn first_diff(a: &[Fe], b: &[Fe]) -> Option<usize> {
    a.iter().zip(b).position(|(x, y)| x != y)
}

/// Check the five axiom families; each failure carries a witness.
pub fn verify_hopf_axioms(h: &FinDimHopf) -> Report {
    let mut rep = Report { checks: Vec::new() };
    let n = h.dim();
    let f = &h.field;
    if h.unit.len() != n || h.counit.len() != n || h.comult.len() != n || h.mult.len() != n * n {
        rep.push("shape", Some("structure constant arrays have the wrong size".into()));
        return rep;
    }
    let lab = |i: usize| h.basis[i].label.clone();

    // 1. associativity and unit
    let mut w = None;
    'assoc: for i in 0..n {
        let ei = h.basis_vec(i);
        if h.mul(&h.unit, &ei) != ei || h.mul(&ei, &h.unit) != ei {
            w = Some(format!("unit fails on {}", lab(i)));
            break;
        }
        for j in 0..n {
            let ij = h.mul_basis(i, j);
            for k in 0..n {
                let mut left = vec![0; n];
                for &(m, c) in ij {
                    for &(t, d) in h.mul_basis(m as usize, k) {
                        left[t as usize] = f.add(left[t as usize], f.mul(c, d));
                    }
                }
                let mut right = vec![0; n];
                for &(m, c) in h.mul_basis(j, k) {
                    for &(t, d) in h.mul_basis(i, m as usize) {
                        right[t as usize] = f.add(right[t as usize], f.mul(c, d));
                    }
                }
                if left != right {
                    w = Some(format!("({}·{})·{} != {}·({}·{})", lab(i), lab(j), lab(k), lab(i), lab(j), lab(k)));
                    break 'assoc;
                }
            }
        }
    }
    rep.push("associative_unital", w);

    // 2. coassociativity and counit
    let mut w = None;
    for i in 0..n {
        let d = &h.comult[i];
        // (ε⊗1)Δ and (1⊗ε)Δ
        let mut l = vec![0; n];
        let mut r = vec![0; n];
        for &(a, b, c) in d {
            l[b as usize] = f.add(l[b as usize], f.mul(c, h.counit[a as usize]));
            r[a as usize] = f.add(r[a as usize], f.mul(c, h.counit[b as usize]));
        }
        let ei = h.basis_vec(i);
        if l != ei || r != ei {
            w = Some(format!("counit fails on {}", lab(i)));
            break;
        }
        let mut lhs = std::collections::HashMap::<(u32, u32, u32), Fe>::new();
        let mut rhs = std::collections::HashMap::<(u32, u32, u32), Fe>::new();
        for &(a, b, c) in d {
            for &(a1, a2, c1) in &h.comult[a as usize] {
                let e = lhs.entry((a1, a2, b)).or_insert(0);
                *e = f.add(*e, f.mul(c, c1));
            }
            for &(b1, b2, c2) in &h.comult[b as usize] {
                let e = rhs.entry((a, b1, b2)).or_insert(0);
                *e = f.add(*e, f.mul(c, c2));
            }
        }
        lhs.retain(|_, v| *v != 0);
        rhs.retain(|_, v| *v != 0);
        if lhs != rhs {
            w = Some(format!("coassociativity fails on {}", lab(i)));
            break;
        }
    }
    rep.push("coassociative_counital", w);

    // 3. Δ and ε are algebra maps
    let mut w = None;
    let mut unit_t = vec![0; n * n];
    for (a, &x) in h.unit.iter().enumerate() {
        for (b, &y) in h.unit.iter().enumerate() {
            unit_t[a * n + b] = f.mul(x, y);
        }
    }
    if h.comult_vec(&h.unit) != unit_t {
        w = Some("Δ(1) != 1⊗1".to_string());
    } else if h.counit_of(&h.unit) != 1 {
        w = Some("ε(1) != 1".to_string());
    } else {
        let deltas: Vec<Vec<Fe>> = (0..n).map(|i| h.comult_vec(&h.basis_vec(i))).collect();
        'alg: for i in 0..n {
            for j in 0..n {
                let prod = h.mul_basis_vec(i, &h.basis_vec(j));
                if h.counit_of(&prod) != f.mul(h.counit[i], h.counit[j]) {
                    w = Some(format!("ε not multiplicative on {}, {}", lab(i), lab(j)));
                    break 'alg;
                }
                if h.comult_vec(&prod) != h.tensor_mul(&deltas[i], &deltas[j]) {
                    w = Some(format!("Δ({}·{}) != Δ({})Δ({})", lab(i), lab(j), lab(i), lab(j)));
                    break 'alg;
                }
            }
        }
    }
    rep.push("comult_counit_multiplicative", w);

    // 4. antipode
    let mut w = None;
    for i in 0..n {
        let mut l = vec![0; n];
        let mut r = vec![0; n];
        for &(a, b, c) in &h.comult[i] {
            let sa = h.antipode.col(a as usize);
            let sb = h.antipode.col(b as usize);
            axpy(f, &mut l, c, &h.mul_vec_basis(&sa, b as usize));
            axpy(f, &mut r, c, &h.mul_basis_vec(a as usize, &sb));
        }
        let mut expect = vec![0; n];
        axpy(f, &mut expect, h.counit[i], &h.unit);
        if l != expect || r != expect {
            w = Some(format!("antipode identity fails on {}", lab(i)));
            break;
        }
    }
    rep.push("antipode", w);

    // 5. parity and degree
    rep.push("parity_degree", grading_witness(h));
    rep
}

fn grading_witness(h: &FinDimHopf) -> Option<String> {
    let n = h.dim();
    let par = |i: usize| h.basis[i].parity;
    let deg = |i: usize| h.basis[i].degree;
    let lab = |i: usize| h.basis[i].label.clone();
    let g = h.graded;
    for i in 0..n {
        if h.unit[i] != 0 && (par(i) != 0 || (g && deg(i) != 0)) {
            return Some(format!("unit has component on {}", lab(i)));
        }
        if h.counit[i] != 0 && (par(i) != 0 || (g && deg(i) != 0)) {
            return Some(format!("counit nonzero on {}", lab(i)));
        }
        for j in 0..n {
            for &(k, _) in h.mul_basis(i, j) {
                let k = k as usize;
                if par(k) != par(i) ^ par(j) || (g && deg(k) != deg(i) + deg(j)) {
                    return Some(format!("{}·{} has component on {}", lab(i), lab(j), lab(k)));
                }
            }
        }
        for &(a, b, _) in &h.comult[i] {
            let (a, b) = (a as usize, b as usize);
            if par(a) ^ par(b) != par(i) || (g && deg(a) + deg(b) != deg(i)) {
                return Some(format!("Δ({}) has term {}⊗{}", lab(i), lab(a), lab(b)));
            }
        }
        for k in 0..n {
            if h.antipode.get(k, i) != 0 && (par(k) != par(i) || (g && deg(k) != deg(i))) {
                return Some(format!("S({}) has component on {}", lab(i), lab(k)));
            }
        }
    }
    None
}

/// Convolution inverse of the identity: S = Σ_n (ηε - id)^{*n}.
/// Terminates because the augmentation ideal is nilpotent.
pub fn convolution_antipode(h: &FinDimHopf) -> Result<Matrix> {
    let f = &h.field;
    let n = h.dim();
    // maps stored column-wise: cols[c] = image of b_c
    let ee: Vec<Vec<Fe>> = (0..n)
        .map(|c| {
            let mut v = vec![0; n];
            axpy(f, &mut v, h.counit[c], &h.unit);
            v
        })
        .collect();
    let nmap: Vec<Vec<Fe>> = (0..n)
        .map(|c| {
            let mut v = ee[c].clone();
            v[c] = f.sub(v[c], 1);
            v
        })
        .collect();
    let mut total = ee.clone();
    let mut power = ee;
    for _ in 0..=n + 1 {
        // power <- power * N
        let next: Vec<Vec<Fe>> = (0..n)
            .map(|c| {
                let mut v = vec![0; n];
                for &(a, b, coef) in &h.comult[c] {
                    axpy(f, &mut v, coef, &h.mul(&power[a as usize], &nmap[b as usize]));
                }
                v
            })
            .collect();
        if next.iter().all(|v| v.iter().all(|&x| x == 0)) {
            let mut m = Matrix::zeros(f, n, n);
            for (c, v) in total.iter().enumerate() {
                for (r, &x) in v.iter().enumerate() {
                    m.set(r, c, x);
                }
            }
            return Ok(m);
        }
        for c in 0..n {
            let (t, x) = (&mut total[c], &next[c]);
            for (a, &b) in t.iter_mut().zip(x) {
                *a = f.add(*a, b);
            }
        }
        power = next;
    }
    Err(Error::Check("augmentation ideal is not nilpotent".into()))
}

/// A linear map between the underlying spaces of two Hopf superalgebras.
#[derive(Clone, Debug)]
pub struct AlgebraMorphism {
    pub source: HopfRef,
    pub target: HopfRef,
    /// target_dim x source_dim; column c is the image of source basis c.
    pub matrix: Matrix,
    pub hopf: bool,
}

impl AlgebraMorphism {
    pub fn image(&self, i: usize) -> Vec<Fe> {
        self.matrix.col(i)
    }

    pub fn apply(&self, v: &[Fe]) -> Vec<Fe> {
        self.matrix.apply(v)
    }

    /// Composite self ∘ other (other applied first).
    pub fn compose(&self, other: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        if other.target.dim() != self.source.dim() {
            return Err(Error::Shape("composition of incompatible maps".into()));
        }
        Ok(AlgebraMorphism {
            source: other.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&other.matrix)?,
            hopf: self.hopf && other.hopf,
        })
    }

    /// Unit, parity, multiplicativity, and (if `hopf`) comult and counit.
    pub fn check(&self) -> Report {
        check_morphism(&self.source, &self.target, &self.matrix, self.hopf)
    }
}

pub fn check_morphism(s: &FinDimHopf, t: &FinDimHopf, m: &Matrix, hopf: bool) -> Report {
    let mut rep = Report { checks: Vec::new() };
    let ns = s.dim();
    let nt = t.dim();
    let img: Vec<Vec<Fe>> = (0..ns).map(|c| m.col(c)).collect();
    let apply = |v: &[Fe]| m.apply(v);
    rep.push("unit", (apply(&s.unit) != t.unit).then(|| "unit not preserved".to_string()));
    let mut w = None;
    for (c, v) in img.iter().enumerate() {
        for (r, &x) in v.iter().enumerate() {
            if x != 0 && t.parity(r) != s.parity(c) {
                w = Some(format!("image of {} has wrong parity", s.basis[c].label));
            }
        }
    }
    rep.push("parity", w);
    let mut w = None;
    'm: for i in 0..ns {
        for j in 0..ns {
            let mut lhs = vec![0; nt];
            for &(k, c) in s.mul_basis(i, j) {
                axpy(&t.field, &mut lhs, c, &img[k as usize]);
            }
            let rhs = t.mul(&img[i], &img[j]);
            if lhs != rhs {
                w = Some(format!(
                    "φ({}·{}) != φ({})φ({})",
                    s.basis[i].label, s.basis[j].label, s.basis[i].label, s.basis[j].label
                ));
                break 'm;
            }
        }
    }
    rep.push("multiplicative", w);
    if hopf {
        let mut w = None;
        for i in 0..ns {
            let lhs = t.comult_vec(&img[i]);
            let mut rhs = vec![0; nt * nt];
            let f = &t.field;
            for &(a, b, c) in &s.comult[i] {
                for (x, &ca) in img[a as usize].iter().enumerate() {
                    if ca == 0 {
                        continue;
                    }
                    let cc = f.mul(c, ca);
                    axpy(f, &mut rhs[x * nt..(x + 1) * nt], cc, &img[b as usize]);
                }
            }
            if lhs != rhs {
                let at = first_diff(&lhs, &rhs).unwrap();
                w = Some(format!(
                    "Δφ({}) differs at {}⊗{}",
                    s.basis[i].label,
                    t.basis[at / nt].label,
                    t.basis[at % nt].label
                ));
                break;
            }
            if t.counit_of(&img[i]) != s.counit[i] {
                w = Some(format!("counit not preserved on {}", s.basis[i].label));
                break;
            }
        }
        rep.push("comult_counit", w);
    }
    rep
}
