//! Modules over P₁ = k[u,v]/(u^p + v²) with deg u = 2, deg v = p, graded
//! free resolutions computed degree by degree, and the injective-dimension
//! decision for finite-dimensional modules.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::cohomology::sparse::{sv_from_unsorted, Echelon, Inserted, SparseVec};
use crate::error::{invalid, Error, Result};
use crate::fields::{Fe, Fq, Matrix};
use crate::superalgebra::hopf::Report;

/// An element of P₁ in the normal form Σ c u^a v^e, e ∈ {0, 1}.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct P1Elem {
    pub terms: BTreeMap<(u32, u8), Fe>,
}

impl P1Elem {
    pub fn zero() -> P1Elem {
        P1Elem::default()
    }

    pub fn mono(c: Fe, a: u32, e: u8) -> P1Elem {
        let mut out = P1Elem::zero();
        if c != 0 {
            out.terms.insert((a, e), c);
        }
        out
    }

    pub fn u() -> P1Elem {
        P1Elem::mono(1, 1, 0)
    }

    pub fn v() -> P1Elem {
        P1Elem::mono(1, 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, f: &Fq, a: u32, e: u8, c: Fe) {
        if c == 0 {
            return;
        }
        let x = self.terms.entry((a, e)).or_insert(0);
        *x = f.add(*x, c);
        if *x == 0 {
            self.terms.remove(&(a, e));
        }
    }

    pub fn add(&self, f: &Fq, other: &P1Elem) -> P1Elem {
        let mut out = self.clone();
        for (&(a, e), &c) in &other.terms {
            out.add_term(f, a, e, c);
        }
        out
    }

    pub fn scale(&self, f: &Fq, c: Fe) -> P1Elem {
        let mut out = P1Elem::zero();
        for (&(a, e), &x) in &self.terms {
            out.add_term(f, a, e, f.mul(x, c));
        }
        out
    }

    pub fn mul(&self, f: &Fq, other: &P1Elem) -> P1Elem {
        let mut out = P1Elem::zero();
        for (&(a, e), &c) in &self.terms {
            for (&(b, g), &d) in &other.terms {
                let (k, x, y) = mono_mul(f, a, e, b, g);
                out.add_term(f, x, y, f.mul(k, f.mul(c, d)));
            }
        }
        out
    }

    /// Whether the element lies in the maximal ideal ⟨u, v⟩.
    pub fn in_max_ideal(&self) -> bool {
        !self.terms.contains_key(&(0, 0))
    }

    pub fn degree(&self, p: u32) -> Option<i64> {
        let mut it = self.terms.keys().map(|&(a, e)| mono_degree(p, a, e));
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn format(&self, f: &Fq) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(a, e), &c)| {
                let mut m = String::new();
                if a == 1 {
                    m.push('u');
                } else if a > 1 {
                    m.push_str(&format!("u^{a}"));
                }
                if e == 1 {
                    m.push('v');
                }
                let cs = f.to_int(c).map(|x| x.to_string()).unwrap_or_else(|| format!("{c}"));
                match (m.is_empty(), c == 1) {
                    (true, _) => cs,
                    (false, true) => m,
                    (false, false) => format!("{cs}*{m}"),
                }
            })
            .collect();
        parts.join(" + ")
    }

    /// The matrix by which the element acts through (α, β).
    pub fn eval(&self, m: &ActionPowers) -> Matrix {
        let f = &m.field;
        let mut out = Matrix::zeros(f, m.dim, m.dim);
        for (&(a, e), &c) in &self.terms {
            let Some(pa) = m.alpha_pow(a) else { continue };
            let t = if e == 1 { pa.mul(&m.beta).unwrap() } else { pa.clone() };
            out = out.add(&t.scale(c)).unwrap();
        }
        out
    }
}

pub fn mono_degree(p: u32, a: u32, e: u8) -> i64 {
    2 * a as i64 + p as i64 * e as i64
}

/// u^a v^e · u^b v^g = k · u^x v^y using v² = −u^p.
fn mono_mul(f: &Fq, a: u32, e: u8, b: u32, g: u8) -> (Fe, u32, u8) {
    if e + g == 2 {
        (f.neg(1), a + b + f.p(), 0)
    } else {
        (1, a + b, e + g)
    }
}

/// Powers of α cached for evaluating P₁-elements on a module.
pub struct ActionPowers {
    field: Fq,
    dim: usize,
    alpha: Vec<Matrix>,
    beta: Matrix,
}

impl ActionPowers {
    pub fn new(m: &GradedP1Module) -> ActionPowers {
        let mut alpha = vec![Matrix::identity(&m.field, m.dim())];
        while !alpha.last().unwrap().is_zero() {
            let next = alpha.last().unwrap().mul(&m.alpha).unwrap();
            alpha.push(next);
        }
        ActionPowers { field: m.field.clone(), dim: m.dim(), alpha, beta: m.beta.clone() }
    }

    fn alpha_pow(&self, a: u32) -> Option<&Matrix> {
        self.alpha.get(a as usize).filter(|m| !m.is_zero() || self.dim == 0)
    }
}

/// A finite-dimensional P₁-supermodule: u acts by the even matrix α, v by
/// the odd matrix β.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedP1Module {
    pub field: Fq,
    pub parity: Vec<u8>,
    pub alpha: Matrix,
    pub beta: Matrix,
    pub grading: Option<Vec<i64>>,
}

impl GradedP1Module {
    pub fn new(
        field: &Fq,
        parity: Vec<u8>,
        alpha: Matrix,
        beta: Matrix,
        grading: Option<Vec<i64>>,
    ) -> Result<GradedP1Module> {
        let m = GradedP1Module { field: field.clone(), parity, alpha, beta, grading };
        let rep = m.check();
        if let Some(bad) = rep.first_failure() {
            return Err(Error::Check(format!(
                "P₁-module invariant {}: {}",
                bad.name,
                bad.witness.clone().unwrap_or_default()
            )));
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn zero(f: &Fq) -> GradedP1Module {
        GradedP1Module {
            field: f.clone(),
            parity: vec![],
            alpha: Matrix::zeros(f, 0, 0),
            beta: Matrix::zeros(f, 0, 0),
            grading: Some(vec![]),
        }
    }

    /// k^{m|n} with u and v acting by zero.
    pub fn trivial(f: &Fq, m: usize, n: usize) -> GradedP1Module {
        let d = m + n;
        let parity = (0..d).map(|i| (i >= m) as u8).collect();
        let grading = Some((0..d).map(|i| if i >= m { f.p() as i64 } else { 0 }).collect());
        GradedP1Module {
            field: f.clone(),
            parity,
            alpha: Matrix::zeros(f, d, d),
            beta: Matrix::zeros(f, d, d),
            grading,
        }
    }

    /// P₁/⟨v⟩ ≅ k[u]/⟨u^p⟩ on the basis 1, u, …, u^{p−1}.
    pub fn quotient_by_v(f: &Fq) -> GradedP1Module {
        let p = f.p() as usize;
        let mut alpha = Matrix::zeros(f, p, p);
        for a in 0..p - 1 {
            alpha.set(a + 1, a, 1);
        }
        let grading = Some((0..p).map(|a| 2 * a as i64).collect());
        GradedP1Module { field: f.clone(), parity: vec![0; p], alpha, beta: Matrix::zeros(f, p, p), grading }
    }

    /// P₁/⟨u^j⟩ on the basis u^a (a < j) followed by u^a v. For j = p^s this
    /// is the regular module of kM_{1;s}.
    pub fn quotient_by_u_power(f: &Fq, j: usize) -> Result<GradedP1Module> {
        let p = f.p() as usize;
        if j == 0 {
            return invalid("P₁/⟨u^j⟩ needs j ≥ 1");
        }
        let d = 2 * j;
        let mut alpha = Matrix::zeros(f, d, d);
        let mut beta = Matrix::zeros(f, d, d);
        for a in 0..j {
            if a + 1 < j {
                alpha.set(a + 1, a, 1);
                alpha.set(j + a + 1, j + a, 1);
            }
            beta.set(j + a, a, 1);
            // u^a v · v = −u^{a+p}
            if a + p < j {
                beta.set(a + p, j + a, f.neg(1));
            }
        }
        let parity = (0..d).map(|i| (i >= j) as u8).collect();
        let grading = Some((0..d).map(|i| if i < j { 2 * i as i64 } else { 2 * (i - j) as i64 + p as i64 }).collect());
        GradedP1Module::new(f, parity, alpha, beta, grading)
    }

    pub fn check(&self) -> Report {
        let f = &self.field;
        let d = self.dim();
        let mut rep = Report { checks: Vec::new() };
        let shape_ok = [&self.alpha, &self.beta].iter().all(|m| m.rows() == d && m.cols() == d);
        rep.push("shape", (!shape_ok).then(|| format!("matrices must be {d}x{d}")));
        if !shape_ok {
            return rep;
        }
        let mut par = None;
        for i in 0..d {
            for j in 0..d {
                let pij = self.parity[i] ^ self.parity[j];
                if self.alpha.get(i, j) != 0 && pij != 0 {
                    par = Some("α is not even".to_string());
                }
                if self.beta.get(i, j) != 0 && pij != 1 {
                    par = Some("β is not odd".to_string());
                }
            }
        }
        rep.push("parity", par);
        let ab = self.alpha.mul(&self.beta).unwrap();
        let ba = self.beta.mul(&self.alpha).unwrap();
        rep.push("commute", (ab != ba).then(|| "αβ != βα".into()));
        let rel = self.alpha.pow(f.p() as u64).add(&self.beta.mul(&self.beta).unwrap()).unwrap();
        rep.push("hypersurface", (!rel.is_zero()).then(|| "α^p + β² != 0".into()));
        rep.push("nilpotent", (!self.alpha.pow(d.max(1) as u64).is_zero()).then(|| "α is not nilpotent".into()));
        if let Some(g) = &self.grading {
            let mut w = None;
            if g.len() != d {
                w = Some("grading has the wrong length".to_string());
            } else {
                let p = f.p() as i64;
                for i in 0..d {
                    for j in 0..d {
                        if self.alpha.get(i, j) != 0 && g[i] != g[j] + 2 {
                            w = Some(format!("α does not raise degree by 2 at ({i},{j})"));
                        }
                        if self.beta.get(i, j) != 0 && g[i] != g[j] + p {
                            w = Some(format!("β does not raise degree by p at ({i},{j})"));
                        }
                    }
                }
            }
            rep.push("grading", w);
        }
        rep
    }

    pub fn direct_sum(&self, other: &GradedP1Module) -> GradedP1Module {
        let f = &self.field;
        let (a, b) = (self.dim(), other.dim());
        let block = |x: &Matrix, y: &Matrix| {
            let mut m = Matrix::zeros(f, a + b, a + b);
            for i in 0..a {
                for j in 0..a {
                    m.set(i, j, x.get(i, j));
                }
            }
            for i in 0..b {
                for j in 0..b {
                    m.set(a + i, a + j, y.get(i, j));
                }
            }
            m
        };
        let grading = match (&self.grading, &other.grading) {
            (Some(x), Some(y)) => Some(x.iter().chain(y).copied().collect()),
            _ => None,
        };
        GradedP1Module {
            field: f.clone(),
            parity: self.parity.iter().chain(&other.parity).copied().collect(),
            alpha: block(&self.alpha, &other.alpha),
            beta: block(&self.beta, &other.beta),
            grading,
        }
    }

    /// M ⊗ N with u, v primitive: u ↦ α⊗1 + 1⊗α, v ↦ β⊗1 + (−1)^{|·|}⊗β.
    pub fn tensor(&self, other: &GradedP1Module) -> Result<GradedP1Module> {
        let f = &self.field;
        let (a, b) = (self.dim(), other.dim());
        let n = a * b;
        let mut alpha = Matrix::zeros(f, n, n);
        let mut beta = Matrix::zeros(f, n, n);
        let idx = |i: usize, j: usize| i * b + j;
        for i in 0..a {
            for j in 0..b {
                let col = idx(i, j);
                for k in 0..a {
                    let (x, y) = (self.alpha.get(k, i), self.beta.get(k, i));
                    if x != 0 {
                        alpha.set(idx(k, j), col, f.add(alpha.get(idx(k, j), col), x));
                    }
                    if y != 0 {
                        beta.set(idx(k, j), col, f.add(beta.get(idx(k, j), col), y));
                    }
                }
                let sign = if self.parity[i] == 1 { f.neg(1) } else { 1 };
                for l in 0..b {
                    let (x, y) = (other.alpha.get(l, j), other.beta.get(l, j));
                    if x != 0 {
                        alpha.set(idx(i, l), col, f.add(alpha.get(idx(i, l), col), x));
                    }
                    if y != 0 {
                        beta.set(idx(i, l), col, f.add(beta.get(idx(i, l), col), f.mul(sign, y)));
                    }
                }
            }
        }
        let parity = (0..n).map(|c| self.parity[c / b.max(1)] ^ other.parity[c % b.max(1)]).collect();
        let grading = match (&self.grading, &other.grading) {
            (Some(x), Some(y)) => Some((0..n).map(|c| x[c / b] + y[c % b]).collect()),
            _ => None,
        };
        GradedP1Module::new(f, parity, alpha, beta, grading)
    }

    /// M^# = Hom_k(M, k) with S(u) = −u, S(v) = −v.
    pub fn dual(&self) -> Result<GradedP1Module> {
        let f = &self.field;
        let d = self.dim();
        let alpha = self.alpha.transpose().scale(f.neg(1));
        let mut beta = Matrix::zeros(f, d, d);
        for i in 0..d {
            for j in 0..d {
                // (v·e_i^*) = −(−1)^{|i|} Σ_j β_ij e_j^*
                let c = self.beta.get(i, j);
                if c != 0 {
                    let s = if self.parity[i] == 1 { c } else { f.neg(c) };
                    beta.set(j, i, s);
                }
            }
        }
        let grading = self.grading.as_ref().map(|g| g.iter().map(|x| -x).collect());
        GradedP1Module::new(f, self.parity.clone(), alpha, beta, grading)
    }

    /// Degree-homogeneous minimal generators: a complement of ⟨u,v⟩M in
    /// each degree, as coordinate vectors.
    pub fn minimal_generators(&self) -> Result<Vec<(i64, Vec<Fe>)>> {
        let g = self.grading.as_ref().ok_or_else(|| Error::Invalid("minimal generators need a grading".into()))?;
        let f = &self.field;
        let d = self.dim();
        let mut degs: Vec<i64> = g.clone();
        degs.sort();
        degs.dedup();
        let mut out = Vec::new();
        let mut ech = Echelon::new(f);
        for j in 0..d {
            for m in [&self.alpha, &self.beta] {
                let v: SparseVec = (0..d).filter(|&i| m.get(i, j) != 0).map(|i| (i as u64, m.get(i, j))).collect();
                if !v.is_empty() {
                    ech.insert(v, Vec::new());
                }
            }
        }
        for deg in degs {
            for i in (0..d).filter(|&i| g[i] == deg) {
                if matches!(ech.insert(vec![(i as u64, 1)], Vec::new()), Inserted::Independent) {
                    let mut e = vec![0; d];
                    e[i] = 1;
                    out.push((deg, e));
                }
            }
        }
        Ok(out)
    }
}

/// A homogeneous map of graded free P₁-modules ⊕P₁(−s_j) -> ⊕P₁(−t_i);
/// column j is the image of the j-th source generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P1Presentation {
    pub source_degrees: Vec<i64>,
    pub target_degrees: Vec<i64>,
    pub columns: Vec<Vec<P1Elem>>,
}

impl P1Presentation {
    pub fn validate(&self, p: u32) -> Result<()> {
        if self.columns.len() != self.source_degrees.len() {
            return Err(Error::Shape("one column per source generator".into()));
        }
        for (j, col) in self.columns.iter().enumerate() {
            if col.len() != self.target_degrees.len() {
                return Err(Error::Shape(format!("column {j} has {} entries", col.len())));
            }
            for (i, x) in col.iter().enumerate() {
                for &(a, e) in x.terms.keys() {
                    if self.target_degrees[i] + mono_degree(p, a, e) != self.source_degrees[j] {
                        return invalid(format!("entry ({i},{j}) is not homogeneous of the right degree"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_minimal(&self) -> bool {
        self.columns.iter().flatten().all(|x| x.in_max_ideal())
    }

    /// self ∘ other, where other maps into the source of self.
    pub fn compose(&self, f: &Fq, other: &P1Presentation) -> Vec<Vec<P1Elem>> {
        other
            .columns
            .iter()
            .map(|col| {
                (0..self.target_degrees.len())
                    .map(|i| {
                        col.iter()
                            .zip(&self.columns)
                            .fold(P1Elem::zero(), |acc, (c, mine)| acc.add(f, &mine[i].mul(f, c)))
                    })
                    .collect()
            })
            .collect()
    }

    pub fn format(&self, f: &Fq) -> Vec<Vec<String>> {
        (0..self.target_degrees.len()).map(|i| self.columns.iter().map(|c| c[i].format(f)).collect()).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ResolutionStep {
    pub index: usize,
    pub betti: usize,
    pub degrees: Vec<i64>,
    /// F_index -> F_{index−1}, entries as strings in u, v.
    pub matrix: Vec<Vec<String>>,
    #[serde(skip)]
    pub map: P1Presentation,
}

#[derive(Clone, Copy, Debug)]
pub struct SyzygyConfig {
    /// Consecutive degrees without new generators needed to stop.
    pub window: i64,
    /// How far past the largest input degree the search may run.
    pub span: i64,
}

impl SyzygyConfig {
    pub fn for_prime(p: u32) -> SyzygyConfig {
        SyzygyConfig { window: 2 * p as i64, span: 8 * p as i64 }
    }
}

fn key(j: usize, a: u32, e: u8) -> u64 {
    ((j as u64) << 40) | ((a as u64) << 1) | e as u64
}

fn unkey(k: u64) -> (usize, u32, u8) {
    ((k >> 40) as usize, ((k & ((1 << 40) - 1)) >> 1) as u32, (k & 1) as u8)
}

/// The monomial u^a v^e of degree `rem`, if any (p is odd so e is forced).
fn mono_of_degree(p: u32, rem: i64) -> Option<(u32, u8)> {
    if rem < 0 {
        return None;
    }
    let e = (rem % 2) as u8;
    let a = rem - p as i64 * e as i64;
    (a >= 0).then_some(((a / 2) as u32, e))
}

fn shift_vec(f: &Fq, v: &SparseVec, a: u32, e: u8) -> SparseVec {
    let out = v
        .iter()
        .map(|&(k, c)| {
            let (j, b, g) = unkey(k);
            let (s, x, y) = mono_mul(f, b, g, a, e);
            (key(j, x, y), f.mul(s, c))
        })
        .collect();
    sv_from_unsorted(f, out)
}

/// Generators of the kernel of a homogeneous map out of ⊕P₁(−s_j), found
/// degree by degree. `image(j, a, e)` is the image of u^a v^e e_j in any
/// fixed coordinate system of the target.
fn graded_kernel(
    f: &Fq,
    src: &[i64],
    top: i64,
    cfg: &SyzygyConfig,
    image: &dyn Fn(usize, u32, u8) -> SparseVec,
) -> Result<Vec<(i64, SparseVec)>> {
    let p = f.p();
    if src.is_empty() {
        return Ok(Vec::new());
    }
    let lo = *src.iter().min().unwrap();
    let hi = (*src.iter().max().unwrap()).max(top);
    let mut kernels: HashMap<i64, Vec<SparseVec>> = HashMap::new();
    let mut gens: Vec<(i64, SparseVec)> = Vec::new();
    let mut last_new = hi;
    let mut d = lo;
    loop {
        if d > hi + cfg.span {
            return Err(Error::Cap(format!(
                "kernel generators still appearing at degree {last_new}; searched to {d} with window {}",
                cfg.window
            )));
        }
        let basis: Vec<u64> =
            src.iter().enumerate().filter_map(|(j, &s)| mono_of_degree(p, d - s).map(|(a, e)| key(j, a, e))).collect();
        let mut kern = Vec::new();
        if !basis.is_empty() {
            let cols: Vec<SparseVec> = basis
                .iter()
                .map(|&k| {
                    let (j, a, e) = unkey(k);
                    image(j, a, e)
                })
                .collect();
            let mut rows: Vec<u64> = cols.iter().flatten().map(|e| e.0).collect();
            rows.sort_unstable();
            rows.dedup();
            let mut m = Matrix::zeros(f, rows.len(), basis.len());
            for (c, col) in cols.iter().enumerate() {
                for &(k, x) in col {
                    m.set(rows.binary_search(&k).unwrap(), c, x);
                }
            }
            for v in m.kernel() {
                kern.push(sv_from_unsorted(
                    f,
                    basis.iter().zip(&v).filter(|e| *e.1 != 0).map(|(&k, &x)| (k, x)).collect(),
                ));
            }
        }
        let mut ech = Echelon::new(f);
        for (shift, a, e) in [(2, 1, 0), (p as i64, 0, 1)] {
            for v in kernels.get(&(d - shift)).into_iter().flatten() {
                ech.insert(shift_vec(f, v, a, e), Vec::new());
            }
        }
        for v in &kern {
            if matches!(ech.insert(v.clone(), Vec::new()), Inserted::Independent) {
                gens.push((d, v.clone()));
                last_new = last_new.max(d);
            }
        }
        // Hilbert balance: the submodule generated so far fills the kernel
        let mut span = Echelon::new(f);
        for (gd, g) in &gens {
            if let Some((a, e)) = mono_of_degree(p, d - gd) {
                span.insert(shift_vec(f, g, a, e), Vec::new());
            }
        }
        if span.rank() != kern.len() {
            return Err(Error::Check(format!(
                "Hilbert balance fails in degree {d}: generated {} vs kernel {}",
                span.rank(),
                kern.len()
            )));
        }
        kernels.insert(d, kern);
        if d >= last_new + cfg.window {
            return Ok(gens);
        }
        d += 1;
    }
}

fn gens_to_presentation(src: &[i64], gens: Vec<(i64, SparseVec)>) -> P1Presentation {
    let columns = gens
        .iter()
        .map(|(_, v)| {
            let mut col = vec![P1Elem::zero(); src.len()];
            for &(k, c) in v {
                let (j, a, e) = unkey(k);
                col[j].terms.insert((a, e), c);
            }
            col
        })
        .collect();
    P1Presentation { source_degrees: gens.iter().map(|g| g.0).collect(), target_degrees: src.to_vec(), columns }
}

/// The next syzygy: minimal generators of ker(pres), as the map onto them.
pub fn syzygy_step(f: &Fq, pres: &P1Presentation, index: usize, cfg: &SyzygyConfig) -> Result<ResolutionStep> {
    let p = f.p();
    pres.validate(p)?;
    let src = &pres.source_degrees;
    let top = pres.target_degrees.iter().copied().max().unwrap_or(0);
    let image = |j: usize, a: u32, e: u8| -> SparseVec {
        let mut out = Vec::new();
        for (i, x) in pres.columns[j].iter().enumerate() {
            for (&(b, g), &c) in &x.terms {
                let (s, y, z) = mono_mul(f, b, g, a, e);
                out.push((key(i, y, z), f.mul(s, c)));
            }
        }
        sv_from_unsorted(f, out)
    };
    let gens = graded_kernel(f, src, top, cfg, &image)?;
    let map = gens_to_presentation(src, gens);
    Ok(ResolutionStep {
        index,
        betti: map.source_degrees.len(),
        degrees: map.source_degrees.clone(),
        matrix: map.format(f),
        map,
    })
}

/// Minimal graded resolution of coker(pres) through F_len. Step 0 carries
/// the generators of F₀ and step 1 the presentation itself.
pub fn resolve_presentation(
    f: &Fq,
    pres: &P1Presentation,
    len: usize,
    cfg: &SyzygyConfig,
) -> Result<Vec<ResolutionStep>> {
    pres.validate(f.p())?;
    if !pres.is_minimal() {
        return invalid("the presentation must be minimal (entries in ⟨u, v⟩)");
    }
    let top = P1Presentation {
        source_degrees: pres.target_degrees.clone(),
        target_degrees: vec![],
        columns: vec![vec![]; pres.target_degrees.len()],
    };
    let mut steps = vec![ResolutionStep {
        index: 0,
        betti: top.source_degrees.len(),
        degrees: top.source_degrees.clone(),
        matrix: vec![],
        map: top,
    }];
    if len >= 1 {
        steps.push(ResolutionStep {
            index: 1,
            betti: pres.source_degrees.len(),
            degrees: pres.source_degrees.clone(),
            matrix: pres.format(f),
            map: pres.clone(),
        });
    }
    for i in 2..=len {
        let prev = &steps[i - 1].map;
        let next = syzygy_step(f, prev, i, cfg)?;
        steps.push(next);
    }
    Ok(steps)
}

/// Minimal graded resolution of a graded module through F_len.
pub fn resolve_module(m: &GradedP1Module, len: usize, cfg: &SyzygyConfig) -> Result<Vec<ResolutionStep>> {
    let f = &m.field;
    let gens = m.minimal_generators()?;
    let degs: Vec<i64> = gens.iter().map(|g| g.0).collect();
    let top =
        P1Presentation { source_degrees: degs.clone(), target_degrees: vec![], columns: vec![vec![]; degs.len()] };
    let mut steps =
        vec![ResolutionStep { index: 0, betti: degs.len(), degrees: degs.clone(), matrix: vec![], map: top }];
    if len == 0 {
        return Ok(steps);
    }
    let pw = ActionPowers::new(m);
    let image = |j: usize, a: u32, e: u8| -> SparseVec {
        let x = P1Elem::mono(1, a, e).eval(&pw).apply(&gens[j].1);
        x.iter().enumerate().filter(|e| *e.1 != 0).map(|(i, &c)| (i as u64, c)).collect()
    };
    let top_deg = m.grading.as_ref().unwrap().iter().copied().max().unwrap_or(0);
    let k1 = graded_kernel(f, &degs, top_deg, cfg, &image)?;
    let map = gens_to_presentation(&degs, k1);
    steps.push(ResolutionStep {
        index: 1,
        betti: map.source_degrees.len(),
        degrees: map.source_degrees.clone(),
        matrix: map.format(f),
        map,
    });
    for i in 2..=len {
        let next = syzygy_step(f, &steps[i - 1].map, i, cfg)?;
        steps.push(next);
    }
    Ok(steps)
}

/// Consecutive maps compose to zero and every map is minimal.
pub fn check_resolution(f: &Fq, steps: &[ResolutionStep]) -> Report {
    let mut rep = Report { checks: Vec::new() };
    let mut w = None;
    for i in 2..steps.len() {
        let comp = steps[i - 1].map.compose(f, &steps[i].map);
        if comp.iter().flatten().any(|x| !x.is_zero()) {
            w = Some(format!("d_{} ∘ d_{} != 0", i - 1, i));
        }
    }
    rep.push("complex", w);
    let w = steps.iter().skip(1).find(|s| !s.map.is_minimal()).map(|s| format!("d_{} has a unit entry", s.index));
    rep.push("minimal", w);
    rep
}

/// P₁/⟨u, v⟩ presented by (u v).
pub fn residue_field_presentation(f: &Fq) -> P1Presentation {
    P1Presentation {
        source_degrees: vec![2, f.p() as i64],
        target_degrees: vec![0],
        columns: vec![vec![P1Elem::u()], vec![P1Elem::v()]],
    }
}

type KRes = Arc<Vec<ResolutionStep>>;

/// The minimal resolution of k through F_len, shared per field.
pub fn residue_field_resolution(f: &Fq, len: usize) -> Result<KRes> {
    static C: OnceLock<Mutex<HashMap<(u32, u32), KRes>>> = OnceLock::new();
    let cache = C.get_or_init(Default::default);
    let key = (f.p(), f.e());
    if let Some(r) = cache.lock().unwrap().get(&key) {
        if r.len() > len {
            return Ok(r.clone());
        }
    }
    let cfg = SyzygyConfig::for_prime(f.p());
    let mut steps = match cache.lock().unwrap().get(&key) {
        Some(r) => r.as_ref().clone(),
        None => resolve_presentation(f, &residue_field_presentation(f), 1, &cfg)?,
    };
    // a little headroom so nearby requests hit the cache
    let want = len + 4;
    while steps.len() <= want {
        let i = steps.len();
        let next = syzygy_step(f, &steps[i - 1].map, i, &cfg)?;
        steps.push(next);
    }
    let r = Arc::new(steps);
    cache.lock().unwrap().insert(key, r.clone());
    Ok(r)
}

/// The block matrix of d_i ⊗ M : M^{b_i} -> M^{b_{i−1}}.
fn tensor_block(f: &Fq, step: &ResolutionStep, pw: &ActionPowers, d: usize) -> Matrix {
    let map = &step.map;
    let (rows, cols) = (map.target_degrees.len(), map.source_degrees.len());
    let mut out = Matrix::zeros(f, rows * d, cols * d);
    for (c, col) in map.columns.iter().enumerate() {
        for (r, x) in col.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let b = x.eval(pw);
            for i in 0..d {
                for j in 0..d {
                    out.set(r * d + i, c * d + j, b.get(i, j));
                }
            }
        }
    }
    out
}

fn rank_of(m: &Matrix) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        0
    } else {
        m.rank()
    }
}

/// dim Tor_i^{P₁}(k, M) for i = 0..=n, via the resolution of k.
pub fn betti_numbers(m: &GradedP1Module, n: usize) -> Result<Vec<usize>> {
    let f = &m.field;
    let d = m.dim();
    let res = residue_field_resolution(f, n + 1)?;
    let pw = ActionPowers::new(m);
    let ranks: Vec<usize> = (1..=n + 1).map(|i| rank_of(&tensor_block(f, &res[i], &pw, d))).collect();
    Ok((0..=n)
        .map(|i| {
            let dim = res[i].betti * d;
            let out_rank = if i == 0 { 0 } else { ranks[i - 1] };
            dim - out_rank - ranks[i]
        })
        .collect())
}

/// dim Ext^i_{P₁}(k, M) for i in lo..=hi, via Hom from the resolution of k.
pub fn ext_dims(m: &GradedP1Module, lo: usize, hi: usize) -> Result<Vec<usize>> {
    let f = &m.field;
    let d = m.dim();
    let res = residue_field_resolution(f, hi + 1)?;
    let pw = ActionPowers::new(m);
    // δ^i : Hom(F_{i−1}, M) -> Hom(F_i, M) is the block transpose of d_i ⊗ M
    let delta_rank = |i: usize| -> usize {
        if i == 0 {
            return 0;
        }
        let step = &res[i];
        let map = &step.map;
        let (rows, cols) = (map.source_degrees.len(), map.target_degrees.len());
        let mut out = Matrix::zeros(f, rows * d, cols * d);
        for (c, col) in map.columns.iter().enumerate() {
            for (r, x) in col.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let b = x.eval(&pw);
                for a in 0..d {
                    for bb in 0..d {
                        out.set(c * d + a, r * d + bb, b.get(a, bb));
                    }
                }
            }
        }
        rank_of(&out)
    };
    Ok((lo..=hi).map(|i| res[i].betti * d - delta_rank(i + 1) - delta_rank(i)).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct IdDecision {
    /// id(M) = ∞, decided by Ω²(M) ≠ 0
    pub infinite: bool,
    pub betti: Vec<usize>,
    pub ext_window: (usize, usize),
    pub ext_dims: Vec<usize>,
    /// the Ext window contains a nonzero group
    pub ext_infinite: bool,
    /// b_i = b_{i+2} for i ≥ 2 in the computed range
    pub periodic: bool,
}

impl IdDecision {
    pub fn agree(&self) -> bool {
        self.infinite == self.ext_infinite
    }
}

pub const BETTI_RANGE: usize = 6;

/// Whether φ*M has infinite injective dimension, with Betti numbers b₀..b₆
/// and the Ext window [2 dim M, 2 dim M + 3] as a cross-check.
pub fn id_infinite(m: &GradedP1Module) -> Result<IdDecision> {
    let rep = m.check();
    if let Some(bad) = rep.first_failure() {
        return invalid(format!("not a P₁-module ({})", bad.name));
    }
    let betti = betti_numbers(m, BETTI_RANGE)?;
    let lo = 2 * m.dim();
    let ext = ext_dims(m, lo, lo + 3)?;
    let periodic = (2..betti.len() - 2).all(|i| betti[i] == betti[i + 2]);
    Ok(IdDecision {
        infinite: betti[2] != 0,
        ext_infinite: ext.iter().any(|&x| x != 0),
        ext_window: (lo, lo + 3),
        ext_dims: ext,
        periodic,
        betti,
    })
}
