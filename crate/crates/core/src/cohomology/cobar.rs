//! The reduced cobar complex of a finite-dimensional Hopf superalgebra H:
//! C^n = Ī^{⊗n} with Ī = ker ε, and
//! d(a_1 ⊗ ⋯ ⊗ a_n) = Σ_i (−1)^i a_1 ⊗ ⋯ ⊗ Δ̄(a_i) ⊗ ⋯ ⊗ a_n.
//! The complex splits into blocks by internal degree (or by parity when H
//! is not Z-graded), and all linear algebra is done blockwise.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use serde_json::{json, Value};

use super::sparse::{sv_axpy, sv_from_unsorted, Echelon, Inserted, SparseVec};
use crate::error::{invalid, Error, Result};
use crate::fields::{Fe, Fq, Matrix};
use crate::superalgebra::hopf::{AlgebraMorphism, HopfRef, Report};

/// Largest C^{n+1} (in basis tuples) a block computation may touch.
pub const DEFAULT_COBAR_BUDGET: u128 = 50_000_000;

/// A cochain in C^n: basis-index tuples of Ī (indices into the basis of H,
/// never the unit) with coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Cochain {
    pub n: usize,
    pub terms: BTreeMap<Vec<u32>, Fe>,
}

impl Cochain {
    pub fn zero(n: usize) -> Cochain {
        Cochain { n, terms: BTreeMap::new() }
    }

    /// The 1-cochain given by an element of Ī.
    pub fn from_vec(v: &[Fe]) -> Result<Cochain> {
        if v[0] != 0 {
            return invalid("1-cochains must lie in the augmentation ideal");
        }
        let terms = v.iter().enumerate().filter(|e| *e.1 != 0).map(|(i, &c)| (vec![i as u32], c)).collect();
        Ok(Cochain { n: 1, terms })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, f: &Fq, key: Vec<u32>, c: Fe) {
        if c == 0 {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = f.add(*e.get(), c);
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, f: &Fq, other: &Cochain) -> Cochain {
        let mut out = self.clone();
        for (k, &c) in &other.terms {
            out.add_term(f, k.clone(), c);
        }
        out
    }

    pub fn scale(&self, f: &Fq, c: Fe) -> Cochain {
        if c == 0 {
            return Cochain::zero(self.n);
        }
        Cochain { n: self.n, terms: self.terms.iter().map(|(k, &v)| (k.clone(), f.mul(v, c))).collect() }
    }

    /// Cup product: concatenation of tensors.
    pub fn cup(&self, f: &Fq, other: &Cochain) -> Cochain {
        let mut out = Cochain::zero(self.n + other.n);
        for (a, &x) in &self.terms {
            for (b, &y) in &other.terms {
                let mut k = a.clone();
                k.extend_from_slice(b);
                out.add_term(f, k, f.mul(x, y));
            }
        }
        out
    }

    /// Sum of two-fold tensors a ⊗ b of elements of Ī.
    pub fn tensor2(f: &Fq, a: &[Fe], b: &[Fe]) -> Result<Cochain> {
        Ok(Cochain::from_vec(a)?.cup(f, &Cochain::from_vec(b)?))
    }

    /// Image under φ^{⊗n} for an algebra map φ preserving counits.
    pub fn apply(&self, phi: &AlgebraMorphism) -> Result<Cochain> {
        self.apply_linear(&phi.target.field, &phi.matrix)
    }

    /// Apply a linear map (target x source matrix) factorwise. The map must
    /// send the augmentation ideal into the augmentation ideal.
    pub fn apply_linear(&self, f: &Fq, m: &Matrix) -> Result<Cochain> {
        let images: HashMap<u32, Vec<(u32, Fe)>> = self
            .terms
            .keys()
            .flatten()
            .map(|&i| {
                let img = m.col(i as usize);
                (i, img.iter().enumerate().filter(|e| *e.1 != 0).map(|(k, &c)| (k as u32, c)).collect())
            })
            .collect();
        if images.values().flatten().any(|&(k, _)| k == 0) {
            return Err(Error::Check("map does not preserve the augmentation ideal".into()));
        }
        let mut out = Cochain::zero(self.n);
        for (key, &c) in &self.terms {
            let mut partial: Vec<(Vec<u32>, Fe)> = vec![(Vec::with_capacity(self.n), c)];
            for i in key {
                let mut next = Vec::with_capacity(partial.len() * images[i].len());
                for (k, x) in &partial {
                    for &(j, y) in &images[i] {
                        let mut k2 = k.clone();
                        k2.push(j);
                        next.push((k2, f.mul(*x, y)));
                    }
                }
                partial = next;
            }
            for (k, x) in partial {
                out.add_term(f, k, x);
            }
        }
        Ok(out)
    }

    /// Sparse-tensor JSON: [[basis-index list, coefficient], ...].
    pub fn to_json(&self, f: &Fq) -> Value {
        json!(self.terms.iter().map(|(k, &c)| json!([k, f.to_int(c).unwrap_or(c as u32)])).collect::<Vec<_>>())
    }
}

/// Reduced cobar complex with lazily computed blocks.
pub struct CobarComplex {
    pub hopf: HopfRef,
    pub n_max: usize,
    pub budget: u128,
    /// Δ̄(b_i) restricted to Ī ⊗ Ī.
    dbar: Vec<Vec<(u32, u32, Fe)>>,
    /// internal degree of each basis element (parity when ungraded)
    grade: Vec<i64>,
    graded: bool,
    coboundaries: Mutex<HashMap<(usize, i64), Arc<Echelon>>>,
}

impl std::fmt::Debug for CobarComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CobarComplex(dim {}, n_max {})", self.hopf.dim(), self.n_max)
    }
}

#[derive(Clone, Debug)]
pub struct CobarCohomology {
    pub n: usize,
    pub dim: usize,
    /// (block grade, dimension) for the nonzero blocks
    pub block_dims: Vec<(i64, usize)>,
    /// representative cocycles, present when requested
    pub basis: Vec<Cochain>,
}

impl CobarComplex {
    pub fn new(hopf: HopfRef, n_max: usize) -> Result<CobarComplex> {
        let n = hopf.dim();
        if hopf.unit != hopf.basis_vec(0) || hopf.counit != hopf.basis_vec(0) {
            return invalid("the cobar complex needs basis[0] = 1 and ε = δ_0");
        }
        let dbar =
            (0..n).map(|i| hopf.comult[i].iter().copied().filter(|&(l, r, _)| l != 0 && r != 0).collect()).collect();
        let graded = hopf.graded;
        let grade = hopf.basis.iter().map(|b| if graded { b.degree } else { b.parity as i64 }).collect();
        Ok(CobarComplex {
            hopf,
            n_max,
            budget: DEFAULT_COBAR_BUDGET,
            dbar,
            grade,
            graded,
            coboundaries: Mutex::new(HashMap::new()),
        })
    }

    pub fn field(&self) -> &Fq {
        &self.hopf.field
    }

    fn base(&self) -> u64 {
        self.hopf.dim() as u64
    }

    pub fn encode(&self, t: &[u32]) -> u64 {
        t.iter().fold(0u64, |acc, &i| acc * self.base() + i as u64)
    }

    pub fn decode(&self, mut key: u64, n: usize) -> Vec<u32> {
        let mut t = vec![0; n];
        for k in (0..n).rev() {
            t[k] = (key % self.base()) as u32;
            key /= self.base();
        }
        t
    }

    fn block_of(&self, t: &[u32]) -> i64 {
        let g: i64 = t.iter().map(|&i| self.grade[i as usize]).sum();
        if self.graded {
            g
        } else {
            g % 2
        }
    }

    fn check_budget(&self, n: usize) -> Result<()> {
        if n > self.n_max + 1 {
            return invalid(format!("degree {n} exceeds the cap {}", self.n_max));
        }
        let est = ((self.hopf.dim() - 1) as u128).saturating_pow(n as u32);
        if est > self.budget {
            return Err(Error::Budget {
                what: format!("cobar cochains in degree {n}"),
                estimate: est,
                budget: self.budget,
            });
        }
        Ok(())
    }

    /// Grades b for which C^n_b is nonzero.
    pub fn blocks(&self, n: usize) -> BTreeSet<i64> {
        let gs: BTreeSet<i64> = (1..self.hopf.dim()).map(|i| self.grade[i]).collect();
        let mut cur: BTreeSet<i64> = [0].into();
        for _ in 0..n {
            cur = cur.iter().flat_map(|&a| gs.iter().map(move |&g| a + g)).collect();
        }
        if self.graded {
            cur
        } else {
            cur.into_iter().map(|g| g % 2).collect()
        }
    }

    /// Basis tuples of C^n in block b, sorted by key.
    pub fn block_basis(&self, n: usize, b: i64) -> Vec<u64> {
        let m = self.hopf.dim();
        let mut by_grade: BTreeMap<i64, Vec<u32>> = BTreeMap::new();
        for i in 1..m {
            by_grade.entry(self.grade[i]).or_default().push(i as u32);
        }
        let (gmin, gmax) = (*by_grade.keys().next().unwrap_or(&0), *by_grade.keys().last().unwrap_or(&0));
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        self.enum_rec(n, b, gmin, gmax, &by_grade, &mut cur, &mut out);
        out.sort_unstable();
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn enum_rec(
        &self,
        n: usize,
        left: i64,
        gmin: i64,
        gmax: i64,
        by_grade: &BTreeMap<i64, Vec<u32>>,
        cur: &mut Vec<u32>,
        out: &mut Vec<u64>,
    ) {
        let rem = (n - cur.len()) as i64;
        if rem == 0 {
            let ok = if self.graded { left == 0 } else { left.rem_euclid(2) == 0 };
            if ok {
                out.push(self.encode(cur));
            }
            return;
        }
        if self.graded && (left < rem * gmin || left > rem * gmax) {
            return;
        }
        for (&g, idx) in by_grade {
            for &i in idx {
                cur.push(i);
                self.enum_rec(n, left - g, gmin, gmax, by_grade, cur, out);
                cur.pop();
            }
        }
    }

    /// d of a basis tuple, as a sparse vector over C^{n+1} keys.
    pub fn d_tuple(&self, t: &[u32]) -> SparseVec {
        let f = self.field();
        let mut terms = Vec::new();
        let mut buf = Vec::with_capacity(t.len() + 1);
        for k in 0..t.len() {
            let sign = if k % 2 == 0 { f.neg(1) } else { 1 };
            for &(l, r, c) in &self.dbar[t[k] as usize] {
                buf.clear();
                buf.extend_from_slice(&t[..k]);
                buf.push(l);
                buf.push(r);
                buf.extend_from_slice(&t[k + 1..]);
                terms.push((self.encode(&buf), f.mul(sign, c)));
            }
        }
        sv_from_unsorted(f, terms)
    }

    pub fn to_sparse(&self, c: &Cochain) -> SparseVec {
        sv_from_unsorted(self.field(), c.terms.iter().map(|(k, &v)| (self.encode(k), v)).collect())
    }

    pub fn from_sparse(&self, n: usize, v: &[(u64, Fe)]) -> Cochain {
        Cochain { n, terms: v.iter().map(|&(k, c)| (self.decode(k, n), c)).collect() }
    }

    pub fn d(&self, c: &Cochain) -> Cochain {
        let f = self.field();
        let mut acc: SparseVec = Vec::new();
        for (t, &x) in &c.terms {
            acc = sv_axpy(f, &acc, x, &self.d_tuple(t));
        }
        self.from_sparse(c.n + 1, &acc)
    }

    pub fn is_cocycle(&self, c: &Cochain) -> bool {
        c.terms.keys().all(|k| k.len() == c.n && k.iter().all(|&i| i != 0 && (i as usize) < self.hopf.dim()))
            && self.d(c).is_zero()
    }

    /// d_{n+1} ∘ d_n = 0 on every basis tuple, for n < n_max.
    pub fn check_d_squared(&self) -> Result<Report> {
        let mut rep = Report { checks: Vec::new() };
        let f = self.field();
        for n in 1..self.n_max {
            self.check_budget(n + 2)?;
            let mut w = None;
            'b: for b in self.blocks(n) {
                for key in self.block_basis(n, b) {
                    let t = self.decode(key, n);
                    let mut dd: SparseVec = Vec::new();
                    for &(k2, c) in &self.d_tuple(&t) {
                        dd = sv_axpy(f, &dd, c, &self.d_tuple(&self.decode(k2, n + 1)));
                    }
                    if !dd.is_empty() {
                        w = Some(format!("d²{:?} != 0", t));
                        break 'b;
                    }
                }
            }
            rep.push(&format!("d_squared_{n}"), w);
        }
        Ok(rep)
    }

    /// Echelon basis of the coboundaries B^n in block b.
    pub fn coboundaries(&self, n: usize, b: i64) -> Result<Arc<Echelon>> {
        if let Some(e) = self.coboundaries.lock().unwrap().get(&(n, b)) {
            return Ok(e.clone());
        }
        self.check_budget(n)?;
        let mut e = Echelon::new(self.field());
        if n >= 2 {
            for key in self.block_basis(n - 1, b) {
                e.insert(self.d_tuple(&self.decode(key, n - 1)), Vec::new());
            }
        }
        let e = Arc::new(e);
        self.coboundaries.lock().unwrap().insert((n, b), e.clone());
        Ok(e)
    }

    /// dim H^n in block b, and representatives if `with_basis`.
    fn block_cohomology(&self, n: usize, b: i64, with_basis: bool) -> Result<(usize, Vec<Cochain>)> {
        self.check_budget(n + 1)?;
        let cells = self.block_basis(n, b);
        let mut dn = Echelon::new(self.field());
        let mut kernel = Vec::new();
        let mut rank = 0;
        for (i, &key) in cells.iter().enumerate() {
            let track = if with_basis { vec![(i as u64, 1)] } else { Vec::new() };
            match dn.insert(self.d_tuple(&self.decode(key, n)), track) {
                Inserted::Independent => rank += 1,
                Inserted::Dependent(t) => {
                    if with_basis {
                        kernel.push(t);
                    }
                }
            }
        }
        let bnd = self.coboundaries(n, b)?;
        let dim = cells.len() - rank - bnd.rank();
        if !with_basis {
            return Ok((dim, Vec::new()));
        }
        let kernel: Vec<SparseVec> = kernel
            .into_iter()
            .map(|t| sv_from_unsorted(self.field(), t.iter().map(|&(i, c)| (cells[i as usize], c)).collect()))
            .collect();
        let reps: Vec<Cochain> =
            canonical_complement(self.field(), &bnd, kernel).iter().map(|v| self.from_sparse(n, v)).collect();
        if reps.len() != dim {
            return Err(Error::Check(format!("cocycle count mismatch in degree {n}, block {b}")));
        }
        Ok((dim, reps))
    }

    pub fn cohomology(&self, n: usize, with_basis: bool) -> Result<CobarCohomology> {
        if n == 0 {
            let one = Cochain::zero(0);
            let mut unit = one.clone();
            unit.terms.insert(Vec::new(), 1);
            return Ok(CobarCohomology {
                n,
                dim: 1,
                block_dims: vec![(0, 1)],
                basis: if with_basis { vec![unit] } else { vec![] },
            });
        }
        let mut dim = 0;
        let mut block_dims = Vec::new();
        let mut basis = Vec::new();
        for b in self.blocks(n) {
            let (d, reps) = self.block_cohomology(n, b, with_basis)?;
            if d > 0 {
                block_dims.push((b, d));
            }
            dim += d;
            basis.extend(reps);
        }
        Ok(CobarCohomology { n, dim, block_dims, basis })
    }

    /// Coefficients c with z = Σ c_i reps_i + d(η). Fails if the reps are
    /// dependent modulo coboundaries or z is not in their span.
    pub fn express(&self, z: &Cochain, reps: &[Cochain]) -> Result<Vec<Fe>> {
        let f = self.field();
        let n = z.n;
        if n == 0 {
            return invalid("degree 0 is handled by the caller");
        }
        let mut blocks: BTreeSet<i64> = BTreeSet::new();
        for c in reps.iter().chain(std::iter::once(z)) {
            if c.n != n {
                return Err(Error::Shape("cochains of different degrees".into()));
            }
            for k in c.terms.keys() {
                blocks.insert(self.block_of(k));
            }
        }
        let mut e = Echelon::new(f);
        for &b in &blocks {
            let bnd = self.coboundaries(n, b)?;
            e = merge(e, &bnd);
        }
        for (i, r) in reps.iter().enumerate() {
            if let Inserted::Dependent(_) = e.insert(self.to_sparse(r), vec![(i as u64, 1)]) {
                return Err(Error::Check(format!("representative {i} is dependent modulo coboundaries")));
            }
        }
        let (res, track) = e.reduce(self.to_sparse(z), Vec::new());
        if !res.is_empty() {
            return Err(Error::Check("cocycle is not in the span of the given classes".into()));
        }
        let mut out = vec![0; reps.len()];
        for (i, c) in track {
            out[i as usize] = f.neg(c);
        }
        Ok(out)
    }

    /// Whether z is a coboundary.
    pub fn is_coboundary(&self, z: &Cochain) -> Result<bool> {
        if z.is_zero() {
            return Ok(true);
        }
        let mut blocks: BTreeMap<i64, SparseVec> = BTreeMap::new();
        for (k, &c) in &z.terms {
            blocks.entry(self.block_of(k)).or_default().push((self.encode(k), c));
        }
        for (b, v) in blocks {
            let v = sv_from_unsorted(self.field(), v);
            if !self.coboundaries(z.n, b)?.contains(v) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Reduced echelon basis of span(vs) modulo the span of `bnd`: each vector
/// is zero on the pivots of `bnd` and on the other vectors' leading keys,
/// with leading coefficient 1. Depends only on the two subspaces.
pub fn canonical_complement(f: &Fq, bnd: &Echelon, vs: Vec<SparseVec>) -> Vec<SparseVec> {
    let mut e = Echelon::new(f);
    for v in vs {
        e.insert(bnd.reduce_full(v), Vec::new());
    }
    let mut out: Vec<SparseVec> = e.vectors().iter().map(|v| e.reduce_full_except_lead(v)).collect();
    out.sort_by_key(|v| v.last().map(|x| x.0));
    out
}

/// Union of echelon bases with disjoint key supports.
fn merge(mut into: Echelon, other: &Echelon) -> Echelon {
    if into.rank() == 0 {
        return other.clone();
    }
    into.absorb(other);
    into
}

impl Echelon {
    /// Insert every vector of a basis on keys disjoint from ours.
    pub fn absorb(&mut self, other: &Echelon) {
        for v in other.vectors() {
            self.insert(v.clone(), Vec::new());
        }
    }
}
