//! The cohomological support |G|_M up to a degree cap. H^n(G, Λ) with
//! Λ = End(M) is computed as Ext^n_{kG}(k, Λ) from a minimal free
//! resolution P of k over kG; the generators of H(G,k) are transported from
//! their cobar representatives through a comparison map into the bar
//! resolution, and products are Yoneda composites of chain-map lifts.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use super::sets::{check_height_one, support_set, SupportReport};
use crate::cohomology::classes::{cohomology_ring, family_cohomology};
use crate::cohomology::psi::psi_map;
use crate::cohomology::sparse::{sv_from_unsorted, Echelon, Inserted, SparseVec};
use crate::cohomology::Cochain;
use crate::error::{invalid, Error, Result};
use crate::fields::{linear_solve, Fe, FieldSpec, Fq, Matrix, Solution};
use crate::homvariety::tuple::GroupModule;
use crate::homvariety::{enumerate_variety_points, TargetFamily};
use crate::ring::{Monomial, Poly, PresentedGradedRing};
use crate::superalgebra::group::DualPair;
use crate::superalgebra::hopf::{ksign, FinDimHopf, Report};

/// Largest Λ^{c_n} (in coordinates) the ρ test may build.
pub const DEFAULT_SUPPORT_BUDGET: u128 = 400_000;

/// Minimal free resolution of k over R = kG. P_n = R^{c_n}; an element is a
/// dense vector of c_n blocks of length dim R.
pub struct KgResolution {
    pub pair: Arc<DualPair>,
    /// parities of the free generators of P_n
    pub parities: Vec<Vec<u8>>,
    /// images[n][k] = d_n(e_k) in P_{n−1} (images[0] is empty)
    pub images: Vec<Vec<Vec<Fe>>>,
    /// k-linear matrix of d_n : P_n -> P_{n−1}; mats[0] is ε : R -> k
    mats: Vec<Matrix>,
}

fn group(pair: &DualPair) -> &FinDimHopf {
    &pair.group
}

/// b · x for a basis element b of R acting blockwise on a vector of P.
fn act_basis(r: &FinDimHopf, b: usize, x: &[Fe]) -> Vec<Fe> {
    let n = r.dim();
    x.chunks(n).flat_map(|blk| r.mul_basis_vec(b, blk)).collect()
}

/// The R-linear extension of generator images (columns indexed (k, b)).
fn extend(r: &FinDimHopf, images: &[Vec<Fe>], rows: usize) -> Matrix {
    let n = r.dim();
    let mut m = Matrix::zeros(&r.field, rows, images.len() * n);
    for (k, img) in images.iter().enumerate() {
        for b in 0..n {
            for (i, x) in act_basis(r, b, img).into_iter().enumerate() {
                if x != 0 {
                    m.set(i, k * n + b, x);
                }
            }
        }
    }
    m
}

fn dense_to_sparse(v: &[Fe]) -> SparseVec {
    v.iter().enumerate().filter(|e| *e.1 != 0).map(|(i, &c)| (i as u64, c)).collect()
}

impl KgResolution {
    pub fn new(pair: Arc<DualPair>, len: usize) -> Result<KgResolution> {
        let r = group(&pair).clone();
        let f = r.field.clone();
        let n = r.dim();
        if r.unit != r.basis_vec(0) || r.counit != r.basis_vec(0) {
            return Err(Error::Check("group algebra needs basis[0] = 1 = ε-dual".into()));
        }
        let alg_gens: Vec<usize> = (0..pair.presentation.gens.len())
            .map(|g| {
                let mut e = vec![0; pair.presentation.gens.len()];
                e[g] = 1;
                pair.presentation.encode(&e)
            })
            .collect();
        let mut eps = Matrix::zeros(&f, 1, n);
        eps.set(0, 0, 1);
        let mut out =
            KgResolution { pair: pair.clone(), parities: vec![vec![0]], images: vec![vec![]], mats: vec![eps] };
        for deg in 1..=len {
            let prev = deg - 1;
            let par = |i: usize| out.parities[prev][i / n] ^ r.parity(i % n);
            let kernel = homogeneous_kernel(&out.mats[prev], &par);
            // minimal generators: a complement of Ī·K inside K
            let mut ech = Echelon::new(&f);
            for k in &kernel {
                for &g in &alg_gens {
                    ech.insert(dense_to_sparse(&act_basis(&r, g, k)), Vec::new());
                }
            }
            let mut gens = Vec::new();
            let mut pars = Vec::new();
            for k in kernel {
                if matches!(ech.insert(dense_to_sparse(&k), Vec::new()), Inserted::Independent) {
                    let i = k.iter().position(|&x| x != 0).unwrap();
                    pars.push(par(i));
                    gens.push(k);
                }
            }
            let rows = out.parities[prev].len() * n;
            out.mats.push(extend(&r, &gens, rows));
            out.parities.push(pars);
            out.images.push(gens);
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.images.len() - 1
    }

    pub fn betti(&self, n: usize) -> usize {
        self.parities[n].len()
    }

    /// d_{n−1} ∘ d_n = 0 and exactness in each computed degree.
    pub fn check(&self) -> Report {
        let mut rep = Report { checks: Vec::new() };
        let mut bad = None;
        for n in 1..self.mats.len() {
            if !self.mats[n - 1].mul(&self.mats[n]).unwrap().is_zero() {
                bad = Some(format!("d_{} d_{} != 0", n - 1, n));
            }
        }
        rep.push("complex", bad);
        let mut bad = None;
        for n in 1..self.mats.len() {
            let m = &self.mats[n - 1];
            let ker = m.cols() - m.rank();
            let im = self.mats[n].rank();
            if ker != im {
                bad = Some(format!("homology {} at P_{}", ker - im, n - 1));
            }
        }
        rep.push("exact", bad);
        rep
    }

    /// Ω^n k = ker d_{n−1} ⊂ P_{n−1} as a kG-module, even basis vectors first.
    pub fn syzygy_module(&self, n: usize, s: u32) -> Result<GroupModule> {
        if n == 0 || n > self.len() + 1 {
            return invalid(format!("Ω^{n} k needs 1 ≤ n ≤ {}", self.len() + 1));
        }
        let r = group(&self.pair);
        let dim = r.dim();
        let par = |i: usize| self.parities[n - 1][i / dim] ^ r.parity(i % dim);
        let basis = homogeneous_kernel(&self.mats[n - 1], &par);
        let m = basis.iter().filter(|v| par(v.iter().position(|&x| x != 0).unwrap()) == 0).count();
        let d = basis.len();
        let mut b = Matrix::zeros(&r.field, basis.first().map_or(0, |v| v.len()), d);
        for (j, v) in basis.iter().enumerate() {
            for (i, &x) in v.iter().enumerate() {
                b.set(i, j, x);
            }
        }
        let action = (0..dim)
            .map(|x| {
                let mut img = Matrix::zeros(&r.field, b.rows(), d);
                for (j, v) in basis.iter().enumerate() {
                    for (i, y) in act_basis(r, x, v).into_iter().enumerate() {
                        img.set(i, j, y);
                    }
                }
                match linear_solve(&b, &img)? {
                    Solution::Solved { particular, .. } => Ok(particular),
                    Solution::Inconsistent => Err(Error::Check("syzygy is not a submodule".into())),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let gm = GroupModule { r: 1, s, m, n: d - m, pair: self.pair.clone(), action };
        if let Some(bad) = gm.check().first_failure() {
            return Err(Error::Check(format!("Ω^{n} k: {}", bad.name)));
        }
        Ok(gm)
    }

    /// Chain map lifting z ∈ Hom(P_n, k): Z_j : P_{n+j} -> P_j for j ≤ upto.
    fn lift(&self, z: &[Fe], n: usize, upto: usize) -> Result<Vec<Matrix>> {
        let r = group(&self.pair);
        let f = &r.field;
        let dim = r.dim();
        if n + upto > self.len() {
            return Err(Error::Cap(format!("resolution has length {}, lift needs {}", self.len(), n + upto)));
        }
        let z0: Vec<Vec<Fe>> = z
            .iter()
            .map(|&c| {
                let mut v = vec![0; dim];
                v[0] = c;
                v
            })
            .collect();
        let mut out = vec![extend(r, &z0, dim)];
        for j in 1..=upto {
            let gens = &self.images[n + j];
            let mut rhs = Matrix::zeros(f, self.mats[j].rows(), gens.len());
            for (k, g) in gens.iter().enumerate() {
                for (i, x) in out[j - 1].apply(g).into_iter().enumerate() {
                    rhs.set(i, k, x);
                }
            }
            let Solution::Solved { particular, .. } = linear_solve(&self.mats[j], &rhs)? else {
                return Err(Error::Check(format!("chain-map lift fails at P_{j}")));
            };
            let imgs: Vec<Vec<Fe>> = (0..gens.len()).map(|k| particular.col(k)).collect();
            out.push(extend(r, &imgs, self.mats[j].cols()));
        }
        Ok(out)
    }
}

/// Null space of an even map, split into even and odd vectors.
fn homogeneous_kernel(m: &Matrix, par: &dyn Fn(usize) -> u8) -> Vec<Vec<Fe>> {
    let f = m.field();
    let mut out = Vec::new();
    for pi in 0..2u8 {
        let cols: Vec<usize> = (0..m.cols()).filter(|&c| par(c) == pi).collect();
        if cols.is_empty() {
            continue;
        }
        let mut sub = Matrix::zeros(f, m.rows(), cols.len());
        for i in 0..m.rows() {
            for (j, &c) in cols.iter().enumerate() {
                sub.set(i, j, m.get(i, c));
            }
        }
        for v in sub.kernel() {
            let mut full = vec![0; m.cols()];
            for (j, &c) in cols.iter().enumerate() {
                full[c] = v[j];
            }
            out.push(full);
        }
    }
    out
}

/// Hom(P_n, k) values of the cobar classes of H(G,k) and Yoneda products.
pub struct KgCohomology {
    pub family: TargetFamily,
    pub ring: PresentedGradedRing,
    pub res: KgResolution,
    pub cap: usize,
    /// per ring generator: its functional on P_n and the chain-map lift
    gens: Vec<(usize, Vec<Fe>, Vec<Matrix>)>,
}

/// F_c on basis elements of Ī_R^{⊗2}: (−1)^{|a||b|} Σ c_key ⟨a, key₀⟩⟨b, key₁⟩.
fn pair_table(pair: &DualPair, c: &Cochain) -> Vec<Vec<Fe>> {
    let r = &pair.group;
    let f = &r.field;
    let n = r.dim();
    let mut t = vec![vec![0; if c.n == 2 { n } else { 1 }]; n];
    for a in 0..n {
        for (key, &x) in &c.terms {
            let pa = pair.pairing.get(a, key[0] as usize);
            if pa == 0 {
                continue;
            }
            if c.n == 1 {
                t[a][0] = f.add(t[a][0], f.mul(x, pa));
                continue;
            }
            for b in 0..n {
                let pb = pair.pairing.get(b, key[1] as usize);
                if pb != 0 {
                    let s = ksign(f, r.parity(a), r.parity(b));
                    t[a][b] = f.add(t[a][b], f.mul(s, f.mul(x, f.mul(pa, pb))));
                }
            }
        }
    }
    t
}

impl KgCohomology {
    pub fn new(fam: &TargetFamily, f: &Fq, cap: usize) -> Result<KgCohomology> {
        check_height_one(fam)?;
        let (c, r, s, eta) = fam.coord_args();
        let pair = crate::superalgebra::cache::dual_pair(c, r, s, eta, f)?;
        let h = family_cohomology(fam, f)?;
        let coord = h.hopf();
        let same = coord.dim() == pair.coord.dim()
            && coord.basis.iter().zip(&pair.coord.basis).all(|(a, b)| a.label == b.label);
        if !same {
            return Err(Error::Check("cobar and group-algebra bases differ".into()));
        }
        let res = KgResolution::new(pair.clone(), cap)?;
        let ring = cohomology_ring(fam, f)?;
        let mut gens = Vec::new();
        for g in &ring.gens {
            let class = h.generator(&g.name)?;
            let z = res.transport(&class.rep)?;
            let lift = res.lift(&z, class.n, cap - class.n.min(cap))?;
            gens.push((class.n, z, lift));
        }
        Ok(KgCohomology { family: *fam, ring, res, cap, gens })
    }

    /// The functional on P_n of a ring monomial (Yoneda product of its
    /// generators in ring order).
    pub fn monomial_functional(&self, m: &Monomial) -> Result<Vec<Fe>> {
        let r = group(&self.res.pair);
        let dim = r.dim();
        let seq: Vec<usize> = m.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize)).collect();
        let Some((&first, rest)) = seq.split_first() else {
            return Ok(vec![1]);
        };
        let (n0, z0, _) = &self.gens[first];
        let mut deg = *n0;
        let mut row: Vec<Fe> = vec![0; z0.len() * dim];
        for (k, &c) in z0.iter().enumerate() {
            row[k * dim] = c;
        }
        let f = &r.field;
        for &g in rest {
            let (ng, _, lift) = &self.gens[g];
            let zj =
                lift.get(deg).ok_or_else(|| Error::Cap(format!("degree {} exceeds the cap {}", deg + ng, self.cap)))?;
            let mut next = vec![0; zj.cols()];
            for (i, &x) in row.iter().enumerate() {
                if x != 0 {
                    crate::fields::axpy(f, &mut next, x, zj.row(i));
                }
            }
            row = next;
            deg += ng;
        }
        Ok((0..self.res.betti(deg)).map(|k| row[k * dim]).collect())
    }

    /// Checks the transport: generator functionals come from bar cocycles,
    /// cobar coboundaries go to zero, and ring monomials give a basis of
    /// Hom(P_n, k) in every degree up to the cap.
    pub fn verify(&self) -> Result<Report> {
        let mut rep = self.res.check();
        let h = family_cohomology(&self.family, &self.res.pair.group.field)?;
        let mut bad = None;
        for g in &h.generators {
            if let Some(w) = self.res.bar_cocycle_defect(&g.rep) {
                bad = Some(format!("{}: {w}", g.name));
            }
        }
        rep.push("bar_cocycles", bad);
        let r = group(&self.res.pair);
        let mut bad = None;
        for b in 1..r.dim() {
            let mut c = Cochain::zero(1);
            c.add_term(&r.field, vec![b as u32], 1);
            let db = h.complex.d(&c);
            if !db.is_zero() && self.res.transport(&db)?.iter().any(|&x| x != 0) {
                bad = Some(format!("d(e_{b}) is not sent to zero"));
            }
        }
        rep.push("coboundaries_vanish", bad);
        let mut bad = None;
        for n in 0..=self.cap {
            let basis = self.ring.basis(2 * n as i64);
            let rows: Vec<Vec<Fe>> = basis.iter().map(|m| self.monomial_functional(m)).collect::<Result<_>>()?;
            let rank = if rows.is_empty() { 0 } else { Matrix::from_rows(&r.field, &rows)?.rank() };
            if rows.len() != self.res.betti(n) || rank != rows.len() {
                bad = Some(format!(
                    "degree {n}: {} monomials of rank {rank}, dim Hom(P_{n}, k) = {}",
                    rows.len(),
                    self.res.betti(n)
                ));
                break;
            }
        }
        rep.push("monomial_basis", bad);
        Ok(rep)
    }
}

impl KgResolution {
    /// z(e) = F_c(f_n(e)) for the comparison map f into the bar resolution,
    /// f_1(e) = [d e] and f_2(e) = Σ_i [r̄_i | d e_i] when d e = Σ r_i e_i.
    pub fn transport(&self, c: &Cochain) -> Result<Vec<Fe>> {
        let r = group(&self.pair);
        let f = &r.field;
        let dim = r.dim();
        let t = pair_table(&self.pair, c);
        match c.n {
            1 => Ok(self.images[1].iter().map(|x| f.sum(x.iter().zip(&t).map(|(&a, row)| f.mul(a, row[0])))).collect()),
            2 => Ok(self.images[2]
                .iter()
                .map(|img| {
                    let mut acc = 0;
                    for (i, ri) in img.chunks(dim).enumerate() {
                        let xi = &self.images[1][i];
                        for a in 1..dim {
                            if ri[a] == 0 {
                                continue;
                            }
                            for (b, &xb) in xi.iter().enumerate() {
                                if xb != 0 && t[a][b] != 0 {
                                    acc = f.add(acc, f.mul(ri[a], f.mul(xb, t[a][b])));
                                }
                            }
                        }
                    }
                    acc
                })
                .collect()),
            n => Err(Error::Invalid(format!("transport is provided in degrees 1 and 2, not {n}"))),
        }
    }

    /// δF = 0 in Hom(B_{n+1}, k) for the bar-resolution functional of c.
    fn bar_cocycle_defect(&self, c: &Cochain) -> Option<String> {
        let r = group(&self.pair);
        let f = &r.field;
        let dim = r.dim();
        let t = pair_table(&self.pair, c);
        let prod = |a: usize, b: usize| r.mul_basis(a, b).to_vec();
        for a1 in 1..dim {
            for a2 in 1..dim {
                if c.n == 1 {
                    let v = f.sum(prod(a1, a2).iter().map(|&(k, x)| f.mul(x, t[k as usize][0])));
                    if v != 0 {
                        return Some(format!("F([b{a1} b{a2}]) != 0"));
                    }
                    continue;
                }
                for a3 in 1..dim {
                    let l = f.sum(prod(a1, a2).iter().map(|&(k, x)| f.mul(x, t[k as usize][a3])));
                    let rr = f.sum(prod(a2, a3).iter().map(|&(k, x)| f.mul(x, t[a1][k as usize])));
                    if l != rr {
                        return Some(format!("δF at [b{a1}|b{a2}|b{a3}]"));
                    }
                }
            }
        }
        None
    }
}

type CacheKey = (TargetFamily, u32, u32, usize);

pub fn kg_cohomology(fam: &TargetFamily, f: &Fq, cap: usize) -> Result<Arc<KgCohomology>> {
    static C: OnceLock<Mutex<HashMap<CacheKey, Arc<KgCohomology>>>> = OnceLock::new();
    let cache = C.get_or_init(Default::default);
    let key = (*fam, f.p(), f.e(), cap);
    if let Some(h) = cache.lock().unwrap().get(&key) {
        return Ok(h.clone());
    }
    let h = KgCohomology::new(fam, f, cap)?;
    let rep = h.verify()?;
    if let Some(bad) = rep.first_failure() {
        return Err(Error::Check(format!(
            "transport to the kG resolution: {}: {}",
            bad.name,
            bad.witness.clone().unwrap_or_default()
        )));
    }
    let h = Arc::new(h);
    Ok(cache.lock().unwrap().entry(key).or_insert(h).clone())
}

/// The action of each basis element of kG on Λ = End(M):
/// b·φ = Σ (−1)^{|b₂||φ|} ρ(b₁) φ ρ(S b₂), on the matrix-unit basis.
pub struct EndAction {
    pub dim: usize,
    pub parity: Vec<u8>,
    /// act[b][i·d + j] = b·E_ij as a sparse vector
    act: Vec<Vec<SparseVec>>,
}

impl EndAction {
    pub fn new(gm: &GroupModule) -> EndAction {
        let r = &gm.pair.group;
        let f = &r.field;
        let d = gm.m + gm.n;
        let parity: Vec<u8> = (0..d).map(|i| (i >= gm.m) as u8).collect();
        let rho_s: Vec<Matrix> = (0..r.dim())
            .map(|b| {
                let s = r.antipode.col(b);
                s.iter()
                    .enumerate()
                    .filter(|e| *e.1 != 0)
                    .fold(Matrix::zeros(f, d, d), |acc, (x, &c)| acc.add(&gm.action[x].scale(c)).unwrap())
            })
            .collect();
        let act = (0..r.dim())
            .map(|b| {
                (0..d * d)
                    .map(|e| {
                        let (i, j) = (e / d, e % d);
                        let pe = parity[i] ^ parity[j];
                        let mut terms = Vec::new();
                        for &(b1, b2, c) in &r.comult[b] {
                            let coef = f.mul(c, ksign(f, r.parity(b2 as usize), pe));
                            let left = &gm.action[b1 as usize];
                            let right = &rho_s[b2 as usize];
                            for x in 0..d {
                                let lx = left.get(x, i);
                                if lx == 0 {
                                    continue;
                                }
                                for y in 0..d {
                                    let ry = right.get(j, y);
                                    if ry != 0 {
                                        terms.push(((x * d + y) as u64, f.mul(coef, f.mul(lx, ry))));
                                    }
                                }
                            }
                        }
                        sv_from_unsorted(f, terms)
                    })
                    .collect()
            })
            .collect();
        EndAction { dim: d, parity, act }
    }

    /// r·E_e for an element r of kG.
    pub fn apply(&self, f: &Fq, r: &[Fe], e: usize) -> SparseVec {
        let mut terms = Vec::new();
        for (b, &c) in r.iter().enumerate() {
            if c != 0 {
                terms.extend(self.act[b][e].iter().map(|&(k, x)| (k, f.mul(c, x))));
            }
        }
        sv_from_unsorted(f, terms)
    }

    /// Unit, associativity and invariance of the identity, on every basis pair.
    pub fn check(&self, r: &FinDimHopf) -> Report {
        let f = &r.field;
        let d = self.dim;
        let mut rep = Report { checks: Vec::new() };
        let apply_vec = |b: usize, v: &SparseVec| -> SparseVec {
            let mut t = Vec::new();
            for &(e, c) in v {
                t.extend(self.act[b][e as usize].iter().map(|&(k, x)| (k, f.mul(c, x))));
            }
            sv_from_unsorted(f, t)
        };
        let unit_ok = (0..d * d).all(|e| self.act[0][e] == vec![(e as u64, 1)]);
        rep.push("unit", (!unit_ok).then(|| "1 does not act trivially".into()));
        let mut bad = None;
        'o: for b in 0..r.dim() {
            for b2 in 0..r.dim() {
                for e in 0..d * d {
                    let lhs = apply_vec(b, &self.act[b2][e]);
                    let mut t = Vec::new();
                    for &(k, c) in r.mul_basis(b, b2) {
                        t.extend(self.act[k as usize][e].iter().map(|&(kk, x)| (kk, f.mul(c, x))));
                    }
                    if lhs != sv_from_unsorted(f, t) {
                        bad = Some(format!(
                            "{}·({}·E) != ({}{})·E",
                            r.basis[b].label, r.basis[b2].label, r.basis[b].label, r.basis[b2].label
                        ));
                        break 'o;
                    }
                }
            }
        }
        rep.push("associative", bad);
        let one: SparseVec = (0..d).map(|i| ((i * d + i) as u64, 1)).collect();
        let mut bad = None;
        for b in 1..r.dim() {
            let v = apply_vec(b, &one);
            let want = if r.counit[b] != 0 {
                one.iter().map(|&(k, c)| (k, f.mul(c, r.counit[b]))).collect()
            } else {
                Vec::new()
            };
            if v != want {
                bad = Some(format!("{} moves 1_M", r.basis[b].label));
                break;
            }
        }
        rep.push("identity_invariant", bad);
        rep
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomSupport {
    pub family: TargetFamily,
    pub field: FieldSpec,
    pub degree_cap: usize,
    pub coordinates: Vec<String>,
    /// a basis of I_M in each degree up to the cap, within the span of
    /// monomials in the non-exterior generators
    pub ideal: Vec<String>,
    pub points: Vec<Vec<Fe>>,
    pub note: String,
}

/// V(I_M)(F_q) where I_M is computed through cohomological degree `cap`.
pub fn cohomological_support(fam: &TargetFamily, gm: &GroupModule, f: &Fq, cap: usize) -> Result<CohomSupport> {
    cohomological_support_with_budget(fam, gm, f, cap, DEFAULT_SUPPORT_BUDGET)
}

pub fn cohomological_support_with_budget(
    fam: &TargetFamily,
    gm: &GroupModule,
    f: &Fq,
    cap: usize,
    budget: u128,
) -> Result<CohomSupport> {
    if cap < 1 {
        return Err(Error::Invalid("degree cap must be positive".into()));
    }
    let kg = kg_cohomology(fam, f, cap)?;
    let r = group(&kg.res.pair);
    if gm.pair.group.dim() != r.dim() {
        return Err(Error::Shape("module is not over this group algebra".into()));
    }
    let d = gm.m + gm.n;
    let dl = d * d;
    let est = (kg.res.betti(cap) * dl) as u128;
    if est > budget {
        return Err(Error::Budget { what: "Λ^{c_n} for the ρ test".into(), estimate: est, budget });
    }
    let ring = &kg.ring;
    let ext: Vec<usize> = (0..ring.ngens()).filter(|&i| ring.gens[i].exterior).collect();
    let mut ideal: Vec<Poly> = Vec::new();
    if d == 0 {
        ideal.push(ring.one());
    } else {
        let lam = EndAction::new(gm);
        let one: Vec<u64> = (0..d).map(|i| (i * d + i) as u64).collect();
        for n in 1..=cap {
            let monos: Vec<Monomial> =
                ring.basis(2 * n as i64).into_iter().filter(|m| ext.iter().all(|&i| m[i] == 0)).collect();
            if monos.is_empty() {
                continue;
            }
            // coboundaries: g ↦ (Σ_i r_ik · g(e_i))_k with g(e_i) = E
            let mut ech = Echelon::new(f);
            let dim = r.dim();
            for i in 0..kg.res.betti(n - 1) {
                for e in 0..dl {
                    let mut v = Vec::new();
                    for (k, img) in kg.res.images[n].iter().enumerate() {
                        let rik = &img[i * dim..(i + 1) * dim];
                        v.extend(lam.apply(f, rik, e).into_iter().map(|(x, c)| ((k * dl) as u64 + x, c)));
                    }
                    let v = sv_from_unsorted(f, v);
                    if !v.is_empty() {
                        ech.insert(v, Vec::new());
                    }
                }
            }
            for (j, m) in monos.iter().enumerate() {
                let z = kg.monomial_functional(m)?;
                let v: Vec<(u64, Fe)> = z
                    .iter()
                    .enumerate()
                    .filter(|e| *e.1 != 0)
                    .flat_map(|(k, &c)| one.iter().map(move |&x| ((k * dl) as u64 + x, c)))
                    .collect();
                if let Inserted::Dependent(track) = ech.insert(sv_from_unsorted(f, v), vec![(j as u64, 1)]) {
                    let mut poly = Poly::zero();
                    for (jj, c) in track {
                        poly.add_term(f, monos[jj as usize].clone(), c);
                    }
                    ideal.push(poly);
                }
            }
        }
    }
    let points = enumerate_variety_points(ring, f)?;
    let zero_set = points
        .points
        .iter()
        .filter(|pt| {
            let mut full = vec![0; ring.ngens()];
            for (name, &x) in points.generators.iter().zip(pt.iter()) {
                full[ring.gen_index(name).unwrap()] = x;
            }
            ideal.iter().all(|z| ring.eval(z, &full) == 0)
        })
        .cloned()
        .collect();
    Ok(CohomSupport {
        family: *fam,
        field: f.spec(),
        degree_cap: cap,
        coordinates: points.generators.clone(),
        ideal: ideal.iter().map(|z| ring.format(z)).collect(),
        points: zero_set,
        note: format!("verified up to degree {cap}"),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CompareStatus {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompareReport {
    pub status: CompareStatus,
    pub coordinates: Vec<String>,
    /// Ψ applied to the support set
    pub psi_image: Vec<Vec<Fe>>,
    pub cohomological: Vec<Vec<Fe>>,
    pub support: SupportReport,
    pub cohomology: CohomSupport,
}

/// Ψ(N₁(G)_M) against V(I_M) up to the degree cap.
pub fn compare_supports(
    fam: &TargetFamily,
    gm: &GroupModule,
    descriptor: &str,
    f: &Fq,
    cap: usize,
) -> Result<CompareReport> {
    compare_supports_with_budget(fam, gm, descriptor, f, cap, DEFAULT_SUPPORT_BUDGET)
}

pub fn compare_supports_with_budget(
    fam: &TargetFamily,
    gm: &GroupModule,
    descriptor: &str,
    f: &Fq,
    cap: usize,
    budget: u128,
) -> Result<CompareReport> {
    let support = support_set(fam, gm, descriptor, f)?;
    let cohomology = cohomological_support_with_budget(fam, gm, f, cap, budget)?;
    let psi = psi_map(fam, f)?;
    let idx: Vec<usize> = cohomology
        .coordinates
        .iter()
        .map(|n| psi.source.gen_index(n).ok_or_else(|| Error::Check(format!("ψ has no generator {n}"))))
        .collect::<Result<_>>()?;
    let image: BTreeSet<Vec<Fe>> =
        support.members.iter().map(|pt| idx.iter().map(|&i| psi.target.eval(&psi.images[i], pt)).collect()).collect();
    let coh: BTreeSet<Vec<Fe>> = cohomology.points.iter().cloned().collect();
    let status = if image == coh {
        CompareStatus::Pass
    } else if image.is_subset(&coh) {
        CompareStatus::Inconclusive
    } else {
        CompareStatus::Fail
    };
    Ok(CompareReport {
        status,
        coordinates: cohomology.coordinates.clone(),
        psi_image: image.into_iter().collect(),
        cohomological: coh.into_iter().collect(),
        support,
        cohomology,
    })
}
