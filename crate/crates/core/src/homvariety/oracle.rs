//! Brute-force enumeration of Hopf superalgebra maps between finite-dimensional
//! algebras, used to validate the parameter classification independently.

use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::fields::{axpy, Fe, Fq, Matrix};
use crate::superalgebra::hopf::{AlgebraMorphism, FinDimHopf, HopfRef};

pub const DEFAULT_BUDGET: u128 = 2_000_000;

/// Row-reduced span of word vectors, remembering each row as a combination
/// of words.
struct Span {
    nwords_cap: usize,
    rows: Vec<(usize, Vec<Fe>, Vec<Fe>)>,
}

impl Span {
    fn new(cap: usize) -> Span {
        Span { nwords_cap: cap, rows: Vec::new() }
    }

    /// v = Σ combo_w · word_w + residual.
    fn reduce(&self, f: &Fq, v: &[Fe]) -> (Vec<Fe>, Vec<Fe>) {
        let mut res = v.to_vec();
        let mut combo = vec![0; self.nwords_cap];
        for (piv, row, rc) in &self.rows {
            let c = res[*piv];
            if c != 0 {
                axpy(f, &mut res, f.neg(c), row);
                axpy(f, &mut combo, c, rc);
            }
        }
        (res, combo)
    }

    /// Add word `w` with vector v; returns false if v is already spanned.
    fn insert(&mut self, f: &Fq, w: usize, v: &[Fe]) -> bool {
        let (res, combo) = self.reduce(f, v);
        let Some(piv) = res.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(res[piv]);
        let row: Vec<Fe> = res.iter().map(|&x| f.mul(x, inv)).collect();
        let mut rc: Vec<Fe> = combo.iter().map(|&x| f.mul(f.neg(x), inv)).collect();
        rc[w] = f.add(rc[w], inv);
        self.rows.push((piv, row, rc));
        true
    }

    fn contains(&self, f: &Fq, v: &[Fe]) -> bool {
        self.reduce(f, v).0.iter().all(|&x| x == 0)
    }
}

/// Words in the generators: word k = word[prev] · gen.
struct Words {
    prev_gen: Vec<Option<(usize, usize)>>,
    vecs: Vec<Vec<Fe>>,
    span: Span,
}

impl Words {
    fn new(s: &FinDimHopf) -> Words {
        let mut span = Span::new(s.dim());
        span.insert(&s.field, 0, &s.unit);
        Words { prev_gen: vec![None], vecs: vec![s.unit.clone()], span }
    }

    /// Close the span under right multiplication by `gens` after `new_gen`
    /// has joined them.
    fn extend(&mut self, s: &FinDimHopf, gens: &[usize], new_gen: usize) {
        let f = &s.field;
        let mut queue: Vec<(usize, usize)> = (0..self.vecs.len()).map(|w| (w, new_gen)).collect();
        let mut qi = 0;
        while qi < queue.len() {
            let (w, g) = queue[qi];
            qi += 1;
            let v = s.mul_vec_basis(&self.vecs[w], gens[g]);
            let idx = self.vecs.len();
            if self.span.insert(f, idx, &v) {
                self.prev_gen.push(Some((w, g)));
                self.vecs.push(v);
                queue.extend((0..gens.len()).map(|g2| (idx, g2)));
            }
        }
    }
}

/// Generator with its reduced coproduct written over earlier words.
struct GenPlan {
    parity: u8,
    /// Δ̄g = Σ_a word_a ⊗ (Σ_b c_ab word_b)
    dcomult: Vec<(usize, Vec<(usize, Fe)>)>,
    /// number of words once this generator has been added
    nwords_after: usize,
    /// checks φ(w)·φ(g') = Σ c φ(w')
    checks: Vec<(usize, usize, Vec<(usize, Fe)>)>,
}

/// Solver for Δ̄_T(x) = y over the odd or even part of the augmentation ideal.
struct PrimSolver {
    unknowns: Vec<usize>,
    rows: Vec<usize>,
    /// x_unknowns = solve * y_rows (one particular solution)
    solve: Matrix,
    kernel: Vec<Vec<Fe>>,
}

impl PrimSolver {
    fn new(t: &FinDimHopf, parity: u8) -> PrimSolver {
        let f = &t.field;
        let n = t.dim();
        let unknowns: Vec<usize> = (0..n).filter(|&i| t.parity(i) == parity && t.counit[i] == 0).collect();
        let cols: Vec<Vec<Fe>> = unknowns.iter().map(|&i| t.reduced_comult_vec(&t.basis_vec(i))).collect();
        let mut nz: Vec<usize> = (0..n * n).filter(|&r| cols.iter().any(|c| c[r] != 0)).collect();
        nz.sort_unstable();
        let k = unknowns.len();
        // rows of D restricted to nonzero rows
        let mut dt = Matrix::zeros(f, k, nz.len());
        for (j, c) in cols.iter().enumerate() {
            for (ri, &r) in nz.iter().enumerate() {
                dt.set(j, ri, c[r]);
            }
        }
        let mut red = dt.clone();
        let piv_rows: Vec<usize> = red.rref();
        let rows: Vec<usize> = piv_rows.iter().map(|&ri| nz[ri]).collect();
        let rank = rows.len();
        // D_P: rank x k
        let mut dp = Matrix::zeros(f, rank, k);
        for (i, &ri) in piv_rows.iter().enumerate() {
            for j in 0..k {
                dp.set(i, j, dt.get(j, ri));
            }
        }
        let mut dpr = dp.clone();
        let piv_cols = dpr.rref();
        let mut sq = Matrix::zeros(f, rank, rank);
        for i in 0..rank {
            for (jj, &j) in piv_cols.iter().enumerate() {
                sq.set(i, jj, dp.get(i, j));
            }
        }
        let inv = sq.inverse().expect("pivot block is invertible");
        let mut solve = Matrix::zeros(f, k, rank);
        for (jj, &j) in piv_cols.iter().enumerate() {
            for i in 0..rank {
                solve.set(j, i, inv.get(jj, i));
            }
        }
        let kernel =
            if rank == 0 { (0..k).map(|j| (0..k).map(|i| (i == j) as Fe).collect()).collect() } else { dp.kernel() };
        PrimSolver { unknowns, rows, solve, kernel }
    }

    /// Particular solution as a target vector, or None if inconsistent.
    fn particular(&self, t: &FinDimHopf, y: &[Fe]) -> Option<Vec<Fe>> {
        let yr: Vec<Fe> = self.rows.iter().map(|&r| y[r]).collect();
        let xs = self.solve.apply(&yr);
        let mut x = vec![0; t.dim()];
        for (j, &i) in self.unknowns.iter().enumerate() {
            x[i] = xs[j];
        }
        (t.reduced_comult_vec(&x) == y).then_some(x)
    }

    fn kernel_vecs(&self, n: usize) -> Vec<Vec<Fe>> {
        self.kernel
            .iter()
            .map(|kv| {
                let mut v = vec![0; n];
                for (j, &i) in self.unknowns.iter().enumerate() {
                    v[i] = kv[j];
                }
                v
            })
            .collect()
    }
}

fn check_augmented(h: &FinDimHopf, which: &str) -> Result<()> {
    let n = h.dim();
    if n == 0 || h.unit != h.basis_vec(0) || h.counit[0] != 1 || h.counit[1..].iter().any(|&c| c != 0) {
        return invalid(format!("{which}: basis must start with 1 and span the augmentation ideal after it"));
    }
    Ok(())
}

/// Indecomposable basis elements plus primitive basis elements, in a
/// dependency order where each generator's reduced coproduct only involves
/// words in earlier generators.
fn plan(s: &FinDimHopf) -> Result<(Vec<GenPlan>, Words, Vec<usize>)> {
    let f = &s.field;
    let n = s.dim();
    let mut sq = Span::new(n * n + n);
    let mut cnt = 0;
    for i in 1..n {
        for j in 1..n {
            let v = s.mul(&s.basis_vec(i), &s.basis_vec(j));
            if sq.insert(f, cnt, &v) {
                cnt += 1;
            }
        }
    }
    let mut cands = Vec::new();
    for i in 1..n {
        let e = s.basis_vec(i);
        if sq.insert(f, cnt, &e) {
            cnt += 1;
            cands.push(i);
        }
    }
    for i in 1..n {
        if !cands.contains(&i) && s.reduced_comult_vec(&s.basis_vec(i)).iter().all(|&x| x == 0) {
            cands.push(i);
        }
    }
    let dcs: Vec<Vec<Fe>> = cands.iter().map(|&i| s.reduced_comult_vec(&s.basis_vec(i))).collect();

    let mut words = Words::new(s);
    let mut order: Vec<usize> = Vec::new();
    let mut plans = Vec::new();
    let mut remaining: Vec<usize> = (0..cands.len()).collect();
    while !remaining.is_empty() {
        let pos = remaining.iter().position(|&c| tensor_in_span(f, &words.span, &dcs[c], n));
        let Some(pos) = pos else {
            return Err(Error::Check("generator dependencies are cyclic".into()));
        };
        let c = remaining.remove(pos);
        let dcomult = express_tensor(f, &words.span, &dcs[c], n);
        let before = words.vecs.len();
        order.push(cands[c]);
        let gi = order.len() - 1;
        words.extend(s, &order, gi);
        // relation checks for new (word, gen) pairs
        let mut checks = Vec::new();
        for w in 0..words.vecs.len() {
            for (g2, &gb) in order.iter().enumerate() {
                if w < before && g2 < gi {
                    continue;
                }
                if words.prev_gen.contains(&Some((w, g2))) {
                    continue;
                }
                let v = s.mul_vec_basis(&words.vecs[w], gb);
                let (res, combo) = words.span.reduce(f, &v);
                debug_assert!(res.iter().all(|&x| x == 0));
                let combo: Vec<(usize, Fe)> =
                    combo.iter().enumerate().filter(|(_, &x)| x != 0).map(|(k, &x)| (k, x)).collect();
                checks.push((w, g2, combo));
            }
        }
        plans.push(GenPlan { parity: s.parity(cands[c]), dcomult, nwords_after: words.vecs.len(), checks });
    }
    if words.vecs.len() != n {
        return Err(Error::Check("generators do not span the algebra".into()));
    }
    Ok((plans, words, order))
}

fn tensor_in_span(f: &Fq, span: &Span, t: &[Fe], n: usize) -> bool {
    (0..n).all(|j| span.contains(f, &(0..n).map(|i| t[i * n + j]).collect::<Vec<_>>()))
        && (0..n).all(|i| span.contains(f, &t[i * n..(i + 1) * n]))
}

fn express_tensor(f: &Fq, span: &Span, t: &[Fe], n: usize) -> Vec<(usize, Vec<(usize, Fe)>)> {
    let cap = span.nwords_cap;
    // t = Σ_a word_a ⊗ L_a with L_a(j) = combo of column j at a
    let mut l = vec![vec![0; n]; cap];
    for j in 0..n {
        let col: Vec<Fe> = (0..n).map(|i| t[i * n + j]).collect();
        let (_, combo) = span.reduce(f, &col);
        for (a, &c) in combo.iter().enumerate() {
            l[a][j] = c;
        }
    }
    let mut out = Vec::new();
    for (a, la) in l.iter().enumerate() {
        if la.iter().all(|&x| x == 0) {
            continue;
        }
        let (_, combo) = span.reduce(f, la);
        let terms: Vec<(usize, Fe)> = combo.iter().enumerate().filter(|(_, &x)| x != 0).map(|(b, &x)| (b, x)).collect();
        out.push((a, terms));
    }
    out
}

fn sparse_mul(t: &FinDimHopf, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let f = &t.field;
    let na: Vec<(usize, Fe)> = a.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, x)).collect();
    let nb: Vec<(usize, Fe)> = b.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, x)).collect();
    let mut out = vec![0; t.dim()];
    for &(i, x) in &na {
        for &(j, y) in &nb {
            let c = f.mul(x, y);
            for &(k, s) in t.mul_basis(i, j) {
                out[k as usize] = f.add(out[k as usize], f.mul(c, s));
            }
        }
    }
    out
}

struct Search<'a> {
    s: &'a FinDimHopf,
    t: &'a FinDimHopf,
    plans: Vec<GenPlan>,
    words: Words,
    solvers: [PrimSolver; 2],
    basis_in_words: Vec<Vec<(usize, Fe)>>,
}

impl Search<'_> {
    fn target_tensor(&self, d: usize, phi: &[Vec<Fe>]) -> Vec<Fe> {
        let t = self.t;
        let f = &t.field;
        let n = t.dim();
        let mut out = vec![0; n * n];
        for (a, terms) in &self.plans[d].dcomult {
            let mut right = vec![0; n];
            for &(b, c) in terms {
                axpy(f, &mut right, c, &phi[b]);
            }
            for (i, &x) in phi[*a].iter().enumerate() {
                if x != 0 {
                    axpy(f, &mut out[i * n..(i + 1) * n], x, &right);
                }
            }
        }
        out
    }

    /// Candidates for generator d given word images phi.
    fn candidates(&self, d: usize, phi: &[Vec<Fe>]) -> Vec<Vec<Fe>> {
        let t = self.t;
        let f = &t.field;
        let y = self.target_tensor(d, phi);
        let solver = &self.solvers[self.plans[d].parity as usize];
        let Some(x0) = solver.particular(t, &y) else {
            return Vec::new();
        };
        let ker = solver.kernel_vecs(t.dim());
        let q = f.q() as usize;
        let total = q.pow(ker.len() as u32);
        let mut out = Vec::with_capacity(total);
        for mut code in 0..total {
            let mut v = x0.clone();
            for kv in &ker {
                axpy(f, &mut v, (code % q) as Fe, kv);
                code /= q;
            }
            out.push(v);
        }
        out
    }

    /// Extend phi to the words added with generator d and run its checks.
    fn extend(&self, d: usize, phi: &mut Vec<Vec<Fe>>, gens: &mut Vec<Vec<Fe>>, img: Vec<Fe>) -> bool {
        let f = &self.t.field;
        gens.push(img);
        let start = phi.len();
        for w in start..self.plans[d].nwords_after {
            let (prev, g) = self.words.prev_gen[w].unwrap();
            let v = sparse_mul(self.t, &phi[prev], &gens[g]);
            phi.push(v);
        }
        for (w, g2, combo) in &self.plans[d].checks {
            let lhs = sparse_mul(self.t, &phi[*w], &gens[*g2]);
            let mut rhs = vec![0; self.t.dim()];
            for &(k, c) in combo {
                axpy(f, &mut rhs, c, &phi[k]);
            }
            if lhs != rhs {
                return false;
            }
        }
        true
    }

    fn dfs(&self, d: usize, phi: &mut Vec<Vec<Fe>>, gens: &mut Vec<Vec<Fe>>, out: &mut Vec<Matrix>) {
        if d == self.plans.len() {
            out.push(self.leaf(phi));
            return;
        }
        for c in self.candidates(d, phi) {
            let save = phi.len();
            if self.extend(d, phi, gens, c) {
                self.dfs(d + 1, phi, gens, out);
            }
            phi.truncate(save);
            gens.pop();
        }
    }

    fn leaf(&self, phi: &[Vec<Fe>]) -> Matrix {
        let f = &self.t.field;
        let mut m = Matrix::zeros(f, self.t.dim(), self.s.dim());
        for (i, terms) in self.basis_in_words.iter().enumerate() {
            let mut v = vec![0; self.t.dim()];
            for &(w, c) in terms {
                axpy(f, &mut v, c, &phi[w]);
            }
            for (r, &x) in v.iter().enumerate() {
                m.set(r, i, x);
            }
        }
        m
    }
}

/// Every parity-preserving unital algebra map source -> target that
/// intertwines comultiplication and counit.
pub fn enumerate_hopf_homs(source: &HopfRef, target: &HopfRef, budget: u128) -> Result<Vec<AlgebraMorphism>> {
    let (s, t) = (&**source, &**target);
    if !s.field.same(&t.field) {
        return Err(Error::FieldMismatch);
    }
    check_augmented(s, "source")?;
    check_augmented(t, "target")?;
    let f = &s.field;
    let (plans, words, _order) = plan(s)?;
    let solvers = [PrimSolver::new(t, 0), PrimSolver::new(t, 1)];
    let q = f.q() as u128;
    let estimate = plans
        .iter()
        .map(|g| q.saturating_pow(solvers[g.parity as usize].kernel.len() as u32))
        .fold(1u128, |a, b| a.saturating_mul(b));
    if estimate > budget {
        return Err(Error::Budget { what: "Hopf map search".into(), estimate, budget });
    }
    let basis_in_words = (0..s.dim())
        .map(|i| {
            let (_, combo) = words.span.reduce(f, &s.basis_vec(i));
            combo.iter().enumerate().filter(|(_, &x)| x != 0).map(|(k, &x)| (k, x)).collect()
        })
        .collect();
    let search = Search { s, t, plans, words, solvers, basis_in_words };

    let root_phi = vec![t.unit.clone()];
    let mut mats: Vec<Matrix> = if search.plans.is_empty() {
        vec![search.leaf(&root_phi)]
    } else {
        search
            .candidates(0, &root_phi)
            .into_par_iter()
            .flat_map_iter(|c| {
                let mut phi = root_phi.clone();
                let mut gens = Vec::new();
                let mut out = Vec::new();
                if search.extend(0, &mut phi, &mut gens, c) {
                    search.dfs(1, &mut phi, &mut gens, &mut out);
                }
                out
            })
            .collect()
    };
    mats.sort_by_cached_key(|m| m.to_rows());
    mats.dedup();
    Ok(mats
        .into_iter()
        .map(|matrix| AlgebraMorphism { source: source.clone(), target: target.clone(), matrix, hopf: true })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homvariety::params::{classify_homs, comorphism_from_params, TargetFamily};
    use crate::superalgebra::cache::ambient;

    #[test]
    fn mr1_into_m12() {
        let f = Fq::prime(3).unwrap();
        let fam = TargetFamily::mr1(1);
        let src = fam.coordinate_algebra(&f).unwrap();
        let tgt = ambient(1, 2, &f).unwrap();
        let found = enumerate_hopf_homs(&src, &tgt, DEFAULT_BUDGET).unwrap();
        assert_eq!(found.len(), 9);
        let mut want: Vec<_> = classify_homs(&fam, &f, true)
            .unwrap()
            .params
            .unwrap()
            .iter()
            .map(|h| comorphism_from_params(h, &f, 2).unwrap().matrix.to_rows())
            .collect();
        want.sort();
        let got: Vec<_> = found.iter().map(|m| m.matrix.to_rows()).collect();
        assert_eq!(got, want);
        for m in &found {
            assert!(m.check().pass());
        }
    }
}
