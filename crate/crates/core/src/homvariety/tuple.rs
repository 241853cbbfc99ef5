//! Commuting nilpotent supermatrix tuples (α_0, ..., α_{r−1} | β), the
//! group-algebra modules and comodules they define, and the exponential
//! formula for the corresponding homomorphism M_r -> GL_{m|n}.

use std::sync::Arc;

use rand::Rng;
use serde_json::{json, Value};

use crate::error::{invalid, Error, Result};
use crate::fields::{axpy, Fe, Fq, Matrix};
use crate::superalgebra::cache::dual_pair;
use crate::superalgebra::coord::{CoordFamily, CoordShape};
use crate::superalgebra::group::DualPair;
use crate::superalgebra::hopf::{FinDimHopf, Report};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperMatrixTuple {
    pub m: usize,
    pub n: usize,
    pub alpha: Vec<Matrix>,
    pub beta: Matrix,
}

fn matrix_json(f: &Fq, m: &Matrix) -> Value {
    json!(m
        .to_rows()
        .iter()
        .map(|r| r.iter().map(|&x| f.to_int(x).unwrap_or(x as u32)).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn matrix_from_json(f: &Fq, v: &Value, size: usize) -> Result<Matrix> {
    let rows = v.as_array().ok_or_else(|| Error::Invalid("matrix must be a list of rows".into()))?;
    let mut out = Vec::new();
    for r in rows {
        let r = r.as_array().ok_or_else(|| Error::Invalid("matrix row must be a list".into()))?;
        let row: Result<Vec<Fe>> = r
            .iter()
            .map(|x| {
                let n = x.as_i64().ok_or_else(|| Error::Invalid("matrix entries must be integers".into()))?;
                if f.e() == 1 {
                    Ok(f.from_int(n))
                } else if (0..f.q() as i64).contains(&n) {
                    Ok(n as Fe)
                } else {
                    invalid(format!("entry {n} is not an element of F_{}", f.q()))
                }
            })
            .collect();
        out.push(row?);
    }
    let m = Matrix::from_rows(f, &out)?;
    if m.rows() != size || m.cols() != size {
        return Err(Error::Shape(format!("expected a {size}x{size} matrix")));
    }
    Ok(m)
}

impl SuperMatrixTuple {
    pub fn size(&self) -> usize {
        self.m + self.n
    }

    pub fn r(&self) -> usize {
        self.alpha.len()
    }

    pub fn field(&self) -> &Fq {
        self.beta.field()
    }

    pub fn zero(f: &Fq, r: usize, m: usize, n: usize) -> SuperMatrixTuple {
        SuperMatrixTuple { m, n, alpha: vec![Matrix::zeros(f, m + n, m + n); r], beta: Matrix::zeros(f, m + n, m + n) }
    }

    pub fn parity_of(&self, k: usize) -> u8 {
        (k >= self.m) as u8
    }

    pub fn to_json(&self) -> Value {
        let f = self.field();
        json!({
            "m": self.m,
            "n": self.n,
            "alpha": self.alpha.iter().map(|a| matrix_json(f, a)).collect::<Vec<_>>(),
            "beta": matrix_json(f, &self.beta),
        })
    }

    pub fn from_json(v: &Value, f: &Fq) -> Result<SuperMatrixTuple> {
        let get = |k: &str| v.get(k).ok_or_else(|| Error::Invalid(format!("tuple is missing \"{k}\"")));
        let m = get("m")?.as_u64().ok_or_else(|| Error::Invalid("m must be a number".into()))? as usize;
        let n = get("n")?.as_u64().ok_or_else(|| Error::Invalid("n must be a number".into()))? as usize;
        let alpha = get("alpha")?
            .as_array()
            .ok_or_else(|| Error::Invalid("alpha must be a list".into()))?
            .iter()
            .map(|a| matrix_from_json(f, a, m + n))
            .collect::<Result<Vec<_>>>()?;
        if alpha.is_empty() {
            return invalid("alpha must hold at least one matrix");
        }
        let beta = matrix_from_json(f, get("beta")?, m + n)?;
        Ok(SuperMatrixTuple { m, n, alpha, beta })
    }

    /// Entries that violate the parity of an even (0) or odd (1) matrix.
    fn parity_violation(&self, a: &Matrix, parity: u8) -> Option<(usize, usize)> {
        for i in 0..self.size() {
            for j in 0..self.size() {
                if a.get(i, j) != 0 && (self.parity_of(i) ^ self.parity_of(j)) != parity {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

fn first_nonzero(m: &Matrix) -> Option<(usize, usize)> {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if m.get(i, j) != 0 {
                return Some((i, j));
            }
        }
    }
    None
}

fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
    a.mul(b).unwrap().sub(&b.mul(a).unwrap()).unwrap()
}

/// Checks every defining relation of N_r(GL_{m|n}).
pub fn validate_tuple(t: &SuperMatrixTuple) -> Report {
    let mut rep = Report { checks: Vec::new() };
    let f = t.field();
    let p = f.p() as u64;
    let r = t.r();
    let wit = |name: &str, at: Option<(usize, usize)>| at.map(|(i, j)| format!("{name}: entry ({i},{j}) is nonzero"));
    let mut w = None;
    for (i, a) in t.alpha.iter().enumerate() {
        if w.is_none() {
            w = wit(&format!("α_{i} is not even"), t.parity_violation(a, 0));
        }
    }
    rep.push("alpha_even", w);
    rep.push("beta_odd", wit("β is not odd", t.parity_violation(&t.beta, 1)));
    let mut w = None;
    for i in 0..r {
        for j in i + 1..r {
            if w.is_none() {
                w = wit(&format!("[α_{i}, α_{j}] != 0"), first_nonzero(&commutator(&t.alpha[i], &t.alpha[j])));
            }
        }
        if w.is_none() {
            w = wit(&format!("[α_{i}, β] != 0"), first_nonzero(&commutator(&t.alpha[i], &t.beta)));
        }
    }
    rep.push("commuting", w);
    let mut w = None;
    for i in 0..r.saturating_sub(1) {
        if w.is_none() {
            w = wit(&format!("α_{i}^p != 0"), first_nonzero(&t.alpha[i].pow(p)));
        }
    }
    rep.push("alpha_p_power", w);
    let last = &t.alpha[r - 1];
    let rel = last.pow(p).add(&t.beta.mul(&t.beta).unwrap()).unwrap();
    rep.push("alpha_last_p_plus_beta_sq", wit(&format!("α_{}^p + β² != 0", r - 1), first_nonzero(&rel)));
    let nil = last.pow(t.m.max(t.n) as u64);
    rep.push(
        "alpha_last_nilpotent",
        wit(&format!("α_{} is nilpotent violated (α^{} != 0)", r - 1, t.m.max(t.n)), first_nonzero(&nil)),
    );
    rep
}

/// Action of the group algebra k M_{r;s} on k^{m|n}: one matrix per basis
/// element of the presentation.
#[derive(Clone, Debug)]
pub struct GroupModule {
    pub r: u32,
    pub s: u32,
    pub m: usize,
    pub n: usize,
    pub pair: Arc<DualPair>,
    pub action: Vec<Matrix>,
}

pub fn module_from_tuple(t: &SuperMatrixTuple, s: u32) -> Result<GroupModule> {
    let f = t.field();
    let r = t.r() as u32;
    if s == 0 {
        return invalid("s must be at least 1");
    }
    let pair = dual_pair(CoordFamily::Mrs, r, s, 0, f)?;
    let pres = &pair.presentation;
    let mut gen_mats = vec![t.beta.clone()];
    gen_mats.extend(t.alpha.iter().cloned());
    let id = Matrix::identity(f, t.size());
    let action = (0..pres.dim())
        .map(|idx| {
            let e = pres.decode(idx);
            e.iter().zip(&gen_mats).fold(id.clone(), |acc, (&k, g)| acc.mul(&g.pow(k as u64)).unwrap())
        })
        .collect();
    Ok(GroupModule { r, s, m: t.m, n: t.n, pair, action })
}

impl GroupModule {
    pub fn group(&self) -> &FinDimHopf {
        &self.pair.group
    }

    fn gen_index(&self, g: usize) -> usize {
        let pres = &self.pair.presentation;
        let mut e = vec![0; pres.gens.len()];
        e[g] = 1;
        pres.encode(&e)
    }

    /// Homomorphism and parity checks for the action.
    pub fn check(&self) -> Report {
        let mut rep = Report { checks: Vec::new() };
        let g = self.group();
        let f = &g.field;
        let nb = g.dim();
        let size = self.m + self.n;
        let par = |k: usize| (k >= self.m) as u8;
        let mut w = None;
        'p: for (b, a) in self.action.iter().enumerate() {
            for i in 0..size {
                for j in 0..size {
                    if a.get(i, j) != 0 && (par(i) ^ par(j)) != g.parity(b) {
                        w = Some(format!("{} acts with the wrong parity", g.basis[b].label));
                        break 'p;
                    }
                }
            }
        }
        rep.push("parity", w);
        rep.push(
            "unit",
            (self.action[0] != Matrix::identity(f, size)).then(|| "1 does not act as the identity".into()),
        );
        let mut w = None;
        'm: for i in 0..nb {
            for j in 0..nb {
                let lhs = self.action[i].mul(&self.action[j]).unwrap();
                let mut rhs = Matrix::zeros(f, size, size);
                for &(k, c) in g.mul_basis(i, j) {
                    rhs = rhs.add(&self.action[k as usize].scale(c)).unwrap();
                }
                if lhs != rhs {
                    w = Some(format!(
                        "ρ({}·{}) != ρ({})ρ({})",
                        g.basis[i].label, g.basis[j].label, g.basis[i].label, g.basis[j].label
                    ));
                    break 'm;
                }
            }
        }
        rep.push("multiplicative", w);
        rep
    }

    /// Read the tuple back off the generator actions.
    pub fn tuple(&self) -> SuperMatrixTuple {
        let alpha = (0..self.r as usize).map(|i| self.action[self.gen_index(i + 1)].clone()).collect();
        SuperMatrixTuple { m: self.m, n: self.n, alpha, beta: self.action[self.gen_index(0)].clone() }
    }
}

/// Rejection-samples a nonzero tuple satisfying every relation, with
/// α_{r−1}^{p^s} = 0. Sparse entries keep the acceptance rate usable.
pub fn random_valid_tuple<R: Rng>(
    rng: &mut R,
    f: &Fq,
    r: usize,
    m: usize,
    n: usize,
    s: u32,
) -> Result<SuperMatrixTuple> {
    if r == 0 || m + n == 0 {
        return invalid("need r >= 1 and a nonzero superdimension");
    }
    let size = m + n;
    let ps = (f.p() as u64).pow(s);
    let sample = |parity: u8, rng: &mut R| {
        let mut a = Matrix::zeros(f, size, size);
        for i in 0..size {
            for j in 0..size {
                if (((i >= m) as u8) ^ ((j >= m) as u8)) == parity && rng.gen_bool(0.3) {
                    a.set(i, j, rng.gen_range(0..f.q()) as Fe);
                }
            }
        }
        a
    };
    for _ in 0..200_000 {
        let alpha: Vec<Matrix> = (0..r).map(|_| sample(0, rng)).collect();
        let beta = sample(1, rng);
        let t = SuperMatrixTuple { m, n, alpha, beta };
        if t.alpha.iter().all(|a| a.is_zero()) && t.beta.is_zero() {
            continue;
        }
        if validate_tuple(&t).pass() && t.alpha[r - 1].pow(ps).is_zero() {
            return Ok(t);
        }
    }
    Err(Error::Budget { what: "random tuple sampling".into(), estimate: 200_001, budget: 200_000 })
}

/// Structure maps of the right k[M_{r;s}]-comodule: Δ_ρ(w) = Σ_b C_b(w) ⊗ b,
/// with C_b indexed by the coordinate basis θ^i σ_j τ^ε.
#[derive(Clone, Debug)]
pub struct ComoduleCoeffs {
    pub r: u32,
    pub s: u32,
    pub shape: CoordShape,
    pub coeffs: Vec<Matrix>,
}

impl ComoduleCoeffs {
    pub fn alpha(&self, i: u32, j: u32) -> &Matrix {
        &self.coeffs[self.shape.index(i, j, 0)]
    }
    pub fn beta(&self, i: u32, j: u32) -> &Matrix {
        &self.coeffs[self.shape.index(i, j, 1)]
    }
}

/// The parity operator w ↦ (−1)^{|w|} w.
fn parity_operator(t: &SuperMatrixTuple) -> Matrix {
    let f = t.field();
    let mut d = Matrix::identity(f, t.size());
    for k in t.m..t.size() {
        d.set(k, k, f.neg(1));
    }
    d
}

pub fn comodule_from_tuple(t: &SuperMatrixTuple, s: u32) -> Result<ComoduleCoeffs> {
    let rep = validate_tuple(t);
    if let Some(c) = rep.first_failure() {
        return invalid(format!("tuple fails {}: {}", c.name, c.witness.clone().unwrap_or_default()));
    }
    let f = t.field();
    let p = f.p();
    let r = t.r() as u32;
    let last = &t.alpha[r as usize - 1];
    let ps = p.checked_pow(s).ok_or_else(|| Error::Invalid("s too large".into()))?;
    if !last.pow(ps as u64).is_zero() {
        return invalid(format!("nilpotency bound exceeded: α_{}^{} != 0", r - 1, ps));
    }
    let sh = CoordShape::mrs(p, r, s);
    let beta00 = t.beta.mul(&parity_operator(t))?.scale(f.neg(1));
    let mut coeffs = vec![Matrix::zeros(f, t.size(), t.size()); sh.dim()];
    for i in 0..sh.a_bound {
        // (α_0)^{i_0} ⋯ (α_{r−2})^{i_{r−2}} / (i_0! ⋯ i_{r−2}!)
        let mut head = Matrix::identity(f, t.size());
        let mut rest = i;
        for k in 0..(r as usize).saturating_sub(1) {
            let d = rest % p;
            rest /= p;
            head = head.mul(&t.alpha[k].pow(d as u64))?.scale(f.inv(f.factorial(d as u64)));
        }
        for j in 0..sh.j_bound {
            let a = head.mul(&last.pow(j as u64))?;
            coeffs[sh.index(i, j, 1)] = a.mul(&beta00)?;
            coeffs[sh.index(i, j, 0)] = a;
        }
    }
    Ok(ComoduleCoeffs { r, s, shape: sh, coeffs })
}

/// Counit and coassociativity of Δ_ρ against the coordinate algebra `k`.
pub fn check_comodule_axioms(c: &ComoduleCoeffs, k: &FinDimHopf) -> Report {
    let mut rep = Report { checks: Vec::new() };
    let f = &k.field;
    let nb = k.dim();
    let size = c.coeffs[0].rows();
    let mut counit = Matrix::zeros(f, size, size);
    for b in 0..nb {
        counit = counit.add(&c.coeffs[b].scale(k.counit[b])).unwrap();
    }
    rep.push("counit", (counit != Matrix::identity(f, size)).then(|| "(1⊗ε)Δ_ρ != id".into()));
    // rhs[b'][b] = Σ_c Δc[b', b] C_c
    let mut rhs = vec![Matrix::zeros(f, size, size); nb * nb];
    for cidx in 0..nb {
        for &(l, r, x) in &k.comult[cidx] {
            let slot = &mut rhs[l as usize * nb + r as usize];
            *slot = slot.add(&c.coeffs[cidx].scale(x)).unwrap();
        }
    }
    let mut w = None;
    'o: for b1 in 0..nb {
        for b in 0..nb {
            let lhs = c.coeffs[b1].mul(&c.coeffs[b]).unwrap();
            if lhs != rhs[b1 * nb + b] {
                w = Some(format!("C_{} C_{} mismatch", k.basis[b1].label, k.basis[b].label));
                break 'o;
            }
        }
    }
    rep.push("coassociative", w);
    rep
}

/// A square matrix with entries in a finite-dimensional algebra B.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgMatrix {
    pub size: usize,
    /// row-major entries, each a coordinate vector in B
    pub entries: Vec<Vec<Fe>>,
}

impl AlgMatrix {
    pub fn identity(b: &FinDimHopf, size: usize) -> AlgMatrix {
        let mut e = vec![vec![0; b.dim()]; size * size];
        for i in 0..size {
            e[i * size + i] = b.unit.clone();
        }
        AlgMatrix { size, entries: e }
    }

    pub fn zero(b: &FinDimHopf, size: usize) -> AlgMatrix {
        AlgMatrix { size, entries: vec![vec![0; b.dim()]; size * size] }
    }

    pub fn get(&self, i: usize, j: usize) -> &[Fe] {
        &self.entries[i * self.size + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn add(&self, b: &FinDimHopf, other: &AlgMatrix) -> AlgMatrix {
        let f = &b.field;
        let mut out = self.clone();
        for (o, e) in out.entries.iter_mut().zip(&other.entries) {
            axpy(f, o, 1, e);
        }
        out
    }

    pub fn scale(&self, b: &FinDimHopf, c: Fe) -> AlgMatrix {
        let f = &b.field;
        AlgMatrix {
            size: self.size,
            entries: self.entries.iter().map(|e| e.iter().map(|&x| f.mul(x, c)).collect()).collect(),
        }
    }

    pub fn mul(&self, b: &FinDimHopf, other: &AlgMatrix) -> AlgMatrix {
        let f = &b.field;
        let n = self.size;
        let mut out = AlgMatrix::zero(b, n);
        for i in 0..n {
            for k in 0..n {
                let x = self.get(i, k);
                if x.iter().all(|&v| v == 0) {
                    continue;
                }
                for j in 0..n {
                    let y = other.get(k, j);
                    if y.iter().all(|&v| v == 0) {
                        continue;
                    }
                    let prod = b.mul(x, y);
                    axpy(f, &mut out.entries[i * n + j], 1, &prod);
                }
            }
        }
        out
    }

    /// a · x for a scalar matrix a and x in B, with the right-action sign
    /// (a·x)_{kl} = (−1)^{|x||l|} a_{kl} x.
    pub fn from_scalar(b: &FinDimHopf, a: &Matrix, x: &[Fe], x_odd: bool, m: usize) -> AlgMatrix {
        let f = &b.field;
        let n = a.rows();
        let mut out = AlgMatrix::zero(b, n);
        for k in 0..n {
            for l in 0..n {
                let c = a.get(k, l);
                if c == 0 {
                    continue;
                }
                let c = if x_odd && l >= m { f.neg(c) } else { c };
                out.entries[k * n + l] = x.iter().map(|&v| f.mul(v, c)).collect();
            }
        }
        out
    }
}

/// exp(φ) = Σ_{k<p} φ^k / k!, defined when φ^p = 0.
pub fn exp_alg(b: &FinDimHopf, phi: &AlgMatrix) -> Result<AlgMatrix> {
    let f = &b.field;
    let p = f.p() as usize;
    let mut out = AlgMatrix::identity(b, phi.size);
    let mut pw = AlgMatrix::identity(b, phi.size);
    for k in 1..=p {
        pw = pw.mul(b, phi);
        if k == p {
            if !pw.is_zero() {
                return invalid("exp of a matrix with nonzero p-th power");
            }
        } else {
            out = out.add(b, &pw.scale(b, f.inv(f.factorial(k as u64))));
        }
    }
    Ok(out)
}

/// A point g = (τ, θ, σ_p, σ_{p²}, ...) of M_r(B), with θ standing for σ_1
/// when r = 1.
#[derive(Clone, Debug)]
pub struct MrPoint {
    pub tau: Vec<Fe>,
    pub theta: Vec<Fe>,
    /// sigma[i] is the value of σ_{p^{i+1}}
    pub sigma: Vec<Vec<Fe>>,
}

impl MrPoint {
    /// The tautological point of B = k[M_{r;s}].
    pub fn universal(b: &FinDimHopf, r: u32, s: u32) -> MrPoint {
        let sh = CoordShape::mrs(b.field.p(), r, s);
        let theta = if r == 1 { sh.index(0, 1, 0) } else { sh.index(1, 0, 0) };
        let p = b.field.p();
        let sigma = (1..s).map(|i| b.basis_vec(sh.index(0, p.pow(i), 0))).collect();
        MrPoint { tau: b.basis_vec(sh.index(0, 0, 1)), theta: b.basis_vec(theta), sigma }
    }

    /// Value g(x) of a coordinate basis element x = θ^a σ_j τ^ε of k[M_{r;s}].
    pub fn eval(&self, b: &FinDimHopf, sh: &CoordShape, x: usize) -> Vec<Fe> {
        let f = &b.field;
        let p = sh.p;
        let (a, j, eps) = sh.decode(x);
        let r = sh.r;
        let mut v = b.pow(&self.theta, a as u64);
        // σ_1 = θ^{p^{r−1}} (θ itself when r = 1)
        let sigma1 = b.pow(&self.theta, p.pow(r - 1) as u64);
        let mut jj = j;
        let mut k = 0usize;
        while jj > 0 {
            let d = jj % p;
            jj /= p;
            if d > 0 {
                let base = if k == 0 { &sigma1 } else { &self.sigma[k - 1] };
                let w: Vec<Fe> =
                    b.pow(base, d as u64).iter().map(|&x| f.mul(x, f.inv(f.factorial(d as u64)))).collect();
                v = b.mul(&v, &w);
            }
            k += 1;
        }
        if eps == 1 {
            v = b.mul(&v, &self.tau);
        }
        v
    }
}

/// ρ(g) = (Π_i exp(α_i·θ^{p^i})) · exp(−β·τ) · (Π_{i≥1} exp(α_{r−1}^{p^i}·σ_{p^i})).
pub fn exp_evaluate(t: &SuperMatrixTuple, b: &FinDimHopf, g: &MrPoint) -> Result<AlgMatrix> {
    let f = t.field();
    if !f.same(&b.field) {
        return Err(Error::FieldMismatch);
    }
    let rep = validate_tuple(t);
    if let Some(c) = rep.first_failure() {
        return invalid(format!("tuple fails {}", c.name));
    }
    let p = f.p() as u64;
    let r = t.r();
    let mut out = AlgMatrix::identity(b, t.size());
    let mut th = g.theta.clone();
    for i in 0..r {
        let e = exp_alg(b, &AlgMatrix::from_scalar(b, &t.alpha[i], &th, false, t.m))?;
        out = out.mul(b, &e);
        th = b.pow(&th, p);
    }
    let mb = t.beta.scale(f.neg(1));
    out = out.mul(b, &exp_alg(b, &AlgMatrix::from_scalar(b, &mb, &g.tau, true, t.m))?);
    let mut a = t.alpha[r - 1].pow(p);
    for sg in &g.sigma {
        out = out.mul(b, &exp_alg(b, &AlgMatrix::from_scalar(b, &a, sg, false, t.m))?);
        a = a.pow(p);
    }
    Ok(out)
}

/// Σ_b C_b ⊗ g(b): the matrix of ρ(g) predicted by the comodule coefficients.
pub fn comodule_evaluate(c: &ComoduleCoeffs, b: &FinDimHopf, g: &MrPoint) -> AlgMatrix {
    let f = &b.field;
    let size = c.coeffs[0].rows();
    let mut out = AlgMatrix::zero(b, size);
    for (x, cm) in c.coeffs.iter().enumerate() {
        if cm.is_zero() {
            continue;
        }
        let gx = g.eval(b, &c.shape, x);
        for k in 0..size {
            for l in 0..size {
                let s = cm.get(k, l);
                if s != 0 {
                    axpy(f, &mut out.entries[k * size + l], s, &gx);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::cache::ambient;

    #[test]
    fn small_tuples() {
        let f = Fq::prime(3).unwrap();
        let mut t = SuperMatrixTuple::zero(&f, 1, 1, 1);
        t.beta.set(0, 1, 1);
        assert!(validate_tuple(&t).pass());
        let mut bad = SuperMatrixTuple::zero(&f, 1, 1, 1);
        bad.alpha[0] = Matrix::identity(&f, 2);
        let rep = validate_tuple(&bad);
        assert!(!rep.pass());
        let fail = rep.checks.iter().find(|c| c.name == "alpha_last_nilpotent").unwrap();
        assert!(fail.witness.as_ref().unwrap().contains("nilpotent"));
    }

    #[test]
    fn zero_tuple_comodule() {
        let f = Fq::prime(3).unwrap();
        let t = SuperMatrixTuple::zero(&f, 1, 2, 1);
        let c = comodule_from_tuple(&t, 1).unwrap();
        assert_eq!(c.alpha(0, 0), &Matrix::identity(&f, 3));
        assert!(c.coeffs[1..].iter().all(|m| m.is_zero()));
        let k = ambient(1, 1, &f).unwrap();
        assert!(check_comodule_axioms(&c, &k).pass());
        let b = ambient(1, 1, &f).unwrap();
        let g = MrPoint::universal(&b, 1, 1);
        assert_eq!(exp_evaluate(&t, &b, &g).unwrap(), AlgMatrix::identity(&b, 3));
    }
}
