//! Group algebras as presented commutative algebras, with the coalgebra
//! structure transported from the dual coordinate algebra.

use serde::{Deserialize, Serialize};

use super::coord::{build_coordinate_hopf, coord_shape, CoordFamily, CoordShape};
use super::hopf::{ksign, BasisElem, FinDimHopf, Report};
use crate::error::{invalid, Error, Result};
use crate::fields::{Fe, Fq, Matrix};

/// f = Σ c_i T^{p^i}; `coeffs[i]` is the coefficient of T^{p^i}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PPolynomial {
    pub coeffs: Vec<Fe>,
}

impl PPolynomial {
    pub fn monomial(c: Fe, s: u32) -> PPolynomial {
        let mut coeffs = vec![0; s as usize + 1];
        coeffs[s as usize] = c;
        PPolynomial { coeffs }
    }

    /// From a dense coefficient list (index = exponent of T).
    pub fn from_dense(f: &Fq, dense: &[Fe]) -> Result<PPolynomial> {
        if dense.iter().all(|&c| c == 0) {
            return invalid("f must be nonzero");
        }
        if dense.first().is_some_and(|&c| c != 0) {
            return invalid("f has a constant term");
        }
        let p = f.p() as usize;
        let mut coeffs = Vec::new();
        for (k, &c) in dense.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut e = 0;
            let mut m = k;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            if m != 1 {
                return invalid(format!("exponent {k} is not a power of p"));
            }
            if coeffs.len() <= e {
                coeffs.resize(e + 1, 0);
            }
            coeffs[e] = c;
        }
        Ok(PPolynomial { coeffs })
    }

    /// (c, s) when f = c T^{p^s}.
    pub fn as_monomial(&self) -> Option<(Fe, u32)> {
        let nz: Vec<usize> = (0..self.coeffs.len()).filter(|&i| self.coeffs[i] != 0).collect();
        (nz.len() == 1).then(|| (self.coeffs[nz[0]], nz[0] as u32))
    }
}

/// One generator of a presented commutative algebra: g^bound rewrites to
/// coef * monomial, or to zero when `overflow` is None.
#[derive(Clone, Debug)]
pub struct GenSpec {
    pub name: String,
    pub parity: u8,
    pub degree: i64,
    pub bound: u32,
    pub overflow: Option<(Fe, Vec<u32>)>,
}

/// Commutative algebra with monomial rewriting rules whose leading terms
/// g_i^{bound_i} are pairwise coprime. Basis = exponent vectors below the
/// bounds in mixed radix, generator 0 least significant.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub gens: Vec<GenSpec>,
}

impl Presentation {
    pub fn dim(&self) -> usize {
        self.gens.iter().map(|g| g.bound as usize).product()
    }

    pub fn decode(&self, mut idx: usize) -> Vec<u32> {
        self.gens
            .iter()
            .map(|g| {
                let e = (idx % g.bound as usize) as u32;
                idx /= g.bound as usize;
                e
            })
            .collect()
    }

    pub fn encode(&self, e: &[u32]) -> usize {
        let mut idx = 0;
        for (g, &x) in self.gens.iter().zip(e).rev() {
            idx = idx * g.bound as usize + x as usize;
        }
        idx
    }

    /// Reduce an arbitrary exponent vector to normal form.
    pub fn normal_form(&self, f: &Fq, mut e: Vec<u32>) -> Option<(Fe, Vec<u32>)> {
        let mut coef: Fe = 1;
        loop {
            let Some(i) = (0..e.len()).find(|&i| e[i] >= self.gens[i].bound) else {
                return Some((coef, e));
            };
            let (c, mono) = self.gens[i].overflow.as_ref()?;
            e[i] -= self.gens[i].bound;
            for (x, &d) in e.iter_mut().zip(mono) {
                *x += d;
            }
            coef = f.mul(coef, *c);
            if coef == 0 {
                return None;
            }
        }
    }

    pub fn label(&self, idx: usize) -> String {
        let e = self.decode(idx);
        let parts: Vec<String> = self
            .gens
            .iter()
            .zip(&e)
            .rev()
            .filter(|(_, &x)| x > 0)
            .map(|(g, &x)| if x == 1 { g.name.clone() } else { format!("{}^{}", g.name, x) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("")
        }
    }
}

/// A group algebra with its dual coordinate algebra and the pairing
/// (rows: group basis, columns: coordinate basis).
#[derive(Clone, Debug)]
pub struct DualPair {
    pub group: FinDimHopf,
    pub coord: FinDimHopf,
    pub pairing: Matrix,
    pub presentation: Presentation,
    /// Coordinate basis index dual to each generator.
    pub dual_of: Vec<usize>,
}

/// Product of functionals on a coordinate algebra:
/// (fg)(x) = Σ (-1)^{|g||x1|} f(x1) g(x2).
pub fn functional_product(k: &FinDimHopf, fv: &[Fe], gv: &[Fe], gpar: u8) -> Vec<Fe> {
    let fld = &k.field;
    (0..k.dim())
        .map(|x| {
            let mut acc = 0;
            for &(a, b, c) in &k.comult[x] {
                let (fa, gb) = (fv[a as usize], gv[b as usize]);
                if fa != 0 && gb != 0 {
                    let s = ksign(fld, gpar, k.parity(a as usize));
                    acc = fld.add(acc, fld.mul(c, fld.mul(s, fld.mul(fa, gb))));
                }
            }
            acc
        })
        .collect()
}

/// Build the group algebra from a presentation whose generators are the
/// functionals dual to the given coordinate basis elements.
pub fn dual_group(coord: FinDimHopf, pres: Presentation, dual_of: Vec<usize>, graded: bool) -> Result<DualPair> {
    let f = coord.field.clone();
    let n = pres.dim();
    if n != coord.dim() {
        return Err(Error::Shape(format!("presentation has dim {n}, coordinate algebra {}", coord.dim())));
    }
    let gen_fun: Vec<Vec<Fe>> = dual_of.iter().map(|&i| coord.basis_vec(i)).collect();
    // functionals of normal-form monomials, generators multiplied in order
    let mut pairing = Matrix::zeros(&f, n, n);
    let mut parities = vec![0u8; n];
    for h in 0..n {
        let e = pres.decode(h);
        let mut fun = coord.counit.clone();
        let mut par = 0u8;
        for (g, &x) in e.iter().enumerate() {
            for _ in 0..x {
                fun = functional_product(&coord, &fun, &gen_fun[g], pres.gens[g].parity);
                par ^= pres.gens[g].parity;
            }
        }
        parities[h] = par;
        pairing.row_mut(h).copy_from_slice(&fun);
    }
    let q = pairing.inverse().ok_or_else(|| Error::Check("pairing of normal-form monomials is singular".into()))?;

    let basis: Vec<BasisElem> = (0..n)
        .map(|h| {
            let e = pres.decode(h);
            let degree = pres.gens.iter().zip(&e).map(|(g, &x)| g.degree * x as i64).sum();
            BasisElem { label: pres.label(h), parity: parities[h], degree }
        })
        .collect();

    let mut mult = vec![Vec::new(); n * n];
    for a in 0..n {
        let ea = pres.decode(a);
        for b in 0..n {
            let eb = pres.decode(b);
            let sum: Vec<u32> = ea.iter().zip(&eb).map(|(x, y)| x + y).collect();
            if let Some((c, e)) = pres.normal_form(&f, sum) {
                mult[a * n + b].push((pres.encode(&e) as u32, c));
            }
        }
    }
    let mut unit = vec![0; n];
    unit[0] = 1;
    // ε_H(h) = h(1)
    let counit: Vec<Fe> =
        (0..n).map(|h| f.sum(pairing.row(h).iter().zip(&coord.unit).map(|(&x, &y)| f.mul(x, y)))).collect();

    // Δh = Σ_{a,b} (-1)^{|a||b|} h(x_a x_b) η_a ⊗ η_b, with η_a = Σ_h Q[a][h] h
    let mut comult = Vec::with_capacity(n);
    for h in 0..n {
        let prow = pairing.row(h);
        let mut m = Matrix::zeros(&f, n, n);
        for a in 0..n {
            for b in 0..n {
                let mut v = 0;
                for &(k, c) in coord.mul_basis(a, b) {
                    v = f.add(v, f.mul(c, prow[k as usize]));
                }
                if v != 0 {
                    m.set(a, b, f.mul(v, ksign(&f, coord.parity(a), coord.parity(b))));
                }
            }
        }
        let t = q.transpose().mul(&m)?.mul(&q)?;
        let mut terms = Vec::new();
        for h1 in 0..n {
            for h2 in 0..n {
                let c = t.get(h1, h2);
                if c != 0 {
                    terms.push((h1 as u32, h2 as u32, c));
                }
            }
        }
        comult.push(terms);
    }

    // S_H(h) = Σ_a h(S_K x_a) η_a
    let sk = &coord.antipode;
    let mut antipode = Matrix::zeros(&f, n, n);
    for h in 0..n {
        let vals: Vec<Fe> = (0..n)
            .map(|a| {
                let col = sk.col(a);
                f.sum(col.iter().zip(pairing.row(h)).map(|(&x, &y)| f.mul(x, y)))
            })
            .collect();
        for h2 in 0..n {
            let c = f.sum((0..n).map(|a| f.mul(vals[a], q.get(a, h2))));
            antipode.set(h2, h, c);
        }
    }

    let group = FinDimHopf { field: f, basis, graded, mult, unit, comult, counit, antipode };
    Ok(DualPair { group, coord, pairing, presentation: pres, dual_of })
}

fn mrs_presentation(sh: &CoordShape, s: u32, eta_prime: Fe, f: &Fq) -> (Presentation, Vec<usize>) {
    let p = sh.p;
    let r = sh.r;
    let m = (r + 1) as usize;
    let unit_vec = |i: usize| {
        let mut v = vec![0u32; m];
        v[i] = 1;
        v
    };
    let mut gens = Vec::new();
    let mut dual_of = Vec::new();
    // generator 0: v
    let mut vv = vec![0u32; m];
    vv[r as usize] = p;
    gens.push(GenSpec {
        name: "v".into(),
        parity: 1,
        degree: (p as i64).pow(r),
        bound: 2,
        overflow: Some((f.neg(1), vv)),
    });
    dual_of.push(sh.index(0, 0, 1));
    for i in 0..r {
        let last = i == r - 1;
        let overflow = (last && eta_prime != 0).then(|| (f.neg(eta_prime), unit_vec(1)));
        gens.push(GenSpec {
            name: format!("u{i}"),
            parity: 0,
            degree: 2 * (p as i64).pow(i),
            bound: if last { p.pow(s) } else { p },
            overflow,
        });
        dual_of.push(if last { sh.index(0, 1, 0) } else { sh.index(p.pow(i), 0, 0) });
    }
    (Presentation { gens }, dual_of)
}

/// k M_{r;f,η} for monomial f = c T^{p^s}, paired with its coordinate algebra.
pub fn build_group_pair(r: u32, fpoly: &PPolynomial, eta: Fe, field: &Fq) -> Result<DualPair> {
    let f = field;
    let Some((c, s)) = fpoly.as_monomial() else {
        if fpoly.coeffs.iter().all(|&x| x == 0) {
            return invalid("f must be nonzero");
        }
        return invalid("only monomial p-polynomials c·T^{p^s} are supported");
    };
    if s == 0 {
        return invalid("f = cT does not give an infinitesimal group");
    }
    if r == 0 {
        return invalid("need r >= 1");
    }
    if eta != 0 && r == 1 {
        return invalid("η != 0 requires r >= 2");
    }
    let eta_prime = f.div(eta, c);
    let family = if eta_prime == 0 { CoordFamily::Mrs } else { CoordFamily::MrsEta };
    let coord = build_coordinate_hopf(family, r, s, eta_prime, f)?;
    let sh = coord_shape(family, f.p(), r, s, eta_prime)?;
    let (pres, dual_of) = mrs_presentation(&sh, s, eta_prime, f);
    dual_group(coord, pres, dual_of, eta_prime == 0)
}

pub fn build_group_hopf(r: u32, fpoly: &PPolynomial, eta: Fe, field: &Fq) -> Result<FinDimHopf> {
    Ok(build_group_pair(r, fpoly, eta, field)?.group)
}

/// k G_{a(r)} = k[u_0..u_{r-1}]/(u_i^p), dual to k[θ]/θ^{p^r}.
pub fn build_gar_pair(r: u32, field: &Fq) -> Result<DualPair> {
    let p = field.p();
    let coord = build_coordinate_hopf(CoordFamily::Gar, r, 1, 0, field)?;
    let gens = (0..r)
        .map(|i| GenSpec { name: format!("u{i}"), parity: 0, degree: 2 * (p as i64).pow(i), bound: p, overflow: None })
        .collect();
    let dual_of = (0..r).map(|i| p.pow(i) as usize).collect();
    dual_group(coord, Presentation { gens }, dual_of, true)
}

/// k G_a^- = Λ(v), dual to Λ(τ).
pub fn build_gaminus_pair(field: &Fq) -> Result<DualPair> {
    let coord = build_coordinate_hopf(CoordFamily::Gaminus, 1, 1, 0, field)?;
    let gens = vec![GenSpec { name: "v".into(), parity: 1, degree: field.p() as i64, bound: 2, overflow: None }];
    dual_group(coord, Presentation { gens }, vec![1], true)
}

/// Checks that `pairing` (rows: grp basis, cols: coord basis) identifies
/// grp with the dual Hopf superalgebra of coord.
pub fn duality_check(coord: &FinDimHopf, grp: &FinDimHopf, pairing: &Matrix) -> Result<Report> {
    let n = coord.dim();
    if grp.dim() != n || pairing.rows() != n || pairing.cols() != n {
        return Err(Error::Shape("dimension mismatch".into()));
    }
    let f = &coord.field;
    let mut rep = Report { checks: Vec::new() };
    rep.push("pairing_invertible", pairing.inverse().is_none().then(|| "singular pairing".to_string()));

    // ⟨h1 h2, x⟩ = Σ (-1)^{|h2||x1|} ⟨h1,x1⟩⟨h2,x2⟩
    let mut w = None;
    'a: for h1 in 0..n {
        for h2 in 0..n {
            let lhs: Vec<Fe> = {
                let mut v = vec![0; n];
                for &(k, c) in grp.mul_basis(h1, h2) {
                    for (x, vx) in v.iter_mut().enumerate() {
                        *vx = f.add(*vx, f.mul(c, pairing.get(k as usize, x)));
                    }
                }
                v
            };
            let rhs = functional_product(coord, pairing.row(h1), pairing.row(h2), grp.parity(h2));
            if lhs != rhs {
                w = Some(format!("product {}·{}", grp.basis[h1].label, grp.basis[h2].label));
                break 'a;
            }
        }
    }
    rep.push("mult_vs_comult", w);

    // ⟨Δh, x⊗y⟩ = ⟨h, xy⟩ with ⟨h1⊗h2, x⊗y⟩ = (-1)^{|h2||x|}⟨h1,x⟩⟨h2,y⟩
    let mut w = None;
    let pt = pairing.transpose();
    for h in 0..n {
        let mut c = Matrix::zeros(f, n, n);
        for &(a, b, v) in &grp.comult[h] {
            c.set(a as usize, b as usize, f.add(c.get(a as usize, b as usize), v));
        }
        let l = pt.mul(&c)?.mul(pairing)?;
        let mut bad = false;
        for x in 0..n {
            for y in 0..n {
                let lhs = f.mul(l.get(x, y), ksign(f, coord.parity(x), coord.parity(y)));
                let mut rhs = 0;
                for &(k, cc) in coord.mul_basis(x, y) {
                    rhs = f.add(rhs, f.mul(cc, pairing.get(h, k as usize)));
                }
                if lhs != rhs {
                    bad = true;
                }
            }
        }
        if bad {
            w = Some(format!("coproduct of {}", grp.basis[h].label));
            break;
        }
    }
    rep.push("comult_vs_mult", w);

    let unit_pair: Vec<Fe> = (0..n).map(|x| f.sum((0..n).map(|h| f.mul(grp.unit[h], pairing.get(h, x))))).collect();
    let counit_pair: Vec<Fe> = (0..n).map(|h| f.sum((0..n).map(|x| f.mul(coord.unit[x], pairing.get(h, x))))).collect();
    let w = if unit_pair != coord.counit {
        Some("⟨1, -⟩ != ε".to_string())
    } else if counit_pair != grp.counit {
        Some("⟨-, 1⟩ != ε".to_string())
    } else {
        None
    };
    rep.push("units_counits", w);

    // ⟨S h, x⟩ = ⟨h, S x⟩
    let lhs = grp.antipode.transpose().mul(pairing)?;
    let rhs = pairing.mul(&coord.antipode)?;
    rep.push("antipodes", (lhs != rhs).then(|| "antipodes not transpose".to_string()));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::hopf::verify_hopf_axioms;

    #[test]
    fn dims() {
        let f = Fq::prime(3).unwrap();
        let g = build_group_hopf(1, &PPolynomial::monomial(1, 1), 0, &f).unwrap();
        assert_eq!(g.dim(), 6);
        let g = build_group_hopf(2, &PPolynomial::monomial(1, 1), 1, &f).unwrap();
        assert_eq!(g.dim(), 18);
        let g = build_group_hopf(1, &PPolynomial::monomial(1, 2), 0, &f).unwrap();
        assert_eq!(g.dim(), 18);
    }

    #[test]
    fn pairs_pass() {
        let f = Fq::prime(3).unwrap();
        for (r, s, eta) in [(1, 1, 0), (1, 2, 0), (2, 1, 0), (2, 1, 2), (2, 2, 1)] {
            let dp = build_group_pair(r, &PPolynomial::monomial(1, s), eta, &f).unwrap();
            let rep = verify_hopf_axioms(&dp.group);
            assert!(rep.pass(), "{r} {s} {eta}: {:?}", rep.first_failure());
            let d = duality_check(&dp.coord, &dp.group, &dp.pairing).unwrap();
            assert!(d.pass(), "{r} {s} {eta}: {:?}", d.first_failure());
        }
    }

    #[test]
    fn bad_polys() {
        let f = Fq::prime(3).unwrap();
        assert!(PPolynomial::from_dense(&f, &[1, 1]).is_err());
        assert!(PPolynomial::from_dense(&f, &[0, 0]).is_err());
        assert!(PPolynomial::from_dense(&f, &[0, 1, 1]).is_err());
        assert_eq!(PPolynomial::from_dense(&f, &[0, 0, 0, 2]).unwrap(), PPolynomial::monomial(2, 1));
    }
}
