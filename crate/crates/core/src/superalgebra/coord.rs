//! Coordinate algebras on the monomial basis θ^a σ_j τ^ε.

use serde::{Deserialize, Serialize};

use super::hopf::{convolution_antipode, BasisElem, FinDimHopf};
use crate::error::{invalid, Result};
use crate::fields::{Fe, Fq, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoordFamily {
    Mrs,
    MrsEta,
    Gar,
    Gaminus,
    /// k[M_{r;t}], used as ambient codomain.
    MrTruncated(u32),
}

/// Shape of a monomial basis θ^a σ_j τ^ε with a < a_bound, j < j_bound,
/// ε < e_bound. Index = (j * a_bound + a) * e_bound + ε.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoordShape {
    pub p: u32,
    pub r: u32,
    pub a_bound: u32,
    pub j_bound: u32,
    pub e_bound: u32,
}

impl CoordShape {
    pub fn mrs(p: u32, r: u32, s: u32) -> CoordShape {
        CoordShape { p, r, a_bound: p.pow(r - 1), j_bound: p.pow(s), e_bound: 2 }
    }

    pub fn dim(&self) -> usize {
        (self.a_bound * self.j_bound * self.e_bound) as usize
    }

    pub fn index(&self, a: u32, j: u32, eps: u32) -> usize {
        ((j * self.a_bound + a) * self.e_bound + eps) as usize
    }

    pub fn decode(&self, idx: usize) -> (u32, u32, u32) {
        let idx = idx as u32;
        let eps = idx % self.e_bound;
        let rest = idx / self.e_bound;
        (rest % self.a_bound, rest / self.a_bound, eps)
    }

    /// θ^a with carries into σ_1 when the divided-power part exists.
    pub fn theta_pow(&self, a: u32) -> Option<(u32, u32)> {
        if a < self.a_bound {
            return Some((a, 0));
        }
        if self.j_bound == 1 {
            return None;
        }
        Some((a % self.a_bound, a / self.a_bound))
    }

    pub fn label(&self, idx: usize) -> String {
        let (a, j, eps) = self.decode(idx);
        let mut s = String::new();
        match a {
            0 => {}
            1 => s.push('θ'),
            _ => s.push_str(&format!("θ^{a}")),
        }
        if j > 0 {
            s.push_str(&format!("σ{j}"));
        }
        if eps == 1 {
            s.push('τ');
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }

    pub fn degree(&self, idx: usize) -> i64 {
        let (a, j, eps) = self.decode(idx);
        let p = self.p as i64;
        2 * a as i64 + 2 * j as i64 * p.pow(self.r - 1) + eps as i64 * p.pow(self.r)
    }

    /// Product of two basis monomials: at most one term.
    pub fn mul_monomials(&self, f: &Fq, x: usize, y: usize) -> Option<(usize, Fe)> {
        let (a1, j1, e1) = self.decode(x);
        let (a2, j2, e2) = self.decode(y);
        if e1 + e2 >= 2 {
            return None;
        }
        let (a, carry) = if a1 + a2 < self.a_bound {
            (a1 + a2, 0)
        } else if self.j_bound > 1 {
            (a1 + a2 - self.a_bound, 1)
        } else {
            return None;
        };
        let j = j1 + j2 + carry;
        if j >= self.j_bound {
            return None;
        }
        let mut c = f.binom((j1 + j2) as u64, j1 as u64);
        if carry == 1 {
            // σ_{j1+j2} σ_1 = (j1+j2+1) σ_{j1+j2+1}
            c = f.mul(c, f.binom(j as u64, 1));
        }
        (c != 0).then(|| (self.index(a, j, e1 + e2), c))
    }
}

fn params_for(family: CoordFamily, p: u32, r: u32, s: u32, eta: Fe) -> Result<CoordShape> {
    match family {
        CoordFamily::Mrs | CoordFamily::MrsEta | CoordFamily::MrTruncated(_) => {
            let s = if let CoordFamily::MrTruncated(t) = family { t } else { s };
            if r == 0 || s == 0 {
                return invalid("need r >= 1 and s >= 1");
            }
            if family == CoordFamily::MrsEta {
                if r < 2 {
                    return invalid("the η-twisted family needs r >= 2");
                }
                if eta == 0 {
                    return invalid("the η-twisted family needs η != 0");
                }
            } else if eta != 0 {
                return invalid("η must be 0 outside the η-twisted family");
            }
            Ok(CoordShape::mrs(p, r, s))
        }
        CoordFamily::Gar => {
            if r == 0 {
                return invalid("need r >= 1");
            }
            Ok(CoordShape { p, r, a_bound: p.pow(r), j_bound: 1, e_bound: 1 })
        }
        CoordFamily::Gaminus => Ok(CoordShape { p, r: r.max(1), a_bound: 1, j_bound: 1, e_bound: 2 }),
    }
}

/// Shape of the basis that `build_coordinate_hopf` would use.
pub fn coord_shape(family: CoordFamily, p: u32, r: u32, s: u32, eta: Fe) -> Result<CoordShape> {
    params_for(family, p, r, s, eta)
}

pub fn build_coordinate_hopf(family: CoordFamily, r: u32, s: u32, eta: Fe, field: &Fq) -> Result<FinDimHopf> {
    let sh = params_for(family, field.p(), r, s, eta)?;
    let f = field;
    let n = sh.dim();
    let basis: Vec<BasisElem> =
        (0..n).map(|i| BasisElem { label: sh.label(i), parity: sh.decode(i).2 as u8, degree: sh.degree(i) }).collect();
    let mut mult = vec![Vec::new(); n * n];
    for x in 0..n {
        for y in 0..n {
            if let Some((k, c)) = sh.mul_monomials(f, x, y) {
                mult[x * n + y].push((k as u32, c));
            }
        }
    }
    let mut unit = vec![0; n];
    unit[0] = 1;
    let mut counit = vec![0; n];
    counit[0] = 1;
    let mut h = FinDimHopf {
        field: f.clone(),
        basis,
        graded: family != CoordFamily::MrsEta,
        mult,
        unit,
        comult: vec![Vec::new(); n],
        counit,
        antipode: Matrix::zeros(f, n, n),
    };

    let idx2 = |x: usize, y: usize| x * n + y;
    let mut one_t = vec![0; n * n];
    one_t[idx2(0, 0)] = 1;
    let prim = |x: usize| {
        let mut t = vec![0; n * n];
        t[idx2(x, 0)] = 1;
        t[idx2(0, x)] = 1;
        t
    };

    // Δ(θ^a)
    let mut d_theta_pows = vec![one_t.clone()];
    if sh.a_bound > 1 {
        let mut dt = prim(sh.index(1, 0, 0));
        if family == CoordFamily::MrsEta {
            let ps = sh.j_bound;
            let c = f.neg(eta);
            for i in 1..ps {
                let k = idx2(sh.index(0, i, 0), sh.index(0, ps - i, 0));
                dt[k] = f.add(dt[k], c);
            }
            let p = sh.p;
            for i in 0..ps {
                for j in 0..ps {
                    if i + j + p == ps {
                        let k = idx2(sh.index(0, i, 1), sh.index(0, j, 1));
                        dt[k] = f.add(dt[k], c);
                    }
                }
            }
        }
        for _ in 1..sh.a_bound {
            let next = h.tensor_mul(d_theta_pows.last().unwrap(), &dt);
            d_theta_pows.push(next);
        }
    }
    // Δ(σ_j)
    let d_sigma: Vec<Vec<Fe>> = (0..sh.j_bound)
        .map(|j| {
            let mut t = vec![0; n * n];
            for u in 0..=j {
                t[idx2(sh.index(0, u, 0), sh.index(0, j - u, 0))] = 1;
            }
            if sh.e_bound == 2 && j >= sh.p {
                for u in 0..=j - sh.p {
                    t[idx2(sh.index(0, u, 1), sh.index(0, j - sh.p - u, 1))] = 1;
                }
            }
            t
        })
        .collect();
    let d_tau = if sh.e_bound == 2 { Some(prim(sh.index(0, 0, 1))) } else { None };

    for x in 0..n {
        let (a, j, eps) = sh.decode(x);
        let mut t = h.tensor_mul(&d_theta_pows[a as usize], &d_sigma[j as usize]);
        if eps == 1 {
            t = h.tensor_mul(&t, d_tau.as_ref().unwrap());
        }
        h.comult[x] =
            t.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| ((k / n) as u32, (k % n) as u32, c)).collect();
    }

    h.antipode = if family == CoordFamily::MrsEta { convolution_antipode(&h)? } else { closed_form_antipode(&sh, f) };
    Ok(h)
}

/// S(θ) = -θ, S(σ_j) = (-1)^j σ_j, S(τ) = -τ, extended multiplicatively.
pub fn closed_form_antipode(sh: &CoordShape, f: &Fq) -> Matrix {
    let n = sh.dim();
    let mut m = Matrix::zeros(f, n, n);
    for x in 0..n {
        let (a, j, eps) = sh.decode(x);
        let sign = if (a + j + eps) % 2 == 0 { 1 } else { f.neg(1) };
        m.set(x, x, sign);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::hopf::verify_hopf_axioms;

    #[test]
    fn m11_basis() {
        let f = Fq::prime(3).unwrap();
        let h = build_coordinate_hopf(CoordFamily::Mrs, 1, 1, 0, &f).unwrap();
        let labels: Vec<_> = h.basis.iter().map(|b| b.label.as_str()).collect();
        assert_eq!(labels, ["1", "τ", "σ1", "σ1τ", "σ2", "σ2τ"]);
        assert!(verify_hopf_axioms(&h).pass());
    }

    #[test]
    fn small_dims() {
        let f = Fq::prime(3).unwrap();
        assert_eq!(build_coordinate_hopf(CoordFamily::Gaminus, 1, 1, 0, &f).unwrap().dim(), 2);
        assert_eq!(build_coordinate_hopf(CoordFamily::Gar, 2, 1, 0, &f).unwrap().dim(), 9);
        assert!(build_coordinate_hopf(CoordFamily::MrsEta, 1, 1, 1, &f).is_err());
    }

    #[test]
    fn eta_antipode_is_not_diagonal_but_valid() {
        let f = Fq::prime(3).unwrap();
        let h = build_coordinate_hopf(CoordFamily::MrsEta, 2, 1, 1, &f).unwrap();
        let rep = verify_hopf_axioms(&h);
        assert!(rep.pass(), "{:?}", rep.first_failure());
    }

    #[test]
    fn convolution_matches_closed_form() {
        let f = Fq::prime(3).unwrap();
        let h = build_coordinate_hopf(CoordFamily::Mrs, 2, 2, 0, &f).unwrap();
        assert_eq!(convolution_antipode(&h).unwrap(), h.antipode);
    }
}
