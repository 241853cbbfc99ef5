//! Restriction of cohomology classes along Hopf maps, and the closed forms
//! for the classified homomorphisms M_r -> G.

use std::sync::Arc;

use super::classes::{family_cohomology, lambda_name, x_name, CohomClass, FamilyCohomology};
use crate::error::{invalid, Error, Result};
use crate::fields::{Fe, Fq};
use crate::homvariety::{comorphism_from_params, FamilyTag, HomParams, TargetFamily};
use crate::ring::{Poly, PresentedGradedRing};
use crate::superalgebra::hopf::AlgebraMorphism;

/// φ^*(c) as an element of the presented cohomology of `target`, whose
/// coordinate algebra must be the codomain of φ.
pub fn restrict_class(phi: &AlgebraMorphism, c: &CohomClass, target: &FamilyCohomology) -> Result<Poly> {
    if !phi.hopf {
        return invalid("restriction needs a Hopf map");
    }
    if phi.target.dim() != target.hopf().dim() || phi.matrix.cols() != phi.source.dim() {
        return Err(Error::Shape("map does not land in the given family".into()));
    }
    target.express(&c.rep.apply(phi)?)
}

/// Restriction of a ring element of H^•(source) given by generator monomials.
pub fn restrict_poly(
    phi: &AlgebraMorphism,
    source: &FamilyCohomology,
    z: &Poly,
    target: &FamilyCohomology,
) -> Result<Poly> {
    if !phi.hopf {
        return invalid("restriction needs a Hopf map");
    }
    target.express(&source.poly_rep(z)?.apply(phi)?)
}

/// The ambient M_{r;t} family that holds every classified map into `fam`.
pub fn restriction_ambient(fam: &TargetFamily) -> TargetFamily {
    TargetFamily::elementary(fam.r, fam.min_ambient())
}

/// Restrictions of every generator of H^•(G) along the classified map
/// with the given parameters, in generator order.
pub fn restrict_generators(params: &HomParams, f: &Fq) -> Result<Vec<(String, Poly)>> {
    if params.shift != 0 {
        return invalid("Frobenius-shifted parameters are not restricted directly");
    }
    let fam = params.family;
    let amb = restriction_ambient(&fam);
    let phi = comorphism_from_params(params, f, amb.s)?;
    let src = family_cohomology(&fam, f)?;
    let tgt = family_cohomology(&amb, f)?;
    src.generators.iter().map(|g| Ok((g.name.clone(), restrict_class(&phi, g, &tgt)?))).collect()
}

fn scaled(ring: &PresentedGradedRing, name: &str, c: Fe) -> Poly {
    ring.var(name).scale(&ring.field, c)
}

/// Closed-form restrictions of the generators of H^•(G) along the
/// classified map with the given parameters, in the ring of the ambient.
pub fn closed_form_restrictions(params: &HomParams, f: &Fq) -> Result<Vec<(String, Poly)>> {
    params.validate(f)?;
    let fam = params.family;
    let amb = restriction_ambient(&fam);
    let ring = family_cohomology(&amb, f)?.ring.clone();
    let src = family_cohomology(&fam, f)?;
    let r = fam.r;
    let s = fam.s;
    let p = f.p();
    let a = |k: u32| params.a[k as usize];
    let frob = |x: Fe, e: u32| f.frob(x, e);
    let mut out = Vec::new();
    for g in &src.generators {
        let name = g.name.as_str();
        let img = if name == "y" {
            scaled(&ring, "y", params.mu())
        } else if fam.tag == FamilyTag::MrsEta {
            if name == "w" {
                // (−η^{−1})^p Σ_k a_k^p x_{k+1} + a₀^{p^{r+s}} w
                let c = f.pow(f.neg(f.inv(fam.eta)), p as u64);
                let mut e = scaled(&ring, "w", frob(a(0), r + s));
                for k in 0..r {
                    e = e.add(f, &scaled(&ring, &x_name(k + 1), f.mul(c, frob(a(k), 1))));
                }
                e
            } else {
                let (lam, i) = match name.strip_prefix("lambda") {
                    Some(i) => (true, i.parse::<u32>().unwrap()),
                    None => (false, name[1..].parse::<u32>().unwrap()),
                };
                let mut e = Poly::zero();
                for k in 0..r - i {
                    let tname = if lam { lambda_name(i + k + 1) } else { x_name(i + k + 1) };
                    let c = if lam { frob(a(k), i) } else { frob(a(k), i + 1) };
                    e = e.add(f, &scaled(&ring, &tname, c));
                }
                e
            }
        } else if name == "w" {
            // a₀^{p^{r+s−1}} w_s + b^p x_r
            scaled(&ring, "w", frob(a(0), r + s - 1)).add(f, &scaled(&ring, &x_name(r), frob(params.b.unwrap_or(0), 1)))
        } else {
            let (lam, i) = match name.strip_prefix("lambda") {
                Some(i) => (true, i.parse::<u32>().unwrap()),
                None => (false, name[1..].parse::<u32>().unwrap()),
            };
            let mut e = Poly::zero();
            for k in 0..=r - i {
                let tname = if lam { lambda_name(i + k) } else { x_name(i + k) };
                let c = if lam { frob(a(k), i - 1) } else { frob(a(k), i) };
                e = e.add(f, &scaled(&ring, &tname, c));
            }
            e
        };
        out.push((g.name.clone(), ring.normal_form(&img)));
    }
    Ok(out)
}

/// Per-generator comparison of the computed and closed-form restrictions.
pub fn check_restriction_formulas(params: &HomParams, f: &Fq) -> Result<Vec<(String, Poly, Poly)>> {
    let got = restrict_generators(params, f)?;
    let want = closed_form_restrictions(params, f)?;
    Ok(got.into_iter().zip(want).filter(|(g, w)| g.1 != w.1).map(|(g, w)| (g.0, g.1, w.1)).collect())
}

/// The shared ambient cohomology for a family's restrictions.
pub fn ambient_cohomology(fam: &TargetFamily, f: &Fq) -> Result<Arc<FamilyCohomology>> {
    family_cohomology(&restriction_ambient(fam), f)
}
