//! The coordinate rings k[N_r(G)] and their F_q-points.

use serde::Serialize;

use super::params::{variable_names, FamilyTag, HomParams, TargetFamily};
use crate::error::{invalid, Error, Result};
use crate::fields::{Fe, Fq};
use crate::ring::{GenInfo, Poly, PresentedGradedRing};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointSet {
    pub generators: Vec<String>,
    /// Sorted coordinate lists, one entry per non-exterior generator.
    pub points: Vec<Vec<Fe>>,
}

/// k[N_r(G)] with deg μ = p^r/2, deg a_i = p^i, deg b_s = p^{r−1}.
pub fn coordinate_algebra_nr(fam: &TargetFamily, f: &Fq) -> Result<PresentedGradedRing> {
    fam.validate()?;
    if fam.tag == FamilyTag::MrEndo {
        return invalid("k[N_r] is provided for the five elementary families only");
    }
    let p = f.p() as i64;
    let r = fam.r;
    let mut gens = Vec::new();
    for name in variable_names(fam) {
        let d2 = if name == "mu" {
            p.pow(r)
        } else if let Some(i) = name.strip_prefix('a') {
            2 * p.pow(i.parse().unwrap())
        } else {
            2 * p.pow(r - 1)
        };
        gens.push(GenInfo::new(&name, d2));
    }
    let n = gens.len();
    let mut rels = Vec::new();
    if fam.constrained() {
        let mut m0 = vec![0; n];
        m0[0] = 2;
        let mut m1 = vec![0; n];
        m1[1] = p.pow(r) as u32;
        let mut rel = Poly::term(1, m0);
        rel.add_term(f, m1, f.neg(1));
        rels.push(rel);
    }
    let ring = PresentedGradedRing::new(f, gens, rels)?;
    if !ring.frobenius_injective_upto(2 * p.pow(r))? {
        return Err(Error::Check(format!("presentation of k[N_r({})] is not reduced", fam.label())));
    }
    Ok(ring)
}

/// All F_q-points of Spec R (exterior generators are 0 at every point).
pub fn enumerate_variety_points(ring: &PresentedGradedRing, f: &Fq) -> Result<PointSet> {
    if !ring.field.same(f) {
        return Err(Error::FieldMismatch);
    }
    let free: Vec<usize> = (0..ring.ngens()).filter(|&i| !ring.gens[i].exterior).collect();
    if free.len() > 6 {
        return Err(Error::Budget {
            what: "variety point enumeration (generators)".into(),
            estimate: free.len() as u128,
            budget: 6,
        });
    }
    let total = (f.q() as u128).pow(free.len() as u32);
    let budget = 1u128 << 24;
    if total > budget {
        return Err(Error::Budget { what: "variety point enumeration".into(), estimate: total, budget });
    }
    let q = f.q() as u128;
    let mut points = Vec::new();
    let mut pt = vec![0; ring.ngens()];
    for code in 0..total {
        let mut c = code;
        for &i in &free {
            pt[i] = (c % q) as Fe;
            c /= q;
        }
        if ring.relations.iter().all(|rel| ring.eval(rel, &pt) == 0) {
            points.push(free.iter().map(|&i| pt[i]).collect());
        }
    }
    points.sort();
    Ok(PointSet { generators: free.iter().map(|&i| ring.gens[i].name.clone()).collect(), points })
}

pub fn params_from_point(fam: &TargetFamily, pt: &[Fe]) -> HomParams {
    let mut it = pt.iter().copied();
    let mu = fam.has_mu().then(|| it.next().unwrap());
    let a = (0..fam.n_a()).map(|_| it.next().unwrap()).collect();
    let b = fam.has_b().then(|| it.next().unwrap());
    HomParams::new(*fam, mu, a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presented_rings() {
        let f = Fq::prime(3).unwrap();
        let r = coordinate_algebra_nr(&TargetFamily::gar(2), &f).unwrap();
        assert!(r.relations.is_empty());
        assert_eq!(r.ngens(), 2);
        let r = coordinate_algebra_nr(&TargetFamily::mrs(1, 2), &f).unwrap();
        assert_eq!(r.describe(), "k[mu:3/2, a0:1, b2:1]/(mu^2 + 2*a0^3)");
        let r = coordinate_algebra_nr(&TargetFamily::gaminus(), &f).unwrap();
        assert_eq!(enumerate_variety_points(&r, &f).unwrap().points.len(), 3);
    }

    #[test]
    fn mu_a0_points() {
        for q in [3u32, 9] {
            let f = Fq::of_order(q).unwrap();
            let base =
                PresentedGradedRing::new(&f, vec![GenInfo::new("mu", 3), GenInfo::new("a0", 2)], vec![]).unwrap();
            let rel = base.parse("mu^2 - a0^3").unwrap();
            let ring = PresentedGradedRing::new(&f, base.gens.clone(), vec![rel]).unwrap();
            let pts = enumerate_variety_points(&ring, &f).unwrap();
            if q == 3 {
                assert_eq!(pts.points, vec![vec![0, 0], vec![1, 1], vec![2, 1]]);
            } else {
                assert_eq!(pts.points.len(), 9);
            }
        }
    }
}
