//! Group-algebra modules of the height-one families, pullbacks to P₁ along
//! points of N₁(G), the support sets they cut out, and Aut(G)-orbits.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::p1::{id_infinite, GradedP1Module, IdDecision};
use crate::error::{invalid, Error, Result};
use crate::fields::{Fe, FieldSpec, Fq, Matrix};
use crate::homvariety::tuple::{module_from_tuple, GroupModule, SuperMatrixTuple};
use crate::homvariety::{
    comorphism_from_params, compose_endos, coordinate_algebra_nr, endo_matrix, enumerate_variety_points,
    is_automorphism, params_from_point, FamilyTag, HomParams, TargetFamily,
};
use crate::superalgebra::cache::dual_pair;
use crate::superalgebra::coord::CoordFamily;
use crate::superalgebra::group::DualPair;

pub fn check_height_one(fam: &TargetFamily) -> Result<()> {
    fam.validate()?;
    let ok = fam.r == 1 && matches!(fam.tag, FamilyTag::Mr1 | FamilyTag::Mrs | FamilyTag::Gar | FamilyTag::Gaminus);
    if !ok {
        return invalid(format!("support sets are defined for height-one families, not {}", fam.label()));
    }
    Ok(())
}

fn family_pair(fam: &TargetFamily, f: &Fq) -> Result<Arc<DualPair>> {
    let (c, r, s, eta) = fam.coord_args();
    dual_pair(c, r, s, eta, f)
}

/// The kG-module given by a tuple (α | β) with r = 1. G_a(1) uses α alone
/// and G_a^- uses β alone; the other matrix must vanish.
pub fn group_module(fam: &TargetFamily, t: &SuperMatrixTuple, f: &Fq) -> Result<GroupModule> {
    check_height_one(fam)?;
    if t.r() != 1 {
        return invalid("height-one modules take a single α");
    }
    if !t.field().same(f) {
        return Err(Error::FieldMismatch);
    }
    let gm = match fam.tag {
        FamilyTag::Mr1 | FamilyTag::Mrs => module_from_tuple(t, fam.s)?,
        FamilyTag::Gar | FamilyTag::Gaminus => {
            let gar = fam.tag == FamilyTag::Gar;
            let (used, unused) = if gar { (&t.alpha[0], &t.beta) } else { (&t.beta, &t.alpha[0]) };
            if !unused.is_zero() {
                return invalid(format!("{} acts through {} only", fam.label(), if gar { "α" } else { "β" }));
            }
            let pair = family_pair(fam, f)?;
            let action =
                (0..pair.presentation.dim()).map(|idx| used.pow(pair.presentation.decode(idx)[0] as u64)).collect();
            GroupModule { r: 1, s: fam.s, m: t.m, n: t.n, pair, action }
        }
        _ => unreachable!(),
    };
    let rep = gm.check();
    if let Some(bad) = rep.first_failure() {
        return invalid(format!("not a module for {}: {}", fam.label(), bad.witness.clone().unwrap_or_default()));
    }
    Ok(gm)
}

/// Coefficients in the group basis of the functional g on k[G].
fn functional_to_group(pair: &DualPair, g: &[Fe]) -> Result<Vec<Fe>> {
    let inv = pair.pairing.inverse().ok_or_else(|| Error::Check("singular pairing".into()))?;
    Ok(inv.transpose().apply(g))
}

fn act(gm: &GroupModule, coeffs: &[Fe]) -> Matrix {
    let f = &gm.pair.group.field;
    let d = gm.m + gm.n;
    coeffs
        .iter()
        .zip(&gm.action)
        .filter(|e| *e.0 != 0)
        .fold(Matrix::zeros(f, d, d), |acc, (&c, a)| acc.add(&a.scale(c)).unwrap())
}

/// φ*M as a P₁-module: u and v act through the images of the generators
/// of kM_{1;t} under the dual of φ^*.
pub fn pullback_module(params: &HomParams, gm: &GroupModule, f: &Fq) -> Result<GradedP1Module> {
    let fam = params.family;
    check_height_one(&fam)?;
    if params.shift != 0 {
        return invalid("pullbacks are taken along maps from M_1");
    }
    if gm.pair.group.dim() != fam.shape(f.p()).dim() {
        return Err(Error::Shape("module is not over the group algebra of this family".into()));
    }
    let t = fam.default_ambient();
    let phi = comorphism_from_params(params, f, t)?;
    let amb = dual_pair(CoordFamily::Mrs, 1, t, 0, f)?;
    if amb.coord.dim() != phi.target.dim() {
        return Err(Error::Shape("ambient group algebra does not match the comorphism".into()));
    }
    let pres = &amb.presentation;
    let mut mats = Vec::new();
    for e in [[0, 1], [1, 0]] {
        let h = pres.encode(&e);
        // (φ_* h)(x) = h(φ^* x)
        let g = phi.matrix.transpose().apply(amb.pairing.row(h));
        mats.push(act(gm, &functional_to_group(&gm.pair, &g)?));
    }
    let beta = mats.pop().unwrap();
    let alpha = mats.pop().unwrap();
    let parity = (0..gm.m + gm.n).map(|i| (i >= gm.m) as u8).collect();
    GradedP1Module::new(f, parity, alpha, beta, None)
        .map_err(|e| Error::Check(format!("pullback along {:?} is not a P₁-module: {e}", params.coords())))
}

/// ν*M for an endomorphism ν of G: h acts as ν_*(h) does on M.
pub fn pullback_along_endo(nu: &HomParams, gm: &GroupModule, f: &Fq) -> Result<GroupModule> {
    check_height_one(&nu.family)?;
    let m = endo_matrix(nu, f)?;
    let pair = &gm.pair;
    let action = (0..pair.group.dim())
        .map(|h| {
            let g = m.transpose().apply(pair.pairing.row(h));
            Ok(act(gm, &functional_to_group(pair, &g)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let out = GroupModule { action, ..gm.clone() };
    if let Some(bad) = out.check().first_failure() {
        return Err(Error::Check(format!("ν*M is not a module: {}", bad.name)));
    }
    Ok(out)
}

/// The F_q-points of N₁(G) as parameters.
pub fn variety_params(fam: &TargetFamily, f: &Fq) -> Result<Vec<HomParams>> {
    let ring = coordinate_algebra_nr(fam, f)?;
    Ok(enumerate_variety_points(&ring, f)?.points.iter().map(|pt| params_from_point(fam, pt)).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct PointCertificate {
    pub point: Vec<Fe>,
    pub member: bool,
    pub decision: IdDecision,
}

#[derive(Clone, Debug, Serialize)]
pub struct SupportReport {
    pub family: TargetFamily,
    pub module: String,
    pub field: FieldSpec,
    pub coordinates: Vec<String>,
    pub members: Vec<Vec<Fe>>,
    pub non_members: Vec<Vec<Fe>>,
    pub certificates: Vec<PointCertificate>,
}

impl SupportReport {
    /// Every point decided the same way by the syzygy and Ext-window tests.
    pub fn cross_validated(&self) -> bool {
        self.certificates.iter().all(|c| c.decision.agree())
    }
}

/// N₁(G)_M: the points φ with id(φ*M) = ∞.
pub fn support_set(fam: &TargetFamily, gm: &GroupModule, descriptor: &str, f: &Fq) -> Result<SupportReport> {
    check_height_one(fam)?;
    let params = variety_params(fam, f)?;
    let certificates = params
        .par_iter()
        .map(|phi| {
            let decision = id_infinite(&pullback_module(phi, gm, f)?)?;
            Ok(PointCertificate { point: phi.coords(), member: decision.infinite, decision })
        })
        .collect::<Result<Vec<_>>>()?;
    let (members, non_members) = certificates.iter().fold((Vec::new(), Vec::new()), |(mut a, mut b), c| {
        if c.member {
            a.push(c.point.clone());
        } else {
            b.push(c.point.clone());
        }
        (a, b)
    });
    Ok(SupportReport {
        family: *fam,
        module: descriptor.to_string(),
        field: f.spec(),
        coordinates: coordinate_algebra_nr(fam, f)?.gens.iter().map(|g| g.name.clone()).collect(),
        members,
        non_members,
        certificates,
    })
}

/// The F_q-points of Aut(G).
pub fn automorphisms(fam: &TargetFamily, f: &Fq) -> Result<Vec<HomParams>> {
    check_height_one(fam)?;
    variety_params(fam, f)?
        .into_iter()
        .filter_map(|h| is_automorphism(&h, f).map(|a| a.then_some(h)).transpose())
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub family: TargetFamily,
    pub field: FieldSpec,
    pub n_automorphisms: usize,
    pub orbits: Vec<Vec<Vec<Fe>>>,
    pub counts: Vec<usize>,
}

/// Orbits of φ ↦ ν∘φ on N₁(G)(F_q) over all F_q-automorphisms ν.
pub fn aut_orbits(fam: &TargetFamily, f: &Fq) -> Result<OrbitReport> {
    let points = variety_params(fam, f)?;
    let auts = automorphisms(fam, f)?;
    let index: BTreeMap<Vec<Fe>, usize> = points.iter().enumerate().map(|(i, p)| (p.coords(), i)).collect();
    let moves: Vec<Vec<usize>> = points
        .par_iter()
        .map(|phi| {
            auts.iter()
                .map(|nu| {
                    let c = compose_endos(phi, nu, f)?.coords();
                    index.get(&c).copied().ok_or_else(|| Error::Check(format!("ν∘φ = {c:?} is not a point")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut comp = vec![usize::MAX; points.len()];
    let mut orbits = Vec::new();
    for start in 0..points.len() {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut stack = vec![start];
        comp[start] = id;
        let mut members = Vec::new();
        while let Some(i) = stack.pop() {
            members.push(points[i].coords());
            for &j in &moves[i] {
                if comp[j] == usize::MAX {
                    comp[j] = id;
                    stack.push(j);
                }
            }
        }
        members.sort();
        orbits.push(members);
    }
    orbits.sort();
    Ok(OrbitReport {
        family: *fam,
        field: f.spec(),
        n_automorphisms: auts.len(),
        counts: orbits.iter().map(|o| o.len()).collect(),
        orbits,
    })
}
