//! The graded algebra map ψ_r : H(G,k) -> k[N_r(G)] on generators, and its
//! structural checks.

use std::collections::BTreeSet;

use serde::Serialize;

use super::classes::{cohomology_ring, family_cohomology, presented_cohomology_ring, x_name};
use super::restrict::{restrict_class, restrict_poly};
use crate::error::{invalid, Error, Result};
use crate::fields::{Fe, Fq};
use crate::homvariety::{
    comorphism_from_params, coordinate_algebra_nr, enumerate_variety_points, params_from_point, pushforward_hom,
    quotient_map, variety::PointSet, FamilyTag, HomParams, TargetFamily,
};
use crate::ring::{Poly, PresentedGradedRing, RingMap};
use crate::superalgebra::hopf::Report;

fn pow_var(ring: &PresentedGradedRing, name: &str, e: u64) -> Poly {
    ring.pow(&ring.var(name), e)
}

/// ψ_r on the generators of H(G,k).
pub fn psi_map(fam: &TargetFamily, f: &Fq) -> Result<RingMap> {
    if fam.tag == FamilyTag::MrEndo {
        return invalid("ψ is defined for the elementary families");
    }
    let source = presented_cohomology_ring(fam, f)?;
    let target = coordinate_algebra_nr(fam, f)?;
    let p = f.p() as u64;
    let r = fam.r;
    let images = source
        .gens
        .iter()
        .map(|g| {
            let name = g.name.as_str();
            if name == "y" {
                target.var("mu")
            } else if name.starts_with("lambda") {
                Poly::zero()
            } else if name == "w" {
                if fam.tag == FamilyTag::MrsEta {
                    // (−η^{−1})^p a_{r−1}^p
                    let c = f.pow(f.neg(f.inv(fam.eta)), p);
                    pow_var(&target, &format!("a{}", r - 1), p).scale(f, c)
                } else {
                    pow_var(&target, &format!("b{}", fam.s), p)
                }
            } else {
                let i: u32 = name[1..].parse().unwrap();
                if fam.tag == FamilyTag::MrsEta {
                    pow_var(&target, &format!("a{}", r - i - 1), p.pow(i + 1))
                } else {
                    pow_var(&target, &format!("a{}", r - i), p.pow(i))
                }
            }
        })
        .collect();
    let psi = RingMap { source, target, images };
    psi.check_relations()?;
    Ok(psi)
}

/// ψ_r multiplies degrees by p^r/2 on every generator with nonzero image.
pub fn check_psi_degrees(psi: &RingMap, pr: i64) -> Report {
    let mut rep = Report { checks: Vec::new() };
    for (g, img) in psi.source.gens.iter().zip(&psi.images) {
        if img.is_zero() {
            continue;
        }
        let got = psi.target.degree2_of(img);
        let want = g.degree2 * pr / 2;
        rep.push(
            &format!("degree_{}", g.name),
            (got != Some(want)).then(|| format!("ψ({}) has doubled degree {:?}, expected {want}", g.name, got)),
        );
    }
    rep
}

#[derive(Clone, Debug, Serialize)]
pub struct PsiProperties {
    pub kernel_nilpotent: bool,
    pub pr_power_surjective: bool,
    /// cohomological degree up to which the kernel was computed
    pub verified_up_to: usize,
    pub kernel_elements: Vec<String>,
    /// g^{p^r} written through ψ-images, one per target generator
    pub exhibits: Vec<String>,
    pub failures: Vec<String>,
}

/// Kernel of ψ degree by degree up to `cap`, each kernel basis element shown
/// nilpotent, and g^{p^r} exhibited in the image for every target generator.
pub fn verify_psi_properties(psi: &RingMap, pr: u64, cap: usize) -> Result<PsiProperties> {
    let src = &psi.source;
    let tgt = &psi.target;
    let f = &src.field;
    let mut out = PsiProperties {
        kernel_nilpotent: true,
        pr_power_surjective: true,
        verified_up_to: cap,
        kernel_elements: Vec::new(),
        exhibits: Vec::new(),
        failures: Vec::new(),
    };
    let n_ext = src.gens.iter().filter(|g| g.exterior).count() as u64;
    for d in 1..=cap as i64 {
        let basis = src.basis(2 * d);
        if basis.is_empty() {
            continue;
        }
        let m = psi.degree_matrix(2 * d, d * pr as i64)?;
        for v in m.kernel() {
            let mut z = Poly::zero();
            for (mono, &c) in basis.iter().zip(&v) {
                z.add_term(f, mono.clone(), c);
            }
            let s = src.format(&z);
            if !src.is_zero(&src.pow(&z, n_ext + 1)) {
                out.kernel_nilpotent = false;
                out.failures.push(format!("{s} is in the kernel but ({s})^{} != 0", n_ext + 1));
            }
            out.kernel_elements.push(s);
        }
    }
    for (j, g) in tgt.gens.iter().enumerate() {
        let found = psi.images.iter().enumerate().find_map(|(i, img)| {
            let (mono, &c) = img.terms.iter().next()?;
            let single = img.terms.len() == 1 && mono.iter().enumerate().all(|(k, &e)| (k == j) == (e > 0));
            single.then_some((i, c, mono[j] as u64))
        });
        let Some((i, c, k)) = found else {
            out.pr_power_surjective = false;
            out.failures.push(format!("no generator image is a power of {}", g.name));
            continue;
        };
        if !pr.is_multiple_of(k) {
            out.pr_power_surjective = false;
            out.failures.push(format!("ψ({}) = c·{}^{k} with k not dividing p^r", src.gens[i].name, g.name));
            continue;
        }
        let e = pr / k;
        let lhs = tgt.pow(&psi.images[i], e).scale(f, f.inv(f.pow(c, e)));
        let rhs = tgt.pow(&tgt.var(&g.name), pr);
        let cs = if c == 1 { String::new() } else { format!("{}^-{e} * ", tgt.format(&tgt.constant(c))) };
        if tgt.normal_form(&lhs.sub(f, &rhs)).is_zero() {
            out.exhibits.push(format!("{}^{pr} = {cs}psi({})^{e}", g.name, src.gens[i].name));
        } else {
            out.pr_power_surjective = false;
            out.failures.push(format!("{}^{pr} != {cs}psi({})^{e}", g.name, src.gens[i].name));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct PointMapReport {
    pub n_params: usize,
    pub n_points: usize,
    pub injective: bool,
    pub surjective: bool,
}

impl PointMapReport {
    pub fn bijective(&self) -> bool {
        self.injective && self.surjective
    }
}

/// Ψ: points of N_r(G) -> points of Spec H(G,k), φ ↦ (ψ(g)(φ))_g.
pub fn psi_point_map(fam: &TargetFamily, f: &Fq) -> Result<PointMapReport> {
    let psi = psi_map(fam, f)?;
    let params: PointSet = enumerate_variety_points(&psi.target, f)?;
    let full = cohomology_ring(fam, f)?;
    let points = enumerate_variety_points(&full, f)?;
    let gens: Vec<usize> = points.generators.iter().map(|n| psi.source.gen_index(n).unwrap()).collect();
    let images: Vec<Vec<Fe>> =
        params.points.iter().map(|pt| gens.iter().map(|&i| psi.target.eval(&psi.images[i], pt)).collect()).collect();
    let distinct: BTreeSet<&Vec<Fe>> = images.iter().collect();
    let targets: BTreeSet<&Vec<Fe>> = points.points.iter().collect();
    Ok(PointMapReport {
        n_params: params.points.len(),
        n_points: points.points.len(),
        injective: distinct.len() == images.len(),
        surjective: distinct == targets,
    })
}

/// ψ(z) evaluated at the parameters of φ.
pub fn psi_value(psi: &RingMap, z: &Poly, params: &HomParams) -> Fe {
    psi.target.eval(&psi.apply(z), &params.coords())
}

/// For r = 1: the restriction of z along φ to M_{1;t} is ψ(z)(φ)·y^n, and
/// the evaluation sending x₁ and y to 1 (all else to 0) returns ψ(z)(φ).
pub fn psi_point_check(params: &HomParams, z: &Poly, f: &Fq) -> Result<Report> {
    let fam = params.family;
    if fam.r != 1 || params.shift != 0 {
        return invalid("the point check is for height-one families");
    }
    let psi = psi_map(&fam, f)?;
    let src = family_cohomology(&fam, f)?;
    let n = src.ring.degree2_of(z).ok_or_else(|| Error::Invalid("inhomogeneous class".into()))? / 2;
    let t = fam.default_ambient();
    let amb = family_cohomology(&TargetFamily::elementary(1, t), f)?;
    let phi = comorphism_from_params(params, f, t)?;
    let got = restrict_poly(&phi, &src, z, &amb)?;
    let v = psi_value(&psi, z, params);
    let want = amb.ring.normal_form(&amb.ring.pow(&amb.ring.var("y"), n as u64).scale(f, v));
    let mut rep = Report { checks: Vec::new() };
    rep.push(
        "restriction_is_psi_times_y^n",
        (got != want).then(|| format!("{} != {}", amb.ring.format(&got), amb.ring.format(&want))),
    );
    let pt: Vec<Fe> = amb.ring.gens.iter().map(|g| (g.name == "y" || g.name == x_name(1)) as Fe).collect();
    let e = amb.ring.eval(&got, &pt);
    rep.push("epsilon_evaluation", (e != v).then(|| format!("ε = {e}, ψ(z)(φ) = {v}")));
    Ok(rep)
}

/// Coordinate pullback k[N_r(to)] -> k[N_r(from)] along composition with the
/// quotient, by matching coordinate names.
fn quotient_pullback(from: &TargetFamily, to: &TargetFamily, f: &Fq) -> Result<RingMap> {
    let source = coordinate_algebra_nr(to, f)?;
    let target = coordinate_algebra_nr(from, f)?;
    let images = source
        .gens
        .iter()
        .map(|g| match target.gen_index(&g.name) {
            Some(_) => Ok(target.var(&g.name)),
            None => Err(Error::Check(format!("no coordinate {} on N({})", g.name, from.label()))),
        })
        .collect::<Result<_>>()?;
    Ok(RingMap { source, target, images })
}

/// ψ_from ∘ q^* equals pullback ∘ ψ_to on the generators of H(to), where q is
/// the canonical quotient; the pullback is checked against pushforward_hom
/// at every F_q-point.
pub fn naturality_check(from: &TargetFamily, to: &TargetFamily, f: &Fq) -> Result<Report> {
    let q = quotient_map(from, to, f)?;
    let pull = quotient_pullback(from, to, f)?;
    let psi_from = psi_map(from, f)?;
    let psi_to = psi_map(to, f)?;
    let h_from = family_cohomology(from, f)?;
    let h_to = family_cohomology(to, f)?;
    let mut rep = Report { checks: Vec::new() };
    let mut bad = None;
    for nu in enumerate_variety_points(&pull.target, f)?.points {
        let nu = params_from_point(from, &nu);
        let pushed = pushforward_hom(&q, to, &nu)?;
        let want: Vec<Fe> = pull.images.iter().map(|img| pull.target.eval(img, &nu.coords())).collect();
        if pushed.coords() != want {
            bad = Some(format!("pushforward of {:?} is {:?}, pullback gives {want:?}", nu.coords(), pushed.coords()));
            break;
        }
    }
    rep.push("pullback_matches_pushforward", bad);
    for g in &h_to.generators {
        let restricted = restrict_class(&q, g, &h_from)?;
        let lhs = psi_from.apply(&restricted);
        let rhs = pull.target.normal_form(&pull.apply(&psi_to.images[psi_to.source.gen_index(&g.name).unwrap()]));
        rep.push(
            &format!("natural_{}", g.name),
            (lhs != rhs).then(|| format!("{} vs {}", pull.target.format(&lhs), pull.target.format(&rhs))),
        );
    }
    Ok(rep)
}
