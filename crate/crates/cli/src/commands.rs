use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use supvar::cohomology::classes::FamilyCohomology;
use supvar::cohomology::psi::{psi_point_map, verify_psi_properties};
use supvar::cohomology::restrict::{ambient_cohomology, check_restriction_formulas, restrict_generators};
use supvar::cohomology::{family_cohomology, psi_map};
use supvar::homvariety::tuple::{random_valid_tuple, validate_tuple, GroupModule, SuperMatrixTuple};
use supvar::homvariety::{
    classify_homs, comorphism_from_params, compose_endos, enumerate_hopf_homs, invert_automorphism, params_from_point,
    HomParams, TargetFamily, DEFAULT_BUDGET,
};
use supvar::superalgebra::cache::{ambient, dual_pair};
use supvar::superalgebra::{duality_check, verify_hopf_axioms};
use supvar::support::{
    aut_orbits, battery_module, battery_names, compare_supports_with_budget, group_module, id_infinite,
    pullback_module, support_set, CompareStatus,
};
use supvar::{Error, Fe, Fq, Result};

use crate::{CohomologyCmd, HomCmd, HopfCmd, Outcome, RunConfig, SupportCmd, TupleCmd};

const SUPPORT_BUDGET: u128 = supvar::support::cohom::DEFAULT_SUPPORT_BUDGET;

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn parse_params(cfg: &RunConfig, text: &str, fam: &TargetFamily, f: &Fq) -> Result<HomParams> {
    let coords = text
        .split(',')
        .map(|t| {
            let n: i64 = t.trim().parse().map_err(|_| Error::Invalid(format!("bad coordinate {t:?}")))?;
            cfg.element(f, n)
        })
        .collect::<Result<Vec<Fe>>>()?;
    let want = fam.has_mu() as usize + fam.n_a() + fam.has_b() as usize;
    if coords.len() != want {
        return Err(Error::Invalid(format!("{} takes {want} coordinates, got {}", fam.label(), coords.len())));
    }
    let h = params_from_point(fam, &coords);
    h.validate(f)?;
    Ok(h)
}

fn required_params(cfg: &RunConfig, fam: &TargetFamily, f: &Fq) -> Result<HomParams> {
    let text = cfg.params.as_deref().ok_or_else(|| Error::Invalid("--params is required".into()))?;
    parse_params(cfg, text, fam, f)
}

fn read_tuple(path: &str, f: &Fq) -> Result<SuperMatrixTuple> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {path}: {e}")))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("{path}: {e}")))?;
    SuperMatrixTuple::from_json(&v, f)
}

/// The module named by --module: a battery entry or a tuple file.
fn load_module(cfg: &RunConfig, fam: &TargetFamily, f: &Fq) -> Result<(String, GroupModule)> {
    let desc = cfg.module.as_deref().ok_or_else(|| Error::Invalid("--module is required".into()))?;
    match desc.strip_prefix("battery:") {
        Some(name) => Ok((desc.to_string(), battery_module(fam, name, f)?.module)),
        None => Ok((desc.to_string(), group_module(fam, &read_tuple(desc, f)?, f)?)),
    }
}

pub fn hopf(cfg: &RunConfig, _cmd: &HopfCmd) -> Result<Outcome> {
    let f = cfg.field()?;
    let fam = cfg.target_family(&f)?;
    let coord = fam.coordinate_algebra(&f)?;
    let (c, r, s, eta) = fam.coord_args();
    let pair = dual_pair(c, r, s, eta, &f)?;
    let a = verify_hopf_axioms(&coord);
    let g = verify_hopf_axioms(&pair.group);
    let d = duality_check(&pair.coord, &pair.group, &pair.pairing)?;
    Ok(Outcome {
        status: pass_fail(a.pass() && g.pass() && d.pass()),
        anchor: "Hopf superalgebra axioms for k[G] and kG",
        result: json!({
            "dim": coord.dim(),
            "coordinate_algebra": a,
            "group_algebra": g,
            "duality": d,
        }),
    })
}

pub fn hom(cfg: &RunConfig, cmd: &HomCmd) -> Result<Outcome> {
    let f = cfg.field()?;
    let fam = cfg.target_family(&f)?;
    match cmd {
        HomCmd::Classify { enumerate } => {
            let c = classify_homs(&fam, &f, *enumerate)?;
            Ok(Outcome { status: "ok", anchor: "classification of Hom(M_r, G)", result: to_json(&c) })
        }
        HomCmd::Oracle => {
            let t = fam.default_ambient();
            let src = fam.coordinate_algebra(&f)?;
            let tgt = ambient(fam.r, t, &f)?;
            let found = enumerate_hopf_homs(&src, &tgt, cfg.budget.unwrap_or(DEFAULT_BUDGET))?;
            let params = classify_homs(&fam, &f, true)?.params.unwrap_or_default();
            let mut want = params
                .iter()
                .map(|h| Ok(comorphism_from_params(h, &f, t)?.matrix.to_rows()))
                .collect::<Result<Vec<_>>>()?;
            want.sort();
            let mut got: Vec<_> = found.iter().map(|m| m.matrix.to_rows()).collect();
            got.sort();
            Ok(Outcome {
                status: pass_fail(got == want),
                anchor: "classification of Hom(M_r, G)",
                result: json!({"ambient_t": t, "search_count": got.len(), "classified_count": want.len()}),
            })
        }
        HomCmd::Compose { with } => {
            let x = required_params(cfg, &fam, &f)?;
            let y = parse_params(cfg, with, &fam, &f)?;
            let z = compose_endos(&x, &y, &f)?;
            Ok(Outcome {
                status: "ok",
                anchor: "composition with endomorphisms of G",
                result: json!({"x": x, "y": y, "y_after_x": z}),
            })
        }
        HomCmd::Invert => {
            let x = required_params(cfg, &fam, &f)?;
            let inv = invert_automorphism(&x, &f)?;
            let back = compose_endos(&x, &inv, &f)?;
            let id = HomParams::identity(fam);
            Ok(Outcome {
                status: pass_fail(back.coords() == id.coords()),
                anchor: "automorphisms of G",
                result: json!({"params": x, "inverse": inv}),
            })
        }
    }
}

pub fn tuple(cfg: &RunConfig, cmd: &TupleCmd) -> Result<Outcome> {
    let f = cfg.field()?;
    match cmd {
        TupleCmd::Validate => {
            let path = cfg.module.as_deref().ok_or_else(|| Error::Invalid("--module is required".into()))?;
            let t = read_tuple(path, &f)?;
            let rep = validate_tuple(&t);
            Ok(Outcome { status: pass_fail(rep.pass()), anchor: "points of N_r(GL_{m|n})", result: to_json(&rep) })
        }
        TupleCmd::Random { m, n } => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let t = random_valid_tuple(&mut rng, &f, cfg.r as usize, *m, *n, cfg.s)?;
            Ok(Outcome { status: "ok", anchor: "points of N_r(GL_{m|n})", result: t.to_json() })
        }
    }
}

fn poly_coeffs(ring: &supvar::ring::PresentedGradedRing, p: &supvar::ring::Poly, f: &Fq) -> BTreeMap<String, Value> {
    p.terms
        .iter()
        .map(|(m, &c)| {
            let name = ring.format(&supvar::ring::Poly::term(1, m.clone()));
            (name, json!(f.to_int(c).unwrap_or(c as u32)))
        })
        .collect()
}

pub fn cohomology(cfg: &RunConfig, cmd: &CohomologyCmd) -> Result<Outcome> {
    let f = cfg.field()?;
    let fam = cfg.target_family(&f)?;
    match cmd {
        CohomologyCmd::Dims { n } => {
            if *n > 6 || cfg.budget.is_some() {
                let mut h = FamilyCohomology::new(&fam, &f, *n)?;
                if let Some(b) = cfg.budget {
                    h.complex.budget = b;
                }
                dims_report(&h, *n)
            } else {
                dims_report(&*family_cohomology(&fam, &f)?, *n)
            }
        }
        CohomologyCmd::Restrict { class } => {
            let params = required_params(cfg, &fam, &f)?;
            let ring = &ambient_cohomology(&fam, &f)?.ring;
            let got = restrict_generators(&params, &f)?;
            let mismatches = check_restriction_formulas(&params, &f)?;
            let want = class.as_deref().map(|c| if c == "w_s" { "w" } else { c });
            let mut result = serde_json::Map::new();
            for (name, poly) in &got {
                if want.is_none_or(|w| w == name) {
                    result.insert(name.clone(), json!(poly_coeffs(ring, poly, &f)));
                }
            }
            if let Some(w) = want {
                let Some(v) = result.remove(w) else {
                    return Err(Error::Invalid(format!("no generator {w} for {}", fam.label())));
                };
                return Ok(Outcome {
                    status: pass_fail(mismatches.is_empty()),
                    anchor: "restriction of generators along M_r -> G",
                    result: v,
                });
            }
            Ok(Outcome {
                status: pass_fail(mismatches.is_empty()),
                anchor: "restriction of generators along M_r -> G",
                result: Value::Object(result),
            })
        }
        CohomologyCmd::Psi => {
            let psi = psi_map(&fam, &f)?;
            let pr = (f.p() as u64).pow(fam.r);
            let props = verify_psi_properties(&psi, pr, cfg.degree_cap)?;
            let points = psi_point_map(&fam, &f)?;
            let images: BTreeMap<String, String> =
                psi.source.gens.iter().zip(&psi.images).map(|(g, p)| (g.name.clone(), psi.target.format(p))).collect();
            Ok(Outcome {
                status: pass_fail(props.kernel_nilpotent && props.pr_power_surjective && points.bijective()),
                anchor: "the map ψ_r from H(G,k) to k[N_r(G)]",
                result: json!({"images": images, "properties": props, "point_map": points}),
            })
        }
    }
}

fn dims_report(h: &FamilyCohomology, n: usize) -> Result<Outcome> {
    let mut cobar = Vec::new();
    let mut ring = Vec::new();
    for d in 0..=n {
        cobar.push(h.complex.cohomology(d, false)?.dim);
        ring.push(h.ring.dim(2 * d as i64));
    }
    Ok(Outcome {
        status: pass_fail(cobar == ring),
        anchor: "low-degree cohomology of the elementary families",
        result: json!({"ring": h.ring.describe(), "cobar_dims": cobar, "ring_dims": ring}),
    })
}

pub fn support(cfg: &RunConfig, cmd: &SupportCmd) -> Result<Outcome> {
    let f = cfg.field()?;
    let fam = cfg.target_family(&f)?;
    let anchor = "support sets in height one";
    match cmd {
        SupportCmd::Set => {
            let (desc, gm) = load_module(cfg, &fam, &f)?;
            let rep = support_set(&fam, &gm, &desc, &f)?;
            Ok(Outcome { status: pass_fail(rep.cross_validated()), anchor, result: to_json(&rep) })
        }
        SupportCmd::Compare => {
            let (desc, gm) = load_module(cfg, &fam, &f)?;
            let rep = compare_supports_with_budget(
                &fam,
                &gm,
                &desc,
                &f,
                cfg.degree_cap,
                cfg.budget.unwrap_or(SUPPORT_BUDGET),
            )?;
            let status = match rep.status {
                CompareStatus::Pass => "pass",
                CompareStatus::Fail => "fail",
                CompareStatus::Inconclusive => "inconclusive",
            };
            Ok(Outcome { status, anchor: "support sets against cohomological support", result: to_json(&rep) })
        }
        SupportCmd::Orbits => {
            let rep = aut_orbits(&fam, &f)?;
            Ok(Outcome { status: "ok", anchor: "Aut(G)-orbits on N_1(G)", result: to_json(&rep) })
        }
        SupportCmd::Id => {
            let (_, gm) = load_module(cfg, &fam, &f)?;
            let params = required_params(cfg, &fam, &f)?;
            let m = pullback_module(&params, &gm, &f)?;
            let d = id_infinite(&m)?;
            Ok(Outcome {
                status: pass_fail(d.agree()),
                anchor,
                result: json!({"point": params.coords(), "alpha": m.alpha.to_rows(), "beta": m.beta.to_rows(), "decision": d}),
            })
        }
        SupportCmd::Battery => {
            let names: Vec<Value> = battery_names(&fam)
                .into_iter()
                .map(|n| {
                    let b = battery_module(&fam, n, &f)?;
                    Ok(json!({"name": n, "m": b.module.m, "n": b.module.n}))
                })
                .collect::<Result<_>>()?;
            Ok(Outcome { status: "ok", anchor, result: Value::Array(names) })
        }
    }
}
