//! Named generator cocycles and presented cohomology rings of the
//! elementary families, cross-checked against the cobar complex.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde_json::{json, Value};

use super::cobar::{CobarComplex, Cochain};
use super::sparse::{Echelon, Inserted};
use crate::error::{invalid, Error, Result};
use crate::fields::{Fe, Fq, Matrix};
use crate::homvariety::{FamilyTag, TargetFamily};
use crate::ring::{GenInfo, Monomial, Poly, PresentedGradedRing};
use crate::superalgebra::coord::CoordShape;
use crate::superalgebra::hopf::{FinDimHopf, HopfRef, Report};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomClass {
    pub name: String,
    pub n: usize,
    pub rep: Cochain,
    pub parity: u8,
    /// None when the Hopf algebra is not Z-graded.
    pub internal_degree: Option<i64>,
}

impl CohomClass {
    fn new(name: &str, rep: Cochain, hopf: &FinDimHopf) -> Result<CohomClass> {
        let mut par = BTreeSet::new();
        let mut deg = BTreeSet::new();
        for k in rep.terms.keys() {
            par.insert(k.iter().map(|&i| hopf.basis[i as usize].parity as u32).sum::<u32>() % 2);
            deg.insert(k.iter().map(|&i| hopf.basis[i as usize].degree).sum::<i64>());
        }
        if par.len() > 1 || (hopf.graded && deg.len() > 1) {
            return Err(Error::Check(format!("representative of {name} is not homogeneous")));
        }
        Ok(CohomClass {
            name: name.to_string(),
            n: rep.n,
            parity: par.into_iter().next().unwrap_or(0) as u8,
            internal_degree: if hopf.graded { Some(deg.into_iter().next().unwrap_or(0)) } else { None },
            rep,
        })
    }

    pub fn to_json(&self, f: &Fq) -> Value {
        json!({
            "name": self.name,
            "degree": self.n,
            "parity": self.parity,
            "internal_degree": self.internal_degree,
            "cochain": self.rep.to_json(f),
        })
    }
}

/// The family whose cohomology presentation is used for `fam`: the η-twisted
/// family borrows the ring of M_{r−1;s+1}.
fn ring_family(fam: &TargetFamily) -> TargetFamily {
    if fam.tag == FamilyTag::MrsEta {
        TargetFamily::mrs(fam.r - 1, fam.s + 1)
    } else {
        *fam
    }
}

pub fn x_name(i: u32) -> String {
    format!("x{i}")
}

pub fn lambda_name(i: u32) -> String {
    format!("lambda{i}")
}

/// H^•(G, k) as a graded-commutative ring (generators in doubled degree).
pub fn cohomology_ring(fam: &TargetFamily, f: &Fq) -> Result<PresentedGradedRing> {
    fam.validate()?;
    let rf = ring_family(fam);
    let r = rf.r;
    let mut gens = Vec::new();
    let has_x = rf.tag != FamilyTag::Gaminus;
    let has_y = rf.tag != FamilyTag::Gar;
    if has_x {
        gens.extend((1..=r).map(|i| GenInfo::new(&x_name(i), 4)));
    }
    if has_y {
        gens.push(GenInfo::new("y", 2).odd());
    }
    let has_w = rf.tag == FamilyTag::Mrs;
    if has_w {
        gens.push(GenInfo::new("w", 4));
    }
    if has_x {
        gens.extend((1..=r).map(|i| GenInfo::new(&lambda_name(i), 2).exterior()));
    }
    let ring = PresentedGradedRing::new(f, gens, vec![])?.with_koszul_signs();
    if !has_w {
        return Ok(ring);
    }
    let rel = ring.parse(&format!("{} - y^2", x_name(r)))?;
    Ok(PresentedGradedRing::new(f, ring.gens.clone(), vec![rel])?.with_koszul_signs())
}

/// H(G, k): the subring of H^•(G, k) where parity equals degree mod 2.
pub fn presented_cohomology_ring(fam: &TargetFamily, f: &Fq) -> Result<PresentedGradedRing> {
    if fam.tag == FamilyTag::MrEndo {
        return invalid("MrEndo is not a finite family");
    }
    Ok(cohomology_ring(fam, f)?.with_diagonal())
}

fn shape_of(fam: &TargetFamily, f: &Fq) -> CoordShape {
    fam.shape(f.p())
}

/// Basis index of θ^{p^{i−1}} (which is σ₁ when i = r for the M families).
fn theta_power_index(sh: &CoordShape, i: u32) -> Result<usize> {
    let (a, j) =
        sh.theta_pow(sh.p.pow(i - 1)).ok_or_else(|| Error::Invalid(format!("θ^(p^{}) does not exist", i - 1)))?;
    Ok(sh.index(a, j, 0))
}

/// β(f) = Σ_{ℓ=1}^{p−1} (1/p)C(p,ℓ) f^ℓ ⊗ f^{p−ℓ}, using (1/p)C(p,ℓ) ≡ −1/(ℓ!(p−ℓ)!).
pub fn beta_cochain(h: &FinDimHopf, fv: &[Fe]) -> Result<Cochain> {
    let f = &h.field;
    let p = f.p() as u64;
    let pows: Vec<Vec<Fe>> = (0..p).map(|l| h.pow(fv, l)).collect();
    let mut out = Cochain::zero(2);
    for l in 1..p {
        let c = f.neg(f.inv(f.mul(f.factorial(l), f.factorial(p - l))));
        out = out.add(f, &Cochain::tensor2(f, &pows[l as usize], &pows[(p - l) as usize])?.scale(f, c));
    }
    Ok(out)
}

/// −[Σ_{j=1}^{p^s−1} σ_j⊗σ_{p^s−j} + Σ_{i+j+p=p^s} σ_iτ⊗σ_jτ] on k[M_{r;s}].
pub fn w_cochain(sh: &CoordShape, f: &Fq) -> Cochain {
    let ps = sh.j_bound;
    let mut c = Cochain::zero(2);
    let m1 = f.neg(1);
    for j in 1..ps {
        c.add_term(f, vec![sh.index(0, j, 0) as u32, sh.index(0, ps - j, 0) as u32], m1);
    }
    for i in 0..=ps - sh.p {
        let j = ps - sh.p - i;
        c.add_term(f, vec![sh.index(0, i, 1) as u32, sh.index(0, j, 1) as u32], m1);
    }
    c
}

fn basis_cochain(i: usize) -> Cochain {
    let mut c = Cochain::zero(1);
    c.terms.insert(vec![i as u32], 1);
    c
}

/// Representative cocycles of the ring generators of `cohomology_ring(fam)`,
/// in generator order. Every representative is checked to be a cocycle.
pub fn generator_cocycles(fam: &TargetFamily, f: &Fq) -> Result<Vec<CohomClass>> {
    let ring = cohomology_ring(fam, f)?;
    let hopf = fam.coordinate_algebra(f)?;
    let reps: Vec<Cochain> = if fam.tag == FamilyTag::MrsEta {
        let base = ring_family(fam);
        let pi = eta_transport(fam, f)?;
        generator_cocycles(&base, f)?.iter().map(|c| c.rep.apply_linear(f, &pi)).collect::<Result<_>>()?
    } else {
        let sh = shape_of(fam, f);
        ring.gens
            .iter()
            .map(|g| -> Result<Cochain> {
                if g.name == "y" {
                    Ok(basis_cochain(sh.index(0, 0, 1)))
                } else if g.name == "w" {
                    Ok(w_cochain(&sh, f))
                } else if let Some(i) = g.name.strip_prefix("lambda") {
                    Ok(basis_cochain(theta_power_index(&sh, i.parse().unwrap())?))
                } else {
                    let i: u32 = g.name[1..].parse().unwrap();
                    beta_cochain(&hopf, &hopf.basis_vec(theta_power_index(&sh, i)?))
                }
            })
            .collect::<Result<_>>()?
    };
    let complex = CobarComplex::new(hopf.clone(), 3)?;
    ring.gens
        .iter()
        .zip(reps)
        .map(|(g, rep)| {
            if !complex.is_cocycle(&rep) {
                return Err(Error::Check(format!("{} representative is not a cocycle", g.name)));
            }
            CohomClass::new(&g.name, rep, &hopf)
        })
        .collect()
}

/// The coalgebra isomorphism k[M_{r−1;s+1}] -> k[M_{r;s,η}],
/// θ^i σ_{j+i₀p^s} τ^ε ↦ (−η^{−1})^{i₀}/i₀! · θ^{i₀+pi} σ_j τ^ε,
/// verified against both comultiplications and counits.
pub fn eta_transport(fam: &TargetFamily, f: &Fq) -> Result<Matrix> {
    if fam.tag != FamilyTag::MrsEta {
        return invalid("transport is defined for the η-twisted family only");
    }
    let p = f.p();
    let src_fam = ring_family(fam);
    let src = src_fam.coordinate_algebra(f)?;
    let tgt = fam.coordinate_algebra(f)?;
    let ssh = shape_of(&src_fam, f);
    let tsh = shape_of(fam, f);
    let ps = p.pow(fam.s);
    let c0 = f.neg(f.inv(fam.eta));
    let mut m = Matrix::zeros(f, tgt.dim(), src.dim());
    for x in 0..src.dim() {
        let (i, jj, eps) = ssh.decode(x);
        let (i0, j) = (jj / ps, jj % ps);
        let c = f.div(f.pow(c0, i0 as u64), f.factorial(i0 as u64));
        m.set(tsh.index(i0 + p * i, j, eps), x, c);
    }
    if m.inverse().is_none() {
        return Err(Error::Check("η transport is not invertible".into()));
    }
    for x in 0..src.dim() {
        let lhs = tgt.comult_vec(&m.col(x));
        let n = tgt.dim();
        let mut rhs = vec![0; n * n];
        for &(l, r, c) in &src.comult[x] {
            for (a, &u) in m.col(l as usize).iter().enumerate().filter(|e| *e.1 != 0) {
                for (b, &v) in m.col(r as usize).iter().enumerate().filter(|e| *e.1 != 0) {
                    rhs[a * n + b] = f.add(rhs[a * n + b], f.mul(c, f.mul(u, v)));
                }
            }
        }
        if lhs != rhs || tgt.counit_of(&m.col(x)) != src.counit[x] {
            return Err(Error::Check(format!("η transport is not a coalgebra map at {}", src.basis[x].label)));
        }
    }
    Ok(m)
}

struct DegreeBasis {
    monos: Vec<Monomial>,
    /// coboundaries, then monomial representatives tracked by position
    echelon: Echelon,
}

/// Cohomology of one family: the cobar complex, the presented ring and the
/// generator representatives, with expression of cocycles as ring elements.
pub struct FamilyCohomology {
    pub family: TargetFamily,
    pub field: Fq,
    pub complex: CobarComplex,
    pub ring: PresentedGradedRing,
    pub generators: Vec<CohomClass>,
    bases: Mutex<HashMap<usize, Arc<DegreeBasis>>>,
}

impl std::fmt::Debug for FamilyCohomology {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "H({}) = {}", self.family.label(), self.ring.describe())
    }
}

type CacheKey = (TargetFamily, u32, u32);

/// Shared instance per (family, field).
pub fn family_cohomology(fam: &TargetFamily, f: &Fq) -> Result<Arc<FamilyCohomology>> {
    static C: OnceLock<Mutex<HashMap<CacheKey, Arc<FamilyCohomology>>>> = OnceLock::new();
    let cache = C.get_or_init(Default::default);
    let key = (*fam, f.p(), f.e());
    if let Some(h) = cache.lock().unwrap().get(&key) {
        return Ok(h.clone());
    }
    let h = Arc::new(FamilyCohomology::new(fam, f, 6)?);
    Ok(cache.lock().unwrap().entry(key).or_insert(h).clone())
}

impl FamilyCohomology {
    pub fn new(fam: &TargetFamily, f: &Fq, n_max: usize) -> Result<FamilyCohomology> {
        if fam.tag == FamilyTag::MrEndo {
            return invalid("MrEndo is not a finite family");
        }
        let hopf = fam.coordinate_algebra(f)?;
        Ok(FamilyCohomology {
            family: *fam,
            field: f.clone(),
            complex: CobarComplex::new(hopf, n_max)?,
            ring: cohomology_ring(fam, f)?,
            generators: generator_cocycles(fam, f)?,
            bases: Mutex::new(HashMap::new()),
        })
    }

    /// The same data with a different presentation (for injected defects).
    pub fn with_ring(&self, ring: PresentedGradedRing) -> Result<FamilyCohomology> {
        if ring.gens != self.ring.gens {
            return invalid("replacement ring must keep the generators");
        }
        Ok(FamilyCohomology {
            family: self.family,
            field: self.field.clone(),
            complex: CobarComplex::new(self.hopf().clone(), self.complex.n_max)?,
            ring,
            generators: self.generators.clone(),
            bases: Mutex::new(HashMap::new()),
        })
    }

    pub fn hopf(&self) -> &HopfRef {
        &self.complex.hopf
    }

    pub fn generator(&self, name: &str) -> Result<&CohomClass> {
        self.generators
            .iter()
            .find(|g| g.name == name)
            .ok_or_else(|| Error::Invalid(format!("{} has no generator {name}", self.family.label())))
    }

    /// Cup product of generator representatives in generator order.
    pub fn monomial_rep(&self, m: &[u32]) -> Cochain {
        let f = &self.field;
        let mut out = Cochain::zero(0);
        out.terms.insert(Vec::new(), 1);
        for (g, &e) in self.generators.iter().zip(m) {
            for _ in 0..e {
                out = out.cup(f, &g.rep);
            }
        }
        out
    }

    /// Representative of a homogeneous ring element.
    pub fn poly_rep(&self, p: &Poly) -> Result<Cochain> {
        let f = &self.field;
        let d2 = self.ring.degree2_of(p).ok_or_else(|| Error::Invalid("inhomogeneous class".into()))?;
        let mut out = Cochain::zero((d2 / 2) as usize);
        for (m, &c) in &p.terms {
            out = out.add(f, &self.monomial_rep(m).scale(f, c));
        }
        Ok(out)
    }

    fn degree_basis(&self, n: usize) -> Result<Arc<DegreeBasis>> {
        if let Some(b) = self.bases.lock().unwrap().get(&n) {
            return Ok(b.clone());
        }
        let monos = self.ring.basis(2 * n as i64);
        let mut echelon = Echelon::new(&self.field);
        for b in self.complex.blocks(n) {
            echelon.absorb(&*self.complex.coboundaries(n, b)?);
        }
        for (i, m) in monos.iter().enumerate() {
            let v = self.complex.to_sparse(&self.monomial_rep(m));
            if let Inserted::Dependent(_) = echelon.insert(v, vec![(i as u64, 1)]) {
                return Err(Error::Check(format!(
                    "{} is zero or dependent in H^{n} of {}",
                    self.ring.format(&Poly::term(1, m.clone())),
                    self.family.label()
                )));
            }
        }
        let b = Arc::new(DegreeBasis { monos, echelon });
        self.bases.lock().unwrap().insert(n, b.clone());
        Ok(b)
    }

    /// The ring element whose representative is cohomologous to z.
    pub fn express(&self, z: &Cochain) -> Result<Poly> {
        let f = &self.field;
        let n = z.n;
        if n == 0 {
            let c = z.terms.get(&Vec::new()).copied().unwrap_or(0);
            return Ok(self.ring.constant(c));
        }
        if !self.complex.is_cocycle(z) {
            return Err(Error::Check("expression of a non-cocycle".into()));
        }
        let basis = self.degree_basis(n)?;
        let (res, track) = basis.echelon.reduce(self.complex.to_sparse(z), Vec::new());
        if !res.is_empty() {
            return Err(Error::Check(format!("cocycle of degree {n} is not in the span of the presented basis")));
        }
        let mut out = Poly::zero();
        for (i, c) in track {
            out.add_term(f, basis.monos[i as usize].clone(), f.neg(c));
        }
        Ok(out)
    }

    pub fn is_coboundary(&self, z: &Cochain) -> Result<bool> {
        self.complex.is_coboundary(z)
    }

    /// Generator cocycles, relations, commutation signs, and the presented
    /// monomials forming a basis of H^n for every n ≤ n_max.
    pub fn check_presentation(&self, n_max: usize) -> Result<Report> {
        let f = &self.field;
        let mut rep = Report { checks: Vec::new() };
        for g in &self.generators {
            let ok = self.complex.is_cocycle(&g.rep);
            rep.push(&format!("cocycle_{}", g.name), (!ok).then(|| format!("d({}) != 0", g.name)));
        }
        for (i, rel) in self.ring.relations.iter().enumerate() {
            let ok = self.is_coboundary(&self.poly_rep(rel)?)?;
            rep.push(&format!("relation_{i}"), (!ok).then(|| format!("{} is not a coboundary", self.ring.format(rel))));
        }
        let k = self.generators.len();
        for a in 0..k {
            for b in a..k {
                let (ga, gb) = (&self.generators[a], &self.generators[b]);
                if ga.n + gb.n > n_max {
                    continue;
                }
                let ab = Poly::var(k, a);
                let bb = Poly::var(k, b);
                // ring product gives b·a = s·(a·b) with s read off the normal form
                let ba = self.ring.mul(&bb, &ab);
                let lhs = ga.rep.cup(f, &gb.rep);
                let rhs = gb.rep.cup(f, &ga.rep);
                let want = match ba.terms.values().next() {
                    Some(&s) => rhs.add(f, &lhs.scale(f, f.neg(s))),
                    None => rhs,
                };
                let ok = self.is_coboundary(&want)?;
                rep.push(
                    &format!("commute_{}_{}", ga.name, gb.name),
                    (!ok).then(|| format!("{}·{} has the wrong sign relation", gb.name, ga.name)),
                );
            }
        }
        for n in 0..=n_max {
            let c = self.complex.cohomology(n, false)?.dim;
            let r = self.ring.dim(2 * n as i64);
            let w = if c != r {
                Some(format!("H^{n}: cobar dim {c}, presented dim {r}"))
            } else if n > 0 {
                self.degree_basis(n).err().map(|e| e.to_string())
            } else {
                None
            };
            rep.push(&format!("degree_{n}"), w);
        }
        Ok(rep)
    }
}

/// Dimension agreement of the presentation with the cobar complex in every
/// degree ≤ n_max; the first failing check names the first bad degree.
pub fn low_degree_agreement(ring: &PresentedGradedRing, complex: &CobarComplex, n_max: usize) -> Result<Report> {
    let mut rep = Report { checks: Vec::new() };
    for n in 0..=n_max {
        let c = complex.cohomology(n, false)?.dim;
        let r = ring.dim(2 * n as i64);
        rep.push(&format!("degree_{n}"), (c != r).then(|| format!("H^{n}: cobar dim {c}, presented dim {r}")));
    }
    Ok(rep)
}

pub fn family_low_degree_agreement(fam: &TargetFamily, f: &Fq, n_max: usize) -> Result<Report> {
    let complex = CobarComplex::new(fam.coordinate_algebra(f)?, n_max)?;
    low_degree_agreement(&cohomology_ring(fam, f)?, &complex, n_max)
}
