//! Parameter families for Hom(M_r, G) and the maps between them.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::fields::{linear_solve, Fe, Fq, Matrix, Solution};
use crate::superalgebra::cache::{ambient, coordinate};
use crate::superalgebra::coord::{coord_shape, CoordFamily, CoordShape};
use crate::superalgebra::hopf::{AlgebraMorphism, FinDimHopf, HopfRef};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyTag {
    Mr1,
    Mrs,
    MrsEta,
    Gar,
    Gaminus,
    /// End(M_r), acting on the truncation k[M_{r;s}].
    MrEndo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TargetFamily {
    #[serde(rename = "family")]
    pub tag: FamilyTag,
    pub r: u32,
    #[serde(default = "one")]
    pub s: u32,
    #[serde(default)]
    pub eta: Fe,
}

fn one() -> u32 {
    1
}

impl TargetFamily {
    pub fn mr1(r: u32) -> TargetFamily {
        TargetFamily { tag: FamilyTag::Mr1, r, s: 1, eta: 0 }
    }
    pub fn mrs(r: u32, s: u32) -> TargetFamily {
        TargetFamily { tag: FamilyTag::Mrs, r, s, eta: 0 }
    }
    pub fn mrs_eta(r: u32, s: u32, eta: Fe) -> TargetFamily {
        TargetFamily { tag: FamilyTag::MrsEta, r, s, eta }
    }
    pub fn gar(r: u32) -> TargetFamily {
        TargetFamily { tag: FamilyTag::Gar, r, s: 1, eta: 0 }
    }
    pub fn gaminus() -> TargetFamily {
        TargetFamily { tag: FamilyTag::Gaminus, r: 1, s: 1, eta: 0 }
    }
    pub fn mr_endo(r: u32, s: u32) -> TargetFamily {
        TargetFamily { tag: FamilyTag::MrEndo, r, s, eta: 0 }
    }

    /// M_{r;s} as a family: Mr1 when s = 1.
    pub fn elementary(r: u32, s: u32) -> TargetFamily {
        if s == 1 {
            Self::mr1(r)
        } else {
            Self::mrs(r, s)
        }
    }

    pub fn validate(&self) -> Result<()> {
        use FamilyTag::*;
        if self.r == 0 {
            return invalid("r must be at least 1");
        }
        if self.tag != MrsEta && self.eta != 0 {
            return invalid("η is only meaningful for MrsEta");
        }
        match self.tag {
            Mr1 | Gar | Gaminus if self.s != 1 => invalid(format!("{:?} takes s = 1", self.tag)),
            Gaminus if self.r != 1 => invalid("Gaminus has r = 1"),
            Mrs if self.s < 2 => invalid("Mrs needs s >= 2; use Mr1 for s = 1"),
            MrsEta if self.r < 2 => invalid("MrsEta needs r >= 2"),
            MrsEta if self.eta == 0 => invalid("MrsEta needs η != 0"),
            MrEndo if self.s == 0 => invalid("MrEndo needs a truncation s >= 1"),
            _ => Ok(()),
        }
    }

    pub fn has_mu(&self) -> bool {
        self.tag != FamilyTag::Gar
    }

    pub fn n_a(&self) -> usize {
        if self.tag == FamilyTag::Gaminus {
            0
        } else {
            self.r as usize
        }
    }

    pub fn has_b(&self) -> bool {
        self.tag == FamilyTag::Mrs
    }

    /// Whether μ² = a₀^{p^r} is imposed.
    pub fn constrained(&self) -> bool {
        matches!(self.tag, FamilyTag::Mrs | FamilyTag::MrsEta | FamilyTag::MrEndo)
    }

    /// Whether Hom(M_r, G) is also End(G) (so compose and invert make sense).
    pub fn is_endo_family(&self) -> bool {
        self.tag != FamilyTag::MrsEta
    }

    pub fn coord_args(&self) -> (CoordFamily, u32, u32, Fe) {
        use FamilyTag::*;
        match self.tag {
            Mr1 | Mrs | MrEndo => (CoordFamily::Mrs, self.r, self.s, 0),
            MrsEta => (CoordFamily::MrsEta, self.r, self.s, self.eta),
            Gar => (CoordFamily::Gar, self.r, 1, 0),
            Gaminus => (CoordFamily::Gaminus, 1, 1, 0),
        }
    }

    /// k[G].
    pub fn coordinate_algebra(&self, f: &Fq) -> Result<HopfRef> {
        self.validate()?;
        let (c, r, s, eta) = self.coord_args();
        coordinate(c, r, s, eta, f)
    }

    pub fn shape(&self, p: u32) -> CoordShape {
        let (c, r, s, eta) = self.coord_args();
        coord_shape(c, p, r, s, eta).expect("validated family")
    }

    /// Smallest ambient truncation that holds every classified comorphism.
    pub fn min_ambient(&self) -> u32 {
        match self.tag {
            FamilyTag::MrsEta => self.s + 1,
            _ => self.s,
        }
    }

    /// Ambient truncation used by default (one level above the minimum, so
    /// that the oracle also sees maps that could leave k[M_{r;s}]).
    pub fn default_ambient(&self) -> u32 {
        match self.tag {
            FamilyTag::MrEndo => self.s,
            _ => self.s + 1,
        }
    }

    pub fn label(&self) -> String {
        use FamilyTag::*;
        match self.tag {
            Mr1 => format!("M_{{{};1}}", self.r),
            Mrs => format!("M_{{{};{}}}", self.r, self.s),
            MrsEta => format!("M_{{{};{},{}}}", self.r, self.s, self.eta),
            Gar => format!("G_a({})", self.r),
            Gaminus => "G_a^-".to_string(),
            MrEndo => format!("M_{} (mod σ_{})", self.r, self.s),
        }
    }
}

/// A point of Hom(M_{r+shift}, G). `shift` is nonzero only for parameters
/// produced by `frobenius_compose`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HomParams {
    #[serde(flatten)]
    pub family: TargetFamily,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Fe>,
    #[serde(default)]
    pub a: Vec<Fe>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Fe>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub shift: u32,
}

fn is_zero(x: &u32) -> bool {
    *x == 0
}

impl HomParams {
    pub fn new(family: TargetFamily, mu: Option<Fe>, a: Vec<Fe>, b: Option<Fe>) -> HomParams {
        HomParams { family, mu, a, b, shift: 0 }
    }

    pub fn zero(family: TargetFamily) -> HomParams {
        HomParams {
            family,
            mu: family.has_mu().then_some(0),
            a: vec![0; family.n_a()],
            b: family.has_b().then_some(0),
            shift: 0,
        }
    }

    /// (1, 1, 0, ..., 0): the identity for endomorphism families and the
    /// canonical quotient M_r -> G otherwise.
    pub fn identity(family: TargetFamily) -> HomParams {
        let mut h = Self::zero(family);
        if h.mu.is_some() {
            h.mu = Some(1);
        }
        if let Some(a0) = h.a.first_mut() {
            *a0 = 1;
        }
        h
    }

    pub fn source_r(&self) -> u32 {
        self.family.r + self.shift
    }

    pub fn a0(&self) -> Fe {
        self.a.first().copied().unwrap_or(0)
    }

    pub fn mu(&self) -> Fe {
        self.mu.unwrap_or(0)
    }

    /// Flat coordinate list (μ, a₀, ..., a_{r−1}, b) with absent entries skipped.
    pub fn coords(&self) -> Vec<Fe> {
        self.mu.iter().chain(&self.a).chain(&self.b).copied().collect()
    }

    pub fn validate(&self, f: &Fq) -> Result<()> {
        let fam = &self.family;
        fam.validate()?;
        if fam.has_mu() != self.mu.is_some() {
            return invalid(format!("{:?}: μ must be {}", fam.tag, if fam.has_mu() { "present" } else { "absent" }));
        }
        if self.a.len() != fam.n_a() {
            return invalid(format!("{:?}: expected {} a-coordinates, got {}", fam.tag, fam.n_a(), self.a.len()));
        }
        if fam.has_b() != self.b.is_some() {
            return invalid(format!("{:?}: b must be {}", fam.tag, if fam.has_b() { "present" } else { "absent" }));
        }
        if self.coords().iter().any(|&x| x as u32 >= f.q()) {
            return invalid("coordinate outside the field");
        }
        if fam.constrained() {
            let mu2 = f.mul(self.mu(), self.mu());
            if mu2 != f.frob(self.a0(), fam.r) {
                return invalid(format!("constraint violated: μ² != a₀^{}", f.p().pow(fam.r)));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub family: TargetFamily,
    pub variables: Vec<String>,
    /// Polynomials that must vanish, in the variables above.
    pub constraints: Vec<String>,
    pub params: Option<Vec<HomParams>>,
}

pub fn variable_names(fam: &TargetFamily) -> Vec<String> {
    let mut v = Vec::new();
    if fam.has_mu() {
        v.push("mu".to_string());
    }
    v.extend((0..fam.n_a()).map(|i| format!("a{i}")));
    if fam.has_b() {
        v.push(format!("b{}", fam.s));
    }
    v
}

/// Constraint description of Hom(M_r, G), and optionally its F_q-points.
pub fn classify_homs(fam: &TargetFamily, f: &Fq, enumerate: bool) -> Result<Classification> {
    fam.validate()?;
    let constraints = if fam.constrained() { vec![format!("mu^2 - a0^{}", f.p().pow(fam.r))] } else { Vec::new() };
    let params = if enumerate {
        let vars = variable_names(fam).len() as u32;
        let total = (f.q() as u128).pow(vars);
        if total > 1 << 24 {
            return Err(Error::Budget { what: "parameter enumeration".into(), estimate: total, budget: 1 << 24 });
        }
        let mut out = Vec::new();
        let mut digits = vec![0u8; vars as usize];
        'outer: loop {
            let mut it = digits.iter().copied();
            let mu = fam.has_mu().then(|| it.next().unwrap());
            let a: Vec<Fe> = (0..fam.n_a()).map(|_| it.next().unwrap()).collect();
            let b = fam.has_b().then(|| it.next().unwrap());
            let h = HomParams::new(*fam, mu, a, b);
            if h.validate(f).is_ok() {
                out.push(h);
            }
            for d in digits.iter_mut().rev() {
                *d += 1;
                if (*d as u32) < f.q() {
                    continue 'outer;
                }
                *d = 0;
            }
            break;
        }
        Some(out)
    } else {
        None
    };
    Ok(Classification { family: *fam, variables: variable_names(fam), constraints, params })
}

/// Distinguished elements of k[M_{R;t}].
struct Ambient {
    h: HopfRef,
    sh: CoordShape,
}

impl Ambient {
    fn new(r: u32, t: u32, f: &Fq) -> Result<Ambient> {
        let h = ambient(r, t, f)?;
        Ok(Ambient { h, sh: CoordShape::mrs(f.p(), r, t) })
    }

    fn unit(&self, idx: usize) -> Vec<Fe> {
        self.h.basis_vec(idx)
    }

    /// θ, or σ₁ when R = 1.
    fn theta_idx(&self) -> usize {
        if self.sh.a_bound > 1 {
            self.sh.index(1, 0, 0)
        } else {
            self.sh.index(0, 1, 0)
        }
    }

    fn tau_idx(&self) -> usize {
        self.sh.index(0, 0, 1)
    }

    fn sigma_idx(&self, j: u32) -> Result<usize> {
        if j >= self.sh.j_bound {
            return invalid(format!("σ_{j} does not exist in the ambient truncation"));
        }
        Ok(self.sh.index(0, j, 0))
    }

    /// θ^{p^m} as (basis index, coefficient 1); None once it vanishes.
    fn theta_ppow_idx(&self, m: u32) -> Option<usize> {
        let e = self.sh.p.checked_pow(m)?;
        if self.sh.a_bound == 1 {
            // θ = σ₁ and σ₁^p = 0
            return (m == 0).then(|| self.theta_idx());
        }
        match self.sh.theta_pow(e)? {
            (a, j) if j < 2 => Some(self.sh.index(a, j, 0)),
            _ => None,
        }
    }
}

fn scaled(f: &Fq, v: &[Fe], c: Fe) -> Vec<Fe> {
    v.iter().map(|&x| f.mul(x, c)).collect()
}

/// The comorphism k[G] -> k[M_{R;t}] with R = r + shift.
pub fn comorphism_from_params(params: &HomParams, f: &Fq, ambient_t: u32) -> Result<AlgebraMorphism> {
    params.validate(f)?;
    let fam = params.family;
    if ambient_t < fam.min_ambient() {
        return invalid(format!("ambient truncation {ambient_t} below the required {}", fam.min_ambient()));
    }
    let src = fam.coordinate_algebra(f)?;
    let ssh = fam.shape(f.p());
    let amb = Ambient::new(params.source_r(), ambient_t, f)?;
    let t = &amb.h;
    let p = f.p();
    let r = fam.r;
    let nt = t.dim();
    let zero = vec![0; nt];
    let a0 = params.a0();

    // image of θ (σ₁ when r = 1)
    let mut img_theta = zero.clone();
    for (i, &ai) in params.a.iter().enumerate() {
        if let Some(k) = amb.theta_ppow_idx(i as u32 + params.shift) {
            img_theta[k] = f.add(img_theta[k], ai);
        }
    }
    if fam.tag == FamilyTag::MrsEta {
        let c = f.neg(f.mul(fam.eta, f.frob(a0, r + fam.s - 1)));
        let k = amb.sigma_idx(p.pow(fam.s))?;
        img_theta[k] = f.add(img_theta[k], c);
    }
    let img_tau = scaled(f, &amb.unit(amb.tau_idx()), params.mu());
    // images of σ_{p^k}
    let mut img_sigma_pk = Vec::new();
    let mut k = 0;
    while ssh.j_bound > 1 && p.pow(k) < ssh.j_bound {
        let mut v = scaled(f, &amb.unit(amb.sigma_idx(p.pow(k))?), f.frob(a0, k + r - 1));
        if fam.has_b() && k == fam.s - 1 {
            let s1 = amb.sigma_idx(1)?;
            v[s1] = f.add(v[s1], params.b.unwrap());
        }
        img_sigma_pk.push(v);
        k += 1;
    }
    // r = 1 with divided powers: θ is σ₁ and handled by the σ images
    let theta_pows = powers(t, &img_theta, ssh.a_bound as usize);
    let mut m = Matrix::zeros(f, nt, src.dim());
    for idx in 0..src.dim() {
        let (a, j, eps) = ssh.decode(idx);
        let mut v = theta_pows[a as usize].clone();
        let mut jj = j;
        for sp in &img_sigma_pk {
            let d = jj % p;
            jj /= p;
            if d > 0 {
                let w = scaled(f, &t.pow(sp, d as u64), f.inv(f.factorial(d as u64)));
                v = t.mul(&v, &w);
            }
        }
        if eps == 1 {
            v = t.mul(&v, &img_tau);
        }
        for (row, &x) in v.iter().enumerate() {
            m.set(row, idx, x);
        }
    }
    Ok(AlgebraMorphism { source: src, target: t.clone(), matrix: m, hopf: true })
}

fn powers(h: &FinDimHopf, x: &[Fe], n: usize) -> Vec<Vec<Fe>> {
    let mut out = vec![h.unit.clone()];
    for i in 1..n {
        let next = h.mul(&out[i - 1], x);
        out.push(next);
    }
    out
}

/// Read (μ, a, b) off a comorphism k[G] -> k[M_{R;t}] and check that the
/// classified map with those parameters is exactly `m`.
pub fn extract_params(fam: &TargetFamily, shift: u32, m: &AlgebraMorphism) -> Result<HomParams> {
    fam.validate()?;
    let f = m.target.field.clone();
    let p = f.p();
    let ssh = fam.shape(p);
    let nt = m.target.dim();
    let r_src = fam.r + shift;
    let t_amb = (1..=8)
        .find(|&t| CoordShape::mrs(p, r_src, t).dim() == nt)
        .ok_or_else(|| Error::Shape("codomain is not an ambient k[M_{r;t}]".into()))?;
    let amb = Ambient::new(r_src, t_amb, &f)?;
    if m.source.dim() != ssh.dim() {
        return Err(Error::Shape("domain does not match the family".into()));
    }
    let mut h = HomParams::zero(*fam);
    h.shift = shift;
    if fam.has_mu() {
        let tau = m.image(ssh.index(0, 0, 1));
        h.mu = Some(tau[amb.tau_idx()]);
    }
    if fam.n_a() > 0 {
        let src_theta = if ssh.a_bound > 1 { ssh.index(1, 0, 0) } else { ssh.index(0, 1, 0) };
        let img = m.image(src_theta);
        for i in 0..fam.n_a() {
            if let Some(k) = amb.theta_ppow_idx(i as u32 + shift) {
                h.a[i] = img[k];
            }
        }
    }
    if fam.has_b() {
        let img = m.image(ssh.index(0, p.pow(fam.s - 1), 0));
        h.b = Some(img[amb.sigma_idx(1)?]);
    }
    if h.validate(&f).is_err() {
        return Err(Error::Check(format!("map leaves the classified family: read off {:?}", h.coords())));
    }
    let back = comorphism_from_params(&h, &f, t_amb)?;
    if back.matrix != m.matrix {
        return Err(Error::Check(format!("map is not the classified map {:?}", h.coords())));
    }
    Ok(h)
}

/// A left inverse of the canonical quotient's comorphism k[G] -> k[M_{r;t}].
fn quotient_left_inverse(fam: &TargetFamily, f: &Fq) -> Result<Arc<(Matrix, Matrix)>> {
    type Key = (TargetFamily, u32, u32);
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<(Matrix, Matrix)>>>> = OnceLock::new();
    let key = (*fam, f.p(), f.e());
    if let Some(hit) = CACHE.get_or_init(Default::default).lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let iota = comorphism_from_params(&HomParams::identity(*fam), f, fam.default_ambient())?.matrix;
    let left = match linear_solve(&iota.transpose(), &Matrix::identity(f, iota.cols()))? {
        Solution::Solved { particular, .. } => particular.transpose(),
        Solution::Inconsistent => return Err(Error::Check("canonical quotient comorphism is not injective".into())),
    };
    let out = Arc::new((iota, left));
    CACHE.get_or_init(Default::default).lock().unwrap().insert(key, out.clone());
    Ok(out)
}

/// Express an endomorphism y of G as a map k[G] -> k[G] via the canonical
/// quotient M_r -> G, whose comorphism is injective.
pub fn endo_matrix(y: &HomParams, f: &Fq) -> Result<Matrix> {
    let yc = comorphism_from_params(y, f, y.family.default_ambient())?;
    let ql = quotient_left_inverse(&y.family, f)?;
    let (iota, left) = (&ql.0, &ql.1);
    let m = left.mul(&yc.matrix)?;
    if iota.mul(&m)? != yc.matrix {
        return Err(Error::Check("endomorphism does not factor through k[G]".into()));
    }
    Ok(m)
}

/// Parameters of the composite whose comorphism is x* ∘ y*, where y is an
/// endomorphism of G and x : M_{r+shift} -> G.
pub fn compose_endos(x: &HomParams, y: &HomParams, f: &Fq) -> Result<HomParams> {
    if x.family != y.family {
        return invalid(format!("cannot compose {} with {}", x.family.label(), y.family.label()));
    }
    if !y.family.is_endo_family() || y.shift != 0 {
        return invalid(format!("{} parameters are not endomorphisms", y.family.label()));
    }
    x.validate(f)?;
    y.validate(f)?;
    let ym = endo_matrix(y, f)?;
    let xc = comorphism_from_params(x, f, x.family.default_ambient())?;
    let comp = AlgebraMorphism {
        source: xc.source.clone(),
        target: xc.target.clone(),
        matrix: xc.matrix.mul(&ym)?,
        hopf: true,
    };
    extract_params(&x.family, x.shift, &comp)
}

pub fn is_automorphism(h: &HomParams, f: &Fq) -> Result<bool> {
    h.validate(f)?;
    if !h.family.is_endo_family() || h.shift != 0 {
        return invalid(format!("{} parameters are not endomorphisms", h.family.label()));
    }
    Ok(match h.family.tag {
        FamilyTag::Gar => h.a0() != 0,
        FamilyTag::Gaminus => h.mu() != 0,
        // μ ≠ 0 and a₀ ≠ 0; under μ² = a₀^{p^r} either implies the other
        _ => h.mu() != 0 && h.a0() != 0,
    })
}

/// Left inverse built as ψ ∘ φ₀ ∘ φ_{r−1} ∘ ⋯ ∘ φ₁.
pub fn invert_automorphism(h: &HomParams, f: &Fq) -> Result<HomParams> {
    if !is_automorphism(h, f)? {
        return invalid("not an automorphism");
    }
    let fam = h.family;
    let mut inv = HomParams::identity(fam);
    let mut cur = h.clone();
    for i in 1..fam.n_a() {
        let mut phi = HomParams::identity(fam);
        phi.a[i] = f.neg(f.div(cur.a[i], cur.a0()));
        cur = compose_endos(&phi, &cur, f)?;
        inv = compose_endos(&phi, &inv, f)?;
    }
    let mut phi0 = HomParams::identity(fam);
    if fam.has_mu() {
        phi0.mu = Some(f.inv(cur.mu()));
    }
    if fam.n_a() > 0 {
        phi0.a[0] = f.inv(cur.a0());
    }
    cur = compose_endos(&phi0, &cur, f)?;
    inv = compose_endos(&phi0, &inv, f)?;
    if fam.has_b() {
        let mut psi = HomParams::identity(fam);
        psi.b = Some(f.neg(cur.b.unwrap()));
        cur = compose_endos(&psi, &cur, f)?;
        inv = compose_endos(&psi, &inv, f)?;
    }
    if cur != HomParams::identity(fam) {
        return Err(Error::Check(format!("inversion did not reach the identity: {:?}", cur.coords())));
    }
    Ok(inv)
}

/// Comorphism k[to] -> k[from] of the canonical quotient M_{r;s} ->> `to`.
pub fn quotient_map(from: &TargetFamily, to: &TargetFamily, f: &Fq) -> Result<AlgebraMorphism> {
    from.validate()?;
    to.validate()?;
    if !matches!(from.tag, FamilyTag::Mr1 | FamilyTag::Mrs) {
        return invalid("quotients are provided from M_{r;s} only");
    }
    let ok = match to.tag {
        FamilyTag::Mr1 | FamilyTag::Mrs => to.r == from.r && to.s <= from.s,
        FamilyTag::Gar => to.r == from.r,
        FamilyTag::Gaminus => true,
        _ => false,
    };
    if !ok {
        return invalid(format!("{} is not a quotient of {}", to.label(), from.label()));
    }
    // G_a^- has height one; reach M_r through the Frobenius twist
    let q = comorphism_from_params(&frobenius_compose(from.r - to.r, &HomParams::identity(*to)), f, from.s)?;
    let src = from.coordinate_algebra(f)?;
    Ok(AlgebraMorphism { source: q.source, target: src, matrix: q.matrix, hopf: true })
}

/// ν composed with a group map G -> `to` (given by its comorphism φ : k[to] -> k[G]).
pub fn pushforward_hom(phi: &AlgebraMorphism, to: &TargetFamily, nu: &HomParams) -> Result<HomParams> {
    let f = phi.target.field.clone();
    nu.validate(&f)?;
    to.validate()?;
    if phi.target.dim() != nu.family.shape(f.p()).dim() || phi.source.dim() != to.shape(f.p()).dim() {
        return Err(Error::Shape("φ does not connect the given families".into()));
    }
    let t = nu.family.default_ambient().max(to.default_ambient());
    let nc = comorphism_from_params(nu, &f, t)?;
    let comp = nc.compose(phi)?;
    extract_params(to, nu.source_r() - to.r, &comp)
}

/// Parameters of φ ∘ F^ℓ in Hom(M_{r+ℓ}, G).
pub fn frobenius_compose(ell: u32, h: &HomParams) -> HomParams {
    let mut out = h.clone();
    out.shift += ell;
    out
}

/// The map (F^ℓ)* : k[M_{r;t}] -> k[M_{r+ℓ;t}], θ ↦ θ^{p^ℓ}, σ_i ↦ σ_i, τ ↦ τ.
pub fn frobenius_comorphism(r: u32, ell: u32, t: u32, f: &Fq) -> Result<AlgebraMorphism> {
    let ident = HomParams::identity(TargetFamily::elementary(r, t));
    comorphism_from_params(&frobenius_compose(ell, &ident), f, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Fq {
        Fq::prime(3).unwrap()
    }

    #[test]
    fn classify_counts() {
        let f = f3();
        let c = classify_homs(&TargetFamily::mr1(1), &f, true).unwrap();
        assert_eq!(c.params.unwrap().len(), 9);
        let c = classify_homs(&TargetFamily::mrs(1, 2), &f, true).unwrap();
        assert_eq!(c.constraints, ["mu^2 - a0^3"]);
        let ps = c.params.unwrap();
        assert_eq!(ps.len(), 9);
        for h in &ps {
            assert!(h.a0() <= 1);
        }
        assert_eq!(classify_homs(&TargetFamily::gaminus(), &f, true).unwrap().params.unwrap().len(), 3);
        assert!(classify_homs(&TargetFamily::mrs_eta(1, 1, 1), &f, false).is_err());
    }

    #[test]
    fn remark_quotient_label() {
        let f = f3();
        let fam = TargetFamily::mrs(1, 2);
        let h = HomParams::new(fam, Some(0), vec![0], Some(1));
        let m = comorphism_from_params(&h, &f, 2).unwrap();
        let sh = fam.shape(3);
        let t = &m.target;
        for j in 0..3 {
            let img = m.image(sh.index(0, 3 * j, 0));
            assert_eq!(img, t.basis_vec(sh.index(0, j, 0)));
        }
        assert!(m.image(sh.index(0, 0, 1)).iter().all(|&x| x == 0));
        assert!(m.check().pass());
    }

    #[test]
    fn compose_law_r1_s2() {
        let f = f3();
        let fam = TargetFamily::mrs(1, 2);
        let all = classify_homs(&fam, &f, true).unwrap().params.unwrap();
        for x in &all {
            for y in &all {
                let z = compose_endos(x, y, &f).unwrap();
                let (mu, a, b) = (x.mu(), x.a0(), x.b.unwrap());
                let (la, c, d) = (y.mu(), y.a0(), y.b.unwrap());
                let want = (f.mul(mu, la), f.mul(a, c), f.add(f.mul(b, f.pow(c, 3)), f.mul(a, d)));
                assert_eq!((z.mu(), z.a0(), z.b.unwrap()), want);
            }
        }
    }

    #[test]
    fn invert_example() {
        let f = f3();
        let fam = TargetFamily::mrs(1, 2);
        let h = HomParams::new(fam, Some(1), vec![1], Some(1));
        let inv = invert_automorphism(&h, &f).unwrap();
        assert_eq!(inv.coords(), vec![1, 1, 2]);
        assert_eq!(compose_endos(&inv, &h, &f).unwrap(), HomParams::identity(fam));
        assert!(!is_automorphism(&HomParams::zero(fam), &f).unwrap());
    }

    #[test]
    fn json_shape() {
        let h = HomParams::new(TargetFamily::mrs(1, 2), Some(1), vec![1], Some(2));
        let v = serde_json::to_value(&h).unwrap();
        assert_eq!(v["family"], "Mrs");
        assert_eq!(v["b"], 2);
        let back: HomParams = serde_json::from_value(v).unwrap();
        assert_eq!(back, h);
    }
}
