//! Finitely presented graded(-commutative) rings over F_q, with linear
//! algebra per degree for Hilbert functions, normal forms and kernels.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::fields::{axpy, Fe, Fq, Matrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenInfo {
    pub name: String,
    /// Twice the degree, so that half-integer degrees stay integral.
    pub degree2: i64,
    /// Exterior generators square to zero and anticommute with each other.
    pub exterior: bool,
    /// Super parity (only used to select the diagonal subring).
    pub parity: u8,
}

impl GenInfo {
    pub fn new(name: &str, degree2: i64) -> GenInfo {
        GenInfo { name: name.to_string(), degree2, exterior: false, parity: 0 }
    }
    pub fn odd(mut self) -> GenInfo {
        self.parity = 1;
        self
    }
    pub fn exterior(mut self) -> GenInfo {
        self.exterior = true;
        self
    }
}

pub type Monomial = Vec<u32>;

/// Sparse polynomial: exponent vector -> coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    pub terms: BTreeMap<Monomial, Fe>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(c: Fe, m: Monomial) -> Poly {
        let mut p = Poly::zero();
        if c != 0 {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn constant(n: usize, c: Fe) -> Poly {
        Poly::term(c, vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Poly {
        let mut m = vec![0; n];
        m[i] = 1;
        Poly::term(1, m)
    }

    pub fn add_term(&mut self, f: &Fq, m: Monomial, c: Fe) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(m).or_insert(0);
        *e = f.add(*e, c);
        if *e == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn add(&self, f: &Fq, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(f, m.clone(), c);
        }
        out
    }

    pub fn scale(&self, f: &Fq, c: Fe) -> Poly {
        let mut out = Poly::zero();
        for (m, &x) in &self.terms {
            out.add_term(f, m.clone(), f.mul(x, c));
        }
        out
    }

    pub fn sub(&self, f: &Fq, other: &Poly) -> Poly {
        self.add(f, &other.scale(f, f.neg(1)))
    }
}

/// Whether generators i and j anticommute.
fn anticommute(gens: &[GenInfo], koszul: bool, i: usize, j: usize) -> bool {
    let (g, h) = (&gens[i], &gens[j]);
    if koszul {
        let c = |x: &GenInfo| ((x.degree2 / 2) % 2) as u8;
        (c(g) * c(h) + g.parity * h.parity) % 2 == 1
    } else {
        g.exterior && h.exterior
    }
}

/// Sign and product of two monomials in the free graded-commutative algebra.
fn mono_mul(gens: &[GenInfo], koszul: bool, a: &[u32], b: &[u32]) -> Option<(bool, Monomial)> {
    let mut neg = false;
    let mut out = Vec::with_capacity(a.len());
    for (i, g) in gens.iter().enumerate() {
        let e = a[i] + b[i];
        if g.exterior && e > 1 {
            return None;
        }
        out.push(e);
    }
    // move each factor of b left past the factors of a with larger index
    for j in 0..gens.len() {
        if b[j].is_multiple_of(2) {
            continue;
        }
        let passes: u32 = (j + 1..gens.len()).filter(|&i| anticommute(gens, koszul, i, j)).map(|i| a[i]).sum();
        if passes % 2 == 1 {
            neg = !neg;
        }
    }
    Some((neg, out))
}

struct DegreePart {
    monos: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// RREF of the degree part of the ideal (rows over `monos`).
    ideal: Vec<(usize, Vec<Fe>)>,
    /// indices of standard (non-pivot) monomials
    standard: Vec<usize>,
}

#[derive(Clone)]
pub struct PresentedGradedRing {
    pub field: Fq,
    pub gens: Vec<GenInfo>,
    pub relations: Vec<Poly>,
    /// Restrict to the subring spanned by monomials whose parity equals the
    /// degree mod 2.
    pub diagonal: bool,
    /// Cohomology-ring signs: generators anticommute when the product of
    /// their degrees plus the product of their parities is odd.
    pub koszul: bool,
    cache: Arc<Mutex<HashMap<i64, Arc<DegreePart>>>>,
}

impl std::fmt::Debug for PresentedGradedRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.describe())
    }
}

impl PresentedGradedRing {
    pub fn new(field: &Fq, gens: Vec<GenInfo>, relations: Vec<Poly>) -> Result<PresentedGradedRing> {
        let r = PresentedGradedRing {
            field: field.clone(),
            gens,
            relations,
            diagonal: false,
            koszul: false,
            cache: Default::default(),
        };
        for (i, rel) in r.relations.iter().enumerate() {
            if rel.terms.keys().any(|m| m.len() != r.gens.len()) {
                return invalid(format!("relation {i} has the wrong number of variables"));
            }
            if r.degree2_of(rel).is_none() {
                return invalid(format!("relation {} is not homogeneous", r.format(rel)));
            }
        }
        if r.gens.iter().any(|g| g.degree2 <= 0) {
            return invalid("generator degrees must be positive");
        }
        Ok(r)
    }

    pub fn with_koszul_signs(mut self) -> PresentedGradedRing {
        self.koszul = true;
        self.cache = Default::default();
        self
    }

    pub fn with_diagonal(mut self) -> PresentedGradedRing {
        self.diagonal = true;
        self.cache = Default::default();
        self
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn var(&self, name: &str) -> Poly {
        let i = self.gen_index(name).unwrap_or_else(|| panic!("no generator {name}"));
        Poly::var(self.ngens(), i)
    }

    pub fn one(&self) -> Poly {
        Poly::constant(self.ngens(), 1)
    }

    pub fn constant(&self, c: Fe) -> Poly {
        Poly::constant(self.ngens(), c)
    }

    pub fn mono_degree2(&self, m: &[u32]) -> i64 {
        m.iter().zip(&self.gens).map(|(&e, g)| e as i64 * g.degree2).sum()
    }

    pub fn mono_parity(&self, m: &[u32]) -> u32 {
        m.iter().zip(&self.gens).map(|(&e, g)| e * g.parity as u32).sum::<u32>() % 2
    }

    /// Degree of a homogeneous polynomial (None if inhomogeneous; 0 for zero).
    pub fn degree2_of(&self, p: &Poly) -> Option<i64> {
        let mut d = None;
        for m in p.terms.keys() {
            let e = self.mono_degree2(m);
            match d {
                None => d = Some(e),
                Some(x) if x != e => return None,
                _ => {}
            }
        }
        Some(d.unwrap_or(0))
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let f = &self.field;
        let mut out = Poly::zero();
        for (ma, &ca) in &a.terms {
            for (mb, &cb) in &b.terms {
                if let Some((neg, m)) = mono_mul(&self.gens, self.koszul, ma, mb) {
                    let c = f.mul(ca, cb);
                    out.add_term(f, m, if neg { f.neg(c) } else { c });
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &Poly, n: u64) -> Poly {
        let mut out = self.one();
        let mut base = a.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                out = self.mul(&out, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        out
    }

    /// Evaluate at a point; exterior generators must be assigned 0.
    pub fn eval(&self, p: &Poly, point: &[Fe]) -> Fe {
        let f = &self.field;
        f.sum(p.terms.iter().map(|(m, &c)| m.iter().zip(point).fold(c, |acc, (&e, &x)| f.mul(acc, f.pow(x, e as u64)))))
    }

    /// All monomials of the given doubled degree.
    pub fn monomials(&self, d2: i64) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.ngens()];
        self.monos_rec(0, d2, &mut cur, &mut out);
        if self.diagonal {
            out.retain(|m| (d2 / 2) % 2 == self.mono_parity(m) as i64 && d2 % 2 == 0);
        }
        out.sort();
        out
    }

    fn monos_rec(&self, i: usize, left: i64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == self.ngens() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let g = &self.gens[i];
        let max = if g.exterior { 1 } else { (left / g.degree2) as u32 };
        for e in 0..=max {
            let rest = left - e as i64 * g.degree2;
            if rest < 0 {
                break;
            }
            cur[i] = e;
            self.monos_rec(i + 1, rest, cur, out);
        }
        cur[i] = 0;
    }

    fn part(&self, d2: i64) -> Arc<DegreePart> {
        if let Some(p) = self.cache.lock().unwrap().get(&d2) {
            return p.clone();
        }
        let f = &self.field;
        let monos = self.monomials(d2);
        let index: HashMap<Monomial, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        // ideal part: m * rel over all monomials m (of the full ring) of complementary degree
        let full = PresentedGradedRing { diagonal: false, cache: Default::default(), ..self.clone() };
        let mut rows: Vec<Vec<Fe>> = Vec::new();
        for rel in &self.relations {
            let rd = self.degree2_of(rel).unwrap();
            if rel.is_zero() || rd > d2 {
                continue;
            }
            for m in full.monomials(d2 - rd) {
                let prod = self.mul(&Poly::term(1, m), rel);
                if prod.is_zero() {
                    continue;
                }
                let mut row = vec![0; monos.len()];
                let mut inside = true;
                for (pm, &c) in &prod.terms {
                    match index.get(pm) {
                        Some(&k) => row[k] = c,
                        None => inside = false,
                    }
                }
                // with `diagonal`, m·rel has a single parity; keep rows that lie in the subring
                if inside {
                    rows.push(row);
                }
            }
        }
        let ideal = if rows.is_empty() || monos.is_empty() {
            Vec::new()
        } else {
            let mut mat = Matrix::from_rows(f, &rows).expect("rectangular");
            let piv = mat.rref();
            piv.iter().enumerate().map(|(i, &c)| (c, mat.row(i).to_vec())).collect()
        };
        let pivots: Vec<usize> = ideal.iter().map(|(c, _)| *c).collect();
        let standard = (0..monos.len()).filter(|k| !pivots.contains(k)).collect();
        let part = Arc::new(DegreePart { monos, index, ideal, standard });
        self.cache.lock().unwrap().insert(d2, part.clone());
        part
    }

    /// Dimension of the degree part (doubled degree d2).
    pub fn dim(&self, d2: i64) -> usize {
        self.part(d2).standard.len()
    }

    /// Standard monomials of the degree part.
    pub fn basis(&self, d2: i64) -> Vec<Monomial> {
        let part = self.part(d2);
        part.standard.iter().map(|&k| part.monos[k].clone()).collect()
    }

    /// Coordinates of a homogeneous element on `basis(d2)`.
    pub fn coords(&self, p: &Poly, d2: i64) -> Result<Vec<Fe>> {
        let f = &self.field;
        let part = self.part(d2);
        let mut v = vec![0; part.monos.len()];
        for (m, &c) in &p.terms {
            if self.mono_degree2(m) != d2 {
                return Err(Error::Shape(format!("term of {} not in degree {}", self.format(p), d2 as f64 / 2.0)));
            }
            match part.index.get(m) {
                Some(&k) => v[k] = f.add(v[k], c),
                None => return Err(Error::Shape(format!("{} leaves the diagonal subring", self.format(p)))),
            }
        }
        for (c, row) in &part.ideal {
            let x = v[*c];
            if x != 0 {
                axpy(f, &mut v, f.neg(x), row);
            }
        }
        Ok(part.standard.iter().map(|&k| v[k]).collect())
    }

    /// Normal form of an arbitrary (possibly inhomogeneous) element.
    pub fn normal_form(&self, p: &Poly) -> Poly {
        let mut by_deg: BTreeMap<i64, Poly> = BTreeMap::new();
        for (m, &c) in &p.terms {
            by_deg.entry(self.mono_degree2(m)).or_default().terms.insert(m.clone(), c);
        }
        let mut out = Poly::zero();
        for (d, q) in by_deg {
            let full = if self.diagonal {
                PresentedGradedRing { diagonal: false, cache: Default::default(), ..self.clone() }
            } else {
                self.clone()
            };
            let coords = full.coords(&q, d).expect("degree checked");
            for (m, c) in full.basis(d).into_iter().zip(coords) {
                if c != 0 {
                    out.terms.insert(m, c);
                }
            }
        }
        out
    }

    pub fn is_zero(&self, p: &Poly) -> bool {
        self.normal_form(p).is_zero()
    }

    pub fn hilbert(&self, max_d2: i64) -> Vec<usize> {
        (0..=max_d2).map(|d| self.dim(d)).collect()
    }

    /// Frobenius x ↦ x^p is injective on every degree part up to `max_d2`
    /// (a finite-field sanity check of reducedness; coefficients must lie in
    /// the prime field).
    pub fn frobenius_injective_upto(&self, max_d2: i64) -> Result<bool> {
        let f = &self.field;
        let prime_coeffs = self.relations.iter().flat_map(|r| r.terms.values()).all(|&c| f.frob(c, 1) == c);
        if !prime_coeffs {
            return invalid("relations must have prime-field coefficients");
        }
        let p = f.p() as u64;
        for d in 1..=max_d2 {
            let b = self.basis(d);
            if b.is_empty() {
                continue;
            }
            let cols: Vec<Vec<Fe>> = b
                .iter()
                .map(|m| self.coords(&self.pow(&Poly::term(1, m.clone()), p), d * p as i64))
                .collect::<Result<_>>()?;
            let rows = cols[0].len();
            let mut mat = Matrix::zeros(f, rows, cols.len());
            for (j, c) in cols.iter().enumerate() {
                for (i, &x) in c.iter().enumerate() {
                    mat.set(i, j, x);
                }
            }
            if mat.rank() < cols.len() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn format(&self, p: &Poly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let f = &self.field;
        let mut s = String::new();
        for (m, &c) in p.terms.iter().rev() {
            if !s.is_empty() {
                s.push_str(" + ");
            }
            let mono: Vec<String> = m
                .iter()
                .zip(&self.gens)
                .filter(|(&e, _)| e > 0)
                .map(|(&e, g)| if e == 1 { g.name.clone() } else { format!("{}^{}", g.name, e) })
                .collect();
            let cs = if f.e() == 1 { format!("{}", f.to_int(c).unwrap()) } else { format!("[{c}]") };
            if mono.is_empty() {
                s.push_str(&cs);
            } else if c == 1 {
                s.push_str(&mono.join("*"));
            } else {
                let _ = write!(s, "{}*{}", cs, mono.join("*"));
            }
        }
        s
    }

    pub fn describe(&self) -> String {
        let gens: Vec<String> = self
            .gens
            .iter()
            .map(|g| {
                let d = if g.degree2 % 2 == 0 { format!("{}", g.degree2 / 2) } else { format!("{}/2", g.degree2) };
                format!("{}:{}{}", g.name, d, if g.exterior { " (ext)" } else { "" })
            })
            .collect();
        let rels: Vec<String> = self.relations.iter().map(|r| self.format(r)).collect();
        format!("k[{}]/({})", gens.join(", "), rels.join(", "))
    }

    /// Parse a polynomial over the generator names, e.g. "mu^2 - 2*a0^9".
    pub fn parse(&self, s: &str) -> Result<Poly> {
        let f = &self.field;
        let mut out = Poly::zero();
        let cleaned = s.replace(' ', "").replace('-', "+-");
        for term in cleaned.split('+').filter(|t| !t.is_empty()) {
            let (neg, body) = match term.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, term),
            };
            let mut coef: Fe = 1;
            let mut m = vec![0u32; self.ngens()];
            for factor in body.split('*') {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => {
                        (b, e.parse::<u32>().map_err(|_| Error::Invalid(format!("bad exponent in {factor}")))?)
                    }
                    None => (factor, 1),
                };
                if let Ok(n) = base.parse::<i64>() {
                    coef = f.mul(coef, f.pow(f.from_int(n), exp as u64));
                } else if let Some(i) = self.gen_index(base) {
                    m[i] += exp;
                } else {
                    return invalid(format!("unknown generator {base}"));
                }
            }
            let p = self.mul(&Poly::term(1, vec![0; self.ngens()]), &Poly::term(coef, m));
            out = if neg { out.sub(f, &p) } else { out.add(f, &p) };
        }
        Ok(out)
    }
}

/// Ring homomorphism given by generator images.
#[derive(Clone, Debug)]
pub struct RingMap {
    pub source: PresentedGradedRing,
    pub target: PresentedGradedRing,
    pub images: Vec<Poly>,
}

impl RingMap {
    pub fn apply(&self, p: &Poly) -> Poly {
        let t = &self.target;
        let f = &t.field;
        let mut out = Poly::zero();
        for (m, &c) in &p.terms {
            let mut term = t.constant(c);
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    term = t.mul(&term, &t.pow(&self.images[i], e as u64));
                }
            }
            out = out.add(f, &term);
        }
        t.normal_form(&out)
    }

    /// Every source relation maps into the target ideal, and exterior
    /// generators map to square-zero elements.
    pub fn check_relations(&self) -> Result<()> {
        for rel in &self.source.relations {
            if !self.apply(rel).is_zero() {
                return Err(Error::Check(format!("relation {} does not map to 0", self.source.format(rel))));
            }
        }
        for (i, g) in self.source.gens.iter().enumerate() {
            if g.exterior {
                let sq = self.target.mul(&self.images[i], &self.images[i]);
                if !self.target.is_zero(&sq) {
                    return Err(Error::Check(format!("image of {} does not square to 0", g.name)));
                }
            }
        }
        Ok(())
    }

    /// Matrix of the map from the source degree part d2 to the target degree part.
    pub fn degree_matrix(&self, d2: i64, target_d2: i64) -> Result<Matrix> {
        let sb = self.source.basis(d2);
        let tdim = self.target.dim(target_d2);
        let mut m = Matrix::zeros(&self.target.field, tdim, sb.len());
        for (j, mono) in sb.iter().enumerate() {
            let img = self.apply(&Poly::term(1, mono.clone()));
            let c = self.target.coords(&img, target_d2)?;
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exterior_signs() {
        let f = Fq::prime(3).unwrap();
        let r = PresentedGradedRing::new(
            &f,
            vec![GenInfo::new("l1", 2).exterior(), GenInfo::new("l2", 2).exterior()],
            vec![],
        )
        .unwrap();
        let ab = r.mul(&r.var("l1"), &r.var("l2"));
        let ba = r.mul(&r.var("l2"), &r.var("l1"));
        assert_eq!(ab.add(&f, &ba), Poly::zero());
        assert!(r.mul(&r.var("l1"), &r.var("l1")).is_zero());
        assert_eq!(r.hilbert(4), vec![1, 0, 2, 0, 1]);
    }

    #[test]
    fn quotient_dims() {
        let f = Fq::prime(3).unwrap();
        let r = PresentedGradedRing::new(&f, vec![GenInfo::new("x", 4), GenInfo::new("y", 2).odd()], vec![]).unwrap();
        let rel = r.parse("x - y^2").unwrap();
        let q = PresentedGradedRing::new(&f, r.gens.clone(), vec![rel]).unwrap();
        assert_eq!(q.hilbert(8), vec![1, 0, 1, 0, 1, 0, 1, 0, 1]);
        assert!(q.is_zero(&q.parse("x^2 - y^4").unwrap()));
        assert!(PresentedGradedRing::new(&f, r.gens.clone(), vec![r.parse("x - y").unwrap()]).is_err());
    }
}
