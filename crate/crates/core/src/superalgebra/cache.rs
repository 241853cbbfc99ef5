//! Process-wide cache of constructed coordinate and group algebras.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::coord::{build_coordinate_hopf, CoordFamily};
use super::group::{build_gaminus_pair, build_gar_pair, build_group_pair, DualPair, PPolynomial};
use super::hopf::HopfRef;
use crate::error::Result;
use crate::fields::{Fe, Fq};

type Key = (u32, u32, CoordFamily, u32, u32, Fe);

fn coord_cache() -> &'static Mutex<HashMap<Key, HopfRef>> {
    static C: OnceLock<Mutex<HashMap<Key, HopfRef>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

fn pair_cache() -> &'static Mutex<HashMap<Key, Arc<DualPair>>> {
    static C: OnceLock<Mutex<HashMap<Key, Arc<DualPair>>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// Shared coordinate algebra; identical arguments return the same Arc.
pub fn coordinate(family: CoordFamily, r: u32, s: u32, eta: Fe, f: &Fq) -> Result<HopfRef> {
    let key = (f.p(), f.e(), family, r, s, eta);
    if let Some(h) = coord_cache().lock().unwrap().get(&key) {
        return Ok(h.clone());
    }
    let h = Arc::new(build_coordinate_hopf(family, r, s, eta, f)?);
    Ok(coord_cache().lock().unwrap().entry(key).or_insert(h).clone())
}

/// k[M_{r;t}], the ambient codomain for Hom(M_r, -).
pub fn ambient(r: u32, t: u32, f: &Fq) -> Result<HopfRef> {
    coordinate(CoordFamily::Mrs, r, t, 0, f)
}

/// Group algebra paired with its coordinate algebra, for the families
/// Mrs (η = 0), MrsEta, Gar and Gaminus.
pub fn dual_pair(family: CoordFamily, r: u32, s: u32, eta: Fe, f: &Fq) -> Result<Arc<DualPair>> {
    let key = (f.p(), f.e(), family, r, s, eta);
    if let Some(h) = pair_cache().lock().unwrap().get(&key) {
        return Ok(h.clone());
    }
    let dp = match family {
        CoordFamily::Gar => build_gar_pair(r, f)?,
        CoordFamily::Gaminus => build_gaminus_pair(f)?,
        CoordFamily::MrTruncated(t) => build_group_pair(r, &PPolynomial::monomial(1, t), 0, f)?,
        _ => build_group_pair(r, &PPolynomial::monomial(1, s), eta, f)?,
    };
    let dp = Arc::new(dp);
    Ok(pair_cache().lock().unwrap().entry(key).or_insert(dp).clone())
}
