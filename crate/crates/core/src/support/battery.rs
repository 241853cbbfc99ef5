//! Named test modules for the height-one families, used by the acceptance
//! suite and addressable from the CLI as `battery:<name>`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::cohom::KgResolution;
use super::p1::GradedP1Module;
use super::sets::{check_height_one, group_module};
use crate::error::{invalid, Result};
use crate::fields::{Fe, Fq, Matrix};
use crate::homvariety::tuple::{random_valid_tuple, validate_tuple, GroupModule, SuperMatrixTuple};
use crate::homvariety::{FamilyTag, TargetFamily};
use crate::superalgebra::cache::dual_pair;

pub const BATTERY_SEED: u64 = 0x5eed_0001;

#[derive(Clone, Debug)]
pub struct BatteryModule {
    pub name: String,
    pub family: TargetFamily,
    pub module: GroupModule,
}

impl BatteryModule {
    pub fn dim(&self) -> usize {
        self.module.m + self.module.n
    }

    pub fn descriptor(&self) -> String {
        format!("battery:{}", self.name)
    }
}

/// Names available for a family, in order.
pub fn battery_names(fam: &TargetFamily) -> Vec<&'static str> {
    match fam.tag {
        FamilyTag::Mr1 => vec!["trivial", "jordan", "u2", "omega1", "random", "regular"],
        FamilyTag::Mrs => vec!["trivial", "jordan", "u1", "random", "regular", "omega1"],
        FamilyTag::Gar => vec!["trivial", "jordan2", "regular", "omega1", "random"],
        FamilyTag::Gaminus => vec!["trivial", "regular", "random"],
        _ => Vec::new(),
    }
}

fn from_p1(fam: &TargetFamily, m: &GradedP1Module, f: &Fq) -> Result<GroupModule> {
    // P₁-modules list even basis vectors first, which the tuple format expects
    let even = m.parity.iter().take_while(|&&x| x == 0).count();
    if m.parity[even..].contains(&0) {
        return invalid("even basis vectors must come first");
    }
    let t = SuperMatrixTuple { m: even, n: m.dim() - even, alpha: vec![m.alpha.clone()], beta: m.beta.clone() };
    group_module(fam, &t, f)
}

fn jordan(f: &Fq, k: usize) -> GradedP1Module {
    let mut a = Matrix::zeros(f, k, k);
    for i in 0..k.saturating_sub(1) {
        a.set(i + 1, i, 1);
    }
    GradedP1Module::new(f, vec![0; k], a, Matrix::zeros(f, k, k), None)
        .expect("a Jordan block with v = 0 is a P₁-module")
}

fn random_gaminus(rng: &mut ChaCha8Rng, f: &Fq, m: usize, n: usize) -> SuperMatrixTuple {
    let d = m + n;
    loop {
        let mut b = Matrix::zeros(f, d, d);
        for i in 0..d {
            for j in 0..d {
                if (i < m) != (j < m) && rng.gen_bool(0.5) {
                    b.set(i, j, rng.gen_range(0..f.q()) as Fe);
                }
            }
        }
        if !b.is_zero() && b.mul(&b).unwrap().is_zero() {
            return SuperMatrixTuple { m, n, alpha: vec![Matrix::zeros(f, d, d)], beta: b };
        }
    }
}

pub fn battery_module(fam: &TargetFamily, name: &str, f: &Fq) -> Result<BatteryModule> {
    check_height_one(fam)?;
    let p = f.p() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(BATTERY_SEED ^ ((fam.s as u64) << 8) ^ fam.tag as u64);
    let module = match (fam.tag, name) {
        (_, "trivial") => {
            let t = SuperMatrixTuple::zero(f, 1, 1, 0);
            group_module(fam, &t, f)?
        }
        (FamilyTag::Mr1 | FamilyTag::Mrs, "jordan") => from_p1(fam, &jordan(f, p), f)?,
        (FamilyTag::Mr1 | FamilyTag::Mrs, "regular") => {
            from_p1(fam, &GradedP1Module::quotient_by_u_power(f, p.pow(fam.s))?, f)?
        }
        (FamilyTag::Mr1, "u2") => from_p1(fam, &GradedP1Module::quotient_by_u_power(f, 2)?, f)?,
        (FamilyTag::Mrs, "u1") => from_p1(fam, &GradedP1Module::quotient_by_u_power(f, 1)?, f)?,
        (FamilyTag::Mr1 | FamilyTag::Mrs | FamilyTag::Gar, "omega1") => {
            let (c, r, s, eta) = fam.coord_args();
            KgResolution::new(dual_pair(c, r, s, eta, f)?, 0)?.syzygy_module(1, fam.s)?
        }
        (FamilyTag::Mr1 | FamilyTag::Mrs, "random") => {
            let t = random_valid_tuple(&mut rng, f, 1, 2, 2, fam.s)?;
            group_module(fam, &t, f)?
        }
        (FamilyTag::Gar, "jordan2") => from_p1(fam, &jordan(f, 2), f)?,
        (FamilyTag::Gar, "regular") => from_p1(fam, &jordan(f, p), f)?,
        (FamilyTag::Gar, "random") => {
            let t = random_valid_tuple(&mut rng, f, 1, 3, 0, 1)?;
            group_module(fam, &t, f)?
        }
        (FamilyTag::Gaminus, "regular") => {
            let mut b = Matrix::zeros(f, 2, 2);
            b.set(1, 0, 1);
            let t = SuperMatrixTuple { m: 1, n: 1, alpha: vec![Matrix::zeros(f, 2, 2)], beta: b };
            group_module(fam, &t, f)?
        }
        (FamilyTag::Gaminus, "random") => {
            let t = random_gaminus(&mut rng, f, 2, 1);
            debug_assert!(validate_tuple(&t).pass());
            group_module(fam, &t, f)?
        }
        _ => return invalid(format!("no battery module {name:?} for {}", fam.label())),
    };
    Ok(BatteryModule { name: name.to_string(), family: *fam, module })
}

/// Every battery module for the family.
pub fn battery(fam: &TargetFamily, f: &Fq) -> Result<Vec<BatteryModule>> {
    battery_names(fam).into_iter().map(|n| battery_module(fam, n, f)).collect()
}

/// The four height-one families the battery covers.
pub fn battery_families() -> Vec<TargetFamily> {
    vec![TargetFamily::gar(1), TargetFamily::gaminus(), TargetFamily::mr1(1), TargetFamily::mrs(1, 2)]
}
