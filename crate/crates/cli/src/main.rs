use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use supvar::homvariety::{FamilyTag, TargetFamily};
use supvar::{Error, Fq};

mod commands;

#[derive(Parser)]
#[command(
    name = "supvar",
    version,
    about = "Exact computations with height-r supergroup schemes over small finite fields"
)]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Family {
    Mr1,
    Mrs,
    #[value(alias = "mrseta")]
    MrsEta,
    Gar,
    Gaminus,
    #[value(alias = "mrendo")]
    MrEndo,
}

impl Family {
    fn tag(self) -> FamilyTag {
        match self {
            Family::Mr1 => FamilyTag::Mr1,
            Family::Mrs => FamilyTag::Mrs,
            Family::MrsEta => FamilyTag::MrsEta,
            Family::Gar => FamilyTag::Gar,
            Family::Gaminus => FamilyTag::Gaminus,
            Family::MrEndo => FamilyTag::MrEndo,
        }
    }
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct RunConfig {
    /// characteristic (odd prime)
    #[arg(long, global = true, default_value_t = 3)]
    pub p: u32,
    #[arg(long, global = true, default_value_t = 1)]
    pub r: u32,
    #[arg(long, global = true, default_value_t = 1)]
    pub s: u32,
    /// η for MrsEta, as an integer (a field-element code when q > p)
    #[arg(long, global = true, default_value_t = 0)]
    pub eta: i64,
    /// field size q = p^e (defaults to p)
    #[arg(long, global = true)]
    pub q: Option<u32>,
    #[arg(long = "degree-cap", global = true, default_value_t = 6)]
    pub degree_cap: usize,
    /// work budget for searches and large linear systems
    #[arg(long, global = true)]
    pub budget: Option<u128>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// tuple JSON file, or battery:<name>
    #[arg(long, global = true)]
    pub module: Option<String>,
    /// comma-separated coordinates (μ, a_0.., b)
    #[arg(long, global = true)]
    pub params: Option<String>,
    #[arg(long, global = true, value_enum, ignore_case = true, default_value = "mr1")]
    pub family: Family,
    /// also write the JSON document to this file
    #[arg(long = "json-out", global = true)]
    pub json_out: Option<PathBuf>,
}

impl RunConfig {
    pub fn field(&self) -> supvar::Result<Fq> {
        if self.p < 3 {
            return Err(Error::Invalid("p must be an odd prime".into()));
        }
        let q = self.q.unwrap_or(self.p);
        let mut e = 0;
        let mut x = 1u64;
        while x < q as u64 {
            x *= self.p as u64;
            e += 1;
        }
        if x != q as u64 || e == 0 {
            return Err(Error::Invalid(format!("q = {q} is not a power of p = {}", self.p)));
        }
        Fq::new(self.p, e)
    }

    pub fn element(&self, f: &Fq, n: i64) -> supvar::Result<supvar::Fe> {
        if f.e() == 1 {
            Ok(f.from_int(n))
        } else if (0..f.q() as i64).contains(&n) {
            Ok(n as supvar::Fe)
        } else {
            Err(Error::Invalid(format!("{n} is not an element code of F_{}", f.q())))
        }
    }

    pub fn target_family(&self, f: &Fq) -> supvar::Result<TargetFamily> {
        let eta = if self.family == Family::MrsEta { self.element(f, self.eta)? } else { 0 };
        let fam = TargetFamily { tag: self.family.tag(), r: self.r, s: self.s, eta };
        fam.validate()?;
        Ok(fam)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Hopf superalgebra axiom and duality checks
    Hopf {
        #[command(subcommand)]
        action: HopfCmd,
    },
    /// Hom(M_r, G): classification, search oracle, composition
    Hom {
        #[command(subcommand)]
        action: HomCmd,
    },
    /// Supermatrix tuples (α_0, .., α_{r−1} | β)
    Tuple {
        #[command(subcommand)]
        action: TupleCmd,
    },
    /// Cobar cohomology, restriction and ψ
    Cohomology {
        #[command(subcommand)]
        action: CohomologyCmd,
    },
    /// Support sets and cohomological supports in height one
    Support {
        #[command(subcommand)]
        action: SupportCmd,
    },
}

#[derive(Subcommand, Clone)]
pub enum HopfCmd {
    /// Axioms for k[G] and kG, and the pairing between them
    Verify,
}

#[derive(Subcommand, Clone)]
pub enum HomCmd {
    /// Constraints on the parameters, optionally with every F_q-point
    Classify {
        #[arg(long)]
        enumerate: bool,
    },
    /// Compare exhaustive Hopf-map search with the classification
    Oracle,
    /// y∘x for x = --params and y = --with
    Compose {
        #[arg(long = "with")]
        with: String,
    },
    /// Inverse of the automorphism given by --params
    Invert,
}

#[derive(Subcommand, Clone)]
pub enum TupleCmd {
    /// Check the relations of a tuple (--module)
    Validate,
    /// A seeded random valid tuple of superdimension m|n
    Random {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Clone)]
pub enum CohomologyCmd {
    /// Cobar dimensions next to the Hilbert function of the presented ring
    Dims {
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
    /// Restriction of generator classes along --params
    Restrict {
        #[arg(long)]
        class: Option<String>,
    },
    /// ψ on generators, its kernel up to --degree-cap and the point map
    Psi,
}

#[derive(Subcommand, Clone)]
pub enum SupportCmd {
    /// The points φ with id(φ*M) = ∞
    Set,
    /// Ψ of the support set against V(I_M) up to --degree-cap
    Compare,
    /// Aut(G)-orbits on N_1(G)
    Orbits,
    /// The decision for φ*M at a single point --params
    Id,
    /// List the battery module names for --family
    Battery,
}

/// Outcome of a subcommand: a status and the result body.
pub struct Outcome {
    pub status: &'static str,
    pub anchor: &'static str,
    pub result: Value,
}

fn exit_for_status(status: &str) -> u8 {
    match status {
        "fail" => 1,
        "inconclusive" => 2,
        _ => 0,
    }
}

fn exit_for_error(e: &Error) -> u8 {
    match e {
        Error::Check(_) => 1,
        Error::Budget { .. } | Error::Cap(_) => 2,
        Error::Invalid(_) | Error::Shape(_) | Error::FieldMismatch => 3,
    }
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Hopf { action: HopfCmd::Verify } => "hopf verify".into(),
        Command::Hom { action } => format!(
            "hom {}",
            match action {
                HomCmd::Classify { .. } => "classify",
                HomCmd::Oracle => "oracle",
                HomCmd::Compose { .. } => "compose",
                HomCmd::Invert => "invert",
            }
        ),
        Command::Tuple { action } => format!(
            "tuple {}",
            match action {
                TupleCmd::Validate => "validate",
                TupleCmd::Random { .. } => "random",
            }
        ),
        Command::Cohomology { action } => format!(
            "cohomology {}",
            match action {
                CohomologyCmd::Dims { .. } => "dims",
                CohomologyCmd::Restrict { .. } => "restrict",
                CohomologyCmd::Psi => "psi",
            }
        ),
        Command::Support { action } => format!(
            "support {}",
            match action {
                SupportCmd::Set => "set",
                SupportCmd::Compare => "compare",
                SupportCmd::Orbits => "orbits",
                SupportCmd::Id => "id",
                SupportCmd::Battery => "battery",
            }
        ),
    }
}

fn run(cli: &Cli) -> supvar::Result<Outcome> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Hopf { action } => commands::hopf(cfg, action),
        Command::Hom { action } => commands::hom(cfg, action),
        Command::Tuple { action } => commands::tuple(cfg, action),
        Command::Cohomology { action } => commands::cohomology(cfg, action),
        Command::Support { action } => commands::support(cfg, action),
    }
}

fn set_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("SUPVAR_THREADS") else {
        return Ok(());
    };
    let n: usize = v.parse().map_err(|_| format!("SUPVAR_THREADS must be a positive integer, got {v:?}"))?;
    if n == 0 {
        return Err("SUPVAR_THREADS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let mut cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(msg) = set_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(3);
    }
    let name = command_name(&cli.command);
    let field = cli.config.field().ok();
    if let Some(f) = &field {
        cli.config.q = Some(f.q());
    }
    let field = field.map(|f| f.spec());
    let (doc, code) = match run(&cli) {
        Ok(out) => (
            json!({
                "command": name,
                "config": cli.config,
                "field": field,
                "anchor": out.anchor,
                "status": out.status,
                "result": out.result,
            }),
            exit_for_status(out.status),
        ),
        Err(e) => {
            eprintln!("error: {e}");
            (
                json!({
                    "command": name,
                    "config": cli.config,
                    "field": field,
                    "status": "error",
                    "error": e.to_string(),
                }),
                exit_for_error(&e),
            )
        }
    };
    let text = serde_json::to_string_pretty(&doc).expect("JSON documents serialize");
    // a closed stdout (e.g. piped into head) is not an error of the run
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    if let Some(path) = &cli.config.json_out {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(3);
        }
    }
    ExitCode::from(code)
}
