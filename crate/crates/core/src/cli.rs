//! Command-line front end: sweeps, config loading and rendering.
//!
//! Exit codes: 0 when every checked identity holds, 1 when at least one
//! fails, 2 for usage or configuration errors.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use crate::base_change::{verify_pullback_composition, verify_pullback_scaling, LocalPullback, RamificationProfile};
use crate::error::{Error, Result};
use crate::lattice::{render_vector, FibralSpace};
use crate::lift::{lift_inductive, Lifter};
use crate::matrix::IntMatrix;
use crate::ns::{
    act_isometry, build_ns, check_torelli_hypotheses, classify_isometry, of_block_form,
    pullback_ns, Classification, NsLattice, SurfaceConfig, UniversalIsometry,
};
use crate::report::{Record, Report};
use crate::weyl::{check_presentation, WeylWord};

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const MAX_N: usize = 8;
pub const MAX_DEGREE: usize = 4;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum)]
pub enum Family {
    Presentation,
    Intertwining,
    Homomorphism,
    Composition,
    LemmaS,
    Permutations,
    Scaling,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Presentation,
        Family::Intertwining,
        Family::Homomorphism,
        Family::Composition,
        Family::LemmaS,
        Family::Permutations,
        Family::Scaling,
    ];
}

/// Grid and options for a verification sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSpec {
    pub n: RangeInclusive<usize>,
    pub e: RangeInclusive<usize>,
    pub f: RangeInclusive<usize>,
    pub families: BTreeSet<Family>,
    pub seed: u64,
    /// Random words per composition cell.
    pub words: usize,
    /// Random pairs per scaling cell.
    pub trials: usize,
    pub sabotage: Option<usize>,
    pub unbounded: bool,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            n: 3..=MAX_N,
            e: 1..=MAX_DEGREE,
            f: 1..=MAX_DEGREE,
            families: Family::ALL.into_iter().collect(),
            seed: DEFAULT_SEED,
            words: 100,
            trials: 1000,
            sabotage: None,
            unbounded: false,
        }
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameters(msg));
        if self.n.is_empty() || self.e.is_empty() || self.f.is_empty() {
            return bad("empty range".into());
        }
        if *self.n.start() < 3 {
            return bad(format!("n starts at {}, need n >= 3", self.n.start()));
        }
        if *self.e.start() < 1 || *self.f.start() < 1 {
            return bad("degrees must be >= 1".into());
        }
        if !self.unbounded {
            if *self.n.end() > MAX_N {
                return bad(format!("n up to {} exceeds {MAX_N}; pass --unbounded", self.n.end()));
            }
            let top = (*self.e.end()).max(*self.f.end());
            if top > MAX_DEGREE {
                return bad(format!("degree {top} exceeds {MAX_DEGREE}; pass --unbounded"));
            }
        }
        Ok(())
    }

    fn cells(&self) -> Vec<Cell> {
        let mut cells = Vec::new();
        for &family in &self.families {
            for n in self.n.clone() {
                match family {
                    Family::Presentation => cells.push(Cell { family, n, e: 1, f: 1 }),
                    Family::Composition => {
                        for e in self.e.clone() {
                            for f in self.f.clone() {
                                cells.push(Cell { family, n, e, f });
                            }
                        }
                    }
                    Family::Scaling => {
                        for e in self.e.clone() {
                            cells.push(Cell { family, n, e, f: 0 });
                            for f in self.f.clone() {
                                cells.push(Cell { family, n, e, f });
                            }
                        }
                    }
                    _ => {
                        for e in self.e.clone() {
                            cells.push(Cell { family, n, e, f: 1 });
                        }
                    }
                }
            }
        }
        cells
    }
}

#[derive(Debug, Clone, Copy)]
struct Cell {
    family: Family,
    n: usize,
    e: usize,
    f: usize,
}

fn run_cell(spec: &SweepSpec, lifter: Lifter, c: Cell) -> Result<Report> {
    match c.family {
        Family::Presentation => check_presentation(c.n),
        Family::Intertwining => lifter.verify_intertwining(c.n, c.e),
        Family::Homomorphism => lifter.verify_homomorphism(c.n, c.e),
        Family::Composition => lifter.verify_composition(c.n, c.e, c.f, spec.words, spec.seed),
        Family::LemmaS => lifter.verify_lemma_s(c.n, c.e),
        Family::Permutations => lifter.verify_permutation_forms(c.n, c.e),
        Family::Scaling if c.f == 0 => verify_pullback_scaling(c.n, c.e as i64, spec.trials, spec.seed),
        Family::Scaling => verify_pullback_composition(c.n, c.e as i64, c.f as i64),
    }
}

/// Runs every cell of the grid in parallel. `on_record` sees records as
/// cells finish, in completion order; the returned report is sorted.
pub fn run_sweep_streaming(
    spec: &SweepSpec,
    on_record: Option<&(dyn Fn(&Record) + Sync)>,
) -> Result<Report> {
    spec.validate()?;
    let lifter = spec.sabotage.map_or_else(Lifter::faithful, Lifter::sabotaged);
    let parts = spec
        .cells()
        .into_par_iter()
        .map(|c| {
            let r = run_cell(spec, lifter, c)?;
            if let Some(cb) = on_record {
                r.records.iter().for_each(cb);
            }
            Ok(r)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = Report::new();
    for p in parts {
        report.merge(p);
    }
    report.normalize();
    Ok(report)
}

pub fn run_sweep(spec: &SweepSpec) -> Result<Report> {
    run_sweep_streaming(spec, None)
}

/// Reads and validates a surface config file.
pub fn parse_config(path: &Path) -> Result<SurfaceConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::parse(path.display().to_string(), e.to_string()))?;
    let config = SurfaceConfig::from_json(&text).map_err(|e| match e {
        Error::ParseError { location, message } => Error::ParseError {
            location: format!("{}: {location}", path.display()),
            message,
        },
        other => other,
    })?;
    build_ns(&config)?;
    Ok(config)
}

/// Parses `5` or the inclusive range `3..8`.
pub fn parse_range(s: &str) -> std::result::Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            Ok(num(a)?..=num(b)?)
        }
        None => {
            let v = num(s)?;
            Ok(v..=v)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "weylns", version, about = "Exact checks for affine Weyl lifts and Néron-Severi models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run verification sweeps over a parameter grid.
    Verify(VerifyArgs),
    /// Matrix and permutation realizations of a word in W_n.
    Realize {
        #[arg(long)]
        n: usize,
        /// Comma-separated letters, e.g. 0,1,2,1.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        word: String,
    },
    /// Pull back a fibral vector, or a whole surface config.
    Pullback(PullbackArgs),
    /// Lift a generator or word from W_n to W_{ne}.
    Lift {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        e: usize,
        #[arg(long, conflicts_with = "word")]
        k: Option<usize>,
        #[arg(long)]
        word: Option<String>,
        /// Use the inductive word S(v_k, e) for a generator.
        #[arg(long, requires = "k")]
        inductive: bool,
    },
    /// Apply a universal isometry to a divisor.
    Act {
        #[arg(long)]
        config: PathBuf,
        /// JSON literal or a path to a JSON file.
        #[arg(long)]
        isometry: String,
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
        /// Act on the pullback along this profile, e.g. t0:[2,1].
        #[arg(long)]
        profile: Option<String>,
    },
    /// Canonical form of an integer matrix on the NS basis.
    Classify {
        #[arg(long)]
        config: PathBuf,
        /// JSON file holding the matrix as a list of rows.
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Validate a config and print the lattice.
    NsBuild {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_parser = parse_range, default_value = "3..8")]
    pub n: RangeInclusive<usize>,
    #[arg(long, value_parser = parse_range, default_value = "1..4")]
    pub e: RangeInclusive<usize>,
    #[arg(long, value_parser = parse_range, default_value = "1..4")]
    pub f: RangeInclusive<usize>,
    /// Identity families to check; all when omitted.
    #[arg(long = "family", value_enum)]
    pub families: Vec<Family>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub words: usize,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    /// Corrupt the lift of generator k (negative control).
    #[arg(long)]
    pub sabotage: Option<usize>,
    #[arg(long)]
    pub unbounded: bool,
    /// Print records to stderr as cells complete.
    #[arg(long)]
    pub stream: bool,
}

#[derive(Debug, Args)]
pub struct PullbackArgs {
    #[arg(long, requires_all = ["e", "vector"], conflicts_with = "config")]
    pub n: Option<usize>,
    #[arg(long)]
    pub e: Option<i64>,
    /// Coefficients in V_n, comma-separated.
    #[arg(long, allow_hyphen_values = true)]
    pub vector: Option<String>,
    #[arg(long, requires = "profile")]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub profile: Option<String>,
}

/// Outcome of one invocation before it is written out.
struct Output {
    text: String,
    json: serde_json::Value,
    code: i32,
}

impl Output {
    fn ok(text: String, json: serde_json::Value) -> Self {
        Self { text, json, code: EXIT_PASS }
    }
}

/// Entry point for the binary; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let out = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let mut body = match cli.format {
        Format::Text => out.text,
        Format::Json => serde_json::to_string_pretty(&out.json).expect("json value"),
    };
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
        None => print!("{body}"),
    }
    out.code
}

fn execute(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Verify(a) => verify(a),
        Command::Realize { n, word } => realize(*n, word),
        Command::Pullback(a) => pullback(a),
        Command::Lift { n, e, k, word, inductive } => lift(*n, *e, *k, word.as_deref(), *inductive),
        Command::Act { config, isometry, divisor, profile } => {
            act(config, isometry, divisor, profile.as_deref())
        }
        Command::Classify { config, matrix } => classify(config, matrix),
        Command::NsBuild { config } => ns_build(config),
    }
}

fn verify(a: &VerifyArgs) -> Result<Output> {
    let spec = SweepSpec {
        n: a.n.clone(),
        e: a.e.clone(),
        f: a.f.clone(),
        families: if a.families.is_empty() {
            Family::ALL.into_iter().collect()
        } else {
            a.families.iter().copied().collect()
        },
        seed: a.seed,
        words: a.words,
        trials: a.trials,
        sabotage: a.sabotage,
        unbounded: a.unbounded,
    };
    let stream = |r: &Record| {
        let status = if r.passed() { "pass" } else { "FAIL" };
        eprintln!("{status} {} {:?}", r.id, r.params);
    };
    let report = run_sweep_streaming(&spec, a.stream.then_some(&stream as &(dyn Fn(&Record) + Sync)))?;
    Ok(Output {
        text: report.render_table(),
        json: serde_json::to_value(&report).expect("report serializes"),
        code: report.exit_code(),
    })
}

fn realize(n: usize, word: &str) -> Result<Output> {
    let space = FibralSpace::new(n)?;
    let w = WeylWord::parse(space, word)?;
    let m = w.matrix();
    let p = w.to_permutation();
    let mut text = String::new();
    let _ = writeln!(text, "word: [{w}]");
    let _ = writeln!(text, "permutation: {p}");
    let _ = writeln!(text, "matrix:\n{m}");
    let _ = writeln!(text, "trivial: {}", m.is_identity());
    Ok(Output::ok(
        text,
        json!({
            "n": n,
            "word": w.letters(),
            "permutation": p.to_string(),
            "images": p.images(),
            "matrix": m.to_rows(),
            "trivial": m.is_identity(),
        }),
    ))
}

fn parse_coeffs(s: &str) -> Result<Vec<i64>> {
    s.trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split(',')
        .enumerate()
        .map(|(i, t)| {
            t.trim()
                .parse()
                .map_err(|e| Error::parse(format!("vector entry {i}"), format!("{:?}: {e}", t.trim())))
        })
        .collect()
}

fn pullback(a: &PullbackArgs) -> Result<Output> {
    if let (Some(n), Some(e), Some(v)) = (a.n, a.e, a.vector.as_deref()) {
        let space = FibralSpace::new(n)?;
        let x = space.vector(parse_coeffs(v)?)?;
        let y = LocalPullback::new(space, e)?.apply(&x)?;
        return Ok(Output::ok(
            render_vector(y.coeffs(), "w"),
            json!({ "n": n, "e": e, "source": x.coeffs(), "image": y.coeffs() }),
        ));
    }
    let (Some(config), Some(profile)) = (&a.config, &a.profile) else {
        return Err(Error::InvalidParameters(
            "pullback needs --n --e --vector, or --config --profile".into(),
        ));
    };
    let base = build_ns(&parse_config(config)?)?;
    let profile = RamificationProfile::parse(profile)?;
    let pb = pullback_ns(&base, &profile)?;
    let mut text = String::new();
    let fibers: Vec<String> = pb
        .lattice
        .fibers()
        .iter()
        .map(|f| format!("{}: I_{}", f.name, f.n))
        .collect();
    let _ = writeln!(text, "profile: {profile}");
    let _ = writeln!(text, "fibers: {}", fibers.join(", "));
    let _ = writeln!(text, "chi: {} -> {}", base.chi(), pb.lattice.chi());
    for j in 0..base.dim() {
        let image = pb.apply(&base.divisor(base.unit(j))?);
        let _ = writeln!(text, "p*({}) = {}", base.basis_label(j), pb.lattice.render(&image));
    }
    Ok(Output::ok(
        text,
        json!({
            "profile": profile.to_string(),
            "config": pb.lattice.config(),
            "chi": pb.lattice.chi(),
            "map": pb.map.to_rows(),
        }),
    ))
}

fn lift(n: usize, e: usize, k: Option<usize>, word: Option<&str>, inductive: bool) -> Result<Output> {
    let lifter = Lifter::faithful();
    let (lifted, header) = match (k, word) {
        (Some(k), _) if inductive => (lift_inductive(n, e, k)?, None),
        (Some(k), _) => {
            let g = lifter.generator(n, e, k)?;
            (g.word.clone(), Some(g.to_string()))
        }
        (None, Some(w)) => (lifter.lift_word(e, &WeylWord::parse(FibralSpace::new(n)?, w)?)?, None),
        (None, None) => return Err(Error::InvalidParameters("lift needs --k or --word".into())),
    };
    let perm = lifted.to_permutation();
    let cycles = header.unwrap_or_else(|| perm.to_string());
    let text = format!("{cycles}\nword: [{lifted}]\n");
    Ok(Output::ok(
        text,
        json!({
            "n": n,
            "e": e,
            "permutation": cycles,
            "word": lifted.letters(),
            "matrix": lifted.matrix().to_rows(),
        }),
    ))
}

fn read_isometry(arg: &str) -> Result<UniversalIsometry> {
    if arg.trim_start().starts_with('{') {
        UniversalIsometry::from_json(arg)
    } else {
        let text = std::fs::read_to_string(arg).map_err(|e| Error::parse(arg, e.to_string()))?;
        UniversalIsometry::from_json(&text)
    }
}

fn act(config: &Path, isometry: &str, divisor: &str, profile: Option<&str>) -> Result<Output> {
    let base = build_ns(&parse_config(config)?)?;
    let iso = read_isometry(isometry)?;
    let profile = profile.map(RamificationProfile::parse).transpose()?;
    let target: NsLattice = match &profile {
        Some(p) => pullback_ns(&base, p)?.lattice,
        None => base.clone(),
    };
    let d = target.parse_divisor(divisor)?;
    let image = act_isometry(&base, &iso, &d, profile.as_ref())?;
    let text = target.render(&image);
    Ok(Output::ok(
        text.clone(),
        json!({ "divisor": target.render(&d), "image": text, "coeffs": image.coeffs }),
    ))
}

fn classify(config: &Path, matrix: &Path) -> Result<Output> {
    let lattice = build_ns(&parse_config(config)?)?;
    let raw = std::fs::read_to_string(matrix)
        .map_err(|e| Error::parse(matrix.display().to_string(), e.to_string()))?;
    let m: IntMatrix = serde_json::from_str(&raw).map_err(|e| {
        Error::parse(
            format!("{}: line {} column {}", matrix.display(), e.line(), e.column()),
            e.to_string(),
        )
    })?;
    let class = classify_isometry(&lattice, &m)?;
    let torelli = check_torelli_hypotheses(&lattice, &m)?;
    let mark = |b: bool| if b { "pass" } else { "fail" };
    let torelli_text = format!(
        "torelli: fiber={} zero={} components={} sections={}",
        mark(torelli.fiber_fixed),
        mark(torelli.zero_fixed),
        mark(torelli.components_to_components),
        mark(torelli.sections_to_sections)
    );
    Ok(match class {
        Classification::Universal { iso, effective } => Output::ok(
            format!("{}\neffective: {effective}\n{torelli_text}\n", iso.to_json()),
            json!({ "universal": true, "isometry": iso, "effective": effective, "torelli": torelli }),
        ),
        Classification::NotUniversal { reason } => Output {
            text: format!("not universal: {reason}\n{torelli_text}\n"),
            json: json!({ "universal": false, "reason": reason, "torelli": torelli }),
            code: EXIT_FAIL,
        },
    })
}

fn ns_build(config: &Path) -> Result<Output> {
    let lattice = build_ns(&parse_config(config)?)?;
    let (basis, block) = of_block_form(lattice.chi())?;
    let labels: Vec<String> = (0..lattice.dim()).map(|i| lattice.basis_label(i)).collect();
    let mut text = String::new();
    let _ = writeln!(text, "chi: {}", lattice.chi());
    let _ = writeln!(text, "rank: {}", lattice.dim());
    let _ = writeln!(text, "trivial lattice rank: {}", lattice.trivial_rank());
    let _ = writeln!(text, "basis: {}", labels.join(" "));
    let _ = writeln!(text, "gram:\n{}", lattice.gram());
    let _ = writeln!(text, "[O,F] block in basis {:?}:\n{block}", basis.to_rows());
    Ok(Output::ok(
        text,
        json!({
            "chi": lattice.chi(),
            "rank": lattice.dim(),
            "trivial_rank": lattice.trivial_rank(),
            "basis": labels,
            "gram": lattice.gram().to_rows(),
            "of_block": { "basis": basis.to_rows(), "form": block.to_rows() },
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3..8").unwrap(), 3..=8);
        assert_eq!(parse_range("5").unwrap(), 5..=5);
        assert_eq!(parse_range("1..=2").unwrap(), 1..=2);
        assert!(parse_range("a..3").is_err());
    }

    #[test]
    fn bounds_enforced() {
        let spec = SweepSpec { n: 3..=9, ..SweepSpec::default() };
        assert!(spec.validate().is_err());
        assert!(SweepSpec { unbounded: true, ..spec }.validate().is_ok());
        assert!(SweepSpec { n: 2..=4, unbounded: true, ..SweepSpec::default() }.validate().is_err());
    }

    #[test]
    fn single_cell_composition() {
        let spec = SweepSpec {
            n: 3..=3,
            e: 2..=2,
            f: 2..=2,
            families: [Family::Composition].into_iter().collect(),
            words: 0,
            ..SweepSpec::default()
        };
        let r = run_sweep(&spec).unwrap();
        assert!(r.is_success());
        let ks: Vec<i64> = r.records.iter().map(|rec| rec.params["k"]).collect();
        assert_eq!(ks, [0, 1, 2]);
    }

    #[test]
    fn sabotage_fails_sweep() {
        let spec = SweepSpec {
            n: 3..=4,
            e: 1..=2,
            f: 1..=1,
            families: [Family::Intertwining].into_iter().collect(),
            sabotage: Some(0),
            ..SweepSpec::default()
        };
        assert_eq!(run_sweep(&spec).unwrap().exit_code(), 1);
    }
}
