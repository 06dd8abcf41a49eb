//! Command-line front end.
//!
//! Exit codes: 0 for certified or clean runs, 1 for failed or inconclusive
//! certificates and detected violations, 2 for input errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::builtin;
use crate::certify::{self, Certificate};
use crate::error::{Error, Result};
use crate::geometry::{self, PolySpace};
use crate::isomlab::{self, SphereIsometry};
use crate::numindex::{self, IndexSearch};
use crate::oracle;
use crate::rational::{self, Rational};
use crate::sums::{self, SumKind, SumSpec};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const THREADS_VAR: &str = "NORMGEO_THREADS";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "normgeo",
    version,
    about = "Exact certificates for polyhedral normed spaces"
)]
pub struct RunConfig {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
#[group(required = true, multiple = false)]
pub struct SpaceArg {
    /// JSON space file.
    #[arg(long)]
    pub space: Option<PathBuf>,
    /// Built-in space, see `normgeo list`.
    #[arg(long)]
    pub builtin: Option<String>,
}

impl SpaceArg {
    pub fn load(&self) -> Result<PolySpace> {
        match (&self.space, &self.builtin) {
            (Some(p), _) => PolySpace::load(p),
            (None, Some(name)) => builtin::by_name(name),
            (None, None) => Err(Error::InvalidInput("no space given".into())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    AlmostCl,
    StrongGl,
    GlEps,
    LushEps,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    L1,
    Linf,
    Ck,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a space file describes a symmetric polytope ball.
    Validate {
        #[command(flatten)]
        space: SpaceArg,
    },
    /// Run slice certifiers.
    Check {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long, value_enum, default_value_t = Mode::All)]
        mode: Mode,
        /// Slice depth in (0, 1); repeatable. Defaults to 1/2, 1/4, 1/8, 1/16.
        #[arg(long, value_parser = parse_eps)]
        eps: Vec<Rational>,
    },
    /// Sampled estimate of the numerical index.
    Index {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Build an l1, linf or C(K, E) sum and certify it.
    Sum {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Space file or built-in name; repeatable (one part for `ck`).
        #[arg(long = "part", required = true)]
        parts: Vec<String>,
        /// |K| for `ck`.
        #[arg(long, default_value_t = 2)]
        power: usize,
        /// Write the sum as a space file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Symmetry group and exact Mazur-Ulam checks on each element.
    Isom {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare LP slice distances with the planar grid oracle.
    Oracle {
        #[arg(long, default_value_t = 100)]
        instances: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = oracle::DEFAULT_RESOLUTION)]
        resolution: usize,
    },
    /// Write a built-in space to a file.
    Export {
        #[arg(long)]
        builtin: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// List built-in spaces.
    List,
}

fn parse_eps(s: &str) -> std::result::Result<Rational, String> {
    let e = rational::parse(s).map_err(|e| e.to_string())?;
    if e > rational::zero() && e < rational::one() {
        Ok(e)
    } else {
        Err(format!("eps must lie in (0, 1), got {s}"))
    }
}

/// A finished command: what to print and how to exit.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub exit_code: i32,
    pub command: &'static str,
    pub seed: Option<u64>,
    pub result: Value,
    pub text: String,
}

impl Report {
    pub fn to_json(&self) -> String {
        let v = json!({
            "tool": "normgeo",
            "version": VERSION,
            "command": self.command,
            "seed": self.seed,
            "exit_code": self.exit_code,
            "result": self.result,
        });
        serde_json::to_string_pretty(&v).expect("report serializes")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => self.to_json(),
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializes")
}

fn cert_line(c: &Certificate) -> String {
    let mut s = format!("{:?} {:?}", c.condition, c.verdict).to_lowercase();
    if let Some(e) = &c.eps {
        s += &format!(" eps={e}");
    }
    if let Some(b) = &c.bound {
        s += &format!(" bound={b}");
    }
    if let Some(w) = c.witnesses.first() {
        let idx = |i: Option<usize>| i.map_or("-".to_string(), |i| i.to_string());
        s += &format!(
            " witness(facet={}, vertex={}, value={})",
            idx(w.facet),
            idx(w.vertex),
            w.value
        );
    }
    s
}

fn certificates_report(command: &'static str, label: &str, certs: Vec<Certificate>) -> Report {
    let ok = certs.iter().all(Certificate::is_certified);
    let mut text = format!("{label}\n");
    for c in &certs {
        text += &cert_line(c);
        text.push('\n');
    }
    Report {
        exit_code: if ok { 0 } else { 1 },
        command,
        seed: None,
        result: to_value(&certs),
        text,
    }
}

fn load_part(s: &str) -> Result<PolySpace> {
    if Path::new(s).is_file() {
        PolySpace::load(s)
    } else {
        builtin::by_name(s)
    }
}

fn validate_cmd(space: &SpaceArg) -> Result<Report> {
    let cert = match space.load() {
        Ok(s) => geometry::validate(&s),
        Err(Error::Invalid(cert)) => *cert,
        Err(e) => return Err(e),
    };
    let mut r = certificates_report("validate", &cert.space_label.clone(), vec![cert.clone()]);
    r.seed = Some(0);
    r.result = to_value(&cert);
    if let Some(note) = &cert.note {
        r.text += note;
        r.text.push('\n');
    }
    Ok(r)
}

fn check_cmd(space: &SpaceArg, mode: Mode, eps: &[Rational]) -> Result<Report> {
    let s = space.load()?;
    let grid = if eps.is_empty() {
        certify::default_eps_grid()
    } else {
        eps.to_vec()
    };
    let mut certs = Vec::new();
    if matches!(mode, Mode::AlmostCl | Mode::All) {
        certs.push(certify::almost_cl_check(&s)?);
    }
    if matches!(mode, Mode::StrongGl | Mode::All) {
        certs.push(certify::strong_gl_certify(&s)?);
    }
    if matches!(mode, Mode::GlEps | Mode::All) {
        for e in &grid {
            certs.push(certify::gl_certify_eps(&s, e)?);
        }
    }
    if matches!(mode, Mode::LushEps | Mode::All) {
        for e in &grid {
            certs.push(certify::lush_check_eps(&s, e)?);
        }
    }
    Ok(certificates_report("check", s.label(), certs))
}

fn index_cmd(space: &SpaceArg, samples: usize, seed: u64) -> Result<Report> {
    let s = space.load()?;
    let est = IndexSearch::new(samples, seed).run(&s)?;
    let verified = numindex::index_ratio(&s, &est.witness)?.as_ref() == Some(&est.lower_empirical);
    let text = format!(
        "{}\nlower_empirical={} sampled_min={} samples={} seed={}\nwitness={}\nverified={}\n",
        s.label(),
        est.lower_empirical,
        est.sampled_min,
        est.samples,
        est.seed,
        est.witness,
        verified
    );
    let mut result = to_value(&est);
    result["verified"] = json!(verified);
    result["space_label"] = json!(s.label());
    Ok(Report {
        exit_code: if verified { 0 } else { 1 },
        command: "index",
        seed: Some(seed),
        result,
        text,
    })
}

fn sum_cmd(kind: Kind, parts: &[String], power: usize, out: Option<&Path>) -> Result<Report> {
    let spaces = parts
        .iter()
        .map(|p| load_part(p))
        .collect::<Result<Vec<_>>>()?;
    let sum = match kind {
        Kind::L1 => SumSpec::new(SumKind::L1, spaces).build()?,
        Kind::Linf => SumSpec::new(SumKind::Linf, spaces).build()?,
        Kind::Ck => {
            if spaces.len() != 1 {
                return Err(Error::InvalidInput("ck takes exactly one --part".into()));
            }
            sums::ck_power(&spaces[0], power)?
        }
    };
    if let Some(path) = out {
        sum.save(path)?;
    }
    let cert = certify::strong_gl_certify(&sum)?;
    let mut r = certificates_report("sum", sum.label(), vec![cert.clone()]);
    r.text = format!(
        "{} dim={} vertices={} facets={}\n{}\n",
        sum.label(),
        sum.dim(),
        sum.vertices().len(),
        sum.facets().len(),
        cert_line(&cert)
    );
    r.result = json!({
        "space_label": sum.label(),
        "dim": sum.dim(),
        "vertices": sum.vertices().len(),
        "facets": sum.facets().len(),
        "certificate": cert,
    });
    Ok(r)
}

#[derive(Serialize)]
struct ElementReport {
    matrix: Vec<Vec<String>>,
    mup: isomlab::MupReport,
    linearity: isomlab::LinearityReport,
}

fn isom_cmd(space: &SpaceArg, trials: usize, seed: u64) -> Result<Report> {
    let s = space.load()?;
    let group = isomlab::symmetry_group(&s)?;
    let mut elements = Vec::with_capacity(group.len());
    for (i, m) in group.iter().enumerate() {
        let t = SphereIsometry::restriction_of_symmetry(&s, m)?;
        let elem_seed = seed.wrapping_add(i as u64);
        elements.push(ElementReport {
            matrix: m.to_strings(),
            mup: isomlab::check_mup_inequality(&t, trials, elem_seed)?,
            linearity: isomlab::linearity_check(&t, trials, elem_seed)?,
        });
    }
    let violations: usize = elements
        .iter()
        .map(|e| e.mup.violations.len() + e.linearity.violations.len())
        .sum();
    let equalities: usize = elements.iter().map(|e| e.mup.equalities).sum();
    let is_group = isomlab::is_group(&group);
    let text = format!(
        "{}\ngroup order={} closed={}\ntrials per element={} equalities={} violations={}\n",
        s.label(),
        group.len(),
        is_group,
        trials,
        equalities,
        violations
    );
    Ok(Report {
        exit_code: if violations == 0 && is_group { 0 } else { 1 },
        command: "isom",
        seed: Some(seed),
        result: json!({
            "space_label": s.label(),
            "group_order": group.len(),
            "closed": is_group,
            "violations": violations,
            "elements": elements,
        }),
        text,
    })
}

fn oracle_cmd(instances: usize, seed: u64, resolution: usize) -> Result<Report> {
    let rep = oracle::run_oracle(instances, seed, resolution)?;
    let text = format!(
        "instances={} resolution={} max_deviation={:.3e} bound={:.3e} undershoots={}\n",
        rep.comparisons.len(),
        rep.resolution,
        rep.max_deviation,
        rep.bound,
        rep.undershoots
    );
    Ok(Report {
        exit_code: if rep.within_bound() { 0 } else { 1 },
        command: "oracle",
        seed: Some(seed),
        result: to_value(&rep),
        text,
    })
}

pub fn execute(config: &RunConfig) -> Result<Report> {
    match &config.command {
        Command::Validate { space } => validate_cmd(space),
        Command::Check { space, mode, eps } => check_cmd(space, *mode, eps),
        Command::Index {
            space,
            samples,
            seed,
        } => index_cmd(space, *samples, *seed),
        Command::Sum {
            kind,
            parts,
            power,
            out,
        } => sum_cmd(*kind, parts, *power, out.as_deref()),
        Command::Isom {
            space,
            trials,
            seed,
        } => isom_cmd(space, *trials, *seed),
        Command::Oracle {
            instances,
            seed,
            resolution,
        } => oracle_cmd(*instances, *seed, *resolution),
        Command::Export { builtin: name, out } => {
            let s = builtin::by_name(name)?;
            s.save(out)?;
            Ok(Report {
                exit_code: 0,
                command: "export",
                seed: None,
                result: json!({ "space_label": s.label(), "path": out }),
                text: format!("wrote {} to {}\n", s.label(), out.display()),
            })
        }
        Command::List => {
            let names = builtin::builtin_names();
            Ok(Report {
                exit_code: 0,
                command: "list",
                seed: None,
                text: names.join("\n") + "\n",
                result: json!(names),
            })
        }
    }
}

/// Runs `config`, printing to `out` and errors to `err`; returns the exit code.
pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(config) {
        Ok(report) => {
            let _ = writeln!(out, "{}", report.render(config.format).trim_end());
            report.exit_code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if config.format == Format::Json {
                let v = json!({ "tool": "normgeo", "version": VERSION, "error": e.to_string() });
                let _ = writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&v).expect("serializes")
                );
            }
            2
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_VAR)
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
    {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    configure_threads();
    run(&config, &mut std::io::stdout(), &mut std::io::stderr())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exec(args: &[&str]) -> (i32, String) {
        let cfg = RunConfig::try_parse_from(std::iter::once("normgeo").chain(args.iter().copied()))
            .unwrap();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(&cfg, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn hexagon_strong_gl_exits_zero() {
        let (code, out) = exec(&[
            "--format",
            "json",
            "check",
            "--builtin",
            "hexagon",
            "--mode",
            "strong-gl",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"][0]["bound"], "2");
        assert_eq!(v["version"], VERSION);
    }

    #[test]
    fn unknown_builtin_is_an_input_error() {
        let (code, _) = exec(&["validate", "--builtin", "dodecagon"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn eps_outside_unit_interval_is_rejected_by_parser() {
        let r =
            RunConfig::try_parse_from(["normgeo", "check", "--builtin", "hexagon", "--eps", "3/2"]);
        assert!(r.is_err());
    }

    #[test]
    fn space_and_builtin_are_exclusive() {
        let r = RunConfig::try_parse_from([
            "normgeo",
            "validate",
            "--builtin",
            "hexagon",
            "--space",
            "x.json",
        ]);
        assert!(r.is_err());
    }

    #[test]
    fn list_names_every_builtin() {
        let (code, out) = exec(&["list"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), builtin::builtin_names().len());
    }
}
