//! Command-line front end: `analyze`, `verify` and `eval`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::exec::Execution;
use crate::geometry::{Geometry, GeometryError};
use crate::model::ModelSpec;
use crate::report::{self, GeometryReport};
use crate::symkernel::{Point, SymError, DEFAULT_PROBES, DEFAULT_TOL};
use crate::tensor::index_key;
use crate::verify::{self, Settings, Tier};

#[derive(Debug, Parser)]
#[command(name = "jetgeom", version, about = "Riemann-Lagrange geometry of quadratic multi-time Lagrangians")]
pub struct Cli {
    /// Scheduling of component loops.
    #[arg(long, value_enum, global = true, default_value_t = ExecArg::Par)]
    pub execution: ExecArg,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExecArg {
    Seq,
    Par,
}

impl From<ExecArg> for Execution {
    fn from(e: ExecArg) -> Self {
        match e {
            ExecArg::Seq => Execution::Sequential,
            ExecArg::Par => Execution::Parallel,
        }
    }
}

#[derive(Debug, Clone, clap::Args)]
pub struct ProbeArgs {
    /// Random probe points per identity.
    #[arg(long, default_value_t = DEFAULT_PROBES)]
    pub probes: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Absolute tolerance of the numeric zero test.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
}

impl ProbeArgs {
    fn settings(&self) -> Settings {
        Settings { probes: self.probes, seed: self.seed, tol: self.tol, ..Settings::default() }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute every family and write the JSON report.
    Analyze {
        model: PathBuf,
        /// Report path; stdout when omitted.
        #[arg(long, short)]
        out: Option<PathBuf>,
        /// Also write a standalone LaTeX document.
        #[arg(long)]
        latex: Option<PathBuf>,
        #[command(flatten)]
        probe: ProbeArgs,
    },
    /// Run every identity check and the finite-difference audit.
    Verify {
        model: PathBuf,
        #[command(flatten)]
        probe: ProbeArgs,
    },
    /// Evaluate every family at a point.
    Eval {
        model: PathBuf,
        /// Comma-separated assignments, e.g. `t1=0.5,x1=1.2,x2=0,v1_1=1,...`.
        #[arg(long)]
        at: String,
        /// Restrict output to these families (repeatable).
        #[arg(long)]
        family: Vec<String>,
    },
}

/// Formats with 12 significant digits, positional where that stays short.
pub fn sig12(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return format!("{:.11}", 0.0);
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.11e}")
    }
}

fn parse_point(spec: &ModelSpec, at: &str) -> Result<Point, String> {
    let mut pairs = Vec::new();
    for part in at.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| format!("expected name=value, got '{part}'"))?;
        let v: f64 = v.trim().parse().map_err(|_| format!("bad number for '{}': '{}'", k.trim(), v.trim()))?;
        pairs.push((k.trim(), v));
    }
    Point::from_assignments(&spec.coords, pairs).map_err(|e| e.to_string())
}

fn load(path: &PathBuf, exec: Execution) -> Result<Geometry, String> {
    let spec = ModelSpec::load(path).map_err(|e| e.to_string())?;
    Geometry::compute(&spec, exec).map_err(|e: GeometryError| e.to_string())
}

/// Parses `args` (including the program name) and runs the command; returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let exec = Execution::from(cli.execution);
    match cli.command {
        Command::Analyze { model, out: dest, latex, probe } => analyze(&model, dest, latex, &probe, exec, out, err),
        Command::Verify { model, probe } => verify_cmd(&model, &probe, exec, out, err),
        Command::Eval { model, at, family } => eval(&model, &at, &family, exec, out, err),
    }
}

fn analyze(
    model: &PathBuf,
    dest: Option<PathBuf>,
    latex: Option<PathBuf>,
    probe: &ProbeArgs,
    exec: Execution,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let geom = match load(model, exec) {
        Ok(g) => g,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 1;
        }
    };
    let verification = match verify::verify(&geom, &probe.settings(), exec) {
        Ok(v) => v,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 1;
        }
    };
    let json = GeometryReport::new(&geom, &verification).to_json();
    let written = match &dest {
        Some(p) => std::fs::write(p, &json).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => out.write_all(json.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return 1;
    }
    if let Some(p) = latex {
        if let Err(e) = std::fs::write(&p, report::latex(&geom, &verification)) {
            let _ = writeln!(err, "error: cannot write {}: {e}", p.display());
            return 1;
        }
    }
    let failed: Vec<_> = verification.failures().collect();
    if failed.is_empty() {
        return 0;
    }
    for c in failed {
        let _ = writeln!(err, "reduction mismatch: {}", c.name);
    }
    2
}

fn verify_cmd(model: &PathBuf, probe: &ProbeArgs, exec: Execution, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let geom = match load(model, exec) {
        Ok(g) => g,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let settings = probe.settings();
    let report = match verify::verify(&geom, &settings, exec) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let _ = writeln!(out, "model={} probes={} seed={} tol={:e}", model.display(), settings.probes, settings.seed, settings.tol);
    for c in &report.checks {
        let tier = match c.tier {
            Tier::Symbolic => "symbolic",
            Tier::Numeric => "numeric",
            Tier::Failed => "FAILED",
        };
        let _ = writeln!(out, "{:<44} {:<8} {:.3e}", c.name, tier, c.max_residual);
        if let Some(w) = &c.witness {
            let point: Vec<String> = w.point.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(out, "    witness [{}] = {:e} at {}", w.index, w.value, point.join(","));
        }
        if let Some(e) = &c.error {
            let _ = writeln!(out, "    error: {e}");
        }
    }
    let failed = report.failures().count();
    let _ = writeln!(out, "{} checks, {} failed", report.checks.len(), failed);
    i32::from(failed > 0)
}

fn eval(model: &PathBuf, at: &str, only: &[String], exec: Execution, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let geom = match load(model, exec) {
        Ok(g) => g,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 1;
        }
    };
    let point = match parse_point(&geom.spec, at) {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 1;
        }
    };
    let wanted = |name: &str| only.is_empty() || only.iter().any(|f| f == name);
    let mut lines = Vec::new();
    let mut push = |name: &str, key: String, e: &crate::symkernel::Expr| -> Result<(), SymError> {
        lines.push(format!("{name}[{key}] = {}", sig12(e.eval(&point)?)));
        Ok(())
    };
    let mut result = Ok(());
    'outer: for (_, tensors) in report::family_groups(&geom) {
        for t in tensors.into_iter().filter(|t| wanted(t.name())) {
            for (idx, e) in t.components() {
                if let Err(e) = push(t.name(), index_key(&idx), e) {
                    result = Err(e);
                    break 'outer;
                }
            }
        }
    }
    if result.is_ok() {
        for (name, e) in report::scalars(&geom) {
            if wanted(name) {
                if let Err(e) = push(name, String::new(), e) {
                    result = Err(e);
                    break;
                }
            }
        }
    }
    if let Err(e) = result {
        let _ = writeln!(err, "error: {e}");
        return 1;
    }
    for l in lines {
        let _ = writeln!(out, "{l}");
    }
    0
}

#[cfg(test)]
mod tests {
    use super::sig12;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(sig12(1.0), "1.00000000000");
        assert_eq!(sig12(-0.5), "-0.500000000000");
        assert_eq!(sig12(123.456), "123.456000000");
        assert_eq!(sig12(0.0), "0.00000000000");
        assert_eq!(sig12(1.5e20), "1.50000000000e20");
    }
}
