//! Verification: the metrical conditions, every claimed identity through the
//! two-tier zero test, and a finite-difference audit of each formula.

pub mod audit;
pub mod covariant;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::exec::Execution;
use crate::geometry::{Geometry, Identity};
use crate::symkernel::{CoordinateSystem, Point, ProbeSampler, SymError, DEFAULT_PROBES, DEFAULT_TOL};

pub use covariant::{covariant_derivative_02, CovariantDerivatives, MetricClass};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("{name} is not a pure (0,2) tensor with slots {expected}")]
    ClassMismatch { name: String, expected: String },
    #[error("{name} depends on the velocity '{coord}'")]
    VelocityDependent { name: String, coord: String },
    #[error(transparent)]
    Sym(#[from] SymError),
}

pub const FD_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Settings {
    pub probes: usize,
    pub seed: u64,
    /// Absolute tolerance of the numeric zero tier.
    pub tol: f64,
    /// Relative tolerance of the finite-difference audit.
    pub fd_tol: f64,
    pub fd_step: f64,
}

impl Default for Settings {
    fn default() -> Self {
        Self { probes: DEFAULT_PROBES, seed: 0, tol: DEFAULT_TOL, fd_tol: FD_TOL, fd_step: crate::geometry::calc::FD_STEP }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    /// Every residual normalizes to the literal zero.
    Symbolic,
    /// Some residual survives normalization but vanishes at every probe.
    Numeric,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    /// 1-based component index.
    pub index: String,
    pub point: BTreeMap<String, f64>,
    pub value: f64,
}

impl Witness {
    fn new(index: String, at: &Point, cs: &CoordinateSystem, value: f64) -> Self {
        let point = cs.coords().map(|c| (cs.name(c).to_string(), at.get(c))).collect();
        Self { index, point, value }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub tier: Tier,
    /// Largest absolute residual (identities) or relative residual (audit)
    /// over all components and probes.
    pub max_residual: f64,
    pub seed: u64,
    pub tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.tier != Tier::Failed
    }

    fn errored(name: &str, settings: &Settings, tol: f64, e: SymError) -> Self {
        Self {
            name: name.to_string(),
            tier: Tier::Failed,
            max_residual: f64::NAN,
            seed: settings.seed,
            tol,
            witness: None,
            error: Some(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub settings: Settings,
    /// Sorted by name.
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Runs one identity through normalization and seeded probing. The raw
/// residual is always evaluated, so a symbolic pass also carries numeric
/// evidence.
pub fn check_identity(id: &Identity, cs: &CoordinateSystem, settings: &Settings) -> Check {
    match try_check_identity(id, cs, settings) {
        Ok(c) => c,
        Err(e) => Check::errored(&id.name, settings, settings.tol, e),
    }
}

fn try_check_identity(id: &Identity, cs: &CoordinateSystem, settings: &Settings) -> Result<Check, SymError> {
    let mut tier = Tier::Symbolic;
    let mut max_residual: f64 = 0.0;
    let mut witness = None;
    for (key, raw) in &id.residuals {
        let normal = raw.normalize()?;
        if !normal.is_zero_literal() && tier == Tier::Symbolic {
            tier = Tier::Numeric;
        }
        let mut sampler = ProbeSampler::new(cs, settings.seed);
        for _ in 0..settings.probes {
            // the larger of the raw and normalized values
            let (at, value) = sampler.draw_valid(|p| {
                let raw_v = raw.eval(p)?;
                if normal.is_zero_literal() {
                    return Ok(raw_v);
                }
                let norm_v = normal.eval(p)?;
                Ok(if norm_v.abs() > raw_v.abs() { norm_v } else { raw_v })
            })?;
            max_residual = max_residual.max(value.abs());
            if value.abs() >= settings.tol && witness.is_none() {
                witness = Some(Witness::new(key.clone(), &at, cs, value));
                tier = Tier::Failed;
            }
        }
    }
    Ok(Check { name: id.name.clone(), tier, max_residual, seed: settings.seed, tol: settings.tol, witness, error: None })
}

/// Metrical conditions: every covariant derivative of `h` and `g`.
pub fn metrical_identities(geom: &Geometry, exec: Execution) -> Result<Vec<Identity>, VerifyError> {
    let cs = geom.coords();
    let mut out = Vec::new();
    for (label, t, class) in
        [("h_alphabeta", &geom.spec.h, MetricClass::Temporal), ("g_ij", &geom.metric.g, MetricClass::Spatial)]
    {
        let d = covariant_derivative_02(t, class, &geom.cartan, &geom.conn, cs, exec)?;
        out.push(Identity::zero(&format!("metrical.{label}/gamma"), &d.slash));
        out.push(Identity::zero(&format!("metrical.{label}|k"), &d.bar));
        out.push(Identity::zero(&format!("metrical.{label}|^(gamma)_(k)"), &d.vertical));
    }
    Ok(out)
}

/// Every identity the engine claims: reductions, zero families, symmetries
/// and the metrical conditions.
pub fn identity_ledger(geom: &Geometry, settings: &Settings, exec: Execution) -> Result<Vec<Check>, VerifyError> {
    let mut ids = geom.identities()?;
    ids.extend(metrical_identities(geom, exec)?);
    Ok(exec.map(ids.len(), |k| check_identity(&ids[k], geom.coords(), settings)))
}

/// The ledger plus the finite-difference audit, sorted by check name.
pub fn verify(geom: &Geometry, settings: &Settings, exec: Execution) -> Result<VerificationReport, VerifyError> {
    let mut checks = identity_ledger(geom, settings, exec)?;
    checks.extend(audit::finite_difference_audit(geom, settings, exec));
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(VerificationReport { settings: *settings, checks })
}
