//! The geometry report: a canonical JSON document with every derived family
//! as an index → expression map, and a standalone LaTeX rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::geometry::Geometry;
use crate::linalg::Inertia;
use crate::model::MetricSource;
use crate::symkernel::CoordinateSystem;
use crate::tensor::{index_key, DTensor};
use crate::verify::{Check, VerificationReport};

pub const ENGINE: &str = env!("CARGO_PKG_NAME");
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// One tensor: its slot signature (e.g. `^s_s_s_s`) and nonzero-or-not
/// components keyed by 1-based index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensorEntry {
    pub slots: String,
    pub components: BTreeMap<String, String>,
}

impl TensorEntry {
    pub fn new(t: &DTensor, cs: &CoordinateSystem) -> Self {
        Self {
            slots: t.signature().iter().map(ToString::to_string).collect(),
            components: t.components().map(|(i, e)| (index_key(&i), e.to_string(cs))).collect(),
        }
    }
}

pub type Section = BTreeMap<String, TensorEntry>;

fn section<'a>(ts: impl IntoIterator<Item = &'a DTensor>, cs: &CoordinateSystem) -> Section {
    ts.into_iter().map(|t| (t.name().to_string(), TensorEntry::new(t, cs))).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Coordinates {
    pub temporal: Vec<String>,
    pub spatial: Vec<String>,
    pub velocity: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorruptionEcho {
    pub family: String,
    pub index: String,
    pub add: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelEcho {
    pub p: usize,
    pub n: usize,
    pub coordinates: Coordinates,
    pub h: TensorEntry,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lagrangian: Option<String>,
    #[serde(rename = "U", skip_serializing_if = "Option::is_none", default)]
    pub u: Option<TensorEntry>,
    #[serde(rename = "F", skip_serializing_if = "Option::is_none", default)]
    pub f: Option<String>,
    pub einstein_constant: String,
    pub sample_points: Vec<BTreeMap<String, f64>>,
    /// Eigenvalue signs of `g` at the sample points (constant across them).
    pub signature: Inertia,
    /// Whether the Kronecker metric equals a given `G`; absent for a Lagrangian.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub kronecker_matches_input: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub corruption: Option<CorruptionEcho>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub tier: String,
    /// `None` when the check could not be evaluated.
    pub max_residual: Option<f64>,
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationSummary {
    pub probes: usize,
    pub seed: u64,
    pub tol: f64,
    pub fd_tol: f64,
    pub fd_step: f64,
    pub passed: bool,
    pub checks: BTreeMap<String, CheckSummary>,
}

impl VerificationSummary {
    pub fn new(r: &VerificationReport) -> Self {
        let s = &r.settings;
        let summary = |c: &Check| CheckSummary {
            tier: serde_json::to_value(c.tier).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
            max_residual: c.max_residual.is_finite().then_some(c.max_residual),
            tol: c.tol,
        };
        Self {
            probes: s.probes,
            seed: s.seed,
            tol: s.tol,
            fd_tol: s.fd_tol,
            fd_step: s.fd_step,
            passed: r.passed(),
            checks: r.checks.iter().map(|c| (c.name.clone(), summary(c))).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometryReport {
    pub engine: String,
    pub version: String,
    /// Slot order of every family, e.g. `R^l_ijk: l,i,j,k`.
    pub index_order: BTreeMap<String, String>,
    pub model: ModelEcho,
    /// Group name → family name → components.
    pub families: BTreeMap<String, Section>,
    pub scalars: BTreeMap<String, String>,
    pub verification: VerificationSummary,
}

/// Every computed family, grouped as in the report.
pub fn family_groups(geom: &Geometry) -> Vec<(&'static str, Vec<&DTensor>)> {
    let spec = &geom.spec;
    let (conn, cartan, pot) = (&geom.conn, &geom.cartan, &geom.potential);
    vec![
        ("metric", vec![&spec.h, &geom.h_inv, &geom.metric.g, &geom.metric.g_inv, &geom.vertical, &geom.kronecker.tensor]),
        ("connection", vec![&cartan.h, &geom.gamma, &conn.m, &conn.n, &cartan.gt, &cartan.l, &cartan.c]),
        ("torsion", geom.torsion.all().to_vec()),
        ("curvature", geom.curvature.all().to_vec()),
        ("ricci", geom.ricci.tensors().to_vec()),
        ("einstein", geom.einstein.lhs.iter().collect()),
        ("stress_energy", geom.einstein.stress.iter().collect()),
        ("electromagnetism", geom.em.all().to_vec()),
        ("potential", vec![&pot.dt_dt, &pot.dx_dx, &pot.deltax_deltax]),
    ]
}

/// The scalar curvatures `H`, `R` and `Sc`.
pub fn scalars(geom: &Geometry) -> [(&'static str, &crate::symkernel::Expr); 3] {
    let r = &geom.ricci;
    [("H", &r.h_scalar), ("R", &r.r_scalar), ("Sc", &r.sc)]
}

/// Slot letters of every reported family, in storage order.
pub const INDEX_ORDER: &[(&str, &str)] = &[
    ("h_alphabeta", "alpha,beta"),
    ("h^alphabeta", "alpha,beta"),
    ("g_ij", "i,j"),
    ("g^ij", "i,j"),
    ("G^(alpha)(beta)_(i)(j)", "alpha,beta,i,j"),
    ("U^(alpha)_(i)", "alpha,i"),
    ("Gk^(alpha)(beta)_(i)(j)", "alpha,beta,i,j"),
    ("H^gamma_alphabeta", "gamma,alpha,beta"),
    ("Gamma^i_jk", "i,j,k"),
    ("M^(i)_(alpha)beta", "i,alpha,beta"),
    ("N^(i)_(alpha)j", "i,alpha,j"),
    ("G^k_jgamma", "k,j,gamma"),
    ("L^i_jk", "i,j,k"),
    ("C^i(gamma)_j(k)", "i,gamma,j,k"),
    ("T^m_alphaj", "m,alpha,j"),
    ("P^m(beta)_i(j)", "m,beta,i,j"),
    ("P^(m)(beta)_(mu)i(j)", "m,beta,mu,i,j"),
    ("P^(m)(beta)_(mu)alpha(j)", "m,beta,mu,alpha,j"),
    ("R^(m)_(mu)alphabeta", "m,mu,alpha,beta"),
    ("R^(m)_(mu)alphaj", "m,mu,alpha,j"),
    ("R^(m)_(mu)ij", "m,mu,i,j"),
    ("S^(m)(alpha)(beta)_(mu)(i)(j)", "m,alpha,beta,mu,i,j"),
    ("H^alpha_etabetagamma", "alpha,eta,beta,gamma"),
    ("R^l_ibetagamma", "l,i,beta,gamma"),
    ("R^l_ibetak", "l,i,beta,k"),
    ("R^l_ijk", "l,i,j,k"),
    ("P^l(gamma)_ibeta(k)", "l,gamma,i,beta,k"),
    ("P^l(gamma)_ij(k)", "l,gamma,i,j,k"),
    ("S^l(beta)(gamma)_i(j)(k)", "l,beta,gamma,i,j,k"),
    ("H_alphabeta", "alpha,beta"),
    ("R_ialpha", "i,alpha"),
    ("R_ij", "i,j"),
    ("P^(alpha)_i(j)", "alpha,i,j"),
    ("P^(alpha)_(i)j", "alpha,i,j"),
    ("P^(alpha)_(i)beta", "alpha,i,beta"),
    ("S^(alpha)(beta)_(i)(j)", "alpha,beta,i,j"),
    ("E_alphabeta", "alpha,beta"),
    ("E_ij", "i,j"),
    ("E^(alpha)(beta)_(i)(j)", "alpha,beta,i,j"),
    ("E_ialpha", "i,alpha"),
    ("E_alphai", "alpha,i"),
    ("E^(alpha)_(i)beta", "alpha,i,beta"),
    ("E^(beta)_alpha(i)", "beta,alpha,i"),
    ("E^(alpha)_i(j)", "alpha,i,j"),
    ("E^(alpha)_(i)j", "alpha,i,j"),
    ("T_alphabeta", "alpha,beta"),
    ("T_ij", "i,j"),
    ("T^(alpha)(beta)_(i)(j)", "alpha,beta,i,j"),
    ("T_ialpha", "i,alpha"),
    ("T_alphai", "alpha,i"),
    ("T^(alpha)_(i)beta", "alpha,i,beta"),
    ("T^(beta)_alpha(i)", "beta,alpha,i"),
    ("T^(alpha)_i(j)", "alpha,i,j"),
    ("T^(alpha)_(i)j", "alpha,i,j"),
    ("D^(alpha)_(i)j", "alpha,i,j"),
    ("d^(alpha)(beta)_(i)(j)", "alpha,beta,i,j"),
    ("F^(alpha)_(i)j", "alpha,i,j"),
    ("f^(alpha)(beta)_(i)(j)", "alpha,beta,i,j"),
    ("dt.dt", "alpha,beta"),
    ("dx.dx", "i,j"),
    ("deltax.deltax", "alpha,beta,i,j"),
];

impl GeometryReport {
    pub fn new(geom: &Geometry, verification: &VerificationReport) -> Self {
        let cs = geom.coords();
        let spec = &geom.spec;
        let velocity = (0..cs.n()).flat_map(|i| (0..cs.p()).map(move |a| (i, a))).map(|(i, a)| cs.name(cs.v(i, a)).to_string()).collect();
        let (lagrangian, u, f) = match &spec.source {
            MetricSource::Lagrangian(l) => (Some(l.to_string(cs)), None, None),
            MetricSource::Components { u, f, .. } => (None, Some(TensorEntry::new(u, cs)), Some(f.to_string(cs))),
        };
        let model = ModelEcho {
            p: cs.p(),
            n: cs.n(),
            coordinates: Coordinates {
                temporal: cs.temporal_names().to_vec(),
                spatial: cs.spatial_names().to_vec(),
                velocity,
            },
            h: TensorEntry::new(&spec.h, cs),
            lagrangian,
            u,
            f,
            einstein_constant: spec.einstein_constant.to_string(),
            sample_points: spec
                .sample_points
                .iter()
                .map(|p| cs.coords().map(|c| (cs.name(c).to_string(), p.get(c))).collect())
                .collect(),
            signature: geom.metric.inertia[0],
            kronecker_matches_input: geom.kronecker.matches_input,
            corruption: spec.corruption.as_ref().map(|c| CorruptionEcho {
                family: c.family.name().to_string(),
                index: index_key(&c.index),
                add: c.delta.to_string(cs),
            }),
        };
        Self {
            engine: ENGINE.to_string(),
            version: VERSION.to_string(),
            index_order: INDEX_ORDER.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
            model,
            families: family_groups(geom).into_iter().map(|(g, ts)| (g.to_string(), section(ts, cs))).collect(),
            scalars: scalars(geom).into_iter().map(|(k, e)| (k.to_string(), e.to_string(cs))).collect(),
            verification: VerificationSummary::new(verification),
        }
    }

    /// Canonical text: pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

}

fn latex_escape(s: &str) -> String {
    s.replace('\\', "\\textbackslash{}").replace('_', "\\_").replace('^', "\\^{}").replace('&', "\\&").replace('#', "\\#")
}

/// A standalone LaTeX document listing every family for the model.
pub fn latex(geom: &Geometry, verification: &VerificationReport) -> String {
    let cs = geom.coords();
    let mut out = String::new();
    out.push_str("\\documentclass{article}\n\\usepackage{amsmath}\n\\usepackage[margin=2cm]{geometry}\n\\begin{document}\n");
    let _ = writeln!(out, "\\section*{{Model}}\n$p = {}$, $n = {}$.", cs.p(), cs.n());
    if let MetricSource::Lagrangian(l) = &geom.spec.source {
        let _ = writeln!(out, "\\[ L = {} \\]", l.to_latex(cs));
    }
    let ricci = &geom.ricci;
    for (title, tensors) in family_groups(geom) {
        let _ = writeln!(out, "\\section*{{{}}}", latex_escape(title));
        for t in tensors {
            let order = INDEX_ORDER.iter().find(|(k, _)| *k == t.name()).map(|(_, v)| *v).unwrap_or("");
            let _ = writeln!(out, "\\subsection*{{\\texttt{{{}}} [{}]}}", latex_escape(t.name()), latex_escape(order));
            let nonzero: Vec<_> = t.components().filter(|(_, e)| !e.is_zero_literal()).collect();
            if nonzero.is_empty() {
                out.push_str("All components vanish.\n");
                continue;
            }
            out.push_str("\\begin{align*}\n");
            for (idx, e) in nonzero {
                let _ = writeln!(out, "[{}] &= {} \\\\", index_key(&idx), e.to_latex(cs));
            }
            out.push_str("\\end{align*}\n");
        }
    }
    let _ = writeln!(out, "\\section*{{Scalars}}\n\\[ H = {}, \\quad R = {}, \\quad Sc = {} \\]", ricci.h_scalar.to_latex(cs), ricci.r_scalar.to_latex(cs), ricci.sc.to_latex(cs));
    out.push_str("\\section*{Verification}\n\\begin{tabular}{lll}\n");
    for c in &verification.checks {
        let tier = serde_json::to_value(c.tier).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        let _ = writeln!(out, "\\texttt{{{}}} & {} & {:.3e} \\\\", latex_escape(&c.name), tier, c.max_residual);
    }
    out.push_str("\\end{tabular}\n\\end{document}\n");
    out
}
