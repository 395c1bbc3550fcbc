//! Model files: dimensions, temporal metric `h`, the quadratic Lagrangian (or
//! its coefficient tensors) and the spatial metric they induce.
//!
//! A model is a TOML document:
//!
//! ```toml
//! p = 1
//! n = 2
//! h = [["1"]]
//! lagrangian = "v1_1^2 + sin(x1)^2*v2_1^2"
//! einstein_constant = "1"        # optional, rational, default 1
//!
//! [coordinates]                  # optional
//! temporal = ["t1"]
//! spatial = ["x1", "x2"]
//!
//! [[sample_points]]              # at least one; velocities default to 0
//! t1 = 0.5
//! x1 = 1.0
//! x2 = 0.7
//! ```
//!
//! Instead of `lagrangian` a model may give `G` as a `(p·n)×(p·n)` array whose
//! row and column `α·n + i` (0-based) hold `G^(α)(β)_(i)(j)`, together with
//! optional `U` (`p×n`) and `F`. A `[corrupt]` table (`family`, 1-based
//! `index`, `add`) perturbs one connection coefficient after it is computed;
//! it exists for negative-control fixtures.

use std::collections::BTreeMap;
use std::path::Path;

use num_traits::Zero;
use serde::Deserialize;
use thiserror::Error;

use crate::exec::Execution;
use crate::linalg::{self, Inertia, Matrix};
use crate::symkernel::{parse_expression, parse_normalized, CoordKind, CoordinateSystem, Expr, Point, Rational, SymError};
use crate::tensor::{index_key, DTensor, Symmetry, S_LO, S_UP, T_LO, T_UP};

/// Determinants below this magnitude count as singular at a sample point.
pub const SINGULAR_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("model schema: {0}")]
    Schema(String),
    #[error("{field}: {source}")]
    Expression { field: String, source: SymError },
    #[error("{what} is not symmetric: {a} differs from {b}")]
    Symmetry { what: String, a: String, b: String },
    #[error("{what} may only depend on {allowed}, found '{name}'")]
    Dependency { what: String, allowed: &'static str, name: String },
    #[error("h is singular at sample point {point}")]
    SingularH { point: String },
    #[error("g is singular at sample point {point}")]
    SingularG { point: String },
    #[error("g is symbolically singular")]
    SingularGSymbolic,
    #[error("h is symbolically singular")]
    SingularHSymbolic,
    #[error("signature of g changes between sample points: {first:?} at {first_point}, {other:?} at {other_point}")]
    SignatureChange { first: Inertia, first_point: String, other: Inertia, other_point: String },
    #[error("Lagrangian is not quadratic in the velocities: {component} still contains '{name}'")]
    NotQuadratic { component: String, name: String },
    #[error(transparent)]
    Sym(#[from] SymError),
}

fn expr_err(field: impl Into<String>) -> impl FnOnce(SymError) -> ModelError {
    let field = field.into();
    move |source| ModelError::Expression { field, source }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    p: usize,
    n: usize,
    coordinates: Option<CoordinateNames>,
    h: Vec<Vec<String>>,
    lagrangian: Option<String>,
    #[serde(rename = "G")]
    g: Option<Vec<Vec<String>>>,
    #[serde(rename = "U")]
    u: Option<Vec<Vec<String>>>,
    #[serde(rename = "F")]
    f: Option<String>,
    sample_points: Vec<BTreeMap<String, f64>>,
    einstein_constant: Option<Scalar>,
    corrupt: Option<CorruptFile>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoordinateNames {
    temporal: Vec<String>,
    spatial: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Scalar {
    Int(i64),
    Text(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CorruptFile {
    family: String,
    index: Vec<usize>,
    add: String,
}

/// Connection coefficient families a fixture may perturb.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    H,
    Gt,
    L,
    C,
    M,
    N,
}

impl Family {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "H" => Family::H,
            "G" | "Gt" => Family::Gt,
            "L" => Family::L,
            "C" => Family::C,
            "M" => Family::M,
            "N" => Family::N,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::H => "H",
            Family::Gt => "Gt",
            Family::L => "L",
            Family::C => "C",
            Family::M => "M",
            Family::N => "N",
        }
    }
}

/// A deliberate perturbation `family[index] += delta`.
#[derive(Debug, Clone, PartialEq)]
pub struct Corruption {
    pub family: Family,
    /// 0-based.
    pub index: Vec<usize>,
    pub delta: Expr,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MetricSource {
    Lagrangian(Expr),
    /// `G^(α)(β)_(i)(j)` as `[α, β, i, j]`, `U^(α)_(i)` as `[α, i]`, and `F`.
    Components { g: DTensor, u: DTensor, f: Expr },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelSpec {
    pub coords: CoordinateSystem,
    /// `h_αβ` as `[α, β]`.
    pub h: DTensor,
    pub source: MetricSource,
    pub sample_points: Vec<Point>,
    pub einstein_constant: Rational,
    pub corruption: Option<Corruption>,
}

impl ModelSpec {
    pub fn load(path: impl AsRef<Path>) -> Result<Self, ModelError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| ModelError::Io { path: path.display().to_string(), source })?;
        Self::from_toml_str(&text)
    }

    pub fn from_toml_str(text: &str) -> Result<Self, ModelError> {
        let file: ModelFile = toml::from_str(text).map_err(|e| ModelError::Schema(e.message().to_string()))?;
        let (p, n) = (file.p, file.n);
        let coords = match &file.coordinates {
            None => CoordinateSystem::new(p, n)?,
            Some(names) => {
                if names.temporal.len() != p || names.spatial.len() != n {
                    return Err(ModelError::Schema(format!(
                        "coordinates: expected {p} temporal and {n} spatial names, got {} and {}",
                        names.temporal.len(),
                        names.spatial.len()
                    )));
                }
                CoordinateSystem::with_names(names.temporal.clone(), names.spatial.clone())?
            }
        };

        let h_rows = parse_matrix(&file.h, p, p, "h", &coords)?;
        for (i, row) in h_rows.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                only_depends_on(e, &coords, &format!("h[{},{}]", i + 1, j + 1), false)?;
            }
        }
        let h = DTensor::build("h_alphabeta", &[T_LO, T_LO], p, n, Execution::Sequential, |i| Ok(h_rows[i[0]][i[1]].clone()))?
            .with_symmetry(Symmetry::Symmetric(0, 1));
        check_symmetric(&h, "h")?;

        let source = match (&file.lagrangian, &file.g) {
            (Some(_), Some(_)) => return Err(ModelError::Schema("give either `lagrangian` or `G`, not both".into())),
            (None, None) => return Err(ModelError::Schema("one of `lagrangian` or `G` is required".into())),
            (Some(l), None) => {
                if file.u.is_some() || file.f.is_some() {
                    return Err(ModelError::Schema("`U` and `F` accompany `G`, not `lagrangian`".into()));
                }
                MetricSource::Lagrangian(parse_normalized(l, &coords).map_err(expr_err("lagrangian"))?)
            }
            (None, Some(g)) => components_source(g, file.u.as_deref(), file.f.as_deref(), &coords)?,
        };

        if file.sample_points.is_empty() {
            return Err(ModelError::Schema("at least one sample point is required".into()));
        }
        let sample_points =
            file.sample_points.iter().map(|m| sample_point(m, &coords)).collect::<Result<Vec<_>, _>>()?;

        let einstein_constant = match &file.einstein_constant {
            None => Rational::from_integer(1.into()),
            Some(Scalar::Int(k)) => Rational::from_integer((*k).into()),
            Some(Scalar::Text(s)) => {
                let e = parse_expression(s, &coords).map_err(expr_err("einstein_constant"))?;
                e.constant_value()
                    .map_err(expr_err("einstein_constant"))?
                    .ok_or_else(|| ModelError::Schema("einstein_constant must be a rational constant".into()))?
            }
        };
        if einstein_constant.is_zero() {
            return Err(ModelError::Schema("einstein_constant must be nonzero".into()));
        }

        let corruption = file.corrupt.as_ref().map(|c| corruption(c, &coords)).transpose()?;

        let spec = ModelSpec { coords, h, source, sample_points, einstein_constant, corruption };
        for at in &spec.sample_points {
            let det = linalg::numeric(&spec.h_matrix(), at)?.determinant();
            if det.abs() < SINGULAR_TOL {
                return Err(ModelError::SingularH { point: at.to_string() });
            }
        }
        Ok(spec)
    }

    pub fn p(&self) -> usize {
        self.coords.p()
    }

    pub fn n(&self) -> usize {
        self.coords.n()
    }

    pub fn h_matrix(&self) -> Matrix {
        let p = self.p();
        (0..p).map(|a| (0..p).map(|b| self.h.get(&[a, b]).clone()).collect()).collect()
    }

    /// `h^αβ` as `[α, β]`.
    pub fn h_inverse(&self) -> Result<DTensor, ModelError> {
        let inv = linalg::inverse(&self.h_matrix())?.ok_or(ModelError::SingularHSymbolic)?;
        Ok(DTensor::build("h^alphabeta", &[T_UP, T_UP], self.p(), self.n(), Execution::Sequential, |i| {
            Ok(inv[i[0]][i[1]].clone())
        })?)
    }

    /// The velocity Hessian `G` (computed for a Lagrangian, as given otherwise).
    pub fn vertical_metric(&self, exec: Execution) -> Result<DTensor, ModelError> {
        match &self.source {
            MetricSource::Lagrangian(l) => hessian_metric(l, &self.coords, exec),
            MetricSource::Components { g, .. } => Ok(g.clone()),
        }
    }

    /// The Lagrangian itself, rebuilt from `G`, `U`, `F` when needed.
    pub fn lagrangian(&self) -> Expr {
        match &self.source {
            MetricSource::Lagrangian(l) => l.clone(),
            MetricSource::Components { g, u, f } => {
                let c = &self.coords;
                let mut terms = vec![f.clone()];
                for (idx, e) in g.components() {
                    let [a, b, i, j] = idx[..] else { unreachable!() };
                    terms.push(e.clone() * Expr::coord(c.v(i, a)) * Expr::coord(c.v(j, b)));
                }
                for (idx, e) in u.components() {
                    terms.push(e.clone() * Expr::coord(c.v(idx[1], idx[0])));
                }
                Expr::sum(terms)
            }
        }
    }
}

fn parse_matrix(rows: &[Vec<String>], r: usize, c: usize, what: &str, coords: &CoordinateSystem) -> Result<Matrix, ModelError> {
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        return Err(ModelError::Schema(format!("{what} must be a {r}x{c} array of expression strings")));
    }
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, s)| parse_normalized(s, coords).map_err(expr_err(format!("{what}[{},{}]", i + 1, j + 1))))
                .collect()
        })
        .collect()
}

/// Rejects velocities (and, when `spatial_ok` is false, spatial coordinates).
fn only_depends_on(e: &Expr, coords: &CoordinateSystem, what: &str, spatial_ok: bool) -> Result<(), ModelError> {
    for c in e.free_coords() {
        let bad = match coords.kind(c) {
            CoordKind::Temporal(_) => false,
            CoordKind::Spatial(_) => !spatial_ok,
            CoordKind::Velocity(..) => true,
        };
        if bad {
            return Err(ModelError::Dependency {
                what: what.to_string(),
                allowed: if spatial_ok { "temporal and spatial coordinates" } else { "temporal coordinates" },
                name: coords.name(c).to_string(),
            });
        }
    }
    Ok(())
}

/// Checks every tagged symmetry of `t` on normal forms.
fn check_symmetric(t: &DTensor, what: &str) -> Result<(), ModelError> {
    for s in t.symmetries() {
        let Symmetry::Symmetric(a, b) = *s else { continue };
        for idx in t.indices() {
            let mut sw = idx.clone();
            sw.swap(a, b);
            if !t.get(&idx).sym_eq(t.get(&sw))? {
                return Err(ModelError::Symmetry {
                    what: what.to_string(),
                    a: format!("[{}]", index_key(&idx)),
                    b: format!("[{}]", index_key(&sw)),
                });
            }
        }
    }
    Ok(())
}

fn components_source(
    g: &[Vec<String>],
    u: Option<&[Vec<String>]>,
    f: Option<&str>,
    coords: &CoordinateSystem,
) -> Result<MetricSource, ModelError> {
    let (p, n) = (coords.p(), coords.n());
    let rows = parse_matrix(g, p * n, p * n, "G", coords)?;
    let gt = DTensor::build("G^(alpha)(beta)_(i)(j)", &[T_UP.paired(), T_UP.paired(), S_LO.paired(), S_LO.paired()], p, n, Execution::Sequential, |x| {
        Ok(rows[x[0] * n + x[2]][x[1] * n + x[3]].clone())
    })?;
    for (idx, e) in gt.components() {
        only_depends_on(e, coords, &format!("G[{}]", index_key(&idx)), true)?;
        let sw = [idx[1], idx[0], idx[3], idx[2]];
        if !e.sym_eq(gt.get(&sw))? {
            return Err(ModelError::Symmetry {
                what: "G under (alpha,i)<->(beta,j)".into(),
                a: format!("[{}]", index_key(&idx)),
                b: format!("[{}]", index_key(&sw)),
            });
        }
    }
    let u_rows = match u {
        Some(u) => parse_matrix(u, p, n, "U", coords)?,
        None => vec![vec![Expr::zero(); n]; p],
    };
    let ut = DTensor::build("U^(alpha)_(i)", &[T_UP.paired(), S_LO.paired()], p, n, Execution::Sequential, |x| Ok(u_rows[x[0]][x[1]].clone()))?;
    for (idx, e) in ut.components() {
        only_depends_on(e, coords, &format!("U[{}]", index_key(&idx)), true)?;
    }
    let f = match f {
        Some(s) => parse_normalized(s, coords).map_err(expr_err("F"))?,
        None => Expr::zero(),
    };
    only_depends_on(&f, coords, "F", true)?;
    Ok(MetricSource::Components { g: gt, u: ut, f })
}

fn sample_point(m: &BTreeMap<String, f64>, coords: &CoordinateSystem) -> Result<Point, ModelError> {
    let mut values = vec![0.0; coords.len()];
    let mut seen = vec![false; coords.len()];
    for (name, v) in m {
        let c = coords
            .lookup(name)
            .ok_or_else(|| ModelError::Schema(format!("sample point names unknown coordinate '{name}'")))?;
        values[c.index()] = *v;
        seen[c.index()] = true;
    }
    for c in coords.coords() {
        if !seen[c.index()] && !coords.is_velocity(c) {
            return Err(ModelError::Sym(SymError::MissingCoordinate(coords.name(c).to_string())));
        }
    }
    Ok(Point::new(coords, values)?)
}

fn corruption(c: &CorruptFile, coords: &CoordinateSystem) -> Result<Corruption, ModelError> {
    let family = Family::parse(&c.family).ok_or_else(|| ModelError::Schema(format!("corrupt: unknown family '{}'", c.family)))?;
    let (p, n) = (coords.p(), coords.n());
    // extents in storage order, see the geometry module
    let shape: &[usize] = match family {
        Family::H => &[p, p, p],
        Family::Gt => &[n, n, p],
        Family::L => &[n, n, n],
        Family::C => &[n, p, n, n],
        Family::M => &[n, p, p],
        Family::N => &[n, p, n],
    };
    if c.index.len() != shape.len() || c.index.iter().zip(shape).any(|(i, s)| *i == 0 || i > s) {
        return Err(ModelError::Schema(format!("corrupt: index {:?} does not fit {} with extents {:?}", c.index, c.family, shape)));
    }
    let delta = parse_normalized(&c.add, coords).map_err(expr_err("corrupt.add"))?;
    Ok(Corruption { family, index: c.index.iter().map(|i| i - 1).collect(), delta })
}

/// `G^(α)(β)_(i)(j) = ½ ∂²L/∂x^i_α ∂x^j_β`, stored as `[α, β, i, j]`.
pub fn hessian_metric(l: &Expr, coords: &CoordinateSystem, exec: Execution) -> Result<DTensor, ModelError> {
    let (p, n) = (coords.p(), coords.n());
    let half = Expr::ratio(1, 2);
    let first: Vec<Expr> = exec.try_map(p * n, |k| l.diff(coords.v(k % n, k / n)))?;
    let g = DTensor::build("G^(alpha)(beta)_(i)(j)", &[T_UP.paired(), T_UP.paired(), S_LO.paired(), S_LO.paired()], p, n, exec, |x| {
        let [a, b, i, j] = x[..] else { unreachable!() };
        (half.clone() * first[a * n + i].diff(coords.v(j, b))?).normalize()
    })?;
    for (idx, e) in g.components() {
        if let Some(v) = e.free_coords().into_iter().find(|c| coords.is_velocity(*c)) {
            return Err(ModelError::NotQuadratic {
                component: format!("G[{}]", index_key(&idx)),
                name: coords.name(v).to_string(),
            });
        }
    }
    Ok(g)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpatialMetric {
    /// `g_ij`.
    pub g: DTensor,
    /// `g^ij`.
    pub g_inv: DTensor,
    /// Eigenvalue signs of `g` at each sample point.
    pub inertia: Vec<Inertia>,
}

impl SpatialMetric {
    pub fn matrix(&self) -> Matrix {
        let n = self.g.shape()[0];
        (0..n).map(|i| (0..n).map(|j| self.g.get(&[i, j]).clone()).collect()).collect()
    }
}

/// `g_ij = (1/p) h_μν G^(μ)(ν)_(i)(j)` with inverse and sample-point checks.
pub fn spatial_metric(
    big_g: &DTensor,
    h: &DTensor,
    coords: &CoordinateSystem,
    samples: &[Point],
    exec: Execution,
) -> Result<SpatialMetric, ModelError> {
    let (p, n) = (coords.p(), coords.n());
    let scale = Expr::ratio(1, p as i64);
    let g = DTensor::build("g_ij", &[S_LO, S_LO], p, n, exec, |x| {
        let mut terms = Vec::new();
        for mu in 0..p {
            for nu in 0..p {
                terms.push(h.get(&[mu, nu]).clone() * big_g.get(&[mu, nu, x[0], x[1]]).clone());
            }
        }
        (scale.clone() * Expr::sum(terms)).normalize()
    })?
    .with_symmetry(Symmetry::Symmetric(0, 1));
    check_symmetric(&g, "g")?;
    for (idx, e) in g.components() {
        only_depends_on(e, coords, &format!("g[{}]", index_key(&idx)), true)?;
    }
    let m: Matrix = (0..n).map(|i| (0..n).map(|j| g.get(&[i, j]).clone()).collect()).collect();
    let inv = linalg::inverse(&m)?.ok_or(ModelError::SingularGSymbolic)?;
    let g_inv = DTensor::build("g^ij", &[S_UP, S_UP], p, n, Execution::Sequential, |x| Ok(inv[x[0]][x[1]].clone()))?;

    let mut inertia: Vec<Inertia> = Vec::new();
    for at in samples {
        let num = linalg::numeric(&m, at)?;
        if num.determinant().abs() < SINGULAR_TOL {
            return Err(ModelError::SingularG { point: at.to_string() });
        }
        let here = linalg::inertia(&num);
        if let Some(first) = inertia.first() {
            if *first != here {
                return Err(ModelError::SignatureChange {
                    first: *first,
                    first_point: samples[0].to_string(),
                    other: here,
                    other_point: at.to_string(),
                });
            }
        }
        inertia.push(here);
    }
    Ok(SpatialMetric { g, g_inv, inertia })
}

#[derive(Debug, Clone, PartialEq)]
pub struct KroneckerMetric {
    /// `𝒢^(α)(β)_(i)(j) = h^αβ g_ij` as `[α, β, i, j]`.
    pub tensor: DTensor,
    /// Whether `𝒢` equals the user's `G`; `None` for a Lagrangian source.
    pub matches_input: Option<bool>,
}

pub fn kronecker_metric(
    g: &SpatialMetric,
    h_inv: &DTensor,
    input: Option<&DTensor>,
    coords: &CoordinateSystem,
    exec: Execution,
) -> Result<KroneckerMetric, ModelError> {
    let (p, n) = (coords.p(), coords.n());
    let tensor = DTensor::build("Gk^(alpha)(beta)_(i)(j)", &[T_UP.paired(), T_UP.paired(), S_LO.paired(), S_LO.paired()], p, n, exec, |x| {
        (h_inv.get(&[x[0], x[1]]).clone() * g.g.get(&[x[2], x[3]]).clone()).normalize()
    })?;
    let matches_input = match input {
        None => None,
        Some(big_g) => {
            let test = crate::symkernel::ZeroTest::default();
            let mut all = true;
            for (idx, e) in tensor.components() {
                let d = e.clone() - big_g.get(&idx).clone();
                if !crate::symkernel::is_zero(&d, coords, &test)?.is_zero() {
                    all = false;
                    break;
                }
            }
            Some(all)
        }
    };
    Ok(KroneckerMetric { tensor, matches_input })
}

#[cfg(test)]
mod tests {
    use super::*;

    const FLAT: &str = r#"
p = 1
n = 2
h = [["1"]]
lagrangian = "v1_1^2 + v2_1^2"
[[sample_points]]
t1 = 0.5
x1 = 0.3
x2 = 0.7
"#;

    #[test]
    fn flat_model_loads() {
        let m = ModelSpec::from_toml_str(FLAT).unwrap();
        assert_eq!((m.p(), m.n()), (1, 2));
        assert!(matches!(m.source, MetricSource::Lagrangian(_)));
        assert_eq!(m.sample_points[0].values(), &[0.5, 0.3, 0.7, 0.0, 0.0]);
        assert_eq!(m.einstein_constant, Rational::from_integer(1.into()));
    }

    #[test]
    fn asymmetric_h_is_rejected() {
        let text = r#"
p = 2
n = 1
h = [["t1", "1"], ["0", "1"]]
lagrangian = "v1_1^2"
[[sample_points]]
t1 = 0.5
t2 = 0.5
x1 = 0.5
"#;
        match ModelSpec::from_toml_str(text) {
            Err(ModelError::Symmetry { what, a, b }) => {
                assert_eq!(what, "h");
                assert_eq!((a.as_str(), b.as_str()), ("[1,2]", "[2,1]"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn singular_h_at_sample_point() {
        let text = FLAT.replace(r#"h = [["1"]]"#, r#"h = [["t1"]]"#).replace("t1 = 0.5", "t1 = 0");
        assert!(matches!(ModelSpec::from_toml_str(&text), Err(ModelError::SingularH { .. })));
    }

    #[test]
    fn h_must_be_temporal() {
        let text = FLAT.replace(r#"h = [["1"]]"#, r#"h = [["x1"]]"#);
        assert!(matches!(ModelSpec::from_toml_str(&text), Err(ModelError::Dependency { .. })));
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(ModelSpec::from_toml_str("p = 1"), Err(ModelError::Schema(_))));
        let both = FLAT.replace("lagrangian", "G = [[\"1\",\"0\"],[\"0\",\"1\"]]\nlagrangian");
        assert!(matches!(ModelSpec::from_toml_str(&both), Err(ModelError::Schema(_))));
        let bad = FLAT.replace("v1_1^2 +", "v1_1^2 + y +");
        assert!(matches!(ModelSpec::from_toml_str(&bad), Err(ModelError::Expression { .. })));
        let k0 = format!("einstein_constant = \"0\"\n{FLAT}");
        assert!(matches!(ModelSpec::from_toml_str(&k0), Err(ModelError::Schema(_))));
        let missing = FLAT.replace("x2 = 0.7", "");
        assert!(matches!(ModelSpec::from_toml_str(&missing), Err(ModelError::Sym(SymError::MissingCoordinate(_)))));
    }

    #[test]
    fn hessian_of_sum_of_squares_is_identity() {
        let cs = CoordinateSystem::new(1, 2).unwrap();
        let l = parse_normalized("v1_1^2 + v2_1^2", &cs).unwrap();
        let g = hessian_metric(&l, &cs, Execution::Sequential).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(g.get(&[0, 0, i, j]), &crate::tensor::delta(i, j));
            }
        }
    }

    #[test]
    fn cubic_lagrangian_is_not_quadratic() {
        let cs = CoordinateSystem::new(1, 1).unwrap();
        let l = parse_normalized("v1_1^3", &cs).unwrap();
        match hessian_metric(&l, &cs, Execution::Sequential) {
            Err(ModelError::NotQuadratic { name, .. }) => assert_eq!(name, "v1_1"),
            other => panic!("{other:?}"),
        }
    }
}
