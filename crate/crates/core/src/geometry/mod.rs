//! The formula chain from a model to its connections, torsions, curvatures,
//! Ricci and Einstein blocks and electromagnetic tensors.

pub mod calc;
pub mod connection;
pub mod curvature;
pub mod fields;
pub mod frame;
pub mod torsion;

use thiserror::Error;

use crate::exec::Execution;
use crate::model::{self, Corruption, Family, KroneckerMetric, ModelError, ModelSpec, SpatialMetric};
use crate::symkernel::{CoordinateSystem, Expr, SymError};
use crate::tensor::{index_key, DTensor, IndexSlot};

pub use connection::{CartanConnection, NonlinearConnection};
pub use curvature::{CurvatureSet, EinsteinBlocks, RicciSet};
pub use fields::{ElectromagneticSet, Potential};
pub use torsion::TorsionSet;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Sym(#[from] SymError),
}

/// Normalized tensor built from a symbolic component formula.
pub(crate) fn sym_tensor<F>(name: &str, sig: &[IndexSlot], cs: &CoordinateSystem, exec: Execution, f: F) -> Result<DTensor, SymError>
where
    F: Fn(&[usize]) -> Result<Expr, SymError> + Sync + Send,
{
    DTensor::build(name, sig, cs.p(), cs.n(), exec, |x| f(x)?.normalize())
}

/// A named claim that every residual vanishes.
#[derive(Debug, Clone, PartialEq)]
pub struct Identity {
    pub name: String,
    /// `(index key, residual)`.
    pub residuals: Vec<(String, Expr)>,
}

impl Identity {
    pub fn zero(name: &str, t: &DTensor) -> Self {
        Self { name: name.into(), residuals: t.components().map(|(i, e)| (index_key(&i), e.clone())).collect() }
    }

    /// `a − b` componentwise; the tensors must share a shape.
    pub fn difference(name: &str, a: &DTensor, b: &DTensor) -> Self {
        assert_eq!(a.shape(), b.shape(), "{name}: shape mismatch");
        let residuals = a.components().map(|(i, e)| (index_key(&i), e.clone() - b.get(&i).clone())).collect();
        Self { name: name.into(), residuals }
    }

    /// One residual per component of `t`, from `f(index, component)`.
    pub fn build<F>(name: &str, t: &DTensor, f: F) -> Result<Self, SymError>
    where
        F: Fn(&[usize], &Expr) -> Result<Expr, SymError>,
    {
        let residuals = t.components().map(|(i, e)| Ok((index_key(&i), f(&i, e)?))).collect::<Result<_, SymError>>()?;
        Ok(Self { name: name.into(), residuals })
    }

    /// The tagged symmetries of `t`.
    pub fn symmetry(t: &DTensor) -> Option<Self> {
        if t.symmetries().is_empty() {
            return None;
        }
        Some(Self { name: format!("symmetry.{}", t.name()), residuals: t.symmetry_defects() })
    }
}

/// Every derived object for one model.
#[derive(Debug, Clone, PartialEq)]
pub struct Geometry {
    pub spec: ModelSpec,
    pub h_inv: DTensor,
    /// The velocity Hessian `G^(α)(β)_(i)(j)`.
    pub vertical: DTensor,
    pub metric: SpatialMetric,
    pub kronecker: KroneckerMetric,
    /// `H^γ_αβ` from `h`, before any corruption of the Cartan copy.
    pub christoffel_t: DTensor,
    pub gamma: DTensor,
    pub conn: NonlinearConnection,
    pub cartan: CartanConnection,
    pub gt_closed: DTensor,
    pub torsion: TorsionSet,
    pub curvature: CurvatureSet,
    pub ricci: RicciSet,
    pub einstein: EinsteinBlocks,
    pub em: ElectromagneticSet,
    pub potential: Potential,
}

fn perturb(t: &mut DTensor, c: &Corruption) -> Result<(), SymError> {
    let v = (t.get(&c.index).clone() + c.delta.clone()).normalize()?;
    t.set(&c.index, v);
    Ok(())
}

impl Geometry {
    pub fn compute(spec: &ModelSpec, exec: Execution) -> Result<Self, GeometryError> {
        let cs = &spec.coords;
        let h_inv = spec.h_inverse()?;
        let vertical = spec.vertical_metric(exec)?;
        let metric = model::spatial_metric(&vertical, &spec.h, cs, &spec.sample_points, exec)?;
        let input = match spec.source {
            model::MetricSource::Components { .. } => Some(&vertical),
            model::MetricSource::Lagrangian(_) => None,
        };
        let kronecker = model::kronecker_metric(&metric, &h_inv, input, cs, exec)?;
        let (g, g_inv) = (&metric.g, &metric.g_inv);

        let christoffel_t = connection::temporal_christoffel(&spec.h, &h_inv, cs, exec)?;
        let gamma = connection::spatial_christoffel(g, g_inv, cs, exec)?;
        let mut conn = connection::nonlinear_connection(&christoffel_t, &gamma, g, g_inv, cs, exec)?;
        let corrupt = spec.corruption.as_ref();
        match corrupt {
            Some(c @ Corruption { family: Family::M, .. }) => perturb(&mut conn.m, c)?,
            Some(c @ Corruption { family: Family::N, .. }) => perturb(&mut conn.n, c)?,
            _ => {}
        }
        let mut cartan = connection::cartan_connection(&christoffel_t, g, g_inv, &conn, cs, exec)?;
        if let Some(c) = corrupt {
            match c.family {
                Family::H => perturb(&mut cartan.h, c)?,
                Family::Gt => perturb(&mut cartan.gt, c)?,
                Family::L => perturb(&mut cartan.l, c)?,
                Family::C => perturb(&mut cartan.c, c)?,
                Family::M | Family::N => {}
            }
        }
        let gt_closed = connection::gt_closed_form(g, g_inv, cs, exec)?;
        let torsion = torsion::torsion_set(&cartan, &conn, cs, exec)?;
        let curvature = curvature::curvature_set(&cartan, &conn, &torsion, cs, exec)?;
        let ricci = curvature::ricci_set(&curvature, &h_inv, g_inv, cs, exec)?;
        let einstein = curvature::einstein_blocks(&ricci, &spec.h, &h_inv, g, &spec.einstein_constant, cs, exec)?;
        let em = fields::electromagnetism(g, &h_inv, cs, exec)?;
        let potential = fields::gravitational_potential(&spec.h, g, &kronecker.tensor, exec)?;
        Ok(Self {
            spec: spec.clone(),
            h_inv,
            vertical,
            metric,
            kronecker,
            christoffel_t,
            gamma,
            conn,
            cartan,
            gt_closed,
            torsion,
            curvature,
            ricci,
            einstein,
            em,
            potential,
        })
    }

    pub fn coords(&self) -> &CoordinateSystem {
        &self.spec.coords
    }

    /// The reduction claims of the connection, torsion, curvature, Ricci and
    /// electromagnetic families, plus every tagged symmetry, built from the
    /// stored tensors.
    pub fn identities(&self) -> Result<Vec<Identity>, SymError> {
        let cs = self.coords();
        let mut out = connection::cartan_identities(&self.cartan, &self.gamma, &self.gt_closed);
        out.extend(connection::nonlinear_identities(&self.conn, &self.cartan, &self.gamma, &self.metric.g, &self.metric.g_inv, cs)?);
        out.extend(torsion::torsion_identities(&self.torsion, &self.cartan, &self.conn, cs)?);
        out.extend(curvature::curvature_identities(&self.curvature));
        out.extend(curvature::ricci_identities(&self.ricci));
        out.extend(fields::em_identities(&self.em));
        let tagged = [&self.cartan.h, &self.gamma, &self.cartan.l, &self.torsion.r_tt, &self.torsion.r_xx]
            .into_iter()
            .chain(self.curvature.all());
        out.extend(tagged.filter_map(Identity::symmetry));
        Ok(out)
    }
}
