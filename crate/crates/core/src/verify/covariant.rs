//! The three local covariant derivatives `/γ`, `|k` and `|^(γ)_(k)` of the
//! Cartan connection on pure (0,2) d-tensors.

use crate::exec::Execution;
use crate::geometry::calc::{Calculus, Symbolic};
use crate::geometry::connection::{delta_t, delta_x};
use crate::geometry::{CartanConnection, NonlinearConnection};
use crate::symkernel::{CoordinateSystem, SymError};
use crate::tensor::{DTensor, IndexSlot, S_LO, T_LO, T_UP};

use super::VerifyError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricClass {
    /// `h`-like, both slots temporal.
    Temporal,
    /// `g`-like, both slots spatial.
    Spatial,
}

impl MetricClass {
    fn slot(self) -> IndexSlot {
        match self {
            MetricClass::Temporal => T_LO,
            MetricClass::Spatial => S_LO,
        }
    }

    fn extent(self, cs: &CoordinateSystem) -> usize {
        match self {
            MetricClass::Temporal => cs.p(),
            MetricClass::Spatial => cs.n(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CovariantDerivatives {
    /// `T_ab/γ` as `[a, b, γ]`.
    pub slash: DTensor,
    /// `T_ab|k` as `[a, b, k]`.
    pub bar: DTensor,
    /// `T_ab|^(γ)_(k)` as `[γ, a, b, k]`.
    pub vertical: DTensor,
}

impl CovariantDerivatives {
    pub fn all(&self) -> [&DTensor; 3] {
        [&self.slash, &self.bar, &self.vertical]
    }
}

/// `T_ab/γ = δT_ab/δt^γ − T_mb Q^m_aγ − T_am Q^m_bγ` with `Q = G` on spatial
/// slots and `Q = H` on temporal ones.
pub fn slash_at<C: Calculus>(
    c: &C,
    t: &DTensor,
    class: MetricClass,
    cartan: &CartanConnection,
    conn: &NonlinearConnection,
    cs: &CoordinateSystem,
    idx: &[usize],
) -> Result<C::V, SymError> {
    let [a, b, g] = idx[..] else { unreachable!() };
    let q = |m: usize, a: usize| match class {
        MetricClass::Temporal => cartan.h.get(&[m, a, g]),
        MetricClass::Spatial => cartan.gt.get(&[m, a, g]),
    };
    let mut terms = vec![delta_t(c, t.get(&[a, b]), g, conn, cs)?];
    for m in 0..class.extent(cs) {
        terms.push(-(c.val(t.get(&[m, b]))? * c.val(q(m, a))?));
        terms.push(-(c.val(t.get(&[a, m]))? * c.val(q(m, b))?));
    }
    Ok(c.sum(terms))
}

/// `T_ij|k = δT_ij/δx^k − T_mj L^m_ik − T_im L^m_jk`; a temporal `T` has no
/// connection terms in this direction.
pub fn bar_at<C: Calculus>(
    c: &C,
    t: &DTensor,
    class: MetricClass,
    cartan: &CartanConnection,
    conn: &NonlinearConnection,
    cs: &CoordinateSystem,
    idx: &[usize],
) -> Result<C::V, SymError> {
    let [a, b, k] = idx[..] else { unreachable!() };
    let mut terms = vec![delta_x(c, t.get(&[a, b]), k, conn, cs)?];
    if class == MetricClass::Spatial {
        for m in 0..cs.n() {
            terms.push(-(c.val(t.get(&[m, b]))? * c.val(cartan.l.get(&[m, a, k]))?));
            terms.push(-(c.val(t.get(&[a, m]))? * c.val(cartan.l.get(&[m, b, k]))?));
        }
    }
    Ok(c.sum(terms))
}

/// `T_ij|^(γ)_(k) = ∂T_ij/∂x^k_γ − T_mj C^m(γ)_i(k) − T_im C^m(γ)_j(k)`; a
/// temporal `T` has no connection terms in this direction.
pub fn vertical_at<C: Calculus>(
    c: &C,
    t: &DTensor,
    class: MetricClass,
    cartan: &CartanConnection,
    cs: &CoordinateSystem,
    idx: &[usize],
) -> Result<C::V, SymError> {
    let [g, a, b, k] = idx[..] else { unreachable!() };
    let mut terms = vec![c.d(t.get(&[a, b]), cs.v(k, g))?];
    if class == MetricClass::Spatial {
        for m in 0..cs.n() {
            terms.push(-(c.val(t.get(&[m, b]))? * c.val(cartan.c.get(&[m, g, a, k]))?));
            terms.push(-(c.val(t.get(&[a, m]))? * c.val(cartan.c.get(&[m, g, b, k]))?));
        }
    }
    Ok(c.sum(terms))
}

pub fn covariant_derivative_02(
    t: &DTensor,
    class: MetricClass,
    cartan: &CartanConnection,
    conn: &NonlinearConnection,
    cs: &CoordinateSystem,
    exec: Execution,
) -> Result<CovariantDerivatives, VerifyError> {
    let slot = class.slot();
    if t.signature() != [slot, slot] {
        return Err(VerifyError::ClassMismatch { name: t.name().to_string(), expected: format!("{slot}{slot}") });
    }
    for (_, e) in t.components() {
        if let Some(v) = e.free_coords().into_iter().find(|c| cs.is_velocity(*c)) {
            return Err(VerifyError::VelocityDependent { name: t.name().to_string(), coord: cs.name(v).to_string() });
        }
    }
    let s = Symbolic;
    let name = t.name();
    let build = |suffix: &str, sig: &[IndexSlot], f: &(dyn Fn(&[usize]) -> Result<crate::symkernel::Expr, SymError> + Sync)| {
        DTensor::build(format!("{name}{suffix}"), sig, cs.p(), cs.n(), exec, |x| f(x)?.normalize())
    };
    let slash = build("/gamma", &[slot, slot, T_LO], &|x| slash_at(&s, t, class, cartan, conn, cs, x))?;
    let bar = build("|k", &[slot, slot, S_LO], &|x| bar_at(&s, t, class, cartan, conn, cs, x))?;
    let vertical = build("|^(gamma)_(k)", &[T_UP.paired(), slot, slot, S_LO.paired()], &|x| vertical_at(&s, t, class, cartan, cs, x))?;
    Ok(CovariantDerivatives { slash, bar, vertical })
}
