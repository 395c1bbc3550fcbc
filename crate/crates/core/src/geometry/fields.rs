//! Deflection d-tensors, the electromagnetic 2-form and the gravitational
//! h-potential.

use crate::exec::Execution;
use crate::symkernel::{CoordinateSystem, SymError};
use crate::tensor::{DTensor, S_LO, T_UP};

use super::calc::{Calculus, Symbolic};
use super::{sym_tensor, Identity};

#[derive(Debug, Clone, PartialEq)]
pub struct ElectromagneticSet {
    /// `D^(α)_(i)j` as `[α, i, j]`.
    pub d_small: DTensor,
    /// `d^(α)(β)_(i)(j)` as `[α, β, i, j]`.
    pub d_vert: DTensor,
    /// `F^(α)_(i)j` as `[α, i, j]`.
    pub f_big: DTensor,
    /// `f^(α)(β)_(i)(j)` as `[α, β, i, j]`.
    pub f_vert: DTensor,
}

impl ElectromagneticSet {
    pub fn all(&self) -> [&DTensor; 4] {
        [&self.d_small, &self.d_vert, &self.f_big, &self.f_vert]
    }
}

/// `D^(α)_(i)j = −(h^αμ / 2) ∂g_ij/∂t^μ`.
pub fn deflection_at<C: Calculus>(c: &C, g: &DTensor, h_inv: &DTensor, cs: &CoordinateSystem, idx: &[usize]) -> Result<C::V, SymError> {
    let [a, i, j] = idx[..] else { unreachable!() };
    let mut terms = Vec::new();
    for mu in 0..cs.p() {
        terms.push(c.val(h_inv.get(&[a, mu]))? * c.d(g.get(&[i, j]), cs.t(mu))?);
    }
    Ok(-(c.rational(1, 2) * c.sum(terms)))
}

/// `d^(α)(β)_(i)(j) = h^αβ g_ij`.
pub fn vertical_deflection_at<C: Calculus>(c: &C, g: &DTensor, h_inv: &DTensor, idx: &[usize]) -> Result<C::V, SymError> {
    Ok(c.val(h_inv.get(&idx[..2]))? * c.val(g.get(&idx[2..]))?)
}

/// `F^(α)_(i)j = ½(D^(α)_(i)j − D^(α)_(j)i)`.
pub fn f_at<C: Calculus>(c: &C, d: &DTensor, idx: &[usize]) -> Result<C::V, SymError> {
    let [a, i, j] = idx[..] else { unreachable!() };
    Ok(c.rational(1, 2) * (c.val(d.get(&[a, i, j]))? - c.val(d.get(&[a, j, i]))?))
}

/// `f^(α)(β)_(i)(j) = ½(d^(α)(β)_(i)(j) − d^(α)(β)_(j)(i))`.
pub fn f_vert_at<C: Calculus>(c: &C, d: &DTensor, idx: &[usize]) -> Result<C::V, SymError> {
    let [a, b, i, j] = idx[..] else { unreachable!() };
    Ok(c.rational(1, 2) * (c.val(d.get(&[a, b, i, j]))? - c.val(d.get(&[a, b, j, i]))?))
}

pub fn electromagnetism(g: &DTensor, h_inv: &DTensor, cs: &CoordinateSystem, exec: Execution) -> Result<ElectromagneticSet, SymError> {
    let s = Symbolic;
    let pair = [T_UP.paired(), S_LO.paired(), S_LO];
    let vv = [T_UP.paired(), T_UP.paired(), S_LO.paired(), S_LO.paired()];
    let d_small = sym_tensor("D^(alpha)_(i)j", &pair, cs, exec, |x| deflection_at(&s, g, h_inv, cs, x))?;
    let d_vert = sym_tensor("d^(alpha)(beta)_(i)(j)", &vv, cs, exec, |x| vertical_deflection_at(&s, g, h_inv, x))?;
    let f_big = sym_tensor("F^(alpha)_(i)j", &pair, cs, exec, |x| f_at(&s, &d_small, x))?;
    let f_vert = sym_tensor("f^(alpha)(beta)_(i)(j)", &vv, cs, exec, |x| f_vert_at(&s, &d_vert, x))?;
    Ok(ElectromagneticSet { d_small, d_vert, f_big, f_vert })
}

pub fn em_identities(em: &ElectromagneticSet) -> Vec<Identity> {
    vec![Identity::zero("em.F_zero", &em.f_big), Identity::zero("em.f_zero", &em.f_vert)]
}

/// Diagonal blocks of `h dt⊗dt + g dx⊗dx + h^αβ g_ij δx⊗δx`.
#[derive(Debug, Clone, PartialEq)]
pub struct Potential {
    pub dt_dt: DTensor,
    pub dx_dx: DTensor,
    pub deltax_deltax: DTensor,
}

pub fn gravitational_potential(h: &DTensor, g: &DTensor, kronecker: &DTensor, exec: Execution) -> Result<Potential, SymError> {
    Ok(Potential {
        dt_dt: h.map("dt.dt", exec, |_, e| Ok(e.clone()))?,
        dx_dx: g.map("dx.dx", exec, |_, e| Ok(e.clone()))?,
        deltax_deltax: kronecker.map("deltax.deltax", exec, |_, e| Ok(e.clone()))?,
    })
}
