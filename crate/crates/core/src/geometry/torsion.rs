//! Adapted torsion d-tensors of the Cartan connection.

use crate::exec::Execution;
use crate::symkernel::{CoordinateSystem, SymError};
use crate::tensor::{DTensor, Symmetry, S_LO, S_UP, T_LO, T_UP};

use super::calc::{Calculus, Symbolic};
use super::connection::{delta_t, delta_x, CartanConnection, NonlinearConnection};
use super::frame::{bracket_at, bracket_vertical_at, delta_t_field, delta_x_field};
use super::{sym_tensor, Identity};

#[derive(Debug, Clone, PartialEq)]
pub struct TorsionSet {
    /// `T^m_αj` as `[m, α, j]`.
    pub t: DTensor,
    /// `P^m(β)_i(j)` as `[m, β, i, j]`.
    pub p_ij: DTensor,
    /// `P^(m)(β)_(μ)i(j)` as `[m, β, μ, i, j]`.
    pub p_mu_ij: DTensor,
    /// `P^(m)(β)_(μ)α(j)` as `[m, β, μ, α, j]`.
    pub p_mu_alpha_j: DTensor,
    /// `R^(m)_(μ)αβ` as `[m, μ, α, β]`.
    pub r_tt: DTensor,
    /// `R^(m)_(μ)αj` as `[m, μ, α, j]`.
    pub r_tx: DTensor,
    /// `R^(m)_(μ)ij` as `[m, μ, i, j]`.
    pub r_xx: DTensor,
    /// `S^(m)(α)(β)_(μ)(i)(j)` as `[m, α, β, μ, i, j]`.
    pub s: DTensor,
}

impl TorsionSet {
    pub fn all(&self) -> [&DTensor; 8] {
        [&self.t, &self.p_ij, &self.p_mu_ij, &self.p_mu_alpha_j, &self.r_tt, &self.r_tx, &self.r_xx, &self.s]
    }
}

/// Horizontal part of `T(δ/δx^j, δ/δt^α) = ∇_j δ_α − ∇_α δ_j − [δ_j, δ_α]`
/// along `δ/δx^m`; `∇_j δ_α` has no spatial part and `∇_α δ_j = G^m_jα δ_m`.
pub fn t_at<C: Calculus>(c: &C, gt: &DTensor, conn: &NonlinearConnection, cs: &CoordinateSystem, idx: &[usize]) -> Result<C::V, SymError> {
    let [m, a, j] = idx[..] else { unreachable!() };
    let bracket = bracket_at(c, &delta_x_field(j, conn, cs), &delta_t_field(a, conn, cs), cs.x(m).index(), cs)?;
    Ok(-c.val(gt.get(&[m, j, a]))? - bracket)
}

/// `P^(m)(β)_(μ)i(j) = ∂N^(m)_(μ)i/∂x^j_β − δ^β_μ L^m_ij`.
pub fn p_mu_ij_at<C: Calculus>(c: &C, l: &DTensor, conn: &NonlinearConnection, cs: &CoordinateSystem, idx: &[usize]) -> Result<C::V, SymError> {
    let [m, b, mu, i, j] = idx[..] else { unreachable!() };
    Ok(c.d(conn.n.get(&[m, mu, i]), cs.v(j, b))? - c.kron(b, mu) * c.val(l.get(&[m, i, j]))?)
}

/// `P^(m)(β)_(μ)α(j) = ∂M^(m)_(μ)α/∂x^j_β − δ^β_μ G^m_jα + δ^m_j H^β_μα`.
pub fn p_mu_alpha_j_at<C: Calculus>(
    c: &C,
    cartan: &CartanConnection,
    conn: &NonlinearConnection,
    cs: &CoordinateSystem,
    idx: &[usize],
) -> Result<C::V, SymError> {
    let [m, b, mu, a, j] = idx[..] else { unreachable!() };
    Ok(c.d(conn.m.get(&[m, mu, a]), cs.v(j, b))? - c.kron(b, mu) * c.val(cartan.gt.get(&[m, j, a]))?
        + c.kron(m, j) * c.val(cartan.h.get(&[b, mu, a]))?)
}

/// `R^(m)_(μ)αβ = δM^(m)_(μ)α/δt^β − δM^(m)_(μ)β/δt^α`.
pub fn r_tt_at<C: Calculus>(c: &C, conn: &NonlinearConnection, cs: &CoordinateSystem, idx: &[usize]) -> Result<C::V, SymError> {
    let [m, mu, a, b] = idx[..] else { unreachable!() };
    Ok(delta_t(c, conn.m.get(&[m, mu, a]), b, conn, cs)? - delta_t(c, conn.m.get(&[m, mu, b]), a, conn, cs)?)
}

/// `R^(m)_(μ)αj = δM^(m)_(μ)α/δx^j − δN^(m)_(μ)j/δt^α`.
pub fn r_tx_at<C: Calculus>(c: &C, conn: &NonlinearConnection, cs: &CoordinateSystem, idx: &[usize]) -> Result<C::V, SymError> {
    let [m, mu, a, j] = idx[..] else { unreachable!() };
    Ok(delta_x(c, conn.m.get(&[m, mu, a]), j, conn, cs)? - delta_t(c, conn.n.get(&[m, mu, j]), a, conn, cs)?)
}

/// `R^(m)_(μ)ij = δN^(m)_(μ)i/δx^j − δN^(m)_(μ)j/δx^i`.
pub fn r_xx_at<C: Calculus>(c: &C, conn: &NonlinearConnection, cs: &CoordinateSystem, idx: &[usize]) -> Result<C::V, SymError> {
    let [m, mu, i, j] = idx[..] else { unreachable!() };
    Ok(delta_x(c, conn.n.get(&[m, mu, i]), j, conn, cs)? - delta_x(c, conn.n.get(&[m, mu, j]), i, conn, cs)?)
}

/// `S^(m)(α)(β)_(μ)(i)(j) = δ^α_μ C^m(β)_i(j) − δ^β_μ C^m(α)_j(i)`.
pub fn s_at<C: Calculus>(c: &C, cc: &DTensor, idx: &[usize]) -> Result<C::V, SymError> {
    let [m, a, b, mu, i, j] = idx[..] else { unreachable!() };
    Ok(c.kron(a, mu) * c.val(cc.get(&[m, b, i, j]))? - c.kron(b, mu) * c.val(cc.get(&[m, a, j, i]))?)
}

pub fn torsion_set(cartan: &CartanConnection, conn: &NonlinearConnection, cs: &CoordinateSystem, exec: Execution) -> Result<TorsionSet, SymError> {
    let s = Symbolic;
    let t = sym_tensor("T^m_alphaj", &[S_UP, T_LO, S_LO], cs, exec, |x| t_at(&s, &cartan.gt, conn, cs, x))?;
    let p_ij = sym_tensor("P^m(beta)_i(j)", &[S_UP, T_UP.paired(), S_LO, S_LO.paired()], cs, exec, |x| {
        s.val(cartan.c.get(x))
    })?;
    let p_mu_ij = sym_tensor(
        "P^(m)(beta)_(mu)i(j)",
        &[S_UP.paired(), T_UP.paired(), T_LO.paired(), S_LO, S_LO.paired()],
        cs,
        exec,
        |x| p_mu_ij_at(&s, &cartan.l, conn, cs, x),
    )?;
    let p_mu_alpha_j = sym_tensor(
        "P^(m)(beta)_(mu)alpha(j)",
        &[S_UP.paired(), T_UP.paired(), T_LO.paired(), T_LO, S_LO.paired()],
        cs,
        exec,
        |x| p_mu_alpha_j_at(&s, cartan, conn, cs, x),
    )?;
    let r_tt = sym_tensor("R^(m)_(mu)alphabeta", &[S_UP.paired(), T_LO.paired(), T_LO, T_LO], cs, exec, |x| r_tt_at(&s, conn, cs, x))?
        .with_symmetry(Symmetry::Antisymmetric(2, 3));
    let r_tx = sym_tensor("R^(m)_(mu)alphaj", &[S_UP.paired(), T_LO.paired(), T_LO, S_LO], cs, exec, |x| r_tx_at(&s, conn, cs, x))?;
    let r_xx = sym_tensor("R^(m)_(mu)ij", &[S_UP.paired(), T_LO.paired(), S_LO, S_LO], cs, exec, |x| r_xx_at(&s, conn, cs, x))?
        .with_symmetry(Symmetry::Antisymmetric(2, 3));
    let st = sym_tensor(
        "S^(m)(alpha)(beta)_(mu)(i)(j)",
        &[S_UP.paired(), T_UP.paired(), T_UP.paired(), T_LO.paired(), S_LO.paired(), S_LO.paired()],
        cs,
        exec,
        |x| s_at(&s, &cartan.c, x),
    )?;
    Ok(TorsionSet { t, p_ij, p_mu_ij, p_mu_alpha_j, r_tt, r_tx, r_xx, s: st })
}

/// Reductions of the torsion families, plus the three `R` torsions against
/// the vertical parts of the brackets of the adapted basis.
pub fn torsion_identities(
    torsion: &TorsionSet,
    cartan: &CartanConnection,
    conn: &NonlinearConnection,
    cs: &CoordinateSystem,
) -> Result<Vec<Identity>, SymError> {
    let s = Symbolic;
    let mut out = vec![
        Identity::build("torsion.T_plus_Gt", &torsion.t, |x, e| Ok(e.clone() + cartan.gt.get(&[x[0], x[2], x[1]]).clone()))?,
        Identity::zero("torsion.P_i(j)_zero", &torsion.p_ij),
        Identity::zero("torsion.P_(mu)i(j)_zero", &torsion.p_mu_ij),
        Identity::build("torsion.P_(mu)alpha(j)_plus_Gt", &torsion.p_mu_alpha_j, |x, e| {
            let [m, b, mu, a, j] = x[..] else { unreachable!() };
            Ok(e.clone() + s.kron(b, mu) * cartan.gt.get(&[m, j, a]).clone())
        })?,
        Identity::zero("torsion.S_zero", &torsion.s),
    ];
    let dt: Vec<_> = (0..cs.p()).map(|a| delta_t_field(a, conn, cs)).collect();
    let dx: Vec<_> = (0..cs.n()).map(|i| delta_x_field(i, conn, cs)).collect();
    out.push(Identity::build("torsion.R_alphabeta_bracket", &torsion.r_tt, |x, e| {
        let [m, mu, a, b] = x[..] else { unreachable!() };
        Ok(bracket_vertical_at(&s, &dt[a], &dt[b], m, mu, conn, cs)? - e.clone())
    })?);
    out.push(Identity::build("torsion.R_alphaj_bracket", &torsion.r_tx, |x, e| {
        let [m, mu, a, j] = x[..] else { unreachable!() };
        Ok(bracket_vertical_at(&s, &dt[a], &dx[j], m, mu, conn, cs)? - e.clone())
    })?);
    out.push(Identity::build("torsion.R_ij_bracket", &torsion.r_xx, |x, e| {
        let [m, mu, i, j] = x[..] else { unreachable!() };
        Ok(bracket_vertical_at(&s, &dx[i], &dx[j], m, mu, conn, cs)? - e.clone())
    })?);
    Ok(out)
}
