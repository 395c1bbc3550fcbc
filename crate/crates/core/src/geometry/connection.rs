//! Christoffel symbols, the nonlinear connection, adapted derivatives and
//! the Cartan connection.

use crate::exec::Execution;
use crate::symkernel::{CoordinateSystem, Expr, SymError};
use crate::tensor::{DTensor, Symmetry, S_LO, S_UP, T_LO, T_UP};

use super::calc::{Calculus, Symbolic};
use super::{sym_tensor, Identity};

/// `H^γ_αβ = (h^γμ / 2)(∂h_μα/∂t^β + ∂h_μβ/∂t^α − ∂h_αβ/∂t^μ)`.
pub fn temporal_christoffel_at<C: Calculus>(
    c: &C,
    h: &DTensor,
    h_inv: &DTensor,
    cs: &CoordinateSystem,
    idx: &[usize],
) -> Result<C::V, SymError> {
    let [g, a, b] = idx[..] else { unreachable!() };
    let mut terms = Vec::new();
    for mu in 0..cs.p() {
        let bracket = c.d(h.get(&[mu, a]), cs.t(b))? + c.d(h.get(&[mu, b]), cs.t(a))? - c.d(h.get(&[a, b]), cs.t(mu))?;
        terms.push(c.val(h_inv.get(&[g, mu]))? * bracket);
    }
    Ok(c.rational(1, 2) * c.sum(terms))
}

pub fn temporal_christoffel(h: &DTensor, h_inv: &DTensor, cs: &CoordinateSystem, exec: Execution) -> Result<DTensor, SymError> {
    Ok(sym_tensor("H^gamma_alphabeta", &[T_UP, T_LO, T_LO], cs, exec, |x| temporal_christoffel_at(&Symbolic, h, h_inv, cs, x))?
        .with_symmetry(Symmetry::Symmetric(1, 2)))
}

/// `Γ^i_jk = (g^ir / 2)(∂g_jr/∂x^k + ∂g_kr/∂x^j − ∂g_jk/∂x^r)`.
pub fn spatial_christoffel_at<C: Calculus>(
    c: &C,
    g: &DTensor,
    g_inv: &DTensor,
    cs: &CoordinateSystem,
    idx: &[usize],
) -> Result<C::V, SymError> {
    let [i, j, k] = idx[..] else { unreachable!() };
    let mut terms = Vec::new();
    for r in 0..cs.n() {
        let bracket = c.d(g.get(&[j, r]), cs.x(k))? + c.d(g.get(&[k, r]), cs.x(j))? - c.d(g.get(&[j, k]), cs.x(r))?;
        terms.push(c.val(g_inv.get(&[i, r]))? * bracket);
    }
    Ok(c.rational(1, 2) * c.sum(terms))
}

pub fn spatial_christoffel(g: &DTensor, g_inv: &DTensor, cs: &CoordinateSystem, exec: Execution) -> Result<DTensor, SymError> {
    Ok(sym_tensor("Gamma^i_jk", &[S_UP, S_LO, S_LO], cs, exec, |x| spatial_christoffel_at(&Symbolic, g, g_inv, cs, x))?
        .with_symmetry(Symmetry::Symmetric(1, 2)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct NonlinearConnection {
    /// `M^(i)_(α)β` as `[i, α, β]`.
    pub m: DTensor,
    /// `N^(i)_(α)j` as `[i, α, j]`.
    pub n: DTensor,
}

/// `M^(i)_(α)β = −H^γ_αβ x^i_γ`.
pub fn m_at<C: Calculus>(c: &C, christoffel_t: &DTensor, cs: &CoordinateSystem, idx: &[usize]) -> Result<C::V, SymError> {
    let [i, a, b] = idx[..] else { unreachable!() };
    let mut terms = Vec::new();
    for g in 0..cs.p() {
        terms.push(c.val(christoffel_t.get(&[g, a, b]))? * c.val(&Expr::coord(cs.v(i, g)))?);
    }
    Ok(-c.sum(terms))
}

/// `N^(i)_(α)j = Γ^i_jm x^m_α + (g^im / 2) ∂g_jm/∂t^α`.
pub fn n_at<C: Calculus>(
    c: &C,
    gamma: &DTensor,
    g: &DTensor,
    g_inv: &DTensor,
    cs: &CoordinateSystem,
    idx: &[usize],
) -> Result<C::V, SymError> {
    let [i, a, j] = idx[..] else { unreachable!() };
    let half = c.rational(1, 2);
    let mut terms = Vec::new();
    for m in 0..cs.n() {
        terms.push(c.val(gamma.get(&[i, j, m]))? * c.val(&Expr::coord(cs.v(m, a)))?);
        terms.push(half.clone() * c.val(g_inv.get(&[i, m]))? * c.d(g.get(&[j, m]), cs.t(a))?);
    }
    Ok(c.sum(terms))
}

pub fn nonlinear_connection(
    christoffel_t: &DTensor,
    gamma: &DTensor,
    g: &DTensor,
    g_inv: &DTensor,
    cs: &CoordinateSystem,
    exec: Execution,
) -> Result<NonlinearConnection, SymError> {
    let m = sym_tensor("M^(i)_(alpha)beta", &[S_UP.paired(), T_LO.paired(), T_LO], cs, exec, |x| {
        m_at(&Symbolic, christoffel_t, cs, x)
    })?;
    let n = sym_tensor("N^(i)_(alpha)j", &[S_UP.paired(), T_LO.paired(), S_LO], cs, exec, |x| {
        n_at(&Symbolic, gamma, g, g_inv, cs, x)
    })?;
    Ok(NonlinearConnection { m, n })
}

/// `δe/δt^α = ∂e/∂t^α − M^(j)_(β)α ∂e/∂x^j_β`.
pub fn delta_t<C: Calculus>(
    c: &C,
    e: &Expr,
    alpha: usize,
    conn: &NonlinearConnection,
    cs: &CoordinateSystem,
) -> Result<C::V, SymError> {
    let mut terms = vec![c.d(e, cs.t(alpha))?];
    for j in 0..cs.n() {
        for b in 0..cs.p() {
            let v = cs.v(j, b);
            if e.depends_on(v) {
                terms.push(-(c.val(conn.m.get(&[j, b, alpha]))? * c.d(e, v)?));
            }
        }
    }
    Ok(c.sum(terms))
}

/// `δe/δx^i = ∂e/∂x^i − N^(j)_(β)i ∂e/∂x^j_β`.
pub fn delta_x<C: Calculus>(
    c: &C,
    e: &Expr,
    i: usize,
    conn: &NonlinearConnection,
    cs: &CoordinateSystem,
) -> Result<C::V, SymError> {
    let mut terms = vec![c.d(e, cs.x(i))?];
    for j in 0..cs.n() {
        for b in 0..cs.p() {
            let v = cs.v(j, b);
            if e.depends_on(v) {
                terms.push(-(c.val(conn.n.get(&[j, b, i]))? * c.d(e, v)?));
            }
        }
    }
    Ok(c.sum(terms))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CartanConnection {
    /// `H^γ_αβ` as `[γ, α, β]`.
    pub h: DTensor,
    /// `G^k_jγ` as `[k, j, γ]`.
    pub gt: DTensor,
    /// `L^i_jk` as `[i, j, k]`.
    pub l: DTensor,
    /// `C^i(γ)_j(k)` as `[i, γ, j, k]`.
    pub c: DTensor,
}

/// `G^k_jγ = (g^km / 2) δg_mj/δt^γ`.
pub fn gt_at<C: Calculus>(
    c: &C,
    g: &DTensor,
    g_inv: &DTensor,
    conn: &NonlinearConnection,
    cs: &CoordinateSystem,
    idx: &[usize],
) -> Result<C::V, SymError> {
    let [k, j, gm] = idx[..] else { unreachable!() };
    let mut terms = Vec::new();
    for m in 0..cs.n() {
        terms.push(c.val(g_inv.get(&[k, m]))? * delta_t(c, g.get(&[m, j]), gm, conn, cs)?);
    }
    Ok(c.rational(1, 2) * c.sum(terms))
}

/// `(g^km / 2) ∂g_mj/∂t^γ`, the closed form of `G^k_jγ`.
pub fn gt_closed_at<C: Calculus>(c: &C, g: &DTensor, g_inv: &DTensor, cs: &CoordinateSystem, idx: &[usize]) -> Result<C::V, SymError> {
    let [k, j, gm] = idx[..] else { unreachable!() };
    let mut terms = Vec::new();
    for m in 0..cs.n() {
        terms.push(c.val(g_inv.get(&[k, m]))? * c.d(g.get(&[m, j]), cs.t(gm))?);
    }
    Ok(c.rational(1, 2) * c.sum(terms))
}

/// `L^i_jk = (g^im / 2)(δg_jm/δx^k + δg_km/δx^j − δg_jk/δx^m)`.
pub fn l_at<C: Calculus>(
    c: &C,
    g: &DTensor,
    g_inv: &DTensor,
    conn: &NonlinearConnection,
    cs: &CoordinateSystem,
    idx: &[usize],
) -> Result<C::V, SymError> {
    let [i, j, k] = idx[..] else { unreachable!() };
    let mut terms = Vec::new();
    for m in 0..cs.n() {
        let bracket = delta_x(c, g.get(&[j, m]), k, conn, cs)? + delta_x(c, g.get(&[k, m]), j, conn, cs)?
            - delta_x(c, g.get(&[j, k]), m, conn, cs)?;
        terms.push(c.val(g_inv.get(&[i, m]))? * bracket);
    }
    Ok(c.rational(1, 2) * c.sum(terms))
}

/// `C^i(γ)_j(k) = (g^im / 2)(∂g_jm/∂x^k_γ + ∂g_km/∂x^j_γ − ∂g_jk/∂x^m_γ)`.
pub fn c_at<C: Calculus>(c: &C, g: &DTensor, g_inv: &DTensor, cs: &CoordinateSystem, idx: &[usize]) -> Result<C::V, SymError> {
    let [i, gm, j, k] = idx[..] else { unreachable!() };
    let mut terms = Vec::new();
    for m in 0..cs.n() {
        let bracket = c.d(g.get(&[j, m]), cs.v(k, gm))? + c.d(g.get(&[k, m]), cs.v(j, gm))? - c.d(g.get(&[j, k]), cs.v(m, gm))?;
        terms.push(c.val(g_inv.get(&[i, m]))? * bracket);
    }
    Ok(c.rational(1, 2) * c.sum(terms))
}

/// The Cartan coefficients from their general formulas, with `δ/δt`,
/// `δ/δx` and vertical partials acting on `g`.
pub fn cartan_connection(
    christoffel_t: &DTensor,
    g: &DTensor,
    g_inv: &DTensor,
    conn: &NonlinearConnection,
    cs: &CoordinateSystem,
    exec: Execution,
) -> Result<CartanConnection, SymError> {
    let gt = sym_tensor("G^k_jgamma", &[S_UP, S_LO, T_LO], cs, exec, |x| gt_at(&Symbolic, g, g_inv, conn, cs, x))?;
    let l = sym_tensor("L^i_jk", &[S_UP, S_LO, S_LO], cs, exec, |x| l_at(&Symbolic, g, g_inv, conn, cs, x))?
        .with_symmetry(Symmetry::Symmetric(1, 2));
    let c = sym_tensor("C^i(gamma)_j(k)", &[S_UP, T_UP.paired(), S_LO, S_LO.paired()], cs, exec, |x| {
        c_at(&Symbolic, g, g_inv, cs, x)
    })?;
    let h = christoffel_t.map("H^gamma_alphabeta", exec, |_, e| Ok(e.clone()))?.with_symmetry(Symmetry::Symmetric(1, 2));
    Ok(CartanConnection { h, gt, l, c })
}

pub fn gt_closed_form(g: &DTensor, g_inv: &DTensor, cs: &CoordinateSystem, exec: Execution) -> Result<DTensor, SymError> {
    sym_tensor("G^k_jgamma", &[S_UP, S_LO, T_LO], cs, exec, |x| gt_closed_at(&Symbolic, g, g_inv, cs, x))
}

/// Reductions of the general formulas: `G^k_jγ` from `δ/δt` equals its
/// `∂/∂t` form, `L = Γ` and `C = 0`.
pub fn cartan_identities(cartan: &CartanConnection, gamma: &DTensor, gt_closed: &DTensor) -> Vec<Identity> {
    vec![
        Identity::zero("cartan.C_zero", &cartan.c),
        Identity::difference("cartan.L_equals_Gamma", &cartan.l, gamma),
        Identity::difference("cartan.Gt_delta_equals_partial", &cartan.gt, gt_closed),
    ]
}

/// The canonical nonlinear connection re-derived from the Cartan `H` and `Γ`.
pub fn nonlinear_identities(
    conn: &NonlinearConnection,
    cartan: &CartanConnection,
    gamma: &DTensor,
    g: &DTensor,
    g_inv: &DTensor,
    cs: &CoordinateSystem,
) -> Result<Vec<Identity>, SymError> {
    let s = Symbolic;
    Ok(vec![
        Identity::build("nonlinear.M_canonical", &conn.m, |x, e| Ok(e.clone() - m_at(&s, &cartan.h, cs, x)?))?,
        Identity::build("nonlinear.N_canonical", &conn.n, |x, e| Ok(e.clone() - n_at(&s, gamma, g, g_inv, cs, x)?))?,
    ])
}
