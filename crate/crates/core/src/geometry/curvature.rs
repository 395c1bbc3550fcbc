//! Adapted curvature d-tensors, the Ricci components, scalar curvature and
//! the local Einstein blocks.

use crate::exec::Execution;
use crate::symkernel::{CoordinateSystem, Expr, Rational, SymError};
use crate::tensor::{DTensor, Symmetry, S_LO, S_UP, T_LO, T_UP};

use super::calc::{Calculus, Symbolic};
use super::connection::{delta_t, delta_x, CartanConnection, NonlinearConnection};
use super::torsion::TorsionSet;
use super::{sym_tensor, Identity};

#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureSet {
    /// `H^α_ηβγ` as `[α, η, β, γ]`.
    pub h: DTensor,
    /// `R^l_iβγ` as `[l, i, β, γ]`.
    pub r_tt: DTensor,
    /// `R^l_iβk` as `[l, i, β, k]`.
    pub r_tx: DTensor,
    /// `R^l_ijk` as `[l, i, j, k]`.
    pub r_xx: DTensor,
    /// `P^l(γ)_iβ(k)` as `[l, γ, i, β, k]`.
    pub p_t: DTensor,
    /// `P^l(γ)_ij(k)` as `[l, γ, i, j, k]`.
    pub p_x: DTensor,
    /// `S^l(β)(γ)_i(j)(k)` as `[l, β, γ, i, j, k]`.
    pub s: DTensor,
}

impl CurvatureSet {
    pub fn all(&self) -> [&DTensor; 7] {
        [&self.h, &self.r_tt, &self.r_tx, &self.r_xx, &self.p_t, &self.p_x, &self.s]
    }
}

/// `H^α_ηβγ = ∂H^α_ηβ/∂t^γ − ∂H^α_ηγ/∂t^β + H^μ_ηβ H^α_μγ − H^μ_ηγ H^α_μβ`.
pub fn h4_at<C: Calculus>(c: &C, h: &DTensor, cs: &CoordinateSystem, idx: &[usize]) -> Result<C::V, SymError> {
    let [a, e, b, g] = idx[..] else { unreachable!() };
    let mut terms = vec![c.d(h.get(&[a, e, b]), cs.t(g))?, -c.d(h.get(&[a, e, g]), cs.t(b))?];
    for mu in 0..cs.p() {
        terms.push(c.val(h.get(&[mu, e, b]))? * c.val(h.get(&[a, mu, g]))?);
        terms.push(-(c.val(h.get(&[mu, e, g]))? * c.val(h.get(&[a, mu, b]))?));
    }
    Ok(c.sum(terms))
}

/// `R^l_iβγ = ∂G^l_iβ/∂t^γ − ∂G^l_iγ/∂t^β + G^m_iβ G^l_mγ − G^m_iγ G^l_mβ`.
pub fn r_tt_at<C: Calculus>(c: &C, gt: &DTensor, cs: &CoordinateSystem, idx: &[usize]) -> Result<C::V, SymError> {
    let [l, i, b, g] = idx[..] else { unreachable!() };
    let mut terms = vec![c.d(gt.get(&[l, i, b]), cs.t(g))?, -c.d(gt.get(&[l, i, g]), cs.t(b))?];
    for m in 0..cs.n() {
        terms.push(c.val(gt.get(&[m, i, b]))? * c.val(gt.get(&[l, m, g]))?);
        terms.push(-(c.val(gt.get(&[m, i, g]))? * c.val(gt.get(&[l, m, b]))?));
    }
    Ok(c.sum(terms))
}

/// `R^l_iβk = ∂G^l_iβ/∂x^k − ∂L^l_ik/∂t^β + G^m_iβ L^l_mk − L^m_ik G^l_mβ`.
pub fn r_tx_at<C: Calculus>(c: &C, gt: &DTensor, l_: &DTensor, cs: &CoordinateSystem, idx: &[usize]) -> Result<C::V, SymError> {
    let [l, i, b, k] = idx[..] else { unreachable!() };
    let mut terms = vec![c.d(gt.get(&[l, i, b]), cs.x(k))?, -c.d(l_.get(&[l, i, k]), cs.t(b))?];
    for m in 0..cs.n() {
        terms.push(c.val(gt.get(&[m, i, b]))? * c.val(l_.get(&[l, m, k]))?);
        terms.push(-(c.val(l_.get(&[m, i, k]))? * c.val(gt.get(&[l, m, b]))?));
    }
    Ok(c.sum(terms))
}

/// `R^l_ijk = ∂L^l_ij/∂x^k − ∂L^l_ik/∂x^j + L^m_ij L^l_mk − L^m_ik L^l_mj`.
pub fn r_xx_at<C: Calculus>(c: &C, l_: &DTensor, cs: &CoordinateSystem, idx: &[usize]) -> Result<C::V, SymError> {
    let [l, i, j, k] = idx[..] else { unreachable!() };
    let mut terms = vec![c.d(l_.get(&[l, i, j]), cs.x(k))?, -c.d(l_.get(&[l, i, k]), cs.x(j))?];
    for m in 0..cs.n() {
        terms.push(c.val(l_.get(&[m, i, j]))? * c.val(l_.get(&[l, m, k]))?);
        terms.push(-(c.val(l_.get(&[m, i, k]))? * c.val(l_.get(&[l, m, j]))?));
    }
    Ok(c.sum(terms))
}

/// `C^l(γ)_i(k)/β`: `δ/δt^β`, `G` on the spatial slots, `H` on `(γ)`.
fn c_slash<C: Calculus>(
    c: &C,
    cartan: &CartanConnection,
    conn: &NonlinearConnection,
    cs: &CoordinateSystem,
    [l, g, i, k, b]: [usize; 5],
) -> Result<C::V, SymError> {
    let (cc, gt) = (&cartan.c, &cartan.gt);
    let mut terms = vec![delta_t(c, cc.get(&[l, g, i, k]), b, conn, cs)?];
    for m in 0..cs.n() {
        terms.push(c.val(cc.get(&[m, g, i, k]))? * c.val(gt.get(&[l, m, b]))?);
        terms.push(-(c.val(cc.get(&[l, g, m, k]))? * c.val(gt.get(&[m, i, b]))?));
        terms.push(-(c.val(cc.get(&[l, g, i, m]))? * c.val(gt.get(&[m, k, b]))?));
    }
    for mu in 0..cs.p() {
        terms.push(c.val(cc.get(&[l, mu, i, k]))? * c.val(cartan.h.get(&[g, mu, b]))?);
    }
    Ok(c.sum(terms))
}

/// `C^l(γ)_i(k)|j`: `δ/δx^j` and `L` on the spatial slots.
fn c_bar<C: Calculus>(
    c: &C,
    cartan: &CartanConnection,
    conn: &NonlinearConnection,
    cs: &CoordinateSystem,
    [l, g, i, k, j]: [usize; 5],
) -> Result<C::V, SymError> {
    let (cc, ll) = (&cartan.c, &cartan.l);
    let mut terms = vec![delta_x(c, cc.get(&[l, g, i, k]), j, conn, cs)?];
    for m in 0..cs.n() {
        terms.push(c.val(cc.get(&[m, g, i, k]))? * c.val(ll.get(&[l, m, j]))?);
        terms.push(-(c.val(cc.get(&[l, g, m, k]))? * c.val(ll.get(&[m, i, j]))?));
        terms.push(-(c.val(cc.get(&[l, g, i, m]))? * c.val(ll.get(&[m, k, j]))?));
    }
    Ok(c.sum(terms))
}

/// `P^l(γ)_iβ(k) = ∂G^l_iβ/∂x^k_γ − C^l(γ)_i(k)/β + C^l(μ)_i(m) P^(m)(γ)_(μ)β(k)`.
pub fn p_t_at<C: Calculus>(
    c: &C,
    cartan: &CartanConnection,
    conn: &NonlinearConnection,
    torsion: &TorsionSet,
    cs: &CoordinateSystem,
    idx: &[usize],
) -> Result<C::V, SymError> {
    let [l, g, i, b, k] = idx[..] else { unreachable!() };
    let mut terms = vec![c.d(cartan.gt.get(&[l, i, b]), cs.v(k, g))?, -c_slash(c, cartan, conn, cs, [l, g, i, k, b])?];
    for mu in 0..cs.p() {
        for m in 0..cs.n() {
            terms.push(c.val(cartan.c.get(&[l, mu, i, m]))? * c.val(torsion.p_mu_alpha_j.get(&[m, g, mu, b, k]))?);
        }
    }
    Ok(c.sum(terms))
}

/// `P^l(γ)_ij(k) = ∂L^l_ij/∂x^k_γ − C^l(γ)_i(k)|j + C^l(μ)_i(m) P^(m)(γ)_(μ)j(k)`.
pub fn p_x_at<C: Calculus>(
    c: &C,
    cartan: &CartanConnection,
    conn: &NonlinearConnection,
    torsion: &TorsionSet,
    cs: &CoordinateSystem,
    idx: &[usize],
) -> Result<C::V, SymError> {
    let [l, g, i, j, k] = idx[..] else { unreachable!() };
    let mut terms = vec![c.d(cartan.l.get(&[l, i, j]), cs.v(k, g))?, -c_bar(c, cartan, conn, cs, [l, g, i, k, j])?];
    for mu in 0..cs.p() {
        for m in 0..cs.n() {
            terms.push(c.val(cartan.c.get(&[l, mu, i, m]))? * c.val(torsion.p_mu_ij.get(&[m, g, mu, j, k]))?);
        }
    }
    Ok(c.sum(terms))
}

/// `S^l(β)(γ)_i(j)(k) = ∂C^l(β)_i(j)/∂x^k_γ − ∂C^l(γ)_i(k)/∂x^j_β
/// + C^m(β)_i(j) C^l(γ)_m(k) − C^m(γ)_i(k) C^l(β)_m(j)`.
pub fn s_at<C: Calculus>(c: &C, cc: &DTensor, cs: &CoordinateSystem, idx: &[usize]) -> Result<C::V, SymError> {
    let [l, b, g, i, j, k] = idx[..] else { unreachable!() };
    let mut terms = vec![c.d(cc.get(&[l, b, i, j]), cs.v(k, g))?, -c.d(cc.get(&[l, g, i, k]), cs.v(j, b))?];
    for m in 0..cs.n() {
        terms.push(c.val(cc.get(&[m, b, i, j]))? * c.val(cc.get(&[l, g, m, k]))?);
        terms.push(-(c.val(cc.get(&[m, g, i, k]))? * c.val(cc.get(&[l, b, m, j]))?));
    }
    Ok(c.sum(terms))
}

pub fn curvature_set(
    cartan: &CartanConnection,
    conn: &NonlinearConnection,
    torsion: &TorsionSet,
    cs: &CoordinateSystem,
    exec: Execution,
) -> Result<CurvatureSet, SymError> {
    let s = Symbolic;
    let h = sym_tensor("H^alpha_etabetagamma", &[T_UP, T_LO, T_LO, T_LO], cs, exec, |x| h4_at(&s, &cartan.h, cs, x))?
        .with_symmetry(Symmetry::Antisymmetric(2, 3));
    let r_tt = sym_tensor("R^l_ibetagamma", &[S_UP, S_LO, T_LO, T_LO], cs, exec, |x| r_tt_at(&s, &cartan.gt, cs, x))?
        .with_symmetry(Symmetry::Antisymmetric(2, 3));
    let r_tx = sym_tensor("R^l_ibetak", &[S_UP, S_LO, T_LO, S_LO], cs, exec, |x| r_tx_at(&s, &cartan.gt, &cartan.l, cs, x))?;
    let r_xx = sym_tensor("R^l_ijk", &[S_UP, S_LO, S_LO, S_LO], cs, exec, |x| r_xx_at(&s, &cartan.l, cs, x))?
        .with_symmetry(Symmetry::Antisymmetric(2, 3));
    let p_t = sym_tensor("P^l(gamma)_ibeta(k)", &[S_UP, T_UP.paired(), S_LO, T_LO, S_LO.paired()], cs, exec, |x| {
        p_t_at(&s, cartan, conn, torsion, cs, x)
    })?;
    let p_x = sym_tensor("P^l(gamma)_ij(k)", &[S_UP, T_UP.paired(), S_LO, S_LO, S_LO.paired()], cs, exec, |x| {
        p_x_at(&s, cartan, conn, torsion, cs, x)
    })?;
    let st = sym_tensor(
        "S^l(beta)(gamma)_i(j)(k)",
        &[S_UP, T_UP.paired(), T_UP.paired(), S_LO, S_LO.paired(), S_LO.paired()],
        cs,
        exec,
        |x| s_at(&s, &cartan.c, cs, x),
    )?;
    Ok(CurvatureSet { h, r_tt, r_tx, r_xx, p_t, p_x, s: st })
}

pub fn curvature_identities(curv: &CurvatureSet) -> Vec<Identity> {
    vec![
        Identity::zero("curvature.P_ibeta(k)_zero", &curv.p_t),
        Identity::zero("curvature.P_ij(k)_zero", &curv.p_x),
        Identity::zero("curvature.S_zero", &curv.s),
    ]
}

#[derive(Debug, Clone, PartialEq)]
pub struct RicciSet {
    /// `H_αβ = H^μ_αβμ`.
    pub h: DTensor,
    /// `R_iα = R^m_iαm`.
    pub r_xt: DTensor,
    /// `R_ij = R^m_ijm`.
    pub r_xx: DTensor,
    /// `P^(α)_i(j) = −P^m(α)_im(j)` as `[α, i, j]`.
    pub p_i_j: DTensor,
    /// `P^(α)_(i)j = P^m(α)_ij(m)` as `[α, i, j]`.
    pub p_ij: DTensor,
    /// `P^(α)_(i)β = P^m(α)_iβ(m)` as `[α, i, β]`.
    pub p_ibeta: DTensor,
    /// `S^(α)(β)_(i)(j) = S^m(β)(α)_i(j)(m)` as `[α, β, i, j]`.
    pub s: DTensor,
    /// `H = h^αβ H_αβ`.
    pub h_scalar: Expr,
    /// `R = g^ij R_ij`.
    pub r_scalar: Expr,
    /// `Sc = H + R`.
    pub sc: Expr,
}

impl RicciSet {
    pub fn tensors(&self) -> [&DTensor; 7] {
        [&self.h, &self.r_xt, &self.r_xx, &self.p_i_j, &self.p_ij, &self.p_ibeta, &self.s]
    }
}

pub fn ricci_h_at<C: Calculus>(c: &C, h4: &DTensor, cs: &CoordinateSystem, idx: &[usize]) -> Result<C::V, SymError> {
    let (a, b) = (idx[0], idx[1]);
    Ok(c.sum((0..cs.p()).map(|mu| c.val(h4.get(&[mu, a, b, mu]))).collect::<Result<_, _>>()?))
}

pub fn ricci_r_xt_at<C: Calculus>(c: &C, r_tx: &DTensor, cs: &CoordinateSystem, idx: &[usize]) -> Result<C::V, SymError> {
    let (i, a) = (idx[0], idx[1]);
    Ok(c.sum((0..cs.n()).map(|m| c.val(r_tx.get(&[m, i, a, m]))).collect::<Result<_, _>>()?))
}

pub fn ricci_r_xx_at<C: Calculus>(c: &C, r_xx: &DTensor, cs: &CoordinateSystem, idx: &[usize]) -> Result<C::V, SymError> {
    let (i, j) = (idx[0], idx[1]);
    Ok(c.sum((0..cs.n()).map(|m| c.val(r_xx.get(&[m, i, j, m]))).collect::<Result<_, _>>()?))
}

/// `P^(α)_i(j) = −P^m(α)_im(j)`.
pub fn ricci_p_i_j_at<C: Calculus>(c: &C, p_x: &DTensor, cs: &CoordinateSystem, idx: &[usize]) -> Result<C::V, SymError> {
    let [a, i, j] = idx[..] else { unreachable!() };
    Ok(-c.sum((0..cs.n()).map(|m| c.val(p_x.get(&[m, a, i, m, j]))).collect::<Result<_, _>>()?))
}

/// `P^(α)_(i)j = P^m(α)_ij(m)`.
pub fn ricci_p_ij_at<C: Calculus>(c: &C, p_x: &DTensor, cs: &CoordinateSystem, idx: &[usize]) -> Result<C::V, SymError> {
    let [a, i, j] = idx[..] else { unreachable!() };
    Ok(c.sum((0..cs.n()).map(|m| c.val(p_x.get(&[m, a, i, j, m]))).collect::<Result<_, _>>()?))
}

/// `P^(α)_(i)β = P^m(α)_iβ(m)`.
pub fn ricci_p_ibeta_at<C: Calculus>(c: &C, p_t: &DTensor, cs: &CoordinateSystem, idx: &[usize]) -> Result<C::V, SymError> {
    let [a, i, b] = idx[..] else { unreachable!() };
    Ok(c.sum((0..cs.n()).map(|m| c.val(p_t.get(&[m, a, i, b, m]))).collect::<Result<_, _>>()?))
}

/// `S^(α)(β)_(i)(j) = S^m(β)(α)_i(j)(m)`.
pub fn ricci_s_at<C: Calculus>(c: &C, s: &DTensor, cs: &CoordinateSystem, idx: &[usize]) -> Result<C::V, SymError> {
    let [a, b, i, j] = idx[..] else { unreachable!() };
    Ok(c.sum((0..cs.n()).map(|m| c.val(s.get(&[m, b, a, i, j, m]))).collect::<Result<_, _>>()?))
}

pub fn ricci_set(curv: &CurvatureSet, h_inv: &DTensor, g_inv: &DTensor, cs: &CoordinateSystem, exec: Execution) -> Result<RicciSet, SymError> {
    let s = Symbolic;
    let h = sym_tensor("H_alphabeta", &[T_LO, T_LO], cs, exec, |x| ricci_h_at(&s, &curv.h, cs, x))?;
    let r_xt = sym_tensor("R_ialpha", &[S_LO, T_LO], cs, exec, |x| ricci_r_xt_at(&s, &curv.r_tx, cs, x))?;
    let r_xx = sym_tensor("R_ij", &[S_LO, S_LO], cs, exec, |x| ricci_r_xx_at(&s, &curv.r_xx, cs, x))?;
    let p_i_j = sym_tensor("P^(alpha)_i(j)", &[T_UP.paired(), S_LO, S_LO.paired()], cs, exec, |x| ricci_p_i_j_at(&s, &curv.p_x, cs, x))?;
    let p_ij = sym_tensor("P^(alpha)_(i)j", &[T_UP.paired(), S_LO.paired(), S_LO], cs, exec, |x| ricci_p_ij_at(&s, &curv.p_x, cs, x))?;
    let p_ibeta =
        sym_tensor("P^(alpha)_(i)beta", &[T_UP.paired(), S_LO.paired(), T_LO], cs, exec, |x| ricci_p_ibeta_at(&s, &curv.p_t, cs, x))?;
    let st = sym_tensor("S^(alpha)(beta)_(i)(j)", &[T_UP.paired(), T_UP.paired(), S_LO.paired(), S_LO.paired()], cs, exec, |x| {
        ricci_s_at(&s, &curv.s, cs, x)
    })?;
    let h_scalar = trace_at(&s, &h, h_inv)?.normalize()?;
    let r_scalar = trace_at(&s, &r_xx, g_inv)?.normalize()?;
    let sc = (h_scalar.clone() + r_scalar.clone()).normalize()?;
    Ok(RicciSet { h, r_xt, r_xx, p_i_j, p_ij, p_ibeta, s: st, h_scalar, r_scalar, sc })
}

/// `m^ab t_ab`.
pub fn trace_at<C: Calculus>(c: &C, t: &DTensor, inv: &DTensor) -> Result<C::V, SymError> {
    let terms = t.components().map(|(idx, e)| Ok(c.val(inv.get(&idx))? * c.val(e)?)).collect::<Result<_, SymError>>()?;
    Ok(c.sum(terms))
}

pub fn ricci_identities(ricci: &RicciSet) -> Vec<Identity> {
    vec![
        Identity::zero("ricci.P_i(j)_zero", &ricci.p_i_j),
        Identity::zero("ricci.P_(i)j_zero", &ricci.p_ij),
        Identity::zero("ricci.P_(i)beta_zero", &ricci.p_ibeta),
        Identity::zero("ricci.S_(i)(j)_zero", &ricci.s),
    ]
}

/// Left-hand sides of the local Einstein equations and the stress-energy
/// components `𝒯 = E / 𝒦`.
#[derive(Debug, Clone, PartialEq)]
pub struct EinsteinBlocks {
    pub lhs: Vec<DTensor>,
    pub stress: Vec<DTensor>,
}

/// `E = Ric − (Sc / 2) m` for a metric block `m`.
pub fn einstein_at<C: Calculus>(c: &C, ric: Option<&Expr>, sc: &Expr, m: &Expr) -> Result<C::V, SymError> {
    let trace_part = c.rational(1, 2) * c.val(sc)? * c.val(m)?;
    Ok(match ric {
        Some(r) => c.val(r)? - trace_part,
        None => -trace_part,
    })
}

/// `h^αβ g_ij` as `[α, β, i, j]`.
pub fn kronecker_at<C: Calculus>(c: &C, h_inv: &DTensor, g: &DTensor, idx: &[usize]) -> Result<C::V, SymError> {
    Ok(c.val(h_inv.get(&idx[..2]))? * c.val(g.get(&idx[2..]))?)
}

pub fn einstein_blocks(
    ricci: &RicciSet,
    h: &DTensor,
    h_inv: &DTensor,
    g: &DTensor,
    kappa: &Rational,
    cs: &CoordinateSystem,
    exec: Execution,
) -> Result<EinsteinBlocks, SymError> {
    let s = Symbolic;
    let sc = &ricci.sc;
    let e_tt = sym_tensor("E_alphabeta", &[T_LO, T_LO], cs, exec, |x| einstein_at(&s, Some(ricci.h.get(x)), sc, h.get(x)))?;
    let e_xx = sym_tensor("E_ij", &[S_LO, S_LO], cs, exec, |x| einstein_at(&s, Some(ricci.r_xx.get(x)), sc, g.get(x)))?;
    let e_vv = sym_tensor("E^(alpha)(beta)_(i)(j)", &[T_UP.paired(), T_UP.paired(), S_LO.paired(), S_LO.paired()], cs, exec, |x| {
        einstein_at(&s, None, sc, &kronecker_at(&s, h_inv, g, x)?)
    })?;
    let e_xt = ricci.r_xt.map("E_ialpha", exec, |_, e| Ok(e.clone()))?;
    let lhs = vec![
        e_tt,
        e_xx,
        e_vv,
        e_xt,
        DTensor::zeros("E_alphai", &[T_LO, S_LO], cs.p(), cs.n()),
        ricci.p_ibeta.map("E^(alpha)_(i)beta", exec, |_, e| Ok(e.clone()))?,
        DTensor::zeros("E^(beta)_alpha(i)", &[T_UP.paired(), T_LO, S_LO.paired()], cs.p(), cs.n()),
        ricci.p_i_j.map("E^(alpha)_i(j)", exec, |_, e| Ok(e.clone()))?,
        ricci.p_ij.map("E^(alpha)_(i)j", exec, |_, e| Ok(e.clone()))?,
    ];
    let inv_kappa = Expr::constant(kappa.recip());
    let stress = lhs
        .iter()
        .map(|t| {
            let name = format!("T{}", &t.name()[1..]);
            t.map(name, exec, |_, e| (inv_kappa.clone() * e.clone()).normalize())
        })
        .collect::<Result<_, _>>()?;
    Ok(EinsteinBlocks { lhs, stress })
}
