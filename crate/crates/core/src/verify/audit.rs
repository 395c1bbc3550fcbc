//! Finite-difference audit: each stored family against its defining formula
//! re-evaluated from its stored inputs with central differences.

use crate::exec::Execution;
use crate::geometry::calc::{Calculus, Numeric};
use crate::geometry::{connection as cn, curvature as cv, fields as fd, torsion as tr, Geometry};
use crate::symkernel::{CoordinateSystem, ProbeSampler, SymError};
use crate::tensor::DTensor;

use super::{Check, Settings, Tier, Witness};

type Formula<'a> = Box<dyn Fn(&Numeric, &[usize]) -> Result<f64, SymError> + Sync + Send + 'a>;

/// A stored tensor and the formula that should reproduce it.
pub struct Audited<'a> {
    pub stored: DTensor,
    pub formula: Formula<'a>,
}

fn audited<'a>(stored: &DTensor, f: impl Fn(&Numeric, &[usize]) -> Result<f64, SymError> + Sync + Send + 'a) -> Audited<'a> {
    Audited { stored: stored.clone(), formula: Box::new(f) }
}

fn scalar(name: &str, e: &crate::symkernel::Expr, cs: &CoordinateSystem) -> DTensor {
    let mut t = DTensor::zeros(name, &[], cs.p(), cs.n());
    t.set(&[], e.clone());
    t
}

/// Every audited family of a geometry.
pub fn audited_families(geom: &Geometry) -> Vec<Audited<'_>> {
    let cs = geom.coords();
    let (h, h_inv) = (&geom.spec.h, &geom.h_inv);
    let (g, g_inv) = (&geom.metric.g, &geom.metric.g_inv);
    let (conn, cartan, torsion, curv, ricci) = (&geom.conn, &geom.cartan, &geom.torsion, &geom.curvature, &geom.ricci);
    let p = cs.p();
    let big_g = &geom.vertical;
    let mut out = vec![
        audited(g, move |c, x| {
            let mut terms = Vec::new();
            for mu in 0..p {
                for nu in 0..p {
                    terms.push(c.val(h.get(&[mu, nu]))? * c.val(big_g.get(&[mu, nu, x[0], x[1]]))?);
                }
            }
            Ok(c.sum(terms) / p as f64)
        }),
        audited(&geom.kronecker.tensor, move |c, x| cv::kronecker_at(c, h_inv, g, x)),
        audited(&cartan.h, move |c, x| cn::temporal_christoffel_at(c, h, h_inv, cs, x)),
        audited(&geom.gamma, move |c, x| cn::spatial_christoffel_at(c, g, g_inv, cs, x)),
        audited(&conn.m, move |c, x| cn::m_at(c, &geom.christoffel_t, cs, x)),
        audited(&conn.n, move |c, x| cn::n_at(c, &geom.gamma, g, g_inv, cs, x)),
        audited(&cartan.gt, move |c, x| cn::gt_at(c, g, g_inv, conn, cs, x)),
        audited(&cartan.l, move |c, x| cn::l_at(c, g, g_inv, conn, cs, x)),
        audited(&cartan.c, move |c, x| cn::c_at(c, g, g_inv, cs, x)),
        audited(&torsion.t, move |c, x| tr::t_at(c, &cartan.gt, conn, cs, x)),
        audited(&torsion.p_ij, move |c, x| c.val(cartan.c.get(x))),
        audited(&torsion.p_mu_ij, move |c, x| tr::p_mu_ij_at(c, &cartan.l, conn, cs, x)),
        audited(&torsion.p_mu_alpha_j, move |c, x| tr::p_mu_alpha_j_at(c, cartan, conn, cs, x)),
        audited(&torsion.r_tt, move |c, x| tr::r_tt_at(c, conn, cs, x)),
        audited(&torsion.r_tx, move |c, x| tr::r_tx_at(c, conn, cs, x)),
        audited(&torsion.r_xx, move |c, x| tr::r_xx_at(c, conn, cs, x)),
        audited(&torsion.s, move |c, x| tr::s_at(c, &cartan.c, x)),
        audited(&curv.h, move |c, x| cv::h4_at(c, &cartan.h, cs, x)),
        audited(&curv.r_tt, move |c, x| cv::r_tt_at(c, &cartan.gt, cs, x)),
        audited(&curv.r_tx, move |c, x| cv::r_tx_at(c, &cartan.gt, &cartan.l, cs, x)),
        audited(&curv.r_xx, move |c, x| cv::r_xx_at(c, &cartan.l, cs, x)),
        audited(&curv.p_t, move |c, x| cv::p_t_at(c, cartan, conn, torsion, cs, x)),
        audited(&curv.p_x, move |c, x| cv::p_x_at(c, cartan, conn, torsion, cs, x)),
        audited(&curv.s, move |c, x| cv::s_at(c, &cartan.c, cs, x)),
        audited(&ricci.h, move |c, x| cv::ricci_h_at(c, &curv.h, cs, x)),
        audited(&ricci.r_xt, move |c, x| cv::ricci_r_xt_at(c, &curv.r_tx, cs, x)),
        audited(&ricci.r_xx, move |c, x| cv::ricci_r_xx_at(c, &curv.r_xx, cs, x)),
        audited(&ricci.p_i_j, move |c, x| cv::ricci_p_i_j_at(c, &curv.p_x, cs, x)),
        audited(&ricci.p_ij, move |c, x| cv::ricci_p_ij_at(c, &curv.p_x, cs, x)),
        audited(&ricci.p_ibeta, move |c, x| cv::ricci_p_ibeta_at(c, &curv.p_t, cs, x)),
        audited(&ricci.s, move |c, x| cv::ricci_s_at(c, &curv.s, cs, x)),
        audited(&scalar("H", &ricci.h_scalar, cs), move |c, _| cv::trace_at(c, &ricci.h, h_inv)),
        audited(&scalar("R", &ricci.r_scalar, cs), move |c, _| cv::trace_at(c, &ricci.r_xx, g_inv)),
        audited(&scalar("Sc", &ricci.sc, cs), move |c, _| Ok(c.val(&ricci.h_scalar)? + c.val(&ricci.r_scalar)?)),
        audited(&geom.em.d_small, move |c, x| fd::deflection_at(c, g, h_inv, cs, x)),
        audited(&geom.em.d_vert, move |c, x| fd::vertical_deflection_at(c, g, h_inv, x)),
        audited(&geom.em.f_big, move |c, x| fd::f_at(c, &geom.em.d_small, x)),
        audited(&geom.em.f_vert, move |c, x| fd::f_vert_at(c, &geom.em.d_vert, x)),
    ];
    let lhs = &geom.einstein.lhs;
    let sc = &ricci.sc;
    out.push(audited(&lhs[0], move |c, x| cv::einstein_at(c, Some(ricci.h.get(x)), sc, h.get(x))));
    out.push(audited(&lhs[1], move |c, x| cv::einstein_at(c, Some(ricci.r_xx.get(x)), sc, g.get(x))));
    out.push(audited(&lhs[2], move |c, x| Ok(-(c.rational(1, 2) * c.val(sc)? * cv::kronecker_at(c, h_inv, g, x)?))));
    out.push(audited(&lhs[3], move |c, x| c.val(ricci.r_xt.get(x))));
    let kappa = &geom.spec.einstein_constant;
    let inv_kappa = num_traits::ToPrimitive::to_f64(&kappa.recip()).unwrap_or(f64::NAN);
    for (e, t) in lhs.iter().zip(&geom.einstein.stress).take(4) {
        out.push(audited(t, move |c, x| Ok(c.val(e.get(x))? * inv_kappa)));
    }
    out
}

/// Largest relative residual `|a − b| / max(|a|, |b|, 1)` of one family over
/// the probes.
pub fn audit_family(fam: &Audited<'_>, cs: &CoordinateSystem, settings: &Settings) -> Check {
    let name = format!("fd.{}", fam.stored.name());
    let mut sampler = ProbeSampler::new(cs, settings.seed);
    let mut max_residual: f64 = 0.0;
    let mut witness = None;
    for _ in 0..settings.probes {
        let drawn = sampler.draw_valid(|p| {
            let calc = Numeric { at: p.clone(), step: settings.fd_step };
            fam.stored
                .components()
                .map(|(idx, e)| {
                    let a = e.eval(p)?;
                    let b = (fam.formula)(&calc, &idx)?;
                    Ok((idx, (a - b).abs() / a.abs().max(b.abs()).max(1.0)))
                })
                .collect::<Result<Vec<_>, SymError>>()
        });
        let (at, rows) = match drawn {
            Ok(v) => v,
            Err(e) => return Check::errored(&name, settings, settings.fd_tol, e),
        };
        for (idx, rel) in rows {
            max_residual = max_residual.max(rel);
            if (rel.is_nan() || rel >= settings.fd_tol) && witness.is_none() {
                witness = Some(Witness::new(crate::tensor::index_key(&idx), &at, cs, rel));
            }
        }
    }
    let tier = if witness.is_some() { Tier::Failed } else { Tier::Numeric };
    Check { name, tier, max_residual, seed: settings.seed, tol: settings.fd_tol, witness, error: None }
}

pub fn finite_difference_audit(geom: &Geometry, settings: &Settings, exec: Execution) -> Vec<Check> {
    let fams = audited_families(geom);
    exec.map(fams.len(), |k| audit_family(&fams[k], geom.coords(), settings))
}
