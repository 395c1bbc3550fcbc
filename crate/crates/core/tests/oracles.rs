//! Component values against hand formulas and finite-difference oracles that
//! share no code with the engine.

mod common;

use common::*;
use jetgeom::exec::Execution;
use jetgeom::geometry::calc::Symbolic;
use jetgeom::geometry::connection::delta_t;
use jetgeom::symkernel::{parse_expression, Expr};
use jetgeom::tensor::{DTensor, S_LO};
use jetgeom::verify::{covariant_derivative_02, MetricClass};
use nalgebra::DMatrix;

const TOL: f64 = 1e-9;

fn close(a: f64, b: f64, what: &str) {
    assert!((a - b).abs() < TOL, "{what}: engine {a} vs oracle {b}");
}

fn sphere_metric(x: &[f64]) -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, x[0].sin().powi(2)])
}

/// Hand Christoffel symbols of the unit sphere, themselves checked against
/// differences of the metric below.
fn sphere_gamma(x: &[f64]) -> Christoffel {
    let (s, c) = x[0].sin_cos();
    let mut g = vec![vec![vec![0.0; 2]; 2]; 2];
    g[0][1][1] = -s * c;
    g[1][0][1] = c / s;
    g[1][1][0] = c / s;
    g
}

fn all_zero(t: &DTensor) -> bool {
    t.components().all(|(_, e)| e.is_zero_literal())
}

#[test]
fn sphere_christoffel_matches_fd() {
    let geom = load("sphere");
    let at = point(&geom, &[("x1", 1.0), ("x2", 0.7)]);
    let fd = christoffel_fd(&sphere_metric, &[1.0, 0.7], 1e-3);
    let hand = sphere_gamma(&[1.0, 0.7]);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                close(value(&geom.gamma, &[i, j, k], &at), fd[i][j][k], &format!("Gamma[{i}{j}{k}]"));
                close(hand[i][j][k], fd[i][j][k], "hand Gamma");
            }
        }
    }
    close(value(&geom.gamma, &[0, 1, 1], &at), -(1f64.sin() * 1f64.cos()), "Gamma^1_22");
    close(value(&geom.gamma, &[1, 0, 1], &at), 1f64.cos() / 1f64.sin(), "Gamma^2_12");
}

#[test]
fn sphere_curvature_matches_fd_convention() {
    let geom = load("sphere");
    let x = [1.0, 0.7];
    let at = point(&geom, &[("x1", x[0]), ("x2", x[1])]);
    let fd = riemann_fd(&sphere_gamma, &x, 1e-3);
    let r = &geom.curvature.r_xx;
    for l in 0..2 {
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let a = value(r, &[l, i, j, k], &at);
                    close(a, fd[l][i][j][k], &format!("R[{l}{i}{j}{k}]"));
                }
            }
        }
    }
    // the literal convention gives R^1_212 = -sin^2 x1 and R^2_121 = -1
    close(value(r, &[0, 1, 0, 1], &at), -(1f64.sin().powi(2)), "R^1_212");
    close(value(r, &[1, 0, 1, 0], &at), -1.0, "R^2_121");
}

#[test]
fn sphere_ricci_and_einstein() {
    let geom = load("sphere");
    let at = point(&geom, &[("x1", 0.9), ("x2", 0.3)]);
    let g = sphere_metric(&[0.9]);
    for i in 0..2 {
        for j in 0..2 {
            close(value(&geom.ricci.r_xx, &[i, j], &at), g[(i, j)], "R_ij");
            close(value(&geom.einstein.lhs[1], &[i, j], &at), 0.0, "E_ij");
            close(value(&geom.einstein.lhs[2], &[0, 0, i, j], &at), -g[(i, j)], "E^(1)(1)_(i)(j)");
        }
    }
    close(geom.ricci.r_scalar.eval(&at).unwrap(), 2.0, "R");
    close(geom.ricci.h_scalar.eval(&at).unwrap(), 0.0, "H");
    close(value(&geom.einstein.lhs[0], &[0, 0], &at), -1.0, "E_11");
    close(value(&geom.einstein.stress[0], &[0, 0], &at), -1.0, "T_11 with unit constant");
}

#[test]
fn stress_scales_with_einstein_constant() {
    let geom = from_toml(
        r#"
p = 1
n = 2
h = [["1"]]
lagrangian = "v1_1^2 + sin(x1)^2*v2_1^2"
einstein_constant = 2
[[sample_points]]
t1 = 0
x1 = 1
x2 = 0.7
"#,
    );
    let at = point(&geom, &[("x1", 1.0)]);
    close(value(&geom.einstein.stress[0], &[0, 0], &at), -0.5, "T_11");
}

#[test]
fn sphere_connection_torsion_and_fields() {
    let geom = load("sphere");
    let at = point(&geom, &[("x1", 1.1), ("v1_1", 0.4), ("v2_1", -0.8)]);
    assert!(all_zero(&geom.cartan.gt));
    assert!(all_zero(&geom.cartan.c));
    assert!(all_zero(&geom.conn.m));
    for (idx, e) in geom.cartan.l.components() {
        close(e.eval(&at).unwrap(), geom.gamma.get(&idx).eval(&at).unwrap(), "L = Gamma");
    }
    assert!(all_zero(&geom.em.d_small));
    assert!(all_zero(&geom.em.f_big) && all_zero(&geom.em.f_vert));
    let s2 = 1.1f64.sin().powi(2);
    close(value(&geom.em.d_vert, &[0, 0, 1, 1], &at), s2, "d_22");
    close(value(&geom.potential.deltax_deltax, &[0, 0, 1, 1], &at), s2, "third potential block");

    // R^(1)_(1)12 = R^1_l12 v^l_1
    let fd = riemann_fd(&sphere_gamma, &[1.1, 0.5], 1e-3);
    let v = [0.4, -0.8];
    let expect: f64 = (0..2).map(|l| fd[0][l][0][1] * v[l]).sum();
    close(value(&geom.torsion.r_xx, &[0, 0, 0, 1], &at), expect, "R^(1)_(1)12");
}

#[test]
fn conformal_oracles() {
    let geom = load("conformal");
    let t = 0.3;
    let at = point(&geom, &[("t1", t), ("v1_1", 0.7), ("v2_1", 0.2)]);
    let e2t = (2.0 * t).exp();
    for i in 0..2 {
        for j in 0..2 {
            let d = if i == j { 1.0 } else { 0.0 };
            close(value(&geom.vertical, &[0, 0, i, j], &at), e2t * d, "G (U, F discarded)");
            close(value(&geom.cartan.gt, &[i, j, 0], &at), d, "G^k_j1");
            close(value(&geom.conn.n, &[i, 0, j], &at), d, "N^(i)_(1)j");
            close(value(&geom.em.d_small, &[0, i, j], &at), -e2t * d, "D^(1)_(i)j");
            close(value(&geom.torsion.t, &[i, 0, j], &at), -d, "T^m_1j");
            close(value(&geom.torsion.p_mu_alpha_j, &[i, 0, 0, 0, j], &at), -d, "P^(m)(1)_(1)1(j)");
        }
    }
    assert!(all_zero(&geom.gamma) && all_zero(&geom.cartan.l) && all_zero(&geom.cartan.c));
    assert!(all_zero(&geom.conn.m) && all_zero(&geom.em.f_big));
    for t in [&geom.torsion.r_tt, &geom.torsion.r_tx, &geom.torsion.r_xx] {
        assert!(all_zero(t), "{}", t.name());
    }
}

#[test]
fn nonconstant_h_oracles() {
    let geom = load("nonconstant_h");
    let t = 0.3;
    let at = point(&geom, &[("t1", t), ("v1_1", 0.6), ("v2_1", -0.4)]);
    // FD of h = exp(2 t1): H^1_11 = ½ h^11 h_11'
    let h = |s: f64| (2.0 * s).exp();
    close(value(&geom.cartan.h, &[0, 0, 0], &at), 0.5 / h(t) * d5(h, t, 1e-3), "H^1_11");
    close(value(&geom.conn.m, &[0, 0, 0], &at), -0.6, "M^(1)_(1)1");
    close(value(&geom.conn.m, &[1, 0, 0], &at), 0.4, "M^(2)_(1)1");
    assert!(all_zero(&geom.conn.n));
    close(value(&geom.kronecker.tensor, &[0, 0, 1, 1], &at), (-2.0 * t).exp(), "Kronecker block");
    assert_eq!(geom.kronecker.matches_input, Some(true));

    let cs = geom.coords();
    let v11 = Expr::coord(cs.v(0, 0));
    let d = delta_t(&Symbolic, &v11, 0, &geom.conn, cs).unwrap().normalize().unwrap();
    assert_eq!(d, v11, "delta_t(v1_1) = v1_1");
}

#[test]
fn polar_temporal_oracles() {
    let geom = load("polar");
    let at = point(&geom, &[("t1", 1.0)]);
    let hm = |s: &[f64]| DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, s[0] * s[0]]);
    let fd = christoffel_fd(&hm, &[1.0, 0.5], 1e-3);
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                close(value(&geom.cartan.h, &[a, b, c], &at), fd[a][b][c], "H^a_bc");
            }
        }
    }
    close(value(&geom.cartan.h, &[1, 0, 1], &at), 1.0, "H^2_12");
    close(value(&geom.cartan.h, &[0, 1, 1], &at), -1.0, "H^1_22");
    assert!(all_zero(&geom.curvature.h));
    assert!(all_zero(&geom.ricci.h));
    assert!(geom.ricci.h_scalar.is_zero_literal());
}

#[test]
fn flat_everything_vanishes() {
    let geom = load("flat");
    for t in [&geom.cartan.h, &geom.gamma, &geom.conn.m, &geom.conn.n, &geom.cartan.gt, &geom.cartan.l, &geom.cartan.c] {
        assert!(all_zero(t), "{}", t.name());
    }
    for t in geom.torsion.all().into_iter().chain(geom.curvature.all()).chain(geom.ricci.tensors()) {
        assert!(all_zero(t), "{}", t.name());
    }
    for t in &geom.einstein.lhs {
        assert!(all_zero(t), "{}", t.name());
    }
    assert!(all_zero(&geom.em.d_small) && all_zero(&geom.em.f_big) && all_zero(&geom.em.f_vert));
    let at = point(&geom, &[]);
    close(value(&geom.em.d_vert, &[0, 0, 1, 1], &at), 1.0, "d = delta");
}

#[test]
fn kronecker_flag_detects_non_product_input() {
    let geom = from_toml(
        r#"
p = 2
n = 1
h = [["1", "0"], ["0", "1"]]
G = [["1", "0"], ["0", "3"]]
sample_points = [{ t1 = 0.5, t2 = 0.5, x1 = 0.5 }]
"#,
    );
    assert_eq!(geom.kronecker.matches_input, Some(false));
    let at = point(&geom, &[]);
    close(value(&geom.metric.g, &[0, 0], &at), 2.0, "g = (1 + 3) / 2");
}

#[test]
fn covariant_derivative_of_non_metric_tensor() {
    let geom = load("flat");
    let cs = geom.coords();
    let t = DTensor::build("T_ij", &[S_LO, S_LO], cs.p(), cs.n(), Execution::Sequential, |x| {
        Ok(match (x[0], x[1]) {
            (0, 0) => parse_expression("x1", cs)?,
            (1, 1) => Expr::int(1),
            _ => Expr::zero(),
        })
    })
    .unwrap();
    let d = covariant_derivative_02(&t, MetricClass::Spatial, &geom.cartan, &geom.conn, cs, Execution::Sequential).unwrap();
    assert_eq!(*d.bar.get(&[0, 0, 0]), Expr::int(1));
    assert!(d.slash.all_zero_literal() && d.vertical.all_zero_literal());
    assert!(covariant_derivative_02(&t, MetricClass::Temporal, &geom.cartan, &geom.conn, cs, Execution::Sequential).is_err());
}
