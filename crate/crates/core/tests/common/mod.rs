#![allow(dead_code)]

use std::path::PathBuf;

use jetgeom::exec::Execution;
use jetgeom::geometry::Geometry;
use jetgeom::model::ModelSpec;
use jetgeom::symkernel::Point;
use jetgeom::tensor::DTensor;
use nalgebra::DMatrix;

pub const CORPUS: [&str; 6] = ["flat", "sphere", "conformal", "nonconstant_h", "polar", "mixed"];

pub fn model_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("models").join(format!("{name}.toml"))
}

pub fn load(name: &str) -> Geometry {
    let spec = ModelSpec::load(model_path(name)).unwrap();
    Geometry::compute(&spec, Execution::default()).unwrap()
}

pub fn from_toml(text: &str) -> Geometry {
    let spec = ModelSpec::from_toml_str(text).unwrap();
    Geometry::compute(&spec, Execution::default()).unwrap()
}

/// A point with the named values set and every other coordinate at 0.5.
pub fn point(geom: &Geometry, values: &[(&str, f64)]) -> Point {
    let cs = geom.coords();
    let mut p = Point::new(cs, vec![0.5; cs.len()]).unwrap();
    for (k, v) in values {
        p.set(cs.lookup(k).unwrap(), *v);
    }
    p
}

pub fn value(t: &DTensor, idx: &[usize], at: &Point) -> f64 {
    t.get(idx).eval(at).unwrap()
}

/// Five-point central difference.
pub fn d5(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h)
}

pub fn partial(f: &dyn Fn(&[f64]) -> f64, x: &[f64], k: usize, h: f64) -> f64 {
    d5(
        |s| {
            let mut y = x.to_vec();
            y[k] = s;
            f(&y)
        },
        x[k],
        h,
    )
}

pub type Christoffel = Vec<Vec<Vec<f64>>>;

/// `Γ^i_jk = ½ g^im (∂_j g_mk + ∂_k g_mj − ∂_m g_jk)` by differences of a
/// metric closure.
pub fn christoffel_fd(g: &dyn Fn(&[f64]) -> DMatrix<f64>, x: &[f64], h: f64) -> Christoffel {
    let n = x.len();
    let inv = g(x).try_inverse().unwrap();
    let dg = |m: usize, k: usize, j: usize| partial(&|y| g(y)[(m, k)], x, j, h);
    let mut out = vec![vec![vec![0.0; n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out[i][j][k] = (0..n).map(|m| 0.5 * inv[(i, m)] * (dg(m, k, j) + dg(m, j, k) - dg(j, k, m))).sum();
            }
        }
    }
    out
}

/// `R^l_ijk = ∂_k Γ^l_ij − ∂_j Γ^l_ik + Γ^m_ij Γ^l_mk − Γ^m_ik Γ^l_mj` by
/// differences of a Christoffel closure.
pub fn riemann_fd(gamma: &dyn Fn(&[f64]) -> Christoffel, x: &[f64], h: f64) -> Vec<Vec<Vec<Vec<f64>>>> {
    let n = x.len();
    let g0 = gamma(x);
    let mut out = vec![vec![vec![vec![0.0; n]; n]; n]; n];
    for l in 0..n {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut v = partial(&|y| gamma(y)[l][i][j], x, k, h) - partial(&|y| gamma(y)[l][i][k], x, j, h);
                    for m in 0..n {
                        v += g0[m][i][j] * g0[l][m][k] - g0[m][i][k] * g0[l][m][j];
                    }
                    out[l][i][j][k] = v;
                }
            }
        }
    }
    out
}
