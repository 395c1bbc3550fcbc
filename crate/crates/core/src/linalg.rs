//! Small symbolic matrices: determinant and adjugate inverse, plus numeric
//! eigenvalue signs for signature checks.

use nalgebra::DMatrix;

use crate::symkernel::{Expr, Point, SymError};

pub type Matrix = Vec<Vec<Expr>>;

/// Laplace expansion along the first row; fine for the n, p ≤ 4 this engine
/// targets.
pub fn determinant(m: &Matrix) -> Result<Expr, SymError> {
    let n = m.len();
    match n {
        0 => return Ok(Expr::one()),
        1 => return m[0][0].normalize(),
        _ => {}
    }
    let mut terms = Vec::with_capacity(n);
    for (col, a) in m[0].iter().enumerate() {
        if a.is_zero_literal() {
            continue;
        }
        let minor = minor(m, 0, col);
        let term = a.clone() * determinant(&minor)?;
        terms.push(if col % 2 == 0 { term } else { -term });
    }
    Expr::sum(terms).normalize()
}

fn minor(m: &Matrix, row: usize, col: usize) -> Matrix {
    m.iter()
        .enumerate()
        .filter(|(r, _)| *r != row)
        .map(|(_, line)| line.iter().enumerate().filter(|(c, _)| *c != col).map(|(_, e)| e.clone()).collect())
        .collect()
}

/// `adj(m) / det(m)`; `None` when the determinant normalizes to zero.
pub fn inverse(m: &Matrix) -> Result<Option<Matrix>, SymError> {
    let n = m.len();
    let det = determinant(m)?;
    if det.is_zero_literal() {
        return Ok(None);
    }
    if n == 1 {
        return Ok(Some(vec![vec![det.recip().normalize()?]]));
    }
    let mut inv = vec![vec![Expr::zero(); n]; n];
    for (i, row) in inv.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            // (adj m)_ij = cofactor_ji
            let c = determinant(&minor(m, j, i))?;
            let c = if (i + j) % 2 == 0 { c } else { -c };
            *slot = (c / det.clone()).normalize()?;
        }
    }
    Ok(Some(inv))
}

pub fn numeric(m: &Matrix, at: &Point) -> Result<DMatrix<f64>, SymError> {
    let n = m.len();
    let mut out = DMatrix::zeros(n, n);
    for (i, row) in m.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            out[(i, j)] = e.eval(at)?;
        }
    }
    Ok(out)
}

/// Numbers of positive, negative and (numerically) zero eigenvalues of a
/// symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

pub fn inertia(m: &DMatrix<f64>) -> Inertia {
    let scale = m.iter().fold(1.0_f64, |a, x| a.max(x.abs()));
    let eig = m.clone().symmetric_eigen();
    let tol = 1e-10 * scale;
    let mut out = Inertia { positive: 0, negative: 0, zero: 0 };
    for &l in eig.eigenvalues.iter() {
        if l > tol {
            out.positive += 1;
        } else if l < -tol {
            out.negative += 1;
        } else {
            out.zero += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symkernel::{parse_normalized, CoordinateSystem};

    fn mat(cs: &CoordinateSystem, rows: &[&[&str]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|s| parse_normalized(s, cs).unwrap()).collect()).collect()
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let cs = CoordinateSystem::new(1, 3).unwrap();
        let m = mat(&cs, &[&["1", "x1", "0"], &["x1", "sin(x2)^2 + 2", "1"], &["0", "1", "exp(t1)"]]);
        let inv = inverse(&m).unwrap().unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let s = Expr::sum((0..3).map(|k| m[i][k].clone() * inv[k][j].clone()).collect());
                let want = if i == j { Expr::one() } else { Expr::zero() };
                assert!(s.sym_eq(&want).unwrap(), "({i},{j})");
            }
        }
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let cs = CoordinateSystem::new(1, 2).unwrap();
        let m = mat(&cs, &[&["x1", "x2"], &["2*x1", "2*x2"]]);
        assert!(inverse(&m).unwrap().is_none());
    }

    #[test]
    fn inertia_counts_signs() {
        let m = DMatrix::from_row_slice(3, 3, &[2.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(inertia(&m), Inertia { positive: 1, negative: 1, zero: 1 });
    }
}
