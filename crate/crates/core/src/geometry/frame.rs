//! Vector fields on `J¹(T, M)` in the natural basis and their Lie brackets.

use crate::symkernel::{CoordinateSystem, Expr, SymError};

use super::calc::Calculus;
use super::connection::NonlinearConnection;

/// Coefficients along `∂/∂(coordinate)`, in coordinate order.
#[derive(Debug, Clone, PartialEq)]
pub struct Field(pub Vec<Expr>);

/// `δ/δt^α = ∂/∂t^α − M^(j)_(β)α ∂/∂x^j_β`.
pub fn delta_t_field(alpha: usize, conn: &NonlinearConnection, cs: &CoordinateSystem) -> Field {
    let mut f = vec![Expr::zero(); cs.len()];
    f[cs.t(alpha).index()] = Expr::one();
    for j in 0..cs.n() {
        for b in 0..cs.p() {
            f[cs.v(j, b).index()] = -conn.m.get(&[j, b, alpha]).clone();
        }
    }
    Field(f)
}

/// `δ/δx^i = ∂/∂x^i − N^(j)_(β)i ∂/∂x^j_β`.
pub fn delta_x_field(i: usize, conn: &NonlinearConnection, cs: &CoordinateSystem) -> Field {
    let mut f = vec![Expr::zero(); cs.len()];
    f[cs.x(i).index()] = Expr::one();
    for j in 0..cs.n() {
        for b in 0..cs.p() {
            f[cs.v(j, b).index()] = -conn.n.get(&[j, b, i]).clone();
        }
    }
    Field(f)
}

/// Component `a` of `[X, Y] = X(Y^a) − Y(X^a)`.
pub fn bracket_at<C: Calculus>(c: &C, x: &Field, y: &Field, a: usize, cs: &CoordinateSystem) -> Result<C::V, SymError> {
    let mut terms = Vec::new();
    for k in cs.coords() {
        let (xk, yk) = (&x.0[k.index()], &y.0[k.index()]);
        if !xk.is_zero_literal() && y.0[a].depends_on(k) {
            terms.push(c.val(xk)? * c.d(&y.0[a], k)?);
        }
        if !yk.is_zero_literal() && x.0[a].depends_on(k) {
            terms.push(-(c.val(yk)? * c.d(&x.0[a], k)?));
        }
    }
    Ok(c.sum(terms))
}

/// Component of `[X, Y]` along `∂/∂x^i_α` in the adapted basis: the natural
/// vertical component plus the `M`, `N` corrections of its horizontal part.
pub fn bracket_vertical_at<C: Calculus>(
    c: &C,
    x: &Field,
    y: &Field,
    i: usize,
    alpha: usize,
    conn: &NonlinearConnection,
    cs: &CoordinateSystem,
) -> Result<C::V, SymError> {
    let mut terms = vec![bracket_at(c, x, y, cs.v(i, alpha).index(), cs)?];
    for b in 0..cs.p() {
        terms.push(bracket_at(c, x, y, cs.t(b).index(), cs)? * c.val(conn.m.get(&[i, alpha, b]))?);
    }
    for j in 0..cs.n() {
        terms.push(bracket_at(c, x, y, cs.x(j).index(), cs)? * c.val(conn.n.get(&[i, alpha, j]))?);
    }
    Ok(c.sum(terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::calc::Symbolic;
    use crate::symkernel::parse_normalized;

    #[test]
    fn coordinate_fields_commute() {
        let cs = CoordinateSystem::new(1, 2).unwrap();
        let mut x = Field(vec![Expr::zero(); cs.len()]);
        let mut y = x.clone();
        x.0[cs.x(0).index()] = Expr::one();
        y.0[cs.x(1).index()] = Expr::one();
        for a in 0..cs.len() {
            assert!(bracket_at(&Symbolic, &x, &y, a, &cs).unwrap().is_symbolic_zero().unwrap());
        }
    }

    #[test]
    fn bracket_of_x_d1_and_d2() {
        // [x2 ∂/∂x1, ∂/∂x2] = −∂/∂x1
        let cs = CoordinateSystem::new(1, 2).unwrap();
        let mut x = Field(vec![Expr::zero(); cs.len()]);
        let mut y = x.clone();
        x.0[cs.x(0).index()] = parse_normalized("x2", &cs).unwrap();
        y.0[cs.x(1).index()] = Expr::one();
        let b = bracket_at(&Symbolic, &x, &y, cs.x(0).index(), &cs).unwrap();
        assert!(b.sym_eq(&Expr::int(-1)).unwrap());
    }
}
