//! Two calculi for the same formulas: exact symbolic partials, and numeric
//! evaluation at a point with central finite differences.
//!
//! Every defining formula in this crate is written once against
//! [`Calculus`]. Derivatives only ever hit stored component expressions, so
//! swapping the backend re-evaluates a formula layer by layer from its inputs.

use std::ops::{Add, Mul, Neg, Sub};

use crate::symkernel::{Coord, Expr, Point, SymError};

pub trait Calculus: Sync {
    type V: Clone + Send + Add<Output = Self::V> + Sub<Output = Self::V> + Mul<Output = Self::V> + Neg<Output = Self::V>;

    fn val(&self, e: &Expr) -> Result<Self::V, SymError>;
    fn d(&self, e: &Expr, c: Coord) -> Result<Self::V, SymError>;
    fn rational(&self, num: i64, den: i64) -> Self::V;
    fn sum(&self, terms: Vec<Self::V>) -> Self::V;

    fn zero(&self) -> Self::V {
        self.rational(0, 1)
    }

    fn kron(&self, a: usize, b: usize) -> Self::V {
        self.rational(i64::from(a == b), 1)
    }
}

/// Exact partial derivatives; results are left unnormalized.
#[derive(Debug, Clone, Copy, Default)]
pub struct Symbolic;

impl Calculus for Symbolic {
    type V = Expr;

    fn val(&self, e: &Expr) -> Result<Expr, SymError> {
        Ok(e.clone())
    }

    fn d(&self, e: &Expr, c: Coord) -> Result<Expr, SymError> {
        if e.depends_on(c) {
            e.diff(c)
        } else {
            Ok(Expr::zero())
        }
    }

    fn rational(&self, num: i64, den: i64) -> Expr {
        Expr::ratio(num, den)
    }

    fn sum(&self, terms: Vec<Expr>) -> Expr {
        Expr::sum(terms.into_iter().filter(|t| !t.is_zero_literal()).collect())
    }
}

/// Values at one point; `∂` by central differences of step `step`.
#[derive(Debug, Clone)]
pub struct Numeric {
    pub at: Point,
    pub step: f64,
}

pub const FD_STEP: f64 = 1e-5;

impl Numeric {
    pub fn new(at: Point) -> Self {
        Self { at, step: FD_STEP }
    }
}

impl Calculus for Numeric {
    type V = f64;

    fn val(&self, e: &Expr) -> Result<f64, SymError> {
        e.eval(&self.at)
    }

    fn d(&self, e: &Expr, c: Coord) -> Result<f64, SymError> {
        if !e.depends_on(c) {
            return Ok(0.0);
        }
        let x = self.at.get(c);
        let mut plus = self.at.clone();
        plus.set(c, x + self.step);
        let mut minus = self.at.clone();
        minus.set(c, x - self.step);
        Ok((e.eval(&plus)? - e.eval(&minus)?) / (2.0 * self.step))
    }

    fn rational(&self, num: i64, den: i64) -> f64 {
        num as f64 / den as f64
    }

    fn sum(&self, terms: Vec<f64>) -> f64 {
        terms.into_iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symkernel::{parse_normalized, CoordinateSystem};

    #[test]
    fn numeric_derivative_matches_symbolic() {
        let cs = CoordinateSystem::new(1, 2).unwrap();
        let e = parse_normalized("sin(x1)^2*exp(t1)", &cs).unwrap();
        let at = Point::new(&cs, vec![0.3, 1.0, 0.7, 0.0, 0.0]).unwrap();
        let num = Numeric::new(at.clone()).d(&e, cs.x(0)).unwrap();
        let sym = Symbolic.d(&e, cs.x(0)).unwrap().eval(&at).unwrap();
        assert!((num - sym).abs() < 1e-9);
        assert_eq!(Numeric::new(at).d(&e, cs.x(1)).unwrap(), 0.0);
    }
}
