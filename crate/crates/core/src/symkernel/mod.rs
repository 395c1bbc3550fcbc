//! Small computer-algebra kernel: parsing, exact normalization, partial
//! differentiation, numeric evaluation and zero testing.

mod canon;
mod coords;
mod diff;
mod eval;
mod expr;
mod parse;
mod print;
mod zero;

use thiserror::Error;

pub use coords::{Coord, CoordKind, CoordinateSystem, Point};
pub use expr::{Expr, Func, Node, Rational};
pub use parse::parse_expression;
pub use print::Plain;
pub use zero::{is_zero, ProbeSampler, ZeroTest, ZeroVerdict, DEFAULT_PROBES, DEFAULT_TOL, MAX_RETRIES, SAMPLE_BOX};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SymError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier '{name}' at offset {pos}")]
    UnknownIdentifier { name: String, pos: usize },
    #[error("invalid dimensions p={p}, n={n}")]
    Dimension { p: usize, n: usize },
    #[error("invalid coordinate name '{0}'")]
    BadName(String),
    #[error("duplicate coordinate '{0}'")]
    DuplicateName(String),
    #[error("coordinate '{0}' is not assigned")]
    MissingCoordinate(String),
    #[error("point has {got} values, expected {expected}")]
    PointSize { expected: usize, got: usize },
    #[error("non-finite value for '{0}'")]
    NonFinite(String),
    #[error("symbolic division by zero")]
    DivisionByZero,
    #[error("logarithm of zero")]
    LogOfZero,
    #[error("exponent too large")]
    ExponentTooLarge,
    #[error("domain error: {what} in `{expr}` at {point}")]
    Domain { what: String, expr: String, point: String },
    #[error("no valid probe point after retries: {0}")]
    RetriesExhausted(Box<SymError>),
}

impl Expr {
    /// Canonical form; structural equality of normal forms is symbolic
    /// equality.
    pub fn normalize(&self) -> Result<Expr, SymError> {
        Ok(canon::Rf::from_expr(self)?.to_expr())
    }

    /// `∂self/∂wrt`, normalized.
    pub fn diff(&self, wrt: Coord) -> Result<Expr, SymError> {
        diff::derivative(self, wrt).normalize()
    }

    /// Derivative tree without normalization.
    pub fn diff_raw(&self, wrt: Coord) -> Expr {
        diff::derivative(self, wrt)
    }

    pub fn eval(&self, at: &Point) -> Result<f64, SymError> {
        eval::eval(self, at)
    }

    /// Printed in the parser's grammar.
    pub fn to_string(&self, coords: &CoordinateSystem) -> String {
        Plain { expr: self, names: coords.names() }.to_string()
    }

    pub fn display<'a>(&'a self, coords: &'a CoordinateSystem) -> Plain<'a> {
        Plain { expr: self, names: coords.names() }
    }

    pub fn to_latex(&self, coords: &CoordinateSystem) -> String {
        let mut s = String::new();
        print::latex(self, coords.names(), &mut s);
        s
    }

    /// Exact zero test on the normal form.
    pub fn is_symbolic_zero(&self) -> Result<bool, SymError> {
        Ok(canon::Rf::from_expr(self)?.is_zero())
    }

    /// True when the difference normalizes to zero.
    pub fn sym_eq(&self, other: &Expr) -> Result<bool, SymError> {
        Ok(canon::Rf::from_expr(self)?.sub(&canon::Rf::from_expr(other)?).is_zero())
    }

    /// The rational value when the normal form is a constant.
    pub fn constant_value(&self) -> Result<Option<Rational>, SymError> {
        Ok(canon::Rf::from_expr(self)?.as_constant())
    }
}

/// `parse` followed by `normalize`.
pub fn parse_normalized(text: &str, coords: &CoordinateSystem) -> Result<Expr, SymError> {
    parse_expression(text, coords)?.normalize()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs() -> CoordinateSystem {
        CoordinateSystem::new(1, 2).unwrap()
    }

    fn n(s: &str) -> Expr {
        parse_normalized(s, &cs()).unwrap()
    }

    #[test]
    fn differentiate_examples() {
        let c = cs();
        let d = n("sin(x1)^2").diff(c.x(0)).unwrap();
        assert_eq!(d, n("2*sin(x1)*cos(x1)"));
        assert!(n("x1").diff(c.t(0)).unwrap().is_zero_literal());
        let d = n("v1_1^2*exp(2*t1)").diff(c.v(0, 0)).unwrap();
        assert_eq!(d, n("2*v1_1*exp(2*t1)"));
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(n("x1 + x1"), n("2*x1"));
        assert_eq!(n("sin(x1)^2 + cos(x1)^2"), Expr::one());
        assert_eq!(n("exp(2*t1)*exp(-2*t1)"), Expr::one());
    }

    #[test]
    fn eval_examples() {
        let c = cs();
        let at = |pairs: &[(&str, f64)]| {
            let mut all = vec![("t1", 0.0), ("x1", 0.0), ("x2", 0.0), ("v1_1", 0.0), ("v2_1", 0.0)];
            for (k, v) in pairs {
                all.iter_mut().find(|(n, _)| n == k).unwrap().1 = *v;
            }
            Point::from_assignments(&c, all).unwrap()
        };
        assert_eq!(n("sin(x1)").eval(&at(&[])).unwrap(), 0.0);
        let err = parse_expression("1/x1", &c).unwrap().eval(&at(&[])).unwrap_err();
        match err {
            SymError::Domain { what, expr, .. } => {
                assert_eq!(what, "division by zero");
                assert_eq!(expr, "x1");
            }
            other => panic!("{other:?}"),
        }
        let e = n("exp(2*t1)").eval(&at(&[("t1", 0.5)])).unwrap();
        assert!((e - std::f64::consts::E).abs() < 1e-15);
    }

    #[test]
    fn derivative_rules_for_every_function() {
        let c = cs();
        let x = c.x(0);
        assert_eq!(n("tan(x1)").diff(x).unwrap(), n("1/cos(x1)^2"));
        assert_eq!(n("log(x1)").diff(x).unwrap(), n("1/x1"));
        assert_eq!(n("sqrt(x1)").diff(x).unwrap(), n("1/(2*sqrt(x1))"));
        assert_eq!(n("cos(x1^2)").diff(x).unwrap(), n("-2*x1*sin(x1^2)"));
        assert_eq!(n("exp(x1*x2)").diff(x).unwrap(), n("x2*exp(x1*x2)"));
    }

    #[test]
    fn symbolic_division_by_zero() {
        let c = cs();
        assert_eq!(parse_expression("1/(x1 - x1)", &c).unwrap().normalize(), Err(SymError::DivisionByZero));
    }
}
