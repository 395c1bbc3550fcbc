use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::coords::Coord;

pub type Rational = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Exp,
    Log,
    Sqrt,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sqrt" => Func::Sqrt,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    Const(Rational),
    Coord(Coord),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    /// Integer or rational power.
    Pow(Expr, Rational),
    Func(Func, Expr),
    Neg(Expr),
}

/// Immutable, cheaply clonable expression tree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Expr(Arc<Node>);

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Expr {
    pub fn node(&self) -> &Node {
        &self.0
    }

    fn from_node(node: Node) -> Self {
        Expr(Arc::new(node))
    }

    pub fn constant(q: Rational) -> Self {
        Self::from_node(Node::Const(q))
    }

    pub fn int(k: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(k)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::constant(Rational::new(num.into(), den.into()))
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn coord(c: Coord) -> Self {
        Self::from_node(Node::Coord(c))
    }

    pub fn sum(terms: Vec<Expr>) -> Self {
        let terms: Vec<Expr> = terms.into_iter().filter(|t| !t.is_zero_literal()).collect();
        match terms.len() {
            0 => Self::zero(),
            1 => terms.into_iter().next().unwrap(),
            _ => Self::from_node(Node::Sum(terms)),
        }
    }

    pub fn product(factors: Vec<Expr>) -> Self {
        if factors.iter().any(Expr::is_zero_literal) {
            return Self::zero();
        }
        let factors: Vec<Expr> = factors.into_iter().filter(|f| !f.is_one_literal()).collect();
        match factors.len() {
            0 => Self::one(),
            1 => factors.into_iter().next().unwrap(),
            _ => Self::from_node(Node::Product(factors)),
        }
    }

    pub fn pow(base: Expr, exponent: Rational) -> Self {
        if exponent.is_one() {
            base
        } else if exponent.is_zero() {
            Self::one()
        } else {
            Self::from_node(Node::Pow(base, exponent))
        }
    }

    pub fn powi(base: Expr, k: i64) -> Self {
        Self::pow(base, Rational::from_integer(k.into()))
    }

    pub fn func(f: Func, arg: Expr) -> Self {
        Self::from_node(Node::Func(f, arg))
    }

    pub fn sin(arg: Expr) -> Self {
        Self::func(Func::Sin, arg)
    }

    pub fn cos(arg: Expr) -> Self {
        Self::func(Func::Cos, arg)
    }

    pub fn exp(arg: Expr) -> Self {
        Self::func(Func::Exp, arg)
    }

    pub fn log(arg: Expr) -> Self {
        Self::func(Func::Log, arg)
    }

    pub fn recip(self) -> Self {
        Self::powi(self, -1)
    }

    pub fn as_const(&self) -> Option<&Rational> {
        match self.node() {
            Node::Const(q) => Some(q),
            _ => None,
        }
    }

    pub fn is_zero_literal(&self) -> bool {
        self.as_const().is_some_and(Zero::is_zero)
    }

    pub fn is_one_literal(&self) -> bool {
        self.as_const().is_some_and(One::is_one)
    }

    /// True when `c` occurs anywhere in the tree.
    pub fn depends_on(&self, c: Coord) -> bool {
        match self.node() {
            Node::Const(_) => false,
            Node::Coord(d) => *d == c,
            Node::Sum(v) | Node::Product(v) => v.iter().any(|e| e.depends_on(c)),
            Node::Pow(b, _) => b.depends_on(c),
            Node::Func(_, a) | Node::Neg(a) => a.depends_on(c),
        }
    }

    pub fn free_coords(&self) -> BTreeSet<Coord> {
        let mut out = BTreeSet::new();
        self.collect_coords(&mut out);
        out
    }

    fn collect_coords(&self, out: &mut BTreeSet<Coord>) {
        match self.node() {
            Node::Const(_) => {}
            Node::Coord(c) => {
                out.insert(*c);
            }
            Node::Sum(v) | Node::Product(v) => v.iter().for_each(|e| e.collect_coords(out)),
            Node::Pow(b, _) => b.collect_coords(out),
            Node::Func(_, a) | Node::Neg(a) => a.collect_coords(out),
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self.node() {
            Node::Const(_) | Node::Coord(_) => 1,
            Node::Sum(v) | Node::Product(v) => 1 + v.iter().map(Expr::size).sum::<usize>(),
            Node::Pow(b, _) => 1 + b.size(),
            Node::Func(_, a) | Node::Neg(a) => 1 + a.size(),
        }
    }
}

impl From<i64> for Expr {
    fn from(k: i64) -> Self {
        Expr::int(k)
    }
}

impl From<Coord> for Expr {
    fn from(c: Coord) -> Self {
        Expr::coord(c)
    }
}

impl Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::sum(vec![self, rhs])
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        Expr::sum(vec![self, -rhs])
    }
}

impl Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::product(vec![self, rhs])
    }
}

impl Div for Expr {
    type Output = Expr;
    fn div(self, rhs: Expr) -> Expr {
        Expr::product(vec![self, rhs.recip()])
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        match self.node() {
            Node::Const(q) => Expr::constant(-q),
            Node::Neg(inner) => inner.clone(),
            _ => Expr::from_node(Node::Neg(self)),
        }
    }
}

macro_rules! ref_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<&Expr> for &Expr {
            type Output = Expr;
            fn $m(self, rhs: &Expr) -> Expr {
                self.clone().$m(rhs.clone())
            }
        }
    )*};
}
ref_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builders_fold_identities() {
        let x = Expr::coord(Coord(0));
        assert_eq!(x.clone() * Expr::one(), x);
        assert_eq!(x.clone() + Expr::zero(), x);
        assert!((x.clone() * Expr::zero()).is_zero_literal());
        assert_eq!(-(-x.clone()), x);
        assert_eq!(-Expr::int(3), Expr::int(-3));
    }

    #[test]
    fn dependency_tracking() {
        let x = Expr::coord(Coord(1));
        let e = Expr::sin(x.clone()) * Expr::coord(Coord(0));
        assert!(e.depends_on(Coord(1)));
        assert!(!e.depends_on(Coord(2)));
        assert_eq!(e.free_coords().len(), 2);
    }
}
