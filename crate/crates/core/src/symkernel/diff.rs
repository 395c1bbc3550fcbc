use num_traits::One;

use super::coords::Coord;
use super::expr::{Expr, Func, Node, Rational};

/// Raw derivative tree; callers normalize.
pub(crate) fn derivative(e: &Expr, wrt: Coord) -> Expr {
    if !e.depends_on(wrt) {
        return Expr::zero();
    }
    match e.node() {
        Node::Const(_) => Expr::zero(),
        Node::Coord(c) => {
            if *c == wrt {
                Expr::one()
            } else {
                Expr::zero()
            }
        }
        Node::Sum(terms) => Expr::sum(terms.iter().map(|t| derivative(t, wrt)).collect()),
        Node::Product(factors) => {
            let mut terms = Vec::new();
            for (k, f) in factors.iter().enumerate() {
                if !f.depends_on(wrt) {
                    continue;
                }
                let mut parts: Vec<Expr> = factors.clone();
                parts[k] = derivative(f, wrt);
                terms.push(Expr::product(parts));
            }
            Expr::sum(terms)
        }
        Node::Pow(b, r) => {
            let lowered = Expr::pow(b.clone(), r - Rational::one());
            Expr::product(vec![Expr::constant(r.clone()), lowered, derivative(b, wrt)])
        }
        Node::Neg(a) => -derivative(a, wrt),
        Node::Func(f, a) => {
            let da = derivative(a, wrt);
            let outer = match f {
                Func::Sin => Expr::cos(a.clone()),
                Func::Cos => -Expr::sin(a.clone()),
                Func::Tan => Expr::powi(Expr::cos(a.clone()), -2),
                Func::Exp => e.clone(),
                Func::Log => a.clone().recip(),
                Func::Sqrt => Expr::product(vec![Expr::ratio(1, 2), e.clone().recip()]),
            };
            outer * da
        }
    }
}
