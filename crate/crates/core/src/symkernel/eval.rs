use num_traits::ToPrimitive;

use super::coords::Point;
use super::expr::{Expr, Func, Node, Rational};
use super::SymError;

fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn domain(e: &Expr, at: &Point, what: &str) -> SymError {
    let mut expr = String::new();
    super::print::plain(e, at.names(), &mut expr);
    SymError::Domain { what: what.to_string(), expr, point: at.to_string() }
}

pub(crate) fn eval(e: &Expr, at: &Point) -> Result<f64, SymError> {
    let v = match e.node() {
        Node::Const(q) => to_f64(q),
        Node::Coord(c) => at.get(*c),
        Node::Sum(terms) => {
            let mut acc = 0.0;
            for t in terms {
                acc += eval(t, at)?;
            }
            acc
        }
        Node::Product(factors) => {
            let mut acc = 1.0;
            for f in factors {
                acc *= eval(f, at)?;
            }
            acc
        }
        Node::Pow(b, r) => {
            let base = eval(b, at)?;
            if r.is_integer() {
                let k = r.to_integer().to_i32().ok_or_else(|| domain(e, at, "exponent out of range"))?;
                if k < 0 && base == 0.0 {
                    return Err(domain(b, at, "division by zero"));
                }
                base.powi(k)
            } else {
                if base < 0.0 && r.denom() % 2u8 == 0u8.into() {
                    return Err(domain(b, at, "even root of a negative number"));
                }
                if base == 0.0 && r < &Rational::from_integer(0.into()) {
                    return Err(domain(b, at, "division by zero"));
                }
                let p = to_f64(&Rational::from_integer(r.numer().clone()));
                let q = to_f64(&Rational::from_integer(r.denom().clone()));
                let root = if base < 0.0 { -(-base).powf(1.0 / q) } else { base.powf(1.0 / q) };
                root.powf(p)
            }
        }
        Node::Neg(a) => -eval(a, at)?,
        Node::Func(f, a) => {
            let x = eval(a, at)?;
            match f {
                Func::Sin => x.sin(),
                Func::Cos => x.cos(),
                Func::Tan => {
                    if x.cos() == 0.0 {
                        return Err(domain(a, at, "tangent pole"));
                    }
                    x.tan()
                }
                Func::Exp => x.exp(),
                Func::Log => {
                    if x <= 0.0 {
                        return Err(domain(a, at, "log of a non-positive number"));
                    }
                    x.ln()
                }
                Func::Sqrt => {
                    if x < 0.0 {
                        return Err(domain(a, at, "sqrt of a negative number"));
                    }
                    x.sqrt()
                }
            }
        }
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(domain(e, at, "non-finite value"))
    }
}
