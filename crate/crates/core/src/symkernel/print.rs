//! Printers: the plain grammar accepted by the parser, and LaTeX.

use std::fmt::{self, Write};

use num_traits::{One, Signed};

use super::expr::{Expr, Node, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Sum,
    Product,
    Unary,
    Power,
    Atom,
}

fn prec(e: &Expr) -> Prec {
    match e.node() {
        Node::Sum(_) => Prec::Sum,
        Node::Product(_) => Prec::Product,
        Node::Neg(_) => Prec::Unary,
        Node::Const(q) if q.is_negative() => Prec::Unary,
        Node::Const(q) if !q.is_integer() => Prec::Product,
        Node::Pow(_, r) if r.is_negative() => Prec::Product,
        Node::Pow(..) => Prec::Power,
        Node::Const(_) | Node::Coord(_) | Node::Func(..) => Prec::Atom,
    }
}

/// Splits a product into numerator and denominator factors.
fn split_fraction(factors: &[Expr]) -> (Vec<Expr>, Vec<Expr>) {
    let mut num = Vec::new();
    let mut den = Vec::new();
    for f in factors {
        match f.node() {
            Node::Pow(b, r) if r.is_negative() => den.push(Expr::pow(b.clone(), -r)),
            Node::Const(q) if !q.is_integer() && q.numer().is_one() => {
                den.push(Expr::constant(Rational::from_integer(q.denom().clone())))
            }
            _ => num.push(f.clone()),
        }
    }
    (num, den)
}

fn write_rational(out: &mut String, q: &Rational) {
    if q.is_integer() {
        write!(out, "{}", q.numer()).unwrap();
    } else {
        write!(out, "{}/{}", q.numer(), q.denom()).unwrap();
    }
}

pub(crate) fn plain(e: &Expr, cs: &[String], out: &mut String) {
    match e.node() {
        Node::Const(q) => write_rational(out, q),
        Node::Coord(c) => out.push_str(&cs[c.index()]),
        Node::Sum(terms) => {
            for (k, t) in terms.iter().enumerate() {
                let (neg, body) = match t.node() {
                    Node::Neg(inner) => (true, inner.clone()),
                    Node::Const(q) if q.is_negative() => (true, Expr::constant(-q)),
                    _ => (false, t.clone()),
                };
                if k == 0 {
                    if neg {
                        out.push('-');
                        wrapped(&body, Prec::Product, cs, out);
                    } else {
                        wrapped(&body, Prec::Sum, cs, out);
                    }
                } else {
                    out.push_str(if neg { " - " } else { " + " });
                    wrapped(&body, Prec::Product, cs, out);
                }
            }
        }
        Node::Pow(_, r) if r.is_negative() => plain_product(std::slice::from_ref(e), cs, out),
        Node::Product(factors) => plain_product(factors, cs, out),
        Node::Pow(b, r) => {
            wrapped(b, Prec::Atom, cs, out);
            out.push('^');
            if r.is_integer() && !r.is_negative() {
                write_rational(out, r);
            } else {
                out.push('(');
                write_rational(out, r);
                out.push(')');
            }
        }
        Node::Func(f, a) => {
            out.push_str(f.name());
            out.push('(');
            plain(a, cs, out);
            out.push(')');
        }
        Node::Neg(a) => {
            out.push('-');
            wrapped(a, Prec::Product, cs, out);
        }
    }
}

fn plain_product(factors: &[Expr], cs: &[String], out: &mut String) {
    let (num, den) = split_fraction(factors);
    if num.is_empty() {
        out.push('1');
    }
    for (k, f) in num.iter().enumerate() {
        if k > 0 {
            out.push('*');
        }
        wrapped(f, Prec::Unary, cs, out);
    }
    if !den.is_empty() {
        out.push('/');
        if den.len() == 1 {
            wrapped(&den[0], Prec::Power, cs, out);
        } else {
            out.push('(');
            for (k, f) in den.iter().enumerate() {
                if k > 0 {
                    out.push('*');
                }
                wrapped(f, Prec::Unary, cs, out);
            }
            out.push(')');
        }
    }
}

fn wrapped(e: &Expr, min: Prec, cs: &[String], out: &mut String) {
    if prec(e) < min {
        out.push('(');
        plain(e, cs, out);
        out.push(')');
    } else {
        plain(e, cs, out);
    }
}

pub(crate) fn latex(e: &Expr, cs: &[String], out: &mut String) {
    match e.node() {
        Node::Const(q) => {
            if q.is_integer() {
                write!(out, "{}", q.numer()).unwrap();
            } else {
                let sign = if q.is_negative() { "-" } else { "" };
                write!(out, "{sign}\\frac{{{}}}{{{}}}", q.numer().abs(), q.denom()).unwrap();
            }
        }
        Node::Coord(c) => out.push_str(&latex_name(&cs[c.index()])),
        Node::Sum(terms) => {
            for (k, t) in terms.iter().enumerate() {
                let (neg, body) = match t.node() {
                    Node::Neg(inner) => (true, inner.clone()),
                    Node::Const(q) if q.is_negative() => (true, Expr::constant(-q)),
                    _ => (false, t.clone()),
                };
                if neg {
                    out.push_str(if k == 0 { "-" } else { " - " });
                } else if k > 0 {
                    out.push_str(" + ");
                }
                latex_wrapped(&body, Prec::Product, cs, out);
            }
        }
        Node::Pow(_, r) if r.is_negative() => latex_product(std::slice::from_ref(e), cs, out),
        Node::Product(factors) => latex_product(factors, cs, out),
        Node::Pow(b, r) => {
            latex_wrapped(b, Prec::Atom, cs, out);
            out.push_str("^{");
            if r.is_integer() {
                write!(out, "{}", r.numer()).unwrap();
            } else {
                write!(out, "{}/{}", r.numer(), r.denom()).unwrap();
            }
            out.push('}');
        }
        Node::Func(f, a) => {
            write!(out, "\\{}\\left(", f.name()).unwrap();
            latex(a, cs, out);
            out.push_str("\\right)");
        }
        Node::Neg(a) => {
            out.push('-');
            latex_wrapped(a, Prec::Unary, cs, out);
        }
    }
}

fn latex_product(factors: &[Expr], cs: &[String], out: &mut String) {
    let (num, den) = split_fraction(factors);
    let mut body = String::new();
    if num.is_empty() {
        body.push('1');
    }
    for (k, f) in num.iter().enumerate() {
        if k > 0 {
            body.push_str(" \\, ");
        }
        latex_wrapped(f, Prec::Unary, cs, &mut body);
    }
    if den.is_empty() {
        out.push_str(&body);
    } else {
        let mut d = String::new();
        for (k, f) in den.iter().enumerate() {
            if k > 0 {
                d.push_str(" \\, ");
            }
            latex_wrapped(f, Prec::Unary, cs, &mut d);
        }
        write!(out, "\\frac{{{body}}}{{{d}}}").unwrap();
    }
}

fn latex_wrapped(e: &Expr, min: Prec, cs: &[String], out: &mut String) {
    if prec(e) < min {
        out.push_str("\\left(");
        latex(e, cs, out);
        out.push_str("\\right)");
    } else {
        latex(e, cs, out);
    }
}

/// `v2_1` → `x^{2}_{1}`, `t1` → `t^{1}`, other names verbatim.
fn latex_name(name: &str) -> String {
    if let Some(rest) = name.strip_prefix('v') {
        if let Some((i, a)) = rest.split_once('_') {
            if !i.is_empty() && i.chars().all(|c| c.is_ascii_digit()) {
                return format!("x^{{{i}}}_{{{a}}}");
            }
        }
    }
    let split = name.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    if split > 0 && split < name.len() && !name[..split].contains('_') {
        format!("{}^{{{}}}", &name[..split], &name[split..])
    } else {
        name.replace('_', "\\_")
    }
}

pub struct Plain<'a> {
    pub(crate) expr: &'a Expr,
    pub(crate) names: &'a [String],
}

impl fmt::Display for Plain<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        plain(self.expr, self.names, &mut s);
        f.write_str(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::super::coords::CoordinateSystem;
    use super::super::parse::parse_expression;
    use super::*;

    #[test]
    fn prints_canonical_forms() {
        let cs = CoordinateSystem::new(1, 2).unwrap();
        let show = |s: &str| parse_expression(s, &cs).unwrap().normalize().unwrap().to_string(&cs);
        assert_eq!(show("x1 + x1"), "2*x1");
        assert_eq!(show("sin(x1)^2 + cos(x1)^2"), "1");
        assert_eq!(show("exp(2*t1)*exp(-2*t1)"), "1");
        assert_eq!(show("1/x1"), "1/x1");
        assert_eq!(show("-x1/2"), "-x1/2");
        assert_eq!(show("1/(x1^2+1)"), "1/(1 + x1^2)");
        assert_eq!(show("cos(x1)/sin(x1)"), "cos(x1)/sin(x1)");
        assert_eq!(show("sqrt(x2)"), "x2^(1/2)");
    }

    #[test]
    fn latex_names() {
        assert_eq!(latex_name("v2_1"), "x^{2}_{1}");
        assert_eq!(latex_name("t1"), "t^{1}");
        assert_eq!(latex_name("theta"), "theta");
    }
}
