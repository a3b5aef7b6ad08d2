//! Text form of polynomials and rational functions.

mod parser;

pub use parser::{parse, parse_multivariate, ExprAst};

use num_traits::{One, Signed};

use crate::algebra::{Monomial, Polynomial, Rational, RationalFunction};
use crate::error::{Error, Result};

/// Exact bottom-up evaluation of a parsed expression.
pub fn to_ratfunc(ast: &ExprAst) -> Result<RationalFunction> {
    Ok(match ast {
        ExprAst::Var(1) => RationalFunction::x1(),
        ExprAst::Var(_) => RationalFunction::x2(),
        ExprAst::Int(k) => RationalFunction::constant(Rational::from_integer(k.clone())),
        ExprAst::Neg(a) => -&to_ratfunc(a)?,
        ExprAst::Add(a, b) => &to_ratfunc(a)? + &to_ratfunc(b)?,
        ExprAst::Sub(a, b) => &to_ratfunc(a)? - &to_ratfunc(b)?,
        ExprAst::Mul(a, b) => &to_ratfunc(a)? * &to_ratfunc(b)?,
        ExprAst::Div(a, b) => to_ratfunc(a)?.div(&to_ratfunc(b)?)?,
        ExprAst::Pow(a, k) => to_ratfunc(a)?.pow(*k)?,
    })
}

/// `parse` followed by `to_ratfunc`.
pub fn parse_ratfunc(text: &str) -> Result<RationalFunction> {
    to_ratfunc(&parse(text)?)
}

/// Parses an expression that must denote a polynomial.
pub fn parse_polynomial(text: &str) -> Result<Polynomial> {
    let f = parse_ratfunc(text)?;
    f.as_polynomial()
        .ok_or_else(|| Error::NotLaurent(format!("{text} is not a polynomial")))
}

pub fn print_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn push_monomial(out: &mut String, m: Monomial, names: [&str; 2]) {
    let mut first = true;
    for (e, name) in [(m.e1, names[0]), (m.e2, names[1])] {
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(name);
        if e > 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
}

/// Prints terms in descending monomial order with the given variable names,
/// e.g. `"x1^2*x2 + 2*x1 + 1"`.
pub fn print_polynomial_named(p: &Polynomial, names: [&str; 2]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().iter().rev().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let a = c.abs();
        if *m == Monomial::ONE {
            out.push_str(&print_rational(&a));
            continue;
        }
        if !a.is_one() {
            out.push_str(&print_rational(&a));
            out.push('*');
        }
        push_monomial(&mut out, *m, names);
    }
    out
}

pub fn print_polynomial(p: &Polynomial) -> String {
    print_polynomial_named(p, ["x1", "x2"])
}

/// Canonical text: `"(num)/(den)"`, with parentheses dropped around a
/// single-term numerator and around a denominator that is a bare variable
/// power.
pub fn print_canonical(f: &RationalFunction) -> String {
    print_canonical_named(f, ["x1", "x2"])
}

pub fn print_canonical_named(f: &RationalFunction, names: [&str; 2]) -> String {
    let num = print_polynomial_named(f.num(), names);
    if f.den().is_one() || f.num().is_zero() {
        return num;
    }
    let num = if f.num().len() > 1 { format!("({num})") } else { num };
    let den = print_polynomial_named(f.den(), names);
    let bare = match f.den().as_monomial() {
        Some((m, c)) => c.is_one() && (m.e1 == 0 || m.e2 == 0),
        None => false,
    };
    if bare {
        format!("{num}/{den}")
    } else {
        format!("{num}/({den})")
    }
}
