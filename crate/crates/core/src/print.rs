//! Canonical rendering in the expression grammar: `1 - 1/4 g g*`, `(1 - q^2) a`, `2i q^-1 u*`.

use num_traits::{One, Signed, Zero};

use crate::laurent::LaurentCoefficient;
use crate::scalar::{GaussRat, Rational};

fn rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Sign and magnitude of a Gaussian rational; the magnitude is `None` when it is `1`.
fn signed_scalar(c: &GaussRat) -> (bool, Option<String>) {
    match (c.re.is_zero(), c.im.is_zero()) {
        (_, true) => (c.re.is_negative(), (!c.re.abs().is_one()).then(|| rational(&c.re.abs()))),
        (true, false) => {
            let m = c.im.abs();
            (c.im.is_negative(), Some(if m.is_one() { "i".into() } else { format!("{}i", rational(&m)) }))
        }
        (false, false) => (false, Some(c.to_string())),
    }
}

fn power(name: &str, e: i32) -> Option<String> {
    match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    }
}

/// One signed term: coefficient followed by the basis factors (`factors` may be empty).
pub(crate) fn term(c: &LaurentCoefficient, factors: &str) -> (bool, String) {
    let mut terms = c.terms();
    let single = match (terms.next(), terms.next()) {
        (Some(t), None) => Some(t),
        _ => None,
    };
    let Some((&(qa, zb), r)) = single else {
        let body = if factors.is_empty() { format!("({c})") } else { format!("({c}) {factors}") };
        return (false, body);
    };
    let (negative, magnitude) = signed_scalar(r);
    let mut parts: Vec<String> = magnitude.into_iter().chain(power("q", qa)).chain(power("zeta", zb)).collect();
    if !factors.is_empty() {
        parts.push(factors.to_string());
    }
    if parts.is_empty() {
        parts.push("1".into());
    }
    (negative, parts.join(" "))
}

/// Joins signed terms with ` + ` / ` - `; an empty sum is `0`.
pub(crate) fn join<I: IntoIterator<Item = (bool, String)>>(terms: I) -> String {
    let mut out = String::new();
    for (idx, (negative, body)) in terms.into_iter().enumerate() {
        match (idx, negative) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
