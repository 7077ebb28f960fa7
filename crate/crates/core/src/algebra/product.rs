//! Normal-form product of two basis monomials.
//!
//! The rewriting rules are applied in closed form:
//!
//! * `u^l` moves right through `γ^m (γ*)^n` picking up `ζ^{-l(m-n)}`
//!   (from `γ u = ζ u γ`, `γ* u = ζ^{-1} u γ*`) and commutes with `α`;
//! * `γ^m (γ*)^n` moves right through `α^k` picking up `q^{-k(m+n)}`
//!   (from `α γ = q γ α`, `α γ* = q γ* α` and their adjoints);
//! * opposite `α`-powers cancel pairwise through `α α* = 1 - q² N` and
//!   `α* α = 1 - N` with `N = γ γ*`, using `N α = q^{-2} α N`.

use crate::laurent::LaurentCoefficient;
use super::Monomial;

/// Coefficients (in `q`) of a polynomial in `N = γγ*`, index = power of `N`.
type NPoly = Vec<LaurentCoefficient>;

/// `∏ (1 - q^{e} N)` over the given exponents.
fn n_product(exponents: impl Iterator<Item = i32>) -> NPoly {
    let mut poly: NPoly = vec![LaurentCoefficient::one()];
    for e in exponents {
        let mut next = vec![LaurentCoefficient::zero(); poly.len() + 1];
        for (j, c) in poly.iter().enumerate() {
            next[j].add_assign_ref(c);
            next[j + 1].add_assign_ref(&-&c.shift(e, 0));
        }
        poly = next;
    }
    poly
}

/// Reduces `α^{k1} α^{k2}` to `α^{k1+k2} P(N)`.
fn alpha_reduction(k1: i32, k2: i32) -> NPoly {
    if k1 > 0 && k2 < 0 {
        // α^a (α*)^b = α^{a-s} (α*)^{b-s} ∏_{i<s} (1 - q^{2(b-i)} N)
        let b = -k2;
        let s = k1.min(b);
        n_product((0..s).map(move |i| 2 * (b - i)))
    } else if k1 < 0 && k2 > 0 {
        // (α*)^a α^b = (α*)^{a-s} α^{b-s} ∏_{i<s} (1 - q^{-2(b-1-i)} N)
        let b = k2;
        let s = (-k1).min(b);
        n_product((0..s).map(move |i| -2 * (b - 1 - i)))
    } else {
        vec![LaurentCoefficient::one()]
    }
}

/// Emits `coeff · m1 · m2` in normal form through `sink`.
///
/// Panics if the monomials belong to different algebra families; callers
/// check algebra tags first.
pub(crate) fn multiply_monomials(
    m1: &Monomial,
    m2: &Monomial,
    coeff: &LaurentCoefficient,
    sink: &mut dyn FnMut(Monomial, LaurentCoefficient),
) {
    if coeff.is_zero() {
        return;
    }
    match (*m1, *m2) {
        (
            Monomial::Quantum { alpha: k1, gamma: g1, gamma_star: s1, unitary: l1 },
            Monomial::Quantum { alpha: k2, gamma: g2, gamma_star: s2, unitary: l2 },
        ) => {
            let zeta_exp = -l1 * (g2 as i32 - s2 as i32);
            let q_exp = -k2 * (g1 + s1) as i32;
            let base = coeff.shift(q_exp, zeta_exp);
            let poly = alpha_reduction(k1, k2);
            for (j, p) in poly.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                let j = j as u32;
                sink(
                    Monomial::Quantum {
                        alpha: k1 + k2,
                        gamma: g1 + g2 + j,
                        gamma_star: s1 + s2 + j,
                        unitary: l1 + l2,
                    },
                    &base * p,
                );
            }
        }
        (Monomial::Torus { v: a, w: b }, Monomial::Torus { v: c, w: d }) => {
            // w^b v^c = ζ^{bc} v^c w^b
            sink(Monomial::Torus { v: a + c, w: b + d }, coeff.shift(0, b * c));
        }
        (Monomial::Circle { z: a, u: b }, Monomial::Circle { z: c, u: d }) => {
            sink(Monomial::Circle { z: a + c, u: b + d }, coeff.clone());
        }
        _ => panic!("monomials from different algebra families: {m1} and {m2}"),
    }
}

/// `(coeff · m)*` in normal form.
pub(crate) fn adjoint_monomial(
    m: &Monomial,
    coeff: &LaurentCoefficient,
    sink: &mut dyn FnMut(Monomial, LaurentCoefficient),
) {
    let c = coeff.conj();
    match *m {
        Monomial::Quantum { alpha, gamma, gamma_star, unitary } => {
            // (α^k γ^m γ*^n u^l)* = u^{-l} γ^n γ*^m α^{-k}
            let mut first: Vec<(Monomial, LaurentCoefficient)> = Vec::new();
            multiply_monomials(
                &Monomial::quantum(0, 0, 0, -unitary),
                &Monomial::quantum(0, gamma_star, gamma, 0),
                &c,
                &mut |mm, cc| first.push((mm, cc)),
            );
            for (mm, cc) in first {
                multiply_monomials(&mm, &Monomial::quantum(-alpha, 0, 0, 0), &cc, sink);
            }
        }
        Monomial::Torus { v, w } => {
            multiply_monomials(&Monomial::torus(0, -w), &Monomial::torus(-v, 0), &c, sink);
        }
        Monomial::Circle { z, u } => sink(Monomial::circle(-z, -u), c),
    }
}
