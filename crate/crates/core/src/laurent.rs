//! Exact scalars of the algebras: finite sums `Σ c · q^a ζ^b` with Gaussian-rational `c`.
//!
//! `q` is a real central symbol (`q* = q`), `ζ` a central unimodular one (`ζ* = ζ^{-1}`).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::scalar::{GaussRat, Rational};

/// Key of a single Laurent term: `(q exponent, ζ exponent)`.
pub type LaurentExp = (i32, i32);

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LaurentCoefficient {
    terms: BTreeMap<LaurentExp, GaussRat>,
}

impl LaurentCoefficient {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussRat::from_int(n))
    }

    /// `c · q^q_exp · ζ^zeta_exp`.
    pub fn term(c: GaussRat, q_exp: i32, zeta_exp: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((q_exp, zeta_exp), c);
        }
        Self { terms }
    }

    pub fn q_pow(e: i32) -> Self {
        Self::term(GaussRat::one(), e, 0)
    }

    pub fn zeta_pow(e: i32) -> Self {
        Self::term(GaussRat::one(), 0, e)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LaurentExp, &GaussRat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when no term carries a power of `ζ`.
    pub fn is_zeta_free(&self) -> bool {
        self.terms.keys().all(|&(_, z)| z == 0)
    }

    /// True when the coefficient is a plain Gaussian rational (no `q`, no `ζ`).
    pub fn as_constant(&self) -> Option<GaussRat> {
        match self.terms.len() {
            0 => Some(GaussRat::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, key: LaurentExp, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        let remove = {
            let slot = self.terms.entry(key).or_insert_with(GaussRat::zero);
            *slot += c;
            slot.is_zero()
        };
        if remove {
            self.terms.remove(&key);
        }
    }

    pub fn add_assign_ref(&mut self, rhs: &Self) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, c);
        }
    }

    /// Adds `a * b` into `self` without materialising the product.
    pub fn add_product(&mut self, a: &Self, b: &Self) {
        for (&(qa, za), ca) in &a.terms {
            for (&(qb, zb), cb) in &b.terms {
                self.add_term((qa + qb, za + zb), &(ca * cb));
            }
        }
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    /// Multiplies by `q^dq ζ^dz`.
    pub fn shift(&self, dq: i32, dz: i32) -> Self {
        Self { terms: self.terms.iter().map(|(&(a, b), v)| ((a + dq, b + dz), v.clone())).collect() }
    }

    /// Complex conjugation: conjugates values and inverts `ζ`.
    pub fn conj(&self) -> Self {
        Self { terms: self.terms.iter().map(|(&(a, b), v)| ((a, -b), v.conj())).collect() }
    }

    /// Numerical substitution of `q` and `ζ`.
    pub fn eval(&self, q: f64, zeta: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(&(a, b), c)| c.to_complex() * q.powi(a) * zeta.powi(b))
            .sum()
    }

    /// Exact substitution; `None` if a needed inverse does not exist.
    pub fn eval_exact(&self, q: &GaussRat, zeta: &GaussRat) -> Option<GaussRat> {
        let mut acc = GaussRat::zero();
        for (&(a, b), c) in &self.terms {
            acc += &(&(c * &q.powi(a)?) * &zeta.powi(b)?);
        }
        Some(acc)
    }

    /// Substitutes a rational value for `q`, leaving `ζ` symbolic.
    pub fn substitute_q(&self, q: &Rational) -> Option<Self> {
        let qg = GaussRat::real(q.clone());
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            out.add_term((0, b), &(c * &qg.powi(a)?));
        }
        Some(out)
    }
}

impl From<GaussRat> for LaurentCoefficient {
    fn from(c: GaussRat) -> Self {
        Self::constant(c)
    }
}

impl Add for &LaurentCoefficient {
    type Output = LaurentCoefficient;
    fn add(self, rhs: &LaurentCoefficient) -> LaurentCoefficient {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &LaurentCoefficient {
    type Output = LaurentCoefficient;
    fn sub(self, rhs: &LaurentCoefficient) -> LaurentCoefficient {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, &-c);
        }
        out
    }
}

impl Mul for &LaurentCoefficient {
    type Output = LaurentCoefficient;
    fn mul(self, rhs: &LaurentCoefficient) -> LaurentCoefficient {
        let mut out = LaurentCoefficient::zero();
        out.add_product(self, rhs);
        out
    }
}

impl Neg for &LaurentCoefficient {
    type Output = LaurentCoefficient;
    fn neg(self) -> LaurentCoefficient {
        LaurentCoefficient { terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect() }
    }
}

impl fmt::Display for LaurentCoefficient {
    /// Renders in the expression grammar, e.g. `1 - q^2`, `-1/2 q^-1 zeta`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().map(|(k, c)| crate::print::term(&LaurentCoefficient::term(c.clone(), k.0, k.1), ""));
        f.write_str(&crate::print::join(terms))
    }
}
