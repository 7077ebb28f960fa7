//! Univariate polynomials and reduced rational functions in `q` over the
//! Gaussian rationals. Haar-state values live here.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::laurent::LaurentCoefficient;
use crate::scalar::{GaussRat, Rational};

/// Dense polynomial, `coeffs[i]` multiplies `q^i`; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<GaussRat>,
}

impl Poly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: GaussRat) -> Self {
        Self::new(vec![c])
    }

    pub fn new(mut coeffs: Vec<GaussRat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// `c · q^e`
    pub fn monomial(c: GaussRat, e: usize) -> Self {
        let mut coeffs = vec![GaussRat::zero(); e + 1];
        coeffs[e] = c;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[GaussRat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&GaussRat> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
            None => Self::zero(),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("polynomial division by zero");
        let lead_inv = d.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![GaussRat::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = &rem[top] * &lead_inv;
            let shift = top - dd;
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[shift + i] -= &(&c * dc);
            }
            quot[shift] = c;
            rem.pop();
            while rem.last().is_some_and(|x| x.is_zero()) {
                rem.pop();
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, q: &GaussRat) -> GaussRat {
        let mut acc = GaussRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + c;
        }
        acc
    }

    pub fn eval_f64(&self, q: f64) -> num_complex::Complex64 {
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * q + c.to_complex();
        }
        acc
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = GaussRat::zero();
        Poly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &-rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![GaussRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::new(out)
    }
}

/// A reduced fraction `numerator / denominator` of polynomials in `q`, with a
/// monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalValue {
    numerator: Poly,
    denominator: Poly,
}

impl RationalValue {
    pub fn new(numerator: Poly, denominator: Poly) -> Option<Self> {
        if denominator.is_zero() {
            return None;
        }
        if numerator.is_zero() {
            return Some(Self::zero());
        }
        let g = Poly::gcd(&numerator, &denominator);
        let (n, _) = numerator.div_rem(&g);
        let (d, _) = denominator.div_rem(&g);
        let lead = d.leading().unwrap().inv().unwrap();
        Some(Self { numerator: n.scale(&lead), denominator: d.scale(&lead) })
    }

    pub fn zero() -> Self {
        Self { numerator: Poly::zero(), denominator: Poly::constant(GaussRat::one()) }
    }

    pub fn one() -> Self {
        Self::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        Self { numerator: Poly::constant(c), denominator: Poly::constant(GaussRat::one()) }
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::constant(GaussRat::real(r))
    }

    /// Converts a `ζ`-free Laurent coefficient, clearing negative powers of `q`.
    pub fn from_laurent(c: &LaurentCoefficient) -> Option<Self> {
        if !c.is_zeta_free() {
            return None;
        }
        let min_q = c.terms().map(|(&(a, _), _)| a).min().unwrap_or(0).min(0);
        let mut num = Poly::zero();
        for (&(a, _), v) in c.terms() {
            num = &num + &Poly::monomial(v.clone(), (a - min_q) as usize);
        }
        Self::new(num, Poly::monomial(GaussRat::one(), (-min_q) as usize))
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn denominator(&self) -> &Poly {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.numerator == self.denominator
    }

    pub fn inv(&self) -> Option<Self> {
        Self::new(self.denominator.clone(), self.numerator.clone())
    }

    pub fn eval(&self, q: &GaussRat) -> Option<GaussRat> {
        let d = self.denominator.eval(q);
        if d.is_zero() {
            return None;
        }
        Some(&self.numerator.eval(q) / &d)
    }

    pub fn eval_f64(&self, q: f64) -> num_complex::Complex64 {
        self.numerator.eval_f64(q) / self.denominator.eval_f64(q)
    }
}

impl Add for &RationalValue {
    type Output = RationalValue;
    fn add(self, rhs: &RationalValue) -> RationalValue {
        if self.denominator == rhs.denominator {
            return RationalValue::new(&self.numerator + &rhs.numerator, self.denominator.clone())
                .unwrap();
        }
        RationalValue::new(
            &(&self.numerator * &rhs.denominator) + &(&rhs.numerator * &self.denominator),
            &self.denominator * &rhs.denominator,
        )
        .unwrap()
    }
}

impl Sub for &RationalValue {
    type Output = RationalValue;
    fn sub(self, rhs: &RationalValue) -> RationalValue {
        self + &-rhs
    }
}

impl Neg for &RationalValue {
    type Output = RationalValue;
    fn neg(self) -> RationalValue {
        RationalValue { numerator: -&self.numerator, denominator: self.denominator.clone() }
    }
}

impl Mul for &RationalValue {
    type Output = RationalValue;
    fn mul(self, rhs: &RationalValue) -> RationalValue {
        RationalValue::new(&self.numerator * &rhs.numerator, &self.denominator * &rhs.denominator)
            .unwrap()
    }
}

impl Div for &RationalValue {
    type Output = RationalValue;
    /// Panics on division by the zero function.
    fn div(self, rhs: &RationalValue) -> RationalValue {
        RationalValue::new(&self.numerator * &rhs.denominator, &self.denominator * &rhs.numerator)
            .expect("division by the zero rational function")
    }
}

fn fmt_poly(p: &Poly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let terms = p
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| crate::print::term(&crate::laurent::LaurentCoefficient::term(c.clone(), i as i32, 0), ""));
    f.write_str(&crate::print::join(terms))
}

impl fmt::Display for RationalValue {
    /// `1/(1 + q^2)`, `(1 - q^2)/(1 - q^6)`; sums are parenthesized only when needed.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        struct P<'a>(&'a Poly);
        impl fmt::Display for P<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt_poly(self.0, f)
            }
        }
        let wrap = |p: &Poly| {
            let s = P(p).to_string();
            if s.contains(' ') { format!("({s})") } else { s }
        };
        if self.denominator.degree() == Some(0) {
            return fmt_poly(&self.numerator, f);
        }
        write!(f, "{}/{}", wrap(&self.numerator), wrap(&self.denominator))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn p(cs: &[i64]) -> Poly {
        Poly::new(cs.iter().map(|&c| GaussRat::from_int(c)).collect())
    }

    #[test]
    fn reduces_common_factors() {
        // (1 - q^2) / (1 - q^4) = 1 / (1 + q^2)
        let v = RationalValue::new(p(&[1, 0, -1]), p(&[1, 0, 0, 0, -1])).unwrap();
        assert_eq!(v, RationalValue::new(p(&[1]), p(&[1, 0, 1])).unwrap());
        assert_eq!(v.denominator(), &p(&[1, 0, 1]));
    }

    #[test]
    fn arithmetic_and_evaluation() {
        let a = RationalValue::new(p(&[1]), p(&[1, 1])).unwrap();
        let b = RationalValue::new(p(&[1]), p(&[1, -1])).unwrap();
        // 1/(1+q) + 1/(1-q) = 2/(1-q^2)
        let s = &a + &b;
        assert_eq!(s.eval(&GaussRat::real(rat(1, 2))).unwrap(), GaussRat::real(rat(8, 3)));
        assert!((&s - &s).is_zero());
        assert!((&a / &a).is_one());
        assert!(RationalValue::new(p(&[1]), Poly::zero()).is_none());
    }

    #[test]
    fn from_laurent_clears_negative_powers() {
        let c = &LaurentCoefficient::q_pow(-1) + &LaurentCoefficient::one();
        let v = RationalValue::from_laurent(&c).unwrap();
        assert_eq!(v.eval(&GaussRat::real(rat(1, 2))).unwrap(), GaussRat::from_int(3));
        assert!(RationalValue::from_laurent(&LaurentCoefficient::zeta_pow(1)).is_none());
    }
}
