use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::product::multiply_monomials;
use super::AlgebraError;
use crate::laurent::LaurentCoefficient;
use crate::scalar::GaussRat;

/// Which of the fixed algebras an element lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Algebra {
    /// Pol(SU_q(2)), generated by `α`, `γ`.
    SUq2,
    /// The crossed product Pol(SU_q(2)) ⋊ ℤ with the unitary `u_θ`.
    GqTheta,
    /// Pol(T_θ): unitaries `v`, `w` with `wv = ζ vw`.
    Torus,
    /// Commutative Laurent polynomials in unitaries `z`, `u`: the codomain of the
    /// quotient onto the maximal torus.
    Circle,
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Algebra::SUq2 => "SUq2",
            Algebra::GqTheta => "GqTheta",
            Algebra::Torus => "Torus",
            Algebra::Circle => "Circle",
        };
        f.write_str(s)
    }
}

/// A normal-form basis word.
///
/// `Quantum` is `α^alpha γ^gamma (γ*)^gamma_star u_θ^unitary`, where a negative
/// `alpha` stands for `(α*)^{-alpha}`; `unitary` is always 0 in `SUq2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Monomial {
    Quantum { alpha: i32, gamma: u32, gamma_star: u32, unitary: i32 },
    Torus { v: i32, w: i32 },
    Circle { z: i32, u: i32 },
}

impl Monomial {
    pub const fn quantum(alpha: i32, gamma: u32, gamma_star: u32, unitary: i32) -> Self {
        Monomial::Quantum { alpha, gamma, gamma_star, unitary }
    }

    pub const fn torus(v: i32, w: i32) -> Self {
        Monomial::Torus { v, w }
    }

    pub const fn circle(z: i32, u: i32) -> Self {
        Monomial::Circle { z, u }
    }

    pub fn unit(algebra: Algebra) -> Self {
        match algebra {
            Algebra::SUq2 | Algebra::GqTheta => Self::quantum(0, 0, 0, 0),
            Algebra::Torus => Self::torus(0, 0),
            Algebra::Circle => Self::circle(0, 0),
        }
    }

    pub fn is_unit(&self) -> bool {
        matches!(
            self,
            Monomial::Quantum { alpha: 0, gamma: 0, gamma_star: 0, unitary: 0 }
                | Monomial::Torus { v: 0, w: 0 }
                | Monomial::Circle { z: 0, u: 0 }
        )
    }

    /// Word length in the generators and their adjoints.
    pub fn degree(&self) -> u32 {
        match *self {
            Monomial::Quantum { alpha, gamma, gamma_star, unitary } => {
                alpha.unsigned_abs() + gamma + gamma_star + unitary.unsigned_abs()
            }
            Monomial::Torus { v, w } => v.unsigned_abs() + w.unsigned_abs(),
            Monomial::Circle { z, u } => z.unsigned_abs() + u.unsigned_abs(),
        }
    }

    pub fn fits(&self, algebra: Algebra) -> bool {
        match (self, algebra) {
            (Monomial::Quantum { unitary, .. }, Algebra::SUq2) => *unitary == 0,
            (Monomial::Quantum { .. }, Algebra::GqTheta) => true,
            (Monomial::Torus { .. }, Algebra::Torus) => true,
            (Monomial::Circle { .. }, Algebra::Circle) => true,
            _ => false,
        }
    }
}

impl fmt::Display for Monomial {
    /// Factors in normal-form order, separated by spaces; the unit prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn factor(out: &mut Vec<String>, name: &str, exp: i64) {
            let (name, e) = if exp < 0 { (format!("{name}*"), -exp) } else { (name.to_string(), exp) };
            match e {
                0 => {}
                1 => out.push(name),
                _ => out.push(format!("{name}^{e}")),
            }
        }
        let mut parts = Vec::new();
        match *self {
            Monomial::Quantum { alpha, gamma, gamma_star, unitary } => {
                factor(&mut parts, "a", alpha as i64);
                factor(&mut parts, "g", gamma as i64);
                factor(&mut parts, "g*", gamma_star as i64);
                factor(&mut parts, "u", unitary as i64);
            }
            Monomial::Torus { v, w } => {
                factor(&mut parts, "v", v as i64);
                factor(&mut parts, "w", w as i64);
            }
            Monomial::Circle { z, u } => {
                factor(&mut parts, "z", z as i64);
                factor(&mut parts, "u", u as i64);
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// The generators accepted by [`Element::generator`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    Alpha,
    AlphaStar,
    Gamma,
    GammaStar,
    U,
    UStar,
    V,
    VStar,
    W,
    WStar,
    Z,
    ZStar,
}

impl Generator {
    fn monomial(self) -> Monomial {
        match self {
            Generator::Alpha => Monomial::quantum(1, 0, 0, 0),
            Generator::AlphaStar => Monomial::quantum(-1, 0, 0, 0),
            Generator::Gamma => Monomial::quantum(0, 1, 0, 0),
            Generator::GammaStar => Monomial::quantum(0, 0, 1, 0),
            Generator::U => Monomial::quantum(0, 0, 0, 1),
            Generator::UStar => Monomial::quantum(0, 0, 0, -1),
            Generator::V => Monomial::torus(1, 0),
            Generator::VStar => Monomial::torus(-1, 0),
            Generator::W => Monomial::torus(0, 1),
            Generator::WStar => Monomial::torus(0, -1),
            Generator::Z => Monomial::circle(1, 0),
            Generator::ZStar => Monomial::circle(-1, 0),
        }
    }
}

/// A finite linear combination of normal-form monomials with Laurent coefficients.
///
/// The term map never stores a zero coefficient, so structural equality is
/// equality in the algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    algebra: Algebra,
    terms: BTreeMap<Monomial, LaurentCoefficient>,
}

impl Element {
    pub fn zero(algebra: Algebra) -> Self {
        Self { algebra, terms: BTreeMap::new() }
    }

    pub fn one(algebra: Algebra) -> Self {
        Self::scalar(algebra, LaurentCoefficient::one())
    }

    pub fn scalar(algebra: Algebra, c: LaurentCoefficient) -> Self {
        Self::from_monomial(algebra, Monomial::unit(algebra), c).expect("unit fits every algebra")
    }

    pub fn from_monomial(
        algebra: Algebra,
        m: Monomial,
        c: LaurentCoefficient,
    ) -> Result<Self, AlgebraError> {
        if !m.fits(algebra) {
            return Err(AlgebraError::ForeignMonomial { monomial: m.to_string(), algebra });
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Ok(Self { algebra, terms })
    }

    pub fn basis(algebra: Algebra, m: Monomial) -> Result<Self, AlgebraError> {
        Self::from_monomial(algebra, m, LaurentCoefficient::one())
    }

    pub fn generator(algebra: Algebra, g: Generator) -> Result<Self, AlgebraError> {
        Self::basis(algebra, g.monomial())
            .map_err(|_| AlgebraError::IllegalGenerator { generator: format!("{g:?}"), algebra })
    }

    /// Builds an element from raw terms, dropping zeros and merging duplicates.
    pub fn from_terms<I>(algebra: Algebra, terms: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (Monomial, LaurentCoefficient)>,
    {
        let mut out = Self::zero(algebra);
        for (m, c) in terms {
            if !m.fits(algebra) {
                return Err(AlgebraError::ForeignMonomial { monomial: m.to_string(), algebra });
            }
            out.add_term(m, &c);
        }
        Ok(out)
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &LaurentCoefficient)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&LaurentCoefficient> {
        self.terms.get(m)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximal monomial degree; 0 for the zero element.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &LaurentCoefficient) {
        if c.is_zero() {
            return;
        }
        let remove = {
            let slot = self.terms.entry(m).or_default();
            slot.add_assign_ref(c);
            slot.is_zero()
        };
        if remove {
            self.terms.remove(&m);
        }
    }

    /// Adds `coeff * m1 * m2` into `self`.
    pub(crate) fn add_monomial_product(
        &mut self,
        m1: &Monomial,
        m2: &Monomial,
        coeff: &LaurentCoefficient,
    ) {
        multiply_monomials(m1, m2, coeff, &mut |m, c| self.add_term(m, &c));
    }

    fn check_same(&self, other: &Element) -> Result<(), AlgebraError> {
        if self.algebra == other.algebra {
            Ok(())
        } else {
            Err(AlgebraError::AlgebraMismatch { left: self.algebra, right: other.algebra })
        }
    }

    pub fn try_add(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, &-c);
        }
        Ok(out)
    }

    /// The normal form of `self * other`.
    pub fn multiply(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.check_same(other)?;
        let mut out = Element::zero(self.algebra);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_monomial_product(m1, m2, &(c1 * c2));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Element {
        let mut acc = Element::one(self.algebra);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, c: &LaurentCoefficient) -> Element {
        let mut out = Element::zero(self.algebra);
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.add_term(*m, &(v * c));
        }
        out
    }

    pub fn scale_rational(&self, c: &GaussRat) -> Element {
        self.scale(&LaurentCoefficient::constant(c.clone()))
    }

    /// Keeps only the terms whose monomial satisfies `pred`.
    pub fn filter<F: Fn(&Monomial) -> bool>(&self, pred: F) -> Element {
        Element {
            algebra: self.algebra,
            terms: self.terms.iter().filter(|(m, _)| pred(m)).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    /// Reinterprets an element of Pol(SU_q(2)) inside the crossed product (and back,
    /// when no `u_θ` occurs).
    pub fn retag(&self, algebra: Algebra) -> Result<Element, AlgebraError> {
        Element::from_terms(algebra, self.terms.iter().map(|(m, c)| (*m, c.clone())))
    }
}

impl Add for &Element {
    type Output = Element;
    /// Panics on mismatched algebras; use [`Element::try_add`] for a fallible sum.
    fn add(self, rhs: &Element) -> Element {
        self.try_add(rhs).expect("adding elements of different algebras")
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.try_sub(rhs).expect("subtracting elements of different algebras")
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.multiply(rhs).expect("multiplying elements of different algebras")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            algebra: self.algebra,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl fmt::Display for Element {
    /// Canonical rendering in the expression grammar, terms in normal-form order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().map(|(m, c)| {
            let factors = if m.is_unit() { String::new() } else { m.to_string() };
            crate::print::term(c, &factors)
        });
        f.write_str(&crate::print::join(terms))
    }
}
