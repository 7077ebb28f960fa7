//! Finite-dimensional representations (exact or floating) of Pol(SU_q(2)) and Pol(G_q^θ),
//! characters, and the orthogonality check `π(Σ_p u*_{j,p} u_{i,p}) = δ_ij 1`.

use std::fmt::Debug;

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::{corep_check, Algebra, AlgebraError, CorepMatrix, Element, Monomial};
use crate::laurent::LaurentCoefficient;
use crate::scalar::{GaussRat, Rational};

/// Scalars a finite-dimensional representation can be written over.
pub trait RepScalar: Clone + Debug + PartialEq {
    /// Whether comparisons are exact (tolerance ignored).
    const EXACT: bool;
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn conj(&self) -> Self;
    fn abs(&self) -> f64;
    /// Substitute `q` and `ζ` into a coefficient.
    fn eval_coefficient(c: &LaurentCoefficient, q: &Self, zeta: &Self) -> Option<Self>;
    /// Zero in exact mode, `|x| ≤ tol` in floating mode.
    fn negligible(&self, tol: f64) -> bool;
}

impl RepScalar for GaussRat {
    const EXACT: bool = true;
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn conj(&self) -> Self {
        GaussRat::conj(self)
    }
    fn abs(&self) -> f64 {
        self.to_complex().norm()
    }
    fn eval_coefficient(c: &LaurentCoefficient, q: &Self, zeta: &Self) -> Option<Self> {
        c.eval_exact(q, zeta)
    }
    fn negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }
}

impl RepScalar for Complex64 {
    const EXACT: bool = false;
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn abs(&self) -> f64 {
        self.norm()
    }
    fn eval_coefficient(c: &LaurentCoefficient, q: &Self, zeta: &Self) -> Option<Self> {
        Some(c.eval(q.re, *zeta))
    }
    fn negligible(&self, tol: f64) -> bool {
        self.norm() <= tol
    }
}

/// Small dense square matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<S> {
    dim: usize,
    data: Vec<S>,
}

impl<S: RepScalar> DenseMatrix<S> {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![S::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = S::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, AlgebraError> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(AlgebraError::DimensionMismatch { expected: dim, found: rows.iter().map(Vec::len).max().unwrap_or(0) });
        }
        Ok(Self { dim, data: rows.into_iter().flatten().collect() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.dim + j]
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: &S) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|a| c.mul(a)).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a == &S::zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] = out.data[i * n + j].add(&a.mul(&rhs.data[k * n + j]));
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut result = Self::identity(self.dim);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(RepScalar::abs).fold(0.0, f64::max)
    }

    pub fn negligible(&self, tol: f64) -> bool {
        self.data.iter().all(|x| x.negligible(tol))
    }
}

/// A representation of Pol(SU_q(2)) or Pol(G_q^θ) on `C^dim`, verified on construction.
#[derive(Clone, Debug)]
pub struct FiniteDimRep<S: RepScalar> {
    algebra: Algebra,
    alpha: DenseMatrix<S>,
    gamma: DenseMatrix<S>,
    unitary: Option<DenseMatrix<S>>,
    q: S,
    zeta: S,
    tolerance: f64,
    residuals: Vec<(String, f64)>,
}

/// Exact representation over Gaussian rationals.
pub type ExactRep = FiniteDimRep<GaussRat>;
/// Floating-point representation.
pub type FloatRep = FiniteDimRep<Complex64>;

impl<S: RepScalar> FiniteDimRep<S> {
    /// Assign generator matrices and verify every defining relation.
    /// `unitary` must be given exactly when `algebra` is `GqTheta`.
    pub fn new(
        algebra: Algebra,
        alpha: DenseMatrix<S>,
        gamma: DenseMatrix<S>,
        unitary: Option<DenseMatrix<S>>,
        q: S,
        zeta: S,
        tolerance: f64,
    ) -> Result<Self, AlgebraError> {
        match (algebra, &unitary) {
            (Algebra::SUq2, None) | (Algebra::GqTheta, Some(_)) => {}
            _ => return Err(AlgebraError::IncompatibleRep { rep: algebra, element: algebra }),
        }
        let dim = alpha.dim();
        for m in std::iter::once(&gamma).chain(unitary.as_ref()) {
            if m.dim() != dim {
                return Err(AlgebraError::DimensionMismatch { expected: dim, found: m.dim() });
            }
        }
        let mut rep = Self { algebra, alpha, gamma, unitary, q, zeta, tolerance, residuals: Vec::new() };
        rep.residuals = rep.relation_defects();
        for (name, r) in &rep.residuals {
            let violated = if S::EXACT { *r != 0.0 } else { *r > tolerance };
            if violated {
                return Err(AlgebraError::RelationViolated { relation: name.clone(), residual: *r });
            }
        }
        Ok(rep)
    }

    fn relation_defects(&self) -> Vec<(String, f64)> {
        let n = self.dim();
        let one = DenseMatrix::identity(n);
        let (a, g) = (&self.alpha, &self.gamma);
        let (a_s, g_s) = (a.adjoint(), g.adjoint());
        let q2 = self.q.mul(&self.q);
        let mut out = vec![
            ("g* g - g g*", g_s.mul(g).sub(&g.mul(&g_s))),
            ("a g - q g a", a.mul(g).sub(&g.mul(a).scale(&self.q))),
            ("a g* - q g* a", a.mul(&g_s).sub(&g_s.mul(a).scale(&self.q))),
            ("a* a + g* g - 1", a_s.mul(a).add(&g_s.mul(g)).sub(&one)),
            ("a a* + q^2 g g* - 1", a.mul(&a_s).add(&g.mul(&g_s).scale(&q2)).sub(&one)),
        ];
        if let Some(u) = &self.unitary {
            let u_s = u.adjoint();
            out.push(("u* u - 1", u_s.mul(u).sub(&one)));
            out.push(("u u* - 1", u.mul(&u_s).sub(&one)));
            out.push(("u* g u - zeta g", u_s.mul(g).mul(u).sub(&g.scale(&self.zeta))));
            out.push(("u* a u - a", u_s.mul(a).mul(u).sub(a)));
        }
        out.into_iter()
            .map(|(name, m)| {
                // an exact nonzero defect is never reported as 0.0
                let r = if m.negligible(0.0) { 0.0 } else { m.max_abs().max(f64::MIN_POSITIVE) };
                (name.to_string(), r)
            })
            .collect()
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn dim(&self) -> usize {
        self.alpha.dim()
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Largest entry of each relation defect matrix.
    pub fn residuals(&self) -> &[(String, f64)] {
        &self.residuals
    }

    pub fn alpha(&self) -> &DenseMatrix<S> {
        &self.alpha
    }

    pub fn gamma(&self) -> &DenseMatrix<S> {
        &self.gamma
    }

    pub fn unitary(&self) -> Option<&DenseMatrix<S>> {
        self.unitary.as_ref()
    }

    fn accepts(&self, algebra: Algebra) -> bool {
        algebra == self.algebra || (algebra == Algebra::SUq2 && self.algebra == Algebra::GqTheta)
    }

    fn monomial(&self, m: &Monomial) -> Result<DenseMatrix<S>, AlgebraError> {
        let Monomial::Quantum { alpha, gamma, gamma_star, unitary } = *m else {
            return Err(AlgebraError::IncompatibleRep { rep: self.algebra, element: Algebra::Torus });
        };
        let a = if alpha >= 0 { self.alpha.pow(alpha as u32) } else { self.alpha.adjoint().pow(alpha.unsigned_abs()) };
        let mut out = a.mul(&self.gamma.pow(gamma)).mul(&self.gamma.adjoint().pow(gamma_star));
        if unitary != 0 {
            let u = self.unitary.as_ref().ok_or(AlgebraError::IncompatibleRep { rep: self.algebra, element: Algebra::GqTheta })?;
            let u = if unitary > 0 { u.pow(unitary as u32) } else { u.adjoint().pow(unitary.unsigned_abs()) };
            out = out.mul(&u);
        }
        Ok(out)
    }

    /// `π(x)`.
    pub fn eval(&self, x: &Element) -> Result<DenseMatrix<S>, AlgebraError> {
        if !self.accepts(x.algebra()) {
            return Err(AlgebraError::IncompatibleRep { rep: self.algebra, element: x.algebra() });
        }
        let mut out = DenseMatrix::zeros(self.dim());
        for (m, c) in x.terms() {
            let c = S::eval_coefficient(c, &self.q, &self.zeta).ok_or(AlgebraError::NotEvaluable)?;
            out = out.add(&self.monomial(m)?.scale(&c));
        }
        Ok(out)
    }
}

fn algebra_for(w_given: bool) -> Algebra {
    if w_given {
        Algebra::GqTheta
    } else {
        Algebra::SUq2
    }
}

/// Exact character `α ↦ z, γ ↦ 0, u_θ ↦ w` (with `w` only for G_q^θ).
pub fn character_exact(z: GaussRat, w: Option<GaussRat>, q: Rational, zeta: GaussRat) -> Result<ExactRep, AlgebraError> {
    for s in std::iter::once(&z).chain(w.as_ref()) {
        if !s.norm_sqr().is_one() {
            return Err(AlgebraError::NonUnitModulus(s.to_complex().norm()));
        }
    }
    let one = |x: GaussRat| DenseMatrix { dim: 1, data: vec![x] };
    FiniteDimRep::new(algebra_for(w.is_some()), one(z), DenseMatrix::zeros(1), w.map(one), GaussRat::real(q), zeta, 0.0)
}

/// Floating character; `|z| = |w| = 1` is required within `tol`.
pub fn character(z: Complex64, w: Option<Complex64>, q: f64, zeta: Complex64, tol: f64) -> Result<FloatRep, AlgebraError> {
    for s in std::iter::once(&z).chain(w.as_ref()) {
        if (s.norm() - 1.0).abs() > tol {
            return Err(AlgebraError::NonUnitModulus(s.norm()));
        }
    }
    let one = |x: Complex64| DenseMatrix { dim: 1, data: vec![x] };
    FiniteDimRep::new(algebra_for(w.is_some()), one(z), DenseMatrix::zeros(1), w.map(one), Complex64::new(q, 0.0), zeta, tol)
}

/// Table of `π(Σ_p u*_{j,p} u_{i,p})` with its comparison to `δ_ij 1`.
#[derive(Clone, Debug)]
pub struct Cor24Report<S: RepScalar> {
    pub table: Vec<Vec<DenseMatrix<S>>>,
    /// Largest entry of `π(…) − δ_ij 1` over the whole table.
    pub max_defect: f64,
    pub passed: bool,
}

pub fn cor24_check<S: RepScalar>(rep: &FiniteDimRep<S>, u: &CorepMatrix) -> Result<Cor24Report<S>, AlgebraError> {
    if !rep.accepts(u.algebra()) {
        return Err(AlgebraError::IncompatibleRep { rep: rep.algebra(), element: u.algebra() });
    }
    if !corep_check(u)?.passed() {
        return Err(AlgebraError::NotACorepresentation);
    }
    let n = rep.dim();
    let mut table = Vec::with_capacity(u.dim());
    let (mut max_defect, mut passed) = (0.0f64, true);
    for i in 0..u.dim() {
        let mut row = Vec::with_capacity(u.dim());
        for j in 0..u.dim() {
            let value = rep.eval(&u.conjugate_row_sum(i, j))?;
            let target = if i == j { DenseMatrix::identity(n) } else { DenseMatrix::zeros(n) };
            let defect = value.sub(&target);
            max_defect = max_defect.max(defect.max_abs());
            passed &= defect.negligible(rep.tolerance());
            row.push(value);
        }
        table.push(row);
    }
    Ok(Cor24Report { table, max_defect, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{adjoint, Generator};
    use crate::scalar::rat;

    fn gr(re: (i64, i64), im: (i64, i64)) -> GaussRat {
        GaussRat::new(rat(re.0, re.1), rat(im.0, im.1))
    }

    #[test]
    fn characters_evaluate_generators() {
        let chi = character_exact(GaussRat::from_int(1), Some(GaussRat::from_int(1)), rat(1, 2), GaussRat::from_int(1)).unwrap();
        let a = Element::generator(Algebra::GqTheta, Generator::Alpha).unwrap();
        let g = Element::generator(Algebra::GqTheta, Generator::Gamma).unwrap();
        assert_eq!(chi.eval(&a).unwrap(), DenseMatrix::identity(1));
        assert_eq!(chi.eval(&g).unwrap(), DenseMatrix::zeros(1));
        let chi = character_exact(GaussRat::i(), Some(-GaussRat::from_int(1)), rat(1, 2), GaussRat::from_int(1)).unwrap();
        let u = Element::generator(Algebra::GqTheta, Generator::U).unwrap();
        assert_eq!(chi.eval(&u).unwrap().get(0, 0), &-GaussRat::from_int(1));
    }

    #[test]
    fn non_unit_modulus_is_rejected() {
        assert!(matches!(
            character_exact(gr((1, 2), (0, 1)), None, rat(1, 2), GaussRat::from_int(1)),
            Err(AlgebraError::NonUnitModulus(_))
        ));
        assert!(character(Complex64::new(1.1, 0.0), None, 0.5, Complex64::new(1.0, 0.0), 1e-12).is_err());
    }

    #[test]
    fn positivity_under_a_character() {
        let chi = character_exact(gr((3, 5), (4, 5)), Some(gr((0, 1), (1, 1))), rat(1, 3), gr((-4, 5), (3, 5))).unwrap();
        let x = crate::corpus::random_elements(Algebra::GqTheta, 20, 3, 3, 7);
        for x in x {
            let v = chi.eval(&(&adjoint(&x) * &x)).unwrap();
            let v = v.get(0, 0);
            assert!(v.is_real());
            assert!(v.re >= rat(0, 1));
        }
    }

    #[test]
    fn cor24_on_characters() {
        let f = CorepMatrix::fundamental(Algebra::SUq2).unwrap();
        let chi = character_exact(gr((3, 5), (-4, 5)), None, rat(1, 2), GaussRat::from_int(1)).unwrap();
        let r = cor24_check(&chi, &f).unwrap();
        assert!(r.passed);
        assert_eq!(r.max_defect, 0.0);
        let chi = character_exact(GaussRat::from_int(1), Some(GaussRat::i()), rat(1, 2), gr((3, 5), (4, 5))).unwrap();
        let r = cor24_check(&chi, &CorepMatrix::group_like(1).unwrap()).unwrap();
        assert!(r.passed);
        let bad = CorepMatrix::new(1, vec![Element::generator(Algebra::SUq2, Generator::Alpha).unwrap()]).unwrap();
        assert!(cor24_check(&chi, &bad).is_err());
    }

    #[test]
    fn relation_violation_is_reported() {
        let two = DenseMatrix::from_rows(vec![vec![GaussRat::from_int(2)]]).unwrap();
        let err = FiniteDimRep::new(Algebra::SUq2, two, DenseMatrix::zeros(1), None, GaussRat::real(rat(1, 2)), GaussRat::from_int(1), 0.0);
        assert!(matches!(err, Err(AlgebraError::RelationViolated { .. })));
    }
}
