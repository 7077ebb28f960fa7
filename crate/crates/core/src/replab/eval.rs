//! Evaluation of symbolic elements in a representation, spectra and the spectral
//! scaling diagnostic.

use std::collections::HashMap;

use super::rep::Representation;
use crate::algebra::{Algebra, Element, Monomial};
use crate::error::LabError;
use crate::laurent::LaurentCoefficient;
use crate::linalg::{operator_norm, SparseMatrix, C64};

/// Numeric values substituted for `q` and `ζ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bindings {
    pub q: f64,
    pub zeta: Option<C64>,
}

impl Bindings {
    /// The values a representation was built with.
    pub fn of<R: Representation + ?Sized>(rep: &R) -> Self {
        Self { q: rep.q(), zeta: rep.zeta() }
    }
}

/// Numeric value of a coefficient; fails if `ζ` occurs but is unbound.
pub fn eval_coefficient(c: &LaurentCoefficient, b: &Bindings) -> Result<C64, LabError> {
    if c.is_zeta_free() {
        return Ok(c.eval(b.q, C64::new(1.0, 0.0)));
    }
    let zeta = b.zeta.ok_or(LabError::Unbound("zeta"))?;
    Ok(c.eval(b.q, zeta))
}

/// Caches generator powers while evaluating many monomials in one representation.
pub struct Evaluator<'a, R: Representation + ?Sized> {
    rep: &'a R,
    bindings: Bindings,
    cache: HashMap<(u8, u32), SparseMatrix>,
}

impl<'a, R: Representation + ?Sized> Evaluator<'a, R> {
    pub fn new(rep: &'a R, bindings: Bindings) -> Result<Self, LabError> {
        if (bindings.q - rep.q()).abs() > 1e-15 {
            return Err(LabError::InvalidParameter(format!(
                "q binding {} does not match the representation's q = {}",
                bindings.q,
                rep.q()
            )));
        }
        if let (Some(a), Some(b)) = (bindings.zeta, rep.zeta()) {
            if (a - b).norm() > 1e-12 {
                return Err(LabError::InvalidParameter("zeta binding does not match the representation".into()));
            }
        }
        Ok(Self { rep, bindings, cache: HashMap::new() })
    }

    fn power(&mut self, which: u8, e: u32) -> Result<SparseMatrix, LabError> {
        if e == 0 {
            return Ok(SparseMatrix::identity(self.rep.dim()));
        }
        if let Some(m) = self.cache.get(&(which, e)) {
            return Ok(m.clone());
        }
        let base = match which {
            0 => self.rep.alpha().clone(),
            1 => self.rep.alpha().adjoint(),
            2 => self.rep.gamma().clone(),
            3 => self.rep.gamma().adjoint(),
            4 | 5 => {
                let u = self.rep.unitary().ok_or(LabError::Algebra(crate::AlgebraError::IncompatibleRep {
                    rep: self.rep.algebra(),
                    element: Algebra::GqTheta,
                }))?;
                if which == 4 {
                    u.clone()
                } else {
                    u.adjoint()
                }
            }
            _ => unreachable!("generator code"),
        };
        let m = if e == 1 { base } else { self.power(which, e - 1)?.mul(&base) };
        self.cache.insert((which, e), m.clone());
        Ok(m)
    }

    pub fn monomial(&mut self, m: &Monomial) -> Result<SparseMatrix, LabError> {
        let Monomial::Quantum { alpha, gamma, gamma_star, unitary } = *m else {
            return Err(LabError::Algebra(crate::AlgebraError::IncompatibleRep {
                rep: self.rep.algebra(),
                element: Algebra::Torus,
            }));
        };
        let a = if alpha >= 0 { self.power(0, alpha as u32)? } else { self.power(1, alpha.unsigned_abs())? };
        let mut out = a.mul(&self.power(2, gamma)?).mul(&self.power(3, gamma_star)?);
        if unitary != 0 {
            let u = if unitary > 0 { self.power(4, unitary as u32)? } else { self.power(5, unitary.unsigned_abs())? };
            out = out.mul(&u);
        }
        Ok(out)
    }

    pub fn element(&mut self, x: &Element) -> Result<SparseMatrix, LabError> {
        let ok = x.algebra() == self.rep.algebra() || (x.algebra() == Algebra::SUq2 && self.rep.algebra() == Algebra::GqTheta);
        if !ok {
            return Err(LabError::Algebra(crate::AlgebraError::IncompatibleRep {
                rep: self.rep.algebra(),
                element: x.algebra(),
            }));
        }
        let n = self.rep.dim();
        let mut triplets = Vec::new();
        for (m, c) in x.terms() {
            let c = eval_coefficient(c, &self.bindings)?;
            triplets.extend(self.monomial(m)?.triplets().map(|(r, col, v)| (r, col, v * c)));
        }
        let out = SparseMatrix::from_triplets(n, n, triplets);
        if !out.is_finite() {
            return Err(LabError::NonFinite);
        }
        Ok(out)
    }
}

/// `π(x)` with explicit bindings for `q` and `ζ`.
pub fn eval_element_with<R: Representation + ?Sized>(rep: &R, x: &Element, b: Bindings) -> Result<SparseMatrix, LabError> {
    Evaluator::new(rep, b)?.element(x)
}

/// `π(x)` with the representation's own parameters.
pub fn eval_element<R: Representation + ?Sized>(rep: &R, x: &Element) -> Result<SparseMatrix, LabError> {
    eval_element_with(rep, x, Bindings::of(rep))
}

/// `‖π(xy) − π(x)π(y)‖`; nonzero only through the level-`K` truncation.
pub fn multiplicativity_defect<R: Representation + ?Sized>(rep: &R, x: &Element, y: &Element) -> Result<f64, LabError> {
    let mut ev = Evaluator::new(rep, Bindings::of(rep))?;
    let xy = x.multiply(y)?;
    let d = ev.element(&xy)?.sub(&ev.element(x)?.mul(&ev.element(y)?));
    operator_norm(&d)
}

/// Distinct eigenvalues of `π(γ*γ)` (ascending) with multiplicities. Values closer than
/// `1e-12` (relative to the largest) are merged.
pub fn spectrum_gamma_star_gamma<R: Representation + ?Sized>(rep: &R) -> Result<Vec<(f64, usize)>, LabError> {
    let x = rep.gamma().adjoint().mul(rep.gamma());
    if !x.is_diagonal() {
        return Err(LabError::InvalidParameter("gamma* gamma is not diagonal in this basis".into()));
    }
    let mut values: Vec<f64> = x.diagonal_entries().iter().map(|v| v.re).collect();
    values.sort_by(f64::total_cmp);
    let scale = values.last().copied().unwrap_or(0.0).abs().max(1.0);
    let mut out: Vec<(f64, usize)> = Vec::new();
    for v in values {
        match out.last_mut() {
            Some((w, count)) if (v - *w).abs() <= 1e-12 * scale => *count += 1,
            _ => out.push((v, 1)),
        }
    }
    Ok(out)
}

/// Which operator plays `y` in the scaling diagnostic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalingDirection {
    /// `y = π(α)`, scaling factor `q^{−2}` (`γ*γ α = q^{-2} α γ*γ`).
    Alpha,
    /// `y = π(α*)`, scaling factor `q^2`.
    AlphaStar,
    /// `y = 0`.
    Zero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalingBranch {
    /// The scaled value is again in the spectrum.
    Chain,
    /// `‖y p_{B_δ(λ)}(x)‖ ≤ 1e−10`.
    Vanish,
    /// Neither; only possible at the top truncation level.
    TruncationBoundary,
}

/// With `x = π(γ*γ)` and `y` mapping the `λ`-eigenspace of `x` into the eigenspace of the
/// scaled value (`q^{−2}λ` for `α`, `q^2λ` for `α*`): either `y` annihilates the spectral
/// subspace of `λ`, or the scaled value lies in the spectrum.
pub fn spectral_scaling_diagnostic<R: Representation + ?Sized>(
    rep: &R,
    lambda: f64,
    delta: f64,
    direction: ScalingDirection,
) -> Result<ScalingBranch, LabError> {
    let spectrum = spectrum_gamma_star_gamma(rep)?;
    let tol = 1e-12;
    let Some(pos) = spectrum.iter().position(|(v, _)| (v - lambda).abs() <= tol) else {
        return Err(LabError::NotInSpectrum { value: lambda });
    };
    let gap = spectrum
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != pos)
        .map(|(_, (v, _))| (v - lambda).abs())
        .fold(f64::INFINITY, f64::min);
    if !(delta > 0.0 && delta < gap) {
        return Err(LabError::GapExceeded { lambda, delta, gap });
    }
    let x = rep.gamma().adjoint().mul(rep.gamma()).diagonal_entries();
    let n = rep.dim();
    let projection = SparseMatrix::diagonal(
        &x.iter().map(|v| if (v.re - lambda).abs() < delta { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) }).collect::<Vec<_>>(),
    );
    let q2 = rep.q() * rep.q();
    let (y, scaled) = match direction {
        ScalingDirection::Alpha => (rep.alpha().clone(), lambda / q2),
        ScalingDirection::AlphaStar => (rep.alpha().adjoint(), lambda * q2),
        ScalingDirection::Zero => (SparseMatrix::zeros(n, n), f64::NAN),
    };
    if operator_norm(&y.mul(&projection))? <= 1e-10 {
        return Ok(ScalingBranch::Vanish);
    }
    if spectrum.iter().any(|(v, _)| (v - scaled).abs() <= tol * scaled.abs().max(1.0)) {
        return Ok(ScalingBranch::Chain);
    }
    Ok(ScalingBranch::TruncationBoundary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{adjoint, Generator};
    use crate::replab::rep::{build_full_rep, RepParams, ThetaSpec};

    fn gen(a: Algebra, g: Generator) -> Element {
        Element::generator(a, g).unwrap()
    }

    #[test]
    fn relations_evaluate_to_zero() {
        let rep = build_full_rep(RepParams::new(0.5, 4, 4).with_origin(true)).unwrap();
        let a = gen(Algebra::SUq2, Generator::Alpha);
        let g = gen(Algebra::SUq2, Generator::Gamma);
        assert_eq!(eval_element(&rep, &Element::one(Algebra::SUq2)).unwrap(), SparseMatrix::identity(rep.dim()));
        let rel = &(&(&adjoint(&a) * &a) + &(&adjoint(&g) * &g)) - &Element::one(Algebra::SUq2);
        assert!(rel.is_zero());
        let m = eval_element(&rep, &(&adjoint(&g) * &g)).unwrap();
        for k in 0..=4 {
            assert!((m.get(k * 4, k * 4).re - 0.25f64.powi(k as i32)).abs() < 1e-15);
        }
    }

    #[test]
    fn spectrum_with_multiplicities() {
        let rep = build_full_rep(RepParams::new(0.5, 1, 3).with_origin(true)).unwrap();
        assert_eq!(spectrum_gamma_star_gamma(&rep).unwrap(), vec![(0.0, 1), (0.25, 3), (1.0, 3)]);
        let rep0 = build_full_rep(RepParams::new(0.5, 0, 5)).unwrap();
        assert_eq!(spectrum_gamma_star_gamma(&rep0).unwrap(), vec![(1.0, 5)]);
    }

    #[test]
    fn scaling_branches() {
        let k = 4;
        let q: f64 = 0.5;
        let rep = build_full_rep(RepParams::new(q, k, 4)).unwrap();
        let d = 1e-4;
        for level in 0..=k {
            let lambda = q.powi(2 * level as i32);
            let b = spectral_scaling_diagnostic(&rep, lambda, d, ScalingDirection::Alpha).unwrap();
            assert_eq!(b, if level == 0 { ScalingBranch::Vanish } else { ScalingBranch::Chain });
            assert_eq!(spectral_scaling_diagnostic(&rep, lambda, d, ScalingDirection::Zero).unwrap(), ScalingBranch::Vanish);
            let b = spectral_scaling_diagnostic(&rep, lambda, d, ScalingDirection::AlphaStar).unwrap();
            assert_eq!(b, if level == k { ScalingBranch::Vanish } else { ScalingBranch::Chain });
        }
        assert!(matches!(spectral_scaling_diagnostic(&rep, 1.0, 0.9, ScalingDirection::Alpha), Err(LabError::GapExceeded { .. })));
        assert!(spectral_scaling_diagnostic(&rep, 0.3, 1e-4, ScalingDirection::Alpha).is_err());
    }

    #[test]
    fn zeta_must_be_bound_and_consistent() {
        let rep = build_full_rep(RepParams::new(0.5, 2, 4)).unwrap();
        let x = Element::scalar(Algebra::SUq2, LaurentCoefficient::zeta_pow(1));
        assert_eq!(eval_element(&rep, &x), Err(LabError::Unbound("zeta")));
        let crossed = build_full_rep(RepParams::new(0.5, 2, 4).with_theta(ThetaSpec::Rational { numerator: 1, denominator: 4 })).unwrap();
        let u = gen(Algebra::GqTheta, Generator::U);
        let g = gen(Algebra::GqTheta, Generator::Gamma);
        let lhs = eval_element(&crossed, &(&(&adjoint(&u) * &g) * &u)).unwrap();
        let rhs = eval_element(&crossed, &g.scale(&LaurentCoefficient::zeta_pow(1))).unwrap();
        assert!(lhs.sub(&rhs).max_abs() < 1e-15);
        let wrong = Bindings { q: 0.5, zeta: Some(C64::new(-1.0, 0.0)) };
        assert!(eval_element_with(&crossed, &u, wrong).is_err());
        assert!(eval_element(&rep, &u).is_err());
    }

    #[test]
    fn multiplicativity_defect_comes_from_the_boundary() {
        let rep = build_full_rep(RepParams::new(0.5, 3, 2)).unwrap();
        let a = gen(Algebra::SUq2, Generator::Alpha);
        let a_s = adjoint(&a);
        let d = multiplicativity_defect(&rep, &a, &a_s).unwrap();
        assert!((d - (1.0 - 0.5f64.powi(8))).abs() < 1e-14);
        assert!(multiplicativity_defect(&rep, &a_s, &a).unwrap() < 1e-15);
    }
}
