//! Chebyshev interpolants on `[−1, 1]`, evaluated by Clenshaw's recurrence on scalars,
//! sparse matrices and symbolic elements.

use std::f64::consts::PI;

use crate::algebra::Element;
use crate::error::LabError;
use crate::laurent::LaurentCoefficient;
use crate::linalg::{SparseMatrix, C64};
use crate::scalar::{rational_from_f64, GaussRat};

/// Function to approximate.
#[derive(Clone, Debug, PartialEq)]
pub enum ChebTarget {
    /// `max(s, 0)`
    Ramp,
    /// `|s|`
    Abs,
    /// Piecewise-linear interpolation of `(s, f(s))` samples, constant beyond the ends.
    Table(Vec<(f64, f64)>),
}

impl ChebTarget {
    pub fn eval(&self, s: f64) -> f64 {
        match self {
            ChebTarget::Ramp => s.max(0.0),
            ChebTarget::Abs => s.abs(),
            ChebTarget::Table(t) => {
                let Some(first) = t.first() else { return 0.0 };
                if s <= first.0 {
                    return first.1;
                }
                for w in t.windows(2) {
                    let ((x0, y0), (x1, y1)) = (w[0], w[1]);
                    if s <= x1 {
                        return if x1 == x0 { y1 } else { y0 + (y1 - y0) * (s - x0) / (x1 - x0) };
                    }
                }
                t[t.len() - 1].1
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ChebTarget::Ramp => "ramp",
            ChebTarget::Abs => "abs",
            ChebTarget::Table(_) => "table",
        }
    }
}

/// `p(s) = Σ_k c_k T_k(s)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChebPoly {
    coeffs: Vec<f64>,
}

/// Interpolant together with its sup-error on a 10⁴-point grid.
#[derive(Clone, Debug, PartialEq)]
pub struct ChebApprox {
    pub poly: ChebPoly,
    pub sup_error: f64,
}

/// Number of uniform grid intervals used to measure the sup-error.
pub const ERROR_GRID: usize = 10_000;

/// Interpolate at the `D+1` Chebyshev nodes `cos(π(j+½)/(D+1))`.
pub fn chebyshev_approx(target: &ChebTarget, degree: usize) -> ChebApprox {
    let n = degree + 1;
    let nodes: Vec<f64> = (0..n).map(|j| (PI * (j as f64 + 0.5) / n as f64).cos()).collect();
    let values: Vec<f64> = nodes.iter().map(|&x| target.eval(x)).collect();
    let coeffs: Vec<f64> = (0..n)
        .map(|k| {
            let s: f64 = (0..n).map(|j| values[j] * (PI * k as f64 * (j as f64 + 0.5) / n as f64).cos()).sum();
            let c = 2.0 * s / n as f64;
            if k == 0 {
                c / 2.0
            } else {
                c
            }
        })
        .collect();
    let poly = ChebPoly { coeffs };
    let sup_error = (0..=ERROR_GRID)
        .map(|i| -1.0 + 2.0 * i as f64 / ERROR_GRID as f64)
        .map(|s| (poly.eval(s) - target.eval(s)).abs())
        .fold(0.0, f64::max);
    ChebApprox { poly, sup_error }
}

impl ChebPoly {
    pub fn new(coeffs: Vec<f64>) -> Result<Self, LabError> {
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(LabError::NonFinite);
        }
        Ok(Self { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval(&self, s: f64) -> f64 {
        let (mut b1, mut b2) = (0.0, 0.0);
        for &c in self.coeffs.iter().skip(1).rev() {
            let b0 = c + 2.0 * s * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        self.coeffs.first().copied().unwrap_or(0.0) + s * b1 - b2
    }

    /// `p(T)` for a square matrix `T` (Clenshaw; never expands in monomials).
    pub fn eval_matrix(&self, t: &SparseMatrix) -> SparseMatrix {
        let n = t.rows();
        let id = SparseMatrix::identity(n);
        let two_t = t.scale(C64::new(2.0, 0.0));
        let (mut b1, mut b2) = (SparseMatrix::zeros(n, n), SparseMatrix::zeros(n, n));
        for &c in self.coeffs.iter().skip(1).rev() {
            let b0 = id.scale(C64::new(c, 0.0)).add(&two_t.mul(&b1)).sub(&b2);
            b2 = b1;
            b1 = b0;
        }
        let c0 = self.coeffs.first().copied().unwrap_or(0.0);
        id.scale(C64::new(c0, 0.0)).add(&t.mul(&b1)).sub(&b2)
    }

    /// `p(t)` as an exact element; every float coefficient is converted to the exactly
    /// equal dyadic rational.
    pub fn eval_element(&self, t: &Element) -> Result<Element, LabError> {
        let algebra = t.algebra();
        let exact = |c: f64| -> Result<Element, LabError> {
            let r = rational_from_f64(c).ok_or(LabError::NonFinite)?;
            Ok(Element::scalar(algebra, LaurentCoefficient::constant(GaussRat::real(r))))
        };
        let two_t = t.scale(&LaurentCoefficient::from_int(2));
        let (mut b1, mut b2) = (Element::zero(algebra), Element::zero(algebra));
        for &c in self.coeffs.iter().skip(1).rev() {
            let b0 = &(&exact(c)? + &two_t.multiply(&b1)?) - &b2;
            b2 = b1;
            b1 = b0;
        }
        let c0 = self.coeffs.first().copied().unwrap_or(0.0);
        Ok(&(&exact(c0)? + &t.multiply(&b1)?) - &b2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_and_identity() {
        let c = chebyshev_approx(&ChebTarget::Table(vec![(-1.0, 3.0), (1.0, 3.0)]), 6);
        assert!((c.poly.coeffs()[0] - 3.0).abs() < 1e-14);
        assert!(c.poly.coeffs()[1..].iter().all(|x| x.abs() < 1e-14));
        let id = chebyshev_approx(&ChebTarget::Table(vec![(-1.0, -1.0), (1.0, 1.0)]), 1);
        assert!(id.sup_error < 1e-14);
    }

    #[test]
    fn ramp_degree_64() {
        let r = chebyshev_approx(&ChebTarget::Ramp, 64);
        assert!(r.sup_error <= 0.01, "{}", r.sup_error);
        // independent dense-grid oracle at points off the error grid
        let worst = (0..4001)
            .map(|i| -1.0 + 2.0 * (i as f64 + 0.31) / 4001.5)
            .map(|s| (r.poly.eval(s) - s.max(0.0)).abs())
            .fold(0.0, f64::max);
        assert!(worst <= 0.01);
    }

    #[test]
    fn matrix_and_scalar_evaluation_agree() {
        let p = chebyshev_approx(&ChebTarget::Abs, 12).poly;
        let d = [-0.9, -0.1, 0.3, 0.75];
        let m = SparseMatrix::diagonal(&d.iter().map(|&x| C64::new(x, 0.0)).collect::<Vec<_>>());
        let pm = p.eval_matrix(&m);
        for (i, &x) in d.iter().enumerate() {
            assert!((pm.get(i, i).re - p.eval(x)).abs() < 1e-13);
        }
    }
}
