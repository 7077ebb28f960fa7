//! Finite models of the rotation relation `wv = e^{2πiθ} vw`.

use num_integer::Integer;

use crate::algebra::{Algebra, Element, Monomial};
use crate::error::LabError;
use crate::linalg::{operator_norm, SparseMatrix, C64};
use crate::replab::{eval_coefficient, root_of_unity, Bindings};

/// A finite-dimensional approximant of the noncommutative torus.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TorusModel {
    /// `v = diag(ω^j)`, `w e_j = e_{j−1 mod N}` with `ω = e^{2πiL/N}`; exact.
    Clock { size: u64, numerator: i64 },
    /// `v = diag(e^{2πiθj})`, `w` the cyclic shift on the window `j ∈ [−J, J]`; the
    /// relation fails only on the wrap-around column `j = −J`.
    TruncatedShift { theta: f64, window: u64 },
}

impl TorusModel {
    pub fn clock(size: u64, numerator: i64) -> Result<Self, LabError> {
        let m = TorusModel::Clock { size, numerator };
        m.validate()?;
        Ok(m)
    }

    pub fn truncated_shift(theta: f64, window: u64) -> Result<Self, LabError> {
        let m = TorusModel::TruncatedShift { theta, window };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<(), LabError> {
        match *self {
            TorusModel::Clock { size, numerator } => {
                if size == 0 {
                    return Err(LabError::InvalidParameter("clock size must be positive".into()));
                }
                if numerator.unsigned_abs().gcd(&size) != 1 {
                    return Err(LabError::InvalidParameter(format!("gcd({numerator}, {size}) != 1")));
                }
            }
            TorusModel::TruncatedShift { theta, .. } => {
                if !theta.is_finite() {
                    return Err(LabError::NonFinite);
                }
            }
        }
        Ok(())
    }

    /// Dimension of the model space.
    pub fn size(&self) -> usize {
        match *self {
            TorusModel::Clock { size, .. } => size as usize,
            TorusModel::TruncatedShift { window, .. } => 2 * window as usize + 1,
        }
    }

    pub fn theta(&self) -> f64 {
        match *self {
            TorusModel::Clock { size, numerator } => numerator as f64 / size as f64,
            TorusModel::TruncatedShift { theta, .. } => theta,
        }
    }

    /// `e^{2πiθ}` as realised by the model.
    pub fn zeta(&self) -> C64 {
        match *self {
            TorusModel::Clock { size, numerator } => root_of_unity(numerator, size),
            TorusModel::TruncatedShift { theta, .. } => C64::from_polar(1.0, 2.0 * std::f64::consts::PI * theta.rem_euclid(1.0)),
        }
    }

    pub fn describe(&self) -> String {
        match *self {
            TorusModel::Clock { size, numerator } => format!("clock({numerator}/{size})"),
            TorusModel::TruncatedShift { theta, window } => format!("truncatedShift(theta={theta}, J={window})"),
        }
    }
}

/// `(v, w)` with the relation defect and its interior part.
#[derive(Clone, Debug)]
pub struct TorusRep {
    pub model: TorusModel,
    pub v: SparseMatrix,
    pub w: SparseMatrix,
    pub zeta: C64,
    /// `‖wv − ζvw‖`.
    pub defect: f64,
    /// `‖(wv − ζvw)P_interior‖`, interior = all columns except the wrap-around one.
    pub interior_defect: f64,
}

pub fn build_torus_rep(model: &TorusModel) -> Result<TorusRep, LabError> {
    model.validate()?;
    let n = model.size();
    let diag: Vec<C64> = match *model {
        TorusModel::Clock { size, numerator } => (0..n).map(|j| root_of_unity(numerator * j as i64, size)).collect(),
        TorusModel::TruncatedShift { theta, window } => (0..n)
            .map(|i| {
                let j = i as f64 - window as f64;
                C64::from_polar(1.0, 2.0 * std::f64::consts::PI * (theta * j).rem_euclid(1.0))
            })
            .collect(),
    };
    let v = SparseMatrix::diagonal(&diag);
    let w = SparseMatrix::from_triplets(n, n, (0..n).map(|j| ((j + n - 1) % n, j, C64::new(1.0, 0.0))));
    let zeta = model.zeta();
    let d = w.mul(&v).sub(&v.mul(&w).scale(zeta));
    let defect = operator_norm(&d)?;
    let all: Vec<usize> = (0..n).collect();
    let interior_defect = operator_norm(&d.submatrix(&all, &all[1..]))?;
    Ok(TorusRep { model: *model, v, w, zeta, defect, interior_defect })
}

impl TorusRep {
    pub fn size(&self) -> usize {
        self.v.rows()
    }

    /// `π(x)` for `x ∈ Pol(T_θ)`; `ζ` is bound to the model's value, `q` must not occur.
    pub fn eval(&self, x: &Element) -> Result<SparseMatrix, LabError> {
        if x.algebra() != Algebra::Torus {
            return Err(LabError::Algebra(crate::AlgebraError::IncompatibleRep { rep: Algebra::Torus, element: x.algebra() }));
        }
        let n = self.size();
        let b = Bindings { q: f64::NAN, zeta: Some(self.zeta) };
        let mut triplets = Vec::new();
        for (m, c) in x.terms() {
            if c.terms().any(|((qe, _), _)| *qe != 0) {
                return Err(LabError::Unbound("q"));
            }
            let Monomial::Torus { v, w } = *m else { unreachable!("torus elements hold torus monomials") };
            let c = eval_coefficient(c, &b)?;
            let pv = if v >= 0 { self.v.pow(v as u32) } else { self.v.adjoint().pow(v.unsigned_abs()) };
            let pw = if w >= 0 { self.w.pow(w as u32) } else { self.w.adjoint().pow(w.unsigned_abs()) };
            triplets.extend(pv.mul(&pw).triplets().map(|(r, col, val)| (r, col, val * c)));
        }
        Ok(SparseMatrix::from_triplets(n, n, triplets))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Generator;

    #[test]
    fn clock_two_by_two() {
        let rep = build_torus_rep(&TorusModel::clock(2, 1).unwrap()).unwrap();
        assert_eq!(rep.v.to_dense()[(1, 1)], C64::new(-1.0, 0.0));
        assert_eq!(rep.w.get(0, 1), C64::new(1.0, 0.0));
        assert_eq!(rep.w.get(1, 0), C64::new(1.0, 0.0));
        assert!(rep.defect < 1e-15);
        assert!(TorusModel::clock(4, 2).is_err());
    }

    #[test]
    fn unitary_and_interior_exact() {
        for model in [TorusModel::clock(89, 55).unwrap(), TorusModel::truncated_shift(0.618, 20).unwrap()] {
            let rep = build_torus_rep(&model).unwrap();
            let n = rep.size();
            for m in [&rep.v, &rep.w] {
                assert!(m.adjoint().mul(m).sub(&SparseMatrix::identity(n)).max_abs() < 1e-15);
            }
            assert!(rep.interior_defect < 1e-14, "{}", rep.interior_defect);
        }
        let shift = build_torus_rep(&TorusModel::truncated_shift(0.3, 5).unwrap()).unwrap();
        assert!(shift.defect > 0.1);
    }

    #[test]
    fn torus_elements_evaluate() {
        let rep = build_torus_rep(&TorusModel::clock(5, 2).unwrap()).unwrap();
        let v = Element::generator(Algebra::Torus, Generator::V).unwrap();
        let w = Element::generator(Algebra::Torus, Generator::W).unwrap();
        let lhs = rep.eval(&(&w * &v)).unwrap();
        let rhs = rep.eval(&(&v * &w)).unwrap().scale(rep.zeta);
        assert!(lhs.sub(&rhs).max_abs() < 1e-15);
        assert!((operator_norm(&rep.eval(&v).unwrap()).unwrap() - 1.0).abs() < 1e-15);
    }
}
