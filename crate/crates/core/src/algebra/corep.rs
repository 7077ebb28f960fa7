//! Matrix corepresentations: the comultiplicativity/unitarity check and tensor products.

use super::{adjoint, coproduct, Algebra, AlgebraError, Element, Generator, TensorElement};
use crate::laurent::LaurentCoefficient;

/// A square matrix of algebra elements, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorepMatrix {
    dim: usize,
    algebra: Algebra,
    entries: Vec<Element>,
}

impl CorepMatrix {
    pub fn new(dim: usize, entries: Vec<Element>) -> Result<Self, AlgebraError> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(AlgebraError::NotSquare { dim, entries: entries.len() });
        }
        let algebra = entries[0].algebra();
        if let Some(e) = entries.iter().find(|e| e.algebra() != algebra) {
            return Err(AlgebraError::AlgebraMismatch { left: algebra, right: e.algebra() });
        }
        Ok(Self { dim, algebra, entries })
    }

    /// `[[α, -qγ*], [γ, α*]]`
    pub fn fundamental(algebra: Algebra) -> Result<Self, AlgebraError> {
        let g = |x| Element::generator(algebra, x);
        Self::new(
            2,
            vec![
                g(Generator::Alpha)?,
                g(Generator::GammaStar)?.scale(&-&LaurentCoefficient::q_pow(1)),
                g(Generator::Gamma)?,
                g(Generator::AlphaStar)?,
            ],
        )
    }

    /// The one-dimensional corepresentation `[u_θ^l]`.
    pub fn group_like(l: i32) -> Result<Self, AlgebraError> {
        let u = Element::generator(Algebra::GqTheta, if l >= 0 { Generator::U } else { Generator::UStar })?;
        Self::new(1, vec![u.pow(l.unsigned_abs())])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn entry(&self, i: usize, j: usize) -> &Element {
        &self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[Element] {
        &self.entries
    }

    /// `Σ_p u*_{j,p} u_{i,p}`; the left-hand side of the finite-dimensional
    /// orthogonality identity.
    pub fn conjugate_row_sum(&self, i: usize, j: usize) -> Element {
        let mut acc = Element::zero(self.algebra);
        for p in 0..self.dim {
            acc = &acc + &(&adjoint(self.entry(j, p)) * self.entry(i, p));
        }
        acc
    }
}

/// Outcome of [`corep_check`]; lists every failing entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorepReport {
    pub comultiplicative_failures: Vec<(usize, usize)>,
    pub unitarity_failures: Vec<String>,
}

impl CorepReport {
    pub fn passed(&self) -> bool {
        self.comultiplicative_failures.is_empty() && self.unitarity_failures.is_empty()
    }
}

/// Exact check of `Δ(u_ij) = Σ_k u_ik ⊗ u_kj` and `U*U = UU* = 1`.
pub fn corep_check(u: &CorepMatrix) -> Result<CorepReport, AlgebraError> {
    let n = u.dim;
    let mut report = CorepReport { comultiplicative_failures: Vec::new(), unitarity_failures: Vec::new() };
    for i in 0..n {
        for j in 0..n {
            let mut rhs = TensorElement::zero(vec![u.algebra, u.algebra]);
            for k in 0..n {
                rhs = rhs.try_add(&TensorElement::pure(&[u.entry(i, k), u.entry(k, j)]))?;
            }
            if !coproduct(u.entry(i, j))?.try_sub(&rhs)?.is_zero() {
                report.comultiplicative_failures.push((i, j));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let delta = if i == j { Element::one(u.algebra) } else { Element::zero(u.algebra) };
            let mut left = Element::zero(u.algebra);
            let mut right = Element::zero(u.algebra);
            for k in 0..n {
                left = &left + &(&adjoint(u.entry(k, i)) * u.entry(k, j));
                right = &right + &(u.entry(i, k) * &adjoint(u.entry(j, k)));
            }
            if left != delta {
                report.unitarity_failures.push(format!("(U*U)[{i},{j}] = {left}"));
            }
            if right != delta {
                report.unitarity_failures.push(format!("(UU*)[{i},{j}] = {right}"));
            }
        }
    }
    Ok(report)
}

/// `W_{(i,k),(j,l)} = u_ij v_kl`, row index `(i,k) ↦ i·dim(V) + k`.
pub fn tensor_corep(u: &CorepMatrix, v: &CorepMatrix) -> Result<CorepMatrix, AlgebraError> {
    if u.algebra != v.algebra {
        return Err(AlgebraError::AlgebraMismatch { left: u.algebra, right: v.algebra });
    }
    let (n, m) = (u.dim, v.dim);
    let mut entries = Vec::with_capacity(n * n * m * m);
    for i in 0..n {
        for k in 0..m {
            for j in 0..n {
                for l in 0..m {
                    entries.push(u.entry(i, j) * v.entry(k, l));
                }
            }
        }
    }
    CorepMatrix::new(n * m, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fundamental_is_a_unitary_corep() {
        for a in [Algebra::SUq2, Algebra::GqTheta] {
            let u = CorepMatrix::fundamental(a).unwrap();
            assert!(corep_check(&u).unwrap().passed());
        }
    }

    #[test]
    fn group_like_passes_and_alpha_alone_fails() {
        assert!(corep_check(&CorepMatrix::group_like(1).unwrap()).unwrap().passed());
        let a = CorepMatrix::new(1, vec![Element::generator(Algebra::SUq2, Generator::Alpha).unwrap()]).unwrap();
        let r = corep_check(&a).unwrap();
        assert!(!r.passed());
        assert_eq!(r.comultiplicative_failures, vec![(0, 0)]);
    }

    #[test]
    fn tensor_products() {
        let u1 = CorepMatrix::group_like(1).unwrap();
        let t = tensor_corep(&u1, &u1).unwrap();
        assert_eq!(t, CorepMatrix::group_like(2).unwrap());
        let f = CorepMatrix::fundamental(Algebra::GqTheta).unwrap();
        let ff = tensor_corep(&f, &f).unwrap();
        assert_eq!(ff.dim(), 4);
        assert!(corep_check(&ff).unwrap().passed());
        let fu = tensor_corep(&f, &u1).unwrap();
        assert_eq!(fu.entry(0, 1), &(f.entry(0, 1) * u1.entry(0, 0)));
        assert!(corep_check(&fu).unwrap().passed());
        let s = CorepMatrix::fundamental(Algebra::SUq2).unwrap();
        assert!(tensor_corep(&s, &u1).is_err());
    }

    #[test]
    fn conjugate_row_sum_is_not_the_unit() {
        // Σ_p u*_{1,p} u_{1,p} = α*α + q²γγ* = 1 + (q² - 1)γ*γ
        let f = CorepMatrix::fundamental(Algebra::SUq2).unwrap();
        let s = f.conjugate_row_sum(0, 0);
        let ggs = &Element::generator(Algebra::SUq2, Generator::GammaStar).unwrap()
            * &Element::generator(Algebra::SUq2, Generator::Gamma).unwrap();
        let expected = &Element::one(Algebra::SUq2)
            + &ggs.scale(&(&LaurentCoefficient::q_pow(2) - &LaurentCoefficient::one()));
        assert_eq!(s, expected);
        assert_ne!(s, Element::one(Algebra::SUq2));
    }
}
