//! The torus quotient `α ↦ z, γ ↦ 0` and the Podleś-sphere subalgebra of
//! quotient-invariant elements.

use super::{coproduct, Algebra, AlgebraError, Element, Monomial, TensorElement};

/// Grading induced by the torus quotient: `α, γ` have degree 1, `α*, γ*` degree -1.
pub fn t_degree(m: &Monomial) -> Result<i32, AlgebraError> {
    match *m {
        Monomial::Quantum { alpha, gamma, gamma_star, unitary: 0 } => {
            Ok(alpha + gamma as i32 - gamma_star as i32)
        }
        _ => Err(AlgebraError::ForeignMonomial { monomial: m.to_string(), algebra: Algebra::SUq2 }),
    }
}

/// Unital `*`-homomorphism onto commutative Laurent polynomials: `α ↦ z`,
/// `γ ↦ 0`, `u_θ ↦ u`.
pub fn quotient_to_circle_monomial(m: &Monomial) -> Result<Option<Monomial>, AlgebraError> {
    match *m {
        Monomial::Quantum { alpha, gamma, gamma_star, unitary } => {
            if gamma + gamma_star > 0 {
                Ok(None)
            } else {
                Ok(Some(Monomial::circle(alpha, unitary)))
            }
        }
        _ => Err(AlgebraError::ForeignMonomial { monomial: m.to_string(), algebra: Algebra::GqTheta }),
    }
}

pub fn quotient_to_circle(x: &Element) -> Result<Element, AlgebraError> {
    if !matches!(x.algebra(), Algebra::SUq2 | Algebra::GqTheta) {
        return Err(AlgebraError::NotHopf(x.algebra()));
    }
    let mut out = Element::zero(Algebra::Circle);
    for (m, c) in x.terms() {
        if let Some(img) = quotient_to_circle_monomial(m)? {
            out.add_term(img, c);
        }
    }
    Ok(out)
}

/// Projection onto the `t_degree`-zero monomials.
pub fn invariant_part(x: &Element) -> Result<Element, AlgebraError> {
    if x.algebra() != Algebra::SUq2 {
        return Err(AlgebraError::AlgebraMismatch { left: x.algebra(), right: Algebra::SUq2 });
    }
    Ok(x.filter(|m| t_degree(m) == Ok(0)))
}

/// `(id ⊗ quotient)Δ(y) - y ⊗ 1`.
pub fn quotient_invariance_defect(y: &Element) -> Result<TensorElement, AlgebraError> {
    let d = coproduct(y)?;
    let mapped = d.map_leg(1, &[Algebra::Circle], |m| {
        let img = match quotient_to_circle_monomial(m)? {
            Some(c) => Element::basis(Algebra::Circle, c)?,
            None => Element::zero(Algebra::Circle),
        };
        Ok(TensorElement::from(&img))
    })?;
    mapped.try_sub(&TensorElement::pure(&[y, &Element::one(Algebra::Circle)]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Generator;

    fn gen(g: Generator) -> Element {
        Element::generator(Algebra::SUq2, g).unwrap()
    }

    #[test]
    fn degrees() {
        assert_eq!(t_degree(&Monomial::quantum(0, 1, 1, 0)).unwrap(), 0);
        assert_eq!(t_degree(&Monomial::quantum(1, 0, 0, 0)).unwrap(), 1);
        assert_eq!(t_degree(&Monomial::quantum(-1, 0, 1, 0)).unwrap(), -2);
    }

    #[test]
    fn quotient_values() {
        let z = Element::generator(Algebra::Circle, Generator::Z).unwrap();
        assert_eq!(quotient_to_circle(&gen(Generator::Alpha)).unwrap(), z);
        assert!(quotient_to_circle(&gen(Generator::Gamma)).unwrap().is_zero());
        assert_eq!(
            quotient_to_circle(&Element::one(Algebra::SUq2)).unwrap(),
            Element::one(Algebra::Circle)
        );
    }

    #[test]
    fn invariant_part_examples() {
        let ggs = &gen(Generator::Gamma) * &gen(Generator::GammaStar);
        assert_eq!(invariant_part(&ggs).unwrap(), ggs);
        assert!(quotient_invariance_defect(&ggs).unwrap().is_zero());
        assert!(invariant_part(&gen(Generator::Alpha)).unwrap().is_zero());
        assert!(!quotient_invariance_defect(&gen(Generator::Alpha)).unwrap().is_zero());
        let one = Element::one(Algebra::SUq2);
        assert_eq!(invariant_part(&one).unwrap(), one);
    }
}
