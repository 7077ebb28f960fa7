//! `*`-structure and Hopf structure maps: adjoint, coproduct, counit, antipode.
//!
//! Generator values of `ε` and `S` are fixed by the Hopf axioms applied to
//! the coproduct; [`verify_generator_axioms`] re-derives them on demand.

use super::product::{adjoint_monomial, multiply_monomials};
use super::{Algebra, AlgebraError, Element, Monomial, TensorElement};
use crate::laurent::LaurentCoefficient;
use crate::scalar::GaussRat;

const ALPHA: Monomial = Monomial::quantum(1, 0, 0, 0);
const ALPHA_STAR: Monomial = Monomial::quantum(-1, 0, 0, 0);
const GAMMA: Monomial = Monomial::quantum(0, 1, 0, 0);
const GAMMA_STAR: Monomial = Monomial::quantum(0, 0, 1, 0);

/// Conjugate-linear anti-multiplicative involution.
pub fn adjoint(x: &Element) -> Element {
    let mut out = Element::zero(x.algebra());
    for (m, c) in x.terms() {
        adjoint_monomial(m, c, &mut |mm, cc| out.add_term(mm, &cc));
    }
    out
}

fn require_hopf(x: &Element) -> Result<Algebra, AlgebraError> {
    match x.algebra() {
        a @ (Algebra::SUq2 | Algebra::GqTheta) => Ok(a),
        a => Err(AlgebraError::NotHopf(a)),
    }
}

fn two_leg(algebra: Algebra, terms: &[(LaurentCoefficient, Monomial, Monomial)]) -> TensorElement {
    let mut t = TensorElement::zero(vec![algebra, algebra]);
    for (c, a, b) in terms {
        t.add_term(vec![*a, *b], c);
    }
    t
}

fn generator_coproduct(algebra: Algebra, m: Monomial) -> TensorElement {
    let one = LaurentCoefficient::one;
    let minus_q = || -&LaurentCoefficient::q_pow(1);
    match m {
        ALPHA => two_leg(algebra, &[(one(), ALPHA, ALPHA), (minus_q(), GAMMA_STAR, GAMMA)]),
        ALPHA_STAR => {
            two_leg(algebra, &[(one(), ALPHA_STAR, ALPHA_STAR), (minus_q(), GAMMA, GAMMA_STAR)])
        }
        GAMMA => two_leg(algebra, &[(one(), GAMMA, ALPHA), (one(), ALPHA_STAR, GAMMA)]),
        GAMMA_STAR => {
            two_leg(algebra, &[(one(), GAMMA_STAR, ALPHA_STAR), (one(), ALPHA, GAMMA_STAR)])
        }
        other => unreachable!("not a generator: {other}"),
    }
}

fn tensor_power(t: &TensorElement, n: u32, legs: Vec<Algebra>) -> TensorElement {
    let mut unit = TensorElement::zero(legs.clone());
    unit.add_term(legs.iter().map(|a| Monomial::unit(*a)).collect(), &LaurentCoefficient::one());
    let mut acc = unit;
    for _ in 0..n {
        acc = acc.multiply(t).expect("legs agree");
    }
    acc
}

/// `Δ` of a single basis monomial.
pub fn coproduct_monomial(algebra: Algebra, m: &Monomial) -> Result<TensorElement, AlgebraError> {
    let Monomial::Quantum { alpha, gamma, gamma_star, unitary } = *m else {
        return Err(AlgebraError::NotHopf(algebra));
    };
    if !m.fits(algebra) {
        return Err(AlgebraError::ForeignMonomial { monomial: m.to_string(), algebra });
    }
    let legs = vec![algebra, algebra];
    let a_gen = if alpha >= 0 { ALPHA } else { ALPHA_STAR };
    let mut t = tensor_power(&generator_coproduct(algebra, a_gen), alpha.unsigned_abs(), legs.clone());
    if gamma > 0 {
        t = t.multiply(&tensor_power(&generator_coproduct(algebra, GAMMA), gamma, legs.clone()))?;
    }
    if gamma_star > 0 {
        t = t.multiply(&tensor_power(
            &generator_coproduct(algebra, GAMMA_STAR),
            gamma_star,
            legs.clone(),
        ))?;
    }
    if unitary != 0 {
        let u = Monomial::quantum(0, 0, 0, unitary);
        t = t.multiply(&two_leg(algebra, &[(LaurentCoefficient::one(), u, u)]))?;
    }
    Ok(t)
}

/// The comultiplication `Δ: A → A ⊙ A`.
pub fn coproduct(x: &Element) -> Result<TensorElement, AlgebraError> {
    let algebra = require_hopf(x)?;
    let mut out = TensorElement::zero(vec![algebra, algebra]);
    for (m, c) in x.terms() {
        out = out.try_add(&coproduct_monomial(algebra, m)?.scale(c))?;
    }
    Ok(out)
}

/// `ε` on a basis monomial: 1 on `α^k u^l`, 0 whenever `γ` or `γ*` occurs.
pub fn counit_monomial(m: &Monomial) -> Result<LaurentCoefficient, AlgebraError> {
    match *m {
        Monomial::Quantum { gamma, gamma_star, .. } => Ok(if gamma == 0 && gamma_star == 0 {
            LaurentCoefficient::one()
        } else {
            LaurentCoefficient::zero()
        }),
        _ => Err(AlgebraError::NotHopf(Algebra::Torus)),
    }
}

pub fn counit(x: &Element) -> Result<LaurentCoefficient, AlgebraError> {
    require_hopf(x)?;
    let mut acc = LaurentCoefficient::zero();
    for (m, c) in x.terms() {
        acc.add_product(c, &counit_monomial(m)?);
    }
    Ok(acc)
}

/// `S` on a basis monomial, as the reversed product of generator images
/// `S(α) = α*`, `S(α*) = α`, `S(γ) = -qγ`, `S(γ*) = -q^{-1}γ*`, `S(u) = u*`.
pub fn antipode_monomial(algebra: Algebra, m: &Monomial) -> Result<Element, AlgebraError> {
    let Monomial::Quantum { alpha, gamma, gamma_star, unitary } = *m else {
        return Err(AlgebraError::NotHopf(algebra));
    };
    let sign = if (gamma + gamma_star) % 2 == 0 { 1 } else { -1 };
    let c = LaurentCoefficient::term(GaussRat::from_int(sign), gamma as i32 - gamma_star as i32, 0);
    // S(α^k γ^m γ*^n u^l) = S(u)^l S(γ*)^n S(γ)^m S(α)^k = c · u^{-l} γ^m γ*^n α^{-k}
    let mut out = Element::zero(algebra);
    let mut first = Vec::new();
    multiply_monomials(
        &Monomial::quantum(0, 0, 0, -unitary),
        &Monomial::quantum(0, gamma, gamma_star, 0),
        &c,
        &mut |mm, cc| first.push((mm, cc)),
    );
    for (mm, cc) in first {
        multiply_monomials(&mm, &Monomial::quantum(-alpha, 0, 0, 0), &cc, &mut |r, rc| {
            out.add_term(r, &rc)
        });
    }
    Ok(out)
}

pub fn antipode(x: &Element) -> Result<Element, AlgebraError> {
    let algebra = require_hopf(x)?;
    let mut out = Element::zero(algebra);
    for (m, c) in x.terms() {
        out = &out + &antipode_monomial(algebra, m)?.scale(c);
    }
    Ok(out)
}

/// `(ε ⊗ id)Δ(x) - x` and `(id ⊗ ε)Δ(x) - x`.
pub fn counit_defects(x: &Element) -> Result<(Element, Element), AlgebraError> {
    let d = coproduct(x)?;
    let eps = |m: &Monomial| counit_monomial(m).map(TensorElement::scalar);
    let left = d.map_leg(0, &[], eps)?.into_element()?;
    let right = d.map_leg(1, &[], eps)?.into_element()?;
    Ok((&left - x, &right - x))
}

/// `m(S ⊗ id)Δ(x) - ε(x)1` and `m(id ⊗ S)Δ(x) - ε(x)1`.
pub fn antipode_defects(x: &Element) -> Result<(Element, Element), AlgebraError> {
    let algebra = require_hopf(x)?;
    let d = coproduct(x)?;
    let s = |m: &Monomial| antipode_monomial(algebra, m).map(|e| TensorElement::from(&e));
    let left = d.map_leg(0, &[algebra], s)?.contract(0)?.into_element()?;
    let right = d.map_leg(1, &[algebra], s)?.contract(0)?.into_element()?;
    let unit = Element::scalar(algebra, counit(x)?);
    Ok((&left - &unit, &right - &unit))
}

/// `(Δ ⊗ id)Δ(x) - (id ⊗ Δ)Δ(x)`.
pub fn coassociativity_defect(x: &Element) -> Result<TensorElement, AlgebraError> {
    let algebra = require_hopf(x)?;
    let d = coproduct(x)?;
    let delta = |m: &Monomial| coproduct_monomial(algebra, m);
    let left = d.map_leg(0, &[algebra, algebra], delta)?;
    let right = d.map_leg(1, &[algebra, algebra], delta)?;
    left.try_sub(&right)
}

/// Checks the counit and antipode axioms on the generators and their adjoints.
///
/// These are the only places the generator tables above could go wrong, and
/// the axioms on generators propagate to the whole algebra multiplicatively.
pub fn verify_generator_axioms(algebra: Algebra) -> Result<(), AlgebraError> {
    let mut gens = vec![ALPHA, ALPHA_STAR, GAMMA, GAMMA_STAR];
    if algebra == Algebra::GqTheta {
        gens.push(Monomial::quantum(0, 0, 0, 1));
        gens.push(Monomial::quantum(0, 0, 0, -1));
    }
    for g in gens {
        let x = Element::basis(algebra, g)?;
        let (l, r) = counit_defects(&x)?;
        let (sl, sr) = antipode_defects(&x)?;
        if !(l.is_zero() && r.is_zero() && sl.is_zero() && sr.is_zero()) {
            return Err(AlgebraError::AxiomViolated(format!("generator {g}")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Generator;

    fn gen(a: Algebra, g: Generator) -> Element {
        Element::generator(a, g).unwrap()
    }

    #[test]
    fn coproduct_of_alpha() {
        let a = gen(Algebra::SUq2, Generator::Alpha);
        let d = coproduct(&a).unwrap();
        let g = gen(Algebra::SUq2, Generator::Gamma);
        let gs = gen(Algebra::SUq2, Generator::GammaStar);
        let expected = TensorElement::pure(&[&a, &a])
            .try_sub(&TensorElement::pure(&[&gs, &g]).scale(&LaurentCoefficient::q_pow(1)))
            .unwrap();
        assert_eq!(d, expected);
    }

    #[test]
    fn coproduct_of_gamma_star_is_legwise_adjoint() {
        let g = gen(Algebra::SUq2, Generator::Gamma);
        let gs = gen(Algebra::SUq2, Generator::GammaStar);
        let a = gen(Algebra::SUq2, Generator::Alpha);
        let astar = gen(Algebra::SUq2, Generator::AlphaStar);
        let d = coproduct(&gs).unwrap();
        let expected = TensorElement::pure(&[&gs, &astar]).try_add(&TensorElement::pure(&[&a, &gs])).unwrap();
        assert_eq!(d, expected);
        assert_eq!(coproduct(&g).unwrap().adjoint(), d);
    }

    #[test]
    fn coproduct_of_unit_and_unitary() {
        let one = Element::one(Algebra::GqTheta);
        assert_eq!(coproduct(&one).unwrap(), TensorElement::pure(&[&one, &one]));
        let u = gen(Algebra::GqTheta, Generator::U);
        assert_eq!(coproduct(&u).unwrap(), TensorElement::pure(&[&u, &u]));
    }

    #[test]
    fn counit_values() {
        let c = |g| counit(&gen(Algebra::GqTheta, g)).unwrap();
        assert!(c(Generator::Alpha).is_one());
        assert!(c(Generator::AlphaStar).is_one());
        assert!(c(Generator::Gamma).is_zero());
        assert!(c(Generator::GammaStar).is_zero());
        assert!(c(Generator::U).is_one());
        assert!(counit(&Element::one(Algebra::SUq2)).unwrap().is_one());
    }

    #[test]
    fn antipode_values() {
        let s = |g| antipode(&gen(Algebra::GqTheta, g)).unwrap();
        assert_eq!(s(Generator::Alpha), gen(Algebra::GqTheta, Generator::AlphaStar));
        assert_eq!(s(Generator::AlphaStar), gen(Algebra::GqTheta, Generator::Alpha));
        assert_eq!(
            s(Generator::Gamma),
            gen(Algebra::GqTheta, Generator::Gamma).scale(&-&LaurentCoefficient::q_pow(1))
        );
        assert_eq!(
            s(Generator::GammaStar),
            gen(Algebra::GqTheta, Generator::GammaStar).scale(&-&LaurentCoefficient::q_pow(-1))
        );
        assert_eq!(s(Generator::U), gen(Algebra::GqTheta, Generator::UStar));
        assert_eq!(antipode(&Element::one(Algebra::SUq2)).unwrap(), Element::one(Algebra::SUq2));
    }

    #[test]
    fn antipode_axiom_on_alpha_reads_alpha_star_alpha_plus_gamma_star_gamma() {
        // m(S⊗id)Δ(α) = S(α)α - q S(γ*)γ = α*α + γ*γ = 1
        let a = gen(Algebra::SUq2, Generator::Alpha);
        let (l, r) = antipode_defects(&a).unwrap();
        assert!(l.is_zero() && r.is_zero());
    }

    #[test]
    fn generator_tables_satisfy_axioms() {
        verify_generator_axioms(Algebra::SUq2).unwrap();
        verify_generator_axioms(Algebra::GqTheta).unwrap();
    }

    #[test]
    fn torus_has_no_coproduct() {
        let v = gen(Algebra::Torus, Generator::V);
        assert!(matches!(coproduct(&v), Err(AlgebraError::NotHopf(Algebra::Torus))));
        assert!(counit(&v).is_err());
        assert!(antipode(&v).is_err());
    }

    #[test]
    fn adjoint_of_alpha_gamma() {
        let a = gen(Algebra::SUq2, Generator::Alpha);
        let g = gen(Algebra::SUq2, Generator::Gamma);
        let ag = &a * &g;
        let expected = (&gen(Algebra::SUq2, Generator::AlphaStar) * &gen(Algebra::SUq2, Generator::GammaStar))
            .scale(&LaurentCoefficient::q_pow(1));
        assert_eq!(adjoint(&ag), expected);
        assert_eq!(adjoint(&g), gen(Algebra::SUq2, Generator::GammaStar));
        let c = Element::scalar(Algebra::SUq2, LaurentCoefficient::constant(GaussRat::i()));
        assert_eq!(adjoint(&c), Element::scalar(Algebra::SUq2, LaurentCoefficient::constant(-GaussRat::i())));
    }
}
