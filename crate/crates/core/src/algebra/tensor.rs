use std::collections::BTreeMap;
use std::fmt;

use super::product::{adjoint_monomial, multiply_monomials};
use super::{Algebra, AlgebraError, Element, Monomial};
use crate::laurent::LaurentCoefficient;

/// A finite sum of elementary tensors `m_1 ⊗ … ⊗ m_r` of normal-form monomials.
///
/// Zero legs is the scalar ring, one leg is the algebra itself, two legs hold
/// coproducts; more legs appear when checking coassociativity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    legs: Vec<Algebra>,
    terms: BTreeMap<Vec<Monomial>, LaurentCoefficient>,
}

impl TensorElement {
    pub fn zero(legs: Vec<Algebra>) -> Self {
        Self { legs, terms: BTreeMap::new() }
    }

    pub fn scalar(c: LaurentCoefficient) -> Self {
        let mut t = Self::zero(Vec::new());
        t.add_term(Vec::new(), &c);
        t
    }

    /// `x_1 ⊗ x_2 ⊗ …`
    pub fn pure(factors: &[&Element]) -> Self {
        let mut t = Self::scalar(LaurentCoefficient::one());
        for x in factors {
            t = t.extend(x);
        }
        t
    }

    fn extend(&self, x: &Element) -> Self {
        let mut legs = self.legs.clone();
        legs.push(x.algebra());
        let mut out = Self::zero(legs);
        for (key, c) in &self.terms {
            for (m, d) in x.terms() {
                let mut k = key.clone();
                k.push(*m);
                out.add_term(k, &(c * d));
            }
        }
        out
    }

    pub fn legs(&self) -> &[Algebra] {
        &self.legs
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Monomial>, &LaurentCoefficient)> {
        self.terms.iter()
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

    pub fn coefficient(&self, key: &[Monomial]) -> Option<&LaurentCoefficient> {
        self.terms.get(key)
    }

    pub(crate) fn add_term(&mut self, key: Vec<Monomial>, c: &LaurentCoefficient) {
        if c.is_zero() {
            return;
        }
        let remove = {
            let slot = self.terms.entry(key.clone()).or_default();
            slot.add_assign_ref(c);
            slot.is_zero()
        };
        if remove {
            self.terms.remove(&key);
        }
    }

    fn check_legs(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.legs == other.legs {
            Ok(())
        } else {
            Err(AlgebraError::LegMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_legs(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_legs(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), &-c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &LaurentCoefficient) -> Self {
        let mut out = Self::zero(self.legs.clone());
        for (k, v) in &self.terms {
            out.add_term(k.clone(), &(v * c));
        }
        out
    }

    /// Leg-wise product `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`.
    pub fn multiply(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_legs(other)?;
        let mut out = Self::zero(self.legs.clone());
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                // expand leg by leg
                let mut partial: Vec<(Vec<Monomial>, LaurentCoefficient)> =
                    vec![(Vec::with_capacity(k1.len()), c1 * c2)];
                for (a, b) in k1.iter().zip(k2) {
                    let mut next = Vec::new();
                    for (key, c) in &partial {
                        multiply_monomials(a, b, c, &mut |m, cc| {
                            let mut nk = key.clone();
                            nk.push(m);
                            next.push((nk, cc));
                        });
                    }
                    partial = next;
                }
                for (k, c) in partial {
                    out.add_term(k, &c);
                }
            }
        }
        Ok(out)
    }

    /// Leg-wise adjoint.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(self.legs.clone());
        for (key, c) in &self.terms {
            let mut partial: Vec<(Vec<Monomial>, LaurentCoefficient)> = vec![(Vec::new(), c.conj())];
            for m in key {
                let mut next = Vec::new();
                for (k, cc) in &partial {
                    adjoint_monomial(m, &LaurentCoefficient::one(), &mut |mm, d| {
                        let mut nk = k.clone();
                        nk.push(mm);
                        next.push((nk, cc * &d));
                    });
                }
                partial = next;
            }
            for (k, cc) in partial {
                out.add_term(k, &cc);
            }
        }
        out
    }

    /// Replaces leg `index` by the image of a linear map given on monomials.
    ///
    /// `f` returns a tensor whose legs are `new_legs` (empty for a functional,
    /// one leg for an algebra map, two for a coproduct).
    pub fn map_leg<F>(
        &self,
        index: usize,
        new_legs: &[Algebra],
        mut f: F,
    ) -> Result<Self, AlgebraError>
    where
        F: FnMut(&Monomial) -> Result<TensorElement, AlgebraError>,
    {
        if index >= self.legs.len() {
            return Err(AlgebraError::LegMismatch);
        }
        let mut legs = self.legs[..index].to_vec();
        legs.extend_from_slice(new_legs);
        legs.extend_from_slice(&self.legs[index + 1..]);
        let mut out = Self::zero(legs);
        let mut cache: BTreeMap<Monomial, TensorElement> = BTreeMap::new();
        for (key, c) in &self.terms {
            let img = match cache.get(&key[index]) {
                Some(t) => t,
                None => {
                    let t = f(&key[index])?;
                    if t.legs != new_legs {
                        return Err(AlgebraError::LegMismatch);
                    }
                    cache.entry(key[index]).or_insert(t)
                }
            };
            for (ik, ic) in &img.terms {
                let mut nk = key[..index].to_vec();
                nk.extend_from_slice(ik);
                nk.extend_from_slice(&key[index + 1..]);
                out.add_term(nk, &(c * ic));
            }
        }
        Ok(out)
    }

    /// Multiplies legs `index` and `index + 1` together.
    pub fn contract(&self, index: usize) -> Result<Self, AlgebraError> {
        if index + 1 >= self.legs.len() || self.legs[index] != self.legs[index + 1] {
            return Err(AlgebraError::LegMismatch);
        }
        let mut legs = self.legs.clone();
        legs.remove(index + 1);
        let mut out = Self::zero(legs);
        for (key, c) in &self.terms {
            multiply_monomials(&key[index], &key[index + 1], c, &mut |m, cc| {
                let mut nk = key[..index].to_vec();
                nk.push(m);
                nk.extend_from_slice(&key[index + 2..]);
                out.add_term(nk, &cc);
            });
        }
        Ok(out)
    }

    /// Single-leg tensors are elements.
    pub fn into_element(self) -> Result<Element, AlgebraError> {
        if self.legs.len() != 1 {
            return Err(AlgebraError::LegMismatch);
        }
        Element::from_terms(self.legs[0], self.terms.into_iter().map(|(mut k, c)| (k.remove(0), c)))
    }

    /// Zero-leg tensors are scalars.
    pub fn into_scalar(self) -> Result<LaurentCoefficient, AlgebraError> {
        if !self.legs.is_empty() {
            return Err(AlgebraError::LegMismatch);
        }
        Ok(self.terms.into_values().next().unwrap_or_default())
    }
}

impl From<&Element> for TensorElement {
    fn from(x: &Element) -> Self {
        TensorElement::pure(&[x])
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().map(|(k, c)| {
            let legs: Vec<String> = k.iter().map(|m| m.to_string()).collect();
            crate::print::term(c, &legs.join(" ⊗ "))
        });
        f.write_str(&crate::print::join(terms))
    }
}
