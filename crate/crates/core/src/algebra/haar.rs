//! The Haar state and the conditional expectation onto `span{u_θ^l}`.
//!
//! `h` is obtained by solving the left-invariance identity
//! `(h ⊗ id)Δ(x) = h(x)1` as a linear system over `ℚ(i)(q)`. Monomials whose
//! coproduct has no right leg equal to `1` (those of nonzero right weight or
//! with a `u_θ` factor) are forced to zero by the unit row of that identity;
//! the mirror argument with right invariance handles nonzero left weight.
//! What remains are the powers `(γγ*)^j`, which form a small coupled system.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{coproduct_monomial, Algebra, AlgebraError, Element, Monomial};
use crate::rational_fn::RationalValue;

/// Left and right weights of a monomial under the diagonal torus action.
///
/// `α ↦ (1,1)`, `α* ↦ (-1,-1)`, `γ ↦ (-1,1)`, `γ* ↦ (1,-1)`; every term
/// `a ⊗ b` of `Δ(x)` has `left(a) = left(x)`, `right(a) = left(b)`,
/// `right(b) = right(x)`.
pub fn weights(m: &Monomial) -> (i32, i32) {
    match *m {
        Monomial::Quantum { alpha, gamma, gamma_star, .. } => {
            let (g, s) = (gamma as i32, gamma_star as i32);
            (alpha - g + s, alpha + g - s)
        }
        _ => (0, 0),
    }
}

fn forced_zero(m: &Monomial) -> bool {
    match m {
        Monomial::Quantum { unitary, .. } => *unitary != 0 || weights(m) != (0, 0),
        _ => true,
    }
}

fn strip_unitary(m: &Monomial) -> Monomial {
    match *m {
        Monomial::Quantum { alpha, gamma, gamma_star, .. } => {
            Monomial::quantum(alpha, gamma, gamma_star, 0)
        }
        other => other,
    }
}

/// Memoising Haar-state evaluator. Values are exact rational functions of `q`.
#[derive(Debug, Default)]
pub struct HaarSolver {
    cache: HashMap<Monomial, RationalValue>,
}

impl HaarSolver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn state(&mut self, x: &Element) -> Result<RationalValue, AlgebraError> {
        if !matches!(x.algebra(), Algebra::SUq2 | Algebra::GqTheta) {
            return Err(AlgebraError::NotHopf(x.algebra()));
        }
        let mut acc = RationalValue::zero();
        for (m, c) in x.terms() {
            let v = self.monomial(m)?;
            if v.is_zero() {
                continue;
            }
            let c = RationalValue::from_laurent(c).ok_or(AlgebraError::ZetaDependentHaarValue)?;
            acc = &acc + &(&c * &v);
        }
        Ok(acc)
    }

    pub fn monomial(&mut self, m: &Monomial) -> Result<RationalValue, AlgebraError> {
        if !matches!(m, Monomial::Quantum { .. }) {
            return Err(AlgebraError::NotHopf(Algebra::Torus));
        }
        if forced_zero(m) {
            return Ok(RationalValue::zero());
        }
        if let Some(v) = self.cache.get(m) {
            return Ok(v.clone());
        }
        self.solve_block(*m)?;
        Ok(self.cache[m].clone())
    }

    /// Builds and solves the left-invariance system on the unknowns reachable
    /// from `start` through left legs of the coproduct.
    fn solve_block(&mut self, start: Monomial) -> Result<(), AlgebraError> {
        let unit = Monomial::unit(Algebra::SUq2);
        let mut unknowns: Vec<Monomial> = vec![unit];
        let mut index: BTreeMap<Monomial, usize> = BTreeMap::from([(unit, 0)]);
        if start != unit {
            index.insert(start, 1);
            unknowns.push(start);
        }
        // rows: sparse maps unknown -> coefficient, all equal to zero
        let mut rows: Vec<BTreeMap<usize, RationalValue>> = Vec::new();
        let mut next = 0;
        while next < unknowns.len() {
            let x = unknowns[next];
            let xi = next;
            next += 1;
            let delta = coproduct_monomial(Algebra::SUq2, &x)?;
            let mut by_right: BTreeMap<Monomial, BTreeMap<usize, RationalValue>> = BTreeMap::new();
            by_right.entry(unit).or_default();
            for (key, c) in delta.terms() {
                let (a, b) = (key[0], key[1]);
                if forced_zero(&a) {
                    continue;
                }
                let col = match index.get(&a) {
                    Some(&i) => i,
                    None => {
                        let i = unknowns.len();
                        unknowns.push(a);
                        index.insert(a, i);
                        i
                    }
                };
                let c = RationalValue::from_laurent(c).ok_or(AlgebraError::ZetaDependentHaarValue)?;
                let row = by_right.entry(b).or_default();
                let slot = row.entry(col).or_insert_with(RationalValue::zero);
                *slot = &*slot + &c;
            }
            // the unit row carries `- h(x)`
            let unit_row = by_right.get_mut(&unit).expect("inserted above");
            let slot = unit_row.entry(xi).or_insert_with(RationalValue::zero);
            *slot = &*slot - &RationalValue::one();
            for (_, mut row) in by_right {
                row.retain(|_, v| !v.is_zero());
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
        let n = unknowns.len();
        let mut dense: Vec<Vec<RationalValue>> = rows
            .into_iter()
            .map(|r| {
                let mut v = vec![RationalValue::zero(); n + 1];
                for (i, c) in r {
                    v[i] = c;
                }
                v
            })
            .collect();
        let homogeneous_rank = row_reduce(&mut dense, n);
        if homogeneous_rank != n - 1 {
            return Err(AlgebraError::HaarNotUnique { rank: homogeneous_rank, unknowns: n });
        }
        // normalisation h(1) = 1
        let mut norm = vec![RationalValue::zero(); n + 1];
        norm[0] = RationalValue::one();
        norm[n] = RationalValue::one();
        dense.push(norm);
        let rank = row_reduce(&mut dense, n);
        if rank != n {
            return Err(AlgebraError::HaarNotUnique { rank, unknowns: n });
        }
        if dense.iter().any(|r| r[..n].iter().all(RationalValue::is_zero) && !r[n].is_zero()) {
            return Err(AlgebraError::HaarInconsistent);
        }
        // reduced row echelon form: each pivot row reads x_p = rhs
        for row in &dense {
            if let Some(p) = row[..n].iter().position(|v| !v.is_zero()) {
                self.cache.insert(unknowns[p], row[n].clone());
            }
        }
        Ok(())
    }
}

/// Gauss–Jordan elimination on the first `cols` columns; returns the rank.
fn row_reduce(rows: &mut Vec<Vec<RationalValue>>, cols: usize) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].inv().expect("pivot is nonzero");
        for v in rows[rank].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot) {
                if !pv.is_zero() {
                    *v = &*v - &(&f * pv);
                }
            }
        }
        rank += 1;
    }
    rows.retain(|r| r.iter().any(|v| !v.is_zero()));
    rank
}

/// `h(x)` with a fresh solver.
pub fn haar_state(x: &Element) -> Result<RationalValue, AlgebraError> {
    HaarSolver::new().state(x)
}

/// Residuals of `(h ⊗ id)Δ(x) - h(x)1` and `(id ⊗ h)Δ(x) - h(x)1`, keyed by the
/// surviving monomial; both maps are empty when `h` is bi-invariant on `x`.
#[allow(clippy::type_complexity)]
pub fn invariance_defects(
    solver: &mut HaarSolver,
    x: &Element,
) -> Result<(BTreeMap<Monomial, RationalValue>, BTreeMap<Monomial, RationalValue>), AlgebraError> {
    let algebra = x.algebra();
    let hx = solver.state(x)?;
    let unit = Monomial::unit(algebra);
    let mut left: BTreeMap<Monomial, RationalValue> = BTreeMap::new();
    let mut right: BTreeMap<Monomial, RationalValue> = BTreeMap::new();
    left.insert(unit, -&hx);
    right.insert(unit, -&hx);
    for (m, c) in x.terms() {
        let d = coproduct_monomial(algebra, m)?;
        for (key, dc) in d.terms() {
            let coeff = dc * c;
            for (side, eval_leg, keep_leg) in [(&mut left, key[0], key[1]), (&mut right, key[1], key[0])] {
                let h = solver.monomial(&eval_leg)?;
                if h.is_zero() {
                    continue;
                }
                let c = RationalValue::from_laurent(&coeff).ok_or(AlgebraError::ZetaDependentHaarValue)?;
                let slot = side.entry(keep_leg).or_insert_with(RationalValue::zero);
                *slot = &*slot + &(&c * &h);
            }
        }
    }
    left.retain(|_, v| !v.is_zero());
    right.retain(|_, v| !v.is_zero());
    Ok((left, right))
}

/// `E(x) = Σ_l h(a_l) u_θ^l` for `x = Σ_l a_l u_θ^l`; zero components omitted.
pub fn conditional_expectation(x: &Element) -> Result<Vec<(i32, RationalValue)>, AlgebraError> {
    if x.algebra() != Algebra::GqTheta {
        return Err(AlgebraError::AlgebraMismatch { left: x.algebra(), right: Algebra::GqTheta });
    }
    let mut solver = HaarSolver::new();
    let powers: BTreeSet<i32> = x
        .terms()
        .filter_map(|(m, _)| match m {
            Monomial::Quantum { unitary, .. } => Some(*unitary),
            _ => None,
        })
        .collect();
    let mut out = Vec::new();
    for l in powers {
        let part = Element::from_terms(
            Algebra::SUq2,
            x.terms()
                .filter(|(m, _)| matches!(m, Monomial::Quantum { unitary, .. } if *unitary == l))
                .map(|(m, c)| (strip_unitary(m), c.clone())),
        )?;
        let v = solver.state(&part)?;
        if !v.is_zero() {
            out.push((l, v));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Generator;
    use crate::laurent::LaurentCoefficient;
    use crate::rational_fn::Poly;
    use crate::scalar::GaussRat;

    fn ggs(a: Algebra) -> Element {
        &Element::generator(a, Generator::GammaStar).unwrap() * &Element::generator(a, Generator::Gamma).unwrap()
    }

    fn one_over_one_plus_q2() -> RationalValue {
        let p = |c: &[i64]| Poly::new(c.iter().map(|&v| GaussRat::from_int(v)).collect());
        RationalValue::new(p(&[1]), p(&[1, 0, 1])).unwrap()
    }

    #[test]
    fn unit_and_gamma_star_gamma() {
        assert!(haar_state(&Element::one(Algebra::SUq2)).unwrap().is_one());
        assert_eq!(haar_state(&ggs(Algebra::SUq2)).unwrap(), one_over_one_plus_q2());
    }

    #[test]
    fn vanishing_values() {
        let a = Element::generator(Algebra::SUq2, Generator::Alpha).unwrap();
        assert!(haar_state(&a).unwrap().is_zero());
        let u = Element::generator(Algebra::GqTheta, Generator::U).unwrap();
        let x = &ggs(Algebra::GqTheta) * &u;
        assert!(haar_state(&x).unwrap().is_zero());
    }

    #[test]
    fn weights_respected_by_coproduct() {
        for m in crate::corpus::monomials_up_to(Algebra::SUq2, 3) {
            let (l, r) = weights(&m);
            for (key, _) in coproduct_monomial(Algebra::SUq2, &m).unwrap().terms() {
                let (a, b) = (weights(&key[0]), weights(&key[1]));
                assert_eq!(a.0, l, "{m}");
                assert_eq!(b.1, r, "{m}");
                assert_eq!(a.1, b.0, "{m}");
            }
        }
    }

    #[test]
    fn conditional_expectation_examples() {
        let u = Element::generator(Algebra::GqTheta, Generator::U).unwrap();
        assert_eq!(conditional_expectation(&u.pow(3)).unwrap(), vec![(3, RationalValue::one())]);
        let x = &ggs(Algebra::GqTheta) * &u;
        assert_eq!(conditional_expectation(&x).unwrap(), vec![(1, one_over_one_plus_q2())]);
        let a = Element::generator(Algebra::GqTheta, Generator::Alpha).unwrap();
        assert!(conditional_expectation(&a).unwrap().is_empty());
        assert!(conditional_expectation(&Element::one(Algebra::SUq2)).is_err());
    }

    #[test]
    fn zeta_coefficients_on_vanishing_terms_are_fine() {
        let g = Element::generator(Algebra::GqTheta, Generator::Gamma).unwrap();
        let x = g.scale(&LaurentCoefficient::zeta_pow(1));
        assert!(haar_state(&x).unwrap().is_zero());
        let y = ggs(Algebra::GqTheta).scale(&LaurentCoefficient::zeta_pow(1));
        assert!(matches!(haar_state(&y), Err(AlgebraError::ZetaDependentHaarValue)));
    }
}
