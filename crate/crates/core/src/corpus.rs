//! Deterministic test corpora: all monomials up to a degree, and seeded random elements.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, Element, Monomial};
use crate::laurent::LaurentCoefficient;
use crate::scalar::{rat, GaussRat};

/// Every normal-form monomial of total degree `≤ degree`, in canonical order.
pub fn monomials_up_to(algebra: Algebra, degree: u32) -> Vec<Monomial> {
    let d = degree as i32;
    let mut out = Vec::new();
    match algebra {
        Algebra::SUq2 | Algebra::GqTheta => {
            let lmax = if algebra == Algebra::GqTheta { d } else { 0 };
            for k in -d..=d {
                for m in 0..=d {
                    for n in 0..=d {
                        for l in -lmax..=lmax {
                            if k.abs() + m + n + l.abs() <= d {
                                out.push(Monomial::quantum(k, m as u32, n as u32, l));
                            }
                        }
                    }
                }
            }
        }
        Algebra::Torus | Algebra::Circle => {
            for a in -d..=d {
                for b in -d..=d {
                    if a.abs() + b.abs() <= d {
                        out.push(match algebra {
                            Algebra::Torus => Monomial::torus(a, b),
                            _ => Monomial::circle(a, b),
                        });
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// One of `±1, ±i, ±1/2`.
pub fn random_coefficient<R: Rng>(rng: &mut R) -> GaussRat {
    match rng.random_range(0..6) {
        0 => GaussRat::from_int(1),
        1 => GaussRat::from_int(-1),
        2 => GaussRat::i(),
        3 => -GaussRat::i(),
        4 => GaussRat::real(rat(1, 2)),
        _ => GaussRat::real(rat(-1, 2)),
    }
}

/// `count` elements, each a sum of at most `max_terms` distinct monomials of degree
/// `≤ max_degree` with coefficients in `{±1, ±i, ±1/2}`; fully determined by `seed`.
pub fn random_elements(algebra: Algebra, count: usize, max_terms: usize, max_degree: u32, seed: u64) -> Vec<Element> {
    let pool = monomials_up_to(algebra, max_degree);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let terms = rng.random_range(1..=max_terms.max(1));
            let mut x = Element::zero(algebra);
            for _ in 0..terms {
                let m = pool[rng.random_range(0..pool.len())];
                let c = LaurentCoefficient::constant(random_coefficient(&mut rng));
                x = &x + &Element::from_monomial(algebra, m, c).expect("pool monomials fit the algebra");
            }
            x
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        // |k| + m + n ≤ 1: 1, α, α*, γ, γ*
        assert_eq!(monomials_up_to(Algebra::SUq2, 1).len(), 5);
        assert_eq!(monomials_up_to(Algebra::GqTheta, 1).len(), 7);
        assert_eq!(monomials_up_to(Algebra::Torus, 1).len(), 5);
        assert!(monomials_up_to(Algebra::SUq2, 4).iter().all(|m| m.degree() <= 4));
    }

    #[test]
    fn random_elements_are_reproducible() {
        let a = random_elements(Algebra::GqTheta, 10, 5, 4, 42);
        let b = random_elements(Algebra::GqTheta, 10, 5, 4, 42);
        assert_eq!(a, b);
        assert_ne!(a, random_elements(Algebra::GqTheta, 10, 5, 4, 43));
        assert!(a.iter().all(|x| x.len() <= 5 && x.degree() <= 4));
    }
}
