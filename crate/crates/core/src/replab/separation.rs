//! The norm-separation experiment: an element of Pol(SU_q(2)) whose norm in the concrete
//! representation is large but which is (almost) killed by the restricted half-circle
//! representation, together with an injectivity diagnostic for the latter.

use std::collections::HashMap;

use nalgebra::DMatrix;
use serde_json::{json, Map, Value};

use super::chebyshev::{chebyshev_approx, ChebTarget};
use super::eval::{eval_coefficient, eval_element, Bindings, Evaluator};
use super::rep::{build_full_rep, build_grid_rep, GridParams, Region, RepParams, Representation};
use crate::algebra::{Algebra, Element, Generator, Monomial};
use crate::error::LabError;
use crate::laurent::LaurentCoefficient;
use crate::linalg::{operator_norm, SparseMatrix, C64};
use crate::report::{num, Report};
use crate::scalar::{rat, GaussRat};

/// Result of [`injectivity_diagnostic`].
#[derive(Clone, Debug, PartialEq)]
pub struct Injectivity {
    /// Smallest singular value of the stacked, flattened (unnormalised) images.
    pub sigma_min: f64,
    pub monomials: usize,
    /// Independent blocks (images with disjoint supports are orthogonal).
    pub components: usize,
}

/// Convention recorded in reports: images are flattened matrices without rescaling, so
/// the unit alone gives `σ_min = √dim`.
pub const INJECTIVITY_NORMALIZATION: &str = "unnormalized flattened matrices";

/// `{α^k γ^m γ*^n : |k| ≤ a, m, n ≤ g}` in canonical order.
pub fn injectivity_monomials(a: u32, g: u32) -> Vec<Monomial> {
    let a = a as i32;
    let mut out: Vec<Monomial> =
        (-a..=a).flat_map(|k| (0..=g).flat_map(move |m| (0..=g).map(move |n| Monomial::quantum(k, m, n, 0)))).collect();
    out.sort();
    out
}

/// Smallest singular value of the linear map `c ↦ Σ c_i ρ(b_i)` on the given monomials.
pub fn injectivity_diagnostic<R: Representation + ?Sized>(rep: &R, monomials: &[Monomial]) -> Result<Injectivity, LabError> {
    if monomials.is_empty() {
        return Err(LabError::Empty("injectivity diagnostic needs at least one monomial".into()));
    }
    let mut ev = Evaluator::new(rep, Bindings::of(rep))?;
    let images: Vec<SparseMatrix> = monomials.iter().map(|m| ev.monomial(m)).collect::<Result<_, _>>()?;
    // union-find over images sharing a nonzero position
    let mut parent: Vec<usize> = (0..images.len()).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    let mut owner: HashMap<(usize, usize), usize> = HashMap::new();
    for (i, m) in images.iter().enumerate() {
        for (r, c, _) in m.triplets() {
            if let Some(&j) = owner.get(&(r, c)) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            } else {
                owner.insert((r, c), i);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for i in 0..images.len() {
        let root = find(&mut parent, i);
        let s = *slot.entry(root).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[s].push(i);
    }
    let mut sigma_min = f64::INFINITY;
    for group in &groups {
        let mut position: HashMap<(usize, usize), usize> = HashMap::new();
        for &i in group {
            for (r, c, _) in images[i].triplets() {
                let next = position.len();
                position.entry((r, c)).or_insert(next);
            }
        }
        if group.len() > position.len() {
            sigma_min = 0.0;
            continue;
        }
        let mut m = DMatrix::<C64>::zeros(position.len(), group.len());
        for (col, &i) in group.iter().enumerate() {
            for (r, c, v) in images[i].triplets() {
                m[(position[&(r, c)], col)] = v;
            }
        }
        let s = m.singular_values().iter().copied().fold(f64::INFINITY, f64::min);
        sigma_min = sigma_min.min(s);
    }
    Ok(Injectivity { sigma_min, monomials: monomials.len(), components: groups.len() })
}

/// The element whose norms are compared.
#[derive(Clone, Debug, PartialEq)]
pub enum SeparationTarget {
    /// `p(T)` with `T = (γ − γ*)/(2i)` and `p` the Chebyshev interpolant of `max(s, 0)`;
    /// for `q < 0` multiplied by `(γ*γ)^2` (see [`NEGATIVE_Q_DAMPING`]).
    ChebyshevRamp,
    /// A polynomial in `γ, γ*` only (e.g. the control `x = γ`).
    Element(Element),
}

/// Power of `γ*γ` multiplying the ramp for `q < 0`. On the alternating region the odd
/// levels lie in the upper half plane where the ramp is not small; `|z|^4 ≤ q^4` there.
pub const NEGATIVE_Q_DAMPING: u32 = 2;

#[derive(Clone, Debug, PartialEq)]
pub struct SeparationParams {
    pub q: f64,
    pub levels: usize,
    pub modes: usize,
    pub grid: usize,
    pub cheb_degree: usize,
    pub target: SeparationTarget,
    /// Injectivity monomial set `|aExp| ≤ alpha_bound`, `gExp, gStarExp ≤ gamma_bound`.
    pub alpha_bound: u32,
    pub gamma_bound: u32,
    pub full_norm_min: f64,
    pub restricted_norm_max: f64,
    pub ratio_min: f64,
    pub injectivity_min: f64,
}

impl SeparationParams {
    pub fn new(q: f64, levels: usize, modes: usize, grid: usize, cheb_degree: usize) -> Self {
        Self {
            q,
            levels,
            modes,
            grid,
            cheb_degree,
            target: SeparationTarget::ChebyshevRamp,
            alpha_bound: 2,
            gamma_bound: 2,
            full_norm_min: 0.9,
            restricted_norm_max: 0.05,
            ratio_min: 10.0,
            injectivity_min: 1e-6,
        }
    }

    pub fn region(&self) -> Region {
        if self.q > 0.0 {
            Region::LowerHalf
        } else {
            Region::Alternating
        }
    }
}

/// Pointwise function `f(z)` realising the target on the spectrum of `γ`.
enum Pointwise {
    Ramp { poly: super::chebyshev::ChebPoly, damping: u32 },
    Poly(Vec<(u32, u32, C64)>),
}

impl Pointwise {
    fn eval(&self, z: C64) -> f64 {
        match self {
            Pointwise::Ramp { poly, damping } => (poly.eval(z.im) * z.norm_sqr().powi(*damping as i32)).abs(),
            Pointwise::Poly(terms) => {
                terms.iter().map(|&(m, n, c)| c * z.powu(m) * z.conj().powu(n)).sum::<C64>().norm()
            }
        }
    }
}

fn sup<'a, I: IntoIterator<Item = &'a C64>>(f: &Pointwise, points: I) -> f64 {
    points.into_iter().map(|&z| f.eval(z)).fold(0.0, f64::max)
}

fn gamma_element() -> (Element, Element) {
    let g = Element::generator(Algebra::SUq2, Generator::Gamma).expect("gamma");
    let gs = Element::generator(Algebra::SUq2, Generator::GammaStar).expect("gamma*");
    (g, gs)
}

/// `T = (γ − γ*)/(2i)` as an exact element.
pub fn imaginary_part_element() -> Element {
    let (g, gs) = gamma_element();
    let half_i = LaurentCoefficient::constant(GaussRat::new(rat(0, 1), rat(1, 2)));
    &gs.scale(&half_i) - &g.scale(&half_i)
}

pub fn norm_separation_experiment(p: &SeparationParams) -> Result<Report, LabError> {
    if !p.modes.is_multiple_of(4) {
        return Err(LabError::InvalidParameter(format!("modes = {} must be divisible by 4", p.modes)));
    }
    let region = p.region();
    let full = build_full_rep(RepParams::new(p.q, p.levels, p.modes).with_origin(true))?;
    let restricted = build_grid_rep(GridParams { q: p.q, levels: p.levels, angles: p.grid, region })?;
    let full_grid = build_grid_rep(GridParams { q: p.q, levels: p.levels, angles: p.grid, region: Region::Full })?;

    let mut report = Report::new("exp-thm31");
    report
        .param("q", num(p.q))
        .param("levels", p.levels)
        .param("modes", p.modes)
        .param("grid", p.grid)
        .param("chebDegree", p.cheb_degree)
        .param("region", region.name())
        .param("injectivityBounds", json!([p.alpha_bound, p.gamma_bound, p.gamma_bound]))
        .param("fullNormMin", num(p.full_norm_min))
        .param("restrictedNormMax", num(p.restricted_norm_max))
        .param("ratioMin", num(p.ratio_min))
        .param("injectivityMin", num(p.injectivity_min));

    let (pointwise, symbolic, operator) = match &p.target {
        SeparationTarget::ChebyshevRamp => {
            let approx = chebyshev_approx(&ChebTarget::Ramp, p.cheb_degree);
            let damping = if p.q < 0.0 { NEGATIVE_Q_DAMPING } else { 0 };
            report.param("target", "chebyshevRamp");
            report.metric("chebSupError", num(approx.sup_error)).metric("dampingPower", damping);
            let (g, gs) = gamma_element();
            let damp_el = (&gs * &g).pow(damping);
            let x = &approx.poly.eval_element(&imaginary_part_element())? * &damp_el;
            let pg = full.gamma();
            let t = pg.sub(&pg.adjoint()).scale(C64::new(0.0, -0.5));
            let damp = pg.adjoint().mul(pg).pow(damping);
            let op = approx.poly.eval_matrix(&t).mul(&damp);
            (Pointwise::Ramp { poly: approx.poly, damping }, x, op)
        }
        SeparationTarget::Element(x) => {
            report.param("target", x.to_string());
            let b = Bindings { q: p.q, zeta: None };
            let mut terms = Vec::new();
            for (m, c) in x.terms() {
                match *m {
                    Monomial::Quantum { alpha: 0, gamma, gamma_star, unitary: 0 } => {
                        terms.push((gamma, gamma_star, eval_coefficient(c, &b)?))
                    }
                    _ => {
                        return Err(LabError::InvalidParameter(format!(
                            "separation targets must be polynomials in g, g*; found {m}"
                        )))
                    }
                }
            }
            let x = x.retag(Algebra::SUq2)?;
            let op = eval_element(&full, &x)?;
            (Pointwise::Poly(terms), x, op)
        }
    };

    let full_norm = sup(&pointwise, full.gamma_spectrum().iter());
    let full_norm_operator = operator_norm(&operator)?;
    let full_grid_norm = sup(&pointwise, full_grid.points().iter().map(|pt| &pt.z));
    let restricted_norm = sup(&pointwise, restricted.points().iter().map(|pt| &pt.z));
    let ratio = (restricted_norm > 0.0).then(|| full_norm / restricted_norm);
    let injectivity = injectivity_diagnostic(&restricted, &injectivity_monomials(p.alpha_bound, p.gamma_bound))?;

    report
        .metric("fullNorm", num(full_norm))
        .metric("fullNormOperator", num(full_norm_operator))
        .metric("fullNormCrossCheckDiff", num((full_norm - full_norm_operator).abs()))
        .metric("fullGridNorm", num(full_grid_norm))
        .metric("restrictedNorm", num(restricted_norm))
        .metric("normDifference", num(full_norm - restricted_norm))
        .metric("ratio", ratio.map_or(Value::Null, num))
        .metric("monotone", restricted_norm <= full_grid_norm + 1e-10)
        .metric("injectivityFloor", num(injectivity.sigma_min))
        .metric("injectivityMonomials", injectivity.monomials)
        .metric("injectivityComponents", injectivity.components)
        .metric("injectivityNormalization", INJECTIVITY_NORMALIZATION)
        .metric("symbolicTerms", symbolic.len())
        .metric("symbolicDegree", symbolic.degree())
        .metric("symbolicNonzero", !symbolic.is_zero())
        .metric("fullRepResidual", num(full.max_interior_residual()))
        .metric("restrictedRepResidual", num(restricted.max_interior_residual()));
    for (name, points) in [("full", full_grid.points()), ("restricted", restricted.points())] {
        for level in 0..=p.levels {
            let s = points.iter().filter(|pt| pt.level == level).map(|pt| pointwise.eval(pt.z)).fold(0.0, f64::max);
            let mut item = Map::new();
            item.insert("grid".into(), name.into());
            item.insert("level".into(), level.into());
            item.insert("sup".into(), num(s));
            report.push_item(item);
        }
    }
    let separated = !symbolic.is_zero()
        && ratio.is_some_and(|r| r >= p.ratio_min)
        && injectivity.sigma_min > p.injectivity_min;
    report.set_verdict("separated", separated);
    Ok(report.finalize())
}
