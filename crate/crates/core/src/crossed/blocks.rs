//! The crossed-product representation, the shift decomposition of `π(α*)`, and the
//! block-matrix form `π(Q) = Σ_{r,c} π_T(P_{c−r}) ⊗ c_q(r,c) e_{r,c}`.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde_json::{Map, Value};

use super::torus::{TorusModel, TorusRep};
use crate::algebra::{Algebra, Element, Generator, Monomial};
use crate::error::LabError;
use crate::laurent::LaurentCoefficient;
use crate::linalg::{dense_norm, SparseMatrix, C64};
use crate::replab::{
    check_q, eval_coefficient, level_shift_alpha, spectrum_gamma_star_gamma, Bindings, RepParams, Representation,
    ThetaSpec, TruncatedRep,
};
use crate::report::{num, Report};
use crate::scalar::Rational;

/// `c_q(m,n) = √((1−q^{2m})(1−q^{2m−2})···(1−q^{2n+2}))` for `m ≥ n`, symmetric, `c_q(n,n) = 1`.
pub fn cq(m: usize, n: usize, q: f64) -> Result<f64, LabError> {
    check_q(q)?;
    let (hi, lo) = if m >= n { (m, n) } else { (n, m) };
    Ok(((lo + 1)..=hi).map(|j| 1.0 - q.powi(2 * j as i32)).product::<f64>().sqrt())
}

/// `c_q(m,n)^2` exactly, for rational `q`.
pub fn cq_squared_exact(m: usize, n: usize, q: &Rational) -> Rational {
    let (hi, lo) = if m >= n { (m, n) } else { (n, m) };
    let q2 = q * q;
    let one = Rational::from_integer(1.into());
    ((lo + 1)..=hi).map(|j| &one - num_traits::pow(q2.clone(), j)).fold(one.clone(), |acc, f| acc * f)
}

/// The crossed-product truncation on `levels ⊗ torus space`:
/// `γ ↦ ⊕_k q^k w`, `u_θ ↦ ⊕_k v`, `α` the weighted level shift.
pub fn build_crossed_rep(q: f64, levels: usize, torus: &TorusRep) -> Result<TruncatedRep, LabError> {
    check_q(q)?;
    let n = torus.size();
    let dim = (levels + 1) * n;
    let mut g = Vec::with_capacity(torus.w.nnz() * (levels + 1));
    let mut u = Vec::with_capacity(torus.v.nnz() * (levels + 1));
    for k in 0..=levels {
        let s = C64::new(q.powi(k as i32), 0.0);
        g.extend(torus.w.triplets().map(|(r, c, x)| (k * n + r, k * n + c, x * s)));
        u.extend(torus.v.triplets().map(|(r, c, x)| (k * n + r, k * n + c, x)));
    }
    let theta = match torus.model {
        TorusModel::Clock { size, numerator } => ThetaSpec::Rational { numerator, denominator: size },
        TorusModel::TruncatedShift { theta, .. } => ThetaSpec::Real(theta),
    };
    let params = RepParams { q, levels, modes: n, origin: false, theta: Some(theta) };
    TruncatedRep::assemble(
        params,
        level_shift_alpha(q, levels, n, false),
        SparseMatrix::from_triplets(dim, dim, g),
        Some((SparseMatrix::from_triplets(dim, dim, u), torus.zeta)),
    )
}

/// Outcome of [`shift_decomposition`].
#[derive(Clone, Debug)]
pub struct ShiftDecomposition {
    pub levels: usize,
    pub max_power: usize,
    /// `(m, n, k, ‖p_m π(α*)^k p_n − δ_{n+k,m} c_q(m,n) v_m v_n*‖)`.
    pub residuals: Vec<(usize, usize, usize, f64)>,
    /// `(n, ‖p_{n+1} π(α*) p_n‖, c_q(n+1, n))`.
    pub cq_checks: Vec<(usize, f64, f64)>,
    /// `max_n max(‖v_n* v_n − p_0‖, ‖v_n v_n* − p_n‖)`.
    pub unitarity: f64,
    /// `max_n ‖v_n u_θ − u_θ v_n‖`.
    pub commutation: f64,
    /// `max_n ‖v_n* γ v_n − q^n γ p_0‖`.
    pub gamma_conjugation: f64,
}

impl ShiftDecomposition {
    pub fn max_residual(&self) -> f64 {
        let table = self.residuals.iter().map(|r| r.3).fold(0.0, f64::max);
        let cq = self.cq_checks.iter().map(|c| (c.1 - c.2).abs()).fold(0.0, f64::max);
        table.max(cq).max(self.unitarity).max(self.commutation).max(self.gamma_conjugation)
    }

    pub fn passed(&self, tol: f64) -> bool {
        self.max_residual() <= tol
    }
}

fn block(m: &SparseMatrix, rows: &[usize], cols: &[usize]) -> DMatrix<C64> {
    m.submatrix(rows, cols).to_dense()
}

/// Spectral projections of `γ*γ` (largest eigenvalue first: level 0, 1, …) and the polar
/// parts `v_n` of `π(α*)^n p_0`, checked against the identities of the shift picture for
/// all `m, n, k ≤ max_power` with `m, n` interior (`< K`).
pub fn shift_decomposition(rep: &TruncatedRep, max_power: usize) -> Result<ShiftDecomposition, LabError> {
    let levels = rep.top_level();
    if levels == 0 {
        return Err(LabError::InvalidParameter("the shift decomposition needs at least two levels".into()));
    }
    let q = rep.q();
    // p_n from the eigenvalue blocks of γ*γ
    let spectrum = spectrum_gamma_star_gamma(rep)?;
    let x = rep.gamma().adjoint().mul(rep.gamma()).diagonal_entries();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (lambda, _) in spectrum.iter().rev() {
        if *lambda <= 0.0 {
            continue;
        }
        blocks.push((0..rep.dim()).filter(|&i| (x[i].re - lambda).abs() <= 1e-12).collect());
    }
    if blocks.len() != levels + 1 {
        return Err(LabError::InvalidParameter(format!("expected {} spectral blocks, found {}", levels + 1, blocks.len())));
    }
    let a_star = rep.alpha().adjoint();
    let interior = levels - 1;
    let top = max_power.min(levels);
    // polar parts v_n : block 0 -> block n
    let mut powers = vec![SparseMatrix::identity(rep.dim())];
    for k in 1..=top.max(interior) {
        powers.push(powers[k - 1].mul(&a_star));
    }
    let mut v: Vec<DMatrix<C64>> = Vec::new();
    for n in 0..=interior {
        let b = block(&powers[n], &blocks[n], &blocks[0]);
        let svd = b.svd(true, true);
        let (u, vt) = (svd.u.expect("u requested"), svd.v_t.expect("v_t requested"));
        v.push(&u * &vt);
    }
    let m_max = interior.min(max_power);
    let mut residuals = Vec::new();
    for (k, power) in powers.iter().enumerate().take(top + 1) {
        for m in 0..=m_max {
            for n in 0..=m_max {
                let lhs = block(power, &blocks[m], &blocks[n]);
                let expected = if n + k == m { &v[m] * v[n].adjoint() * C64::new(cq(m, n, q)?, 0.0) } else { DMatrix::zeros(lhs.nrows(), lhs.ncols()) };
                residuals.push((m, n, k, dense_norm(&(lhs - expected))));
            }
        }
    }
    let mut cq_checks = Vec::new();
    for n in 0..levels {
        let b = block(&a_star, &blocks[n + 1], &blocks[n]);
        cq_checks.push((n, dense_norm(&b), cq(n + 1, n, q)?));
    }
    let u = rep.unitary();
    let g = rep.gamma();
    let (mut unitarity, mut commutation, mut gamma_conjugation) = (0.0f64, 0.0f64, 0.0f64);
    let g0 = block(g, &blocks[0], &blocks[0]);
    for (n, vn) in v.iter().enumerate() {
        let id = DMatrix::<C64>::identity(vn.nrows(), vn.ncols());
        unitarity = unitarity.max(dense_norm(&(vn.adjoint() * vn - &id))).max(dense_norm(&(vn * vn.adjoint() - &id)));
        if let Some(u) = u {
            let un = block(u, &blocks[n], &blocks[n]);
            let u0 = block(u, &blocks[0], &blocks[0]);
            commutation = commutation.max(dense_norm(&(vn * u0 - un * vn)));
        }
        let gn = block(g, &blocks[n], &blocks[n]);
        let lhs = vn.adjoint() * gn * vn;
        gamma_conjugation = gamma_conjugation.max(dense_norm(&(lhs - &g0 * C64::new(q.powi(n as i32), 0.0))));
    }
    Ok(ShiftDecomposition { levels, max_power, residuals, cq_checks, unitarity, commutation, gamma_conjugation })
}

/// `Q = Σ_m P_m α^m` with `P_m` free of `α` (`α^m` meaning `(α*)^{−m}` for `m < 0`),
/// using `α^k γ^a γ*^b u^l = q^{k(a+b)} γ^a γ*^b u^l α^k`.
pub fn decompose_by_alpha_degree(x: &Element) -> Result<BTreeMap<i32, Element>, LabError> {
    let algebra = x.algebra();
    if !matches!(algebra, Algebra::SUq2 | Algebra::GqTheta) {
        return Err(LabError::Algebra(crate::AlgebraError::NotHopf(algebra)));
    }
    let mut parts: BTreeMap<i32, Vec<(Monomial, LaurentCoefficient)>> = BTreeMap::new();
    for (m, c) in x.terms() {
        let Monomial::Quantum { alpha, gamma, gamma_star, unitary } = *m else { unreachable!("quantum monomials") };
        let shift = alpha * (gamma + gamma_star) as i32;
        parts.entry(alpha).or_default().push((Monomial::quantum(0, gamma, gamma_star, unitary), c.shift(shift, 0)));
    }
    parts.into_iter().map(|(k, terms)| Ok((k, Element::from_terms(algebra, terms)?))).collect()
}

/// `Σ_m P_m α^m`.
pub fn reassemble(algebra: Algebra, parts: &BTreeMap<i32, Element>) -> Result<Element, LabError> {
    let a = Element::generator(algebra, Generator::Alpha)?;
    let a_s = Element::generator(algebra, Generator::AlphaStar)?;
    let mut out = Element::zero(algebra);
    for (&k, p) in parts {
        let power = if k >= 0 { a.pow(k as u32) } else { a_s.pow(k.unsigned_abs()) };
        out = out.try_add(&p.multiply(&power)?)?;
    }
    Ok(out)
}

/// Block matrix over the torus space, blocks indexed by levels `0..=cutoff`.
#[derive(Clone, Debug)]
pub struct BlockForm {
    pub cutoff: usize,
    pub block_size: usize,
    pub blocks: BTreeMap<(usize, usize), SparseMatrix>,
}

impl BlockForm {
    pub fn dim(&self) -> usize {
        (self.cutoff + 1) * self.block_size
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        let n = self.block_size;
        SparseMatrix::from_triplets(
            self.dim(),
            self.dim(),
            self.blocks.iter().flat_map(|(&(r, c), b)| b.triplets().map(move |(i, j, v)| (r * n + i, c * n + j, v))),
        )
    }
}

/// `π_T` of an α-free element at level `r`: `γ ↦ q^r w`, `u_θ ↦ v`.
fn torus_image(p: &Element, level: usize, q: f64, torus: &TorusRep) -> Result<SparseMatrix, LabError> {
    let n = torus.size();
    let b = Bindings { q, zeta: Some(torus.zeta) };
    let w_s = torus.w.adjoint();
    let v_s = torus.v.adjoint();
    let mut triplets = Vec::new();
    for (m, c) in p.terms() {
        let Monomial::Quantum { alpha: 0, gamma, gamma_star, unitary } = *m else { unreachable!("alpha-free parts") };
        let c = eval_coefficient(c, &b)? * q.powi((level as i32) * (gamma + gamma_star) as i32);
        let uv = if unitary >= 0 { torus.v.pow(unitary as u32) } else { v_s.pow(unitary.unsigned_abs()) };
        let mat = torus.w.pow(gamma).mul(&w_s.pow(gamma_star)).mul(&uv);
        triplets.extend(mat.triplets().map(|(i, j, x)| (i, j, x * c)));
    }
    Ok(SparseMatrix::from_triplets(n, n, triplets))
}

/// Largest `|m|` with `P_m ≠ 0`.
pub fn alpha_degree(x: &Element) -> usize {
    x.terms()
        .map(|(m, _)| match m {
            Monomial::Quantum { alpha, .. } => alpha.unsigned_abs() as usize,
            _ => 0,
        })
        .max()
        .unwrap_or(0)
}

/// Block `(r, c)` is `c_q(r, c) · π_T(P_{c−r})` evaluated at level `r`.
pub fn assemble_matrix_form(x: &Element, torus: &TorusRep, q: f64, cutoff: usize) -> Result<BlockForm, LabError> {
    check_q(q)?;
    let degree = alpha_degree(x);
    if degree > cutoff {
        return Err(LabError::CutoffTooSmall { cutoff, degree });
    }
    let parts = decompose_by_alpha_degree(x)?;
    let mut blocks = BTreeMap::new();
    for r in 0..=cutoff {
        for c in 0..=cutoff {
            let m = c as i32 - r as i32;
            if let Some(p) = parts.get(&m) {
                let b = torus_image(p, r, q, torus)?.scale(C64::new(cq(r, c, q)?, 0.0));
                if b.nnz() > 0 {
                    blocks.insert((r, c), b);
                }
            }
        }
    }
    Ok(BlockForm { cutoff, block_size: torus.size(), blocks })
}

/// Largest entry of `assemble(Q) − π(Q)`, where `π` is the crossed-product truncation with
/// `K = cutoff` on the same torus model. Normal-form monomials never mix `α` and `α*`, so
/// the truncations agree on every block, including those at the cutoff.
pub fn matrix_form_cross_check(x: &Element, torus: &TorusRep, q: f64, cutoff: usize) -> Result<f64, LabError> {
    let assembled = assemble_matrix_form(x, torus, q, cutoff)?.to_sparse();
    let rep = build_crossed_rep(q, cutoff, torus)?;
    let direct = crate::replab::eval_element(&rep, x)?;
    Ok(assembled.sub(&direct).max_abs())
}

fn model_value(m: &TorusModel) -> Value {
    let mut o = Map::new();
    match *m {
        TorusModel::Clock { size, numerator } => {
            o.insert("kind".into(), "clock".into());
            o.insert("size".into(), size.into());
            o.insert("numerator".into(), numerator.into());
        }
        TorusModel::TruncatedShift { theta, window } => {
            o.insert("kind".into(), "truncatedShift".into());
            o.insert("theta".into(), num(theta));
            o.insert("window".into(), window.into());
        }
    }
    Value::Object(o)
}

fn relative_difference(a: f64, b: f64) -> f64 {
    let s = a.abs().max(b.abs());
    if s == 0.0 {
        0.0
    } else {
        (a - b).abs() / s
    }
}

fn agreement_report<F>(command: &str, suite: &[Element], a: &TorusModel, b: &TorusModel, tol: f64, mut norm: F) -> Result<Report, LabError>
where
    F: FnMut(&Element, usize) -> Result<(f64, f64), LabError>,
{
    if suite.is_empty() {
        return Err(LabError::Empty("the element suite is empty".into()));
    }
    let mut report = Report::new(command);
    report.param("modelA", model_value(a)).param("modelB", model_value(b)).param("tolerance", num(tol));
    report.param("suite", Value::Array(suite.iter().map(|x| Value::String(x.to_string())).collect()));
    let mut max_rel = 0.0f64;
    for (i, x) in suite.iter().enumerate() {
        let (na, nb) = norm(x, i)?;
        let rel = relative_difference(na, nb);
        max_rel = max_rel.max(rel);
        let mut item = Map::new();
        item.insert("index".into(), i.into());
        item.insert("element".into(), x.to_string().into());
        item.insert("normA".into(), num(na));
        item.insert("normB".into(), num(nb));
        item.insert("relativeDifference".into(), num(rel));
        report.push_item(item);
    }
    report.metric("maxRelativeDifference", num(max_rel)).metric("suiteSize", suite.len());
    report.set_verdict("agree", max_rel <= tol);
    Ok(report)
}

/// Operator norms of the block form under two torus models, element by element.
pub fn norm_agreement_experiment(
    suite: &[Element],
    model_a: &TorusModel,
    model_b: &TorusModel,
    q: f64,
    cutoff: usize,
    tol: f64,
) -> Result<Report, LabError> {
    check_q(q)?;
    let ta = super::torus::build_torus_rep(model_a)?;
    let tb = super::torus::build_torus_rep(model_b)?;
    let mut report = agreement_report("exp-thm46", suite, model_a, model_b, tol, |x, _| {
        let na = crate::linalg::operator_norm(&assemble_matrix_form(x, &ta, q, cutoff)?.to_sparse())?;
        let nb = crate::linalg::operator_norm(&assemble_matrix_form(x, &tb, q, cutoff)?.to_sparse())?;
        Ok((na, nb))
    })?;
    report.param("q", num(q)).param("cutoff", cutoff);
    Ok(report.finalize())
}

/// The same comparison for elements of Pol(T_θ), evaluated directly in the two models.
pub fn torus_uniqueness_demo(suite: &[Element], model_a: &TorusModel, model_b: &TorusModel, tol: f64) -> Result<Report, LabError> {
    let ta = super::torus::build_torus_rep(model_a)?;
    let tb = super::torus::build_torus_rep(model_b)?;
    let report = agreement_report("exp-torus", suite, model_a, model_b, tol, |x, _| {
        Ok((crate::linalg::operator_norm(&ta.eval(x)?)?, crate::linalg::operator_norm(&tb.eval(x)?)?))
    })?;
    Ok(report.finalize())
}

/// The shift decomposition as a report.
pub fn shift_decomposition_report(q: f64, levels: usize, model: &TorusModel, max_power: usize, tol: f64) -> Result<Report, LabError> {
    let torus = super::torus::build_torus_rep(model)?;
    let rep = build_crossed_rep(q, levels, &torus)?;
    let d = shift_decomposition(&rep, max_power)?;
    let mut report = Report::new("exp-lemma44");
    report
        .param("q", num(q))
        .param("levels", levels)
        .param("model", model_value(model))
        .param("maxPower", max_power)
        .param("tolerance", num(tol));
    report
        .metric("maxResidual", num(d.max_residual()))
        .metric("unitarity", num(d.unitarity))
        .metric("commutation", num(d.commutation))
        .metric("gammaConjugation", num(d.gamma_conjugation))
        .metric("crossedRepResidual", num(rep.max_interior_residual()))
        .metric("cq20", num(cq(2, 0, q)?));
    for &(n, measured, expected) in &d.cq_checks {
        let mut item = Map::new();
        item.insert("n".into(), n.into());
        item.insert("measured".into(), num(measured));
        item.insert("cq".into(), num(expected));
        item.insert("difference".into(), num((measured - expected).abs()));
        report.push_item(item);
    }
    report.set_verdict("decomposed", d.passed(tol));
    Ok(report.finalize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossed::torus::build_torus_rep;
    use crate::scalar::rat;

    fn gen(g: Generator) -> Element {
        Element::generator(Algebra::GqTheta, g).unwrap()
    }

    #[test]
    fn cq_values() {
        assert_eq!(cq(3, 3, 0.5).unwrap(), 1.0);
        assert!((cq(1, 0, 0.3).unwrap() - (1.0f64 - 0.09).sqrt()).abs() < 1e-15);
        assert!((cq(2, 0, 0.5).unwrap() - (45.0f64 / 64.0).sqrt()).abs() < 1e-14);
        assert_eq!(cq(0, 2, 0.5).unwrap(), cq(2, 0, 0.5).unwrap());
        assert_eq!(cq_squared_exact(2, 0, &rat(1, 2)), rat(45, 64));
        assert!(cq(1, 0, 1.5).is_err());
    }

    #[test]
    fn crossed_relations() {
        let torus = build_torus_rep(&TorusModel::clock(7, 3).unwrap()).unwrap();
        let rep = build_crossed_rep(0.5, 3, &torus).unwrap();
        assert!(rep.max_interior_residual() < 1e-14);
        let k0 = build_crossed_rep(0.5, 0, &torus).unwrap();
        assert_eq!(k0.alpha().nnz(), 0);
        assert!(k0.residuals().iter().filter(|r| r.relation.starts_with('u')).all(|r| r.norm < 1e-14));
    }

    #[test]
    fn decomposition_round_trip() {
        let a = gen(Generator::Alpha);
        let g = gen(Generator::Gamma);
        let u = gen(Generator::U);
        let x = &a * &g;
        let parts = decompose_by_alpha_degree(&x).unwrap();
        assert_eq!(parts.keys().copied().collect::<Vec<_>>(), vec![1]);
        assert_eq!(parts[&1], g.scale(&LaurentCoefficient::q_pow(1)));
        assert_eq!(reassemble(Algebra::GqTheta, &parts).unwrap(), x);
        assert_eq!(decompose_by_alpha_degree(&u).unwrap()[&0], u);
        let s = &a + &gen(Generator::AlphaStar);
        let p = decompose_by_alpha_degree(&s).unwrap();
        assert_eq!(p[&1], Element::one(Algebra::GqTheta));
        assert_eq!(p[&-1], Element::one(Algebra::GqTheta));
        for y in crate::corpus::random_elements(Algebra::GqTheta, 20, 5, 4, 3) {
            assert_eq!(reassemble(Algebra::GqTheta, &decompose_by_alpha_degree(&y).unwrap()).unwrap(), y);
        }
    }

    #[test]
    fn matrix_form_examples() {
        let q = 0.5;
        let torus = build_torus_rep(&TorusModel::clock(5, 2).unwrap()).unwrap();
        let one = assemble_matrix_form(&Element::one(Algebra::GqTheta), &torus, q, 3).unwrap();
        assert_eq!(one.to_sparse(), SparseMatrix::identity(20));
        let u = assemble_matrix_form(&gen(Generator::U), &torus, q, 3).unwrap();
        assert!(u.blocks.iter().all(|(&(r, c), b)| r == c && b == &torus.v));
        let a = assemble_matrix_form(&gen(Generator::Alpha), &torus, q, 3).unwrap();
        for (&(r, c), b) in &a.blocks {
            assert_eq!(c, r + 1);
            let w = (1.0 - q.powi(2 * c as i32)).sqrt();
            assert!(b.sub(&SparseMatrix::identity(5).scale(C64::new(w, 0.0))).max_abs() < 1e-15);
        }
        assert!(matches!(
            assemble_matrix_form(&gen(Generator::Alpha).pow(4), &torus, q, 3),
            Err(LabError::CutoffTooSmall { .. })
        ));
        for x in crate::corpus::random_elements(Algebra::GqTheta, 5, 5, 3, 11) {
            assert!(matrix_form_cross_check(&x, &torus, q, 6).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn shift_decomposition_small() {
        let torus = build_torus_rep(&TorusModel::clock(5, 2).unwrap()).unwrap();
        let rep = build_crossed_rep(0.5, 5, &torus).unwrap();
        let d = shift_decomposition(&rep, 4).unwrap();
        assert!(d.passed(1e-10), "{}", d.max_residual());
        let rep0 = build_crossed_rep(0.5, 0, &torus).unwrap();
        assert!(shift_decomposition(&rep0, 1).is_err());
    }
}
