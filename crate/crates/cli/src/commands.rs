//! One function per subcommand; each returns a finalized report plus its text rendering.

use num_complex::Complex64;
use serde_json::{Map, Value};

use qlab_core::algebra::{
    adjoint, antipode, character, character_exact, conditional_expectation, cor24_check, coproduct, corep_check, counit,
    haar_state, invariant_part, quotient_invariance_defect, quotient_to_circle, tensor_corep, CorepMatrix, RepScalar,
};
use qlab_core::corpus::random_elements;
use qlab_core::crossed::{build_torus_rep, norm_agreement_experiment, shift_decomposition_report, torus_uniqueness_demo, TorusModel};
use qlab_core::fusion::{local_finiteness_report, FusionRing};
use qlab_core::linalg::operator_norm;
use qlab_core::replab::{
    build_full_rep, eval_element, norm_separation_experiment, spectrum_gamma_star_gamma, RepParams, Representation,
    SeparationParams, SeparationTarget,
};
use qlab_core::report::num;
use qlab_core::{Algebra, Element, GaussRat, LaurentCoefficient, Report, TensorElement};

use crate::parse::{infer_algebra, parse_expression, parse_scalar, split_matrix};
use crate::session::{parse_model, QValue, Theta};
use crate::{CliError, Opts};

/// A finished command: the report and the human-readable rendering.
pub struct Outcome {
    pub report: Report,
    pub text: String,
}

impl Outcome {
    fn symbolic(report: Report, text: String) -> Self {
        Self { report: report.finalize(), text }
    }

    /// Text rendering of an experiment report: scalar metrics then verdicts.
    fn experiment(report: Report) -> Self {
        let mut lines = vec![format!("{}:", report.command)];
        for (k, v) in &report.metrics {
            if !v.is_array() && !v.is_object() {
                lines.push(format!("  {k} = {v}"));
            }
        }
        for (k, v) in &report.verdict {
            lines.push(format!("  verdict {k}: {v}"));
        }
        Self { report, text: lines.join("\n") }
    }
}

impl Opts {
    fn algebra_for(&self, text: &str) -> Algebra {
        self.algebra.map(Algebra::from).unwrap_or_else(|| infer_algebra(text))
    }

    fn parse(&self, text: &str) -> Result<Element, CliError> {
        Ok(parse_expression(text, Some(self.algebra_for(text)))?)
    }

    fn q_exact(&self) -> Result<Option<QValue>, CliError> {
        self.q.as_deref().map(QValue::parse).transpose()
    }

    fn q_numeric(&self) -> Result<f64, CliError> {
        Ok(self.q_exact()?.map_or(0.5, |q| q.value))
    }

    fn theta(&self) -> Result<Option<Theta>, CliError> {
        self.theta.as_deref().map(Theta::parse).transpose()
    }

    fn symbolic_report(&self, command: &str, expression: &str, x: &Element) -> Result<Report, CliError> {
        let mut r = Report::new(command);
        r.param("expression", expression).param("algebra", x.algebra().to_string());
        if let Some(q) = &self.q {
            r.param("q", q.as_str());
        }
        Ok(r)
    }
}

fn substitute_coefficient(c: &LaurentCoefficient, q: &Option<QValue>) -> LaurentCoefficient {
    match q {
        Some(q) => c.substitute_q(&q.exact).expect("q is nonzero"),
        None => c.clone(),
    }
}

fn substitute(x: &Element, q: &Option<QValue>) -> Result<Element, CliError> {
    if q.is_none() {
        return Ok(x.clone());
    }
    Ok(Element::from_terms(x.algebra(), x.terms().map(|(m, c)| (*m, substitute_coefficient(c, q))))?)
}

fn substitute_tensor(t: &TensorElement, q: &Option<QValue>) -> Result<TensorElement, CliError> {
    if q.is_none() {
        return Ok(t.clone());
    }
    let mut out = TensorElement::zero(t.legs().to_vec());
    for (key, c) in t.terms() {
        let legs: Vec<Element> =
            key.iter().zip(t.legs()).map(|(m, &alg)| Element::basis(alg, *m)).collect::<Result<_, _>>()?;
        let refs: Vec<&Element> = legs.iter().collect();
        out = out.try_add(&TensorElement::pure(&refs).scale(&substitute_coefficient(c, q)))?;
    }
    Ok(out)
}

/// `nf`, `adjoint`, `delta`, `counit`, `antipode`.
pub fn symbolic(opts: &Opts, command: &str, expression: &str) -> Result<Outcome, CliError> {
    let x = opts.parse(expression)?;
    let q = opts.q_exact()?;
    let text = match command {
        "nf" => substitute(&x, &q)?.to_string(),
        "adjoint" => substitute(&adjoint(&x), &q)?.to_string(),
        "antipode" => substitute(&antipode(&x)?, &q)?.to_string(),
        "delta" => substitute_tensor(&coproduct(&x)?, &q)?.to_string(),
        "counit" => substitute_coefficient(&counit(&x)?, &q).to_string(),
        other => unreachable!("not a symbolic command: {other}"),
    };
    let mut r = opts.symbolic_report(command, expression, &x)?;
    r.metric("result", text.as_str());
    Ok(Outcome::symbolic(r, text))
}

pub fn haar(opts: &Opts, expression: &str) -> Result<Outcome, CliError> {
    let x = opts.parse(expression)?;
    let v = haar_state(&x)?;
    let mut r = opts.symbolic_report("haar", expression, &x)?;
    r.metric("result", v.to_string());
    let text = match opts.q_exact()? {
        Some(q) => {
            let at = v.eval(&GaussRat::real(q.exact)).ok_or_else(|| CliError::Numeric("pole of the Haar value at q".into()))?;
            r.metric("value", at.to_string()).metric("valueNumeric", num(at.to_complex().re));
            at.to_string()
        }
        None => v.to_string(),
    };
    Ok(Outcome::symbolic(r, text))
}

pub fn condexp(opts: &Opts, expression: &str) -> Result<Outcome, CliError> {
    let x = opts.parse(expression)?;
    let parts = conditional_expectation(&x)?;
    let q = opts.q_exact()?;
    let mut r = opts.symbolic_report("condexp", expression, &x)?;
    let mut rendered = Vec::new();
    for (l, v) in &parts {
        let u = match l {
            0 => String::new(),
            1 => " u".into(),
            -1 => " u*".into(),
            l if *l > 0 => format!(" u^{l}"),
            l => format!(" u*^{}", -l),
        };
        let value = match &q {
            Some(q) => v.eval(&GaussRat::real(q.exact.clone())).ok_or_else(|| CliError::Numeric("pole at q".into()))?.to_string(),
            None => v.to_string(),
        };
        let mut item = Map::new();
        item.insert("power".into(), (*l).into());
        item.insert("value".into(), value.as_str().into());
        r.push_item(item);
        let coefficient = if value.contains(' ') && !u.is_empty() { format!("({value})") } else { value };
        rendered.push(format!("{coefficient}{u}"));
    }
    let text = if rendered.is_empty() { "0".to_string() } else { rendered.join(" + ") };
    r.metric("result", text.as_str());
    Ok(Outcome::symbolic(r, text))
}

pub fn invariant(opts: &Opts, expression: &str) -> Result<Outcome, CliError> {
    let x = opts.parse(expression)?;
    let y = invariant_part(&x)?;
    let invariant = quotient_invariance_defect(&y)?.is_zero();
    let input_invariant = quotient_invariance_defect(&x)?.is_zero();
    let q = opts.q_exact()?;
    let text = substitute(&y, &q)?.to_string();
    let mut r = opts.symbolic_report("invariant", expression, &x)?;
    r.metric("result", text.as_str())
        .metric("quotient", substitute(&quotient_to_circle(&x)?, &q)?.to_string())
        .metric("inputInvariant", input_invariant);
    r.set_verdict("invariant", invariant);
    Ok(Outcome::symbolic(r, text))
}

fn corep_matrix(opts: &Opts, spec: &str) -> Result<CorepMatrix, CliError> {
    let algebra = opts.algebra.map(Algebra::from);
    let keyword = spec.trim();
    if keyword == "fundamental" {
        return Ok(CorepMatrix::fundamental(algebra.unwrap_or(Algebra::SUq2))?);
    }
    if keyword == "fundamental2" {
        let u = CorepMatrix::fundamental(algebra.unwrap_or(Algebra::SUq2))?;
        return Ok(tensor_corep(&u, &u)?);
    }
    if let Some(l) = keyword.strip_prefix("unitary:") {
        let l: i32 = l.trim().parse().map_err(|_| CliError::Usage(format!("bad power in `{spec}`")))?;
        return Ok(CorepMatrix::group_like(l)?);
    }
    let rows = split_matrix(spec)?;
    let dim = rows.len();
    if rows.iter().any(|r| r.len() != dim) {
        return Err(CliError::Usage(format!("matrix `{spec}` is not square")));
    }
    let algebra = algebra.unwrap_or_else(|| infer_algebra(&rows.concat().join(" ")));
    let entries = rows.iter().flatten().map(|e| parse_expression(e, Some(algebra))).collect::<Result<Vec<_>, _>>()?;
    Ok(CorepMatrix::new(dim, entries)?)
}

pub fn corepcheck(opts: &Opts, spec: &str) -> Result<Outcome, CliError> {
    let u = corep_matrix(opts, spec)?;
    let check = corep_check(&u)?;
    let mut r = Report::new("corepcheck");
    r.param("matrix", spec).param("algebra", u.algebra().to_string()).param("dim", u.dim());
    r.metric(
        "comultiplicativeFailures",
        Value::Array(check.comultiplicative_failures.iter().map(|&(i, j)| Value::from(vec![i, j])).collect()),
    )
    .metric("unitarityFailures", Value::Array(check.unitarity_failures.iter().map(|s| Value::from(s.as_str())).collect()));
    r.set_verdict("corepresentation", check.passed());
    let text = if check.passed() {
        format!("corepresentation: true ({}x{} over {})", u.dim(), u.dim(), u.algebra())
    } else {
        format!(
            "corepresentation: false\n  comultiplicative failures: {:?}\n  unitarity failures: {:?}",
            check.comultiplicative_failures, check.unitarity_failures
        )
    };
    Ok(Outcome::symbolic(r, text))
}

fn exact_zeta(theta: &Option<Theta>) -> Option<GaussRat> {
    match theta {
        None => Some(GaussRat::from_int(1)),
        Some(Theta::Rational { numerator, denominator }) => {
            let d = *denominator as i64;
            let r = numerator.rem_euclid(d);
            if (4 * r) % d != 0 {
                return None;
            }
            let i = GaussRat::i();
            Some(match 4 * r / d {
                0 => GaussRat::from_int(1),
                1 => i,
                2 => GaussRat::from_int(-1),
                _ => -i,
            })
        }
        Some(Theta::Real(_)) => None,
    }
}

fn table_items<S: RepScalar + std::fmt::Display>(r: &mut Report, table: &[Vec<qlab_core::algebra::DenseMatrix<S>>]) -> Vec<String> {
    let mut lines = Vec::new();
    for (i, row) in table.iter().enumerate() {
        for (j, m) in row.iter().enumerate() {
            let value = m.get(0, 0).to_string();
            let mut item = Map::new();
            item.insert("i".into(), i.into());
            item.insert("j".into(), j.into());
            item.insert("value".into(), value.as_str().into());
            r.push_item(item);
            lines.push(format!("  ({i},{j}): {value}"));
        }
    }
    lines
}

pub fn cor24(opts: &Opts, z: &str, w: Option<&str>, matrix: &str) -> Result<Outcome, CliError> {
    let u = corep_matrix(opts, matrix)?;
    let z_exact = parse_scalar(z)?;
    let w_exact = match (w, u.algebra()) {
        (Some(w), _) => Some(parse_scalar(w)?),
        (None, Algebra::GqTheta) => Some(GaussRat::from_int(1)),
        (None, _) => None,
    };
    let q = opts.q_exact()?.unwrap_or(QValue::parse("1/2")?);
    let theta = opts.theta()?;
    let mut r = Report::new("cor24");
    r.param("matrix", matrix).param("z", z).param("q", q.exact.to_string());
    if let Some(w) = w {
        r.param("w", w);
    }
    // the symbolic row sums Σ_p u*_{j,p} u_{i,p} are not δ_ij; their images are
    let sum00 = u.conjugate_row_sum(0, 0);
    r.metric("conjugateRowSum00", sum00.to_string());
    let (lines, defect, passed, exact) = match exact_zeta(&theta) {
        Some(zeta) => {
            let rep = character_exact(z_exact, w_exact, q.exact.clone(), zeta)?;
            let report = cor24_check(&rep, &u)?;
            (table_items(&mut r, &report.table), report.max_defect, report.passed, true)
        }
        None => {
            let zeta = theta.as_ref().map_or(Complex64::new(1.0, 0.0), |t| t.spec().zeta());
            let rep = character(z_exact.to_complex(), w_exact.map(|w| w.to_complex()), q.value, zeta, 1e-12)?;
            let report = cor24_check(&rep, &u)?;
            (table_items(&mut r, &report.table), report.max_defect, report.passed, false)
        }
    };
    r.metric("maxDefect", num(defect)).metric("exact", exact);
    r.set_verdict("identity", passed);
    let text = format!("identity: {passed}\n  sum_p u*_(0,p) u_(0,p) = {sum00}\n{}", lines.join("\n"));
    Ok(Outcome::symbolic(r, text))
}

pub fn spectrum(opts: &Opts, origin: bool) -> Result<Outcome, CliError> {
    let q = opts.q_numeric()?;
    let (levels, modes) = (opts.levels.unwrap_or(12), opts.modes.unwrap_or(64));
    let rep = build_full_rep(RepParams::new(q, levels, modes).with_origin(origin))?;
    let spectrum = spectrum_gamma_star_gamma(&rep)?;
    let mut expected: Vec<(f64, usize)> = (0..=levels).rev().map(|k| (q.powi(2 * k as i32), modes)).collect();
    if origin {
        expected.insert(0, (0.0, 1));
    }
    let mut r = Report::new("spectrum");
    r.param("q", num(q)).param("levels", levels).param("modes", modes).param("origin", origin);
    let mut max_diff = 0.0f64;
    let mut matches = spectrum.len() == expected.len();
    for (i, &(value, mult)) in spectrum.iter().enumerate() {
        let mut item = Map::new();
        item.insert("value".into(), num(value));
        item.insert("multiplicity".into(), mult.into());
        if let Some(&(e, m)) = expected.get(i) {
            max_diff = max_diff.max((value - e).abs());
            matches &= m == mult;
            item.insert("expected".into(), num(e));
        }
        r.push_item(item);
    }
    matches &= max_diff <= 1e-12;
    r.metric("maxDifference", num(max_diff)).metric("distinctValues", spectrum.len()).metric("dim", rep.dim());
    r.set_verdict("matchesClosedForm", matches);
    Ok(Outcome::experiment(r.finalize()))
}

pub fn norm(opts: &Opts, expression: &str, origin: bool) -> Result<Outcome, CliError> {
    let x = opts.parse(expression)?;
    let q = opts.q_numeric()?;
    let (levels, modes) = (opts.levels.unwrap_or(12), opts.modes.unwrap_or(64));
    let theta = opts.theta()?;
    let mut r = Report::new("norm");
    r.param("expression", expression).param("algebra", x.algebra().to_string());
    let (value, residual, dim) = match x.algebra() {
        Algebra::SUq2 | Algebra::GqTheta => {
            r.param("q", num(q)).param("levels", levels).param("modes", modes).param("origin", origin);
            let mut params = RepParams::new(q, levels, modes).with_origin(origin);
            if x.algebra() == Algebra::GqTheta {
                let theta = theta.ok_or_else(|| CliError::Usage("elements with u need --theta L/N".into()))?;
                r.param("theta", num(theta.value()));
                params = params.with_theta(theta.spec());
            }
            let rep = build_full_rep(params)?;
            (operator_norm(&eval_element(&rep, &x)?)?, rep.max_interior_residual(), rep.dim())
        }
        Algebra::Torus => {
            let model = match (&opts.model, theta) {
                (Some(m), _) => parse_model(m)?,
                (None, Some(Theta::Rational { numerator, denominator })) => TorusModel::clock(denominator, numerator)?,
                (None, Some(Theta::Real(t))) => TorusModel::truncated_shift(t, (modes / 2) as u64)?,
                (None, None) => return Err(CliError::Usage("torus elements need --theta or --model".into())),
            };
            r.param("model", model.describe());
            let rep = build_torus_rep(&model)?;
            (operator_norm(&rep.eval(&x)?)?, rep.interior_defect, rep.size())
        }
        Algebra::Circle => return Err(CliError::Usage("norms are not available for Circle elements".into())),
    };
    r.metric("norm", num(value)).metric("repResidual", num(residual)).metric("dim", dim);
    let text = value.to_string();
    Ok(Outcome { report: r.finalize(), text })
}

pub fn exp_thm31(opts: &Opts, target: Option<&str>) -> Result<Outcome, CliError> {
    let mut p = SeparationParams::new(
        opts.q_numeric()?,
        opts.levels.unwrap_or(12),
        opts.modes.unwrap_or(64),
        opts.grid.unwrap_or(2048),
        opts.cheb_degree.unwrap_or(64),
    );
    if let Some(t) = target {
        p.target = SeparationTarget::Element(parse_expression(t, Some(Algebra::SUq2))?);
    }
    Ok(Outcome::experiment(norm_separation_experiment(&p)?))
}

pub fn exp_lemma44(opts: &Opts, max_power: usize, tolerance: f64) -> Result<Outcome, CliError> {
    let modes = opts.modes.unwrap_or(64);
    let model = match (&opts.model, opts.theta()?) {
        (Some(m), _) => parse_model(m)?,
        (None, Some(Theta::Rational { numerator, denominator })) => TorusModel::clock(denominator, numerator)?,
        (None, Some(Theta::Real(t))) => TorusModel::truncated_shift(t, (modes / 2) as u64)?,
        (None, None) => TorusModel::clock(modes as u64, 1)?,
    };
    let report = shift_decomposition_report(opts.q_numeric()?, opts.levels.unwrap_or(12), &model, max_power, tolerance)?;
    Ok(Outcome::experiment(report))
}

/// The two torus models compared by `exp-thm46` / `exp-torus`.
fn model_pair(opts: &Opts, a: Option<&str>, b: Option<&str>) -> Result<(TorusModel, TorusModel), CliError> {
    let theta = opts.theta()?.unwrap_or(Theta::parse(crate::session::GOLDEN)?);
    let from_theta = |max_den| {
        let (l, n) = theta.convergent(max_den);
        TorusModel::clock(n, l)
    };
    let a = match a {
        Some(m) => parse_model(m)?,
        None => from_theta(100)?,
    };
    let b = match b {
        Some(m) => parse_model(m)?,
        None => from_theta(200)?,
    };
    Ok((a, b))
}

pub struct SuiteArgs<'a> {
    pub model_a: Option<&'a str>,
    pub model_b: Option<&'a str>,
    pub count: usize,
    pub degree: u32,
    pub terms: usize,
    pub tolerance: f64,
}

pub fn exp_thm46(opts: &Opts, s: &SuiteArgs) -> Result<Outcome, CliError> {
    let (a, b) = model_pair(opts, s.model_a, s.model_b)?;
    let suite = random_elements(Algebra::GqTheta, s.count, s.terms, s.degree, opts.seed);
    let mut report = norm_agreement_experiment(&suite, &a, &b, opts.q_numeric()?, opts.cutoff.unwrap_or(10), s.tolerance)?;
    report.param("seed", opts.seed);
    Ok(Outcome::experiment(report.finalize()))
}

pub fn exp_torus(opts: &Opts, s: &SuiteArgs) -> Result<Outcome, CliError> {
    let (a, b) = model_pair(opts, s.model_a, s.model_b)?;
    let suite = random_elements(Algebra::Torus, s.count, s.terms, s.degree, opts.seed);
    let mut report = torus_uniqueness_demo(&suite, &a, &b, s.tolerance)?;
    report.param("seed", opts.seed);
    Ok(Outcome::experiment(report.finalize()))
}

pub fn fusion_lf(opts: &Opts, ring: &str, gens: &str) -> Result<Outcome, CliError> {
    let ring: FusionRing = ring.parse()?;
    let labels = ring.parse_labels(gens)?;
    let report = local_finiteness_report(ring, &labels, opts.cap.unwrap_or(10_000))?;
    let mut out = Outcome::experiment(report);
    if let Some(Value::Array(closure)) = out.report.metrics.get("closure") {
        let labels: Vec<String> = closure.iter().filter_map(|v| v.as_str().map(String::from)).collect();
        out.text.push_str(&format!("\n  closure = {{{}}}", labels.join(", ")));
    }
    Ok(out)
}
