//! Truncations of the concrete representation on `L2({0} ∪ ⋃_k q^k T)`.

use std::f64::consts::PI;

use crate::algebra::Algebra;
use crate::error::LabError;
use crate::linalg::{operator_norm, SparseMatrix, C64};

/// The rotation parameter of G_q^θ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ThetaSpec {
    /// `θ = L/N`.
    Rational { numerator: i64, denominator: u64 },
    Real(f64),
}

impl ThetaSpec {
    pub fn value(&self) -> f64 {
        match *self {
            ThetaSpec::Rational { numerator, denominator } => numerator as f64 / denominator as f64,
            ThetaSpec::Real(t) => t,
        }
    }

    /// `e^{2πiθ}`; for rational θ the angle is reduced mod 1 exactly first.
    pub fn zeta(&self) -> C64 {
        match *self {
            ThetaSpec::Rational { numerator, denominator } => root_of_unity(numerator, denominator),
            ThetaSpec::Real(t) => C64::from_polar(1.0, 2.0 * PI * t.rem_euclid(1.0)),
        }
    }
}

/// `e^{2πi·num/den}` with the numerator reduced mod `den` before the float division.
pub fn root_of_unity(num: i64, den: u64) -> C64 {
    let d = den as i64;
    let r = num.rem_euclid(d);
    // quarter turns are returned exactly
    if (4 * r) % d == 0 {
        return [C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(-1.0, 0.0), C64::new(0.0, -1.0)][(4 * r / d) as usize];
    }
    C64::from_polar(1.0, 2.0 * PI * r as f64 / d as f64)
}

/// Common interface of the finite-dimensional numeric representations.
pub trait Representation {
    fn algebra(&self) -> Algebra;
    fn dim(&self) -> usize;
    fn q(&self) -> f64;
    /// Value bound to `ζ`, if the representation carries `u_θ`.
    fn zeta(&self) -> Option<C64>;
    fn alpha(&self) -> &SparseMatrix;
    fn gamma(&self) -> &SparseMatrix;
    fn unitary(&self) -> Option<&SparseMatrix>;
    /// Highest level index `K`.
    fn top_level(&self) -> usize;
    /// Level of a basis vector; `None` for the origin vector.
    fn level_of(&self, index: usize) -> Option<usize>;
}

/// Entries below this size are rounding noise when localising a defect.
pub const LEVEL_TOLERANCE: f64 = 1e-12;

/// Residual of one defining relation and where it lives.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationResidual {
    pub relation: String,
    /// Operator norm of the defect.
    pub norm: f64,
    /// Operator norm of the defect restricted to levels `< K` (and the origin vector).
    pub interior_norm: f64,
    /// Levels whose columns carry a defect entry above [`LEVEL_TOLERANCE`].
    pub levels: Vec<usize>,
}

pub(crate) fn check_q(q: f64) -> Result<(), LabError> {
    if !(q.is_finite() && q != 0.0 && q.abs() < 1.0) {
        return Err(LabError::InvalidParameter(format!("q = {q} must satisfy 0 < |q| < 1")));
    }
    Ok(())
}

/// Defect matrices of the relations of Pol(SU_q(2)) (and of u_θ, if present).
pub(crate) fn relation_defects(
    q: f64,
    alpha: &SparseMatrix,
    gamma: &SparseMatrix,
    unitary: Option<(&SparseMatrix, C64)>,
) -> Vec<(&'static str, SparseMatrix)> {
    let n = alpha.rows();
    let one = SparseMatrix::identity(n);
    let qc = C64::new(q, 0.0);
    let (a_s, g_s) = (alpha.adjoint(), gamma.adjoint());
    let mut out = vec![
        ("g* g - g g*", g_s.mul(gamma).sub(&gamma.mul(&g_s))),
        ("a g - q g a", alpha.mul(gamma).sub(&gamma.mul(alpha).scale(qc))),
        ("a g* - q g* a", alpha.mul(&g_s).sub(&g_s.mul(alpha).scale(qc))),
        ("a* a + g* g - 1", a_s.mul(alpha).add(&g_s.mul(gamma)).sub(&one)),
        ("a a* + q^2 g g* - 1", alpha.mul(&a_s).add(&gamma.mul(&g_s).scale(qc * qc)).sub(&one)),
    ];
    if let Some((u, zeta)) = unitary {
        let u_s = u.adjoint();
        out.push(("u* u - 1", u_s.mul(u).sub(&one)));
        out.push(("u u* - 1", u.mul(&u_s).sub(&one)));
        out.push(("u* g u - zeta g", u_s.mul(gamma).mul(u).sub(&gamma.scale(zeta))));
        out.push(("u* a u - a", u_s.mul(alpha).mul(u).sub(alpha)));
    }
    out
}

/// Certificate for each relation: total norm, norm on the interior levels, and the
/// levels where the defect is supported.
pub(crate) fn certify<R: Representation + ?Sized>(rep: &R) -> Result<Vec<RelationResidual>, LabError> {
    let top = rep.top_level();
    let unitary = rep.unitary().map(|u| (u, rep.zeta().unwrap_or(C64::new(1.0, 0.0))));
    let n = rep.dim();
    let interior: Vec<usize> = (0..n).filter(|&i| rep.level_of(i).is_none_or(|k| k < top)).collect();
    let all: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    for (name, d) in relation_defects(rep.q(), rep.alpha(), rep.gamma(), unitary) {
        let mut levels: Vec<usize> =
            d.triplets().filter(|(_, _, v)| v.norm() > LEVEL_TOLERANCE).filter_map(|(_, c, _)| rep.level_of(c)).collect();
        levels.sort_unstable();
        levels.dedup();
        let norm = operator_norm(&d)?;
        let interior_norm = if interior.len() == n { norm } else { operator_norm(&d.submatrix(&all, &interior))? };
        out.push(RelationResidual { relation: name.to_string(), norm, interior_norm, levels });
    }
    Ok(out)
}

/// Parameters of a level/mode truncation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RepParams {
    pub q: f64,
    /// Highest level `K`; levels are `0..=K`.
    pub levels: usize,
    /// Fourier modes per level `N`.
    pub modes: usize,
    pub origin: bool,
    /// Present exactly for G_q^θ.
    pub theta: Option<ThetaSpec>,
}

impl RepParams {
    pub fn new(q: f64, levels: usize, modes: usize) -> Self {
        Self { q, levels, modes, origin: false, theta: None }
    }

    pub fn with_origin(mut self, origin: bool) -> Self {
        self.origin = origin;
        self
    }

    pub fn with_theta(mut self, theta: ThetaSpec) -> Self {
        self.theta = Some(theta);
        self
    }
}

/// A truncation with basis `e_{k,j}` (`k = 0..=K`, `j ∈ Z_N`) and an optional origin vector
/// (stored last).
#[derive(Clone, Debug)]
pub struct TruncatedRep {
    params: RepParams,
    algebra: Algebra,
    alpha: SparseMatrix,
    gamma: SparseMatrix,
    unitary: Option<SparseMatrix>,
    zeta: Option<C64>,
    residuals: Vec<RelationResidual>,
}

impl TruncatedRep {
    /// Assemble from generator matrices on the level/mode basis and certify the relations.
    pub(crate) fn assemble(
        params: RepParams,
        alpha: SparseMatrix,
        gamma: SparseMatrix,
        unitary: Option<(SparseMatrix, C64)>,
    ) -> Result<Self, LabError> {
        let algebra = if unitary.is_some() { Algebra::GqTheta } else { Algebra::SUq2 };
        let (unitary, zeta) = match unitary {
            Some((u, z)) => (Some(u), Some(z)),
            None => (None, None),
        };
        let mut rep = Self { params, algebra, alpha, gamma, unitary, zeta, residuals: Vec::new() };
        rep.residuals = certify(&rep)?;
        Ok(rep)
    }

    pub fn params(&self) -> &RepParams {
        &self.params
    }

    pub fn residuals(&self) -> &[RelationResidual] {
        &self.residuals
    }

    /// Largest interior residual over all relations.
    pub fn max_interior_residual(&self) -> f64 {
        self.residuals.iter().map(|r| r.interior_norm).fold(0.0, f64::max)
    }

    /// Basis index of `e_{k,j}`.
    pub fn index(&self, level: usize, mode: usize) -> usize {
        level * self.params.modes + mode
    }

    /// Indices of level `k`.
    pub fn level_indices(&self, level: usize) -> Vec<usize> {
        (0..self.params.modes).map(|j| self.index(level, j)).collect()
    }

    /// Eigenvalues of `π(γ)`: `q^k e^{2πij/N}` on level `k`, plus `0` for the origin.
    /// Valid for the cyclic-shift truncations built in this crate.
    pub fn gamma_spectrum(&self) -> Vec<C64> {
        let n = self.params.modes as u64;
        let mut out: Vec<C64> = (0..=self.params.levels)
            .flat_map(|k| (0..n).map(move |j| (k, j)))
            .map(|(k, j)| root_of_unity(j as i64, n) * self.params.q.powi(k as i32))
            .collect();
        if self.params.origin {
            out.push(C64::new(0.0, 0.0));
        }
        out
    }
}

impl Representation for TruncatedRep {
    fn algebra(&self) -> Algebra {
        self.algebra
    }
    fn dim(&self) -> usize {
        self.alpha.rows()
    }
    fn q(&self) -> f64 {
        self.params.q
    }
    fn zeta(&self) -> Option<C64> {
        self.zeta
    }
    fn alpha(&self) -> &SparseMatrix {
        &self.alpha
    }
    fn gamma(&self) -> &SparseMatrix {
        &self.gamma
    }
    fn unitary(&self) -> Option<&SparseMatrix> {
        self.unitary.as_ref()
    }
    fn top_level(&self) -> usize {
        self.params.levels
    }
    fn level_of(&self, index: usize) -> Option<usize> {
        let per = self.params.modes;
        (index < (self.params.levels + 1) * per).then(|| index / per)
    }
}

/// `α e_{k,j} = √(1−q^{2k}) e_{k−1,j}` on `(K+1)·N` level/mode vectors, plus `αδ0 = δ0`.
pub(crate) fn level_shift_alpha(q: f64, levels: usize, modes: usize, origin: bool) -> SparseMatrix {
    let dim = (levels + 1) * modes + usize::from(origin);
    let mut t: Vec<(usize, usize, C64)> = Vec::new();
    for k in 1..=levels {
        let w = (1.0 - q.powi(2 * k as i32)).sqrt();
        for j in 0..modes {
            t.push(((k - 1) * modes + j, k * modes + j, C64::new(w, 0.0)));
        }
    }
    if origin {
        t.push((dim - 1, dim - 1, C64::new(1.0, 0.0)));
    }
    SparseMatrix::from_triplets(dim, dim, t)
}

/// The level/mode truncation of the concrete representation.
///
/// `γ e_{k,j} = q^k e_{k,j+1}`, `α e_{k,j} = √(1−q^{2k}) e_{k−1,j}`, and for G_q^θ
/// `u_θ e_{k,j} = ω^{−j} e_{k,j}` with `ω = e^{2πiθ}`, which needs `θ = L/D` with `D | N`.
pub fn build_full_rep(params: RepParams) -> Result<TruncatedRep, LabError> {
    check_q(params.q)?;
    if params.modes == 0 {
        return Err(LabError::InvalidParameter("modes per level must be at least 1".into()));
    }
    let (q, levels, modes) = (params.q, params.levels, params.modes);
    let dim = (levels + 1) * modes + usize::from(params.origin);
    let alpha = level_shift_alpha(q, levels, modes, params.origin);
    let gamma = SparseMatrix::from_triplets(
        dim,
        dim,
        (0..=levels).flat_map(|k| {
            let w = q.powi(k as i32);
            (0..modes).map(move |j| (k * modes + (j + 1) % modes, k * modes + j, C64::new(w, 0.0)))
        }),
    );
    let unitary = match params.theta {
        None => None,
        Some(ThetaSpec::Rational { numerator, denominator }) => {
            if denominator == 0 || !(modes as u64).is_multiple_of(denominator) {
                return Err(LabError::InvalidParameter(format!(
                    "theta = {numerator}/{denominator} needs a denominator dividing the mode count {modes}"
                )));
            }
            let d: Vec<C64> = (0..dim)
                .map(|i| if i < (levels + 1) * modes { root_of_unity(-(numerator * (i % modes) as i64), denominator) } else { C64::new(1.0, 0.0) })
                .collect();
            Some((SparseMatrix::diagonal(&d), root_of_unity(numerator, denominator)))
        }
        Some(ThetaSpec::Real(_)) => {
            return Err(LabError::InvalidParameter(
                "the cyclic-mode truncation needs a rational theta; use a torus model for real theta".into(),
            ))
        }
    };
    TruncatedRep::assemble(params, alpha, gamma, unitary)
}

/// Angle region of a grid representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    /// `2G` angles around the whole circle.
    Full,
    /// `G` angles in the open lower half circle on every level (`q > 0`).
    LowerHalf,
    /// `q < 0`: the same angle parameters `ξ ∈ T↓` on every level, so the points
    /// `q^k ξ` lie in the lower half for even `k` and the upper half for odd `k`.
    Alternating,
}

impl Region {
    pub fn name(&self) -> &'static str {
        match self {
            Region::Full => "full",
            Region::LowerHalf => "lowerHalf",
            Region::Alternating => "alternating",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridParams {
    pub q: f64,
    pub levels: usize,
    /// `G`: angles per level in a half circle.
    pub angles: usize,
    pub region: Region,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridPoint {
    pub level: usize,
    /// Angle of the parameter `ξ`; the point is `q^k e^{i·angle}`.
    pub angle: f64,
    pub z: C64,
}

/// Multiplication/shift representation on a finite point set `{q^k ξ}`.
#[derive(Clone, Debug)]
pub struct GridRep {
    params: GridParams,
    points: Vec<GridPoint>,
    alpha: SparseMatrix,
    gamma: SparseMatrix,
    residuals: Vec<RelationResidual>,
}

/// Points `q^k ξ_i` with `γ` diagonal and `α` moving level `k` to `k−1` at the same `ξ`
/// with weight `√(1−q^{2k})`.
pub fn build_grid_rep(params: GridParams) -> Result<GridRep, LabError> {
    check_q(params.q)?;
    if params.angles < 2 {
        return Err(LabError::InvalidParameter("a grid needs at least 2 angles".into()));
    }
    match params.region {
        Region::LowerHalf if params.q < 0.0 => {
            return Err(LabError::InvalidParameter("region lowerHalf requires q > 0".into()))
        }
        Region::Alternating if params.q > 0.0 => {
            return Err(LabError::InvalidParameter("region alternating requires q < 0".into()))
        }
        _ => {}
    }
    let g = params.angles;
    let angles: Vec<f64> = match params.region {
        Region::Full => (0..2 * g).map(|i| PI * (i as f64 + 0.5) / g as f64).collect(),
        Region::LowerHalf | Region::Alternating => (0..g).map(|i| PI + PI * (i as f64 + 0.5) / g as f64).collect(),
    };
    let per = angles.len();
    let points: Vec<GridPoint> = (0..=params.levels)
        .flat_map(|k| angles.iter().map(move |&a| (k, a)))
        .map(|(level, angle)| GridPoint { level, angle, z: C64::from_polar(1.0, angle) * params.q.powi(level as i32) })
        .collect();
    let dim = points.len();
    let gamma = SparseMatrix::diagonal(&points.iter().map(|p| p.z).collect::<Vec<_>>());
    let alpha = level_shift_alpha(params.q, params.levels, per, false);
    debug_assert_eq!(alpha.rows(), dim);
    let mut rep = GridRep { params, points, alpha, gamma, residuals: Vec::new() };
    rep.residuals = certify(&rep)?;
    Ok(rep)
}

impl GridRep {
    pub fn params(&self) -> &GridParams {
        &self.params
    }

    pub fn points(&self) -> &[GridPoint] {
        &self.points
    }

    pub fn residuals(&self) -> &[RelationResidual] {
        &self.residuals
    }

    pub fn max_interior_residual(&self) -> f64 {
        self.residuals.iter().map(|r| r.interior_norm).fold(0.0, f64::max)
    }
}

impl Representation for GridRep {
    fn algebra(&self) -> Algebra {
        Algebra::SUq2
    }
    fn dim(&self) -> usize {
        self.points.len()
    }
    fn q(&self) -> f64 {
        self.params.q
    }
    fn zeta(&self) -> Option<C64> {
        None
    }
    fn alpha(&self) -> &SparseMatrix {
        &self.alpha
    }
    fn gamma(&self) -> &SparseMatrix {
        &self.gamma
    }
    fn unitary(&self) -> Option<&SparseMatrix> {
        None
    }
    fn top_level(&self) -> usize {
        self.params.levels
    }
    fn level_of(&self, index: usize) -> Option<usize> {
        Some(self.points[index].level)
    }
}
