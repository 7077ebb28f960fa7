//! Fusion rules of the relevant discrete duals and the local-finiteness closure check:
//! does a finite set of irreducible classes generate a finite fusion ring?

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde_json::{Map, Value};

use crate::error::LabError;
use crate::report::Report;

/// The built-in rule tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FusionRing {
    /// Irreducibles of SU_q(2) labelled by twice the spin, Clebsch–Gordan fusion.
    Su2Spin,
    /// The group ring of ℤ.
    Integers,
    /// The group ring of ℤ/n.
    Cyclic(u64),
    /// Pairs (twice-spin, charge) with componentwise fusion.
    ProductSu2Int,
}

/// An irreducible class of one of the rings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Spin(u64),
    Int(i64),
    Mod(u64),
    Pair(u64, i64),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Spin(a) | Label::Mod(a) => write!(f, "{a}"),
            Label::Int(n) => write!(f, "{n}"),
            Label::Pair(a, n) => write!(f, "({a},{n})"),
        }
    }
}

impl FromStr for FusionRing {
    type Err = LabError;

    /// `su2`, `integers`, `cyclic:N` (or `cyclic(N)`), `product`.
    fn from_str(s: &str) -> Result<Self, LabError> {
        let s = s.trim();
        let cyclic = s
            .strip_prefix("cyclic:")
            .or_else(|| s.strip_prefix("cyclic(").and_then(|r| r.strip_suffix(')')));
        if let Some(n) = cyclic {
            let n = n.trim().parse().map_err(|_| LabError::InvalidParameter(format!("bad cyclic order `{n}`")))?;
            return FusionRing::cyclic(n);
        }
        match s {
            "su2" | "su2spin" => Ok(FusionRing::Su2Spin),
            "integers" | "int" | "z" => Ok(FusionRing::Integers),
            "product" | "productSu2Int" => Ok(FusionRing::ProductSu2Int),
            other => Err(LabError::InvalidParameter(format!("unknown fusion ring `{other}`"))),
        }
    }
}

impl fmt::Display for FusionRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FusionRing::Su2Spin => write!(f, "su2spin"),
            FusionRing::Integers => write!(f, "integers"),
            FusionRing::Cyclic(n) => write!(f, "cyclic({n})"),
            FusionRing::ProductSu2Int => write!(f, "productSu2Int"),
        }
    }
}

fn su2_rule(a: u64, b: u64) -> impl Iterator<Item = u64> {
    (a.abs_diff(b)..=a + b).step_by(2)
}

fn invalid(ring: FusionRing, label: Label) -> LabError {
    LabError::InvalidParameter(format!("label {label} does not belong to {ring}"))
}

impl FusionRing {
    pub fn cyclic(n: u64) -> Result<Self, LabError> {
        if n == 0 {
            return Err(LabError::InvalidParameter("cyclic rings need n ≥ 1".into()));
        }
        Ok(FusionRing::Cyclic(n))
    }

    pub fn unit(&self) -> Label {
        match self {
            FusionRing::Su2Spin => Label::Spin(0),
            FusionRing::Integers => Label::Int(0),
            FusionRing::Cyclic(_) => Label::Mod(0),
            FusionRing::ProductSu2Int => Label::Pair(0, 0),
        }
    }

    pub fn validate(&self, label: Label) -> Result<Label, LabError> {
        match (self, label) {
            (FusionRing::Su2Spin, Label::Spin(_))
            | (FusionRing::Integers, Label::Int(_))
            | (FusionRing::ProductSu2Int, Label::Pair(..)) => Ok(label),
            (FusionRing::Cyclic(n), Label::Mod(a)) if a < *n => Ok(label),
            _ => Err(invalid(*self, label)),
        }
    }

    /// Parses a label in this ring's syntax: `3`, `-2`, `(1,-4)`. Cyclic labels are reduced.
    pub fn parse_label(&self, s: &str) -> Result<Label, LabError> {
        let bad = || LabError::InvalidParameter(format!("bad {self} label `{s}`"));
        let t = s.trim();
        match self {
            FusionRing::Su2Spin => t.parse().map(Label::Spin).map_err(|_| bad()),
            FusionRing::Integers => t.parse().map(Label::Int).map_err(|_| bad()),
            FusionRing::Cyclic(n) => t.parse::<i64>().map(|a| Label::Mod(a.rem_euclid(*n as i64) as u64)).map_err(|_| bad()),
            FusionRing::ProductSu2Int => {
                let inner = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
                let (a, b) = inner.split_once(',').ok_or_else(bad)?;
                Ok(Label::Pair(a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
            }
        }
    }

    /// Parses a generator list such as `"(0,1) (1,-2)"`, `"2, 4"` or `"{1}"`.
    pub fn parse_labels(&self, s: &str) -> Result<Vec<Label>, LabError> {
        let body = s.trim().trim_start_matches('{').trim_end_matches('}');
        let mut out = Vec::new();
        let mut depth = 0usize;
        let mut current = String::new();
        for ch in body.chars() {
            match ch {
                '(' => {
                    depth += 1;
                    current.push(ch);
                }
                ')' => {
                    depth = depth.saturating_sub(1);
                    current.push(ch);
                }
                ',' | ' ' | ';' if depth == 0 => {
                    if !current.trim().is_empty() {
                        out.push(self.parse_label(&current)?);
                    }
                    current.clear();
                }
                _ => current.push(ch),
            }
        }
        if !current.trim().is_empty() {
            out.push(self.parse_label(&current)?);
        }
        Ok(out)
    }

    pub fn conjugate(&self, a: Label) -> Result<Label, LabError> {
        Ok(match self.validate(a)? {
            Label::Spin(s) => Label::Spin(s),
            Label::Int(n) => Label::Int(-n),
            Label::Mod(x) => {
                let FusionRing::Cyclic(n) = self else { unreachable!("validated") };
                Label::Mod((n - x) % n)
            }
            Label::Pair(s, n) => Label::Pair(s, -n),
        })
    }

    /// The irreducible summands of `a ⊗ b`, with multiplicity, in ascending order.
    pub fn tensor_decompose(&self, a: Label, b: Label) -> Result<Vec<Label>, LabError> {
        Ok(match (self.validate(a)?, self.validate(b)?) {
            (Label::Spin(x), Label::Spin(y)) => su2_rule(x, y).map(Label::Spin).collect(),
            (Label::Int(x), Label::Int(y)) => {
                vec![Label::Int(x.checked_add(y).ok_or_else(|| LabError::InvalidParameter("charge overflow".into()))?)]
            }
            (Label::Mod(x), Label::Mod(y)) => {
                let FusionRing::Cyclic(n) = self else { unreachable!("validated") };
                vec![Label::Mod((x + y) % n)]
            }
            (Label::Pair(s, m), Label::Pair(t, n)) => {
                let c = m.checked_add(n).ok_or_else(|| LabError::InvalidParameter("charge overflow".into()))?;
                su2_rule(s, t).map(|r| Label::Pair(r, c)).collect()
            }
            _ => unreachable!("both labels validated against the same ring"),
        })
    }

    /// `dim(a)` where the ring has an integer dimension function (spins: `a + 1`).
    pub fn dimension(&self, a: Label) -> Result<u64, LabError> {
        Ok(match self.validate(a)? {
            Label::Spin(s) | Label::Pair(s, _) => s + 1,
            _ => 1,
        })
    }
}

/// Outcome of [`local_finiteness_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Closure {
    /// The closed label set, sorted.
    Finite(Vec<Label>),
    /// The closure exceeded the cap; the payload is the number of labels found.
    CapExceeded(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCheck {
    pub ring: FusionRing,
    pub generators: Vec<Label>,
    pub cap: usize,
    pub closure: Closure,
    /// Labels in breadth-first discovery order.
    pub visit_order: Vec<Label>,
    /// Number of labels known after each breadth-first round.
    pub growth: Vec<usize>,
    /// Exhaustive post-check of a `Finite` result: tensor-, conjugate- and unit-closed.
    /// `None` for `CapExceeded`.
    pub sound: Option<bool>,
}

impl FiniteCheck {
    /// Whether the recorded growth chain strictly increases.
    pub fn strictly_growing(&self) -> bool {
        self.growth.windows(2).all(|w| w[0] < w[1])
    }
}

/// Exhaustive check that `set` contains the unit and is closed under conjugation and fusion.
pub fn closure_is_sound(ring: FusionRing, set: &[Label]) -> Result<bool, LabError> {
    let members: HashSet<Label> = set.iter().copied().collect();
    if !members.contains(&ring.unit()) {
        return Ok(false);
    }
    for &a in set {
        if !members.contains(&ring.conjugate(a)?) {
            return Ok(false);
        }
        for &b in set {
            if !ring.tensor_decompose(a, b)?.iter().all(|c| members.contains(c)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Breadth-first closure of `generators ∪ conjugates ∪ {unit}` under fusion.
///
/// Each round multiplies the labels found in the previous round by the generating set;
/// every summand of a fusion word in the generators is reached this way. A `Finite`
/// result is then re-verified exhaustively.
pub fn local_finiteness_check(ring: FusionRing, generators: &[Label], cap: usize) -> Result<FiniteCheck, LabError> {
    if generators.is_empty() {
        return Err(LabError::Empty("the generator set is empty".into()));
    }
    if cap < generators.len() {
        return Err(LabError::InvalidParameter(format!("cap {cap} is smaller than the generator count {}", generators.len())));
    }
    let mut step: Vec<Label> = Vec::new();
    for &g in generators {
        for x in [ring.validate(g)?, ring.conjugate(g)?] {
            if !step.contains(&x) {
                step.push(x);
            }
        }
    }
    let mut seen: HashSet<Label> = HashSet::new();
    let mut visit_order = Vec::new();
    let mut frontier = Vec::new();
    for x in std::iter::once(ring.unit()).chain(step.iter().copied()) {
        if seen.insert(x) {
            visit_order.push(x);
            frontier.push(x);
        }
    }
    let mut growth = vec![visit_order.len()];
    let mut exceeded = visit_order.len() > cap;
    while !frontier.is_empty() && !exceeded {
        let mut next = Vec::new();
        'round: for &a in &frontier {
            for &g in &step {
                for c in ring.tensor_decompose(a, g)? {
                    if seen.insert(c) {
                        visit_order.push(c);
                        next.push(c);
                        if visit_order.len() > cap {
                            exceeded = true;
                            break 'round;
                        }
                    }
                }
            }
        }
        if !next.is_empty() {
            growth.push(visit_order.len());
        }
        frontier = next;
    }
    let (closure, sound) = if exceeded {
        (Closure::CapExceeded(visit_order.len()), None)
    } else {
        let mut set = visit_order.clone();
        set.sort();
        let sound = closure_is_sound(ring, &set)?;
        (Closure::Finite(set), Some(sound))
    };
    Ok(FiniteCheck { ring, generators: generators.to_vec(), cap, closure, visit_order, growth, sound })
}

fn labels_value(labels: &[Label]) -> Value {
    Value::Array(labels.iter().map(|l| Value::String(l.to_string())).collect())
}

/// [`local_finiteness_check`] as a report.
pub fn local_finiteness_report(ring: FusionRing, generators: &[Label], cap: usize) -> Result<Report, LabError> {
    let check = local_finiteness_check(ring, generators, cap)?;
    let mut report = Report::new("fusion-lf");
    report.param("ring", ring.to_string()).param("generators", labels_value(generators)).param("cap", cap);
    let finite = matches!(check.closure, Closure::Finite(_));
    report
        .metric("outcome", if finite { "Finite" } else { "CapExceeded" })
        .metric("count", check.visit_order.len())
        .metric("rounds", check.growth.len())
        .metric("strictlyGrowing", check.strictly_growing())
        .metric("visitOrder", labels_value(&check.visit_order));
    if let Closure::Finite(set) = &check.closure {
        report.metric("closure", labels_value(set));
    }
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for (round, &size) in check.growth.iter().enumerate() {
        sizes.insert(round, size);
    }
    for (round, size) in sizes {
        let mut item = Map::new();
        item.insert("round".into(), round.into());
        item.insert("size".into(), size.into());
        report.push_item(item);
    }
    match check.sound {
        Some(sound) => {
            report.set_verdict("locallyFinite", true).set_verdict("closureSound", sound);
        }
        None => {
            report.set_verdict("notLocallyFinite", check.strictly_growing());
        }
    }
    Ok(report.finalize())
}
