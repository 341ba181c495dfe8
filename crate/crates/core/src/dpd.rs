//! DPD presentations: pairs of Q-divisors `(D+, D-)` with `D+ + D- <= 0`, their
//! special points, singularities, intersection numbers and resolved boundaries.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{bezout, ArithError, HjPair, Rational};
use crate::contract::{contraction_witness, ContractionTarget};
use crate::graph::{GraphError, Vertex, VertexKind, WeightedGraph};
use crate::zigzag::Zigzag;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DpdError {
    #[error("D+ + D- is positive at {0}")]
    ConstraintViolated(String),
    #[error("unsupported base curve: {0}")]
    UnsupportedBase(String),
    #[error("divisor is not ample (degree {0} <= 0)")]
    NotAmple(String),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("invalid DPD pair: {0}")]
    Parse(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The affine base curve: genus and number of points at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BaseCurve {
    pub genus: u32,
    pub points_at_infinity: u32,
}

impl Default for BaseCurve {
    fn default() -> BaseCurve {
        BaseCurve::affine_line()
    }
}

impl BaseCurve {
    pub fn affine_line() -> BaseCurve {
        BaseCurve {
            genus: 0,
            points_at_infinity: 1,
        }
    }

    pub fn is_affine_line(&self) -> bool {
        self.genus == 0 && self.points_at_infinity == 1
    }
}

/// A Q-divisor with finite support; zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "BTreeMap<String, Rational>", into = "BTreeMap<String, Rational>")]
pub struct QDivisor {
    coefficients: BTreeMap<String, Rational>,
}

impl From<BTreeMap<String, Rational>> for QDivisor {
    fn from(mut m: BTreeMap<String, Rational>) -> QDivisor {
        m.retain(|_, v| !v.is_zero());
        QDivisor { coefficients: m }
    }
}

impl From<QDivisor> for BTreeMap<String, Rational> {
    fn from(d: QDivisor) -> BTreeMap<String, Rational> {
        d.coefficients
    }
}

impl QDivisor {
    pub fn new() -> QDivisor {
        QDivisor::default()
    }

    /// Build from `(label, numerator, denominator)` triples.
    pub fn from_terms(terms: &[(&str, i64, i64)]) -> QDivisor {
        let mut d = QDivisor::new();
        for &(p, n, m) in terms {
            d.add_at(p, Rational::new(n, m));
        }
        d
    }

    pub fn at(&self, p: &str) -> Rational {
        self.coefficients.get(p).cloned().unwrap_or_default()
    }

    pub fn add_at(&mut self, p: &str, q: Rational) {
        let v = self.at(p) + q;
        if v.is_zero() {
            self.coefficients.remove(p);
        } else {
            self.coefficients.insert(p.to_string(), v);
        }
    }

    pub fn support(&self) -> impl Iterator<Item = &str> {
        self.coefficients.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Rational)> {
        self.coefficients.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn degree(&self) -> Rational {
        self.coefficients.values().cloned().sum()
    }

    pub fn floor(&self) -> QDivisor {
        self.map(|q| Rational::from(q.floor()))
    }

    pub fn fract(&self) -> QDivisor {
        self.map(Rational::fract)
    }

    pub fn is_integral(&self) -> bool {
        self.coefficients.values().all(Rational::is_integer)
    }

    /// Points where the coefficient is not an integer.
    pub fn fractional_support(&self) -> Vec<&str> {
        self.iter()
            .filter(|(_, q)| !q.is_integer())
            .map(|(p, _)| p)
            .collect()
    }

    fn map(&self, f: impl Fn(&Rational) -> Rational) -> QDivisor {
        QDivisor::from(
            self.coefficients
                .iter()
                .map(|(k, v)| (k.clone(), f(v)))
                .collect::<BTreeMap<_, _>>(),
        )
    }

    pub fn plus(&self, other: &QDivisor) -> QDivisor {
        let mut d = self.clone();
        for (p, q) in other.iter() {
            d.add_at(p, q.clone());
        }
        d
    }

    pub fn minus(&self, other: &QDivisor) -> QDivisor {
        self.plus(&other.map(|q| -q))
    }
}

impl fmt::Display for QDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self.iter().map(|(p, q)| format!("{q}[{p}]")).collect();
        f.write_str(&terms.join(" + "))
    }
}

/// The pair `(D+, D-)` on a base curve.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DpdPair {
    #[serde(default)]
    pub base: BaseCurve,
    #[serde(default)]
    pub d_plus: QDivisor,
    #[serde(default)]
    pub d_minus: QDivisor,
}

impl DpdPair {
    pub fn new(d_plus: QDivisor, d_minus: QDivisor) -> DpdPair {
        DpdPair {
            base: BaseCurve::affine_line(),
            d_plus,
            d_minus,
        }
    }

    pub fn with_base(mut self, base: BaseCurve) -> DpdPair {
        self.base = base;
        self
    }

    pub fn from_json(s: &str) -> Result<DpdPair, DpdError> {
        let p: DpdPair = serde_json::from_str(s).map_err(|e| DpdError::Parse(e.to_string()))?;
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), DpdError> {
        for p in self.points() {
            if (self.d_plus.at(&p) + self.d_minus.at(&p)).is_positive() {
                return Err(DpdError::ConstraintViolated(p));
            }
        }
        Ok(())
    }

    /// Labels in the support of `D+` or `D-`, sorted.
    pub fn points(&self) -> Vec<String> {
        let set: BTreeSet<&str> = self.d_plus.support().chain(self.d_minus.support()).collect();
        set.into_iter().map(str::to_string).collect()
    }

    pub fn sum(&self) -> QDivisor {
        self.d_plus.plus(&self.d_minus)
    }

    /// Interchange `D+` and `D-` (the inverse C*-action).
    pub fn swapped(&self) -> DpdPair {
        DpdPair {
            base: self.base,
            d_plus: self.d_minus.clone(),
            d_minus: self.d_plus.clone(),
        }
    }

    /// Rename points according to `map`; labels not in the map are kept.
    pub fn relabeled(&self, map: &BTreeMap<String, String>) -> DpdPair {
        let rename = |d: &QDivisor| {
            let mut out = QDivisor::new();
            for (p, q) in d.iter() {
                out.add_at(map.get(p).map(String::as_str).unwrap_or(p), q.clone());
            }
            out
        };
        DpdPair {
            base: self.base,
            d_plus: rename(&self.d_plus),
            d_minus: rename(&self.d_minus),
        }
    }

    /// Equivalence `(D+ + div f, D- - div f)`; on a rational base every integral
    /// divisor supported on the affine part is principal.
    pub fn is_equivalent(&self, other: &DpdPair) -> bool {
        if self.base != other.base || self.base.genus != 0 {
            return self == other;
        }
        self.sum() == other.sum() && self.d_plus.minus(&other.d_plus).is_integral()
    }

    /// Per-point invariants of the equivalence class, forgetting the labels.
    pub fn class_signature(&self) -> Vec<(Rational, Rational)> {
        let sum = self.sum();
        let mut sig: Vec<(Rational, Rational)> = self
            .points()
            .iter()
            .map(|p| (sum.at(p), self.d_plus.at(p).fract()))
            .filter(|(s, f)| !s.is_zero() || !f.is_zero())
            .collect();
        sig.sort();
        sig
    }
}

/// Shift integer parts of `D+` into `D-`, so that `0 <= D+(p) < 1` everywhere.
pub fn normalize_pair(p: &DpdPair) -> Result<DpdPair, DpdError> {
    if p.base.genus != 0 {
        return Err(DpdError::UnsupportedBase(format!(
            "genus {} base: integral divisors need not be principal",
            p.base.genus
        )));
    }
    let shift = p.d_plus.floor();
    Ok(DpdPair {
        base: p.base,
        d_plus: p.d_plus.minus(&shift),
        d_minus: p.d_minus.plus(&shift),
    })
}

/// Data of a point in the support of `(D+, D-)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "class")]
pub enum PointClass {
    /// `D+(p) + D-(p) < 0`, with `D+(p) = -e+/m+`, `D-(p) = e-/m-`, `m- < 0`.
    P {
        e_plus: i64,
        m_plus: i64,
        e_minus: i64,
        m_minus: i64,
        delta: i64,
    },
    /// `D+(q) = -D-(q) = -e/m` not an integer.
    Q { e: i64, m: i64 },
    /// `D+(p) = -D-(p)` a nonzero integer; the fiber is a smooth reduced 0-curve.
    Regular { d_plus: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpecialPoint {
    pub label: String,
    #[serde(flatten)]
    pub class: PointClass,
}

fn as_fraction(q: &Rational) -> Result<(i64, i64), DpdError> {
    Ok((q.numer_i64()?, q.denom_i64()?))
}

pub fn classify_points(p: &DpdPair) -> Result<Vec<SpecialPoint>, DpdError> {
    p.validate()?;
    let mut out = Vec::new();
    for label in p.points() {
        let dp = p.d_plus.at(&label);
        let dm = p.d_minus.at(&label);
        let s = &dp + &dm;
        let class = if s.is_negative() {
            let (np, m_plus) = as_fraction(&dp)?;
            let (nm, dm_den) = as_fraction(&dm)?;
            let (e_plus, e_minus, m_minus) = (-np, -nm, -dm_den);
            let delta = Rational::from(m_plus * m_minus) * s;
            let delta = delta.to_i64().filter(|d| *d > 0).ok_or_else(|| {
                DpdError::Inconsistent(format!("determinant at {label} is {delta}"))
            })?;
            PointClass::P {
                e_plus,
                m_plus,
                e_minus,
                m_minus,
                delta,
            }
        } else if dp.is_integer() {
            PointClass::Regular {
                d_plus: dp.numer_i64()?,
            }
        } else {
            let (n, m) = as_fraction(&dp)?;
            PointClass::Q { e: -n, m }
        };
        out.push(SpecialPoint { label, class });
    }
    Ok(out)
}

/// Type `(m, e)` of a cyclic quotient singularity; `(1, 0)` is a smooth point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SingularityType {
    pub m: i64,
    pub e: i64,
}

impl SingularityType {
    pub fn new(m: i64, e: i64) -> Result<SingularityType, DpdError> {
        let h = HjPair::new(m, e)?;
        Ok(SingularityType { m: h.m, e: h.e })
    }

    pub fn is_smooth(&self) -> bool {
        self.m == 1
    }

    /// Length-`n` chain of (-2)-curves: `A_n` has type `(n+1, n)`.
    pub fn is_a_type(&self) -> bool {
        self.e == self.m - 1
    }

    pub fn resolution(&self) -> Vec<i64> {
        HjPair { m: self.m, e: self.e }.expansion()
    }
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MarkedPoint {
    /// Where the fiber over `p` meets the section `C+`.
    PPlus(String),
    PMinus(String),
    /// The interior fixed point where the two orbit closures over `p` meet.
    PPrime(String),
    QPlus(String),
    QMinus(String),
}

impl fmt::Display for MarkedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MarkedPoint::PPlus(p) => write!(f, "{p}+"),
            MarkedPoint::PMinus(p) => write!(f, "{p}-"),
            MarkedPoint::PPrime(p) => write!(f, "{p}'"),
            MarkedPoint::QPlus(p) => write!(f, "{p}+"),
            MarkedPoint::QMinus(p) => write!(f, "{p}-"),
        }
    }
}

/// The residue `e` with `(Delta, e)` the type of the interior fixed point.
fn interior_residue(e_plus: i64, m_plus: i64, e_minus: i64, m_minus: i64) -> Result<i64, DpdError> {
    // a*m+ - b*e+ = 1
    let (a, nb) = bezout(m_plus, e_plus)
        .ok_or_else(|| DpdError::Inconsistent(format!("gcd({m_plus},{e_plus}) != 1")))?;
    let b = -nb;
    Ok(a * m_minus - b * e_minus)
}

pub fn singularity_types(p: &DpdPair) -> Result<BTreeMap<MarkedPoint, SingularityType>, DpdError> {
    let mut out = BTreeMap::new();
    for sp in classify_points(p)? {
        let l = sp.label.clone();
        match sp.class {
            PointClass::P {
                e_plus,
                m_plus,
                e_minus,
                m_minus,
                delta,
            } => {
                out.insert(MarkedPoint::PPlus(l.clone()), SingularityType::new(m_plus, -e_plus)?);
                out.insert(MarkedPoint::PMinus(l.clone()), SingularityType::new(-m_minus, -e_minus)?);
                let e = interior_residue(e_plus, m_plus, e_minus, m_minus)?;
                out.insert(MarkedPoint::PPrime(l), SingularityType::new(delta, e)?);
            }
            PointClass::Q { e, m } => {
                out.insert(MarkedPoint::QPlus(l.clone()), SingularityType::new(m, -e)?);
                out.insert(MarkedPoint::QMinus(l), SingularityType::new(m, e)?);
            }
            PointClass::Regular { .. } => {}
        }
    }
    Ok(out)
}

/// Invariant curves on the natural completion.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Curve {
    CPlus,
    CMinus,
    /// Orbit closure over a class-Q or regular point (the whole fiber).
    O(String),
    OPlus(String),
    OMinus(String),
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Curve::CPlus => f.write_str("C+"),
            Curve::CMinus => f.write_str("C-"),
            Curve::O(p) => write!(f, "O[{p}]"),
            Curve::OPlus(p) => write!(f, "O+[{p}]"),
            Curve::OMinus(p) => write!(f, "O-[{p}]"),
        }
    }
}

/// Formal rational combination of invariant curves.
pub type CurveCombination = BTreeMap<Curve, Rational>;

#[derive(Debug, Clone)]
pub struct IntersectionTable {
    pub points: Vec<SpecialPoint>,
    pub deg_plus: Rational,
    pub deg_minus: Rational,
}

pub fn intersection_numbers(p: &DpdPair) -> Result<IntersectionTable, DpdError> {
    Ok(IntersectionTable {
        points: classify_points(p)?,
        deg_plus: p.d_plus.degree(),
        deg_minus: p.d_minus.degree(),
    })
}

impl IntersectionTable {
    fn point(&self, label: &str) -> Option<&PointClass> {
        self.points.iter().find(|s| s.label == label).map(|s| &s.class)
    }

    pub fn curves(&self) -> Vec<Curve> {
        let mut out = vec![Curve::CPlus, Curve::CMinus];
        for sp in &self.points {
            match sp.class {
                PointClass::P { .. } => {
                    out.push(Curve::OPlus(sp.label.clone()));
                    out.push(Curve::OMinus(sp.label.clone()));
                }
                _ => out.push(Curve::O(sp.label.clone())),
            }
        }
        out
    }

    /// The intersection number of two invariant curves.
    pub fn pair(&self, a: &Curve, b: &Curve) -> Rational {
        use Curve::*;
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        match (a, b) {
            (CPlus, CPlus) => self.deg_plus.clone(),
            (CMinus, CMinus) => self.deg_minus.clone(),
            (CPlus, CMinus) => Rational::zero(),
            (CPlus | CMinus, O(l)) => match self.point(l) {
                Some(PointClass::Q { m, .. }) => Rational::new(1, *m),
                _ => Rational::one(),
            },
            (CPlus, OPlus(l)) => match self.point(l) {
                Some(PointClass::P { m_plus, .. }) => Rational::new(1, *m_plus),
                _ => Rational::zero(),
            },
            (CMinus, OMinus(l)) => match self.point(l) {
                Some(PointClass::P { m_minus, .. }) => Rational::new(-1, *m_minus),
                _ => Rational::zero(),
            },
            (CPlus, OMinus(_)) | (CMinus, OPlus(_)) => Rational::zero(),
            (OPlus(x), OPlus(y)) | (OMinus(x), OMinus(y)) | (OPlus(x), OMinus(y)) if x == y => {
                let Some(PointClass::P { m_plus, m_minus, delta, .. }) = self.point(x) else {
                    return Rational::zero();
                };
                match (a, b) {
                    (OPlus(_), OPlus(_)) => Rational::new(*m_minus, delta * m_plus),
                    (OMinus(_), OMinus(_)) => Rational::new(*m_plus, delta * m_minus),
                    _ => Rational::new(1, *delta),
                }
            }
            _ => Rational::zero(),
        }
    }

    pub fn pair_combination(&self, comb: &CurveCombination, c: &Curve) -> Rational {
        comb.iter().map(|(x, q)| q * &self.pair(x, c)).sum()
    }

    /// All nonzero entries `(a, b, a.b)` with `a <= b`.
    pub fn entries(&self) -> Vec<(Curve, Curve, Rational)> {
        let cs = self.curves();
        let mut out = Vec::new();
        for (i, a) in cs.iter().enumerate() {
            for b in &cs[i..] {
                let v = self.pair(a, b);
                if !v.is_zero() || (a == b) {
                    out.push((a.clone(), b.clone(), v));
                }
            }
        }
        out
    }

    /// `m+ O+ - m- O-`, numerically a fiber.
    pub fn fiber_class(&self, label: &str) -> CurveCombination {
        let mut out = CurveCombination::new();
        match self.point(label) {
            Some(PointClass::P { m_plus, m_minus, .. }) => {
                out.insert(Curve::OPlus(label.into()), Rational::from(*m_plus));
                out.insert(Curve::OMinus(label.into()), Rational::from(-*m_minus));
            }
            Some(PointClass::Q { m, .. }) => {
                out.insert(Curve::O(label.into()), Rational::from(*m));
            }
            _ => {
                out.insert(Curve::O(label.into()), Rational::one());
            }
        }
        out
    }
}

/// `div(u) = -C+ + C- - sum e_j O_j - sum (e+_i O+_i - e-_i O-_i)`.
pub fn principal_divisor_u(p: &DpdPair) -> Result<CurveCombination, DpdError> {
    let mut out = CurveCombination::new();
    out.insert(Curve::CPlus, Rational::from(-1));
    out.insert(Curve::CMinus, Rational::from(1));
    for sp in classify_points(p)? {
        let l = sp.label;
        match sp.class {
            PointClass::P { e_plus, e_minus, .. } => {
                out.insert(Curve::OPlus(l.clone()), Rational::from(-e_plus));
                out.insert(Curve::OMinus(l), Rational::from(e_minus));
            }
            PointClass::Q { e, .. } => {
                out.insert(Curve::O(l), Rational::from(-e));
            }
            PointClass::Regular { d_plus } => {
                out.insert(Curve::O(l), Rational::from(d_plus));
            }
        }
    }
    out.retain(|_, q| !q.is_zero());
    Ok(out)
}

/// The chain resolving the fractional part of a coefficient, listed outward from
/// the section it hangs off: `{q} = e/m` gives the expansion of `m/e`.
pub fn box_of(q: &Rational) -> Result<HjPair, DpdError> {
    let f = q.fract();
    if f.is_zero() {
        return Ok(HjPair::empty());
    }
    let (e, m) = as_fraction(&f)?;
    Ok(HjPair::new(m, e)?)
}

fn neg(ks: &[i64]) -> Vec<i64> {
    ks.iter().map(|k| -k).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FiberPart {
    PlusBox,
    OPlus,
    Interior,
    OMinus,
    MinusBox,
    Orbit,
    Fiber,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberComponent {
    pub part: FiberPart,
    pub weight: i64,
}

/// The fiber over a point of the resolved completion, from the `C+` side to the
/// `C-` side (sections excluded).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolvedFiber {
    pub label: String,
    pub components: Vec<FiberComponent>,
    /// Resolution chain of the interior fixed point, read from the `O+` side.
    pub interior: HjPair,
}

impl ResolvedFiber {
    pub fn zigzag(&self) -> Zigzag {
        Zigzag::linear(self.components.iter().map(|c| c.weight))
    }

    pub fn weight_of(&self, part: FiberPart) -> Option<i64> {
        self.components.iter().find(|c| c.part == part).map(|c| c.weight)
    }

    pub fn o_minus_weight(&self) -> Option<i64> {
        self.weight_of(FiberPart::OMinus)
    }
}

fn integral_weight(q: Rational, what: &str) -> Result<i64, DpdError> {
    q.to_i64()
        .ok_or_else(|| DpdError::Inconsistent(format!("{what} has non-integral weight {q}")))
}

pub fn resolve_fiber(p: &DpdPair, label: &str) -> Result<ResolvedFiber, DpdError> {
    let points = classify_points(p)?;
    let class = points.iter().find(|s| s.label == label).map(|s| s.class);
    let dp = p.d_plus.at(label);
    let dm = p.d_minus.at(label);
    let comp = |part, weight| FiberComponent { part, weight };
    let mut components = Vec::new();
    let mut interior = HjPair::empty();
    match class {
        None | Some(PointClass::Regular { .. }) => components.push(comp(FiberPart::Fiber, 0)),
        Some(PointClass::Q { m, .. }) => {
            let bp = box_of(&dp)?;
            let bm = box_of(&dm)?;
            let o = Rational::zero() - bp.dual().ratio() - bm.dual().ratio();
            if o != -1 {
                return Err(DpdError::Inconsistent(format!("orbit over {label} has weight {o} (m={m})")));
            }
            components.extend(bp.expansion().iter().map(|k| comp(FiberPart::PlusBox, -k)));
            components.push(comp(FiberPart::Orbit, -1));
            components.extend(bm.expansion().iter().rev().map(|k| comp(FiberPart::MinusBox, -k)));
        }
        Some(PointClass::P {
            e_plus,
            m_plus,
            e_minus,
            m_minus,
            delta,
        }) => {
            let bp = box_of(&dp)?;
            let bm = box_of(&dm)?;
            let sq_plus = Rational::new(m_minus, delta * m_plus);
            let sq_minus = Rational::new(m_plus, delta * m_minus);
            let base = SingularityType::new(delta, interior_residue(e_plus, m_plus, e_minus, m_minus)?)?;
            let base = HjPair { m: base.m, e: base.e };
            let mut chosen = None;
            for cand in [base, base.dual()] {
                let op = &sq_plus - &bp.dual().ratio() - cand.ratio();
                let om = &sq_minus - &bm.dual().ratio() - cand.dual().ratio();
                if op.is_integer() && om.is_integer() {
                    chosen = Some((cand, op, om));
                    break;
                }
            }
            let (cand, op, om) = chosen.ok_or_else(|| {
                DpdError::Inconsistent(format!("no orientation of the interior chain over {label}"))
            })?;
            interior = cand;
            components.extend(bp.expansion().iter().map(|k| comp(FiberPart::PlusBox, -k)));
            components.push(comp(FiberPart::OPlus, integral_weight(op, "O+")?));
            components.extend(cand.expansion().iter().map(|k| comp(FiberPart::Interior, -k)));
            components.push(comp(FiberPart::OMinus, integral_weight(om, "O-")?));
            components.extend(bm.expansion().iter().rev().map(|k| comp(FiberPart::MinusBox, -k)));
        }
    }
    let fiber = ResolvedFiber {
        label: label.to_string(),
        components,
        interior,
    };
    let w: Vec<i64> = fiber.components.iter().map(|c| c.weight).collect();
    if contraction_witness(&w, ContractionTarget::Zero).is_none() {
        return Err(DpdError::Inconsistent(format!(
            "fiber over {label} {} does not contract to [[0]]",
            fiber.zigzag()
        )));
    }
    Ok(fiber)
}

/// Number of curves in the minimal resolution of the interior singular points.
pub fn exceptional_count(p: &DpdPair) -> Result<usize, DpdError> {
    let mut n = 0;
    for sp in classify_points(p)? {
        if let PointClass::P { .. } = sp.class {
            n += resolve_fiber(p, &sp.label)?.interior.expansion().len();
        }
    }
    Ok(n)
}

fn int_degree(d: &QDivisor) -> Result<i64, DpdError> {
    Ok(d.floor().degree().numer_i64()?)
}

fn attach_box(
    g: &mut WeightedGraph,
    anchor: &str,
    prefix: &str,
    bx: HjPair,
) -> Result<(), DpdError> {
    let chain = bx
        .expansion()
        .iter()
        .enumerate()
        .map(|(i, k)| Vertex::new(format!("{prefix}.{i}"), -k, VertexKind::Exceptional))
        .collect();
    g.add_chain(Some(anchor), chain)?;
    Ok(())
}

/// Boundary of the minimal resolution of the natural completion: sections `C+`,
/// `C-` of weights `deg floor(D+-)`, one 0-fiber per point at infinity, and the
/// boxes of the fractional parts hanging off the sections.
pub fn resolved_boundary(p: &DpdPair) -> Result<WeightedGraph, DpdError> {
    p.validate()?;
    let mut g = WeightedGraph::new();
    let genus = p.base.genus;
    let mut section = |id: &str, w: i64| -> Result<(), DpdError> {
        let mut v = Vertex::new(id, w, VertexKind::Section);
        v.genus = genus;
        g.add_vertex(v)?;
        Ok(())
    };
    section("C+", int_degree(&p.d_plus)?)?;
    section("C-", int_degree(&p.d_minus)?)?;
    for i in 1..=p.base.points_at_infinity {
        let id = format!("F{i}");
        g.add_vertex(Vertex::new(id.clone(), 0, VertexKind::Fiber))?;
        g.add_edge("C+", &id)?;
        g.add_edge("C-", &id)?;
    }
    for (a, q) in p.d_plus.iter() {
        attach_box(&mut g, "C+", &format!("B+[{a}]"), box_of(q)?)?;
    }
    for (a, q) in p.d_minus.iter() {
        attach_box(&mut g, "C-", &format!("B-[{a}]"), box_of(q)?)?;
    }
    Ok(g)
}

/// The resolved boundary written as a zigzag, when it is one: a chain
/// `box(D-)* - C- - F - C+ - box(D+)` over the affine line with at most one
/// fractional point on each side, or the cycle `((0, deg D+, 0, deg D-))` for
/// integral divisors on a base with two points at infinity.
pub fn resolved_boundary_zigzag(p: &DpdPair) -> Result<Option<Zigzag>, DpdError> {
    p.validate()?;
    if p.base.genus != 0 {
        return Ok(None);
    }
    let (cp, cm) = (int_degree(&p.d_plus)?, int_degree(&p.d_minus)?);
    let fp = p.d_plus.fractional_support();
    let fm = p.d_minus.fractional_support();
    match p.base.points_at_infinity {
        1 if fp.len() <= 1 && fm.len() <= 1 => {
            let bp = fp.first().map(|a| box_of(&p.d_plus.at(a))).transpose()?;
            let bm = fm.first().map(|a| box_of(&p.d_minus.at(a))).transpose()?;
            let mut w: Vec<i64> = bm.map(|b| neg(&b.expansion())).unwrap_or_default();
            w.reverse();
            w.extend([cm, 0, cp]);
            w.extend(bp.map(|b| neg(&b.expansion())).unwrap_or_default());
            Ok(Some(Zigzag::linear(w)))
        }
        2 if fp.is_empty() && fm.is_empty() => Ok(Some(Zigzag::circular([0, cp, 0, cm]))),
        _ => Ok(None),
    }
}

/// Parabolic case: one section `C_inf` of weight `deg floor(D)` with the boxes of
/// `{D}` and one 0-fiber per point at infinity.
pub fn parabolic_boundary(d: &QDivisor, base: &BaseCurve) -> Result<WeightedGraph, DpdError> {
    if base.points_at_infinity == 0 {
        return Err(DpdError::UnsupportedBase("parabolic case needs an affine base".into()));
    }
    let mut g = WeightedGraph::new();
    let mut c = Vertex::new("Cinf", int_degree(d)?, VertexKind::Section);
    c.genus = base.genus;
    g.add_vertex(c)?;
    for i in 1..=base.points_at_infinity {
        let id = format!("F{i}");
        g.add_vertex(Vertex::new(id.clone(), 0, VertexKind::Fiber))?;
        g.add_edge("Cinf", &id)?;
    }
    for (a, q) in d.iter() {
        attach_box(&mut g, "Cinf", &format!("B[{a}]"), box_of(q)?)?;
    }
    Ok(g)
}

/// Elliptic case over a complete curve: a star around `C_inf` of weight `deg floor(D)`.
pub fn elliptic_boundary(d: &QDivisor, genus: u32) -> Result<WeightedGraph, DpdError> {
    let deg = d.degree();
    if !deg.is_positive() {
        return Err(DpdError::NotAmple(deg.to_string()));
    }
    let mut g = WeightedGraph::new();
    let mut c = Vertex::new("Cinf", int_degree(d)?, VertexKind::Section);
    c.genus = genus;
    g.add_vertex(c)?;
    for (a, q) in d.iter() {
        attach_box(&mut g, "Cinf", &format!("B[{a}]"), box_of(q)?)?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dg(k: i64, r: i64) -> DpdPair {
        DpdPair::new(
            QDivisor::from_terms(&[("p0", -1, r)]),
            QDivisor::from_terms(&[("p1", -1, k + 1 - r)]),
        )
    }

    #[test]
    fn json_schema() {
        let p = DpdPair::from_json(
            r#"{"base": {"genus": 0, "points_at_infinity": 1}, "d_plus": {"p0": "-1/2"}, "d_minus": {"p1": "-1/2"}}"#,
        )
        .unwrap();
        assert_eq!(p, dg(3, 2));
        let q = DpdPair::from_json(r#"{"d_plus":{},"d_minus":{}}"#).unwrap();
        assert_eq!(q.base, BaseCurve::affine_line());
        assert!(matches!(
            DpdPair::from_json(r#"{"d_plus":{"a":"1"},"d_minus":{}}"#),
            Err(DpdError::ConstraintViolated(_))
        ));
        assert!(matches!(DpdPair::from_json("{"), Err(DpdError::Parse(_))));
    }

    #[test]
    fn normalization() {
        let p = DpdPair::new(QDivisor::from_terms(&[("p", -2, 3)]), QDivisor::new());
        let n = normalize_pair(&p).unwrap();
        assert_eq!(n.d_plus, QDivisor::from_terms(&[("p", 1, 3)]));
        assert_eq!(n.d_minus, QDivisor::from_terms(&[("p", -1, 1)]));
        assert!(n.is_equivalent(&p));
        let z = DpdPair::new(QDivisor::new(), QDivisor::new());
        assert_eq!(normalize_pair(&z).unwrap(), z);
        let n = normalize_pair(&dg(5, 2)).unwrap();
        assert_eq!(n.d_plus, QDivisor::from_terms(&[("p0", 1, 2)]));
        assert_eq!(n.d_minus, QDivisor::from_terms(&[("p0", -1, 1), ("p1", -1, 4)]));
        let e = p.clone().with_base(BaseCurve { genus: 1, points_at_infinity: 1 });
        assert!(matches!(normalize_pair(&e), Err(DpdError::UnsupportedBase(_))));
    }

    #[test]
    fn point_classes() {
        let pts = classify_points(&dg(3, 2)).unwrap();
        assert_eq!(
            pts[0].class,
            PointClass::P { e_plus: 1, m_plus: 2, e_minus: 0, m_minus: -1, delta: 1 }
        );
        let q = DpdPair::new(
            QDivisor::from_terms(&[("q", -1, 3)]),
            QDivisor::from_terms(&[("q", 1, 3)]),
        );
        assert_eq!(classify_points(&q).unwrap()[0].class, PointClass::Q { e: 1, m: 3 });
        assert!(classify_points(&DpdPair::new(QDivisor::new(), QDivisor::new()))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn singularities() {
        for k in 1..6 {
            for r in 1..=k {
                let t = singularity_types(&dg(k, r)).unwrap();
                assert_eq!(t[&MarkedPoint::PPlus("p0".into())], SingularityType::new(r, r - 1).unwrap());
                assert_eq!(
                    t[&MarkedPoint::PMinus("p1".into())],
                    SingularityType::new(k + 1 - r, k - r).unwrap()
                );
            }
        }
        let n = 4;
        let p = DpdPair::new(QDivisor::from_terms(&[("a", -1, 1)]), QDivisor::from_terms(&[("a", 1 - n, 1)]));
        let t = singularity_types(&p).unwrap();
        assert!(t[&MarkedPoint::PPlus("a".into())].is_smooth());
        assert_eq!(t[&MarkedPoint::PPrime("a".into())], SingularityType::new(n, n - 1).unwrap());
    }

    #[test]
    fn intersections_and_principality() {
        let t = intersection_numbers(&dg(4, 3)).unwrap();
        let (op, om) = (Curve::OPlus("p0".into()), Curve::OMinus("p0".into()));
        assert_eq!(t.pair(&op, &om), 1);
        assert_eq!(t.pair(&op, &op), Rational::new(-1, 3));
        assert_eq!(t.pair(&om, &om), -3);
        let u = principal_divisor_u(&dg(4, 3)).unwrap();
        for c in t.curves() {
            assert!(t.pair_combination(&u, &c).is_zero(), "{c}");
        }
        let z = DpdPair::new(QDivisor::new(), QDivisor::new());
        let u = principal_divisor_u(&z).unwrap();
        assert_eq!(u.len(), 2);
        assert_eq!(intersection_numbers(&z).unwrap().entries().len(), 2);
    }

    #[test]
    fn fibers() {
        let n = 3;
        let p = DpdPair::new(QDivisor::from_terms(&[("a", -1, 1)]), QDivisor::from_terms(&[("a", 1 - n, 1)]));
        assert_eq!(resolve_fiber(&p, "a").unwrap().zigzag().to_string(), "[[-1,-2,-2,-1]]");
        let f = resolve_fiber(&dg(5, 3), "p0").unwrap();
        assert_eq!(f.zigzag().to_string(), "[[-2,-2,-1,-3]]");
        assert_eq!(resolve_fiber(&dg(5, 3), "x").unwrap().zigzag().to_string(), "[[0]]");
    }

    #[test]
    fn boundaries() {
        let z = DpdPair::new(QDivisor::new(), QDivisor::new());
        assert_eq!(resolved_boundary_zigzag(&z).unwrap().unwrap().to_string(), "[[0,0,0]]");
        let b = resolved_boundary_zigzag(&dg(4, 2)).unwrap().unwrap();
        assert_eq!(b.to_string(), "[[-2,-2,-1,0,-1,-2]]");
        let g = resolved_boundary(&dg(4, 2)).unwrap();
        assert_eq!(g.shape(), crate::graph::Shape::Linear);
        assert_eq!(g.len(), 6);
        let t = DpdPair::new(QDivisor::from_terms(&[("0", -2, 5)]), QDivisor::new());
        assert_eq!(resolved_boundary_zigzag(&t).unwrap().unwrap().to_string(), "[[0,0,-1,-2,-3]]");
    }

    #[test]
    fn parabolic_and_elliptic() {
        let g = parabolic_boundary(&QDivisor::new(), &BaseCurve::affine_line()).unwrap();
        assert_eq!(Zigzag::from_graph(&g).unwrap().to_string(), "[[0,0]]");
        let d = QDivisor::from_terms(&[("a", -2, 3)]);
        let g = parabolic_boundary(&d, &BaseCurve::affine_line()).unwrap();
        assert_eq!(Zigzag::from_graph(&g).unwrap().to_string(), "[[0,-1,-3]]");
        let two = BaseCurve { genus: 0, points_at_infinity: 2 };
        assert_eq!(parabolic_boundary(&QDivisor::from_terms(&[("a", 2, 1)]), &two).unwrap().len(), 3);
        let g = elliptic_boundary(&QDivisor::from_terms(&[("p", 1, 1)]), 0).unwrap();
        assert_eq!(g.len(), 1);
        let g = elliptic_boundary(&QDivisor::from_terms(&[("p", 2, 5)]), 0).unwrap();
        assert_eq!(Zigzag::from_graph(&g).unwrap().to_string(), "[[0,-3,-2]]");
        assert!(matches!(
            elliptic_boundary(&QDivisor::from_terms(&[("p", -1, 2)]), 0),
            Err(DpdError::NotAmple(_))
        ));
    }
}
