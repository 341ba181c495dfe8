//! Classification predicates on DPD pairs and standard zigzags: Gizatullin and
//! toric pairs, smooth boundary zigzags, extended graphs with feathers, Picard
//! rank and the C*-actions on Danilov-Gizatullin surfaces.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{cf_eval_int, HjPair, Rational};
use crate::contract::{contraction_witness, ContractionTarget};
use crate::dpd::{
    box_of, classify_points, exceptional_count, normalize_pair, resolve_fiber,
    resolved_boundary_zigzag, DpdError, DpdPair, PointClass, QDivisor,
};
use crate::graph::{GraphError, Vertex, VertexKind, WeightedGraph};
use crate::standard::standardize;
use crate::zigzag::{is_standard_linear, Zigzag};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("not a standard zigzag: {0}")]
    NotStandard(String),
    #[error("not a Gizatullin pair: {0}")]
    NotGizatullin(String),
    #[error("unsupported base curve: {0}")]
    UnsupportedBase(String),
    #[error("component counts give negative Picard rank {0}")]
    NegativeRank(i64),
    #[error(transparent)]
    Dpd(#[from] DpdError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl From<crate::arith::ArithError> for ClassifyError {
    fn from(e: crate::arith::ArithError) -> ClassifyError {
        ClassifyError::Dpd(e.into())
    }
}

/// Base `A^1` and each fractional part `{D+-}` supported in at most one point.
pub fn is_gizatullin(p: &DpdPair) -> bool {
    p.base.is_affine_line()
        && p.d_plus.fractional_support().len() <= 1
        && p.d_minus.fractional_support().len() <= 1
}

/// Equivalent to a pair concentrated at a single point.
pub fn is_toric_pair(p: &DpdPair) -> Result<bool, ClassifyError> {
    if !p.base.is_affine_line() {
        return Err(ClassifyError::UnsupportedBase(
            "toricity is decided over the affine line".into(),
        ));
    }
    Ok(normalize_pair(p)?.points().len() <= 1)
}

/// The pair `(-(m-e)/m [0], 0)` with `m/e = [1-w2, -w3, ..., -wn]`, whose resolved
/// boundary standardizes to `[[0,0,w2,...,wn]]`. The empty tail gives `A^2` and
/// `[0]` gives `A^1 x C*`.
pub fn standard_zigzag_of_toric(tail: &[i64]) -> Result<DpdPair, ClassifyError> {
    let pair = |d_plus: QDivisor| DpdPair::new(d_plus, QDivisor::new());
    match tail {
        [] => return Ok(pair(QDivisor::from_terms(&[("0", -1, 1)]))),
        [0] => return Ok(pair(QDivisor::new())),
        _ => {}
    }
    if let Some(w) = tail.iter().find(|w| **w > -2) {
        return Err(ClassifyError::NotStandard(format!("tail weight {w} > -2")));
    }
    let mut ks: Vec<i64> = tail.iter().map(|w| -w).collect();
    ks[0] += 1;
    let h = HjPair::from_chain(&ks)?;
    Ok(pair(QDivisor::from_terms(&[("0", -(h.m - h.e), h.m)])))
}

fn require_standard(z: &Zigzag) -> Result<Vec<i64>, ClassifyError> {
    let w = z.int_weights().map_err(|_| ClassifyError::NotStandard(z.to_string()))?;
    if z.circular || !is_standard_linear(&w) {
        return Err(ClassifyError::NotStandard(z.to_string()));
    }
    Ok(w)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SmoothForm {
    /// `[[0,0]]` or `[[0,0,0]]`.
    Trivial,
    /// General boxes around `-2-k` with the arithmetic condition.
    #[serde(rename = "i")]
    I,
    /// `A`-boxes around `-2-k`.
    #[serde(rename = "ii")]
    II,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoxEquation {
    /// `e1/m1 + e2/m2 = 1`: irreducible fiber.
    SumOne,
    /// `e1/m1 + e2/m2 = 1 - 1/(m1 m2)`: smooth interior fixed point.
    SumOneMinus,
}

/// A split `[[0,0, L, -2-k, R]]` at position `s`; `left` is `L` read from the
/// `-2-k` vertex outward.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub form: SmoothForm,
    pub reversed: bool,
    pub s: usize,
    pub k: i64,
    pub left: HjPair,
    pub right: HjPair,
    pub equation: Option<BoxEquation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmoothVerdict {
    pub verdict: bool,
    pub form: Option<SmoothForm>,
    pub matches: Vec<Decomposition>,
    pub reason: Option<String>,
}

fn box_equation(l: HjPair, r: HjPair) -> Option<BoxEquation> {
    let sum = l.ratio() + r.ratio();
    if sum == 1 {
        Some(BoxEquation::SumOne)
    } else if sum == Rational::one() - Rational::new(1, l.m * r.m) {
        Some(BoxEquation::SumOneMinus)
    } else {
        None
    }
}

fn decompositions(w: &[i64], reversed: bool) -> Result<Vec<Decomposition>, ClassifyError> {
    let mut out = Vec::new();
    let n = w.len();
    for s in 2..n {
        let k = -2 - w[s];
        if k < 0 {
            continue;
        }
        let left_ks: Vec<i64> = w[2..s].iter().rev().map(|x| -x).collect();
        let right_ks: Vec<i64> = w[s + 1..].iter().map(|x| -x).collect();
        let left = HjPair::from_chain(&left_ks)?;
        let right = HjPair::from_chain(&right_ks)?;
        let a_boxes = left_ks.iter().chain(&right_ks).all(|k| *k == 2);
        let equation = box_equation(left, right);
        let form = if a_boxes {
            SmoothForm::II
        } else if equation.is_some() {
            SmoothForm::I
        } else {
            continue;
        };
        out.push(Decomposition { form, reversed, s, k, left, right, equation });
    }
    Ok(out)
}

/// Decide whether a standard zigzag bounds a smooth affine hyperbolic C*-surface
/// by searching all splits `[[0,0, box, -2-k, box]]`, in both orientations.
pub fn smooth_hyperbolic_zigzag_test(z: &Zigzag) -> Result<SmoothVerdict, ClassifyError> {
    let w = require_standard(z)?;
    if w == [0, 0] || w == [0, 0, 0] {
        return Ok(SmoothVerdict {
            verdict: true,
            form: Some(SmoothForm::Trivial),
            matches: Vec::new(),
            reason: None,
        });
    }
    if w.len() < 3 || w[2] > -2 {
        return Ok(SmoothVerdict {
            verdict: false,
            form: None,
            matches: Vec::new(),
            reason: Some(format!("{z} is not of the form [[0,0,w2,...]] with w2 <= -2")),
        });
    }
    let mut matches = decompositions(&w, false)?;
    let mut rev = w[..2].to_vec();
    rev.extend(w[2..].iter().rev());
    matches.extend(decompositions(&rev, true)?);
    let form = matches
        .iter()
        .map(|d| d.form)
        .min_by_key(|f| if *f == SmoothForm::II { 0 } else { 1 });
    Ok(SmoothVerdict {
        verdict: !matches.is_empty(),
        form,
        reason: matches
            .is_empty()
            .then(|| "no split into boxes satisfies the box equations".to_string()),
        matches,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContractibilityVerdict {
    pub verdict: bool,
    /// `"i'"` or `"ii'"` for the condition that holds.
    pub condition: Option<String>,
    /// Position `i` replaced by `-1`, and the blowdown sequence.
    pub position: Option<usize>,
    pub target: Option<ContractionTarget>,
    pub blowdowns: Vec<usize>,
}

/// The same question through contractibility: some `[[w2,...,-1,...,wn]]` contracts
/// to `[[0]]` or `[[-1]]`, or at most one weight differs from -2.
pub fn smooth_zigzag_contractibility_test(
    z: &Zigzag,
) -> Result<ContractibilityVerdict, ClassifyError> {
    let w = require_standard(z)?;
    let fail = ContractibilityVerdict {
        verdict: false,
        condition: None,
        position: None,
        target: None,
        blowdowns: Vec::new(),
    };
    if w == [0, 0] {
        return Ok(ContractibilityVerdict { verdict: true, condition: Some("ii'".into()), ..fail });
    }
    if w.len() < 3 {
        return Ok(fail);
    }
    let tail = &w[2..];
    for i in 0..tail.len() {
        let mut c = tail.to_vec();
        c[i] = -1;
        for target in [ContractionTarget::Zero, ContractionTarget::MinusOne] {
            if let Some(seq) = contraction_witness(&c, target) {
                return Ok(ContractibilityVerdict {
                    verdict: true,
                    condition: Some("i'".into()),
                    position: Some(i + 2),
                    target: Some(target),
                    blowdowns: seq,
                });
            }
        }
    }
    if tail.iter().all(|x| *x <= -2) && tail.iter().filter(|x| **x != -2).count() <= 1 {
        return Ok(ContractibilityVerdict { verdict: true, condition: Some("ii'".into()), ..fail });
    }
    Ok(fail)
}

/// A chain `bridge - tail` hanging off one vertex; `tail` is read from the bridge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Feather {
    pub bridge_weight: i64,
    pub tail: HjPair,
    /// The point of the base whose orbit closure is the bridge.
    pub source: Option<String>,
}

impl Feather {
    pub fn new(bridge_weight: i64, tail: HjPair) -> Feather {
        Feather { bridge_weight, tail, source: None }
    }

    pub fn weights(&self) -> Vec<i64> {
        let mut w = vec![self.bridge_weight];
        w.extend(self.tail.expansion().iter().map(|k| -k));
        w
    }

    pub fn len(&self) -> usize {
        1 + self.tail.expansion().len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `[[-1,(-2)_k]]`.
    pub fn is_a_type(&self) -> bool {
        self.bridge_weight == -1 && (self.tail.is_empty() || self.tail.e == self.tail.m - 1)
    }
}

/// Standard zigzag `C0..Cn` with feathers: `feathers` hang off zigzag vertices,
/// `tail_feather` off the last one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtendedGraph {
    pub zigzag: Zigzag,
    /// Index of the parabolic vertex carrying the feather collection.
    pub parabolic_index: Option<usize>,
    pub feathers: BTreeMap<usize, Vec<Feather>>,
    pub tail_feather: Option<Feather>,
}

impl ExtendedGraph {
    pub fn component_count(&self) -> usize {
        self.zigzag.len()
            + self.feathers.values().flatten().map(Feather::len).sum::<usize>()
            + self.tail_feather.as_ref().map_or(0, Feather::len)
    }

    pub fn feather_count(&self) -> usize {
        self.feathers.values().map(Vec::len).sum::<usize>() + usize::from(self.tail_feather.is_some())
    }

    pub fn all_feathers(&self) -> Vec<&Feather> {
        self.feathers.values().flatten().chain(&self.tail_feather).collect()
    }

    pub fn to_graph(&self) -> Result<WeightedGraph, ClassifyError> {
        let w = self.zigzag.int_weights()?;
        let mut g = WeightedGraph::new();
        let ids: Vec<String> = (0..w.len()).map(|i| format!("C{i}")).collect();
        let chain = w
            .iter()
            .zip(&ids)
            .map(|(x, id)| Vertex::new(id.clone(), *x, VertexKind::Boundary))
            .collect();
        g.add_chain(None, chain)?;
        let attach = |g: &mut WeightedGraph, at: &str, name: String, f: &Feather| {
            let mut chain = vec![Vertex::new(format!("{name}.b"), f.bridge_weight, VertexKind::FeatherBridge)];
            for (i, x) in f.weights()[1..].iter().enumerate() {
                chain.push(Vertex::new(format!("{name}.t{i}"), *x, VertexKind::FeatherTail));
            }
            g.add_chain(Some(at), chain).map(|_| ())
        };
        for (idx, fs) in &self.feathers {
            for (j, f) in fs.iter().enumerate() {
                attach(&mut g, &ids[*idx], format!("F{idx}.{j}"), f)?;
            }
        }
        if let (Some(f), Some(last)) = (&self.tail_feather, ids.last()) {
            attach(&mut g, last, "F0".into(), f)?;
        }
        Ok(g)
    }

    pub fn is_linear(&self) -> Result<bool, ClassifyError> {
        Ok(self.to_graph()?.shape() == crate::graph::Shape::Linear)
    }

    /// A blowdown sequence (vertex ids) reducing the graph to `[[0,0,0]]`,
    /// keeping `C0` and `C1`.
    pub fn blowdown_to_standard(&self) -> Result<Option<Vec<String>>, ClassifyError> {
        let g = self.to_graph()?;
        let n = g.len();
        let ids: Vec<String> = g.vertices().iter().map(|v| v.id.clone()).collect();
        let mut w = Vec::with_capacity(n);
        for v in g.vertices() {
            w.push(v.weight.to_i64().ok_or_else(|| GraphError::NonIntegral(v.id.clone()))?);
        }
        let mut adj = vec![BTreeSet::new(); n];
        for (a, b) in g.edges() {
            let (i, j) = (g.index(a).unwrap(), g.index(b).unwrap());
            adj[i].insert(j);
            adj[j].insert(i);
        }
        let mut state = TreeState { w, adj, alive: vec![true; n] };
        let mut path = Vec::new();
        let mut dead = HashSet::new();
        if blow_down_search(&mut state, &mut path, &mut dead) {
            Ok(Some(path.into_iter().map(|i| ids[i].clone()).collect()))
        } else {
            Ok(None)
        }
    }
}

#[derive(Clone)]
struct TreeState {
    w: Vec<i64>,
    adj: Vec<BTreeSet<usize>>,
    alive: Vec<bool>,
}

impl TreeState {
    fn key(&self) -> Vec<(usize, i64)> {
        (0..self.w.len()).filter(|i| self.alive[*i]).map(|i| (i, self.w[i])).collect()
    }

    fn is_target(&self) -> bool {
        let live: Vec<usize> = (0..self.w.len()).filter(|i| self.alive[*i]).collect();
        live.len() == 3
            && live.iter().all(|i| self.w[*i] == 0)
            && self.adj[0].len() == 1
            && live.iter().map(|i| self.adj[*i].len()).sum::<usize>() == 4
    }

    fn blow_down(&mut self, v: usize) {
        let nb: Vec<usize> = self.adj[v].iter().copied().collect();
        for &u in &nb {
            self.w[u] += 1;
            self.adj[u].remove(&v);
        }
        if let [a, b] = nb[..] {
            self.adj[a].insert(b);
            self.adj[b].insert(a);
        }
        self.adj[v].clear();
        self.alive[v] = false;
    }
}

fn blow_down_search(
    s: &mut TreeState,
    path: &mut Vec<usize>,
    dead: &mut HashSet<Vec<(usize, i64)>>,
) -> bool {
    if s.is_target() {
        return true;
    }
    let key = s.key();
    if dead.contains(&key) {
        return false;
    }
    for v in 2..s.w.len() {
        if !s.alive[v] || s.w[v] != -1 || s.adj[v].len() > 2 {
            continue;
        }
        let saved = s.clone();
        s.blow_down(v);
        path.push(v);
        if blow_down_search(s, path, dead) {
            return true;
        }
        path.pop();
        *s = saved;
    }
    dead.insert(key);
    false
}

fn int_degree(d: &QDivisor) -> Result<i64, ClassifyError> {
    Ok(d.floor().degree().numer_i64()?)
}

/// The extended graph of the standard equivariant completion of a Gizatullin pair.
pub fn extended_graph(p: &DpdPair) -> Result<ExtendedGraph, ClassifyError> {
    if !is_gizatullin(p) {
        return Err(ClassifyError::NotGizatullin(
            "needs base A^1 and fractional parts supported in at most one point".into(),
        ));
    }
    let n = normalize_pair(p)?;
    let c = int_degree(&n.d_plus)? + int_degree(&n.d_minus)?;
    if c >= -1 {
        return toric_extended_graph(&n);
    }
    let p_plus = n.d_plus.fractional_support().first().map(|s| s.to_string());
    let p_minus = n.d_minus.fractional_support().first().map(|s| s.to_string());
    let b_plus = match &p_plus {
        Some(a) => box_of(&n.d_plus.at(a))?,
        None => HjPair::empty(),
    };
    let b_minus = match &p_minus {
        Some(a) => box_of(&n.d_minus.at(a))?,
        None => HjPair::empty(),
    };
    let mut w = vec![0, 0];
    w.extend(b_plus.expansion().iter().rev().map(|k| -k));
    let s = w.len();
    w.push(c);
    w.extend(b_minus.expansion().iter().map(|k| -k));
    let tail_owner = p_minus.clone().or(p_plus);
    let mut feathers: BTreeMap<usize, Vec<Feather>> = BTreeMap::new();
    let mut tail_feather = None;
    for sp in classify_points(&n)? {
        if !matches!(sp.class, PointClass::P { .. }) {
            continue;
        }
        let fiber = resolve_fiber(&n, &sp.label)?;
        let bridge = fiber.o_minus_weight().ok_or_else(|| {
            DpdError::Inconsistent(format!("fiber over {} has no O- component", sp.label))
        })?;
        let f = Feather {
            bridge_weight: bridge,
            tail: fiber.interior.dual(),
            source: Some(sp.label.clone()),
        };
        if tail_owner.as_deref() == Some(sp.label.as_str()) {
            tail_feather = Some(f);
        } else {
            feathers.entry(s).or_default().push(f);
        }
    }
    Ok(ExtendedGraph {
        zigzag: Zigzag::linear(w),
        parabolic_index: Some(s),
        feathers,
        tail_feather,
    })
}

fn toric_extended_graph(n: &DpdPair) -> Result<ExtendedGraph, ClassifyError> {
    let boundary = resolved_boundary_zigzag(n)?
        .ok_or_else(|| ClassifyError::NotGizatullin("boundary is not a zigzag".into()))?;
    let (zigzag, _) = standardize(&boundary)?;
    let w = zigzag.int_weights()?;
    let tail_feather = match &w[..] {
        [0, 0, 0] => None,
        [0, 0] => Some(Feather::new(0, HjPair::empty())),
        [0, 0, rest @ ..] if rest.iter().all(|x| *x <= -2) => {
            // [C2..Cn, -1, R] contracts to [[0]] when both sides, read away
            // from the bridge, have residues summing to m.
            let ks: Vec<i64> = rest.iter().rev().map(|x| -x).collect();
            let q = cf_eval_int(&ks)?;
            let (m, x) = (q.numer_i64()?, q.denom_i64()?);
            Some(Feather::new(-1, HjPair::new(m, m - x)?))
        }
        _ => {
            return Err(GraphError::Internal(format!("unexpected toric standard form {zigzag}")).into())
        }
    };
    Ok(ExtendedGraph {
        zigzag,
        parabolic_index: None,
        feathers: BTreeMap::new(),
        tail_feather,
    })
}

/// Extended graphs for both orientations of the action (`(D+, D-)` and `(D-, D+)`).
pub fn extended_graphs_both(p: &DpdPair) -> Result<(ExtendedGraph, ExtendedGraph), ClassifyError> {
    Ok((extended_graph(p)?, extended_graph(&p.swapped())?))
}

/// `rho(V) = k(D_ext) - k(D_st) - k(E) - 1`.
pub fn picard_rank(ext: &ExtendedGraph, exceptional: usize) -> Result<u32, ClassifyError> {
    let r = ext.component_count() as i64 - ext.zigzag.len() as i64 - exceptional as i64 - 1;
    u32::try_from(r).map_err(|_| ClassifyError::NegativeRank(r))
}

pub fn picard_rank_of_pair(p: &DpdPair) -> Result<u32, ClassifyError> {
    picard_rank(&extended_graph(p)?, exceptional_count(p)?)
}

/// Which coefficient to use in `div(v-)` on a Danilov-Gizatullin surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RulingReading {
    /// `div(v-) = (k+r-1)[O0+] + [O1+]`, as usually stated.
    #[default]
    Verbatim,
    /// `div(v-) = (k+1-r)[O0+] + [O1+]`, mirroring `div(v+)`.
    Symmetric,
}

/// Multiplicities of the orbit closures in the zero fibers of the two
/// equivariant affine rulings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RulingMultiplicities {
    /// Coefficients of `[O0-]`, `[O1-]` in `div(v+)`.
    pub v_plus: [u64; 2],
    /// Coefficients of `[O0+]`, `[O1+]` in `div(v-)`.
    pub v_minus: [u64; 2],
}

pub fn ruling_multiplicities(k: u64, r: u64, reading: RulingReading) -> RulingMultiplicities {
    let c = match reading {
        RulingReading::Verbatim => k + r - 1,
        RulingReading::Symmetric => k + 1 - r,
    };
    RulingMultiplicities { v_plus: [1, r], v_minus: [c, 1] }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DgAction {
    pub k: u64,
    pub r: u64,
    pub pair: DpdPair,
    pub rulings: RulingMultiplicities,
}

/// The `k` pairwise non-conjugate hyperbolic C*-actions on the Danilov-Gizatullin
/// surface `V_{k+1}`: `D+ = -1/r [p0]`, `D- = -1/(k+1-r) [p1]`.
pub fn dg_actions(k: u64, reading: RulingReading) -> Vec<DgAction> {
    (1..=k)
        .map(|r| {
            let pair = DpdPair::new(
                QDivisor::from_terms(&[("p0", -1, r as i64)]),
                QDivisor::from_terms(&[("p1", -1, (k + 1 - r) as i64)]),
            );
            DgAction { k, r, pair, rulings: ruling_multiplicities(k, r, reading) }
        })
        .collect()
}

/// Equivalence up to relabeling the points of the base.
pub fn equivalent_up_to_relabeling(a: &DpdPair, b: &DpdPair) -> bool {
    a.base == b.base && a.class_signature() == b.class_signature()
}
