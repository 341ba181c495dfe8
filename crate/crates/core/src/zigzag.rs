//! Linear and circular zigzags: `[[w1,...,wn]]` and `((w1,...,wn))`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::graph::{GraphError, Vertex, VertexKind, WeightedGraph};
use crate::linalg;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Zigzag {
    pub weights: Vec<Rational>,
    pub circular: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// One primitive move on a zigzag, addressed by position in the current weight list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Step {
    /// Blow up the edge between `edge` and its successor (cyclically for circular zigzags).
    BlowUpEdge { edge: usize },
    /// Blow up a general point of an end vertex, attaching the new curve on `side`.
    BlowUpOuter { vertex: usize, side: Side },
    BlowDown { vertex: usize },
    /// Relabel a circular zigzag: rotate left by `offset`, then optionally reverse.
    Rotate { offset: usize, reflect: bool },
}

pub type TransformationLog = Vec<Step>;

impl Zigzag {
    pub fn linear<I: IntoIterator<Item = i64>>(ws: I) -> Zigzag {
        Zigzag {
            weights: ws.into_iter().map(Rational::from).collect(),
            circular: false,
        }
    }

    pub fn circular<I: IntoIterator<Item = i64>>(ws: I) -> Zigzag {
        Zigzag {
            weights: ws.into_iter().map(Rational::from).collect(),
            circular: true,
        }
    }

    pub fn from_ints(ws: &[i64], circular: bool) -> Zigzag {
        Zigzag {
            weights: ws.iter().map(|&w| Rational::from(w)).collect(),
            circular,
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn int_weights(&self) -> Result<Vec<i64>, GraphError> {
        self.weights
            .iter()
            .map(|w| w.to_i64().ok_or_else(|| GraphError::NonIntegral(self.to_string())))
            .collect()
    }

    /// Symmetric intersection matrix. A one-vertex cycle carries its node as `+2`
    /// on the diagonal and a two-vertex cycle has a double edge.
    pub fn intersection_matrix(&self) -> Vec<Vec<Rational>> {
        let n = self.len();
        let mut m = vec![vec![Rational::zero(); n]; n];
        for (i, w) in self.weights.iter().enumerate() {
            m[i][i] = w.clone();
        }
        let mut link = |i: usize, j: usize| {
            if i == j {
                m[i][i] = m[i][i].clone() + 2;
            } else {
                m[i][j] = m[i][j].clone() + 1;
                m[j][i] = m[j][i].clone() + 1;
            }
        };
        for i in 0..n.saturating_sub(1) {
            link(i, i + 1);
        }
        if self.circular && n >= 1 {
            link(n - 1, 0);
        }
        m
    }

    pub fn positive_eigenvalues(&self) -> usize {
        linalg::inertia(&self.intersection_matrix()).positive
    }

    pub fn determinant(&self) -> Rational {
        linalg::determinant(&self.intersection_matrix())
    }

    /// Apply one step, returning the new zigzag.
    pub fn apply(&self, step: &Step) -> Result<Zigzag, GraphError> {
        let mut w = self.int_weights()?;
        apply_step(&mut w, self.circular, step)?;
        Ok(Zigzag::from_ints(&w, self.circular))
    }

    pub fn replay(&self, log: &[Step]) -> Result<Zigzag, GraphError> {
        let mut w = self.int_weights()?;
        for s in log {
            apply_step(&mut w, self.circular, s)?;
        }
        Ok(Zigzag::from_ints(&w, self.circular))
    }

    /// Reversal: for standard linear zigzags the `0,0` prefix stays in front; circular
    /// zigzags are reflected and then rotated into standard position when possible.
    pub fn reverse(&self) -> Zigzag {
        let mut w = self.weights.clone();
        if !self.circular {
            if is_standard_linear_r(&w) && w.len() >= 2 && w[0].is_zero() && w[1].is_zero() {
                w[2..].reverse();
            } else {
                w.reverse();
            }
            return Zigzag { weights: w, circular: false };
        }
        w.reverse();
        if let Ok(ints) = (Zigzag { weights: w.clone(), circular: true }).int_weights() {
            let n = ints.len();
            let best = (0..n)
                .map(|off| rotate(&ints, off))
                .filter(|r| is_standard_circular_list(r))
                .max();
            if let Some(r) = best {
                return Zigzag::from_ints(&r, true);
            }
        }
        Zigzag { weights: w, circular: true }
    }

    pub fn is_standard(&self) -> bool {
        match self.int_weights() {
            Ok(w) if self.circular => {
                (0..w.len()).any(|o| is_standard_circular_list(&rotate(&w, o)))
            }
            Ok(w) => is_standard_linear(&w),
            Err(_) => false,
        }
    }

    pub fn is_semistandard(&self) -> bool {
        match self.int_weights() {
            Ok(w) if !self.circular => is_semistandard_linear(&w),
            _ => false,
        }
    }

    /// The zigzag as a path or cycle graph with vertices `c0, c1, ...`.
    pub fn to_graph(&self, kind: VertexKind) -> Result<WeightedGraph, GraphError> {
        if self.circular && self.len() < 3 {
            return Err(GraphError::InvalidEdge(format!(
                "{self} needs a multigraph"
            )));
        }
        let mut g = WeightedGraph::new();
        let vs = self
            .weights
            .iter()
            .enumerate()
            .map(|(i, w)| Vertex::new(format!("c{i}"), w.clone(), kind))
            .collect();
        g.add_chain(None, vs)?;
        if self.circular {
            g.add_edge("c0", &format!("c{}", self.len() - 1))?;
        }
        Ok(g)
    }

    /// Read a path or cycle graph back as a zigzag.
    pub fn from_graph(g: &WeightedGraph) -> Option<Zigzag> {
        let order = g.walk()?;
        Some(Zigzag {
            weights: order.iter().map(|id| g.weight(id).unwrap().clone()).collect(),
            circular: g.shape() == crate::graph::Shape::Circular,
        })
    }
}

fn is_standard_linear_r(w: &[Rational]) -> bool {
    match w.iter().map(|x| x.to_i64()).collect::<Option<Vec<_>>>() {
        Some(v) => is_standard_linear(&v),
        None => false,
    }
}

pub(crate) fn rotate(w: &[i64], offset: usize) -> Vec<i64> {
    let n = w.len();
    (0..n).map(|k| w[(offset + k) % n]).collect()
}

/// `[[0]]`, `[[0,0,0]]`, or `[[0,0,w1,...,wn]]` with every `wi <= -2`.
pub fn is_standard_linear(w: &[i64]) -> bool {
    match w {
        [0] | [0, 0, 0] => true,
        [0, 0, rest @ ..] => rest.iter().all(|&x| x <= -2),
        _ => false,
    }
}

/// `[[0,w1,...,wn]]` with every `wi <= -2`, or `[[0,w,0]]`, in either orientation.
pub fn is_semistandard_linear(w: &[i64]) -> bool {
    let one = |w: &[i64]| match w {
        [0, rest @ ..] => rest.iter().all(|&x| x <= -2),
        _ => false,
    };
    let rev: Vec<i64> = w.iter().rev().copied().collect();
    matches!(w, [0, _, 0]) || one(w) || one(&rev)
}

/// The circular grammar, read with the zeros in front.
pub fn is_standard_circular_list(w: &[i64]) -> bool {
    let zeros = w.iter().take_while(|&&x| x == 0).count();
    let rest = &w[zeros..];
    match rest {
        [x] if zeros <= 3 && *x <= 0 => true,
        [] => (1..=4).contains(&zeros),
        [-1, -1] => zeros == 0 || zeros == 2,
        _ => (zeros == 0 || zeros == 2) && rest.iter().all(|&x| x <= -2),
    }
}

/// Apply one step to an integer weight list.
pub fn apply_step(w: &mut Vec<i64>, circular: bool, step: &Step) -> Result<(), GraphError> {
    let n = w.len();
    let bad = || GraphError::BadStep(format!("{step:?} on {}", render(w, circular)));
    match *step {
        Step::BlowUpEdge { edge } => {
            let edges = if circular { n } else { n.saturating_sub(1) };
            if edge >= edges {
                return Err(bad());
            }
            let j = (edge + 1) % n;
            if j == edge {
                w[edge] -= 2;
            } else {
                w[edge] -= 1;
                w[j] -= 1;
            }
            w.insert(edge + 1, -1);
        }
        Step::BlowUpOuter { vertex, side } => {
            if circular || vertex >= n {
                return Err(bad());
            }
            let ok = match side {
                Side::Left => vertex == 0,
                Side::Right => vertex == n - 1,
            };
            if !ok {
                return Err(bad());
            }
            w[vertex] -= 1;
            match side {
                Side::Left => w.insert(0, -1),
                Side::Right => w.push(-1),
            }
        }
        Step::BlowDown { vertex } => {
            if vertex >= n || w[vertex] != -1 {
                return Err(GraphError::NotMinusOne(format!("position {vertex}")));
            }
            if circular {
                match n {
                    1 => return Err(GraphError::NonRational(format!("position {vertex}"))),
                    2 => w[1 - vertex] += 2,
                    _ => {
                        w[(vertex + n - 1) % n] += 1;
                        w[(vertex + 1) % n] += 1;
                    }
                }
            } else {
                if vertex > 0 {
                    w[vertex - 1] += 1;
                }
                if vertex + 1 < n {
                    w[vertex + 1] += 1;
                }
            }
            w.remove(vertex);
        }
        Step::Rotate { offset, reflect } => {
            if !circular || (n > 0 && offset >= n) {
                return Err(bad());
            }
            let mut r = rotate(w, offset);
            if reflect {
                r.reverse();
            }
            *w = r;
        }
    }
    Ok(())
}

/// An elementary transformation at a 0-vertex: blow up next to it and contract it
/// again, so that the neighbor on `direction` gains 1 and the other neighbor (if
/// any) loses 1. `outer` selects the end-vertex version.
pub fn elementary_transformation(
    z: &Zigzag,
    zero_vertex: usize,
    direction: Side,
    outer: bool,
) -> Result<(Zigzag, TransformationLog), GraphError> {
    let mut w = z.int_weights()?;
    let log = et_steps(&w, z.circular, zero_vertex, direction, outer)?;
    for s in &log {
        apply_step(&mut w, z.circular, s)?;
    }
    Ok((Zigzag::from_ints(&w, z.circular), log))
}

pub(crate) fn et_steps(
    w: &[i64],
    circular: bool,
    i: usize,
    direction: Side,
    outer: bool,
) -> Result<Vec<Step>, GraphError> {
    let n = w.len();
    if i >= n {
        return Err(GraphError::NotLinear(i));
    }
    if w[i] != 0 {
        return Err(GraphError::NotZero(i));
    }
    let is_end = !circular && (i == 0 || i == n - 1);
    if outer {
        if !is_end || n < 2 {
            return Err(GraphError::NotLinear(i));
        }
        let gains = (i == 0 && direction == Side::Right) || (i == n - 1 && direction == Side::Left);
        let steps = match (i == 0, gains) {
            (true, true) => vec![
                Step::BlowUpOuter { vertex: 0, side: Side::Left },
                Step::BlowDown { vertex: 1 },
            ],
            (true, false) => vec![Step::BlowUpEdge { edge: 0 }, Step::BlowDown { vertex: 0 }],
            (false, true) => vec![
                Step::BlowUpOuter { vertex: i, side: Side::Right },
                Step::BlowDown { vertex: i },
            ],
            (false, false) => vec![
                Step::BlowUpEdge { edge: i - 1 },
                Step::BlowDown { vertex: i + 1 },
            ],
        };
        return Ok(steps);
    }
    if is_end || (circular && n < 2) {
        return Err(GraphError::NotLinear(i));
    }
    Ok(match direction {
        Side::Left => vec![Step::BlowUpEdge { edge: i }, Step::BlowDown { vertex: i }],
        Side::Right if i > 0 => vec![
            Step::BlowUpEdge { edge: i - 1 },
            Step::BlowDown { vertex: i + 1 },
        ],
        Side::Right => vec![
            Step::BlowUpEdge { edge: n - 1 },
            Step::BlowDown { vertex: 0 },
            Step::Rotate { offset: n - 1, reflect: false },
        ],
    })
}

/// Bracket notation with `(w)_k` for runs of three or more equal nonzero weights.
pub fn render(w: &[i64], circular: bool) -> String {
    Zigzag::from_ints(w, circular).to_string()
}

impl fmt::Display for Zigzag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (open, close) = if self.circular { ("((", "))") } else { ("[[", "]]") };
        let mut items = Vec::new();
        let mut i = 0;
        while i < self.weights.len() {
            let w = &self.weights[i];
            let run = self.weights[i..].iter().take_while(|x| *x == w).count();
            if run >= 3 && !w.is_zero() {
                items.push(format!("({w})_{run}"));
                i += run;
            } else {
                items.push(w.to_string());
                i += 1;
            }
        }
        write!(f, "{open}{}{close}", items.join(","))
    }
}

impl FromStr for Zigzag {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Zigzag, GraphError> {
        let t: String = s
            .replace('\u{2212}', "-")
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        let err = |msg: &str| GraphError::Parse(format!("{msg} in {s:?}"));
        let (inner, circular) = if let Some(x) = t.strip_prefix("[[").and_then(|x| x.strip_suffix("]]")) {
            (x, false)
        } else if let Some(x) = t.strip_prefix("((").and_then(|x| x.strip_suffix("))")) {
            (x, true)
        } else {
            return Err(err("expected [[...]] or ((...))"));
        };
        let mut items = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        for (i, c) in inner.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    items.push(&inner[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
            if depth < 0 {
                return Err(err("unbalanced parentheses"));
            }
        }
        if depth != 0 {
            return Err(err("unbalanced parentheses"));
        }
        if !inner.is_empty() {
            items.push(&inner[start..]);
        }
        let mut weights = Vec::new();
        for item in items {
            if let Some(body) = item.strip_prefix('(') {
                let (value, count) = body.split_once(")_").ok_or_else(|| err("bad run"))?;
                let count = count.trim_start_matches('{').trim_end_matches('}');
                let k: usize = count.parse().map_err(|_| err("bad run length"))?;
                let q: Rational = value.parse().map_err(|_| err("bad weight"))?;
                weights.extend(std::iter::repeat_n(q, k));
            } else {
                weights.push(item.parse().map_err(|_| err("bad weight"))?);
            }
        }
        Ok(Zigzag { weights, circular })
    }
}

impl Serialize for Zigzag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Z<'a> {
            notation: String,
            weights: &'a [Rational],
            circular: bool,
        }
        Z {
            notation: self.to_string(),
            weights: &self.weights,
            circular: self.circular,
        }
        .serialize(s)
    }
}

/// Accepts the bracket string or the object written by `Serialize`; the
/// `notation` field is authoritative.
impl<'de> Deserialize<'de> for Zigzag {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Zigzag, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Notation(String),
            Object { notation: String },
        }
        let (Repr::Notation(n) | Repr::Object { notation: n }) = Repr::deserialize(d)?;
        n.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(s: &str) -> Zigzag {
        s.parse().unwrap()
    }

    #[test]
    fn json_round_trip() {
        let a = z("((0,0,(-2)_6,-3))");
        let v = serde_json::to_string(&a).unwrap();
        assert_eq!(serde_json::from_str::<Zigzag>(&v).unwrap(), a);
        assert_eq!(serde_json::from_str::<Zigzag>("\"[[0,-1]]\"").unwrap(), z("[[0,-1]]"));
    }

    #[test]
    fn notation_round_trip() {
        let a = z("((0,0,(-2)_6,-3))");
        assert_eq!(a.len(), 9);
        assert!(a.circular);
        assert_eq!(a.to_string(), "((0,0,(-2)_6,-3))");
        assert_eq!(z("[[0, 0, \u{2212}2]]"), Zigzag::linear([0, 0, -2]));
        assert_eq!(z("[[0,0,0]]").to_string(), "[[0,0,0]]");
        assert_eq!(z("[[(-2)_{2}]]").to_string(), "[[-2,-2]]");
        assert_eq!(z("[[]]").len(), 0);
        assert_eq!(z("[[1/2,-3]]").to_string(), "[[1/2,-3]]");
        assert!("[[0,0".parse::<Zigzag>().is_err());
        assert!("[[(0,0]]".parse::<Zigzag>().is_err());
        assert!("[[a]]".parse::<Zigzag>().is_err());
    }

    #[test]
    fn elementary_transformation_examples() {
        let (r, log) = elementary_transformation(&z("[[-2,0,-3]]"), 1, Side::Right, false).unwrap();
        assert_eq!(r, z("[[-3,0,-2]]"));
        assert_eq!(log.len(), 2);
        let (r, _) = elementary_transformation(&z("[[0,-1]]"), 0, Side::Right, true).unwrap();
        assert_eq!(r, z("[[0,0]]"));
        let (r, _) = elementary_transformation(&z("[[0,-1]]"), 0, Side::Left, true).unwrap();
        assert_eq!(r, z("[[0,-2]]"));
        let (r, _) = elementary_transformation(&z("[[-4,0]]"), 1, Side::Left, true).unwrap();
        assert_eq!(r, z("[[-3,0]]"));
        assert_eq!(
            elementary_transformation(&z("[[-2,1,-3]]"), 1, Side::Right, false),
            Err(GraphError::NotZero(1))
        );
        assert_eq!(
            elementary_transformation(&z("[[0,-3]]"), 0, Side::Right, false),
            Err(GraphError::NotLinear(0))
        );
    }

    #[test]
    fn moving_a_zero_pair() {
        // [[0,0,-2]] -> [[-2,0,0]]: the right zero absorbs the -2 in two steps.
        let mut cur = z("[[0,0,-2]]");
        for _ in 0..2 {
            cur = elementary_transformation(&cur, 1, Side::Left, false).unwrap().0;
        }
        assert_eq!(cur, z("[[2,0,-4]]"));
        let mut cur = z("[[0,0,-2]]");
        for _ in 0..2 {
            cur = elementary_transformation(&cur, 1, Side::Right, false).unwrap().0;
        }
        assert_eq!(cur, z("[[-2,0,0]]"));
    }

    #[test]
    fn circular_steps() {
        assert_eq!(z("((9))").apply(&Step::BlowUpEdge { edge: 0 }).unwrap(), z("((7,-1))"));
        assert_eq!(z("((7,-1))").apply(&Step::BlowDown { vertex: 1 }).unwrap(), z("((9))"));
        assert_eq!(
            z("((0,-2,-3))").apply(&Step::BlowUpEdge { edge: 2 }).unwrap(),
            z("((-1,-2,-4,-1))")
        );
        let (r, _) = elementary_transformation(&z("((0,-2,-3))"), 0, Side::Right, false).unwrap();
        assert_eq!(r, z("((0,-1,-4))"));
        let (r, _) = elementary_transformation(&z("((0,-2,-3))"), 0, Side::Left, false).unwrap();
        assert_eq!(r, z("((0,-3,-2))"));
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(z("[[0,0,-2,-3]]").reverse(), z("[[0,0,-3,-2]]"));
        assert_eq!(z("[[0,0,-2]]").reverse(), z("[[0,0,-2]]"));
        assert_eq!(z("((0,0,-2,-3))").reverse(), z("((0,0,-3,-2))"));
        assert_eq!(z("[[1,2,3]]").reverse(), z("[[3,2,1]]"));
    }

    #[test]
    fn grammar() {
        for s in ["[[0]]", "[[0,0,0]]", "[[0,0]]", "[[0,0,-2,-7]]"] {
            assert!(z(s).is_standard(), "{s}");
        }
        for s in ["[[0,0,-1]]", "[[0,-2]]", "[[0,0,0,-2]]", "[[]]"] {
            assert!(!z(s).is_standard(), "{s}");
        }
        for s in ["((0))", "((0,0,0,-4))", "((0,0,0,0))", "((-1,-1))", "((0,0,-1,-1))", "((-2,-3,-2))", "((0,0,-2))", "((0,-1))"] {
            assert!(z(s).is_standard(), "{s}");
        }
        for s in ["((9))", "((0,-2,-3))", "((0,0,0,0,0))", "((0,-1,-1))", "((0,0,1))"] {
            assert!(!z(s).is_standard(), "{s}");
        }
        assert!(z("[[0,-2,-2]]").is_semistandard());
        assert!(z("[[0,5,0]]").is_semistandard());
    }

    #[test]
    fn eigenvalues() {
        assert_eq!(z("[[0,0,-2]]").positive_eigenvalues(), 1);
        assert_eq!(z("[[1,1]]").positive_eigenvalues(), 1);
        assert_eq!(z("[[2,2]]").positive_eigenvalues(), 2);
        assert_eq!(z("((9))").determinant(), 11);
        assert_eq!(z("((0,0,(-2)_6,-3))").determinant(), 11);
    }
}
