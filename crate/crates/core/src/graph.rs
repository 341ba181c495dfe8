//! Weighted dual graphs with blowups and blowdowns.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::Rational;
use crate::linalg;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("site not found: {0}")]
    SiteNotFound(String),
    #[error("vertex {0} does not have weight -1")]
    NotMinusOne(String),
    #[error("vertex {0} has degree at least 3")]
    Branching(String),
    #[error("vertex {0} is not a smooth rational curve")]
    NonRational(String),
    #[error("blowing down {0} would create a multiple edge")]
    MultiEdge(String),
    #[error("duplicate vertex id {0}")]
    DuplicateId(String),
    #[error("invalid edge {0}")]
    InvalidEdge(String),
    #[error("vertex {0} does not have weight 0")]
    NotZero(usize),
    #[error("vertex {0} is not in the position the transformation needs")]
    NotLinear(usize),
    #[error("weights must be integers here: {0}")]
    NonIntegral(String),
    #[error("intersection form has more than one positive eigenvalue")]
    NotNegativeSemidefiniteEnough,
    #[error("the zigzag {0} is negative definite and has no standard form")]
    NoStandardForm(String),
    #[error("{0} is not a standard zigzag")]
    NotStandard(String),
    #[error("chain entry {0} is below 2")]
    ChainEntryBelowTwo(String),
    #[error("cannot parse zigzag: {0}")]
    Parse(String),
    #[error("step {0} cannot be applied")]
    BadStep(String),
    #[error("normalization did not converge on {0}")]
    Internal(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VertexKind {
    Boundary,
    FeatherBridge,
    FeatherTail,
    Section,
    Fiber,
    Exceptional,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    pub weight: Rational,
    pub kind: VertexKind,
    /// Genus of the curve; nonzero marks a non-rational component.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub genus: u32,
}

fn is_zero(g: &u32) -> bool {
    *g == 0
}

impl Vertex {
    pub fn new(id: impl Into<String>, weight: impl Into<Rational>, kind: VertexKind) -> Vertex {
        Vertex {
            id: id.into(),
            weight: weight.into(),
            kind,
            genus: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Empty,
    Linear,
    Circular,
    Tree,
    General,
}

/// A blowup site.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Site {
    Edge(String, String),
    Vertex(String),
}

/// A simple graph of curves with weights (self-intersections).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WeightedGraph {
    vertices: Vec<Vertex>,
    edges: BTreeSet<(String, String)>,
}

fn edge_key(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

impl WeightedGraph {
    pub fn new() -> WeightedGraph {
        WeightedGraph::default()
    }

    pub fn add_vertex(&mut self, v: Vertex) -> Result<(), GraphError> {
        if self.index(&v.id).is_some() {
            return Err(GraphError::DuplicateId(v.id));
        }
        self.vertices.push(v);
        Ok(())
    }

    pub fn add_edge(&mut self, a: &str, b: &str) -> Result<(), GraphError> {
        if a == b || self.index(a).is_none() || self.index(b).is_none() {
            return Err(GraphError::InvalidEdge(format!("{a}-{b}")));
        }
        if !self.edges.insert(edge_key(a, b)) {
            return Err(GraphError::InvalidEdge(format!("{a}-{b} (duplicate)")));
        }
        Ok(())
    }

    /// Append `chain` as a path hanging off `anchor` (or free-standing if `None`).
    pub fn add_chain(
        &mut self,
        anchor: Option<&str>,
        chain: Vec<Vertex>,
    ) -> Result<Option<String>, GraphError> {
        let mut prev = anchor.map(str::to_string);
        for v in chain {
            let id = v.id.clone();
            self.add_vertex(v)?;
            if let Some(p) = &prev {
                self.add_edge(p, &id)?;
            }
            prev = Some(id);
        }
        Ok(prev)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> {
        self.edges.iter().map(|(a, b)| (a.as_str(), b.as_str()))
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn vertex(&self, id: &str) -> Option<&Vertex> {
        self.vertices.iter().find(|v| v.id == id)
    }

    pub fn weight(&self, id: &str) -> Option<&Rational> {
        self.vertex(id).map(|v| &v.weight)
    }

    pub fn neighbors(&self, id: &str) -> Vec<String> {
        // Ordered by vertex insertion so that walks are deterministic.
        let set: BTreeSet<&str> = self
            .edges
            .iter()
            .filter_map(|(a, b)| {
                if a == id {
                    Some(b.as_str())
                } else if b == id {
                    Some(a.as_str())
                } else {
                    None
                }
            })
            .collect();
        self.vertices
            .iter()
            .filter(|v| set.contains(v.id.as_str()))
            .map(|v| v.id.clone())
            .collect()
    }

    pub fn degree(&self, id: &str) -> usize {
        self.edges.iter().filter(|(a, b)| a == id || b == id).count()
    }

    fn components(&self) -> usize {
        let mut seen = BTreeSet::new();
        let mut count = 0;
        for v in &self.vertices {
            if seen.contains(&v.id) {
                continue;
            }
            count += 1;
            let mut stack = vec![v.id.clone()];
            while let Some(x) = stack.pop() {
                if seen.insert(x.clone()) {
                    stack.extend(self.neighbors(&x));
                }
            }
        }
        count
    }

    pub fn shape(&self) -> Shape {
        let n = self.vertices.len();
        if n == 0 {
            return Shape::Empty;
        }
        let e = self.edges.len();
        if self.components() != 1 {
            return Shape::General;
        }
        let max_deg = self
            .vertices
            .iter()
            .map(|v| self.degree(&v.id))
            .max()
            .unwrap_or(0);
        if e + 1 == n {
            if max_deg <= 2 {
                Shape::Linear
            } else {
                Shape::Tree
            }
        } else if e == n && max_deg == 2 && self.vertices.iter().all(|v| self.degree(&v.id) == 2) {
            Shape::Circular
        } else {
            Shape::General
        }
    }

    fn fresh_id(&self) -> String {
        (0..)
            .map(|k| format!("e{k}"))
            .find(|id| self.index(id).is_none())
            .expect("infinite supply")
    }

    fn bump(&mut self, id: &str, delta: i64) {
        let i = self.index(id).expect("vertex exists");
        let w = self.vertices[i].weight.clone();
        self.vertices[i].weight = w + delta;
    }

    /// Blow up at an edge (inner) or at a general point of a vertex (outer).
    /// Returns the new graph and the id of the exceptional vertex.
    pub fn blow_up(&self, site: &Site) -> Result<(WeightedGraph, String), GraphError> {
        let mut g = self.clone();
        let new_id = g.fresh_id();
        match site {
            Site::Edge(a, b) => {
                if !g.edges.remove(&edge_key(a, b)) {
                    return Err(GraphError::SiteNotFound(format!("edge {a}-{b}")));
                }
                g.bump(a, -1);
                g.bump(b, -1);
                g.vertices.push(Vertex::new(new_id.clone(), -1, VertexKind::Exceptional));
                g.add_edge(a, &new_id)?;
                g.add_edge(&new_id, b)?;
            }
            Site::Vertex(a) => {
                if g.index(a).is_none() {
                    return Err(GraphError::SiteNotFound(format!("vertex {a}")));
                }
                g.bump(a, -1);
                g.vertices.push(Vertex::new(new_id.clone(), -1, VertexKind::Exceptional));
                g.add_edge(a, &new_id)?;
            }
        }
        Ok((g, new_id))
    }

    /// Contract a smooth rational (-1)-curve meeting at most two others.
    pub fn blow_down(&self, id: &str) -> Result<WeightedGraph, GraphError> {
        let v = self
            .vertex(id)
            .ok_or_else(|| GraphError::SiteNotFound(format!("vertex {id}")))?;
        if v.genus != 0 {
            return Err(GraphError::NonRational(id.to_string()));
        }
        if v.weight != -1 {
            return Err(GraphError::NotMinusOne(id.to_string()));
        }
        let nbrs = self.neighbors(id);
        if nbrs.len() > 2 {
            return Err(GraphError::Branching(id.to_string()));
        }
        let mut g = self.clone();
        g.vertices.retain(|x| x.id != id);
        g.edges.retain(|(a, b)| a != id && b != id);
        for n in &nbrs {
            g.bump(n, 1);
        }
        if let [a, b] = nbrs.as_slice() {
            if !g.edges.insert(edge_key(a, b)) {
                return Err(GraphError::MultiEdge(id.to_string()));
            }
        }
        Ok(g)
    }

    pub fn intersection_matrix(&self) -> Vec<Vec<Rational>> {
        let n = self.vertices.len();
        let pos: BTreeMap<&str, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.id.as_str(), i))
            .collect();
        let mut m = vec![vec![Rational::zero(); n]; n];
        for (i, v) in self.vertices.iter().enumerate() {
            m[i][i] = v.weight.clone();
        }
        for (a, b) in &self.edges {
            let (i, j) = (pos[a.as_str()], pos[b.as_str()]);
            m[i][j] = Rational::one();
            m[j][i] = Rational::one();
        }
        m
    }

    pub fn positive_eigenvalues(&self) -> usize {
        linalg::inertia(&self.intersection_matrix()).positive
    }

    /// Vertex ids along the path or cycle, starting at the earliest-inserted end.
    pub fn walk(&self) -> Option<Vec<String>> {
        let shape = self.shape();
        let start = match shape {
            Shape::Empty => return Some(Vec::new()),
            Shape::Linear => self
                .vertices
                .iter()
                .find(|v| self.degree(&v.id) <= 1)?
                .id
                .clone(),
            Shape::Circular => self.vertices[0].id.clone(),
            _ => return None,
        };
        let mut order = vec![start.clone()];
        let mut prev: Option<String> = None;
        let mut cur = start;
        loop {
            let next = self
                .neighbors(&cur)
                .into_iter()
                .find(|n| Some(n) != prev.as_ref() && !order.contains(n));
            match next {
                Some(n) => {
                    order.push(n.clone());
                    prev = Some(cur);
                    cur = n;
                }
                None => break,
            }
        }
        Some(order)
    }

    /// Remove a set of vertices and all their edges.
    pub fn without(&self, ids: &[&str]) -> WeightedGraph {
        let mut g = self.clone();
        g.vertices.retain(|v| !ids.contains(&v.id.as_str()));
        g.edges
            .retain(|(a, b)| !ids.contains(&a.as_str()) && !ids.contains(&b.as_str()));
        g
    }

    pub fn set_genus(&mut self, id: &str, genus: u32) {
        if let Some(i) = self.index(id) {
            self.vertices[i].genus = genus;
        }
    }
}

#[derive(Serialize)]
struct GraphJson<'a> {
    shape: Shape,
    vertices: &'a [Vertex],
    edges: Vec<[&'a str; 2]>,
}

impl Serialize for WeightedGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphJson {
            shape: self.shape(),
            vertices: &self.vertices,
            edges: self.edges().map(|(a, b)| [a, b]).collect(),
        }
        .serialize(s)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Shape::Empty => "empty",
            Shape::Linear => "linear",
            Shape::Circular => "circular",
            Shape::Tree => "tree",
            Shape::General => "general",
        };
        f.write_str(s)
    }
}
