//! Contractibility of chains and the contraction formula for subchains.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::arith::{cf_eval, Rational};
use crate::graph::GraphError;
use crate::zigzag::Zigzag;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ContractionTarget {
    /// A single 0-curve `[[0]]`.
    Zero,
    /// A single (-1)-curve `[[-1]]`.
    MinusOne,
    /// Nothing left: the chain contracts to a smooth point.
    SmoothPoint,
}

impl ContractionTarget {
    fn matches(self, w: &[i64]) -> bool {
        match self {
            ContractionTarget::Zero => w == [0],
            ContractionTarget::MinusOne => w == [-1],
            ContractionTarget::SmoothPoint => w.is_empty(),
        }
    }
}

/// Blow down the (-1)-curve at `i` of a linear chain.
pub fn blow_down_chain(w: &[i64], i: usize) -> Vec<i64> {
    let mut out = w.to_vec();
    if i > 0 {
        out[i - 1] += 1;
    }
    if i + 1 < out.len() {
        out[i + 1] += 1;
    }
    out.remove(i);
    out
}

/// Depth-first search over all blowdown orders, memoizing dead ends. On success
/// returns the positions blown down, in order.
pub fn contraction_witness(w: &[i64], target: ContractionTarget) -> Option<Vec<usize>> {
    fn go(
        w: &[i64],
        target: ContractionTarget,
        dead: &mut HashSet<Vec<i64>>,
        path: &mut Vec<usize>,
    ) -> bool {
        if target.matches(w) {
            return true;
        }
        if dead.contains(w) {
            return false;
        }
        for i in 0..w.len() {
            if w[i] != -1 {
                continue;
            }
            path.push(i);
            if go(&blow_down_chain(w, i), target, dead, path) {
                return true;
            }
            path.pop();
        }
        dead.insert(w.to_vec());
        false
    }
    let mut path = Vec::new();
    go(w, target, &mut HashSet::new(), &mut path).then_some(path)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Contraction {
    pub contractible: bool,
    pub witness: Option<Vec<usize>>,
}

pub fn is_contractible_to(
    chain: &Zigzag,
    target: ContractionTarget,
) -> Result<Contraction, GraphError> {
    if chain.circular {
        return Err(GraphError::InvalidEdge(format!("{chain} is not a chain")));
    }
    let w = chain.int_weights()?;
    let witness = contraction_witness(&w, target);
    Ok(Contraction {
        contractible: witness.is_some(),
        witness,
    })
}

/// Self-intersection of `C0` after contracting the chain `C1,...,Cn` attached to it
/// (with `-Ci^2 = ki >= 2`): `-[k0, k1, ..., kn]` where `k0 = -C0^2`.
pub fn contract_subchain(c0_weight: &Rational, chain: &[Rational]) -> Result<Rational, GraphError> {
    if let Some(k) = chain.iter().find(|k| **k < 2) {
        return Err(GraphError::ChainEntryBelowTwo(k.to_string()));
    }
    if chain.is_empty() {
        return Ok(c0_weight.clone());
    }
    let mut ks = Vec::with_capacity(chain.len() + 1);
    ks.push(-c0_weight);
    ks.extend(chain.iter().cloned());
    let v = cf_eval(&ks).map_err(|e| GraphError::ChainEntryBelowTwo(e.to_string()))?;
    Ok(-v)
}
