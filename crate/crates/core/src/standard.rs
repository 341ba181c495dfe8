//! Normalization of zigzags to standard form.
//!
//! Linear zigzags: contract (-1)-curves, create a pair of adjacent 0-curves, move it
//! to the front by elementary transformations and clean up the tail. Circular
//! zigzags follow the same plan with cyclic indexing and finish with a canonical
//! rotation (the lexicographically greatest one matching the grammar).

use crate::graph::GraphError;
use crate::zigzag::{
    apply_step, et_steps, is_semistandard_linear, is_standard_circular_list, is_standard_linear,
    render, rotate, Side, Step, TransformationLog, Zigzag,
};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StandardizeOptions {
    /// Stop as soon as a semistandard linear zigzag is reached.
    pub semistandard: bool,
}

const MAX_ROUNDS: usize = 512;

struct Work {
    w: Vec<i64>,
    circular: bool,
    log: TransformationLog,
}

impl Work {
    fn step(&mut self, s: Step) -> Result<(), GraphError> {
        apply_step(&mut self.w, self.circular, &s)?;
        self.log.push(s);
        Ok(())
    }

    fn et(&mut self, i: usize, dir: Side, outer: bool, times: i64) -> Result<(), GraphError> {
        for _ in 0..times {
            for s in et_steps(&self.w, self.circular, i, dir, outer)? {
                self.step(s)?;
            }
        }
        Ok(())
    }

    fn n(&self) -> usize {
        self.w.len()
    }

    fn stuck(&self) -> GraphError {
        GraphError::Internal(render(&self.w, self.circular))
    }
}

pub fn standardize(z: &Zigzag) -> Result<(Zigzag, TransformationLog), GraphError> {
    standardize_with(z, StandardizeOptions::default())
}

pub fn standardize_with(
    z: &Zigzag,
    opts: StandardizeOptions,
) -> Result<(Zigzag, TransformationLog), GraphError> {
    let w = z.int_weights()?;
    if z.positive_eigenvalues() > 1 {
        return Err(GraphError::NotNegativeSemidefiniteEnough);
    }
    let mut work = Work {
        w,
        circular: z.circular,
        log: Vec::new(),
    };
    if z.circular {
        circular(&mut work)?;
    } else {
        linear(&mut work, opts)?;
    }
    Ok((Zigzag::from_ints(&work.w, z.circular), work.log))
}

fn linear(work: &mut Work, opts: StandardizeOptions) -> Result<(), GraphError> {
    while work.n() >= 2 {
        match work.w.iter().position(|&x| x == -1) {
            Some(i) => work.step(Step::BlowDown { vertex: i })?,
            None => break,
        }
    }
    for _ in 0..MAX_ROUNDS {
        if is_standard_linear(&work.w) || (opts.semistandard && is_semistandard_linear(&work.w)) {
            return Ok(());
        }
        let Some(j) = work.w.iter().position(|&x| x >= 0) else {
            return Err(GraphError::NoStandardForm(render(&work.w, false)));
        };
        let pair = make_linear_pair(work, j)?;
        move_pair_to_front(work, pair)?;
        clean_linear_tail(work)?;
    }
    Err(work.stuck())
}

/// Turn the vertex at `j` (weight >= 0, everything left of it negative) into one
/// half of a 0-pair; returns the index of the left zero.
fn make_linear_pair(work: &mut Work, j: usize) -> Result<usize, GraphError> {
    let n = work.n();
    if n == 1 {
        // [[w]] with w > 0: [[w-1,-1]], then [[0,-1,(-2)_{w-1}]], then [[0,0,(-2)_{w-1}]].
        work.step(Step::BlowUpOuter { vertex: 0, side: Side::Right })?;
        while work.w[0] > 0 {
            work.step(Step::BlowUpEdge { edge: 0 })?;
        }
        work.et(0, Side::Right, true, 1)?;
        return Ok(0);
    }
    if j == 0 {
        while work.w[0] > 0 {
            work.step(Step::BlowUpEdge { edge: 0 })?;
        }
        let x = work.w[1];
        if x < 0 {
            work.et(0, Side::Right, true, -x)?;
        } else {
            work.et(0, Side::Left, true, x)?;
        }
        return Ok(0);
    }
    let mut v = j;
    while work.w[v] > 0 {
        work.step(Step::BlowUpEdge { edge: v - 1 })?;
        v += 1;
    }
    let a = work.w[v - 1];
    let outer = v == work.n() - 1;
    if a < 0 {
        work.et(v, Side::Left, outer, -a)?;
    } else {
        work.et(v, Side::Right, outer, a)?;
    }
    Ok(v - 1)
}

fn move_pair_to_front(work: &mut Work, mut p: usize) -> Result<(), GraphError> {
    while p > 0 {
        let x = work.w[p - 1];
        if x < 0 {
            work.et(p, Side::Left, false, -x)?;
        } else {
            work.et(p, Side::Right, false, x)?;
        }
        p -= 1;
    }
    Ok(())
}

/// Remove (-1)-curves from the tail of `[[0,0,...]]` while keeping the pair in front.
fn clean_linear_tail(work: &mut Work) -> Result<(), GraphError> {
    loop {
        if work.n() >= 3 && work.w[2] == -1 {
            work.et(0, Side::Left, true, 1)?;
            work.step(Step::BlowDown { vertex: 2 })?;
            continue;
        }
        match (3..work.n()).find(|&i| work.w[i] == -1) {
            Some(i) => work.step(Step::BlowDown { vertex: i })?,
            None => return Ok(()),
        }
    }
}

fn circular(work: &mut Work) -> Result<(), GraphError> {
    for _ in 0..MAX_ROUNDS {
        let n = work.n();
        if n == 0 {
            return Err(GraphError::NoStandardForm(render(&work.w, true)));
        }
        if (0..n).any(|o| is_standard_circular_list(&rotate(&work.w, o))) {
            canonical_rotation(work)?;
            return Ok(());
        }
        let pair = if n >= 3 {
            (0..n).find(|&p| work.w[p] == 0 && work.w[(p + 1) % n] == 0)
        } else {
            None
        };
        match pair {
            Some(p) => clean_circular_pair(work, p)?,
            None => circular_without_pair(work)?,
        }
    }
    Err(work.stuck())
}

fn clean_circular_pair(work: &mut Work, p: usize) -> Result<(), GraphError> {
    let n = work.n();
    let m = n - 2;
    let r = |k: usize| (p + 2 + k) % n;
    if let Some(k) = (1..m.saturating_sub(1)).find(|&k| work.w[r(k)] == -1) {
        return work.step(Step::BlowDown { vertex: r(k) });
    }
    if m >= 2 && work.w[r(0)] == -1 {
        let idx = r(0);
        work.step(Step::BlowDown { vertex: idx })?;
        let z1 = if idx < p { p - 1 } else { p };
        return work.et(z1, Side::Left, false, 1);
    }
    if m >= 2 && work.w[r(m - 1)] == -1 {
        let idx = r(m - 1);
        let z2 = (p + 1) % n;
        work.step(Step::BlowDown { vertex: idx })?;
        let z2 = if idx < z2 { z2 - 1 } else { z2 };
        return work.et(z2, Side::Right, false, 1);
    }
    if m == 1 && work.w[r(0)] > 0 {
        // ((0,0,r)) with r in {1,2}: blow up between r and the first zero.
        let v = r(0);
        let z2 = (p + 1) % n;
        work.step(Step::BlowUpEdge { edge: v })?;
        let z2 = if z2 > v { z2 + 1 } else { z2 };
        if work.w[v] > 0 {
            work.et(z2, Side::Left, false, 1)?;
        }
        return Ok(());
    }
    Err(work.stuck())
}

fn circular_without_pair(work: &mut Work) -> Result<(), GraphError> {
    let n = work.n();
    if n >= 3 {
        if let Some(i) = work.w.iter().position(|&x| x == -1) {
            return work.step(Step::BlowDown { vertex: i });
        }
    }
    if n == 2 {
        if let Some(i) = (0..2).find(|&i| work.w[i] == -1 && work.w[1 - i] <= -2) {
            return work.step(Step::BlowDown { vertex: i });
        }
    }
    if let Some(mut v) = work.w.iter().position(|&x| x > 0) {
        if n == 1 {
            return work.step(Step::BlowUpEdge { edge: 0 });
        }
        let mut l = (v + n - 1) % n;
        while work.w[v] > 0 {
            work.step(Step::BlowUpEdge { edge: l })?;
            let ins = l + 1;
            if v > l {
                v += 1;
            }
            l = ins;
        }
        return work.et(v, Side::Left, false, 1);
    }
    if n >= 3 {
        if let Some(v) = work.w.iter().position(|&x| x == 0) {
            let x = work.w[(v + n - 1) % n];
            return if x < 0 {
                work.et(v, Side::Left, false, -x)
            } else {
                work.et(v, Side::Right, false, x)
            };
        }
    }
    Err(work.stuck())
}

fn canonical_rotation(work: &mut Work) -> Result<(), GraphError> {
    let n = work.n();
    let best = (0..n)
        .flat_map(|offset| [false, true].map(|reflect| (offset, reflect)))
        .map(|(offset, reflect)| {
            let mut r = rotate(&work.w, offset);
            if reflect {
                r.reverse();
            }
            (r, offset, reflect)
        })
        .filter(|(r, _, _)| is_standard_circular_list(r))
        .max_by(|a, b| a.0.cmp(&b.0));
    let Some((_, offset, reflect)) = best else {
        return Err(work.stuck());
    };
    if offset != 0 || reflect {
        work.step(Step::Rotate { offset, reflect })?;
    }
    canonical_tail(work)
}

/// On a cycle the 0-pair can travel past every tail vertex, so `((0,0,t))` is
/// only determined up to cyclic shifts and reversal of `t`. Move the pair until
/// the tail is the greatest such representative.
fn canonical_tail(work: &mut Work) -> Result<(), GraphError> {
    let n = work.n();
    if n < 4 || work.w[..2] != [0, 0] || work.w[2..].iter().any(|&x| x > -2) {
        return Ok(());
    }
    let m = n - 2;
    let tail = work.w[2..].to_vec();
    let mut rev = tail.clone();
    rev.reverse();
    let shifts = |t: &[i64]| (0..m).map(|k| rotate(t, k)).collect::<Vec<_>>();
    let target = shifts(&tail).into_iter().chain(shifts(&rev)).max().unwrap_or_default();
    if !shifts(&tail).contains(&target) {
        work.step(Step::Rotate { offset: 2, reflect: true })?;
    }
    for _ in 0..m {
        if work.w[2..] == target[..] {
            return Ok(());
        }
        // ((t_m,0,0,t_1,...)) -> ((0,0,t_m,t_1,...))
        work.step(Step::Rotate { offset: n - 1, reflect: false })?;
        let x = work.w[0];
        work.et(1, Side::Left, false, -x)?;
    }
    if work.w[2..] == target[..] {
        Ok(())
    } else {
        Err(work.stuck())
    }
}
