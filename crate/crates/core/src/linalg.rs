//! Exact inertia of symmetric rational matrices.

use crate::arith::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

/// Sylvester inertia by symmetric elimination, using 2x2 pivots when the
/// remaining diagonal is zero.
pub fn inertia(matrix: &[Vec<Rational>]) -> Inertia {
    let n = matrix.len();
    let mut a: Vec<Vec<Rational>> = matrix.to_vec();
    let mut active: Vec<usize> = (0..n).collect();
    let mut out = Inertia { positive: 0, negative: 0, zero: 0 };

    while !active.is_empty() {
        if let Some(pos) = active.iter().position(|&i| !a[i][i].is_zero()) {
            let p = active.remove(pos);
            let d = a[p][p].clone();
            if d.is_positive() {
                out.positive += 1;
            } else {
                out.negative += 1;
            }
            for &j in &active {
                if a[j][p].is_zero() {
                    continue;
                }
                let f = &a[j][p] / &d;
                for &k in &active {
                    let delta = &f * &a[p][k];
                    a[j][k] = &a[j][k] - &delta;
                }
            }
            continue;
        }
        let pair = active.iter().enumerate().find_map(|(x, &i)| {
            active[x + 1..]
                .iter()
                .find(|&&j| !a[i][j].is_zero())
                .map(|&j| (i, j))
        });
        let Some((p, q)) = pair else {
            out.zero += active.len();
            break;
        };
        // The block [[0, c], [c, 0]] contributes one positive and one negative direction.
        out.positive += 1;
        out.negative += 1;
        active.retain(|&i| i != p && i != q);
        let c = a[p][q].clone();
        for &j in &active {
            for &k in &active {
                let t = &(&a[j][p] * &a[q][k]) + &(&a[j][q] * &a[p][k]);
                a[j][k] = &a[j][k] - &(&t / &c);
            }
        }
    }
    out
}

/// Determinant by fraction-exact Gaussian elimination.
#[allow(clippy::needless_range_loop)]
pub fn determinant(matrix: &[Vec<Rational>]) -> Rational {
    let n = matrix.len();
    let mut a = matrix.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let d = a[col][col].clone();
        det = &det * &d;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &d;
            for c in col..n {
                let delta = &f * &a[col][c];
                a[r][c] = &a[r][c] - &delta;
            }
        }
    }
    det
}
