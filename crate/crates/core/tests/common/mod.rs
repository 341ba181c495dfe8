//! Helpers shared by integration tests.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Solve `m x = rhs` by Gauss-Jordan elimination; `m` must be invertible.
#[allow(clippy::needless_range_loop)]
fn solve(mut m: Vec<Vec<BigRational>>, mut rhs: Vec<BigRational>) -> Vec<BigRational> {
    let n = rhs.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero()).expect("singular");
        m.swap(col, piv);
        rhs.swap(col, piv);
        let p = m[col][col].clone();
        for c in 0..n {
            m[col][c] = &m[col][c] / &p;
        }
        rhs[col] = &rhs[col] / &p;
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..n {
                    let d = &f * &m[col][c];
                    m[r][c] -= d;
                }
                let d = &f * &rhs[col];
                rhs[r] -= d;
            }
        }
    }
    rhs
}

/// `C0'^2` after contracting the chain `-k1,...,-kn` attached to `C0`.
pub fn oracle(c0: i64, ks: &[i64]) -> BigRational {
    let n = ks.len();
    let mut m = vec![vec![q(0); n]; n];
    for i in 0..n {
        m[i][i] = q(-ks[i]);
        if i + 1 < n {
            m[i][i + 1] = BigRational::one();
            m[i + 1][i] = BigRational::one();
        }
    }
    let mut b = vec![q(0); n];
    b[0] = q(-1);
    let a = solve(m, b);
    q(c0) + &a[0]
}
