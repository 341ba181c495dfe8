//! Seeded random DPD pairs for sweeps and property tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::Rational;
use crate::dpd::{DpdPair, QDivisor};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusConfig {
    /// Largest denominator of a coefficient.
    pub max_denominator: i64,
    /// Largest number of points in the support.
    pub max_points: usize,
    /// Restrict to pairs whose fractional parts live at one point each.
    pub gizatullin: bool,
}

impl Default for CorpusConfig {
    fn default() -> CorpusConfig {
        CorpusConfig { max_denominator: 12, max_points: 3, gizatullin: false }
    }
}

const LABELS: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

fn coefficient(rng: &mut impl Rng, max_den: i64, integral: bool) -> Rational {
    let m = if integral { 1 } else { rng.gen_range(1..=max_den) };
    let n = rng.gen_range(-2 * m..=m);
    Rational::new(n, m)
}

pub fn random_pair(rng: &mut impl Rng, cfg: &CorpusConfig) -> DpdPair {
    let k = rng.gen_range(0..=cfg.max_points.min(LABELS.len()));
    let (frac_plus, frac_minus) = if cfg.gizatullin {
        (rng.gen_range(0..=k), rng.gen_range(0..=k))
    } else {
        (usize::MAX, usize::MAX)
    };
    let mut d_plus = QDivisor::new();
    let mut d_minus = QDivisor::new();
    for (i, label) in LABELS[..k].iter().enumerate() {
        let any = frac_plus == usize::MAX;
        let dp = coefficient(rng, cfg.max_denominator, !(any || i + 1 == frac_plus));
        let gap = if rng.gen_bool(0.3) {
            Rational::zero()
        } else {
            coefficient(rng, cfg.max_denominator, true).abs() + 1
        };
        let mut dm = -&dp - gap;
        if !(any || i + 1 == frac_minus) {
            dm = Rational::from(dm.floor());
        } else if rng.gen_bool(0.5) {
            let shift = Rational::new(rng.gen_range(0..cfg.max_denominator), cfg.max_denominator);
            dm = dm - shift;
        }
        d_plus.add_at(label, dp);
        d_minus.add_at(label, dm);
    }
    DpdPair::new(d_plus, d_minus)
}

/// `count` pairs from a fixed seed.
pub fn corpus(seed: u64, count: usize, cfg: &CorpusConfig) -> Vec<DpdPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_pair(&mut rng, cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::is_gizatullin;

    #[test]
    fn corpus_is_valid_and_reproducible() {
        let cfg = CorpusConfig::default();
        let a = corpus(7, 200, &cfg);
        assert_eq!(a, corpus(7, 200, &cfg));
        assert!(a.iter().all(|p| p.validate().is_ok()));
        let g = CorpusConfig { gizatullin: true, ..cfg };
        assert!(corpus(7, 200, &g).iter().all(is_gizatullin));
    }
}
