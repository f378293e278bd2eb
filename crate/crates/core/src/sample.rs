//! Deterministic sample streams for the verification harnesses.
//!
//! Every randomized run is driven by a [`SampleConfig`]; identical
//! configs yield identical streams on every platform (ChaCha8 keyed by
//! the seed, no HashMap iteration anywhere downstream).

use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::hamel::{BasisElement, HamelReal, Point};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleConfig {
    pub seed: u64,
    pub count: u64,
    pub max_terms: u32,
    pub max_index: u32,
    pub max_point_len: u32,
    pub coeff_bound: u32,
}

impl SampleConfig {
    pub fn new(seed: u64) -> Self {
        SampleConfig {
            seed,
            count: 1000,
            max_terms: 6,
            max_index: 8,
            max_point_len: 6,
            coeff_bound: 50,
        }
    }

    pub fn with_count(mut self, count: u64) -> Self {
        self.count = count;
        self
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig::new(0)
    }
}

pub fn sample_point(rng: &mut ChaCha8Rng, max_len: u32) -> Point {
    let len = rng.gen_range(0..=max_len);
    let mut s = String::with_capacity(len as usize);
    for _ in 0..len {
        s.push(if rng.gen::<bool>() { '1' } else { '0' });
    }
    Point::new(s.trim_end_matches('0')).expect("trimmed string is canonical")
}

pub fn sample_basis(rng: &mut ChaCha8Rng, cfg: &SampleConfig, piece_bound: u32) -> BasisElement {
    BasisElement {
        piece: rng.gen_range(0..=piece_bound),
        point: sample_point(rng, cfg.max_point_len),
    }
}

/// A nonzero rational with numerator in ±[1, bound] and denominator in
/// [1, bound].
pub fn sample_coeff(rng: &mut ChaCha8Rng, bound: u32) -> BigRational {
    let n = i64::from(rng.gen_range(1..=bound));
    let n = if rng.gen::<bool>() { n } else { -n };
    let d = i64::from(rng.gen_range(1..=bound));
    BigRational::new(n.into(), d.into())
}

pub fn sample_pos_coeff(rng: &mut ChaCha8Rng, bound: u32) -> BigRational {
    let n = i64::from(rng.gen_range(1..=bound));
    let d = i64::from(rng.gen_range(1..=bound));
    BigRational::new(n.into(), d.into())
}

/// A symbolic real with up to `max_terms` terms over pieces
/// `0..=piece_bound`. May be zero (no terms, or cancellation).
pub fn sample_real_over(rng: &mut ChaCha8Rng, cfg: &SampleConfig, piece_bound: u32) -> HamelReal {
    let t = rng.gen_range(0..=cfg.max_terms);
    HamelReal::from_terms((0..t).map(|_| {
        (
            sample_basis(rng, cfg, piece_bound),
            sample_coeff(rng, cfg.coeff_bound),
        )
    }))
}

pub fn sample_real(rng: &mut ChaCha8Rng, cfg: &SampleConfig) -> HamelReal {
    sample_real_over(rng, cfg, cfg.max_index)
}

pub fn sample_nonzero_real(rng: &mut ChaCha8Rng, cfg: &SampleConfig) -> HamelReal {
    loop {
        let x = sample_real(rng, cfg);
        if !x.is_zero() {
            return x;
        }
    }
}
