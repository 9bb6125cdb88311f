//! Seeded random instances and brute-force oracles for tests.
//!
//! Every generator takes an explicit RNG so suites are reproducible from a
//! seed.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use std::sync::Arc;

use predict_core::predictor::{
    bernoulli, mixture, table_predictor, uniform, Predictor, StagedFn, TableRule,
};
use predict_core::{BitStr, Ratio};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
pub use rand_chacha::ChaCha8Rng;

pub mod oracle;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly random string with length drawn from `lens`.
pub fn bitstr<R: Rng>(rng: &mut R, lens: RangeInclusive<usize>) -> BitStr {
    let len = rng.gen_range(lens);
    BitStr::from_digits((0..len).map(|_| rng.gen_range(0..2u8)))
}

/// Values of a distribution down to `depth`, each node splitting its mass
/// with a 0-child share `k/2^bits`. With `positive`, `0 < k < 2^bits`.
pub fn dyadic_distribution_values<R: Rng>(
    rng: &mut R,
    depth: usize,
    bits: u32,
    positive: bool,
) -> BTreeMap<BitStr, Ratio> {
    let den = 1u64 << bits;
    split_tree(depth, |_| {
        let k = if positive {
            rng.gen_range(1..den)
        } else {
            rng.gen_range(0..=den)
        };
        Ratio::new(k, den)
    })
}

/// Like [`dyadic_distribution_values`] with shares `k/d` for `2 ≤ d ≤ 9`,
/// `0 < k < d`.
pub fn rational_distribution_values<R: Rng>(rng: &mut R, depth: usize) -> BTreeMap<BitStr, Ratio> {
    split_tree(depth, |_| {
        let d = rng.gen_range(2..=9u64);
        Ratio::new(rng.gen_range(1..d), d)
    })
}

fn split_tree<F: FnMut(&BitStr) -> Ratio>(depth: usize, mut share: F) -> BTreeMap<BitStr, Ratio> {
    let mut values = BTreeMap::new();
    values.insert(BitStr::empty(), Ratio::one());
    for x in BitStr::all_up_to(depth.saturating_sub(1)).filter(|x| x.len() < depth) {
        let v = values[&x].clone();
        let left = &v * &share(&x);
        let right = &v - &left;
        values.insert(x.child(0), left);
        values.insert(x.child(1), right);
    }
    values
}

/// A table distribution, uniform below depth `depth`.
pub fn distribution_from(values: BTreeMap<BitStr, Ratio>) -> Predictor {
    table_predictor(values, TableRule::UniformBelowLeaves).expect("generated table is valid")
}

/// Values on the grid `2^-bits` with `p(Λ) ≤ 1` and
/// `p(x0) + p(x1) ≤ p(x)`, down to `depth`.
pub fn subadditive_values<R: Rng>(rng: &mut R, depth: usize, bits: u32) -> BTreeMap<BitStr, Ratio> {
    let den = 1u64 << bits;
    let mut units = BTreeMap::new();
    units.insert(BitStr::empty(), rng.gen_range(den / 2..=den));
    for x in BitStr::all_up_to(depth).filter(|x| x.len() < depth) {
        let v: u64 = units[&x];
        let a = rng.gen_range(0..=v);
        let b = rng.gen_range(0..=v - a);
        units.insert(x.child(0), a);
        units.insert(x.child(1), b);
    }
    units
        .into_iter()
        .map(|(x, k)| (x, Ratio::new(k, den)))
        .collect()
}

pub fn subadditive_table(values: BTreeMap<BitStr, Ratio>) -> Predictor {
    table_predictor(values, TableRule::ZeroOutside).expect("generated table is subadditive")
}

/// A staged map on the grid `2^-bits`, nondecreasing in the stage, zero at
/// stage 0 and beyond `depth`, and otherwise unconstrained.
pub fn staged_grid_fn<R: Rng>(rng: &mut R, depth: usize, stages: u64, bits: u32) -> StagedFn {
    let den = 1u64 << bits;
    let mut table: BTreeMap<(BitStr, u64), Ratio> = BTreeMap::new();
    for x in BitStr::all_up_to(depth) {
        let mut k = 0u64;
        for n in 1..=stages {
            k = rng.gen_range(k..=den);
            table.insert((x.clone(), n), Ratio::new(k, den));
        }
    }
    Arc::new(move |x: &BitStr, n: u64| {
        if x.len() > depth || n == 0 {
            return Ratio::zero();
        }
        table[&(x.clone(), n.min(stages))].clone()
    })
}

/// A mixture of one to three positive members (uniform, Bernoulli with a
/// rate in eighths, or a rational table distribution) with positive weights
/// of total at most 1.
pub fn positive_mixture<R: Rng>(rng: &mut R) -> Predictor {
    let members = rng.gen_range(1..=3usize);
    let mut left = 16u64;
    let mut family = Vec::new();
    for i in 0..members {
        let w = if i + 1 == members {
            rng.gen_range(1..=left)
        } else {
            rng.gen_range(1..=left - (members - i - 1) as u64)
        };
        left -= w;
        let p = match rng.gen_range(0..3) {
            0 => uniform(),
            1 => bernoulli(Ratio::new(rng.gen_range(1..8), 8)).expect("rate in (0,1)"),
            _ => distribution_from(rational_distribution_values(rng, 3)),
        };
        family.push((Ratio::new(w, 16), p));
    }
    mixture(family).expect("weights sum to at most 1")
}
