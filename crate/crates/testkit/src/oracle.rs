//! Brute-force reference computations, written without the library's
//! algorithms.

use predict_core::{BitStr, Ratio};

/// The smallest and largest `q(vw)/q(v)` over distributions `q` on the comb
/// of `vw` (its prefixes and their siblings) with `q ≥ p` on the comb and
/// every sibling value on the grid `2^-bits`.
///
/// A comb distribution is determined by the values of the siblings and of
/// `vw`, which must sum to 1; the value of a prefix is `q(vw)` plus the
/// siblings hanging below it.
pub fn comb_extremes<F>(p: F, v: &BitStr, w: &BitStr, bits: u32) -> Option<(Ratio, Ratio)>
where
    F: Fn(&BitStr) -> Ratio,
{
    let vw = v.concat(w);
    let n = vw.len();
    let den = 1u64 << bits;
    let siblings: Vec<BitStr> = (1..=n)
        .map(|i| {
            let mut s = vw.prefix(i - 1);
            s.push(1 - vw.digit(i - 1));
            s
        })
        .collect();
    let floor: Vec<u64> = siblings.iter().map(|s| ceil_units(&p(s), den)).collect();
    let path: Vec<Ratio> = (0..=n).map(|i| p(&vw.prefix(i))).collect();

    let mut best: Option<(Ratio, Ratio)> = None;
    let mut units = floor.clone();
    loop {
        let used: u64 = units.iter().sum();
        if used <= den {
            let q_vw = Ratio::new(den - used, den);
            let q_at = |i: usize| -> Ratio {
                let below: u64 = units[i..].iter().sum();
                &q_vw + &Ratio::new(below, den)
            };
            if (0..=n).all(|i| q_at(i) >= path[i]) {
                let ratio = q_vw.div_or_zero(&q_at(v.len()));
                best = Some(match best {
                    None => (ratio.clone(), ratio),
                    Some((lo, hi)) => (lo.min(ratio.clone()), hi.max(ratio)),
                });
            }
        }
        // Odometer over sibling values.
        let mut i = 0;
        loop {
            if i == n {
                return best;
            }
            units[i] += 1;
            if units[i] <= den {
                break;
            }
            units[i] = floor[i];
            i += 1;
        }
    }
}

fn ceil_units(r: &Ratio, den: u64) -> u64 {
    let mut k = 0;
    while Ratio::new(k, den) < *r {
        k += 1;
    }
    k
}
