//! Random inputs. Exact mode draws integers from `{-4..4} \ {0}`, float mode
//! draws uniformly from `[-1, 1]`.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::{Mode, Scalar};
use crate::schreier::SchreierSet;
use crate::vector::CoeffVector;

/// Independent stream `stream` of the generator seeded by `seed`.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn random_scalar<S: Scalar>(rng: &mut ChaCha8Rng) -> S {
    match S::MODE {
        Mode::Exact => {
            let v: i64 = rng.gen_range(1..=8);
            S::from_ratio(if v <= 4 { v - 5 } else { v - 4 }, 1)
        }
        Mode::Float => loop {
            let v: f64 = rng.gen_range(-1.0..=1.0);
            if v != 0.0 {
                return S::from_float(v).expect("finite sample");
            }
        },
    }
}

/// Support of uniform size in `1..=max_support`, placed uniformly in
/// `{1..window}`.
pub fn random_vector<S: Scalar>(rng: &mut ChaCha8Rng, window: u64, max_support: usize) -> CoeffVector<S> {
    let size = rng.gen_range(1..=max_support.min(window as usize));
    let mut idx: Vec<u64> = sample(rng, window as usize, size)
        .into_iter()
        .map(|i| i as u64 + 1)
        .collect();
    idx.sort_unstable();
    let entries: Vec<(u64, S)> = idx.into_iter().map(|i| (i, random_scalar(rng))).collect();
    CoeffVector::from_entries(entries).expect("distinct positive indices")
}

/// `len` strictly increasing integers: the first in `1..=max_gap`, then gaps
/// in `1..=max_gap`.
pub fn random_increasing(rng: &mut ChaCha8Rng, len: usize, max_gap: u64) -> Vec<u64> {
    let mut v = Vec::with_capacity(len);
    let mut cur = 0u64;
    for _ in 0..len {
        cur += rng.gen_range(1..=max_gap);
        v.push(cur);
    }
    v
}

/// Successive non-empty Schreier sets inside `{1..window}`.
pub fn random_chain(rng: &mut ChaCha8Rng, window: u64) -> Vec<SchreierSet> {
    let mut sets = Vec::new();
    let mut pos = rng.gen_range(1..=3u64);
    while pos <= window {
        let room: Vec<u64> = (pos + 1..=(pos + 6).min(window)).collect();
        let extra = rng.gen_range(0..=((pos - 1) as usize).min(room.len()).min(4));
        let mut elems = vec![pos];
        elems.extend(sample(rng, room.len(), extra).into_iter().map(|i| room[i]));
        elems.sort_unstable();
        let last = *elems.last().expect("non-empty");
        sets.push(SchreierSet::new(&elems).expect("size bounded by the minimum"));
        pos = last + rng.gen_range(1..=3);
    }
    sets
}

/// Uniformly random subset of `{1..n}`.
pub fn random_subset(rng: &mut ChaCha8Rng, n: u64) -> Vec<u64> {
    (1..=n).filter(|_| rng.gen_bool(0.5)).collect()
}
