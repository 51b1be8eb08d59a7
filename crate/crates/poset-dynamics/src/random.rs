//! Seeded random poset generators for property runs. Sizes are drawn from
//! 4..=12 and all randomness flows from an explicit seed, so every run is
//! reproducible.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::poset::Poset;

/// The deterministic generator used for every seeded run.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random poset from a random bit upper-triangular relation matrix
/// (acyclic by construction), transitively closed and reduced by the poset
/// constructor.
pub fn random_poset(rng: &mut ChaCha8Rng, size: usize) -> Poset {
    let mut relations = Vec::new();
    for a in 0..size {
        for b in a + 1..size {
            if rng.random_bool(0.5) {
                relations.push((a, b));
            }
        }
    }
    Poset::from_covers(size, &relations).expect("upper-triangular relations are acyclic")
}

/// A random ranked poset built by layers: every element above the bottom
/// layer covers at least one element of the layer directly below, and covers
/// never skip layers, so longest-path ranks equal layer indices.
pub fn random_ranked_poset(rng: &mut ChaCha8Rng, size: usize) -> Poset {
    let layer_count = rng.random_range(1..=size.min(4));
    // Split `size` elements into contiguous nonempty layers.
    let mut sizes = vec![1usize; layer_count];
    for _ in layer_count..size {
        let l = rng.random_range(0..layer_count);
        sizes[l] += 1;
    }
    let mut layers: Vec<Vec<usize>> = Vec::new();
    let mut next = 0;
    for &s in &sizes {
        layers.push((next..next + s).collect());
        next += s;
    }

    let mut covers = Vec::new();
    for l in 1..layer_count {
        for &p in &layers[l] {
            let below = &layers[l - 1];
            let forced = below[rng.random_range(0..below.len())];
            covers.push((forced, p));
            for &q in below {
                if q != forced && rng.random_bool(0.4) {
                    covers.push((q, p));
                }
            }
        }
    }
    let poset = Poset::from_covers(size, &covers).expect("layered covers are acyclic");
    debug_assert!(poset.rank_function().is_ok());
    poset
}

/// `count` random posets with sizes in 4..=12, deterministically from `seed`.
pub fn random_posets(seed: u64, count: usize) -> Vec<Poset> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let size = rng.random_range(4..=12);
            random_poset(&mut rng, size)
        })
        .collect()
}

/// `count` random ranked posets with sizes in 4..=12, deterministically
/// from `seed`.
pub fn random_ranked_posets(seed: u64, count: usize) -> Vec<Poset> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let size = rng.random_range(4..=12);
            random_ranked_poset(&mut rng, size)
        })
        .collect()
}
