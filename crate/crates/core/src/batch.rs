//! Data-parallel evaluation of independent seeded jobs.
//!
//! With the `parallel` feature (on by default) [`map_indexed`] runs on the
//! rayon pool; without it, or through [`map_indexed_seq`], jobs run in order
//! on the calling thread. Each job draws from its own ChaCha stream, so both
//! paths produce identical results.

use rand_chacha::ChaCha8Rng;

use crate::sample::rng_for;

pub fn map_indexed_seq<U, F>(count: usize, seed: u64, f: F) -> Vec<U>
where
    F: Fn(usize, &mut ChaCha8Rng) -> U,
{
    (0..count).map(|i| f(i, &mut rng_for(seed, i as u64))).collect()
}

#[cfg(feature = "parallel")]
pub fn map_indexed_par<U, F>(count: usize, seed: u64, f: F) -> Vec<U>
where
    F: Fn(usize, &mut ChaCha8Rng) -> U + Sync + Send,
    U: Send,
{
    use rayon::prelude::*;
    (0..count).into_par_iter().map(|i| f(i, &mut rng_for(seed, i as u64))).collect()
}

/// Runs `f(i, rng_i)` for `i in 0..count`, in parallel when available.
pub fn map_indexed<U, F>(count: usize, seed: u64, f: F) -> Vec<U>
where
    F: Fn(usize, &mut ChaCha8Rng) -> U + Sync + Send,
    U: Send,
{
    #[cfg(feature = "parallel")]
    {
        map_indexed_par(count, seed, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_indexed_seq(count, seed, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn paths_agree() {
        let f = |i: usize, rng: &mut ChaCha8Rng| (i, rng.gen::<u64>());
        assert_eq!(map_indexed(64, 9, f), map_indexed_seq(64, 9, f));
    }
}
