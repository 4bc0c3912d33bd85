//! Reproducible multiplicity samples.

use hodiff_core::rational::{q, Q};
use hodiff_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Fixed generic values; sample `k` puts `BASE[(k + o) % 3]` on orbit `o`.
pub const BASE: [(i64, i64); 3] = [(3, 7), (5, 11), (9, 4)];

const MAX_ATTEMPTS: u64 = 16;

fn drawn(n_orbits: usize, seed: u64, k: usize, attempt: u64) -> Vec<Q> {
    let stream = (k as u64) << 8 | attempt;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    (0..n_orbits)
        .map(|_| q(rng.gen_range(1..=40), rng.gen_range(1..=12)))
        .collect()
}

/// Per-orbit values of sample `k`.
pub fn orbit_values(n_orbits: usize, seed: u64, k: usize) -> Vec<Q> {
    if k < BASE.len() {
        (0..n_orbits)
            .map(|o| {
                let (a, b) = BASE[(k + o) % BASE.len()];
                q(a, b)
            })
            .collect()
    } else {
        drawn(n_orbits, seed, k, 0)
    }
}

/// Runs `f` on sample `k`, redrawing when the sample hits a pole.
pub fn with_retry<T>(
    n_orbits: usize,
    seed: u64,
    k: usize,
    mut f: impl FnMut(&[Q]) -> Result<T, Error>,
) -> Result<T, Error> {
    let mut values = orbit_values(n_orbits, seed, k);
    for attempt in 1..=MAX_ATTEMPTS {
        match f(&values) {
            Err(Error::PoleAtSpectralPoint(_)) => values = drawn(n_orbits, seed, k, attempt),
            other => return other,
        }
    }
    f(&values)
}

/// A rational point with small denominators, for spectral sampling.
pub fn rational_point(dim: usize, seed: u64, index: u64) -> Vec<Q> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x005e_ed0f_5ec7);
    rng.set_stream(index);
    (0..dim)
        .map(|_| q(rng.gen_range(-29..=29), rng.gen_range(2..=13)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_rotation() {
        assert_eq!(orbit_values(2, 0, 0), vec![q(3, 7), q(5, 11)]);
        assert_eq!(orbit_values(2, 0, 1), vec![q(5, 11), q(9, 4)]);
        assert_eq!(orbit_values(3, 0, 2), vec![q(9, 4), q(3, 7), q(5, 11)]);
    }

    #[test]
    fn drawn_samples_are_reproducible() {
        assert_eq!(orbit_values(3, 7, 5), orbit_values(3, 7, 5));
        assert_ne!(orbit_values(3, 7, 5), orbit_values(3, 8, 5));
        assert_eq!(rational_point(4, 1, 2), rational_point(4, 1, 2));
    }

    #[test]
    fn retry_redraws_on_pole() {
        let mut calls = 0;
        let out = with_retry(1, 3, 0, |v| {
            calls += 1;
            if calls < 3 {
                Err(Error::PoleAtSpectralPoint("test".into()))
            } else {
                Ok(v.to_vec())
            }
        })
        .unwrap();
        assert_eq!(calls, 3);
        assert_eq!(out.len(), 1);
    }
}
