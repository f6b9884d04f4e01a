//! Counter-based deterministic randomness.
//!
//! Every random quantity in this crate is a pure function of `(seed, counter)`,
//! which makes samples reproducible byte-for-byte and prefix-stable: the coin
//! for index `k` does not depend on how many indices were drawn before it.
//! The mixer is SplitMix64 (Steele, Lea, Flood 2014).

/// SplitMix64 finalizer: maps a 64-bit word to a well-mixed 64-bit word.
#[inline]
pub fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stateless coin for `(seed, k)` in `[0, 1)`.
///
/// Used for selector membership so that samples at different horizons agree
/// on their common prefix.
#[inline]
pub fn coin(seed: u64, k: u64) -> f64 {
    let z = mix(seed ^ mix(k));
    to_unit_f64(z)
}

#[inline]
pub fn to_unit_f64(z: u64) -> f64 {
    // 53 high bits -> [0,1)
    (z >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Sequential SplitMix64 stream for Monte-Carlo style consumers.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Independent stream for trial `t` of a seeded experiment.
    pub fn for_trial(seed: u64, t: u64) -> Self {
        SplitMix64 {
            state: mix(seed).wrapping_add(mix(t).rotate_left(17)),
        }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        to_unit_f64(self.next_u64())
    }

    /// Uniform in `{0, 1, ..., n-1}` by rejection.
    pub fn next_below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        let zone = u64::MAX - (u64::MAX % n);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % n;
            }
        }
    }

    /// Random sign, +1.0 or -1.0.
    #[inline]
    pub fn next_sign(&mut self) -> f64 {
        if self.next_u64() & 1 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Standard normal via Box-Muller.
    pub fn next_gaussian(&mut self) -> f64 {
        let u = loop {
            let u = self.next_f64();
            if u > 0.0 {
                break u;
            }
        };
        let v = self.next_f64();
        (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * v).cos()
    }

    /// Sample `k` distinct indices from `0..n` (sorted), Floyd's algorithm.
    pub fn sample_indices(&mut self, n: usize, k: usize) -> Vec<usize> {
        assert!(k <= n);
        let mut chosen = std::collections::BTreeSet::new();
        for j in (n - k)..n {
            let t = self.next_below((j + 1) as u64) as usize;
            if !chosen.insert(t) {
                chosen.insert(j);
            }
        }
        chosen.into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coin_is_stateless_and_prefix_stable() {
        let a = coin(42, 17);
        let b = coin(42, 17);
        assert_eq!(a, b);
        assert!((0.0..1.0).contains(&a));
        // different counters decorrelate
        assert_ne!(coin(42, 17), coin(42, 18));
        assert_ne!(coin(42, 17), coin(43, 17));
    }

    #[test]
    fn next_below_is_in_range() {
        let mut rng = SplitMix64::new(1);
        for _ in 0..1000 {
            assert!(rng.next_below(6) < 6);
        }
    }

    #[test]
    fn sample_indices_distinct_sorted() {
        let mut rng = SplitMix64::new(9);
        let idx = rng.sample_indices(100, 20);
        assert_eq!(idx.len(), 20);
        for w in idx.windows(2) {
            assert!(w[0] < w[1]);
        }
        assert!(*idx.last().unwrap() < 100);
    }

    #[test]
    fn gaussian_moments_are_sane() {
        let mut rng = SplitMix64::new(5);
        let n = 20000;
        let (mut s, mut s2) = (0.0, 0.0);
        for _ in 0..n {
            let g = rng.next_gaussian();
            s += g;
            s2 += g * g;
        }
        let mean = s / n as f64;
        let var = s2 / n as f64 - mean * mean;
        assert!(mean.abs() < 0.03, "mean {mean}");
        assert!((var - 1.0).abs() < 0.05, "var {var}");
    }
}
