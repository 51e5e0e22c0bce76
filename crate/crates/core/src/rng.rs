//! Deterministic pseudo-random numbers.
//!
//! The generator is xoshiro256** (Blackman & Vigna) whose 256-bit state is
//! filled by four successive outputs of SplitMix64 started at the 64-bit
//! seed. Both algorithms are reproduced below exactly, so a seed names the
//! same stream on every platform:
//!
//! ```text
//! splitmix64:  s += 0x9E3779B97F4A7C15
//!              z = s; z = (z ^ z>>30) * 0xBF58476D1CE4E5B9
//!                     z = (z ^ z>>27) * 0x94D049BB133111EB
//!              return z ^ z>>31
//! xoshiro256**: r = rotl(s1 * 5, 7) * 9;  t = s1 << 17
//!              s2 ^= s0; s3 ^= s1; s1 ^= s2; s0 ^= s3; s2 ^= t; s3 = rotl(s3, 45)
//! ```
//!
//! Bounded integers use rejection sampling on the top of the 64-bit range
//! (no modulo bias); `next_f64` takes the high 53 bits.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rng {
    s: [u64; 4],
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl Rng {
    pub fn seed_from(seed: u64) -> Self {
        let mut sm = seed;
        let s = [
            splitmix64(&mut sm),
            splitmix64(&mut sm),
            splitmix64(&mut sm),
            splitmix64(&mut sm),
        ];
        Rng { s }
    }

    /// Raw state constructor, mostly for test vectors.
    pub fn from_state(s: [u64; 4]) -> Self {
        assert!(s.iter().any(|&w| w != 0), "xoshiro state must not be all zero");
        Rng { s }
    }

    pub fn next_u64(&mut self) -> u64 {
        let s = &mut self.s;
        let result = s[1].wrapping_mul(5).rotate_left(7).wrapping_mul(9);
        let t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = s[3].rotate_left(45);
        result
    }

    /// Uniform integer in `0..bound`. Panics if `bound == 0`.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        // largest multiple of `bound` that fits; reject draws above it
        let zone = u64::MAX - (u64::MAX - bound + 1) % bound;
        loop {
            let v = self.next_u64();
            if v <= zone {
                return v % bound;
            }
        }
    }

    pub fn below_usize(&mut self, bound: usize) -> usize {
        self.below(bound as u64) as usize
    }

    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn coin(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }

    pub fn sign(&mut self) -> i8 {
        if self.coin() {
            1
        } else {
            -1
        }
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below_usize(i + 1);
            items.swap(i, j);
        }
    }

    /// Derives an independent child stream, e.g. one per experiment cell.
    pub fn split(&mut self) -> Rng {
        Rng::seed_from(self.next_u64())
    }
}

/// Draws indices from integer weights by inverse-CDF lookup.
#[derive(Clone, Debug)]
pub struct WeightedIndex {
    cumulative: Vec<u64>,
}

impl WeightedIndex {
    /// Returns `None` when every weight is zero.
    pub fn new(weights: &[u64]) -> Option<Self> {
        let mut acc = 0u64;
        let cumulative: Vec<u64> = weights
            .iter()
            .map(|&w| {
                acc = acc.checked_add(w).expect("weight total overflows u64");
                acc
            })
            .collect();
        (acc > 0).then_some(WeightedIndex { cumulative })
    }

    pub fn total(&self) -> u64 {
        *self.cumulative.last().unwrap()
    }

    pub fn sample(&self, rng: &mut Rng) -> usize {
        let r = rng.below(self.total());
        self.cumulative.partition_point(|&c| c <= r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_stream() {
        let mut s = 0u64;
        assert_eq!(splitmix64(&mut s), 0xe220a8397b1dcdaf);
        assert_eq!(splitmix64(&mut s), 0x6e789e6aa1b965f4);
        assert_eq!(splitmix64(&mut s), 0x06c45d188009454f);
    }

    #[test]
    fn xoshiro_reference_stream() {
        let mut r = Rng::from_state([1, 2, 3, 4]);
        let got: Vec<u64> = (0..4).map(|_| r.next_u64()).collect();
        assert_eq!(got, vec![0x2d00, 0x0, 0x5a007080, 0x10e0000000009d80]);
    }

    #[test]
    fn seeded_stream_is_pinned() {
        let mut r = Rng::seed_from(42);
        let got: Vec<u64> = (0..4).map(|_| r.next_u64()).collect();
        assert_eq!(
            got,
            vec![0x15780b2e0c2ec716, 0x6104d9866d113a7e, 0xae17533239e499a1, 0xecb8ad4703b360a1]
        );
    }

    #[test]
    fn below_stays_in_range() {
        let mut r = Rng::seed_from(7);
        for bound in [1u64, 2, 3, 10, 1 << 40] {
            for _ in 0..200 {
                assert!(r.below(bound) < bound);
            }
        }
    }

    #[test]
    fn weighted_index_skips_zero_weights() {
        let w = WeightedIndex::new(&[0, 3, 0, 1]).unwrap();
        let mut r = Rng::seed_from(1);
        let mut counts = [0usize; 4];
        for _ in 0..4000 {
            counts[w.sample(&mut r)] += 1;
        }
        assert_eq!(counts[0], 0);
        assert_eq!(counts[2], 0);
        assert!(counts[1] > 2 * counts[3]);
        assert!(WeightedIndex::new(&[0, 0]).is_none());
    }
}
