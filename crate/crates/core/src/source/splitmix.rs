use super::UniformSource;

pub const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64: a Weyl sequence with an odd increment, finalized by a
/// three-stage xor-shift-multiply mix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
    gamma: u64,
}

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 {
            state: seed,
            gamma: GOLDEN_GAMMA,
        }
    }

    /// Uses a custom increment. The low bit is forced on so the Weyl
    /// sequence has full period.
    pub fn with_gamma(seed: u64, gamma: u64) -> Self {
        SplitMix64 {
            state: seed,
            gamma: gamma | 1,
        }
    }

    pub fn state(&self) -> u64 {
        self.state
    }

    pub fn gamma(&self) -> u64 {
        self.gamma
    }

    /// Derives an independent child stream from two parent draws.
    pub fn split(&mut self) -> SplitMix64 {
        let state = self.next_u64();
        let gamma = self.next_u64();
        SplitMix64::with_gamma(state, gamma)
    }
}

impl UniformSource for SplitMix64 {
    #[inline]
    fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(self.gamma);
        mix64(self.state)
    }
}
