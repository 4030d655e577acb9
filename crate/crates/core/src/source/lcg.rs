use crate::error::{invalid, Result};

use super::UniformSource;

const MULTIPLIER: u64 = 0x5_DEEC_E66D;
const INCREMENT: u64 = 0xB;
const MASK: u64 = (1 << 48) - 1;

/// 48-bit linear congruential generator, `state <- (a*state + c) mod 2^48`,
/// with the classic `a = 0x5DEECE66D`, `c = 0xB` constants.
///
/// Each step exposes only the top bits of the new state. The low-order bits
/// of the raw state are weak (bit `j` has period `2^(j+1)`), and 64-bit words
/// are spliced from two 32-bit outputs, so the low word of `next_u64` begins
/// at bit 16 of a state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lcg48 {
    state: u64,
}

impl Lcg48 {
    /// Seeds with the usual scramble: `state = (seed ^ a) mod 2^48`.
    pub fn new(seed: u64) -> Self {
        Lcg48 {
            state: (seed ^ MULTIPLIER) & MASK,
        }
    }

    /// Starts from an exact 48-bit state, bypassing the seed scramble.
    pub fn from_state(state: u64) -> Self {
        Lcg48 {
            state: state & MASK,
        }
    }

    pub fn state(&self) -> u64 {
        self.state
    }

    /// Advances one step and returns the new raw 48-bit state.
    #[inline]
    pub fn step(&mut self) -> u64 {
        self.state = MULTIPLIER.wrapping_mul(self.state).wrapping_add(INCREMENT) & MASK;
        self.state
    }

    /// Advances one step and returns the top `k` bits of the new state.
    pub fn next_bits(&mut self, k: u32) -> Result<u32> {
        if !(1..=32).contains(&k) {
            return Err(invalid(format!("next_bits: k = {k} outside 1..=32")));
        }
        Ok((self.step() >> (48 - k)) as u32)
    }

    #[inline]
    fn next_u32(&mut self) -> u64 {
        self.step() >> 16
    }
}

impl UniformSource for Lcg48 {
    /// High word from the first step, low word from the second.
    #[inline]
    fn next_u64(&mut self) -> u64 {
        let hi = self.next_u32();
        let lo = self.next_u32();
        (hi << 32) | lo
    }
}
