use std::sync::Arc;

use crate::error::{Error, Result};
use crate::source::UniformSource;

use super::tables::{ZigguratTables, MANTISSA_BITS};
use super::ziggurat::{mantissa_to_f64, slow_path, with_sign};
use super::{GaussianSampler, SamplerId, ITERATION_GUARD};

/// Single-draw ziggurat, 256 layers by default.
///
/// The layer index is the low `log2(n)` bits of the draw, the sign the bit
/// just above it, and the mantissa the top 53 bits. A fast-path call consumes
/// exactly one word. Because the layer comes from the low end, this sampler
/// is only as good as the source's low-order bits.
#[derive(Debug, Clone)]
pub struct ModifiedZiggurat {
    tables: Arc<ZigguratTables>,
    sign_bit: u32,
    layer_mask: u64,
}

impl Default for ModifiedZiggurat {
    fn default() -> Self {
        Self::new()
    }
}

impl ModifiedZiggurat {
    pub const DEFAULT_LAYERS: usize = 256;

    pub fn new() -> Self {
        let tables = ZigguratTables::standard(Self::DEFAULT_LAYERS)
            .expect("256-layer tables always build");
        Self::with_tables(tables)
    }

    pub fn with_layers(n: usize) -> Result<Self> {
        Ok(Self::with_tables(ZigguratTables::standard(n)?))
    }

    pub fn with_tables(tables: Arc<ZigguratTables>) -> Self {
        ModifiedZiggurat {
            sign_bit: tables.index_bits(),
            layer_mask: tables.n() as u64 - 1,
            tables,
        }
    }

    pub fn tables(&self) -> &ZigguratTables {
        &self.tables
    }

    /// The layer a draw selects.
    #[inline]
    pub fn layer_of(&self, word: u64) -> usize {
        (word & self.layer_mask) as usize
    }

    pub fn compose_draw(&self, negative: bool, layer: usize, mantissa: u64) -> u64 {
        ((mantissa & ((1 << MANTISSA_BITS) - 1)) << (64 - MANTISSA_BITS))
            | ((negative as u64) << self.sign_bit)
            | (layer as u64 & self.layer_mask)
    }

    #[inline]
    pub fn decode(&self, word: u64) -> (bool, usize, u64) {
        (
            (word >> self.sign_bit) & 1 != 0,
            self.layer_of(word),
            word >> (64 - MANTISSA_BITS),
        )
    }
}

impl GaussianSampler for ModifiedZiggurat {
    fn id(&self) -> SamplerId {
        SamplerId::ModifiedZiggurat
    }

    #[inline]
    fn try_next_gaussian<S: UniformSource + ?Sized>(&mut self, src: &mut S) -> Result<f64> {
        let t = &*self.tables;
        for _ in 0..ITERATION_GUARD {
            let word = src.next_u64();
            let sign = ((word >> self.sign_bit) & 1) << 63;
            let layer = (word & self.layer_mask) as usize;
            let m = word >> (64 - MANTISSA_BITS);
            let x = mantissa_to_f64(m) * t.wtab()[layer];
            if m < t.ktab()[layer] {
                return Ok(with_sign(x, sign));
            }
            if let Some(z) = slow_path(t, src, layer, x)? {
                return Ok(with_sign(z, sign));
            }
        }
        Err(Error::IterationGuard {
            sampler: "modified-ziggurat",
            iterations: ITERATION_GUARD,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::source::{ScriptedSource, SplitMix64};

    #[test]
    fn fast_path_consumes_one_word() {
        let mut mz = ModifiedZiggurat::new();
        let m = mz.tables().ktab()[200] / 2;
        let word = mz.compose_draw(true, 200, m);
        assert_eq!(mz.decode(word), (true, 200, m));
        let mut src = ScriptedSource::new(vec![word, 0xDEAD]);
        let z = mz.next_gaussian(&mut src);
        assert_eq!(src.cursor(), 1);
        assert_eq!(z, -(m as f64 * mz.tables().wtab()[200]));
    }

    #[test]
    fn layer_comes_from_low_bits() {
        let mz = ModifiedZiggurat::new();
        for layer in 0..256 {
            assert_eq!(mz.layer_of(0xFFFF_FFFF_FFFF_FF00 | layer as u64), layer);
        }
    }

    #[test]
    fn layout_fields_are_disjoint() {
        let mz = ModifiedZiggurat::new();
        let mut rng = SplitMix64::new(8);
        for _ in 0..10_000 {
            let w = rng.next_u64();
            let (neg, layer, m) = mz.decode(w);
            let back = mz.compose_draw(neg, layer, m);
            // bits 9 and 10 are unused
            assert_eq!(back, w & !(0b11 << 9));
        }
    }

    #[test]
    fn tail_branch_from_base_layer() {
        let mut mz = ModifiedZiggurat::new();
        let r = mz.tables().r();
        let word = mz.compose_draw(false, 0, (1 << 53) - 1);
        let mut rng = SplitMix64::new(4);
        let mut script = vec![word];
        script.extend((0..64).map(|_| rng.next_u64()));
        let z = mz.next_gaussian(&mut ScriptedSource::new(script));
        assert!(z > r);
    }
}
