//! Draws from each Gaussian sampler and rescales with `gaussian_affine`.

use gausszig::{
    gaussian_affine, is_sanctioned, AnySampler, GaussianSampler, SamplerId, SourceId, SplitMix64,
};

fn main() -> gausszig::Result<()> {
    for id in SamplerId::ALL {
        let mut src = SplitMix64::new(42);
        let mut g = AnySampler::new(id);
        let xs: Vec<f64> = (0..5).map(|_| g.next_gaussian(&mut src)).collect();
        println!("{id:>18}: {xs:+.4?}");
    }

    let mut src = SplitMix64::new(42);
    let mut zig = AnySampler::new(SamplerId::Ziggurat);
    let height = gaussian_affine(&mut src, &mut zig, 170.0, 7.5)?;
    println!("N(170, 7.5^2) draw: {height:.2}");

    for source in SourceId::SEEDED {
        for sampler in SamplerId::ALL {
            if !is_sanctioned(source, sampler) {
                println!("refused pairing: {source} + {sampler}");
            }
        }
    }
    Ok(())
}
