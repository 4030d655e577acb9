//! Uniform sources: seeding, replay, splitting and scripted streams.

use gausszig::{parse_seed, Lcg48, ScriptedSource, SplitMix64, UniformSource};

fn main() -> gausszig::Result<()> {
    let seed = parse_seed("0x5EED")?;

    let mut lcg = Lcg48::new(seed);
    println!("lcg48 first 32-bit draw: {}", lcg.next_bits(32)? as i32);
    println!("lcg48 next u64:          {:#018x}", lcg.next_u64());

    let mut sm = SplitMix64::new(seed);
    let mut replay = sm.clone();
    let a: Vec<u64> = (0..3).map(|_| sm.next_u64()).collect();
    let b: Vec<u64> = (0..3).map(|_| replay.next_u64()).collect();
    assert_eq!(a, b);
    println!("splitmix first three:    {a:x?}");

    let mut child = sm.split();
    println!("split child gamma:       {:#018x}", child.gamma());
    println!("child / parent draw:     {:.6} / {:.6}", child.next_f64_unit(), sm.next_f64_unit());

    let mut scripted = ScriptedSource::from_reader("# two words\n0x1\n2\n".as_bytes())?;
    while let Ok(w) = scripted.try_next_u64() {
        println!("scripted word {} = {w}", scripted.cursor());
    }
    Ok(())
}
