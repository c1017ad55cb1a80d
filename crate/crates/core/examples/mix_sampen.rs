//! DispEn against SampEn on the MIX process: entropy along a randomness-to-
//! order ramp, and the spread of estimates at fixed p.

use dispen::analysis::{cv, Registry};
use dispen::entropy::{DispersionParams, Method, SampEnParams};
use dispen::mapping::MappingKind;
use dispen::signals::{gen_mix, MixParams, Seed};

fn main() -> dispen::Result<()> {
    let x = gen_mix(&MixParams::ramp(0.99, 0.01, 15_000), Seed::DEFAULT)?;
    let dispen = Method::DispEn(DispersionParams::new(2, 6, 1, MappingKind::LogSig));
    let sampen = Method::SampEn(SampEnParams::new(2, 0.2));
    println!("segment      p   DispEn  SampEn");
    for (k, seg) in x.chunks(1500).enumerate() {
        let p = 0.99 - 0.98 * (k as f64 * 1500.0 + 750.0) / 15_000.0;
        println!(
            "{k:>7} {p:>6.2} {:>8.4} {:>7.4}",
            dispen.compute(seg)?.value(),
            sampen.compute(seg)?.value()
        );
    }

    let cfg = Registry::builtin().table2;
    println!(
        "\nCV over {} realizations of MIX(p = {}), N = {}",
        cfg.realizations, cfg.p, cfg.n
    );
    for method in [dispen, sampen] {
        let values: Vec<f64> = (0..cfg.realizations as u64)
            .map(|r| {
                let x = gen_mix(&MixParams::constant(cfg.p, cfg.n), Seed(cfg.seed).derive(r))?;
                Ok(method.compute(&x)?.value())
            })
            .collect::<dispen::Result<_>>()?;
        println!("{:<34} {:.4}", method.to_string(), cv(&values)?);
    }
    Ok(())
}
