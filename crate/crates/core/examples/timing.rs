//! Wall-clock cost of DispEn, FDispEn and PerEn against signal length.
//! Build with `--release` for meaningful numbers.

use dispen::analysis::time_method;
use dispen::entropy::{DispersionParams, Method};
use dispen::mapping::MappingKind;
use dispen::patterns::EmbeddingParams;
use dispen::signals::{gen_noise, NoiseKind, Seed};

fn main() -> dispen::Result<()> {
    let m = 5;
    let methods = [
        Method::DispEn(DispersionParams::new(m, 6, 1, MappingKind::LogSig)),
        Method::FDispEn(DispersionParams::new(m, 5, 1, MappingKind::LogSig)),
        Method::PerEn(EmbeddingParams::new(m, 1)?),
    ];
    println!("median of 5 runs, m = {m}");
    for n in [1000, 10_000, 100_000, 300_000] {
        let x = gen_noise(NoiseKind::White, n, Seed::DEFAULT)?;
        print!("N = {n:>6}");
        for method in &methods {
            let (secs, _) = time_method(&x, method, 5)?;
            print!("  {} {:>9.6} s", method.name(), secs);
        }
        println!();
    }
    Ok(())
}
