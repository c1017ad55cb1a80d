//! Forbidden patterns separate the chaotic logistic map from white noise,
//! and short records of either show spurious ("false") forbidden patterns.

use dispen::analysis::forbidden_fraction_of;
use dispen::entropy::{DispersionParams, Method};
use dispen::patterns::EmbeddingParams;
use dispen::signals::{gen_logistic, gen_noise, LogisticParams, NoiseKind, Seed};

fn main() -> dispen::Result<()> {
    let methods = [
        Method::DispEn(DispersionParams::dispen_default()),
        Method::FDispEn(DispersionParams::fdispen_default()),
        Method::PerEn(EmbeddingParams::new(4, 1)?),
    ];
    println!(
        "{:>7} {:<34} {:>9} {:>9}",
        "N", "patterns", "logistic", "white"
    );
    for n in [50, 200, 1000, 10_000] {
        let chaos = gen_logistic(&LogisticParams::fixed(4.0, n).with_burn_in(1000))?;
        let noise = gen_noise(NoiseKind::White, n, Seed::DEFAULT)?;
        for method in &methods {
            println!(
                "{n:>7} {:<34} {:>9.3} {:>9.3}",
                method.to_string(),
                forbidden_fraction_of(&chaos, method)?,
                forbidden_fraction_of(&noise, method)?
            );
        }
    }
    Ok(())
}
