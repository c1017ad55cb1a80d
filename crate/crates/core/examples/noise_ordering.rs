//! White, pink and brown noise ranked by DispEn, FDispEn and PerEn.

use dispen::analysis::{noise_entropies, Summary};
use dispen::entropy::{DispersionParams, Method};
use dispen::patterns::EmbeddingParams;
use dispen::signals::{NoiseKind, Seed};

fn main() -> dispen::Result<()> {
    let methods = [
        Method::DispEn(DispersionParams::dispen_default()),
        Method::FDispEn(DispersionParams::fdispen_default()),
        Method::PerEn(EmbeddingParams::new(4, 1)?),
    ];
    println!("mean ± SD over 40 realizations, N = 1000");
    for method in &methods {
        print!("{:<32}", method.to_string());
        for kind in NoiseKind::ALL {
            let s = Summary::of(noise_entropies(kind, 1000, 40, Seed::DEFAULT, method)?);
            print!(
                "  {} {:.3}±{:.3}",
                kind.name(),
                s.mean.unwrap(),
                s.sd.unwrap()
            );
        }
        println!();
    }
    Ok(())
}
