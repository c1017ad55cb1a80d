//! How the five amplitude-to-class mappings treat the same signal, and the
//! DispEn each one yields on white noise with an outlier.

use dispen::entropy::{dispen, DispersionParams};
use dispen::mapping::MappingKind;
use dispen::signals::{gen_noise, NoiseKind, Seed};

fn main() -> dispen::Result<()> {
    let x = [-2.0, -0.5, 0.0, 0.3, 0.9, 1.4, 6.0];
    println!("signal {x:?}, c = 4");
    for kind in MappingKind::ALL {
        println!("{:>8}: {:?}", kind.name(), kind.map(&x, 4)?.classes());
    }

    let mut noise = gen_noise(NoiseKind::White, 2000, Seed::DEFAULT)?.into_samples();
    noise[1000] = 25.0;
    println!("\nDispEn (m=2, c=6) of white noise with one outlier:");
    for kind in MappingKind::ALL {
        let r = dispen(&noise, &DispersionParams::new(2, 6, 1, kind))?;
        println!("{:>8}: {:.4}", kind.name(), r.normalized.unwrap());
    }
    Ok(())
}
