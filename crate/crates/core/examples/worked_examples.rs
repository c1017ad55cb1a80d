//! The two hand-worked examples: DispEn of a ten-sample signal and FDispEn
//! of another, with every intermediate step printed.

use dispen::entropy::{dispen, fdispen, DispersionParams};
use dispen::mapping::{map_linear, MappingKind};
use dispen::patterns::{
    dispersion_histogram, encode_dispersion, encode_freq_dispersion, EmbeddingParams,
};

fn main() -> dispen::Result<()> {
    let x = [3.6, 4.2, 1.2, 3.1, 4.2, 2.1, 3.3, 4.6, 6.8, 8.4];
    let u = map_linear(&x, 3)?;
    let emb = EmbeddingParams::new(2, 1)?;
    println!("signal   {x:?}");
    println!("classes  {:?}", u.classes());
    let patterns: Vec<_> = encode_dispersion(&u, &emb)?
        .iter()
        .map(|p| p.digits(2, 3))
        .collect();
    println!("patterns {patterns:?}");
    let hist = dispersion_histogram(&u, &emb)?;
    for (code, count) in hist.occupied() {
        println!(
            "  {:?}: {count}/{}",
            dispen::patterns::DispersionPattern(code).digits(2, 3),
            hist.total()
        );
    }
    let r = dispen(&x, &DispersionParams::new(2, 3, 1, MappingKind::Linear))?;
    println!(
        "DispEn = {:.4} (normalized {:.4})\n",
        r.raw,
        r.normalized.unwrap()
    );

    let x = [3.0, 4.5, 6.2, 5.1, 3.2, 1.2, 3.5, 5.6, 4.9, 8.4];
    let u = map_linear(&x, 2)?;
    println!("signal      {x:?}");
    println!("classes     {:?}", u.classes());
    let diffs: Vec<_> = encode_freq_dispersion(&u, &EmbeddingParams::new(3, 1)?)?
        .iter()
        .map(|p| p.differences(3, 2))
        .collect();
    println!("differences {diffs:?}");
    let r = fdispen(&x, &DispersionParams::new(3, 2, 1, MappingKind::Linear))?;
    println!(
        "FDispEn = {:.4} (normalized {:.4})",
        r.raw,
        r.normalized.unwrap()
    );
    Ok(())
}
