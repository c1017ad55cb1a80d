//! Compare two groups of signal files: per-file entropy, group statistics
//! and Hedges' g. Writes its own fixture files to a temporary directory.

use std::fs::File;
use std::io::BufWriter;

use dispen::analysis::group_compare;
use dispen::entropy::{DispersionParams, Method};
use dispen::signals::{gen_noise, write_signal, NoiseKind, Seed, SignalFormat};

fn main() -> dispen::Result<()> {
    let dir = std::env::temp_dir().join("dispen-group-compare");
    std::fs::create_dir_all(&dir).expect("temporary directory");
    let files = |kind: NoiseKind| {
        (0..5)
            .map(|k| {
                let path = dir.join(format!("{}-{k}.txt", kind.name()));
                let x = gen_noise(kind, 1000, Seed::DEFAULT.derive(k))?;
                write_signal(
                    &mut BufWriter::new(File::create(&path).expect("fixture")),
                    &x,
                )
                .expect("fixture");
                Ok(path)
            })
            .collect::<dispen::Result<Vec<_>>>()
    };
    let (pink, brown) = (files(NoiseKind::Pink)?, files(NoiseKind::Brown)?);
    let method = Method::DispEn(DispersionParams::dispen_default());
    let cmp = group_compare(&pink, &brown, SignalFormat::Plain, &method)?;
    cmp.write_csv(std::io::stdout().lock())?;
    eprintln!(
        "pink {:.3}±{:.3} vs brown {:.3}±{:.3}: g = {:.2}",
        cmp.a.mean, cmp.a.sd, cmp.b.mean, cmp.b.sd, cmp.hedges_g
    );
    Ok(())
}
