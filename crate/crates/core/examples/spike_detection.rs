//! Sliding-window entropy over Gaussian noise with a single impulse.
//! Sigmoid-mapped DispEn and FDispEn dip around the impulse; PerEn and
//! sorting-mapped DispEn barely notice it.

use dispen::analysis::{windowed_entropy, WindowSpec};
use dispen::entropy::{DispersionParams, Method};
use dispen::mapping::MappingKind;
use dispen::patterns::EmbeddingParams;
use dispen::signals::{gen_spike_signal, Seed, SpikeParams};

fn main() -> dispen::Result<()> {
    let amp: f64 = std::env::args()
        .nth(1)
        .map_or(10.0, |a| a.parse().expect("amplitude"));
    let params = SpikeParams {
        spike_amp: amp,
        ..Default::default()
    };
    let x = gen_spike_signal(&params, Seed::DEFAULT)?;
    let spec = WindowSpec::new(100, 0.9)?;
    let methods = [
        Method::DispEn(DispersionParams::dispen_default()),
        Method::FDispEn(DispersionParams::fdispen_default()),
        Method::DispEn(DispersionParams::new(2, 6, 1, MappingKind::Sorting)),
        Method::PerEn(EmbeddingParams::new(4, 1)?),
    ];
    println!("impulse of amplitude {amp} at sample {}", params.spike_pos);
    for method in &methods {
        let values: Vec<f64> = windowed_entropy(&x, &spec, method)?
            .iter()
            .map(|w| w.value().unwrap_or(f64::NAN))
            .collect();
        let (w, min) = values
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .unwrap();
        let mut sorted = values.clone();
        sorted.sort_by(f64::total_cmp);
        let median = sorted[sorted.len() / 2];
        println!(
            "{:<34} min {min:.3} in window starting at {:>4}; median {median:.3}; ratio {:.3}",
            method.to_string(),
            w * spec.step() + 1,
            min / median
        );
    }
    Ok(())
}
