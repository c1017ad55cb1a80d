//! Sensitivity of windowed DispEn to additive noise on a logistic-map ramp:
//! NrmEntN per window at several signal-to-noise ratios.

use dispen::analysis::{nrm_ent_n, WindowSpec};
use dispen::entropy::{DispersionParams, Method};
use dispen::signals::{add_wgn_snr, gen_logistic, LogisticParams, Seed};

fn main() -> dispen::Result<()> {
    let clean = gen_logistic(&LogisticParams::default())?;
    let spec = WindowSpec::new(1500, 0.5)?;
    let method = Method::DispEn(DispersionParams::dispen_default());
    print!("{:>6}", "SNR");
    for w in 1..=spec.count(clean.len())? {
        print!("{w:>7}");
    }
    println!();
    for snr in [0.0, 10.0, 20.0, 30.0, 40.0, 50.0] {
        let noisy = add_wgn_snr(&clean, snr, Seed::DEFAULT)?;
        print!("{snr:>6}");
        for v in nrm_ent_n(&clean, &noisy, &spec, &method)? {
            match v {
                Some(v) => print!("{v:>7.3}"),
                None => print!("{:>7}", "NA"),
            }
        }
        println!();
    }
    Ok(())
}
