use std::io::Write;
use std::path::{Path, PathBuf};

use crate::entropy::Method;
use crate::signals::{load_signal, SignalFormat};
use crate::stats::{mean, median, population_sd};
use crate::{Error, Result};

use super::summary::hedges_g;

/// Entropy of one input file.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalEntropy {
    pub group: &'static str,
    pub path: PathBuf,
    pub value: f64,
}

/// Descriptive statistics of one group (population SD).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupSummary {
    pub n: usize,
    pub mean: f64,
    pub median: f64,
    pub sd: f64,
}

impl GroupSummary {
    fn of(values: &[f64]) -> Self {
        GroupSummary {
            n: values.len(),
            mean: mean(values),
            median: median(values),
            sd: population_sd(values),
        }
    }
}

#[derive(Debug)]
pub struct GroupComparison {
    pub method: Method,
    pub signals: Vec<SignalEntropy>,
    /// Files that could not be read or analysed, with the reason.
    pub skipped: Vec<(PathBuf, String)>,
    pub a: GroupSummary,
    pub b: GroupSummary,
    pub hedges_g: f64,
}

fn evaluate(
    group: &'static str,
    files: &[PathBuf],
    format: SignalFormat,
    method: &Method,
    signals: &mut Vec<SignalEntropy>,
    skipped: &mut Vec<(PathBuf, String)>,
) -> Vec<f64> {
    let mut values = Vec::new();
    for path in files {
        let outcome = load_signal(path, format).and_then(|x| method.compute(&x));
        match outcome {
            Ok(r) => {
                values.push(r.value());
                signals.push(SignalEntropy {
                    group,
                    path: path.clone(),
                    value: r.value(),
                });
            }
            Err(e) => skipped.push((path.clone(), e.to_string())),
        }
    }
    values
}

/// Entropy of every file in two groups, group statistics and Hedges' g
/// (group A relative to group B). Unreadable files are skipped and reported;
/// each group still needs at least two usable signals.
pub fn group_compare<P: AsRef<Path>>(
    files_a: &[P],
    files_b: &[P],
    format: SignalFormat,
    method: &Method,
) -> Result<GroupComparison> {
    let to_paths = |files: &[P]| {
        files
            .iter()
            .map(|p| p.as_ref().to_path_buf())
            .collect::<Vec<_>>()
    };
    let (files_a, files_b) = (to_paths(files_a), to_paths(files_b));
    for files in [&files_a, &files_b] {
        if files.len() < 2 {
            return Err(Error::GroupTooSmall(files.len()));
        }
    }
    let mut signals = Vec::new();
    let mut skipped = Vec::new();
    let a = evaluate("A", &files_a, format, method, &mut signals, &mut skipped);
    let b = evaluate("B", &files_b, format, method, &mut signals, &mut skipped);
    for values in [&a, &b] {
        if values.len() < 2 {
            return Err(Error::GroupTooSmall(values.len()));
        }
    }
    Ok(GroupComparison {
        method: *method,
        hedges_g: hedges_g(&a, &b)?,
        a: GroupSummary::of(&a),
        b: GroupSummary::of(&b),
        signals,
        skipped,
    })
}

impl GroupComparison {
    /// Long-format CSV: `record,group,path,value`. Records are `signal` (one
    /// per file), `n`, `mean`, `median`, `sd` per group, and `hedges_g`.
    pub fn write_csv(&self, out: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["record", "group", "path", "value"])?;
        for s in &self.signals {
            w.write_record([
                "signal",
                s.group,
                &s.path.display().to_string(),
                &s.value.to_string(),
            ])?;
        }
        for (group, summary) in [("A", &self.a), ("B", &self.b)] {
            w.write_record(["n", group, "", &summary.n.to_string()])?;
            w.write_record(["mean", group, "", &summary.mean.to_string()])?;
            w.write_record(["median", group, "", &summary.median.to_string()])?;
            w.write_record(["sd", group, "", &summary.sd.to_string()])?;
        }
        w.write_record(["hedges_g", "A-B", "", &self.hedges_g.to_string()])?;
        w.flush().map_err(|source| Error::Io {
            path: "<csv output>".into(),
            source,
        })?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::DispersionParams;
    use crate::signals::{gen_noise, write_signal, NoiseKind, Seed};
    use std::fs;

    fn write_noise(dir: &Path, kind: NoiseKind, count: usize) -> Vec<PathBuf> {
        (0..count)
            .map(|i| {
                let path = dir.join(format!("{kind}_{i}.txt"));
                let x = gen_noise(kind, 1000, Seed(99).derive(i as u64)).unwrap();
                write_signal(&mut fs::File::create(&path).unwrap(), &x).unwrap();
                path
            })
            .collect()
    }

    #[test]
    fn white_versus_brown() {
        let dir = tempfile::tempdir().unwrap();
        let white = write_noise(dir.path(), NoiseKind::White, 5);
        let brown = write_noise(dir.path(), NoiseKind::Brown, 5);
        let method = Method::DispEn(DispersionParams::dispen_default());
        let cmp = group_compare(&white, &brown, SignalFormat::Plain, &method).unwrap();
        assert!(cmp.hedges_g > 2.0, "{}", cmp.hedges_g);
        assert!(cmp.a.mean > cmp.b.mean);
        assert_eq!(cmp.signals.len(), 10);

        let same = group_compare(&white, &white, SignalFormat::Plain, &method).unwrap();
        assert_eq!(same.hedges_g, 0.0);

        let mut buf = Vec::new();
        cmp.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("record,group,path,value\n"));
        assert_eq!(
            text.lines().filter(|l| l.starts_with("signal,")).count(),
            10
        );
        assert!(text.lines().any(|l| l.starts_with("hedges_g,A-B,,")));
    }

    #[test]
    fn skips_unreadable_and_enforces_group_size() {
        let dir = tempfile::tempdir().unwrap();
        let mut white = write_noise(dir.path(), NoiseKind::White, 3);
        let brown = write_noise(dir.path(), NoiseKind::Brown, 3);
        let method = Method::DispEn(DispersionParams::dispen_default());

        white.push(dir.path().join("missing.txt"));
        let cmp = group_compare(&white, &brown, SignalFormat::Plain, &method).unwrap();
        assert_eq!(cmp.skipped.len(), 1);
        assert!(cmp.skipped[0].0.ends_with("missing.txt"));

        let err = group_compare(&white[..1], &brown, SignalFormat::Plain, &method).unwrap_err();
        assert!(matches!(err, Error::GroupTooSmall(1)));
        assert!(err.to_string().contains("group too small"));

        let broken = vec![white[0].clone(), dir.path().join("gone.txt")];
        assert!(matches!(
            group_compare(&broken, &brown, SignalFormat::Plain, &method),
            Err(Error::GroupTooSmall(1))
        ));
    }
}
