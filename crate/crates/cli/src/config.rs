//! Run configuration: TOML file with sections, overridable by flags.
//!
//! Unknown keys are rejected, every validation failure names the offending
//! key, and omitted values fall back to the built-in defaults (the
//! conductor-37 / conductor-43 reference pair, `x_max = 10^6`).

use std::path::{Path, PathBuf};

use cstlab::density::IntervalSpec;
use cstlab::ec::EllipticCurveQ;
use cstlab::error::Error;

#[derive(Debug, serde::Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    curves: Option<CurvesSection>,
    sweep: Option<SweepSection>,
    experiment: Option<ExperimentSection>,
    output: Option<OutputSection>,
}

#[derive(Debug, serde::Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct CurvesSection {
    curve1: Option<[i64; 5]>,
    curve2: Option<[i64; 5]>,
}

#[derive(Debug, serde::Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct SweepSection {
    x_max: Option<u64>,
    seed: Option<u64>,
    threads: Option<usize>,
    crossover: Option<u64>,
}

#[derive(Debug, serde::Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct ExperimentSection {
    t_list: Option<Vec<i64>>,
    m_list: Option<Vec<u64>>,
    intervals: Option<Vec<[f64; 2]>>,
    #[serde(rename = "m_A")]
    m_a: Option<u64>,
    cutoff: Option<u64>,
}

#[derive(Debug, serde::Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct OutputSection {
    cache: Option<PathBuf>,
}

/// Flag-level overrides collected by the CLI; every field beats the file.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub curve1: Option<String>,
    pub curve2: Option<String>,
    pub xmax: Option<u64>,
    pub t: Option<String>,
    pub m: Option<String>,
    pub intervals: Vec<String>,
    pub m_a: Option<u64>,
    pub cutoff: Option<u64>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
}

/// Fully resolved and validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub curve1: EllipticCurveQ,
    pub curve2: EllipticCurveQ,
    pub x_max: u64,
    pub t_list: Vec<i64>,
    pub m_list: Vec<u64>,
    pub intervals: Vec<IntervalSpec>,
    pub m_a: u64,
    pub cutoff: u64,
    pub seed: u64,
    pub threads: usize,
    pub crossover: u64,
    pub cache_path: PathBuf,
}

impl RunConfig {
    pub fn surface_pair(&self) -> cstlab::ec::SurfacePair {
        cstlab::ec::SurfacePair::new(self.curve1.clone(), self.curve2.clone())
    }

    pub fn sweep_config(&self) -> cstlab::ec::SweepConfig {
        cstlab::ec::SweepConfig {
            crossover: self.crossover,
            seed: self.seed,
            threads: self.threads,
        }
    }
}

fn parse_i64_list(s: &str, key: &str) -> Result<Vec<i64>, Error> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("{key}: bad integer `{part}`")))
        })
        .collect()
}

fn parse_u64_list(s: &str, key: &str) -> Result<Vec<u64>, Error> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("{key}: bad integer `{part}`")))
        })
        .collect()
}

fn parse_interval_flag(s: &str) -> Result<[f64; 2], Error> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(Error::InvalidInput(format!(
            "interval: expected `lo,hi`, got `{s}`"
        )));
    }
    let lo = parts[0]
        .parse()
        .map_err(|_| Error::InvalidInput(format!("interval: bad number `{}`", parts[0])))?;
    let hi = parts[1]
        .parse()
        .map_err(|_| Error::InvalidInput(format!("interval: bad number `{}`", parts[1])))?;
    Ok([lo, hi])
}

/// Loads, merges, and validates the configuration.
pub fn parse_config(path: Option<&Path>, ov: &Overrides) -> Result<RunConfig, Error> {
    let file: FileConfig = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Io {
                path: p.display().to_string(),
                source: e,
            })?;
            toml::from_str(&text)
                .map_err(|e| Error::InvalidInput(format!("config {}: {e}", p.display())))?
        }
        None => FileConfig::default(),
    };

    let curves = file.curves.unwrap_or_default();
    let sweep = file.sweep.unwrap_or_default();
    let experiment = file.experiment.unwrap_or_default();
    let output = file.output.unwrap_or_default();

    let curve1 = match &ov.curve1 {
        Some(s) => EllipticCurveQ::parse(s)
            .map_err(|e| Error::InvalidInput(format!("curve1: {e}")))?,
        None => {
            let c = curves.curve1.unwrap_or([0, 0, 1, -1, 0]);
            EllipticCurveQ::new(c[0], c[1], c[2], c[3], c[4])
                .map_err(|e| Error::InvalidInput(format!("curve1: {e}")))?
        }
    };
    let curve2 = match &ov.curve2 {
        Some(s) => EllipticCurveQ::parse(s)
            .map_err(|e| Error::InvalidInput(format!("curve2: {e}")))?,
        None => {
            let c = curves.curve2.unwrap_or([0, 1, 1, 0, 0]);
            EllipticCurveQ::new(c[0], c[1], c[2], c[3], c[4])
                .map_err(|e| Error::InvalidInput(format!("curve2: {e}")))?
        }
    };

    let x_max = ov.xmax.or(sweep.x_max).unwrap_or(1_000_000);
    if x_max < 2 {
        return Err(Error::InvalidInput(format!(
            "x_max: must be >= 2, got {x_max}"
        )));
    }

    let t_list = match &ov.t {
        Some(s) => parse_i64_list(s, "t")?,
        None => experiment.t_list.unwrap_or_else(|| vec![1]),
    };
    if t_list.is_empty() {
        return Err(Error::InvalidInput("t_list: must be nonempty".into()));
    }
    for &t in &t_list {
        if t == 0 {
            return Err(Error::InvalidInput(
                "t_list: t = 0 rejected; the local constants require t in Z \\ {0}".into(),
            ));
        }
    }

    let m_list = match &ov.m {
        Some(s) => parse_u64_list(s, "m")?,
        None => experiment.m_list.unwrap_or_else(|| vec![2]),
    };
    for &m in &m_list {
        if m == 0 {
            return Err(Error::InvalidInput("m_list: m must be >= 1".into()));
        }
    }

    let raw_intervals: Vec<[f64; 2]> = if !ov.intervals.is_empty() {
        ov.intervals
            .iter()
            .map(|s| parse_interval_flag(s))
            .collect::<Result<_, _>>()?
    } else {
        experiment
            .intervals
            .unwrap_or_else(|| vec![[-0.25, 0.25]])
    };
    let intervals: Vec<IntervalSpec> = raw_intervals
        .iter()
        .map(|&[lo, hi]| {
            IntervalSpec::new(lo, hi)
                .map_err(|e| Error::InvalidInput(format!("intervals: {e}")))
        })
        .collect::<Result<_, _>>()?;

    let m_a = ov.m_a.or(experiment.m_a).unwrap_or(1);
    if m_a == 0 {
        return Err(Error::InvalidInput("m_A: must be >= 1".into()));
    }
    let cutoff = ov.cutoff.or(experiment.cutoff).unwrap_or(10_000);
    if cutoff < 2 {
        return Err(Error::InvalidInput("cutoff: must be >= 2".into()));
    }

    Ok(RunConfig {
        curve1,
        curve2,
        x_max,
        t_list,
        m_list,
        intervals,
        m_a,
        cutoff,
        seed: ov.seed.or(sweep.seed).unwrap_or(0),
        threads: ov.threads.or(sweep.threads).unwrap_or(0),
        crossover: sweep.crossover.unwrap_or(cstlab::ec::DEFAULT_CROSSOVER),
        cache_path: output.cache.unwrap_or_else(|| PathBuf::from("traces.csv")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_without_file() {
        let cfg = parse_config(None, &Overrides::default()).unwrap();
        assert_eq!(cfg.curve1.coefficients(), [0, 0, 1, -1, 0]);
        assert_eq!(cfg.curve2.coefficients(), [0, 1, 1, 0, 0]);
        assert_eq!(cfg.x_max, 1_000_000);
        assert_eq!(cfg.m_a, 1);
        assert_eq!(cfg.seed, 0);
        assert_eq!(cfg.cutoff, 10_000);
    }

    #[test]
    fn minimal_file_applies_defaults() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.toml");
        std::fs::write(
            &path,
            "[curves]\ncurve1 = [0,0,1,-1,0]\ncurve2 = [0,1,1,0,0]\n[sweep]\nx_max = 5000\n",
        )
        .unwrap();
        let cfg = parse_config(Some(&path), &Overrides::default()).unwrap();
        assert_eq!(cfg.x_max, 5000);
        assert_eq!(cfg.m_a, 1);
        assert_eq!(cfg.seed, 0);
    }

    #[test]
    fn unknown_key_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.toml");
        std::fs::write(&path, "[sweep]\nx_max = 5000\nbogus_key = 3\n").unwrap();
        let err = parse_config(Some(&path), &Overrides::default()).unwrap_err();
        assert!(err.to_string().contains("bogus_key"), "{err}");
    }

    #[test]
    fn t_zero_rejected_with_citation() {
        let ov = Overrides {
            t: Some("1,0,2".into()),
            ..Default::default()
        };
        let err = parse_config(None, &ov).unwrap_err();
        assert!(err.to_string().contains("t in Z \\ {0}"), "{err}");
    }

    #[test]
    fn bad_interval_rejected() {
        let ov = Overrides {
            intervals: vec!["0.5,0.2".into()],
            ..Default::default()
        };
        let err = parse_config(None, &ov).unwrap_err();
        assert!(err.to_string().contains("lo > hi"), "{err}");
    }

    #[test]
    fn singular_curve_rejected() {
        let ov = Overrides {
            curve1: Some("0,0,0,0,0".into()),
            ..Default::default()
        };
        let err = parse_config(None, &ov).unwrap_err();
        assert!(err.to_string().contains("curve1"), "{err}");
    }

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.toml");
        std::fs::write(&path, "[sweep]\nx_max = 5000\nseed = 9\n").unwrap();
        let ov = Overrides {
            xmax: Some(777),
            ..Default::default()
        };
        let cfg = parse_config(Some(&path), &ov).unwrap();
        assert_eq!(cfg.x_max, 777);
        assert_eq!(cfg.seed, 9);
    }
}
