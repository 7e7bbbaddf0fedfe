//! Per-frame runtime benchmark.
//!
//! For every (algorithm, resolution) pair: build the runner and a
//! synthetic frame, run two untimed warm-ups (filling kernel caches, so
//! one-time setup stays out of the numbers), then time the apply path for
//! a fixed number of repetitions and report mean/std per frame. Frame
//! decode is excluded by construction: frames are in memory before the
//! clock starts. The enhancement rows include the RGB<->HSV conversions,
//! and say so in the `includes_colorspace` column.

use std::fmt;
use std::hint::black_box;
use std::str::FromStr;
use std::time::Instant;

use phase_stretch::{Page, PageParams, Pst, PstParams, Vevid, VevidParams};

use crate::error::CliError;
use crate::synth;

pub const CSV_HEADER: &str = "algorithm,width,height,frames,ms_mean,ms_std,includes_colorspace";

const WARMUP_RUNS: usize = 2;
pub const MIN_REPETITIONS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchAlgorithm {
    Pst,
    Page,
    Vevid,
    VevidLite,
}

impl BenchAlgorithm {
    pub const ALL: [BenchAlgorithm; 4] = [
        BenchAlgorithm::Pst,
        BenchAlgorithm::Page,
        BenchAlgorithm::Vevid,
        BenchAlgorithm::VevidLite,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BenchAlgorithm::Pst => "pst",
            BenchAlgorithm::Page => "page",
            BenchAlgorithm::Vevid => "vevid",
            BenchAlgorithm::VevidLite => "vevid-lite",
        }
    }

    pub fn includes_colorspace(self) -> bool {
        matches!(self, BenchAlgorithm::Vevid | BenchAlgorithm::VevidLite)
    }
}

impl FromStr for BenchAlgorithm {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "pst" => Ok(BenchAlgorithm::Pst),
            "page" => Ok(BenchAlgorithm::Page),
            "vevid" => Ok(BenchAlgorithm::Vevid),
            "vevid-lite" | "vevid_lite" => Ok(BenchAlgorithm::VevidLite),
            _ => Err(CliError::usage(format!(
                "unknown algorithm `{s}` (expected pst, page, vevid or vevid-lite)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Resolution {
    pub width: usize,
    pub height: usize,
}

impl Resolution {
    pub const P480: Resolution = Resolution {
        width: 854,
        height: 480,
    };
    pub const P1080: Resolution = Resolution {
        width: 1920,
        height: 1080,
    };
    pub const P4K: Resolution = Resolution {
        width: 3840,
        height: 2160,
    };

    /// The default sweep: 480p, 1080p, 4K.
    pub const DEFAULT_SWEEP: [Resolution; 3] = [Self::P480, Self::P1080, Self::P4K];

    pub fn pixels(self) -> usize {
        self.width * self.height
    }
}

impl FromStr for Resolution {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.to_ascii_lowercase().as_str() {
            "480p" => Ok(Self::P480),
            "720p" => Ok(Resolution {
                width: 1280,
                height: 720,
            }),
            "1080p" => Ok(Self::P1080),
            "2k" => Ok(Resolution {
                width: 2560,
                height: 1440,
            }),
            "4k" => Ok(Self::P4K),
            other => {
                let parsed = other.split_once('x').and_then(|(w, h)| {
                    Some(Resolution {
                        width: w.parse().ok()?,
                        height: h.parse().ok()?,
                    })
                });
                parsed
                    .filter(|r| r.width >= 2 && r.height >= 2)
                    .ok_or_else(|| {
                        CliError::usage(format!(
                            "unknown resolution `{s}` (expected 480p/720p/1080p/2k/4k or WxH)"
                        ))
                    })
            }
        }
    }
}

impl fmt::Display for Resolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.width, self.height)
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub algorithms: Vec<BenchAlgorithm>,
    pub resolutions: Vec<Resolution>,
    pub repetitions: usize,
    pub directions: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            algorithms: BenchAlgorithm::ALL.to_vec(),
            resolutions: Resolution::DEFAULT_SWEEP.to_vec(),
            repetitions: 5,
            directions: 8,
        }
    }
}

/// One CSV row: per-frame timing of an algorithm at a resolution.
#[derive(Debug, Clone)]
pub struct BenchRecord {
    pub algorithm: &'static str,
    pub width: usize,
    pub height: usize,
    pub frames: usize,
    pub ms_mean: f64,
    pub ms_std: f64,
    pub includes_colorspace: bool,
}

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{:.4},{:.4},{}",
            self.algorithm,
            self.width,
            self.height,
            self.frames,
            self.ms_mean,
            self.ms_std,
            self.includes_colorspace
        )
    }
}

/// Render records as the full CSV document.
pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for record in records {
        out.push_str(&record.csv_row());
        out.push('\n');
    }
    out
}

fn mean_std(samples: &[f64]) -> (f64, f64) {
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let var = samples
        .iter()
        .map(|s| (s - mean) * (s - mean))
        .sum::<f64>()
        / (n - 1.0);
    (mean, var.sqrt())
}

fn time_frames(repetitions: usize, mut run: impl FnMut()) -> (f64, f64) {
    for _ in 0..WARMUP_RUNS {
        run();
    }
    let samples: Vec<f64> = (0..repetitions)
        .map(|_| {
            let t0 = Instant::now();
            run();
            t0.elapsed().as_secs_f64() * 1e3
        })
        .collect();
    mean_std(&samples)
}

fn bench_one(
    algorithm: BenchAlgorithm,
    resolution: Resolution,
    repetitions: usize,
    directions: usize,
) -> Result<BenchRecord, CliError> {
    let (ms_mean, ms_std) = match algorithm {
        BenchAlgorithm::Pst => {
            let frame = synth::bench_gray_frame(resolution.width, resolution.height);
            let pst = Pst::new(PstParams::default())?;
            time_frames(repetitions, || {
                black_box(pst.analog(&frame).expect("bench frame is valid"));
            })
        }
        BenchAlgorithm::Page => {
            let frame = synth::bench_gray_frame(resolution.width, resolution.height);
            let page = Page::new(PageParams {
                directions,
                ..PageParams::default()
            })?;
            time_frames(repetitions, || {
                black_box(page.run(&frame).expect("bench frame is valid"));
            })
        }
        BenchAlgorithm::Vevid | BenchAlgorithm::VevidLite => {
            let frame = synth::bench_rgb_frame(resolution.width, resolution.height);
            let vevid = Vevid::new(VevidParams {
                lite: algorithm == BenchAlgorithm::VevidLite,
                ..VevidParams::default()
            })?;
            time_frames(repetitions, || {
                black_box(vevid.run(&frame).expect("bench frame is valid"));
            })
        }
    };
    Ok(BenchRecord {
        algorithm: algorithm.name(),
        width: resolution.width,
        height: resolution.height,
        frames: repetitions,
        ms_mean,
        ms_std,
        includes_colorspace: algorithm.includes_colorspace(),
    })
}

/// Run the benchmark matrix and return one record per
/// (algorithm, resolution), resolutions in the given order.
pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRecord>, CliError> {
    if config.repetitions < MIN_REPETITIONS {
        return Err(CliError::usage(format!(
            "--repetitions must be at least {MIN_REPETITIONS}, got {}",
            config.repetitions
        )));
    }
    if config.directions < 1 {
        return Err(CliError::usage("--directions must be at least 1"));
    }
    if config.algorithms.is_empty() || config.resolutions.is_empty() {
        return Err(CliError::usage(
            "benchmark needs at least one algorithm and one resolution",
        ));
    }
    let mut records = Vec::new();
    for &resolution in &config.resolutions {
        for &algorithm in &config.algorithms {
            records.push(bench_one(
                algorithm,
                resolution,
                config.repetitions,
                config.directions,
            )?);
        }
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn repetition_floor_is_enforced() {
        let config = BenchConfig {
            repetitions: 2,
            ..BenchConfig::default()
        };
        let err = run_bench(&config).unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert!(err.to_string().contains("repetitions"));
    }

    #[test]
    fn resolution_parsing() {
        assert_eq!(Resolution::from_str("480p").unwrap(), Resolution::P480);
        assert_eq!(
            Resolution::from_str("320x200").unwrap(),
            Resolution {
                width: 320,
                height: 200
            }
        );
        assert!(Resolution::from_str("tiny").is_err());
    }

    #[test]
    fn tiny_bench_produces_csv_rows() {
        let config = BenchConfig {
            algorithms: vec![BenchAlgorithm::VevidLite],
            resolutions: vec![Resolution {
                width: 64,
                height: 48,
            }],
            repetitions: 3,
            directions: 4,
        };
        let records = run_bench(&config).unwrap();
        assert_eq!(records.len(), 1);
        let record = &records[0];
        assert_eq!(record.algorithm, "vevid-lite");
        assert_eq!(record.frames, 3);
        assert!(record.ms_mean > 0.0);
        assert!(record.includes_colorspace);
        let csv = to_csv(&records);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        assert!(lines.next().unwrap().starts_with("vevid-lite,64,48,3,"));
    }
}
