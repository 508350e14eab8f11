//! Timing sweeps over matrix size and growth-rate fits that separate the
//! polynomial norms from the exponential ones.

use std::io::Write;
use std::time::{Duration, Instant};

use crate::dense::{Matrix, NormIndex};
use crate::error::{Error, Result};
use crate::norms::{induced_norm_with, NormOptions, NormPair};
use crate::rng::random_matrix;

pub const MIN_REPS: usize = 3;
pub const MIN_FIT_POINTS: usize = 5;

pub const CSV_HEADER: [&str; 6] = ["pair", "n", "m", "reps", "median_seconds", "seed"];

/// Median wall time of one norm evaluation at one size.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub pair: NormPair,
    pub n: usize,
    pub m: usize,
    pub reps: usize,
    pub median_seconds: f64,
    pub seed: u64,
}

impl BenchRecord {
    pub fn new(
        pair: NormPair,
        n: usize,
        m: usize,
        reps: usize,
        median_seconds: f64,
        seed: u64,
    ) -> Result<Self> {
        if reps < MIN_REPS {
            return Err(Error::Unsupported(format!(
                "benchmark records need at least {MIN_REPS} repetitions, got {reps}"
            )));
        }
        if !(median_seconds > 0.0 && median_seconds.is_finite()) {
            return Err(Error::Unsupported(format!(
                "median time must be positive, got {median_seconds}"
            )));
        }
        Ok(BenchRecord {
            pair,
            n,
            m,
            reps,
            median_seconds,
            seed,
        })
    }

    /// Size driving the pair's cost: `m` for `(2,1)`, `n` otherwise.
    pub fn driving_size(&self) -> usize {
        if self.pair == NormPair::new(NormIndex::Two, NormIndex::One) {
            self.m
        } else {
            self.n
        }
    }
}

/// Row count as a function of the column count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowRule {
    Square,
    Fixed(usize),
}

impl RowRule {
    pub fn rows_for(&self, n: usize) -> usize {
        match *self {
            RowRule::Square => n,
            RowRule::Fixed(m) => m,
        }
    }
}

impl std::str::FromStr for RowRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "square" => Ok(RowRule::Square),
            t => match t.parse::<usize>() {
                Ok(m) if m > 0 => Ok(RowRule::Fixed(m)),
                _ => Err(Error::Unsupported(format!(
                    "row rule {t:?} (expected `square` or a positive row count)"
                ))),
            },
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub pair: NormPair,
    pub n_min: usize,
    pub n_max: usize,
    pub rows: RowRule,
    pub reps: usize,
    pub seed: u64,
    pub threads: usize,
    /// Each repetition loops the evaluation until at least this much time
    /// has passed, then reports the per-call average.
    pub min_rep_time: Duration,
}

impl BenchConfig {
    pub fn new(pair: NormPair, n_min: usize, n_max: usize, reps: usize, seed: u64) -> Self {
        BenchConfig {
            pair,
            n_min,
            n_max,
            rows: RowRule::Square,
            reps,
            seed,
            threads: 1,
            min_rep_time: Duration::from_micros(500),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum BenchEntry {
    Record(BenchRecord),
    Skipped { n: usize, m: usize, reason: String },
}

fn median(xs: &mut [f64]) -> f64 {
    xs.sort_by(f64::total_cmp);
    let k = xs.len();
    if k % 2 == 1 {
        xs[k / 2]
    } else {
        0.5 * (xs[k / 2 - 1] + xs[k / 2])
    }
}

fn time_once(a: &Matrix, cfg: &BenchConfig, opts: &NormOptions, calls: usize) -> Result<f64> {
    let start = Instant::now();
    for _ in 0..calls {
        std::hint::black_box(induced_norm_with(std::hint::black_box(a), cfg.pair, opts)?);
    }
    Ok(start.elapsed().as_secs_f64() / calls as f64)
}

/// Times one size: a discarded warmup that also picks the batch length, then
/// `reps` timed batches.
pub fn bench_size(a: &Matrix, cfg: &BenchConfig) -> Result<f64> {
    let opts = NormOptions {
        force: false,
        threads: cfg.threads,
    };
    let warm = time_once(a, cfg, &opts, 1)?;
    let target = cfg.min_rep_time.as_secs_f64();
    let calls = if warm >= target {
        1
    } else {
        ((target / warm.max(1e-9)).ceil() as usize).clamp(1, 1_000_000)
    };
    let mut samples = Vec::with_capacity(cfg.reps);
    for _ in 0..cfg.reps {
        samples.push(time_once(a, cfg, &opts, calls)?);
    }
    Ok(median(&mut samples).max(f64::MIN_POSITIVE))
}

/// Runs the sweep `n = n_min..=n_max`. Sizes that trip the enumeration guard
/// become [`BenchEntry::Skipped`].
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchEntry>> {
    if cfg.reps < MIN_REPS {
        return Err(Error::Unsupported(format!(
            "benchmark needs at least {MIN_REPS} repetitions, got {}",
            cfg.reps
        )));
    }
    if cfg.n_min == 0 || cfg.n_min > cfg.n_max {
        return Err(Error::Unsupported(format!(
            "size range {}..={} is empty or starts at zero",
            cfg.n_min, cfg.n_max
        )));
    }
    let mut out = Vec::new();
    for n in cfg.n_min..=cfg.n_max {
        let m = cfg.rows.rows_for(n);
        let a = random_matrix(cfg.seed, m, n);
        match bench_size(&a, cfg) {
            Ok(t) => out.push(BenchEntry::Record(BenchRecord::new(
                cfg.pair, n, m, cfg.reps, t, cfg.seed,
            )?)),
            Err(e @ Error::GuardExceeded { .. }) => out.push(BenchEntry::Skipped {
                n,
                m,
                reason: e.to_string(),
            }),
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.pair.to_string(),
            r.n.to_string(),
            r.m.to_string(),
            r.reps.to_string(),
            crate::io::format_g17(r.median_seconds),
            r.seed.to_string(),
        ])?;
    }
    w.flush()
}

pub fn read_csv(text: &str) -> Result<Vec<BenchRecord>> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let bad = |line: usize, message: String| Error::Parse {
        line,
        column: 1,
        message,
    };
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| bad(line, e.to_string()))?;
        if rec.len() != CSV_HEADER.len() {
            return Err(bad(line, format!("expected {} fields", CSV_HEADER.len())));
        }
        let num = |k: usize| -> Result<u64> {
            rec[k].parse().map_err(|_| bad(line, format!("bad integer {:?}", &rec[k])))
        };
        let secs: f64 = rec[4]
            .parse()
            .map_err(|_| bad(line, format!("bad time {:?}", &rec[4])))?;
        out.push(BenchRecord::new(
            rec[0].parse()?,
            num(1)? as usize,
            num(2)? as usize,
            num(3)? as usize,
            secs,
            num(5)?,
        )?);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthModel {
    /// `log₂ t = slope·size + intercept`.
    Exponential,
    /// `log₂ t = slope·log₂ size + intercept`.
    Polynomial,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthFit {
    pub pair: NormPair,
    pub model: GrowthModel,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = my - slope * mx;
    let ss_tot: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - slope * x - intercept).powi(2))
        .sum();
    let r2 = if ss_tot <= 1e-24 * (1.0 + my * my) * k {
        1.0
    } else {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    };
    (slope, intercept, r2)
}

fn fit_points(records: &[BenchRecord]) -> Result<(NormPair, Vec<f64>, Vec<f64>)> {
    let pair = records
        .first()
        .ok_or(Error::InsufficientData {
            needed: MIN_FIT_POINTS,
            found: 0,
        })?
        .pair;
    if records.iter().any(|r| r.pair != pair) {
        return Err(Error::Unsupported("growth fit needs records for a single pair".into()));
    }
    let mut sizes: Vec<usize> = records.iter().map(|r| r.driving_size()).collect();
    sizes.sort_unstable();
    sizes.dedup();
    if sizes.len() < MIN_FIT_POINTS {
        return Err(Error::InsufficientData {
            needed: MIN_FIT_POINTS,
            found: sizes.len(),
        });
    }
    let xs = records.iter().map(|r| r.driving_size() as f64).collect();
    let ys = records.iter().map(|r| r.median_seconds.log2()).collect();
    Ok((pair, xs, ys))
}

/// Fits `log₂ t` against the size under the given model.
pub fn fit_model(records: &[BenchRecord], model: GrowthModel) -> Result<GrowthFit> {
    let (pair, xs, ys) = fit_points(records)?;
    let xs: Vec<f64> = match model {
        GrowthModel::Exponential => xs,
        GrowthModel::Polynomial => xs.iter().map(|x| x.log2()).collect(),
    };
    let (slope, intercept, r_squared) = least_squares(&xs, &ys);
    Ok(GrowthFit {
        pair,
        model,
        slope,
        intercept,
        r_squared,
    })
}

/// Both fits; the one with the higher `r²` wins, polynomial on ties.
pub fn fit_growth(records: &[BenchRecord]) -> Result<GrowthFit> {
    let exp = fit_model(records, GrowthModel::Exponential)?;
    let poly = fit_model(records, GrowthModel::Polynomial)?;
    Ok(if exp.r_squared > poly.r_squared { exp } else { poly })
}
