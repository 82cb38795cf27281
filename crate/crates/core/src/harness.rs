//! Randomized gap sweeps and data emission.
//!
//! Samples are drawn independently: sample `i` of a sweep with seed `s`
//! uses a ChaCha8 generator seeded with `s` on stream `i`, so results do
//! not depend on thread scheduling and reports are byte-identical across
//! runs. SNRs and INRs are uniform in dB over `[0, 80]`, cooperation
//! capacities uniform over `[0, 40]` bits and the phase uniform over
//! `[0, 2π)`. A regime filter resamples until the draw matches, up to a
//! per-sample cap.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{
    build_cmac, build_inner, build_outer, build_two_round, two_round_by_elimination, BoundsError, StrategyOrder,
};
use crate::channel::{ChannelError, ChannelParams, Regime, Scenario};
use crate::gdof::{d, GdofError, GdofQuery};
use crate::region::{contains, HalfSpace, Point, RateRegion};

/// Name of the generator recorded in report headers.
pub const PRNG_NAME: &str = "ChaCha8";
/// Range of SNRs and INRs in dB.
pub const POWER_DB_RANGE: (f64, f64) = (0.0, 80.0);
/// Range of cooperation capacities in bits.
pub const COOP_BITS_RANGE: (f64, f64) = (0.0, 40.0);
/// Default number of draws per sample before the regime filter gives up.
pub const DEFAULT_DRAW_CAP: u32 = 10_000;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("unknown regime `{0}`")]
    UnknownRegime(String),
    #[error("unknown region `{0}`, expected inner, outer, cmac-inner or cmac-outer")]
    UnknownRegion(String),
    #[error("regime {0} is not supported here")]
    UnsupportedRegime(SweepRegime),
    #[error("sample {index}: no matching draw within {cap} attempts")]
    DrawCapExceeded { index: u64, cap: u32 },
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Gdof(#[from] GdofError),
}

/// Which samples a sweep draws and which regions it compares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepRegime {
    Weak,
    /// Either mixed orientation.
    Mixed,
    Strong,
    /// Unrestricted samples, compound-MAC regions.
    Cmac,
    /// Unrestricted samples, interference-channel regions.
    Any,
}

impl SweepRegime {
    pub fn accepts(self, r: Regime) -> bool {
        match self {
            SweepRegime::Weak => r == Regime::Weak,
            SweepRegime::Mixed => r.is_mixed(),
            SweepRegime::Strong => r == Regime::Strong,
            SweepRegime::Cmac | SweepRegime::Any => true,
        }
    }
}

impl fmt::Display for SweepRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepRegime::Weak => "weak",
            SweepRegime::Mixed => "mixed",
            SweepRegime::Strong => "strong",
            SweepRegime::Cmac => "cmac",
            SweepRegime::Any => "any",
        })
    }
}

impl FromStr for SweepRegime {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "weak" => Ok(SweepRegime::Weak),
            "mixed" => Ok(SweepRegime::Mixed),
            "strong" => Ok(SweepRegime::Strong),
            "cmac" => Ok(SweepRegime::Cmac),
            "any" => Ok(SweepRegime::Any),
            other => Err(HarnessError::UnknownRegime(other.to_string())),
        }
    }
}

/// Generator for sample `index` of a sweep seeded with `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn draw_db(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(POWER_DB_RANGE.0..=POWER_DB_RANGE.1)
}

fn draw_coop(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(COOP_BITS_RANGE.0..=COOP_BITS_RANGE.1)
}

/// One unrestricted draw.
pub fn draw_channel(rng: &mut ChaCha8Rng) -> ChannelParams {
    let (s1, s2, i1, i2) = (draw_db(rng), draw_db(rng), draw_db(rng), draw_db(rng));
    let theta = rng.gen_range(0.0..TAU);
    let (c12, c21) = (draw_coop(rng), draw_coop(rng));
    ChannelParams::from_db(s1, s2, i1, i2, theta, c12, c21).expect("sampled values are finite and nonnegative")
}

/// One symmetric draw; with `strong_only`, INR is drawn at or above SNR.
pub fn draw_symmetric(rng: &mut ChaCha8Rng, strong_only: bool) -> ChannelParams {
    let s = draw_db(rng);
    let i = if strong_only {
        rng.gen_range(s..=POWER_DB_RANGE.1)
    } else {
        draw_db(rng)
    };
    let theta = rng.gen_range(0.0..TAU);
    let c = draw_coop(rng);
    ChannelParams::from_db(s, s, i, i, theta, c, c).expect("sampled values are finite and nonnegative")
}

/// Draws until the regime filter accepts; returns the channel and the
/// number of draws used.
pub fn sample_channel(
    seed: u64,
    index: u64,
    regime: SweepRegime,
    cap: u32,
) -> Result<(ChannelParams, u32), HarnessError> {
    let mut rng = sample_rng(seed, index);
    for draws in 1..=cap {
        let p = draw_channel(&mut rng);
        if regime.accepts(p.classify()) {
            return Ok((p, draws));
        }
    }
    Err(HarnessError::DrawCapExceeded { index, cap })
}

/// Parameters of a gap sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepConfig {
    pub regime: SweepRegime,
    pub count: u64,
    pub seed: u64,
    pub gap_bits: f64,
    pub tol: f64,
    pub draw_cap: u32,
}

impl SweepConfig {
    pub fn new(regime: SweepRegime, count: u64, seed: u64, gap_bits: f64) -> Self {
        Self {
            regime,
            count,
            seed,
            gap_bits,
            tol: 1e-6,
            draw_cap: DEFAULT_DRAW_CAP,
        }
    }
}

/// Inner and outer regions compared by a sweep for one channel.
pub fn sweep_regions(p: &ChannelParams, regime: SweepRegime) -> (RateRegion, RateRegion) {
    if regime == SweepRegime::Cmac {
        let c = build_cmac(p);
        (c.inner, c.outer)
    } else {
        (build_inner(p), build_outer(p))
    }
}

/// An outer vertex that lies more than `gap_bits` outside the inner region.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ViolationRecord {
    pub index: u64,
    pub scenario: Scenario,
    pub regime: Regime,
    /// Outer-region vertex.
    pub witness: Point,
    /// Inflated inner halfspace it violates.
    pub halfspace: HalfSpace,
    /// Normalized excess in bits.
    pub excess: f64,
}

impl ViolationRecord {
    /// Rebuilds the regions from the recorded scenario and returns the
    /// witness's excess over the inflated inner halfspace it was reported
    /// against.
    pub fn recheck(&self, sweep: SweepRegime, gap_bits: f64) -> Result<f64, HarnessError> {
        let p = self.scenario.to_params()?;
        let (inner, _) = sweep_regions(&p, sweep);
        let inflated = inner.inflate(gap_bits);
        Ok(inflated
            .halfspaces()
            .iter()
            .map(|h| h.excess(self.witness))
            .fold(f64::NEG_INFINITY, f64::max))
    }
}

/// Result of a gap sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapReport {
    pub prng: &'static str,
    pub seed: u64,
    pub regime: SweepRegime,
    pub count: u64,
    pub gap_bits: f64,
    pub tol: f64,
    pub power_db_range: (f64, f64),
    pub coop_bits_range: (f64, f64),
    /// Total draws including those rejected by the regime filter.
    pub draws: u64,
    pub draw_cap: u32,
    /// Largest excess of any outer vertex over the inflated inner region.
    pub max_observed_excess: f64,
    /// Samples where the inner region is not inside the outer region.
    pub inner_not_in_outer: u64,
    pub max_inner_excess: f64,
    pub violations: Vec<ViolationRecord>,
}

impl GapReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn summary(&self) -> String {
        format!(
            "{} sweep: {} samples ({} draws, {} seed {}), gap {} bits, tol {:e}: {} violations, max excess {:.3e} bits, inner outside outer in {} samples",
            self.regime,
            self.count,
            self.draws,
            self.prng,
            self.seed,
            self.gap_bits,
            self.tol,
            self.violations.len(),
            self.max_observed_excess,
            self.inner_not_in_outer,
        )
    }
}

struct SampleOutcome {
    draws: u32,
    gap_excess: f64,
    inner_excess: f64,
    violation: Option<ViolationRecord>,
}

fn run_sample(cfg: &SweepConfig, index: u64) -> Result<SampleOutcome, HarnessError> {
    let (p, draws) = sample_channel(cfg.seed, index, cfg.regime, cfg.draw_cap)?;
    let (inner, outer) = sweep_regions(&p, cfg.regime);
    let gap = contains(&inner.inflate(cfg.gap_bits), &outer, cfg.tol);
    let sanity = contains(&outer, &inner, cfg.tol);
    let violation = gap.witness.map(|w| ViolationRecord {
        index,
        scenario: p.to_scenario(),
        regime: p.classify(),
        witness: w.vertex,
        halfspace: w.halfspace,
        excess: w.excess,
    });
    Ok(SampleOutcome {
        draws,
        gap_excess: gap.max_excess,
        inner_excess: sanity.max_excess,
        violation,
    })
}

/// Runs a gap sweep: for each sample, every outer vertex must lie inside
/// the inner region inflated by `gap_bits` in both rates.
pub fn gap_sweep(cfg: &SweepConfig) -> Result<GapReport, HarnessError> {
    let outcomes = (0..cfg.count)
        .into_par_iter()
        .map(|i| run_sample(cfg, i))
        .collect::<Result<Vec<_>, _>>()?;
    let mut report = GapReport {
        prng: PRNG_NAME,
        seed: cfg.seed,
        regime: cfg.regime,
        count: cfg.count,
        gap_bits: cfg.gap_bits,
        tol: cfg.tol,
        power_db_range: POWER_DB_RANGE,
        coop_bits_range: COOP_BITS_RANGE,
        draws: 0,
        draw_cap: cfg.draw_cap,
        max_observed_excess: f64::NEG_INFINITY,
        inner_not_in_outer: 0,
        max_inner_excess: f64::NEG_INFINITY,
        violations: Vec::new(),
    };
    for o in outcomes {
        report.draws += u64::from(o.draws);
        report.max_observed_excess = report.max_observed_excess.max(o.gap_excess);
        report.max_inner_excess = report.max_inner_excess.max(o.inner_excess);
        if o.inner_excess > cfg.tol {
            report.inner_not_in_outer += 1;
        }
        report.violations.extend(o.violation);
    }
    Ok(report)
}

/// Region selector for [`emit_region`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionKind {
    Inner,
    Outer,
    CmacInner,
    CmacOuter,
}

impl FromStr for RegionKind {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "inner" => Ok(RegionKind::Inner),
            "outer" => Ok(RegionKind::Outer),
            "cmac-inner" => Ok(RegionKind::CmacInner),
            "cmac-outer" => Ok(RegionKind::CmacOuter),
            other => Err(HarnessError::UnknownRegion(other.to_string())),
        }
    }
}

pub fn emit_region(p: &ChannelParams, which: RegionKind) -> RateRegion {
    match which {
        RegionKind::Inner => build_inner(p),
        RegionKind::Outer => build_outer(p),
        RegionKind::CmacInner => build_cmac(p).inner,
        RegionKind::CmacOuter => build_cmac(p).outer,
    }
}

/// CSV `alpha,kappa,d` over an evenly spaced α grid for each κ.
pub fn gdof_curve_csv(
    alpha_min: f64,
    alpha_max: f64,
    alpha_steps: usize,
    kappas: &[f64],
) -> Result<String, HarnessError> {
    let mut s = String::from("alpha,kappa,d\n");
    for &k in kappas {
        for a in crate::gdof::snr_db_grid(alpha_min, alpha_max, alpha_steps) {
            let q = GdofQuery::new(a, k)?;
            s.push_str(&format!("{a},{k},{}\n", d(q)));
        }
    }
    Ok(s)
}

/// One sample of an elimination cross-check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrosscheckSample {
    pub index: u64,
    pub scenario: Scenario,
    /// Excess of the eliminated region over the directly built one.
    pub eliminated_over_direct: f64,
    /// Excess of the directly built region over the eliminated one.
    pub direct_over_eliminated: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrosscheckReport {
    pub prng: &'static str,
    pub seed: u64,
    pub regime: SweepRegime,
    pub tol: f64,
    pub samples: Vec<CrosscheckSample>,
}

impl CrosscheckReport {
    pub fn all_pass(&self) -> bool {
        self.samples.iter().all(|s| s.pass)
    }
}

/// Compares the two-round region of order 2→1→2 with the Fourier–Motzkin
/// projection of its rate-split system. Mixed samples in the 2→1
/// orientation are swapped so that receiver 2 quantizes.
pub fn fm_crosscheck(regime: SweepRegime, count: u64, seed: u64, tol: f64) -> Result<CrosscheckReport, HarnessError> {
    if !matches!(regime, SweepRegime::Weak | SweepRegime::Mixed) {
        return Err(HarnessError::UnsupportedRegime(regime));
    }
    let samples = (0..count)
        .into_par_iter()
        .map(|index| {
            let (mut p, _) = sample_channel(seed, index, regime, DEFAULT_DRAW_CAP)?;
            if p.classify() == Regime::Mixed21 {
                p = p.swapped();
            }
            let direct = build_two_round(&p, StrategyOrder::TwoRound212)?;
            let eliminated = two_round_by_elimination(&p)?;
            let fwd = contains(&direct, &eliminated, tol).max_excess;
            let back = contains(&eliminated, &direct, tol).max_excess;
            Ok(CrosscheckSample {
                index,
                scenario: p.to_scenario(),
                eliminated_over_direct: fwd,
                direct_over_eliminated: back,
                pass: fwd <= tol && back <= tol,
            })
        })
        .collect::<Result<Vec<_>, HarnessError>>()?;
    Ok(CrosscheckReport {
        prng: PRNG_NAME,
        seed,
        regime,
        tol,
        samples,
    })
}
