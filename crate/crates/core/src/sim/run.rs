use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, StudentsT};

use super::ppp::sample_ppp;
use super::slot::{step_slot, Channel, SlotState};
use super::SimConfig;
use crate::error::Result;

/// Counters of one realization, over the slots after warm-up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct RealizationStats {
    pub interferers: usize,
    pub observed_slots: u64,
    pub peak_sum: u64,
    pub deliveries: u64,
    pub attempts: u64,
    pub drops: u64,
    /// Slots that began with a packet in the typical buffer.
    pub busy_slots: u64,
}

impl RealizationStats {
    pub fn peak_aoi(&self) -> Option<f64> {
        (self.deliveries > 0).then(|| self.peak_sum as f64 / self.deliveries as f64)
    }

    pub fn success_rate(&self) -> Option<f64> {
        (self.attempts > 0).then(|| self.deliveries as f64 / self.attempts as f64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimStats {
    /// Mean over realizations of (sum of peaks / deliveries).
    pub peak_aoi_mean: Option<f64>,
    /// Half-width of the Student-t 95% interval of `peak_aoi_mean`.
    pub peak_aoi_ci95: Option<f64>,
    pub success_count: u64,
    pub attempts: u64,
    /// Mean over realizations of the per-attempt success frequency.
    pub success_rate: Option<f64>,
    pub success_rate_ci95: Option<f64>,
    pub drops: u64,
    /// Fraction of observed slots that began with an empty typical buffer.
    pub empty_buffer_fraction: f64,
    pub realizations_used: usize,
    /// Realizations with no delivery, excluded from `peak_aoi_mean`.
    pub realizations_without_delivery: usize,
    pub per_realization: Vec<RealizationStats>,
}

/// RNG of realization `index`: ChaCha8 keyed by the master seed, on stream
/// `index`. Streams of one key never overlap.
pub fn realization_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

pub fn run_realization(config: &SimConfig, index: usize) -> RealizationStats {
    let mut rng = realization_rng(config.seed, index);
    let p = &config.params;
    let layout = sample_ppp(p.lambda, config.area_side, p.r, &mut rng);
    let channel = Channel::new(config);
    let mut state = SlotState::new(layout);
    let warmup = config.warmup_slots();

    let mut stats = RealizationStats {
        interferers: state.layout.interferers(),
        ..RealizationStats::default()
    };
    for t in 0..config.slots {
        let event = step_slot(&mut state, &channel, &mut rng);
        if t < warmup {
            continue;
        }
        stats.observed_slots += 1;
        stats.busy_slots += event.busy_at_start as u64;
        stats.drops += event.dropped as u64;
        stats.attempts += event.attempted as u64;
        if let Some(peak) = event.peak {
            stats.deliveries += 1;
            stats.peak_sum += peak;
        }
    }
    stats
}

/// Mean and Student-t 95% half-width; the width needs two or more samples.
fn mean_ci(samples: &[f64]) -> (Option<f64>, Option<f64>) {
    let n = samples.len();
    if n == 0 {
        return (None, None);
    }
    let mean = samples.iter().sum::<f64>() / n as f64;
    if n < 2 {
        return (Some(mean), None);
    }
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    let t = StudentsT::new(0.0, 1.0, (n - 1) as f64)
        .map(|d| d.inverse_cdf(0.975))
        .unwrap_or(1.96);
    (Some(mean), Some(t * (var / n as f64).sqrt()))
}

pub fn run_simulation(config: &SimConfig) -> Result<SimStats> {
    config.validate()?;
    let per_realization: Vec<RealizationStats> = (0..config.realizations)
        .into_par_iter()
        .map(|i| run_realization(config, i))
        .collect();

    let peaks: Vec<f64> = per_realization
        .iter()
        .filter_map(|r| r.peak_aoi())
        .collect();
    let rates: Vec<f64> = per_realization
        .iter()
        .filter_map(|r| r.success_rate())
        .collect();
    let (peak_aoi_mean, peak_aoi_ci95) = mean_ci(&peaks);
    let (success_rate, success_rate_ci95) = mean_ci(&rates);
    let observed: u64 = per_realization.iter().map(|r| r.observed_slots).sum();
    let busy: u64 = per_realization.iter().map(|r| r.busy_slots).sum();

    Ok(SimStats {
        peak_aoi_mean,
        peak_aoi_ci95,
        success_count: per_realization.iter().map(|r| r.deliveries).sum(),
        attempts: per_realization.iter().map(|r| r.attempts).sum(),
        success_rate,
        success_rate_ci95,
        drops: per_realization.iter().map(|r| r.drops).sum(),
        empty_buffer_fraction: if observed > 0 {
            (observed - busy) as f64 / observed as f64
        } else {
            0.0
        },
        realizations_used: peaks.len(),
        realizations_without_delivery: config.realizations - peaks.len(),
        per_realization,
    })
}
