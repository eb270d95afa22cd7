//! Discrete-time Monte Carlo simulation of the random-access Poisson bipolar
//! network under the high-mobility model.
//!
//! A realization draws a Poisson number of interfering TX–RX pairs over a
//! square window whose centre holds the typical receiver. Every slot the
//! interferer pairs are re-placed uniformly at random while the typical pair
//! stays put, so the typical link sees an i.i.d. SINR across slots. All buffers
//! are simulated explicitly.
//!
//! Realizations run in parallel on independent RNG streams and are reduced in
//! index order, which makes [`run_simulation`] bit-reproducible for a given
//! seed regardless of the number of worker threads.

mod ppp;
mod run;
mod slot;

pub use ppp::{redraw_interferers, sample_ppp, Layout, Point};
pub use run::{realization_rng, run_realization, run_simulation, RealizationStats, SimStats};
pub use slot::{step_slot, Channel, SlotEvent, SlotState};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::SystemParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    /// Plain Euclidean distances inside the window.
    #[default]
    Window,
    /// Wrap-around (minimum image) distances.
    Torus,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub params: SystemParams,
    pub area_side: f64,
    pub slots: u64,
    pub realizations: usize,
    pub seed: u64,
    /// Fraction of initial slots excluded from every statistic.
    pub warmup_fraction: f64,
    /// Interferers farther than this from a receiver are ignored.
    pub interference_cutoff: Option<f64>,
    pub boundary: Boundary,
}

impl SimConfig {
    /// Desk-scale defaults: a 50×50 window, 10⁴ slots, 10 realizations.
    pub fn desk(params: SystemParams) -> Self {
        SimConfig {
            params,
            area_side: 50.0,
            slots: 10_000,
            realizations: 10,
            seed: 1,
            warmup_fraction: 0.1,
            interference_cutoff: None,
            boundary: Boundary::Window,
        }
    }

    /// 100×100 window, 10⁵ slots, 20 realizations.
    pub fn full_scale(params: SystemParams) -> Self {
        SimConfig {
            area_side: 100.0,
            slots: 100_000,
            realizations: 20,
            ..Self::desk(params)
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if self.slots < 1 {
            return Err(Error::InvalidConfig("slots must be >= 1".into()));
        }
        if self.realizations < 1 {
            return Err(Error::InvalidConfig("realizations must be >= 1".into()));
        }
        if !(self.warmup_fraction >= 0.0 && self.warmup_fraction < 0.5) {
            return Err(Error::InvalidConfig(format!(
                "warmup fraction {} is outside [0, 0.5)",
                self.warmup_fraction
            )));
        }
        if !(self.area_side > 2.0 * self.params.r) || !self.area_side.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "area side {} must be finite and exceed 2R = {}",
                self.area_side,
                2.0 * self.params.r
            )));
        }
        if let Some(cut) = self.interference_cutoff {
            if !(cut > 0.0) {
                return Err(Error::InvalidConfig(format!(
                    "interference cutoff {cut} must be > 0"
                )));
            }
        }
        let mean = self.params.lambda * self.area_side * self.area_side;
        if mean > 1e7 {
            return Err(Error::InvalidConfig(format!(
                "expected {mean} interferers per realization is beyond what the simulator handles"
            )));
        }
        Ok(())
    }

    pub(crate) fn warmup_slots(&self) -> u64 {
        (self.warmup_fraction * self.slots as f64).floor() as u64
    }
}
