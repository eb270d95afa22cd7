use rand::Rng;
use rand_distr::{Distribution, Exp1};
use serde::Serialize;

use super::ppp::{redraw_interferers, Layout, Point};
use super::{Boundary, SimConfig};

#[derive(Debug, Clone, Copy)]
enum PathLoss {
    Cubic,
    Quartic,
    General(f64),
}

/// Slot-invariant channel quantities of a simulation.
#[derive(Debug, Clone, Copy)]
pub struct Channel {
    xi: f64,
    q: f64,
    theta: f64,
    inverse_snr: f64,
    /// `R^{-α}`, the mean received signal power of every link.
    signal: f64,
    /// `θ R^α`, scales the per-interferer Rayleigh success factor.
    theta_r_alpha: f64,
    /// Success probability of an interference-free link, `exp(−θR^α/γ)`.
    noise_success: f64,
    path: PathLoss,
    side: f64,
    torus: bool,
    cutoff2: f64,
}

impl Channel {
    pub fn new(config: &SimConfig) -> Self {
        let p = &config.params;
        let path = if p.alpha == 3.0 {
            PathLoss::Cubic
        } else if p.alpha == 4.0 {
            PathLoss::Quartic
        } else {
            PathLoss::General(p.alpha / 2.0)
        };
        let r_alpha = p.r.powf(p.alpha);
        let inverse_snr = p.snr.inverse();
        Channel {
            xi: p.xi,
            q: p.q,
            theta: p.theta,
            inverse_snr,
            signal: 1.0 / r_alpha,
            theta_r_alpha: p.theta * r_alpha,
            noise_success: (-p.theta * r_alpha * inverse_snr).exp(),
            path,
            side: config.area_side,
            torus: config.boundary == Boundary::Torus,
            cutoff2: config.interference_cutoff.map_or(f64::INFINITY, |c| c * c),
        }
    }

    fn distance2(&self, a: Point, b: Point) -> f64 {
        let mut dx = (a[0] - b[0]).abs();
        let mut dy = (a[1] - b[1]).abs();
        if self.torus {
            dx = dx.rem_euclid(self.side);
            dy = dy.rem_euclid(self.side);
            dx = dx.min(self.side - dx);
            dy = dy.min(self.side - dy);
        }
        dx * dx + dy * dy
    }

    /// `d^{-α}` from a squared distance.
    #[inline]
    fn gain(&self, d2: f64) -> f64 {
        match self.path {
            PathLoss::Cubic => 1.0 / (d2 * d2.sqrt()),
            PathLoss::Quartic => 1.0 / (d2 * d2),
            PathLoss::General(half) => d2.powf(-half),
        }
    }
}

/// Network snapshot between slots.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlotState {
    /// Index of the next slot to run.
    pub slot: u64,
    pub layout: Layout,
    /// Fading gains seen by the typical receiver in the last slot: its own
    /// link first, then one per contributing interferer.
    pub fading: Vec<f64>,
    /// Buffer occupancy; index 0 is the typical transmitter, `i + 1` is
    /// interferer `i`.
    pub queue_flags: Vec<bool>,
    /// Transmit decisions of the last slot, same indexing as `queue_flags`.
    pub access_flags: Vec<bool>,
    /// Age of the typical receiver's information at the start of `slot`.
    pub typical_aoi: u64,
    /// Generation slot of the packet in the typical buffer.
    pub typical_gen_slot: Option<u64>,
}

impl SlotState {
    /// Empty buffers and unit age.
    pub fn new(layout: Layout) -> Self {
        let n = layout.interferers() + 1;
        SlotState {
            slot: 0,
            layout,
            fading: Vec::new(),
            queue_flags: vec![false; n],
            access_flags: vec![false; n],
            typical_aoi: 1,
            typical_gen_slot: None,
        }
    }
}

/// What happened to the typical link in one slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct SlotEvent {
    /// The typical buffer held a packet when the slot began.
    pub busy_at_start: bool,
    pub dropped: bool,
    pub attempted: bool,
    pub delivered: bool,
    /// Age reached at the end of a delivery slot, just before the reset.
    pub peak: Option<u64>,
}

/// Advances the network by one slot: arrivals, channel access, mobility,
/// decoding, then age bookkeeping.
pub fn step_slot<R: Rng + ?Sized>(
    state: &mut SlotState,
    channel: &Channel,
    rng: &mut R,
) -> SlotEvent {
    let t = state.slot;
    let mut event = SlotEvent {
        busy_at_start: state.queue_flags[0],
        ..SlotEvent::default()
    };

    event.dropped = admit_arrivals(state, channel.xi, rng);
    draw_access(state, channel.q, rng);

    redraw_interferers(&mut state.layout, rng);

    state.fading.clear();
    if state.access_flags[0] {
        event.attempted = true;
        let own: f64 = Exp1.sample(rng);
        state.fading.push(own);
        let rx = state.layout.typical_rx;
        let mut interference = 0.0;
        for (tx, _) in state
            .layout
            .tx
            .iter()
            .zip(&state.access_flags[1..])
            .filter(|(_, &on)| on)
        {
            let d2 = channel.distance2(*tx, rx);
            if d2 > channel.cutoff2 {
                continue;
            }
            let h: f64 = Exp1.sample(rng);
            state.fading.push(h);
            interference += h * channel.gain(d2);
        }
        event.delivered =
            own * channel.signal > channel.theta * (interference + channel.inverse_snr);
    }

    // With ξ = 1 every buffer is refilled at the next arrival phase whatever
    // happens now, so interferer outcomes are unobservable and skipped.
    if channel.xi < 1.0 {
        decode_interferers(state, channel, rng);
    }

    if event.delivered {
        // the buffer is non-empty whenever the typical link transmits
        let generated = state.typical_gen_slot.take().unwrap_or(t);
        event.peak = Some(state.typical_aoi + 1);
        state.typical_aoi = t - generated + 1;
        state.queue_flags[0] = false;
    } else {
        state.typical_aoi += 1;
    }
    state.slot += 1;
    event
}

/// Bernoulli(ξ) arrivals into empty buffers. Returns whether an arrival to the
/// typical transmitter was dropped on a full buffer.
fn admit_arrivals<R: Rng + ?Sized>(state: &mut SlotState, xi: f64, rng: &mut R) -> bool {
    let mut dropped = false;
    for (i, full) in state.queue_flags.iter_mut().enumerate() {
        if !*full {
            if rng.random_bool(xi) {
                *full = true;
                if i == 0 {
                    state.typical_gen_slot = Some(state.slot);
                }
            }
        } else if i == 0 && rng.random_bool(xi) {
            dropped = true;
        }
    }
    dropped
}

fn draw_access<R: Rng + ?Sized>(state: &mut SlotState, q: f64, rng: &mut R) {
    for (access, &full) in state.access_flags.iter_mut().zip(&state.queue_flags) {
        *access = full && rng.random_bool(q);
    }
}

/// Decides every transmitting interferer's outcome.
///
/// With unit-mean exponential fading and the positions fixed, link `i`
/// succeeds with probability `exp(−θR^α/γ) Π_j 1/(1 + θR^α d_ji^{−α})` over
/// the other active transmitters `j`, and outcomes of distinct links use
/// disjoint fading variables, so each is drawn as a single Bernoulli.
fn decode_interferers<R: Rng + ?Sized>(state: &mut SlotState, channel: &Channel, rng: &mut R) {
    let layout = &state.layout;
    let active: Vec<Point> = std::iter::once(layout.typical_tx)
        .chain(layout.tx.iter().copied())
        .zip(&state.access_flags)
        .filter(|(_, &on)| on)
        .map(|(p, _)| p)
        .collect();
    for i in 0..layout.interferers() {
        if !state.access_flags[i + 1] {
            continue;
        }
        let (own_tx, rx) = (layout.tx[i], layout.rx[i]);
        let mut success = channel.noise_success;
        for &tx in &active {
            if tx == own_tx {
                continue;
            }
            let d2 = channel.distance2(tx, rx);
            if d2 > channel.cutoff2 {
                continue;
            }
            success /= 1.0 + channel.theta_r_alpha * channel.gain(d2);
        }
        if rng.random::<f64>() < success {
            state.queue_flags[i + 1] = false;
        }
    }
}
