use std::f64::consts::TAU;

use rand::Rng;
use rand_distr::{Distribution, Poisson};
use serde::Serialize;

pub type Point = [f64; 2];

/// Positions of one realization. Index `i` of `tx` and `rx` is one
/// interfering pair; the typical pair is kept apart.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Layout {
    pub area_side: f64,
    pub link_distance: f64,
    pub typical_rx: Point,
    pub typical_tx: Point,
    pub tx: Vec<Point>,
    pub rx: Vec<Point>,
}

impl Layout {
    pub fn interferers(&self) -> usize {
        self.tx.len()
    }
}

fn uniform_pair<R: Rng + ?Sized>(side: f64, link_distance: f64, rng: &mut R) -> (Point, Point) {
    let tx = [rng.random::<f64>() * side, rng.random::<f64>() * side];
    let (s, c) = (rng.random::<f64>() * TAU).sin_cos();
    (tx, [tx[0] + link_distance * c, tx[1] + link_distance * s])
}

/// Draws a Poisson(`density · side²`) number of interfering pairs uniformly
/// over the window. The typical receiver sits at the window centre with its
/// transmitter `link_distance` away in a uniformly random direction.
pub fn sample_ppp<R: Rng + ?Sized>(
    density: f64,
    area_side: f64,
    link_distance: f64,
    rng: &mut R,
) -> Layout {
    let centre = [area_side / 2.0, area_side / 2.0];
    let (s, c) = (rng.random::<f64>() * TAU).sin_cos();
    let typical_tx = [centre[0] + link_distance * c, centre[1] + link_distance * s];

    let mean = density * area_side * area_side;
    let count = if mean > 0.0 {
        // Poisson::new only fails for non-positive or non-finite means
        Poisson::new(mean)
            .map(|d| d.sample(rng) as usize)
            .unwrap_or(0)
    } else {
        0
    };
    let (tx, rx) = (0..count)
        .map(|_| uniform_pair(area_side, link_distance, rng))
        .unzip();
    Layout {
        area_side,
        link_distance,
        typical_rx: centre,
        typical_tx,
        tx,
        rx,
    }
}

/// Re-places every interfering pair uniformly over the window, keeping the
/// number of pairs.
pub fn redraw_interferers<R: Rng + ?Sized>(layout: &mut Layout, rng: &mut R) {
    let (side, d) = (layout.area_side, layout.link_distance);
    for (tx, rx) in layout.tx.iter_mut().zip(layout.rx.iter_mut()) {
        (*tx, *rx) = uniform_pair(side, d, rng);
    }
}
