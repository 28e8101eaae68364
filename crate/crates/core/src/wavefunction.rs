//! Position-space spin-component wavefunctions `psi_{+Z}(y)`, `psi_{-Z}(y)`.
//!
//! `psi_s(y) = integral dp K(p0) e^{i p y} <s| spin(p) > amplitude(p)`, evaluated
//! in closed form for discrete equal-|p| superpositions and by trapezoid
//! quadrature for Gaussian packets.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::kinematics::{wigner_angle, BoostParameter, FourMomentum};
use crate::spin::{apply, wigner_rotation, Spinor};
use crate::states::MomentumSpinState;

/// Uniform sampling of `[y_min, y_max]` in reduced Compton wavelengths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YGrid {
    y_min: f64,
    y_max: f64,
    n_points: usize,
}

impl YGrid {
    pub fn new(y_min: f64, y_max: f64, n_points: usize) -> Result<Self> {
        if n_points < 2 {
            return Err(domain("n_points", n_points as f64, "n_points >= 2"));
        }
        if !(y_min.is_finite() && y_max.is_finite() && y_max > y_min) {
            return Err(domain("y_max - y_min", y_max - y_min, "finite, positive window"));
        }
        Ok(Self {
            y_min,
            y_max,
            n_points,
        })
    }

    /// `[-half_periods/2 * pi/p, +half_periods/2 * pi/p]` with
    /// `points_per_half_period` intervals per half period, so every node and
    /// antinode of `sin(p y)` is a grid point.
    pub fn standing_wave(p: f64, half_periods: usize, points_per_half_period: usize) -> Result<Self> {
        if !(p > 0.0 && p.is_finite()) {
            return Err(domain("p", p, "p > 0"));
        }
        if half_periods == 0 || half_periods % 2 != 0 {
            return Err(domain("half_periods", half_periods as f64, "even and positive"));
        }
        if points_per_half_period == 0 || points_per_half_period % 2 != 0 {
            return Err(domain(
                "points_per_half_period",
                points_per_half_period as f64,
                "even and positive",
            ));
        }
        let half_width = (half_periods / 2) as f64 * PI / p;
        Self::new(-half_width, half_width, half_periods * points_per_half_period + 1)
    }

    /// Smallest symmetric standing-wave window (at least `MIN_HALF_PERIODS`
    /// half periods) that keeps a detector of width `w` centred anywhere in
    /// `[-pi/(2p), pi/(2p)]` at least `6 w` away from the edges.
    pub fn standing_wave_for_detector(p: f64, w: f64, points_per_half_period: usize) -> Result<Self> {
        if !(w > 0.0 && w.is_finite()) {
            return Err(domain("w", w, "w > 0"));
        }
        let needed = (1.0 + 12.0 * w * p / PI).ceil() as usize;
        let mut half_periods = needed.max(Self::MIN_HALF_PERIODS);
        half_periods += half_periods % 2;
        Self::standing_wave(p, half_periods, points_per_half_period)
    }

    pub const MIN_HALF_PERIODS: usize = 8;
    pub const DEFAULT_POINTS_PER_HALF_PERIOD: usize = 512;

    pub fn y_min(&self) -> f64 {
        self.y_min
    }

    pub fn y_max(&self) -> f64 {
        self.y_max
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        (self.y_max - self.y_min) / (self.n_points - 1) as f64
    }

    pub fn y(&self, i: usize) -> f64 {
        if i + 1 == self.n_points {
            self.y_max
        } else {
            self.y_min + i as f64 * self.spacing()
        }
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(move |i| self.y(i))
    }
}

/// Pairwise summation; order-fixed so results are reproducible.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const BLOCK: usize = 32;
    if values.len() <= BLOCK {
        values.iter().sum()
    } else {
        let mid = values.len() / 2;
        pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
    }
}

/// Trapezoid rule for uniformly spaced samples.
pub fn trapezoid(values: &[f64], spacing: f64) -> f64 {
    match values {
        [] | [_] => 0.0,
        [first, .., last] => spacing * (pairwise_sum(values) - 0.5 * (first + last)),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PositionWavefunction {
    pub grid: YGrid,
    pub up: Vec<Complex64>,
    pub down: Vec<Complex64>,
}

impl PositionWavefunction {
    fn normalized(grid: YGrid, mut up: Vec<Complex64>, mut down: Vec<Complex64>) -> Result<Self> {
        let norm = trapezoid(&pointwise_density(&up, &down), grid.spacing());
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::ZeroNorm);
        }
        let scale = 1.0 / norm.sqrt();
        up.iter_mut().chain(down.iter_mut()).for_each(|z| *z *= scale);
        Ok(Self { grid, up, down })
    }

    pub fn density(&self) -> Density {
        density(self)
    }
}

fn pointwise_density(up: &[Complex64], down: &[Complex64]) -> Vec<f64> {
    up.iter()
        .zip(down)
        .map(|(u, d)| u.norm_sqr() + d.norm_sqr())
        .collect()
}

/// Spin-summed position density `|psi_{+Z}|^2 + |psi_{-Z}|^2` on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Density {
    pub grid: YGrid,
    pub values: Vec<f64>,
}

impl Density {
    pub fn integral(&self) -> f64 {
        trapezoid(&self.values, self.grid.spacing())
    }

    /// Largest pointwise difference; `None` if the grids differ.
    pub fn sup_distance(&self, other: &Density) -> Option<f64> {
        (self.grid == other.grid).then(|| {
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        })
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

pub fn density(w: &PositionWavefunction) -> Density {
    Density {
        grid: w.grid,
        values: pointwise_density(&w.up, &w.down),
    }
}

/// Closed-form synthesis for superpositions of momenta with a common `|p|`
/// (the `K(p0)` factor is then a constant and dropped).
pub fn synthesize_discrete(state: &MomentumSpinState, grid: &YGrid) -> Result<PositionWavefunction> {
    state.common_magnitude()?;
    let terms: Vec<(f64, Spinor)> = state
        .components()
        .iter()
        .map(|c| (c.momentum.p(), c.weighted_spin()))
        .collect();
    let (up, down) = grid
        .points()
        .map(|y| {
            terms.iter().fold(
                (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)),
                |(u, d), (p, s)| {
                    let phase = Complex64::cis(p * y);
                    (u + s.up * phase, d + s.down * phase)
                },
            )
        })
        .unzip();
    PositionWavefunction::normalized(*grid, up, down)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KFactor {
    Unity,
    /// `sqrt(m / p0)`
    SqrtMassOverEnergy,
}

impl KFactor {
    pub fn eval(self, momentum: &FourMomentum) -> f64 {
        match self {
            KFactor::Unity => 1.0,
            KFactor::SqrtMassOverEnergy => (FourMomentum::MASS / momentum.energy()).sqrt(),
        }
    }
}

/// Momentum amplitude `exp(-p^2 W^2 / 2)` with a fixed rest-frame spin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianPacketSpec {
    width: f64,
    pub spin: Spinor,
    pub k_factor: KFactor,
}

impl GaussianPacketSpec {
    pub fn new(width: f64, spin: Spinor, k_factor: KFactor) -> Result<Self> {
        if !(width > 0.0 && width.is_finite()) {
            return Err(domain("W", width, "W > 0"));
        }
        let spin = spin.normalized().ok_or(Error::ZeroNorm)?;
        Ok(Self {
            width,
            spin,
            k_factor,
        })
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn amplitude(&self, p: f64) -> f64 {
        (-0.5 * p * p * self.width * self.width).exp()
    }

    /// Default position window `[-12 W, 12 W]` at spacing `W / 100`.
    pub fn default_grid(&self) -> YGrid {
        YGrid::new(-12.0 * self.width, 12.0 * self.width, 2401).expect("W > 0")
    }
}

/// Trapezoid nodes over `[-half_range, half_range]` in momentum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumQuadrature {
    pub half_range: f64,
    pub n_points: usize,
}

impl MomentumQuadrature {
    pub const DEFAULT_POINTS: usize = 4096;

    /// `p in [-8/W, 8/W]` with 4096 nodes.
    pub fn for_width(width: f64) -> Self {
        Self {
            half_range: 8.0 / width,
            n_points: Self::DEFAULT_POINTS,
        }
    }

    fn nodes(&self) -> Result<Vec<(f64, f64)>> {
        if self.n_points < 2 || !(self.half_range > 0.0 && self.half_range.is_finite()) {
            return Err(domain("momentum quadrature", self.half_range, "range > 0 and >= 2 nodes"));
        }
        let h = 2.0 * self.half_range / (self.n_points - 1) as f64;
        Ok((0..self.n_points)
            .map(|j| {
                let p = -self.half_range + j as f64 * h;
                let weight = if j == 0 || j + 1 == self.n_points { 0.5 * h } else { h };
                (p, weight)
            })
            .collect())
    }
}

/// Relative size of the integrand at the quadrature edge above which the
/// range is flagged as too short.
pub const EDGE_AMPLITUDE_LIMIT: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct GaussianSynthesis {
    pub wavefunction: PositionWavefunction,
    /// `2 pi integral |K psi~|^2 dp` (the spin rotation is unitary).
    pub momentum_norm: f64,
    /// Trapezoid norm of the unnormalized position wavefunction.
    pub position_norm: f64,
    /// The integrand at the edge of the momentum range exceeds
    /// [`EDGE_AMPLITUDE_LIMIT`] of its peak.
    pub truncated_range: bool,
}

impl GaussianSynthesis {
    pub fn parseval_defect(&self) -> f64 {
        (self.position_norm - self.momentum_norm).abs() / self.momentum_norm
    }
}

/// Gaussian packet seen from a frame boosted along `z`, rotating each momentum
/// component by its own Wigner rotation inside the integral.
pub fn synthesize_gaussian(
    spec: &GaussianPacketSpec,
    boost: Option<&BoostParameter>,
    grid: &YGrid,
    quadrature: &MomentumQuadrature,
) -> Result<GaussianSynthesis> {
    let nodes = quadrature.nodes()?;

    let mut weights = Vec::with_capacity(nodes.len());
    let mut momentum_density = Vec::with_capacity(nodes.len());
    let mut coefficients = Vec::with_capacity(nodes.len());
    for &(p, weight) in &nodes {
        let momentum = FourMomentum::new(p)?;
        let amplitude = spec.k_factor.eval(&momentum) * spec.amplitude(p);
        let spin = match boost {
            Some(b) => apply(&wigner_rotation(wigner_angle(&momentum, b)), &spec.spin),
            None => spec.spin,
        };
        weights.push(amplitude.abs());
        momentum_density.push(amplitude * amplitude);
        coefficients.push((p, spin.scaled(Complex64::new(weight * amplitude, 0.0))));
    }
    let peak = weights.iter().copied().fold(0.0, f64::max);
    let edge = weights[0].max(weights[weights.len() - 1]);
    let truncated_range = edge > EDGE_AMPLITUDE_LIMIT * peak;
    let dp = 2.0 * quadrature.half_range / (quadrature.n_points - 1) as f64;
    let momentum_norm = 2.0 * PI * trapezoid(&momentum_density, dp);

    let mut up = Vec::with_capacity(grid.len());
    let mut down = Vec::with_capacity(grid.len());
    for y in grid.points() {
        let (mut u, mut d) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for (p, c) in &coefficients {
            let phase = Complex64::cis(p * y);
            u += c.up * phase;
            d += c.down * phase;
        }
        up.push(u);
        down.push(d);
    }
    let position_norm = trapezoid(&pointwise_density(&up, &down), grid.spacing());
    Ok(GaussianSynthesis {
        wavefunction: PositionWavefunction::normalized(*grid, up, down)?,
        momentum_norm,
        position_norm,
        truncated_range,
    })
}
