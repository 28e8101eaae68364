//! Spin-blind Gaussian detector and the `R = P(y_min) / P(y_m)` observable.
//!
//! The kernel is `Gamma(y) = exp(-y^2/w^2) / (w sqrt(pi))`, normalized to unit
//! integral, and `P(y_c) = integral dy Gamma(y - y_c) rho(y)` by the trapezoid
//! rule on the density's own grid.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::wavefunction::{pairwise_sum, Density};

/// Widths below this are accepted but flagged as marginal.
pub const MARGINAL_WIDTH: f64 = 1.05;

/// Beyond this many widths the kernel is treated as zero (`e^-64 ~ 1e-28`).
const KERNEL_CUTOFF: f64 = 8.0;

/// Half-span, in widths, that must lie inside the window for an untruncated reading.
pub const KERNEL_SPAN: f64 = 3.0;

/// Margin, in widths, kept between a swept detector centre and the window edge.
pub const SWEEP_MARGIN: f64 = 6.0;

/// Densities whose values agree to this relative precision count as tied maxima.
const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorSpec {
    w: f64,
}

impl DetectorSpec {
    /// Rejects widths below one reduced Compton wavelength.
    pub fn new(w: f64) -> Result<Self> {
        if !(w >= 1.0 && w.is_finite()) {
            return Err(domain("w", w, "w >= 1 (no localization below the Compton wavelength)"));
        }
        Ok(Self { w })
    }

    pub fn width(&self) -> f64 {
        self.w
    }

    pub fn is_marginal(&self) -> bool {
        self.w < MARGINAL_WIDTH
    }

    pub fn kernel(&self, y: f64) -> f64 {
        let x = y / self.w;
        (-x * x).exp() / (self.w * PI.sqrt())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Detection {
    pub probability: f64,
    /// `[y_c - 3w, y_c + 3w]` is not contained in the density window.
    pub truncated: bool,
}

pub fn detection_probability(density: &Density, det: &DetectorSpec, y_c: f64) -> Detection {
    let grid = &density.grid;
    let h = grid.spacing();
    let n = grid.len();
    let terms: Vec<f64> = density
        .values
        .iter()
        .enumerate()
        .map(|(i, rho)| {
            let weight = if i == 0 || i + 1 == n { 0.5 * h } else { h };
            weight * det.kernel(grid.y(i) - y_c) * rho
        })
        .collect();
    let reach = KERNEL_SPAN * det.width();
    Detection {
        probability: pairwise_sum(&terms),
        truncated: y_c - reach < grid.y_min() || y_c + reach > grid.y_max(),
    }
}

/// `P(y_c)` at every grid point whose centre sits at least `6 w` inside the
/// window. Returns `(index, P)` pairs.
pub fn detection_curve(density: &Density, det: &DetectorSpec) -> Vec<(usize, f64)> {
    let grid = &density.grid;
    let h = grid.spacing();
    let n = grid.len();
    let reach = ((KERNEL_CUTOFF * det.width()) / h).ceil() as usize;
    let table: Vec<f64> = (0..=reach).map(|k| det.kernel(k as f64 * h)).collect();
    let margin = SWEEP_MARGIN * det.width();

    (0..n)
        .filter(|&j| {
            let y = grid.y(j);
            y - margin >= grid.y_min() && y + margin <= grid.y_max()
        })
        .map(|j| {
            let lo = j.saturating_sub(reach);
            let hi = (j + reach).min(n - 1);
            let terms: Vec<f64> = (lo..=hi)
                .map(|i| {
                    let weight = if i == 0 || i + 1 == n { 0.5 * h } else { h };
                    weight * table[i.abs_diff(j)] * density.values[i]
                })
                .collect();
            (j, pairwise_sum(&terms))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioMeasurement {
    pub r: f64,
    pub y_m: f64,
    pub y_min: f64,
    pub p_min: f64,
    pub p_max: f64,
}

/// Extremal grid point: among samples within a relative `1e-12` of the
/// extreme value, the one nearest `y = 0`, preferring positive `y` on ties.
fn extremum_nearest_origin(density: &Density, target: f64) -> f64 {
    let grid = &density.grid;
    let tol = TIE_TOLERANCE * density.max().abs();
    let candidates: Vec<f64> = density
        .values
        .iter()
        .enumerate()
        .filter(|(_, v)| (**v - target).abs() <= tol)
        .map(|(i, _)| grid.y(i))
        .collect();
    let nearest = candidates.iter().map(|y| y.abs()).fold(f64::INFINITY, f64::min);
    candidates
        .into_iter()
        .filter(|y| y.abs() <= nearest + 0.5 * grid.spacing())
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Grid argmax of the density, ties going to the smallest `|y|`, then to positive `y`.
pub fn density_argmax(density: &Density) -> f64 {
    extremum_nearest_origin(density, density.max())
}

/// Grid argmin of the density with the same tie rule as [`density_argmax`].
pub fn density_argmin(density: &Density) -> f64 {
    extremum_nearest_origin(density, density.min())
}

/// Vertex of the parabola through the sample at `y` and its two neighbours.
/// Shifted fringes put the true extremum between samples; near an extremum
/// the density is quadratic, so this recovers it to far better than a step.
fn refine_extremum(density: &Density, y: f64) -> f64 {
    let grid = &density.grid;
    let h = grid.spacing();
    let i = ((y - grid.y_min()) / h).round() as usize;
    if i == 0 || i + 1 >= density.values.len() {
        return y;
    }
    let (f0, f1, f2) = (density.values[i - 1], density.values[i], density.values[i + 1]);
    let curvature = f0 - 2.0 * f1 + f2;
    if curvature == 0.0 {
        return y;
    }
    let offset = (0.5 * (f0 - f2) / curvature).clamp(-0.5, 0.5);
    y + offset * h
}

/// `R = P(y_min) / P(y_m)`: detection probability around the density minimum
/// over that around the maximum. For standing waves with a node at the origin
/// `y_min = 0`. Both positions are the grid extrema refined between samples.
pub fn ratio_r(density: &Density, det: &DetectorSpec) -> Result<RatioMeasurement> {
    let y_m = refine_extremum(density, density_argmax(density));
    let y_min = refine_extremum(density, density_argmin(density));
    let p_min = detection_probability(density, det, y_min).probability;
    let p_max = detection_probability(density, det, y_m).probability;
    if !(p_max > 0.0) {
        return Err(Error::UndefinedRatio);
    }
    Ok(RatioMeasurement {
        r: p_min / p_max,
        y_m,
        y_min,
        p_min,
        p_max,
    })
}

/// Leading small-velocity forms `(R_phi, R_psi / R_phi)`:
/// `w^2 v^2 / 2` and `1 + (gamma_beta - 1) / (2 (gamma_beta + 1) w^2)`.
pub fn approx_small_velocity(gamma_beta: f64, v: f64, w: f64) -> (f64, f64) {
    let r_phi = 0.5 * w * w * v * v;
    let ratio = 1.0 + (gamma_beta - 1.0) / (2.0 * (gamma_beta + 1.0) * w * w);
    (r_phi, ratio)
}

/// `R` for the density `a sin^2(p y) + b cos^2(p y)` on the whole line, from
/// `integral exp(-y^2/w^2) sin^2(p y) dy = (sqrt(pi) w / 2)(1 - exp(-p^2 w^2))`.
pub fn closed_form_ratio(a: f64, b: f64, p: f64, w: f64) -> f64 {
    let e = (-(p * w).powi(2)).exp();
    (a * (1.0 - e) + b * (1.0 + e)) / (a * (1.0 + e) + b * (1.0 - e))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Discriminator {
    pub r_psi: f64,
    pub r_phi: f64,
    pub ratio_gap: f64,
    /// `sup_{y_c} |P_psi(y_c) - P_phi(y_c)|` over the swept detector positions.
    pub sup_gap: f64,
}

impl Discriminator {
    pub const NO_SIGNALING_BOUND: f64 = 1e-12;

    pub fn certifies_no_signaling(&self) -> bool {
        self.sup_gap <= Self::NO_SIGNALING_BOUND
    }
}

/// Compares the detection statistics Bob sees for the two preparation bases.
pub fn signaling_discriminator(
    density_psi: &Density,
    density_phi: &Density,
    det: &DetectorSpec,
) -> Result<Discriminator> {
    if density_psi.grid != density_phi.grid || density_psi.values.len() != density_phi.values.len() {
        return Err(Error::GridMismatch("densities are sampled on different grids"));
    }
    let psi = detection_curve(density_psi, det);
    let phi = detection_curve(density_phi, det);
    if psi.is_empty() {
        return Err(Error::GridMismatch("window is narrower than 12 detector widths"));
    }
    let sup_gap = psi
        .iter()
        .zip(&phi)
        .map(|((_, a), (_, b))| (a - b).abs())
        .fold(0.0, f64::max);
    let r_psi = ratio_r(density_psi, det)?.r;
    let r_phi = ratio_r(density_phi, det)?.r;
    Ok(Discriminator {
        r_psi,
        r_phi,
        ratio_gap: (r_psi - r_phi).abs(),
        sup_gap,
    })
}

/// Exact and small-velocity ratios for one boost and detector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioReport {
    pub r_phi: f64,
    pub r_psi: f64,
    pub ratio_of_ratios: f64,
    pub approx_r_phi: f64,
    pub approx_ratio: f64,
    pub y_m: f64,
}

pub fn ratio_report(
    density_psi: &Density,
    density_phi: &Density,
    det: &DetectorSpec,
    gamma_beta: f64,
    v: f64,
) -> Result<RatioReport> {
    let psi = ratio_r(density_psi, det)?;
    let phi = ratio_r(density_phi, det)?;
    let (approx_r_phi, approx_ratio) = approx_small_velocity(gamma_beta, v, det.width());
    Ok(RatioReport {
        r_phi: phi.r,
        r_psi: psi.r,
        ratio_of_ratios: psi.r / phi.r,
        approx_r_phi,
        approx_ratio,
        y_m: psi.y_m,
    })
}
