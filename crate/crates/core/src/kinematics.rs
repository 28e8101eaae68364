//! Relativistic kinematics in natural units.
//!
//! Everything here uses `hbar = c = m = 1`: momenta are in units of `mc`,
//! speeds are fractions of `c`, and lengths (elsewhere in the crate) are in
//! reduced Compton wavelengths `hbar / (mc)`.
//!
//! The particle momentum is always along `y`, the boost is always along `z`.

use crate::error::{domain, Result};

/// Below this, `gamma - 1` is treated as exactly zero.
pub const DEGENERATE_GAMMA: f64 = 1e-14;

/// `1 / sqrt(1 - speed^2)`.
pub fn gamma_from_speed(speed: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&speed) {
        return Err(domain("speed", speed, "0 <= speed < 1"));
    }
    Ok(1.0 / ((1.0 - speed) * (1.0 + speed)).sqrt())
}

/// Inverse of [`gamma_from_speed`].
pub fn speed_from_gamma(gamma: f64) -> Result<f64> {
    if !(gamma >= 1.0 && gamma.is_finite()) {
        return Err(domain("gamma", gamma, "finite gamma >= 1"));
    }
    Ok(((gamma - 1.0) * (gamma + 1.0)).sqrt() / gamma)
}

/// On-shell momentum `p` along `y` of a unit-mass particle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourMomentum {
    p: f64,
}

impl FourMomentum {
    pub const MASS: f64 = 1.0;

    pub fn new(p: f64) -> Result<Self> {
        if !p.is_finite() {
            return Err(domain("p", p, "finite momentum"));
        }
        Ok(Self { p })
    }

    /// Momentum with the given Lorentz factor and direction (`positive` means `+y`).
    pub fn from_gamma(gamma: f64, positive: bool) -> Result<Self> {
        if !(gamma >= 1.0 && gamma.is_finite()) {
            return Err(domain("gamma_p", gamma, "finite gamma_p >= 1"));
        }
        let magnitude = ((gamma - 1.0) * (gamma + 1.0)).sqrt() * Self::MASS;
        Self::new(if positive { magnitude } else { -magnitude })
    }

    /// Momentum of a particle moving with signed velocity `v` along `y`.
    pub fn from_velocity(v: f64) -> Result<Self> {
        let gamma = gamma_from_speed(v.abs()).map_err(|_| domain("v", v, "|v| < 1"))?;
        Self::new(gamma * v * Self::MASS)
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn energy(&self) -> f64 {
        Self::MASS.hypot(self.p)
    }

    pub fn gamma(&self) -> f64 {
        self.energy() / Self::MASS
    }

    pub fn velocity(&self) -> f64 {
        self.p / self.energy()
    }

    pub fn reversed(&self) -> Self {
        Self { p: -self.p }
    }
}

/// Boost of the observer frame with velocity `beta` along `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoostParameter {
    beta: f64,
    gamma: f64,
}

impl BoostParameter {
    pub fn from_beta(beta: f64) -> Result<Self> {
        let gamma = gamma_from_speed(beta).map_err(|_| domain("beta", beta, "0 <= beta < 1"))?;
        Ok(Self { beta, gamma })
    }

    pub fn from_gamma(gamma: f64) -> Result<Self> {
        let beta =
            speed_from_gamma(gamma).map_err(|_| domain("gamma_beta", gamma, "finite gamma_beta >= 1"))?;
        Ok(Self { beta, gamma })
    }

    pub fn identity() -> Self {
        Self {
            beta: 0.0,
            gamma: 1.0,
        }
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

/// `sin(phi/2)` of the Wigner rotation for a boost perpendicular to the momentum:
/// `sqrt((gamma_p - 1)(gamma_beta - 1) / (2 (1 + gamma_p gamma_beta)))`.
pub fn wigner_half_angle_sine(gamma_p: f64, gamma_beta: f64) -> Result<f64> {
    if !(gamma_p >= 1.0 && gamma_p.is_finite()) {
        return Err(domain("gamma_p", gamma_p, "finite gamma_p >= 1"));
    }
    if !(gamma_beta >= 1.0 && gamma_beta.is_finite()) {
        return Err(domain("gamma_beta", gamma_beta, "finite gamma_beta >= 1"));
    }
    let (dp, db) = (gamma_p - 1.0, gamma_beta - 1.0);
    if dp < DEGENERATE_GAMMA || db < DEGENERATE_GAMMA {
        return Ok(0.0);
    }
    // 1 + gamma_p gamma_beta written in the deviations to keep precision near 1
    let denominator = 2.0 * (2.0 + dp + db + dp * db);
    Ok((dp * db / denominator).sqrt())
}

/// Signed Wigner angle: positive for `+y` momentum, negative for `-y`, zero at rest.
pub fn wigner_angle(momentum: &FourMomentum, boost: &BoostParameter) -> f64 {
    if momentum.p() == 0.0 {
        return 0.0;
    }
    let s = wigner_half_angle_sine(momentum.gamma(), boost.gamma())
        .expect("constructed kinematics are always in domain");
    let magnitude = 2.0 * s.asin();
    magnitude.copysign(momentum.p())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_from_speed(0.0).unwrap(), 1.0);
        // 1/sqrt(1 - 0.995^2) = 1/sqrt(0.009975)
        assert_abs_diff_eq!(gamma_from_speed(0.995).unwrap(), 10.012523486435178, epsilon = 1e-12);
        let v = speed_from_gamma(1.2).unwrap();
        assert_abs_diff_eq!(v, (1.0f64 - 1.0 / 1.44).sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(gamma_from_speed(v).unwrap(), 1.2, epsilon = 1e-14);
    }

    #[test]
    fn speed_out_of_range() {
        assert!(gamma_from_speed(1.0).is_err());
        assert!(gamma_from_speed(-0.1).is_err());
        assert!(gamma_from_speed(f64::NAN).is_err());
        assert!(speed_from_gamma(0.99).is_err());
        assert!(BoostParameter::from_beta(1.0).is_err());
    }

    #[test]
    fn half_angle_examples() {
        assert_eq!(wigner_half_angle_sine(1.0, 57.0).unwrap(), 0.0);
        assert_eq!(wigner_half_angle_sine(3.5, 1.0).unwrap(), 0.0);
        assert_eq!(wigner_half_angle_sine(1.0 + 1e-15, 10.0).unwrap(), 0.0);
        // sqrt(0.2 * 9 / (2 * 13)) = sqrt(1.8/26)
        assert_abs_diff_eq!(
            wigner_half_angle_sine(1.2, 10.0).unwrap(),
            (1.8f64 / 26.0).sqrt(),
            epsilon = 1e-15
        );
        assert!(wigner_half_angle_sine(0.5, 2.0).is_err());
        assert!(wigner_half_angle_sine(2.0, f64::INFINITY).is_err());
    }

    #[test]
    fn signed_angle() {
        let boost = BoostParameter::from_gamma(10.0).unwrap();
        let plus = FourMomentum::from_gamma(1.2, true).unwrap();
        let phi = wigner_angle(&plus, &boost);
        assert_abs_diff_eq!(phi, 2.0 * (1.8f64 / 26.0).sqrt().asin(), epsilon = 1e-15);
        assert_abs_diff_eq!(phi, 0.532_504_098_301_850_7, epsilon = 1e-12);
        assert_eq!(wigner_angle(&plus.reversed(), &boost), -phi);
        let rest = FourMomentum::new(0.0).unwrap();
        assert_eq!(wigner_angle(&rest, &BoostParameter::from_beta(0.9).unwrap()), 0.0);
    }

    #[test]
    fn four_momentum_aliases_agree() {
        let from_gamma = FourMomentum::from_gamma(1.2, true).unwrap();
        let from_v = FourMomentum::from_velocity(from_gamma.velocity()).unwrap();
        assert_abs_diff_eq!(from_gamma.p(), from_v.p(), epsilon = 1e-14);
        assert_abs_diff_eq!(from_gamma.gamma(), 1.2, epsilon = 1e-15);
        assert!(from_gamma.energy() >= FourMomentum::MASS);
    }

    proptest! {
        #[test]
        fn half_angle_bounded(gp in 1.0f64..1e6, gb in 1.0f64..1e6) {
            let s = wigner_half_angle_sine(gp, gb).unwrap();
            prop_assert!(s >= 0.0);
            prop_assert!(s < std::f64::consts::FRAC_1_SQRT_2);
        }

        #[test]
        fn half_angle_symmetric(a in 1.0f64..1e4, b in 1.0f64..1e4) {
            let ab = wigner_half_angle_sine(a, b).unwrap();
            let ba = wigner_half_angle_sine(b, a).unwrap();
            prop_assert!((ab - ba).abs() <= 1e-15);
        }

        #[test]
        fn half_angle_monotone(a in 1.001f64..1e3, b in 1.001f64..1e3, step in 1e-3f64..10.0) {
            let base = wigner_half_angle_sine(a, b).unwrap();
            prop_assert!(wigner_half_angle_sine(a + step, b).unwrap() > base);
            prop_assert!(wigner_half_angle_sine(a, b + step).unwrap() > base);
        }

        #[test]
        fn gamma_round_trip(g in 1.0f64..1e6) {
            // the speed is stored as 1 - O(1/g^2), so the round trip can only
            // recover g to about g^2 ulps once g is large
            let back = gamma_from_speed(speed_from_gamma(g).unwrap()).unwrap();
            let tol = (1e-12f64).max(4.0 * g * g * f64::EPSILON);
            prop_assert!((back - g).abs() <= tol * g, "g = {g}, back = {back}");
        }

        #[test]
        fn gamma_round_trip_moderate(g in 1.0f64..10.0) {
            let back = gamma_from_speed(speed_from_gamma(g).unwrap()).unwrap();
            prop_assert!((back - g).abs() <= 1e-12, "g = {g}, back = {back}");
        }

        #[test]
        fn angle_is_odd(p in -50.0f64..50.0, beta in 0.0f64..0.999) {
            let boost = BoostParameter::from_beta(beta).unwrap();
            let m = FourMomentum::new(p).unwrap();
            prop_assert_eq!(wigner_angle(&m.reversed(), &boost), -wigner_angle(&m, &boost));
        }
    }
}
