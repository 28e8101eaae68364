//! Momentum-spin states and projective collapse.
//!
//! Momentum kets are treated as discrete orthonormal labels; two components
//! are the same ket exactly when their momenta are equal.

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::kinematics::FourMomentum;
use crate::spin::{Basis, Outcome, Spinor};

const NORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Component {
    pub momentum: FourMomentum,
    pub spin: Spinor,
    pub amplitude: Complex64,
}

impl Component {
    pub fn new(momentum: FourMomentum, spin: Spinor, amplitude: Complex64) -> Self {
        Self {
            momentum,
            spin,
            amplitude,
        }
    }

    /// `amplitude * spin`, the unnormalized spin vector attached to this momentum.
    pub fn weighted_spin(&self) -> Spinor {
        self.spin.scaled(self.amplitude)
    }
}

/// `sum_k amplitude_k |p_k> (x) |spin_k>`, normalized, with distinct momenta.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumSpinState {
    components: Vec<Component>,
}

impl MomentumSpinState {
    /// Validates distinct momenta and rescales to unit norm.
    pub fn new(components: Vec<Component>) -> Result<Self> {
        for (i, a) in components.iter().enumerate() {
            if components[..i].iter().any(|b| b.momentum.p() == a.momentum.p()) {
                return Err(Error::DuplicateMomentum(a.momentum.p()));
            }
        }
        let norm = components
            .iter()
            .map(|c| c.amplitude.norm_sqr() * c.spin.norm_sqr())
            .sum::<f64>()
            .sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::ZeroNorm);
        }
        let scale = Complex64::new(1.0 / norm, 0.0);
        let components = components
            .into_iter()
            .map(|c| Component::new(c.momentum, c.spin, c.amplitude * scale))
            .collect();
        Ok(Self { components })
    }

    pub(crate) fn from_normalized(components: Vec<Component>) -> Self {
        Self { components }
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn norm_sqr(&self) -> f64 {
        self.components
            .iter()
            .map(|c| c.amplitude.norm_sqr() * c.spin.norm_sqr())
            .sum()
    }

    /// `<self|other>`, pairing components by momentum.
    pub fn inner(&self, other: &MomentumSpinState) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for a in &self.components {
            for b in other.components.iter().filter(|b| b.momentum.p() == a.momentum.p()) {
                acc += a.weighted_spin().inner(&b.weighted_spin());
            }
        }
        acc
    }

    /// Equal as rays: `|<self|other>| = 1` within `tol` for normalized states.
    pub fn same_ray(&self, other: &MomentumSpinState, tol: f64) -> bool {
        (self.inner(other).norm() - 1.0).abs() <= tol
            && (self.norm_sqr() - 1.0).abs() <= tol
            && (other.norm_sqr() - 1.0).abs() <= tol
    }

    /// The common `|p|` of all components, if there is one.
    pub fn common_magnitude(&self) -> Result<f64> {
        let first = self
            .components
            .first()
            .map(|c| c.momentum.p().abs())
            .ok_or(Error::ZeroNorm)?;
        for c in &self.components[1..] {
            let m = c.momentum.p().abs();
            if (m - first).abs() > 1e-12 * first.max(1.0) {
                return Err(Error::UnequalMagnitudes(first, m));
            }
        }
        Ok(first)
    }
}

/// `(1/sqrt 2) [ |p y, spin> - |-p y, spin> ]`
pub fn standing_wave_state(p: f64, spin: Spinor) -> Result<MomentumSpinState> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(domain("p", p, "p > 0"));
    }
    let spin = spin.normalized().ok_or(Error::ZeroNorm)?;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    MomentumSpinState::new(vec![
        Component::new(FourMomentum::new(p)?, spin, Complex64::new(h, 0.0)),
        Component::new(FourMomentum::new(-p)?, spin, Complex64::new(-h, 0.0)),
    ])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Particle {
    pub momentum: FourMomentum,
    pub spin: Spinor,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairTerm {
    pub amplitude: Complex64,
    pub first: Particle,
    pub second: Particle,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoParticleState {
    terms: Vec<PairTerm>,
}

impl TwoParticleState {
    pub fn terms(&self) -> &[PairTerm] {
        &self.terms
    }

    /// Norm assuming the term kets are mutually orthogonal or identical; terms
    /// sharing both momenta are summed coherently.
    pub fn norm_sqr(&self) -> f64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for a in &self.terms {
            for b in &self.terms {
                if a.first.momentum == b.first.momentum && a.second.momentum == b.second.momentum {
                    acc += a.amplitude.conj()
                        * b.amplitude
                        * a.first.spin.inner(&b.first.spin)
                        * a.second.spin.inner(&b.second.spin);
                }
            }
        }
        acc.re
    }
}

/// Spin singlet with particle 1 at `+p y` and particle 2 on the standing wave:
///
/// `1/2 { |p,+Z>_1 [ |p,-Z>_2 - |-p,-Z>_2 ] - |p,-Z>_1 [ |p,+Z>_2 - |-p,+Z>_2 ] }`
pub fn build_entangled_pair(p: f64) -> Result<TwoParticleState> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(domain("p", p, "p > 0"));
    }
    let plus = FourMomentum::new(p)?;
    let minus = FourMomentum::new(-p)?;
    let particle = |momentum, spin| Particle { momentum, spin };
    let term = |amplitude: f64, first, second| PairTerm {
        amplitude: Complex64::new(amplitude, 0.0),
        first,
        second,
    };
    let (up, down) = (Spinor::plus_z(), Spinor::minus_z());
    Ok(TwoParticleState {
        terms: vec![
            term(0.5, particle(plus, up), particle(plus, down)),
            term(-0.5, particle(plus, up), particle(minus, down)),
            term(-0.5, particle(plus, down), particle(plus, up)),
            term(0.5, particle(plus, down), particle(minus, up)),
        ],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MeasurementSpec {
    pub basis: Basis,
    pub outcome: Outcome,
}

impl MeasurementSpec {
    pub fn new(basis: Basis, outcome: Outcome) -> Self {
        Self { basis, outcome }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Collapse {
    pub probability: f64,
    /// `None` when the outcome has zero probability.
    pub state: Option<MomentumSpinState>,
}

/// Projects particle 1's spin onto the eigenspinor of `meas` and returns the
/// Born probability together with particle 2's conditional state.
///
/// Particle 1's momentum is left unmeasured and traced over; when particle 1
/// carries a single momentum (as in the entangled pair) the conditional state
/// is pure.
pub fn collapse(state: &TwoParticleState, meas: MeasurementSpec) -> Result<Collapse> {
    let projector = meas.basis.eigenstate(meas.outcome);

    // Group by particle-1 momentum; within a group, accumulate particle 2's
    // spin vectors per particle-2 momentum.
    let mut groups: Vec<(FourMomentum, Vec<(FourMomentum, Spinor)>)> = Vec::new();
    for term in &state.terms {
        let weight = term.amplitude * projector.inner(&term.first.spin);
        let contribution = term.second.spin.scaled(weight);
        let group = match groups.iter().position(|(m, _)| *m == term.first.momentum) {
            Some(i) => &mut groups[i].1,
            None => {
                groups.push((term.first.momentum, Vec::new()));
                &mut groups.last_mut().unwrap().1
            }
        };
        match group.iter_mut().find(|(m, _)| *m == term.second.momentum) {
            Some((_, spin)) => *spin = spin.add(&contribution),
            None => group.push((term.second.momentum, contribution)),
        }
    }

    let total = state.norm_sqr();
    if !(total > 0.0) {
        return Err(Error::ZeroNorm);
    }
    let probability: f64 = groups
        .iter()
        .flat_map(|(_, g)| g.iter())
        .map(|(_, s)| s.norm_sqr())
        .sum::<f64>()
        / total;
    if probability <= NORM_TOL * NORM_TOL {
        return Ok(Collapse {
            probability: 0.0,
            state: None,
        });
    }
    if groups.len() > 1 {
        // FIXME: a particle-1 momentum superposition leaves particle 2 mixed;
        // only the pure case is representable here.
        return Err(domain(
            "particle-1 momenta",
            groups.len() as f64,
            "a single particle-1 momentum",
        ));
    }

    let components = groups
        .pop()
        .map(|(_, g)| g)
        .unwrap_or_default()
        .into_iter()
        .filter_map(|(momentum, vector)| {
            let amplitude = vector.norm();
            vector
                .normalized()
                .map(|spin| Component::new(momentum, spin, Complex64::new(amplitude, 0.0)))
        })
        .collect();
    Ok(Collapse {
        probability,
        state: Some(MomentumSpinState::new(components)?),
    })
}
