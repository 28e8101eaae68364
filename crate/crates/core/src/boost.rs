//! Two ways of carrying a momentum-spin state into a boosted frame.
//!
//! [`boost_linear`] rotates every momentum component by its own Wigner
//! rotation. [`boost_physical`] rotates every component by one common
//! rotation fixed by how the spin state was prepared. Only the spin part is
//! transformed: the `y` momentum is unchanged by a boost along `z`, and the
//! `x`/`z` momentum components are not tracked.

use crate::error::{Error, Result};
use crate::kinematics::{wigner_angle, BoostParameter, FourMomentum};
use crate::spin::{apply, wigner_rotation, SpinOperator};
use crate::states::{Component, MomentumSpinState};

/// Where the spin state was fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PreparationContext {
    /// Genuinely free state; per-component rotation applies.
    Free,
    /// Spin measured while the particle moved along `+y`, then reflected.
    PreparedPlusY,
    /// Spin measured while the particle moved along `-y`, then reflected.
    PreparedMinusY,
    /// Spin measured while confined between the walls; no rotation.
    Confined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoostMode {
    Linear,
    Physical(PreparationContext),
}

pub fn boost_linear(state: &MomentumSpinState, boost: &BoostParameter) -> MomentumSpinState {
    let components = state
        .components()
        .iter()
        .map(|c| {
            let rotation = wigner_rotation(wigner_angle(&c.momentum, boost));
            Component::new(c.momentum, apply(&rotation, &c.spin), c.amplitude)
        })
        .collect();
    MomentumSpinState::from_normalized(components)
}

/// The single spin rotation the physical map applies to every component.
pub fn preparation_rotation(
    state: &MomentumSpinState,
    boost: &BoostParameter,
    prep: PreparationContext,
) -> Result<SpinOperator> {
    let positive = match prep {
        PreparationContext::Free => return Err(Error::FreePreparation),
        PreparationContext::Confined => return Ok(SpinOperator::identity()),
        PreparationContext::PreparedPlusY => true,
        PreparationContext::PreparedMinusY => false,
    };
    let magnitude = state.common_magnitude()?;
    let prepared = FourMomentum::new(if positive { magnitude } else { -magnitude })?;
    Ok(wigner_rotation(wigner_angle(&prepared, boost)))
}

pub fn boost_physical(
    state: &MomentumSpinState,
    boost: &BoostParameter,
    prep: PreparationContext,
) -> Result<MomentumSpinState> {
    let rotation = preparation_rotation(state, boost, prep)?;
    let components = state
        .components()
        .iter()
        .map(|c| Component::new(c.momentum, apply(&rotation, &c.spin), c.amplitude))
        .collect();
    Ok(MomentumSpinState::from_normalized(components))
}

pub fn boost(
    state: &MomentumSpinState,
    boost: &BoostParameter,
    mode: BoostMode,
) -> Result<MomentumSpinState> {
    match mode {
        BoostMode::Linear => Ok(boost_linear(state, boost)),
        BoostMode::Physical(prep) => boost_physical(state, boost, prep),
    }
}
