//! Scenario runners. Each returns the report and the files to write; nothing
//! here touches the filesystem, the clock, or a random source.

use wignerkit::boost::{boost, BoostMode};
use wignerkit::detection::{
    closed_form_ratio, density_argmin, ratio_report, signaling_discriminator, DetectorSpec,
    Discriminator,
};
use wignerkit::kinematics::{wigner_angle, wigner_half_angle_sine, BoostParameter, FourMomentum};
use wignerkit::spin::{Basis, Outcome, Spinor};
use wignerkit::states::{build_entangled_pair, collapse, MeasurementSpec, MomentumSpinState};
use wignerkit::wavefunction::{
    synthesize_discrete, synthesize_gaussian, Density, GaussianPacketSpec, GaussianSynthesis,
    KFactor, MomentumQuadrature, YGrid,
};

use crate::config::{ModeArg, OutcomeDisplay, Scenario, ScenarioConfig};
use crate::curve::Curve;
use crate::error::RunError;
use crate::report::Report;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Tolerance on `integral rho dy = 1` before a run is flagged.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputFile {
    pub name: String,
    pub contents: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub report: Report,
    pub files: Vec<OutputFile>,
    /// Numerical contracts that failed; a nonempty list maps to exit status 3.
    pub violations: Vec<String>,
}

struct Kinematics {
    boost: BoostParameter,
    momentum: FourMomentum,
    sin_half: f64,
    angle: f64,
}

pub fn run(config: &ScenarioConfig) -> Result<RunOutput, RunError> {
    let boost = config.boost.parameter()?;
    let momentum = config.particle.momentum()?;
    let kin = Kinematics {
        boost,
        momentum,
        sin_half: wigner_half_angle_sine(momentum.gamma(), boost.gamma())?,
        angle: wigner_angle(&momentum, &boost),
    };

    let mut out = RunOutput {
        report: header(config, &kin),
        files: Vec::new(),
        violations: Vec::new(),
    };
    match config.scenario {
        Scenario::Angle => {}
        Scenario::Figure1 => figure1(config, &kin, &mut out)?,
        Scenario::Figure2 => figure2(config, &kin, &mut out)?,
        Scenario::Ratio => ratio(config, &kin, &mut out)?,
        Scenario::Signaling => signaling(config, &kin, &mut out)?,
        Scenario::Paradox => paradox(config, &kin, &mut out)?,
    }
    for f in &out.files {
        let key = format!("file.{}", f.name.trim_end_matches(".csv"));
        out.report.set(key, &f.name);
    }
    out.report.set(
        "status",
        if out.violations.is_empty() { "ok".to_string() } else { out.violations.join("; ") },
    );
    Ok(out)
}

fn header(config: &ScenarioConfig, kin: &Kinematics) -> Report {
    let mut r = Report::new();
    r.comment("wignerkit run report");
    r.comment("units: hbar = c = m = 1; lengths in reduced Compton wavelengths hbar/(mc); momenta in mc; angles in radians");
    r.set("tool.version", TOOL_VERSION);
    for (k, v) in config.echo() {
        r.set(format!("config.{k}"), v);
    }
    r.set("kinematics.gamma_beta", kin.boost.gamma());
    r.set("kinematics.beta", kin.boost.beta());
    r.set("kinematics.gamma_p", kin.momentum.gamma());
    r.set("kinematics.p", kin.momentum.p());
    r.set("kinematics.v", kin.momentum.velocity());
    r.set("kinematics.sin_half_angle", kin.sin_half);
    r.set("kinematics.wigner_angle", kin.angle);
    r
}

/// Particle 2's state after the partner's spin measurement on the singlet pair.
pub fn collapsed_state(p: f64, basis: Basis, outcome: Outcome) -> Result<(f64, MomentumSpinState), RunError> {
    let pair = build_entangled_pair(p)?;
    let c = collapse(&pair, MeasurementSpec::new(basis, outcome))?;
    let state = c
        .state
        .ok_or_else(|| RunError::Numerical(format!("{basis:?} {outcome:?} has zero probability")))?;
    Ok((c.probability, state))
}

pub fn boosted_density(
    state: &MomentumSpinState,
    parameter: &BoostParameter,
    mode: BoostMode,
    grid: &YGrid,
) -> Result<Density, RunError> {
    let moved = boost(state, parameter, mode)?;
    Ok(synthesize_discrete(&moved, grid)?.density())
}

fn check_norm(out: &mut RunOutput, label: &str, integral: f64) {
    if (integral - 1.0).abs() > NORMALIZATION_TOLERANCE {
        out.violations
            .push(format!("{label} integrates to {integral}, not 1 within {NORMALIZATION_TOLERANCE}"));
    }
}

fn visibility(d: &Density) -> f64 {
    (d.max() - d.min()) / (d.max() + d.min())
}

fn figure1(config: &ScenarioConfig, kin: &Kinematics, out: &mut RunOutput) -> Result<(), RunError> {
    let p = kin.momentum.p();
    let grid = YGrid::standing_wave(p, YGrid::MIN_HALF_PERIODS, config.points_per_half_period())?;
    let mode = config.boost_mode();
    let (_, psi_state) = collapsed_state(p, Basis::Z, config.outcome)?;
    let (_, phi_state) = collapsed_state(p, Basis::X, config.outcome)?;
    let psi = boosted_density(&psi_state, &kin.boost, mode, &grid)?;
    let phi = boosted_density(&phi_state, &kin.boost, mode, &grid)?;
    check_norm(out, "density_psi", psi.integral());
    check_norm(out, "density_phi", phi.integral());

    let mut curve = Curve::new(&["y_over_compton", "density_phi", "density_psi"]);
    for (i, y) in grid.points().enumerate() {
        curve.push(vec![y, phi.values[i], psi.values[i]]);
    }
    let gap = psi.sup_distance(&phi).expect("same grid");

    let r = &mut out.report;
    r.set("result.grid_points", grid.len());
    r.set("result.window_half_width", grid.y_max());
    r.set("result.psi_min_over_max", psi.min() / psi.max());
    r.set("result.psi_visibility", visibility(&psi));
    r.set("result.phi_min_over_max", phi.min() / phi.max());
    r.set("result.phi_visibility", visibility(&phi));
    r.set("result.phi_node_nearest_origin", density_argmin(&phi));
    r.set("result.psi_node_nearest_origin", density_argmin(&psi));
    r.set("result.sup_gap", gap);
    r.set("result.sup_gap_over_peak", gap / phi.max().max(psi.max()));
    out.files.push(OutputFile {
        name: "figure1.csv".into(),
        contents: curve.to_csv(),
    });
    Ok(())
}

fn packet(
    spin: Spinor,
    k: KFactor,
    config: &ScenarioConfig,
    boost: &BoostParameter,
    grid: &YGrid,
) -> Result<GaussianSynthesis, RunError> {
    let spec = GaussianPacketSpec::new(config.packet_width, spin, k)?;
    let quad = MomentumQuadrature::for_width(config.packet_width);
    Ok(synthesize_gaussian(&spec, Some(boost), grid, &quad)?)
}

fn k_name(k: KFactor) -> &'static str {
    match k {
        KFactor::Unity => "unity",
        KFactor::SqrtMassOverEnergy => "sqrt",
    }
}

fn figure2(config: &ScenarioConfig, kin: &Kinematics, out: &mut RunOutput) -> Result<(), RunError> {
    let half = 12.0 * config.packet_width;
    let grid = YGrid::new(-half, half, config.grid_points)?;
    let primary = config.k_factor();
    let alternate = match primary {
        KFactor::Unity => KFactor::SqrtMassOverEnergy,
        KFactor::SqrtMassOverEnergy => KFactor::Unity,
    };
    for (k, prefix, name) in [
        (primary, "result", "figure2.csv".to_string()),
        (alternate, "alternate", format!("figure2_k_{}.csv", k_name(alternate))),
    ] {
        let x = packet(Spinor::plus_x(), k, config, &kin.boost, &grid)?;
        let z = packet(Spinor::plus_z(), k, config, &kin.boost, &grid)?;
        let dx = x.wavefunction.density();
        let dz = z.wavefunction.density();
        check_norm(out, &format!("{prefix} density_spin_x"), dx.integral());
        check_norm(out, &format!("{prefix} density_spin_z"), dz.integral());
        for (label, s) in [("x", &x), ("z", &z)] {
            if s.parseval_defect() > NORMALIZATION_TOLERANCE {
                out.violations.push(format!(
                    "{prefix} spin {label}: Parseval defect {}",
                    s.parseval_defect()
                ));
            }
        }

        let mut curve = Curve::new(&["y_over_compton", "density_spin_x", "density_spin_z"]);
        for (i, y) in grid.points().enumerate() {
            curve.push(vec![y, dx.values[i], dz.values[i]]);
        }
        let gap = dx.sup_distance(&dz).expect("same grid");
        let r = &mut out.report;
        r.set(format!("{prefix}.k_factor"), k_name(k));
        r.set(format!("{prefix}.norm_spin_x"), dx.integral());
        r.set(format!("{prefix}.norm_spin_z"), dz.integral());
        r.set(format!("{prefix}.parseval_defect_spin_x"), x.parseval_defect());
        r.set(format!("{prefix}.parseval_defect_spin_z"), z.parseval_defect());
        r.set(format!("{prefix}.truncated_momentum_range"), x.truncated_range || z.truncated_range);
        r.set(format!("{prefix}.sup_gap"), gap);
        r.set(format!("{prefix}.sup_gap_over_peak"), gap / dx.max().max(dz.max()));
        out.files.push(OutputFile {
            name,
            contents: curve.to_csv(),
        });
    }
    Ok(())
}

struct BasisPair {
    psi: Density,
    phi: Density,
}

fn basis_pair(
    config: &ScenarioConfig,
    kin: &Kinematics,
    grid: &YGrid,
    outcome: Outcome,
) -> Result<BasisPair, RunError> {
    let p = kin.momentum.p();
    let mode = config.boost_mode();
    let (_, psi_state) = collapsed_state(p, Basis::Z, outcome)?;
    let (_, phi_state) = collapsed_state(p, Basis::X, outcome)?;
    Ok(BasisPair {
        psi: boosted_density(&psi_state, &kin.boost, mode, grid)?,
        phi: boosted_density(&phi_state, &kin.boost, mode, grid)?,
    })
}

fn detector_grid(config: &ScenarioConfig, kin: &Kinematics) -> Result<(DetectorSpec, YGrid), RunError> {
    let det = DetectorSpec::new(config.w).map_err(|e| RunError::Config(format!("w: {e}")))?;
    let grid = YGrid::standing_wave_for_detector(kin.momentum.p(), config.w, config.points_per_half_period())?;
    Ok((det, grid))
}

fn write_ratios(
    config: &ScenarioConfig,
    kin: &Kinematics,
    det: &DetectorSpec,
    pair: &BasisPair,
    out: &mut RunOutput,
) -> Result<(), RunError> {
    let rr = ratio_report(&pair.psi, &pair.phi, det, kin.boost.gamma(), kin.momentum.velocity())?;
    let (p, w) = (kin.momentum.p(), det.width());
    let (a, b) = match config.mode {
        ModeArg::Linear => (1.0 - kin.sin_half.powi(2), kin.sin_half.powi(2)),
        ModeArg::Physical => (1.0, 0.0),
    };
    let r = &mut out.report;
    r.set("result.detector_marginal_width", det.is_marginal());
    r.set("result.r_phi", rr.r_phi);
    r.set("result.r_psi", rr.r_psi);
    r.set("result.ratio_of_ratios", rr.ratio_of_ratios);
    r.set("result.y_m", rr.y_m);
    r.set("result.approx_r_phi", rr.approx_r_phi);
    r.set("result.approx_ratio", rr.approx_ratio);
    r.set("oracle.r_phi", closed_form_ratio(1.0, 0.0, p, w));
    r.set("oracle.r_psi", closed_form_ratio(a, b, p, w));
    Ok(())
}

fn write_discriminator(d: &Discriminator, config: &ScenarioConfig, out: &mut RunOutput) {
    let r = &mut out.report;
    r.set("signaling.r_psi", d.r_psi);
    r.set("signaling.r_phi", d.r_phi);
    r.set("signaling.ratio_gap", d.ratio_gap);
    r.set("signaling.sup_gap", d.sup_gap);
    r.set("signaling.no_signaling_certified", d.certifies_no_signaling());
    if config.mode == ModeArg::Physical && !d.certifies_no_signaling() {
        out.violations.push(format!(
            "physical mode sup statistic {} exceeds {}",
            d.sup_gap,
            Discriminator::NO_SIGNALING_BOUND
        ));
    }
}

/// For each basis, the largest density difference between the two outcomes.
fn write_outcome_independence(
    plus: &BasisPair,
    minus: &BasisPair,
    out: &mut RunOutput,
) {
    let z = plus.psi.sup_distance(&minus.psi).expect("same grid");
    let x = plus.phi.sup_distance(&minus.phi).expect("same grid");
    out.report.set("outcome_independence.z_sup_gap", z);
    out.report.set("outcome_independence.x_sup_gap", x);
}

fn ratio(config: &ScenarioConfig, kin: &Kinematics, out: &mut RunOutput) -> Result<(), RunError> {
    let (det, grid) = detector_grid(config, kin)?;
    let pair = basis_pair(config, kin, &grid, config.outcome)?;
    check_norm(out, "density_psi", pair.psi.integral());
    check_norm(out, "density_phi", pair.phi.integral());
    write_ratios(config, kin, &det, &pair, out)
}

fn signaling(config: &ScenarioConfig, kin: &Kinematics, out: &mut RunOutput) -> Result<(), RunError> {
    let (det, grid) = detector_grid(config, kin)?;
    let pair = basis_pair(config, kin, &grid, config.outcome)?;
    let other = basis_pair(config, kin, &grid, config.outcome.flipped())?;
    check_norm(out, "density_psi", pair.psi.integral());
    check_norm(out, "density_phi", pair.phi.integral());
    let d = signaling_discriminator(&pair.psi, &pair.phi, &det)?;
    out.report
        .set("signaling.density_sup_gap", pair.psi.sup_distance(&pair.phi).expect("same grid"));
    write_discriminator(&d, config, out);
    write_outcome_independence(&pair, &other, out);
    Ok(())
}

fn paradox(config: &ScenarioConfig, kin: &Kinematics, out: &mut RunOutput) -> Result<(), RunError> {
    let p = kin.momentum.p();
    let mode = config.boost_mode();
    let mut max_change: f64 = 0.0;
    for basis in [Basis::Z, Basis::X] {
        for outcome in [Outcome::Plus, Outcome::Minus] {
            let (prob, state) = collapsed_state(p, basis, outcome)?;
            let key = format!(
                "collapse.{}_{}",
                if basis == Basis::Z { "z" } else { "x" },
                if outcome == Outcome::Plus { "plus" } else { "minus" }
            );
            out.report.set(format!("{key}.probability"), prob);
            let moved = boost(&state, &kin.boost, mode)?;
            let norm = moved.norm_sqr();
            if (norm - 1.0).abs() > 1e-12 {
                out.violations.push(format!("{key}: boosted norm {norm}"));
            }
            for (a, b) in state.components().iter().zip(moved.components()) {
                let (sa, sb) = (a.weighted_spin(), b.weighted_spin());
                max_change = max_change.max((sa.up - sb.up).norm()).max((sa.down - sb.down).norm());
            }
        }
    }
    out.report.set("result.max_component_change", max_change);
    out.report.set("result.outcome_for_ratios", OutcomeDisplay(config.outcome));

    let (det, grid) = detector_grid(config, kin)?;
    let pair = basis_pair(config, kin, &grid, config.outcome)?;
    let other = basis_pair(config, kin, &grid, config.outcome.flipped())?;
    for (label, d) in [
        ("density_psi", &pair.psi),
        ("density_phi", &pair.phi),
        ("density_psi (other outcome)", &other.psi),
        ("density_phi (other outcome)", &other.phi),
    ] {
        check_norm(out, label, d.integral());
    }
    write_ratios(config, kin, &det, &pair, out)?;
    let d = signaling_discriminator(&pair.psi, &pair.phi, &det)?;
    write_discriminator(&d, config, out);
    write_outcome_independence(&pair, &other, out);
    Ok(())
}
