//! `simulate-classical`: telegraph-process ensemble checked against the
//! closed-form mean and two-time correlation.

use gravcat::classical_probe::{
    decay_constant, estimate_statistics, f0, probe_distance, simulate_telegraph,
    telegraph_parameters, ClassicalProbeSpec,
};
use gravcat::quantities::Dimension;
use serde_json::json;

use crate::config::{optional, required, KeySpec, LoadedConfig, ValueKind};
use crate::output::CommandOutput;

use super::{compute_error, RunError};

pub fn schema() -> Vec<KeySpec> {
    vec![
        optional("f0", ValueKind::Quantity(Dimension::FORCE, "force")),
        optional("M", ValueKind::Quantity(Dimension::MASS, "mass")),
        optional("m", ValueKind::Quantity(Dimension::MASS, "mass")),
        optional("L", ValueKind::Quantity(Dimension::LENGTH, "length")),
        optional("D", ValueKind::Quantity(Dimension::LENGTH, "length")),
        optional("y", ValueKind::Quantity(Dimension::LENGTH, "length")),
        optional("nu", ValueKind::Quantity(Dimension::RATE, "rate")),
        optional("tau", ValueKind::Quantity(Dimension::TIME, "time")),
        optional("Gamma", ValueKind::Quantity(Dimension::RATE, "rate")),
        required("dt", ValueKind::Quantity(Dimension::TIME, "time")),
        required("t_max", ValueKind::Quantity(Dimension::TIME, "time")),
        required("n_traj", ValueKind::Integer),
        optional("start_positive", ValueKind::Integer),
    ]
}

fn resolve_f0(config: &LoadedConfig) -> Result<f64, RunError> {
    if let Some(force) = config.quantity("f0") {
        return Ok(force.magnitude());
    }
    let (Some(source), Some(probe), Some(separation)) = (
        config.quantity("M"),
        config.quantity("m"),
        config.quantity("L"),
    ) else {
        return Err(RunError::Config(config.invalid(
            "provide `f0`, or the geometry `M`, `m`, `L` with `D` or `y`",
        )));
    };
    let distance = if let Some(d) = config.quantity("D") {
        d
    } else if let Some(y) = config.quantity("y") {
        probe_distance(y, separation).map_err(compute_error)?
    } else {
        return Err(RunError::Config(
            config.invalid("provide `D` or the perpendicular offset `y`"),
        ));
    };
    Ok(f0(source, probe, separation, distance)
        .map_err(compute_error)?
        .magnitude())
}

fn resolve_gamma(config: &LoadedConfig) -> Result<f64, RunError> {
    if let Some(gamma) = config.quantity("Gamma") {
        return Ok(gamma.magnitude());
    }
    match (config.quantity("nu"), config.quantity("tau")) {
        (Some(nu), Some(tau)) => Ok(decay_constant(nu, tau)
            .map_err(compute_error)?
            .magnitude()),
        _ => Err(RunError::Config(
            config.invalid("provide `Gamma`, or both `nu` and `tau`"),
        )),
    }
}

/// The fully geometric route: probe spec (m, y, tau) against the cat
/// (M, L, nu) composes both telegraph parameters at once.
fn resolve_parameters(config: &LoadedConfig) -> Result<(f64, f64), RunError> {
    let geometric = config.quantity("f0").is_none()
        && config.quantity("Gamma").is_none()
        && config.quantity("y").is_some()
        && config.quantity("tau").is_some();
    if geometric {
        let (Some(source), Some(probe_mass), Some(separation), Some(nu)) = (
            config.quantity("M"),
            config.quantity("m"),
            config.quantity("L"),
            config.quantity("nu"),
        ) else {
            return Err(RunError::Config(config.invalid(
                "the geometric route needs `M`, `m`, `L`, `nu` alongside `y` and `tau`",
            )));
        };
        let probe = ClassicalProbeSpec::new(
            probe_mass,
            config.quantity("y").expect("checked"),
            config.quantity("tau").expect("checked"),
        )
        .map_err(compute_error)?;
        let (force, gamma) =
            telegraph_parameters(&probe, source, separation, nu).map_err(compute_error)?;
        return Ok((force.magnitude(), gamma.magnitude()));
    }
    Ok((resolve_f0(config)?, resolve_gamma(config)?))
}

pub fn run(config: &LoadedConfig, seed: u64) -> Result<CommandOutput, RunError> {
    let (f0_magnitude, gamma) = resolve_parameters(config)?;
    let dt = config.require_quantity("dt")?.magnitude();
    let t_max = config.require_quantity("t_max")?.magnitude();
    let n_traj = config.require_integer("n_traj")? as usize;
    let start_positive = config.integer("start_positive").unwrap_or(0) != 0;

    let ensemble = simulate_telegraph(f0_magnitude, gamma, dt, t_max, n_traj, seed, start_positive)
        .map_err(compute_error)?;
    let stats = estimate_statistics(&ensemble).map_err(compute_error)?;

    let sign = if start_positive { 1.0 } else { -1.0 };
    let mean_theory: Vec<f64> = stats
        .times
        .iter()
        .map(|&t| sign * f0_magnitude * (-gamma * t).exp())
        .collect();
    let autocorr_theory: Vec<f64> = stats
        .lags
        .iter()
        .map(|&lag| f0_magnitude * f0_magnitude * (-gamma * lag).exp())
        .collect();

    let worst_z = |values: &[f64], theory: &[f64], errors: &[f64]| -> f64 {
        values
            .iter()
            .zip(theory)
            .zip(errors)
            .map(|((v, t), e)| if *e > 0.0 { (v - t).abs() / e } else { 0.0 })
            .fold(0.0f64, f64::max)
    };
    let worst_mean_z = worst_z(&stats.mean, &mean_theory, &stats.mean_std_error);
    let worst_autocorr_z = worst_z(&stats.autocorr, &autocorr_theory, &stats.autocorr_std_error);

    let mut text = String::new();
    text.push_str("telegraph ensemble\n");
    text.push_str(&format!(
        "  f0 = {f0_magnitude:.3e} N   Gamma = {gamma:.3e} 1/s   dt = {dt:.3e} s   t_max = {t_max:.3e} s\n"
    ));
    text.push_str(&format!(
        "  n_traj = {n_traj} trajectories   seed = {seed}   initial sign = {}\n",
        if start_positive { "+f0" } else { "-f0" }
    ));
    text.push_str(&format!(
        "  stationary autocorrelation origins start at t = {:.3e} s\n",
        stats.stationary_start
    ));

    text.push_str("\n  t (s)        mean (N)      theory (N)    std err (N)\n");
    let stride = (stats.times.len() / 8).max(1);
    for i in (0..stats.times.len()).step_by(stride) {
        text.push_str(&format!(
            "  {:<12.4e} {:<13.4e} {:<13.4e} {:<12.4e}\n",
            stats.times[i], stats.mean[i], mean_theory[i], stats.mean_std_error[i]
        ));
    }
    text.push_str("\n  lag (s)      autocorr (N^2) theory (N^2)  std err (N^2)\n");
    let lag_stride = (stats.lags.len() / 8).max(1);
    for k in (0..stats.lags.len()).step_by(lag_stride) {
        text.push_str(&format!(
            "  {:<12.4e} {:<14.4e} {:<13.4e} {:<12.4e}\n",
            stats.lags[k], stats.autocorr[k], autocorr_theory[k], stats.autocorr_std_error[k]
        ));
    }
    text.push_str(&format!(
        "\nworst deviation from the closed forms: mean {worst_mean_z:.2} standard errors, \
         autocorrelation {worst_autocorr_z:.2} standard errors\n"
    ));

    let json = json!({
        "command": "simulate-classical",
        "f0_N": f0_magnitude,
        "gamma_per_s": gamma,
        "dt_s": dt,
        "t_max_s": t_max,
        "n_traj": n_traj,
        "seed": seed,
        "start_positive": start_positive,
        "times_s": stats.times,
        "mean_N": stats.mean,
        "mean_theory_N": mean_theory,
        "mean_std_error_N": stats.mean_std_error,
        "lags_s": stats.lags,
        "autocorr_N2": stats.autocorr,
        "autocorr_theory_N2": autocorr_theory,
        "autocorr_std_error_N2": stats.autocorr_std_error,
        "worst_mean_z": worst_mean_z,
        "worst_autocorr_z": worst_autocorr_z,
    });

    let mut csv = Vec::new();
    ensemble
        .write_csv(&mut csv)
        .map_err(|e| RunError::Compute(e.to_string()))?;
    let mut output = CommandOutput::new(json, text);
    output.csv_files.push((
        "trajectories.csv".to_string(),
        String::from_utf8(csv).expect("csv is ascii"),
    ));
    Ok(output)
}
