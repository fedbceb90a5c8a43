use std::fs::File;
use std::io::{BufWriter, Write};

use rayon::prelude::*;

use crate::analytic::{equal_mix_energy, equal_mix_wavefunction};
use crate::error::Error;
use crate::model::{classify_binding, turning_points, BindingClass};
use crate::radial::RadialSolution;
use crate::shooting::{estimate_quasibound_energy, find_bound_state_with_nodes, integrate_radial, QuasiBoundEstimate};
use crate::tunneling::gamma_mixed;

use super::csv::{number, optional, CsvWriter};
use super::{stdout_error, CliError, RunConfig, SweepArgs, SweepParam};

const STRICTLY_BOUND: &str = "state is strictly bound (s ≥ 0.5); no tunneling";

type CliResult<T> = Result<T, CliError>;

fn line(out: &mut dyn Write, name: &str, value: impl std::fmt::Display) -> CliResult<()> {
    writeln!(out, "{name}: {value}").map_err(stdout_error)
}

/// The closed form covers the equal mix with k = -1 only.
fn has_closed_form(cfg: &RunConfig) -> bool {
    cfg.s == 0.5 && cfg.k == -1
}

fn shooting_state(cfg: &RunConfig) -> CliResult<RadialSolution> {
    let nodes = (cfg.zero_index - 1) as usize;
    Ok(find_bound_state_with_nodes(cfg.m, &cfg.mix()?, cfg.quantum_numbers()?, nodes, &cfg.grid()?)?)
}

fn quasi_estimate(cfg: &RunConfig) -> CliResult<QuasiBoundEstimate> {
    Ok(estimate_quasibound_energy(cfg.m, &cfg.mix()?, cfg.quantum_numbers()?, &cfg.grid()?)?)
}

/// Energy that `solve` would report first for this configuration.
fn primary_energy(cfg: &RunConfig) -> CliResult<f64> {
    match classify_binding(&cfg.mix()?) {
        BindingClass::QuasiBound => Ok(quasi_estimate(cfg)?.energy),
        BindingClass::StrictlyBound if has_closed_form(cfg) => {
            Ok(equal_mix_energy(cfg.m, cfg.lambda, cfg.zero_index()?)?)
        }
        BindingClass::StrictlyBound => Ok(shooting_state(cfg)?.energy),
    }
}

fn header(cfg: &RunConfig, out: &mut dyn Write) -> CliResult<()> {
    line(out, "m", format_args!("{} GeV", cfg.m))?;
    line(out, "lambda", format_args!("{} GeV^2", cfg.lambda))?;
    line(out, "s", cfg.s)?;
    line(out, "k", cfg.k)?;
    line(out, "zero_index", cfg.zero_index)
}

fn open_output(cfg: &RunConfig) -> CliResult<Option<(BufWriter<File>, std::path::PathBuf)>> {
    match &cfg.out {
        None => Ok(None),
        Some(path) => {
            let file = File::create(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
            Ok(Some((BufWriter::new(file), path.clone())))
        }
    }
}

pub fn solve(cfg: &RunConfig, out: &mut dyn Write) -> CliResult<()> {
    let mix = cfg.mix()?;
    let binding = classify_binding(&mix);
    header(cfg, out)?;
    line(out, "binding", binding)?;
    let profile = match binding {
        BindingClass::StrictlyBound => {
            line(out, "state", "bound")?;
            let sol = shooting_state(cfg)?;
            if has_closed_form(cfg) {
                let exact = equal_mix_energy(cfg.m, cfg.lambda, cfg.zero_index()?)?;
                line(out, "energy_analytic", format_args!("{exact} GeV"))?;
                line(out, "energy_shooting", format_args!("{} GeV", sol.energy))?;
                line(out, "energy_difference", format_args!("{:e} GeV", sol.energy - exact))?;
            } else {
                line(out, "energy_shooting", format_args!("{} GeV", sol.energy))?;
            }
            line(out, "nodes", sol.node_count)?;
            line(out, "r1", format_args!("{} GeV^-1", turning_points(cfg.m, sol.energy, &mix)?.r1))?;
            sol
        }
        BindingClass::QuasiBound => {
            line(out, "state", "quasi-bound")?;
            let est = quasi_estimate(cfg)?;
            line(out, "energy_estimate", format_args!("{} GeV", est.energy))?;
            line(out, "energy_uncertainty", format_args!("{:e} GeV", est.uncertainty))?;
            line(out, "r_mid", format_args!("{} GeV^-1", est.r_mid))?;
            let tp = turning_points(cfg.m, est.energy, &mix)?;
            line(out, "r1", format_args!("{} GeV^-1", tp.r1))?;
            line(out, "r2", format_args!("{} GeV^-1", tp.r2.unwrap_or(f64::NAN)))?;
            line(out, "r3", format_args!("{} GeV^-1", tp.r3.unwrap_or(f64::NAN)))?;
            outward_profile(cfg, est.energy)?
        }
    };
    if let Some((file, path)) = open_output(cfg)? {
        write_profile(cfg, &profile, file).map_err(|source| CliError::Io { path: path.clone(), source })?;
        line(out, "profile", path.display())?;
    }
    Ok(())
}

fn outward_profile(cfg: &RunConfig, energy: f64) -> CliResult<RadialSolution> {
    let mut sol = integrate_radial(cfg.m, &cfg.mix()?, cfg.quantum_numbers()?, energy, &cfg.grid()?)?;
    sol.normalize();
    Ok(sol)
}

fn write_profile<W: Write>(cfg: &RunConfig, sol: &RadialSolution, w: W) -> std::io::Result<()> {
    let mix = cfg.mix().map_err(std::io::Error::other)?;
    let comment = format!(
        "m={} lambda={} s={} k={} E={}",
        number(cfg.m),
        number(cfg.lambda),
        number(cfg.s),
        cfg.k,
        number(sol.energy)
    );
    let mut csv = CsvWriter::new(w, Some(&comment), &["r", "u", "v", "V", "S"])?;
    for ((&r, &u), &v) in sol.r.iter().zip(&sol.u).zip(&sol.v) {
        let (vector, scalar) = mix.at(r);
        csv.row(&[number(r), number(u), number(v), number(vector), number(scalar)])?;
    }
    csv.finish()?;
    Ok(())
}

pub fn profile(cfg: &RunConfig, out: &mut dyn Write) -> CliResult<()> {
    let sol = match classify_binding(&cfg.mix()?) {
        BindingClass::StrictlyBound if has_closed_form(cfg) => {
            let e = equal_mix_energy(cfg.m, cfg.lambda, cfg.zero_index()?)?;
            equal_mix_wavefunction(cfg.m, cfg.lambda, e, &cfg.grid()?.radii())?
        }
        BindingClass::StrictlyBound => shooting_state(cfg)?,
        BindingClass::QuasiBound => {
            let e = match cfg.energy {
                Some(e) => e,
                None => quasi_estimate(cfg)?.energy,
            };
            outward_profile(cfg, e)?
        }
    };
    match open_output(cfg)? {
        Some((file, path)) => write_profile(cfg, &sol, file).map_err(|source| CliError::Io { path, source }),
        None => write_profile(cfg, &sol, out).map_err(stdout_error),
    }
}

pub fn lifetime(cfg: &RunConfig, out: &mut dyn Write) -> CliResult<()> {
    let mix = cfg.mix()?;
    if classify_binding(&mix) == BindingClass::StrictlyBound {
        return Err(Error::Precondition(STRICTLY_BOUND.into()).into());
    }
    let (energy, source) = match cfg.energy {
        Some(e) => (e, "user"),
        None => (quasi_estimate(cfg)?.energy, "estimated"),
    };
    let report = gamma_mixed(cfg.m, &mix, energy)?;
    header(cfg, out)?;
    line(out, "binding", BindingClass::QuasiBound)?;
    line(out, "energy", format_args!("{energy} GeV"))?;
    line(out, "energy_source", source)?;
    line(out, "r1", format_args!("{} GeV^-1", report.r1))?;
    line(out, "r2", format_args!("{} GeV^-1", report.r2))?;
    line(out, "r3", format_args!("{} GeV^-1", report.r3))?;
    line(out, "gamma_vector", report.vector_part)?;
    line(out, "gamma_continuum", report.continuum_part)?;
    line(out, "gamma", report.gamma)?;
    if report.lifetime.saturated {
        line(out, "tau_ratio", "inf")?;
    } else {
        line(out, "tau_ratio", format_args!("{:e}", report.tau_ratio))?;
    }
    line(out, "log_tau_ratio", report.lifetime.log_ratio)?;
    line(out, "tau0", "not computed; of order 1e-24 s for a well of fermi size")
}

struct SweepRow {
    value: f64,
    energy: f64,
    gamma: Option<f64>,
    tau_ratio: Option<f64>,
    r1: f64,
    r2: Option<f64>,
    r3: Option<f64>,
    binding: BindingClass,
}

fn sweep_row(base: &RunConfig, param: SweepParam, value: f64) -> CliResult<SweepRow> {
    let mut cfg = base.clone();
    match param {
        SweepParam::S => cfg.s = value,
        SweepParam::Lambda => cfg.lambda = value,
        SweepParam::M => cfg.m = value,
    }
    cfg.validate()
        .map_err(|e| CliError::Usage(format!("{} = {value} is out of range: {e}", param.name())))?;
    let mix = cfg.mix()?;
    let binding = classify_binding(&mix);
    let energy = primary_energy(&cfg)
        .map_err(|e| CliError::Compute(Error::NotFound(format!("{} = {value}: {e}", param.name()))))?;
    let tp = turning_points(cfg.m, energy, &mix)?;
    let (gamma, tau_ratio) = match binding {
        BindingClass::QuasiBound => {
            let report = gamma_mixed(cfg.m, &mix, energy)?;
            (Some(report.gamma), Some(report.tau_ratio))
        }
        BindingClass::StrictlyBound => (None, None),
    };
    Ok(SweepRow {
        value,
        energy,
        gamma,
        tau_ratio,
        r1: tp.r1,
        r2: tp.r2,
        r3: tp.r3,
        binding,
    })
}

pub fn sweep(cfg: &RunConfig, args: &SweepArgs, out: &mut dyn Write) -> CliResult<()> {
    if args.steps == 0 {
        return Err(CliError::Usage("sweep needs --steps >= 1".into()));
    }
    if !(args.from.is_finite() && args.to.is_finite()) {
        return Err(CliError::Usage("sweep range must be finite".into()));
    }
    let values: Vec<f64> = (0..=args.steps)
        .map(|i| (args.from * (args.steps - i) as f64 + args.to * i as f64) / args.steps as f64)
        .collect();
    let rows = values
        .par_iter()
        .map(|&v| sweep_row(cfg, args.param, v))
        .collect::<CliResult<Vec<_>>>()?;

    let header = ["param", "value", "E", "gamma", "tau_ratio", "r1", "r2", "r3", "binding"];
    let emit = |w: &mut dyn Write| -> std::io::Result<()> {
        let mut csv = CsvWriter::new(w, None, &header)?;
        for row in &rows {
            csv.row(&[
                args.param.name().to_string(),
                number(row.value),
                number(row.energy),
                optional(row.gamma),
                optional(row.tau_ratio),
                number(row.r1),
                optional(row.r2),
                optional(row.r3),
                row.binding.to_string(),
            ])?;
        }
        csv.finish()?;
        Ok(())
    };
    match open_output(cfg)? {
        Some((mut file, path)) => emit(&mut file).map_err(|source| CliError::Io { path, source }),
        None => emit(out).map_err(stdout_error),
    }
}
