//! Solver configuration: defaults, key=value config files, flag overrides.

use std::path::Path;

use qwell_core::exact::{Potential, SolverConfig};

use crate::{CliError, PotentialArg, SolverArgs};

/// Build the potential from the CLI arguments, validating `z0sq`.
pub fn resolve_potential(arg: PotentialArg, z0sq: Option<f64>) -> Result<Potential, CliError> {
    match arg {
        PotentialArg::Sho => Ok(Potential::Sho),
        PotentialArg::Dwp => {
            let z0sq =
                z0sq.ok_or_else(|| CliError::Usage("the double well requires --z0sq".into()))?;
            validate_z0sq(z0sq)?;
            Ok(Potential::Dwp { z0: z0sq.sqrt() })
        }
    }
}

pub fn validate_z0sq(z0sq: f64) -> Result<(), CliError> {
    if !(z0sq > 0.0) || !z0sq.is_finite() {
        return Err(CliError::Usage(format!(
            "--z0sq must be positive and finite, got {z0sq}"
        )));
    }
    Ok(())
}

/// defaults <- config file <- CLI flags.
pub fn resolve_config(potential: &Potential, args: &SolverArgs) -> Result<SolverConfig, CliError> {
    let mut cfg = SolverConfig::default_for(potential);
    if let Some(path) = &args.config {
        apply_file(&mut cfg, path)?;
    }
    if let Some(zc) = args.zc {
        cfg.z_c = zc;
    }
    if let Some(nmax) = args.nmax {
        cfg.n_max = nmax;
    }
    if let Some(dz) = args.delta_z {
        cfg.delta_z = Some(dz);
    }
    if !(cfg.z_c > 0.0) || cfg.n_max == 0 {
        return Err(CliError::Usage(
            "box width and basis size must be positive".into(),
        ));
    }
    if let Potential::Dwp { z0 } = potential {
        if *z0 > 0.5 * cfg.z_c {
            return Err(CliError::Usage(format!(
                "the double well needs z0 <= zc/2; got z0 = {z0}, zc = {}",
                cfg.z_c
            )));
        }
    }
    Ok(cfg)
}

fn apply_file(cfg: &mut SolverConfig, path: &Path) -> Result<(), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!(
                "config line {} is not key=value: {raw}",
                lineno + 1
            ))
        })?;
        let key = key.trim();
        let value = value.trim();
        let bad = |what: &str| {
            CliError::Usage(format!("config line {}: bad {what}: {value}", lineno + 1))
        };
        match key {
            "zc" => cfg.z_c = value.parse().map_err(|_| bad("zc"))?,
            "nmax" => cfg.n_max = value.parse().map_err(|_| bad("nmax"))?,
            "quad_tol" => cfg.quad_tol = value.parse().map_err(|_| bad("quad_tol"))?,
            "root_tol" => cfg.root_tol = value.parse().map_err(|_| bad("root_tol"))?,
            "delta_z" => cfg.delta_z = Some(value.parse().map_err(|_| bad("delta_z"))?),
            other => {
                return Err(CliError::Usage(format!(
                    "config line {}: unknown key {other}",
                    lineno + 1
                )))
            }
        }
    }
    Ok(())
}
