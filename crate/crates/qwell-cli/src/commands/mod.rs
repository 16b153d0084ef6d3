pub mod compare;
pub mod spectrum;
pub mod splitting;
pub mod tables;
pub mod wavefunction;

use qwell_core::exact::{build_hamiltonian, solve_spectrum, Potential, SolverConfig};
use qwell_core::maf::{self, MafLevel};
use qwell_core::piecewise::{Parity, PiecewiseWavefunction};
use qwell_core::wkb::{self, WkbLevel};

use crate::{CliError, Method};

/// One computed level, method-agnostic.
#[derive(Debug, Clone, Copy)]
pub struct LevelValue {
    pub n: usize,
    pub parity: Parity,
    pub eps: f64,
}

/// Eigenvalues for a method; fewer than requested means the sub-barrier
/// spectrum is exhausted.
pub fn eigenvalues(
    method: Method,
    potential: &Potential,
    cfg: &SolverConfig,
    count: usize,
) -> Result<Vec<LevelValue>, CliError> {
    match (method, potential) {
        (Method::Exact, _) => {
            let h = build_hamiltonian(*potential, *cfg)
                .map_err(|e| CliError::Usage(format!("exact solver setup: {e}")))?;
            let s = solve_spectrum(&h, count.min(cfg.n_max))
                .map_err(|e| CliError::Numeric(format!("exact solver: {e}")))?;
            Ok(s.energies
                .iter()
                .enumerate()
                .map(|(n, &eps)| LevelValue {
                    n,
                    parity: Parity::from_index(n),
                    eps,
                })
                .collect())
        }
        (Method::Wkb, Potential::Sho) => Ok(wkb::sho_wkb_levels(count)
            .iter()
            .map(|l| LevelValue {
                n: l.n,
                parity: l.parity,
                eps: l.eps,
            })
            .collect()),
        (Method::Wkb, Potential::Dwp { z0 }) => {
            let r = wkb::dwp_wkb_eigenvalues_opts(*z0, count, cfg.root_tol, 2000)
                .map_err(|e| CliError::Numeric(format!("wkb eigenvalues: {e}")))?;
            Ok(r.levels
                .iter()
                .map(|l| LevelValue {
                    n: l.n,
                    parity: l.parity,
                    eps: l.eps,
                })
                .collect())
        }
        (Method::Maf, Potential::Sho) => {
            let levels = maf::sho_maf_energies(count)
                .map_err(|e| CliError::Numeric(format!("maf eigenvalues: {e}")))?;
            Ok(levels
                .iter()
                .map(|l| LevelValue {
                    n: l.n,
                    parity: l.parity,
                    eps: l.eps,
                })
                .collect())
        }
        (Method::Maf, Potential::Dwp { z0 }) => {
            let r = maf::dwp_maf_eigenvalues_opts(*z0, count, cfg.root_tol, 2000)
                .map_err(|e| CliError::Numeric(format!("maf eigenvalues: {e}")))?;
            Ok(r.levels
                .iter()
                .map(|l| LevelValue {
                    n: l.n,
                    parity: l.parity,
                    eps: l.eps,
                })
                .collect())
        }
    }
}

fn exhausted_message(method: Method, level: usize, found: usize, z0sq: f64) -> CliError {
    CliError::Usage(format!(
        "{} level {level} lies above the barrier: only {found} bound levels exist below z0^2 = {z0sq}",
        method.name()
    ))
}

/// WKB level object for wavefunction construction.
pub fn wkb_level(
    potential: &Potential,
    cfg: &SolverConfig,
    n: usize,
) -> Result<WkbLevel, CliError> {
    match potential {
        Potential::Sho => Ok(wkb::sho_wkb_levels(n + 1)[n]),
        Potential::Dwp { z0 } => {
            let r = wkb::dwp_wkb_eigenvalues_opts(*z0, n + 1, cfg.root_tol, 2000)
                .map_err(|e| CliError::Numeric(format!("wkb eigenvalues: {e}")))?;
            r.levels
                .get(n)
                .copied()
                .ok_or_else(|| exhausted_message(Method::Wkb, n, r.levels.len(), z0 * z0))
        }
    }
}

pub fn maf_level(
    potential: &Potential,
    cfg: &SolverConfig,
    n: usize,
) -> Result<MafLevel, CliError> {
    match potential {
        Potential::Sho => {
            let levels = maf::sho_maf_energies(n + 1)
                .map_err(|e| CliError::Numeric(format!("maf eigenvalues: {e}")))?;
            Ok(levels[n])
        }
        Potential::Dwp { z0 } => {
            let r = maf::dwp_maf_eigenvalues_opts(*z0, n + 1, cfg.root_tol, 2000)
                .map_err(|e| CliError::Numeric(format!("maf eigenvalues: {e}")))?;
            r.levels
                .get(n)
                .copied()
                .ok_or_else(|| exhausted_message(Method::Maf, n, r.levels.len(), z0 * z0))
        }
    }
}

pub fn wkb_wavefunction(
    potential: &Potential,
    cfg: &SolverConfig,
    level: &WkbLevel,
    z_max: f64,
) -> Result<PiecewiseWavefunction, CliError> {
    let delta_z = cfg
        .delta_z
        .unwrap_or_else(|| wkb::default_patch_half_width(level));
    let built = match potential {
        Potential::Sho => wkb::sho_wkb_wavefunction(level, delta_z, z_max),
        Potential::Dwp { z0 } => wkb::dwp_wkb_wavefunction(level, *z0, delta_z, z_max),
    };
    built.map_err(|e| match e {
        wkb::WkbError::PatchGeometry | wkb::WkbError::InvalidArgument(_) => {
            CliError::Usage(format!("wkb wavefunction: {e}"))
        }
        other => CliError::Numeric(format!("wkb wavefunction: {other}")),
    })
}

pub fn maf_wavefunction(
    potential: &Potential,
    level: &MafLevel,
    z_max: f64,
) -> Result<PiecewiseWavefunction, CliError> {
    let built = match potential {
        Potential::Sho => maf::sho_maf_wavefunction(level, z_max),
        Potential::Dwp { z0 } => maf::dwp_maf_wavefunction(level, *z0, z_max),
    };
    built.map_err(|e| match e {
        maf::MafError::InvalidArgument(_) | maf::MafError::LevelMismatch => {
            CliError::Usage(format!("maf wavefunction: {e}"))
        }
        other => CliError::Numeric(format!("maf wavefunction: {other}")),
    })
}

/// Exact wavefunction sampled on a nonnegative half-grid of centered
/// coordinates; the caller mirrors by parity.
pub struct ExactWave {
    pub eps: f64,
    pub values: Vec<f64>,
    pub parity: Parity,
}

pub fn exact_wave(
    potential: &Potential,
    cfg: &SolverConfig,
    n: usize,
    half_grid: &[f64],
) -> Result<ExactWave, CliError> {
    if half_grid.iter().any(|&z| z > 0.5 * cfg.z_c) {
        return Err(CliError::Usage(format!(
            "sampling window exceeds the exact solver's box: need zmax <= zc/2 = {}; raise --zc",
            0.5 * cfg.z_c
        )));
    }
    let h = build_hamiltonian(*potential, *cfg)
        .map_err(|e| CliError::Usage(format!("exact solver setup: {e}")))?;
    let s =
        solve_spectrum(&h, n + 1).map_err(|e| CliError::Numeric(format!("exact solver: {e}")))?;
    let box_grid: Vec<f64> = half_grid.iter().map(|z| z + 0.5 * cfg.z_c).collect();
    let values =
        qwell_core::exact::wavefunction_from_coeffs(&s.coefficients[n], cfg.z_c, &box_grid)
            .map_err(|e| CliError::Usage(format!("exact wavefunction: {e}")))?;
    Ok(ExactWave {
        eps: s.energies[n],
        values,
        parity: Parity::from_index(n),
    })
}

/// Sign that aligns `candidate` with `reference` (maximizes their overlap).
pub fn alignment_sign(reference: &[f64], candidate: &[f64]) -> f64 {
    let overlap: f64 = reference
        .iter()
        .zip(candidate.iter())
        .map(|(a, b)| a * b)
        .sum();
    if overlap < 0.0 {
        -1.0
    } else {
        1.0
    }
}

/// Default sampling half-width: a few decay lengths past the outer turning
/// point, clamped into the exact solver's box when it participates.
pub fn default_zmax(
    potential: &Potential,
    level: usize,
    cfg: &SolverConfig,
    with_exact: bool,
) -> f64 {
    let outer = match potential {
        Potential::Sho => ((2 * level + 1) as f64).sqrt(),
        Potential::Dwp { z0 } => 2.0 * z0,
    };
    let zmax = outer + 4.0;
    if with_exact {
        zmax.min(0.5 * cfg.z_c)
    } else {
        zmax
    }
}
