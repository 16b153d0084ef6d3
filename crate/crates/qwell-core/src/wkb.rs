//! Semiclassical (WKB) eigenvalues and piecewise wavefunctions.
//!
//! Oscillator levels come out exactly at the odd integers; the double-well
//! levels solve a cot-type quantization condition whose even-parity branch
//! carries the correction factor `g_even` from the nonzero slope of the
//! potential at the central cusp. The wavefunctions are assembled from bare
//! WKB branches plus Airy patching regions of half-width `delta_z` around
//! each turning point, and the patch boundaries are where the jumps live.

use alloc::vec;
use alloc::vec::Vec;
use libm::{acos, cos, exp, fabs, log, pow, sin, sqrt};

use crate::numerics::{refine_root, scan_brackets};
use crate::piecewise::{Branch, BranchKind, Parity, PiecewiseError, PiecewiseWavefunction, Region};

/// Turning points of a level: one for the oscillator, two (at `z0 -+
/// sqrt(eps)`) for the double well.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Turning {
    Sho { z_t: f64 },
    Dwp { z1: f64, z2: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WkbLevel {
    pub n: usize,
    pub parity: Parity,
    /// dimensionless energy (units of hbar*omega/2)
    pub eps: f64,
    pub turning: Turning,
}

/// Eigenvalues found below the barrier; `exhausted` is set when fewer than
/// the requested count exist (the table's N/A entries).
#[derive(Debug, Clone)]
pub struct DwpWkbLevels {
    pub levels: Vec<WkbLevel>,
    pub exhausted: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WkbError {
    InvalidArgument(&'static str),
    /// patch geometry impossible (overlapping patches or patch past z = 0)
    PatchGeometry,
    /// level inconsistent with the supplied offset
    LevelMismatch,
    /// root search produced an out-of-order spectrum
    SearchFailed,
    Normalization(PiecewiseError),
}

impl core::fmt::Display for WkbError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            WkbError::InvalidArgument(what) => write!(f, "invalid argument: {what}"),
            WkbError::PatchGeometry => write!(f, "patch regions overlap or reach z = 0"),
            WkbError::LevelMismatch => write!(f, "level does not belong to this potential"),
            WkbError::SearchFailed => write!(f, "eigenvalue search failed"),
            WkbError::Normalization(e) => write!(f, "{e}"),
        }
    }
}

impl From<PiecewiseError> for WkbError {
    fn from(e: PiecewiseError) -> Self {
        WkbError::Normalization(e)
    }
}

// ---- auxiliary actions (closed forms of the classical integrals) ----

/// `integral of sqrt((z'-z0)^2 - eps)` across a forbidden stretch of length
/// `d` measured from the turning point: w1(z) is this at `d = z0 - z`, w4(z)
/// at `d = z - z0`. Uses the conjugate form of the logarithm, stable for
/// large `d`.
pub(crate) fn forbidden_action(d: f64, eps: f64) -> f64 {
    // the max() absorbs one-ulp excursions when d sits exactly on a turning
    // point computed as z0 -+ sqrt(eps)
    let r = sqrt((d * d - eps).max(0.0));
    0.5 * (d * r - eps * log((d + r) / sqrt(eps)))
}

/// `w2(z) = integral from z1 to z of sqrt(eps - (z'-z0)^2)`.
pub(crate) fn w2_raw(z: f64, z0: f64, eps: f64) -> f64 {
    let s = sqrt(eps);
    let u = z - z0;
    // snap to the exact endpoint values within one-ulp reach of the turning
    // points, where the two terms of the closed form lose coherence
    let edge = 1e-12 * s;
    if s + u <= edge {
        return 0.0;
    }
    if s - u <= edge {
        return 0.5 * core::f64::consts::PI * eps;
    }
    let arg = (-u / s).clamp(-1.0, 1.0);
    0.5 * (u * sqrt((eps - u * u).max(0.0)) + eps * acos(arg))
}

/// `w3(z) = integral from z to z2 of sqrt(eps - (z'-z0)^2)`.
pub(crate) fn w3_raw(z: f64, z0: f64, eps: f64) -> f64 {
    let s = sqrt(eps);
    let u = z - z0;
    let edge = 1e-12 * s;
    if s - u <= edge {
        return 0.0;
    }
    if s + u <= edge {
        return 0.5 * core::f64::consts::PI * eps;
    }
    let arg = (u / s).clamp(-1.0, 1.0);
    0.5 * (-u * sqrt((eps - u * u).max(0.0)) + eps * acos(arg))
}

/// Which auxiliary action to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WAux {
    W1,
    W2,
    W3,
    W4,
}

/// Closed forms of the four classical action integrals of the double well.
///
/// Domains: `w1` on `[0, z1]`, `w2` and `w3` on `[z1, z2]`, `w4` on
/// `[z2, inf)`; all require `0 < eps < z0^2`.
pub fn dwp_w_aux(kind: WAux, z: f64, z0: f64, eps: f64) -> Result<f64, WkbError> {
    if !(eps > 0.0) || !(eps < z0 * z0) {
        return Err(WkbError::InvalidArgument("eps must lie in (0, z0^2)"));
    }
    let se = sqrt(eps);
    let z1 = z0 - se;
    let z2 = z0 + se;
    let tol = 1e-12 * (1.0 + fabs(z));
    match kind {
        WAux::W1 => {
            if z < -tol || z > z1 + tol {
                return Err(WkbError::InvalidArgument("w1 needs 0 <= z <= z1"));
            }
            Ok(forbidden_action(z0 - z.min(z1), eps))
        }
        WAux::W2 => {
            if z < z1 - tol || z > z2 + tol {
                return Err(WkbError::InvalidArgument("w2 needs z1 <= z <= z2"));
            }
            Ok(w2_raw(z.clamp(z1, z2), z0, eps))
        }
        WAux::W3 => {
            if z < z1 - tol || z > z2 + tol {
                return Err(WkbError::InvalidArgument("w3 needs z1 <= z <= z2"));
            }
            Ok(w3_raw(z.clamp(z1, z2), z0, eps))
        }
        WAux::W4 => {
            if z < z2 - tol {
                return Err(WkbError::InvalidArgument("w4 needs z >= z2"));
            }
            Ok(forbidden_action(z.max(z2) - z0, eps))
        }
    }
}

// ---- oscillator ----

/// The oscillator's WKB spectrum coincides with the exact one:
/// `eps = 2n + 1`, `z_t = sqrt(eps)`.
pub fn sho_wkb_levels(count: usize) -> Vec<WkbLevel> {
    (0..count)
        .map(|n| {
            let eps = (2 * n + 1) as f64;
            WkbLevel {
                n,
                parity: Parity::from_index(n),
                eps,
                turning: Turning::Sho { z_t: sqrt(eps) },
            }
        })
        .collect()
}

/// Three-region WKB wavefunction of an oscillator level: bare oscillatory,
/// Airy patch of half-width `delta_z`, bare decaying tail.
pub fn sho_wkb_wavefunction(
    level: &WkbLevel,
    delta_z: f64,
    z_max: f64,
) -> Result<PiecewiseWavefunction, WkbError> {
    let z_t = match level.turning {
        Turning::Sho { z_t } => z_t,
        Turning::Dwp { .. } => return Err(WkbError::LevelMismatch),
    };
    if !(delta_z > 0.0) || delta_z >= z_t {
        return Err(WkbError::PatchGeometry);
    }
    if !(z_max > z_t + delta_z) {
        return Err(WkbError::InvalidArgument("z_max must exceed z_t + delta_z"));
    }
    let eps = level.eps;
    // Airy patch scale from the linearized potential: alpha = (2 z_t)^(1/3)
    // = sqrt(2) (n + 1/2)^(1/6)
    let half = 0.5 * eps; // n + 1/2
    let alpha = sqrt(2.0) * pow(half, 1.0 / 6.0);
    let scale = 2.0 * sqrt(core::f64::consts::PI) * pow(half, 1.0 / 6.0);
    let regions = vec![
        Region {
            z_lo: 0.0,
            z_hi: z_t - delta_z,
            label: "R1",
            kind: BranchKind::Bare,
            branch: Branch::ShoOsc { eps, z_t },
        },
        Region {
            z_lo: z_t - delta_z,
            z_hi: z_t + delta_z,
            label: "R2",
            kind: BranchKind::Patch,
            branch: Branch::ShoPatch { scale, alpha, z_t },
        },
        Region {
            z_lo: z_t + delta_z,
            z_hi: z_max,
            label: "R3",
            kind: BranchKind::Bare,
            branch: Branch::ShoDecay { eps, z_t },
        },
    ];
    Ok(PiecewiseWavefunction::assemble(
        regions,
        level.parity,
        1e-10,
    )?)
}

// ---- double well ----

/// Residual of the double-well quantization condition
/// `cot(pi eps / 2) = (g/2) ((z0 + s)/sqrt(eps))^eps exp(-z0 s)` with
/// `s = sqrt(z0^2 - eps)`; `g` is -1 for odd parity and the slope-corrected
/// factor for even parity. Roots of this residual are the WKB eigenvalues.
pub fn dwp_wkb_characteristic(z0: f64, parity: Parity, eps: f64) -> f64 {
    if !(eps > 0.0) || !(eps < z0 * z0) {
        return f64::NAN;
    }
    let s2 = z0 * z0 - eps;
    let s = sqrt(s2);
    let p = pow((z0 + s) / sqrt(eps), eps) * exp(-z0 * s);
    let g = match parity {
        Parity::Odd => -1.0,
        Parity::Even => {
            let t = 2.0 * s2 * s;
            (t + z0) / (t - z0)
        }
    };
    let half = 0.5 * core::f64::consts::PI * eps;
    cos(half) / sin(half) - 0.5 * g * p
}

/// Barrier-height cap for even-parity roots: past the pole of `g_even` at
/// `eps = z0^2 - (z0/2)^(2/3)` the even condition's correction factor turns
/// negative and its near-barrier roots are artifacts, which the reference
/// tables leave out.
fn even_search_cap(z0: f64) -> f64 {
    z0 * z0 - pow(0.5 * z0, 2.0 / 3.0)
}

fn find_parity_roots(
    z0: f64,
    parity: Parity,
    hi: f64,
    root_tol: f64,
    grid: usize,
) -> Result<Vec<f64>, WkbError> {
    let f = |eps: f64| dwp_wkb_characteristic(z0, parity, eps);
    let scan = scan_brackets(f, 1e-6, hi, grid).map_err(|_| WkbError::SearchFailed)?;
    let mut roots = Vec::new();
    for b in &scan.brackets {
        let r = refine_root(f, b, root_tol).map_err(|_| WkbError::SearchFailed)?;
        roots.push(r);
    }
    Ok(roots)
}

/// Sub-barrier WKB eigenvalues of the double well, ascending, parity
/// alternating even/odd.
pub fn dwp_wkb_eigenvalues(z0: f64, count: usize) -> Result<DwpWkbLevels, WkbError> {
    dwp_wkb_eigenvalues_opts(z0, count, 1e-12, 2000)
}

/// As [`dwp_wkb_eigenvalues`] with explicit root tolerance and scan grid.
pub fn dwp_wkb_eigenvalues_opts(
    z0: f64,
    count: usize,
    root_tol: f64,
    grid: usize,
) -> Result<DwpWkbLevels, WkbError> {
    if !(z0 > 0.0) {
        return Err(WkbError::InvalidArgument("z0 must be positive"));
    }
    let barrier = z0 * z0;
    let hi = barrier - 1e-9 * (1.0 + barrier);
    let even_hi = even_search_cap(z0).min(hi) - 1e-9;
    let evens = find_parity_roots(z0, Parity::Even, even_hi, root_tol, grid)?;
    let odds = find_parity_roots(z0, Parity::Odd, hi, root_tol, grid)?;
    let levels = interleave_levels(z0, &evens, &odds, count)?;
    let exhausted = levels.len() < count;
    Ok(DwpWkbLevels { levels, exhausted })
}

pub(crate) fn interleave_levels(
    z0: f64,
    evens: &[f64],
    odds: &[f64],
    count: usize,
) -> Result<Vec<WkbLevel>, WkbError> {
    let mut levels = Vec::new();
    for n in 0..count {
        let parity = Parity::from_index(n);
        let source = match parity {
            Parity::Even => evens.get(n / 2),
            Parity::Odd => odds.get(n / 2),
        };
        match source {
            Some(&eps) => {
                let se = sqrt(eps);
                levels.push(WkbLevel {
                    n,
                    parity,
                    eps,
                    turning: Turning::Dwp {
                        z1: z0 - se,
                        z2: z0 + se,
                    },
                });
            }
            None => break,
        }
    }
    for w in levels.windows(2) {
        if w[1].eps <= w[0].eps {
            return Err(WkbError::SearchFailed);
        }
    }
    Ok(levels)
}

/// A physically scaled default for the patch half-width: half an Airy
/// oscillation scale `0.5/alpha`, clamped to fit the level's geometry.
pub fn default_patch_half_width(level: &WkbLevel) -> f64 {
    let alpha = pow(4.0 * level.eps, 1.0 / 6.0);
    let dz = 0.5 / alpha;
    match level.turning {
        Turning::Sho { z_t } => dz.min(0.95 * z_t),
        Turning::Dwp { z1, z2 } => dz.min(0.95 * z1.min(0.5 * (z2 - z1))),
    }
}

/// Five-region WKB wavefunction of a double-well level; both patches share
/// the half-width `delta_z`.
pub fn dwp_wkb_wavefunction(
    level: &WkbLevel,
    z0: f64,
    delta_z: f64,
    z_max: f64,
) -> Result<PiecewiseWavefunction, WkbError> {
    let (z1, z2) = match level.turning {
        Turning::Dwp { z1, z2 } => (z1, z2),
        Turning::Sho { .. } => return Err(WkbError::LevelMismatch),
    };
    let eps = level.eps;
    if !(eps > 0.0) || eps >= z0 * z0 {
        return Err(WkbError::InvalidArgument("eps must lie below the barrier"));
    }
    let se = sqrt(eps);
    if fabs(z1 - (z0 - se)) > 1e-9 || fabs(z2 - (z0 + se)) > 1e-9 {
        return Err(WkbError::LevelMismatch);
    }
    if !(delta_z > 0.0) || delta_z >= z1 || delta_z >= 0.5 * (z2 - z1) {
        return Err(WkbError::PatchGeometry);
    }
    if !(z_max > z2 + delta_z) {
        return Err(WkbError::InvalidArgument("z_max must exceed z2 + delta_z"));
    }
    let alpha = pow(4.0 * eps, 1.0 / 6.0);
    let regions = vec![
        Region {
            z_lo: 0.0,
            z_hi: z1 - delta_z,
            label: "R1",
            kind: BranchKind::Bare,
            branch: Branch::DwpOuter { z0, eps },
        },
        Region {
            z_lo: z1 - delta_z,
            z_hi: z1 + delta_z,
            label: "R2",
            kind: BranchKind::Patch,
            branch: Branch::DwpPatchLeft { z0, eps, alpha },
        },
        Region {
            z_lo: z1 + delta_z,
            z_hi: z2 - delta_z,
            label: "R3",
            kind: BranchKind::Bare,
            branch: Branch::DwpWell { z0, eps },
        },
        Region {
            z_lo: z2 - delta_z,
            z_hi: z2 + delta_z,
            label: "R4",
            kind: BranchKind::Patch,
            branch: Branch::DwpPatchRight { z0, eps, alpha },
        },
        Region {
            z_lo: z2 + delta_z,
            z_hi: z_max,
            label: "R5",
            kind: BranchKind::Bare,
            branch: Branch::DwpTail { z0, eps },
        },
    ];
    Ok(PiecewiseWavefunction::assemble(
        regions,
        level.parity,
        1e-10,
    )?)
}
