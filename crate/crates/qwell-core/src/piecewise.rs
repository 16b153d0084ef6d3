//! Piecewise wavefunctions over `z >= 0` with parity reflection onto the
//! full line.
//!
//! A wavefunction is an ordered list of regions, each carrying one concrete
//! branch formula. The WKB constructions are genuinely discontinuous at
//! their patch boundaries; evaluation at a boundary takes the right-hand
//! region, and [`PiecewiseWavefunction::discontinuity_report`] records the
//! two one-sided values.

use alloc::vec::Vec;
use libm::{acos, cbrt, cos, exp, fabs, pow, sin, sqrt};

use crate::airy;
use crate::maf::{s1_raw, s2_raw};
use crate::numerics::integrate;
use crate::wkb::{forbidden_action, w2_raw, w3_raw};

const FRAC_PI_4: f64 = core::f64::consts::FRAC_PI_4;
// Half-width of the turning-point window where branches switch to their
// linearized limit form. The raw prefactors are 0/0 at the turning point
// itself, and within ~1e-5 of it the acos-based closed forms lose about
// five digits to cancellation; the linearization bias at this width is
// below 1e-6 relative.
const TP_WINDOW: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_index(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Reflection sign: `psi(-z) = sign * psi(z)`.
    pub fn sign(&self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

/// What kind of formula a region carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchKind {
    /// oscillatory/exponential WKB form, divergent at the turning points
    Bare,
    /// Airy patch replacing the bare form near a turning point
    Patch,
    /// modified-Airy branch, regular everywhere
    Maf,
}

/// Concrete branch formulas. Everything needed for evaluation is baked in at
/// construction; evaluation outside the mathematical domain yields NaN or an
/// infinity, never a panic.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Branch {
    ShoOsc { eps: f64, z_t: f64 },
    ShoPatch { scale: f64, alpha: f64, z_t: f64 },
    ShoDecay { eps: f64, z_t: f64 },
    DwpOuter { z0: f64, eps: f64 },
    DwpPatchLeft { z0: f64, eps: f64, alpha: f64 },
    DwpWell { z0: f64, eps: f64 },
    DwpPatchRight { z0: f64, eps: f64, alpha: f64 },
    DwpTail { z0: f64, eps: f64 },
    MafShoAllowed { z_t: f64 },
    MafShoForbidden { z_t: f64 },
    MafDwpBarrier { z0: f64, eps: f64, c1: f64, c2: f64 },
    MafDwpWellLeft { z0: f64, eps: f64, c1: f64, c2: f64 },
    MafDwpWellRight { z0: f64, eps: f64 },
    MafDwpTail { z0: f64, eps: f64 },
}

fn airy_pair(x: f64) -> (f64, f64) {
    match airy::airy_eval(x) {
        Ok(v) => (v.ai, v.bi),
        Err(_) => (f64::NAN, f64::NAN),
    }
}

impl Branch {
    pub(crate) fn eval(&self, z: f64) -> f64 {
        match *self {
            Branch::ShoOsc { eps, z_t } => {
                let zt = z / z_t;
                let phase = FRAC_PI_4 + 0.5 * eps * (acos(zt) - zt * sqrt(1.0 - zt * zt));
                2.0 / pow(1.0 - zt * zt, 0.25) * sin(phase)
            }
            Branch::ShoPatch { scale, alpha, z_t } => scale * airy::ai_only(alpha * (z - z_t)),
            Branch::ShoDecay { eps, z_t } => {
                let zt = z / z_t;
                let root = sqrt(zt * zt - 1.0);
                pow(zt + root, 0.5 * eps) / pow(zt * zt - 1.0, 0.25)
                    * exp(-0.5 * z * z * sqrt(1.0 - (z_t / z) * (z_t / z)))
            }
            Branch::DwpOuter { z0, eps } => {
                let a = 0.5 * core::f64::consts::PI * eps;
                let w1 = forbidden_action(z0 - z, eps);
                let d2 = (z - z0) * (z - z0) - eps;
                (2.0 * cos(a) * exp(w1) + sin(a) * exp(-w1)) / pow(d2, 0.25)
            }
            Branch::DwpPatchLeft { z0, eps, alpha } => {
                let a = 0.5 * core::f64::consts::PI * eps;
                let z1 = z0 - sqrt(eps);
                let (ai, bi) = airy_pair(-alpha * (z - z1));
                sqrt(4.0 * core::f64::consts::PI / alpha) * (sin(a) * ai + cos(a) * bi)
            }
            Branch::DwpWell { z0, eps } => {
                let w3 = w3_raw(z, z0, eps);
                2.0 * sin(w3 + FRAC_PI_4) / pow(eps - (z - z0) * (z - z0), 0.25)
            }
            Branch::DwpPatchRight { z0, eps, alpha } => {
                let z2 = z0 + sqrt(eps);
                sqrt(4.0 * core::f64::consts::PI / alpha) * airy::ai_only(alpha * (z - z2))
            }
            Branch::DwpTail { z0, eps } => {
                let w4 = forbidden_action(z - z0, eps);
                let d2 = (z - z0) * (z - z0) - eps;
                exp(-w4) / pow(d2, 0.25)
            }
            Branch::MafShoAllowed { z_t } => {
                if fabs(z - z_t) < TP_WINDOW {
                    return maf_sho_limit(z, z_t);
                }
                let s1 = s1_raw(z, z_t);
                let q = -pow(1.5 * s1, 2.0 / 3.0);
                pow(1.5 * s1, 1.0 / 6.0) / pow(z_t * z_t - z * z, 0.25) * airy::ai_only(q)
            }
            Branch::MafShoForbidden { z_t } => {
                if fabs(z - z_t) < TP_WINDOW {
                    return maf_sho_limit(z, z_t);
                }
                let s2 = s2_raw(z, z_t);
                let q = pow(1.5 * s2, 2.0 / 3.0);
                pow(1.5 * s2, 1.0 / 6.0) / pow(z * z - z_t * z_t, 0.25) * airy::ai_only(q)
            }
            Branch::MafDwpBarrier { z0, eps, c1, c2 } => {
                let z1 = z0 - sqrt(eps);
                if fabs(z - z1) < TP_WINDOW {
                    return maf_dwp_left_limit(z, z1, eps, c1, c2);
                }
                let w1 = forbidden_action(z0 - z, eps);
                let q = pow(1.5 * w1, 2.0 / 3.0);
                let (ai, bi) = airy_pair(q);
                pow(1.5 * w1, 1.0 / 6.0) / pow((z - z0) * (z - z0) - eps, 0.25)
                    * (c1 * ai + c2 * bi)
            }
            Branch::MafDwpWellLeft { z0, eps, c1, c2 } => {
                let z1 = z0 - sqrt(eps);
                if fabs(z - z1) < TP_WINDOW {
                    return maf_dwp_left_limit(z, z1, eps, c1, c2);
                }
                let w2 = w2_raw(z, z0, eps);
                let q = -pow(1.5 * w2, 2.0 / 3.0);
                let (ai, bi) = airy_pair(q);
                pow(1.5 * w2, 1.0 / 6.0) / pow(eps - (z - z0) * (z - z0), 0.25)
                    * (c1 * ai + c2 * bi)
            }
            Branch::MafDwpWellRight { z0, eps } => {
                let z2 = z0 + sqrt(eps);
                if fabs(z - z2) < TP_WINDOW {
                    return maf_dwp_right_limit(z, z2, eps);
                }
                let w3 = w3_raw(z, z0, eps);
                let q = -pow(1.5 * w3, 2.0 / 3.0);
                pow(1.5 * w3, 1.0 / 6.0) / pow(eps - (z - z0) * (z - z0), 0.25) * airy::ai_only(q)
            }
            Branch::MafDwpTail { z0, eps } => {
                let z2 = z0 + sqrt(eps);
                if fabs(z - z2) < TP_WINDOW {
                    return maf_dwp_right_limit(z, z2, eps);
                }
                let w4 = forbidden_action(z - z0, eps);
                let q = pow(1.5 * w4, 2.0 / 3.0);
                pow(1.5 * w4, 1.0 / 6.0) / pow((z - z0) * (z - z0) - eps, 0.25) * airy::ai_only(q)
            }
        }
    }
}

// Linearized limit at the oscillator turning point: prefactor -> (2 z_t)^(-1/6),
// Airy argument -> (2 z_t)^(1/3) (z - z_t).
fn maf_sho_limit(z: f64, z_t: f64) -> f64 {
    let slope = 2.0 * z_t;
    pow(slope, -1.0 / 6.0) * airy::ai_only(cbrt(slope) * (z - z_t))
}

// Same at the double-well turning points, slope magnitude 2*sqrt(eps),
// so the Airy scale is alpha = (4 eps)^(1/6).
fn maf_dwp_left_limit(z: f64, z1: f64, eps: f64, c1: f64, c2: f64) -> f64 {
    let alpha = pow(4.0 * eps, 1.0 / 6.0);
    let (ai, bi) = airy_pair(-alpha * (z - z1));
    (c1 * ai + c2 * bi) / sqrt(alpha)
}

fn maf_dwp_right_limit(z: f64, z2: f64, eps: f64) -> f64 {
    let alpha = pow(4.0 * eps, 1.0 / 6.0);
    airy::ai_only(alpha * (z - z2)) / sqrt(alpha)
}

/// One region of a piecewise wavefunction, `z_lo <= z < z_hi`.
#[derive(Debug, Clone)]
pub struct Region {
    pub z_lo: f64,
    pub z_hi: f64,
    pub label: &'static str,
    pub kind: BranchKind,
    pub(crate) branch: Branch,
}

/// A finite jump at an internal region boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Discontinuity {
    pub z: f64,
    /// absolute jump of the normalized wavefunction
    pub jump: f64,
    /// jump divided by the wavefunction's peak magnitude
    pub relative: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PiecewiseError {
    /// regions empty, out of order, or not contiguous
    BadRegions,
    /// |psi|^2 failed to integrate to a positive finite number
    NotNormalizable,
}

impl core::fmt::Display for PiecewiseError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            PiecewiseError::BadRegions => write!(f, "regions must be contiguous and ordered"),
            PiecewiseError::NotNormalizable => write!(f, "wavefunction is not normalizable"),
        }
    }
}

/// Piecewise wavefunction on `[0, z_max]`, normalized over `(-z_max, z_max)`
/// and extended to negative `z` by parity.
#[derive(Debug, Clone)]
pub struct PiecewiseWavefunction {
    regions: Vec<Region>,
    parity: Parity,
    z_max: f64,
    norm: f64,
    peak: f64,
}

impl PiecewiseWavefunction {
    /// Normalize and seal a region list. The squared norm is integrated
    /// region by region, so the jump points (measure zero) cost nothing.
    pub(crate) fn assemble(
        regions: Vec<Region>,
        parity: Parity,
        quad_tol: f64,
    ) -> Result<Self, PiecewiseError> {
        if regions.is_empty() || regions[0].z_lo != 0.0 {
            return Err(PiecewiseError::BadRegions);
        }
        for w in regions.windows(2) {
            if w[0].z_hi != w[1].z_lo || !(w[0].z_lo < w[0].z_hi) {
                return Err(PiecewiseError::BadRegions);
            }
        }
        let last = regions.last().unwrap();
        if !(last.z_lo < last.z_hi) {
            return Err(PiecewiseError::BadRegions);
        }
        let z_max = last.z_hi;
        let mut total = 0.0;
        for r in &regions {
            let b = r.branch;
            let q = integrate(|z| b.eval(z) * b.eval(z), r.z_lo, r.z_hi, quad_tol);
            if !q.value.is_finite() || !q.converged {
                return Err(PiecewiseError::NotNormalizable);
            }
            total += q.value;
        }
        // full-line norm over (-z_max, z_max) by parity
        total *= 2.0;
        if !(total > 0.0) || !total.is_finite() {
            return Err(PiecewiseError::NotNormalizable);
        }
        let norm = 1.0 / sqrt(total);
        let mut peak = 0.0f64;
        for r in &regions {
            for i in 0..=256 {
                let z = r.z_lo + (r.z_hi - r.z_lo) * i as f64 / 256.0;
                let v = fabs(r.branch.eval(z)) * norm;
                if v.is_finite() {
                    peak = peak.max(v);
                }
            }
        }
        Ok(PiecewiseWavefunction {
            regions,
            parity,
            z_max,
            norm,
            peak,
        })
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn z_max(&self) -> f64 {
        self.z_max
    }

    /// The overall normalization constant multiplying every branch.
    pub fn normalization(&self) -> f64 {
        self.norm
    }

    /// Largest |psi| over the sampled regions (after normalization).
    pub fn peak(&self) -> f64 {
        self.peak
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    fn region_index(&self, az: f64) -> usize {
        for (i, r) in self.regions.iter().enumerate() {
            if az < r.z_hi {
                return i;
            }
        }
        self.regions.len() - 1
    }

    /// Normalized value at any `z`; negative arguments are reflected by
    /// parity. At an internal jump point this is the right-hand limit.
    pub fn eval(&self, z: f64) -> f64 {
        let az = fabs(z);
        let sign = if z < 0.0 { self.parity.sign() } else { 1.0 };
        let r = &self.regions[self.region_index(az)];
        sign * self.norm * r.branch.eval(az)
    }

    /// Region label covering `|z|` (for plot/record tagging).
    pub fn region_label(&self, z: f64) -> &'static str {
        self.regions[self.region_index(fabs(z))].label
    }

    /// Normalized value of the nearest branch of the given kind, evaluated
    /// at `z` even outside that branch's home region (this is how the bare
    /// and patch curves are continued through each other's territory). None
    /// if the wavefunction has no region of that kind.
    pub fn eval_kind(&self, z: f64, kind: BranchKind) -> Option<f64> {
        let az = fabs(z);
        let sign = if z < 0.0 { self.parity.sign() } else { 1.0 };
        let home = self.region_index(az);
        if self.regions[home].kind == kind {
            return Some(sign * self.norm * self.regions[home].branch.eval(az));
        }
        // nearest region of the requested kind
        let mut best: Option<(usize, f64)> = None;
        for (i, r) in self.regions.iter().enumerate() {
            if r.kind != kind {
                continue;
            }
            let dist = if az < r.z_lo {
                r.z_lo - az
            } else if az > r.z_hi {
                az - r.z_hi
            } else {
                0.0
            };
            if best.is_none_or(|(_, d)| dist < d) {
                best = Some((i, dist));
            }
        }
        best.map(|(i, _)| sign * self.norm * self.regions[i].branch.eval(az))
    }

    /// One-sided values at every internal region boundary. MAF constructions
    /// report jumps at rounding level; WKB constructions report the real
    /// thing.
    pub fn discontinuity_report(&self) -> Vec<Discontinuity> {
        let mut out = Vec::new();
        for w in self.regions.windows(2) {
            let z = w[0].z_hi;
            let left = w[0].branch.eval(z) * self.norm;
            let right = w[1].branch.eval(z) * self.norm;
            let jump = fabs(left - right);
            let relative = if self.peak > 0.0 {
                jump / self.peak
            } else {
                jump
            };
            out.push(Discontinuity { z, jump, relative });
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn single_region_has_empty_report() {
        let r = Region {
            z_lo: 0.0,
            z_hi: 4.0,
            label: "M1",
            kind: BranchKind::Maf,
            branch: Branch::MafShoAllowed { z_t: 5.0 },
        };
        let wf = PiecewiseWavefunction::assemble(vec![r], Parity::Even, 1e-10).unwrap();
        assert!(wf.discontinuity_report().is_empty());
    }

    #[test]
    fn rejects_gap_between_regions() {
        let a = Region {
            z_lo: 0.0,
            z_hi: 1.0,
            label: "R1",
            kind: BranchKind::Bare,
            branch: Branch::MafShoAllowed { z_t: 5.0 },
        };
        let b = Region {
            z_lo: 1.5,
            z_hi: 2.0,
            ..a.clone()
        };
        let err = PiecewiseWavefunction::assemble(vec![a, b], Parity::Even, 1e-10).unwrap_err();
        assert_eq!(err, PiecewiseError::BadRegions);
    }

    #[test]
    fn parity_reflection() {
        let r = Region {
            z_lo: 0.0,
            z_hi: 4.0,
            label: "M1",
            kind: BranchKind::Maf,
            branch: Branch::MafShoAllowed { z_t: 5.0 },
        };
        let even = PiecewiseWavefunction::assemble(vec![r.clone()], Parity::Even, 1e-10).unwrap();
        let odd = PiecewiseWavefunction::assemble(vec![r], Parity::Odd, 1e-10).unwrap();
        assert_eq!(even.eval(-1.3), even.eval(1.3));
        assert_eq!(odd.eval(-1.3), -odd.eval(1.3));
    }
}
