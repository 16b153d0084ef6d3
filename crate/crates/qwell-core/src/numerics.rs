//! Root bracketing/refinement and adaptive quadrature.
//!
//! The eigenvalue equations solved elsewhere in the crate are cot-like:
//! genuine roots interleave with poles, and both flip the sign between grid
//! points. [`scan_brackets`] therefore probes every sign change and discards
//! the ones where `|f|` blows up toward the crossing instead of shrinking.

use alloc::vec::Vec;
use libm::fabs;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

/// Sign-change brackets found by a grid scan, plus how many grid points were
/// skipped because `f` came back non-finite there.
#[derive(Debug, Clone)]
pub struct BracketScan {
    pub brackets: Vec<Bracket>,
    pub skipped: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NumericsError {
    /// lo must be strictly below hi and the grid needs at least two points.
    InvalidGrid,
    /// every grid point evaluated non-finite.
    NoValidPoints,
    /// bracket endpoints do not straddle a sign change.
    InvalidBracket,
    InvalidTolerance,
    /// f became non-finite inside the bracket; carries the last valid one.
    NonFinite {
        lo: f64,
        hi: f64,
    },
}

impl core::fmt::Display for NumericsError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            NumericsError::InvalidGrid => write!(f, "invalid scan grid"),
            NumericsError::NoValidPoints => write!(f, "no finite values on scan grid"),
            NumericsError::InvalidBracket => write!(f, "bracket does not straddle a root"),
            NumericsError::InvalidTolerance => write!(f, "tolerance must be positive"),
            NumericsError::NonFinite { lo, hi } => {
                write!(f, "non-finite value inside bracket [{lo}, {hi}]")
            }
        }
    }
}

/// Scan `f` on a uniform grid and return one bracket per sign change between
/// adjacent valid grid points, poles filtered out. Even-multiplicity roots
/// that do not change sign between grid points are missed by construction.
pub fn scan_brackets<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    grid_points: usize,
) -> Result<BracketScan, NumericsError> {
    if !(lo < hi) || grid_points < 2 {
        return Err(NumericsError::InvalidGrid);
    }
    let n = grid_points;
    let step = (hi - lo) / (n - 1) as f64;
    let mut skipped = 0usize;
    let mut prev: Option<(f64, f64)> = None;
    let mut brackets = Vec::new();
    for i in 0..n {
        let x = if i == n - 1 { hi } else { lo + step * i as f64 };
        let mut fx = f(x);
        if fx == 0.0 {
            // nudge off an exact zero so the sign-change test can see it
            let x2 = x + step * 1e-9;
            fx = f(x2);
        }
        if !fx.is_finite() {
            skipped += 1;
            continue;
        }
        if let Some((px, pfx)) = prev {
            if pfx * fx < 0.0 && is_root_crossing(&f, px, x, pfx, fx) {
                brackets.push(Bracket {
                    lo: px,
                    hi: x,
                    f_lo: pfx,
                    f_hi: fx,
                });
            }
        }
        prev = Some((x, fx));
    }
    if prev.is_none() {
        return Err(NumericsError::NoValidPoints);
    }
    Ok(BracketScan { brackets, skipped })
}

/// Distinguish a root from a pole: bisect toward the sign change and accept
/// only if `|f|` ends up below both endpoint magnitudes.
fn is_root_crossing<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> bool {
    let mut a = lo;
    let mut b = hi;
    let mut fa = f_lo;
    let mut fm = f_lo;
    for _ in 0..60 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        fm = f(m);
        if !fm.is_finite() || fm == 0.0 {
            break;
        }
        if fa * fm < 0.0 {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    if !fm.is_finite() {
        return false;
    }
    fabs(fm) <= fabs(f_lo).min(fabs(f_hi))
}

/// Brent-style refinement: inverse-quadratic/secant steps with a bisection
/// safeguard, run until the bracket width drops below `tol`.
pub fn refine_root<F: Fn(f64) -> f64>(
    f: F,
    bracket: &Bracket,
    tol: f64,
) -> Result<f64, NumericsError> {
    if !(tol > 0.0) {
        return Err(NumericsError::InvalidTolerance);
    }
    if !(bracket.lo < bracket.hi) || bracket.f_lo * bracket.f_hi >= 0.0 {
        return Err(NumericsError::InvalidBracket);
    }
    let mut xpre = bracket.lo;
    let mut xcur = bracket.hi;
    let mut fpre = bracket.f_lo;
    let mut fcur = bracket.f_hi;
    if fpre == 0.0 {
        return Ok(xpre);
    }
    if fcur == 0.0 {
        return Ok(xcur);
    }
    let mut xblk = 0.0;
    let mut fblk = 0.0;
    let mut spre = 0.0;
    let mut scur = 0.0;
    for _ in 0..300 {
        if fpre * fcur < 0.0 {
            xblk = xpre;
            fblk = fpre;
            spre = xcur - xpre;
            scur = spre;
        }
        if fabs(fblk) < fabs(fcur) {
            xpre = xcur;
            xcur = xblk;
            xblk = xpre;
            fpre = fcur;
            fcur = fblk;
            fblk = fpre;
        }
        let delta = 0.5 * (tol + 4.0 * f64::EPSILON * fabs(xcur));
        let sbis = 0.5 * (xblk - xcur);
        if fcur == 0.0 || fabs(sbis) < delta {
            return Ok(xcur);
        }
        if fabs(spre) > delta && fabs(fcur) < fabs(fpre) {
            let stry = if xpre == xblk {
                // secant
                -fcur * (xcur - xpre) / (fcur - fpre)
            } else {
                // inverse quadratic
                let dpre = (fpre - fcur) / (xpre - xcur);
                let dblk = (fblk - fcur) / (xblk - xcur);
                -fcur * (fblk * dblk - fpre * dpre) / (dblk * dpre * (fblk - fpre))
            };
            if 2.0 * fabs(stry) < fabs(spre).min(3.0 * fabs(sbis) - delta) {
                spre = scur;
                scur = stry;
            } else {
                spre = sbis;
                scur = sbis;
            }
        } else {
            spre = sbis;
            scur = sbis;
        }
        xpre = xcur;
        fpre = fcur;
        if fabs(scur) > delta {
            xcur += scur;
        } else {
            xcur += if sbis > 0.0 { delta } else { -delta };
        }
        fcur = f(xcur);
        if !fcur.is_finite() {
            let (lo, hi) = if xcur < xblk {
                (xcur, xblk)
            } else {
                (xblk, xcur)
            };
            return Err(NumericsError::NonFinite { lo, hi });
        }
    }
    Ok(xcur)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
    /// false when the subdivision limit was reached first; `value` is then
    /// the best available estimate.
    pub converged: bool,
}

// 10-point Gauss-Legendre rule; all nodes interior, so integrable endpoint
// singularities are never evaluated.
const GL_NODES: [f64; 10] = [
    -0.9739065285171717,
    -0.8650633666889845,
    -0.6794095682990244,
    -0.4333953941292472,
    -0.14887433898163122,
    0.14887433898163122,
    0.4333953941292472,
    0.6794095682990244,
    0.8650633666889845,
    0.9739065285171717,
];
const GL_WEIGHTS: [f64; 10] = [
    0.06667134430868807,
    0.14945134915058036,
    0.219086362515982,
    0.2692667193099965,
    0.295524224714753,
    0.295524224714753,
    0.2692667193099965,
    0.219086362515982,
    0.14945134915058036,
    0.06667134430868807,
];

fn gauss_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut sum = 0.0;
    for (x, w) in GL_NODES.iter().zip(GL_WEIGHTS.iter()) {
        sum += w * f(c + h * x);
    }
    sum * h
}

struct Segment {
    a: f64,
    b: f64,
    /// refined estimate: sum of the two half-panel rules
    value: f64,
    /// the half-panel values themselves, reused as the children's coarse
    /// estimates on a split
    left: f64,
    right: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Globally adaptive open-rule quadrature: keep splitting the segment with
/// the largest error estimate until the total satisfies `tol*(1+|value|)`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> QuadratureResult {
    const MAX_SEGMENTS: usize = 20_000;
    if lo == hi {
        return QuadratureResult {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
            converged: true,
        };
    }
    let (a, b, flip) = if lo < hi {
        (lo, hi, 1.0)
    } else {
        (hi, lo, -1.0)
    };
    // starts at 10 for the initial coarse panel evaluated below
    let mut evals = 10usize;
    let mut eval_panel = |a: f64, b: f64, coarse: f64| -> Segment {
        let m = 0.5 * (a + b);
        let left = gauss_panel(&f, a, m);
        let right = gauss_panel(&f, m, b);
        evals += 20;
        let value = left + right;
        Segment {
            a,
            b,
            value,
            left,
            right,
            error: fabs(coarse - value),
        }
    };
    let coarse0 = gauss_panel(&f, a, b);
    let first = eval_panel(a, b, coarse0);
    let mut total = first.value;
    let mut err_total = first.error;
    let mut heap = alloc::collections::BinaryHeap::new();
    heap.push(first);
    let mut converged = true;
    loop {
        if !total.is_finite() {
            converged = false;
            break;
        }
        if err_total <= tol * (1.0 + fabs(total)) {
            break;
        }
        if heap.len() >= MAX_SEGMENTS {
            converged = false;
            break;
        }
        let s = heap.pop().unwrap();
        let m = 0.5 * (s.a + s.b);
        if m <= s.a || m >= s.b {
            // interval exhausted at machine precision
            heap.push(s);
            converged = false;
            break;
        }
        total -= s.value;
        err_total -= s.error;
        let left = eval_panel(s.a, m, s.left);
        let right = eval_panel(m, s.b, s.right);
        total += left.value + right.value;
        err_total += left.error + right.error;
        heap.push(left);
        heap.push(right);
    }
    // the incrementally tracked sums drift after many updates; re-add once
    let value: f64 = heap.iter().map(|s| s.value).sum();
    let error_estimate: f64 = heap.iter().map(|s| s.error).sum::<f64>().max(0.0);
    QuadratureResult {
        value: flip * value,
        error_estimate,
        evaluations: evals,
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use libm::{cos, sin, sqrt};

    #[test]
    fn scan_finds_cosine_roots() {
        let scan = scan_brackets(cos, 0.0, 8.0, 100).unwrap();
        assert_eq!(scan.brackets.len(), 3);
        assert_eq!(scan.skipped, 0);
        let expect = [
            core::f64::consts::FRAC_PI_2,
            3.0 * core::f64::consts::FRAC_PI_2,
            5.0 * core::f64::consts::FRAC_PI_2,
        ];
        for (b, want) in scan.brackets.iter().zip(expect.iter()) {
            assert!(b.lo < *want && *want < b.hi);
        }
    }

    #[test]
    fn scan_skips_even_multiplicity() {
        let scan = scan_brackets(|z| (z - 1.0) * (z - 1.0), 0.0, 2.0, 100).unwrap();
        assert!(scan.brackets.is_empty());
    }

    #[test]
    fn scan_records_skipped_points() {
        let scan =
            scan_brackets(|x| if x < 0.5 { f64::NAN } else { x - 0.7 }, 0.0, 1.0, 11).unwrap();
        assert_eq!(scan.skipped, 5);
        assert_eq!(scan.brackets.len(), 1);
        let all_nan = scan_brackets(|_| f64::NAN, 0.0, 1.0, 11);
        assert_eq!(all_nan.unwrap_err(), NumericsError::NoValidPoints);
    }

    #[test]
    fn scan_discards_poles() {
        // tan has roots at k*pi and poles at pi/2 + k*pi, both changing sign
        let scan = scan_brackets(libm::tan, 0.1, 7.0, 200).unwrap();
        assert_eq!(scan.brackets.len(), 2, "only the two genuine roots");
    }

    #[test]
    fn refine_cosine_root() {
        let scan = scan_brackets(cos, 1.0, 2.0, 50).unwrap();
        let r = refine_root(cos, &scan.brackets[0], 1e-12).unwrap();
        assert!(fabs(r - core::f64::consts::FRAC_PI_2) < 1e-12);
    }

    #[test]
    fn refine_linear_is_exact() {
        let a = 0.7332;
        let b = Bracket {
            lo: 0.0,
            hi: 1.0,
            f_lo: -a,
            f_hi: 1.0 - a,
        };
        let r = refine_root(|x| x - a, &b, 1e-12).unwrap();
        assert_eq!(r, a);
    }

    #[test]
    fn refine_rejects_bad_input() {
        let b = Bracket {
            lo: 0.0,
            hi: 1.0,
            f_lo: 1.0,
            f_hi: 2.0,
        };
        assert_eq!(
            refine_root(|x| x, &b, 1e-12).unwrap_err(),
            NumericsError::InvalidBracket
        );
        let b = Bracket {
            lo: 0.0,
            hi: 1.0,
            f_lo: -1.0,
            f_hi: 1.0,
        };
        assert_eq!(
            refine_root(|x| x, &b, 0.0).unwrap_err(),
            NumericsError::InvalidTolerance
        );
    }

    #[test]
    fn refine_reports_non_finite() {
        let f = |x: f64| {
            if x > 0.4 && x < 0.6 {
                f64::NAN
            } else {
                x - 0.5
            }
        };
        let b = Bracket {
            lo: 0.0,
            hi: 1.0,
            f_lo: -0.5,
            f_hi: 0.5,
        };
        match refine_root(f, &b, 1e-14) {
            Err(NumericsError::NonFinite { lo, hi }) => assert!(lo < hi),
            other => panic!("expected NonFinite, got {other:?}"),
        }
    }

    #[test]
    fn integrate_smooth() {
        let q = integrate(sin, 0.0, core::f64::consts::PI, 1e-12);
        assert!(q.converged);
        assert!(fabs(q.value - 2.0) < 1e-10);
    }

    #[test]
    fn integrate_endpoint_singularity() {
        let q = integrate(|x| 1.0 / sqrt(x), 0.0, 1.0, 1e-8);
        assert!(fabs(q.value - 2.0) < 1e-6, "got {}", q.value);
    }

    #[test]
    fn integrate_gaussian_norm() {
        // normalized SHO ground state density integrates to one
        let f = |z: f64| {
            let p = libm::exp(-z * z / 2.0) / libm::pow(core::f64::consts::PI, 0.25);
            p * p
        };
        let q = integrate(f, -10.0, 10.0, 1e-12);
        assert!(q.converged);
        assert!(fabs(q.value - 1.0) < 1e-10, "got {}", q.value);
    }

    #[test]
    fn integrate_reversed_limits() {
        let q = integrate(sin, core::f64::consts::PI, 0.0, 1e-12);
        assert!(fabs(q.value + 2.0) < 1e-10);
    }

    #[test]
    fn integrate_flags_non_convergence() {
        // 1/x is not integrable at 0; the subdivision budget must run out
        let q = integrate(|x| 1.0 / x, 0.0, 1.0, 1e-10);
        assert!(!q.converged);
    }
}
