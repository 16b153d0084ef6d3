//! Property tests for the numeric kernels.

use proptest::prelude::*;
use qwell_core::exact::{potential_element, Potential};
use qwell_core::numerics::{integrate, refine_root, scan_brackets, Bracket};

proptest! {
    /// Brent refinement is invariant under rescaling of the residual:
    /// refine_root(c*f) lands on the same root for any c != 0.
    #[test]
    fn refine_root_scale_invariant(c in prop::sample::select(vec![
        -1.0e4, -37.5, -1.0, -1.2e-3, 1.7e-4, 0.5, 3.0, 8.1e3,
    ])) {
        let f = |x: f64| x.cos() - 0.3 * x;
        let scan = scan_brackets(f, 0.0, 2.0, 50).unwrap();
        prop_assert_eq!(scan.brackets.len(), 1);
        let b = &scan.brackets[0];
        let base = refine_root(f, b, 1e-13).unwrap();
        let scaled_bracket = Bracket { lo: b.lo, hi: b.hi, f_lo: c * b.f_lo, f_hi: c * b.f_hi };
        let scaled = refine_root(|x| c * f(x), &scaled_bracket, 1e-13).unwrap();
        prop_assert!((base - scaled).abs() <= 2e-13, "roots {} vs {}", base, scaled);
    }

    /// Splitting the interval anywhere must preserve the integral.
    #[test]
    fn integrate_additive(split in 0.05f64..0.95) {
        let f = |x: f64| (x * 3.0).sin() * (-x).exp() + 0.5 * x;
        let (a, c) = (0.0, 1.0);
        let b = a + split * (c - a);
        let whole = integrate(f, a, c, 1e-12);
        let left = integrate(f, a, b, 1e-12);
        let right = integrate(f, b, c, 1e-12);
        prop_assert!(whole.converged && left.converged && right.converged);
        let tol = 1e-11 * (1.0 + whole.value.abs());
        prop_assert!(
            (whole.value - (left.value + right.value)).abs() <= tol,
            "{} vs {} + {}", whole.value, left.value, right.value
        );
    }

    /// Matrix elements are symmetric in the basis indices for any geometry.
    #[test]
    fn potential_element_symmetric(
        n in 1usize..40,
        m in 1usize..40,
        z0 in 0.0f64..4.0,
        z_c in 10.0f64..40.0,
    ) {
        let p = if z0 == 0.0 { Potential::Sho } else { Potential::Dwp { z0 } };
        let a = potential_element(&p, n, m, z_c).unwrap();
        let b = potential_element(&p, m, n, z_c).unwrap();
        prop_assert_eq!(a, b);
    }
}
