//! Airy functions `Ai`, `Bi` and their derivatives on the real line, plus
//! zeros of `Ai` and `Ai'`.
//!
//! Evaluation strategy: Maclaurin series around the origin, asymptotic
//! expansions for large `|x|`, and Taylor-series marching of the Airy ODE
//! `y'' = x y` across the midrange where neither is accurate enough. `Ai`
//! on the positive midrange is marched downward from the asymptotic anchor
//! (the stable direction); the oscillatory negative midrange is marched
//! upward from the anchor at `x = -9.5`. Each regime hand-off is covered by
//! an overlap test.

use libm::{cos, exp, fabs, log, pow, sin, sqrt};

/// `Ai`, `Bi`, `Ai'`, `Bi'` at a common argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryValues {
    pub ai: f64,
    pub bi: f64,
    pub ai_prime: f64,
    pub bi_prime: f64,
}

impl AiryValues {
    /// `Ai*Bi' - Ai'*Bi`, identically `1/pi`.
    pub fn wronskian(&self) -> f64 {
        self.ai * self.bi_prime - self.ai_prime * self.bi
    }
}

/// Which component of [`AiryValues`] left the representable range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AiryComponent {
    Bi,
    BiPrime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AiryError {
    /// NaN or infinite argument.
    NonFiniteInput,
    /// `Bi` or `Bi'` exceeds the f64 range (argument too large and positive).
    Overflow(AiryComponent),
    /// Zero index `k` must be >= 1.
    InvalidZeroIndex,
}

impl core::fmt::Display for AiryError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            AiryError::NonFiniteInput => write!(f, "airy argument must be finite"),
            AiryError::Overflow(AiryComponent::Bi) => write!(f, "Bi overflows f64 range"),
            AiryError::Overflow(AiryComponent::BiPrime) => write!(f, "Bi' overflows f64 range"),
            AiryError::InvalidZeroIndex => write!(f, "zero index must be >= 1"),
        }
    }
}

pub(crate) const AI0: f64 = 0.3550280538878172; // 3^(-2/3) / Gamma(2/3)
pub(crate) const AIP0: f64 = -0.2588194037928068; // -3^(-1/3) / Gamma(1/3)
pub(crate) const BI0: f64 = 0.6149266274460007; // 3^(-1/6) / Gamma(2/3)
pub(crate) const BIP0: f64 = 0.4482883573538264; // 3^(1/6) / Gamma(1/3)

const SQRT_PI: f64 = 1.772453850905516;
const FRAC_PI_4: f64 = core::f64::consts::FRAC_PI_4;

// Regime boundaries.
const POS_ASYM: f64 = 9.5;
const POS_SERIES_MAX: f64 = 2.4;
const NEG_SERIES_MIN: f64 = -5.0;
const NEG_ASYM: f64 = -9.5;
const MARCH_STEP: f64 = 0.5;
const TAYLOR_TERMS: usize = 30;

/// Evaluate all four Airy values at `x`.
///
/// Relative accuracy is ~1e-12 over the working range (absolute near zeros);
/// `Ai` underflows gracefully to 0 for large positive `x`, while `Bi`
/// overflow reports an error naming the offending component.
pub fn airy_eval(x: f64) -> Result<AiryValues, AiryError> {
    if !x.is_finite() {
        return Err(AiryError::NonFiniteInput);
    }
    if x > 1.0 {
        // Bail out before exp() overflows rather than returning infinities.
        let zeta = 2.0 / 3.0 * x * sqrt(x);
        let ln_bi = zeta - 0.25 * log(x) - 0.5 * log(core::f64::consts::PI);
        let ln_bip = zeta + 0.25 * log(x) - 0.5 * log(core::f64::consts::PI);
        if ln_bi > 709.0 {
            return Err(AiryError::Overflow(AiryComponent::Bi));
        }
        if ln_bip > 709.0 {
            return Err(AiryError::Overflow(AiryComponent::BiPrime));
        }
    }
    Ok(eval_unchecked(x))
}

fn eval_unchecked(x: f64) -> AiryValues {
    if x >= POS_ASYM {
        asymptotic_positive(x)
    } else if x >= POS_SERIES_MAX {
        // Bi grows monotonically: its series has no cancellation at positive
        // arguments. Ai does cancel catastrophically there, so it is marched
        // down from the asymptotic anchor instead.
        let series = maclaurin(x);
        let anchor = asymptotic_positive(POS_ASYM);
        let (ai, ai_prime) = march(POS_ASYM, anchor.ai, anchor.ai_prime, x);
        AiryValues {
            ai,
            ai_prime,
            ..series
        }
    } else if x > NEG_SERIES_MIN {
        maclaurin(x)
    } else if x >= NEG_ASYM {
        let anchor = asymptotic_negative(NEG_ASYM);
        let (ai, ai_prime) = march(NEG_ASYM, anchor.ai, anchor.ai_prime, x);
        let (bi, bi_prime) = march(NEG_ASYM, anchor.bi, anchor.bi_prime, x);
        AiryValues {
            ai,
            bi,
            ai_prime,
            bi_prime,
        }
    } else {
        asymptotic_negative(x)
    }
}

/// `Ai(x)` alone, valid for any finite `x` no matter how large: the large-`x`
/// branch never touches `Bi`, so it cannot overflow.
pub(crate) fn ai_only(x: f64) -> f64 {
    if x >= POS_ASYM {
        let zeta = 2.0 / 3.0 * x * sqrt(x);
        let (sp, _, _, _) = asymptotic_sums(zeta);
        exp(-zeta) / (2.0 * SQRT_PI * pow(x, 0.25)) * sp
    } else {
        eval_unchecked(x).ai
    }
}

/// Maclaurin series for all four values; accurate for roughly
/// `-5 <= x <= 2.5` (beyond that `Ai` loses digits to cancellation).
fn maclaurin(x: f64) -> AiryValues {
    let x3 = x * x * x;
    // f = 1 + x^3/6 + ...,  g = x + x^4/12 + ...  and their derivatives,
    // each with its own term recurrence.
    let mut f = 1.0;
    let mut g = x;
    let mut fp = 0.0;
    let mut gp = 1.0;
    let mut tf = 1.0;
    let mut tg = x;
    let mut tfp = x * x / 2.0;
    let mut tgp = 1.0;
    fp += tfp;
    for k in 1..90usize {
        let kf = k as f64;
        tf *= x3 / ((3.0 * kf) * (3.0 * kf - 1.0));
        tg *= x3 / ((3.0 * kf + 1.0) * (3.0 * kf));
        tgp *= x3 / ((3.0 * kf) * (3.0 * kf - 2.0));
        if k >= 2 {
            tfp *= x3 / ((3.0 * kf - 1.0) * (3.0 * kf - 3.0));
        }
        f += tf;
        g += tg;
        gp += tgp;
        if k >= 2 {
            fp += tfp;
        }
        let done = fabs(tf) < 1e-17 * (fabs(f) + 1e-300)
            && fabs(tg) < 1e-17 * (fabs(g) + 1e-300)
            && fabs(tfp) < 1e-17 * (fabs(fp) + 1e-300)
            && fabs(tgp) < 1e-17 * (fabs(gp) + 1e-300);
        if done {
            break;
        }
    }
    AiryValues {
        ai: AI0 * f + AIP0 * g,
        ai_prime: AI0 * fp + AIP0 * gp,
        bi: BI0 * f + BIP0 * g,
        bi_prime: BI0 * fp + BIP0 * gp,
    }
}

// Coefficients u_k (and v_k for the derivatives) of the large-argument
// expansions, u_k = Gamma(3k+1/2) / (54^k k! Gamma(k+1/2)).
const UK: [f64; 40] = [
    1.0,
    0.06944444444444445,
    0.037133487654320986,
    0.03799305912780064,
    0.05764919041266972,
    0.11609906402551541,
    0.2915913992307505,
    0.8776669695100169,
    3.079453030173167,
    12.341573332345238,
    55.62278536591708,
    278.46508077760257,
    1533.1694320127956,
    9207.206599726414,
    59892.51356587907,
    419524.87511655106,
    3148257.4178668265,
    25198919.871602368,
    214288036.96368033,
    1929375549.182493,
    18335766937.890568,
    183418303528.83255,
    1926471158970.4465,
    21196999388647.65,
    243826826879716.03,
    2926599219297925.0,
    3.659030701264313e16,
    4.7576810203630675e17,
    6.424049357901938e18,
    8.995207427058378e19,
    1.3045132993176097e21,
    1.9570621786581614e22,
    3.0338710865943386e23,
    4.854832179436167e24,
    8.011464687609593e25,
    1.3621079545263217e27,
    2.3839516727271057e28,
    4.2915604492858035e29,
    7.940171107576632e30,
    1.5087738952527293e32,
];
const VK: [f64; 40] = [
    1.0,
    -0.09722222222222222,
    -0.04388503086419753,
    -0.04246283078989483,
    -0.06266216349203231,
    -0.12410589602727509,
    -0.3082537649010791,
    -0.9204799924129445,
    -3.210493584648621,
    -12.807293080735626,
    -57.50830351391427,
    -287.0332371092211,
    -1576.3573033370997,
    -9446.354823095931,
    -61335.706663852055,
    -428952.4004000691,
    -3214536.5214008647,
    -25697908.383911327,
    -218293420.83216032,
    -1963523788.9910328,
    -18643931088.107216,
    -186352996385.29388,
    -1955882932389.8428,
    -21506444635197.25,
    -247236992290621.16,
    -2965882430295212.5,
    -3.706244000635466e16,
    -4.816782647945217e17,
    -6.500984080751063e18,
    -9.099198264365412e19,
    -1.3190888669077507e21,
    -1.978219607616628e22,
    -3.065639370223598e23,
    -4.90411981577562e24,
    -8.090395374187028e25,
    -1.3751424804069563e27,
    -2.4061279673571254e28,
    -4.330398100410562e29,
    -8.010128562268937e30,
    -1.5217247441390187e32,
];

/// Alternating and plain asymptotic sums in `1/zeta`, truncated where the
/// divergent tail starts to grow.
fn asymptotic_sums(zeta: f64) -> (f64, f64, f64, f64) {
    let mut sp = 1.0; // sum (-1)^k u_k / zeta^k
    let mut sm = 1.0; // sum u_k / zeta^k
    let mut tp = 1.0; // sum (-1)^k v_k / zeta^k
    let mut tm = 1.0; // sum v_k / zeta^k
    let mut zk = 1.0;
    let mut prev = f64::MAX;
    for k in 1..UK.len() {
        zk /= zeta;
        let term = UK[k] * zk;
        if fabs(term) > prev {
            break;
        }
        prev = fabs(term);
        let sign = if k % 2 == 1 { -1.0 } else { 1.0 };
        sp += sign * term;
        sm += term;
        tp += sign * VK[k] * zk;
        tm += VK[k] * zk;
        if fabs(term) < 1e-18 {
            break;
        }
    }
    (sp, sm, tp, tm)
}

fn asymptotic_positive(x: f64) -> AiryValues {
    let zeta = 2.0 / 3.0 * x * sqrt(x);
    let (sp, sm, tp, tm) = asymptotic_sums(zeta);
    let x4 = pow(x, 0.25);
    let em = exp(-zeta);
    let ep = exp(zeta);
    AiryValues {
        ai: em / (2.0 * SQRT_PI * x4) * sp,
        ai_prime: -x4 * em / (2.0 * SQRT_PI) * tp,
        bi: ep / (SQRT_PI * x4) * sm,
        bi_prime: x4 * ep / SQRT_PI * tm,
    }
}

fn asymptotic_negative(x: f64) -> AiryValues {
    let t = -x;
    let zeta = 2.0 / 3.0 * t * sqrt(t);
    // Even/odd splits of the u- and v-sums with alternating signs.
    let mut se = 1.0;
    let mut so = 0.0;
    let mut pe = 1.0;
    let mut po = 0.0;
    let mut zk = 1.0;
    let mut prev = f64::MAX;
    for k in 1..UK.len() {
        zk /= zeta;
        let term = UK[k] * zk;
        if term > prev {
            break;
        }
        prev = term;
        let sign = if (k / 2) % 2 == 1 { -1.0 } else { 1.0 };
        if k % 2 == 0 {
            se += sign * term;
            pe += sign * VK[k] * zk;
        } else {
            so += sign * term;
            po += sign * VK[k] * zk;
        }
        if term < 1e-18 {
            break;
        }
    }
    let c = cos(zeta - FRAC_PI_4);
    let s = sin(zeta - FRAC_PI_4);
    let t4 = pow(t, 0.25);
    AiryValues {
        ai: (c * se + s * so) / (SQRT_PI * t4),
        ai_prime: t4 / SQRT_PI * (s * pe - c * po),
        bi: (-s * se + c * so) / (SQRT_PI * t4),
        bi_prime: t4 / SQRT_PI * (c * pe + s * po),
    }
}

/// One Taylor step of `y'' = x*y` from `a` to `a + h`.
fn taylor_step(a: f64, y: f64, yp: f64, h: f64) -> (f64, f64) {
    let mut t = [0.0; TAYLOR_TERMS];
    t[0] = y;
    t[1] = yp;
    for n in 0..TAYLOR_TERMS - 2 {
        let prev = if n >= 1 { t[n - 1] } else { 0.0 };
        t[n + 2] = (a * t[n] + prev) / (((n + 1) * (n + 2)) as f64);
    }
    let mut val = 0.0;
    for n in (0..TAYLOR_TERMS).rev() {
        val = val * h + t[n];
    }
    let mut der = 0.0;
    for n in (1..TAYLOR_TERMS).rev() {
        der = der * h + n as f64 * t[n];
    }
    (val, der)
}

/// March a solution of the Airy ODE from `from` to `to` in bounded steps.
fn march(from: f64, y0: f64, yp0: f64, to: f64) -> (f64, f64) {
    let mut a = from;
    let mut y = y0;
    let mut yp = yp0;
    while fabs(to - a) > 1e-14 {
        let h = (to - a).clamp(-MARCH_STEP, MARCH_STEP);
        let (ny, nyp) = taylor_step(a, y, yp, h);
        y = ny;
        yp = nyp;
        a += h;
    }
    (y, yp)
}

/// `k`-th negative zero of `Ai`, ascending in magnitude (`k >= 1`).
pub fn ai_zero(k: usize) -> Result<f64, AiryError> {
    if k == 0 {
        return Err(AiryError::InvalidZeroIndex);
    }
    let t = 3.0 * core::f64::consts::PI * (4.0 * k as f64 - 1.0) / 8.0;
    let guess = -zero_expansion(t, &[5.0 / 48.0, -5.0 / 36.0, 77125.0 / 82944.0]);
    bisect_zero(guess, |v| v.ai)
}

/// `k`-th negative zero of `Ai'`, ascending in magnitude (`k >= 1`).
pub fn ai_prime_zero(k: usize) -> Result<f64, AiryError> {
    if k == 0 {
        return Err(AiryError::InvalidZeroIndex);
    }
    let t = 3.0 * core::f64::consts::PI * (4.0 * k as f64 - 3.0) / 8.0;
    let guess = -zero_expansion(t, &[-7.0 / 48.0, 35.0 / 288.0, -181223.0 / 207360.0]);
    bisect_zero(guess, |v| v.ai_prime)
}

/// `t^(2/3) * (1 + c1/t^2 + c2/t^4 + ...)`, truncated where terms stop
/// shrinking (the expansion is asymptotic and diverges for small `t`).
fn zero_expansion(t: f64, coeffs: &[f64]) -> f64 {
    let t2 = t * t;
    let mut sum = 1.0;
    let mut tk = 1.0;
    let mut prev = f64::MAX;
    for &c in coeffs {
        tk /= t2;
        let term = c * tk;
        if fabs(term) >= prev {
            break;
        }
        prev = fabs(term);
        sum += term;
    }
    pow(t, 2.0 / 3.0) * sum
}

fn bisect_zero(guess: f64, pick: impl Fn(&AiryValues) -> f64) -> Result<f64, AiryError> {
    let f = |x: f64| pick(&eval_unchecked(x));
    let mut lo = guess - 0.2;
    let mut hi = guess + 0.2;
    let mut tries = 0;
    while f(lo) * f(hi) > 0.0 {
        lo -= 0.1;
        hi += 0.1;
        tries += 1;
        if tries > 40 {
            return Err(AiryError::InvalidZeroIndex);
        }
    }
    let mut flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 1e-15 * fabs(mid) {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if flo * fm < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    Ok(0.5 * (lo + hi))
}
