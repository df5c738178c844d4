//! Code sizes and zero-error capacities.
//!
//! `F_w` satisfies `F_0 = 1`, `F_1 = 2`, `F_w = F_{w-1} + F_{w-2}` and the
//! capacity of the (1,w) channel is `log2(F_w) / w` bits per slot. It
//! decreases to `log2(phi)` from above, which pins the capacity of the
//! channel with an arbitrary number of skews to `log2(phi)` as well.
//!
//! `F_w` is always exact. Real-valued outputs are evaluated in
//! double-double precision from the exact integer and rounded to `f64` at
//! the end.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use twofloat::TwoFloat;

/// `F_w` with `F_0 = 1` and `F_1 = 2`.
pub fn fibonacci(w: usize) -> BigUint {
    let (mut prev, mut cur) = (BigUint::one(), BigUint::from(2u32));
    if w == 0 {
        return prev;
    }
    for _ in 1..w {
        let next = &prev + &cur;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `F_0, ..., F_{w_max}`.
pub fn fibonacci_table(w_max: usize) -> Vec<BigUint> {
    let mut table = vec![BigUint::one(), BigUint::from(2u32)];
    while table.len() <= w_max {
        let n = table.len();
        table.push(&table[n - 1] + &table[n - 2]);
    }
    table.truncate(w_max + 1);
    table
}

fn sqrt5() -> TwoFloat {
    TwoFloat::from(5.0).sqrt()
}

/// The golden ratio `(1 + sqrt 5) / 2`.
pub fn phi() -> TwoFloat {
    (sqrt5() + 1.0) / 2.0
}

/// Leading Binet coefficient `(4 + 2 sqrt 5) / (5 + sqrt 5)`, evaluated
/// in the rationalized form `(5 + 3 sqrt 5) / 10`.
pub fn alpha() -> TwoFloat {
    (sqrt5() * 3.0 + 5.0) / 10.0
}

pub fn log2_phi_dd() -> TwoFloat {
    phi().log2()
}

pub fn log2_phi() -> f64 {
    log2_phi_dd().hi()
}

/// `log2(n)` in double-double precision.
pub fn log2_exact(n: &BigUint) -> TwoFloat {
    assert!(!n.is_zero(), "log2 of zero");
    let bits = n.bits();
    let shift = bits.saturating_sub(106);
    let top = (n >> shift).to_u128().expect("at most 106 bits");
    TwoFloat::from(top).log2() + shift as f64
}

/// `C_{1,w} = log2(F_w) / w` in double-double precision.
pub fn capacity_dd(w: usize) -> TwoFloat {
    assert!(w >= 1, "capacity needs w >= 1");
    log2_exact(&fibonacci(w)) / w as f64
}

pub fn capacity_1w(w: usize) -> f64 {
    capacity_dd(w).hi()
}

/// `alpha * phi^w + (1 - alpha) * (-1/phi)^w` in double-double precision.
pub fn binet(w: usize) -> TwoFloat {
    let a = alpha();
    let p = phi();
    let n = i32::try_from(w).expect("binet index fits i32");
    // -1/phi = 1 - phi
    let conj = -p + 1.0;
    a * p.powi(n) + (-a + 1.0) * conj.powi(n)
}

fn residual(w: usize, fib: &BigUint) -> Option<f64> {
    let exact = TwoFloat::from(fib.to_u128()?);
    Some((binet(w) - exact).abs().hi())
}

/// `|binet(w) - F_w|`, while `F_w` fits in 128 bits.
pub fn binet_residual(w: usize) -> Option<f64> {
    residual(w, &fibonacci(w))
}

/// Lucas and ordinary Fibonacci numbers `(L_w, Fib_w)`, so that
/// `phi^w = (L_w + Fib_w sqrt 5) / 2`.
fn lucas_fib(w: usize) -> (BigInt, BigInt) {
    let (mut l_prev, mut l) = (BigInt::from(2), BigInt::one());
    let (mut f_prev, mut f) = (BigInt::zero(), BigInt::one());
    if w == 0 {
        return (l_prev, f_prev);
    }
    for _ in 1..w {
        let l_next = &l + &l_prev;
        l_prev = std::mem::replace(&mut l, l_next);
        let f_next = &f + &f_prev;
        f_prev = std::mem::replace(&mut f, f_next);
    }
    (l, f)
}

/// `F_w >= phi^w`, decided exactly in `Z[sqrt 5]`.
///
/// With `phi^w = (L + F sqrt 5) / 2` the claim is `2 F_w - L >= F sqrt 5`,
/// i.e. the left side is nonnegative and its square is at least `5 F^2`.
pub fn exceeds_phi_power_exact(w: usize) -> bool {
    let (lucas, fib) = lucas_fib(w);
    let lhs: BigInt = BigInt::from(fibonacci(w)) * 2 - lucas;
    !lhs.is_negative() && &lhs * &lhs >= fib.pow(2) * 5
}

/// Closed interval with outward-rounded `f64` endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    fn point(x: f64) -> Self {
        Self { lo: x, hi: x }
    }

    fn widen(lo: f64, hi: f64) -> Self {
        Self {
            lo: lo.next_down(),
            hi: hi.next_up(),
        }
    }

    fn sqrt(x: f64) -> Self {
        let r = x.sqrt();
        Self::widen(r, r)
    }

    fn add(self, o: Self) -> Self {
        Self::widen(self.lo + o.lo, self.hi + o.hi)
    }

    fn sub(self, o: Self) -> Self {
        Self::widen(self.lo - o.hi, self.hi - o.lo)
    }

    fn mul(self, o: Self) -> Self {
        let p = [
            self.lo * o.lo,
            self.lo * o.hi,
            self.hi * o.lo,
            self.hi * o.hi,
        ];
        let lo = p.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Self::widen(lo, hi)
    }

    fn div(self, o: Self) -> Self {
        assert!(o.lo > 0.0 || o.hi < 0.0, "interval division by zero");
        let q = [
            self.lo / o.lo,
            self.lo / o.hi,
            self.hi / o.lo,
            self.hi / o.hi,
        ];
        let lo = q.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = q.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Self::widen(lo, hi)
    }

    fn powi(self, n: usize) -> Self {
        (0..n).fold(Self::point(1.0), |acc, _| acc.mul(self))
    }
}

/// Lower end of an enclosure of `(alpha - 1)(phi^w - (-1/phi)^w)`.
///
/// That expression is `F_w - phi^w`, so a positive lower end certifies
/// `F_w > phi^w`.
pub fn binet_gap_lower(w: usize) -> f64 {
    let one = Interval::point(1.0);
    let s = Interval::sqrt(5.0);
    let phi = one.add(s).div(Interval::point(2.0));
    let alpha = Interval::point(4.0)
        .add(s.mul(Interval::point(2.0)))
        .div(Interval::point(5.0).add(s));
    let inv = one.div(phi).powi(w);
    let conj = if w.is_multiple_of(2) {
        inv
    } else {
        Interval::point(0.0).sub(inv)
    };
    alpha.sub(one).mul(phi.powi(w).sub(conj)).lo
}

/// Checks `F_w >= phi^w` for every `2 <= w <= w_max`, once exactly and
/// once by interval evaluation of the Binet difference.
pub fn lower_bound_check(w_max: usize) -> bool {
    (2..=w_max).all(|w| exceeds_phi_power_exact(w) && binet_gap_lower(w) > 0.0)
}

/// Summary of one block length.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CapacityReport {
    pub w: usize,
    #[serde(serialize_with = "serialize_decimal")]
    pub fib: BigUint,
    pub capacity: f64,
    pub limit_gap: f64,
    /// `|binet(w) - F_w|`; absent once `F_w` no longer fits in 128 bits.
    pub binet_check: Option<f64>,
}

fn serialize_decimal<S: serde::Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_str_radix(10))
}

impl CapacityReport {
    pub fn new(w: usize) -> Self {
        Self::from_fib(w, fibonacci(w))
    }

    fn from_fib(w: usize, fib: BigUint) -> Self {
        assert!(w >= 1, "capacity needs w >= 1");
        let c = log2_exact(&fib) / w as f64;
        let gap = c - log2_phi_dd();
        let binet_check = residual(w, &fib);
        Self {
            w,
            fib,
            capacity: c.hi(),
            limit_gap: gap.hi(),
            binet_check,
        }
    }

    /// Reports for `1..=w_max`, sharing one Fibonacci table.
    pub fn table(w_max: usize) -> Vec<Self> {
        fibonacci_table(w_max)
            .into_iter()
            .enumerate()
            .skip(1)
            .map(|(w, fib)| Self::from_fib(w, fib))
            .collect()
    }
}

/// Bounds on the capacity of the channel with arbitrary skews.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AasBounds {
    pub w_max: usize,
    pub lower: f64,
    pub upper: f64,
    pub upper_at: usize,
    pub resolved: f64,
}

impl AasBounds {
    pub fn summary(&self) -> String {
        let mut s = String::new();
        let _ = write!(
            s,
            "log2(phi) = {} <= C_AAS <= min_{{2<=w<={}}} C_1w = {} (w = {}); ",
            format_significant(self.lower, 12),
            self.w_max,
            format_significant(self.upper, 12),
            self.upper_at,
        );
        let _ = write!(
            s,
            "the computed minimum only bounds the infimum from above, and \
             inf_{{w>=2}} C_1w = lim_{{w->inf}} C_1w = log2(phi), so C_AAS = log2(phi) = {} exactly",
            format_significant(self.resolved, 12),
        );
        s
    }
}

/// `log2(phi) <= C_AAS <= min_{2 <= w <= w_max} C_{1,w}`, resolved to
/// `log2(phi)`.
pub fn aas_sandwich(w_max: usize) -> AasBounds {
    assert!(w_max >= 2, "sandwich needs w_max >= 2");
    let table = fibonacci_table(w_max);
    let (upper_at, upper) = (2..=w_max)
        .map(|w| (w, log2_exact(&table[w]) / w as f64))
        .min_by(|a, b| a.1.partial_cmp(&b.1).expect("finite capacities"))
        .expect("nonempty range");
    let lower = log2_phi();
    AasBounds {
        w_max,
        lower,
        upper: upper.hi(),
        upper_at,
        resolved: lower,
    }
}

/// `x` with `digits` significant decimal digits, in positional notation.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    // Scientific formatting settles the exponent after rounding.
    let sci = format!("{x:.prec$e}", prec = digits.saturating_sub(1));
    let exponent: i64 = sci[sci.find('e').expect("exponent") + 1..]
        .parse()
        .expect("integer exponent");
    let decimals = (digits as i64 - 1 - exponent).max(0) as usize;
    format!("{x:.decimals$}")
}

/// CSV table `w,F_w,C_1w,gap_to_log2phi` for `1..=w_max`.
pub fn capacity_csv(w_max: usize) -> String {
    let mut out = String::from("w,F_w,C_1w,gap_to_log2phi\n");
    for r in CapacityReport::table(w_max) {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            r.w,
            r.fib,
            format_significant(r.capacity, 12),
            format_significant(r.limit_gap, 12)
        );
    }
    out
}
