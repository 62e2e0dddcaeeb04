//! Error-tracked arbitrary-precision real arithmetic.
//!
//! [`BigReal`] is a midpoint-radius ball: an arbitrary-precision center
//! (mantissa-exponent form) plus a low-precision nonnegative radius bounding
//! the distance between the stored center and the true value. Centers are
//! rounded to nearest; radii are always accumulated with upward rounding, so
//! for every composite expression the true result lies within the stored
//! radius of the stored center.
//!
//! Operations whose rigor depends on the operand interval excluding a
//! boundary point (division, logarithm, square root of a near-zero ball)
//! return `Result` and fail instead of producing an unsound enclosure.

use std::cmp::Ordering;
use std::fmt;

use rug::float::{Constant, Round};
use rug::ops::{AddAssignRound, DivAssignRound};
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};

/// Bits used for radius bookkeeping. Radii only need a rough magnitude,
/// rounded up.
const RAD_PREC: u32 = 32;

/// Working-precision configuration: the starting precision and the cap used
/// by adaptive escalation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ctx {
    pub bits: u32,
    pub max_bits: u32,
}

impl Ctx {
    pub const DEFAULT_BITS: u32 = 128;
    pub const DEFAULT_MAX_BITS: u32 = 1024;

    pub fn new(bits: u32) -> Self {
        Ctx {
            bits,
            max_bits: bits.max(Self::DEFAULT_MAX_BITS),
        }
    }

    pub fn with_max(bits: u32, max_bits: u32) -> Self {
        assert!(bits <= max_bits, "precision floor above cap");
        Ctx { bits, max_bits }
    }

    /// Doubling precision schedule `bits, 2*bits, ...` capped at `max_bits`.
    pub fn escalation(&self) -> Vec<u32> {
        let mut steps = Vec::new();
        let mut p = self.bits;
        loop {
            steps.push(p);
            if p >= self.max_bits {
                break;
            }
            p = (p * 2).min(self.max_bits);
        }
        steps
    }

    pub fn at(&self, bits: u32) -> Ctx {
        Ctx {
            bits,
            max_bits: self.max_bits.max(bits),
        }
    }
}

impl Default for Ctx {
    fn default() -> Self {
        Ctx {
            bits: Self::DEFAULT_BITS,
            max_bits: Self::DEFAULT_MAX_BITS,
        }
    }
}

/// Certified sign of a ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    /// Exactly zero (center zero, radius zero).
    Zero,
    Positive,
}

macro_rules! rup {
    ($e:expr) => {
        Float::with_val_round(RAD_PREC, $e, Round::Up).0
    };
}

macro_rules! rdown {
    ($e:expr) => {
        Float::with_val_round(RAD_PREC, $e, Round::Down).0
    };
}

/// Half an ulp of `val`, as an upper bound on the round-to-nearest error,
/// or exact zero when the rounding report says no rounding occurred.
fn half_ulp(val: &Float, ord: Ordering) -> Float {
    if ord == Ordering::Equal {
        return Float::new(RAD_PREC);
    }
    match val.get_exp() {
        // |val| < 2^e and mantissa has prec bits: nearest error <= 2^(e-prec-1).
        Some(e) => Float::with_val(RAD_PREC, 1) << (e - val.prec() as i32 - 1),
        None => Float::new(RAD_PREC),
    }
}

/// Arbitrary-precision real value with a rigorous error radius.
#[derive(Clone)]
pub struct BigReal {
    val: Float,
    rad: Float,
}

impl BigReal {
    fn raw(val: Float, rad: Float) -> Self {
        debug_assert!(rad.is_finite() && !rad.is_sign_negative() || rad.is_zero());
        BigReal { val, rad }
    }

    /// Exact zero at the given precision.
    pub fn zero(prec: u32) -> Self {
        BigReal::raw(Float::new(prec), Float::new(RAD_PREC))
    }

    pub fn one(prec: u32) -> Self {
        BigReal::from_i64(1, prec)
    }

    /// Exact small integer.
    pub fn from_i64(v: i64, prec: u32) -> Self {
        let (val, ord) = Float::with_val_round(prec, v, Round::Nearest);
        let rad = half_ulp(&val, ord);
        BigReal::raw(val, rad)
    }

    pub fn from_u32(v: u32, prec: u32) -> Self {
        Self::from_i64(v as i64, prec)
    }

    /// Big integer, exact whenever it fits in `prec` bits.
    pub fn from_integer(v: &Integer, prec: u32) -> Self {
        let (val, ord) = Float::with_val_round(prec, v, Round::Nearest);
        let rad = half_ulp(&val, ord);
        BigReal::raw(val, rad)
    }

    /// Exact rational, rounded to `prec` bits with the rounding error folded
    /// into the radius (radius zero when the value is dyadic and fits).
    pub fn from_rational(v: &Rational, prec: u32) -> Self {
        let (val, ord) = Float::with_val_round(prec, v, Round::Nearest);
        let rad = half_ulp(&val, ord);
        BigReal::raw(val, rad)
    }

    /// Exact double value (doubles are dyadic, so no radius).
    pub fn from_f64(v: f64, prec: u32) -> Self {
        let (val, ord) = Float::with_val_round(prec, v, Round::Nearest);
        let rad = half_ulp(&val, ord);
        BigReal::raw(val, rad)
    }

    /// Adopt a float as an exact value.
    pub fn from_float_exact(val: Float) -> Self {
        BigReal::raw(val, Float::new(RAD_PREC))
    }

    /// Ball from interval endpoints `[lo, hi]`.
    pub fn from_endpoints(lo: &Float, hi: &Float) -> Self {
        debug_assert!(lo <= hi);
        let prec = lo.prec().max(hi.prec());
        let (mid, _) = Float::with_val_round(prec, lo + hi, Round::Nearest);
        let mid = mid / 2u32;
        let r1 = rup!(hi - &mid);
        let r2 = rup!(&mid - lo);
        let rad = if r1 >= r2 { r1 } else { r2 };
        BigReal::raw(mid, rad)
    }

    pub fn pi(prec: u32) -> Self {
        let (val, ord) = Float::with_val_round(prec, Constant::Pi, Round::Nearest);
        let rad = half_ulp(&val, ord);
        BigReal::raw(val, rad)
    }

    /// Euler-Mascheroni constant.
    pub fn euler_gamma(prec: u32) -> Self {
        let (val, ord) = Float::with_val_round(prec, Constant::Euler, Round::Nearest);
        let rad = half_ulp(&val, ord);
        BigReal::raw(val, rad)
    }

    pub fn center(&self) -> &Float {
        &self.val
    }

    pub fn radius(&self) -> &Float {
        &self.rad
    }

    pub fn prec(&self) -> u32 {
        self.val.prec()
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.val.is_zero() && self.rad.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.val.is_finite() && self.rad.is_finite()
    }

    /// Rigorous upper bound of the interval.
    pub fn upper_bound(&self) -> Float {
        Float::with_val_round(self.prec(), &self.val + &self.rad, Round::Up).0
    }

    /// Rigorous lower bound of the interval.
    pub fn lower_bound(&self) -> Float {
        Float::with_val_round(self.prec(), &self.val - &self.rad, Round::Down).0
    }

    pub fn contains_zero(&self) -> bool {
        self.lower_bound() <= 0 && self.upper_bound() >= 0
    }

    /// Certified sign: `None` when the interval straddles zero without being
    /// exactly zero.
    pub fn sign(&self) -> Option<Sign> {
        if self.is_exact_zero() {
            Some(Sign::Zero)
        } else if self.lower_bound() > 0 {
            Some(Sign::Positive)
        } else if self.upper_bound() < 0 {
            Some(Sign::Negative)
        } else {
            None
        }
    }

    pub fn certainly_positive(&self) -> bool {
        self.lower_bound() > 0
    }

    pub fn certainly_negative(&self) -> bool {
        self.upper_bound() < 0
    }

    /// `self < other` for every pair of points in the two intervals.
    pub fn certainly_lt(&self, other: &BigReal) -> bool {
        self.upper_bound() < other.lower_bound()
    }

    pub fn certainly_le(&self, other: &BigReal) -> bool {
        self.upper_bound() <= other.lower_bound()
    }

    pub fn certainly_gt(&self, other: &BigReal) -> bool {
        other.certainly_lt(self)
    }

    pub fn certainly_ge(&self, other: &BigReal) -> bool {
        other.certainly_le(self)
    }

    /// The two intervals intersect, i.e. the values are consistent within
    /// the combined error radii.
    pub fn consistent_with(&self, other: &BigReal) -> bool {
        !(self.certainly_lt(other) || other.certainly_lt(self))
    }

    /// The interval of `self` contains the whole interval of `other`.
    pub fn encloses(&self, other: &BigReal) -> bool {
        self.lower_bound() <= other.lower_bound() && other.upper_bound() <= self.upper_bound()
    }

    /// Re-round the center to a new precision, folding the rounding error
    /// into the radius.
    pub fn to_prec(&self, prec: u32) -> BigReal {
        let (val, ord) = Float::with_val_round(prec, &self.val, Round::Nearest);
        let extra = half_ulp(&val, ord);
        let rad = rup!(&self.rad + &extra);
        BigReal::raw(val, rad)
    }

    /// Smallest ball (up to radius rounding) containing both inputs.
    pub fn hull(&self, other: &BigReal) -> BigReal {
        let lo1 = self.lower_bound();
        let lo2 = other.lower_bound();
        let hi1 = self.upper_bound();
        let hi2 = other.upper_bound();
        let lo = if lo1 <= lo2 { lo1 } else { lo2 };
        let hi = if hi1 >= hi2 { hi1 } else { hi2 };
        BigReal::from_endpoints(&lo, &hi)
    }

    /// Grow the radius by `extra` (interpreted as an upper bound, added with
    /// upward rounding).
    pub fn widen(&self, extra: &Float) -> BigReal {
        debug_assert!(!extra.is_sign_negative());
        let rad = rup!(&self.rad + extra);
        BigReal::raw(self.val.clone(), rad)
    }

    pub fn neg(&self) -> BigReal {
        let mut val = self.val.clone();
        val = -val;
        BigReal::raw(val, self.rad.clone())
    }

    /// Ball absolute value: `|x|` for `x` in the interval lies within
    /// `radius` of `|center|`.
    pub fn abs(&self) -> BigReal {
        let mut val = self.val.clone();
        val.abs_mut();
        BigReal::raw(val, self.rad.clone())
    }

    fn bin_prec(&self, other: &BigReal) -> u32 {
        self.prec().max(other.prec())
    }

    pub fn add(&self, other: &BigReal) -> BigReal {
        let (val, ord) = Float::with_val_round(self.bin_prec(other), &self.val + &other.val, Round::Nearest);
        let ulp = half_ulp(&val, ord);
        let rad = rup!(rup!(&self.rad + &other.rad) + &ulp);
        BigReal::raw(val, rad)
    }

    pub fn sub(&self, other: &BigReal) -> BigReal {
        let (val, ord) = Float::with_val_round(self.bin_prec(other), &self.val - &other.val, Round::Nearest);
        let ulp = half_ulp(&val, ord);
        let rad = rup!(rup!(&self.rad + &other.rad) + &ulp);
        BigReal::raw(val, rad)
    }

    pub fn mul(&self, other: &BigReal) -> BigReal {
        let (val, ord) = Float::with_val_round(self.bin_prec(other), &self.val * &other.val, Round::Nearest);
        let ulp = half_ulp(&val, ord);
        // |a||rb| + |b||ra| + ra rb, all upward.
        let a_abs = rup!(self.val.abs_ref());
        let b_abs = rup!(other.val.abs_ref());
        let mut prop = rup!(&a_abs * &other.rad);
        prop.add_assign_round(rup!(&b_abs * &self.rad), Round::Up);
        prop.add_assign_round(rup!(&self.rad * &other.rad), Round::Up);
        prop.add_assign_round(&ulp, Round::Up);
        BigReal::raw(val, prop)
    }

    /// Multiply by an exact small integer.
    pub fn mul_i64(&self, k: i64) -> BigReal {
        self.mul(&BigReal::from_i64(k, self.prec()))
    }

    /// Exact scaling by a power of two.
    pub fn mul_2exp(&self, k: i32) -> BigReal {
        let val = self.val.clone() << k;
        let rad = self.rad.clone() << k;
        BigReal::raw(val, rad)
    }

    /// Interval division; fails when the divisor interval contains zero.
    pub fn div(&self, other: &BigReal) -> Result<BigReal> {
        let b_abs = rdown!(other.val.abs_ref());
        let b_low = rdown!(&b_abs - &other.rad);
        if !(b_low > 0) {
            return Err(Error::DivisorStraddlesZero);
        }
        let (val, ord) = Float::with_val_round(self.bin_prec(other), &self.val / &other.val, Round::Nearest);
        let ulp = half_ulp(&val, ord);
        // (|a| rb + |b| ra) / (|b| (|b| - rb)), numerator up, denominator down.
        let a_abs = rup!(self.val.abs_ref());
        let b_abs_up = rup!(other.val.abs_ref());
        let mut num = rup!(&a_abs * &other.rad);
        num.add_assign_round(rup!(&b_abs_up * &self.rad), Round::Up);
        let den = rdown!(&b_abs * &b_low);
        let mut prop = num;
        prop.div_assign_round(&den, Round::Up);
        prop.add_assign_round(&ulp, Round::Up);
        BigReal::raw(val, prop).checked()
    }

    pub fn recip(&self) -> Result<BigReal> {
        BigReal::one(self.prec()).div(self)
    }

    fn checked(self) -> Result<BigReal> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::PrecisionExhausted(self.prec()))
        }
    }

    pub fn exp(&self) -> BigReal {
        let mut val = self.val.clone();
        let ord = val.exp_round(Round::Nearest);
        let ulp = half_ulp(&val, ord);
        // sup |e^x - e^c| over |x-c| <= r is e^c (e^r - 1).
        let mut e_up = rup!(&self.val);
        e_up.exp_round(Round::Up);
        let mut em1 = self.rad.clone();
        em1.exp_m1_round(Round::Up);
        let mut prop = rup!(&e_up * &em1);
        prop.add_assign_round(&ulp, Round::Up);
        BigReal::raw(val, prop)
    }

    /// Natural logarithm; the interval must lie strictly in `(0, inf)`.
    pub fn ln(&self) -> Result<BigReal> {
        let low = rdown!(&self.val - &self.rad);
        if !(low > 0) {
            return Err(Error::Domain("log of an interval not strictly positive".into()));
        }
        let mut val = self.val.clone();
        let ord = val.ln_round(Round::Nearest);
        let ulp = half_ulp(&val, ord);
        // |log x - log c| <= r / (c - r).
        let mut prop = self.rad.clone();
        prop.div_assign_round(&low, Round::Up);
        prop.add_assign_round(&ulp, Round::Up);
        BigReal::raw(val, prop).checked()
    }

    /// Square root. For intervals touching zero a coarse but rigorous
    /// enclosure `[0, sqrt(hi)]` is returned; negative intervals fail.
    pub fn sqrt(&self) -> Result<BigReal> {
        let low = rdown!(&self.val - &self.rad);
        if low > 0 {
            let mut val = self.val.clone();
            let ord = val.sqrt_round(Round::Nearest);
            let ulp = half_ulp(&val, ord);
            // |sqrt x - sqrt c| <= r / (2 sqrt(c - r)).
            let mut sq_low = low;
            sq_low.sqrt_round(Round::Down);
            let den = rdown!(&sq_low * 2u32);
            let mut prop = self.rad.clone();
            prop.div_assign_round(&den, Round::Up);
            prop.add_assign_round(&ulp, Round::Up);
            return BigReal::raw(val, prop).checked();
        }
        if self.upper_bound() < 0 {
            return Err(Error::Domain("sqrt of a negative interval".into()));
        }
        // Interval is [<=0, hi]: enclose sqrt([0, hi]) by [0, sqrt(hi)].
        let mut hi = rup!(&self.val + &self.rad);
        hi.sqrt_round(Round::Up);
        let half = hi.clone() >> 1i32;
        let val = Float::with_val(self.prec(), &half);
        BigReal::raw(val, rup!(&half)).checked()
    }

    /// Integer power by binary powering (total for `n >= 0`).
    pub fn pow_i64(&self, n: i64) -> Result<BigReal> {
        if n < 0 {
            return self.pow_i64(-n)?.recip();
        }
        let mut result = BigReal::one(self.prec());
        let mut base = self.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(result)
    }

    /// Real power `self^exponent = exp(exponent * ln self)`; the base must be
    /// strictly positive.
    pub fn pow(&self, exponent: &BigReal) -> Result<BigReal> {
        Ok(self.ln()?.mul(exponent).exp())
    }

    pub fn sin(&self) -> BigReal {
        let mut val = self.val.clone();
        let ord = val.sin_round(Round::Nearest);
        let ulp = half_ulp(&val, ord);
        // |sin| is 1-Lipschitz.
        let rad = rup!(&self.rad + &ulp);
        BigReal::raw(val, rad)
    }

    /// Midpoint as an exact ball (radius dropped). Useful for turning an
    /// enclosure into a representative point.
    pub fn center_value(&self) -> BigReal {
        BigReal::from_float_exact(self.val.clone())
    }

    /// Approximate value for reporting; not part of any certified path.
    pub fn to_f64(&self) -> f64 {
        self.val.to_f64()
    }

    /// Decimal rendering `value +/- radius` with the radius rounded up.
    pub fn to_decimal_string(&self) -> String {
        if self.rad.is_zero() {
            format!("{} +/- 0", self.val)
        } else {
            format!(
                "{} +/- {}",
                self.val,
                self.rad.to_string_radix_round(10, Some(3), Round::Up)
            )
        }
    }

    /// Parse a decimal or rational literal into an exactly-tracked ball.
    pub fn parse(s: &str, prec: u32) -> Result<BigReal> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let num: Integer = n
                .trim()
                .parse()
                .map_err(|_| Error::Domain(format!("cannot parse rational {s:?}")))?;
            let den: Integer = d
                .trim()
                .parse()
                .map_err(|_| Error::Domain(format!("cannot parse rational {s:?}")))?;
            if den == 0 {
                return Err(Error::Domain("rational with zero denominator".into()));
            }
            return Ok(BigReal::from_rational(&Rational::from((num, den)), prec));
        }
        match Float::parse(s) {
            Ok(incomplete) => {
                let (val, ord) = Float::with_val_round(prec, incomplete, Round::Nearest);
                let rad = half_ulp(&val, ord);
                Ok(BigReal::raw(val, rad))
            }
            Err(_) => Err(Error::Domain(format!("cannot parse number {s:?}"))),
        }
    }
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigReal({} +/- {:e})", self.val, self.rad.to_f64())
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_arithmetic_stays_exact() {
        let a = BigReal::from_i64(1575, 128);
        let b = BigReal::from_i64(3916, 128);
        let c = a.add(&b).mul(&b).sub(&a);
        assert!(c.is_exact());
        assert_eq!(c.center().to_f64(), ((1575.0 + 3916.0) * 3916.0) - 1575.0);
    }

    #[test]
    fn division_by_straddling_interval_fails() {
        let tiny = BigReal::from_f64(1e-30, 64).widen(&Float::with_val(32, 1e-20));
        let one = BigReal::one(64);
        assert!(matches!(one.div(&tiny), Err(Error::DivisorStraddlesZero)));
    }

    #[test]
    fn sqrt_two_encloses_truth() {
        let two = BigReal::from_i64(2, 256);
        let r = two.sqrt().unwrap();
        // square back: the enclosure must contain 2
        let sq = r.mul(&r);
        assert!(sq.lower_bound() <= 2 && sq.upper_bound() >= 2);
        assert!(r.radius().to_f64() < 1e-70);
    }

    #[test]
    fn exp_ln_round_trip_within_radius() {
        let x = BigReal::from_f64(1.75, 128);
        let y = x.exp().ln().unwrap();
        assert!(y.lower_bound() <= 1.75 && y.upper_bound() >= 1.75);
    }

    #[test]
    fn pi_radius_is_half_ulp() {
        let pi = BigReal::pi(128);
        assert!(!pi.is_exact());
        assert!(pi.radius().to_f64() < 1e-38);
        assert!(pi.certainly_gt(&BigReal::from_f64(3.14159, 128)));
        assert!(pi.certainly_lt(&BigReal::from_f64(3.1416, 128)));
    }

    #[test]
    fn hull_and_endpoints() {
        let a = BigReal::from_i64(1, 64);
        let b = BigReal::from_i64(5, 64);
        let h = a.hull(&b);
        assert!(h.lower_bound() <= 1 && h.upper_bound() >= 5);
        assert!(h.encloses(&BigReal::from_i64(3, 64)));
    }

    #[test]
    fn certified_comparisons() {
        let a = BigReal::from_rational(&Rational::from((1, 3)), 128);
        let b = BigReal::from_rational(&Rational::from((1, 2)), 128);
        assert!(a.certainly_lt(&b));
        assert!(!a.certainly_lt(&a));
        assert!(a.consistent_with(&a));
        assert_eq!(a.sign(), Some(Sign::Positive));
        assert_eq!(a.neg().sign(), Some(Sign::Negative));
        assert_eq!(BigReal::zero(64).sign(), Some(Sign::Zero));
        let straddle = BigReal::zero(64).widen(&Float::with_val(32, 1e-10));
        assert_eq!(straddle.sign(), None);
    }

    #[test]
    fn parse_round_trip_inside_radius() {
        let x = BigReal::pi(128);
        let printed = format!("{}", x.center());
        let reparsed = BigReal::parse(&printed, 128).unwrap();
        // display -> parse at the same precision recovers the center exactly
        assert_eq!(reparsed.center(), x.center());
        let q = BigReal::parse("149/100", 128).unwrap();
        assert!(q.certainly_gt(&BigReal::from_f64(1.48, 128)));
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let x = BigReal::from_f64(1.5, 128);
        let p3 = x.pow_i64(3).unwrap();
        let m3 = x.mul(&x).mul(&x);
        assert!(p3.consistent_with(&m3));
        let frac = x.pow(&BigReal::from_f64(0.5, 128)).unwrap();
        let s = x.sqrt().unwrap();
        assert!(frac.consistent_with(&s));
    }
}
