//! Rigorous evaluation of the concrete functions the polynomial machinery
//! feeds on: the Gamma function and its reciprocal, the Bessel-Clifford
//! function `C_nu` with its negative-axis zeros, the first
//! Hardy-Ramanujan-Rademacher-type term `R_alpha(n)`, and exact integer /
//! fractional partition numbers.
//!
//! Everything returns balls whose radii account for series truncation and
//! rounding; partition numbers are exact integers/rationals.

use rug::{Complete, Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::real::{BigReal, Ctx, Sign};

/// Gamma and its reciprocal at a point. The reciprocal is entire, so it is
/// always present; `gamma` is `None` exactly at the poles `0, -1, -2, ...`.
#[derive(Clone, Debug)]
pub struct GammaValue {
    pub gamma: Option<BigReal>,
    pub reciprocal: BigReal,
}

const LN_2PI: f64 = 1.8378770664093453;

/// Gamma(z+1) for z >= 0 by Spouge's approximation, carrying the certified
/// relative error |eps| <= a^{-1/2} (2pi)^{-(a+1/2)} of the truncated
/// series. The bracketed sum cancels by up to ~a e-folds (its largest
/// coefficient is ~e^a while the bracket itself can shrink to sqrt(2pi)),
/// so the summation runs with ~a*log2(e) guard bits on top of `prec`.
fn spouge_gamma_plus1(z: &BigReal, prec: u32) -> Result<BigReal> {
    debug_assert!(z.lower_bound() >= 0);
    let a = (((prec + 12) as f64) * std::f64::consts::LN_2 / LN_2PI).ceil() as i64 + 2;
    let work = prec + 24 + (a as f64 * std::f64::consts::LOG2_E).ceil() as u32;
    let z = z.to_prec(work);
    let two_pi = BigReal::pi(work).mul_2exp(1);
    let mut sum = two_pi.sqrt()?; // c_0
    // c_k = (-1)^{k-1} (a-k)^{k-1/2} e^{a-k} / (k-1)!
    let e = BigReal::one(work).exp();
    let mut e_pow = BigReal::from_i64(a - 1, work).exp(); // e^{a-k}, k = 1
    let mut fact = Integer::from(1); // (k-1)!
    for k in 1..a {
        let base = BigReal::from_i64(a - k, work);
        let mut ck = base.pow_i64(k - 1)?.mul(&base.sqrt()?);
        ck = ck.mul(&e_pow).div(&BigReal::from_integer(&fact, work))?;
        if k % 2 == 0 {
            ck = ck.neg();
        }
        sum = sum.add(&ck.div(&z.add(&BigReal::from_i64(k, work)))?);
        e_pow = e_pow.div(&e)?;
        fact *= k as u32;
    }
    // (z+a)^{z+1/2} e^{-(z+a)} * sum, then absorb the truncation term:
    // the discarded eps is relative, so the true value lies in
    // approx / (1 -+ bound).
    let za = z.add(&BigReal::from_i64(a, work));
    let expo = z.add(&BigReal::from_rational(&Rational::from((1, 2)), work));
    let approx = za.pow(&expo)?.mul(&za.neg().exp()).mul(&sum);
    let bound = two_pi
        .pow_i64(a)?
        .mul(&two_pi.sqrt()?)
        .mul(&BigReal::from_i64(a, work).sqrt()?)
        .recip()?
        .upper_bound();
    let rel = BigReal::one(work).sub(&BigReal::zero(work).widen(&bound));
    approx.div(&rel)
}

/// Gamma at an exact integer >= 1 is a factorial.
fn gamma_exact_integer(n: i64, work: u32) -> BigReal {
    debug_assert!(n >= 1);
    let f = Integer::factorial(n as u32 - 1).complete();
    BigReal::from_integer(&f, work)
}

/// Gamma at an exact half-integer m + 1/2 via Gamma(1/2) = sqrt(pi) and the
/// functional equation; every factor is an exact dyadic ball.
fn gamma_half_integer(m: i64, work: u32) -> Result<BigReal> {
    let half = BigReal::from_rational(&Rational::from((1, 2)), work);
    let sqrt_pi = BigReal::pi(work).sqrt()?;
    if m >= 0 {
        let mut g = sqrt_pi;
        for j in 0..m {
            g = g.mul(&half.add(&BigReal::from_i64(j, work)));
        }
        Ok(g)
    } else {
        // Gamma(m+1/2) = Gamma(1/2) / ((m+1/2)(m+3/2)...(-1/2))
        let mut denom = BigReal::one(work);
        for j in 0..-m {
            denom = denom.mul(&half.add(&BigReal::from_i64(m + j, work)));
        }
        sqrt_pi.div(&denom)
    }
}

/// Gamma(x) and 1/Gamma(x) with certified radii. Exact integer and
/// half-integer arguments short-circuit to closed forms; positive reals use
/// Spouge's method; negative non-integers go through the reflection
/// formula. A ball that straddles a pole without being exactly on it cannot
/// be evaluated and reports a domain error.
pub fn gamma_and_reciprocal(x: &BigReal, prec: u32) -> Result<GammaValue> {
    let work = prec + 24;
    if x.is_exact() {
        let c = x.center();
        if c.is_integer() {
            let n = c
                .to_integer()
                .and_then(|i| i.to_i64())
                .ok_or_else(|| Error::Domain("gamma argument out of range".into()))?;
            if n >= 1 {
                let g = gamma_exact_integer(n, work);
                let r = g.recip()?;
                return Ok(GammaValue {
                    gamma: Some(g.to_prec(prec)),
                    reciprocal: r.to_prec(prec),
                });
            }
            return Ok(GammaValue {
                gamma: None,
                reciprocal: BigReal::zero(prec),
            });
        }
        let twice = Float::with_val(c.prec() + 1, c << 1u32);
        if twice.is_integer() {
            let h = twice
                .to_integer()
                .and_then(|i| i.to_i64())
                .ok_or_else(|| Error::Domain("gamma argument out of range".into()))?;
            let m = (h - 1) / 2;
            let g = gamma_half_integer(m, work)?;
            let r = g.recip()?;
            return Ok(GammaValue {
                gamma: Some(g.to_prec(prec)),
                reciprocal: r.to_prec(prec),
            });
        }
    }
    let g = if x.certainly_positive() {
        if x.lower_bound() > 1 {
            spouge_gamma_plus1(&x.sub(&BigReal::one(work)), work)?
        } else {
            spouge_gamma_plus1(&x.to_prec(work), work)?.div(x)?
        }
    } else if x.certainly_negative() {
        // Reflection: Gamma(x) = pi / (sin(pi x) Gamma(1-x)).
        let pi = BigReal::pi(work);
        let s = pi.mul(x).sin();
        if s.contains_zero() {
            return Err(Error::Domain(
                "gamma argument indistinguishable from a pole".into(),
            ));
        }
        let gr = spouge_gamma_plus1(&x.neg(), work)?; // Gamma(1-x), 1-x = (-x)+1
        pi.div(&s.mul(&gr))?
    } else {
        return Err(Error::Domain(
            "gamma argument straddles zero without being exact".into(),
        ));
    };
    let r = g.recip()?;
    Ok(GammaValue {
        gamma: Some(g.to_prec(prec)),
        reciprocal: r.to_prec(prec),
    })
}

/// Gamma alone; errors at the poles.
pub fn gamma(x: &BigReal, prec: u32) -> Result<BigReal> {
    gamma_and_reciprocal(x, prec)?
        .gamma
        .ok_or_else(|| Error::Domain("gamma pole".into()))
}

/// Independent cross-check path for 1/Gamma via the Weierstrass product
/// `1/Gamma(z) = z e^{gamma z} prod_{n=1}^{N} (1+z/n) e^{-z/n}` with a
/// rigorous tail bound `|sum_{n>N} (log(1+z/n) - z/n)| <= z^2/(2(1-|z|/N)N)`
/// applied as a multiplicative enclosure. Requires `N >= 4|z|`.
pub fn reciprocal_gamma_product(z: &BigReal, factors: u32, prec: u32) -> Result<BigReal> {
    let work = prec + 24;
    let n = factors;
    let z = z.to_prec(work);
    let z_abs = z.abs().upper_bound().to_f64();
    if (n as f64) < 4.0 * z_abs.abs() || n == 0 {
        return Err(Error::Domain(
            "product needs at least 4|z| factors for the tail bound".into(),
        ));
    }
    let mut prod = BigReal::one(work);
    let mut harmonic = BigReal::zero(work);
    for k in 1..=n {
        let kk = BigReal::from_i64(k as i64, work);
        prod = prod.mul(&BigReal::one(work).add(&z.div(&kk)?));
        harmonic = harmonic.add(&kk.recip()?);
    }
    let euler = BigReal::euler_gamma(work);
    let core = z
        .mul(&euler.mul(&z).exp())
        .mul(&z.neg().mul(&harmonic).exp())
        .mul(&prod);
    // Tail: multiply by e^T with |T| <= z^2 / (2 (1 - |z|/N) N).
    let one = BigReal::one(work);
    let nn = BigReal::from_i64(n as i64, work);
    let denom = one.sub(&z.abs().div(&nn)?).mul(&nn).mul_2exp(1);
    let t_bound = z.mul(&z).div(&denom)?.upper_bound();
    let t_ball = BigReal::zero(work).widen(&t_bound);
    Ok(core.mul(&t_ball.exp()).to_prec(prec))
}

/// Bessel-Clifford function `C_nu(t) = sum_k t^k / (Gamma(nu+k+1) k!)`,
/// summed with a certified geometric tail bound. For `t < 0` the series
/// alternates and loses roughly `2 sqrt(|t|) log2(e)` bits to cancellation,
/// which the internal working precision compensates.
pub fn bessel_clifford(nu: &BigReal, t: &BigReal, prec: u32) -> Result<BigReal> {
    if !(nu.lower_bound() > -1) {
        return Err(Error::Domain("bessel-clifford order must exceed -1".into()));
    }
    let t_abs = t.abs().upper_bound().to_f64();
    let cancel_bits = if t.upper_bound() < 0 {
        (2.0 * t_abs.sqrt() * std::f64::consts::LOG2_E).ceil() as u32 + 4
    } else {
        0
    };
    let work = prec + 32 + cancel_bits;
    let t = t.to_prec(work);
    let nu = nu.to_prec(work);
    let mut term = gamma_and_reciprocal(&nu.add(&BigReal::one(work)), work)?.reciprocal;
    let mut sum = BigReal::zero(work);
    let mut scale = Float::new(32);
    let cap = 10 * (t_abs.ceil() as i64 + work as i64);
    let t_hi = t.abs().upper_bound();
    let mut k: i64 = 0;
    loop {
        sum = sum.add(&term);
        let tu = term.abs().upper_bound();
        if tu > scale {
            scale = Float::with_val(32, tu);
        }
        let denom = nu
            .add(&BigReal::from_i64(k + 1, work))
            .mul(&BigReal::from_i64(k + 1, work));
        term = term.mul(&t).div(&denom)?;
        k += 1;
        // Ratio bound for all subsequent terms: |t| / ((k+1)(nu+k+1)).
        let next_den = nu
            .add(&BigReal::from_i64(k + 1, work))
            .mul(&BigReal::from_i64(k + 1, work));
        let q = if next_den.certainly_positive() {
            BigReal::from_float_exact(t_hi.clone())
                .div(&next_den)?
                .upper_bound()
        } else {
            Float::with_val(32, 1)
        };
        if q < 0.5 {
            let gap = BigReal::one(32).sub(&BigReal::from_float_exact(q));
            let tail = term.abs().div(&gap)?.upper_bound();
            let threshold = scale.clone() << -((prec as i32) + 16);
            if tail <= threshold {
                sum = sum.widen(&tail);
                break;
            }
        }
        if k > cap {
            return Err(Error::PrecisionExhausted(work));
        }
    }
    Ok(sum.to_prec(prec))
}

/// Table of the absolute values of the zeros of `C_nu` (all of which lie on
/// the negative real axis for `nu > -1`), ascending.
#[derive(Clone, Debug)]
pub struct ZeroTable {
    pub nu: BigReal,
    pub zeros: Vec<BigReal>,
}

impl ZeroTable {
    /// Enclosures of consecutive differences `r_{k+1} - r_k`.
    pub fn separations(&self) -> Vec<BigReal> {
        self.zeros.windows(2).map(|w| w[1].sub(&w[0])).collect()
    }
}

/// Certified sign of `r -> C_nu(-r)` at a point, escalating precision.
fn sign_at(nu: &BigReal, r: &Float, ctx: &Ctx) -> Option<Sign> {
    for prec in ctx.escalation() {
        let t = BigReal::from_float_exact(r.clone()).neg();
        if let Ok(v) = bessel_clifford(nu, &t, prec) {
            if let Some(s) = v.sign() {
                return Some(s);
            }
        }
    }
    None
}

/// First `count` zeros of `C_nu`, each bracketed between certified sign
/// changes of `C_nu(-r)` and narrowed by bisection to `target_radius` (or
/// until precision runs out). Initial brackets are seeded from the
/// classical large-index spacing of Bessel zeros, but every bracket is
/// re-certified by actual sign evaluations — the asymptotics carry no
/// trusted weight.
pub fn bessel_clifford_zeros(
    nu: &BigReal,
    count: usize,
    target_radius: &Float,
    ctx: &Ctx,
) -> Result<ZeroTable> {
    if !(nu.lower_bound() > -1) {
        return Err(Error::Domain("bessel-clifford order must exceed -1".into()));
    }
    if count == 0 {
        return Ok(ZeroTable {
            nu: nu.clone(),
            zeros: Vec::new(),
        });
    }
    let nu_f = nu.to_f64();
    let mu = 4.0 * nu_f * nu_f;
    let seed_j = |k: usize| {
        let b = (k as f64 + nu_f / 2.0 - 0.25) * std::f64::consts::PI;
        b - (mu - 1.0) / (8.0 * b)
    };
    let seed_r = |k: usize| (seed_j(k) / 2.0).powi(2);
    // boundary[k] separates the k-th zero from the (k+1)-th; boundary[0]=0.
    let mut boundaries: Vec<Float> = Vec::with_capacity(count + 1);
    boundaries.push(Float::new(53));
    for k in 1..=count {
        boundaries.push(Float::with_val(53, (seed_r(k) + seed_r(k + 1)) / 2.0));
    }
    let expected = |k: usize| {
        if k % 2 == 0 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    };
    for k in 0..=count {
        let want = expected(k);
        if sign_at(nu, &boundaries[k], ctx) == Some(want) {
            continue;
        }
        // The asymptotic seed straddled a zero: nudge within the local gap.
        let gap = if k == 0 {
            seed_r(1)
        } else {
            seed_r(k + 1) - seed_r(k)
        };
        let mut fixed = false;
        for frac in [-0.125, 0.125, -0.25, 0.25, -0.375, 0.375] {
            let cand = Float::with_val(53, &boundaries[k] + gap * frac);
            if cand < 0 {
                continue;
            }
            if sign_at(nu, &cand, ctx) == Some(want) {
                boundaries[k] = cand;
                fixed = true;
                break;
            }
        }
        if !fixed {
            return Err(Error::BracketFailure { index: k });
        }
    }
    let prec = ctx.max_bits;
    let mut zeros = Vec::with_capacity(count);
    for k in 1..=count {
        let mut lo = Float::with_val(prec, &boundaries[k - 1]);
        let mut hi = Float::with_val(prec, &boundaries[k]);
        let s_lo = expected(k - 1);
        for _ in 0..(8 * ctx.max_bits) {
            let width = Float::with_val(32, &hi - &lo);
            if width <= target_radius.clone() << 1u32 {
                break;
            }
            let mid = Float::with_val(prec, &lo + &hi) >> 1u32;
            match sign_at(nu, &mid, ctx) {
                Some(Sign::Zero) => {
                    lo = mid.clone();
                    hi = mid;
                    break;
                }
                Some(s) if s == s_lo => lo = mid,
                Some(_) => hi = mid,
                None => break,
            }
        }
        zeros.push(BigReal::from_endpoints(&lo, &hi));
    }
    Ok(ZeroTable {
        nu: nu.clone(),
        zeros,
    })
}

/// First term of the Rademacher-type expansion for the fractional
/// partition function:
/// `R_alpha(n) = 2 pi (pi alpha/12)^{alpha/2+1} C_{alpha/2+1}(pi^2 alpha/6 (n - alpha/24))`.
pub fn r_alpha(alpha: &BigReal, n: u32, prec: u32) -> Result<BigReal> {
    if !alpha.certainly_positive() {
        return Err(Error::Domain("alpha must be positive".into()));
    }
    let work = prec + 32;
    let a = alpha.to_prec(work);
    let pi = BigReal::pi(work);
    let shift = BigReal::from_u32(n, work).sub(&a.div(&BigReal::from_i64(24, work))?);
    if shift.lower_bound() < 0 {
        return Err(Error::Domain("n must be at least alpha/24".into()));
    }
    let nu = a.mul_2exp(-1).add(&BigReal::one(work)); // alpha/2 + 1
    let base = pi.mul(&a).div(&BigReal::from_i64(12, work))?;
    let t = pi.mul(&pi).mul(&a).div(&BigReal::from_i64(6, work))?.mul(&shift);
    let c = bessel_clifford(&nu, &t, work)?;
    Ok(pi.mul_2exp(1).mul(&base.pow(&nu)?).mul(&c).to_prec(prec))
}

/// Exact partition numbers `p(0..=n_max)` by the pentagonal-number
/// recurrence.
pub fn partition_numbers(n_max: usize) -> Vec<Integer> {
    let mut p = Vec::with_capacity(n_max + 1);
    p.push(Integer::from(1));
    for n in 1..=n_max {
        let mut acc = Integer::new();
        let mut k = 1i64;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > n {
                break;
            }
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if k % 2 == 1 {
                acc += &p[n - g1];
                if g2 <= n {
                    acc += &p[n - g2];
                }
            } else {
                acc -= &p[n - g1];
                if g2 <= n {
                    acc -= &p[n - g2];
                }
            }
            k += 1;
        }
        p.push(acc);
    }
    p
}

/// Divisor sums `sigma(1..=n_max)` by sieving.
fn divisor_sums(n_max: usize) -> Vec<u64> {
    let mut sigma = vec![0u64; n_max + 1];
    for d in 1..=n_max {
        for m in (d..=n_max).step_by(d) {
            sigma[m] += d as u64;
        }
    }
    sigma
}

/// Exact fractional partition numbers `p_alpha(0..=n_max)`: coefficients of
/// `prod_k (1-x^k)^{-alpha}`, via the divisor-sum recurrence
/// `n p_alpha(n) = alpha sum_{k=1}^{n} sigma(k) p_alpha(n-k)` obtained by
/// logarithmic differentiation of the product.
pub fn fractional_partitions(alpha: &Rational, n_max: usize) -> Vec<Rational> {
    let sigma = divisor_sums(n_max);
    let mut p = Vec::with_capacity(n_max + 1);
    p.push(Rational::from(1));
    for n in 1..=n_max {
        let mut acc = Rational::new();
        for k in 1..=n {
            acc += p[n - k].clone() * Rational::from(sigma[k]);
        }
        let val = acc * alpha.clone() / Rational::from(n as u64);
        p.push(val);
    }
    p
}

/// Which partition family a table holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionKind {
    Ordinary,
    Fractional(Rational),
}

/// Exact partition coefficients, integer or fractional.
#[derive(Clone, Debug)]
pub struct PartitionTable {
    pub kind: PartitionKind,
    pub values: Vec<Rational>,
}

impl PartitionTable {
    pub fn ordinary(n_max: usize) -> Self {
        PartitionTable {
            kind: PartitionKind::Ordinary,
            values: partition_numbers(n_max)
                .into_iter()
                .map(Rational::from)
                .collect(),
        }
    }

    pub fn fractional(alpha: &Rational, n_max: usize) -> Self {
        if *alpha == 1u32 {
            let mut t = Self::ordinary(n_max);
            t.kind = PartitionKind::Fractional(Rational::from(1));
            return t;
        }
        PartitionTable {
            kind: PartitionKind::Fractional(alpha.clone()),
            values: fractional_partitions(alpha, n_max),
        }
    }

    pub fn to_balls(&self, prec: u32) -> Vec<BigReal> {
        self.values
            .iter()
            .map(|v| BigReal::from_rational(v, prec))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_table_values() {
        let p = partition_numbers(200);
        assert_eq!(p[0], 1);
        assert_eq!(p[5], 7);
        assert_eq!(p[10], 42);
        assert_eq!(p[24], 1575);
        assert_eq!(p[25], 1958);
        assert_eq!(p[26], 2436);
        assert_eq!(p[27], 3010);
        assert_eq!(p[50], 204226);
        assert_eq!(p[100], 190569292u64);
        assert_eq!(p[200].to_string(), "3972999029388");
    }

    #[test]
    fn fractional_alpha_one_is_ordinary() {
        let frac = fractional_partitions(&Rational::from(1), 40);
        let ord = partition_numbers(40);
        for (f, o) in frac.iter().zip(ord.iter()) {
            assert_eq!(f, o);
        }
    }

    #[test]
    fn fractional_alpha_two_is_self_convolution() {
        // prod (1-x^k)^{-2} = (sum p(j) x^j)^2
        let frac = fractional_partitions(&Rational::from(2), 20);
        let ord = partition_numbers(20);
        for n in 0..=20usize {
            let conv: Integer = (0..=n).map(|j| Integer::from(&ord[j] * &ord[n - j])).sum();
            assert_eq!(frac[n], conv, "n = {n}");
        }
        assert_eq!(frac[2], 5);
    }

    #[test]
    fn fractional_positivity() {
        let q = Rational::from((1, 4));
        for v in fractional_partitions(&q, 30).iter() {
            assert!(*v > 0);
        }
    }

    #[test]
    fn gamma_integers_and_halves() {
        let g5 = gamma(&BigReal::from_i64(5, 128), 128).unwrap();
        assert!(g5.is_exact());
        assert_eq!(g5.to_f64(), 24.0);
        let g1 = gamma(&BigReal::one(128), 128).unwrap();
        assert_eq!(g1.to_f64(), 1.0);
        // Gamma(1/2)^2 = pi
        let gh = gamma(&BigReal::from_f64(0.5, 128), 128).unwrap();
        assert!(gh.mul(&gh).consistent_with(&BigReal::pi(128)));
        // Gamma(7/2) = 15 sqrt(pi) / 8
        let g72 = gamma(&BigReal::from_f64(3.5, 128), 128).unwrap();
        let want = BigReal::pi(192)
            .sqrt()
            .unwrap()
            .mul(&BigReal::from_i64(15, 192))
            .mul_2exp(-3);
        assert!(g72.consistent_with(&want));
        assert!(g72.radius().to_f64() < 1e-30);
        // Gamma(-3/2) = 4 sqrt(pi) / 3
        let gn = gamma(&BigReal::from_f64(-1.5, 128), 128).unwrap();
        let want = BigReal::pi(192)
            .sqrt()
            .unwrap()
            .mul_2exp(2)
            .div(&BigReal::from_i64(3, 192))
            .unwrap();
        assert!(gn.consistent_with(&want));
    }

    #[test]
    fn gamma_poles() {
        for z in [0i64, -1, -2, -7] {
            let gv = gamma_and_reciprocal(&BigReal::from_i64(z, 128), 128).unwrap();
            assert!(gv.gamma.is_none());
            assert!(gv.reciprocal.is_exact_zero());
        }
    }

    #[test]
    fn spouge_path_agrees_with_exact_values() {
        // Force the generic path with integer/half-integer values made inexact.
        let four = BigReal::from_f64(4.0, 128).widen(&Float::with_val(32, 1e-35));
        let g = gamma(&four, 128).unwrap();
        assert!(g.lower_bound() < 6.0 + 1e-20 && g.upper_bound() > 6.0 - 1e-20);
        let g = spouge_gamma_plus1(&BigReal::from_i64(4, 160), 160).unwrap();
        assert!(g.lower_bound() <= 24 && g.upper_bound() >= 24);
        assert!(g.radius().to_f64() < 1e-40);
        // Spouge against the half-integer closed form at 3.5.
        let a = spouge_gamma_plus1(&BigReal::from_f64(2.5, 160), 160).unwrap();
        let b = gamma(&BigReal::from_f64(3.5, 128), 128).unwrap();
        assert!(a.consistent_with(&b));
    }

    #[test]
    fn reciprocal_product_cross_check() {
        let z = BigReal::from_f64(1.5, 96);
        let via_product = reciprocal_gamma_product(&z, 10_000, 96).unwrap();
        let direct = gamma_and_reciprocal(&z, 96).unwrap().reciprocal;
        assert!(via_product.consistent_with(&direct));
        // Tail bound z^2/(2(1-|z|/N)N) at N = 10^4 caps the radius near 1e-4.
        assert!(via_product.radius().to_f64() < 1e-3);
        let z = BigReal::from_f64(-0.75, 96);
        let via_product = reciprocal_gamma_product(&z, 10_000, 96).unwrap();
        let direct = gamma_and_reciprocal(&z, 96).unwrap().reciprocal;
        assert!(via_product.consistent_with(&direct));
    }

    #[test]
    fn bessel_clifford_at_zero_and_one() {
        // C_nu(0) = 1/Gamma(nu+1); C_1(0) = 1.
        let c = bessel_clifford(&BigReal::one(128), &BigReal::zero(128), 128).unwrap();
        assert!(c.lower_bound() <= 1 && c.upper_bound() >= 1);
        assert!(c.radius().to_f64() < 1e-35);
        // C_{3/2}(1) against a direct plain-float summation at higher precision.
        let nu = BigReal::from_f64(1.5, 128);
        let c = bessel_clifford(&nu, &BigReal::one(128), 128).unwrap();
        let mut direct = Float::new(256);
        let mut term = Float::with_val(256, 1);
        // term_k = 1/(Gamma(nu+k+1) k!) built by downward recurrence from
        // Gamma(5/2) = 3 sqrt(pi)/4.
        let g52 = Float::with_val(256, rug::float::Constant::Pi).sqrt() * 3u32 / 4u32;
        term /= g52;
        for k in 0..200u32 {
            direct += &term;
            term = term / (Float::with_val(256, 1.5) + k + 1) / (k + 1);
        }
        let oracle = BigReal::from_float_exact(direct).widen(&Float::with_val(32, 1e-60));
        assert!(c.consistent_with(&oracle));
    }

    #[test]
    fn bessel_clifford_first_zero_of_half() {
        // C_{1/2}(-pi^2/4) = 0 since J_{1/2}(z) vanishes at z = pi.
        let nu = BigReal::from_f64(0.5, 196);
        let pi = BigReal::pi(196);
        let t = pi.mul(&pi).mul_2exp(-2).neg();
        let v = bessel_clifford(&nu, &t, 196).unwrap();
        assert!(v.contains_zero());
        assert!(v.radius().to_f64() < 1e-40);
    }

    #[test]
    fn zeros_of_half_match_closed_form() {
        let nu = BigReal::from_f64(0.5, 128);
        let target = Float::with_val(32, 1e-25);
        let table =
            bessel_clifford_zeros(&nu, 5, &target, &Ctx::with_max(128, 256)).unwrap();
        let pi2 = BigReal::pi(256).pow_i64(2).unwrap();
        for (k, r) in table.zeros.iter().enumerate() {
            let want = pi2
                .mul(&BigReal::from_i64(((k + 1) * (k + 1)) as i64, 256))
                .mul_2exp(-2);
            assert!(r.consistent_with(&want), "zero {}", k + 1);
            assert!(r.radius().to_f64() < 1e-24);
        }
        let seps = table.separations();
        let bound = pi2.mul_2exp(-2);
        for s in seps {
            assert!(s.certainly_gt(&bound));
        }
    }

    #[test]
    fn r_alpha_trivial_case() {
        // alpha = 24, n = 1: the C-argument is 0, so
        // R_24(1) = 2 pi (2 pi)^13 / Gamma(14).
        let a = BigReal::from_i64(24, 128);
        let r = r_alpha(&a, 1, 128).unwrap();
        let two_pi = BigReal::pi(192).mul_2exp(1);
        let want = two_pi
            .mul(&two_pi.pow_i64(13).unwrap())
            .div(&gamma(&BigReal::from_i64(14, 192), 192).unwrap())
            .unwrap();
        assert!(r.consistent_with(&want));
    }

    #[test]
    fn r_alpha_tracks_partitions() {
        let p = partition_numbers(50);
        let one = BigReal::one(128);
        let ratio = |n: usize| {
            let r = r_alpha(&one, n as u32, 128).unwrap();
            let exact = BigReal::from_integer(&p[n], 128);
            (r.div(&exact).unwrap().to_f64() - 1.0).abs()
        };
        let e10 = ratio(10);
        let e50 = ratio(50);
        assert!(e10 < 0.15, "relative error at n=10 was {e10}");
        assert!(e50 < e10, "error should shrink: {e50} vs {e10}");
    }
}
