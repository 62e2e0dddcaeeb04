//! Polynomials with ball coefficients, plus exponential polynomials
//! `sum c_k e^{k delta x}`.
//!
//! Coefficients are stored low-to-high (`coeffs[k]` multiplies `x^k`).
//! Leading coefficients that are *exactly* zero are trimmed on construction;
//! a leading ball that merely straddles zero is kept, and any operation that
//! needs a certain degree reports the ambiguity instead of guessing.

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::real::BigReal;

/// Dense polynomial with rigorous interval coefficients.
#[derive(Clone, Debug)]
pub struct IntervalPolynomial {
    coeffs: Vec<BigReal>,
}

impl IntervalPolynomial {
    /// Build from low-to-high coefficients, trimming exactly-zero leading
    /// terms. The zero polynomial is represented by an empty vector.
    pub fn new(mut coeffs: Vec<BigReal>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_exact_zero()) {
            coeffs.pop();
        }
        IntervalPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntervalPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: BigReal) -> Self {
        IntervalPolynomial::new(vec![c])
    }

    pub fn from_i64(coeffs: &[i64], prec: u32) -> Self {
        IntervalPolynomial::new(coeffs.iter().map(|&c| BigReal::from_i64(c, prec)).collect())
    }

    pub fn from_integers(coeffs: &[Integer], prec: u32) -> Self {
        IntervalPolynomial::new(
            coeffs
                .iter()
                .map(|c| BigReal::from_integer(c, prec))
                .collect(),
        )
    }

    pub fn from_rationals(coeffs: &[Rational], prec: u32) -> Self {
        IntervalPolynomial::new(
            coeffs
                .iter()
                .map(|c| BigReal::from_rational(c, prec))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigReal] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Option<&BigReal> {
        self.coeffs.get(k)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of stored coefficients minus one; the true degree when the
    /// leading coefficient excludes zero.
    pub fn nominal_degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Certified degree. Fails with [`Error::AmbiguousDegree`] when the
    /// leading coefficient ball contains zero without being exactly zero
    /// (after exact-zero trimming), and returns `None` for the zero
    /// polynomial.
    pub fn degree(&self) -> Result<Option<usize>> {
        match self.coeffs.last() {
            None => Ok(None),
            Some(lead) => {
                if lead.contains_zero() {
                    Err(Error::AmbiguousDegree)
                } else {
                    Ok(Some(self.coeffs.len() - 1))
                }
            }
        }
    }

    pub fn leading_coeff(&self) -> Option<&BigReal> {
        self.coeffs.last()
    }

    /// The maximum precision among coefficient centers.
    pub fn prec(&self) -> u32 {
        self.coeffs.iter().map(|c| c.prec()).max().unwrap_or(64)
    }

    /// Horner evaluation with full radius propagation.
    pub fn eval(&self, x: &BigReal) -> BigReal {
        let prec = self.prec().max(x.prec());
        let mut acc = BigReal::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> IntervalPolynomial {
        if self.coeffs.len() <= 1 {
            return IntervalPolynomial::zero();
        }
        let d: Vec<BigReal> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.mul_i64(k as i64))
            .collect();
        IntervalPolynomial::new(d)
    }

    pub fn neg(&self) -> IntervalPolynomial {
        IntervalPolynomial::new(self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn add(&self, other: &IntervalPolynomial) -> IntervalPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let prec = self.prec().max(other.prec());
        let zero = BigReal::zero(prec);
        let coeffs = (0..n)
            .map(|k| {
                let a = self.coeffs.get(k).unwrap_or(&zero);
                let b = other.coeffs.get(k).unwrap_or(&zero);
                a.add(b)
            })
            .collect();
        IntervalPolynomial::new(coeffs)
    }

    pub fn sub(&self, other: &IntervalPolynomial) -> IntervalPolynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &IntervalPolynomial) -> IntervalPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntervalPolynomial::zero();
        }
        let prec = self.prec().max(other.prec());
        let mut out = vec![BigReal::zero(prec); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        IntervalPolynomial::new(out)
    }

    pub fn mul_scalar(&self, s: &BigReal) -> IntervalPolynomial {
        IntervalPolynomial::new(self.coeffs.iter().map(|c| c.mul(s)).collect())
    }

    /// `p(x + c)` by iterated synthetic division (O(d^2) ball operations).
    pub fn taylor_shift(&self, c: &BigReal) -> IntervalPolynomial {
        if self.coeffs.len() <= 1 || c.is_exact_zero() {
            return self.clone();
        }
        let mut out = self.coeffs.clone();
        let n = out.len();
        // After pass i, out[i..] hold the Taylor coefficients at c up to order i.
        for i in 0..n - 1 {
            for j in (i..n - 1).rev() {
                let t = out[j + 1].mul(c);
                out[j] = out[j].add(&t);
            }
        }
        IntervalPolynomial { coeffs: out }
    }

    /// `p(s * x)`.
    pub fn scale(&self, s: &BigReal) -> IntervalPolynomial {
        let mut pow = BigReal::one(self.prec().max(s.prec()));
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let out = c.mul(&pow);
                pow = pow.mul(s);
                out
            })
            .collect();
        IntervalPolynomial::new(coeffs)
    }

    /// Exact scaling `p(2^k x)`.
    pub fn scale_2exp(&self, k: i32) -> IntervalPolynomial {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.mul_2exp(k * i as i32))
            .collect();
        IntervalPolynomial::new(coeffs)
    }

    /// Coefficient reversal `x^n p(1/x)` on the stored length (exact-zero
    /// low-order coefficients become exact-zero leading ones and are
    /// trimmed).
    pub fn reverse(&self) -> IntervalPolynomial {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        IntervalPolynomial::new(coeffs)
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> IntervalPolynomial {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { c.neg() } else { c.clone() })
            .collect();
        IntervalPolynomial::new(coeffs)
    }

    /// Divide out the greatest power of `x` whose coefficients are exactly
    /// zero; returns (multiplicity of the root at 0, quotient).
    pub fn factor_out_zero_roots(&self) -> (usize, IntervalPolynomial) {
        let m = self
            .coeffs
            .iter()
            .take_while(|c| c.is_exact_zero())
            .count();
        if m == 0 || m == self.coeffs.len() {
            return (0, self.clone());
        }
        (
            m,
            IntervalPolynomial {
                coeffs: self.coeffs[m..].to_vec(),
            },
        )
    }

    /// Synthetic division by `(x - r)` for an exact point `r` known (by
    /// structural reasoning outside the coefficient balls) to be a root of
    /// the true polynomial. The quotient balls enclose the true quotient;
    /// the remainder ball, which must contain zero, is discarded.
    pub fn deflate_exact_root(&self, r: &BigReal) -> IntervalPolynomial {
        debug_assert!(r.is_exact());
        let n = self.coeffs.len();
        if n <= 1 {
            return IntervalPolynomial::zero();
        }
        let mut q = vec![BigReal::zero(self.prec()); n - 1];
        let mut carry = self.coeffs[n - 1].clone();
        for j in (0..n - 1).rev() {
            q[j] = carry.clone();
            carry = self.coeffs[j].add(&carry.mul(r));
        }
        debug_assert!(carry.contains_zero());
        IntervalPolynomial::new(q)
    }

    /// Re-round every coefficient to a new working precision.
    pub fn to_prec(&self, prec: u32) -> IntervalPolynomial {
        IntervalPolynomial {
            coeffs: self.coeffs.iter().map(|c| c.to_prec(prec)).collect(),
        }
    }

    /// Cauchy root bound rounded up to a power of two: all complex roots lie
    /// in `|x| <= 2^k`. Requires a leading coefficient excluding zero.
    pub fn root_bound_2exp(&self) -> Result<i32> {
        let lead = self.leading_coeff().ok_or(Error::AmbiguousDegree)?;
        if lead.contains_zero() {
            return Err(Error::AmbiguousDegree);
        }
        let lead_low = lead.abs().lower_bound();
        let mut bound = 1.0f64;
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let q = c.abs().upper_bound() / &lead_low;
            let q = 1.0 + q.to_f64();
            if q > bound {
                bound = q;
            }
        }
        if !bound.is_finite() {
            return Err(Error::PrecisionExhausted(self.prec()));
        }
        Ok(bound.log2().ceil() as i32 + 1)
    }
}

/// Exponential polynomial `P(x) = sum_k c_k e^{k delta x}` with ball
/// coefficients, the natural value space of delta-Appell polynomials at
/// fixed `t`.
#[derive(Clone, Debug)]
pub struct ExpPolynomial {
    coeffs: Vec<BigReal>,
    delta: BigReal,
}

impl ExpPolynomial {
    pub fn new(coeffs: Vec<BigReal>, delta: BigReal) -> Self {
        ExpPolynomial { coeffs, delta }
    }

    pub fn coeffs(&self) -> &[BigReal] {
        &self.coeffs
    }

    pub fn delta(&self) -> &BigReal {
        &self.delta
    }

    pub fn eval(&self, x: &BigReal) -> BigReal {
        let y = self.delta.mul(x).exp();
        self.as_y_polynomial().eval(&y)
    }

    /// The ordinary polynomial `Q` with `P(x) = Q(e^{delta x})`. The
    /// substitution `y = e^{delta x}` maps the real line bijectively onto
    /// `(0, inf)`, so real zeros of `P` correspond exactly to positive real
    /// zeros of `Q`.
    pub fn as_y_polynomial(&self) -> IntervalPolynomial {
        IntervalPolynomial::new(self.coeffs.clone())
    }

    /// Pull a positive `y`-root back through `x = ln(y) / delta`.
    pub fn x_from_y(&self, y: &BigReal) -> Result<BigReal> {
        y.ln()?.div(&self.delta)
    }
}
