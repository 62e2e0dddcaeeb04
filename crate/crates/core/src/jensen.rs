//! Jensen, Appell, δ-Appell, and Laguerre polynomial constructors, plus the
//! transform that identifies a Jensen polynomial with a δ = 1 δ-Appell
//! polynomial (`e^{dx} J_d^{a,n}(-e^{-x}) = A_d(n; x)`).
//!
//! All constructors consume windows of certified values and emit certified
//! coefficient balls; binomial weights are exact integers.

use rug::{Complete, Integer, Rational};

use crate::error::{Error, Result};
use crate::poly::{ExpPolynomial, IntervalPolynomial};
use crate::real::BigReal;
use crate::specfun::gamma_and_reciprocal;

fn binom(d: usize, k: usize) -> Integer {
    Integer::binomial_u(d as u32, k as u32).complete()
}

/// A consecutive slice `a_n ... a_{n+d}` of a real sequence.
#[derive(Clone, Debug)]
pub struct SequenceWindow {
    pub n: i64,
    pub values: Vec<BigReal>,
}

impl SequenceWindow {
    pub fn new(n: i64, values: Vec<BigReal>) -> Self {
        assert!(!values.is_empty(), "a window holds at least one value");
        SequenceWindow { n, values }
    }

    pub fn from_rationals(n: i64, values: &[Rational], prec: u32) -> Self {
        Self::new(
            n,
            values
                .iter()
                .map(|v| BigReal::from_rational(v, prec))
                .collect(),
        )
    }

    pub fn degree(&self) -> usize {
        self.values.len() - 1
    }
}

/// Samples `f(t0), f(t0+δ), ..., f(t0+dδ)` of a function on an arithmetic
/// grid with step `δ > 0`.
#[derive(Clone, Debug)]
pub struct SampleWindow {
    pub t0: BigReal,
    pub delta: BigReal,
    pub values: Vec<BigReal>,
}

impl SampleWindow {
    pub fn new(t0: BigReal, delta: BigReal, values: Vec<BigReal>) -> Result<Self> {
        if !delta.certainly_positive() {
            return Err(Error::Domain("window step must be certainly positive".into()));
        }
        if values.is_empty() {
            return Err(Error::Domain("a window holds at least one value".into()));
        }
        Ok(SampleWindow { t0, delta, values })
    }

    pub fn degree(&self) -> usize {
        self.values.len() - 1
    }
}

/// Jensen polynomial `J_d^{a,n}(x) = Σ_k C(d,k) a_{n+k} x^k`.
pub fn jensen_poly(w: &SequenceWindow) -> IntervalPolynomial {
    let d = w.degree();
    let prec = w.values.iter().map(|v| v.prec()).max().unwrap();
    let coeffs = w
        .values
        .iter()
        .enumerate()
        .map(|(k, a)| a.mul(&BigReal::from_integer(&binom(d, k), prec)))
        .collect();
    IntervalPolynomial::new(coeffs)
}

/// Appell polynomial `A_d^f(t; x) = Σ_k C(d,k) f^{(k)}(t) x^{d-k}` from the
/// derivative values `f(t), f'(t), ..., f^{(d)}(t)`.
pub fn appell_poly(derivs: &[BigReal]) -> IntervalPolynomial {
    assert!(!derivs.is_empty(), "need at least f(t)");
    let d = derivs.len() - 1;
    let prec = derivs.iter().map(|v| v.prec()).max().unwrap();
    let mut coeffs = vec![BigReal::zero(prec); d + 1];
    for (k, f_k) in derivs.iter().enumerate() {
        coeffs[d - k] = f_k.mul(&BigReal::from_integer(&binom(d, k), prec));
    }
    IntervalPolynomial::new(coeffs)
}

/// δ-Appell polynomial
/// `A_d^{f,δ}(t0; x) = (1/δ^d) Σ_k C(d,k) (-1)^{d-k} f(t0+kδ) e^{kδx}`.
///
/// The `1/δ^d` prefactor is kept in the stored coefficients: it leaves the
/// zero set untouched and makes the recursion
/// `δ·A_{d+1}(t; x) = e^{δx} A_d(t+δ; x) − A_d(t; x)` hold coefficient-wise
/// (at δ = 1 this is the familiar prefactor-free form).
pub fn delta_appell_poly(w: &SampleWindow) -> Result<ExpPolynomial> {
    let d = w.degree();
    let prec = w
        .values
        .iter()
        .map(|v| v.prec())
        .max()
        .unwrap()
        .max(w.delta.prec());
    let scale = w.delta.pow_i64(d as i64)?.recip()?;
    let coeffs = w
        .values
        .iter()
        .enumerate()
        .map(|(k, f)| {
            let mut c = f
                .mul(&BigReal::from_integer(&binom(d, k), prec))
                .mul(&scale);
            if (d - k) % 2 == 1 {
                c = c.neg();
            }
            c
        })
        .collect();
    Ok(ExpPolynomial::new(coeffs, w.delta.clone()))
}

/// Rewrites a Jensen polynomial as the δ = 1 exponential polynomial
/// `e^{dx} J_d^{a,n}(-e^{-x})`, whose coefficients are
/// `c_k = C(d,k) (-1)^{d-k} a_{n+k}`. Real zeros `x` of the result
/// correspond bijectively to negative real zeros `w = -e^{-x}` of `J`.
///
/// The window must be the one `J` was built from; this is re-checked
/// coefficient-by-coefficient.
pub fn jensen_to_delta_appell(
    j: &IntervalPolynomial,
    w: &SequenceWindow,
) -> Result<ExpPolynomial> {
    let d = w.degree();
    if j.coeffs().len() != d + 1 {
        return Err(Error::WindowMismatch);
    }
    let prec = w.values.iter().map(|v| v.prec()).max().unwrap();
    let mut coeffs = Vec::with_capacity(d + 1);
    for (k, a) in w.values.iter().enumerate() {
        let jc = a.mul(&BigReal::from_integer(&binom(d, k), prec));
        if !j.coeffs()[k].consistent_with(&jc) {
            return Err(Error::WindowMismatch);
        }
        coeffs.push(if (d - k) % 2 == 1 { jc.neg() } else { jc });
    }
    Ok(ExpPolynomial::new(coeffs, BigReal::one(prec)))
}

/// Laguerre polynomial reflected to the positive axis:
/// `L_d^ν(-x) = Σ_k C(d+ν, d-k) x^k / k!` with the generalized binomial
/// `C(d+ν, m) = Γ(d+ν+1) / (m! Γ(d+ν+1-m))`. Integer ν short-circuits to
/// exact binomials.
pub fn laguerre_poly(d: usize, nu: &BigReal, prec: u32) -> Result<IntervalPolynomial> {
    let mut coeffs = Vec::with_capacity(d + 1);
    let nu_int = if nu.is_exact() && nu.center().is_integer() {
        nu.center().to_integer().and_then(|i| i.to_i64())
    } else {
        None
    };
    for k in 0..=d {
        let k_fact = Integer::factorial(k as u32).complete();
        let c = match nu_int {
            Some(m) if m >= 0 => {
                // C(d+m, d-k) exactly.
                let b = Integer::binomial_u((d as i64 + m) as u32, (d - k) as u32).complete();
                BigReal::from_rational(&Rational::from((b, k_fact)), prec)
            }
            _ => {
                // Γ(d+ν+1) / ((d-k)! Γ(ν+k+1) k!)
                let work = prec + 16;
                let top = gamma_and_reciprocal(
                    &nu.add(&BigReal::from_i64(d as i64 + 1, work)),
                    work,
                )?
                .gamma
                .ok_or_else(|| Error::Domain("gamma pole in binomial".into()))?;
                let bot_recip = gamma_and_reciprocal(
                    &nu.add(&BigReal::from_i64(k as i64 + 1, work)),
                    work,
                )?
                .reciprocal;
                let dk_fact = Integer::factorial((d - k) as u32).complete();
                top.mul(&bot_recip)
                    .div(&BigReal::from_integer(&(dk_fact * k_fact), work))?
                    .to_prec(prec)
            }
        };
        coeffs.push(c);
    }
    Ok(IntervalPolynomial::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::Ctx;
    use crate::roots::{certify_hyperbolic, RootDomain, Verdict};
    use crate::specfun::partition_numbers;

    fn int_window(n: i64, vals: &[i64], prec: u32) -> SequenceWindow {
        SequenceWindow::new(
            n,
            vals.iter().map(|&v| BigReal::from_i64(v, prec)).collect(),
        )
    }

    #[test]
    fn jensen_small_cases() {
        // d = 0: the constant a_n.
        let j = jensen_poly(&int_window(7, &[5], 64));
        assert_eq!(j.coeffs().len(), 1);
        assert_eq!(j.coeffs()[0].to_f64(), 5.0);
        // Constant sequence 1: (1+x)^3.
        let j = jensen_poly(&int_window(0, &[1, 1, 1, 1], 64));
        let want = [1.0, 3.0, 3.0, 1.0];
        for (c, w) in j.coeffs().iter().zip(want) {
            assert!(c.is_exact());
            assert_eq!(c.to_f64(), w);
        }
    }

    #[test]
    fn jensen_partition_window() {
        let p = partition_numbers(27);
        let w = SequenceWindow::new(
            25,
            (25..=27).map(|n| BigReal::from_integer(&p[n], 64)).collect(),
        );
        let j = jensen_poly(&w);
        let want = [1958.0, 4872.0, 3010.0];
        for (c, v) in j.coeffs().iter().zip(want) {
            assert_eq!(c.to_f64(), v);
        }
    }

    #[test]
    fn appell_examples() {
        // f = 1 with vanishing derivatives: x^2.
        let one = BigReal::one(64);
        let zero = BigReal::zero(64);
        let a = appell_poly(&[one.clone(), zero.clone(), zero.clone()]);
        assert_eq!(a.coeffs()[2].to_f64(), 1.0);
        assert!(a.coeffs()[0].is_exact_zero() && a.coeffs()[1].is_exact_zero());
        // f = C_0 at t = 0: derivatives C_k(0) = 1/Γ(k+1) = 1, 1, 1/2
        // give x^2 + 2x + 1/2.
        let derivs = [
            BigReal::one(96),
            BigReal::one(96),
            BigReal::from_f64(0.5, 96),
        ];
        let a = appell_poly(&derivs);
        assert_eq!(a.coeffs()[0].to_f64(), 0.5);
        assert_eq!(a.coeffs()[1].to_f64(), 2.0);
        assert_eq!(a.coeffs()[2].to_f64(), 1.0);
        // Linearity.
        let f = [
            BigReal::from_i64(3, 64),
            BigReal::from_i64(-1, 64),
            BigReal::from_i64(4, 64),
        ];
        let g = [
            BigReal::from_i64(2, 64),
            BigReal::from_i64(7, 64),
            BigReal::from_i64(-5, 64),
        ];
        let fg: Vec<BigReal> = f.iter().zip(&g).map(|(a, b)| a.add(b)).collect();
        let lhs = appell_poly(&fg);
        let rhs = appell_poly(&f).add(&appell_poly(&g));
        for (l, r) in lhs.coeffs().iter().zip(rhs.coeffs()) {
            assert!(l.consistent_with(r) && l.is_exact() && r.is_exact());
            assert_eq!(l.to_f64(), r.to_f64());
        }
    }

    #[test]
    fn appell_reverses_jensen_on_same_data() {
        // A_d with derivative list equal to the window of J_d^{a,0} has
        // reversed coefficients.
        let vals = [
            BigReal::from_i64(2, 64),
            BigReal::from_i64(-3, 64),
            BigReal::from_i64(5, 64),
            BigReal::from_i64(1, 64),
        ];
        let j = jensen_poly(&SequenceWindow::new(0, vals.to_vec()));
        let a = appell_poly(&vals);
        let d = 3;
        for k in 0..=d {
            assert_eq!(a.coeffs()[d - k].to_f64(), j.coeffs()[k].to_f64());
        }
    }

    #[test]
    fn delta_appell_constant_window_is_difference_power() {
        // f ≡ 1, δ = 1, d = 2: ((e^x - 1))^2 with coefficients (1, -2, 1).
        let one = BigReal::one(64);
        let w = SampleWindow::new(
            BigReal::zero(64),
            one.clone(),
            vec![one.clone(), one.clone(), one.clone()],
        )
        .unwrap();
        let a = delta_appell_poly(&w).unwrap();
        let want = [1.0, -2.0, 1.0];
        for (c, v) in a.coeffs().iter().zip(want) {
            assert_eq!(c.to_f64(), v);
        }
        // Its y-polynomial (y-1)^2 has the double root y = 1, i.e. x = 0:
        // one point, not two distinct zeros.
        let y = a.as_y_polynomial();
        let iso = crate::roots::isolate_real_roots(&y, &Ctx::new(64)).unwrap();
        assert_eq!(iso.roots.len(), 1);
        assert_eq!(iso.roots[0].multiplicity, 2);
    }

    #[test]
    fn delta_appell_linear_case() {
        // d = 1, f(t0) = 2, f(t0+δ) = 6, δ = 1 → coefficients (-2, 6);
        // zero at e^x = 1/3.
        let w = SampleWindow::new(
            BigReal::zero(96),
            BigReal::one(96),
            vec![BigReal::from_i64(2, 96), BigReal::from_i64(6, 96)],
        )
        .unwrap();
        let a = delta_appell_poly(&w).unwrap();
        assert_eq!(a.coeffs()[0].to_f64(), -2.0);
        assert_eq!(a.coeffs()[1].to_f64(), 6.0);
        let y_root = BigReal::from_rational(&Rational::from((1, 3)), 96);
        assert!(a.as_y_polynomial().eval(&y_root).contains_zero());
        let x = a.x_from_y(&y_root).unwrap();
        let want = BigReal::from_i64(3, 96).ln().unwrap().neg();
        assert!(x.consistent_with(&want));
    }

    #[test]
    fn delta_appell_recursion() {
        // δ·A_{d+1}(t;x) = e^{δx} A_d(t+δ;x) − A_d(t;x), coefficient-wise.
        let prec = 96;
        let delta = BigReal::from_f64(0.5, prec);
        let t0 = BigReal::from_f64(-1.25, prec);
        let f = |t: &BigReal| t.mul(t).add(&BigReal::one(prec)).exp(); // e^{t^2+1}
        let d = 3usize;
        let sample = |start: &BigReal, len: usize| {
            let vals = (0..len)
                .map(|k| f(&start.add(&delta.mul_i64(k as i64))))
                .collect();
            SampleWindow::new(start.clone(), delta.clone(), vals).unwrap()
        };
        let a_next = delta_appell_poly(&sample(&t0, d + 2)).unwrap();
        let a_lo = delta_appell_poly(&sample(&t0, d + 1)).unwrap();
        let a_hi = delta_appell_poly(&sample(&t0.add(&delta), d + 1)).unwrap();
        // e^{δx}·A(t+δ) shifts coefficient index by one.
        for k in 0..=(d + 1) {
            let mut rhs = if k > 0 {
                a_hi.coeffs()[k - 1].clone()
            } else {
                BigReal::zero(prec)
            };
            if k <= d {
                rhs = rhs.sub(&a_lo.coeffs()[k]);
            }
            let lhs = a_next.coeffs()[k].mul(&delta);
            assert!(lhs.consistent_with(&rhs), "coefficient {k}");
        }
    }

    #[test]
    fn jensen_transform_and_round_trip() {
        let p = partition_numbers(27);
        let w = SequenceWindow::new(
            25,
            (25..=27).map(|n| BigReal::from_integer(&p[n], 128)).collect(),
        );
        let j = jensen_poly(&w);
        let a = jensen_to_delta_appell(&j, &w).unwrap();
        let want = [1958.0, -4872.0, 3010.0];
        for (c, v) in a.coeffs().iter().zip(want) {
            assert_eq!(c.to_f64(), v);
        }
        // The y-polynomial has two certified positive roots...
        let y = a.as_y_polynomial();
        let report =
            certify_hyperbolic(&y, RootDomain::AllPositive, None, &Ctx::new(128)).unwrap();
        assert_eq!(report.verdict, Verdict::Hyperbolic);
        // ...which map back to J's roots under w = -1/y.
        for root in &report.roots {
            let back = root.enclosure.recip().unwrap().neg();
            assert!(j.eval(&back).contains_zero());
        }
        // A foreign window is rejected.
        let bad = SequenceWindow::new(
            25,
            (24..=26).map(|n| BigReal::from_integer(&p[n], 128)).collect(),
        );
        assert!(matches!(
            jensen_to_delta_appell(&j, &bad),
            Err(Error::WindowMismatch)
        ));
    }

    #[test]
    fn jensen_transform_linear_sign_analysis() {
        // d = 1, window (a, b) → c = (-a, b); x-zero exists iff a/b > 0.
        let w = int_window(0, &[3, 2], 96);
        let j = jensen_poly(&w);
        let a = jensen_to_delta_appell(&j, &w).unwrap();
        assert_eq!(a.coeffs()[0].to_f64(), -3.0);
        assert_eq!(a.coeffs()[1].to_f64(), 2.0);
        // y-root 3/2 > 0 exists; J's root -3/2 is negative.
        let y = a.as_y_polynomial();
        let iso = crate::roots::isolate_real_roots(&y, &Ctx::new(96)).unwrap();
        assert_eq!(iso.roots.len(), 1);
        let tight = crate::roots::refine_root(
            &y,
            &iso.roots[0].enclosure,
            &rug::Float::with_val(32, 1e-20),
        );
        assert!(tight.certainly_positive());
        assert!(tight.consistent_with(&BigReal::from_f64(1.5, 96)));
        // Window (3, -2): y-root negative, so no real x-zero.
        let w = int_window(0, &[3, -2], 96);
        let a = jensen_to_delta_appell(&jensen_poly(&w), &w).unwrap();
        let y = a.as_y_polynomial();
        let iso = crate::roots::isolate_real_roots(&y, &Ctx::new(96)).unwrap();
        assert_eq!(iso.roots.len(), 1);
        let tight = crate::roots::refine_root(
            &y,
            &iso.roots[0].enclosure,
            &rug::Float::with_val(32, 1e-20),
        );
        assert!(tight.certainly_negative());
    }

    #[test]
    fn laguerre_small_cases() {
        let nu = BigReal::zero(96);
        let l0 = laguerre_poly(0, &nu, 96).unwrap();
        assert_eq!(l0.coeffs()[0].to_f64(), 1.0);
        let l2 = laguerre_poly(2, &nu, 96).unwrap();
        let want = [1.0, 2.0, 0.5];
        for (c, v) in l2.coeffs().iter().zip(want) {
            assert_eq!(c.to_f64(), v);
        }
    }

    #[test]
    fn laguerre_is_scaled_jensen_of_reciprocal_gamma() {
        // L_d^ν(-x)·d!/Γ(d+ν+1) = J_d^{1/Γ, ν+1}(x) coefficient-wise,
        // for integer and non-integer ν.
        for nu_val in [0.0, 0.5, 1.5] {
            let prec = 128;
            let nu = BigReal::from_f64(nu_val, prec);
            let d = 4usize;
            let lag = laguerre_poly(d, &nu, prec).unwrap();
            let g_top = gamma_and_reciprocal(
                &nu.add(&BigReal::from_i64(d as i64 + 1, prec)),
                prec,
            )
            .unwrap()
            .gamma
            .unwrap();
            let d_fact = BigReal::from_integer(&Integer::factorial(d as u32).complete(), prec);
            let scaled = lag.mul_scalar(&d_fact.div(&g_top).unwrap());
            let window = SequenceWindow::new(
                1,
                (0..=d)
                    .map(|k| {
                        gamma_and_reciprocal(
                            &nu.add(&BigReal::from_i64(k as i64 + 1, prec)),
                            prec,
                        )
                        .unwrap()
                        .reciprocal
                    })
                    .collect(),
            );
            let jensen = jensen_poly(&window);
            for (a, b) in scaled.coeffs().iter().zip(jensen.coeffs()) {
                assert!(a.consistent_with(b), "nu = {nu_val}");
                assert!(a.radius().to_f64() < 1e-25);
            }
        }
    }
}
