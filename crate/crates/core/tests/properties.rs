//! Generative invariant checks: every ball must contain the exact value it
//! claims to enclose, transforms must commute with evaluation, and the
//! construction identities must hold coefficient-wise at any precision.

mod support;

use deltalp::jensen::{delta_appell_poly, SampleWindow};
use deltalp::specfun::{bessel_clifford, fractional_partitions};
use deltalp::{isolate_real_roots, BigReal, Ctx, IntervalPolynomial};
use proptest::prelude::*;
use rug::ops::Pow;
use rug::{Float, Rational};
use support::QPoly;

/// Does the ball contain the exact rational?
fn contains_rat(b: &BigReal, r: &Rational) -> bool {
    b.lower_bound() <= *r && b.upper_bound() >= *r
}

/// Rational with numerator in ±10⁴ and denominator in 1..100.
fn small_rat() -> impl Strategy<Value = Rational> {
    (-10_000i64..=10_000, 1i64..100).prop_map(|(n, d)| Rational::from((n, d)))
}

/// Nonzero small rational.
fn small_rat_nonzero() -> impl Strategy<Value = Rational> {
    small_rat().prop_filter("nonzero", |r| r.cmp0() != std::cmp::Ordering::Equal)
}

/// Integer polynomial of degree 1..=6 with a nonzero leading coefficient,
/// as exact interval coefficients plus the rational ground truth.
fn int_poly() -> impl Strategy<Value = Vec<i64>> {
    (
        prop::collection::vec(-50i64..=50, 0..6),
        prop_oneof![1i64..=50, -50i64..=-1],
    )
        .prop_map(|(mut lower, lead)| {
            lower.push(lead);
            lower
        })
}

fn to_interval_poly(coeffs: &[i64], prec: u32) -> IntervalPolynomial {
    IntervalPolynomial::new(coeffs.iter().map(|&c| BigReal::from_i64(c, prec)).collect())
}

fn eval_rat(coeffs: &[i64], x: &Rational) -> Rational {
    let mut acc = Rational::new();
    for &c in coeffs.iter().rev() {
        acc = acc * x + Rational::from(c);
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Arithmetic over balls always contains the exact rational result,
    /// at low and high precision alike, and the two stay consistent.
    #[test]
    fn ball_arithmetic_contains_exact_value(
        a in small_rat(),
        b in small_rat(),
        c in small_rat_nonzero(),
        e in 0i64..=4,
    ) {
        // exact: ((a + b)·c − a/c)·b^e
        let exact = (Rational::from(&a + &b) * &c - Rational::from(&a / &c))
            * Rational::from(&b).pow(e as u32);
        let run = |prec: u32| -> BigReal {
            let av = BigReal::from_rational(&a, prec);
            let bv = BigReal::from_rational(&b, prec);
            let cv = BigReal::from_rational(&c, prec);
            av.add(&bv)
                .mul(&cv)
                .sub(&av.div(&cv).unwrap())
                .mul(&bv.pow_i64(e).unwrap())
        };
        let lo = run(64);
        let hi = run(256);
        prop_assert!(contains_rat(&lo, &exact), "64-bit ball lost the exact value");
        prop_assert!(contains_rat(&hi, &exact), "256-bit ball lost the exact value");
        prop_assert!(lo.consistent_with(&hi));
        prop_assert!(hi.radius() <= lo.radius(), "refinement widened the ball");
    }

    /// Transcendental paths refine consistently: the same expression at two
    /// precisions must agree, and exp/ln must invert within radii.
    #[test]
    fn transcendental_refinement_consistent(a in 1i64..=2_000, d in 1i64..100) {
        let x = Rational::from((a, d));
        let run = |prec: u32| {
            let v = BigReal::from_rational(&x, prec);
            v.exp().ln().unwrap()
        };
        let lo = run(96);
        let hi = run(320);
        prop_assert!(contains_rat(&lo, &x), "exp∘ln ball lost its argument");
        prop_assert!(contains_rat(&hi, &x));
        prop_assert!(lo.consistent_with(&hi));
    }

    /// Taylor shift and scaling commute with evaluation — the identities the
    /// root isolator's node transforms rely on.
    #[test]
    fn transforms_commute_with_evaluation(
        coeffs in int_poly(),
        shift in small_rat(),
        scale in small_rat_nonzero(),
        point in small_rat(),
    ) {
        let prec = 128;
        let p = to_interval_poly(&coeffs, prec);
        let a = BigReal::from_rational(&shift, prec);
        let c = BigReal::from_rational(&scale, prec);
        let u = BigReal::from_rational(&point, prec);

        let shifted = p.taylor_shift(&a).eval(&u);
        let exact_shift = eval_rat(&coeffs, &Rational::from(&point + &shift));
        prop_assert!(contains_rat(&shifted, &exact_shift), "taylor_shift broke evaluation");

        let scaled = p.scale(&c).eval(&u);
        let exact_scale = eval_rat(&coeffs, &Rational::from(&point * &scale));
        prop_assert!(contains_rat(&scaled, &exact_scale), "scale broke evaluation");
    }

    /// Coefficients of the derivative are exactly k·c_k.
    #[test]
    fn derivative_coefficients_exact(coeffs in int_poly()) {
        let p = to_interval_poly(&coeffs, 64);
        let dp = p.derivative();
        for (k, c) in coeffs.iter().enumerate().skip(1) {
            let exact = Rational::from(c * k as i64);
            prop_assert!(contains_rat(&dp.coeffs()[k - 1], &exact));
        }
    }

    /// The recursion δ·A_{d+1}(t; x) = e^{δx} A_d(t+δ; x) − A_d(t; x),
    /// coefficient-wise in the e^{kδx} basis, for arbitrary sample data.
    #[test]
    fn delta_appell_recursion_holds(
        values in prop::collection::vec(small_rat(), 2..=6),
        dnum in 1i64..=8,
        dden in 1i64..=8,
        t0r in small_rat(),
    ) {
        let prec = 128;
        let delta = BigReal::from_rational(&Rational::from((dnum, dden)), prec);
        let t0 = BigReal::from_rational(&t0r, prec);
        let vals: Vec<BigReal> = values
            .iter()
            .map(|v| BigReal::from_rational(v, prec))
            .collect();
        let d = vals.len() - 1; // degree of the larger window

        let big = delta_appell_poly(
            &SampleWindow::new(t0.clone(), delta.clone(), vals.clone()).unwrap(),
        )
        .unwrap();
        let low_at_t0 = delta_appell_poly(
            &SampleWindow::new(t0.clone(), delta.clone(), vals[..d].to_vec()).unwrap(),
        )
        .unwrap();
        let low_at_t1 = delta_appell_poly(
            &SampleWindow::new(t0.add(&delta), delta.clone(), vals[1..].to_vec()).unwrap(),
        )
        .unwrap();

        let zero = BigReal::zero(prec);
        for k in 0..=d {
            let lhs = big.coeffs()[k].mul(&delta);
            let shifted = if k == 0 { &zero } else { &low_at_t1.coeffs()[k - 1] };
            let plain = if k == d { &zero } else { &low_at_t0.coeffs()[k] };
            let rhs = shifted.sub(plain);
            prop_assert!(
                lhs.consistent_with(&rhs),
                "recursion failed at coefficient {k}: {} vs {}",
                lhs.to_decimal_string(),
                rhs.to_decimal_string()
            );
        }
    }

    /// Root isolation on a polynomial built from known dyadic roots finds
    /// exactly those roots, each in its own enclosure.
    #[test]
    fn isolation_recovers_constructed_roots(
        eighths in prop::collection::btree_set(-40i64..=40, 1..=5),
    ) {
        let prec = 128;
        let roots: Vec<BigReal> = eighths
            .iter()
            .map(|&i| BigReal::from_i64(i, prec).mul_2exp(-3))
            .collect();
        let mut p = IntervalPolynomial::constant(BigReal::one(prec));
        for r in &roots {
            p = p.mul(&IntervalPolynomial::new(vec![r.neg(), BigReal::one(prec)]));
        }
        let iso = isolate_real_roots(&p, &Ctx::new(prec)).unwrap();
        prop_assert!(iso.complete(), "isolation left unresolved clusters");
        prop_assert_eq!(iso.certified_count(), roots.len());
        let mut hits = 0usize;
        for r in &roots {
            let inside = |b: &BigReal| {
                b.lower_bound() <= *r.center() && *r.center() <= b.upper_bound()
            };
            let zero_hit = r.is_exact_zero() && iso.zero_root_multiplicity == 1;
            hits += usize::from(zero_hit || iso.roots.iter().any(|ir| inside(&ir.enclosure)));
        }
        prop_assert_eq!(hits, roots.len(), "some constructed root fell outside every enclosure");
    }

    /// Certified real-root counts agree with the exact Sturm oracle
    /// (generative companion to the fixed-size acceptance run).
    #[test]
    fn isolation_agrees_with_sturm(coeffs in int_poly()) {
        let q = QPoly::from_i64(&coeffs);
        prop_assume!(q.is_squarefree());
        let expected = support::sturm_real_root_count(&q);
        let p = to_interval_poly(&coeffs, 128);
        let iso = isolate_real_roots(&p, &Ctx::new(128)).unwrap();
        prop_assert!(iso.complete());
        prop_assert_eq!(iso.certified_count(), expected);
    }

    /// Fractional partition coefficients are strictly positive for α > 0.
    #[test]
    fn fractional_partitions_positive(num in 1i64..=300, den in 1i64..=100) {
        let alpha = Rational::from((num, den));
        let table = fractional_partitions(&alpha, 30);
        prop_assert_eq!(table.len(), 31);
        prop_assert_eq!(&table[0], &Rational::from(1));
        for (n, c) in table.iter().enumerate() {
            prop_assert!(
                c.cmp0() == std::cmp::Ordering::Greater,
                "p_alpha({n}) not positive for alpha = {alpha}"
            );
        }
    }

    /// Printed decimal form re-parses to a ball consistent with the source.
    #[test]
    fn printed_value_reparses_consistently(r in small_rat(), shift in -20i32..=20) {
        let v = BigReal::from_rational(&r, 96)
            .mul_2exp(shift)
            .widen(&Float::with_val(32, 1e-25));
        let printed = v.to_decimal_string();
        let value_part = printed.split(" +/- ").next().unwrap();
        let reparsed = BigReal::parse(value_part, 96).unwrap();
        prop_assert!(
            reparsed.consistent_with(&v),
            "printed form {printed} re-parsed outside the source ball"
        );
    }

    /// Series evaluation at two precisions stays consistent, and C_ν(t) > 0
    /// for t ≥ 0.
    #[test]
    fn bessel_clifford_refines_consistently(
        tn in -2_000i64..=2_000,
        td in 1i64..=100,
        nn in 0i64..=7,
    ) {
        let t_rat = Rational::from((tn, td));
        let nu = BigReal::from_i64(nn, 96).mul_2exp(-1); // ν = nn/2 ≥ 0
        let t_lo = BigReal::from_rational(&t_rat, 96);
        let lo = bessel_clifford(&nu, &t_lo, 96).unwrap();
        let hi = bessel_clifford(
            &nu.to_prec(256),
            &BigReal::from_rational(&t_rat, 256),
            256,
        )
        .unwrap();
        prop_assert!(lo.consistent_with(&hi));
        if t_rat.cmp0() != std::cmp::Ordering::Less {
            prop_assert!(lo.certainly_positive(), "C_ν(t) must be positive for t ≥ 0");
        }
    }
}
