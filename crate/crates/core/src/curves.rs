//! Continuation of the root curves t = τ_{d,k}(x) of the δ-Appell
//! polynomial A_d^{f,δ}(t; x) attached to a δ-hyperbolic polynomial f with
//! roots t_1 > ... > t_n.
//!
//! For fixed x ≠ 0 the function A_d(·; x) is an ordinary degree-n
//! polynomial in t, so each grid column is solved with the certified root
//! isolator; branches are then stitched across columns by rank order, with
//! step-halving validation of the transport between neighbours. There are
//! n + d branches in total: the top d live on x < 0 only (they blow up to
//! +∞ at 0⁻), the bottom d live on x > 0 only (−∞ at 0⁺), and the middle
//! n − d cross both sides.

use rug::{Complete, Integer};

use crate::error::{Error, Result};
use crate::poly::IntervalPolynomial;
use crate::real::{BigReal, Ctx};
use crate::roots::{isolate_real_roots, refine_root};

/// Where a branch is defined.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchDomain {
    NegAxis,
    FullLine,
    PosAxis,
}

/// One root curve: branch index `k` (1-based, values strictly decreasing
/// in k at any fixed x) and its samples ordered by x.
#[derive(Clone, Debug)]
pub struct RootCurve {
    pub k: usize,
    pub domain: BranchDomain,
    pub samples: Vec<(BigReal, BigReal)>,
}

/// The full family of n + d branches for one degree d.
#[derive(Clone, Debug)]
pub struct CurveFamily {
    pub d: usize,
    pub delta: BigReal,
    pub source_roots: Vec<BigReal>,
    pub branches: Vec<RootCurve>,
}

impl CurveFamily {
    /// CSV rows `x,branch_k,t,d` with centers printed to `digits`
    /// significant decimal digits.
    pub fn csv(&self, digits: usize) -> String {
        let mut out = String::from("x,branch_k,t,d\n");
        for b in &self.branches {
            for (x, t) in &b.samples {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    x.center().to_string_radix(10, Some(digits)),
                    b.k,
                    t.center().to_string_radix(10, Some(digits)),
                    self.d
                ));
            }
        }
        out
    }
}

/// Geometrically spaced grid: magnitudes |x| from `near/δ` to `far/δ`
/// (`near`, `far` in units of 1/δ), mirrored over both axes, ascending.
/// The exclusion window around x = 0 reflects the branch blow-up there.
pub fn geometric_grid(
    delta: &BigReal,
    near: f64,
    far: f64,
    per_side: usize,
    prec: u32,
) -> Vec<BigReal> {
    assert!(per_side >= 2 && far > near && near > 0.0);
    let d = delta.to_f64();
    let ratio = (far / near).powf(1.0 / (per_side as f64 - 1.0));
    let mags: Vec<f64> = (0..per_side)
        .map(|i| near / d * ratio.powi(i as i32))
        .collect();
    let mut grid = Vec::with_capacity(2 * per_side);
    for m in mags.iter().rev() {
        grid.push(BigReal::from_f64(-m, prec));
    }
    for m in &mags {
        grid.push(BigReal::from_f64(*m, prec));
    }
    grid
}

/// Monic polynomial with the given roots.
fn poly_from_roots(roots: &[BigReal], prec: u32) -> IntervalPolynomial {
    let mut p = IntervalPolynomial::constant(BigReal::one(prec));
    for r in roots {
        let lin = IntervalPolynomial::new(vec![r.neg().to_prec(prec), BigReal::one(prec)]);
        p = p.mul(&lin);
    }
    p
}

/// A_d^{f,δ}(t; x) at fixed x, as a polynomial in t, built from the roots
/// of f: `(1/δ^d) Σ_k C(d,k)(−1)^{d−k} e^{kδx} f(t + kδ)`.
pub fn delta_appell_t_poly(
    roots_of_f: &[BigReal],
    delta: &BigReal,
    d: usize,
    x: &BigReal,
    prec: u32,
) -> Result<IntervalPolynomial> {
    let f = poly_from_roots(roots_of_f, prec);
    let y = delta.to_prec(prec).mul(&x.to_prec(prec)).exp();
    let scale = delta.to_prec(prec).pow_i64(d as i64)?.recip()?;
    let mut acc = IntervalPolynomial::zero();
    let mut y_pow = BigReal::one(prec);
    for k in 0..=d {
        let shifted = f.taylor_shift(&delta.to_prec(prec).mul_i64(k as i64));
        let b = Integer::binomial_u(d as u32, k as u32).complete();
        let mut w = y_pow.mul(&BigReal::from_integer(&b, prec)).mul(&scale);
        if (d - k) % 2 == 1 {
            w = w.neg();
        }
        acc = acc.add(&shifted.mul_scalar(&w));
        y_pow = y_pow.mul(&y);
    }
    Ok(acc)
}

/// Solve one grid column: the n certified t-roots of A_d(·; x), descending,
/// refined until pairwise strictly separated. Escalates precision.
fn column_roots(
    roots_of_f: &[BigReal],
    delta: &BigReal,
    d: usize,
    x: &BigReal,
    ctx: &Ctx,
) -> Result<Vec<BigReal>> {
    let n = roots_of_f.len();
    for prec in ctx.escalation() {
        let p = delta_appell_t_poly(roots_of_f, delta, d, x, prec)?;
        let iso = match isolate_real_roots(&p, &Ctx::with_max(prec, prec)) {
            Ok(iso) => iso,
            Err(Error::AmbiguousDegree) => continue,
            Err(e) => return Err(e),
        };
        if !iso.complete() || iso.certified_count() != n {
            continue;
        }
        let mut target = delta.lower_bound();
        target >>= 24;
        let mut ts: Vec<BigReal> = iso
            .roots
            .iter()
            .map(|r| refine_root(&p, &r.enclosure, &target))
            .collect();
        if iso.zero_root_multiplicity > 0 {
            ts.push(BigReal::zero(prec));
        }
        ts.sort_by(|a, b| {
            b.center()
                .partial_cmp(a.center())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        let separated = ts
            .windows(2)
            .all(|w| w[1].upper_bound() < w[0].lower_bound());
        if separated {
            return Ok(ts);
        }
    }
    Err(Error::PrecisionExhausted(ctx.max_bits))
}

/// Validate rank-wise continuity between two adjacent columns, inserting
/// midpoint columns (up to `depth` halvings) when a transport step exceeds
/// the budget. A persistent oversized step at the halving floor means the
/// rank assignment cannot be trusted.
#[allow(clippy::too_many_arguments)]
fn validate_segment(
    roots_of_f: &[BigReal],
    delta: &BigReal,
    d: usize,
    xa: &BigReal,
    ta: &[BigReal],
    xb: &BigReal,
    tb: &[BigReal],
    budget: f64,
    depth: usize,
    ctx: &Ctx,
) -> Result<()> {
    let worst = ta
        .iter()
        .zip(tb)
        .map(|(a, b)| (a.to_f64() - b.to_f64()).abs())
        .fold(0.0f64, f64::max);
    if worst <= budget {
        return Ok(());
    }
    if depth == 0 {
        return Err(Error::BranchJumpDetected {
            x: (xa.to_f64() + xb.to_f64()) / 2.0,
        });
    }
    let mid = xa.add(xb).mul_2exp(-1);
    let tm = column_roots(roots_of_f, delta, d, &mid, ctx)?;
    validate_segment(roots_of_f, delta, d, xa, ta, &mid, &tm, budget, depth - 1, ctx)?;
    validate_segment(roots_of_f, delta, d, &mid, &tm, xb, tb, budget, depth - 1, ctx)
}

/// Trace all n + d root curves of A_d^{f,δ}(t; x) over the given x grid
/// (which must avoid a neighbourhood of 0). `roots_of_f` must be strictly
/// descending with certified pairwise gaps ≥ δ.
pub fn trace_root_curves(
    roots_of_f: &[BigReal],
    delta: &BigReal,
    d: usize,
    grid: &[BigReal],
    ctx: &Ctx,
) -> Result<CurveFamily> {
    let n = roots_of_f.len();
    if n == 0 {
        return Err(Error::Domain("f needs at least one root".into()));
    }
    for w in roots_of_f.windows(2) {
        if !w[0].sub(&w[1]).certainly_ge(delta) {
            return Err(Error::Domain(
                "source roots must descend with certified gaps >= delta".into(),
            ));
        }
    }
    if grid.iter().any(|x| x.contains_zero()) {
        return Err(Error::Domain("grid must exclude x = 0".into()));
    }
    let neg: Vec<&BigReal> = grid.iter().filter(|x| x.certainly_negative()).collect();
    let pos: Vec<&BigReal> = grid.iter().filter(|x| x.certainly_positive()).collect();

    let gaps_max = roots_of_f
        .windows(2)
        .map(|w| (w[0].to_f64() - w[1].to_f64()).abs())
        .fold(delta.to_f64(), f64::max);
    let budget = 3.0 * gaps_max;

    let solve_side = |xs: &[&BigReal]| -> Result<Vec<Vec<BigReal>>> {
        let mut cols = Vec::with_capacity(xs.len());
        for x in xs {
            cols.push(column_roots(roots_of_f, delta, d, x, ctx)?);
        }
        for i in 1..xs.len() {
            validate_segment(
                roots_of_f, delta, d, xs[i - 1], &cols[i - 1], xs[i], &cols[i], budget, 12, ctx,
            )?;
        }
        Ok(cols)
    };
    let neg_cols = solve_side(&neg)?;
    let pos_cols = solve_side(&pos)?;

    // Branch k collects rank k-1 on the negative side and rank k-1-d on
    // the positive side.
    let mut branches = Vec::with_capacity(n + d);
    for k in 1..=(n + d) {
        let domain = if k <= d {
            BranchDomain::NegAxis
        } else if k <= n {
            BranchDomain::FullLine
        } else {
            BranchDomain::PosAxis
        };
        let mut samples = Vec::new();
        if k <= n {
            for (x, col) in neg.iter().zip(&neg_cols) {
                samples.push(((*x).clone(), col[k - 1].clone()));
            }
        }
        if k > d {
            for (x, col) in pos.iter().zip(&pos_cols) {
                samples.push(((*x).clone(), col[k - 1 - d].clone()));
            }
        }
        branches.push(RootCurve { k, domain, samples });
    }
    Ok(CurveFamily {
        d,
        delta: delta.clone(),
        source_roots: roots_of_f.to_vec(),
        branches,
    })
}

/// One interlacing comparison that did not certify.
#[derive(Clone, Debug)]
pub struct InterlacingViolation {
    pub x: f64,
    pub k: usize,
    /// true when the inequality is certainly violated; false when the balls
    /// were merely too wide to decide.
    pub certain: bool,
}

/// Outcome of checking Lemma-3.1-style interlacing between degree d and
/// d−1 families.
#[derive(Clone, Debug)]
pub struct InterlacingReport {
    pub checks: usize,
    pub violations: Vec<InterlacingViolation>,
}

impl InterlacingReport {
    pub fn clean(&self) -> bool {
        self.violations.is_empty()
    }
}

fn sample_map(fam: &CurveFamily) -> std::collections::BTreeMap<(u64, usize), BigReal> {
    let mut m = std::collections::BTreeMap::new();
    for b in &fam.branches {
        for (x, t) in &b.samples {
            m.insert((x.to_f64().to_bits(), b.k), t.clone());
        }
    }
    m
}

/// Check `τ_{d,k+1}(x) + δ ≤ τ_{d−1,k}(x) ≤ τ_{d,k}(x)` at every shared
/// grid point and every k where all three branches are defined.
pub fn check_interlacing(fam_d: &CurveFamily, fam_dm1: &CurveFamily) -> Result<InterlacingReport> {
    if fam_d.d != fam_dm1.d + 1 {
        return Err(Error::GridMismatch);
    }
    let xs_d: std::collections::BTreeSet<u64> = fam_d
        .branches
        .iter()
        .flat_map(|b| b.samples.iter().map(|(x, _)| x.to_f64().to_bits()))
        .collect();
    let xs_m: std::collections::BTreeSet<u64> = fam_dm1
        .branches
        .iter()
        .flat_map(|b| b.samples.iter().map(|(x, _)| x.to_f64().to_bits()))
        .collect();
    if xs_d != xs_m {
        return Err(Error::GridMismatch);
    }
    let hi_map = sample_map(fam_d);
    let lo_map = sample_map(fam_dm1);
    let delta = &fam_d.delta;
    let n = fam_d.source_roots.len();
    let d = fam_d.d;
    let mut checks = 0usize;
    let mut violations = Vec::new();
    for xb in xs_d {
        let x = f64::from_bits(xb);
        for k in 1..(n + d) {
            let (upper, lower, middle) = match (
                hi_map.get(&(xb, k)),
                hi_map.get(&(xb, k + 1)),
                lo_map.get(&(xb, k)),
            ) {
                (Some(u), Some(l), Some(m)) => (u, l, m),
                _ => continue,
            };
            checks += 1;
            let shifted = lower.add(delta);
            // shifted <= middle <= upper, checked as certified inequalities.
            if shifted.certainly_gt(middle) || middle.certainly_gt(upper) {
                violations.push(InterlacingViolation { x, k, certain: true });
            } else if !(shifted.certainly_le(middle) && middle.certainly_le(upper)) {
                violations.push(InterlacingViolation { x, k, certain: false });
            }
        }
    }
    Ok(InterlacingReport { checks, violations })
}

/// One finite-limit comparison at the far end of the grid.
#[derive(Clone, Debug)]
pub struct LimitCheck {
    pub k: usize,
    /// -1 for the x = −x_far end, +1 for x = +x_far.
    pub side: i32,
    pub observed: f64,
    pub expected: f64,
    pub ok: bool,
}

/// One divergence check at the grid end nearest 0.
#[derive(Clone, Debug)]
pub struct EscapeCheck {
    pub k: usize,
    pub side: i32,
    pub observed: f64,
    pub threshold: f64,
    pub ok: bool,
}

/// Limit verification report (report-only; no error conditions).
#[derive(Clone, Debug)]
pub struct LimitReport {
    pub finite: Vec<LimitCheck>,
    pub escapes: Vec<EscapeCheck>,
}

impl LimitReport {
    pub fn all_ok(&self) -> bool {
        self.finite.iter().all(|c| c.ok) && self.escapes.iter().all(|c| c.ok)
    }
}

/// Compare branch values at ±x_far with the Lemma 3.1(iii) limits
/// (t_k on the left, t_{k−d} − dδ on the right, within `tol`), and check
/// that the branches divergent near 0 have escaped beyond
/// t_1 + 10dδ (left side) / t_n − 10dδ (right side) at the grid points
/// closest to 0.
pub fn check_limits(fam: &CurveFamily, tol: &BigReal) -> LimitReport {
    let n = fam.source_roots.len();
    let d = fam.d;
    let delta = &fam.delta;
    let mut finite = Vec::new();
    let mut escapes = Vec::new();
    let escape_margin = delta.mul_i64(10 * d as i64);
    let hi_threshold = fam.source_roots[0].add(&escape_margin);
    let lo_threshold = fam.source_roots[n - 1].sub(&escape_margin);
    for b in &fam.branches {
        if b.samples.is_empty() {
            continue;
        }
        let has_neg = !matches!(b.domain, BranchDomain::PosAxis);
        let has_pos = !matches!(b.domain, BranchDomain::NegAxis);
        if has_neg {
            // First sample is the most negative x.
            let (_, t) = &b.samples[0];
            let expected = &fam.source_roots[b.k - 1];
            let diff = t.sub(expected).abs();
            finite.push(LimitCheck {
                k: b.k,
                side: -1,
                observed: t.to_f64(),
                expected: expected.to_f64(),
                ok: diff.upper_bound() <= tol.lower_bound(),
            });
        }
        if has_pos {
            let (_, t) = b.samples.last().unwrap();
            let expected = fam.source_roots[b.k - 1 - d].sub(&delta.mul_i64(d as i64));
            let diff = t.sub(&expected).abs();
            finite.push(LimitCheck {
                k: b.k,
                side: 1,
                observed: t.to_f64(),
                expected: expected.to_f64(),
                ok: diff.upper_bound() <= tol.lower_bound(),
            });
        }
        match b.domain {
            BranchDomain::NegAxis => {
                // Last sample is the negative x closest to 0.
                let (_, t) = b.samples.last().unwrap();
                escapes.push(EscapeCheck {
                    k: b.k,
                    side: -1,
                    observed: t.to_f64(),
                    threshold: hi_threshold.to_f64(),
                    ok: t.certainly_gt(&hi_threshold),
                });
            }
            BranchDomain::PosAxis => {
                // First sample is the positive x closest to 0.
                let (_, t) = &b.samples[0];
                escapes.push(EscapeCheck {
                    k: b.k,
                    side: 1,
                    observed: t.to_f64(),
                    threshold: lo_threshold.to_f64(),
                    ok: t.certainly_lt(&lo_threshold),
                });
            }
            BranchDomain::FullLine => {}
        }
    }
    LimitReport { finite, escapes }
}
