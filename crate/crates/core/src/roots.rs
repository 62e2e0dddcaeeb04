//! Certified real-root isolation and hyperbolicity verdicts.
//!
//! The isolator is a Descartes bisection scheme (Vincent-Collins-Akritas)
//! run entirely in ball arithmetic. For an interval, the Möbius transform
//! `x^d p(1/x)` followed by a shift by 1 turns "roots in the open interval"
//! into "positive roots", bounded by coefficient sign variations. Because
//! coefficients are balls their signs may be undecided, so the variation
//! count is itself an interval `[vars_min, vars_max]`:
//!
//! * `vars_max == 0` certifies the interval holds no real root;
//! * `vars_min == vars_max == 1` certifies exactly one simple real root;
//! * anything else is subdivided at a dyadic point where the polynomial's
//!   sign can be certified (the canonical midpoint is jiggled when the value
//!   ball straddles zero), until the interval is smaller than a width floor,
//!   at which point it is recorded as an unresolved *cluster* together with
//!   its variation range.
//!
//! Split points where the polynomial is *exactly* zero are consumed as point
//! roots with a certified multiplicity (successive derivatives). Exact zero
//! roots of the input are factored out up front.
//!
//! Every verdict issued by [`certify_hyperbolic`] holds for *all* real
//! polynomials within the coefficient balls simultaneously; when the balls
//! are too wide to decide, the verdict is `Undetermined` rather than a
//! guess.

use rug::float::Round;
use rug::Float;

use crate::error::{Error, Result};
use crate::poly::IntervalPolynomial;
use crate::real::{BigReal, Ctx, Sign};

/// An interval certified to contain exactly one real root of the certified
/// multiplicity (and no other roots).
#[derive(Clone, Debug)]
pub struct IsolatedRoot {
    pub enclosure: BigReal,
    pub multiplicity: usize,
}

/// A region the isolator could not resolve, annotated with the possible
/// range of Descartes sign variations. The true number of real roots inside
/// (with multiplicity) is at most `vars_max` and matches some admissible
/// variation count in parity.
#[derive(Clone, Debug)]
pub struct Cluster {
    pub enclosure: BigReal,
    pub vars_min: u32,
    pub vars_max: u32,
}

/// Outcome of root isolation: disjoint certified roots and unresolved
/// clusters, in ascending order, plus the multiplicity of the exact root at
/// the origin that was factored out first.
#[derive(Clone, Debug)]
pub struct RootIsolation {
    pub roots: Vec<IsolatedRoot>,
    pub clusters: Vec<Cluster>,
    pub zero_root_multiplicity: usize,
    pub precision_used: u32,
}

impl RootIsolation {
    /// No unresolved regions: the `roots` list (plus the origin root) is
    /// exactly the set of real roots.
    pub fn complete(&self) -> bool {
        self.clusters.is_empty()
    }

    /// Real roots certified so far, with multiplicity.
    pub fn certified_count(&self) -> usize {
        self.zero_root_multiplicity + self.roots.iter().map(|r| r.multiplicity).sum::<usize>()
    }

    /// Upper bound for the total number of real roots (with multiplicity).
    pub fn max_possible_count(&self) -> usize {
        self.certified_count() + self.clusters.iter().map(|c| c.vars_max as usize).sum::<usize>()
    }
}

/// Three-valued certification verdict. `Hyperbolic` and `NotHyperbolic` are
/// rigorous statements about every polynomial within the coefficient balls;
/// `Undetermined` means the precision at hand cannot separate the two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Verdict {
    Hyperbolic,
    NotHyperbolic,
    Undetermined,
}

/// Where the roots are required to live, on top of being real.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootDomain {
    AllReal,
    /// All roots strictly positive (e.g. images of real points under
    /// `y = e^{delta x}`).
    AllPositive,
    /// All roots strictly negative.
    AllNegative,
}

/// Result of a hyperbolicity certification.
#[derive(Clone, Debug)]
pub struct HyperbolicityReport {
    pub verdict: Verdict,
    /// Certified degree of the polynomial.
    pub degree: usize,
    /// Real roots certified (with multiplicity).
    pub certified_real_roots: usize,
    /// Enclosures of the distinct certified roots, ascending (the origin
    /// root included when present).
    pub roots: Vec<IsolatedRoot>,
    /// Enclosure of the smallest gap between consecutive certified roots.
    pub min_gap: Option<BigReal>,
    pub precision_used: u32,
}

/// Dyadic split fractions (numerator, log2 denominator), all within
/// `[1/4, 3/4]`, tried in order until the polynomial's sign at the split can
/// be certified.
const SPLIT_CANDIDATES: &[(i64, i32)] = &[
    (1, 1),
    (15, 5),
    (17, 5),
    (7, 4),
    (9, 4),
    (13, 5),
    (19, 5),
    (3, 3),
    (5, 3),
    (11, 5),
    (21, 5),
    (5, 4),
    (11, 4),
    (1, 2),
    (3, 2),
];

#[derive(Clone, Copy, PartialEq, Eq)]
enum CoefSign {
    Pos,
    Neg,
    ZeroExact,
    Unknown,
}

fn coeff_sign(c: &BigReal) -> CoefSign {
    if c.is_exact_zero() {
        CoefSign::ZeroExact
    } else if c.certainly_positive() {
        CoefSign::Pos
    } else if c.certainly_negative() {
        CoefSign::Neg
    } else {
        CoefSign::Unknown
    }
}

type VarState = [Option<(u32, u32)>; 3]; // indexed by last nonzero sign: none/pos/neg

fn merge(slot: &mut Option<(u32, u32)>, v: (u32, u32)) {
    *slot = Some(match *slot {
        None => v,
        Some((lo, hi)) => (lo.min(v.0), hi.max(v.1)),
    });
}

fn push_sign(best: &VarState, s: usize) -> VarState {
    let mut out: VarState = [None, None, None];
    for (last, entry) in best.iter().enumerate() {
        if let Some((lo, hi)) = entry {
            let bump = (last != 0 && last != s) as u32;
            merge(&mut out[s], (lo + bump, hi + bump));
        }
    }
    out
}

fn merge_states(a: &mut VarState, b: &VarState) {
    for (slot, other) in a.iter_mut().zip(b.iter()) {
        if let Some(v) = other {
            merge(slot, *v);
        }
    }
}

/// Range of possible Descartes sign-variation counts over all sign
/// assignments consistent with the coefficient balls (exact zeros are
/// skipped, unknowns may be +, -, or 0).
fn sign_variation_range(coeffs: &[BigReal]) -> (u32, u32) {
    let mut best: VarState = [Some((0, 0)), None, None];
    for c in coeffs {
        match coeff_sign(c) {
            CoefSign::ZeroExact => {}
            CoefSign::Pos => best = push_sign(&best, 1),
            CoefSign::Neg => best = push_sign(&best, 2),
            CoefSign::Unknown => {
                let mut next = best; // the coefficient may be zero
                merge_states(&mut next, &push_sign(&best, 1));
                merge_states(&mut next, &push_sign(&best, 2));
                best = next;
            }
        }
    }
    let mut lo = u32::MAX;
    let mut hi = 0;
    for entry in best.iter().flatten() {
        lo = lo.min(entry.0);
        hi = hi.max(entry.1);
    }
    (lo, hi)
}

enum Event {
    Root(IsolatedRoot),
    Cluster(Cluster),
}

struct Isolator {
    prec: u32,
    min_width: Float,
    max_depth: u32,
    one: BigReal,
    /// The polynomial in original coordinates. Every node rebuilds its local
    /// polynomial from this with a single shift-and-scale: composing the
    /// child transforms down the tree instead would compound the coefficient
    /// radii exponentially in the depth, making deep split points unsignable
    /// at any precision.
    original: IntervalPolynomial,
}

impl Isolator {
    /// Variation range of `poly` over the open unit interval, via the
    /// Möbius transform (coefficient reversal plus shift by one).
    fn unit_interval_vars(&self, poly: &IntervalPolynomial) -> (u32, u32) {
        let m = poly.reverse().taylor_shift(&self.one);
        sign_variation_range(m.coeffs())
    }

    /// Local polynomial of the node covering original coordinates `a + s*u`,
    /// `u` in the unit interval.
    fn node_poly(&self, a: &BigReal, s: &BigReal) -> IntervalPolynomial {
        self.original.taylor_shift(a).scale(s)
    }

    /// Isolate roots of `poly(u)` for `u` in the open unit interval, where
    /// the node represents original coordinates `a + s*u`.
    fn isolate_in(
        &self,
        poly: &IntervalPolynomial,
        a: &BigReal,
        s: &BigReal,
        depth: u32,
        out: &mut Vec<Event>,
    ) {
        let (vmin, vmax) = self.unit_interval_vars(poly);
        if vmax == 0 {
            return;
        }
        let enclosure = || a.hull(&a.add(s));
        if vmin == 1 && vmax == 1 {
            out.push(Event::Root(IsolatedRoot {
                enclosure: enclosure(),
                multiplicity: 1,
            }));
            return;
        }
        if depth >= self.max_depth || s.upper_bound() < self.min_width {
            out.push(Event::Cluster(Cluster {
                enclosure: enclosure(),
                vars_min: vmin,
                vars_max: vmax,
            }));
            return;
        }
        for &(num, den) in SPLIT_CANDIDATES {
            let f = BigReal::from_i64(num, self.prec).mul_2exp(-den);
            let v = poly.eval(&f);
            match v.sign() {
                Some(Sign::Positive) | Some(Sign::Negative) => {
                    self.recurse_children(a, s, &f, depth, out);
                    return;
                }
                Some(Sign::Zero) => {
                    self.point_root(poly, a, s, &f, depth, vmin, vmax, out);
                    return;
                }
                None => continue,
            }
        }
        // No split point could be signed: the polynomial is indistinguishable
        // from zero across the interval at this precision.
        out.push(Event::Cluster(Cluster {
            enclosure: enclosure(),
            vars_min: vmin,
            vars_max: vmax,
        }));
    }

    fn recurse_children(
        &self,
        a: &BigReal,
        s: &BigReal,
        f: &BigReal,
        depth: u32,
        out: &mut Vec<Event>,
    ) {
        let s_left = s.mul(f);
        let a_right = a.add(&s_left);
        let s_right = s.mul(&self.one.sub(f));
        let left = self.node_poly(a, &s_left);
        let right = self.node_poly(&a_right, &s_right);
        self.isolate_in(&left, a, &s_left, depth + 1, out);
        self.isolate_in(&right, &a_right, &s_right, depth + 1, out);
    }

    /// The polynomial is exactly zero at the split point: certify its
    /// multiplicity via successive derivatives and keep isolating on both
    /// sides. An undecidable derivative sign degrades the node to a cluster.
    #[allow(clippy::too_many_arguments)]
    fn point_root(
        &self,
        poly: &IntervalPolynomial,
        a: &BigReal,
        s: &BigReal,
        f: &BigReal,
        depth: u32,
        vmin: u32,
        vmax: u32,
        out: &mut Vec<Event>,
    ) {
        let position = a.add(&s.mul(f));
        let mut g = poly.derivative();
        let mut mult = 1usize;
        loop {
            match g.eval(f).sign() {
                Some(Sign::Zero) => {
                    mult += 1;
                    g = g.derivative();
                    if mult > poly.nominal_degree() {
                        break; // cannot happen for a nonzero polynomial; guard anyway
                    }
                }
                Some(_) => {
                    // The root and the flanks are now fully accounted for.
                    let s_left = s.mul(f);
                    let a_right = a.add(&s_left);
                    let s_right = s.mul(&self.one.sub(f));
                    let left = self.node_poly(a, &s_left);
                    let mut left_events = Vec::new();
                    self.isolate_in(&left, a, &s_left, depth + 1, &mut left_events);
                    out.extend(left_events);
                    out.push(Event::Root(IsolatedRoot {
                        enclosure: position,
                        multiplicity: mult,
                    }));
                    let right = self.node_poly(&a_right, &s_right);
                    self.isolate_in(&right, &a_right, &s_right, depth + 1, out);
                    return;
                }
                None => break,
            }
        }
        out.push(Event::Cluster(Cluster {
            enclosure: a.hull(&a.add(s)),
            vars_min: vmin.max(1),
            vars_max: vmax,
        }));
    }
}

fn isolate_at_prec(q: &IntervalPolynomial, prec: u32) -> Result<(Vec<IsolatedRoot>, Vec<Cluster>)> {
    let q = q.to_prec(prec);
    let k = q.root_bound_2exp()?;
    // Map the open unit interval onto (-2^k, 2^k), which strictly contains
    // every real root.
    let a = BigReal::from_i64(-1, prec).mul_2exp(k);
    let s = BigReal::from_i64(1, prec).mul_2exp(k + 1);
    let w = q.taylor_shift(&a).scale_2exp(k + 1);
    let isolator = Isolator {
        prec,
        min_width: Float::with_val(32, 1) << (k + 1 - (prec as i32 / 2).max(32)),
        max_depth: 4 * prec.max(32),
        one: BigReal::one(prec),
        original: q,
    };
    let mut events = Vec::new();
    isolator.isolate_in(&w, &a, &s, 0, &mut events);
    let mut roots = Vec::new();
    let mut clusters = Vec::new();
    for e in events {
        match e {
            Event::Root(r) => roots.push(r),
            Event::Cluster(c) => clusters.push(c),
        }
    }
    Ok((roots, clusters))
}

/// Isolate all real roots of `p`. Exact zero roots are factored out and
/// reported via `zero_root_multiplicity`; remaining roots come back as
/// disjoint certified enclosures plus unresolved clusters. The transform
/// precision escalates from `ctx.bits` to `ctx.max_bits` until the isolation
/// is complete (escalation cannot shrink the input coefficient radii; it
/// only fights rounding inside the isolator's own transforms).
pub fn isolate_real_roots(p: &IntervalPolynomial, ctx: &Ctx) -> Result<RootIsolation> {
    if p.is_zero() {
        return Err(Error::Domain(
            "cannot isolate roots of the zero polynomial".into(),
        ));
    }
    let (m, q) = p.factor_out_zero_roots();
    if q.nominal_degree() == 0 && !q.coeffs()[0].contains_zero() {
        return Ok(RootIsolation {
            roots: Vec::new(),
            clusters: Vec::new(),
            zero_root_multiplicity: m,
            precision_used: ctx.bits,
        });
    }
    let schedule = Ctx::with_max(
        ctx.bits.max(q.prec()),
        ctx.max_bits.max(ctx.bits.max(q.prec())),
    );
    let mut last: Option<RootIsolation> = None;
    for prec in schedule.escalation() {
        let (roots, clusters) = isolate_at_prec(&q, prec)?;
        let iso = RootIsolation {
            roots,
            clusters,
            zero_root_multiplicity: m,
            precision_used: prec,
        };
        if iso.complete() {
            return Ok(iso);
        }
        last = Some(iso);
    }
    Ok(last.expect("escalation schedule is never empty"))
}

/// Shrink a certified root enclosure by interval Newton steps with a
/// certified-sign bisection fallback. Best effort: the result is always a
/// valid enclosure of the same root, at most as wide as the input.
///
/// Bisection only needs the polynomial's sign on *one* flank of the root:
/// the enclosure contains a single root, so the sign is constant between
/// each endpoint and the root, and one certified flank sign orients every
/// interior probe. This matters when the other endpoint sits exactly on a
/// neighboring root (sign zero there).
pub fn refine_root(p: &IntervalPolynomial, enclosure: &BigReal, target_radius: &Float) -> BigReal {
    if enclosure.is_exact() {
        return enclosure.clone();
    }
    #[derive(Clone, Copy)]
    enum Orient {
        FromLo(Sign),
        FromHi(Sign),
        Unknown,
    }
    let sign_at = |pt: &Float| p.eval(&BigReal::from_float_exact(pt.clone())).sign();
    let dp = p.derivative();
    let mut x = enclosure.clone();
    let orient = match sign_at(&x.lower_bound()) {
        Some(s) if s != Sign::Zero => Orient::FromLo(s),
        _ => match sign_at(&x.upper_bound()) {
            Some(s) if s != Sign::Zero => Orient::FromHi(s),
            _ => Orient::Unknown,
        },
    };
    // Interior probe fractions (numerator, log2 denominator).
    const PROBES: &[(i32, i32)] = &[(1, 1), (7, 4), (9, 4), (3, 3), (5, 3), (1, 2), (3, 2)];
    for _ in 0..192 {
        if !(x.radius() > target_radius) {
            break;
        }
        let before = x.radius().clone();
        let mut stepped = false;
        // Interval Newton: x* = m - p(m)/p'(xi) for some xi in the interval.
        let dx = dp.eval(&x);
        if !dx.contains_zero() {
            let m = x.center_value();
            if let Ok(q) = p.eval(&m).div(&dx) {
                let n = m.sub(&q);
                let new_lo = x.lower_bound().max(&n.lower_bound());
                let new_hi = x.upper_bound().min(&n.upper_bound());
                if new_lo <= new_hi {
                    let candidate = BigReal::from_endpoints(&new_lo, &new_hi);
                    if candidate.radius() < x.radius() {
                        x = candidate;
                        stepped = true;
                    }
                }
            }
        }
        if !stepped {
            let lo = x.lower_bound();
            let hi = x.upper_bound();
            for &(num, shift) in PROBES {
                let step = Float::with_val(x.prec(), &hi - &lo) * num >> shift as u32;
                let m = Float::with_val(x.prec(), &lo + step);
                if !(m > lo) || !(m < hi) {
                    continue;
                }
                match sign_at(&m) {
                    Some(Sign::Zero) => {
                        // The probe hit the root exactly.
                        return BigReal::from_float_exact(m);
                    }
                    Some(s) => {
                        let move_lo = match orient {
                            Orient::FromLo(sl) => s == sl,
                            Orient::FromHi(sh) => s != sh,
                            Orient::Unknown => break,
                        };
                        x = if move_lo {
                            BigReal::from_endpoints(&m, &hi)
                        } else {
                            BigReal::from_endpoints(&lo, &m)
                        };
                        stepped = true;
                        break;
                    }
                    None => continue,
                }
            }
        }
        if !stepped || !(x.radius() < &before) {
            break;
        }
    }
    x
}

fn float_sub_down(a: &Float, b: &Float) -> Float {
    Float::with_val_round(a.prec().max(b.prec()), a - b, Round::Down).0
}

fn float_sub_up(a: &Float, b: &Float) -> Float {
    Float::with_val_round(a.prec().max(b.prec()), a - b, Round::Up).0
}

enum Tri {
    Yes,
    No,
    Unknown,
}

/// Check the consecutive-gap condition `gap >= delta` on sorted roots.
fn gaps_at_least(roots: &[IsolatedRoot], delta: &BigReal) -> (Tri, Option<BigReal>) {
    if roots.len() < 2 {
        return (Tri::Yes, None);
    }
    let delta_lo = delta.lower_bound();
    let delta_hi = delta.upper_bound();
    let mut all_ok = true;
    let mut min_lo: Option<Float> = None;
    let mut min_hi: Option<Float> = None;
    let mut violated = false;
    for pair in roots.windows(2) {
        let gap_lo = float_sub_down(&pair[1].enclosure.lower_bound(), &pair[0].enclosure.upper_bound());
        let gap_hi = float_sub_up(&pair[1].enclosure.upper_bound(), &pair[0].enclosure.lower_bound());
        if gap_hi < delta_lo {
            violated = true;
        }
        if !(gap_lo >= delta_hi) {
            all_ok = false;
        }
        min_lo = Some(match min_lo {
            None => gap_lo,
            Some(v) => v.min(&gap_lo),
        });
        min_hi = Some(match min_hi {
            None => gap_hi,
            Some(v) => v.min(&gap_hi),
        });
    }
    let min_gap = match (min_lo, min_hi) {
        (Some(lo), Some(hi)) if lo <= hi => Some(BigReal::from_endpoints(&lo, &hi)),
        _ => None,
    };
    let tri = if violated {
        Tri::No
    } else if all_ok {
        Tri::Yes
    } else {
        Tri::Unknown
    };
    (tri, min_gap)
}

fn domain_check(roots: &[IsolatedRoot], domain: RootDomain) -> Tri {
    let mut all_ok = true;
    for r in roots {
        let (ok, bad) = match domain {
            RootDomain::AllReal => (true, false),
            RootDomain::AllPositive => (
                r.enclosure.certainly_positive(),
                r.enclosure.upper_bound() <= 0,
            ),
            RootDomain::AllNegative => (
                r.enclosure.certainly_negative(),
                r.enclosure.lower_bound() >= 0,
            ),
        };
        if bad {
            return Tri::No;
        }
        if !ok {
            all_ok = false;
        }
    }
    if all_ok {
        Tri::Yes
    } else {
        Tri::Unknown
    }
}

/// Distinct certified roots in ascending order, the origin root included.
fn assemble_roots(iso: &RootIsolation, prec: u32) -> Vec<IsolatedRoot> {
    let mut roots: Vec<IsolatedRoot> = iso.roots.clone();
    if iso.zero_root_multiplicity > 0 {
        roots.push(IsolatedRoot {
            enclosure: BigReal::zero(prec),
            multiplicity: iso.zero_root_multiplicity,
        });
    }
    roots.sort_by(|x, y| {
        x.enclosure
            .center()
            .partial_cmp(y.enclosure.center())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    roots
}

fn certify_round(
    p: &IntervalPolynomial,
    domain: RootDomain,
    delta: Option<&BigReal>,
    prec: u32,
) -> Result<HyperbolicityReport> {
    let degree = match p.degree() {
        Ok(None) | Ok(Some(0)) => {
            // Constants (including the zero polynomial) have no roots to
            // violate anything: vacuously hyperbolic.
            return Ok(HyperbolicityReport {
                verdict: Verdict::Hyperbolic,
                degree: 0,
                certified_real_roots: 0,
                roots: Vec::new(),
                min_gap: None,
                precision_used: prec,
            });
        }
        Ok(Some(d)) => d,
        Err(e) => return Err(e),
    };
    let iso = isolate_real_roots(p, &Ctx::with_max(prec, prec))?;
    let report = |verdict, roots: Vec<IsolatedRoot>, min_gap| HyperbolicityReport {
        verdict,
        degree,
        certified_real_roots: iso.certified_count(),
        roots,
        min_gap,
        precision_used: prec,
    };

    if iso.max_possible_count() < degree {
        // Even if every unresolved cluster is maximally filled there are not
        // enough real roots: some must be complex.
        return Ok(report(Verdict::NotHyperbolic, assemble_roots(&iso, prec), None));
    }

    if !iso.complete() {
        if let Some(d) = delta {
            // If the count can only be met by filling every cluster to its
            // variation bound, any small cluster that would then hold >= 2
            // roots breaks the separation requirement; and if the clusters
            // are not filled, the root count falls short. Either way the
            // polynomial is not delta-hyperbolic.
            if iso.max_possible_count() == degree {
                let d_lo = d.lower_bound();
                let breaks_separation = iso.clusters.iter().any(|c| {
                    let diam = float_sub_up(
                        &c.enclosure.upper_bound(),
                        &c.enclosure.lower_bound(),
                    );
                    c.vars_max >= 2 && diam < d_lo
                });
                if breaks_separation {
                    return Ok(report(
                        Verdict::NotHyperbolic,
                        assemble_roots(&iso, prec),
                        None,
                    ));
                }
            }
        }
        return Ok(report(Verdict::Undetermined, assemble_roots(&iso, prec), None));
    }

    // Complete isolation: the real-root count is exact.
    if iso.certified_count() < degree {
        return Ok(report(Verdict::NotHyperbolic, assemble_roots(&iso, prec), None));
    }

    let mut roots = assemble_roots(&iso, prec);
    let evaluate = |roots: &[IsolatedRoot]| -> (Tri, Option<BigReal>) {
        let dom = domain_check(roots, domain);
        if matches!(dom, Tri::No) {
            return (Tri::No, None);
        }
        if delta.is_none() {
            return match dom {
                Tri::Yes => (Tri::Yes, None),
                _ => (Tri::Unknown, None),
            };
        }
        let d = delta.unwrap();
        if roots.iter().any(|r| r.multiplicity >= 2) {
            // A multiple root is two roots at distance zero.
            return (Tri::No, None);
        }
        let (sep, min_gap) = gaps_at_least(roots, d);
        match (dom, sep) {
            (_, Tri::No) => (Tri::No, min_gap),
            (Tri::Yes, Tri::Yes) => (Tri::Yes, min_gap),
            _ => (Tri::Unknown, min_gap),
        }
    };

    let mut outcome = evaluate(&roots);
    // Tighten the enclosures in stages and retry before giving up: gap and
    // sign margins can be many orders of magnitude below delta.
    for shift in [8u32, 24, 60] {
        if !matches!(outcome.0, Tri::Unknown) {
            break;
        }
        let target = match delta {
            Some(d) => {
                let mut t = d.lower_bound();
                t >>= shift;
                t
            }
            None => Float::new(32),
        };
        for r in roots.iter_mut() {
            r.enclosure = refine_root(p, &r.enclosure, &target);
        }
        roots.sort_by(|x, y| {
            x.enclosure
                .center()
                .partial_cmp(y.enclosure.center())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        outcome = evaluate(&roots);
        if delta.is_none() {
            // Without a gap requirement the refinement target does not
            // change between stages; one extra pass is all there is.
            break;
        }
    }
    let (tri, min_gap) = outcome;

    let verdict = match tri {
        Tri::Yes => Verdict::Hyperbolic,
        Tri::No => Verdict::NotHyperbolic,
        Tri::Unknown => Verdict::Undetermined,
    };
    Ok(report(verdict, roots, min_gap))
}

/// Certify whether every polynomial within the coefficient balls of `p` has
/// all roots real (and inside `domain`, and pairwise at least `delta` apart
/// when given). Precision escalates via `ctx`; a polynomial builder variant
/// is available as [`certify_hyperbolic_with`] for callers that can
/// reconstruct their coefficients more accurately on demand.
pub fn certify_hyperbolic(
    p: &IntervalPolynomial,
    domain: RootDomain,
    delta: Option<&BigReal>,
    ctx: &Ctx,
) -> Result<HyperbolicityReport> {
    certify_hyperbolic_with(|prec| Ok(p.to_prec(prec)), domain, delta, ctx)
}

/// Like [`certify_hyperbolic`], but rebuilding the polynomial at each
/// precision step. This is the form used by verification suites, whose
/// coefficients come from truncated series: re-summing at higher precision
/// genuinely shrinks the coefficient balls, which `to_prec` cannot.
pub fn certify_hyperbolic_with(
    build: impl Fn(u32) -> Result<IntervalPolynomial>,
    domain: RootDomain,
    delta: Option<&BigReal>,
    ctx: &Ctx,
) -> Result<HyperbolicityReport> {
    let mut last: Option<HyperbolicityReport> = None;
    let mut last_err: Option<Error> = None;
    for prec in ctx.escalation() {
        let p = build(prec)?;
        match certify_round(&p, domain, delta, prec) {
            Ok(rep) => {
                if rep.verdict != Verdict::Undetermined {
                    return Ok(rep);
                }
                last = Some(rep);
            }
            Err(Error::AmbiguousDegree) => {
                // A fuzzy leading coefficient may sharpen on rebuild.
                last_err = Some(Error::AmbiguousDegree);
            }
            Err(e) => return Err(e),
        }
    }
    match last {
        Some(rep) => Ok(rep),
        None => Err(last_err.unwrap_or(Error::PrecisionExhausted(ctx.max_bits))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> IntervalPolynomial {
        IntervalPolynomial::from_i64(coeffs, 128)
    }

    fn contains(enc: &BigReal, v: f64) -> bool {
        enc.lower_bound() <= v && enc.upper_bound() >= v
    }

    #[test]
    fn cubic_with_three_roots() {
        // (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
        let q = p(&[-6, 11, -6, 1]);
        let iso = isolate_real_roots(&q, &Ctx::default()).unwrap();
        assert!(iso.complete());
        assert_eq!(iso.certified_count(), 3);
        for (r, v) in iso.roots.iter().zip([1.0, 2.0, 3.0]) {
            assert!(contains(&r.enclosure, v));
        }
    }

    #[test]
    fn complex_pair_detected() {
        let q = p(&[1, 0, 1]); // x^2 + 1
        let rep = certify_hyperbolic(&q, RootDomain::AllReal, None, &Ctx::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::NotHyperbolic);
        assert_eq!(rep.certified_real_roots, 0);
    }

    #[test]
    fn exact_double_root() {
        let q = p(&[1, -2, 1]); // (x-1)^2
        let plain = certify_hyperbolic(&q, RootDomain::AllReal, None, &Ctx::default()).unwrap();
        assert_eq!(plain.verdict, Verdict::Hyperbolic);
        assert_eq!(plain.certified_real_roots, 2);
        assert_eq!(plain.roots.len(), 1);
        assert_eq!(plain.roots[0].multiplicity, 2);
        let half = BigReal::from_f64(0.5, 128);
        let sep = certify_hyperbolic(&q, RootDomain::AllReal, Some(&half), &Ctx::default()).unwrap();
        assert_eq!(sep.verdict, Verdict::NotHyperbolic);
    }

    #[test]
    fn exact_unit_gaps_meet_closed_separation() {
        // x(x-1)(x-2): gaps are exactly 1
        let q = p(&[0, 2, -3, 1]);
        let one = BigReal::one(128);
        let rep = certify_hyperbolic(&q, RootDomain::AllReal, Some(&one), &Ctx::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::Hyperbolic);
        let gap = rep.min_gap.unwrap();
        assert!(contains(&gap, 1.0));
        // Any delta strictly above 1 must be rejected.
        let above = BigReal::from_f64(1.0 + 1.0 / 1048576.0, 128);
        let rep =
            certify_hyperbolic(&q, RootDomain::AllReal, Some(&above), &Ctx::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::NotHyperbolic);
    }

    #[test]
    fn positivity_domains() {
        let pos = p(&[2, -3, 1]); // (x-1)(x-2)
        let rep =
            certify_hyperbolic(&pos, RootDomain::AllPositive, None, &Ctx::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::Hyperbolic);
        let mixed = p(&[-2, -1, 1]); // (x+1)(x-2)
        let rep =
            certify_hyperbolic(&mixed, RootDomain::AllPositive, None, &Ctx::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::NotHyperbolic);
        let rep = certify_hyperbolic(&mixed, RootDomain::AllReal, None, &Ctx::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::Hyperbolic);
        let rep =
            certify_hyperbolic(&mixed.reflect(), RootDomain::AllNegative, None, &Ctx::default())
                .unwrap();
        assert_eq!(rep.verdict, Verdict::NotHyperbolic); // roots 1 and -2
    }

    #[test]
    fn close_dyadic_pair_breaks_separation() {
        // roots at 1 and 1 + 2^-20
        let eps = 1.0 / (1u64 << 20) as f64;
        let a = BigReal::one(128);
        let b = BigReal::from_f64(1.0 + eps, 128);
        // (x-a)(x-b) expanded with exact dyadic arithmetic
        let q = IntervalPolynomial::new(vec![
            a.mul(&b),
            a.add(&b).neg(),
            BigReal::one(128),
        ]);
        let plain = certify_hyperbolic(&q, RootDomain::AllReal, None, &Ctx::default()).unwrap();
        assert_eq!(plain.verdict, Verdict::Hyperbolic);
        let half = BigReal::from_f64(0.5, 128);
        let sep = certify_hyperbolic(&q, RootDomain::AllReal, Some(&half), &Ctx::default()).unwrap();
        assert_eq!(sep.verdict, Verdict::NotHyperbolic);
    }

    #[test]
    fn refine_reaches_target() {
        let q = p(&[-2, 0, 1]); // x^2 - 2
        let iso = isolate_real_roots(&q, &Ctx::default()).unwrap();
        assert_eq!(iso.certified_count(), 2);
        let pos = iso
            .roots
            .iter()
            .find(|r| r.enclosure.upper_bound() > 0)
            .unwrap();
        let target = Float::with_val(32, 1e-30);
        let refined = refine_root(&q, &pos.enclosure, &target);
        assert!(refined.radius().to_f64() <= 1e-30);
        let sqrt2 = BigReal::from_i64(2, 256).sqrt().unwrap();
        assert!(refined.consistent_with(&sqrt2));
    }

    #[test]
    fn genuinely_ambiguous_family_stays_undetermined() {
        // x^2 + c with c anywhere in [-1, 1]: some members are hyperbolic
        // and some are not, so no verdict may be issued.
        let fuzzy = BigReal::zero(64).widen(&Float::with_val(32, 1));
        let q = IntervalPolynomial::new(vec![fuzzy, BigReal::zero(64), BigReal::one(64)]);
        let ctx = Ctx::with_max(64, 128);
        let rep = certify_hyperbolic(&q, RootDomain::AllReal, None, &ctx).unwrap();
        assert_eq!(rep.verdict, Verdict::Undetermined);
    }

    #[test]
    fn partition_jensen_boundary_discriminants() {
        // p(24)=1575, p(25)=1958, p(26)=2436, p(27)=3010. The quadratic
        // 1575 + 2*1958 x + 2436 x^2 has discriminant -11744 < 0, while its
        // shift 1958 + 2*2436 x + 3010 x^2 has +162064 > 0.
        let not_hyp = p(&[1575, 3916, 2436]);
        assert_eq!(3916i64 * 3916 - 4 * 2436 * 1575, -11744);
        let rep = certify_hyperbolic(&not_hyp, RootDomain::AllReal, None, &Ctx::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::NotHyperbolic);
        let hyp = p(&[1958, 4872, 3010]);
        assert_eq!(4872i64 * 4872 - 4 * 3010 * 1958, 162064);
        let rep = certify_hyperbolic(&hyp, RootDomain::AllReal, None, &Ctx::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::Hyperbolic);
        assert!(rep.roots.iter().all(|r| r.enclosure.certainly_negative()));
    }

    #[test]
    fn variation_range_handles_unknowns() {
        let c = |v: i64| BigReal::from_i64(v, 64);
        let fuzzy = BigReal::zero(64).widen(&Float::with_val(32, 1));
        assert_eq!(sign_variation_range(&[c(1), c(-1), c(1)]), (2, 2));
        assert_eq!(sign_variation_range(&[c(1), c(0), c(1)]), (0, 0));
        assert_eq!(sign_variation_range(&[c(1), fuzzy.clone(), c(1)]), (0, 2));
        assert_eq!(sign_variation_range(&[c(1), fuzzy, c(-1)]), (1, 1));
    }
}
