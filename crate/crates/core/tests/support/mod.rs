//! Exact rational-arithmetic oracles shared by the integration tests.
//! Each test target compiles its own copy and uses a different subset.
#![allow(dead_code)]
//!
//! The Sturm machinery here deliberately shares no code with the library's
//! interval-based isolator: it works over `rug::Rational`, where every
//! division is exact, so its real-root counts are ground truth against
//! which the certified isolator can be judged.

use rug::Rational;

/// Polynomial over ℚ, ascending coefficients, no trailing zeros
/// (the zero polynomial is the empty list).
#[derive(Clone, Debug, PartialEq)]
pub struct QPoly(Vec<Rational>);

impl QPoly {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut c = coeffs;
        while c.last().map(|x| x.cmp0() == std::cmp::Ordering::Equal) == Some(true) {
            c.pop();
        }
        QPoly(c)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree of a nonzero polynomial.
    pub fn degree(&self) -> usize {
        assert!(!self.is_zero());
        self.0.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    fn lead(&self) -> &Rational {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn derivative(&self) -> QPoly {
        if self.0.len() <= 1 {
            return QPoly(Vec::new());
        }
        QPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| Rational::from(c * Rational::from(i as u64)))
                .collect(),
        )
    }

    /// Remainder of `self` divided by `rhs`; exact over ℚ.
    fn rem(&self, rhs: &QPoly) -> QPoly {
        assert!(!rhs.is_zero());
        let mut r = self.0.clone();
        let dr = rhs.degree();
        let inv_lead = Rational::from(rhs.lead().clone().recip());
        while r.len() > dr {
            let k = r.len() - 1 - dr; // quotient-term exponent
            let q = Rational::from(r.last().unwrap() * &inv_lead);
            for (i, b) in rhs.0.iter().enumerate() {
                let sub = Rational::from(b * &q);
                r[k + i] -= sub;
            }
            // The leading entry is now exactly zero; drop it and any
            // further zeros it exposes.
            while r.last().map(|x| x.cmp0() == std::cmp::Ordering::Equal) == Some(true) {
                r.pop();
            }
            if r.is_empty() {
                break;
            }
        }
        QPoly(r)
    }

    /// Greatest common divisor via the Euclidean algorithm (monic-normalized).
    pub fn gcd(&self, rhs: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let inv = Rational::from(a.lead().clone().recip());
        QPoly(a.0.into_iter().map(|c| c * &inv).collect())
    }

    /// A nonzero polynomial is squarefree iff gcd(p, p′) is constant.
    pub fn is_squarefree(&self) -> bool {
        assert!(!self.is_zero());
        if self.degree() == 0 {
            return true;
        }
        self.gcd(&self.derivative()).degree() == 0
    }
}

/// Sign of the polynomial at +∞ (`+1` / `-1`).
fn sign_at_pos_inf(p: &QPoly) -> i32 {
    match p.lead().cmp0() {
        std::cmp::Ordering::Greater => 1,
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => unreachable!("no trailing zeros"),
    }
}

/// Sign of the polynomial at −∞.
fn sign_at_neg_inf(p: &QPoly) -> i32 {
    let s = sign_at_pos_inf(p);
    if p.degree() % 2 == 0 {
        s
    } else {
        -s
    }
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut count = 0;
    let mut prev: Option<i32> = None;
    for s in signs {
        if let Some(p) = prev {
            if p != s {
                count += 1;
            }
        }
        prev = Some(s);
    }
    count
}

/// Number of distinct real roots of a squarefree nonzero polynomial,
/// by Sturm's theorem over the whole real line.
pub fn sturm_real_root_count(p: &QPoly) -> usize {
    assert!(!p.is_zero());
    if p.degree() == 0 {
        return 0;
    }
    assert!(p.is_squarefree(), "Sturm count requires a squarefree input");
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        let r = chain[n - 2].rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(QPoly(r.0.into_iter().map(|c| -c).collect()));
    }
    let at_neg = variations(chain.iter().map(sign_at_neg_inf));
    let at_pos = variations(chain.iter().map(sign_at_pos_inf));
    at_neg - at_pos
}

pub fn sturm_count_of_i64(coeffs: &[i64]) -> usize {
    sturm_real_root_count(&QPoly::from_i64(coeffs))
}
