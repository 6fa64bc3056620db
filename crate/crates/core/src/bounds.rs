//! Closed-form degree bounds and binomial tail estimates.
//!
//! The factor-size bounds are evaluated with integer square roots, so floors
//! at perfect squares never depend on floating-point rounding. Floats are
//! only produced for reporting.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("delta = {delta} outside the admissible range for n = {n}")]
    DeltaOutOfRange { n: u64, delta: u64 },
    #[error("parameter `a` must lie in (0, 1), got {0}")]
    ParameterOutOfRange(f64),
    #[error("mean must be non-negative, got {0}")]
    NegativeMean(f64),
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
}

/// `0` if `n ≡ δ (mod 2)`, else `1`.
pub fn parity_indicator(n: u64, delta: u64) -> u64 {
    (n + delta) % 2
}

/// The largest guaranteed regular-factor degree of a digraph with minimum
/// semidegree δ, `f(n, δ) = ⌊(δ + √(n(2δ − n) + 𝟙))/2⌋`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DirBound {
    pub n: u64,
    pub delta: u64,
    /// The exact radicand `n(2δ − n) + 𝟙`; `r* = (δ + √radicand)/2`.
    pub radicand: u64,
    pub r_star: f64,
    pub f: u64,
    pub indicator: u64,
}

/// Requires `n/2 ≤ δ < n`.
pub fn f_dir(n: u64, delta: u64) -> Result<DirBound, BoundsError> {
    if 2 * delta < n || delta >= n {
        return Err(BoundsError::DeltaOutOfRange { n, delta });
    }
    let indicator = parity_indicator(n, delta);
    let radicand = n * (2 * delta - n) + indicator;
    let root = radicand.sqrt();
    // ⌊(δ + √m)/2⌋ = ⌊(δ + ⌊√m⌋)/2⌋ for integer δ.
    let f = (delta + root) / 2;
    Ok(DirBound {
        n,
        delta,
        radicand,
        r_star: (delta as f64 + libm::sqrt(radicand as f64)) / 2.0,
        f,
        indicator,
    })
}

/// `g(n, δ) = (δ + √(n(2δ − n)))/2` with its two even roundings.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct UndirBound {
    pub n: u64,
    pub delta: u64,
    pub radicand: u64,
    pub g: f64,
    /// Largest even integer `≤ g`.
    pub g_even: u64,
    /// Largest even integer `≤ g + 1`.
    pub g_prime_even: u64,
}

/// Strict mode requires `n/2 < δ < n`; `relaxed` also admits `δ = n/2`.
pub fn g_undir(n: u64, delta: u64, relaxed: bool) -> Result<UndirBound, BoundsError> {
    let lower_ok = if relaxed {
        2 * delta >= n
    } else {
        2 * delta > n
    };
    if !lower_ok || delta >= n {
        return Err(BoundsError::DeltaOutOfRange { n, delta });
    }
    let radicand = n * (2 * delta - n);
    let floor_g = (delta + radicand.sqrt()) / 2;
    let even_floor = |x: u64| x - x % 2;
    Ok(UndirBound {
        n,
        delta,
        radicand,
        g: (delta as f64 + libm::sqrt(radicand as f64)) / 2.0,
        g_even: even_floor(floor_g),
        g_prime_even: even_floor(floor_g + 1),
    })
}

/// Lower-tail Chernoff bound `P(X ≤ (1 − a)EX) ≤ exp(−a²·EX/3)`.
pub fn chernoff(mean: f64, a: f64) -> Result<f64, BoundsError> {
    if !(a > 0.0 && a < 1.0) {
        return Err(BoundsError::ParameterOutOfRange(a));
    }
    if mean.is_nan() || mean < 0.0 {
        return Err(BoundsError::NegativeMean(mean));
    }
    Ok(libm::exp(-a * a * mean / 3.0))
}

/// Exact pmf/cdf of `Bin(n − 1, p)` (unprimed) and `Bin(n − 2, p)` (primed).
#[derive(Debug, Clone)]
pub struct BinomialTail {
    n: u64,
    pmf: Vec<BigRational>,
    pmf_prime: Vec<BigRational>,
}

fn binomial_pmf(trials: u64, p: &BigRational) -> Vec<BigRational> {
    let q = BigRational::one() - p;
    let mut out = Vec::with_capacity(trials as usize + 1);
    let mut coeff = BigUint::one();
    for r in 0..=trials {
        if r > 0 {
            coeff = coeff * BigUint::from(trials - r + 1) / BigUint::from(r);
        }
        let term = BigRational::from_integer(BigInt::from(coeff.clone()))
            * num_traits::pow(p.clone(), r as usize)
            * num_traits::pow(q.clone(), (trials - r) as usize);
        out.push(term);
    }
    out
}

impl BinomialTail {
    /// `p` is given as an exact fraction `num/den`.
    pub fn new(n: u64, p_num: u64, p_den: u64) -> Result<Self, BoundsError> {
        if n < 2 {
            return Err(BoundsError::Precondition("n must be at least 2"));
        }
        if p_den == 0 || p_num > p_den {
            return Err(BoundsError::Precondition("p must lie in [0, 1]"));
        }
        let p = BigRational::new(BigInt::from(p_num), BigInt::from(p_den));
        Ok(BinomialTail {
            n,
            pmf: binomial_pmf(n - 1, &p),
            pmf_prime: binomial_pmf(n - 2, &p),
        })
    }

    pub fn half(n: u64) -> Result<Self, BoundsError> {
        Self::new(n, 1, 2)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    fn at(table: &[BigRational], r: i64) -> BigRational {
        usize::try_from(r)
            .ok()
            .and_then(|r| table.get(r).cloned())
            .unwrap_or_else(BigRational::zero)
    }

    fn upto(table: &[BigRational], m: i64) -> BigRational {
        let Ok(m) = usize::try_from(m) else {
            return BigRational::zero();
        };
        table
            .iter()
            .take(m + 1)
            .fold(BigRational::zero(), |acc, x| acc + x)
    }

    /// `b(r) = P(X = r)`.
    pub fn b(&self, r: i64) -> BigRational {
        Self::at(&self.pmf, r)
    }

    /// `B(m) = P(X ≤ m)`.
    pub fn cdf(&self, m: i64) -> BigRational {
        Self::upto(&self.pmf, m)
    }

    /// `b'(r)` for `Bin(n − 2, p)`.
    pub fn b_prime(&self, r: i64) -> BigRational {
        Self::at(&self.pmf_prime, r)
    }

    /// `B'(m)` for `Bin(n − 2, p)`.
    pub fn cdf_prime(&self, m: i64) -> BigRational {
        Self::upto(&self.pmf_prime, m)
    }
}

/// Outcome of the three binomial inequalities at concrete `(n, r, h)`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BinResults {
    pub n: u64,
    pub r: i64,
    pub h: f64,
    /// `⌊n/2 − h⌋`, the point at which (ii) and (iii) are evaluated.
    pub m: i64,
    pub ratio: f64,
    pub ratio_bound: f64,
    pub pmf_at_m: f64,
    pub pmf_bound: f64,
    pub cdf_at_m: f64,
    pub cdf_bound: f64,
    pub ratio_holds: bool,
    pub pmf_holds: bool,
    pub cdf_holds: bool,
}

impl BinResults {
    pub fn all_hold(&self) -> bool {
        self.ratio_holds && self.pmf_holds && self.cdf_holds
    }
}

/// Evaluates, for `X ~ Bin(n − 1, 1/2)` with natural logarithms:
/// (i) `b'(r)/b(r) ≤ 1 + 1/ln n`,
/// (ii) `b(n/2 − h) ≥ e^{−2h²/n − 4h³/n²}/(2√n)`,
/// (iii) `B(n/2 − h) ≤ (√n/h)e^{−2h²/n}`.
pub fn check_binresults(n: u64, r: i64, h: f64) -> Result<BinResults, BoundsError> {
    if n < 3 {
        return Err(BoundsError::Precondition("n must be at least 3"));
    }
    let nf = n as f64;
    let ln_n = libm::log(nf);
    if (r as f64) < nf / 2.0 - libm::sqrt(2.0 * nf * ln_n) {
        return Err(BoundsError::Precondition(
            "r must be at least n/2 - sqrt(2 n ln n)",
        ));
    }
    if !(h > 0.0 && h <= libm::pow(nf, 0.6)) {
        return Err(BoundsError::Precondition("h must lie in (0, n^(3/5)]"));
    }
    let tail = BinomialTail::half(n)?;

    let b_r = tail.b(r);
    let ratio = if b_r.is_zero() {
        f64::INFINITY
    } else {
        (tail.b_prime(r) / b_r).to_f64().unwrap_or(f64::INFINITY)
    };
    let ratio_bound = 1.0 + 1.0 / ln_n;

    let m = libm::floor(nf / 2.0 - h) as i64;
    let pmf_at_m = tail.b(m).to_f64().unwrap_or(0.0);
    let pmf_bound =
        libm::exp(-2.0 * h * h / nf - 4.0 * h * h * h / (nf * nf)) / (2.0 * libm::sqrt(nf));
    let cdf_at_m = tail.cdf(m).to_f64().unwrap_or(0.0);
    let cdf_bound = libm::sqrt(nf) / h * libm::exp(-2.0 * h * h / nf);

    Ok(BinResults {
        n,
        r,
        h,
        m,
        ratio,
        ratio_bound,
        pmf_at_m,
        pmf_bound,
        cdf_at_m,
        cdf_bound,
        ratio_holds: ratio <= ratio_bound,
        pmf_holds: pmf_at_m >= pmf_bound,
        cdf_holds: cdf_at_m <= cdf_bound,
    })
}
