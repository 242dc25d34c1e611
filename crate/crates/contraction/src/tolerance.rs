//! Tolerance functions φ. Affine φ(x) = x/α − β is the first-class kind.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::rational::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToleranceError {
    #[error("alpha must be at least 1, got {0}")]
    AlphaBelowOne(Rational),
    #[error("beta must be non-negative, got {0}")]
    NegativeBeta(Rational),
    #[error("log-stretch tolerance needs n >= 2, got {0}")]
    TooFewVertices(u64),
}

/// A non-decreasing tolerance function, seen through the one question the
/// checkers ask: may a pair at distance `original` end up at `contracted`?
pub trait Tolerance: Sync {
    fn admits(&self, original: &Rational, contracted: &Rational) -> bool;

    /// φ(original) when it is rational.
    fn required(&self, original: &Rational) -> Option<Rational> {
        let _ = original;
        None
    }
}

/// φ(x) = x/α − β with α ≥ 1 and β ≥ 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineTolerance {
    alpha: Rational,
    beta: Rational,
}

impl AffineTolerance {
    pub fn new(alpha: Rational, beta: Rational) -> Result<AffineTolerance, ToleranceError> {
        if alpha < int(1) {
            return Err(ToleranceError::AlphaBelowOne(alpha));
        }
        if beta.is_negative() {
            return Err(ToleranceError::NegativeBeta(beta));
        }
        Ok(AffineTolerance { alpha, beta })
    }

    /// Shorthand for tests and generators with known-good parameters.
    pub fn of(alpha: Rational, beta: Rational) -> AffineTolerance {
        AffineTolerance::new(alpha, beta).expect("valid tolerance")
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    pub fn evaluate(&self, x: &Rational) -> Rational {
        x / self.alpha - self.beta
    }

    /// 1 − 1/α, the per-unit-length budget gained by leaving an edge alone.
    pub fn slack_rate(&self) -> Rational {
        int(1) - self.alpha.recip()
    }

    /// ψ ∘ φ where `self` is ψ.
    pub fn compose(&self, inner: &AffineTolerance) -> AffineTolerance {
        AffineTolerance {
            alpha: inner.alpha * self.alpha,
            beta: inner.beta / self.alpha + self.beta,
        }
    }
}

impl Tolerance for AffineTolerance {
    fn admits(&self, original: &Rational, contracted: &Rational) -> bool {
        *contracted >= self.evaluate(original)
    }

    fn required(&self, original: &Rational) -> Option<Rational> {
        Some(self.evaluate(original))
    }
}

impl fmt::Display for AffineTolerance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.alpha, self.beta)
    }
}

/// φ(x) = x/(2·log₂n − 1) − 1, the tolerance of the clustering contraction at
/// k = log₂ n. The stretch is irrational for most n, so membership is decided
/// by comparing integer powers instead of evaluating φ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LogStretch {
    n: u64,
}

impl LogStretch {
    pub fn new(n: u64) -> Result<LogStretch, ToleranceError> {
        if n < 2 {
            return Err(ToleranceError::TooFewVertices(n));
        }
        Ok(LogStretch { n })
    }

    pub fn n(&self) -> u64 {
        self.n
    }
}

impl Tolerance for LogStretch {
    /// c ≥ x/(2k−1) − 1  ⇔  k ≥ q := (x/(c+1) + 1)/2  ⇔  n^den(q) ≥ 2^num(q).
    fn admits(&self, original: &Rational, contracted: &Rational) -> bool {
        let q = (original / (contracted + int(1)) + int(1)) / int(2);
        if !q.is_positive() {
            return true;
        }
        let num = u32::try_from(*q.numer()).expect("distance ratio fits in u32");
        let den = u32::try_from(*q.denom()).expect("distance ratio fits in u32");
        BigUint::from(self.n).pow(den) >= BigUint::one() << num
    }

    fn required(&self, original: &Rational) -> Option<Rational> {
        // Rational exactly when n is a power of two.
        let k = 63 - self.n.leading_zeros() as i128;
        (self.n.is_power_of_two() && k >= 1).then(|| original / int(2 * k - 1) - int(1))
    }
}

/// log₂ n when n is a power of two.
pub fn exact_log2(n: u64) -> Option<u32> {
    n.is_power_of_two().then(|| n.trailing_zeros())
}
