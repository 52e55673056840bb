//! Truncated power series in `t`, stored in the exponential basis.
//!
//! An [`EgfSeries`] of order `N` holds `a_0..=a_N` and represents
//! `sum a_n t^n / n!` modulo `t^(N+1)`. Products are binomial convolutions,
//! so reading coefficient `n` gives the named polynomial directly with no
//! factorial bookkeeping.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::multipoly::MPoly;
use crate::numeric::{binomial, GaussRat, Rat};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EgfSeries {
    coeffs: Vec<MPoly>,
}

/// Rows `0..=order` of Pascal's triangle as rationals.
pub(crate) fn pascal(order: usize) -> Vec<Vec<Rat>> {
    (0..=order)
        .map(|n| (0..=n).map(|k| Rat::from(binomial(n, k))).collect())
        .collect()
}

impl EgfSeries {
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> MPoly) -> EgfSeries {
        EgfSeries {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    /// Wraps `a_0..=a_N`; `coeffs` must be nonempty.
    pub fn from_coeffs(coeffs: Vec<MPoly>) -> EgfSeries {
        assert!(!coeffs.is_empty(), "a series holds at least a_0");
        EgfSeries { coeffs }
    }

    pub fn zero(order: usize) -> EgfSeries {
        EgfSeries::from_fn(order, |_| MPoly::zero())
    }

    /// The series `1`.
    pub fn unit(order: usize) -> EgfSeries {
        EgfSeries::from_fn(order, |n| if n == 0 { MPoly::one() } else { MPoly::zero() })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[MPoly] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<MPoly> {
        self.coeffs
    }

    /// `a_n`, i.e. `n!` times the coefficient of `t^n`.
    pub fn coefficient(&self, n: usize) -> Result<&MPoly> {
        self.coeffs.get(n).ok_or(Error::IndexOutOfRange {
            index: n,
            max: self.order(),
        })
    }

    fn check_order(&self, other: &EgfSeries) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &EgfSeries) -> Result<EgfSeries> {
        self.check_order(other)?;
        Ok(EgfSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &EgfSeries) -> Result<EgfSeries> {
        self.check_order(other)?;
        Ok(EgfSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Binomial convolution `c_n = sum_k C(n,k) a_k b_(n-k)`.
    pub fn mul(&self, other: &EgfSeries) -> Result<EgfSeries> {
        self.check_order(other)?;
        let binom = pascal(self.order());
        let coeffs = (0..=self.order())
            .into_par_iter()
            .map(|n| {
                let mut acc = MPoly::zero();
                for k in 0..=n {
                    let (a, b) = (&self.coeffs[k], &other.coeffs[n - k]);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * b).scale_rat(&binom[n][k]);
                }
                acc
            })
            .collect();
        Ok(EgfSeries { coeffs })
    }

    pub fn scale(&self, c: &GaussRat) -> EgfSeries {
        EgfSeries {
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// Applies `f` to every coefficient.
    pub fn map(&self, f: impl Fn(&MPoly) -> MPoly) -> EgfSeries {
        EgfSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Multiplicative inverse; requires `a_0 = 1` exactly.
    ///
    /// `g_0 = 1`, `g_n = -sum_(k=1..n) C(n,k) a_k g_(n-k)`.
    pub fn invert(&self) -> Result<EgfSeries> {
        if self.coeffs[0] != MPoly::one() {
            return Err(Error::NotNormalized);
        }
        let binom = pascal(self.order());
        let mut g: Vec<MPoly> = Vec::with_capacity(self.coeffs.len());
        g.push(MPoly::one());
        for n in 1..=self.order() {
            let mut acc = MPoly::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc = &acc + &(&self.coeffs[k] * &g[n - k]).scale_rat(&binom[n][k]);
            }
            g.push(-acc);
        }
        Ok(EgfSeries { coeffs: g })
    }

    /// Drops every coefficient above `order`.
    pub fn truncate(&self, order: usize) -> Result<EgfSeries> {
        if order > self.order() {
            return Err(Error::IndexOutOfRange {
                index: order,
                max: self.order(),
            });
        }
        Ok(EgfSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }
}
