//! Falling factorials and Stirling numbers.
//!
//! Both Stirling kinds come from their defining relations: the first kind
//! by expanding `(x)_n` in powers of `x`, the degenerate second kind by
//! extracting coefficients of `(e_l(t) - 1)^k / k!`. The classical second
//! kind is the `l = 0` image of the degenerate table.

use std::fmt;
use std::str::FromStr;

use crate::egf::EgfSeries;
use crate::error::{Error, Result};
use crate::multipoly::{MPoly, Monomial, Var};
use crate::numeric::{factorial, Rat};

/// Direction of the `l`-step in a generalized factorial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaStep {
    /// `(u)_(n,l) = u (u - l) ... (u - (n-1) l)`
    Falling,
    /// `<u>_(n,l) = u (u + l) ... (u + (n-1) l)`
    Rising,
}

/// `u (u - 1) ... (u - n + 1)`, and `1` for `n = 0`.
pub fn falling_factorial(u: &MPoly, n: usize) -> MPoly {
    (0..n).fold(MPoly::one(), |acc, j| &acc * &(u - &MPoly::from(j as i64)))
}

pub fn gen_falling_factorial(u: &MPoly, n: usize, step: LambdaStep) -> MPoly {
    let lambda = MPoly::var(Var::Lambda);
    (0..n).fold(MPoly::one(), |acc, j| {
        let shift = lambda.scale_rat(&Rat::from(j as i64));
        let factor = match step {
            LambdaStep::Falling => u - &shift,
            LambdaStep::Rising => u + &shift,
        };
        &acc * &factor
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StirlingKind {
    /// Signed first kind.
    First,
    Second,
    DegenerateSecond,
}

impl StirlingKind {
    pub fn name(self) -> &'static str {
        match self {
            StirlingKind::First => "first",
            StirlingKind::Second => "second",
            StirlingKind::DegenerateSecond => "degenerate-second",
        }
    }
}

impl fmt::Display for StirlingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StirlingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<StirlingKind> {
        [
            StirlingKind::First,
            StirlingKind::Second,
            StirlingKind::DegenerateSecond,
        ]
        .into_iter()
        .find(|k| k.name() == s)
        .ok_or_else(|| Error::Parse {
            what: "stirling kind",
            input: s.to_string(),
        })
    }
}

/// Square table of Stirling numbers for `0 <= n, k <= n_max`; entries with
/// `k > n` are zero.
#[derive(Debug, Clone)]
pub struct StirlingTable {
    kind: StirlingKind,
    n_max: usize,
    entries: Vec<Vec<MPoly>>,
}

impl StirlingTable {
    pub fn build(kind: StirlingKind, n_max: usize) -> StirlingTable {
        let entries = match kind {
            StirlingKind::First => first_kind_rows(n_max),
            StirlingKind::DegenerateSecond => degenerate_second_rows(n_max),
            StirlingKind::Second => degenerate_second_rows(n_max)
                .into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|p| p.substitute(Var::Lambda, &MPoly::zero()))
                        .collect()
                })
                .collect(),
        };
        StirlingTable {
            kind,
            n_max,
            entries,
        }
    }

    pub fn kind(&self) -> StirlingKind {
        self.kind
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn get(&self, n: usize, k: usize) -> Result<&MPoly> {
        let max = self.n_max;
        if n > max {
            return Err(Error::IndexOutOfRange { index: n, max });
        }
        if k > max {
            return Err(Error::IndexOutOfRange { index: k, max });
        }
        Ok(&self.entries[n][k])
    }

    /// Triangular entries `(n, k, value)` with `k <= n`, row by row.
    pub fn triangle(&self) -> impl Iterator<Item = (usize, usize, &MPoly)> {
        self.entries.iter().enumerate().flat_map(|(n, row)| {
            row.iter()
                .take(n + 1)
                .enumerate()
                .map(move |(k, p)| (n, k, p))
        })
    }
}

fn first_kind_rows(n_max: usize) -> Vec<Vec<MPoly>> {
    let x = MPoly::var(Var::X);
    (0..=n_max)
        .map(|n| {
            let expanded = falling_factorial(&x, n);
            (0..=n_max)
                .map(|k| {
                    let mut m = Monomial::ONE;
                    m.0[Var::X.index()] = k as u32;
                    MPoly::constant(expanded.coeff(&m))
                })
                .collect()
        })
        .collect()
}

fn degenerate_second_rows(n_max: usize) -> Vec<Vec<MPoly>> {
    let one = MPoly::one();
    // e_l(t) - 1 has EGF coefficients (1)_(n,l) for n >= 1
    let shifted = EgfSeries::from_fn(n_max, |n| {
        if n == 0 {
            MPoly::zero()
        } else {
            gen_falling_factorial(&one, n, LambdaStep::Falling)
        }
    });
    let mut rows = vec![vec![MPoly::zero(); n_max + 1]; n_max + 1];
    let mut power = EgfSeries::unit(n_max);
    for k in 0..=n_max {
        let inv_fact = Rat::one()
            .checked_div(&Rat::from(factorial(k)))
            .expect("factorials are nonzero");
        for (n, row) in rows.iter_mut().enumerate() {
            row[k] = power.coeffs()[n].scale_rat(&inv_fact);
        }
        power = power.mul(&shifted).expect("equal orders");
    }
    rows
}

fn check_triangle(n: usize, k: usize) -> Result<()> {
    if k > n {
        return Err(Error::IndexOutOfRange { index: k, max: n });
    }
    Ok(())
}

/// Signed Stirling number of the first kind, read off the expansion of `(x)_n`.
pub fn stirling_first(n: usize, k: usize) -> Result<MPoly> {
    check_triangle(n, k)?;
    StirlingTable::build(StirlingKind::First, n)
        .get(n, k)
        .cloned()
}

/// Degenerate Stirling number of the second kind, a polynomial in `l`.
pub fn stirling_second_degenerate(n: usize, k: usize) -> Result<MPoly> {
    check_triangle(n, k)?;
    StirlingTable::build(StirlingKind::DegenerateSecond, n)
        .get(n, k)
        .cloned()
}

pub fn stirling_second(n: usize, k: usize) -> Result<MPoly> {
    check_triangle(n, k)?;
    StirlingTable::build(StirlingKind::Second, n)
        .get(n, k)
        .cloned()
}
