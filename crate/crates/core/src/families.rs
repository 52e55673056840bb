//! The degenerate Bernoulli/Euler families and their cosine/sine variants.
//!
//! Every family is built two ways. [`family`] multiplies generating
//! functions and reads off coefficients; [`family_closed`] evaluates the
//! explicit double sums over Stirling numbers of the first kind. The two
//! routes share only the primitive pieces (falling factorials, the kernel
//! numbers, the plain Bernoulli/Euler polynomials) so agreement between
//! them is a real check.
//!
//! [`Catalog`] caches everything at one truncation order and is safe to
//! share across threads.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::combinat::{gen_falling_factorial, LambdaStep, StirlingKind, StirlingTable};
use crate::egf::{pascal, EgfSeries};
use crate::error::{Error, Result};
use crate::multipoly::{MPoly, Var};
use crate::numeric::{GaussRat, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyKind {
    /// Degenerate Bernoulli numbers `beta_(n,l)`.
    DegBernoulliNum,
    /// Degenerate Euler numbers `E_(n,l)`.
    DegEulerNum,
    /// `beta_(n,l)(x)`: `t / (e_l(t) - 1) * e_l^x(t)`.
    DegBernoulli,
    /// `E_(n,l)(x)`: `2 / (e_l(t) + 1) * e_l^x(t)`.
    DegEuler,
    /// `C_(n,l)(x, y)`: `e_l^x(t) cos_l^(y)(t)`.
    DegCosine,
    /// `S_(n,l)(x, y)`: `e_l^x(t) sin_l^(y)(t)`.
    DegSine,
    DegCosEuler,
    DegSinEuler,
    DegCosBernoulli,
    DegSinBernoulli,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 10] = [
        FamilyKind::DegBernoulliNum,
        FamilyKind::DegEulerNum,
        FamilyKind::DegBernoulli,
        FamilyKind::DegEuler,
        FamilyKind::DegCosine,
        FamilyKind::DegSine,
        FamilyKind::DegCosEuler,
        FamilyKind::DegSinEuler,
        FamilyKind::DegCosBernoulli,
        FamilyKind::DegSinBernoulli,
    ];

    /// The six two-variable cosine/sine families.
    pub const TRIGONOMETRIC: [FamilyKind; 6] = [
        FamilyKind::DegCosine,
        FamilyKind::DegSine,
        FamilyKind::DegCosEuler,
        FamilyKind::DegSinEuler,
        FamilyKind::DegCosBernoulli,
        FamilyKind::DegSinBernoulli,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::DegBernoulliNum => "deg-bernoulli-num",
            FamilyKind::DegEulerNum => "deg-euler-num",
            FamilyKind::DegBernoulli => "deg-bernoulli",
            FamilyKind::DegEuler => "deg-euler",
            FamilyKind::DegCosine => "deg-cosine",
            FamilyKind::DegSine => "deg-sine",
            FamilyKind::DegCosEuler => "deg-cos-euler",
            FamilyKind::DegSinEuler => "deg-sin-euler",
            FamilyKind::DegCosBernoulli => "deg-cos-bernoulli",
            FamilyKind::DegSinBernoulli => "deg-sin-bernoulli",
        }
    }

    fn slot(self) -> usize {
        self as usize
    }

    pub fn is_number(self) -> bool {
        matches!(self, FamilyKind::DegBernoulliNum | FamilyKind::DegEulerNum)
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<FamilyKind> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse {
                what: "family",
                input: s.to_string(),
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kernel {
    /// `t / (e_l(t) - 1)`
    Bernoulli,
    /// `2 / (e_l(t) + 1)`
    Euler,
}

/// `polys[n]` for `n = 0..=order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySequence {
    pub kind: FamilyKind,
    pub order: usize,
    pub polys: Vec<MPoly>,
}

impl FamilySequence {
    pub fn get(&self, n: usize) -> Result<&MPoly> {
        self.polys.get(n).ok_or(Error::IndexOutOfRange {
            index: n,
            max: self.order,
        })
    }
}

fn lambda() -> MPoly {
    MPoly::var(Var::Lambda)
}

fn half() -> Rat {
    Rat::new(1, 2).expect("nonzero denominator")
}

/// `e_l^u(t)`: coefficient `n` is `(u)_(n,l)`.
pub fn deg_exp_series(exponent: &MPoly, order: usize) -> EgfSeries {
    EgfSeries::from_fn(order, |n| {
        gen_falling_factorial(exponent, n, LambdaStep::Falling)
    })
}

/// `(cos_l^(y)(t), sin_l^(y)(t))` from `(e_l^(iy) +- e_l^(-iy)) / 2` and `/ 2i`.
pub fn deg_cos_sin_series(order: usize) -> (EgfSeries, EgfSeries) {
    let iy = &MPoly::i() * &MPoly::var(Var::Y);
    let plus = deg_exp_series(&iy, order);
    let minus = deg_exp_series(&-&iy, order);
    let cos = plus
        .add(&minus)
        .expect("equal orders")
        .scale(&GaussRat::real(half()));
    // 1/(2i) = -i/2
    let sin = plus
        .sub(&minus)
        .expect("equal orders")
        .scale(&GaussRat::new(Rat::zero(), -half()));
    (cos, sin)
}

/// `l^(m-2k) (-1)^k y^(2k) S1(m, 2k)`.
pub(crate) fn cos_atom(s1: &StirlingTable, m: usize, k: usize) -> MPoly {
    let sign = if k.is_multiple_of(2) { 1 } else { -1 };
    let s = s1.get(m, 2 * k).expect("within table");
    &(&lambda().pow((m - 2 * k) as u32) * &MPoly::var(Var::Y).pow(2 * k as u32))
        * &s.scale_rat(&Rat::from(sign))
}

/// `l^(m-2k-1) (-1)^k y^(2k+1) S1(m, 2k+1)`.
pub(crate) fn sin_atom(s1: &StirlingTable, m: usize, k: usize) -> MPoly {
    let sign = if k.is_multiple_of(2) { 1 } else { -1 };
    let s = s1.get(m, 2 * k + 1).expect("within table");
    &(&lambda().pow((m - 2 * k - 1) as u32) * &MPoly::var(Var::Y).pow(2 * k as u32 + 1))
        * &s.scale_rat(&Rat::from(sign))
}

/// Degenerate cosine and sine via their Stirling-number expansions.
pub fn deg_cos_sin_closed(order: usize) -> (EgfSeries, EgfSeries) {
    let s1 = StirlingTable::build(StirlingKind::First, order);
    cos_sin_closed_with(&s1, order)
}

fn cos_sin_closed_with(s1: &StirlingTable, order: usize) -> (EgfSeries, EgfSeries) {
    let cos = EgfSeries::from_fn(order, |n| {
        (0..=n / 2).fold(MPoly::zero(), |acc, k| &acc + &cos_atom(s1, n, k))
    });
    let sin = EgfSeries::from_fn(order, |n| {
        if n == 0 {
            return MPoly::zero();
        }
        (0..=(n - 1) / 2).fold(MPoly::zero(), |acc, k| &acc + &sin_atom(s1, n, k))
    });
    (cos, sin)
}

/// Kernel series whose coefficients are the degenerate Bernoulli or Euler
/// numbers.
pub fn kernel_series(which: Kernel, order: usize) -> EgfSeries {
    let one = MPoly::one();
    let denominator = match which {
        // (e_l(t) - 1)/t, shifted so the constant term is 1
        Kernel::Bernoulli => EgfSeries::from_fn(order, |n| {
            gen_falling_factorial(&one, n + 1, LambdaStep::Falling)
                .scale_rat(&Rat::new(1, n as i64 + 1).expect("n + 1 > 0"))
        }),
        Kernel::Euler => EgfSeries::from_fn(order, |n| {
            let ff = gen_falling_factorial(&one, n, LambdaStep::Falling);
            let bump = if n == 0 { MPoly::one() } else { MPoly::zero() };
            (&ff + &bump).scale_rat(&half())
        }),
    };
    denominator
        .invert()
        .expect("kernel denominators start with 1")
}

/// Cosine sum `sum_k sum_(m=2k..n) C(n,m) cos_atom(m,k) base[n-m]`.
fn cos_double_sum(s1: &StirlingTable, binom: &[Vec<Rat>], base: &[MPoly], n: usize) -> MPoly {
    let mut acc = MPoly::zero();
    for k in 0..=n / 2 {
        for m in 2 * k..=n {
            let term = &cos_atom(s1, m, k) * &base[n - m];
            acc = &acc + &term.scale_rat(&binom[n][m]);
        }
    }
    acc
}

/// Sine sum `sum_k sum_(m=2k+1..n) C(n,m) sin_atom(m,k) base[n-m]`; zero at `n = 0`.
fn sin_double_sum(s1: &StirlingTable, binom: &[Vec<Rat>], base: &[MPoly], n: usize) -> MPoly {
    if n == 0 {
        return MPoly::zero();
    }
    let mut acc = MPoly::zero();
    for k in 0..=(n - 1) / 2 {
        for m in 2 * k + 1..=n {
            let term = &sin_atom(s1, m, k) * &base[n - m];
            acc = &acc + &term.scale_rat(&binom[n][m]);
        }
    }
    acc
}

/// Cached builder for every family at one truncation order.
#[derive(Debug)]
pub struct Catalog {
    order: usize,
    binom: Vec<Vec<Rat>>,
    stirling_first: OnceLock<StirlingTable>,
    stirling_second_deg: OnceLock<StirlingTable>,
    bernoulli_kernel: OnceLock<EgfSeries>,
    euler_kernel: OnceLock<EgfSeries>,
    exp_x: OnceLock<EgfSeries>,
    cos_sin: OnceLock<(EgfSeries, EgfSeries)>,
    series_routes: [OnceLock<EgfSeries>; 10],
    closed_routes: [OnceLock<FamilySequence>; 10],
    complex_euler: OnceLock<EgfSeries>,
    complex_bernoulli: OnceLock<EgfSeries>,
}

impl Catalog {
    pub fn new(order: usize) -> Catalog {
        Catalog {
            order,
            binom: pascal(order),
            stirling_first: OnceLock::new(),
            stirling_second_deg: OnceLock::new(),
            bernoulli_kernel: OnceLock::new(),
            euler_kernel: OnceLock::new(),
            exp_x: OnceLock::new(),
            cos_sin: OnceLock::new(),
            series_routes: Default::default(),
            closed_routes: Default::default(),
            complex_euler: OnceLock::new(),
            complex_bernoulli: OnceLock::new(),
        }
    }

    /// A catalog able to serve degree `n_max` and the `n_max + 1` entries
    /// the difference identities consult.
    pub fn for_degree(n_max: usize, order: usize) -> Result<Catalog> {
        if order < n_max + 1 {
            return Err(Error::OrderTooSmall { n_max, order });
        }
        Ok(Catalog::new(order))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn binom(&self, n: usize, k: usize) -> &Rat {
        &self.binom[n][k]
    }

    pub fn stirling_first(&self) -> &StirlingTable {
        self.stirling_first
            .get_or_init(|| StirlingTable::build(StirlingKind::First, self.order))
    }

    pub fn stirling_second_degenerate(&self) -> &StirlingTable {
        self.stirling_second_deg
            .get_or_init(|| StirlingTable::build(StirlingKind::DegenerateSecond, self.order))
    }

    pub fn kernel(&self, which: Kernel) -> &EgfSeries {
        let cell = match which {
            Kernel::Bernoulli => &self.bernoulli_kernel,
            Kernel::Euler => &self.euler_kernel,
        };
        cell.get_or_init(|| kernel_series(which, self.order))
    }

    pub fn exp_x(&self) -> &EgfSeries {
        self.exp_x
            .get_or_init(|| deg_exp_series(&MPoly::var(Var::X), self.order))
    }

    pub fn cos_sin(&self) -> &(EgfSeries, EgfSeries) {
        self.cos_sin.get_or_init(|| deg_cos_sin_series(self.order))
    }

    fn series_route(&self, kind: FamilyKind) -> &EgfSeries {
        self.series_routes[kind.slot()].get_or_init(|| {
            let mul = |a: &EgfSeries, b: &EgfSeries| a.mul(b).expect("equal orders");
            let (cos, sin) = self.cos_sin();
            match kind {
                FamilyKind::DegBernoulliNum => self
                    .series_route(FamilyKind::DegBernoulli)
                    .map(|p| p.bind(Var::X, &GaussRat::zero())),
                FamilyKind::DegEulerNum => self
                    .series_route(FamilyKind::DegEuler)
                    .map(|p| p.bind(Var::X, &GaussRat::zero())),
                FamilyKind::DegBernoulli => mul(self.kernel(Kernel::Bernoulli), self.exp_x()),
                FamilyKind::DegEuler => mul(self.kernel(Kernel::Euler), self.exp_x()),
                FamilyKind::DegCosine => mul(self.exp_x(), cos),
                FamilyKind::DegSine => mul(self.exp_x(), sin),
                FamilyKind::DegCosEuler => mul(self.series_route(FamilyKind::DegEuler), cos),
                FamilyKind::DegSinEuler => mul(self.series_route(FamilyKind::DegEuler), sin),
                FamilyKind::DegCosBernoulli => {
                    mul(self.series_route(FamilyKind::DegBernoulli), cos)
                }
                FamilyKind::DegSinBernoulli => {
                    mul(self.series_route(FamilyKind::DegBernoulli), sin)
                }
            }
        })
    }

    /// Coefficients of the defining generating function.
    pub fn family(&self, kind: FamilyKind) -> &[MPoly] {
        self.series_route(kind).coeffs()
    }

    /// Shorthand for `family(kind)[n]`; panics past the catalog order.
    pub fn poly(&self, kind: FamilyKind, n: usize) -> &MPoly {
        &self.family(kind)[n]
    }

    pub fn family_sequence(&self, kind: FamilyKind) -> FamilySequence {
        FamilySequence {
            kind,
            order: self.order,
            polys: self.family(kind).to_vec(),
        }
    }

    /// The explicit-sum route. The two number kinds have no such formula.
    pub fn family_closed(&self, kind: FamilyKind) -> Result<&FamilySequence> {
        if kind.is_number() {
            return Err(Error::NoClosedForm(kind.name()));
        }
        Ok(self.closed_routes[kind.slot()].get_or_init(|| self.build_closed(kind)))
    }

    fn build_closed(&self, kind: FamilyKind) -> FamilySequence {
        let s1 = self.stirling_first();
        let x = MPoly::var(Var::X);
        let falling_x: Vec<MPoly> = (0..=self.order)
            .map(|j| gen_falling_factorial(&x, j, LambdaStep::Falling))
            .collect();
        let binom = &self.binom;
        let polys = (0..=self.order)
            .map(|n| match kind {
                FamilyKind::DegBernoulli | FamilyKind::DegEuler => {
                    let which = if kind == FamilyKind::DegBernoulli {
                        Kernel::Bernoulli
                    } else {
                        Kernel::Euler
                    };
                    let numbers = self.kernel(which).coeffs();
                    (0..=n).fold(MPoly::zero(), |acc, l| {
                        &acc + &(&numbers[l] * &falling_x[n - l]).scale_rat(&binom[n][l])
                    })
                }
                FamilyKind::DegCosine => cos_double_sum(s1, binom, &falling_x, n),
                FamilyKind::DegSine => sin_double_sum(s1, binom, &falling_x, n),
                FamilyKind::DegCosEuler => {
                    cos_double_sum(s1, binom, self.family(FamilyKind::DegEuler), n)
                }
                FamilyKind::DegSinEuler => {
                    sin_double_sum(s1, binom, self.family(FamilyKind::DegEuler), n)
                }
                FamilyKind::DegCosBernoulli => {
                    cos_double_sum(s1, binom, self.family(FamilyKind::DegBernoulli), n)
                }
                FamilyKind::DegSinBernoulli => {
                    sin_double_sum(s1, binom, self.family(FamilyKind::DegBernoulli), n)
                }
                FamilyKind::DegBernoulliNum | FamilyKind::DegEulerNum => {
                    unreachable!("rejected by family_closed")
                }
            })
            .collect();
        FamilySequence {
            kind,
            order: self.order,
            polys,
        }
    }

    /// Stirling-sum form of the degenerate cosine and sine series.
    pub fn cos_sin_closed(&self) -> (EgfSeries, EgfSeries) {
        cos_sin_closed_with(self.stirling_first(), self.order)
    }

    fn complex_series(&self, which: Kernel) -> &EgfSeries {
        let cell = match which {
            Kernel::Bernoulli => &self.complex_bernoulli,
            Kernel::Euler => &self.complex_euler,
        };
        cell.get_or_init(|| {
            let z = &MPoly::var(Var::X) + &(&MPoly::i() * &MPoly::var(Var::Y));
            self.kernel(which)
                .mul(&deg_exp_series(&z, self.order))
                .expect("equal orders")
        })
    }

    /// `E_(n,l)(x + iy)` in `Q(i)[l, x, y]`.
    pub fn complex_euler(&self, n: usize) -> Result<&MPoly> {
        self.complex_series(Kernel::Euler).coefficient(n)
    }

    /// `beta_(n,l)(x + iy)` in `Q(i)[l, x, y]`.
    pub fn complex_bernoulli(&self, n: usize) -> Result<&MPoly> {
        self.complex_series(Kernel::Bernoulli).coefficient(n)
    }
}

/// Series route for one family at truncation order `order`.
pub fn family(kind: FamilyKind, order: usize) -> FamilySequence {
    Catalog::new(order).family_sequence(kind)
}

/// Closed-form route for one family at truncation order `order`.
pub fn family_closed(kind: FamilyKind, order: usize) -> Result<FamilySequence> {
    Catalog::new(order).family_closed(kind).cloned()
}

pub fn complex_euler(n: usize, order: usize) -> Result<MPoly> {
    Catalog::new(order).complex_euler(n).cloned()
}

pub fn complex_bernoulli(n: usize, order: usize) -> Result<MPoly> {
    Catalog::new(order).complex_bernoulli(n).cloned()
}
