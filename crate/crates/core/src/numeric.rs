//! Exact rationals and Gaussian rationals.
//!
//! [`Rat`] wraps an arbitrary-precision rational kept in lowest terms with a
//! positive denominator. [`GaussRat`] is `re + im*i` over [`Rat`]. Neither
//! type implements `Div`: division goes through `checked_div` so a zero
//! divisor surfaces as [`Error::DivisionByZero`] instead of a panic.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rat(BigRational);

impl Rat {
    /// Builds `num/den`, reducing to lowest terms.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Rat> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat(BigRational::new(num.into(), den)))
    }

    pub fn integer(n: impl Into<BigInt>) -> Rat {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn checked_div(&self, rhs: &Rat) -> Result<Rat> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Rat> {
        Rat::one().checked_div(self)
    }

    pub fn pow(&self, exp: u32) -> Rat {
        let mut acc = Rat::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::integer(n)
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Rat {
        Rat::integer(n)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rat> {
        let bad = || Error::Parse {
            what: "rational",
            input: s.to_string(),
        };
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        Rat::new(num, den)
    }
}

macro_rules! forward_binop {
    ($ty:ident, $trait:ident, $method:ident, $body:expr) => {
        impl<'a> $trait<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn $method(self, rhs: &'a $ty) -> $ty {
                let f: fn(&$ty, &$ty) -> $ty = $body;
                f(self, rhs)
            }
        }
        impl $trait<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a $ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &'a $ty) -> $ty {
                (&self).$method(rhs)
            }
        }
    };
}
pub(crate) use forward_binop;

forward_binop!(Rat, Add, add, |a, b| Rat(&a.0 + &b.0));
forward_binop!(Rat, Sub, sub, |a, b| Rat(&a.0 - &b.0));
forward_binop!(Rat, Mul, mul, |a, b| Rat(&a.0 * &b.0));

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

/// Gaussian rational `re + im*i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> GaussRat {
        GaussRat { re, im }
    }

    pub fn real(re: Rat) -> GaussRat {
        GaussRat {
            re,
            im: Rat::zero(),
        }
    }

    pub fn integer(n: i64) -> GaussRat {
        GaussRat::real(Rat::from(n))
    }

    pub fn zero() -> GaussRat {
        GaussRat::default()
    }

    pub fn one() -> GaussRat {
        GaussRat::real(Rat::one())
    }

    /// The imaginary unit.
    pub fn i() -> GaussRat {
        GaussRat::new(Rat::zero(), Rat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> GaussRat {
        GaussRat::new(self.re.clone(), -&self.im)
    }

    /// `re^2 + im^2`.
    pub fn norm_sqr(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn checked_div(&self, rhs: &GaussRat) -> Result<GaussRat> {
        let norm = rhs.norm_sqr();
        if norm.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let num = self * &rhs.conj();
        Ok(GaussRat::new(
            num.re.checked_div(&norm)?,
            num.im.checked_div(&norm)?,
        ))
    }

    pub fn scale(&self, k: &Rat) -> GaussRat {
        GaussRat::new(&self.re * k, &self.im * k)
    }

    /// Multiplication by `i`: `(a + bi) i = -b + ai`.
    pub fn mul_i(&self) -> GaussRat {
        GaussRat::new(-&self.im, self.re.clone())
    }
}

impl From<Rat> for GaussRat {
    fn from(r: Rat) -> GaussRat {
        GaussRat::real(r)
    }
}

impl From<i64> for GaussRat {
    fn from(n: i64) -> GaussRat {
        GaussRat::integer(n)
    }
}

forward_binop!(GaussRat, Add, add, |a, b| GaussRat::new(
    &a.re + &b.re,
    &a.im + &b.im
));
forward_binop!(GaussRat, Sub, sub, |a, b| GaussRat::new(
    &a.re - &b.re,
    &a.im - &b.im
));
forward_binop!(GaussRat, Mul, mul, |a, b| {
    // most coefficients in practice are real
    match (a.im.is_zero(), b.im.is_zero()) {
        (true, true) => GaussRat::real(&a.re * &b.re),
        (true, false) => b.scale(&a.re),
        (false, true) => a.scale(&b.re),
        (false, false) => {
            GaussRat::new(&a.re * &b.re - &a.im * &b.im, &a.re * &b.im + &a.im * &b.re)
        }
    }
});

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re, -self.im)
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-&self.re, -&self.im)
    }
}

impl AddAssign<&GaussRat> for GaussRat {
    fn add_assign(&mut self, rhs: &GaussRat) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussRat> for GaussRat {
    fn sub_assign(&mut self, rhs: &GaussRat) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

fn fmt_imag(f: &mut fmt::Formatter<'_>, im: &Rat) -> fmt::Result {
    if im.is_one() {
        write!(f, "i")
    } else {
        write!(f, "{im}*i")
    }
}

/// `re`, `im*i`, or `re+im*i` / `re-im*i`; a unit imaginary part prints as `i`.
impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => {
                if self.im.is_negative() {
                    write!(f, "-")?;
                }
                fmt_imag(f, &self.im.abs())
            }
            (false, false) => {
                write!(f, "{}", self.re)?;
                write!(f, "{}", if self.im.is_negative() { "-" } else { "+" })?;
                fmt_imag(f, &self.im.abs())
            }
        }
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n, d).unwrap()
    }

    #[test]
    fn rational_arithmetic() {
        assert_eq!(q(1, 2) + q(1, 3), q(5, 6));
        assert_eq!(q(2, 4) * Rat::one(), q(1, 2));
        assert_eq!(q(2, 4).numer(), &BigInt::from(1));
        assert_eq!(q(2, 4).denom(), &BigInt::from(2));
        assert_eq!(
            Rat::one().checked_div(&Rat::zero()),
            Err(Error::DivisionByZero)
        );
        assert_eq!(Rat::new(1, 0), Err(Error::DivisionByZero));
    }

    #[test]
    fn zero_is_canonical() {
        let z = q(0, -7);
        assert_eq!(z.numer(), &BigInt::from(0));
        assert_eq!(z.denom(), &BigInt::from(1));
        assert_eq!(z, Rat::zero());
    }

    #[test]
    fn negative_denominator_moves_sign() {
        let r = q(3, -6);
        assert_eq!(r.to_string(), "-1/2");
        assert!(r.denom() > &BigInt::from(0));
    }

    #[test]
    fn rational_text_form() {
        assert_eq!(q(6, 3).to_string(), "2");
        assert_eq!(q(-691, 2730).to_string(), "-691/2730");
        assert_eq!("-691/2730".parse::<Rat>().unwrap(), q(-691, 2730));
        assert_eq!(" 4 / 8 ".parse::<Rat>().unwrap(), q(1, 2));
        assert!("1/0".parse::<Rat>().is_err());
        assert!("abc".parse::<Rat>().is_err());
    }

    #[test]
    fn gaussian_arithmetic() {
        let i = GaussRat::i();
        assert_eq!(&i * &i, GaussRat::integer(-1));
        let z = GaussRat::new(q(3, 2), q(5, 1));
        assert_eq!(z.conj(), GaussRat::new(q(3, 2), q(-5, 1)));
        let a = GaussRat::new(q(1, 1), q(1, 1));
        let b = GaussRat::new(q(1, 1), q(-1, 1));
        assert_eq!(a.checked_div(&b).unwrap(), i);
        assert_eq!(a.checked_div(&GaussRat::zero()), Err(Error::DivisionByZero));
        assert_eq!(a.mul_i(), &a * &i);
    }

    #[test]
    fn gaussian_text_form() {
        assert_eq!(GaussRat::new(q(3, 2), q(-5, 1)).to_string(), "3/2-5*i");
        assert_eq!(GaussRat::new(q(1, 1), q(1, 1)).to_string(), "1+i");
        assert_eq!(GaussRat::new(q(0, 1), q(-1, 2)).to_string(), "-1/2*i");
        assert_eq!(GaussRat::i().to_string(), "i");
        assert_eq!(GaussRat::zero().to_string(), "0");
    }

    #[test]
    fn binomials_and_factorials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 4), BigInt::from(0));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(10), BigInt::from(3628800));
        let row: BigInt = (0..=20).map(|k| binomial(20, k)).sum();
        assert_eq!(row, BigInt::from(1u64 << 20));
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (-50i64..50, 1i64..30).prop_map(|(n, d)| q(n, d))
    }

    fn arb_gauss() -> impl Strategy<Value = GaussRat> {
        (arb_rat(), arb_rat()).prop_map(|(re, im)| GaussRat::new(re, im))
    }

    proptest! {
        #[test]
        fn rat_round_trips(a in arb_rat(), b in arb_rat()) {
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!((&a * &b).checked_div(&b).unwrap(), a.clone());
            }
            prop_assert_eq!(a.to_string().parse::<Rat>().unwrap(), a);
        }

        #[test]
        fn canonical_form_is_idempotent(n in -1000i64..1000, d in 1i64..1000) {
            let r = q(n, d);
            let again = Rat::new(r.numer().clone(), r.denom().clone()).unwrap();
            prop_assert_eq!(&again, &r);
            prop_assert_eq!(again.numer(), r.numer());
            prop_assert_eq!(again.denom(), r.denom());
        }

        #[test]
        fn gauss_round_trips(a in arb_gauss(), b in arb_gauss()) {
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!((&a * &b).checked_div(&b).unwrap(), a.clone());
            }
        }

        #[test]
        fn conj_is_a_ring_homomorphism(a in arb_gauss(), b in arb_gauss()) {
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
            prop_assert_eq!(a.conj().conj(), a);
        }
    }
}
