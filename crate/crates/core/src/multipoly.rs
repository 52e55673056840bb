//! Sparse polynomials over the Gaussian rationals in the fixed variables
//! `l` (the degeneracy parameter λ), `x`, `y` and `r`.
//!
//! The imaginary unit only ever appears inside coefficients, which makes
//! coefficient-wise conjugation a ring homomorphism and lets
//! [`MPoly::split_real_imag`] read off real and imaginary parts directly.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::numeric::{forward_binop, GaussRat, Rat};

/// One of the four ring variables, in storage order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Lambda,
    X,
    Y,
    R,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::Lambda, Var::X, Var::Y, Var::R];

    pub fn index(self) -> usize {
        self as usize
    }

    /// ASCII spelling used in text output; λ is written `l`.
    pub fn symbol(self) -> &'static str {
        match self {
            Var::Lambda => "l",
            Var::X => "x",
            Var::Y => "y",
            Var::R => "r",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Exponent vector `(e_l, e_x, e_y, e_r)`.
///
/// Ordered by total degree first; ties are broken on the exponents of
/// `x`, `y`, `r` and finally `l`, so the degeneracy parameter is the least
/// significant variable. Text output lists terms from the largest monomial
/// down, e.g. `x^2 - l*x - y^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; 4]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 4]);

    pub fn var(v: Var) -> Monomial {
        let mut e = [0; 4];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; 4]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }

    fn without(&self, v: Var) -> Monomial {
        let mut e = self.0;
        e[v.index()] = 0;
        Monomial(e)
    }

    fn sort_key(&self) -> (u32, u32, u32, u32, u32) {
        let [l, x, y, r] = self.0;
        (self.total_degree(), x, y, r, l)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for v in Var::ALL {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(v.symbol())?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial in `Q(i)[l, x, y, r]`. Never stores a zero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, GaussRat>,
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly::default()
    }

    pub fn one() -> MPoly {
        MPoly::constant(GaussRat::one())
    }

    pub fn constant(c: impl Into<GaussRat>) -> MPoly {
        MPoly::term(c, Monomial::ONE)
    }

    pub fn var(v: Var) -> MPoly {
        MPoly::term(GaussRat::one(), Monomial::var(v))
    }

    pub fn term(c: impl Into<GaussRat>, m: Monomial) -> MPoly {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    /// The imaginary unit as a constant polynomial.
    pub fn i() -> MPoly {
        MPoly::constant(GaussRat::i())
    }

    pub fn from_terms<I>(terms: I) -> MPoly
    where
        I: IntoIterator<Item = (Monomial, GaussRat)>,
    {
        let mut p = MPoly::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussRat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> GaussRat {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> GaussRat {
        self.coeff(&Monomial::ONE)
    }

    /// `None` stands in for the degree of the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(v)).max()
    }

    /// Variables with a nonzero exponent somewhere in the polynomial.
    pub fn variables(&self) -> Vec<Var> {
        Var::ALL
            .into_iter()
            .filter(|v| self.terms.keys().any(|m| m.exp(*v) > 0))
            .collect()
    }

    fn add_term(&mut self, m: Monomial, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(acc) => {
                *acc += c;
                if acc.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &GaussRat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn scale_rat(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a.scale(c))).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> MPoly {
        let mut acc = MPoly::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Image under the ring map sending `var` to `replacement` and fixing
    /// every other variable.
    pub fn substitute(&self, var: Var, replacement: &MPoly) -> MPoly {
        // group terms by the exponent of `var`, then combine with powers
        // of the replacement computed once each
        let mut groups: BTreeMap<u32, MPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            groups
                .entry(m.exp(var))
                .or_default()
                .add_term(m.without(var), c);
        }
        let mut out = MPoly::zero();
        let mut power = MPoly::one();
        let mut at = 0;
        for (e, rest) in groups {
            while at < e {
                power = &power * replacement;
                at += 1;
            }
            out = &out + &(&rest * &power);
        }
        out
    }

    /// Binds `var` to a constant.
    pub fn bind(&self, var: Var, value: &GaussRat) -> MPoly {
        self.substitute(var, &MPoly::constant(value.clone()))
    }

    /// Coefficient-wise complex conjugation.
    pub fn conj(&self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c.conj())).collect(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(GaussRat::is_real)
    }

    /// `(re, im)` with real coefficients such that `self = re + i*im`.
    pub fn split_real_imag(&self) -> (MPoly, MPoly) {
        let mut re = MPoly::zero();
        let mut im = MPoly::zero();
        for (m, c) in &self.terms {
            re.add_term(*m, &GaussRat::real(c.re.clone()));
            im.add_term(*m, &GaussRat::real(c.im.clone()));
        }
        (re, im)
    }

    /// Exact value at a point; every variable present must be bound.
    pub fn eval(&self, at: &BTreeMap<Var, GaussRat>) -> Result<GaussRat> {
        if let Some(v) = self.variables().into_iter().find(|v| !at.contains_key(v)) {
            return Err(Error::UnboundVariable(v));
        }
        let mut total = GaussRat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in Var::ALL {
                for _ in 0..m.exp(v) {
                    t = &t * &at[&v];
                }
            }
            total += &t;
        }
        Ok(total)
    }
}

forward_binop!(MPoly, Add, add, |a, b| {
    let mut out = a.clone();
    for (m, c) in &b.terms {
        out.add_term(*m, c);
    }
    out
});

forward_binop!(MPoly, Sub, sub, |a, b| {
    let mut out = a.clone();
    for (m, c) in &b.terms {
        out.add_term(*m, &-c);
    }
    out
});

forward_binop!(MPoly, Mul, mul, |a, b| {
    let mut out = MPoly::zero();
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            out.add_term(ma.mul(mb), &(ca * cb));
        }
    }
    out
});

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl From<GaussRat> for MPoly {
    fn from(c: GaussRat) -> MPoly {
        MPoly::constant(c)
    }
}

impl From<Rat> for MPoly {
    fn from(c: Rat) -> MPoly {
        MPoly::constant(c)
    }
}

impl From<i64> for MPoly {
    fn from(n: i64) -> MPoly {
        MPoly::constant(n)
    }
}

impl From<Var> for MPoly {
    fn from(v: Var) -> MPoly {
        MPoly::var(v)
    }
}

/// Splits a coefficient into a sign and the text of its magnitude.
fn signed_magnitude(c: &GaussRat) -> (bool, String, bool) {
    if c.im.is_zero() {
        let mag = c.re.abs();
        (c.re.is_negative(), mag.to_string(), mag.is_one())
    } else if c.re.is_zero() {
        let mag = c.im.abs();
        let text = if mag.is_one() {
            "i".to_string()
        } else {
            format!("{mag}*i")
        };
        (c.im.is_negative(), text, false)
    } else {
        (false, format!("({c})"), false)
    }
}

/// Canonical text, largest monomial first, e.g. `x^2 - 1/2*l*x - y^2`.
impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let (negative, mag, unit) = signed_magnitude(c);
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&mag)?;
            } else if unit {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn l() -> MPoly {
        MPoly::var(Var::Lambda)
    }
    fn x() -> MPoly {
        MPoly::var(Var::X)
    }
    fn y() -> MPoly {
        MPoly::var(Var::Y)
    }
    fn c(n: i64) -> MPoly {
        MPoly::from(n)
    }
    fn half() -> Rat {
        Rat::new(1, 2).unwrap()
    }

    #[test]
    fn ring_arithmetic_examples() {
        let p = &x() * &(&x() - &l());
        assert_eq!(p.to_string(), "x^2 - l*x");
        let y2 = y().pow(2);
        assert!((&y2 + &(-&y2)).is_zero());
        let z = &x() + &(&MPoly::i() * &y());
        assert_eq!(z.scale(&GaussRat::i()), &(&MPoly::i() * &x()) - &y());
        assert_eq!(z.scale(&GaussRat::i()).to_string(), "i*x - y");
    }

    #[test]
    fn text_form_matches_golden_layout() {
        let p = &(&x().pow(2) - &(&l() * &x()).scale_rat(&half())) - &y().pow(2);
        assert_eq!(p.to_string(), "x^2 - 1/2*l*x - y^2");
        assert_eq!(MPoly::zero().to_string(), "0");
        assert_eq!((-&c(3)).to_string(), "-3");
        let cplx = MPoly::constant(GaussRat::new(Rat::from(1), Rat::from(-2)));
        assert_eq!((&cplx * &x()).to_string(), "(1-2*i)*x");
        assert_eq!((&x() - &MPoly::constant(half())).to_string(), "x - 1/2");
    }

    #[test]
    fn degree_sentinel() {
        assert_eq!(MPoly::zero().total_degree(), None);
        assert_eq!(c(5).total_degree(), Some(0));
        assert_eq!((&l() * &x().pow(2)).total_degree(), Some(3));
    }

    #[test]
    fn substitution_examples() {
        let p = &x().pow(2) - &(&l() * &x());
        assert_eq!(p.substitute(Var::Lambda, &MPoly::zero()), x().pow(2));
        let q = x().pow(2).substitute(Var::X, &(&c(1) - &x()));
        assert_eq!(q, &(&c(1) - &x().scale_rat(&Rat::from(2))) + &x().pow(2));
        let s = (&l() * &y().pow(2)).substitute(Var::Lambda, &-&l());
        assert_eq!(s, -&(&l() * &y().pow(2)));
    }

    #[test]
    fn split_examples() {
        let p = &(&MPoly::i() * &x()) - &y();
        assert_eq!(p.split_real_imag(), (-&y(), x()));
        let q = &x().pow(2) + &y().scale_rat(&Rat::from(3));
        assert_eq!(q.split_real_imag(), (q.clone(), MPoly::zero()));
        let iy = &MPoly::i() * &y();
        let prod = &(&x() + &iy) * &(&x() - &iy);
        assert_eq!(
            prod.split_real_imag(),
            (&x().pow(2) + &y().pow(2), MPoly::zero())
        );
    }

    #[test]
    fn eval_examples() {
        let p = &x().pow(2) - &(&l() * &x());
        let mut at = BTreeMap::new();
        at.insert(Var::X, GaussRat::integer(2));
        at.insert(Var::Lambda, GaussRat::real(half()));
        assert_eq!(p.eval(&at).unwrap(), GaussRat::integer(3));
        assert_eq!(
            MPoly::zero().eval(&BTreeMap::new()).unwrap(),
            GaussRat::zero()
        );
        let mut only_x = BTreeMap::new();
        only_x.insert(Var::X, GaussRat::one());
        assert_eq!(
            y().pow(2).eval(&only_x),
            Err(Error::UnboundVariable(Var::Y))
        );
    }

    fn arb_coeff() -> impl Strategy<Value = GaussRat> {
        (-4i64..5, -2i64..3, 1i64..4)
            .prop_map(|(a, b, d)| GaussRat::new(Rat::new(a, d).unwrap(), Rat::new(b, d).unwrap()))
    }

    fn arb_poly() -> impl Strategy<Value = MPoly> {
        prop::collection::vec((arb_coeff(), 0u32..3, 0u32..3, 0u32..3, 0u32..2), 0..5).prop_map(
            |ts| {
                MPoly::from_terms(
                    ts.into_iter()
                        .map(|(c, a, b, d, e)| (Monomial([a, b, d, e]), c)),
                )
            },
        )
    }

    fn arb_var() -> impl Strategy<Value = Var> {
        prop::sample::select(Var::ALL.to_vec())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_axioms(p in arb_poly(), q in arb_poly(), s in arb_poly()) {
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert_eq!(&(&p * &q) * &s, &p * &(&q * &s));
            prop_assert_eq!(&p * &(&q + &s), &(&p * &q) + &(&p * &s));
            prop_assert!((&p - &p).is_zero());
        }

        #[test]
        fn no_zero_coefficients_stored(p in arb_poly(), q in arb_poly()) {
            for r in [&p * &q, &p - &q, &p + &q] {
                prop_assert!(r.terms().all(|(_, c)| !c.is_zero()));
            }
        }

        #[test]
        fn identity_substitution(p in arb_poly(), v in arb_var()) {
            prop_assert_eq!(p.substitute(v, &MPoly::var(v)), p);
        }

        #[test]
        fn substitution_is_multiplicative(p in arb_poly(), q in arb_poly(), v in arb_var(), rep in arb_poly()) {
            prop_assert_eq!(
                (&p * &q).substitute(v, &rep),
                &p.substitute(v, &rep) * &q.substitute(v, &rep)
            );
            prop_assert_eq!(
                (&p + &q).substitute(v, &rep),
                &p.substitute(v, &rep) + &q.substitute(v, &rep)
            );
        }

        #[test]
        fn split_reconstructs(p in arb_poly()) {
            let (re, im) = p.split_real_imag();
            prop_assert!(re.is_real() && im.is_real());
            prop_assert_eq!(&re + &(&MPoly::i() * &im), p.clone());
            // (p + conj p)/2 form
            prop_assert_eq!((&p + &p.conj()).scale_rat(&half()), re);
        }
    }
}
