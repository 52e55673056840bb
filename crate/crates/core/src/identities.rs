//! Identity checker.
//!
//! Each [`IdentityId`] names one relation between the families. A check
//! builds both sides as polynomials through independent routes and
//! subtracts them; the verdict is `holds` exactly when the difference is
//! the zero polynomial. There is no tolerance anywhere.
//!
//! Notation used in citations: `E_{n,l}(x)` and `B_{n,l}(x)` are the
//! degenerate Euler and Bernoulli polynomials (`E_{n,l}`, `B_{n,l}` the
//! numbers), `Ec/Es` and `Bc/Bs` their cosine/sine variants, `C_{n,l}` and
//! `S_{n,l}` the degenerate cosine/sine polynomials, `(u)_{n,l}` and
//! `<u>_{n,l}` the falling and rising generalized factorials, `(x)_l` the
//! ordinary falling factorial, `S1` and `S2_l` the Stirling numbers.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::combinat::{falling_factorial, gen_falling_factorial, LambdaStep};
use crate::egf::EgfSeries;
use crate::error::{Error, Result};
use crate::families::{cos_atom, sin_atom, Catalog, FamilyKind};
use crate::multipoly::{MPoly, Var};
use crate::numeric::{GaussRat, Rat};

macro_rules! identity_ids {
    ($($variant:ident => $tag:literal),+ $(,)?) => {
        /// Every checkable identity, in report order.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum IdentityId {
            $($variant),+
        }

        impl IdentityId {
            pub const ALL: &'static [IdentityId] = &[$(IdentityId::$variant),+];

            /// Stable wire tag used by the CLI filter and in reports.
            pub fn tag(self) -> &'static str {
                match self {
                    $(IdentityId::$variant => $tag),+
                }
            }
        }
    };
}

identity_ids! {
    ComplexEulerExpansion => "T1_expand",
    ConjugateEulerExpansion => "T1_conj",
    CosineClosedForm => "T2_cos",
    SineClosedForm => "T2_sin",
    CosEulerClosedForm => "T3_cos",
    SinEulerClosedForm => "T3_sin",
    CosineFromCosEuler => "T4_cos",
    SineFromSinEuler => "T4_sin",
    CosEulerShift => "P5_shift_cos",
    SinEulerShift => "P5_shift_sin",
    CosEulerReflection => "T6_reflect_cos",
    SinEulerReflection => "T6_reflect_sin",
    CosBernoulliClosedForm => "TB_closed_cos",
    SinBernoulliClosedForm => "TB_closed_sin",
    CosBernoulliReflection => "T8_reflect_cos",
    SinBernoulliReflection => "T8_reflect_sin",
    CosBernoulliShift => "E57_shift_cos",
    SinBernoulliShift => "E58_shift_sin",
    CosineDifference => "T9_diff_cos",
    SineDifference => "T9_diff_sin",
    CosineBernoulliSum => "C10_cos",
    SineBernoulliSum => "C10_sin",
    BernoulliAtXZero => "E61_E62_x0",
    CosEulerStirling => "T7_stirling_euler_cos",
    SinEulerStirling => "T7_stirling_euler_sin",
    CosBernoulliStirling => "E63_stirling_bern_cos",
    SinBernoulliStirling => "E63_stirling_bern_sin",
    ClassicalLimits => "L0_classical_limits",
    Decomposition => "D_decomposition",
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<IdentityId> {
        IdentityId::ALL
            .iter()
            .copied()
            .find(|id| id.tag() == s)
            .ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    /// Holds once a misprinted coefficient is replaced by its variant.
    HoldsVariant,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::HoldsVariant => "holds_variant",
        }
    }

    pub fn is_success(self) -> bool {
        self != Verdict::Fails
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of one identity at one degree. Identities with several
/// displays produce one report per display, told apart by `part`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub n: usize,
    pub part: &'static str,
    pub verdict: Verdict,
    /// `lhs - rhs`; zero unless the verdict is `fails`.
    pub residual: MPoly,
    pub citation: &'static str,
    pub variant_note: Option<String>,
    /// Residual of the rejected reading, attached to variant checks.
    pub variant_residual: Option<MPoly>,
}

/// Serialized form of an [`IdentityReport`]; field order is fixed.
#[derive(Debug, Serialize)]
pub struct ReportRecord<'a> {
    pub id: &'static str,
    pub n: usize,
    pub part: &'static str,
    pub verdict: Verdict,
    pub residual: String,
    pub citation: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant_note: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant_residual: Option<String>,
}

impl IdentityReport {
    pub fn record(&self) -> ReportRecord<'_> {
        ReportRecord {
            id: self.id.tag(),
            n: self.n,
            part: self.part,
            verdict: self.verdict,
            residual: self.residual.to_string(),
            citation: self.citation,
            variant_note: self.variant_note.as_deref(),
            variant_residual: self.variant_residual.as_ref().map(ToString::to_string),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub n_max: usize,
    pub order: usize,
    pub checks: usize,
    pub holds: usize,
    pub holds_variant: usize,
    pub fails: usize,
    /// Tags with at least one `holds_variant` report.
    pub variant_tags: Vec<&'static str>,
    pub success: bool,
}

impl Summary {
    pub fn from_reports(reports: &[IdentityReport], n_max: usize, order: usize) -> Summary {
        let count = |v: Verdict| reports.iter().filter(|r| r.verdict == v).count();
        let mut variant_tags: Vec<&'static str> = reports
            .iter()
            .filter(|r| r.verdict == Verdict::HoldsVariant)
            .map(|r| r.id.tag())
            .collect();
        variant_tags.dedup();
        let fails = count(Verdict::Fails);
        Summary {
            n_max,
            order,
            checks: reports.len(),
            holds: count(Verdict::Holds),
            holds_variant: count(Verdict::HoldsVariant),
            fails,
            variant_tags,
            success: fails == 0,
        }
    }
}

/// One display to compare at one degree.
struct Side {
    part: &'static str,
    citation: &'static str,
    lhs: MPoly,
    rhs: MPoly,
}

impl Side {
    fn new(part: &'static str, citation: &'static str, lhs: MPoly, rhs: MPoly) -> Side {
        Side {
            part,
            citation,
            lhs,
            rhs,
        }
    }
}

fn x() -> MPoly {
    MPoly::var(Var::X)
}

fn y() -> MPoly {
    MPoly::var(Var::Y)
}

fn iy() -> MPoly {
    &MPoly::i() * &y()
}

fn sign(e: usize) -> Rat {
    Rat::from(if e.is_multiple_of(2) { 1 } else { -1 })
}

fn ff(u: &MPoly, n: usize) -> MPoly {
    gen_falling_factorial(u, n, LambdaStep::Falling)
}

fn rf(u: &MPoly, n: usize) -> MPoly {
    gen_falling_factorial(u, n, LambdaStep::Rising)
}

fn inv(n: usize) -> Rat {
    Rat::new(1, n as i64).expect("positive")
}

fn sum<I: IntoIterator<Item = MPoly>>(terms: I) -> MPoly {
    terms.into_iter().fold(MPoly::zero(), |acc, t| &acc + &t)
}

use FamilyKind::*;

/// Families at `l = 0` built from the ordinary kernels `t/(e^t - 1)`,
/// `2/(e^t + 1)` and the ordinary `e^(xt)`, `cos(yt)`, `sin(yt)`. Nothing
/// here goes through the degenerate constructions.
pub fn classical_family(kind: FamilyKind, order: usize) -> Vec<MPoly> {
    let bern_kernel = EgfSeries::from_fn(order, |n| MPoly::constant(inv(n + 1)))
        .invert()
        .expect("constant term 1");
    let euler_kernel = EgfSeries::from_fn(order, |n| {
        if n == 0 {
            MPoly::one()
        } else {
            MPoly::constant(inv(2))
        }
    })
    .invert()
    .expect("constant term 1");
    let exp_x = EgfSeries::from_fn(order, |n| x().pow(n as u32));
    let cos_y = EgfSeries::from_fn(order, |n| {
        if n % 2 == 0 {
            y().pow(n as u32).scale_rat(&sign(n / 2))
        } else {
            MPoly::zero()
        }
    });
    let sin_y = EgfSeries::from_fn(order, |n| {
        if n % 2 == 1 {
            y().pow(n as u32).scale_rat(&sign(n / 2))
        } else {
            MPoly::zero()
        }
    });
    let mul = |a: &EgfSeries, b: &EgfSeries| a.mul(b).expect("equal orders");
    let series = match kind {
        DegBernoulliNum => bern_kernel,
        DegEulerNum => euler_kernel,
        DegBernoulli => mul(&bern_kernel, &exp_x),
        DegEuler => mul(&euler_kernel, &exp_x),
        DegCosine => mul(&exp_x, &cos_y),
        DegSine => mul(&exp_x, &sin_y),
        DegCosEuler => mul(&mul(&euler_kernel, &exp_x), &cos_y),
        DegSinEuler => mul(&mul(&euler_kernel, &exp_x), &sin_y),
        DegCosBernoulli => mul(&mul(&bern_kernel, &exp_x), &cos_y),
        DegSinBernoulli => mul(&mul(&bern_kernel, &exp_x), &sin_y),
    };
    series.into_coeffs()
}

/// Runs identity checks against one cached [`Catalog`].
#[derive(Debug)]
pub struct Verifier {
    catalog: Catalog,
    classical: OnceLock<Vec<Vec<MPoly>>>,
}

impl Verifier {
    pub fn new(order: usize) -> Verifier {
        Verifier {
            catalog: Catalog::new(order),
            classical: OnceLock::new(),
        }
    }

    pub fn catalog(&self) -> &Catalog {
        &self.catalog
    }

    pub fn order(&self) -> usize {
        self.catalog.order()
    }

    fn fam(&self, kind: FamilyKind) -> &[MPoly] {
        self.catalog.family(kind)
    }

    fn closed(&self, kind: FamilyKind, n: usize) -> &MPoly {
        &self
            .catalog
            .family_closed(kind)
            .expect("polynomial kinds have closed forms")
            .polys[n]
    }

    fn classical(&self, kind: FamilyKind) -> &[MPoly] {
        &self.classical.get_or_init(|| {
            FamilyKind::ALL
                .iter()
                .map(|k| classical_family(*k, self.order()))
                .collect()
        })[FamilyKind::ALL
            .iter()
            .position(|k| *k == kind)
            .expect("listed kind")]
    }

    fn binom(&self, n: usize, k: usize) -> &Rat {
        self.catalog.binom(n, k)
    }

    /// Checks `id` for every `n` in `0..=n_max`.
    pub fn verify(&self, id: IdentityId, n_max: usize) -> Result<Vec<IdentityReport>> {
        if self.order() < n_max + 1 {
            return Err(Error::OrderTooSmall {
                n_max,
                order: self.order(),
            });
        }
        if matches!(
            id,
            IdentityId::CosEulerStirling | IdentityId::SinEulerStirling
        ) {
            return Ok(self.verify_stirling_euler(id, n_max));
        }
        let per_degree: Vec<Vec<IdentityReport>> = (0..=n_max)
            .into_par_iter()
            .map(|n| {
                self.sides(id, n)
                    .into_iter()
                    .map(|side| plain_report(id, n, side))
                    .collect()
            })
            .collect();
        Ok(per_degree.into_iter().flatten().collect())
    }

    /// Checks every identity in `ids`, reports ordered by `(id, n, part)`.
    pub fn verify_many(&self, ids: &[IdentityId], n_max: usize) -> Result<Vec<IdentityReport>> {
        let mut ids = ids.to_vec();
        ids.sort();
        ids.dedup();
        let batches: Vec<Vec<IdentityReport>> = ids
            .par_iter()
            .map(|id| self.verify(*id, n_max))
            .collect::<Result<_>>()?;
        Ok(batches.into_iter().flatten().collect())
    }

    fn sides(&self, id: IdentityId, n: usize) -> Vec<Side> {
        use IdentityId as I;
        match id {
            I::ComplexEulerExpansion => self.complex_euler_expansion(n),
            I::ConjugateEulerExpansion => self.conjugate_euler_expansion(n),
            I::CosineClosedForm => self.trig_closed_form(DegCosine, n),
            I::SineClosedForm => self.trig_closed_form(DegSine, n),
            I::CosEulerClosedForm => self.kernel_closed_form(DegCosEuler, n),
            I::SinEulerClosedForm => self.kernel_closed_form(DegSinEuler, n),
            I::CosineFromCosEuler => self.trig_from_euler(DegCosine, n),
            I::SineFromSinEuler => self.trig_from_euler(DegSine, n),
            I::CosEulerShift => self.shift(DegCosEuler, n),
            I::SinEulerShift => self.shift(DegSinEuler, n),
            I::CosEulerReflection => self.reflection(DegCosEuler, n),
            I::SinEulerReflection => self.reflection(DegSinEuler, n),
            I::CosBernoulliClosedForm => self.kernel_closed_form(DegCosBernoulli, n),
            I::SinBernoulliClosedForm => self.kernel_closed_form(DegSinBernoulli, n),
            I::CosBernoulliReflection => self.reflection(DegCosBernoulli, n),
            I::SinBernoulliReflection => self.reflection(DegSinBernoulli, n),
            I::CosBernoulliShift => self.shift(DegCosBernoulli, n),
            I::SinBernoulliShift => self.shift(DegSinBernoulli, n),
            I::CosineDifference => self.difference(DegCosine, n),
            I::SineDifference => self.difference(DegSine, n),
            I::CosineBernoulliSum => self.bernoulli_sum(DegCosine, n),
            I::SineBernoulliSum => self.bernoulli_sum(DegSine, n),
            I::BernoulliAtXZero => self.bernoulli_at_x_zero(n),
            I::CosBernoulliStirling => {
                vec![self.stirling_expansion(DegCosBernoulli, n, StirlingBinomial::K)]
            }
            I::SinBernoulliStirling => {
                vec![self.stirling_expansion(DegSinBernoulli, n, StirlingBinomial::K)]
            }
            I::ClassicalLimits => self.classical_limits(n),
            I::Decomposition => self.decomposition(n),
            I::CosEulerStirling | I::SinEulerStirling => {
                unreachable!("handled by verify_stirling_euler")
            }
        }
    }

    fn complex_euler_expansion(&self, n: usize) -> Vec<Side> {
        let euler = self.fam(DegEuler);
        let numbers = self.fam(DegEulerNum);
        let z = &x() + &iy();
        let lhs = euler[n].substitute(Var::X, &z);
        let by_iy =
            sum((0..=n).map(|l| (&ff(&iy(), n - l) * &euler[l]).scale_rat(self.binom(n, l))));
        let by_z = sum((0..=n).map(|l| (&ff(&z, n - l) * &numbers[l]).scale_rat(self.binom(n, l))));
        let series = self.catalog.complex_euler(n).expect("n <= order").clone();
        vec![
            Side::new(
                "iy",
                "E_{n,l}(x+iy) = sum_l C(n,l) (iy)_{n-l,l} E_{l,l}(x)",
                lhs.clone(),
                by_iy,
            ),
            Side::new(
                "x+iy",
                "E_{n,l}(x+iy) = sum_l C(n,l) (x+iy)_{n-l,l} E_{l,l}",
                lhs.clone(),
                by_z,
            ),
            Side::new(
                "series",
                "E_{n,l}(x+iy) = [t^n/n!] 2/(e_l(t)+1) e_l^{x+iy}(t)",
                lhs,
                series,
            ),
        ]
    }

    fn conjugate_euler_expansion(&self, n: usize) -> Vec<Side> {
        let euler = self.fam(DegEuler);
        let numbers = self.fam(DegEulerNum);
        let lhs = euler[n].substitute(Var::X, &(&x() - &iy()));
        let signed = |l: usize| {
            let mut b = self.binom(n, l).clone();
            b = &b * &sign(n - l);
            b
        };
        let by_iy = sum((0..=n).map(|l| (&rf(&iy(), n - l) * &euler[l]).scale_rat(&signed(l))));
        let w = &iy() - &x();
        let by_w = sum((0..=n).map(|l| (&rf(&w, n - l) * &numbers[l]).scale_rat(&signed(l))));
        let conj = self.catalog.complex_euler(n).expect("n <= order").conj();
        vec![
            Side::new(
                "iy",
                "E_{n,l}(x-iy) = sum_l C(n,l) (-1)^{n-l} <iy>_{n-l,l} E_{l,l}(x)",
                lhs.clone(),
                by_iy,
            ),
            Side::new(
                "iy-x",
                "E_{n,l}(x-iy) = sum_l C(n,l) (-1)^{n-l} <iy-x>_{n-l,l} E_{l,l}",
                lhs.clone(),
                by_w,
            ),
            Side::new("conj", "E_{n,l}(x-iy) = conj(E_{n,l}(x+iy))", lhs, conj),
        ]
    }

    fn trig_closed_form(&self, kind: FamilyKind, n: usize) -> Vec<Side> {
        let s1 = self.catalog.stirling_first();
        let lhs = self.fam(kind)[n].clone();
        let xs: Vec<MPoly> = (0..=n).map(|j| ff(&x(), j)).collect();
        // same double sum with the m index outermost
        let m_outer = if kind == DegCosine {
            sum((0..=n).flat_map(|m| {
                let xs = &xs;
                (0..=m / 2)
                    .map(move |k| (&cos_atom(s1, m, k) * &xs[n - m]).scale_rat(self.binom(n, m)))
            }))
        } else {
            sum((1..=n).flat_map(|m| {
                let xs = &xs;
                (0..=(m - 1) / 2)
                    .map(move |k| (&sin_atom(s1, m, k) * &xs[n - m]).scale_rat(self.binom(n, m)))
            }))
        };
        let k_outer = self.closed(kind, n).clone();
        let (m_cite, k_cite) = if kind == DegCosine {
            (
                "C_{n,l}(x,y) = sum_{m=0}^n sum_{k=0}^{[m/2]} C(n,m) l^{m-2k} (-1)^k y^{2k} S1(m,2k) (x)_{n-m,l}",
                "C_{n,l}(x,y) = sum_{k=0}^{[n/2]} sum_{m=2k}^n C(n,m) l^{m-2k} (-1)^k y^{2k} S1(m,2k) (x)_{n-m,l}",
            )
        } else {
            (
                "S_{n,l}(x,y) = sum_{m=1}^n sum_{k=0}^{[(m-1)/2]} C(n,m) l^{m-2k-1} (-1)^k y^{2k+1} S1(m,2k+1) (x)_{n-m,l}; S_{0,l} = 0",
                "S_{n,l}(x,y) = sum_{k=0}^{[(n-1)/2]} sum_{m=2k+1}^n C(n,m) l^{m-2k-1} (-1)^k y^{2k+1} S1(m,2k+1) (x)_{n-m,l}; S_{0,l} = 0",
            )
        };
        vec![
            Side::new("m-outer", m_cite, lhs.clone(), m_outer),
            Side::new("k-outer", k_cite, lhs, k_outer),
        ]
    }

    /// Cosine/sine kernel family as a convolution of kernel numbers with
    /// `C` or `S`, and as the Stirling double sum.
    fn kernel_closed_form(&self, kind: FamilyKind, n: usize) -> Vec<Side> {
        let (numbers, trig) = match kind {
            DegCosEuler => (DegEulerNum, DegCosine),
            DegSinEuler => (DegEulerNum, DegSine),
            DegCosBernoulli => (DegBernoulliNum, DegCosine),
            DegSinBernoulli => (DegBernoulliNum, DegSine),
            _ => unreachable!("kernel families only"),
        };
        let lhs = self.fam(kind)[n].clone();
        let nums = self.fam(numbers);
        let tr = self.fam(trig);
        let conv = sum((0..=n).map(|k| (&nums[k] * &tr[n - k]).scale_rat(self.binom(n, k))));
        let (conv_cite, stirling_cite) = match kind {
            DegCosEuler => (
                "Ec_{n,l}(x,y) = sum_k C(n,k) E_{k,l} C_{n-k,l}(x,y)",
                "Ec_{n,l}(x,y) = sum_{k=0}^{[n/2]} sum_{l=2k}^n C(n,l) l^{l-2k} (-1)^k y^{2k} S1(l,2k) E_{n-l,l}(x)",
            ),
            DegSinEuler => (
                "Es_{n,l}(x,y) = sum_k C(n,k) E_{k,l} S_{n-k,l}(x,y)",
                "Es_{n,l}(x,y) = sum_{k=0}^{[(n-1)/2]} sum_{l=2k+1}^n C(n,l) l^{l-2k-1} (-1)^k y^{2k+1} S1(l,2k+1) E_{n-l,l}(x)",
            ),
            DegCosBernoulli => (
                "Bc_{n,l}(x,y) = sum_k C(n,k) B_{k,l} C_{n-k,l}(x,y)",
                "Bc_{n,l}(x,y) = sum_{k=0}^{[n/2]} sum_{l=2k}^n C(n,l) l^{l-2k} (-1)^k y^{2k} S1(l,2k) B_{n-l,l}(x)",
            ),
            _ => (
                "Bs_{n,l}(x,y) = sum_k C(n,k) B_{k,l} S_{n-k,l}(x,y); Bs_{0,l} = 0",
                "Bs_{n,l}(x,y) = sum_{k=0}^{[(n-1)/2]} sum_{l=2k+1}^n C(n,l) l^{l-2k-1} (-1)^k y^{2k+1} S1(l,2k+1) B_{n-l,l}(x)",
            ),
        };
        vec![
            Side::new("number-convolution", conv_cite, lhs.clone(), conv),
            Side::new("stirling", stirling_cite, lhs, self.closed(kind, n).clone()),
        ]
    }

    fn trig_from_euler(&self, trig: FamilyKind, n: usize) -> Vec<Side> {
        let euler_kind = if trig == DegCosine {
            DegCosEuler
        } else {
            DegSinEuler
        };
        let e = self.fam(euler_kind);
        let one = MPoly::one();
        let conv = sum((0..=n).map(|l| (&ff(&one, n - l) * &e[l]).scale_rat(self.binom(n, l))));
        let rhs = (&conv + &e[n]).scale_rat(&inv(2));
        let cite = if trig == DegCosine {
            "C_{n,l}(x,y) = 1/2 (sum_l C(n,l) (1)_{n-l,l} Ec_{l,l}(x,y) + Ec_{n,l}(x,y))"
        } else {
            "S_{n,l}(x,y) = 1/2 (sum_l C(n,l) (1)_{n-l,l} Es_{l,l}(x,y) + Es_{n,l}(x,y))"
        };
        vec![Side::new("", cite, self.fam(trig)[n].clone(), rhs)]
    }

    fn shift(&self, kind: FamilyKind, n: usize) -> Vec<Side> {
        let f = self.fam(kind);
        let r = MPoly::var(Var::R);
        let lhs = f[n].substitute(Var::X, &(&x() + &r));
        let rhs = sum((0..=n).map(|l| (&f[l] * &ff(&r, n - l)).scale_rat(self.binom(n, l))));
        let cite = match kind {
            DegCosEuler => "Ec_{n,l}(x+r,y) = sum_l C(n,l) Ec_{l,l}(x,y) (r)_{n-l,l}",
            DegSinEuler => "Es_{n,l}(x+r,y) = sum_l C(n,l) Es_{l,l}(x,y) (r)_{n-l,l}",
            DegCosBernoulli => "Bc_{n,l}(x+r,y) = sum_l C(n,l) Bc_{l,l}(x,y) (r)_{n-l,l}",
            _ => "Bs_{n,l}(x+r,y) = sum_l C(n,l) Bs_{l,l}(x,y) (r)_{n-l,l}",
        };
        let at = |p: &MPoly, v: &Rat| p.bind(Var::R, &GaussRat::real(v.clone()));
        let one = Rat::one();
        let minus_half = Rat::new(-1, 2).expect("nonzero");
        vec![
            Side::new("r", cite, lhs.clone(), rhs.clone()),
            Side::new("r=1", cite, at(&lhs, &one), at(&rhs, &one)),
            Side::new("r=-1/2", cite, at(&lhs, &minus_half), at(&rhs, &minus_half)),
        ]
    }

    fn reflection(&self, kind: FamilyKind, n: usize) -> Vec<Side> {
        let f = &self.fam(kind)[n];
        let lhs = f.substitute(Var::X, &(&MPoly::one() - &x()));
        let flipped = f.substitute(Var::Lambda, &-&MPoly::var(Var::Lambda));
        let is_sine = matches!(kind, DegSinEuler | DegSinBernoulli);
        let rhs = flipped.scale_rat(&sign(if is_sine { n + 1 } else { n }));
        let cite = match kind {
            DegCosEuler => "Ec_{n,l}(1-x,y) = (-1)^n Ec_{n,-l}(x,y)",
            DegSinEuler => "Es_{n,l}(1-x,y) = (-1)^{n+1} Es_{n,-l}(x,y)",
            DegCosBernoulli => "Bc_{n,l}(1-x,y) = (-1)^n Bc_{n,-l}(x,y)",
            _ => "Bs_{n,l}(1-x,y) = (-1)^{n+1} Bs_{n,-l}(x,y)",
        };
        vec![Side::new("", cite, lhs, rhs)]
    }

    fn difference(&self, trig: FamilyKind, n: usize) -> Vec<Side> {
        let bern = self.fam(if trig == DegCosine {
            DegCosBernoulli
        } else {
            DegSinBernoulli
        });
        let next = &bern[n + 1];
        let shifted = next.substitute(Var::X, &(&x() + &MPoly::one()));
        let rhs = (&shifted - next).scale_rat(&inv(n + 1));
        let cite = if trig == DegCosine {
            "C_{n,l}(x,y) = (Bc_{n+1,l}(x+1,y) - Bc_{n+1,l}(x,y)) / (n+1)"
        } else {
            "S_{n,l}(x,y) = (Bs_{n+1,l}(x+1,y) - Bs_{n+1,l}(x,y)) / (n+1)"
        };
        vec![Side::new("", cite, self.fam(trig)[n].clone(), rhs)]
    }

    fn bernoulli_sum(&self, trig: FamilyKind, n: usize) -> Vec<Side> {
        let bern = self.fam(if trig == DegCosine {
            DegCosBernoulli
        } else {
            DegSinBernoulli
        });
        let one = MPoly::one();
        let total =
            sum((0..=n).map(|l| (&bern[l] * &ff(&one, n + 1 - l)).scale_rat(self.binom(n + 1, l))));
        let cite = if trig == DegCosine {
            "C_{n,l}(x,y) = 1/(n+1) sum_{l=0}^n C(n+1,l) Bc_{l,l}(x,y) (1)_{n+1-l,l}"
        } else {
            "S_{n,l}(x,y) = 1/(n+1) sum_{l=0}^n C(n+1,l) Bs_{l,l}(x,y) (1)_{n+1-l,l}"
        };
        vec![Side::new(
            "",
            cite,
            self.fam(trig)[n].clone(),
            total.scale_rat(&inv(n + 1)),
        )]
    }

    fn bernoulli_at_x_zero(&self, n: usize) -> Vec<Side> {
        let s1 = self.catalog.stirling_first();
        let nums = self.fam(DegBernoulliNum);
        let zero = GaussRat::zero();
        let cos_lhs = self.fam(DegCosBernoulli)[n].bind(Var::X, &zero);
        let sin_lhs = self.fam(DegSinBernoulli)[n].bind(Var::X, &zero);
        let cos_rhs = sum((0..=n / 2).flat_map(|k| {
            (2 * k..=n)
                .map(move |l| (&cos_atom(s1, l, k) * &nums[n - l]).scale_rat(self.binom(n, l)))
        }));
        let sin_rhs = if n == 0 {
            MPoly::zero()
        } else {
            sum((0..=(n - 1) / 2).flat_map(|k| {
                (2 * k + 1..=n)
                    .map(move |l| (&sin_atom(s1, l, k) * &nums[n - l]).scale_rat(self.binom(n, l)))
            }))
        };
        vec![
            Side::new(
                "cos",
                "Bc_{n,l}(y) = sum_{k=0}^{[n/2]} sum_{l=2k}^n C(n,l) l^{l-2k} (-1)^k y^{2k} S1(l,2k) B_{n-l,l}",
                cos_lhs,
                cos_rhs,
            ),
            Side::new(
                "sin",
                "Bs_{n,l}(y) = sum_{k=0}^{[(n-1)/2]} sum_{l=2k+1}^n C(n,l) l^{l-2k-1} (-1)^k y^{2k+1} S1(l,2k+1) B_{n-l,l}",
                sin_lhs,
                sin_rhs,
            ),
        ]
    }

    /// `F_n(x,y) = sum_k sum_{l<=k} C(n, l or k) (x)_l S2_l(k,l) F_{n-k}(0,y)`.
    fn stirling_expansion(&self, kind: FamilyKind, n: usize, binom: StirlingBinomial) -> Side {
        let f = self.fam(kind);
        let s2 = self.catalog.stirling_second_degenerate();
        let zero = GaussRat::zero();
        let mut rhs = MPoly::zero();
        for k in 0..=n {
            let at_zero = f[n - k].bind(Var::X, &zero);
            for l in 0..=k {
                let c = match binom {
                    StirlingBinomial::K => self.binom(n, k),
                    StirlingBinomial::L => self.binom(n, l),
                };
                let s = s2.get(k, l).expect("within table");
                let term = &(&falling_factorial(&x(), l) * s) * &at_zero;
                rhs = &rhs + &term.scale_rat(c);
            }
        }
        let cite = match (kind, binom) {
            (DegCosEuler, StirlingBinomial::L) => {
                "Ec_{n,l}(x,y) = sum_{k=0}^n sum_{l=0}^k C(n,l) (x)_l S2_l(k,l) Ec_{n-k,l}(y)"
            }
            (DegCosEuler, StirlingBinomial::K) => {
                "Ec_{n,l}(x,y) = sum_{k=0}^n sum_{l=0}^k C(n,k) (x)_l S2_l(k,l) Ec_{n-k,l}(y)"
            }
            (DegSinEuler, StirlingBinomial::L) => {
                "Es_{n,l}(x,y) = sum_{k=0}^n sum_{l=0}^k C(n,l) (x)_l S2_l(k,l) Es_{n-k,l}(y)"
            }
            (DegSinEuler, StirlingBinomial::K) => {
                "Es_{n,l}(x,y) = sum_{k=0}^n sum_{l=0}^k C(n,k) (x)_l S2_l(k,l) Es_{n-k,l}(y)"
            }
            (DegCosBernoulli, _) => {
                "Bc_{n,l}(x,y) = sum_{k=0}^n sum_{l=0}^k C(n,k) (x)_l S2_l(k,l) Bc_{n-k,l}(y)"
            }
            _ => "Bs_{n,l}(x,y) = sum_{k=0}^n sum_{l=0}^k C(n,k) (x)_l S2_l(k,l) Bs_{n-k,l}(y)",
        };
        Side::new("", cite, f[n].clone(), rhs)
    }

    /// The cosine display prints `C(n,l)` and the sine display `C(n,k)`.
    /// Both readings are evaluated for both displays; the reading that
    /// holds at every degree is reported as the survivor.
    fn verify_stirling_euler(&self, id: IdentityId, n_max: usize) -> Vec<IdentityReport> {
        let (kind, printed, other) = if id == IdentityId::CosEulerStirling {
            (DegCosEuler, StirlingBinomial::L, StirlingBinomial::K)
        } else {
            (DegSinEuler, StirlingBinomial::K, StirlingBinomial::L)
        };
        let pairs: Vec<(Side, Side)> = (0..=n_max)
            .into_par_iter()
            .map(|n| {
                (
                    self.stirling_expansion(kind, n, printed),
                    self.stirling_expansion(kind, n, other),
                )
            })
            .collect();
        let residual = |s: &Side| &s.lhs - &s.rhs;
        let printed_ok = pairs.iter().all(|(p, _)| residual(p).is_zero());
        let other_ok = pairs.iter().all(|(_, o)| residual(o).is_zero());
        let subscript = "E{c,s}_{n-k}(y) is read as E{c,s}_{n-k,l}(y) = E{c,s}_{n-k,l}(0,y)";
        let note = |survivor: StirlingBinomial, rejected: StirlingBinomial| {
            format!(
                "surviving variant {}; rejected variant {} leaves a nonzero residual for n <= {n_max}; {subscript}",
                survivor.label(),
                rejected.label()
            )
        };
        pairs
            .into_iter()
            .enumerate()
            .map(|(n, (p, o))| {
                let (p_res, o_res) = (residual(&p), residual(&o));
                let (verdict, kept, residual, rejected, note) = match (printed_ok, other_ok) {
                    (true, false) => (Verdict::Holds, &p, p_res, o_res, note(printed, other)),
                    (false, true) => (Verdict::HoldsVariant, &o, o_res, p_res, note(other, printed)),
                    (true, true) => (
                        Verdict::Holds,
                        &p,
                        p_res,
                        o_res,
                        format!(
                            "{} and {} agree for n <= {n_max}; not separable at this degree; {subscript}",
                            printed.label(),
                            other.label()
                        ),
                    ),
                    (false, false) => (
                        Verdict::Fails,
                        &p,
                        p_res,
                        o_res,
                        format!(
                            "neither {} nor {} holds for every n <= {n_max}; {subscript}",
                            printed.label(),
                            other.label()
                        ),
                    ),
                };
                let verdict = if verdict.is_success() && !residual.is_zero() {
                    Verdict::Fails
                } else {
                    verdict
                };
                IdentityReport {
                    id,
                    n,
                    part: kept.part,
                    verdict,
                    residual,
                    citation: kept.citation,
                    variant_note: Some(note),
                    variant_residual: Some(rejected),
                }
            })
            .collect()
    }

    fn classical_limits(&self, n: usize) -> Vec<Side> {
        let zero = GaussRat::zero();
        let mut sides: Vec<Side> = FamilyKind::ALL
            .iter()
            .map(|kind| {
                let lhs = self.fam(*kind)[n].bind(Var::Lambda, &zero);
                Side::new(
                    kind.name(),
                    classical_citation(*kind),
                    lhs,
                    self.classical(*kind)[n].clone(),
                )
            })
            .collect();
        // the l = 0 families also split as real/imaginary parts of the
        // ordinary polynomials at x + iy
        let z = &x() + &iy();
        for (poly, cos, sin, cos_part, sin_part, cos_cite, sin_cite) in [
            (
                DegEuler,
                DegCosEuler,
                DegSinEuler,
                "complex-split-euler-cos",
                "complex-split-euler-sin",
                "E^(c)_n(x,y) = (E_n(x+iy) + E_n(x-iy))/2",
                "E^(s)_n(x,y) = (E_n(x+iy) - E_n(x-iy))/(2i)",
            ),
            (
                DegBernoulli,
                DegCosBernoulli,
                DegSinBernoulli,
                "complex-split-bernoulli-cos",
                "complex-split-bernoulli-sin",
                "B^(c)_n(x,y) = (B_n(x+iy) + B_n(x-iy))/2",
                "B^(s)_n(x,y) = (B_n(x+iy) - B_n(x-iy))/(2i)",
            ),
        ] {
            let (re, im) = self.classical(poly)[n]
                .substitute(Var::X, &z)
                .split_real_imag();
            sides.push(Side::new(
                cos_part,
                cos_cite,
                self.classical(cos)[n].clone(),
                re,
            ));
            sides.push(Side::new(
                sin_part,
                sin_cite,
                self.classical(sin)[n].clone(),
                im,
            ));
        }
        sides
    }

    fn decomposition(&self, n: usize) -> Vec<Side> {
        let (e_re, e_im) = self
            .catalog
            .complex_euler(n)
            .expect("n <= order")
            .split_real_imag();
        let (b_re, b_im) = self
            .catalog
            .complex_bernoulli(n)
            .expect("n <= order")
            .split_real_imag();
        vec![
            Side::new(
                "euler-cos",
                "Ec_{n,l}(x,y) = (E_{n,l}(x+iy) + E_{n,l}(x-iy))/2",
                self.fam(DegCosEuler)[n].clone(),
                e_re,
            ),
            Side::new(
                "euler-sin",
                "Es_{n,l}(x,y) = (E_{n,l}(x+iy) - E_{n,l}(x-iy))/(2i)",
                self.fam(DegSinEuler)[n].clone(),
                e_im,
            ),
            Side::new(
                "bernoulli-cos",
                "Bc_{n,l}(x,y) = (B_{n,l}(x+iy) + B_{n,l}(x-iy))/2",
                self.fam(DegCosBernoulli)[n].clone(),
                b_re,
            ),
            Side::new(
                "bernoulli-sin",
                "Bs_{n,l}(x,y) = (B_{n,l}(x+iy) - B_{n,l}(x-iy))/(2i)",
                self.fam(DegSinBernoulli)[n].clone(),
                b_im,
            ),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum StirlingBinomial {
    /// `C(n, k)`, indexed by the outer sum.
    K,
    /// `C(n, l)`, indexed by the inner sum.
    L,
}

impl StirlingBinomial {
    fn label(self) -> &'static str {
        match self {
            StirlingBinomial::K => "binom(n,k)",
            StirlingBinomial::L => "binom(n,l)",
        }
    }
}

fn classical_citation(kind: FamilyKind) -> &'static str {
    match kind {
        DegBernoulliNum => "B_{n,0} = B_n from t/(e^t-1)",
        DegEulerNum => "E_{n,0} = E_n from 2/(e^t+1)",
        DegBernoulli => "B_{n,0}(x) = B_n(x) from t/(e^t-1) e^{xt}",
        DegEuler => "E_{n,0}(x) = E_n(x) from 2/(e^t+1) e^{xt}",
        DegCosine => "C_{n,0}(x,y) = C_n(x,y) from e^{xt} cos(yt)",
        DegSine => "S_{n,0}(x,y) = S_n(x,y) from e^{xt} sin(yt)",
        DegCosEuler => "Ec_{n,0}(x,y) = E^(c)_n(x,y) from 2/(e^t+1) e^{xt} cos(yt)",
        DegSinEuler => "Es_{n,0}(x,y) = E^(s)_n(x,y) from 2/(e^t+1) e^{xt} sin(yt)",
        DegCosBernoulli => "Bc_{n,0}(x,y) = B^(c)_n(x,y) from t/(e^t-1) e^{xt} cos(yt)",
        DegSinBernoulli => "Bs_{n,0}(x,y) = B^(s)_n(x,y) from t/(e^t-1) e^{xt} sin(yt)",
    }
}

fn plain_report(id: IdentityId, n: usize, side: Side) -> IdentityReport {
    let residual = &side.lhs - &side.rhs;
    let verdict = if residual.is_zero() {
        Verdict::Holds
    } else {
        Verdict::Fails
    };
    IdentityReport {
        id,
        n,
        part: side.part,
        verdict,
        residual,
        citation: side.citation,
        variant_note: None,
        variant_residual: None,
    }
}

/// Checks one identity for `n = 0..=n_max` at truncation order `order`.
pub fn verify(id: IdentityId, n_max: usize, order: usize) -> Result<Vec<IdentityReport>> {
    Verifier::new(order).verify(id, n_max)
}

/// Runs every identity and summarizes the verdicts.
pub fn verify_all(n_max: usize, order: usize) -> Result<(Vec<IdentityReport>, Summary)> {
    let reports = Verifier::new(order).verify_many(IdentityId::ALL, n_max)?;
    let summary = Summary::from_reports(&reports, n_max, order);
    Ok((reports, summary))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_round_trip() {
        assert_eq!(IdentityId::ALL.len(), 29);
        for id in IdentityId::ALL {
            assert_eq!(id.tag().parse::<IdentityId>().unwrap(), *id);
        }
        assert_eq!(
            "T10_nothing".parse::<IdentityId>(),
            Err(Error::UnknownIdentity("T10_nothing".into()))
        );
    }

    #[test]
    fn sine_closed_form_at_zero() {
        let reports = verify(IdentityId::SineClosedForm, 0, 2).unwrap();
        assert!(!reports.is_empty());
        for r in reports {
            assert_eq!(r.verdict, Verdict::Holds);
            assert!(r.residual.is_zero());
        }
    }

    #[test]
    fn difference_by_hand_at_low_degree() {
        // C_0 = 1 = Bc_1(x+1,y) - Bc_1(x,y), since Bc_1 = x + (l-1)/2
        let v = Verifier::new(4);
        let bc1 = v.fam(DegCosBernoulli)[1].clone();
        let half = Rat::new(1, 2).unwrap();
        let expected = &x() + &(&MPoly::var(Var::Lambda) - &MPoly::one()).scale_rat(&half);
        assert_eq!(bc1, expected);
        for r in v.verify(IdentityId::CosineDifference, 2).unwrap() {
            assert_eq!(r.verdict, Verdict::Holds, "n = {}", r.n);
        }
    }

    #[test]
    fn reflection_holds_and_wrong_sign_would_not() {
        let v = Verifier::new(7);
        for r in v.verify(IdentityId::CosEulerReflection, 6).unwrap() {
            assert_eq!(r.verdict, Verdict::Holds, "n = {}", r.n);
        }
        // flipping the sign convention must leave a residual at n = 1
        let f = &v.fam(DegCosEuler)[1];
        let lhs = f.substitute(Var::X, &(&MPoly::one() - &x()));
        let wrong = f.substitute(Var::Lambda, &-&MPoly::var(Var::Lambda));
        assert!(!(&lhs - &wrong).is_zero());
    }

    #[test]
    fn order_contract() {
        assert_eq!(
            verify_all(5, 3).unwrap_err(),
            Error::OrderTooSmall { n_max: 5, order: 3 }
        );
        assert!(verify(IdentityId::CosineDifference, 4, 4).is_err());
    }

    #[test]
    fn trivial_run_holds() {
        let (reports, summary) = verify_all(0, 2).unwrap();
        assert!(summary.success);
        assert_eq!(summary.fails, 0);
        assert!(reports.iter().all(|r| r.n == 0 && r.residual.is_zero()));
        assert!(reports.iter().any(|r| r.id == IdentityId::Decomposition));
    }

    #[test]
    fn variant_readings_are_indistinguishable_below_two() {
        let reports = verify(IdentityId::CosEulerStirling, 1, 2).unwrap();
        for r in &reports {
            assert_eq!(r.verdict, Verdict::Holds);
            assert!(r.variant_residual.as_ref().unwrap().is_zero());
            assert!(r.variant_note.as_ref().unwrap().contains("not separable"));
        }
    }

    #[test]
    fn record_serializes_in_field_order() {
        let r = &verify(IdentityId::SineClosedForm, 0, 1).unwrap()[0];
        let json = serde_json::to_string(&r.record()).unwrap();
        assert!(json.starts_with(
            r#"{"id":"T2_sin","n":0,"part":"m-outer","verdict":"holds","residual":"0""#
        ));
        assert!(!json.contains("variant_note"));
    }
}
