//! Truncated formal power series in t with coefficients in ℚ[λ, x].
//!
//! A [`TruncSeries`] of order `N` stores exactly `N + 1` coefficients and all
//! arithmetic is exact modulo `t^(N+1)`. The `gf_*` constructors build the
//! generating-function building blocks used by the sequence families.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{factorial, Rational};
use crate::polyring::{degenerate_falling_factorial, falling_factorial, BiPoly, PolyParseError};

/// Default truncation order for standalone series work.
pub const DEFAULT_ORDER: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series orders differ ({left} vs {right})")]
    OrderMismatch { left: usize, right: usize },
    #[error("constant term {0} is not a nonzero rational")]
    NonUnitConstantTerm(String),
    #[error("inner series of a composition must have zero constant term, found {0}")]
    NonzeroConstantTerm(String),
    #[error("cannot divide by t^{shift}: coefficient of t^{index} is nonzero")]
    NonzeroLowCoefficient { shift: usize, index: usize },
    #[error("cannot divide a series of order {order} by t^{shift}")]
    ShiftTooLarge { order: usize, shift: usize },
    #[error("coefficient of t^{0} is not divisible by λ")]
    NotDivisibleByLambda(usize),
    #[error("expected {expected} coefficients, found {found}")]
    Length { expected: usize, found: usize },
    #[error(transparent)]
    Parse(#[from] PolyParseError),
}

/// How sequence values relate to series coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeqConvention {
    /// `a_n = n! · [t^n]`
    Exponential,
    /// `a_n = [t^n]`
    Ordinary,
}

impl SeqConvention {
    pub fn value_from_coeff(self, n: usize, coeff: &BiPoly) -> BiPoly {
        match self {
            SeqConvention::Exponential => coeff.scale(&Rational::factorial(n as u32)),
            SeqConvention::Ordinary => coeff.clone(),
        }
    }

    pub fn coeff_from_value(self, n: usize, value: &BiPoly) -> BiPoly {
        match self {
            SeqConvention::Exponential => {
                value.scale(&Rational::factorial(n as u32).recip().expect("n! > 0"))
            }
            SeqConvention::Ordinary => value.clone(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncSeries {
    coeffs: Vec<BiPoly>,
}

impl TruncSeries {
    /// Pads with zeros or truncates `coeffs` so the result has order `order`.
    pub fn new(order: usize, mut coeffs: Vec<BiPoly>) -> Self {
        coeffs.resize(order + 1, BiPoly::zero());
        TruncSeries { coeffs }
    }

    pub fn from_rationals(order: usize, coeffs: Vec<Rational>) -> Self {
        Self::new(order, coeffs.into_iter().map(BiPoly::constant).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::new(order, Vec::new())
    }

    pub fn one(order: usize) -> Self {
        Self::new(order, vec![BiPoly::one()])
    }

    /// The series `t`.
    pub fn t(order: usize) -> Self {
        Self::new(order, vec![BiPoly::zero(), BiPoly::one()])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BiPoly] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BiPoly> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &BiPoly {
        &self.coeffs[n]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(BiPoly::is_zero)
    }

    fn check_order(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(SeriesError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        Ok(TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        Ok(TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let n = self.order();
        let coeffs = (0..=n)
            .map(|k| {
                let mut acc = BiPoly::zero();
                for i in 0..=k {
                    let (a, b) = (&self.coeffs[i], &other.coeffs[k - i]);
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect();
        Ok(TruncSeries { coeffs })
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..exp {
            acc = acc.mul(self).expect("same order");
        }
        acc
    }

    /// Multiplies every coefficient by `p`.
    pub fn scale(&self, p: &BiPoly) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| c * p).collect(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&BiPoly) -> BiPoly) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn eval_lambda(&self, v: &Rational) -> Self {
        self.map_coeffs(|c| c.eval_lambda(v))
    }

    pub fn eval_x(&self, v: &Rational) -> Self {
        self.map_coeffs(|c| c.eval_x(v))
    }

    /// Keeps the coefficients up to `t^order`; `order` must not exceed the
    /// current order.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        TruncSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Multiplicative inverse. The constant term must be a nonzero rational.
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let c0 = self.coeffs[0]
            .as_constant()
            .filter(|c| !c.is_zero())
            .ok_or_else(|| SeriesError::NonUnitConstantTerm(self.coeffs[0].to_string()))?;
        let inv0 = c0.recip().expect("nonzero");
        let minus_inv0 = -&inv0;
        let mut out: Vec<BiPoly> = Vec::with_capacity(self.coeffs.len());
        out.push(BiPoly::constant(inv0));
        for n in 1..=self.order() {
            let mut acc = BiPoly::zero();
            for i in 1..=n {
                let a = &self.coeffs[i];
                if !a.is_zero() {
                    acc += &(a * &out[n - i]);
                }
            }
            out.push(acc.scale(&minus_inv0));
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// `self(inner(t))`, by Horner's rule over the series ring.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        self.check_order(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm(
                inner.coeffs[0].to_string(),
            ));
        }
        let order = self.order();
        let mut acc = Self::zero(order);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner)?;
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// Divides by `t^shift`. The result has order `N - shift`, since the top
    /// `shift` coefficients would depend on terms beyond the truncation.
    pub fn shift_div(&self, shift: usize) -> Result<Self, SeriesError> {
        if shift > self.order() {
            return Err(SeriesError::ShiftTooLarge {
                order: self.order(),
                shift,
            });
        }
        if let Some(index) = self.coeffs[..shift].iter().position(|c| !c.is_zero()) {
            return Err(SeriesError::NonzeroLowCoefficient { shift, index });
        }
        Ok(TruncSeries {
            coeffs: self.coeffs[shift..].to_vec(),
        })
    }

    /// Exact coefficient-wise division by λ.
    pub fn div_lambda(&self) -> Result<Self, SeriesError> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c.div_lambda().ok_or(SeriesError::NotDivisibleByLambda(n)))
            .collect::<Result<_, _>>()?;
        Ok(TruncSeries { coeffs })
    }

    /// Sequence values `a_0..=a_N` under the given convention.
    pub fn values(&self, convention: SeqConvention) -> Vec<BiPoly> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| convention.value_from_coeff(n, c))
            .collect()
    }

    pub fn to_dump(&self, convention: SeqConvention) -> SeriesDump {
        SeriesDump {
            order: self.order(),
            convention,
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
        }
    }

    pub fn from_dump(dump: &SeriesDump) -> Result<Self, SeriesError> {
        if dump.coeffs.len() != dump.order + 1 {
            return Err(SeriesError::Length {
                expected: dump.order + 1,
                found: dump.coeffs.len(),
            });
        }
        let coeffs = dump
            .coeffs
            .iter()
            .map(|s| s.parse::<BiPoly>())
            .collect::<Result<_, _>>()?;
        Ok(TruncSeries { coeffs })
    }
}

/// JSON carrier for a series: `{"order", "convention", "coeffs"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDump {
    pub order: usize,
    pub convention: SeqConvention,
    pub coeffs: Vec<String>,
}

fn inv_factorial(n: usize) -> Rational {
    Rational::factorial(n as u32).recip().expect("n! > 0")
}

/// `log(1+t) = Σ (-1)^(n-1) t^n / n`.
pub fn gf_log1p(order: usize) -> TruncSeries {
    let coeffs = (0..=order)
        .map(|n| match n {
            0 => Rational::zero(),
            _ if n % 2 == 1 => Rational::frac(1, n as i64),
            _ => Rational::frac(-1, n as i64),
        })
        .collect();
    TruncSeries::from_rationals(order, coeffs)
}

/// `e^t - 1`.
pub fn gf_exp_minus_1(order: usize) -> TruncSeries {
    let coeffs = (0..=order)
        .map(|n| {
            if n == 0 {
                Rational::zero()
            } else {
                inv_factorial(n)
            }
        })
        .collect();
    TruncSeries::from_rationals(order, coeffs)
}

/// `e^(xt) = Σ x^n t^n / n!`.
pub fn gf_exp_x(order: usize) -> TruncSeries {
    let coeffs = (0..=order)
        .map(|n| BiPoly::monomial(inv_factorial(n), 0, n))
        .collect();
    TruncSeries::new(order, coeffs)
}

/// The degenerate exponential `e_λ^x(t) = Σ (x)_{n,λ} t^n / n!`, or
/// `e_λ(t)` (x = 1) when `with_x` is false.
pub fn gf_degenerate_exp(order: usize, with_x: bool) -> TruncSeries {
    let one = Rational::one();
    let coeffs = (0..=order)
        .map(|n| {
            let ff = degenerate_falling_factorial(n);
            let ff = if with_x { ff } else { ff.eval_x(&one) };
            ff.scale(&inv_factorial(n))
        })
        .collect();
    TruncSeries::new(order, coeffs)
}

/// `log_λ(1+t) = ((1+t)^λ - 1)/λ`, whose t^n coefficient is
/// `(λ-1)(λ-2)...(λ-n+1) / n!`.
pub fn gf_log_lambda(order: usize) -> TruncSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(BiPoly::zero());
    let mut rising = BiPoly::one();
    for n in 1..=order {
        if n > 1 {
            rising = &rising * &(BiPoly::lambda() - BiPoly::constant(Rational::from(n as i64 - 1)));
        }
        coeffs.push(rising.scale(&inv_factorial(n)));
    }
    TruncSeries::new(order, coeffs)
}

/// `(1+t)^x = Σ (x)_n t^n / n!`.
pub fn gf_binomial_pow_x(order: usize) -> TruncSeries {
    let coeffs = (0..=order)
        .map(|n| falling_factorial(n).scale(&inv_factorial(n)))
        .collect();
    TruncSeries::new(order, coeffs)
}

/// The modified polyexponential `Ei_k(u) = Σ_{n≥1} u^n / ((n-1)! n^k)`, any
/// integer `k`.
pub fn gf_polyexponential(k: i32, order: usize) -> TruncSeries {
    let coeffs = (0..=order)
        .map(|n| {
            if n == 0 {
                return Rational::zero();
            }
            let nk = Rational::from(n as i64).pow(k).expect("n >= 1");
            inv_factorial(n - 1) * nk.recip().expect("n^k != 0")
        })
        .collect();
    TruncSeries::from_rationals(order, coeffs)
}

/// `∫_{[0,1]^r} (x_1 + ... + x_r)^m dx`, computed as `m!` times the t^m
/// coefficient of `((e^t - 1)/t)^r`.
pub fn cube_moment(r: u32, m: u32) -> Rational {
    let m = m as usize;
    let kernel: Vec<Rational> = (0..=m).map(|j| inv_factorial(j + 1)).collect();
    let mut acc = vec![Rational::zero(); m + 1];
    acc[0] = Rational::one();
    for _ in 0..r {
        acc = (0..=m)
            .map(|k| (0..=k).map(|i| &acc[i] * &kernel[k - i]).sum())
            .collect();
    }
    &acc[m] * &Rational::from_integer(factorial(m as u32))
}

/// `Σ_m λ^m μ_m (log(1+t))^m / m!`: the term-by-term expansion of a unit-cube
/// integral `∫ (1+t)^(λ·f(x)) dx` given the moments `μ_m = ∫ f(x)^m dx`.
pub fn cube_integral_kernel(order: usize, moment: impl Fn(u32) -> Rational) -> TruncSeries {
    let outer = TruncSeries::from_rationals(
        order,
        (0..=order)
            .map(|m| moment(m as u32) * inv_factorial(m))
            .collect(),
    );
    let inner = gf_log1p(order).scale(&BiPoly::lambda());
    outer.compose(&inner).expect("log1p has zero constant term")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn p(s: &str) -> BiPoly {
        s.parse().unwrap()
    }

    fn series(order: usize, cs: &[&str]) -> TruncSeries {
        TruncSeries::new(order, cs.iter().map(|c| p(c)).collect())
    }

    #[test]
    fn add_examples() {
        let a = series(3, &["1", "1"]);
        let b = series(3, &["1", "-1"]);
        assert_eq!(a.add(&b).unwrap(), series(3, &["2"]));
        assert_eq!(a.add(&TruncSeries::zero(3)).unwrap(), a);
        let t = TruncSeries::t(3);
        assert_eq!(t.add(&t).unwrap(), series(3, &["0", "2"]));
        assert_eq!(
            a.add(&TruncSeries::zero(4)),
            Err(SeriesError::OrderMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn mul_examples() {
        let a = series(2, &["1", "1"]);
        let b = series(2, &["1", "-1"]);
        assert_eq!(a.mul(&b).unwrap(), series(2, &["1", "0", "-1"]));
        assert_eq!(a.mul(&TruncSeries::one(2)).unwrap(), a);
        let t = TruncSeries::t(1);
        assert!(t.mul(&t).unwrap().is_zero());
        assert!(a.mul(&TruncSeries::one(5)).is_err());
    }

    #[test]
    fn reciprocal_examples() {
        let a = series(3, &["1", "-1"]);
        assert_eq!(a.reciprocal().unwrap(), series(3, &["1", "1", "1", "1"]));
        assert_eq!(
            TruncSeries::one(4).reciprocal().unwrap(),
            TruncSeries::one(4)
        );
        let kernel = gf_exp_minus_1(9).shift_div(1).unwrap();
        let r = kernel.reciprocal().unwrap();
        assert_eq!(r.coeff(0), &BiPoly::one());
        assert_eq!(r.coeff(1), &p("-1/2"));
        assert!(matches!(
            series(2, &["λ", "1"]).reciprocal(),
            Err(SeriesError::NonUnitConstantTerm(_))
        ));
        assert!(TruncSeries::t(2).reciprocal().is_err());
    }

    #[test]
    fn compose_examples() {
        let a = series(4, &["1", "1"]);
        let b = series(4, &["0", "0", "1"]);
        assert_eq!(a.compose(&b).unwrap(), series(4, &["1", "0", "1"]));
        let c = series(4, &["3", "λ", "x", "1/2"]);
        assert_eq!(c.compose(&TruncSeries::t(4)).unwrap(), c);
        assert_eq!(
            gf_log1p(8).compose(&gf_exp_minus_1(8)).unwrap(),
            TruncSeries::t(8)
        );
        assert!(matches!(
            a.compose(&series(4, &["1", "1"])),
            Err(SeriesError::NonzeroConstantTerm(_))
        ));
    }

    #[test]
    fn shift_div_examples() {
        let a = series(3, &["0", "1", "1"]);
        let s = a.shift_div(1).unwrap();
        assert_eq!(s, series(2, &["1", "1"]));
        let t3 = series(5, &["0", "0", "0", "1"]);
        let s = t3.shift_div(1).unwrap();
        assert_eq!(s.order(), 4);
        assert_eq!(s, series(4, &["0", "0", "1"]));
        assert_eq!(
            gf_log_lambda(5).shift_div(1).unwrap().coeff(0),
            &BiPoly::one()
        );
        assert_eq!(
            a.shift_div(2),
            Err(SeriesError::NonzeroLowCoefficient { shift: 2, index: 1 })
        );
        assert!(a.shift_div(4).is_err());
    }

    #[test]
    fn elementary_generating_functions() {
        let l = gf_log1p(6);
        assert_eq!(l.coeff(1), &BiPoly::one());
        assert_eq!(l.coeff(2), &p("-1/2"));
        assert_eq!(l.coeff(5), &p("1/5"));
        let e = gf_exp_minus_1(6);
        assert!(e.coeff(0).is_zero());
        assert_eq!(e.coeff(1), &BiPoly::one());
        assert_eq!(e.coeff(3), &p("1/6"));
        let b = gf_binomial_pow_x(4);
        assert_eq!(b.coeff(0), &BiPoly::one());
        assert_eq!(b.coeff(2), &p("1/2*x^2 - 1/2*x"));
        assert_eq!(b.eval_x(&Rational::zero()), TruncSeries::one(4));
    }

    #[test]
    fn degenerate_exponential_and_logarithm() {
        let ex = gf_degenerate_exp(6, true);
        assert_eq!(ex.coeff(1), &BiPoly::x());
        let e1 = gf_degenerate_exp(6, false);
        assert_eq!(e1.coeff(2), &p("1/2 - 1/2*λ"));
        assert_eq!(ex.eval_lambda(&Rational::zero()), gf_exp_x(6));
        assert_eq!(
            e1.eval_lambda(&Rational::zero()),
            gf_exp_minus_1(6).add(&TruncSeries::one(6)).unwrap()
        );

        let lg = gf_log_lambda(8);
        assert!(lg.coeff(0).is_zero());
        assert_eq!(lg.coeff(1), &BiPoly::one());
        assert_eq!(lg.coeff(2), &p("-1/2 + 1/2*λ"));
        assert_eq!(lg.eval_lambda(&Rational::zero()), gf_log1p(8));
        // (λ)_n / (λ n!) spot check at λ = 1/2, n = 3: (-1/2)(-3/2)/6 = 1/8
        assert_eq!(lg.coeff(3).eval_lambda(&q("1/2")), p("1/8"));
    }

    #[test]
    fn degenerate_pair_is_mutually_inverse() {
        let n = DEFAULT_ORDER;
        let e_minus_1 = gf_degenerate_exp(n, false)
            .sub(&TruncSeries::one(n))
            .unwrap();
        let lg = gf_log_lambda(n);
        assert_eq!(lg.compose(&e_minus_1).unwrap(), TruncSeries::t(n));
        assert_eq!(
            gf_degenerate_exp(n, false).compose(&lg).unwrap(),
            TruncSeries::one(n).add(&TruncSeries::t(n)).unwrap()
        );
    }

    #[test]
    fn polyexponential_coefficients() {
        let n = 8;
        assert_eq!(gf_polyexponential(1, n), gf_exp_minus_1(n));
        let e0 = gf_polyexponential(0, n);
        for i in 1..=n {
            assert_eq!(e0.coeff(i), &BiPoly::constant(inv_factorial(i - 1)));
        }
        assert_eq!(gf_polyexponential(2, n).coeff(2), &p("1/4"));
        assert_eq!(gf_polyexponential(-1, n).coeff(3), &p("3/2"));
        assert!(gf_polyexponential(3, n).coeff(0).is_zero());
    }

    /// Sum over all compositions of m into r parts of
    /// multinomial(m; l) / Π(l_i + 1).
    fn cube_moment_brute(r: u32, m: u32) -> Rational {
        fn go(parts_left: u32, remaining: u32, acc: &mut Vec<u32>, total: &mut Rational) {
            if parts_left == 0 {
                if remaining == 0 {
                    let multi = crate::exactnum::multinomial(acc);
                    let den: i64 = acc.iter().map(|&l| l as i64 + 1).product();
                    *total += Rational::from_integer(multi) * Rational::frac(1, den);
                }
                return;
            }
            for l in 0..=remaining {
                acc.push(l);
                go(parts_left - 1, remaining - l, acc, total);
                acc.pop();
            }
        }
        let mut total = Rational::zero();
        go(r, m, &mut Vec::new(), &mut total);
        total
    }

    #[test]
    fn cube_moment_examples() {
        for m in 0..6 {
            assert_eq!(cube_moment(1, m), Rational::frac(1, m as i64 + 1));
        }
        assert_eq!(cube_moment(2, 1), Rational::one());
        assert_eq!(cube_moment(2, 2), q("7/6"));
        for r in 1..=4 {
            for m in 0..=8 {
                assert_eq!(cube_moment(r, m), cube_moment_brute(r, m), "r={r} m={m}");
            }
        }
    }

    #[test]
    fn cube_kernel_for_single_variable() {
        // ∫_0^1 (1+t)^(λy) dy = log_λ(1+t) / log(1+t); check (log(1+t)/t)·K = log_λ(1+t)/t.
        let n = 10;
        let k = cube_integral_kernel(n, |m| Rational::frac(1, m as i64 + 1));
        let lhs = gf_log1p(n + 1).shift_div(1).unwrap().mul(&k).unwrap();
        assert_eq!(lhs, gf_log_lambda(n + 1).shift_div(1).unwrap());
    }

    #[test]
    fn dump_round_trip() {
        let s = gf_degenerate_exp(5, true);
        let dump = s.to_dump(SeqConvention::Exponential);
        let json = serde_json::to_string(&dump).unwrap();
        assert!(json.starts_with(r#"{"order":5,"convention":"exponential","coeffs":["1","#));
        let back: SeriesDump = serde_json::from_str(&json).unwrap();
        assert_eq!(TruncSeries::from_dump(&back).unwrap(), s);
        let bad = SeriesDump { order: 3, ..dump };
        assert!(TruncSeries::from_dump(&bad).is_err());
    }

    fn arb_unit_series() -> impl Strategy<Value = TruncSeries> {
        prop::collection::vec((-9i64..9, 1i64..5, 0usize..3, 0usize..2), 6).prop_map(|v| {
            let coeffs = v
                .into_iter()
                .enumerate()
                .map(|(i, (n, d, li, xj))| {
                    if i == 0 {
                        BiPoly::constant(Rational::frac(n.abs() + 1, d))
                    } else {
                        BiPoly::monomial(Rational::frac(n, d), li, xj)
                    }
                })
                .collect();
            TruncSeries::new(5, coeffs)
        })
    }

    proptest! {
        #[test]
        fn reciprocal_is_inverse(a in arb_unit_series()) {
            let inv = a.reciprocal().unwrap();
            prop_assert_eq!(a.mul(&inv).unwrap(), TruncSeries::one(5));
        }

        #[test]
        fn compose_distributes_over_mul(a in arb_unit_series(), b in arb_unit_series(), c in arb_unit_series()) {
            let inner = c.sub(&TruncSeries::new(5, vec![c.coeff(0).clone()])).unwrap();
            let lhs = a.mul(&b).unwrap().compose(&inner).unwrap();
            let rhs = a.compose(&inner).unwrap().mul(&b.compose(&inner).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
