//! Sequence families and Stirling tables.
//!
//! Every family has a series-expansion generator (coefficient extraction from
//! its generating function). Most also have a closed form or a unit-cube
//! expansion that shares nothing with the series path beyond the ring layers;
//! the identity harness compares the two.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{binomial, multinomial, Rational};
use crate::polyring::{degenerate_falling_factorial, falling_factorial, BiPoly};
use crate::series::{
    cube_integral_kernel, cube_moment, gf_binomial_pow_x, gf_degenerate_exp, gf_exp_minus_1,
    gf_exp_x, gf_log1p, gf_log_lambda, gf_polyexponential, SeqConvention, SeriesError, TruncSeries,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("{family} needs order >= 1, got {order}")]
    InvalidOrder { family: &'static str, order: i64 },
    #[error("interpolated Nörlund coefficient b_{n} disagrees with direct powering at exponent {exponent}")]
    Interpolation { n: usize, exponent: i64 },
    #[error("series order {series_order} is below nmax {nmax}")]
    SeriesOrder { series_order: usize, nmax: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

// ---------------------------------------------------------------------------
// Stirling tables

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StirlingKind {
    First,
    Second,
    FirstDegenerate,
    SecondDegenerate,
}

impl StirlingKind {
    pub const ALL: [StirlingKind; 4] = [
        StirlingKind::First,
        StirlingKind::Second,
        StirlingKind::FirstDegenerate,
        StirlingKind::SecondDegenerate,
    ];

    pub fn is_degenerate(self) -> bool {
        matches!(
            self,
            StirlingKind::FirstDegenerate | StirlingKind::SecondDegenerate
        )
    }

    /// The classical kind a degenerate table reduces to at λ = 0.
    pub fn classical(self) -> StirlingKind {
        match self {
            StirlingKind::First | StirlingKind::FirstDegenerate => StirlingKind::First,
            StirlingKind::Second | StirlingKind::SecondDegenerate => StirlingKind::Second,
        }
    }

    /// The generating function `g(t)` with `g(t)^k / k! = Σ_n S(n, k) t^n / n!`.
    fn column_kernel(self, order: usize) -> TruncSeries {
        match self {
            StirlingKind::First => gf_log1p(order),
            StirlingKind::Second => gf_exp_minus_1(order),
            StirlingKind::FirstDegenerate => gf_log_lambda(order),
            StirlingKind::SecondDegenerate => gf_degenerate_exp(order, false)
                .sub(&TruncSeries::one(order))
                .expect("same order"),
        }
    }
}

/// Lower-triangular table of `S(n, l)`, `0 <= l <= n <= nmax`, entries in ℚ[λ].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingTable {
    kind: StirlingKind,
    rows: Vec<Vec<BiPoly>>,
    zero: BiPoly,
}

/// One row of a table dump.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub n: usize,
    pub l: usize,
    pub value: String,
}

impl StirlingTable {
    /// Builds the table from its three-term recurrence
    /// `S(n+1, k) = S(n, k-1) + w(n, k) S(n, k)` with `S(0, 0) = 1`, where
    ///
    /// | kind               | w(n, k)  |
    /// |--------------------|----------|
    /// | first              | -n       |
    /// | second             | k        |
    /// | first, degenerate  | kλ - n   |
    /// | second, degenerate | k - nλ   |
    pub fn build(kind: StirlingKind, nmax: usize) -> Self {
        let weight = |n: usize, k: usize| -> BiPoly {
            let n_r = Rational::from(n as i64);
            let k_r = Rational::from(k as i64);
            match kind {
                StirlingKind::First => BiPoly::constant(-n_r),
                StirlingKind::Second => BiPoly::constant(k_r),
                StirlingKind::FirstDegenerate => {
                    BiPoly::monomial(k_r, 1, 0) - BiPoly::constant(n_r)
                }
                StirlingKind::SecondDegenerate => {
                    BiPoly::constant(k_r) - BiPoly::monomial(n_r, 1, 0)
                }
            }
        };
        let mut rows: Vec<Vec<BiPoly>> = vec![vec![BiPoly::one()]];
        for n in 0..nmax {
            let prev = &rows[n];
            let next = (0..=n + 1)
                .map(|k| {
                    let mut v = if k >= 1 {
                        prev[k - 1].clone()
                    } else {
                        BiPoly::zero()
                    };
                    if k <= n && !prev[k].is_zero() {
                        v += &(&weight(n, k) * &prev[k]);
                    }
                    v
                })
                .collect();
            rows.push(next);
        }
        StirlingTable {
            kind,
            rows,
            zero: BiPoly::zero(),
        }
    }

    /// Builds the table column by column from `g(t)^k / k!`.
    pub fn from_generating_function(kind: StirlingKind, nmax: usize) -> Self {
        let g = kind.column_kernel(nmax);
        let mut rows: Vec<Vec<BiPoly>> = (0..=nmax).map(|n| vec![BiPoly::zero(); n + 1]).collect();
        let mut power = TruncSeries::one(nmax);
        for k in 0..=nmax {
            let inv_kfact = Rational::factorial(k as u32).recip().expect("k! > 0");
            for (n, row) in rows.iter_mut().enumerate().skip(k) {
                row[k] = SeqConvention::Exponential
                    .value_from_coeff(n, power.coeff(n))
                    .scale(&inv_kfact);
            }
            power = power.mul(&g).expect("same order");
        }
        StirlingTable {
            kind,
            rows,
            zero: BiPoly::zero(),
        }
    }

    pub fn kind(&self) -> StirlingKind {
        self.kind
    }

    pub fn nmax(&self) -> usize {
        self.rows.len() - 1
    }

    /// `S(n, l)`; zero for `l > n`. Panics if `n > nmax`.
    pub fn get(&self, n: usize, l: usize) -> &BiPoly {
        self.rows[n].get(l).unwrap_or(&self.zero)
    }

    pub fn eval_lambda(&self, v: &Rational) -> Self {
        StirlingTable {
            kind: self.kind,
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(|e| e.eval_lambda(v)).collect())
                .collect(),
            zero: BiPoly::zero(),
        }
    }

    /// True when the recurrence-built table equals the generating-function
    /// expansion entry by entry.
    pub fn agrees_with_generating_function(&self) -> bool {
        *self == Self::from_generating_function(self.kind, self.nmax())
    }

    /// `out_n = Σ_{m<=n} values[m] · S(n, m)` for `n < values.len()`.
    pub fn transform(&self, values: &[BiPoly]) -> Vec<BiPoly> {
        (0..values.len())
            .map(|n| {
                let mut acc = BiPoly::zero();
                for (m, v) in values.iter().enumerate().take(n + 1) {
                    acc += &(v * self.get(n, m));
                }
                acc
            })
            .collect()
    }

    /// Product of the two lower-triangular matrices `self · other`.
    pub fn matmul(&self, other: &StirlingTable) -> Vec<Vec<BiPoly>> {
        let nmax = self.nmax().min(other.nmax());
        (0..=nmax)
            .map(|n| {
                (0..=n)
                    .map(|m| {
                        let mut acc = BiPoly::zero();
                        for l in m..=n {
                            acc += &(self.get(n, l) * other.get(l, m));
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    }

    pub fn dump(&self) -> Vec<TableEntry> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(n, row)| {
                row.iter().enumerate().map(move |(l, v)| TableEntry {
                    n,
                    l,
                    value: v.to_string(),
                })
            })
            .collect()
    }
}

pub fn stirling_first(nmax: usize) -> StirlingTable {
    StirlingTable::build(StirlingKind::First, nmax)
}

pub fn stirling_second(nmax: usize) -> StirlingTable {
    StirlingTable::build(StirlingKind::Second, nmax)
}

pub fn stirling_first_degenerate(nmax: usize) -> StirlingTable {
    StirlingTable::build(StirlingKind::FirstDegenerate, nmax)
}

pub fn stirling_second_degenerate(nmax: usize) -> StirlingTable {
    StirlingTable::build(StirlingKind::SecondDegenerate, nmax)
}

// ---------------------------------------------------------------------------
// Families: series paths

/// Whether a family is evaluated at x = 0 or kept symbolic in x.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Argument {
    Number,
    Polynomial,
}

impl Argument {
    fn apply(self, s: TruncSeries) -> TruncSeries {
        match self {
            Argument::Polynomial => s,
            Argument::Number => s.eval_x(&Rational::zero()),
        }
    }
}

fn check_order(family: &'static str, order: u32) -> Result<(), SequenceError> {
    if order == 0 {
        Err(SequenceError::InvalidOrder { family, order: 0 })
    } else {
        Ok(())
    }
}

/// `f(t)/t` at order `order`, where `make(order + 1)` builds `f`.
fn over_t(make: impl Fn(usize) -> TruncSeries, order: usize) -> TruncSeries {
    make(order + 1).shift_div(1).expect("zero constant term")
}

fn exp_values(s: TruncSeries) -> Vec<BiPoly> {
    s.values(SeqConvention::Exponential)
}

/// `(t/(e^t-1))^α e^(xt)` at order `order`.
pub fn bernoulli_series(alpha: u32, order: usize, argument: Argument) -> TruncSeries {
    let kernel = over_t(gf_exp_minus_1, order)
        .reciprocal()
        .expect("unit constant term");
    let s = kernel.pow(alpha).mul(&gf_exp_x(order)).expect("same order");
    argument.apply(s)
}

/// Bernoulli polynomials (or numbers) of order α, `B_n^(α)(x)`.
pub fn bernoulli_poly(alpha: u32, nmax: usize, argument: Argument) -> Vec<BiPoly> {
    exp_values(bernoulli_series(alpha, nmax, argument))
}

/// `(t/(e_λ(t)-1))^r e_λ^x(t)`.
pub fn degen_bernoulli_series(r: u32, order: usize, argument: Argument) -> TruncSeries {
    let e_minus_1 = |n| {
        gf_degenerate_exp(n, false)
            .sub(&TruncSeries::one(n))
            .expect("same order")
    };
    let kernel = over_t(e_minus_1, order)
        .reciprocal()
        .expect("unit constant term");
    let s = kernel
        .pow(r)
        .mul(&gf_degenerate_exp(order, true))
        .expect("same order");
    argument.apply(s)
}

/// Degenerate Bernoulli polynomials of order r, `β_{n,λ}^(r)(x)`.
pub fn degen_bernoulli(r: u32, nmax: usize, argument: Argument) -> Vec<BiPoly> {
    exp_values(degen_bernoulli_series(r, nmax, argument))
}

/// `(log(1+t)/t)^k (1+t)^x`.
pub fn daehee_series(k: u32, order: usize, argument: Argument) -> TruncSeries {
    let s = over_t(gf_log1p, order)
        .pow(k)
        .mul(&gf_binomial_pow_x(order))
        .expect("same order");
    argument.apply(s)
}

/// Daehee polynomials of order k, `D_n^(k)(x)`.
pub fn daehee_poly(k: u32, nmax: usize, argument: Argument) -> Vec<BiPoly> {
    exp_values(daehee_series(k, nmax, argument))
}

/// `(log_λ(1+t)/t)^r (1+t)^x`.
pub fn higher_degen_daehee_series(r: u32, order: usize, argument: Argument) -> TruncSeries {
    let s = over_t(gf_log_lambda, order)
        .pow(r)
        .mul(&gf_binomial_pow_x(order))
        .expect("same order");
    argument.apply(s)
}

/// Degenerate Daehee polynomials `D_{n,λ}(x)`.
pub fn degen_daehee(nmax: usize, argument: Argument) -> Vec<BiPoly> {
    exp_values(higher_degen_daehee_series(1, nmax, argument))
}

/// Degenerate Daehee polynomials of order r, `D_{n,λ}^(r)(x)`.
pub fn higher_degen_daehee(r: u32, nmax: usize, argument: Argument) -> Vec<BiPoly> {
    exp_values(higher_degen_daehee_series(r, nmax, argument))
}

/// `Ei_k(λ log(1+t)) / (λt)`.
pub fn multiple_degen_daehee_series(k: u32, order: usize) -> TruncSeries {
    let inner = gf_log1p(order + 1).scale(&BiPoly::lambda());
    gf_polyexponential(k as i32, order + 1)
        .compose(&inner)
        .expect("zero constant term")
        .div_lambda()
        .expect("every composed term carries λ^m, m >= 1")
        .shift_div(1)
        .expect("zero constant term")
}

/// Multiple degenerate Daehee numbers `D̂_{n,λ}^(k)`.
pub fn multiple_degen_daehee(k: u32, nmax: usize) -> Vec<BiPoly> {
    exp_values(multiple_degen_daehee_series(k, nmax))
}

// ---------------------------------------------------------------------------
// Unit-cube integral paths

/// `D̂_{n,λ}^(k)` from `(log(1+t)/t) ∫_{[0,1]^k} (1+t)^(λ x_1⋯x_k) dx`, using
/// `∫ (x_1⋯x_k)^m dx = (m+1)^(-k)`.
pub fn multiple_degen_daehee_cube(k: u32, nmax: usize) -> Vec<BiPoly> {
    let kernel = cube_integral_kernel(nmax, |m| {
        Rational::from(m as i64 + 1)
            .pow(-(k as i32))
            .expect("m + 1 > 0")
    });
    exp_values(over_t(gf_log1p, nmax).mul(&kernel).expect("same order"))
}

/// `D_{n,λ}^(r)(x)` from `(log(1+t)/t)^r (1+t)^x ∫_{[0,1]^r} (1+t)^(λ(x_1+⋯+x_r)) dx`.
pub fn higher_degen_daehee_cube(r: u32, nmax: usize, argument: Argument) -> Vec<BiPoly> {
    let kernel = cube_integral_kernel(nmax, |m| cube_moment(r, m));
    let s = over_t(gf_log1p, nmax)
        .pow(r)
        .mul(&kernel)
        .and_then(|s| s.mul(&gf_binomial_pow_x(nmax)))
        .expect("same order");
    exp_values(argument.apply(s))
}

// ---------------------------------------------------------------------------
// Closed forms

fn lambda_pow(i: usize) -> BiPoly {
    BiPoly::monomial(Rational::one(), i, 0)
}

/// `D̂_{n,λ}^(k) = 1/(n+1) Σ_{m=1}^{n+1} λ^(m-1) m^(1-k) S_1(n+1, m)`; k = 1
/// gives the plain degenerate Daehee numbers. `s1` must reach `nmax + 1`.
pub fn multiple_degen_daehee_closed_form(k: u32, nmax: usize, s1: &StirlingTable) -> Vec<BiPoly> {
    assert_eq!(s1.kind(), StirlingKind::First);
    (0..=nmax)
        .map(|n| {
            let mut acc = BiPoly::zero();
            for m in 1..=n + 1 {
                let w = Rational::from(m as i64).pow(1 - k as i32).expect("m >= 1");
                acc += &(&lambda_pow(m - 1) * s1.get(n + 1, m)).scale(&w);
            }
            acc.scale(&Rational::frac(1, n as i64 + 1))
        })
        .collect()
}

/// `D_{n,λ} = 1/(n+1) Σ_{m=1}^{n+1} λ^(m-1) S_1(n+1, m)`.
pub fn degen_daehee_numbers_closed_form(nmax: usize, s1: &StirlingTable) -> Vec<BiPoly> {
    multiple_degen_daehee_closed_form(1, nmax, s1)
}

/// `D_{n,λ}(x) = 1/(n+1) Σ_{m=0}^{n} (m+1) (x)_{m,λ} S_{1,λ}(n+1, m+1)`.
pub fn degen_daehee_closed_form(nmax: usize, s1_deg: &StirlingTable) -> Vec<BiPoly> {
    assert_eq!(s1_deg.kind(), StirlingKind::FirstDegenerate);
    let ff: Vec<BiPoly> = (0..=nmax).map(degenerate_falling_factorial).collect();
    (0..=nmax)
        .map(|n| {
            let mut acc = BiPoly::zero();
            for (m, f) in ff.iter().enumerate().take(n + 1) {
                let term = (f * s1_deg.get(n + 1, m + 1)).scale(&Rational::from(m as i64 + 1));
                acc += &term;
            }
            acc.scale(&Rational::frac(1, n as i64 + 1))
        })
        .collect()
}

/// `D_{n,λ}^(r) = S_{1,λ}(n+r, r) / C(n+r, n)`. `s1_deg` must reach `nmax + r`.
pub fn higher_degen_daehee_closed_form(r: u32, nmax: usize, s1_deg: &StirlingTable) -> Vec<BiPoly> {
    assert_eq!(s1_deg.kind(), StirlingKind::FirstDegenerate);
    let r = r as usize;
    (0..=nmax)
        .map(|n| {
            let c = Rational::from_integer(binomial((n + r) as u32, n as u32));
            s1_deg
                .get(n + r, r)
                .scale(&c.recip().expect("binomial > 0"))
        })
        .collect()
}

/// Calls `f` with every composition `(l_1, ..., l_parts)` of `total`.
pub fn for_each_composition(parts: usize, total: u32, mut f: impl FnMut(&[u32])) {
    fn go(parts: usize, remaining: u32, acc: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        if parts == 1 {
            acc.push(remaining);
            f(acc);
            acc.pop();
            return;
        }
        for l in 0..=remaining {
            acc.push(l);
            go(parts - 1, remaining - l, acc, f);
            acc.pop();
        }
    }
    if parts == 0 {
        if total == 0 {
            f(&[]);
        }
        return;
    }
    go(parts, total, &mut Vec::with_capacity(parts), &mut f);
}

/// `Σ_{l_1+⋯+l_r=n} C(n; l_1..l_r) a_{l_1} ⋯ a_{l_r}`, by explicit enumeration.
pub fn multinomial_convolution(r: u32, values: &[BiPoly]) -> Vec<BiPoly> {
    (0..values.len())
        .map(|n| {
            let mut acc = BiPoly::zero();
            for_each_composition(r as usize, n as u32, |ls| {
                let coef = Rational::from_integer(multinomial(ls));
                let prod = ls
                    .iter()
                    .fold(BiPoly::one(), |p, &l| &p * &values[l as usize]);
                acc += &prod.scale(&coef);
            });
            acc
        })
        .collect()
}

/// `Σ_{m=0}^{n} λ^m μ_r(m) S_1(n+r, m+r) C(m+r, r) / C(n+r, r)` with the
/// unit-cube moments `μ_r(m) = Σ_{l_1+⋯+l_r=m} C(m; l) / Π(l_i+1)`.
pub fn higher_degen_daehee_moment_form(r: u32, nmax: usize, s1: &StirlingTable) -> Vec<BiPoly> {
    assert_eq!(s1.kind(), StirlingKind::First);
    let ru = r as usize;
    (0..=nmax)
        .map(|n| {
            let den = Rational::from_integer(binomial((n + ru) as u32, r));
            let mut acc = BiPoly::zero();
            for m in 0..=n {
                let w = cube_moment(r, m as u32)
                    * Rational::from_integer(binomial((m + ru) as u32, r))
                    * den.recip().expect("binomial > 0");
                acc += &(&lambda_pow(m) * s1.get(n + ru, m + ru)).scale(&w);
            }
            acc
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Nörlund numbers of the second kind

/// Exponent of `(t / log(1+t))^e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NorlundExponent {
    Value(Rational),
    /// Symbolic exponent, carried in the x slot of the result.
    Symbolic,
}

impl fmt::Display for NorlundExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NorlundExponent::Value(v) => write!(f, "{v}"),
            NorlundExponent::Symbolic => f.write_str("x"),
        }
    }
}

/// `(t/log(1+t))^e` for integer `e`, by powering.
fn norlund_integer_series(e: i64, order: usize) -> TruncSeries {
    let base = over_t(gf_log1p, order);
    if e >= 0 {
        base.reciprocal().expect("unit constant term").pow(e as u32)
    } else {
        base.pow(e.unsigned_abs() as u32)
    }
}

/// Nörlund numbers of the second kind `b_n^(e)` (ordinary convention).
///
/// Integer exponents are computed by powering. A symbolic exponent yields the
/// polynomial in x through the values at `e = 0..=n` (Newton forward
/// differences); each polynomial is then checked against powering at every
/// integer in `-nmax..=nmax`. Other rational exponents evaluate that
/// polynomial.
pub fn norlund_second(
    exponent: &NorlundExponent,
    nmax: usize,
) -> Result<Vec<BiPoly>, SequenceError> {
    match exponent {
        NorlundExponent::Value(v) => {
            if let Some(e) = v.to_i64() {
                Ok(norlund_integer_series(e, nmax).values(SeqConvention::Ordinary))
            } else {
                let sym = norlund_symbolic(nmax)?;
                Ok(sym.iter().map(|p| p.eval_x(v)).collect())
            }
        }
        NorlundExponent::Symbolic => norlund_symbolic(nmax),
    }
}

fn norlund_symbolic(nmax: usize) -> Result<Vec<BiPoly>, SequenceError> {
    let span = nmax as i64;
    let base = over_t(gf_log1p, nmax);
    let recip = base.reciprocal()?;
    // samples[e + span][n] = b_n^(e)
    let mut samples: Vec<Vec<Rational>> = Vec::with_capacity(2 * nmax + 1);
    let to_row = |s: &TruncSeries| -> Vec<Rational> {
        s.coeffs()
            .iter()
            .map(|c| c.as_constant().expect("λ- and x-free"))
            .collect()
    };
    let mut neg = Vec::new();
    let mut acc = TruncSeries::one(nmax);
    for _ in 0..nmax {
        acc = acc.mul(&base)?;
        neg.push(to_row(&acc));
    }
    samples.extend(neg.into_iter().rev());
    acc = TruncSeries::one(nmax);
    samples.push(to_row(&acc));
    for _ in 0..nmax {
        acc = acc.mul(&recip)?;
        samples.push(to_row(&acc));
    }
    let at = |e: i64, n: usize| &samples[(e + span) as usize][n];

    let mut out = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        // Newton series Σ_j Δ^j f(0) · (x)_j / j!
        let mut poly = BiPoly::zero();
        for j in 0..=n {
            let delta: Rational = (0..=j)
                .map(|i| {
                    let sign = if (j - i) % 2 == 0 { 1 } else { -1 };
                    Rational::from_integer(binomial(j as u32, i as u32) * sign) * at(i as i64, n)
                })
                .sum();
            let w = delta * Rational::factorial(j as u32).recip().expect("j! > 0");
            poly += &falling_factorial(j).scale(&w);
        }
        for e in -span..=span {
            if poly.eval_x(&Rational::from(e)).as_constant().as_ref() != Some(at(e, n)) {
                return Err(SequenceError::Interpolation { n, exponent: e });
            }
        }
        out.push(poly);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// The matrix-representation formula for higher-order Daehee polynomials

/// The two readings of `m! Σ_{n=0}^{m} C(z, m-n) b^(-k)`, with `z` in the x slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HigherDaeheeReadings {
    /// Index fixed at `m`: `m! Σ_n C(z, m-n) b_m^(-k)`.
    pub fixed_index: BiPoly,
    /// Index running with the sum: `m! Σ_n C(z, m-n) b_n^(-k)`.
    pub running_index: BiPoly,
}

pub fn higher_daehee_index_readings(k: u32, m: usize) -> HigherDaeheeReadings {
    let b = norlund_integer_series(-(k as i64), m).values(SeqConvention::Ordinary);
    let mfact = Rational::factorial(m as u32);
    let choose = |j: usize| {
        falling_factorial(j).scale(&Rational::factorial(j as u32).recip().expect("j! > 0"))
    };
    let mut fixed = BiPoly::zero();
    let mut running = BiPoly::zero();
    for n in 0..=m {
        let c = choose(m - n);
        fixed += &(&c * &b[m]);
        running += &(&c * &b[n]);
    }
    HigherDaeheeReadings {
        fixed_index: fixed.scale(&mfact),
        running_index: running.scale(&mfact),
    }
}

// ---------------------------------------------------------------------------
// Family selector

/// A named sequence family with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SeqFamily {
    Bernoulli(Argument),
    BernoulliHigher { order: u32, argument: Argument },
    Daehee(Argument),
    DaeheeHigher { order: u32, argument: Argument },
    DegenBernoulli(Argument),
    DegenBernoulliHigher { order: u32, argument: Argument },
    DegenDaehee(Argument),
    DegenDaeheeHigher { order: u32, argument: Argument },
    MultipleDegenDaehee { index: u32 },
    NorlundSecond { exponent: NorlundExponent },
}

impl SeqFamily {
    pub const NAMES: [&'static str; 10] = [
        "bernoulli",
        "bernoulli-higher",
        "daehee",
        "daehee-higher",
        "degen-bernoulli",
        "degen-bernoulli-higher",
        "degen-daehee",
        "degen-daehee-higher",
        "multiple-degen-daehee",
        "norlund-second",
    ];

    /// Builds a family from its name. `order` is the order r / index k
    /// (ignored by first-order families and Nörlund numbers); `exponent` is
    /// used by Nörlund numbers only.
    pub fn from_name(
        name: &str,
        order: u32,
        argument: Argument,
        exponent: NorlundExponent,
    ) -> Option<Self> {
        Some(match name {
            "bernoulli" => SeqFamily::Bernoulli(argument),
            "bernoulli-higher" => SeqFamily::BernoulliHigher { order, argument },
            "daehee" => SeqFamily::Daehee(argument),
            "daehee-higher" => SeqFamily::DaeheeHigher { order, argument },
            "degen-bernoulli" => SeqFamily::DegenBernoulli(argument),
            "degen-bernoulli-higher" => SeqFamily::DegenBernoulliHigher { order, argument },
            "degen-daehee" => SeqFamily::DegenDaehee(argument),
            "degen-daehee-higher" => SeqFamily::DegenDaeheeHigher { order, argument },
            "multiple-degen-daehee" => SeqFamily::MultipleDegenDaehee { index: order },
            "norlund-second" => SeqFamily::NorlundSecond { exponent },
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            SeqFamily::Bernoulli(_) => "bernoulli",
            SeqFamily::BernoulliHigher { .. } => "bernoulli-higher",
            SeqFamily::Daehee(_) => "daehee",
            SeqFamily::DaeheeHigher { .. } => "daehee-higher",
            SeqFamily::DegenBernoulli(_) => "degen-bernoulli",
            SeqFamily::DegenBernoulliHigher { .. } => "degen-bernoulli-higher",
            SeqFamily::DegenDaehee(_) => "degen-daehee",
            SeqFamily::DegenDaeheeHigher { .. } => "degen-daehee-higher",
            SeqFamily::MultipleDegenDaehee { .. } => "multiple-degen-daehee",
            SeqFamily::NorlundSecond { .. } => "norlund-second",
        }
    }

    /// Order r (or index k); `None` for Nörlund numbers.
    pub fn order(&self) -> Option<u32> {
        match self {
            SeqFamily::Bernoulli(_)
            | SeqFamily::Daehee(_)
            | SeqFamily::DegenBernoulli(_)
            | SeqFamily::DegenDaehee(_) => Some(1),
            SeqFamily::BernoulliHigher { order, .. }
            | SeqFamily::DaeheeHigher { order, .. }
            | SeqFamily::DegenBernoulliHigher { order, .. }
            | SeqFamily::DegenDaeheeHigher { order, .. } => Some(*order),
            SeqFamily::MultipleDegenDaehee { index } => Some(*index),
            SeqFamily::NorlundSecond { .. } => None,
        }
    }

    /// Text for the `argument` field of a dump.
    pub fn argument_label(&self) -> String {
        match self {
            SeqFamily::Bernoulli(a)
            | SeqFamily::Daehee(a)
            | SeqFamily::DegenBernoulli(a)
            | SeqFamily::DegenDaehee(a)
            | SeqFamily::BernoulliHigher { argument: a, .. }
            | SeqFamily::DaeheeHigher { argument: a, .. }
            | SeqFamily::DegenBernoulliHigher { argument: a, .. }
            | SeqFamily::DegenDaeheeHigher { argument: a, .. } => match a {
                Argument::Number => "number".into(),
                Argument::Polynomial => "polynomial".into(),
            },
            SeqFamily::MultipleDegenDaehee { .. } => "number".into(),
            SeqFamily::NorlundSecond { exponent } => format!("exponent={exponent}"),
        }
    }

    pub fn convention(&self) -> SeqConvention {
        match self {
            SeqFamily::NorlundSecond { .. } => SeqConvention::Ordinary,
            _ => SeqConvention::Exponential,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(
            self,
            SeqFamily::DegenBernoulli(_)
                | SeqFamily::DegenBernoulliHigher { .. }
                | SeqFamily::DegenDaehee(_)
                | SeqFamily::DegenDaeheeHigher { .. }
                | SeqFamily::MultipleDegenDaehee { .. }
        )
    }

    /// The classical family each degenerate family reduces to at λ = 0.
    pub fn classical_counterpart(&self) -> Option<SeqFamily> {
        Some(match self {
            SeqFamily::DegenBernoulli(a) => SeqFamily::Bernoulli(*a),
            SeqFamily::DegenBernoulliHigher { order, argument } => SeqFamily::BernoulliHigher {
                order: *order,
                argument: *argument,
            },
            SeqFamily::DegenDaehee(a) => SeqFamily::Daehee(*a),
            SeqFamily::DegenDaeheeHigher { order, argument } => SeqFamily::DaeheeHigher {
                order: *order,
                argument: *argument,
            },
            SeqFamily::MultipleDegenDaehee { .. } => SeqFamily::Daehee(Argument::Number),
            _ => return None,
        })
    }

    /// The series whose coefficients carry the family, at `order`.
    fn series(&self, order: usize) -> Result<TruncSeries, SequenceError> {
        if let Some(o) = self.order() {
            check_order(self.name(), o)?;
        }
        Ok(match self {
            SeqFamily::Bernoulli(a) => bernoulli_series(1, order, *a),
            SeqFamily::BernoulliHigher { order: r, argument } => {
                bernoulli_series(*r, order, *argument)
            }
            SeqFamily::Daehee(a) => daehee_series(1, order, *a),
            SeqFamily::DaeheeHigher { order: k, argument } => daehee_series(*k, order, *argument),
            SeqFamily::DegenBernoulli(a) => degen_bernoulli_series(1, order, *a),
            SeqFamily::DegenBernoulliHigher { order: r, argument } => {
                degen_bernoulli_series(*r, order, *argument)
            }
            SeqFamily::DegenDaehee(a) => higher_degen_daehee_series(1, order, *a),
            SeqFamily::DegenDaeheeHigher { order: r, argument } => {
                higher_degen_daehee_series(*r, order, *argument)
            }
            SeqFamily::MultipleDegenDaehee { index } => multiple_degen_daehee_series(*index, order),
            SeqFamily::NorlundSecond { exponent } => {
                let values = norlund_second(exponent, order)?;
                TruncSeries::new(order, values)
            }
        })
    }

    /// Terms `a_0..=a_nmax`.
    pub fn generate(&self, nmax: usize) -> Result<Vec<BiPoly>, SequenceError> {
        self.generate_at(nmax, nmax)
    }

    /// Terms `a_0..=a_nmax`, with the series expanded to `series_order >= nmax`.
    pub fn generate_at(
        &self,
        nmax: usize,
        series_order: usize,
    ) -> Result<Vec<BiPoly>, SequenceError> {
        if series_order < nmax {
            return Err(SequenceError::SeriesOrder { series_order, nmax });
        }
        let mut values = self.series(series_order)?.values(self.convention());
        values.truncate(nmax + 1);
        Ok(values)
    }
}

/// One term of a sequence dump.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermEntry {
    pub n: usize,
    pub value: String,
}

/// JSON carrier for a generated sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceDump {
    pub family: String,
    pub order: Option<u32>,
    pub argument: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    pub terms: Vec<TermEntry>,
}

impl SequenceDump {
    pub fn new(family: &SeqFamily, values: &[BiPoly]) -> Self {
        SequenceDump {
            family: family.name().to_string(),
            order: family.order(),
            argument: family.argument_label(),
            lambda: None,
            terms: values
                .iter()
                .enumerate()
                .map(|(n, v)| TermEntry {
                    n,
                    value: v.to_string(),
                })
                .collect(),
        }
    }

    pub fn values(&self) -> Result<Vec<BiPoly>, crate::polyring::PolyParseError> {
        self.terms.iter().map(|t| t.value.parse()).collect()
    }
}
