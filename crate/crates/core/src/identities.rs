//! Identity checks over finite parameter grids.
//!
//! A [`Fixture`] holds every series-path sequence and the recurrence-built
//! Stirling tables. Each check compares those against closed forms, Stirling
//! transforms or unit-cube expansions by exact equality in ℚ[λ, x] and
//! produces a [`CheckReport`]. Where a printed statement admits more than one
//! reading, every reading is evaluated and the report names the one that
//! holds.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{binomial, factorial, Rational};
use crate::exec::Exec;
use crate::polyring::BiPoly;
use crate::sequences::{
    degen_daehee_closed_form, degen_daehee_numbers_closed_form, higher_daehee_index_readings,
    higher_degen_daehee_closed_form, higher_degen_daehee_moment_form, multinomial_convolution,
    multiple_degen_daehee_closed_form, multiple_degen_daehee_cube, Argument, SeqFamily,
    StirlingKind, StirlingTable,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IdentityId {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    T8,
    T9,
    T10,
    T11,
    /// λ → 0 corollaries and classical limits.
    #[serde(rename = "C2'")]
    C2Limit,
    /// Probe of the two index readings of the higher-order Daehee formula.
    E6,
}

impl IdentityId {
    pub const ALL: [IdentityId; 13] = [
        IdentityId::T1,
        IdentityId::T2,
        IdentityId::T3,
        IdentityId::T4,
        IdentityId::T5,
        IdentityId::T6,
        IdentityId::T7,
        IdentityId::T8,
        IdentityId::T9,
        IdentityId::T10,
        IdentityId::T11,
        IdentityId::C2Limit,
        IdentityId::E6,
    ];

    pub fn label(self) -> &'static str {
        match self {
            IdentityId::T1 => "T1",
            IdentityId::T2 => "T2",
            IdentityId::T3 => "T3",
            IdentityId::T4 => "T4",
            IdentityId::T5 => "T5",
            IdentityId::T6 => "T6",
            IdentityId::T7 => "T7",
            IdentityId::T8 => "T8",
            IdentityId::T9 => "T9",
            IdentityId::T10 => "T10",
            IdentityId::T11 => "T11",
            IdentityId::C2Limit => "C2'",
            IdentityId::E6 => "E6",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for IdentityId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let up = s.trim().to_ascii_uppercase();
        if up == "C2" || up == "C2'" {
            return Ok(IdentityId::C2Limit);
        }
        IdentityId::ALL
            .into_iter()
            .find(|id| id.label() == up)
            .ok_or_else(|| format!("unknown identity id {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    VariantMatched,
}

/// The first grid point where two sides differed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub relation: String,
    pub params: BTreeMap<String, i64>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: IdentityId,
    pub status: Status,
    /// Inclusive `[min, max]` ranges of the grid.
    pub params: BTreeMap<String, [i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<Failure>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// True when no report failed.
pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(CheckReport::passed)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("series order {series_order} must be at least nmax + rmax + 1 = {needed}")]
    SeriesOrder { series_order: usize, needed: usize },
    #[error("{0} must be at least 1")]
    ZeroBound(&'static str),
}

/// Grid bounds for a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub nmax: usize,
    pub rmax: u32,
    pub kmax: u32,
    pub e6_kmax: u32,
    pub e6_mmax: usize,
    pub series_order: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            nmax: 12,
            rmax: 4,
            kmax: 4,
            e6_kmax: 3,
            e6_mmax: 8,
            series_order: 17,
        }
    }
}

impl RunConfig {
    /// Smallest valid series order for the given bounds.
    pub fn min_series_order(nmax: usize, rmax: u32) -> usize {
        nmax + rmax as usize + 1
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        for (name, v) in [
            ("rmax", self.rmax),
            ("kmax", self.kmax),
            ("e6 kmax", self.e6_kmax),
        ] {
            if v == 0 {
                return Err(ConfigError::ZeroBound(name));
            }
        }
        let needed = Self::min_series_order(self.nmax, self.rmax);
        if self.series_order < needed {
            return Err(ConfigError::SeriesOrder {
                series_order: self.series_order,
                needed,
            });
        }
        Ok(())
    }
}

/// Series-path sequences and Stirling tables shared by the checks.
///
/// Sequence vectors hold terms `0..=nmax` (`0..=max(nmax, e6_mmax)` for the
/// classical higher-order Daehee polynomials); per-order vectors are indexed
/// by `order - 1`. Tables reach `series_order`.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub config: RunConfig,
    pub exec: Exec,
    pub s1: StirlingTable,
    pub s2: StirlingTable,
    pub s1_deg: StirlingTable,
    pub s2_deg: StirlingTable,
    /// `D_{n,λ}(x)`
    pub degen_daehee: Vec<BiPoly>,
    /// `β_{n,λ}(x)`
    pub degen_bernoulli: Vec<BiPoly>,
    /// `B_n(x)`
    pub bernoulli: Vec<BiPoly>,
    /// `D_n(x)`
    pub daehee: Vec<BiPoly>,
    /// `D̂_{n,λ}^(k)`, k = 1..=kmax
    pub multiple: Vec<Vec<BiPoly>>,
    /// `D_{n,λ}^(r)(x)`, r = 1..=rmax
    pub higher_daehee: Vec<Vec<BiPoly>>,
    /// `β_{n,λ}^(r)(x)`, r = 1..=rmax
    pub higher_bernoulli: Vec<Vec<BiPoly>>,
    /// `D_n^(k)(x)`, k = 1..=max(rmax, e6_kmax)
    pub classical_higher_daehee: Vec<Vec<BiPoly>>,
    /// `B_n^(r)(x)`, r = 1..=rmax
    pub classical_higher_bernoulli: Vec<Vec<BiPoly>>,
}

impl Fixture {
    pub fn build(config: RunConfig, exec: Exec) -> Result<Self, ConfigError> {
        config.validate()?;
        let nmax = config.nmax;
        let order = config.series_order;
        let poly = Argument::Polynomial;
        let classical_kmax = config.rmax.max(config.e6_kmax);
        let classical_nmax = nmax.max(config.e6_mmax);

        let mut jobs: Vec<(SeqFamily, usize)> = vec![
            (SeqFamily::DegenDaehee(poly), nmax),
            (SeqFamily::DegenBernoulli(poly), nmax),
            (SeqFamily::Bernoulli(poly), nmax),
            (SeqFamily::Daehee(poly), nmax),
        ];
        jobs.extend((1..=config.kmax).map(|k| (SeqFamily::MultipleDegenDaehee { index: k }, nmax)));
        jobs.extend((1..=config.rmax).map(|r| {
            (
                SeqFamily::DegenDaeheeHigher {
                    order: r,
                    argument: poly,
                },
                nmax,
            )
        }));
        jobs.extend((1..=config.rmax).map(|r| {
            (
                SeqFamily::DegenBernoulliHigher {
                    order: r,
                    argument: poly,
                },
                nmax,
            )
        }));
        jobs.extend((1..=classical_kmax).map(|k| {
            (
                SeqFamily::DaeheeHigher {
                    order: k,
                    argument: poly,
                },
                classical_nmax,
            )
        }));
        jobs.extend((1..=config.rmax).map(|r| {
            (
                SeqFamily::BernoulliHigher {
                    order: r,
                    argument: poly,
                },
                nmax,
            )
        }));

        let (tables, mut families) = exec.join(
            || {
                exec.map(&StirlingKind::ALL, |&kind| {
                    StirlingTable::build(kind, order)
                })
            },
            || {
                exec.map(&jobs, |(family, n)| {
                    family
                        .generate_at(*n, order.max(*n))
                        .expect("fixture families have valid parameters")
                })
            },
        );
        let mut tables = tables.into_iter();
        let mut take = |count: usize| families.drain(..count).collect::<Vec<_>>();
        let single = |v: Vec<Vec<BiPoly>>| v.into_iter().next().expect("one job");

        let degen_daehee = single(take(1));
        let degen_bernoulli = single(take(1));
        let bernoulli = single(take(1));
        let daehee = single(take(1));
        let multiple = take(config.kmax as usize);
        let higher_daehee = take(config.rmax as usize);
        let higher_bernoulli = take(config.rmax as usize);
        let classical_higher_daehee = take(classical_kmax as usize);
        let classical_higher_bernoulli = take(config.rmax as usize);

        Ok(Fixture {
            config,
            exec,
            s1: tables.next().expect("four tables"),
            s2: tables.next().expect("four tables"),
            s1_deg: tables.next().expect("four tables"),
            s2_deg: tables.next().expect("four tables"),
            degen_daehee,
            degen_bernoulli,
            bernoulli,
            daehee,
            multiple,
            higher_daehee,
            higher_bernoulli,
            classical_higher_daehee,
            classical_higher_bernoulli,
        })
    }
}

/// First-failure tracker for one grid cell or one whole check.
#[derive(Debug, Default)]
struct Tally {
    failure: Option<Failure>,
}

impl Tally {
    fn compare(
        &mut self,
        relation: &str,
        params: &[(&str, i64)],
        lhs: &BiPoly,
        rhs: &BiPoly,
    ) -> bool {
        if lhs == rhs {
            return true;
        }
        if self.failure.is_none() {
            self.failure = Some(Failure {
                relation: relation.to_string(),
                params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
        false
    }

    fn compare_lists(
        &mut self,
        relation: &str,
        extra: &[(&str, i64)],
        lhs: &[BiPoly],
        rhs: &[BiPoly],
    ) {
        for (n, (a, b)) in lhs.iter().zip(rhs).enumerate() {
            let mut params = extra.to_vec();
            params.push(("n", n as i64));
            self.compare(relation, &params, a, b);
        }
        if lhs.len() != rhs.len() && self.failure.is_none() {
            self.failure = Some(Failure {
                relation: format!("{relation} (length)"),
                params: extra.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
                lhs: lhs.len().to_string(),
                rhs: rhs.len().to_string(),
            });
        }
    }

    /// Keeps the earliest failure across cells in grid order.
    fn merge(cells: Vec<Tally>) -> Tally {
        Tally {
            failure: cells.into_iter().find_map(|t| t.failure),
        }
    }

    fn into_report(
        self,
        id: IdentityId,
        params: &[(&str, i64, i64)],
        variant: Option<String>,
    ) -> CheckReport {
        let status = if self.failure.is_some() {
            Status::Fail
        } else {
            Status::Pass
        };
        CheckReport {
            id,
            status,
            params: ranges(params),
            variant,
            first_failure: self.failure,
        }
    }
}

fn ranges(params: &[(&str, i64, i64)]) -> BTreeMap<String, [i64; 2]> {
    params
        .iter()
        .map(|(k, lo, hi)| (k.to_string(), [*lo, *hi]))
        .collect()
}

fn at_x0(values: &[BiPoly]) -> Vec<BiPoly> {
    values.iter().map(|v| v.eval_x(&Rational::zero())).collect()
}

fn at_lambda0(values: &[BiPoly]) -> Vec<BiPoly> {
    values
        .iter()
        .map(|v| v.eval_lambda(&Rational::zero()))
        .collect()
}

fn lambda_pow(i: usize) -> BiPoly {
    BiPoly::monomial(Rational::one(), i, 0)
}

fn orders(max: u32) -> Vec<u32> {
    (1..=max).collect()
}

/// `D_{n,λ} = 1/(n+1) Σ_{m=1}^{n+1} λ^(m-1) S_1(n+1, m)`.
pub fn check_t1(fx: &Fixture) -> CheckReport {
    let nmax = fx.config.nmax;
    let mut t = Tally::default();
    t.compare_lists(
        "D_{n,λ} = 1/(n+1) Σ λ^(m-1) S1(n+1,m)",
        &[],
        &at_x0(&fx.degen_daehee),
        &degen_daehee_numbers_closed_form(nmax, &fx.s1),
    );
    t.into_report(IdentityId::T1, &[("n", 0, nmax as i64)], None)
}

/// `β_{n,λ}(x) = Σ D_{m,λ}(x) S_{2,λ}(n, m)`.
pub fn check_t2(fx: &Fixture) -> CheckReport {
    let mut t = Tally::default();
    t.compare_lists(
        "β_{n,λ}(x) = Σ D_{m,λ}(x) S2λ(n,m)",
        &[],
        &fx.degen_bernoulli,
        &fx.s2_deg.transform(&fx.degen_daehee),
    );
    t.into_report(IdentityId::T2, &[("n", 0, fx.config.nmax as i64)], None)
}

/// `D_{n,λ}(x) = Σ β_{m,λ}(x) S_{1,λ}(n, m)`, plus both round trips through
/// the T2/T3 transforms.
pub fn check_t3(fx: &Fixture) -> CheckReport {
    let mut t = Tally::default();
    let beta = &fx.degen_bernoulli;
    let daehee = &fx.degen_daehee;
    t.compare_lists(
        "D_{n,λ}(x) = Σ β_{m,λ}(x) S1λ(n,m)",
        &[],
        daehee,
        &fx.s1_deg.transform(beta),
    );
    t.compare_lists(
        "T3∘T2 round trip on D_{n,λ}(x)",
        &[],
        daehee,
        &fx.s1_deg.transform(&fx.s2_deg.transform(daehee)),
    );
    t.compare_lists(
        "T2∘T3 round trip on β_{n,λ}(x)",
        &[],
        beta,
        &fx.s2_deg.transform(&fx.s1_deg.transform(beta)),
    );
    t.into_report(IdentityId::T3, &[("n", 0, fx.config.nmax as i64)], None)
}

pub fn check_t2_t3(fx: &Fixture) -> [CheckReport; 2] {
    [check_t2(fx), check_t3(fx)]
}

/// `D_{n,λ}(x) = 1/(n+1) Σ (m+1) (x)_{m,λ} S_{1,λ}(n+1, m+1)`; at x = 0 the
/// closed form must coincide with the one of T1.
pub fn check_t4(fx: &Fixture) -> CheckReport {
    let nmax = fx.config.nmax;
    let closed = degen_daehee_closed_form(nmax, &fx.s1_deg);
    let mut t = Tally::default();
    t.compare_lists(
        "D_{n,λ}(x) = 1/(n+1) Σ (m+1)(x)_{m,λ} S1λ(n+1,m+1)",
        &[],
        &fx.degen_daehee,
        &closed,
    );
    t.compare_lists(
        "T4 closed form at x=0 equals T1 closed form",
        &[],
        &at_x0(&closed),
        &degen_daehee_numbers_closed_form(nmax, &fx.s1),
    );
    t.into_report(IdentityId::T4, &[("n", 0, nmax as i64)], None)
}

/// `D̂_{n,λ}^(k) = 1/(n+1) Σ λ^(m-1) m^(1-k) S_1(n+1, m)`, also against the
/// unit-cube expansion; k = 1 must reproduce T1 and `D_{n,λ}`.
pub fn check_t5(fx: &Fixture) -> CheckReport {
    let nmax = fx.config.nmax;
    let cells = fx.exec.map(&orders(fx.config.kmax), |&k| {
        let mut t = Tally::default();
        let series = &fx.multiple[k as usize - 1];
        let closed = multiple_degen_daehee_closed_form(k, nmax, &fx.s1);
        t.compare_lists(
            "D̂^(k)_{n,λ} series = closed form",
            &[("k", k as i64)],
            series,
            &closed,
        );
        t.compare_lists(
            "D̂^(k)_{n,λ} series = unit-cube expansion",
            &[("k", k as i64)],
            series,
            &multiple_degen_daehee_cube(k, nmax),
        );
        if k == 1 {
            t.compare_lists(
                "k=1 closed form = T1 closed form",
                &[("k", 1)],
                &closed,
                &degen_daehee_numbers_closed_form(nmax, &fx.s1),
            );
            t.compare_lists(
                "D̂^(1)_{n,λ} = D_{n,λ}",
                &[("k", 1)],
                series,
                &at_x0(&fx.degen_daehee),
            );
        }
        t
    });
    Tally::merge(cells).into_report(
        IdentityId::T5,
        &[("k", 1, fx.config.kmax as i64), ("n", 0, nmax as i64)],
        None,
    )
}

/// `Σ_m D̂_{m,λ}^(k) S_2(n, m) = Σ_l C(n, l) λ^(n-l) B_l / (n-l+1)^k`.
pub fn check_t6(fx: &Fixture) -> CheckReport {
    let nmax = fx.config.nmax;
    let b = at_x0(&fx.bernoulli);
    let cells = fx.exec.map(&orders(fx.config.kmax), |&k| {
        let mut t = Tally::default();
        let lhs = fx.s2.transform(&fx.multiple[k as usize - 1]);
        let rhs: Vec<BiPoly> = (0..=nmax)
            .map(|n| {
                let mut acc = BiPoly::zero();
                for (l, bl) in b.iter().enumerate().take(n + 1) {
                    let w = Rational::from_integer(binomial(n as u32, l as u32))
                        * Rational::from((n - l + 1) as i64)
                            .pow(-(k as i32))
                            .expect("positive");
                    acc += &(&lambda_pow(n - l) * bl).scale(&w);
                }
                acc
            })
            .collect();
        t.compare_lists(
            "Σ D̂^(k)_{m,λ} S2(n,m) = Σ C(n,l) λ^(n-l) B_l/(n-l+1)^k",
            &[("k", k as i64)],
            &lhs,
            &rhs,
        );
        t
    });
    Tally::merge(cells).into_report(
        IdentityId::T6,
        &[("k", 1, fx.config.kmax as i64), ("n", 0, nmax as i64)],
        None,
    )
}

/// Outcome of evaluating one reading of an identity over a grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReadingOutcome {
    pub reading: &'static str,
    pub first_failure: Option<Failure>,
}

impl ReadingOutcome {
    pub fn holds(&self) -> bool {
        self.first_failure.is_none()
    }
}

fn describe_failure(f: &Failure) -> String {
    let at: Vec<String> = f.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("first mismatch at {}", at.join(", "))
}

/// Report for an identity probed under several readings.
fn readings_report(
    id: IdentityId,
    params: &[(&str, i64, i64)],
    readings: Vec<ReadingOutcome>,
) -> CheckReport {
    let summary: Vec<String> = readings
        .iter()
        .map(|r| match &r.first_failure {
            None => format!("{}: holds on the full grid", r.reading),
            Some(f) => format!("{}: fails ({})", r.reading, describe_failure(f)),
        })
        .collect();
    let holding: Vec<&ReadingOutcome> = readings.iter().filter(|r| r.holds()).collect();
    let (status, first_failure) = match holding.len() {
        0 => (Status::Fail, readings[0].first_failure.clone()),
        n if n == readings.len() => (Status::Pass, None),
        _ => (Status::VariantMatched, None),
    };
    let variant = match holding.first() {
        Some(r) if status == Status::VariantMatched => {
            Some(format!("confirmed {}; {}", r.reading, summary.join("; ")))
        }
        _ => Some(summary.join("; ")),
    };
    CheckReport {
        id,
        status,
        params: ranges(params),
        variant,
        first_failure,
    }
}

pub const T7_PRINTED_RANGE: &str = "sum over m = 1..n";
pub const T7_DERIVED_RANGE: &str = "sum over m = 1..n+1";

/// Evaluates `1/(n+1) Σ m D̂_{m-1,λ}^(k) S_2(n+1, m)` against `λ^n/(n+1)^k`
/// with the upper limit `n` and with `n + 1`.
pub fn probe_t7(fx: &Fixture) -> Vec<ReadingOutcome> {
    let nmax = fx.config.nmax;
    let cells = fx.exec.map(&orders(fx.config.kmax), |&k| {
        let d = &fx.multiple[k as usize - 1];
        let mut printed = Tally::default();
        let mut derived = Tally::default();
        for n in 0..=nmax {
            let target = lambda_pow(n).scale(
                &Rational::from(n as i64 + 1)
                    .pow(-(k as i32))
                    .expect("positive"),
            );
            let partial = |upper: usize| {
                let mut acc = BiPoly::zero();
                for m in 1..=upper {
                    acc += &(&d[m - 1] * fx.s2.get(n + 1, m)).scale(&Rational::from(m as i64));
                }
                acc.scale(&Rational::frac(1, n as i64 + 1))
            };
            let params = [("k", k as i64), ("n", n as i64)];
            printed.compare(
                "λ^n/(n+1)^k = 1/(n+1) Σ_{m=1}^{n}",
                &params,
                &target,
                &partial(n),
            );
            derived.compare(
                "λ^n/(n+1)^k = 1/(n+1) Σ_{m=1}^{n+1}",
                &params,
                &target,
                &partial(n + 1),
            );
        }
        (printed, derived)
    });
    let (printed, derived): (Vec<Tally>, Vec<Tally>) = cells.into_iter().unzip();
    vec![
        ReadingOutcome {
            reading: T7_PRINTED_RANGE,
            first_failure: Tally::merge(printed).failure,
        },
        ReadingOutcome {
            reading: T7_DERIVED_RANGE,
            first_failure: Tally::merge(derived).failure,
        },
    ]
}

pub fn check_t7(fx: &Fixture) -> CheckReport {
    readings_report(
        IdentityId::T7,
        &[
            ("k", 1, fx.config.kmax as i64),
            ("n", 0, fx.config.nmax as i64),
        ],
        probe_t7(fx),
    )
}

/// `D_{n,λ}^(r) = S_{1,λ}(n+r, r) / C(n+r, n)`.
pub fn check_t8(fx: &Fixture) -> CheckReport {
    let nmax = fx.config.nmax;
    let cells = fx.exec.map(&orders(fx.config.rmax), |&r| {
        let mut t = Tally::default();
        t.compare_lists(
            "D^(r)_{n,λ} = S1λ(n+r,r)/C(n+r,n)",
            &[("r", r as i64)],
            &at_x0(&fx.higher_daehee[r as usize - 1]),
            &higher_degen_daehee_closed_form(r, nmax, &fx.s1_deg),
        );
        t
    });
    Tally::merge(cells).into_report(
        IdentityId::T8,
        &[("r", 1, fx.config.rmax as i64), ("n", 0, nmax as i64)],
        None,
    )
}

/// `β_{n,λ}^(r)(x) = Σ D_{k,λ}^(r)(x) S_{2,λ}(n, k)`.
pub fn check_t9(fx: &Fixture) -> CheckReport {
    let cells = fx.exec.map(&orders(fx.config.rmax), |&r| {
        let i = r as usize - 1;
        let mut t = Tally::default();
        t.compare_lists(
            "β^(r)_{n,λ}(x) = Σ D^(r)_{k,λ}(x) S2λ(n,k)",
            &[("r", r as i64)],
            &fx.higher_bernoulli[i],
            &fx.s2_deg.transform(&fx.higher_daehee[i]),
        );
        t
    });
    Tally::merge(cells).into_report(
        IdentityId::T9,
        &[
            ("r", 1, fx.config.rmax as i64),
            ("n", 0, fx.config.nmax as i64),
        ],
        None,
    )
}

/// `D_{n,λ}^(r)(x) = Σ β_{k,λ}^(r)(x) S_{1,λ}(n, k)` and the round trips.
pub fn check_t10(fx: &Fixture) -> CheckReport {
    let cells = fx.exec.map(&orders(fx.config.rmax), |&r| {
        let i = r as usize - 1;
        let (beta, daehee) = (&fx.higher_bernoulli[i], &fx.higher_daehee[i]);
        let p = [("r", r as i64)];
        let mut t = Tally::default();
        t.compare_lists(
            "D^(r)_{n,λ}(x) = Σ β^(r)_{k,λ}(x) S1λ(n,k)",
            &p,
            daehee,
            &fx.s1_deg.transform(beta),
        );
        t.compare_lists(
            "T10∘T9 round trip on D^(r)_{n,λ}(x)",
            &p,
            daehee,
            &fx.s1_deg.transform(&fx.s2_deg.transform(daehee)),
        );
        t.compare_lists(
            "T9∘T10 round trip on β^(r)_{n,λ}(x)",
            &p,
            beta,
            &fx.s2_deg.transform(&fx.s1_deg.transform(beta)),
        );
        t
    });
    Tally::merge(cells).into_report(
        IdentityId::T10,
        &[
            ("r", 1, fx.config.rmax as i64),
            ("n", 0, fx.config.nmax as i64),
        ],
        None,
    )
}

pub fn check_t9_t10(fx: &Fixture) -> [CheckReport; 2] {
    [check_t9(fx), check_t10(fx)]
}

pub const T11_READING: &str =
    "convolution sum taken over l_1+...+l_r = n; factor (1_r+1) read as (l_r+1)";

/// Higher-order degenerate Daehee numbers as an r-fold multinomial
/// convolution of `D_{·,λ}` and as the λ-expansion through `S_1` and
/// unit-cube moments.
pub fn check_t11(fx: &Fixture) -> CheckReport {
    let nmax = fx.config.nmax;
    let base = at_x0(&fx.degen_daehee);
    let cells = fx.exec.map(&orders(fx.config.rmax), |&r| {
        let series = at_x0(&fx.higher_daehee[r as usize - 1]);
        let p = [("r", r as i64)];
        let mut t = Tally::default();
        t.compare_lists(
            "D^(r)_{n,λ} = Σ_{l_1+..+l_r=n} C(n;l) D_{l_1,λ}..D_{l_r,λ}",
            &p,
            &series,
            &multinomial_convolution(r, &base),
        );
        t.compare_lists(
            "D^(r)_{n,λ} = Σ λ^m μ_r(m) S1(n+r,m+r) C(m+r,r)/C(n+r,r)",
            &p,
            &series,
            &higher_degen_daehee_moment_form(r, nmax, &fx.s1),
        );
        t
    });
    Tally::merge(cells).into_report(
        IdentityId::T11,
        &[("r", 1, fx.config.rmax as i64), ("n", 0, nmax as i64)],
        Some(T11_READING.to_string()),
    )
}

/// λ = 0 specializations: the classical transfer identities between
/// Bernoulli and Daehee polynomials, the classical closed forms obtained from
/// T1 and T4, and the reduction of every degenerate family and table to its
/// classical counterpart.
pub fn check_limits(fx: &Fixture) -> CheckReport {
    let nmax = fx.config.nmax;
    let zero = Rational::zero();
    let mut t = Tally::default();

    t.compare_lists(
        "B_n(x) = Σ D_m(x) S2(n,m)",
        &[],
        &fx.bernoulli,
        &fx.s2.transform(&fx.daehee),
    );
    t.compare_lists(
        "D_n(x) = Σ B_m(x) S1(n,m)",
        &[],
        &fx.daehee,
        &fx.s1.transform(&fx.bernoulli),
    );
    t.compare_lists(
        "D_{n,λ}(x) at λ=0 = D_n(x)",
        &[],
        &at_lambda0(&fx.degen_daehee),
        &fx.daehee,
    );
    t.compare_lists(
        "β_{n,λ}(x) at λ=0 = B_n(x)",
        &[],
        &at_lambda0(&fx.degen_bernoulli),
        &fx.bernoulli,
    );

    let closed: Vec<BiPoly> = (0..=nmax)
        .map(|n| {
            let sign: i64 = if n % 2 == 0 { 1 } else { -1 };
            BiPoly::constant(
                Rational::from_integer(factorial(n as u32) * sign)
                    * Rational::frac(1, n as i64 + 1),
            )
        })
        .collect();
    t.compare_lists(
        "D_{n,λ} at λ=0 = (-1)^n n!/(n+1)",
        &[],
        &at_x0(&at_lambda0(&fx.degen_daehee)),
        &closed,
    );
    t.compare_lists("D_n = (-1)^n n!/(n+1)", &[], &at_x0(&fx.daehee), &closed);
    let t1_limit: Vec<BiPoly> = (0..=nmax)
        .map(|n| fx.s1.get(n + 1, 1).scale(&Rational::frac(1, n as i64 + 1)))
        .collect();
    t.compare_lists(
        "T1 at λ=0: D_n = S1(n+1,1)/(n+1)",
        &[],
        &at_x0(&fx.daehee),
        &t1_limit,
    );
    let t4_limit: Vec<BiPoly> = (0..=nmax)
        .map(|n| {
            let mut acc = BiPoly::zero();
            for m in 0..=n {
                let xm = BiPoly::monomial(Rational::from(m as i64 + 1), 0, m);
                acc += &(&xm * fx.s1.get(n + 1, m + 1));
            }
            acc.scale(&Rational::frac(1, n as i64 + 1))
        })
        .collect();
    t.compare_lists(
        "T4 at λ=0: D_n(x) = 1/(n+1) Σ (m+1) x^m S1(n+1,m+1)",
        &[],
        &fx.daehee,
        &t4_limit,
    );

    for r in 1..=fx.config.rmax {
        let i = r as usize - 1;
        let p = [("r", r as i64)];
        t.compare_lists(
            "D^(r)_{n,λ}(x) at λ=0 = D^(r)_n(x)",
            &p,
            &at_lambda0(&fx.higher_daehee[i]),
            &fx.classical_higher_daehee[i][..=nmax],
        );
        t.compare_lists(
            "β^(r)_{n,λ}(x) at λ=0 = B^(r)_n(x)",
            &p,
            &at_lambda0(&fx.higher_bernoulli[i]),
            &fx.classical_higher_bernoulli[i],
        );
    }
    let classical_numbers = at_x0(&fx.daehee);
    for k in 1..=fx.config.kmax {
        t.compare_lists(
            "D̂^(k)_{n,λ} at λ=0 = D_n",
            &[("k", k as i64)],
            &at_lambda0(&fx.multiple[k as usize - 1]),
            &classical_numbers,
        );
    }
    for (deg, classical, name) in [
        (&fx.s1_deg, &fx.s1, "S1λ(n,l) at λ=0 = S1(n,l)"),
        (&fx.s2_deg, &fx.s2, "S2λ(n,l) at λ=0 = S2(n,l)"),
    ] {
        let limit = deg.eval_lambda(&zero);
        for n in 0..=deg.nmax() {
            for l in 0..=n {
                t.compare(
                    name,
                    &[("n", n as i64), ("l", l as i64)],
                    limit.get(n, l),
                    classical.get(n, l),
                );
            }
        }
    }
    t.into_report(
        IdentityId::C2Limit,
        &[
            ("k", 1, fx.config.kmax as i64),
            ("n", 0, nmax as i64),
            ("r", 1, fx.config.rmax as i64),
        ],
        None,
    )
}

pub const E6_FIXED_INDEX: &str = "printed reading with b_m^(-k) (index fixed at m)";
pub const E6_RUNNING_INDEX: &str = "reading with b_n^(-k) (index running with the sum)";

/// Compares `D_m^(k)(z)` with both readings of
/// `m! Σ_{n=0}^{m} C(z, m-n) b^(-k)`.
pub fn probe_e6(fx: &Fixture) -> Vec<ReadingOutcome> {
    let mmax = fx.config.e6_mmax;
    let cells = fx.exec.map(&orders(fx.config.e6_kmax), |&k| {
        let d = &fx.classical_higher_daehee[k as usize - 1];
        let mut fixed = Tally::default();
        let mut running = Tally::default();
        for (m, dm) in d.iter().enumerate().take(mmax + 1) {
            let readings = higher_daehee_index_readings(k, m);
            let params = [("k", k as i64), ("m", m as i64)];
            fixed.compare(
                "D_m^(k)(z) = m! Σ C(z,m-n) b_m^(-k)",
                &params,
                dm,
                &readings.fixed_index,
            );
            running.compare(
                "D_m^(k)(z) = m! Σ C(z,m-n) b_n^(-k)",
                &params,
                dm,
                &readings.running_index,
            );
        }
        (fixed, running)
    });
    let (fixed, running): (Vec<Tally>, Vec<Tally>) = cells.into_iter().unzip();
    vec![
        ReadingOutcome {
            reading: E6_FIXED_INDEX,
            first_failure: Tally::merge(fixed).failure,
        },
        ReadingOutcome {
            reading: E6_RUNNING_INDEX,
            first_failure: Tally::merge(running).failure,
        },
    ]
}

pub fn check_e6(fx: &Fixture) -> CheckReport {
    readings_report(
        IdentityId::E6,
        &[
            ("k", 1, fx.config.e6_kmax as i64),
            ("m", 0, fx.config.e6_mmax as i64),
        ],
        probe_e6(fx),
    )
}

/// Runs one check against a prepared fixture.
pub fn check(id: IdentityId, fx: &Fixture) -> CheckReport {
    match id {
        IdentityId::T1 => check_t1(fx),
        IdentityId::T2 => check_t2(fx),
        IdentityId::T3 => check_t3(fx),
        IdentityId::T4 => check_t4(fx),
        IdentityId::T5 => check_t5(fx),
        IdentityId::T6 => check_t6(fx),
        IdentityId::T7 => check_t7(fx),
        IdentityId::T8 => check_t8(fx),
        IdentityId::T9 => check_t9(fx),
        IdentityId::T10 => check_t10(fx),
        IdentityId::T11 => check_t11(fx),
        IdentityId::C2Limit => check_limits(fx),
        IdentityId::E6 => check_e6(fx),
    }
}

/// Runs the given checks; reports come back in the order of `ids`.
pub fn run_selected(
    config: RunConfig,
    ids: &[IdentityId],
    exec: Exec,
) -> Result<Vec<CheckReport>, ConfigError> {
    let fx = Fixture::build(config, exec)?;
    Ok(exec.map(ids, |&id| check(id, &fx)))
}

/// Runs every registered check in identity order.
pub fn run_all(config: RunConfig) -> Result<Vec<CheckReport>, ConfigError> {
    run_all_with(config, Exec::default())
}

pub fn run_all_with(config: RunConfig, exec: Exec) -> Result<Vec<CheckReport>, ConfigError> {
    run_selected(config, &IdentityId::ALL, exec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> RunConfig {
        RunConfig {
            nmax: 6,
            rmax: 3,
            kmax: 3,
            e6_kmax: 2,
            e6_mmax: 5,
            series_order: 10,
        }
    }

    fn fixture() -> Fixture {
        Fixture::build(small(), Exec::Sequential).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(RunConfig::default().validate().is_ok());
        let bad = RunConfig {
            series_order: 16,
            ..RunConfig::default()
        };
        assert_eq!(
            bad.validate(),
            Err(ConfigError::SeriesOrder {
                series_order: 16,
                needed: 17
            })
        );
        let zero_r = RunConfig {
            rmax: 0,
            ..RunConfig::default()
        };
        assert!(zero_r.validate().is_err());
    }

    #[test]
    fn small_grid_passes() {
        let fx = fixture();
        for id in IdentityId::ALL {
            let report = check(id, &fx);
            assert!(report.passed(), "{id}: {report:?}");
            assert!(report.first_failure.is_none());
        }
    }

    #[test]
    fn t1_low_terms() {
        let fx = fixture();
        let closed = degen_daehee_numbers_closed_form(1, &fx.s1);
        assert_eq!(closed[0], BiPoly::one());
        assert_eq!(closed[1], "1/2*λ - 1/2".parse().unwrap());
    }

    #[test]
    fn t7_confirms_derived_range() {
        let fx = fixture();
        let outcomes = probe_t7(&fx);
        assert!(!outcomes[0].holds());
        assert!(outcomes[1].holds());
        let f = outcomes[0].first_failure.as_ref().unwrap();
        assert_eq!(f.params["k"], 1);
        assert_eq!(f.params["n"], 0);
        let report = check_t7(&fx);
        assert_eq!(report.status, Status::VariantMatched);
        assert!(report
            .variant
            .unwrap()
            .starts_with("confirmed sum over m = 1..n+1"));
    }

    #[test]
    fn e6_running_index_matches() {
        let fx = fixture();
        let outcomes = probe_e6(&fx);
        assert!(!outcomes[0].holds());
        assert!(outcomes[1].holds());
        let f = outcomes[0].first_failure.as_ref().unwrap();
        assert_eq!((f.params["k"], f.params["m"]), (1, 1));
        assert_eq!(check_e6(&fx).status, Status::VariantMatched);
    }

    #[test]
    fn zero_grid_trivially_passes() {
        let cfg = RunConfig {
            nmax: 0,
            rmax: 1,
            kmax: 1,
            e6_kmax: 1,
            e6_mmax: 0,
            series_order: 2,
        };
        let reports = run_all_with(cfg, Exec::Sequential).unwrap();
        assert_eq!(reports.len(), 13);
        assert!(all_passed(&reports));
    }

    #[test]
    fn tampered_sequence_is_caught() {
        let mut fx = fixture();
        fx.degen_daehee[3] += &BiPoly::one();
        let t1 = check_t1(&fx);
        assert_eq!(t1.status, Status::Fail);
        let f = t1.first_failure.unwrap();
        assert_eq!(f.params["n"], 3);
        assert_ne!(f.lhs, f.rhs);
        assert_eq!(check_t4(&fx).status, Status::Fail);

        let mut fx = fixture();
        fx.higher_daehee[1][2] = BiPoly::zero();
        let t8 = check_t8(&fx);
        assert_eq!(t8.status, Status::Fail);
        let f = t8.first_failure.unwrap();
        assert_eq!((f.params["r"], f.params["n"]), (2, 2));
        assert!(check_t1(&fx).passed());
    }

    #[test]
    fn report_json_shape() {
        let fx = fixture();
        let json = serde_json::to_string(&check_t1(&fx)).unwrap();
        assert_eq!(json, r#"{"id":"T1","status":"pass","params":{"n":[0,6]}}"#);
        let limit = serde_json::to_value(check_limits(&fx)).unwrap();
        assert_eq!(limit["id"], "C2'");
        let back: CheckReport =
            serde_json::from_str(&serde_json::to_string(&check_t7(&fx)).unwrap()).unwrap();
        assert_eq!(back.status, Status::VariantMatched);
        assert_eq!("c2".parse::<IdentityId>(), Ok(IdentityId::C2Limit));
        assert_eq!("t10".parse::<IdentityId>(), Ok(IdentityId::T10));
        assert!("T12".parse::<IdentityId>().is_err());
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let seq = run_all_with(small(), Exec::Sequential).unwrap();
        let par = run_all_with(small(), Exec::Parallel).unwrap();
        assert_eq!(seq, par);
        let ids: Vec<IdentityId> = seq.iter().map(|r| r.id).collect();
        assert_eq!(ids, IdentityId::ALL.to_vec());
    }
}
