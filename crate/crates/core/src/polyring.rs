//! Dense bivariate polynomials over ℚ in the parameter λ and the argument x.
//!
//! Storage is x-major: `rows[j][i]` is the coefficient of `λ^i x^j`. Rows have
//! no trailing zeros and there are no trailing empty rows, so the zero
//! polynomial is the empty vector and derived equality is exact equality.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use thiserror::Error;

use crate::exactnum::{Rational, RationalError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyParseError {
    #[error("empty polynomial text")]
    Empty,
    #[error("bad factor {0:?}")]
    Factor(String),
    #[error(transparent)]
    Rational(#[from] RationalError),
}

/// An element of ℚ[λ, x].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    rows: Vec<Vec<Rational>>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly { rows: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `c · λ^lambda_deg · x^x_deg`.
    pub fn monomial(c: Rational, lambda_deg: usize, x_deg: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut rows = vec![Vec::new(); x_deg + 1];
        let mut row = vec![Rational::zero(); lambda_deg + 1];
        row[lambda_deg] = c;
        rows[x_deg] = row;
        BiPoly { rows }
    }

    pub fn lambda() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    /// Builds from x-major rows, trimming to canonical form.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let mut p = BiPoly { rows };
        p.normalize();
        p
    }

    /// A polynomial in λ alone from its ascending coefficients.
    pub fn from_lambda_coeffs(coeffs: Vec<Rational>) -> Self {
        Self::from_rows(vec![coeffs])
    }

    fn normalize(&mut self) {
        for row in &mut self.rows {
            while row.last().is_some_and(Rational::is_zero) {
                row.pop();
            }
        }
        while self.rows.last().is_some_and(Vec::is_empty) {
            self.rows.pop();
        }
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Degree in x, `None` for the zero polynomial.
    pub fn deg_x(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    /// Degree in λ, `None` for the zero polynomial.
    pub fn deg_lambda(&self) -> Option<usize> {
        self.rows
            .iter()
            .map(Vec::len)
            .max()
            .and_then(|l| l.checked_sub(1))
    }

    /// Coefficient of `λ^lambda_deg x^x_deg`.
    pub fn coeff(&self, lambda_deg: usize, x_deg: usize) -> Rational {
        self.rows
            .get(x_deg)
            .and_then(|r| r.get(lambda_deg))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// The value if the polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.rows.as_slice() {
            [] => Some(Rational::zero()),
            [row] if row.len() == 1 => Some(row[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BiPoly {
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(|a| a * c).collect())
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Substitutes λ := v.
    pub fn eval_lambda(&self, v: &Rational) -> Self {
        let rows = self.rows.iter().map(|row| vec![horner(row, v)]).collect();
        Self::from_rows(rows)
    }

    /// Substitutes x := v.
    pub fn eval_x(&self, v: &Rational) -> Self {
        let width = self.rows.iter().map(Vec::len).max().unwrap_or(0);
        let mut out = vec![Rational::zero(); width];
        for row in self.rows.iter().rev() {
            for a in out.iter_mut() {
                *a *= v;
            }
            for (a, c) in out.iter_mut().zip(row) {
                *a += c;
            }
        }
        Self::from_rows(vec![out])
    }

    /// Exact division by λ, or `None` when some term has λ-degree 0.
    pub fn div_lambda(&self) -> Option<Self> {
        let mut rows = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            match row.split_first() {
                None => rows.push(Vec::new()),
                Some((c0, rest)) if c0.is_zero() => rows.push(rest.to_vec()),
                Some(_) => return None,
            }
        }
        Some(Self::from_rows(rows))
    }

    /// Iterates nonzero terms as `(coefficient, λ-degree, x-degree)`, ordered by
    /// x-degree then λ-degree.
    pub fn terms(&self) -> impl Iterator<Item = (&Rational, usize, usize)> {
        self.rows.iter().enumerate().flat_map(|(j, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(i, c)| (c, i, j))
        })
    }
}

fn horner(coeffs: &[Rational], v: &Rational) -> Rational {
    coeffs
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * v + c)
}

/// The falling factorial `x(x-1)...(x-n+1)`.
pub fn falling_factorial(n: usize) -> BiPoly {
    (0..n).fold(BiPoly::one(), |acc, i| {
        let factor = BiPoly::x() - BiPoly::constant(Rational::from(i as i64));
        &acc * &factor
    })
}

/// The degenerate falling factorial `x(x-λ)(x-2λ)...(x-(n-1)λ)`.
pub fn degenerate_falling_factorial(n: usize) -> BiPoly {
    (0..n).fold(BiPoly::one(), |acc, i| {
        let factor = BiPoly::x() - BiPoly::monomial(Rational::from(i as i64), 1, 0);
        &acc * &factor
    })
}

fn add_rows(a: &mut Vec<Vec<Rational>>, b: &[Vec<Rational>], negate: bool) {
    if a.len() < b.len() {
        a.resize(b.len(), Vec::new());
    }
    for (ra, rb) in a.iter_mut().zip(b) {
        if ra.len() < rb.len() {
            ra.resize(rb.len(), Rational::zero());
        }
        for (x, y) in ra.iter_mut().zip(rb) {
            if negate {
                *x -= y;
            } else {
                *x += y;
            }
        }
    }
}

impl AddAssign<&BiPoly> for BiPoly {
    fn add_assign(&mut self, rhs: &BiPoly) {
        add_rows(&mut self.rows, &rhs.rows, false);
        self.normalize();
    }
}

impl SubAssign<&BiPoly> for BiPoly {
    fn sub_assign(&mut self, rhs: &BiPoly) {
        add_rows(&mut self.rows, &rhs.rows, true);
        self.normalize();
    }
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for BiPoly {
    type Output = BiPoly;
    fn add(mut self, rhs: BiPoly) -> BiPoly {
        self += &rhs;
        self
    }
}

impl Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for BiPoly {
    type Output = BiPoly;
    fn sub(mut self, rhs: BiPoly) -> BiPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(|c| -c).collect())
                .collect(),
        }
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;

    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let width_a = self.rows.iter().map(Vec::len).max().unwrap_or(0);
        let width_b = rhs.rows.iter().map(Vec::len).max().unwrap_or(0);
        let mut rows = vec![
            vec![Rational::zero(); width_a + width_b - 1];
            self.rows.len() + rhs.rows.len() - 1
        ];
        for (ja, ra) in self.rows.iter().enumerate() {
            for (ia, a) in ra.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (jb, rb) in rhs.rows.iter().enumerate() {
                    let out = &mut rows[ja + jb];
                    for (ib, b) in rb.iter().enumerate() {
                        if !b.is_zero() {
                            out[ia + ib] += a * b;
                        }
                    }
                }
            }
        }
        BiPoly::from_rows(rows)
    }
}

impl Mul for BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: BiPoly) -> BiPoly {
        &self * &rhs
    }
}

impl From<Rational> for BiPoly {
    fn from(c: Rational) -> Self {
        BiPoly::constant(c)
    }
}

impl fmt::Display for BiPoly {
    /// Canonical text: terms `c*λ^i*x^j` in ascending (j, i) order, e.g.
    /// `-1/2 + 1/2*λ + x`. Unit exponents are written bare and the
    /// coefficient is always present.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (c, i, j)) in self.terms().enumerate() {
            let shown = if idx == 0 {
                c.to_string()
            } else if c.is_negative() {
                f.write_str(" - ")?;
                (-c).to_string()
            } else {
                f.write_str(" + ")?;
                c.to_string()
            };
            f.write_str(&shown)?;
            match i {
                0 => {}
                1 => f.write_str("*λ")?,
                _ => write!(f, "*λ^{i}")?,
            }
            match j {
                0 => {}
                1 => f.write_str("*x")?,
                _ => write!(f, "*x^{j}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

fn parse_power(factor: &str, base: &str) -> Result<Option<usize>, PolyParseError> {
    let Some(rest) = factor.strip_prefix(base) else {
        return Ok(None);
    };
    if rest.is_empty() {
        return Ok(Some(1));
    }
    rest.strip_prefix('^')
        .and_then(|e| e.parse::<usize>().ok())
        .map(Some)
        .ok_or_else(|| PolyParseError::Factor(factor.to_string()))
}

fn parse_term(term: &str, negative: bool) -> Result<BiPoly, PolyParseError> {
    let mut coeff = if negative {
        -Rational::one()
    } else {
        Rational::one()
    };
    let (mut li, mut xj) = (0usize, 0usize);
    for factor in term.split('*') {
        if factor.is_empty() {
            return Err(PolyParseError::Factor(term.to_string()));
        }
        if let Some(e) = parse_power(factor, "lambda")?.or(parse_power(factor, "λ")?) {
            li += e;
        } else if let Some(e) = parse_power(factor, "x")? {
            xj += e;
        } else {
            coeff *= factor.parse::<Rational>()?;
        }
    }
    Ok(BiPoly::monomial(coeff, li, xj))
}

impl FromStr for BiPoly {
    type Err = PolyParseError;

    /// Parses the canonical text form and reasonable variants of it (terms in
    /// any order, repeated factors, implicit unit coefficients, `lambda`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(PolyParseError::Empty);
        }
        let mut out = BiPoly::zero();
        let mut negative = false;
        let mut start = 0;
        let bytes: Vec<(usize, char)> = compact.char_indices().collect();
        for (pos, &(idx, ch)) in bytes.iter().enumerate() {
            if (ch == '+' || ch == '-') && pos > 0 {
                out += &parse_term(&compact[start..idx], negative)?;
                negative = ch == '-';
                start = idx + 1;
            } else if pos == 0 && ch == '-' {
                negative = true;
                start = 1;
            } else if pos == 0 && ch == '+' {
                start = 1;
            }
        }
        out += &parse_term(&compact[start..], negative)?;
        Ok(out)
    }
}
