//! Scalars of the max-plus semiring and its min-plus dual.
//!
//! A [`TropScalar`] is either a finite rational, `ε = -∞` (the max-plus
//! zero) or `⊤ = +∞`. `⊤` only shows up through conjugation and is consumed
//! by the dual product [`otimes_prime`].
//!
//! The primal pair `(⊕, ⊗) = (max, +)` treats `ε` as absorbing for `⊗`.
//! The dual pair `(⊕′, ⊗′) = (min, +)` resolves the clash `ε ⊗′ ⊤` to `⊤`.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{CheckedAdd, CheckedMul, Signed};

use crate::error::{Error, Result};

/// Extended rational: `ε < every finite value < ⊤`.
///
/// The derived ordering follows declaration order, so `Eps < Fin(_) < Top`
/// and finite values compare by payload.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TropScalar {
    /// `ε = -∞`, the identity of `⊕`.
    Eps,
    Fin(Rational64),
    /// `⊤ = +∞`, the identity of `⊕′`.
    Top,
}

use TropScalar::{Eps, Fin, Top};

impl TropScalar {
    /// The `⊗` identity.
    pub const ONE: TropScalar = Fin(Rational64::new_raw(0, 1));

    pub fn int(v: i64) -> Self {
        Fin(Rational64::from_integer(v))
    }

    /// Finite value `numer / denom`.
    ///
    /// # Panics
    /// If `denom` is zero.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        Fin(Rational64::new(numer, denom))
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Fin(_))
    }

    pub fn is_eps(self) -> bool {
        self == Eps
    }

    pub fn is_top(self) -> bool {
        self == Top
    }

    pub fn finite(self) -> Option<Rational64> {
        match self {
            Fin(v) => Some(v),
            _ => None,
        }
    }

    /// `true` for finite values with denominator one.
    pub fn is_integer(self) -> bool {
        matches!(self, Fin(v) if v.is_integer())
    }
}

impl From<i64> for TropScalar {
    fn from(v: i64) -> Self {
        TropScalar::int(v)
    }
}

impl From<Rational64> for TropScalar {
    fn from(v: Rational64) -> Self {
        Fin(v)
    }
}

/// `a ⊕ b = max(a, b)`.
pub fn oplus(a: TropScalar, b: TropScalar) -> TropScalar {
    a.max(b)
}

/// `a ⊗ b = a + b`; `ε` absorbs everything, `⊤` included.
pub fn otimes(a: TropScalar, b: TropScalar) -> TropScalar {
    match (a, b) {
        (Eps, _) | (_, Eps) => Eps,
        (Top, _) | (_, Top) => Top,
        (Fin(x), Fin(y)) => Fin(x + y),
    }
}

/// `a ⊕′ b = min(a, b)`.
pub fn oplus_prime(a: TropScalar, b: TropScalar) -> TropScalar {
    a.min(b)
}

/// `a ⊗′ b = a + b`, except that `ε ⊗′ ⊤ = ⊤ ⊗′ ε = ⊤`.
pub fn otimes_prime(a: TropScalar, b: TropScalar) -> TropScalar {
    match (a, b) {
        (Top, _) | (_, Top) => Top,
        (Eps, _) | (_, Eps) => Eps,
        (Fin(x), Fin(y)) => Fin(x + y),
    }
}

/// Negation extended by `-ε = ⊤` and `-⊤ = ε`.
pub fn neg(a: TropScalar) -> TropScalar {
    match a {
        Eps => Top,
        Top => Eps,
        Fin(x) => Fin(-x),
    }
}

impl std::ops::Neg for TropScalar {
    type Output = TropScalar;

    fn neg(self) -> TropScalar {
        neg(self)
    }
}

/// Tokens: `*` and `-inf` are `ε`, `+inf` is `⊤`, otherwise a decimal
/// literal (`-3`, `2.5`) or a fraction (`7/3`).
impl FromStr for TropScalar {
    type Err = String;

    fn from_str(tok: &str) -> std::result::Result<Self, String> {
        match tok {
            "*" | "-inf" => return Ok(Eps),
            "+inf" => return Ok(Top),
            _ => {}
        }
        if let Some((n, d)) = tok.split_once('/') {
            let numer: i64 = parse_integer(n).ok_or_else(|| bad_token(tok))?;
            let denom: i64 = Some(d)
                .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
                .and_then(|d| d.parse().ok())
                .filter(|d: &i64| *d > 0)
                .ok_or_else(|| bad_token(tok))?;
            return Ok(Fin(Rational64::new(numer, denom)));
        }
        parse_decimal(tok).map(Fin).ok_or_else(|| bad_token(tok))
    }
}

fn bad_token(tok: &str) -> String {
    format!("malformed scalar token `{tok}`")
}

fn parse_integer(s: &str) -> Option<i64> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn parse_decimal(tok: &str) -> Option<Rational64> {
    let (negative, body) = match tok.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, tok),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
        || (body.contains('.') && frac_part.is_empty())
    {
        return None;
    }
    let mut numer: i64 = 0;
    let mut denom: i64 = 1;
    for b in int_part.bytes().chain(frac_part.bytes()) {
        numer = numer.checked_mul(10)?.checked_add(i64::from(b - b'0'))?;
    }
    for _ in 0..frac_part.len() {
        denom = denom.checked_mul(10)?;
    }
    let value = Rational64::new(numer, denom);
    Some(if negative { -value } else { value })
}

/// Integers print bare, terminating fractions print as exact decimals and
/// everything else as `p/q`. The output always re-parses to the same value.
impl fmt::Display for TropScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Eps => f.write_str("*"),
            Top => f.write_str("+inf"),
            Fin(v) => match exact_decimal(v) {
                Some(s) => f.write_str(&s),
                None => write!(f, "{}/{}", v.numer(), v.denom()),
            },
        }
    }
}

fn exact_decimal(v: Rational64) -> Option<String> {
    if v.is_integer() {
        return Some(v.numer().to_string());
    }
    // A reduced fraction terminates iff its denominator is 2^a * 5^b.
    let mut d = *v.denom();
    let (mut twos, mut fives) = (0u32, 0u32);
    while d % 2 == 0 {
        d /= 2;
        twos += 1;
    }
    while d % 5 == 0 {
        d /= 5;
        fives += 1;
    }
    if d != 1 {
        return None;
    }
    let places = twos.max(fives);
    let scale = 10i64.checked_pow(places)?;
    let scaled = v.checked_mul(&Rational64::from_integer(scale))?;
    debug_assert!(scaled.is_integer());
    let n = *scaled.numer();
    let digits = n.abs().to_string();
    let places = places as usize;
    let padded = format!("{digits:0>width$}", width = places + 1);
    let (int_part, frac_part) = padded.split_at(padded.len() - places);
    let sign = if v.is_negative() { "-" } else { "" };
    Some(format!("{sign}{int_part}.{frac_part}"))
}

/// Least common multiple of the denominators of all finite values.
pub(crate) fn common_denominator<I>(values: I) -> Result<i64>
where
    I: IntoIterator<Item = TropScalar>,
{
    let mut lcm: i64 = 1;
    for v in values {
        if let Fin(x) = v {
            let d = *x.denom();
            let g = num_integer::gcd(lcm, d);
            lcm = (lcm / g)
                .checked_mul(d)
                .ok_or_else(|| Error::domain("denominators too large to scale exactly"))?;
        }
    }
    Ok(lcm)
}

/// Multiply a finite value by an integer scale that clears its denominator.
pub(crate) fn scaled_integer(v: Rational64, scale: i64) -> Result<i64> {
    let s = v
        .checked_mul(&Rational64::from_integer(scale))
        .ok_or_else(|| Error::domain("value overflows after scaling"))?;
    debug_assert!(s.is_integer());
    Ok(*s.numer())
}

pub(crate) fn checked_sum(a: Rational64, b: Rational64) -> Result<Rational64> {
    a.checked_add(&b)
        .ok_or_else(|| Error::domain("arithmetic overflow"))
}
