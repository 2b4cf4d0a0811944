//! Parsing and formatting shared by the command-line driver.
//!
//! Exact values travel as strings: rationals are `"a/b"` (or `"a"`), vectors
//! are comma-separated, matrices use `;` between rows or JSON row-major
//! arrays. Floating-point input is rejected wherever exactness matters.
//! Any payload argument may be `@path` to read the payload from a file.

use crate::error::{Error, Result};
use crate::lattice::ConvexRegion;
use crate::norms::PExponent;
use crate::operators::Matrix;
use crate::scalars::PAdic;
use crate::series::{CoeffSeq, ErrorBound, LaurentSeq, SumResult};
use crate::Rational;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Resolve `@path` payload indirection: a leading `@` means "read this file".
pub fn read_payload(arg: &str) -> Result<String> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::ParseError(format!("cannot read payload file {path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

/// Parse an exact rational from `"a/b"` or `"a"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::ParseError(format!("expected a rational like 3/4 or -2, got {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if s.contains(['.', 'e', 'E']) {
        return Err(Error::ParseError(format!(
            "floats are not accepted where exactness matters; write {s:?} as a ratio a/b"
        )));
    }
    let (numer, denom) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = numer.parse().map_err(|_| bad())?;
    let d: BigInt = denom.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::ParseError(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Print a rational as `a/b`, or just `a` for integers.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse a comma-separated vector of exact rationals.
pub fn parse_rational_vec(s: &str) -> Result<Vec<Rational>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::ParseError("expected a non-empty vector".into()));
    }
    s.split(',').map(parse_rational).collect()
}

/// Parse one float; `"a/b"` is also accepted and converted.
pub fn parse_f64(s: &str) -> Result<f64> {
    let s = s.trim();
    let value = if let Ok(x) = s.parse::<f64>() {
        x
    } else {
        parse_rational(s)?
            .to_f64()
            .ok_or_else(|| Error::ParseError(format!("{s:?} is out of f64 range")))?
    };
    if !value.is_finite() {
        return Err(Error::ParseError(format!("{s:?} is not a finite number")));
    }
    Ok(value)
}

/// Parse a comma-separated vector of floats (rational entries allowed).
pub fn parse_f64_vec(s: &str) -> Result<Vec<f64>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::ParseError("expected a non-empty vector".into()));
    }
    s.split(',').map(parse_f64).collect()
}

/// Parse a complex number from `"re,im"` or a bare `"re"`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let parts = parse_f64_vec(s)?;
    match parts.as_slice() {
        [re] => Ok(Complex64::new(*re, 0.0)),
        [re, im] => Ok(Complex64::new(*re, *im)),
        _ => Err(Error::ParseError(format!(
            "expected a complex number as re,im — got {} components",
            parts.len()
        ))),
    }
}

fn json_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(BigInt::from(i)))
            } else {
                Err(Error::ParseError(format!(
                    "floats are not accepted where exactness matters; write {n} as a string ratio"
                )))
            }
        }
        other => Err(Error::ParseError(format!(
            "expected a rational string or integer, got {other}"
        ))),
    }
}

fn json_f64(v: &Value) -> Result<f64> {
    match v {
        Value::String(s) => parse_f64(s),
        Value::Number(n) => n
            .as_f64()
            .filter(|x| x.is_finite())
            .ok_or_else(|| Error::ParseError(format!("{n} is not a finite number"))),
        other => Err(Error::ParseError(format!("expected a number, got {other}"))),
    }
}

fn parse_json(s: &str) -> Result<Value> {
    serde_json::from_str(s).map_err(|e| Error::ParseError(format!("invalid JSON payload: {e}")))
}

/// Parse a rational matrix from inline `"1,2;3,4"` or a JSON row-major array.
pub fn parse_matrix_rational(s: &str) -> Result<Matrix<Rational>> {
    let s = s.trim();
    if s.starts_with('[') {
        let rows = matrix_rows_json(&parse_json(s)?, json_rational)?;
        return Matrix::from_rows(rows);
    }
    let rows: Vec<Vec<Rational>> = s
        .split(';')
        .map(parse_rational_vec)
        .collect::<Result<_>>()?;
    Matrix::from_rows(rows)
}

/// Parse a float matrix from inline `"1,2;3,4"` or a JSON row-major array.
pub fn parse_matrix_f64(s: &str) -> Result<Matrix<f64>> {
    let s = s.trim();
    if s.starts_with('[') {
        let rows = matrix_rows_json(&parse_json(s)?, json_f64)?;
        return Matrix::from_rows(rows);
    }
    let rows: Vec<Vec<f64>> = s.split(';').map(parse_f64_vec).collect::<Result<_>>()?;
    Matrix::from_rows(rows)
}

fn matrix_rows_json<T>(v: &Value, entry: impl Fn(&Value) -> Result<T>) -> Result<Vec<Vec<T>>> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::ParseError("expected a JSON array of matrix rows".into()))?;
    rows.iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::ParseError("expected each matrix row to be an array".into()))?
                .iter()
                .map(&entry)
                .collect()
        })
        .collect()
}

/// Parse an ℓp exponent: `1`, `2`, `3/2`, or `inf`.
pub fn parse_exponent(s: &str) -> Result<PExponent> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") || s == "∞" {
        return Ok(PExponent::Infinity);
    }
    PExponent::new(parse_rational(s)?)
}

/// A coefficient sequence plus the scalar kind it carries.
pub enum SeriesPayload {
    Rational(CoeffSeq<Rational>),
    Complex(CoeffSeq<Complex64>),
}

impl SeriesPayload {
    pub fn scalar_name(&self) -> &'static str {
        match self {
            SeriesPayload::Rational(_) => "rational",
            SeriesPayload::Complex(_) => "complex",
        }
    }

    pub fn into_rational(self) -> Result<CoeffSeq<Rational>> {
        match self {
            SeriesPayload::Rational(a) => Ok(a),
            SeriesPayload::Complex(_) => Err(Error::KindMismatch(
                "this operation needs rational coefficients, got complex".into(),
            )),
        }
    }

    /// View the coefficients as complex numbers (rationals embed).
    pub fn to_complex(&self) -> CoeffSeq<Complex64> {
        match self {
            SeriesPayload::Complex(a) => a.clone(),
            SeriesPayload::Rational(a) => match a.finite_len() {
                Some(len) => CoeffSeq::finite(
                    (0..len)
                        .map(|j| Complex64::new(a.term(j).to_f64().unwrap_or(f64::NAN), 0.0))
                        .collect(),
                ),
                None => {
                    let a = a.clone();
                    CoeffSeq::streamed(move |j| {
                        Complex64::new(a.term(j).to_f64().unwrap_or(f64::NAN), 0.0)
                    })
                }
            },
        }
    }
}

fn named_stream(name: &str, param: Option<&str>) -> Result<CoeffSeq<Rational>> {
    match name {
        "geometric" => {
            let q = parse_rational(param.ok_or_else(|| {
                Error::ParseError("stream geometric needs a ratio, e.g. geometric:1/2".into())
            })?)?;
            Ok(CoeffSeq::streamed(move |j| q.pow(j as i32)))
        }
        "harmonic" => Ok(CoeffSeq::streamed(|j| {
            Rational::new(BigInt::one(), BigInt::from(j as i64 + 1))
        })),
        "inv-factorial" => Ok(CoeffSeq::streamed(|j| {
            let mut f = BigInt::one();
            for k in 2..=j {
                f *= BigInt::from(k as i64);
            }
            Rational::new(BigInt::one(), f)
        })),
        other => Err(Error::ParseError(format!(
            "unknown stream {other:?}; known: geometric:<q>, harmonic, inv-factorial"
        ))),
    }
}

/// Parse a series payload: inline rational terms (`"1,1/2,1/4"`), a named
/// stream (`"geometric:1/2"`), or a JSON object
/// `{"kind":"finite","scalar":"rational","terms":["1","1/2"]}`.
pub fn parse_series(s: &str) -> Result<SeriesPayload> {
    let s = s.trim();
    if s.starts_with('{') {
        return parse_series_json(&parse_json(s)?);
    }
    let (name, param) = match s.split_once(':') {
        Some((n, p)) => (n, Some(p)),
        None => (s, None),
    };
    if matches!(name, "geometric" | "harmonic" | "inv-factorial") {
        return Ok(SeriesPayload::Rational(named_stream(name, param)?));
    }
    Ok(SeriesPayload::Rational(CoeffSeq::finite(
        parse_rational_vec(s)?,
    )))
}

fn parse_series_json(v: &Value) -> Result<SeriesPayload> {
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::ParseError("series payload needs \"kind\"".into()))?;
    let scalar = v.get("scalar").and_then(Value::as_str).unwrap_or("rational");
    match (kind, scalar) {
        ("finite", "rational") => {
            let terms = finite_terms(v)?
                .iter()
                .map(json_rational)
                .collect::<Result<Vec<_>>>()?;
            if terms.is_empty() {
                return Err(Error::ParseError("series needs at least one term".into()));
            }
            Ok(SeriesPayload::Rational(CoeffSeq::finite(terms)))
        }
        ("finite", "complex") => {
            let terms = finite_terms(v)?
                .iter()
                .map(|t| match t {
                    Value::Array(pair) if pair.len() == 2 => {
                        Ok(Complex64::new(json_f64(&pair[0])?, json_f64(&pair[1])?))
                    }
                    other => Ok(Complex64::new(json_f64(other)?, 0.0)),
                })
                .collect::<Result<Vec<_>>>()?;
            if terms.is_empty() {
                return Err(Error::ParseError("series needs at least one term".into()));
            }
            Ok(SeriesPayload::Complex(CoeffSeq::finite(terms)))
        }
        ("stream", "rational") => {
            let name = v
                .get("name")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::ParseError("stream payload needs \"name\"".into()))?;
            let param = v.get("param").and_then(Value::as_str);
            Ok(SeriesPayload::Rational(named_stream(name, param)?))
        }
        _ => Err(Error::ParseError(format!(
            "unsupported series payload kind={kind:?} scalar={scalar:?}"
        ))),
    }
}

fn finite_terms(v: &Value) -> Result<&Vec<Value>> {
    v.get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::ParseError("finite series payload needs \"terms\"".into()))
}

/// Parse a Laurent sequence from `{"support":{"-1":"1","1":"1"},"tail":"1/10"}`
/// (`tail` optional).
pub fn parse_laurent(s: &str) -> Result<LaurentSeq> {
    let v = parse_json(s.trim())?;
    let support_obj = v
        .get("support")
        .and_then(Value::as_object)
        .ok_or_else(|| Error::ParseError("Laurent payload needs a \"support\" object".into()))?;
    let mut support: BTreeMap<i64, Rational> = BTreeMap::new();
    for (key, val) in support_obj {
        let k: i64 = key
            .parse()
            .map_err(|_| Error::ParseError(format!("bad Laurent index {key:?}")))?;
        support.insert(k, json_rational(val)?);
    }
    match v.get("tail") {
        None | Some(Value::Null) => Ok(LaurentSeq::from_support(support)),
        Some(t) => LaurentSeq::with_tail_bound(support, json_rational(t)?),
    }
}

/// Render a Laurent sequence as the same JSON shape `parse_laurent` accepts.
pub fn laurent_json(a: &LaurentSeq) -> Value {
    let mut support = Map::new();
    for (k, c) in a.support() {
        support.insert(k.to_string(), Value::String(format_rational(c)));
    }
    let mut obj = Map::new();
    obj.insert("support".into(), Value::Object(support));
    if let Some(t) = a.tail_bound() {
        obj.insert("tail".into(), Value::String(format_rational(t)));
    }
    Value::Object(obj)
}

/// Parse a region payload: `{"type":"box","halfwidths":["11/10","11/10"]}`,
/// `{"type":"ellipsoid","matrix":[["25/36","0"],["0","25/36"]]}`, or the
/// registered named oracle `cross:<n>:<r>` (the ℓ1 ball of radius r).
pub fn parse_region(s: &str) -> Result<ConvexRegion> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("cross:") {
        let (n, r) = rest
            .split_once(':')
            .ok_or_else(|| Error::ParseError("expected cross:<n>:<r>".into()))?;
        let n: usize = n
            .parse()
            .map_err(|_| Error::ParseError(format!("bad dimension {n:?}")))?;
        return cross_polytope(n, &parse_rational(r)?);
    }
    let v = parse_json(s)?;
    let kind = v
        .get("type")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::ParseError("region payload needs \"type\"".into()))?;
    match kind {
        "box" => {
            let hw = v
                .get("halfwidths")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::ParseError("box region needs \"halfwidths\"".into()))?
                .iter()
                .map(json_rational)
                .collect::<Result<Vec<_>>>()?;
            ConvexRegion::box_region(&hw)
        }
        "ellipsoid" => {
            let m = v
                .get("matrix")
                .ok_or_else(|| Error::ParseError("ellipsoid region needs \"matrix\"".into()))?;
            let rows = matrix_rows_json(m, json_rational)?;
            ConvexRegion::ellipsoid(&Matrix::from_rows(rows)?)
        }
        other => Err(Error::ParseError(format!(
            "unknown region type {other:?}; known: box, ellipsoid, cross:<n>:<r>"
        ))),
    }
}

/// The ℓ1 ball of radius r in n dimensions: volume (2r)^n / n!.
fn cross_polytope(n: usize, r: &Rational) -> Result<ConvexRegion> {
    if n == 0 || n > 8 {
        return Err(Error::DomainError(format!(
            "cross-polytope dimension must be 1..=8, got {n}"
        )));
    }
    if !r.is_positive() {
        return Err(Error::DomainError("cross-polytope radius must be positive".into()));
    }
    let mut volume = Rational::one();
    for k in 1..=n {
        volume = volume * (Rational::from_integer(BigInt::from(2)) * r)
            / Rational::from_integer(BigInt::from(k as i64));
    }
    let bbox: Vec<Rational> = (0..n).map(|_| r.clone()).collect();
    let radius = r.clone();
    ConvexRegion::from_oracle(
        n,
        Arc::new(move |x: &[Rational]| {
            x.iter().fold(Rational::zero(), |acc, xi| acc + xi.abs()) <= radius
        }),
        bbox.iter().map(|h| (-h.clone(), h.clone())).collect(),
        volume,
    )
}

/// Format a float with `sig` significant digits, trimming trailing zeros.
/// Plain decimal notation for moderate exponents, scientific otherwise.
pub fn format_f64(x: f64, sig: usize) -> String {
    let sig = sig.clamp(1, 17);
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let formatted = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = formatted.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("valid exponent");
    let neg = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let digits = digits.trim_end_matches('0');
    if digits.is_empty() {
        return "0".into();
    }
    let sign = if neg { "-" } else { "" };
    // Plain decimal when it stays readable; scientific for extreme exponents.
    let body = if exp >= 0 && (exp as usize) < sig + 3 {
        let int_len = exp as usize + 1;
        if digits.len() > int_len {
            format!("{}.{}", &digits[..int_len], &digits[int_len..])
        } else {
            format!("{}{}", digits, "0".repeat(int_len - digits.len()))
        }
    } else if exp < 0 && exp >= -4 {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
    } else {
        let rest = &digits[1..];
        if rest.is_empty() {
            format!("{}e{}", &digits[..1], exp)
        } else {
            format!("{}.{}e{}", &digits[..1], rest, exp)
        }
    };
    format!("{sign}{body}")
}

/// Format a complex number as `a+bi` / `a-bi` with `sig` significant digits.
pub fn format_complex(z: Complex64, sig: usize) -> String {
    let re = format_f64(z.re, sig);
    let im = format_f64(z.im.abs(), sig);
    let op = if z.im.is_sign_negative() { "-" } else { "+" };
    format!("{re}{op}{im}i")
}

/// Format a vector of floats as `(a, b, ...)`.
pub fn format_f64_vec(v: &[f64], sig: usize) -> String {
    let parts: Vec<String> = v.iter().map(|x| format_f64(*x, sig)).collect();
    format!("({})", parts.join(","))
}

/// A truncated p-adic as JSON: `{prime, valuation, digits, precision}`,
/// with `valuation: null` marking exact zero.
pub fn padic_json(x: &PAdic) -> Value {
    json!({
        "prime": x.prime(),
        "valuation": x.valuation().finite(),
        "digits": x.digits(),
        "precision": x.precision(),
    })
}

/// A summation result as JSON: `{value, terms_used, error_bound, certified}`.
pub fn sum_result_json<T>(r: &SumResult<T>, value: Value) -> Value {
    let bound = match r.error_bound {
        ErrorBound::ExactZero => json!(0.0),
        ErrorBound::Proven(b) => json!(b),
        ErrorBound::Unproven => Value::Null,
    };
    json!({
        "value": value,
        "terms_used": r.terms_used,
        "error_bound": bound,
        "certified": r.error_bound.certified(),
    })
}

/// The human-readable one-liner for a summation result.
pub fn sum_result_line(value: &str, terms_used: usize, bound: &ErrorBound) -> String {
    match bound {
        ErrorBound::ExactZero => format!("{value} (terms={terms_used}, error=0, certified)"),
        ErrorBound::Proven(b) => format!(
            "{value} (terms={terms_used}, error<={}, certified)",
            format_f64(*b, 3)
        ),
        ErrorBound::Unproven => format!("{value} (terms={terms_used}, error unproven)"),
    }
}
