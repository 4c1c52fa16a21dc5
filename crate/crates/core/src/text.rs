//! Plain-text formats for fields, elements and polynomials.
//!
//! * Field: `p=3,d0=1,d=3,mod=1,-1,0,1`. `d0` and `d` default to 1; `mod`
//!   takes every remaining comma-separated value, constant-first over `F_p`.
//! * Element: power-basis coordinates over `F_p`, constant-first, either bare
//!   (`0,1,2`) or bracketed (`[0,1,2]`). A single integer denotes an element
//!   of the prime field, so `-1` is accepted in any field.
//! * Polynomial: sparse `deg:element` terms joined by `;`, e.g.
//!   `9:1;6:1;5:-1`, or dense constant-first coefficients joined by `,`.
//!   Inside the dense form an element with several coordinates must be
//!   bracketed.
//! * Additive polynomial: `add:` followed by the skew coefficients
//!   constant-first, in the dense element-list syntax.
//!
//! Output always uses reduced coordinates and sparse terms in descending
//! degree. Inside polynomials, prime-field coefficients print as a bare
//! integer and all others bracketed.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf::{make_field, FieldCtx, FieldElement};
use crate::ore::AdditivePoly;
use crate::poly::DensePoly;

/// Parsed field parameters, before the field is built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u64,
    pub d0: u32,
    pub d: u32,
    pub modulus: Option<Vec<i64>>,
}

impl FieldSpec {
    /// Builds the field; `seed` only matters when no modulus was given.
    pub fn build(&self, seed: u64) -> Result<FieldCtx> {
        make_field(self.p, self.d0, self.d, self.modulus.as_deref(), seed)
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = None;
        let mut d0 = 1;
        let mut d = 1;
        let mut modulus: Option<Vec<i64>> = None;
        let parts = s.split(',').map(str::trim);
        for part in parts {
            if let Some(m) = modulus.as_mut() {
                m.push(parse_int(part)?);
                continue;
            }
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, found {part:?}")))?;
            match key.trim() {
                "p" => p = Some(parse_uint(value)?),
                "d0" => d0 = parse_uint(value)? as u32,
                "d" => d = parse_uint(value)? as u32,
                "mod" => modulus = Some(vec![parse_int(value)?]),
                other => return Err(Error::Parse(format!("unknown field key {other:?}"))),
            }
        }
        let p = p.ok_or_else(|| Error::Parse("field spec lacks p".into()))?;
        Ok(FieldSpec { p, d0, d, modulus })
    }
}

/// Parses and builds a field in one step.
pub fn parse_field(s: &str, seed: u64) -> Result<FieldCtx> {
    s.parse::<FieldSpec>()?.build(seed)
}

fn parse_int(s: &str) -> Result<i64> {
    s.trim()
        .parse::<i64>()
        .map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

fn parse_uint(s: &str) -> Result<u64> {
    s.trim()
        .parse::<u64>()
        .map_err(|_| Error::Parse(format!("not a nonnegative integer: {s:?}")))
}

/// Splits on `sep` outside square brackets.
fn split_top_level(s: &str, sep: char) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(format!("unbalanced brackets in {s:?}")));
                }
            }
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced brackets in {s:?}")));
    }
    out.push(&s[start..]);
    Ok(out)
}

/// Parses an element, bare or bracketed.
pub fn parse_element(ctx: &FieldCtx, s: &str) -> Result<FieldElement> {
    let s = s.trim();
    let inner = match s.strip_prefix('[') {
        Some(rest) => rest
            .strip_suffix(']')
            .ok_or_else(|| Error::Parse(format!("unclosed bracket in {s:?}")))?,
        None => s,
    };
    if inner.is_empty() {
        return Err(Error::Parse("empty element".into()));
    }
    let coords = inner
        .split(',')
        .map(parse_int)
        .collect::<Result<Vec<i64>>>()?;
    ctx.from_coords(&coords)
}

/// Parses a comma list of elements where multi-coordinate elements are bracketed.
pub fn parse_element_list(ctx: &FieldCtx, s: &str) -> Result<Vec<FieldElement>> {
    split_top_level(s.trim(), ',')?
        .into_iter()
        .map(|tok| parse_element(ctx, tok))
        .collect()
}

pub fn format_element(ctx: &FieldCtx, a: FieldElement) -> String {
    ctx.format(a)
}

/// List form: a bare integer for prime-field elements, brackets otherwise.
pub fn format_list_element(ctx: &FieldCtx, a: FieldElement) -> String {
    if a.index() < ctx.p() {
        a.index().to_string()
    } else {
        format!("[{}]", ctx.format(a))
    }
}

/// Parses a polynomial in sparse or dense form.
pub fn parse_poly(ctx: &FieldCtx, s: &str) -> Result<DensePoly> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    if !s.contains(':') {
        return Ok(DensePoly::new(parse_element_list(ctx, s)?));
    }
    let mut terms = Vec::new();
    for term in s.split(';').map(str::trim).filter(|t| !t.is_empty()) {
        let (deg, elem) = term
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected deg:element, found {term:?}")))?;
        let deg = parse_uint(deg)? as usize;
        terms.push((deg, parse_element(ctx, elem)?));
    }
    Ok(DensePoly::from_terms(ctx, &terms))
}

/// Sparse form, descending degree; the zero polynomial is `0`.
pub fn format_poly(ctx: &FieldCtx, f: &DensePoly) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let terms: Vec<String> = f
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, &c)| format!("{i}:{}", format_list_element(ctx, c)))
        .collect();
    terms.join(";")
}

/// Conventional notation such as `x^9+x^6+2x^5+(y+1)x`.
pub fn format_poly_pretty(ctx: &FieldCtx, f: &DensePoly) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut terms = Vec::new();
    for (i, &c) in f.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let coeff = ctx.format_pretty(c);
        let coeff = if i > 0 && c.is_one() {
            String::new()
        } else if coeff.contains('+') && i > 0 {
            format!("({coeff})")
        } else {
            coeff
        };
        terms.push(match i {
            0 => coeff,
            1 => format!("{coeff}x"),
            _ => format!("{coeff}x^{i}"),
        });
    }
    terms.join("+")
}

/// Parses `add:c0,c1,…` into skew coefficients.
pub fn parse_additive(ctx: &FieldCtx, s: &str) -> Result<AdditivePoly> {
    let body = s
        .trim()
        .strip_prefix("add:")
        .ok_or_else(|| Error::Parse(format!("additive polynomial must start with add:, found {s:?}")))?;
    Ok(AdditivePoly::new(parse_element_list(ctx, body)?))
}

pub fn format_additive(ctx: &FieldCtx, f: &AdditivePoly) -> String {
    if f.is_zero() {
        return "add:0".into();
    }
    let c: Vec<String> = f.coeffs().iter().map(|&c| format_list_element(ctx, c)).collect();
    format!("add:{}", c.join(","))
}
