//! JSON forms of the public types, a text parser for Hopf elements, and the
//! theory specifications accepted on the command line.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{ChernData, Partition};
use crate::error::{Error, Result};
use crate::genfun::IdentityReport;
use crate::hopf::{
    canonical_generator, Basis, Canonical, Context, Generator, HopfElement, Monomial, TensorElement, Variant,
};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::series::{MultiSeries, SeriesRing};
use crate::theory::{
    chern_power, coarse_chern, coarse_euler, dt_vertex_theory, euler_power, inertial_theory, mult_class_theory,
    theory_log, Theory, TheoryCaps, TheoryKind,
};

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("wire types serialize")
}

fn from_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SeriesTerm {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

/// A series with its ring, so that reading it back needs no side information.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SeriesDto {
    pub vars: Vec<String>,
    pub caps: Vec<Option<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total_cap: Option<u32>,
    pub terms: Vec<SeriesTerm>,
}

impl From<&MultiSeries> for SeriesDto {
    fn from(s: &MultiSeries) -> Self {
        let ring = s.ring();
        SeriesDto {
            vars: ring.vars().to_vec(),
            caps: ring.caps().per_var.clone(),
            total_cap: ring.caps().total,
            terms: s
                .terms()
                .map(|(e, c)| SeriesTerm { exponents: e.to_vec(), coeff: format_rational(c) })
                .collect(),
        }
    }
}

impl SeriesDto {
    pub fn into_series(self) -> Result<MultiSeries> {
        let ring = SeriesRing::new(self.vars, self.caps, self.total_cap)?;
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in self.terms {
            if !ring.admits(&t.exponents) {
                return Err(Error::Parse(format!("exponent {:?} lies outside the ring {ring}", t.exponents)));
            }
            terms.push((t.exponents, parse_rational(&t.coeff)?));
        }
        MultiSeries::from_terms(&ring, terms)
    }
}

pub fn series_to_json(s: &MultiSeries) -> String {
    to_json(&SeriesDto::from(s))
}

pub fn series_from_json(text: &str) -> Result<MultiSeries> {
    from_json::<SeriesDto>(text)?.into_series()
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MonomialNumber {
    pub lambda: Vec<u32>,
    pub value: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ChernDto {
    pub d: usize,
    pub monomial_numbers: Vec<MonomialNumber>,
}

impl From<&ChernData> for ChernDto {
    fn from(c: &ChernData) -> Self {
        ChernDto {
            d: c.dim(),
            monomial_numbers: c
                .monomial_numbers()
                .iter()
                .map(|(l, v)| MonomialNumber { lambda: l.parts().to_vec(), value: format_rational(v) })
                .collect(),
        }
    }
}

impl ChernDto {
    pub fn into_chern(self) -> Result<ChernData> {
        let mut numbers = BTreeMap::new();
        for entry in self.monomial_numbers {
            numbers.insert(Partition::new(entry.lambda), parse_rational(&entry.value)?);
        }
        ChernData::from_monomials(self.d, numbers)
    }
}

pub fn chern_to_json(c: &ChernData) -> String {
    to_json(&ChernDto::from(c))
}

pub fn chern_from_json(text: &str) -> Result<ChernData> {
    from_json::<ChernDto>(text)?.into_chern()
}

/// Chern numbers as typed: keyed by class monomials (`c1c2=24`) or by
/// monomial symmetric functions (`m21=12`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChernKeys {
    Classes(BTreeMap<Partition, Rational>),
    Monomials(BTreeMap<Partition, Rational>),
}

impl ChernKeys {
    /// Parses `c3=4,c1c2=24,c1^3=64` or `m111=4,m21=12,m3=4`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut classes = BTreeMap::new();
        let mut monomials = BTreeMap::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value in Chern data, got {item:?}")))?;
            let value = parse_rational(value.trim())?;
            let key = key.trim();
            if let Some(digits) = key.strip_prefix('m') {
                let parts = digits
                    .chars()
                    .map(|c| c.to_digit(10).ok_or_else(|| Error::Parse(format!("bad monomial key {key:?}"))))
                    .collect::<Result<Vec<u32>>>()?;
                monomials.insert(Partition::new(parts), value);
            } else {
                classes.insert(parse_chern_monomial(key)?, value);
            }
        }
        match (classes.is_empty(), monomials.is_empty()) {
            (false, true) => Ok(ChernKeys::Classes(classes)),
            (true, false) => Ok(ChernKeys::Monomials(monomials)),
            (true, true) => Err(Error::Parse("empty Chern data".into())),
            (false, false) => Err(Error::Parse("Chern data mixes class and monomial keys".into())),
        }
    }

    pub fn resolve(&self, d: usize) -> Result<ChernData> {
        match self {
            ChernKeys::Classes(classes) => ChernData::from_classes(d, classes),
            ChernKeys::Monomials(numbers) => ChernData::from_monomials(d, numbers.clone()),
        }
    }
}

/// Inline Chern data in either key style; see [`ChernKeys::parse`].
pub fn parse_chern_inline(d: usize, text: &str) -> Result<ChernData> {
    ChernKeys::parse(text)?.resolve(d)
}

/// `c1c2`, `c1^3`, `c2^2` into the partition of Chern indices.
fn parse_chern_monomial(key: &str) -> Result<Partition> {
    let bad = || Error::Parse(format!("bad Chern monomial {key:?}"));
    let mut parts = Vec::new();
    let mut rest = key;
    while !rest.is_empty() {
        rest = rest.strip_prefix('c').ok_or_else(bad)?;
        let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        let index: u32 = rest[..end].parse().map_err(|_| bad())?;
        rest = &rest[end..];
        let mut power = 1;
        if let Some(after) = rest.strip_prefix('^') {
            let end = after.find(|c: char| !c.is_ascii_digit()).unwrap_or(after.len());
            power = after[..end].parse().map_err(|_| bad())?;
            rest = &after[end..];
        }
        if index == 0 {
            return Err(bad());
        }
        parts.extend(std::iter::repeat_n(index, power));
    }
    if parts.is_empty() {
        return Err(bad());
    }
    Ok(Partition::new(parts))
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ElementTerm {
    pub monomial: Vec<(u32, Vec<u32>)>,
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ElementDto {
    pub d: usize,
    pub variant: String,
    pub basis: String,
    pub terms: Vec<ElementTerm>,
}

pub fn variant_name(v: Variant) -> &'static str {
    match v {
        Variant::Separated => "sep",
        Variant::NonSeparated => "nonsep",
    }
}

pub fn parse_variant(s: &str) -> Result<Variant> {
    match s {
        "sep" | "separated" => Ok(Variant::Separated),
        "nonsep" | "non-separated" => Ok(Variant::NonSeparated),
        other => Err(Error::Parse(format!("unknown variant {other:?}"))),
    }
}

fn basis_name(b: Basis) -> &'static str {
    match b {
        Basis::Q => "q",
        Basis::P => "p",
    }
}

fn parse_basis(s: &str) -> Result<Basis> {
    match s {
        "q" => Ok(Basis::Q),
        "p" => Ok(Basis::P),
        other => Err(Error::Parse(format!("unknown basis {other:?}"))),
    }
}

impl From<&HopfElement> for ElementDto {
    fn from(x: &HopfElement) -> Self {
        let ctx = x.context();
        ElementDto {
            d: ctx.d,
            variant: variant_name(ctx.variant).into(),
            basis: basis_name(ctx.basis).into(),
            terms: x
                .terms()
                .map(|(m, c)| ElementTerm {
                    monomial: monomial_entries(m),
                    coeff: format_rational(c),
                })
                .collect(),
        }
    }
}

impl ElementDto {
    pub fn into_element(self) -> Result<HopfElement> {
        let ctx = Context::new(self.d, parse_variant(&self.variant)?, parse_basis(&self.basis)?);
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in self.terms {
            terms.push((monomial_from_entries(t.monomial)?, parse_rational(&t.coeff)?));
        }
        HopfElement::from_terms(ctx, terms)
    }
}

pub fn element_to_json(x: &HopfElement) -> String {
    to_json(&ElementDto::from(x))
}

pub fn element_from_json(text: &str) -> Result<HopfElement> {
    from_json::<ElementDto>(text)?.into_element()
}

/// Reads the text form printed by `HopfElement`'s `Display`, e.g.
/// `1/1 - 1/2*q(1;1)^2 + q(2;2)`. The basis is taken from the generator
/// letter (`q` when there are none). Raw indices are canonicalised, so
/// `q(0;0)` is the unit and `q(0;1)` is zero.
pub fn parse_element(d: usize, variant: Variant, text: &str) -> Result<HopfElement> {
    parse_with_basis(d, variant, None, text)
}

/// [`parse_element`] in a known context; generators must use its basis letter.
pub fn parse_element_in(ctx: Context, text: &str) -> Result<HopfElement> {
    parse_with_basis(ctx.d, ctx.variant, Some(ctx.basis), text)
}

fn parse_with_basis(d: usize, variant: Variant, expected: Option<Basis>, text: &str) -> Result<HopfElement> {
    let mut basis = expected;
    let mut terms = Vec::new();
    for (sign, body) in split_terms(text)? {
        let mut coeff = Rational::from_integer(sign.into());
        let mut factors = Vec::new();
        let mut vanishes = false;
        for factor in split_top_level(body, '*') {
            let factor = factor.trim();
            if factor.starts_with('q') || factor.starts_with('p') {
                let letter = if factor.starts_with('q') { Basis::Q } else { Basis::P };
                if basis.is_some_and(|b| b != letter) {
                    return Err(Error::Parse(format!("generator {factor} is not in the expected basis")));
                }
                basis = Some(letter);
                let (gen, power) = parse_generator(d, variant, factor)?;
                match gen {
                    Canonical::Unit => {}
                    Canonical::Zero => vanishes = true,
                    Canonical::Generator(g) => factors.extend(std::iter::repeat_n(g, power as usize)),
                }
            } else {
                coeff *= parse_rational(factor)?;
            }
        }
        if !vanishes {
            terms.push((Monomial::from_factors(factors), coeff));
        }
    }
    HopfElement::from_terms(Context::new(d, variant, basis.unwrap_or(Basis::Q)), terms)
}

fn split_terms(text: &str) -> Result<Vec<(i64, &str)>> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty element".into()));
    }
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut sign = 1;
    let bytes = text.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 => {
                let chunk = text[start..i].trim();
                // A sign directly after '^' or '/' belongs to a number.
                let joined = i > 0 && matches!(bytes[i - 1], b'^' | b'/' | b'*');
                if joined {
                    continue;
                }
                if chunk.is_empty() {
                    if !(out.is_empty() && start == 0) {
                        return Err(Error::Parse(format!("dangling sign in {text:?}")));
                    }
                } else {
                    out.push((sign, chunk));
                }
                sign = if b == b'-' { -1 } else { 1 };
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse(format!("unbalanced parentheses in {text:?}")));
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in {text:?}")));
    }
    let chunk = text[start..].trim();
    if chunk.is_empty() {
        return Err(Error::Parse(format!("dangling sign in {text:?}")));
    }
    out.push((sign, chunk));
    Ok(out)
}

fn split_top_level(text: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&text[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

/// `q(n;m1,..,md)^k` (separated) or `q(m1,..,md)^k` (non-separated).
fn parse_generator(d: usize, variant: Variant, text: &str) -> Result<(Canonical, u32)> {
    let bad = |why: &str| Error::Parse(format!("malformed generator {text:?}: {why}"));
    let open = text.find('(').ok_or_else(|| bad("missing '('"))?;
    let close = text.rfind(')').ok_or_else(|| bad("missing ')'"))?;
    if open != 1 || close < open {
        return Err(bad("expected letter followed by parentheses"));
    }
    let inner = &text[open + 1..close];
    let power = match text[close + 1..].trim() {
        "" => 1,
        rest => rest
            .strip_prefix('^')
            .and_then(|k| k.trim().parse().ok())
            .ok_or_else(|| bad("bad exponent"))?,
    };
    let ints = |s: &str| -> Result<Vec<i64>> {
        if s.trim().is_empty() {
            return Ok(Vec::new());
        }
        s.split(',')
            .map(|x| x.trim().parse::<i64>().map_err(|_| bad("non-integer index")))
            .collect()
    };
    let (n, m) = match variant {
        Variant::Separated => {
            let (n, m) = inner.split_once(';').ok_or_else(|| bad("expected 'n;m'"))?;
            (n.trim().parse::<i64>().map_err(|_| bad("non-integer n"))?, ints(m)?)
        }
        Variant::NonSeparated => (1, ints(inner)?),
    };
    if m.len() != d {
        return Err(bad(&format!("expected {d} entries in m")));
    }
    let canonical = match variant {
        Variant::Separated => canonical_generator(n, &m)?,
        Variant::NonSeparated => {
            let lambda = m
                .iter()
                .map(|&x| u32::try_from(x).map_err(|_| bad("negative index")))
                .collect::<Result<Vec<_>>>()?;
            Canonical::Generator(Generator::non_separated(&lambda, d)?)
        }
    };
    Ok((canonical, power))
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TensorTerm {
    pub left: Vec<(u32, Vec<u32>)>,
    pub right: Vec<(u32, Vec<u32>)>,
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TensorDto {
    pub d: usize,
    pub variant: String,
    pub basis: String,
    pub terms: Vec<TensorTerm>,
}

fn monomial_entries(m: &Monomial) -> Vec<(u32, Vec<u32>)> {
    m.factors().iter().map(|g| (g.n(), g.m().to_vec())).collect()
}

fn monomial_from_entries(entries: Vec<(u32, Vec<u32>)>) -> Result<Monomial> {
    let factors = entries.into_iter().map(|(n, m)| Generator::new(n, m)).collect::<Result<Vec<_>>>()?;
    Ok(Monomial::from_factors(factors))
}

impl From<&TensorElement> for TensorDto {
    fn from(t: &TensorElement) -> Self {
        let ctx = t.context();
        TensorDto {
            d: ctx.d,
            variant: variant_name(ctx.variant).into(),
            basis: basis_name(ctx.basis).into(),
            terms: t
                .terms()
                .map(|((a, b), c)| TensorTerm {
                    left: monomial_entries(a),
                    right: monomial_entries(b),
                    coeff: format_rational(c),
                })
                .collect(),
        }
    }
}

impl TensorDto {
    pub fn into_tensor(self) -> Result<TensorElement> {
        let ctx = Context::new(self.d, parse_variant(&self.variant)?, parse_basis(&self.basis)?);
        let mut total = TensorElement::zero(ctx);
        for t in self.terms {
            let left = HopfElement::from_monomial(ctx, monomial_from_entries(t.left)?, parse_rational(&t.coeff)?)?;
            let right = HopfElement::from_monomial(ctx, monomial_from_entries(t.right)?, Rational::from_integer(1.into()))?;
            total = total.add(&TensorElement::pure(&left, &right)?)?;
        }
        Ok(total)
    }
}

pub fn tensor_to_json(t: &TensorElement) -> String {
    to_json(&TensorDto::from(t))
}

pub fn tensor_from_json(text: &str) -> Result<TensorElement> {
    from_json::<TensorDto>(text)?.into_tensor()
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct IdentityReportDto {
    pub name: String,
    pub passed: bool,
    pub lhs: SeriesDto,
    pub rhs: SeriesDto,
    pub residual: SeriesDto,
}

impl From<&IdentityReport> for IdentityReportDto {
    fn from(r: &IdentityReport) -> Self {
        IdentityReportDto {
            name: r.name.clone(),
            passed: r.passed,
            lhs: (&r.lhs).into(),
            rhs: (&r.rhs).into(),
            residual: (&r.residual).into(),
        }
    }
}

impl IdentityReportDto {
    pub fn into_report(self) -> Result<IdentityReport> {
        Ok(IdentityReport {
            name: self.name,
            passed: self.passed,
            lhs: self.lhs.into_series()?,
            rhs: self.rhs.into_series()?,
            residual: self.residual.into_series()?,
        })
    }
}

pub fn report_to_json(r: &IdentityReport) -> String {
    to_json(&IdentityReportDto::from(r))
}

pub fn report_from_json(text: &str) -> Result<IdentityReport> {
    from_json::<IdentityReportDto>(text)?.into_report()
}

/// How to build a theory. The string form is what the command line accepts:
///
/// * `builtin:ck,k=2`, `builtin:ek,k=1`, `builtin:coarse-ck,k=1`,
///   `builtin:coarse-ek,k=1`, `builtin:dt`
/// * `mult-class:1,1/2,3` for the multiplicative class of `1 + U/2 + 3U^2`
/// * `inertial:1,1` for the inertial theory of `1 + U`
/// * `log:<spec>` for the primitive logarithm of another theory
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TheorySpec {
    Builtin { name: String, k: Option<i64> },
    MultClass { coeffs: Vec<String> },
    Inertial { coeffs: Vec<String> },
    Log { of: Box<TheorySpec> },
    Table(TheoryTable),
}

impl TheorySpec {
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let (head, rest) = text
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("theory spec {text:?} needs a 'kind:' prefix")))?;
        match head {
            "builtin" => {
                let mut items = rest.split(',').map(str::trim);
                let name = items.next().unwrap_or_default().to_string();
                let mut k = None;
                for item in items {
                    match item.split_once('=') {
                        Some(("k", v)) => {
                            k = Some(v.trim().parse().map_err(|_| Error::Parse(format!("bad k in {text:?}")))?)
                        }
                        _ => return Err(Error::Parse(format!("unknown theory option {item:?}"))),
                    }
                }
                Ok(TheorySpec::Builtin { name, k })
            }
            "mult-class" | "inertial" => {
                let coeffs = rest.split(',').map(|s| s.trim().to_string()).collect::<Vec<_>>();
                for c in &coeffs {
                    parse_rational(c)?;
                }
                Ok(if head == "inertial" { TheorySpec::Inertial { coeffs } } else { TheorySpec::MultClass { coeffs } })
            }
            "log" => Ok(TheorySpec::Log { of: Box::new(TheorySpec::parse(rest)?) }),
            other => Err(Error::Parse(format!("unknown theory kind {other:?}"))),
        }
    }

    /// Builds the theory for the given dimension, variant and caps.
    pub fn build(&self, d: usize, variant: Variant, caps: TheoryCaps) -> Result<Theory> {
        let polynomial = |coeffs: &[String]| -> Result<MultiSeries> {
            let values = coeffs.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>()?;
            let cap = (values.len().max(1) - 1) as u32;
            Ok(MultiSeries::univariate("U", cap.max(caps.m), &values))
        };
        match self {
            TheorySpec::Builtin { name, k } => {
                let need_k = || k.ok_or_else(|| Error::MissingParameter(format!("k for builtin {name}")));
                match name.as_str() {
                    "ck" => Ok(chern_power(d, need_k()?, variant, caps)),
                    "ek" => {
                        let k = need_k()?;
                        let k = u32::try_from(k).map_err(|_| Error::InvalidTheory(format!("e^k needs k >= 0, got {k}")))?;
                        Ok(euler_power(d, k, variant, caps))
                    }
                    "coarse-ck" => coarse_chern(d, need_k()?, caps),
                    "coarse-ek" => coarse_euler(d, need_k()?, caps),
                    "dt" => {
                        if d != 3 {
                            return Err(Error::InvalidTheory(format!("the DT vertex theory needs d=3, got d={d}")));
                        }
                        dt_vertex_theory(caps)
                    }
                    other => Err(Error::InvalidTheory(format!("unknown builtin theory {other:?}"))),
                }
            }
            TheorySpec::MultClass { coeffs } => mult_class_theory(&polynomial(coeffs)?, d, variant, caps),
            TheorySpec::Inertial { coeffs } => inertial_theory(&polynomial(coeffs)?, d, caps),
            TheorySpec::Log { of } => theory_log(&of.build(d, variant, caps)?),
            TheorySpec::Table(table) => table.clone().into_theory(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TableEntry {
    pub n: u32,
    pub m: Vec<u32>,
    pub value: String,
}

/// A theory given by its values on the generators inside its caps.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TheoryTable {
    pub label: String,
    pub d: usize,
    pub variant: String,
    pub primitive: bool,
    pub max_n: u32,
    pub max_m: u32,
    pub values: Vec<TableEntry>,
}

impl TheoryTable {
    /// Tabulates the nonzero values of `e` over its caps.
    pub fn from_theory(e: &Theory) -> Result<Self> {
        let caps = e.caps();
        let mut values = Vec::new();
        for (exp, c) in e.generator_series()?.terms() {
            let sorted = exp[1..].windows(2).all(|w| w[0] >= w[1]);
            if exp[0] >= 1 && sorted {
                values.push(TableEntry { n: exp[0], m: exp[1..].to_vec(), value: format_rational(c) });
            }
        }
        Ok(TheoryTable {
            label: e.label().to_string(),
            d: e.dim(),
            variant: variant_name(e.variant()).into(),
            primitive: e.kind() == TheoryKind::Primitive,
            max_n: caps.n,
            max_m: caps.m,
            values,
        })
    }

    pub fn into_theory(self) -> Result<Theory> {
        let mut table = BTreeMap::new();
        for entry in self.values {
            table.insert(Generator::new(entry.n, entry.m)?, parse_rational(&entry.value)?);
        }
        let kind = if self.primitive { TheoryKind::Primitive } else { TheoryKind::Multiplicative };
        Theory::from_table(
            &self.label,
            self.d,
            parse_variant(&self.variant)?,
            kind,
            TheoryCaps::new(self.max_n, self.max_m),
            table,
        )
    }
}

pub fn theory_to_json(e: &Theory) -> Result<String> {
    Ok(to_json(&TheoryTable::from_theory(e)?))
}

pub fn theory_from_json(text: &str) -> Result<Theory> {
    from_json::<TheoryTable>(text)?.into_theory()
}
