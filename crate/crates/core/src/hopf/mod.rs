//! The tautological Hopf algebras.
//!
//! The separated algebra is modelled as the free commutative algebra on the
//! generators `q_{n,m}` with `n >= 1` and `m` a weakly decreasing vector of
//! length `d`. The non-separated algebra is the free commutative algebra on
//! `q_λ`, `λ` a partition with at most `d` parts; its generators are stored as
//! [`Generator`]s with `n = 1`, which makes the separated coproduct formula
//! specialise to the primitive one.
//!
//! Elements carry a [`Context`]: the dimension, the variant and whether the
//! monomials are read as products of `q`s or of the primitives `p`.

mod axioms;
mod ops;
mod vertical;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

pub use axioms::{random_element, run_suite, AxiomReport};
pub use ops::{GradedComponent, TripleTensor};
pub use vertical::vertical_element;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Separated,
    NonSeparated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    Q,
    P,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Context {
    pub d: usize,
    pub variant: Variant,
    pub basis: Basis,
}

impl Context {
    pub fn new(d: usize, variant: Variant, basis: Basis) -> Self {
        Context { d, variant, basis }
    }

    pub fn separated(d: usize) -> Self {
        Self::new(d, Variant::Separated, Basis::Q)
    }

    pub fn non_separated(d: usize) -> Self {
        Self::new(d, Variant::NonSeparated, Basis::Q)
    }

    pub fn with_basis(self, basis: Basis) -> Self {
        Context { basis, ..self }
    }

    fn check_same(&self, other: &Context) -> Result<()> {
        if self != other {
            return Err(Error::ContextMismatch(format!("{self} vs {other}")));
        }
        Ok(())
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let variant = match self.variant {
            Variant::Separated => "sep",
            Variant::NonSeparated => "nonsep",
        };
        let basis = match self.basis {
            Basis::Q => "q",
            Basis::P => "p",
        };
        write!(f, "d={} {variant} {basis}", self.d)
    }
}

/// A generator `q_{n,m}` (or `p_{n,m}`) with `n >= 1` and `m` weakly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    n: u32,
    m: Vec<u32>,
}

/// Result of canonicalising a raw index `(n, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Canonical {
    Unit,
    Zero,
    Generator(Generator),
}

/// Sorts `m` and applies the augmentation rule: `(0, 0)` is the unit and
/// `(0, m != 0)` is zero.
pub fn canonical_generator(n: i64, m: &[i64]) -> Result<Canonical> {
    if n < 0 || m.iter().any(|&x| x < 0) {
        return Err(Error::InvalidIndex(format!("negative entry in ({n}, {m:?})")));
    }
    let m: Vec<u32> = m.iter().map(|&x| x as u32).collect();
    Ok(canonical_unsigned(n as u32, m))
}

pub(crate) fn canonical_unsigned(n: u32, mut m: Vec<u32>) -> Canonical {
    if n == 0 {
        return if m.iter().all(|&x| x == 0) { Canonical::Unit } else { Canonical::Zero };
    }
    m.sort_unstable_by(|a, b| b.cmp(a));
    Canonical::Generator(Generator { n, m })
}

impl Generator {
    /// A canonical generator; the unit and zero indices are rejected.
    pub fn new(n: u32, m: Vec<u32>) -> Result<Self> {
        match canonical_unsigned(n, m.clone()) {
            Canonical::Generator(g) => Ok(g),
            _ => Err(Error::InvalidIndex(format!("({n}, {m:?}) is not a generator"))),
        }
    }

    /// The non-separated generator `q_λ`, with `λ` padded to length `d`.
    pub fn non_separated(lambda: &[u32], d: usize) -> Result<Self> {
        if lambda.len() > d {
            return Err(Error::InvalidIndex(format!("{lambda:?} has more than {d} parts")));
        }
        let mut m = lambda.to_vec();
        m.resize(d, 0);
        Self::new(1, m)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> &[u32] {
        &self.m
    }

    pub fn weight(&self) -> u32 {
        self.m.iter().sum()
    }

    fn fits(&self, ctx: &Context) -> bool {
        self.m.len() == ctx.d && (ctx.variant == Variant::Separated || self.n == 1)
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, letter: char, variant: Variant) -> fmt::Result {
        let m: Vec<String> = self.m.iter().map(u32::to_string).collect();
        match variant {
            Variant::Separated => write!(f, "{letter}({};{})", self.n, m.join(",")),
            Variant::NonSeparated => write!(f, "{letter}({})", m.join(",")),
        }
    }
}

/// A commutative product of generators in sorted order; empty is the unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<Generator>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_factors(mut factors: Vec<Generator>) -> Self {
        factors.sort();
        Monomial(factors)
    }

    pub fn single(g: Generator) -> Self {
        Monomial(vec![g])
    }

    pub fn factors(&self) -> &[Generator] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            if self.0[i] <= other.0[j] {
                out.push(self.0[i].clone());
                i += 1;
            } else {
                out.push(other.0[j].clone());
                j += 1;
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    pub fn cycle_degree(&self) -> u32 {
        self.0.iter().map(|g| g.n).sum()
    }

    pub fn homological_degree(&self) -> u32 {
        2 * self.0.iter().map(Generator::weight).sum::<u32>()
    }

    pub fn total_degree(&self, d: usize) -> i64 {
        self.homological_degree() as i64 - 2 * self.cycle_degree() as i64 * d as i64
    }

    /// Distinct factors with their multiplicities.
    pub fn powers(&self) -> Vec<(&Generator, u32)> {
        let mut out: Vec<(&Generator, u32)> = Vec::new();
        for g in &self.0 {
            match out.last_mut() {
                Some((h, k)) if *h == g => *k += 1,
                _ => out.push((g, 1)),
            }
        }
        out
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, ctx: &Context) -> fmt::Result {
        let letter = match ctx.basis {
            Basis::Q => 'q',
            Basis::P => 'p',
        };
        for (i, (g, k)) in self.powers().into_iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            g.write(f, letter, ctx.variant)?;
            if k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

pub(crate) type Terms = BTreeMap<Monomial, Rational>;

pub(crate) fn add_term(terms: &mut Terms, mono: Monomial, coeff: Rational) {
    if coeff.is_zero() {
        return;
    }
    match terms.entry(mono) {
        std::collections::btree_map::Entry::Vacant(slot) => {
            slot.insert(coeff);
        }
        std::collections::btree_map::Entry::Occupied(mut slot) => {
            *slot.get_mut() += coeff;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
    }
}

/// A sparse rational combination of monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfElement {
    ctx: Context,
    terms: Terms,
}

impl HopfElement {
    pub fn zero(ctx: Context) -> Self {
        HopfElement { ctx, terms: Terms::new() }
    }

    pub fn one(ctx: Context) -> Self {
        Self::scalar(ctx, Rational::one())
    }

    pub fn scalar(ctx: Context, value: Rational) -> Self {
        let mut terms = Terms::new();
        add_term(&mut terms, Monomial::unit(), value);
        HopfElement { ctx, terms }
    }

    /// `q_{n,m}` (or `p_{n,m}` in the P basis) after canonicalisation, so the
    /// unit and zero indices give `1` and `0`.
    pub fn generator(ctx: Context, n: u32, m: &[u32]) -> Result<Self> {
        if m.len() != ctx.d {
            return Err(Error::ContextMismatch(format!("index {m:?} in context {ctx}")));
        }
        match canonical_unsigned(n, m.to_vec()) {
            Canonical::Unit => Ok(Self::one(ctx)),
            Canonical::Zero => Ok(Self::zero(ctx)),
            Canonical::Generator(g) => Self::from_monomial(ctx, Monomial::single(g), Rational::one()),
        }
    }

    /// The non-separated generator `q_λ`.
    pub fn partition_generator(ctx: Context, lambda: &[u32]) -> Result<Self> {
        if ctx.variant != Variant::NonSeparated {
            return Err(Error::ContextMismatch(format!("partition generator in context {ctx}")));
        }
        let g = Generator::non_separated(lambda, ctx.d)?;
        Self::from_monomial(ctx, Monomial::single(g), Rational::one())
    }

    pub fn from_monomial(ctx: Context, mono: Monomial, coeff: Rational) -> Result<Self> {
        Self::from_terms(ctx, [(mono, coeff)])
    }

    /// Sums the given terms; every factor must belong to `ctx`.
    pub fn from_terms<I>(ctx: Context, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut acc = Terms::new();
        for (mono, c) in terms {
            if let Some(g) = mono.factors().iter().find(|g| !g.fits(&ctx)) {
                return Err(Error::ContextMismatch(format!("{g:?} in context {ctx}")));
            }
            add_term(&mut acc, mono, c);
        }
        Ok(HopfElement { ctx, terms: acc })
    }

    pub(crate) fn from_raw(ctx: Context, terms: Terms) -> Self {
        HopfElement { ctx, terms }
    }

    pub fn context(&self) -> Context {
        self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Alias for [`Self::is_zero`]: no stored terms.
    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ctx.check_same(&other.ctx)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m.clone(), c.clone());
        }
        Ok(HopfElement { ctx: self.ctx, terms })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero(self.ctx);
        }
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c * factor)).collect();
        HopfElement { ctx: self.ctx, terms }
    }

    /// Bilinear extension of monomial concatenation.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.ctx.check_same(&other.ctx)?;
        let mut terms = Terms::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                add_term(&mut terms, ma.times(mb), ca * cb);
            }
        }
        Ok(HopfElement { ctx: self.ctx, terms })
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::one(self.ctx);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// The largest cycle degree among the terms, or 0 for scalars and zero.
    pub fn max_cycle_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::cycle_degree).max().unwrap_or(0)
    }
}

impl fmt::Display for HopfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0/1");
        }
        for (i, (mono, c)) in self.terms.iter().enumerate() {
            write_coeff(f, i, c)?;
            if !mono.is_unit() {
                write!(f, "*")?;
                mono.write(f, &self.ctx)?;
            }
        }
        Ok(())
    }
}

fn write_coeff(f: &mut fmt::Formatter<'_>, index: usize, c: &Rational) -> fmt::Result {
    match (index, c.is_negative()) {
        (0, false) => {}
        (0, true) => write!(f, "-")?,
        (_, false) => write!(f, " + ")?,
        (_, true) => write!(f, " - ")?,
    }
    write!(f, "{}", format_rational(&c.abs()))
}

pub(crate) type PairTerms = BTreeMap<(Monomial, Monomial), Rational>;

/// An element of `H ⊗ H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    ctx: Context,
    terms: PairTerms,
}

impl TensorElement {
    pub fn zero(ctx: Context) -> Self {
        TensorElement { ctx, terms: PairTerms::new() }
    }

    pub(crate) fn from_raw(ctx: Context, terms: PairTerms) -> Self {
        TensorElement { ctx, terms }
    }

    /// `a ⊗ b`.
    pub fn pure(a: &HopfElement, b: &HopfElement) -> Result<Self> {
        a.ctx.check_same(&b.ctx)?;
        let mut terms = PairTerms::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                add_pair(&mut terms, (ma.clone(), mb.clone()), ca * cb);
            }
        }
        Ok(TensorElement { ctx: a.ctx, terms })
    }

    pub fn context(&self) -> Context {
        self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Alias for [`Self::is_zero`]: no stored terms.
    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, left: &Monomial, right: &Monomial) -> Rational {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ctx.check_same(&other.ctx)?;
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            add_pair(&mut terms, k.clone(), c.clone());
        }
        Ok(TensorElement { ctx: self.ctx, terms })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let neg = TensorElement {
            ctx: other.ctx,
            terms: other.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        };
        self.add(&neg)
    }

    /// Componentwise product in `H ⊗ H`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.ctx.check_same(&other.ctx)?;
        let mut terms = PairTerms::new();
        for ((a1, a2), ca) in &self.terms {
            for ((b1, b2), cb) in &other.terms {
                add_pair(&mut terms, (a1.times(b1), a2.times(b2)), ca * cb);
            }
        }
        Ok(TensorElement { ctx: self.ctx, terms })
    }

    /// Swaps the two tensor factors.
    pub fn flip(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|((a, b), c)| ((b.clone(), a.clone()), c.clone()))
            .collect();
        TensorElement { ctx: self.ctx, terms }
    }

    /// Applies `f ⊗ g` where `f` and `g` are linear maps given on monomials.
    pub fn map_each(
        &self,
        target: Context,
        f: impl Fn(&Monomial) -> Result<HopfElement>,
        g: impl Fn(&Monomial) -> Result<HopfElement>,
    ) -> Result<Self> {
        let mut acc = PairTerms::new();
        for ((a, b), c) in &self.terms {
            let fa = f(a)?;
            let gb = g(b)?;
            target.check_same(&fa.ctx)?;
            target.check_same(&gb.ctx)?;
            for (ma, ca) in &fa.terms {
                for (mb, cb) in &gb.terms {
                    add_pair(&mut acc, (ma.clone(), mb.clone()), c * ca * cb);
                }
            }
        }
        Ok(TensorElement { ctx: target, terms: acc })
    }

    /// `μ(a ⊗ b) = a b`.
    pub fn multiply_out(&self) -> HopfElement {
        let mut terms = Terms::new();
        for ((a, b), c) in &self.terms {
            add_term(&mut terms, a.times(b), c.clone());
        }
        HopfElement::from_raw(self.ctx, terms)
    }
}

pub(crate) fn add_pair(terms: &mut PairTerms, key: (Monomial, Monomial), coeff: Rational) {
    if coeff.is_zero() {
        return;
    }
    match terms.entry(key) {
        std::collections::btree_map::Entry::Vacant(slot) => {
            slot.insert(coeff);
        }
        std::collections::btree_map::Entry::Occupied(mut slot) => {
            *slot.get_mut() += coeff;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0/1");
        }
        for (i, ((a, b), c)) in self.terms.iter().enumerate() {
            write_coeff(f, i, c)?;
            write!(f, "*")?;
            write_side(f, a, &self.ctx)?;
            write!(f, "⊗")?;
            write_side(f, b, &self.ctx)?;
        }
        Ok(())
    }
}

fn write_side(f: &mut fmt::Formatter<'_>, m: &Monomial, ctx: &Context) -> fmt::Result {
    if m.is_unit() {
        write!(f, "1")
    } else {
        m.write(f, ctx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn q(ctx: Context, n: u32, m: &[u32]) -> HopfElement {
        HopfElement::generator(ctx, n, m).unwrap()
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(canonical_generator(2, &[0, 1]).unwrap(), Canonical::Generator(Generator::new(2, vec![1, 0]).unwrap()));
        assert_eq!(canonical_generator(0, &[0, 0]).unwrap(), Canonical::Unit);
        assert_eq!(canonical_generator(0, &[2]).unwrap(), Canonical::Zero);
        assert!(matches!(canonical_generator(1, &[-1]), Err(Error::InvalidIndex(_))));
        assert!(matches!(canonical_generator(-1, &[0]), Err(Error::InvalidIndex(_))));
    }

    #[test]
    fn products() {
        let ctx = Context::separated(1);
        let prod = q(ctx, 1, &[1]).mul(&q(ctx, 1, &[2])).unwrap();
        assert_eq!(prod.len(), 1);
        let mono = Monomial::from_factors(vec![Generator::new(1, vec![2]).unwrap(), Generator::new(1, vec![1]).unwrap()]);
        assert_eq!(prod.coeff(&mono), int(1));

        let x = q(ctx, 2, &[3]).scale(&rat(2, 3));
        assert_eq!(x.mul(&HopfElement::one(ctx)).unwrap(), x);

        let s = q(ctx, 1, &[0]).add(&q(ctx, 1, &[1])).unwrap();
        let sq = s.mul(&s).unwrap();
        let expected = q(ctx, 1, &[0])
            .pow(2)
            .unwrap()
            .add(&q(ctx, 1, &[0]).mul(&q(ctx, 1, &[1])).unwrap().scale(&int(2)))
            .unwrap()
            .add(&q(ctx, 1, &[1]).pow(2).unwrap())
            .unwrap();
        assert_eq!(sq, expected);
    }

    #[test]
    fn contexts_do_not_mix() {
        let a = q(Context::separated(1), 1, &[1]);
        let b = q(Context::separated(2), 1, &[1, 0]);
        assert!(matches!(a.mul(&b), Err(Error::ContextMismatch(_))));
        let p = q(Context::separated(1).with_basis(Basis::P), 1, &[1]);
        assert!(a.add(&p).is_err());
        assert!(HopfElement::generator(Context::separated(2), 1, &[1]).is_err());
    }

    #[test]
    fn unit_and_zero_indices() {
        let ctx = Context::separated(2);
        assert_eq!(q(ctx, 0, &[0, 0]), HopfElement::one(ctx));
        assert!(q(ctx, 0, &[1, 0]).is_zero());
    }

    #[test]
    fn display() {
        let ctx = Context::separated(1);
        let x = q(ctx, 2, &[2])
            .sub(&q(ctx, 1, &[1]).pow(2).unwrap().scale(&rat(1, 2)))
            .unwrap()
            .add(&HopfElement::one(ctx))
            .unwrap();
        assert_eq!(x.to_string(), "1/1 - 1/2*q(1;1)^2 + 1/1*q(2;2)");
        let ns = HopfElement::partition_generator(Context::non_separated(2), &[2]).unwrap();
        assert_eq!(ns.to_string(), "1/1*q(2,0)");
    }
}
