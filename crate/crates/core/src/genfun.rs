//! Generating series of theories evaluated on vertical classes, and the named
//! identities between them.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::combinatorics::{partitions_of, rearrangement_count, ChernData, Partition};
use crate::error::{Error, Result};
use crate::hopf::{vertical_element, Basis, Context, Generator, HopfElement, Variant};
use crate::rational::{int, Rational};
use crate::series::{macmahon_series, MultiSeries, SeriesRing};
use crate::theory::{chern_power, dt_vertex_theory, inertial_theory, Theory, TheoryCaps, TheoryKind};

fn t_ring(n_max: u32) -> SeriesRing {
    SeriesRing::univariate("T", n_max)
}

fn require_multiplicative(e: &Theory) -> Result<()> {
    if e.kind() != TheoryKind::Multiplicative {
        return Err(Error::InvalidTheory(format!("{} is not multiplicative", e.label())));
    }
    Ok(())
}

fn require_caps(e: &Theory, needed: TheoryCaps) -> Result<()> {
    let caps = e.caps();
    if caps.n < needed.n || caps.m < needed.m {
        return Err(Error::OutsideCaps {
            generator: format!("needed {needed}"),
            caps: caps.to_string(),
        });
    }
    Ok(())
}

fn require_dim(e: &Theory, chern: &ChernData) -> Result<()> {
    if e.dim() != chern.dim() {
        return Err(Error::ContextMismatch(format!(
            "theory {} has d={}, Chern data has d={}",
            e.label(),
            e.dim(),
            chern.dim()
        )));
    }
    Ok(())
}

/// `Σ_n ⟨e, [Z_n X]⟩ T^n` up to `T^{n_max}`.
///
/// Computed twice: by exponentiating the paired primitive series, and by
/// pairing `e` with the classes from [`vertical_element`]. A disagreement is
/// reported as [`Error::PathDisagreement`].
pub fn vertical_series(e: &Theory, chern: &ChernData, n_max: u32) -> Result<MultiSeries> {
    require_multiplicative(e)?;
    require_dim(e, chern)?;
    let d = chern.dim();
    let ring = t_ring(n_max);
    let lambdas = partitions_of(d as u32, d);

    let via_series = match e.variant() {
        Variant::Separated => {
            require_caps(e, TheoryCaps::for_vertical(d, n_max))?;
            let mut coeffs = vec![Rational::zero()];
            for n in 1..=n_max {
                let mut a = Rational::zero();
                for lambda in &lambdas {
                    let m: Vec<u32> = lambda.padded(d)?.iter().map(|x| x + n - 1).collect();
                    a += chern.value(lambda) * e.primitive_value(&Generator::new(n, m)?)?;
                }
                coeffs.push(a);
            }
            MultiSeries::univariate("T", n_max, &coeffs).exp()?
        }
        Variant::NonSeparated => {
            require_caps(e, TheoryCaps::new(n_max.min(1), d as u32))?;
            let mut c = Rational::zero();
            for lambda in &lambdas {
                c += chern.value(lambda) * e.value(&Generator::non_separated(lambda.parts(), d)?)?;
            }
            MultiSeries::monomial(&ring, &[1], c).exp()?
        }
    };

    let classes = vertical_element(chern, n_max, e.variant())?;
    let mut paired = Vec::with_capacity(classes.len());
    for z in &classes {
        paired.push(e.eval(z)?);
    }
    let via_classes = MultiSeries::univariate("T", n_max, &paired);

    if via_series != via_classes {
        return Err(Error::PathDisagreement(format!(
            "vertical series of {}: {via_series} vs {via_classes}",
            e.label()
        )));
    }
    Ok(via_series)
}

/// `(Σ_n ⟨e, q_{n,n}⟩ T^n)^χ` on curves.
pub fn curve_series(e: &Theory, chi: &Rational, n_max: u32) -> Result<MultiSeries> {
    if e.dim() != 1 || e.variant() != Variant::Separated {
        return Err(Error::InvalidTheory(format!("curve series needs a separated d=1 theory, got {}", e.label())));
    }
    require_multiplicative(e)?;
    require_caps(e, TheoryCaps::new(n_max, n_max))?;
    let mut coeffs = vec![Rational::one()];
    for n in 1..=n_max {
        coeffs.push(e.value(&Generator::new(n, vec![n])?)?);
    }
    MultiSeries::univariate("T", n_max, &coeffs).pow(chi)
}

/// `log Σ_n ⟨e, [Z_n X]⟩ T^n` computed as the integral over `[X]` of
/// `γ · log Σ ⟨e, q_{n,m}⟩ γ^m (T/γ)^n`.
///
/// The Laurent exponents `m - (n - 1)` are read off after taking `log` of the
/// polynomial series in `(T, γ)`. A nonzero coefficient at a negative
/// exponent is reported as [`Error::ResidualPole`].
pub fn gamma_integral_series(e: &Theory, chern: &ChernData, n_max: u32) -> Result<MultiSeries> {
    require_multiplicative(e)?;
    require_dim(e, chern)?;
    if e.variant() != Variant::Separated {
        return Err(Error::InvalidTheory("the γ-integral needs a separated theory".into()));
    }
    let d = chern.dim();
    let caps = TheoryCaps::for_vertical(d, n_max);
    require_caps(e, caps)?;
    let log_g = e.generator_series_capped(caps)?.log()?;

    let mut coeffs = vec![Rational::zero(); n_max as usize + 1];
    for (exp, c) in log_g.terms() {
        let n = exp[0];
        let shift = n.saturating_sub(1);
        if exp[1..].iter().any(|&m| m < shift) {
            return Err(Error::ResidualPole(format!(
                "{} has coefficient {c} at T^{n} γ^{:?}",
                e.label(),
                exp[1..].iter().map(|&m| m as i64 - shift as i64).collect::<Vec<_>>()
            )));
        }
        let x: Vec<u32> = exp[1..].iter().map(|m| m - shift).collect();
        if x.iter().sum::<u32>() as usize != d {
            continue;
        }
        // ⟨γ^x, [X]⟩ for an ordered x is ⟨m_λ, [X]⟩ shared over the orbit of λ = sort(x).
        let lambda = Partition::new(x.clone());
        let orbit = Rational::from_integer(rearrangement_count(&x));
        coeffs[n as usize] += c * chern.value(&lambda) / orbit;
    }
    Ok(MultiSeries::univariate("T", n_max, &coeffs))
}

/// `exp(⟨c, [X]⟩ T)` with `⟨c, [X]⟩ = Σ_λ ⟨m_λ, [X]⟩ ⟨c, q_λ⟩`.
pub fn nonsep_vertical_series(
    e_values: &BTreeMap<Partition, Rational>,
    chern: &ChernData,
    n_max: u32,
) -> Result<MultiSeries> {
    let d = chern.dim();
    let mut c = Rational::zero();
    for lambda in partitions_of(d as u32, d) {
        let v = e_values
            .get(&lambda)
            .ok_or_else(|| Error::MissingParameter(format!("value on q{lambda}")))?;
        c += chern.value(&lambda) * v;
    }
    MultiSeries::monomial(&t_ring(n_max), &[1], c).exp()
}

/// `Σ_n ⟨e, f([Z_n X])⟩ T^n` where `f` is the separated to non-separated
/// morphism and `e` a non-separated theory.
pub fn pushed_vertical_series(e: &Theory, chern: &ChernData, n_max: u32) -> Result<MultiSeries> {
    if e.variant() != Variant::NonSeparated {
        return Err(Error::InvalidTheory(format!("{} is not a non-separated theory", e.label())));
    }
    require_dim(e, chern)?;
    let mut coeffs = Vec::new();
    for z in vertical_element(chern, n_max, Variant::Separated)? {
        coeffs.push(e.eval(&z.sep_to_nonsep()?)?);
    }
    Ok(MultiSeries::univariate("T", n_max, &coeffs))
}

/// `⟨P(T_X), [X]⟩`: the degree-`d` part of `Π_i P(γ_i)` paired with `[X]`,
/// grouping ordered exponents by partition.
pub fn class_number_of_product(p: &MultiSeries, chern: &ChernData) -> Result<Rational> {
    let coeffs = p.univariate_coeffs()?;
    let d = chern.dim();
    let mut total = Rational::zero();
    for lambda in partitions_of(d as u32, d) {
        let weight = lambda
            .parts()
            .iter()
            .fold(Rational::one(), |acc, &k| acc * coeffs.get(k as usize).cloned().unwrap_or_else(Rational::zero));
        total += weight * chern.value(&lambda);
    }
    Ok(total)
}

/// Result of a named identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub name: String,
    pub passed: bool,
    pub lhs: MultiSeries,
    pub rhs: MultiSeries,
    pub residual: MultiSeries,
}

impl IdentityReport {
    pub fn new(name: &str, lhs: MultiSeries, rhs: MultiSeries) -> Result<Self> {
        let residual = lhs.sub(&rhs)?;
        Ok(IdentityReport { name: name.to_string(), passed: residual.is_zero(), lhs, rhs, residual })
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "identity: {}", self.name)?;
        writeln!(f, "passed: {}", self.passed)?;
        writeln!(f, "lhs: {}", self.lhs)?;
        writeln!(f, "rhs: {}", self.rhs)?;
        write!(f, "residual: {}", self.residual)
    }
}

/// Inputs for [`verify_identity`]; each identity reads the fields it needs.
#[derive(Clone, Debug, Default)]
pub struct IdentityParams {
    pub theory: Option<Theory>,
    pub chern: Option<ChernData>,
    pub chi: Option<Rational>,
    pub k: Option<i64>,
    pub p: Option<MultiSeries>,
    pub n_max: u32,
}

impl IdentityParams {
    fn theory(&self) -> Result<&Theory> {
        self.theory.as_ref().ok_or_else(|| Error::MissingParameter("theory".into()))
    }

    fn chern(&self) -> Result<&ChernData> {
        self.chern.as_ref().ok_or_else(|| Error::MissingParameter("chern".into()))
    }

    /// χ given directly, or read off one-dimensional Chern data.
    fn curve_chi(&self) -> Result<Rational> {
        match (&self.chi, &self.chern) {
            (Some(chi), _) => Ok(chi.clone()),
            (None, Some(c)) if c.dim() == 1 => Ok(c.euler_characteristic()),
            _ => Err(Error::MissingParameter("chi".into())),
        }
    }
}

pub const IDENTITY_NAMES: [&str; 6] = ["lemma-minus", "mst", "consequences-i", "ck-bivariate", "dt-mnop", "gamma-integral"];

/// Evaluates both sides of a named identity by independent routes.
pub fn verify_identity(name: &str, params: &IdentityParams) -> Result<IdentityReport> {
    let n_max = params.n_max;
    match name {
        "lemma-minus" => {
            let p = params.p.as_ref().ok_or_else(|| Error::MissingParameter("p".into()))?;
            let chern = params.chern()?;
            let d = chern.dim();
            let theory = inertial_theory(p, d, TheoryCaps::for_vertical(d, n_max))?;
            let lhs = vertical_series(&theory, chern, n_max)?;
            let exponent = class_number_of_product(p, chern)?;
            let rhs = MultiSeries::univariate("T", n_max, &[int(1), int(-1)]).pow(&-exponent)?;
            IdentityReport::new(name, lhs, rhs)
        }
        "mst" => {
            let e = params.theory()?;
            let chi = params.curve_chi()?;
            let lhs = curve_series(e, &chi, n_max)?;
            let rhs = vertical_series(e, &ChernData::curve(chi), n_max)?;
            IdentityReport::new(name, lhs, rhs)
        }
        "consequences-i" => {
            let e = params.theory()?;
            let chi = params.curve_chi()?;
            let lhs = vertical_series(e, &ChernData::curve(chi.clone()), n_max)?;
            let rhs = group_like_curve_series(e, n_max)?.pow(&chi)?;
            IdentityReport::new(name, lhs, rhs)
        }
        "ck-bivariate" => {
            let k = params.k.ok_or_else(|| Error::MissingParameter("k".into()))?;
            let caps = TheoryCaps::new(n_max, n_max);
            let lhs = chern_power(1, k, Variant::Separated, caps).generator_series()?;
            let ring = lhs.ring().clone();
            let t = MultiSeries::variable(&ring, "T")?;
            let one_plus_u = MultiSeries::one(&ring).add(&MultiSeries::variable(&ring, "U1")?)?;
            let rhs = t.mul(&one_plus_u.pow(&int(k))?)?.exp()?;
            IdentityReport::new(name, lhs, rhs)
        }
        "dt-mnop" => {
            let chern = params.chern()?;
            if chern.dim() != 3 {
                return Err(Error::InvalidChernData(format!("dt-mnop needs d=3, got d={}", chern.dim())));
            }
            let theory = match &params.theory {
                Some(t) => t.clone(),
                None => dt_vertex_theory(TheoryCaps::for_vertical(3, n_max))?,
            };
            let lhs = vertical_series(&theory, chern, n_max)?;
            let rhs = mnop_series(chern, n_max)?;
            IdentityReport::new(name, lhs, rhs)
        }
        "gamma-integral" => {
            let e = params.theory()?;
            let chern = params.chern()?;
            let lhs = gamma_integral_series(e, chern, n_max)?;
            let rhs = vertical_series(e, chern, n_max)?.log()?;
            IdentityReport::new(name, lhs, rhs)
        }
        other => Err(Error::UnknownIdentity(other.to_string())),
    }
}

/// `M(-T)^{⟨c_3 - c_1 c_2, [X]⟩}`.
pub fn mnop_series(chern: &ChernData, n_max: u32) -> Result<MultiSeries> {
    let c3 = chern.class_number(&Partition::new(vec![3]))?;
    let c1c2 = chern.class_number(&Partition::new(vec![2, 1]))?;
    let ring = t_ring(n_max);
    macmahon_series(n_max)
        .substitute_monomials(&ring, &[(int(-1), vec![1])])?
        .pow(&(c3 - c1c2))
}

/// `Σ_n ⟨e, Y_n⟩ T^n` where `Σ Y_n T^n = exp Σ_n p_{n,n} T^n`, with each
/// `Y_n` rewritten in the `q` basis before pairing.
fn group_like_curve_series(e: &Theory, n_max: u32) -> Result<MultiSeries> {
    let ctx = Context::separated(1).with_basis(Basis::P);
    let a: Vec<HopfElement> = (0..=n_max)
        .map(|n| {
            if n == 0 {
                Ok(HopfElement::zero(ctx))
            } else {
                HopfElement::generator(ctx, n, &[n])
            }
        })
        .collect::<Result<_>>()?;
    let mut y = vec![HopfElement::one(ctx)];
    for n in 1..=n_max as usize {
        let mut acc = HopfElement::zero(ctx);
        for j in 1..=n {
            acc = acc.add(&a[j].mul(&y[n - j])?.scale(&int(j as i64)))?;
        }
        y.push(acc.scale(&Rational::new(1.into(), (n as i64).into())));
    }
    let mut coeffs = Vec::new();
    for yn in &y {
        coeffs.push(e.eval(&yn.p_to_q()?)?);
    }
    Ok(MultiSeries::univariate("T", n_max, &coeffs))
}
