//! Randomised checks of the Hopf algebra axioms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Basis, Context, Generator, HopfElement, Monomial, TensorElement, Variant};
use crate::error::Result;
use crate::rational::Rational;

/// Draws a random element with at most `max_terms` terms, every monomial of
/// cycle degree between 1 and `max_cycle`, plus possibly a scalar term.
/// Exponent entries are bounded by `max_entry`.
pub fn random_element<R: Rng>(ctx: Context, rng: &mut R, max_cycle: u32, max_entry: u32, max_terms: usize) -> HopfElement {
    let mut terms = Vec::new();
    let count = rng.gen_range(1..=max_terms.max(1));
    for _ in 0..count {
        let mono = if rng.gen_bool(0.1) || max_cycle == 0 {
            Monomial::unit()
        } else {
            let cycle = rng.gen_range(1..=max_cycle);
            random_monomial(ctx, rng, cycle, max_entry)
        };
        terms.push((mono, random_rational(rng)));
    }
    HopfElement::from_terms(ctx, terms).expect("random monomials fit their context")
}

fn random_monomial<R: Rng>(ctx: Context, rng: &mut R, cycle: u32, max_entry: u32) -> Monomial {
    let mut left = cycle;
    let mut factors = Vec::new();
    while left > 0 {
        let n = match ctx.variant {
            Variant::Separated => rng.gen_range(1..=left),
            Variant::NonSeparated => 1,
        };
        let m = (0..ctx.d).map(|_| rng.gen_range(0..=max_entry)).collect();
        factors.push(Generator::new(n, m).expect("n >= 1"));
        left -= n;
    }
    Monomial::from_factors(factors)
}

fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    let num = loop {
        let k: i64 = rng.gen_range(-6..=6);
        if k != 0 {
            break k;
        }
    };
    Rational::new(num.into(), rng.gen_range(1i64..=4).into())
}

/// Outcome of one axiom over a corpus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub axiom: &'static str,
    pub context: Context,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn coassociative(x: &HopfElement) -> Result<bool> {
    let dx = x.coproduct()?;
    Ok(dx.coproduct_left()? == dx.coproduct_right()?)
}

pub fn counital(x: &HopfElement) -> Result<bool> {
    let dx = x.coproduct()?;
    Ok(dx.counit_left() == *x && dx.counit_right() == *x)
}

pub fn bialgebra(x: &HopfElement, y: &HopfElement) -> Result<bool> {
    Ok(x.mul(y)?.coproduct()? == x.coproduct()?.mul(&y.coproduct()?)?)
}

pub fn antipode_axiom(x: &HopfElement) -> Result<bool> {
    let dx = x.coproduct()?;
    let expected = HopfElement::scalar(x.context(), x.counit());
    let single = |m: &Monomial| HopfElement::from_monomial(x.context(), m.clone(), Rational::from_integer(1.into()));
    let left = dx.map_each(x.context(), |m| Ok(single(m)?.antipode()), single)?.multiply_out();
    let right = dx.map_each(x.context(), single, |m| Ok(single(m)?.antipode()))?.multiply_out();
    Ok(left == expected && right == expected)
}

pub fn commutative(x: &HopfElement, y: &HopfElement) -> Result<bool> {
    let dx = x.coproduct()?;
    Ok(x.mul(y)? == y.mul(x)? && dx.flip() == dx)
}

/// `p_to_q ∘ q_to_p = id` on `x`, and the reverse on its image.
pub fn round_trip(x: &HopfElement) -> Result<bool> {
    let p = x.q_to_p()?;
    Ok(p.p_to_q()? == *x && p.p_to_q()?.q_to_p()? == p)
}

/// Every `p` factor of `x` (read in the `p` basis) is primitive.
pub fn primitive_generators(x: &HopfElement) -> Result<bool> {
    let pctx = x.context().with_basis(Basis::P);
    for mono in x.terms().map(|(m, _)| m) {
        for g in mono.factors() {
            let p = HopfElement::from_monomial(pctx, Monomial::single(g.clone()), Rational::from_integer(1.into()))?.p_to_q()?;
            let one = HopfElement::one(p.context());
            let expected = TensorElement::pure(&p, &one)?.add(&TensorElement::pure(&one, &p)?)?;
            if p.coproduct()? != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The cycle-degree-zero part is a multiple of the unit.
pub fn connected(x: &HopfElement) -> bool {
    x.grade()
        .iter()
        .filter(|piece| piece.cycle == 0)
        .all(|piece| piece.component.terms().all(|(m, _)| m.is_unit()))
}

/// `sep_to_nonsep` respects product and coproduct.
pub fn sep_to_nonsep_morphism(x: &HopfElement, y: &HopfElement) -> Result<bool> {
    let f = |e: &HopfElement| e.sep_to_nonsep();
    let product_ok = f(&x.mul(y)?)? == f(x)?.mul(&f(y)?)?;
    let single = |m: &Monomial| HopfElement::from_monomial(x.context(), m.clone(), Rational::from_integer(1.into()))?.sep_to_nonsep();
    let pushed = x.coproduct()?.map_each(Context::non_separated(x.context().d), single, single)?;
    let coproduct_ok = f(x)?.coproduct()? == pushed;
    Ok(product_ok && coproduct_ok)
}

/// Runs every axiom on `count` random elements per context, deterministically
/// seeded.
pub fn run_suite(contexts: &[Context], count: usize, max_cycle: u32, seed: u64) -> Result<Vec<AxiomReport>> {
    let mut reports = Vec::new();
    for (ci, &ctx) in contexts.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(ci as u64));
        let max_entry = if ctx.d >= 3 { 1 } else { 2 };
        let corpus: Vec<HopfElement> = (0..count)
            .map(|_| random_element(ctx, &mut rng, max_cycle, max_entry, 3))
            .collect();
        let pairs: Vec<(&HopfElement, &HopfElement)> = corpus.iter().zip(corpus.iter().rev()).collect();
        let mut report = |axiom: &'static str, results: Vec<(String, bool)>| {
            let checked = results.len();
            let failures = results.into_iter().filter(|(_, ok)| !ok).map(|(s, _)| s).collect();
            reports.push(AxiomReport { axiom, context: ctx, checked, failures });
        };
        let single = |check: &dyn Fn(&HopfElement) -> Result<bool>| -> Result<Vec<(String, bool)>> {
            corpus.iter().map(|x| Ok((x.to_string(), check(x)?))).collect()
        };
        let double = |check: &dyn Fn(&HopfElement, &HopfElement) -> Result<bool>| -> Result<Vec<(String, bool)>> {
            pairs.iter().map(|(x, y)| Ok((format!("{x} ; {y}"), check(x, y)?))).collect()
        };
        report("coassociativity", single(&coassociative)?);
        report("counit", single(&counital)?);
        report("bialgebra", double(&bialgebra)?);
        report("antipode", single(&antipode_axiom)?);
        report("commutativity", double(&commutative)?);
        report("connectedness", single(&|x| Ok(connected(x)))?);
        report("primitives", single(&primitive_generators)?);
        report("basis-round-trip", single(&round_trip)?);
        if ctx.variant == Variant::Separated {
            report("sep-to-nonsep", double(&sep_to_nonsep_morphism)?);
        }
    }
    Ok(reports)
}
