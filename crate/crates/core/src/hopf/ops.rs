//! Coproduct, counit, antipode, the change between the `q` and `p` bases,
//! gradings and the separated to non-separated morphism.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use super::{
    add_pair, add_term, canonical_unsigned, Basis, Canonical, Context, Generator, HopfElement, Monomial, PairTerms,
    TensorElement, Terms, Variant,
};
use crate::combinatorics::{
    inverse_multiplicity_factorial, vector_multiset_partitions, vector_multisets_of_size, vector_splittings,
};
use crate::error::{Error, Result};
use crate::rational::{factorial, Rational};

/// One bigraded piece of an element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComponent {
    pub cycle: u32,
    pub homological: u32,
    pub total: i64,
    pub component: HopfElement,
}

/// An element of `H ⊗ H ⊗ H`, used to check coassociativity.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TripleTensor {
    pub terms: BTreeMap<(Monomial, Monomial, Monomial), Rational>,
}

impl TripleTensor {
    fn add(&mut self, key: (Monomial, Monomial, Monomial), coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }
}

fn require_q(ctx: &Context, op: &str) -> Result<()> {
    if ctx.variant == Variant::Separated && ctx.basis != Basis::Q {
        return Err(Error::WrongBasis(format!("{op} expects the q basis, got {ctx}")));
    }
    Ok(())
}

fn generator_coproduct(ctx: Context, g: &Generator) -> TensorElement {
    let mut index = Vec::with_capacity(g.m.len() + 1);
    index.push(g.n);
    index.extend_from_slice(&g.m);
    let mut terms = PairTerms::new();
    for (a, b) in vector_splittings(&index) {
        let left = match canonical_unsigned(a[0], a[1..].to_vec()) {
            Canonical::Zero => continue,
            Canonical::Unit => Monomial::unit(),
            Canonical::Generator(g) => Monomial::single(g),
        };
        let right = match canonical_unsigned(b[0], b[1..].to_vec()) {
            Canonical::Zero => continue,
            Canonical::Unit => Monomial::unit(),
            Canonical::Generator(g) => Monomial::single(g),
        };
        add_pair(&mut terms, (left, right), Rational::one());
    }
    TensorElement::from_raw(ctx, terms)
}

impl HopfElement {
    /// `Δ`, extended multiplicatively from the generators.
    pub fn coproduct(&self) -> Result<TensorElement> {
        require_q(&self.ctx, "coproduct")?;
        let mut cache: HashMap<&Generator, TensorElement> = HashMap::new();
        let mut out = PairTerms::new();
        let unit = TensorElement::pure(&HopfElement::one(self.ctx), &HopfElement::one(self.ctx))?;
        for (mono, c) in &self.terms {
            let mut acc = unit.clone();
            for g in mono.factors() {
                let dg = cache
                    .entry(g)
                    .or_insert_with(|| generator_coproduct(self.ctx, g))
                    .clone();
                acc = acc.mul(&dg)?;
            }
            for (k, v) in acc.terms {
                add_pair(&mut out, k, v * c);
            }
        }
        Ok(TensorElement::from_raw(self.ctx, out))
    }

    /// `ε`: the coefficient of the unit.
    pub fn counit(&self) -> Rational {
        self.coeff(&Monomial::unit())
    }

    /// Rewrites a `q`-basis element in the `p` basis.
    pub fn q_to_p(&self) -> Result<Self> {
        if self.ctx.basis != Basis::Q {
            return Err(Error::WrongBasis(format!("q_to_p expects the q basis, got {}", self.ctx)));
        }
        self.change_basis(Basis::P)
    }

    /// Rewrites a `p`-basis element in the `q` basis.
    pub fn p_to_q(&self) -> Result<Self> {
        if self.ctx.basis != Basis::P {
            return Err(Error::WrongBasis(format!("p_to_q expects the p basis, got {}", self.ctx)));
        }
        self.change_basis(Basis::Q)
    }

    /// The same element expressed in `basis`.
    pub fn to_basis(&self, basis: Basis) -> Self {
        if basis == self.ctx.basis {
            return self.clone();
        }
        self.change_basis(basis).expect("basis change of a valid element")
    }

    fn change_basis(&self, target: Basis) -> Result<Self> {
        let ctx = self.ctx.with_basis(target);
        if self.ctx.variant == Variant::NonSeparated {
            // Non-separated generators are already primitive.
            return Ok(HopfElement::from_raw(ctx, self.terms.clone()));
        }
        let mut out = Terms::new();
        for (mono, c) in &self.terms {
            let mut acc: Terms = Terms::from([(Monomial::unit(), c.clone())]);
            for g in mono.factors() {
                let image = basis_expansion(g, target);
                acc = multiply_terms(&acc, &image);
            }
            for (m, v) in acc {
                add_term(&mut out, m, v);
            }
        }
        Ok(HopfElement::from_raw(ctx, out))
    }

    /// `S`, computed by negating every primitive factor in the `p` basis.
    /// The result is returned in the basis of the input.
    pub fn antipode(&self) -> Self {
        let in_p = self.to_basis(Basis::P);
        let terms = in_p
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), if m.factors().len() % 2 == 1 { -c } else { c.clone() }))
            .collect();
        HopfElement::from_raw(in_p.ctx, terms).to_basis(self.ctx.basis)
    }

    /// Decomposition into pieces of fixed cycle and homological degree.
    pub fn grade(&self) -> Vec<GradedComponent> {
        let mut pieces: BTreeMap<(u32, u32), Terms> = BTreeMap::new();
        for (mono, c) in &self.terms {
            let key = (mono.cycle_degree(), mono.homological_degree());
            pieces.entry(key).or_default().insert(mono.clone(), c.clone());
        }
        pieces
            .into_iter()
            .map(|((cycle, homological), terms)| GradedComponent {
                cycle,
                homological,
                total: homological as i64 - 2 * cycle as i64 * self.ctx.d as i64,
                component: HopfElement::from_raw(self.ctx, terms),
            })
            .collect()
    }

    /// The morphism from the separated to the non-separated algebra.
    pub fn sep_to_nonsep(&self) -> Result<Self> {
        if self.ctx.variant != Variant::Separated {
            return Err(Error::ContextMismatch(format!("sep_to_nonsep on {}", self.ctx)));
        }
        let target = Context::non_separated(self.ctx.d);
        let mut out = Terms::new();
        for (mono, c) in &self.terms {
            let mut acc: Terms = Terms::from([(Monomial::unit(), c.clone())]);
            for g in mono.factors() {
                let image = match self.ctx.basis {
                    Basis::Q => nonsep_image_of_q(g),
                    Basis::P if g.n == 1 => Terms::from([(Monomial::single(g.clone()), Rational::one())]),
                    Basis::P => Terms::new(),
                };
                acc = multiply_terms(&acc, &image);
                if acc.is_empty() {
                    break;
                }
            }
            for (m, v) in acc {
                add_term(&mut out, m, v);
            }
        }
        Ok(HopfElement::from_raw(target, out))
    }
}

impl TensorElement {
    /// `(Δ ⊗ id)`.
    pub fn coproduct_left(&self) -> Result<TripleTensor> {
        let mut out = TripleTensor::default();
        for ((a, b), c) in &self.terms {
            let da = HopfElement::from_raw(self.ctx, Terms::from([(a.clone(), Rational::one())])).coproduct()?;
            for ((a1, a2), ca) in &da.terms {
                out.add((a1.clone(), a2.clone(), b.clone()), c * ca);
            }
        }
        Ok(out)
    }

    /// `(id ⊗ Δ)`.
    pub fn coproduct_right(&self) -> Result<TripleTensor> {
        let mut out = TripleTensor::default();
        for ((a, b), c) in &self.terms {
            let db = HopfElement::from_raw(self.ctx, Terms::from([(b.clone(), Rational::one())])).coproduct()?;
            for ((b1, b2), cb) in &db.terms {
                out.add((a.clone(), b1.clone(), b2.clone()), c * cb);
            }
        }
        Ok(out)
    }

    /// `(ε ⊗ id)`.
    pub fn counit_left(&self) -> HopfElement {
        let mut terms = Terms::new();
        for ((a, b), c) in &self.terms {
            if a.is_unit() {
                add_term(&mut terms, b.clone(), c.clone());
            }
        }
        HopfElement::from_raw(self.ctx, terms)
    }

    /// `(id ⊗ ε)`.
    pub fn counit_right(&self) -> HopfElement {
        let mut terms = Terms::new();
        for ((a, b), c) in &self.terms {
            if b.is_unit() {
                add_term(&mut terms, a.clone(), c.clone());
            }
        }
        HopfElement::from_raw(self.ctx, terms)
    }
}

pub(crate) fn multiply_terms(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            add_term(&mut out, ma.times(mb), ca * cb);
        }
    }
    out
}

type ExpansionCache = Mutex<HashMap<(Generator, Basis), Arc<Terms>>>;

fn expansion_cache() -> &'static ExpansionCache {
    static CACHE: OnceLock<ExpansionCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The image of one separated generator under a basis change.
///
/// Towards `p`: `q_{n,m} = Σ 1/Π a_j! Π p_{n_i,m_i}`, summed over multisets
/// `{(n_i, m_i)}` with every `n_i >= 1` adding up to `(n, m)`, the `a_j` being
/// multiplicities. Towards `q` the weight is `(-1)^{k+1} (k-1)! / Π a_j!` for a
/// multiset of `k` parts. Both are the ordered-composition sums of `exp` and
/// `log` collected by multiset.
fn basis_expansion(g: &Generator, target: Basis) -> Arc<Terms> {
    let key = (g.clone(), target);
    if let Some(hit) = expansion_cache().lock().unwrap().get(&key) {
        return hit.clone();
    }
    let mut index = Vec::with_capacity(g.m.len() + 1);
    index.push(g.n);
    index.extend_from_slice(&g.m);
    let mut terms = Terms::new();
    for parts in vector_multiset_partitions(&index, &|v| v[0] >= 1) {
        let mut weight = inverse_multiplicity_factorial(&parts);
        if target == Basis::Q {
            let k = parts.len() as u32;
            weight *= Rational::from_integer(factorial(k - 1));
            if k.is_multiple_of(2) {
                weight = -weight;
            }
        }
        let factors = parts
            .iter()
            .map(|v| match canonical_unsigned(v[0], v[1..].to_vec()) {
                Canonical::Generator(g) => g,
                _ => unreachable!("parts have n >= 1"),
            })
            .collect();
        add_term(&mut terms, Monomial::from_factors(factors), weight);
    }
    let terms = Arc::new(terms);
    expansion_cache().lock().unwrap().insert(key, terms.clone());
    terms
}

/// `q_{n,m} ↦ (1/n!) Σ_{m = v_1+..+v_n} Π q_{sort v_i}`, collected by multiset.
fn nonsep_image_of_q(g: &Generator) -> Terms {
    let mut terms = Terms::new();
    for parts in vector_multisets_of_size(&g.m, g.n as usize) {
        let weight = inverse_multiplicity_factorial(&parts);
        let factors = parts
            .iter()
            .map(|v| match canonical_unsigned(1, v.clone()) {
                Canonical::Generator(g) => g,
                _ => unreachable!("n = 1 is always a generator"),
            })
            .collect();
        add_term(&mut terms, Monomial::from_factors(factors), weight);
    }
    terms
}
