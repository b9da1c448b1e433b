//! Enumerative theories: linear functionals on the Hopf algebras given by
//! their values on generators.
//!
//! A multiplicative theory sends products to products; a primitive theory
//! vanishes on the unit and on every product of two or more generators. The
//! two kinds correspond under `exp` and `log` ([`theory_exp`], [`theory_log`]).
//!
//! Values are only defined inside the declared [`TheoryCaps`]; asking for a
//! generator outside them is an error. Formula-backed theories fill a cache
//! lazily.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::combinatorics::boxed_vectors;
use crate::error::{Error, Result};
use crate::hopf::{Basis, Generator, HopfElement, Monomial, Variant};
use crate::rational::{binomial, factorial, int, pow_rational, Rational};
use crate::series::{macmahon_series_in, MultiSeries, SeriesRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TheoryKind {
    Multiplicative,
    Primitive,
}

/// Generators `q_{n,m}` with `n <= n` and every `m_i <= m` are in range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TheoryCaps {
    pub n: u32,
    pub m: u32,
}

impl TheoryCaps {
    pub fn new(n: u32, m: u32) -> Self {
        TheoryCaps { n, m }
    }

    /// Caps sufficient for the vertical series up to `T^{n_max}` in dimension `d`.
    pub fn for_vertical(d: usize, n_max: u32) -> Self {
        TheoryCaps { n: n_max, m: (d as u32 + n_max).saturating_sub(1) }
    }

    pub fn contains(&self, g: &Generator) -> bool {
        g.n() <= self.n && g.m().iter().all(|&x| x <= self.m)
    }
}

impl fmt::Display for TheoryCaps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n<={}, m<={}", self.n, self.m)
    }
}

pub type ValueFn = Arc<dyn Fn(&Generator) -> Result<Rational> + Send + Sync>;

#[derive(Clone)]
enum Source {
    Formula(ValueFn),
    /// Missing keys inside the caps are zero.
    Table(Arc<BTreeMap<Generator, Rational>>),
}

struct Inner {
    label: String,
    d: usize,
    variant: Variant,
    kind: TheoryKind,
    caps: TheoryCaps,
    source: Source,
    cache: RwLock<HashMap<Generator, Rational>>,
    primitive: OnceLock<Arc<HashMap<Generator, Rational>>>,
}

#[derive(Clone)]
pub struct Theory {
    inner: Arc<Inner>,
}

impl fmt::Debug for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Theory")
            .field("label", &self.inner.label)
            .field("d", &self.inner.d)
            .field("variant", &self.inner.variant)
            .field("kind", &self.inner.kind)
            .field("caps", &self.inner.caps)
            .finish()
    }
}

impl Theory {
    fn build(label: String, d: usize, variant: Variant, kind: TheoryKind, caps: TheoryCaps, source: Source) -> Self {
        Theory {
            inner: Arc::new(Inner {
                label,
                d,
                variant,
                kind,
                caps,
                source,
                cache: RwLock::new(HashMap::new()),
                primitive: OnceLock::new(),
            }),
        }
    }

    /// A theory whose generator values come from `formula`.
    pub fn from_formula(
        label: impl Into<String>,
        d: usize,
        variant: Variant,
        kind: TheoryKind,
        caps: TheoryCaps,
        formula: ValueFn,
    ) -> Self {
        Self::build(label.into(), d, variant, kind, caps, Source::Formula(formula))
    }

    /// A theory given by an explicit table; generators missing from the table
    /// but inside the caps take the value zero.
    pub fn from_table(
        label: impl Into<String>,
        d: usize,
        variant: Variant,
        kind: TheoryKind,
        caps: TheoryCaps,
        table: BTreeMap<Generator, Rational>,
    ) -> Result<Self> {
        let probe = Self::build(String::new(), d, variant, kind, caps, Source::Table(Arc::default()));
        for g in table.keys() {
            probe.check_generator(g)?;
        }
        let table = table.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Ok(Self::build(label.into(), d, variant, kind, caps, Source::Table(Arc::new(table))))
    }

    pub fn label(&self) -> &str {
        &self.inner.label
    }

    pub fn dim(&self) -> usize {
        self.inner.d
    }

    pub fn variant(&self) -> Variant {
        self.inner.variant
    }

    pub fn kind(&self) -> TheoryKind {
        self.inner.kind
    }

    pub fn caps(&self) -> TheoryCaps {
        self.inner.caps
    }

    fn check_generator(&self, g: &Generator) -> Result<()> {
        let shape_ok = g.m().len() == self.inner.d && (self.inner.variant == Variant::Separated || g.n() == 1);
        if !shape_ok {
            return Err(Error::ContextMismatch(format!(
                "generator {g:?} for a theory with d={} {:?}",
                self.inner.d, self.inner.variant
            )));
        }
        if !self.inner.caps.contains(g) {
            return Err(Error::OutsideCaps {
                generator: format!("({}; {:?})", g.n(), g.m()),
                caps: self.inner.caps.to_string(),
            });
        }
        Ok(())
    }

    /// The value on the generator `q_g`. For a primitive theory this is also
    /// the value on `p_g`.
    pub fn value(&self, g: &Generator) -> Result<Rational> {
        self.check_generator(g)?;
        match &self.inner.source {
            Source::Table(table) => Ok(table.get(g).cloned().unwrap_or_else(Rational::zero)),
            Source::Formula(f) => {
                if let Some(v) = self.inner.cache.read().unwrap().get(g) {
                    return Ok(v.clone());
                }
                let v = f(g)?;
                self.inner.cache.write().unwrap().insert(g.clone(), v.clone());
                Ok(v)
            }
        }
    }

    /// The value on the primitive `p_g`.
    pub fn primitive_value(&self, g: &Generator) -> Result<Rational> {
        self.check_generator(g)?;
        if self.inner.kind == TheoryKind::Primitive || self.inner.variant == Variant::NonSeparated {
            return self.value(g);
        }
        Ok(self.primitive_table()?.get(g).cloned().unwrap_or_else(Rational::zero))
    }

    /// Primitive values of a separated multiplicative theory, read off
    /// `log Σ ⟨e, q_{n,m}⟩ T^n U^m`.
    fn primitive_table(&self) -> Result<Arc<HashMap<Generator, Rational>>> {
        if let Some(t) = self.inner.primitive.get() {
            return Ok(t.clone());
        }
        let computed = Arc::new(series_table(&self.generator_series()?.log()?));
        Ok(self.inner.primitive.get_or_init(|| computed).clone())
    }

    /// `⟨e, x⟩`, extended linearly. Elements in the `p` basis are paired
    /// through the primitive values.
    pub fn eval(&self, x: &HopfElement) -> Result<Rational> {
        let ctx = x.context();
        if ctx.d != self.inner.d || ctx.variant != self.inner.variant {
            return Err(Error::ContextMismatch(format!(
                "theory {} (d={}) paired with element in {ctx}",
                self.inner.label, self.inner.d
            )));
        }
        let mut total = Rational::zero();
        for (mono, c) in x.terms() {
            total += c * self.eval_monomial(mono, ctx.basis)?;
        }
        Ok(total)
    }

    fn eval_monomial(&self, mono: &Monomial, basis: Basis) -> Result<Rational> {
        match self.inner.kind {
            TheoryKind::Primitive => match mono.factors() {
                [g] => self.value(g),
                _ => Ok(Rational::zero()),
            },
            TheoryKind::Multiplicative => {
                let mut acc = Rational::one();
                for (g, k) in mono.powers() {
                    let v = match basis {
                        Basis::Q => self.value(g)?,
                        Basis::P => self.primitive_value(g)?,
                    };
                    acc *= pow_rational(&v, k as i64);
                    if acc.is_zero() {
                        break;
                    }
                }
                Ok(acc)
            }
        }
    }

    /// The ring `Q[[T, U_1, .., U_d]]` truncated at the caps.
    pub fn series_ring(&self) -> SeriesRing {
        generator_ring(self.inner.d, self.inner.caps)
    }

    /// `Σ ⟨e, q_{n,m}⟩ T^n U^m` over `n >= 1` and ordered `m` inside the caps,
    /// plus `1` for a multiplicative theory.
    pub fn generator_series(&self) -> Result<MultiSeries> {
        self.generator_series_capped(self.inner.caps)
    }

    /// [`Theory::generator_series`] over smaller caps.
    pub fn generator_series_capped(&self, caps: TheoryCaps) -> Result<MultiSeries> {
        let d = self.inner.d;
        if caps.n > self.inner.caps.n || caps.m > self.inner.caps.m {
            return Err(Error::OutsideCaps { generator: format!("caps {caps}"), caps: self.inner.caps.to_string() });
        }
        let ring = generator_ring(d, caps);
        let n_top = if self.inner.variant == Variant::Separated { caps.n } else { caps.n.min(1) };
        let mut sorted_values: HashMap<Generator, Rational> = HashMap::new();
        let mut terms = Vec::new();
        if self.inner.kind == TheoryKind::Multiplicative {
            terms.push((vec![0; d + 1], Rational::one()));
        }
        for n in 1..=n_top {
            for m in boxed_vectors(&vec![caps.m; d]) {
                let g = Generator::new(n, m.clone())?;
                let v = match sorted_values.get(&g) {
                    Some(v) => v.clone(),
                    None => {
                        let v = self.value(&g)?;
                        sorted_values.insert(g, v.clone());
                        v
                    }
                };
                if v.is_zero() {
                    continue;
                }
                let mut exp = Vec::with_capacity(d + 1);
                exp.push(n);
                exp.extend(m);
                terms.push((exp, v));
            }
        }
        MultiSeries::from_terms(&ring, terms)
    }

    /// `Σ ⟨e, p_{n,m}⟩ T^n U^m` over the caps.
    pub fn primitive_series(&self) -> Result<MultiSeries> {
        match (self.inner.kind, self.inner.variant) {
            (TheoryKind::Primitive, _) => self.generator_series(),
            (TheoryKind::Multiplicative, Variant::NonSeparated) => {
                let g = self.generator_series()?;
                g.sub(&MultiSeries::one(g.ring()))
            }
            (TheoryKind::Multiplicative, Variant::Separated) => {
                table_series(&self.series_ring(), self.inner.d, self.inner.caps, &*self.primitive_table()?)
            }
        }
    }

    /// Seeds the primitive values of a multiplicative theory.
    fn with_primitive_table(self, table: HashMap<Generator, Rational>) -> Self {
        let _ = self.inner.primitive.set(Arc::new(table));
        self
    }
}

fn generator_ring(d: usize, caps: TheoryCaps) -> SeriesRing {
    let mut vars = vec!["T".to_string()];
    vars.extend((1..=d).map(|i| format!("U{i}")));
    let mut cap_list = vec![caps.n];
    cap_list.extend(std::iter::repeat_n(caps.m, d));
    SeriesRing::with_caps(&vars, &cap_list).expect("distinct variable names")
}

/// Reads `(n, sorted m)` coefficients with `n >= 1` off a generator-indexed series.
fn series_table(s: &MultiSeries) -> HashMap<Generator, Rational> {
    s.terms()
        .filter(|(e, _)| e[0] >= 1 && e[1..].windows(2).all(|w| w[0] >= w[1]))
        .map(|(e, c)| (Generator::new(e[0], e[1..].to_vec()).expect("n >= 1"), c.clone()))
        .collect()
}

/// Spreads a table keyed by sorted `m` over all orderings.
fn table_series(ring: &SeriesRing, d: usize, caps: TheoryCaps, table: &HashMap<Generator, Rational>) -> Result<MultiSeries> {
    let mut terms = Vec::new();
    for n in 1..=caps.n {
        for m in boxed_vectors(&vec![caps.m; d]) {
            let g = Generator::new(n, m.clone())?;
            if let Some(v) = table.get(&g) {
                let mut exp = vec![n];
                exp.extend(m);
                terms.push((exp, v.clone()));
            }
        }
    }
    MultiSeries::from_terms(ring, terms)
}

/// `⟨e, x⟩`.
pub fn eval_theory(e: &Theory, x: &HopfElement) -> Result<Rational> {
    e.eval(x)
}

/// The primitive theory `log e`, recomputed from the generator values.
pub fn theory_log(e: &Theory) -> Result<Theory> {
    if e.kind() != TheoryKind::Multiplicative {
        return Err(Error::InvalidTheory(format!("log of non-multiplicative theory {}", e.label())));
    }
    let label = format!("log({})", e.label());
    let table: BTreeMap<Generator, Rational> = match e.variant() {
        Variant::NonSeparated => all_generators(e)?
            .into_iter()
            .map(|g| e.value(&g).map(|v| (g, v)))
            .collect::<Result<_>>()?,
        Variant::Separated => series_table(&e.generator_series()?.log()?).into_iter().collect(),
    };
    Theory::from_table(label, e.dim(), e.variant(), TheoryKind::Primitive, e.caps(), table)
}

/// The multiplicative theory `exp e` of a primitive theory.
pub fn theory_exp(e: &Theory) -> Result<Theory> {
    if e.kind() != TheoryKind::Primitive {
        return Err(Error::InvalidTheory(format!("exp of non-primitive theory {}", e.label())));
    }
    let label = format!("exp({})", e.label());
    match e.variant() {
        Variant::NonSeparated => {
            let table = all_generators(e)?
                .into_iter()
                .map(|g| e.value(&g).map(|v| (g, v)))
                .collect::<Result<_>>()?;
            Theory::from_table(label, e.dim(), e.variant(), TheoryKind::Multiplicative, e.caps(), table)
        }
        Variant::Separated => {
            let prim = e.generator_series()?;
            let values = series_table(&prim.exp()?).into_iter().collect();
            let t = Theory::from_table(label, e.dim(), e.variant(), TheoryKind::Multiplicative, e.caps(), values)?;
            Ok(t.with_primitive_table(series_table(&prim)))
        }
    }
}

fn all_generators(e: &Theory) -> Result<Vec<Generator>> {
    let caps = e.caps();
    let n_top = if e.variant() == Variant::Separated { caps.n } else { caps.n.min(1) };
    let mut out = Vec::new();
    for n in 1..=n_top {
        for m in boxed_vectors(&vec![caps.m; e.dim()]) {
            if m.windows(2).all(|w| w[0] >= w[1]) {
                out.push(Generator::new(n, m)?);
            }
        }
    }
    Ok(out)
}

fn inverse_factorial(n: u32) -> Rational {
    Rational::new(One::one(), factorial(n))
}

/// `c^k`: `⟨c^k, q_{n,m}⟩ = (1/n!) Π binom(kn, m_i)`.
pub fn chern_power(d: usize, k: i64, variant: Variant, caps: TheoryCaps) -> Theory {
    let formula: ValueFn = Arc::new(move |g: &Generator| {
        let n = g.n();
        let prod = g
            .m()
            .iter()
            .fold(Rational::one(), |acc, &mi| acc * binomial(k * n as i64, mi));
        Ok(prod * inverse_factorial(n))
    });
    Theory::from_formula(format!("c^{k}"), d, variant, TheoryKind::Multiplicative, caps, formula)
}

/// `e^k`: `⟨e^k, q_{n,m}⟩ = (1/n!) Π δ_{m_i, kn}`.
pub fn euler_power(d: usize, k: u32, variant: Variant, caps: TheoryCaps) -> Theory {
    let formula: ValueFn = Arc::new(move |g: &Generator| {
        let n = g.n();
        if g.m().iter().all(|&mi| mi == k * n) {
            Ok(inverse_factorial(n))
        } else {
            Ok(Rational::zero())
        }
    });
    Theory::from_formula(format!("e^{k}"), d, variant, TheoryKind::Multiplicative, caps, formula)
}

/// Coefficients of a univariate series, read as a polynomial: entries past
/// its cap are zero.
fn polynomial_coeffs(p: &MultiSeries) -> Result<Vec<Rational>> {
    p.univariate_coeffs()
}

/// The theory of the multiplicative class `P`:
/// `⟨e_P, q_{n,m}⟩ = (1/n!) Π [x^{m_i}] P(x)^n`.
pub fn mult_class_theory(p: &MultiSeries, d: usize, variant: Variant, caps: TheoryCaps) -> Result<Theory> {
    let c0 = p.constant_term();
    if !c0.is_one() {
        return Err(Error::ConstantTerm { expected: "1/1".into(), found: crate::rational::format_rational(&c0) });
    }
    let poly = MultiSeries::univariate("x", caps.m, &polynomial_coeffs(p)?);
    let n_top = if variant == Variant::Separated { caps.n } else { caps.n.min(1) };
    let mut powers = vec![MultiSeries::one(poly.ring())];
    for _ in 0..n_top {
        let next = powers.last().unwrap().mul(&poly)?;
        powers.push(next);
    }
    let powers = Arc::new(powers);
    let formula: ValueFn = Arc::new(move |g: &Generator| {
        let pn = &powers[g.n() as usize];
        let prod = g.m().iter().fold(Rational::one(), |acc, &mi| acc * pn.coeff(&[mi]));
        Ok(prod * inverse_factorial(g.n()))
    });
    Ok(Theory::from_formula("mult_class", d, variant, TheoryKind::Multiplicative, caps, formula))
}

fn require_curve(d: usize, what: &str) -> Result<()> {
    if d != 1 {
        return Err(Error::InvalidTheory(format!("{what} is only defined for d=1, got d={d}")));
    }
    Ok(())
}

/// `c̄^k` on curves: `(1/n!) [T^m] Π_{i=1}^{n} (1 + iT)^k`.
pub fn coarse_chern(d: usize, k: i64, caps: TheoryCaps) -> Result<Theory> {
    require_curve(d, "coarse c^k")?;
    let ring = SeriesRing::univariate("T", caps.m);
    let mut products = vec![MultiSeries::one(&ring)];
    for i in 1..=caps.n {
        let factor = MultiSeries::univariate("T", caps.m, &[int(1), int(i as i64)]).pow(&int(k))?;
        let next = products.last().unwrap().mul(&factor)?;
        products.push(next);
    }
    let products = Arc::new(products);
    let formula: ValueFn = Arc::new(move |g: &Generator| Ok(products[g.n() as usize].coeff(g.m()) * inverse_factorial(g.n())));
    Ok(Theory::from_formula(format!("coarse-c^{k}"), 1, Variant::Separated, TheoryKind::Multiplicative, caps, formula))
}

/// `ē^k` on curves: `(n!)^{k-1} δ_{m, nk}`.
pub fn coarse_euler(d: usize, k: i64, caps: TheoryCaps) -> Result<Theory> {
    require_curve(d, "coarse e^k")?;
    let formula: ValueFn = Arc::new(move |g: &Generator| {
        let n = g.n();
        if g.m()[0] as i64 == n as i64 * k {
            Ok(pow_rational(&Rational::from_integer(factorial(n)), k - 1))
        } else {
            Ok(Rational::zero())
        }
    });
    Ok(Theory::from_formula(format!("coarse-e^{k}"), 1, Variant::Separated, TheoryKind::Multiplicative, caps, formula))
}

/// The inertial theory of `P`, determined by
/// `⟨P̲, p_{n,m}⟩ = (1/n) Π_i [U^{m_i - n + 1}] P(U)`, zero if some `m_i < n - 1`.
pub fn inertial_theory(p: &MultiSeries, d: usize, caps: TheoryCaps) -> Result<Theory> {
    let c0 = p.constant_term();
    if !c0.is_one() {
        return Err(Error::ConstantTerm { expected: "1/1".into(), found: crate::rational::format_rational(&c0) });
    }
    let coeffs = Arc::new(polynomial_coeffs(p)?);
    let formula: ValueFn = Arc::new(move |g: &Generator| {
        let shift = g.n() - 1;
        let mut acc = Rational::new(One::one(), g.n().into());
        for &mi in g.m() {
            if mi < shift {
                return Ok(Rational::zero());
            }
            match coeffs.get((mi - shift) as usize) {
                Some(c) => acc *= c,
                None => return Ok(Rational::zero()),
            }
        }
        Ok(acc)
    });
    let primitive = Theory::from_formula("inertial-primitive", d, Variant::Separated, TheoryKind::Primitive, caps, formula);
    let t = theory_exp(&primitive)?;
    Ok(relabel(t, "inertial"))
}

fn relabel(t: Theory, label: &str) -> Theory {
    let inner = &t.inner;
    let source = inner.source.clone();
    let fresh = Theory::build(label.to_string(), inner.d, inner.variant, inner.kind, inner.caps, source);
    if let Some(p) = inner.primitive.get() {
        let _ = fresh.inner.primitive.set(p.clone());
    }
    fresh
}

/// The primitive series `-(U1+U2)(U2+U3)(U3+U1)/(U1U2U3) · log M(-U1U2U3 T)`
/// of the degree-zero vertex, truncated at the caps.
pub fn dt_primitive_series(caps: TheoryCaps) -> Result<MultiSeries> {
    let ring = generator_ring(3, caps);
    let wide = generator_ring(3, TheoryCaps { n: caps.n, m: caps.m + 1 });
    let log_m = macmahon_series_in("x", caps.n).log()?;
    let substituted = log_m.substitute_monomials(&wide, &[(int(-1), vec![1, 1, 1, 1])])?;
    // Each T^k coefficient carries s^k with s = U1U2U3, so this is exact.
    let divided = substituted.divide_by_monomial(&[0, 1, 1, 1])?.truncate_to(&ring)?;
    let u = |i: usize| {
        let mut e = vec![0; 4];
        e[i] = 1;
        MultiSeries::monomial(&ring, &e, Rational::one())
    };
    let e_u = u(1)
        .add(&u(2))?
        .mul(&u(2).add(&u(3))?)?
        .mul(&u(3).add(&u(1))?)?;
    Ok(divided.mul(&e_u)?.neg())
}

/// The degree-zero Donaldson–Thomas vertex theory on 3-folds.
pub fn dt_vertex_theory(caps: TheoryCaps) -> Result<Theory> {
    let prim = dt_primitive_series(caps)?;
    let table: BTreeMap<Generator, Rational> = series_table(&prim).into_iter().collect();
    let primitive = Theory::from_table("dt-primitive", 3, Variant::Separated, TheoryKind::Primitive, caps, table)?;
    Ok(relabel(theory_exp(&primitive)?, "dt"))
}
