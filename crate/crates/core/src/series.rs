//! Truncated multivariate formal power series over [`Rational`].
//!
//! A [`MultiSeries`] lives in a [`SeriesRing`]: an ordered list of variable
//! names together with truncation caps (a per-variable maximum exponent and/or
//! a total-degree cap). The set of admissible exponents is downward closed, so
//! its complement is a monomial ideal and every truncated operation is exact on
//! the exponents that survive.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Exponent`], whose order is
//! graded-lexicographic; iteration order is therefore canonical and stable.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, Rational};

/// A dense exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponent(pub Vec<u32>);

impl Exponent {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Truncation caps of a ring. At least one of the two must bound every variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Caps {
    pub per_var: Vec<Option<u32>>,
    pub total: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeriesRing {
    vars: Vec<String>,
    caps: Caps,
}

impl SeriesRing {
    pub fn new(vars: Vec<String>, per_var: Vec<Option<u32>>, total: Option<u32>) -> Result<Self> {
        if vars.len() != per_var.len() {
            return Err(Error::InvalidSeries(format!(
                "{} variables but {} per-variable caps",
                vars.len(),
                per_var.len()
            )));
        }
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() || vars[..i].contains(v) {
                return Err(Error::InvalidSeries(format!("bad or repeated variable name {v:?}")));
            }
        }
        if total.is_none() && per_var.iter().any(Option::is_none) {
            return Err(Error::InvalidSeries(
                "every variable needs a cap (per-variable or total)".into(),
            ));
        }
        Ok(SeriesRing { vars, caps: Caps { per_var, total } })
    }

    /// Ring with one per-variable cap for each named variable.
    pub fn with_caps<S: AsRef<str>>(vars: &[S], caps: &[u32]) -> Result<Self> {
        Self::new(
            vars.iter().map(|v| v.as_ref().to_string()).collect(),
            caps.iter().map(|&c| Some(c)).collect(),
            None,
        )
    }

    pub fn univariate(var: &str, cap: u32) -> Self {
        Self::with_caps(&[var], &[cap]).expect("univariate ring is always valid")
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn admits(&self, exp: &[u32]) -> bool {
        if exp.len() != self.vars.len() {
            return false;
        }
        let per_var_ok = exp
            .iter()
            .zip(&self.caps.per_var)
            .all(|(e, cap)| cap.is_none_or(|c| *e <= c));
        per_var_ok && self.caps.total.is_none_or(|t| exp.iter().sum::<u32>() <= t)
    }

    /// Largest total degree of an admissible exponent.
    pub fn max_degree(&self) -> u32 {
        let per_var_sum = self
            .caps
            .per_var
            .iter()
            .try_fold(0u32, |acc, c| c.map(|c| acc + c));
        match (per_var_sum, self.caps.total) {
            (Some(s), Some(t)) => s.min(t),
            (Some(s), None) => s,
            (None, Some(t)) => t,
            (None, None) => unreachable!("validated at construction"),
        }
    }
}

impl fmt::Display for SeriesRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .vars
            .iter()
            .zip(&self.caps.per_var)
            .map(|(v, c)| match c {
                Some(c) => format!("{v}<={c}"),
                None => v.clone(),
            })
            .collect();
        write!(f, "[{}]", parts.join(", "))?;
        if let Some(t) = self.caps.total {
            write!(f, " total<={t}")?;
        }
        Ok(())
    }
}

type Slice = Vec<(Vec<u32>, Rational)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiSeries {
    ring: SeriesRing,
    terms: BTreeMap<Exponent, Rational>,
}

impl MultiSeries {
    pub fn zero(ring: &SeriesRing) -> Self {
        MultiSeries { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &SeriesRing) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &SeriesRing, value: Rational) -> Self {
        Self::monomial(ring, &vec![0; ring.nvars()], value)
    }

    /// `value * x^exp`, or zero if `exp` is truncated away.
    pub fn monomial(ring: &SeriesRing, exp: &[u32], value: Rational) -> Self {
        let mut s = Self::zero(ring);
        if !value.is_zero() && ring.admits(exp) {
            s.terms.insert(Exponent(exp.to_vec()), value);
        }
        s
    }

    pub fn variable(ring: &SeriesRing, name: &str) -> Result<Self> {
        let idx = ring
            .var_index(name)
            .ok_or_else(|| Error::InvalidSeries(format!("no variable {name:?} in {ring}")))?;
        let mut exp = vec![0; ring.nvars()];
        exp[idx] = 1;
        Ok(Self::monomial(ring, &exp, Rational::one()))
    }

    /// Univariate polynomial `Σ coeffs[i] var^i`, truncated at `cap`.
    pub fn univariate(var: &str, cap: u32, coeffs: &[Rational]) -> Self {
        let ring = SeriesRing::univariate(var, cap);
        Self::from_terms(&ring, coeffs.iter().enumerate().map(|(i, c)| (vec![i as u32], c.clone())))
            .expect("univariate exponents have length one")
    }

    /// Builds a series from raw terms: duplicates are summed, zeros and
    /// truncated exponents dropped. Exponents of the wrong length are an error.
    pub fn from_terms<I>(ring: &SeriesRing, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut acc: BTreeMap<Exponent, Rational> = BTreeMap::new();
        for (exp, c) in terms {
            if exp.len() != ring.nvars() {
                return Err(Error::InvalidSeries(format!(
                    "exponent {exp:?} has wrong length for {ring}"
                )));
            }
            if !ring.admits(&exp) {
                continue;
            }
            *acc.entry(Exponent(exp)).or_insert_with(Rational::zero) += c;
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(MultiSeries { ring: ring.clone(), terms: acc })
    }

    pub fn ring(&self) -> &SeriesRing {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> + '_ {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
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

    pub fn coeff(&self, exp: &[u32]) -> Rational {
        self.terms
            .get(&Exponent(exp.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.ring.nvars()])
    }

    /// Coefficients of a univariate series as a dense vector up to its cap.
    pub fn univariate_coeffs(&self) -> Result<Vec<Rational>> {
        if self.ring.nvars() != 1 {
            return Err(Error::SeriesMismatch(format!("{} is not univariate", self.ring)));
        }
        let cap = self.ring.max_degree();
        Ok((0..=cap).map(|k| self.coeff(&[k])).collect())
    }

    fn check_same_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::SeriesMismatch(format!("{} vs {}", self.ring, other.ring)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let slot = terms.entry(e.clone()).or_insert_with(Rational::zero);
            *slot += c;
            if slot.is_zero() {
                terms.remove(e);
            }
        }
        Ok(MultiSeries { ring: self.ring.clone(), terms })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&int(-1))
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero(&self.ring);
        }
        MultiSeries {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * factor)).collect(),
        }
    }

    /// Truncated product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let a: Slice = self.terms.iter().map(|(e, c)| (e.0.clone(), c.clone())).collect();
        let b: Slice = other.terms.iter().map(|(e, c)| (e.0.clone(), c.clone())).collect();
        let mut acc = HashMap::new();
        mul_into(&self.ring, &mut acc, &a, &b);
        Ok(Self::from_accumulator(&self.ring, acc))
    }

    /// `Σ_{k≥0} f^k / k!`; the constant term must vanish.
    pub fn exp(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if !c0.is_zero() {
            return Err(Error::ConstantTerm { expected: "0/1".into(), found: format_rational(&c0) });
        }
        // With D the Euler operator, D exp(f) = exp(f) D f; on degree-k parts
        // this reads k g_k = Σ_j j f_j g_{k-j}.
        let top = self.ring.max_degree() as usize;
        let f = self.graded_slices(top);
        let weighted: Vec<(usize, Slice)> = f
            .into_iter()
            .enumerate()
            .filter(|(_, s)| !s.is_empty())
            .map(|(j, s)| (j, scale_slice(&s, &int(j as i64))))
            .collect();
        let mut g: Vec<Slice> = Vec::with_capacity(top + 1);
        g.push(vec![(vec![0; self.ring.nvars()], Rational::one())]);
        for k in 1..=top {
            let mut acc = HashMap::new();
            for (j, fj) in weighted.iter().take_while(|(j, _)| *j <= k) {
                mul_into(&self.ring, &mut acc, fj, &g[k - j]);
            }
            let inv_k = Rational::new(1.into(), (k as i64).into());
            g.push(drain_scaled(acc, &inv_k));
        }
        Ok(Self::from_slices(&self.ring, g))
    }

    /// `Σ_{k≥1} (-1)^{k+1} (f-1)^k / k`; the constant term must be 1.
    pub fn log(&self) -> Result<Self> {
        self.require_unit_constant()?;
        // M = D log f satisfies M f = D f, so M_k = k f_k - Σ_{j=1}^{k-1} f_j M_{k-j}.
        let top = self.ring.max_degree() as usize;
        let f = self.graded_slices(top);
        let nonzero: Vec<usize> = (1..=top).filter(|&j| !f[j].is_empty()).collect();
        let mut m: Vec<Slice> = vec![Vec::new(); top + 1];
        let mut out: Vec<Slice> = vec![Vec::new(); top + 1];
        for k in 1..=top {
            let mut acc: HashMap<Vec<u32>, Rational> = HashMap::new();
            let kk = int(k as i64);
            for (e, c) in &f[k] {
                acc.insert(e.clone(), c * &kk);
            }
            let minus_one = int(-1);
            for &j in nonzero.iter().take_while(|&&j| j < k) {
                let neg_fj = scale_slice(&f[j], &minus_one);
                mul_into(&self.ring, &mut acc, &neg_fj, &m[k - j]);
            }
            m[k] = drain_scaled(acc, &Rational::one());
            out[k] = scale_slice(&m[k], &Rational::new(1.into(), (k as i64).into()));
        }
        Ok(Self::from_slices(&self.ring, out))
    }

    /// `exp(r · log f)`; the constant term must be 1.
    pub fn pow(&self, r: &Rational) -> Result<Self> {
        self.require_unit_constant()?;
        if r.is_zero() {
            return Ok(Self::one(&self.ring));
        }
        self.log()?.scale(r).exp()
    }

    fn require_unit_constant(&self) -> Result<()> {
        let c0 = self.constant_term();
        if !c0.is_one() {
            return Err(Error::ConstantTerm { expected: "1/1".into(), found: format_rational(&c0) });
        }
        Ok(())
    }

    /// Maps each variable `x_i` to `images[i].0 * y^{images[i].1}` in `target`.
    ///
    /// Terms landing outside the target caps are dropped. The caller is
    /// responsible for the source caps covering every target exponent.
    pub fn substitute_monomials(
        &self,
        target: &SeriesRing,
        images: &[(Rational, Vec<u32>)],
    ) -> Result<Self> {
        if images.len() != self.ring.nvars() || images.iter().any(|(_, e)| e.len() != target.nvars()) {
            return Err(Error::SeriesMismatch(format!(
                "substitution shape does not match {} -> {}",
                self.ring, target
            )));
        }
        let mut out = Vec::with_capacity(self.terms.len());
        for (exp, c) in &self.terms {
            let mut new_exp = vec![0u32; target.nvars()];
            let mut coeff = c.clone();
            for (power, (factor, image)) in exp.0.iter().zip(images) {
                if *power == 0 {
                    continue;
                }
                coeff *= num_traits::pow(factor.clone(), *power as usize);
                for (slot, e) in new_exp.iter_mut().zip(image) {
                    *slot += e * power;
                }
            }
            out.push((new_exp, coeff));
        }
        Self::from_terms(target, out)
    }

    /// Exact division by the monomial `x^exp`.
    pub fn divide_by_monomial(&self, exp: &[u32]) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e.0.iter().zip(exp).any(|(a, b)| a < b) {
                return Err(Error::InexactDivision(format!("{:?} / {:?}", e.0, exp)));
            }
            let q: Vec<u32> = e.0.iter().zip(exp).map(|(a, b)| a - b).collect();
            terms.insert(Exponent(q), c.clone());
        }
        Ok(MultiSeries { ring: self.ring.clone(), terms })
    }

    /// Re-truncates into a ring with the same variables and tighter caps.
    pub fn truncate_to(&self, ring: &SeriesRing) -> Result<Self> {
        if ring.vars() != self.ring.vars() {
            return Err(Error::SeriesMismatch(format!("{} vs {}", self.ring, ring)));
        }
        Self::from_terms(ring, self.terms.iter().map(|(e, c)| (e.0.clone(), c.clone())))
    }

    fn graded_slices(&self, top: usize) -> Vec<Slice> {
        let mut slices: Vec<Slice> = vec![Vec::new(); top + 1];
        for (e, c) in &self.terms {
            slices[e.degree() as usize].push((e.0.clone(), c.clone()));
        }
        slices
    }

    fn from_slices(ring: &SeriesRing, slices: Vec<Slice>) -> Self {
        let terms = slices
            .into_iter()
            .flatten()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (Exponent(e), c))
            .collect();
        MultiSeries { ring: ring.clone(), terms }
    }

    fn from_accumulator(ring: &SeriesRing, acc: HashMap<Vec<u32>, Rational>) -> Self {
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (Exponent(e), c))
            .collect();
        MultiSeries { ring: ring.clone(), terms }
    }
}

fn scale_slice(slice: &[(Vec<u32>, Rational)], factor: &Rational) -> Slice {
    slice.iter().map(|(e, c)| (e.clone(), c * factor)).collect()
}

fn drain_scaled(acc: HashMap<Vec<u32>, Rational>, factor: &Rational) -> Slice {
    let mut out: Slice = acc
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| (e, c * factor))
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// `acc += a * b`, keeping only exponents admitted by `ring`.
fn mul_into(ring: &SeriesRing, acc: &mut HashMap<Vec<u32>, Rational>, a: &[(Vec<u32>, Rational)], b: &[(Vec<u32>, Rational)]) {
    if a.is_empty() || b.is_empty() {
        return;
    }
    let mut buf = vec![0u32; ring.nvars()];
    for (ea, ca) in a {
        for (eb, cb) in b {
            for (slot, (x, y)) in buf.iter_mut().zip(ea.iter().zip(eb)) {
                *slot = x + y;
            }
            if !ring.admits(&buf) {
                continue;
            }
            let prod = ca * cb;
            match acc.get_mut(&buf) {
                Some(c) => *c += prod,
                None => {
                    acc.insert(buf.clone(), prod);
                }
            }
        }
    }
}

impl fmt::Display for MultiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0/1");
        }
        for (i, (exp, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match (i, c.is_negative()) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                _ => write!(f, " {sign} ")?,
            }
            write!(f, "{}", format_rational(&c.abs()))?;
            for (name, power) in self.ring.vars.iter().zip(&exp.0) {
                match power {
                    0 => {}
                    1 => write!(f, "*{name}")?,
                    p => write!(f, "*{name}^{p}")?,
                }
            }
        }
        Ok(())
    }
}

/// `M(T) = Π_{n≥1} (1 - T^n)^{-n}` truncated at `T^cap`, in the variable `T`.
pub fn macmahon_series(cap: u32) -> MultiSeries {
    macmahon_series_in("T", cap)
}

pub fn macmahon_series_in(var: &str, cap: u32) -> MultiSeries {
    let ring = SeriesRing::univariate(var, cap);
    let mut acc = MultiSeries::one(&ring);
    for n in 1..=cap {
        let factor = MultiSeries::one(&ring)
            .sub(&MultiSeries::monomial(&ring, &[n], Rational::one()))
            .and_then(|f| f.pow(&int(-(n as i64))))
            .and_then(|f| acc.mul(&f));
        acc = factor.expect("unit-constant univariate factors");
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn t(cap: u32) -> SeriesRing {
        SeriesRing::univariate("T", cap)
    }

    fn poly(cap: u32, coeffs: &[i64]) -> MultiSeries {
        MultiSeries::univariate("T", cap, &coeffs.iter().map(|&c| int(c)).collect::<Vec<_>>())
    }

    fn coeffs(s: &MultiSeries) -> Vec<Rational> {
        s.univariate_coeffs().unwrap()
    }

    #[test]
    fn products() {
        assert_eq!(poly(5, &[1, 1]).mul(&poly(5, &[1, -1])).unwrap(), poly(5, &[1, 0, -1]));
        let f = poly(4, &[2, 0, 3, 1]);
        assert_eq!(f.mul(&MultiSeries::one(&t(4))).unwrap(), f);
        assert_eq!(poly(2, &[1, 1, 1]).mul(&poly(2, &[1, 1])).unwrap(), poly(2, &[1, 2, 2]));
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let err = poly(3, &[1, 1]).mul(&poly(4, &[1, 1])).unwrap_err();
        assert!(matches!(err, Error::SeriesMismatch(_)));
        let u = MultiSeries::univariate("U", 3, &[int(1)]);
        assert!(poly(3, &[1]).add(&u).is_err());
    }

    #[test]
    fn exponentials() {
        let e = poly(3, &[0, 1]).exp().unwrap();
        assert_eq!(coeffs(&e), vec![int(1), int(1), rat(1, 2), rat(1, 6)]);
        assert_eq!(MultiSeries::zero(&t(3)).exp().unwrap(), MultiSeries::one(&t(3)));
        let e = poly(3, &[0, 1, 1]).exp().unwrap();
        assert_eq!(coeffs(&e), vec![int(1), int(1), rat(3, 2), rat(7, 6)]);
        assert!(matches!(poly(3, &[1, 1]).exp(), Err(Error::ConstantTerm { .. })));
    }

    #[test]
    fn logarithms() {
        let l = poly(3, &[1, 1]).log().unwrap();
        assert_eq!(coeffs(&l), vec![int(0), int(1), rat(-1, 2), rat(1, 3)]);
        for cap in 0..6 {
            let x = poly(cap, &[0, 1]);
            assert_eq!(x.exp().unwrap().log().unwrap(), x);
        }
        let l = macmahon_series(2).log().unwrap();
        assert_eq!(coeffs(&l), vec![int(0), int(1), rat(5, 2)]);
        assert!(matches!(poly(3, &[2, 1]).log(), Err(Error::ConstantTerm { .. })));
    }

    #[test]
    fn powers() {
        let p = poly(3, &[1, -1]).pow(&int(-2)).unwrap();
        assert_eq!(coeffs(&p), vec![int(1), int(2), int(3), int(4)]);
        assert_eq!(poly(3, &[1, 5, 7]).pow(&int(0)).unwrap(), MultiSeries::one(&t(3)));
        let m = macmahon_series(1)
            .substitute_monomials(&t(1), &[(int(-1), vec![1])])
            .unwrap();
        assert_eq!(coeffs(&m.pow(&int(-20)).unwrap()), vec![int(1), int(20)]);
        let sq = poly(4, &[1, 1]).pow(&rat(1, 2)).unwrap();
        assert_eq!(sq.mul(&sq).unwrap(), poly(4, &[1, 1]));
        assert!(poly(3, &[0, 1]).pow(&int(2)).is_err());
    }

    #[test]
    fn macmahon_small_caps() {
        assert_eq!(coeffs(&macmahon_series(4)), [1, 1, 3, 6, 13].map(int).to_vec());
        assert_eq!(macmahon_series(0), MultiSeries::one(&t(0)));
        assert_eq!(macmahon_series(6).coeff(&[5]), int(24));
    }

    #[test]
    fn total_degree_caps() {
        let ring = SeriesRing::new(vec!["x".into(), "y".into()], vec![None, None], Some(2)).unwrap();
        let x = MultiSeries::variable(&ring, "x").unwrap();
        let y = MultiSeries::variable(&ring, "y").unwrap();
        let s = x.add(&y).unwrap();
        let sq = s.mul(&s).unwrap().mul(&s).unwrap();
        assert!(sq.is_zero());
        let e = s.exp().unwrap();
        assert_eq!(e.coeff(&[1, 1]), int(1));
        assert_eq!(e.len(), 6);
        assert!(SeriesRing::new(vec!["x".into()], vec![None], None).is_err());
    }

    #[test]
    fn bivariate_exp_log() {
        let ring = SeriesRing::with_caps(&["T", "U"], &[3, 2]).unwrap();
        let tt = MultiSeries::variable(&ring, "T").unwrap();
        let u = MultiSeries::variable(&ring, "U").unwrap();
        let f = tt.mul(&MultiSeries::one(&ring).add(&u).unwrap()).unwrap();
        let g = f.exp().unwrap();
        // coefficient of T^2 U^1 in exp(T(1+U)) is (1/2)*2 = 1
        assert_eq!(g.coeff(&[2, 1]), int(1));
        assert_eq!(g.log().unwrap(), f);
    }

    #[test]
    fn division_and_substitution() {
        let ring = SeriesRing::with_caps(&["T", "U"], &[2, 3]).unwrap();
        let s = MultiSeries::from_terms(&ring, vec![(vec![1, 1], int(2)), (vec![2, 2], int(3))]).unwrap();
        let q = s.divide_by_monomial(&[0, 1]).unwrap();
        assert_eq!(q.coeff(&[1, 0]), int(2));
        assert!(matches!(s.divide_by_monomial(&[0, 2]), Err(Error::InexactDivision(_))));
        let src = poly(2, &[1, 1, 1]);
        let img = src.substitute_monomials(&ring, &[(int(-1), vec![1, 1])]).unwrap();
        assert_eq!(img.coeff(&[2, 2]), int(1));
        assert_eq!(img.coeff(&[1, 1]), int(-1));
    }

    #[test]
    fn display_is_canonical() {
        let ring = SeriesRing::with_caps(&["T", "U"], &[2, 2]).unwrap();
        let s = MultiSeries::from_terms(
            &ring,
            vec![(vec![0, 1], rat(-1, 2)), (vec![0, 0], int(1)), (vec![2, 0], int(3))],
        )
        .unwrap();
        assert_eq!(s.to_string(), "1/1 - 1/2*U + 3/1*T^2");
    }
}
