//! Partitions, vector splittings and multiset decompositions, the monomial to
//! elementary symmetric-function transition, and Chern-number input.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{binomial, factorial, Rational};

/// An integer partition stored without zero parts, largest part first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The parts padded with trailing zeros to length `d`.
    pub fn padded(&self, d: usize) -> Result<Vec<u32>> {
        if self.0.len() > d {
            return Err(Error::InvalidIndex(format!("{self} has more than {d} parts")));
        }
        let mut v = self.0.clone();
        v.resize(d, 0);
        Ok(v)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `k` into at most `max_parts` parts, in reverse
/// lexicographic order.
pub fn partitions_of(k: u32, max_parts: usize) -> Vec<Partition> {
    fn go(rest: u32, largest: u32, slots: usize, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=largest.min(rest)).rev() {
            prefix.push(p);
            go(rest - p, p, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(k, k, max_parts, &mut Vec::new(), &mut out);
    out
}

/// Every ordered pair `(a, b)` with `a + b = v` entrywise, in lex order of `a`.
pub fn vector_splittings(v: &[u32]) -> Vec<(Vec<u32>, Vec<u32>)> {
    boxed_vectors(v)
        .into_iter()
        .map(|a| {
            let b = v.iter().zip(&a).map(|(x, y)| x - y).collect();
            (a, b)
        })
        .collect()
}

/// All vectors `a` with `0 <= a <= bound` entrywise, in lex order.
pub fn boxed_vectors(bound: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::with_capacity(bound.len())];
    for &b in bound {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=b).map(move |x| {
                    let mut next = prefix.clone();
                    next.push(x);
                    next
                })
            })
            .collect();
    }
    out
}

/// Number of distinct orderings of the entries of `v`.
pub fn rearrangement_count(v: &[u32]) -> BigInt {
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    for &x in v {
        *counts.entry(x).or_default() += 1;
    }
    counts
        .values()
        .fold(factorial(v.len() as u32), |acc, &c| acc / factorial(c))
}

/// `1 / Π a_j!` where the `a_j` are the multiplicities of the distinct parts.
pub fn inverse_multiplicity_factorial<T: Ord>(parts: &[T]) -> Rational {
    let mut counts: BTreeMap<&T, u32> = BTreeMap::new();
    for p in parts {
        *counts.entry(p).or_default() += 1;
    }
    let denom = counts
        .values()
        .fold(BigInt::one(), |acc, &c| acc * factorial(c));
    Rational::new(BigInt::one(), denom)
}

/// All multisets of vectors accepted by `part_ok` that sum to `v`. Each
/// multiset is listed once, with its parts in non-increasing lex order.
/// The zero vector is never a part.
pub fn vector_multiset_partitions(v: &[u32], part_ok: &dyn Fn(&[u32]) -> bool) -> Vec<Vec<Vec<u32>>> {
    fn go(
        rest: &[u32],
        bound: Option<&[u32]>,
        part_ok: &dyn Fn(&[u32]) -> bool,
        prefix: &mut Vec<Vec<u32>>,
        out: &mut Vec<Vec<Vec<u32>>>,
    ) {
        if rest.iter().all(|&x| x == 0) {
            out.push(prefix.clone());
            return;
        }
        for part in boxed_vectors(rest).into_iter().rev() {
            if part.iter().all(|&x| x == 0) || !part_ok(&part) {
                continue;
            }
            if bound.is_some_and(|b| part.as_slice() > b) {
                continue;
            }
            let next: Vec<u32> = rest.iter().zip(&part).map(|(r, p)| r - p).collect();
            prefix.push(part);
            let last = prefix.last().cloned().unwrap();
            go(&next, Some(&last), part_ok, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(v, None, part_ok, &mut Vec::new(), &mut out);
    out
}

/// All multisets of exactly `k` vectors (zero vectors allowed) summing to `v`,
/// parts in non-increasing lex order.
pub fn vector_multisets_of_size(v: &[u32], k: usize) -> Vec<Vec<Vec<u32>>> {
    fn go(rest: &[u32], slots: usize, bound: Option<&[u32]>, prefix: &mut Vec<Vec<u32>>, out: &mut Vec<Vec<Vec<u32>>>) {
        if slots == 0 {
            if rest.iter().all(|&x| x == 0) {
                out.push(prefix.clone());
            }
            return;
        }
        for part in boxed_vectors(rest).into_iter().rev() {
            if bound.is_some_and(|b| part.as_slice() > b) {
                continue;
            }
            let next: Vec<u32> = rest.iter().zip(&part).map(|(r, p)| r - p).collect();
            prefix.push(part);
            let last = prefix.last().cloned().unwrap();
            go(&next, slots - 1, Some(&last), prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(v, k, None, &mut Vec::new(), &mut out);
    out
}

/// A polynomial in `e_1, .., e_d`, keyed by the partition `μ` of `e_μ`.
pub type ElementaryPoly = BTreeMap<Partition, Rational>;

type Poly = HashMap<Vec<u32>, Rational>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `e_k(x_1, .., x_d)` as an explicit polynomial.
fn elementary_poly(k: u32, d: usize) -> Poly {
    boxed_vectors(&vec![1; d])
        .into_iter()
        .filter(|e| e.iter().sum::<u32>() == k)
        .map(|e| (e, Rational::one()))
        .collect()
}

/// Coefficients of `e_μ(x_1, .., x_d)` in the monomial basis, keyed by `ν`.
pub fn elementary_in_monomials(mu: &Partition, d: usize) -> BTreeMap<Partition, Rational> {
    let mut prod: Poly = HashMap::from([(vec![0; d], Rational::one())]);
    for &k in mu.parts() {
        prod = poly_mul(&prod, &elementary_poly(k, d));
    }
    prod.into_iter()
        .filter(|(e, _)| e.windows(2).all(|w| w[0] >= w[1]))
        .map(|(e, c)| (Partition::new(e), c))
        .collect()
}

type TransitionTable = BTreeMap<Partition, ElementaryPoly>;

type TransitionCache = Mutex<HashMap<(u32, usize), std::sync::Arc<TransitionTable>>>;

fn transition_cache() -> &'static TransitionCache {
    static CACHE: OnceLock<TransitionCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Inverts the `e → m` matrix in degree `k` for `d` variables.
fn transition_table(k: u32, d: usize) -> std::sync::Arc<TransitionTable> {
    if let Some(t) = transition_cache().lock().unwrap().get(&(k, d)) {
        return t.clone();
    }
    // Row basis: e_μ with μ_1 <= d. Column basis: m_ν with at most d parts.
    let rows: Vec<Partition> = partitions_of(k, usize::MAX)
        .into_iter()
        .filter(|mu| mu.parts().first().is_none_or(|&p| p as usize <= d))
        .collect();
    let cols: Vec<Partition> = partitions_of(k, d);
    let n = cols.len();
    debug_assert_eq!(rows.len(), n);
    // Solve Mᵀ a = δ_ν for every ν at once: augmented [Mᵀ | I].
    let mut mat: Vec<Vec<Rational>> = vec![vec![Rational::zero(); 2 * n]; n];
    for (i, mu) in rows.iter().enumerate() {
        let expansion = elementary_in_monomials(mu, d);
        for (j, nu) in cols.iter().enumerate() {
            if let Some(c) = expansion.get(nu) {
                mat[j][i] = c.clone();
            }
        }
    }
    for (j, row) in mat.iter_mut().enumerate() {
        row[n + j] = Rational::one();
    }
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !mat[r][col].is_zero())
            .expect("the e → m transition matrix is invertible");
        mat.swap(col, pivot);
        let inv = mat[col][col].recip();
        for x in mat[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !mat[r][col].is_zero() {
                let factor = mat[r][col].clone();
                let pivot_row = mat[col].clone();
                for (x, p) in mat[r].iter_mut().zip(pivot_row) {
                    *x -= &factor * p;
                }
            }
        }
    }
    let mut table = TransitionTable::new();
    for (j, nu) in cols.iter().enumerate() {
        let poly: ElementaryPoly = rows
            .iter()
            .enumerate()
            .filter(|(i, _)| !mat[*i][n + j].is_zero())
            .map(|(i, mu)| (mu.clone(), mat[i][n + j].clone()))
            .collect();
        table.insert(nu.clone(), poly);
    }
    let table = std::sync::Arc::new(table);
    transition_cache().lock().unwrap().insert((k, d), table.clone());
    table
}

/// Expansion of `m_λ(x_1, .., x_d)` in the elementary symmetric polynomials.
pub fn monomial_to_elementary(lambda: &Partition, d: usize) -> Result<ElementaryPoly> {
    if lambda.len() > d {
        return Err(Error::InvalidIndex(format!("{lambda} has more than {d} parts")));
    }
    let table = transition_table(lambda.size(), d);
    Ok(table[lambda].clone())
}

/// The numbers `⟨m_λ(T_X), [X]⟩` of a proper `d`-fold, one per partition of `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernData {
    d: usize,
    monomial_numbers: BTreeMap<Partition, Rational>,
}

impl ChernData {
    /// Direct ingestion in the monomial basis. The keys must be exactly the
    /// partitions of `d`.
    pub fn from_monomials(d: usize, numbers: BTreeMap<Partition, Rational>) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidChernData("dimension must be positive".into()));
        }
        let expected = partitions_of(d as u32, d);
        for lambda in &expected {
            if !numbers.contains_key(lambda) {
                return Err(Error::MissingChernNumber(format!("m{}", compact(lambda))));
            }
        }
        if let Some(extra) = numbers.keys().find(|k| !expected.contains(k)) {
            return Err(Error::InvalidChernData(format!("{extra} is not a partition of {d}")));
        }
        Ok(ChernData { d, monomial_numbers: numbers })
    }

    /// Ingestion from Chern-class monomials: `classes[μ] = ⟨c_μ, [X]⟩`.
    pub fn from_classes(d: usize, classes: &BTreeMap<Partition, Rational>) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidChernData("dimension must be positive".into()));
        }
        for mu in classes.keys() {
            if mu.size() as usize != d || mu.parts().first().is_some_and(|&p| p as usize > d) {
                return Err(Error::InvalidChernData(format!(
                    "{} is not a Chern monomial of degree {d}",
                    chern_monomial_name(mu)
                )));
            }
        }
        let mut numbers = BTreeMap::new();
        for lambda in partitions_of(d as u32, d) {
            let mut value = Rational::zero();
            for (mu, coeff) in monomial_to_elementary(&lambda, d)? {
                let class = classes
                    .get(&mu)
                    .ok_or_else(|| Error::MissingChernNumber(chern_monomial_name(&mu)))?;
                value += coeff * class;
            }
            numbers.insert(lambda, value);
        }
        Ok(ChernData { d, monomial_numbers: numbers })
    }

    /// Projective space of dimension `d`: `⟨c_μ⟩ = Π binom(d+1, μ_i)`.
    pub fn projective_space(d: usize) -> Result<Self> {
        let mut classes = BTreeMap::new();
        for mu in partitions_of(d as u32, usize::MAX) {
            if mu.parts().first().is_some_and(|&p| p as usize > d) {
                continue;
            }
            let value = mu
                .parts()
                .iter()
                .fold(Rational::one(), |acc, &p| acc * binomial(d as i64 + 1, p));
            classes.insert(mu, value);
        }
        Self::from_classes(d, &classes)
    }

    /// A curve of Euler characteristic `chi`.
    pub fn curve(chi: Rational) -> Self {
        ChernData { d: 1, monomial_numbers: BTreeMap::from([(Partition::new(vec![1]), chi)]) }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn monomial_numbers(&self) -> &BTreeMap<Partition, Rational> {
        &self.monomial_numbers
    }

    pub fn value(&self, lambda: &Partition) -> Rational {
        self.monomial_numbers
            .get(lambda)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// `⟨c_μ, [X]⟩` recovered from the monomial numbers.
    pub fn class_number(&self, mu: &Partition) -> Result<Rational> {
        if mu.size() as usize != self.d {
            return Err(Error::InvalidChernData(format!("{} has wrong degree", chern_monomial_name(mu))));
        }
        // e_μ = Σ_ν c_{μν} m_ν, and c_i = e_i.
        Ok(elementary_in_monomials(mu, self.d)
            .into_iter()
            .map(|(nu, c)| c * self.value(&nu))
            .sum())
    }

    /// Euler characteristic `⟨c_d, [X]⟩`.
    pub fn euler_characteristic(&self) -> Rational {
        self.value(&Partition::new(vec![1; self.d]))
    }
}

fn compact(p: &Partition) -> String {
    p.parts().iter().map(u32::to_string).collect()
}

/// `c1c2`, `c1^3`, ... for the Chern monomial `c_μ`.
pub fn chern_monomial_name(mu: &Partition) -> String {
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    for &p in mu.parts() {
        *counts.entry(p).or_default() += 1;
    }
    counts
        .iter()
        .map(|(p, c)| if *c == 1 { format!("c{p}") } else { format!("c{p}^{c}") })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use proptest::prelude::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    /// `m_λ(x)` by summing over distinct rearrangements of the padded `λ`.
    fn eval_monomial(lambda: &Partition, x: &[i64]) -> BigInt {
        let padded = lambda.padded(x.len()).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        permutations(&padded, &mut seen);
        seen.iter()
            .map(|e| e.iter().zip(x).fold(BigInt::one(), |acc, (&k, &xi)| acc * BigInt::from(xi).pow(k)))
            .sum()
    }

    fn permutations(v: &[u32], seen: &mut std::collections::BTreeSet<Vec<u32>>) {
        fn go(rest: &mut Vec<u32>, prefix: &mut Vec<u32>, seen: &mut std::collections::BTreeSet<Vec<u32>>) {
            if rest.is_empty() {
                seen.insert(prefix.clone());
                return;
            }
            for i in 0..rest.len() {
                let x = rest.remove(i);
                prefix.push(x);
                go(rest, prefix, seen);
                prefix.pop();
                rest.insert(i, x);
            }
        }
        go(&mut v.to_vec(), &mut Vec::new(), seen);
    }

    fn eval_elementary(k: u32, x: &[i64]) -> BigInt {
        boxed_vectors(&vec![1; x.len()])
            .into_iter()
            .filter(|e| e.iter().sum::<u32>() == k)
            .map(|e| e.iter().zip(x).filter(|(b, _)| **b == 1).fold(BigInt::one(), |acc, (_, &xi)| acc * xi))
            .sum()
    }

    #[test]
    fn partition_listing() {
        assert_eq!(partitions_of(3, 3), vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
        assert_eq!(partitions_of(0, 2), vec![Partition::empty()]);
        assert_eq!(partitions_of(4, 2), vec![p(&[4]), p(&[3, 1]), p(&[2, 2])]);
        assert_eq!(partitions_of(6, 6).len(), 11);
    }

    #[test]
    fn splittings() {
        assert_eq!(vector_splittings(&[1]), vec![(vec![0], vec![1]), (vec![1], vec![0])]);
        assert_eq!(vector_splittings(&[2, 2]).len(), 9);
        assert_eq!(vector_splittings(&[]).len(), 1);
    }

    #[test]
    fn transitions() {
        assert_eq!(monomial_to_elementary(&p(&[1, 1]), 2).unwrap(), BTreeMap::from([(p(&[2]), int(1))]));
        assert_eq!(
            monomial_to_elementary(&p(&[2]), 2).unwrap(),
            BTreeMap::from([(p(&[1, 1]), int(1)), (p(&[2]), int(-2))])
        );
        assert_eq!(
            monomial_to_elementary(&p(&[2, 1]), 3).unwrap(),
            BTreeMap::from([(p(&[2, 1]), int(1)), (p(&[3]), int(-3))])
        );
        assert!(matches!(monomial_to_elementary(&p(&[1, 1, 1]), 2), Err(Error::InvalidIndex(_))));
    }

    #[test]
    fn transitions_agree_with_brute_force_evaluation() {
        let points: [&[i64]; 3] = [&[2, -3, 5, 7], &[1, 4, -2, 3], &[-1, 6, 2, -5]];
        for d in 1..=4 {
            for k in 0..=5 {
                for lambda in partitions_of(k, d) {
                    let expansion = monomial_to_elementary(&lambda, d).unwrap();
                    for x in points {
                        let x = &x[..d];
                        let lhs = Rational::from_integer(eval_monomial(&lambda, x));
                        let rhs: Rational = expansion
                            .iter()
                            .map(|(mu, c)| {
                                let prod = mu.parts().iter().fold(BigInt::one(), |acc, &k| acc * eval_elementary(k, x));
                                c * Rational::from_integer(prod)
                            })
                            .sum();
                        assert_eq!(lhs, rhs, "m{lambda} at d={d}");
                    }
                }
            }
        }
    }

    #[test]
    fn chern_from_classes() {
        let curve = ChernData::from_classes(1, &BTreeMap::from([(p(&[1]), int(-4))])).unwrap();
        assert_eq!(curve.value(&p(&[1])), int(-4));

        let (a, b) = (int(7), int(3));
        let surface = ChernData::from_classes(2, &BTreeMap::from([(p(&[1, 1]), a.clone()), (p(&[2]), b.clone())])).unwrap();
        assert_eq!(surface.value(&p(&[2])), &a - int(2) * &b);
        assert_eq!(surface.value(&p(&[1, 1])), b);

        let classes = BTreeMap::from([(p(&[1, 1, 1]), int(64)), (p(&[2, 1]), int(24)), (p(&[3]), int(4))]);
        let p3 = ChernData::from_classes(3, &classes).unwrap();
        assert_eq!(p3.value(&p(&[1, 1, 1])), int(4));
        assert_eq!(p3.value(&p(&[2, 1])), int(12));
        assert_eq!(p3.value(&p(&[3])), int(4));
        assert_eq!(ChernData::projective_space(3).unwrap(), p3);
        assert_eq!(p3.class_number(&p(&[2, 1])).unwrap(), int(24));

        let mut partial = classes.clone();
        partial.remove(&p(&[1, 1, 1]));
        let err = ChernData::from_classes(3, &partial).unwrap_err();
        assert_eq!(err, Error::MissingChernNumber("c1^3".into()));
    }

    #[test]
    fn chern_from_monomials_requires_every_partition() {
        let ok = BTreeMap::from([(p(&[2]), int(1)), (p(&[1, 1]), int(2))]);
        assert!(ChernData::from_monomials(2, ok).is_ok());
        let missing = BTreeMap::from([(p(&[2]), int(1))]);
        assert!(matches!(ChernData::from_monomials(2, missing), Err(Error::MissingChernNumber(_))));
    }

    #[test]
    fn multisets() {
        // (2) splits as {2} or {1,1}
        let all = vector_multiset_partitions(&[2], &|_| true);
        assert_eq!(all, vec![vec![vec![2]], vec![vec![1], vec![1]]]);
        // parts with first entry at least one: (2,1) as {(2,1)}, {(1,1),(1,0)}
        let firsts = vector_multiset_partitions(&[2, 1], &|v| v[0] >= 1);
        assert_eq!(firsts.len(), 2);
        let two = vector_multisets_of_size(&[2], 2);
        assert_eq!(two, vec![vec![vec![2], vec![0]], vec![vec![1], vec![1]]]);
        assert_eq!(inverse_multiplicity_factorial(&[1, 1, 2]), Rational::new(1.into(), 2.into()));
    }

    proptest! {
        #[test]
        fn splitting_count(v in prop::collection::vec(0u32..4, 0..4)) {
            let expected: usize = v.iter().map(|&x| x as usize + 1).product();
            prop_assert_eq!(vector_splittings(&v).len(), expected);
        }

        #[test]
        fn rearrangements_from_unit_evaluation(d in 1usize..=4, k in 0u32..=5) {
            // With all x_i = 1, e_j evaluates to binom(d, j).
            for lambda in partitions_of(k, d) {
                let expansion = monomial_to_elementary(&lambda, d).unwrap();
                let at_ones: Rational = expansion
                    .iter()
                    .map(|(mu, c)| mu.parts().iter().fold(c.clone(), |acc, &j| acc * binomial(d as i64, j)))
                    .sum();
                let count = rearrangement_count(&lambda.padded(d).unwrap());
                prop_assert_eq!(at_ones, Rational::from_integer(count));
            }
        }

        #[test]
        fn orbit_sum_counts_monomials(d in 1usize..=4, k in 0u32..=6) {
            // Every degree k monomial in d variables is in exactly one orbit.
            let total: BigInt = partitions_of(k, d)
                .iter()
                .map(|l| rearrangement_count(&l.padded(d).unwrap()))
                .sum();
            let expected = binomial((d as u32 + k - 1) as i64, k);
            prop_assert_eq!(Rational::from_integer(total), expected);
        }

        #[test]
        fn elementary_top_coefficient(d in 1usize..=4) {
            // The degree d part of Π (1 + x_i t) is x_1 ... x_d.
            let e = elementary_in_monomials(&Partition::new(vec![d as u32]), d);
            prop_assert_eq!(e, BTreeMap::from([(Partition::new(vec![1; d]), Rational::one())]));
        }
    }
}
