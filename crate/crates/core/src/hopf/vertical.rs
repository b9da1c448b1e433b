//! The vertical classes `[Z_n X]` as explicit Hopf elements.

use num_traits::Zero;

use super::{add_term, Basis, Context, Generator, HopfElement, Monomial, Terms, Variant};
use crate::combinatorics::{partitions_of, ChernData};
use crate::error::Result;
use crate::rational::{int, Rational};

/// `[Z_0 X], .., [Z_{n_max} X]`.
///
/// Separated: the coefficients of `exp(Σ_n A_n T^n)` with
/// `A_n = Σ_λ ⟨m_λ, [X]⟩ p_{n, λ + n - 1}`, returned in the `p` basis.
/// Non-separated: `A_1 = Σ_λ ⟨m_λ, [X]⟩ q_λ` and `A_n = 0` for `n > 1`.
pub fn vertical_element(chern: &ChernData, n_max: u32, variant: Variant) -> Result<Vec<HopfElement>> {
    let d = chern.dim();
    let ctx = match variant {
        Variant::Separated => Context::new(d, variant, Basis::P),
        Variant::NonSeparated => Context::non_separated(d),
    };
    let lambdas = partitions_of(d as u32, d);
    let mut a: Vec<HopfElement> = vec![HopfElement::zero(ctx)];
    for n in 1..=n_max {
        let mut terms = Terms::new();
        if variant == Variant::Separated || n == 1 {
            for lambda in &lambdas {
                let value = chern.value(lambda);
                if value.is_zero() {
                    continue;
                }
                let m: Vec<u32> = lambda.padded(d)?.iter().map(|x| x + n - 1).collect();
                let n_index = if variant == Variant::Separated { n } else { 1 };
                add_term(&mut terms, Monomial::single(Generator::new(n_index, m)?), value);
            }
        }
        a.push(HopfElement::from_raw(ctx, terms));
    }
    // n Z_n = Σ_{j=1}^{n} j A_j Z_{n-j}
    let mut z = vec![HopfElement::one(ctx)];
    for n in 1..=n_max as usize {
        let mut acc = HopfElement::zero(ctx);
        for j in 1..=n {
            if a[j].is_zero() {
                continue;
            }
            acc = acc.add(&a[j].mul(&z[n - j])?.scale(&int(j as i64)))?;
        }
        z.push(acc.scale(&Rational::new(1.into(), (n as i64).into())));
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn curve_classes() {
        let chi = int(5);
        let z = vertical_element(&ChernData::curve(chi.clone()), 2, Variant::Separated).unwrap();
        let sep = Context::separated(1);
        let pp = sep.with_basis(Basis::P);
        assert_eq!(z[0], HopfElement::one(pp));
        assert_eq!(z[1].p_to_q().unwrap(), HopfElement::generator(sep, 1, &[1]).unwrap().scale(&chi));
        let p = |n, m: &[u32]| HopfElement::generator(pp, n, m).unwrap();
        let expected = p(2, &[2])
            .scale(&chi)
            .add(&p(1, &[1]).pow(2).unwrap().scale(&(&chi * &chi * rat(1, 2))))
            .unwrap();
        assert_eq!(z[2], expected);
    }

    #[test]
    fn zeroth_class_is_unit() {
        let z = vertical_element(&ChernData::projective_space(2).unwrap(), 0, Variant::Separated).unwrap();
        assert_eq!(z.len(), 1);
        assert_eq!(z[0].counit(), int(1));
        assert_eq!(z[0].len(), 1);
    }

    #[test]
    fn vertical_classes_have_total_degree_zero() {
        let chern = ChernData::projective_space(2).unwrap();
        for variant in [Variant::Separated, Variant::NonSeparated] {
            for (n, z) in vertical_element(&chern, 3, variant).unwrap().iter().enumerate() {
                for piece in z.grade() {
                    assert_eq!(piece.total, 0);
                    assert_eq!(piece.cycle as usize, n);
                }
            }
        }
    }

    #[test]
    fn non_separated_is_exponential() {
        let chern = ChernData::curve(int(3));
        let z = vertical_element(&chern, 3, Variant::NonSeparated).unwrap();
        let q1 = HopfElement::partition_generator(Context::non_separated(1), &[1]).unwrap();
        assert_eq!(z[3], q1.pow(3).unwrap().scale(&rat(27, 6)));
    }
}
