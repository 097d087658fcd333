use std::ops::ControlFlow;

use super::field::{Elem, PrimeField};

/// Visits every linear combination `Σ c_i · basis[i]` with coefficient tuples in
/// lexicographic order (first coefficient most significant). The callback receives the
/// coefficients and the combined vector. Each step costs amortised about one vector addition.
pub fn for_each_combination<B>(
    field: PrimeField,
    basis: &[&[Elem]],
    len: usize,
    mut f: impl FnMut(&[Elem], &[Elem]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let k = basis.len();
    let p = field.p() as Elem;
    let mut coeffs = vec![0 as Elem; k];
    let mut acc = vec![0 as Elem; len];
    loop {
        f(&coeffs, &acc)?;
        let mut j = k;
        loop {
            if j == 0 {
                return ControlFlow::Continue(());
            }
            j -= 1;
            // wrapping p-1 -> 0 also adds basis[j] once: p·b = 0
            field.axpy(&mut acc, 1, basis[j]);
            coeffs[j] += 1;
            if coeffs[j] == p {
                coeffs[j] = 0;
            } else {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn visits_all_combinations_in_order() {
        let f = PrimeField::new(3).unwrap();
        let b0: &[Elem] = &[1, 0];
        let b1: &[Elem] = &[1, 1];
        let mut seen = Vec::new();
        let _ = for_each_combination::<()>(f, &[b0, b1], 2, |c, v| {
            seen.push((c.to_vec(), v.to_vec()));
            ControlFlow::Continue(())
        });
        assert_eq!(seen.len(), 9);
        for (c, v) in &seen {
            let expect = [(c[0] + c[1]) % 3, c[1]];
            assert_eq!(v.as_slice(), &expect);
        }
        let coeffs: Vec<_> = seen.iter().map(|(c, _)| c.clone()).collect();
        let mut sorted = coeffs.clone();
        sorted.sort();
        assert_eq!(coeffs, sorted);
    }

    #[test]
    fn empty_basis_yields_zero_once() {
        let mut n = 0;
        let _ = for_each_combination::<()>(PrimeField::gf2(), &[], 3, |c, v| {
            assert!(c.is_empty());
            assert_eq!(v, &[0, 0, 0]);
            n += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(n, 1);
    }

    #[test]
    fn early_exit() {
        let b: &[Elem] = &[1];
        let r = for_each_combination(PrimeField::new(5).unwrap(), &[b], 1, |c, _| {
            if c[0] == 3 {
                ControlFlow::Break(c[0])
            } else {
                ControlFlow::Continue(())
            }
        });
        assert_eq!(r, ControlFlow::Break(3));
    }
}
