//! Noncommutative polynomials, used to realize free Lie algebras inside the
//! free associative algebra.

use crate::field::Field;
use crate::linalg::{axpy, SparseVec};

use super::lyndon::{LyndonBasis, Word};

pub type NcPoly<E> = SparseVec<Word, E>;

pub fn letter<F: Field>(field: &F, s: usize) -> NcPoly<F::Elem> {
    let mut p = NcPoly::new();
    p.insert(vec![s as u8], field.one());
    p
}

/// Product, dropping words longer than `max_len`.
pub fn mul_truncated<F: Field>(field: &F, a: &NcPoly<F::Elem>, b: &NcPoly<F::Elem>, max_len: usize) -> NcPoly<F::Elem> {
    let mut out = NcPoly::new();
    for (u, x) in a {
        for (v, y) in b {
            if u.len() + v.len() > max_len {
                continue;
            }
            let mut w = u.clone();
            w.extend_from_slice(v);
            let single: NcPoly<F::Elem> = [(w, field.mul(x, y))].into_iter().collect();
            axpy(field, &mut out, &field.one(), &single);
        }
    }
    out
}

pub fn mul<F: Field>(field: &F, a: &NcPoly<F::Elem>, b: &NcPoly<F::Elem>) -> NcPoly<F::Elem> {
    mul_truncated(field, a, b, usize::MAX)
}

/// `ab - ba`.
pub fn bracket<F: Field>(field: &F, a: &NcPoly<F::Elem>, b: &NcPoly<F::Elem>) -> NcPoly<F::Elem> {
    let mut out = mul(field, a, b);
    axpy(field, &mut out, &field.from_i64(-1), &mul(field, b, a));
    out
}

/// Standard-bracketing polynomials of every word of a Lyndon basis.
pub fn lyndon_polys<F: Field>(field: &F, basis: &LyndonBasis) -> Vec<NcPoly<F::Elem>> {
    let mut out: Vec<NcPoly<F::Elem>> = Vec::with_capacity(basis.len());
    for (i, w) in basis.words.iter().enumerate() {
        let p = match basis.factors[i] {
            None => letter(field, w[0] as usize),
            Some((a, b)) => bracket(field, &out[a], &out[b]),
        };
        out.push(p);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::linalg::Echelon;

    #[test]
    fn lyndon_brackets_are_independent() {
        // the standard bracketings form a basis of the free Lie algebra, so
        // their lexicographically smallest words are the Lyndon words themselves
        let q = Rationals;
        let basis = LyndonBasis::new(3, 5);
        let polys = lyndon_polys(&q, &basis);
        for (w, p) in basis.words.iter().zip(&polys) {
            assert_eq!(p.keys().next(), Some(w));
        }
        let mut ech: Echelon<Word, _> = Echelon::new(q);
        for p in &polys {
            assert!(ech.insert(p.clone(), Default::default()));
        }
    }

    #[test]
    fn jacobi_in_free_algebra() {
        let q = Rationals;
        let (x, y, z) = (letter(&q, 0), letter(&q, 1), letter(&q, 2));
        let mut sum = bracket(&q, &x, &bracket(&q, &y, &z));
        axpy(&q, &mut sum, &q.one(), &bracket(&q, &y, &bracket(&q, &z, &x)));
        axpy(&q, &mut sum, &q.one(), &bracket(&q, &z, &bracket(&q, &x, &y)));
        assert!(sum.is_empty());
    }
}
