//! The Baker-Campbell-Hausdorff series `log(exp X exp Y)` expressed in the
//! Lyndon basis of the free Lie algebra on `{X, Y}`, truncated by degree.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::lie::free::{self, NcPoly};
use crate::lie::lyndon::{LyndonBasis, Word};
use crate::linalg::{axpy, scale, Echelon, SparseVec};

/// Rational BCH coefficients on the Lyndon words over `{0 = X, 1 = Y}` of
/// length at most `degree`.
#[derive(Debug, Clone)]
pub struct BchSeries {
    pub basis: LyndonBasis,
    pub coefficients: Vec<BigRational>,
}

fn exp_truncated(q: &Rationals, x: &NcPoly<BigRational>, degree: usize) -> NcPoly<BigRational> {
    let mut out: NcPoly<BigRational> = [(Word::new(), BigRational::one())].into_iter().collect();
    let mut term = out.clone();
    for n in 1..=degree {
        term = free::mul_truncated(q, &term, x, degree);
        let inv = BigRational::new(BigInt::one(), BigInt::from(n));
        scale(q, &mut term, &inv);
        axpy(q, &mut out, &BigRational::one(), &term);
    }
    out
}

impl BchSeries {
    pub fn new(degree: usize) -> Self {
        let q = Rationals;
        let basis = LyndonBasis::new(2, degree);
        let (x, y) = (free::letter(&q, 0), free::letter(&q, 1));
        let mut z = free::mul_truncated(&q, &exp_truncated(&q, &x, degree), &exp_truncated(&q, &y, degree), degree);
        z.remove(&Word::new());
        let mut log = NcPoly::new();
        let mut power = z.clone();
        for k in 1..=degree {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            axpy(&q, &mut log, &BigRational::new(BigInt::from(sign), BigInt::from(k)), &power);
            power = free::mul_truncated(&q, &power, &z, degree);
        }

        let polys = free::lyndon_polys(&q, &basis);
        let mut coefficients = vec![BigRational::zero(); basis.len()];
        for n in 1..=degree {
            let mut ech: Echelon<Word, Rationals> = Echelon::new(q);
            for (i, p) in polys.iter().enumerate().filter(|(i, _)| basis.words[*i].len() == n) {
                ech.insert(p.clone(), [(i, BigRational::one())].into_iter().collect());
            }
            let component: NcPoly<BigRational> = log.iter().filter(|(w, _)| w.len() == n).map(|(w, c)| (w.clone(), c.clone())).collect();
            let (rem, tag) = ech.reduce(component, SparseVec::new());
            assert!(rem.is_empty(), "BCH component of degree {n} is not a Lie element");
            for (i, c) in tag {
                coefficients[i] = -c;
            }
        }
        Self { basis, coefficients }
    }

    pub fn degree(&self) -> usize {
        self.basis.words.last().map_or(0, Vec::len)
    }

    pub fn coefficient(&self, word: &[u8]) -> Option<&BigRational> {
        self.basis.index_of(word).map(|i| &self.coefficients[i])
    }

    /// Coefficients reduced into `field`.
    pub fn reduce<F: Field>(&self, field: &F) -> Result<Vec<F::Elem>> {
        self.coefficients
            .iter()
            .map(|c| {
                field.from_rational(c).ok_or(Error::CharacteristicTooSmall { p: field.characteristic(), cutoff: self.degree() })
            })
            .collect()
    }
}
