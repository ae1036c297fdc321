//! Sparse row echelon forms over an arbitrary [`Field`].
//!
//! Rows are keyed by an ordered index type; the pivot of a row is its largest
//! key. Each row carries a "tag" vector recording how it was obtained, which
//! lets callers express a reduced vector in terms of previously inserted ones.

use std::collections::BTreeMap;

use crate::field::Field;

pub type SparseVec<K, E> = BTreeMap<K, E>;

/// `target += c * source`, dropping entries that become zero.
pub fn axpy<K: Ord + Clone, F: Field>(field: &F, target: &mut SparseVec<K, F::Elem>, c: &F::Elem, source: &SparseVec<K, F::Elem>) {
    if field.is_zero(c) {
        return;
    }
    for (k, v) in source {
        let term = field.mul(c, v);
        match target.get_mut(k) {
            Some(existing) => {
                *existing = field.add(existing, &term);
                if field.is_zero(existing) {
                    target.remove(k);
                }
            }
            None => {
                if !field.is_zero(&term) {
                    target.insert(k.clone(), term);
                }
            }
        }
    }
}

pub fn scale<K: Ord + Clone, F: Field>(field: &F, v: &mut SparseVec<K, F::Elem>, c: &F::Elem) {
    for x in v.values_mut() {
        *x = field.mul(x, c);
    }
    v.retain(|_, x| !field.is_zero(x));
}

#[derive(Debug, Clone)]
struct Row<K, E> {
    vec: SparseVec<K, E>,
    tag: SparseVec<usize, E>,
}

#[derive(Debug, Clone)]
pub struct Echelon<K: Ord + Clone, F: Field> {
    field: F,
    rows: BTreeMap<K, Row<K, F::Elem>>,
}

impl<K: Ord + Clone, F: Field> Echelon<K, F> {
    pub fn new(field: F) -> Self {
        Self { field, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows. Returns the remainder together
    /// with `tag - sum(lambda_i * tag_i)` where `v = sum(lambda_i * row_i) + remainder`.
    pub fn reduce(
        &self,
        mut v: SparseVec<K, F::Elem>,
        mut tag: SparseVec<usize, F::Elem>,
    ) -> (SparseVec<K, F::Elem>, SparseVec<usize, F::Elem>) {
        let mut cursor: Option<K> = None;
        loop {
            let next = match &cursor {
                None => v.keys().next_back().cloned(),
                Some(c) => v.range(..c.clone()).next_back().map(|(k, _)| k.clone()),
            };
            let Some(key) = next else { break };
            if let Some(row) = self.rows.get(&key) {
                let c = self.field.neg(&v[&key]);
                axpy(&self.field, &mut v, &c, &row.vec);
                axpy(&self.field, &mut tag, &c, &row.tag);
            }
            cursor = Some(key);
        }
        (v, tag)
    }

    /// Inserts `v` if it is independent of the stored rows; the stored row is
    /// the normalized remainder with the correspondingly adjusted tag.
    pub fn insert(&mut self, v: SparseVec<K, F::Elem>, tag: SparseVec<usize, F::Elem>) -> bool {
        let (mut rem, mut tag) = self.reduce(v, tag);
        let Some((pivot, lead)) = rem.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = self.field.inv(&lead).expect("nonzero pivot");
        scale(&self.field, &mut rem, &inv);
        scale(&self.field, &mut tag, &inv);
        self.rows.insert(pivot, Row { vec: rem, tag });
        true
    }

    pub fn contains(&self, v: &SparseVec<K, F::Elem>) -> bool {
        self.reduce(v.clone(), SparseVec::new()).0.is_empty()
    }
}

/// Rank of a list of dense vectors.
pub fn rank_dense<F: Field>(field: &F, rows: &[Vec<F::Elem>]) -> usize {
    let mut ech = Echelon::new(field.clone());
    for row in rows {
        let v: SparseVec<usize, F::Elem> =
            row.iter().enumerate().filter(|(_, x)| !field.is_zero(x)).map(|(i, x)| (i, x.clone())).collect();
        ech.insert(v, SparseVec::new());
    }
    ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn rank_over_rationals_and_mod_p() {
        let q = Rationals;
        let rows: Vec<Vec<_>> = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
            .iter()
            .map(|r| r.iter().map(|&x| q.from_i64(x)).collect())
            .collect();
        assert_eq!(rank_dense(&q, &rows), 2);

        // rows (1,1) and (1,3) are dependent mod 2 only
        let f2 = PrimeField::new(2).unwrap();
        let rows2 = vec![vec![1, 1], vec![1, 3 % 2]];
        assert_eq!(rank_dense(&f2, &rows2), 1);
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(rank_dense(&f3, &[vec![1, 1], vec![1, 0]]), 2);
    }

    #[test]
    fn tags_express_vectors_in_inserted_rows() {
        let f = PrimeField::new(7).unwrap();
        let mut ech: Echelon<usize, _> = Echelon::new(f);
        let a: SparseVec<usize, u64> = [(0, 1), (1, 2)].into_iter().collect();
        let b: SparseVec<usize, u64> = [(1, 1), (2, 5)].into_iter().collect();
        assert!(ech.insert(a.clone(), [(0, 1)].into_iter().collect()));
        assert!(ech.insert(b.clone(), [(1, 1)].into_iter().collect()));
        // 3a + 4b
        let mut v = SparseVec::new();
        axpy(&f, &mut v, &3, &a);
        axpy(&f, &mut v, &4, &b);
        let (rem, tag) = ech.reduce(v, SparseVec::new());
        assert!(rem.is_empty());
        // tag is minus the combination
        assert_eq!(tag.get(&0), Some(&4));
        assert_eq!(tag.get(&1), Some(&3));
    }
}
