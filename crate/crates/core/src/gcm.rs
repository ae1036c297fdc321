//! Generalized Cartan matrices, their finite/affine/indefinite type, and
//! Kac-Moody root data over a concrete lattice Z^d.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer matrix `A` indexed by an ordered label set `S` with
/// `A[s][s] = 2`, nonpositive off-diagonal entries, and `A[s][t] = 0` exactly
/// when `A[t][s] = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GeneralizedCartanMatrix {
    labels: Vec<String>,
    entries: Vec<Vec<i64>>,
}

impl GeneralizedCartanMatrix {
    /// Validates a raw matrix, labelling rows `1..=n`.
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let labels = (1..=entries.len()).map(|i| i.to_string()).collect();
        validate_gcm(entries, labels)
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, s: usize, t: usize) -> i64 {
        self.entries[s][t]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn label(&self, s: usize) -> &str {
        &self.labels[s]
    }

    /// Largest `|A[s][t]|` over `s != t`; 0 for a 1x1 matrix.
    pub fn max_off_diagonal(&self) -> i64 {
        let n = self.size();
        (0..n).flat_map(|s| (0..n).filter(move |&t| t != s).map(move |t| (s, t))).map(|(s, t)| self.get(s, t).abs()).max().unwrap_or(0)
    }

    /// Dynkin-diagram neighbours: `s ~ t` iff `A[s][t] != 0`.
    pub fn adjacent(&self, s: usize, t: usize) -> bool {
        s != t && self.entries[s][t] != 0
    }

    /// Connected components of the diagram, each sorted, ordered by smallest index.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut block = vec![start];
            comp[start] = id;
            let mut i = 0;
            while i < block.len() {
                let s = block[i];
                for t in 0..n {
                    if comp[t] == usize::MAX && self.adjacent(s, t) {
                        comp[t] = id;
                        block.push(t);
                    }
                }
                i += 1;
            }
            block.sort_unstable();
            out.push(block);
        }
        out
    }

    /// Principal submatrix on the given (ordered) indices.
    pub fn submatrix(&self, indices: &[usize]) -> Vec<Vec<i64>> {
        indices.iter().map(|&s| indices.iter().map(|&t| self.entries[s][t]).collect()).collect()
    }

    /// Relabels by a permutation: new index `i` is old index `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let labels = perm.iter().map(|&i| self.labels[i].clone()).collect();
        validate_gcm(self.submatrix(perm), labels)
    }
}

impl fmt::Display for GeneralizedCartanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Checks the defining constraints. Entries are kept exactly as given.
pub fn validate_gcm(entries: Vec<Vec<i64>>, labels: Vec<String>) -> Result<GeneralizedCartanMatrix> {
    let n = entries.len();
    for (row, r) in entries.iter().enumerate() {
        if r.len() != n {
            return Err(Error::NotSquare { row: row + 1, len: r.len(), expected: n });
        }
    }
    if labels.len() != n {
        return Err(Error::BadLabels);
    }
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(Error::BadLabels);
        }
    }
    for s in 0..n {
        for t in 0..n {
            let a = entries[s][t];
            if s == t {
                if a != 2 {
                    return Err(Error::DiagonalNotTwo { s: s + 1, t: t + 1, value: a });
                }
            } else if a > 0 {
                return Err(Error::PositiveOffDiagonal { s: s + 1, t: t + 1, value: a });
            } else if a == 0 && entries[t][s] != 0 {
                return Err(Error::AsymmetricZero { s: s + 1, t: t + 1 });
            }
        }
    }
    Ok(GeneralizedCartanMatrix { labels, entries })
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawGcm {
    Bare(Vec<Vec<i64>>),
    Labelled {
        #[serde(alias = "entries")]
        matrix: Vec<Vec<i64>>,
        labels: Option<Vec<String>>,
    },
}

/// Parses the JSON text format: either a bare array of integer rows, or an
/// object `{"matrix": [[...]], "labels": [...]}` with optional labels.
pub fn parse_gcm_json(text: &str) -> Result<GeneralizedCartanMatrix> {
    let raw: RawGcm = serde_json::from_str(text).map_err(|e| Error::InvalidParameter(format!("GCM JSON: {e}")))?;
    match raw {
        RawGcm::Bare(m) => GeneralizedCartanMatrix::new(m),
        RawGcm::Labelled { matrix, labels: None } => GeneralizedCartanMatrix::new(matrix),
        RawGcm::Labelled { matrix, labels: Some(l) } => validate_gcm(matrix, l),
    }
}

impl<'de> Deserialize<'de> for GeneralizedCartanMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(d)?;
        parse_gcm_json(&value.to_string()).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GcmClass {
    Finite,
    Affine,
    Indefinite,
}

impl fmt::Display for GcmClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GcmClass::Finite => "finite",
            GcmClass::Affine => "affine",
            GcmClass::Indefinite => "indefinite",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GcmBlock {
    pub indices: Vec<usize>,
    pub class: GcmClass,
}

/// Block decomposition with a type tag per indecomposable block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GcmType {
    pub blocks: Vec<GcmBlock>,
}

impl GcmType {
    /// The type of an indecomposable matrix; `None` when there are several blocks.
    pub fn class(&self) -> Option<GcmClass> {
        match self.blocks.as_slice() {
            [b] => Some(b.class),
            _ => None,
        }
    }

    /// Block tags as an unordered multiset, for comparisons across relabelings.
    pub fn sorted_classes(&self) -> Vec<GcmClass> {
        let mut v: Vec<GcmClass> = self.blocks.iter().map(|b| b.class).collect();
        v.sort_by_key(|c| *c as u8);
        v
    }
}

/// Determinant of a small integer matrix by fraction-free elimination.
pub fn determinant(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn classify_block(gcm: &GeneralizedCartanMatrix, block: &[usize]) -> GcmClass {
    let n = block.len();
    let mut proper_positive = true;
    for mask in 1u64..(1u64 << n) - 1 {
        let sub: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| block[i]).collect();
        if determinant(&gcm.submatrix(&sub)) <= 0 {
            proper_positive = false;
            break;
        }
    }
    let det = determinant(&gcm.submatrix(block));
    match (proper_positive, det) {
        (true, d) if d > 0 => GcmClass::Finite,
        (true, 0) => GcmClass::Affine,
        _ => GcmClass::Indefinite,
    }
}

/// Principal-minor classification of each indecomposable block.
pub fn classify(gcm: &GeneralizedCartanMatrix) -> GcmType {
    let blocks = gcm
        .components()
        .into_iter()
        .map(|indices| {
            let class = classify_block(gcm, &indices);
            GcmBlock { indices, class }
        })
        .collect();
    GcmType { blocks }
}

pub fn is_indecomposable(gcm: &GeneralizedCartanMatrix) -> bool {
    gcm.components().len() == 1
}

/// `(S, A, Z^d, (c_s), (h_s))` with `c_s(h_t) = A[t][s]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KacMoodyRootDatum {
    pub gcm: GeneralizedCartanMatrix,
    pub lattice_rank: usize,
    pub c: Vec<Vec<i64>>,
    pub h: Vec<Vec<i64>>,
}

/// `d = |S|`, `h_s` the standard basis and `c_s` the s-th column of `A`.
pub fn simply_connected_datum(gcm: &GeneralizedCartanMatrix) -> KacMoodyRootDatum {
    let n = gcm.size();
    let c = (0..n).map(|s| (0..n).map(|t| gcm.get(t, s)).collect()).collect();
    let h = (0..n).map(|s| (0..n).map(|i| i64::from(i == s)).collect()).collect();
    KacMoodyRootDatum { gcm: gcm.clone(), lattice_rank: n, c, h }
}

pub fn check_datum(datum: &KacMoodyRootDatum) -> bool {
    let n = datum.gcm.size();
    let d = datum.lattice_rank;
    if datum.c.len() != n || datum.h.len() != n {
        return false;
    }
    if datum.c.iter().chain(&datum.h).any(|v| v.len() != d) {
        return false;
    }
    (0..n).all(|s| (0..n).all(|t| datum.c[s].iter().zip(&datum.h[t]).map(|(x, y)| x * y).sum::<i64>() == datum.gcm.get(t, s)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gcm(m: &[&[i64]]) -> GeneralizedCartanMatrix {
        GeneralizedCartanMatrix::new(m.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    /// Direct Laplace expansion, independent of the elimination routine.
    fn laplace(m: &[Vec<i64>]) -> i128 {
        if m.is_empty() {
            return 1;
        }
        (0..m.len())
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] as i128 * laplace(&minor)
            })
            .sum()
    }

    #[test]
    fn validation_examples() {
        assert!(GeneralizedCartanMatrix::new(vec![vec![2, -1], vec![-1, 2]]).is_ok());
        assert_eq!(
            GeneralizedCartanMatrix::new(vec![vec![2, -1], vec![0, 2]]),
            Err(Error::AsymmetricZero { s: 2, t: 1 })
        );
        assert_eq!(
            GeneralizedCartanMatrix::new(vec![vec![1, 0], vec![0, 2]]),
            Err(Error::DiagonalNotTwo { s: 1, t: 1, value: 1 })
        );
        assert_eq!(
            GeneralizedCartanMatrix::new(vec![vec![2, 1], vec![-1, 2]]),
            Err(Error::PositiveOffDiagonal { s: 1, t: 2, value: 1 })
        );
        for m in 1..=6 {
            for n in 1..=6 {
                let a = gcm(&[&[2, -m], &[-n, 2]]);
                assert_eq!(a.entries(), &[vec![2, -m], vec![-n, 2]]);
            }
        }
        assert!(matches!(validate_gcm(vec![vec![2]], vec!["a".into(), "b".into()]), Err(Error::BadLabels)));
        assert!(matches!(GeneralizedCartanMatrix::new(vec![vec![2, 0]]), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(&gcm(&[&[2]])).class(), Some(GcmClass::Finite));
        assert_eq!(classify(&gcm(&[&[2, -2], &[-2, 2]])).class(), Some(GcmClass::Affine));
        assert_eq!(classify(&gcm(&[&[2, -3], &[-3, 2]])).class(), Some(GcmClass::Indefinite));
        assert_eq!(classify(&gcm(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]])).class(), Some(GcmClass::Affine));
        assert_eq!(classify(&gcm(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]])).class(), Some(GcmClass::Finite));
        let dec = classify(&gcm(&[&[2, 0], &[0, 2]]));
        assert_eq!(dec.class(), None);
        assert_eq!(dec.blocks.len(), 2);
    }

    #[test]
    fn rank_two_trichotomy_against_minor_oracle() {
        for m in 1..=6i64 {
            for n in 1..=6i64 {
                let a = gcm(&[&[2, -m], &[-n, 2]]);
                let det = laplace(a.entries());
                assert_eq!(det, 4 - (m * n) as i128);
                let expected = if det > 0 {
                    GcmClass::Finite
                } else if det == 0 {
                    GcmClass::Affine
                } else {
                    GcmClass::Indefinite
                };
                assert_eq!(classify(&a).class(), Some(expected), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn indecomposability() {
        assert!(is_indecomposable(&gcm(&[&[2, -1], &[-1, 2]])));
        assert!(!is_indecomposable(&gcm(&[&[2, 0], &[0, 2]])));
        assert!(!is_indecomposable(&gcm(&[&[2, -1, 0], &[-1, 2, 0], &[0, 0, 2]])));
    }

    #[test]
    fn datum_examples() {
        let d1 = simply_connected_datum(&gcm(&[&[2]]));
        assert_eq!((d1.lattice_rank, d1.c.clone(), d1.h.clone()), (1, vec![vec![2]], vec![vec![1]]));
        let a2 = gcm(&[&[2, -1], &[-1, 2]]);
        let d2 = simply_connected_datum(&a2);
        assert_eq!(d2.c, vec![vec![2, -1], vec![-1, 2]]);
        assert!(check_datum(&d2));

        let b2 = gcm(&[&[2, -1], &[-2, 2]]);
        let mut d = simply_connected_datum(&b2);
        assert!(check_datum(&d));
        d.c[0][1] += 1;
        assert!(!check_datum(&d));

        let empty = KacMoodyRootDatum { gcm: GeneralizedCartanMatrix::new(vec![]).unwrap(), lattice_rank: 0, c: vec![], h: vec![] };
        assert!(check_datum(&empty));
    }

    #[test]
    fn json_formats() {
        let a = parse_gcm_json("[[2,-1],[-1,2]]").unwrap();
        assert_eq!(a.labels(), &["1", "2"]);
        let b = parse_gcm_json(r#"{"matrix": [[2,-2],[-2,2]], "labels": ["a0","a1"]}"#).unwrap();
        assert_eq!(b.index_of("a1"), Ok(1));
        assert!(matches!(b.index_of("x"), Err(Error::UnknownLabel(_))));
        assert_eq!(parse_gcm_json("[[2,-1],[0,2]]"), Err(Error::AsymmetricZero { s: 2, t: 1 }));
        assert!(parse_gcm_json("not json").is_err());
        let round: GeneralizedCartanMatrix = serde_json::from_str(&serde_json::to_string(&b).unwrap()).unwrap();
        assert_eq!(round, b);
    }

    fn arb_gcm() -> impl Strategy<Value = GeneralizedCartanMatrix> {
        (1usize..=4).prop_flat_map(|n| {
            proptest::collection::vec((0i64..=3, 0i64..=3), n * (n - 1) / 2).prop_map(move |pairs| {
                let mut m = vec![vec![0i64; n]; n];
                let mut k = 0;
                for s in 0..n {
                    m[s][s] = 2;
                    for t in s + 1..n {
                        let (a, b) = pairs[k];
                        k += 1;
                        if a != 0 && b != 0 {
                            m[s][t] = -a;
                            m[t][s] = -b;
                        }
                    }
                }
                GeneralizedCartanMatrix::new(m).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn classification_is_relabeling_invariant(a in arb_gcm(), seed in any::<u64>()) {
            let n = a.size();
            let mut perm: Vec<usize> = (0..n).collect();
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            let b = a.permuted(&perm).unwrap();
            prop_assert_eq!(classify(&a).sorted_classes(), classify(&b).sorted_classes());
        }

        #[test]
        fn datum_from_any_gcm_is_consistent(a in arb_gcm()) {
            prop_assert!(check_datum(&simply_connected_datum(&a)));
        }

        #[test]
        fn bareiss_matches_laplace(a in arb_gcm()) {
            prop_assert_eq!(determinant(a.entries()), laplace(a.entries()));
        }
    }
}
