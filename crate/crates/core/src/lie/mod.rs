//! The positive part `n+` of a Kac-Moody Lie algebra, truncated at a height
//! cutoff, built from the Serre presentation.
//!
//! Every root space is computed inside the free associative algebra on the
//! generators `e_s`: the free Lie algebra in multidegree `alpha` is spanned by
//! Lyndon brackets, the Serre ideal in multidegree `alpha` is spanned by the
//! Serre elements of that degree together with `[e_s, j]` for `j` in the
//! ideal at `alpha - alpha_s`, and the quotient is read off by elimination.

pub mod free;
pub mod lyndon;

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FieldDescriptor};
use crate::gcm::GeneralizedCartanMatrix;
use crate::linalg::{axpy, Echelon, SparseVec};
use crate::roots::{positive_lattice_points, RootVector};

use free::NcPoly;
use lyndon::{LyndonBasis, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieBasisElement {
    /// Degree in the root lattice.
    pub root: RootVector,
    pub height: usize,
    /// Lyndon word (letters are generator indices) whose standard bracketing
    /// represents this element.
    pub word: Word,
}

/// Graded basis and structure constants of `n+` up to height `cutoff`.
///
/// Basis order is by height, then by multidegree in decreasing lexicographic
/// order (so `e_s` has index `s`), then by Lyndon word.
#[derive(Debug, Clone)]
pub struct GradedLieAlgebra<F: Field> {
    gcm: GeneralizedCartanMatrix,
    cutoff: usize,
    field: F,
    basis: Vec<LieBasisElement>,
    /// `brackets[i][j]` lists `(k, c)` with `[b_i, b_j] = sum c b_k`.
    brackets: Vec<Vec<Vec<(usize, F::Elem)>>>,
}

/// `(ad e_s)^{1 - A[s][t]} e_t` for every `s != t` whose height fits.
fn serre_elements<F: Field>(field: &F, gcm: &GeneralizedCartanMatrix, cutoff: usize) -> Vec<(RootVector, NcPoly<F::Elem>)> {
    let n = gcm.size();
    let mut out = Vec::new();
    for s in 0..n {
        for t in 0..n {
            if s == t {
                continue;
            }
            let power = (1 - gcm.get(s, t)) as usize;
            if power + 1 > cutoff {
                continue;
            }
            let es = free::letter(field, s);
            let mut u = free::letter(field, t);
            for _ in 0..power {
                u = free::bracket(field, &es, &u);
            }
            let mut root = RootVector::simple(n, t);
            root.0[s] += power as i64;
            out.push((root, u));
        }
    }
    out
}

fn multidegree(word: &[u8], rank: usize) -> RootVector {
    let mut v = vec![0i64; rank];
    for &c in word {
        v[c as usize] += 1;
    }
    RootVector(v)
}

impl<F: Field> GradedLieAlgebra<F> {
    /// Builds `n+` over `field` up to height `cutoff`. In positive
    /// characteristic `p > cutoff` is required.
    pub fn build(gcm: &GeneralizedCartanMatrix, cutoff: usize, field: F) -> Result<Self> {
        if cutoff == 0 {
            return Err(Error::InvalidParameter("height cutoff must be at least 1".into()));
        }
        let p = field.characteristic();
        if p != 0 && p as usize <= cutoff {
            return Err(Error::CharacteristicTooSmall { p, cutoff });
        }
        let n = gcm.size();
        let lyndon = LyndonBasis::new(n, cutoff);
        let lyndon_polys = free::lyndon_polys(&field, &lyndon);
        let mut words_by_degree: HashMap<RootVector, Vec<usize>> = HashMap::new();
        for (i, w) in lyndon.words.iter().enumerate() {
            words_by_degree.entry(multidegree(w, n)).or_default().push(i);
        }
        let mut serre_by_degree: HashMap<RootVector, Vec<NcPoly<F::Elem>>> = HashMap::new();
        for (root, u) in serre_elements(&field, gcm, cutoff) {
            serre_by_degree.entry(root).or_default().push(u);
        }

        let mut ideal: HashMap<RootVector, Vec<NcPoly<F::Elem>>> = HashMap::new();
        let mut echelons: HashMap<RootVector, Echelon<Word, F>> = HashMap::new();
        let mut basis = Vec::new();
        let mut polys: Vec<NcPoly<F::Elem>> = Vec::new();

        let mut degrees = positive_lattice_points(n, cutoff);
        degrees.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.0.cmp(&a.0)));
        for alpha in degrees {
            let mut ech: Echelon<Word, F> = Echelon::new(field.clone());
            let mut ideal_here = Vec::new();
            let mut candidates: Vec<NcPoly<F::Elem>> = serre_by_degree.remove(&alpha).unwrap_or_default();
            for s in 0..n {
                if alpha.0[s] == 0 {
                    continue;
                }
                let mut lower = alpha.clone();
                lower.0[s] -= 1;
                if let Some(js) = ideal.get(&lower) {
                    let es = free::letter(&field, s);
                    candidates.extend(js.iter().map(|j| free::bracket(&field, &es, j)));
                }
            }
            for c in candidates {
                if ech.insert(c.clone(), SparseVec::new()) {
                    ideal_here.push(c);
                }
            }
            for &wi in words_by_degree.get(&alpha).map(Vec::as_slice).unwrap_or(&[]) {
                let k = basis.len();
                let tag: SparseVec<usize, F::Elem> = [(k, field.one())].into_iter().collect();
                if ech.insert(lyndon_polys[wi].clone(), tag) {
                    basis.push(LieBasisElement {
                        root: alpha.clone(),
                        height: alpha.height() as usize,
                        word: lyndon.words[wi].clone(),
                    });
                    polys.push(lyndon_polys[wi].clone());
                }
            }
            ideal.insert(alpha.clone(), ideal_here);
            echelons.insert(alpha, ech);
        }

        let dim = basis.len();
        let mut brackets = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in i + 1..dim {
                if basis[i].height + basis[j].height > cutoff {
                    continue;
                }
                let target = basis[i].root.add(&basis[j].root);
                let poly = free::bracket(&field, &polys[i], &polys[j]);
                let Some(ech) = echelons.get(&target) else {
                    debug_assert!(poly.is_empty());
                    continue;
                };
                let (rem, tag) = ech.reduce(poly, SparseVec::new());
                assert!(rem.is_empty(), "bracket left the free Lie algebra");
                let terms: Vec<(usize, F::Elem)> = tag.into_iter().map(|(k, c)| (k, field.neg(&c))).collect();
                brackets[j][i] = terms.iter().map(|(k, c)| (*k, field.neg(c))).collect();
                brackets[i][j] = terms;
            }
        }

        Ok(Self { gcm: gcm.clone(), cutoff, field, basis, brackets })
    }

    pub fn gcm(&self) -> &GeneralizedCartanMatrix {
        &self.gcm
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn basis(&self) -> &[LieBasisElement] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Dimension of each height component `1..=cutoff`.
    pub fn dimensions(&self) -> Vec<usize> {
        let mut dims = vec![0; self.cutoff];
        for b in &self.basis {
            dims[b.height - 1] += 1;
        }
        dims
    }

    /// Index of `e_s`, which is `s`.
    pub fn generator_index(&self, s: usize) -> usize {
        debug_assert_eq!(self.basis[s].root.0[s], 1);
        s
    }

    /// Basis indices of degree `alpha`.
    pub fn indices_of_root(&self, alpha: &RootVector) -> Vec<usize> {
        self.basis.iter().enumerate().filter(|(_, b)| &b.root == alpha).map(|(i, _)| i).collect()
    }

    /// Structure constants of `[b_i, b_j]`.
    pub fn bracket_terms(&self, i: usize, j: usize) -> &[(usize, F::Elem)] {
        &self.brackets[i][j]
    }

    pub fn root_multiplicity(&self, alpha: &RootVector) -> Result<usize> {
        let h = alpha.height();
        if h > self.cutoff as i64 {
            return Err(Error::HeightExceedsCutoff { height: h, cutoff: self.cutoff });
        }
        Ok(self.indices_of_root(alpha).len())
    }

    pub fn zero(&self) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F::Elem> {
        let mut v = self.zero();
        v[i] = self.field.one();
        v
    }

    /// Bilinear extension of the structure constants; components above the
    /// cutoff are zero.
    pub fn bracket(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = self.zero();
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (k, s) in &self.brackets[i][j] {
                    out[*k] = f.add(&out[*k], &f.mul(&c, s));
                }
            }
        }
        out
    }

    /// First basis triple violating the Jacobi identity, among triples of
    /// total height at most the cutoff.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let f = &self.field;
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    if self.basis[i].height + self.basis[j].height + self.basis[k].height > self.cutoff {
                        continue;
                    }
                    let (x, y, z) = (self.basis_vector(i), self.basis_vector(j), self.basis_vector(k));
                    let a = self.bracket(&x, &self.bracket(&y, &z));
                    let b = self.bracket(&y, &self.bracket(&z, &x));
                    let c = self.bracket(&z, &self.bracket(&x, &y));
                    if a.iter().zip(&b).zip(&c).any(|((a, b), c)| !f.is_zero(&f.add(&f.add(a, b), c))) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Antisymmetry and the grading on all basis pairs.
    pub fn is_graded_antisymmetric(&self) -> bool {
        let f = &self.field;
        let d = self.dim();
        (0..d).all(|i| {
            self.brackets[i][i].is_empty()
                && (0..d).all(|j| {
                    let target = self.basis[i].root.add(&self.basis[j].root);
                    self.brackets[i][j].iter().all(|(k, _)| self.basis[*k].root == target)
                        && self.brackets[i][j].len() == self.brackets[j][i].len()
                        && self.brackets[i][j].iter().zip(&self.brackets[j][i]).all(|(a, b)| a.0 == b.0 && f.is_zero(&f.add(&a.1, &b.1)))
                })
        })
    }

    /// `dim n - rank [n, n]`.
    pub fn abelianization_dim(&self) -> usize {
        let mut ech: Echelon<usize, F> = Echelon::new(self.field.clone());
        for row in &self.brackets {
            for terms in row {
                let v: SparseVec<usize, F::Elem> = terms.iter().cloned().collect();
                if !v.is_empty() {
                    ech.insert(v, SparseVec::new());
                }
            }
        }
        self.dim() - ech.rank()
    }

    pub fn dump(&self) -> AlgebraDump {
        let mut heights: BTreeMap<String, Vec<DumpBasisEntry>> = BTreeMap::new();
        for (i, b) in self.basis.iter().enumerate() {
            heights.entry(b.height.to_string()).or_default().push(DumpBasisEntry { root: b.root.0.clone(), basis_index: i });
        }
        let mut brackets = Vec::new();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                for (k, c) in &self.brackets[i][j] {
                    brackets.push(DumpBracket { left: i, right: j, result: *k, coeff: self.field.display(c) });
                }
            }
        }
        AlgebraDump { field: self.field.descriptor(), cutoff: self.cutoff, heights, brackets }
    }
}

/// Expresses a sum of noncommutative polynomials in this algebra's basis
/// (used by tests to compare with hand computations).
pub fn combine<F: Field>(field: &F, terms: &[(F::Elem, &NcPoly<F::Elem>)]) -> NcPoly<F::Elem> {
    let mut out = NcPoly::new();
    for (c, p) in terms {
        axpy(field, &mut out, c, p);
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct DumpBasisEntry {
    pub root: Vec<i64>,
    pub basis_index: usize,
}

/// `[b_left, b_right]` has coefficient `coeff` on `b_result`; only `left < right` is listed.
#[derive(Debug, Clone, Serialize)]
pub struct DumpBracket {
    pub left: usize,
    pub right: usize,
    pub result: usize,
    pub coeff: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct AlgebraDump {
    pub field: FieldDescriptor,
    pub cutoff: usize,
    pub heights: BTreeMap<String, Vec<DumpBasisEntry>>,
    pub brackets: Vec<DumpBracket>,
}
