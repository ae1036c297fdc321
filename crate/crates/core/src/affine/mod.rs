//! `SL_m` over the truncated power series ring `F_q[t] / (t^k)` and its
//! Iwahori-type Sylow subgroup: matrices that are unipotent upper triangular
//! modulo `t`.

mod bn;
mod ring;

use std::time::Instant;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Fq, FqConfig};
use crate::gcm::GeneralizedCartanMatrix;
use crate::group::{self, FiniteGroupTable, FiltrationReport, GroupOracle};
use crate::unipotent::{check_hypothesis, VerificationReport};

pub use bn::{standard_bn_pair, verify_tits_sl, BnPair};
pub use ring::TruncatedPolyRing;

/// Row-major `m x m` matrix whose entries are `k` coefficients each.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineMatrix(pub Vec<Fq>);

/// `SL_m(F_q[t] / (t^k))` as a group oracle.
#[derive(Debug, Clone)]
pub struct MatrixGroup {
    ring: TruncatedPolyRing,
    m: usize,
}

impl MatrixGroup {
    pub fn new(m: usize, fq: FqConfig, k: usize) -> Self {
        assert!(m >= 1 && k >= 1);
        Self { ring: TruncatedPolyRing::new(fq, k), m }
    }

    pub fn ring(&self) -> &TruncatedPolyRing {
        &self.ring
    }

    pub fn field(&self) -> &FqConfig {
        self.ring.field()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.ring.k()
    }

    pub fn entry<'a>(&self, g: &'a AffineMatrix, i: usize, j: usize) -> &'a [Fq] {
        let k = self.k();
        let start = (i * self.m + j) * k;
        &g.0[start..start + k]
    }

    fn entry_mut<'a>(&self, g: &'a mut AffineMatrix, i: usize, j: usize) -> &'a mut [Fq] {
        let k = self.k();
        let start = (i * self.m + j) * k;
        &mut g.0[start..start + k]
    }

    pub fn from_entries(&self, entries: &[Vec<Vec<Fq>>]) -> AffineMatrix {
        let mut g = AffineMatrix(vec![Fq(0); self.m * self.m * self.k()]);
        for i in 0..self.m {
            for j in 0..self.m {
                self.entry_mut(&mut g, i, j).copy_from_slice(&entries[i][j]);
            }
        }
        g
    }

    /// `1 + a t^e E_{i,j}` (0-based indices).
    pub fn elementary(&self, i: usize, j: usize, a: Fq, e: usize) -> AffineMatrix {
        let mut g = self.identity();
        let cur = self.entry(&g, i, j).to_vec();
        let new = self.ring.add(&cur, &self.ring.monomial(a, e));
        self.entry_mut(&mut g, i, j).copy_from_slice(&new);
        g
    }

    /// Determinant of the submatrix on `rows` x `cols`.
    fn minor(&self, g: &AffineMatrix, rows: &[usize], cols: &[usize]) -> Vec<Fq> {
        if rows.is_empty() {
            return self.ring.one();
        }
        let r0 = rows[0];
        let mut acc = self.ring.zero();
        for (pos, &c) in cols.iter().enumerate() {
            let a = self.entry(g, r0, c);
            if self.ring.is_zero(a) {
                continue;
            }
            let rest_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let sub = self.minor(g, &rows[1..], &rest_cols);
            let term = self.ring.mul(a, &sub);
            acc = if pos % 2 == 0 { self.ring.add(&acc, &term) } else { self.ring.sub(&acc, &term) };
        }
        acc
    }

    pub fn det(&self, g: &AffineMatrix) -> Vec<Fq> {
        let all: Vec<usize> = (0..self.m).collect();
        self.minor(g, &all, &all)
    }

    /// Signed cofactor `(-1)^{i+j} det(g without row i, column j)`.
    pub fn cofactor(&self, g: &AffineMatrix, i: usize, j: usize) -> Vec<Fq> {
        let rows: Vec<usize> = (0..self.m).filter(|&x| x != i).collect();
        let cols: Vec<usize> = (0..self.m).filter(|&x| x != j).collect();
        let d = self.minor(g, &rows, &cols);
        if (i + j) % 2 == 0 {
            d
        } else {
            self.ring.neg(&d)
        }
    }

    pub fn is_special(&self, g: &AffineMatrix) -> bool {
        self.det(g) == self.ring.one()
    }

    /// `g mod t` is upper unitriangular.
    pub fn iwahori_sylow_membership(&self, g: &AffineMatrix) -> bool {
        (0..self.m).all(|i| {
            (0..self.m).all(|j| {
                let c = self.entry(g, i, j)[0].0;
                if i == j {
                    c == 1
                } else if i > j {
                    c == 0
                } else {
                    true
                }
            })
        })
    }

    /// `g = 1 mod t^i`.
    pub fn in_congruence(&self, g: &AffineMatrix, i: usize) -> bool {
        (0..self.m).all(|a| {
            (0..self.m).all(|b| {
                let mut e = self.entry(g, a, b).to_vec();
                if a == b {
                    e[0] = self.field().sub(e[0], Fq(1));
                }
                self.ring.divisible_by_t_power(&e, i)
            })
        })
    }

    /// Completes a matrix whose `(0, 0)` entry is unset so that `det = 1`;
    /// needs the `(0, 0)` cofactor to be a unit.
    fn solve_corner(&self, g: &mut AffineMatrix) -> bool {
        let c00 = self.cofactor(g, 0, 0);
        let Some(c00_inv) = self.ring.inv(&c00) else { return false };
        let mut rest = self.ring.zero();
        for j in 1..self.m {
            let term = self.ring.mul(self.entry(g, 0, j), &self.cofactor(g, 0, j));
            rest = self.ring.add(&rest, &term);
        }
        let g00 = self.ring.mul(&self.ring.sub(&self.ring.one(), &rest), &c00_inv);
        self.entry_mut(g, 0, 0).copy_from_slice(&g00);
        true
    }

    /// Uniformly random element of the Iwahori Sylow.
    pub fn random_sylow_element<R: Rng>(&self, rng: &mut R) -> AffineMatrix {
        let q = self.field().q() as u16;
        let mut g = self.identity();
        for i in 0..self.m {
            for j in 0..self.m {
                if i == 0 && j == 0 {
                    continue;
                }
                let e = self.entry_mut(&mut g, i, j);
                for (l, c) in e.iter_mut().enumerate() {
                    let forced = l == 0 && i >= j;
                    *c = if forced { Fq((i == j) as u16) } else { Fq(rng.gen_range(0..q)) };
                }
            }
        }
        assert!(self.solve_corner(&mut g));
        g
    }

    /// Reduction modulo `t^{k'}` for `k' <= k`.
    pub fn truncate(&self, g: &AffineMatrix, target: &MatrixGroup) -> AffineMatrix {
        let k2 = target.k();
        AffineMatrix(g.0.chunks(self.k()).flat_map(|e| e[..k2].iter().copied()).collect())
    }
}

impl GroupOracle for MatrixGroup {
    type Elem = AffineMatrix;

    fn identity(&self) -> AffineMatrix {
        let mut g = AffineMatrix(vec![Fq(0); self.m * self.m * self.k()]);
        for i in 0..self.m {
            self.entry_mut(&mut g, i, i)[0] = Fq(1);
        }
        g
    }

    fn mul(&self, a: &AffineMatrix, b: &AffineMatrix) -> AffineMatrix {
        let mut out = AffineMatrix(vec![Fq(0); a.0.len()]);
        let k = self.k();
        for i in 0..self.m {
            for j in 0..self.m {
                let start = (i * self.m + j) * k;
                let mut acc = vec![Fq(0); k];
                for l in 0..self.m {
                    self.ring.mul_add_into(&mut acc, self.entry(a, i, l), self.entry(b, l, j));
                }
                out.0[start..start + k].copy_from_slice(&acc);
            }
        }
        out
    }

    /// Adjugate divided by the determinant.
    fn inv(&self, a: &AffineMatrix) -> AffineMatrix {
        let det_inv = self.ring.inv(&self.det(a)).expect("invertible matrix");
        let mut out = self.identity();
        for i in 0..self.m {
            for j in 0..self.m {
                let c = self.ring.mul(&self.cofactor(a, j, i), &det_inv);
                self.entry_mut(&mut out, i, j).copy_from_slice(&c);
            }
        }
        out
    }
}

/// `{1 + v_l E_{i,i+1}} ∪ {1 + v_l t E_{m,1}}`, in that order.
pub fn sylow_generators(m: usize, fq: &FqConfig, k: usize) -> Vec<AffineMatrix> {
    let g = MatrixGroup::new(m, fq.clone(), k);
    let mut out = Vec::new();
    for i in 0..m - 1 {
        for v in fq.basis() {
            out.push(g.elementary(i, i + 1, v, 0));
        }
    }
    out.extend(affine_generators(&g));
    out
}

fn affine_generators(g: &MatrixGroup) -> Vec<AffineMatrix> {
    g.field().basis().into_iter().map(|v| g.elementary(g.m() - 1, 0, v, 1)).collect()
}

/// `q^{m(m-1)/2} q^{(m^2-1)(k-1)}`.
pub fn sylow_order(m: usize, q: u64, k: usize) -> u128 {
    (q as u128).pow((m * (m - 1) / 2 + (m * m - 1) * (k - 1)) as u32)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GenerationReport {
    pub closure_order: u128,
    pub sylow_order: u128,
    /// Every enumerated element has determinant 1 and lies in the Sylow.
    pub members_valid: bool,
    pub generates: bool,
}

/// Closure of the Sylow generators, optionally without the affine ones,
/// compared with the whole Sylow.
pub fn generation_report(m: usize, fq: &FqConfig, k: usize, include_affine: bool, cap: usize) -> Result<GenerationReport> {
    check_shape(m, k)?;
    let g = MatrixGroup::new(m, fq.clone(), k);
    let mut gens = sylow_generators(m, fq, k);
    if !include_affine {
        gens.truncate(gens.len() - fq.r() as usize);
    }
    let table = group::closure(&g, &gens, cap)?;
    let members_valid = table.elements().iter().all(|x| g.iwahori_sylow_membership(x) && g.is_special(x));
    let order = sylow_order(m, fq.q(), k);
    let closure_order = table.order() as u128;
    Ok(GenerationReport { closure_order, sylow_order: order, members_valid, generates: members_valid && closure_order == order })
}

pub fn verify_generation(m: usize, fq: &FqConfig, k: usize, cap: usize) -> Result<bool> {
    Ok(generation_report(m, fq, k, true, cap)?.generates)
}

fn check_shape(m: usize, k: usize) -> Result<()> {
    if m < 2 || k < 1 {
        return Err(Error::InvalidParameter(format!("need m >= 2 and k >= 1, got m = {m}, k = {k}")));
    }
    Ok(())
}

/// `log_p [U : Phi(U)]` for the Sylow `U`, computed black-box.
pub fn frattini_dimension_affine(m: usize, fq: &FqConfig, k: usize, cap: usize) -> Result<u32> {
    check_shape(m, k)?;
    let g = MatrixGroup::new(m, fq.clone(), k);
    Ok(group::frattini_quotient_dimension(&g, &sylow_generators(m, fq, k), fq.p(), cap)?.dimension)
}

/// The affine Cartan matrix of `SL_m` over a Laurent polynomial ring.
pub fn affine_gcm(m: usize) -> GeneralizedCartanMatrix {
    let entries = if m == 2 {
        vec![vec![2, -2], vec![-2, 2]]
    } else {
        (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        if i == j {
                            2
                        } else if (i + 1) % m == j || (j + 1) % m == i {
                            -1
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect()
    };
    GeneralizedCartanMatrix::new(entries).expect("affine Cartan matrix")
}

/// Frattini verification on the matrix model: black-box `H_1` dimension
/// against `m r`, Frattini against derived subgroup, and generation.
pub fn verify_affine(m: usize, fq: &FqConfig, k: usize, cap: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    check_shape(m, k)?;
    if k < 2 {
        return Err(Error::TruncationTooShallow { k, needed: 2 });
    }
    let gcm = affine_gcm(m);
    check_hypothesis(&gcm, fq.p())?;
    let g = MatrixGroup::new(m, fq.clone(), k);
    let gens = sylow_generators(m, fq, k);
    let data = group::frattini_quotient_dimension(&g, &gens, fq.p(), cap)?;
    let derived = group::derived_subgroup(&g, &gens, cap)?;
    Ok(VerificationReport {
        model: "affine_matrix".into(),
        note: "Iwahori Sylow of SL_m over F_q[t]/(t^k)".into(),
        gcm: gcm.entries().to_vec(),
        q: fq.q(),
        h: None,
        m: Some(m),
        k: Some(k),
        group_order: data.group_order as u64,
        h1_blackbox: data.dimension,
        h1_linear: None,
        h1_predicted: m as u32 * fq.r(),
        frattini_eq_derived: derived.same_set(&data.frattini),
        thm_ii_lhs_order: None,
        thm_ii_rhs_order: None,
        thm_ii_asserted: false,
        generators_generate: data.group_order == sylow_order(m, fq.q(), k),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Compares `[1 + r t^a E_12, 1 + s t^b E_21]` in `SL_2(F_q[t]/(t^K))` with
/// the closed form
/// `[[1 + u + u^2, -r^2 s t^{2a+b}], [r s^2 t^{a+2b}, 1 - u]]`, `u = r s t^{a+b}`.
pub fn commutator_identity_check(fq: &FqConfig, r: Fq, s: Fq, a: usize, b: usize, big_k: usize) -> Result<bool> {
    let needed = 3 * a.max(b) + 1;
    if big_k < needed {
        return Err(Error::TruncationTooShallow { k: big_k, needed });
    }
    let g = MatrixGroup::new(2, fq.clone(), big_k);
    let x = g.elementary(0, 1, r, a);
    let y = g.elementary(1, 0, s, b);
    let lhs = g.commutator(&x, &y);

    let ring = g.ring();
    let u = ring.monomial(fq.mul(r, s), a + b);
    let u2 = ring.mul(&u, &u);
    let e11 = ring.add(&ring.add(&ring.one(), &u), &u2);
    let e12 = ring.monomial(fq.neg(fq.mul(fq.mul(r, r), s)), 2 * a + b);
    let e21 = ring.monomial(fq.mul(r, fq.mul(s, s)), a + 2 * b);
    let e22 = ring.sub(&ring.one(), &u);
    let rhs = g.from_entries(&[vec![e11, e12], vec![e21, e22]]);
    Ok(lhs == rhs && g.is_special(&rhs))
}

/// The congruence subgroup `K_i = {g : g = 1 mod t^i}` of `SL_m(F_q[t]/(t^k))`,
/// enumerated directly.
pub fn congruence_subgroup(m: usize, fq: &FqConfig, k: usize, i: usize) -> Result<FiniteGroupTable<AffineMatrix>> {
    check_shape(m, k)?;
    if i == 0 || i > k {
        return Err(Error::InvalidParameter(format!("congruence level {i} outside 1..={k}")));
    }
    let g = MatrixGroup::new(m, fq.clone(), k);
    let free = k - i;
    let slots = (m * m - 1) * free;
    let q = fq.q();
    let count = q.checked_pow(slots as u32).ok_or_else(|| Error::EnumerationCapExceeded { cap: usize::MAX })?;
    let mut elements = Vec::with_capacity(count as usize);
    for code in 0..count {
        let mut x = g.identity();
        let mut c = code;
        for a in 0..m {
            for b in 0..m {
                if a == 0 && b == 0 {
                    continue;
                }
                let e = g.entry_mut(&mut x, a, b);
                for l in i..k {
                    e[l] = Fq((c % q) as u16);
                    c /= q;
                }
            }
        }
        if !g.solve_corner(&mut x) {
            unreachable!("cofactor of a matrix congruent to 1 is a unit");
        }
        elements.push(x);
    }
    Ok(FiniteGroupTable::from_elements(elements))
}

/// Filtration check on the Sylow with `V = [U, U]` and the chain
/// `K_2 ⊇ K_3 ⊇ ... ⊇ K_k = 1`.
pub fn filtration_lemma_affine(m: usize, fq: &FqConfig, k: usize, cap: usize) -> Result<FiltrationReport> {
    check_shape(m, k)?;
    if k < 2 {
        return Err(Error::TruncationTooShallow { k, needed: 2 });
    }
    let g = MatrixGroup::new(m, fq.clone(), k);
    let gens = sylow_generators(m, fq, k);
    let v = group::derived_subgroup(&g, &gens, cap)?;
    let chain = (2..=k).map(|i| congruence_subgroup(m, fq, k, i)).collect::<Result<Vec<_>>>()?;
    group::check_filtration_lemma(&g, &gens, &chain, &v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const CAP: usize = 1 << 21;

    fn fq(q: u64) -> FqConfig {
        FqConfig::new(q).unwrap()
    }

    #[test]
    fn membership_examples() {
        let g = MatrixGroup::new(2, fq(3), 3);
        assert!(g.iwahori_sylow_membership(&g.identity()));
        assert!(!g.iwahori_sylow_membership(&g.elementary(1, 0, Fq(1), 0)));
        assert!(g.iwahori_sylow_membership(&g.elementary(1, 0, Fq(1), 1)));
    }

    #[test]
    fn generators_for_sl2_f2() {
        let f = fq(2);
        let gens = sylow_generators(2, &f, 2);
        let g = MatrixGroup::new(2, f.clone(), 2);
        let (one, zero, t) = (vec![Fq(1), Fq(0)], vec![Fq(0), Fq(0)], vec![Fq(0), Fq(1)]);
        assert_eq!(gens[0], g.from_entries(&[vec![one.clone(), one.clone()], vec![zero.clone(), one.clone()]]));
        assert_eq!(gens[1], g.from_entries(&[vec![one.clone(), zero], vec![t, one]]));
        let f9 = fq(9);
        let gens = sylow_generators(3, &f9, 2);
        assert_eq!(gens.len(), 6);
        let g = MatrixGroup::new(3, f9, 2);
        assert!(gens.iter().all(|x| g.iwahori_sylow_membership(x) && g.is_special(x)));
    }

    #[test]
    fn inverse_and_determinant() {
        let g = MatrixGroup::new(3, fq(3), 3);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let x = g.random_sylow_element(&mut rng);
            assert!(g.is_special(&x) && g.iwahori_sylow_membership(&x));
            assert_eq!(g.mul(&x, &g.inv(&x)), g.identity());
        }
    }

    /// Sylow members counted over every matrix with entries in `F_q[t]/(t^k)`.
    fn brute_force_sylow_count(m: usize, q: u64, k: usize) -> usize {
        let g = MatrixGroup::new(m, fq(q), k);
        let len = m * m * k;
        (0..q.pow(len as u32))
            .filter(|code| {
                let mut c = *code;
                let x = AffineMatrix(
                    (0..len)
                        .map(|_| {
                            let d = c % q;
                            c /= q;
                            Fq(d as u16)
                        })
                        .collect(),
                );
                g.iwahori_sylow_membership(&x) && g.is_special(&x)
            })
            .count()
    }

    #[test]
    fn sylow_order_formula() {
        for (m, q, k) in [(2, 2, 1), (2, 2, 2), (2, 3, 2), (2, 2, 3)] {
            assert_eq!(sylow_order(m, q, k), brute_force_sylow_count(m, q, k) as u128, "({m},{q},{k})");
        }
        assert_eq!(sylow_order(2, 3, 3), 2187);
    }

    #[test]
    fn generation_by_closure() {
        for (m, q, k) in [(2, 3, 2), (2, 3, 3), (3, 2, 2)] {
            let r = generation_report(m, &fq(q), k, true, CAP).unwrap();
            assert!(r.generates, "({m},{q},{k})");
        }
        let r = generation_report(2, &fq(3), 2, false, CAP).unwrap();
        assert!(!r.generates && r.closure_order < r.sylow_order);
        // p = 2 does not exceed |A_{1,2}| = 2, and the two generators miss half the group
        let r = generation_report(2, &fq(2), 2, true, CAP).unwrap();
        assert_eq!((r.closure_order, r.sylow_order), (8, 16));
    }

    #[test]
    fn frattini_dimensions() {
        assert_eq!(frattini_dimension_affine(2, &fq(3), 3, CAP).unwrap(), 2);
        assert_eq!(frattini_dimension_affine(2, &fq(9), 2, CAP).unwrap(), 4);
        assert_eq!(frattini_dimension_affine(2, &fq(3), 1, CAP).unwrap(), 1);
    }

    #[test]
    fn commutator_identity() {
        assert!(commutator_identity_check(&fq(2), Fq(1), Fq(1), 1, 1, 9).unwrap());
        let f = fq(3);
        for r in f.elements() {
            for s in f.elements() {
                for a in 1..=2 {
                    for b in 1..=2 {
                        assert!(commutator_identity_check(&f, r, s, a, b, 9).unwrap());
                    }
                }
            }
        }
        assert_eq!(commutator_identity_check(&f, Fq(1), Fq(1), 3, 1, 9).err(), Some(Error::TruncationTooShallow { k: 9, needed: 10 }));
    }

    #[test]
    fn congruence_chain() {
        let f = fq(3);
        let (m, k) = (2, 3);
        let g = MatrixGroup::new(m, f.clone(), k);
        let gens = sylow_generators(m, &f, k);
        assert_eq!(congruence_subgroup(m, &f, k, k).unwrap().order(), 1);
        let k1 = congruence_subgroup(m, &f, k, 1).unwrap();
        assert_eq!(k1.order(), 3usize.pow(6));
        let k2 = congruence_subgroup(m, &f, k, 2).unwrap();
        assert!(k2.is_subset_of(&k1));
        for sub in [&k1, &k2] {
            assert!(sub.elements().iter().all(|x| g.is_special(x)));
            assert!(group::is_normalized_by(&g, sub, &gens));
        }
        // K_1 / K_2 is elementary abelian: p-th powers and commutators land in K_2
        for x in k1.elements().iter().step_by(7) {
            assert!(k2.contains(&g.pow(x, 3)));
            for y in k1.elements().iter().step_by(53) {
                assert!(k2.contains(&g.commutator(x, y)));
            }
        }
    }

    #[test]
    fn reduction_is_a_homomorphism() {
        let f = fq(3);
        let big = MatrixGroup::new(2, f.clone(), 4);
        let small = MatrixGroup::new(2, f.clone(), 3);
        let gens_big = sylow_generators(2, &f, 4);
        let gens_small = sylow_generators(2, &f, 3);
        for (a, b) in gens_big.iter().zip(&gens_small) {
            assert_eq!(&big.truncate(a, &small), b);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let x = big.random_sylow_element(&mut rng);
            let y = big.random_sylow_element(&mut rng);
            assert!(small.iwahori_sylow_membership(&big.truncate(&x, &small)));
            assert_eq!(big.truncate(&big.mul(&x, &y), &small), small.mul(&big.truncate(&x, &small), &big.truncate(&y, &small)));
        }
    }

    #[test]
    fn filtration_lemma_small() {
        let r = filtration_lemma_affine(2, &fq(3), 3, CAP).unwrap();
        assert!(r.hypothesis_holds);
        assert_eq!(r.conclusion, Some(true));
    }

    #[test]
    fn affine_report() {
        let r = verify_affine(2, &fq(3), 2, CAP).unwrap();
        assert_eq!((r.h1_blackbox, r.h1_predicted, r.group_order), (2, 2, 81));
        assert!(r.passed());
        assert_eq!(verify_affine(2, &fq(2), 2, CAP).err(), Some(Error::HypothesisViolated { p: 2, bound: 2 }));
    }
}
