//! The height-truncated unipotent group `exp(n+ / n+_{>H})` over `F_q`, with
//! the group law given by the Baker-Campbell-Hausdorff series. Valid for
//! `p > H`, where the series has `p`-integral coefficients.

use std::time::Instant;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bch::BchSeries;
use crate::error::{Error, Result};
use crate::field::{Fq, FqConfig, PrimeField};
use crate::gcm::{classify, GcmClass, GeneralizedCartanMatrix};
use crate::group::{self, GroupOracle};
use crate::lie::GradedLieAlgebra;
use crate::roots::{positive_real_roots_up_to_height, root_status, RootStatus, RootVector};

/// Coordinates in the graded basis of the owning algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnipotentElement(pub Vec<Fq>);

#[derive(Debug, Clone)]
pub struct UnipotentGroup {
    fq: FqConfig,
    lie: GradedLieAlgebra<PrimeField>,
    heights: Vec<usize>,
    structure: Vec<Vec<Vec<(usize, Fq)>>>,
    /// Standard factorization of each Lyndon word over `{X, Y}` and its BCH coefficient.
    bch_terms: Vec<(Option<(usize, usize)>, u8, Fq)>,
}

impl UnipotentGroup {
    pub fn new(gcm: &GeneralizedCartanMatrix, fq: FqConfig, cutoff: usize) -> Result<Self> {
        let p = fq.p();
        if p as usize <= cutoff {
            return Err(Error::CharacteristicTooSmall { p, cutoff });
        }
        let fp = PrimeField::new(p)?;
        let lie = GradedLieAlgebra::build(gcm, cutoff, fp)?;
        let d = lie.dim();
        let structure = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| lie.bracket_terms(i, j).iter().map(|(k, c)| (*k, fq.from_int(*c as i64))).collect())
                    .collect()
            })
            .collect();
        let series = BchSeries::new(cutoff);
        let coeffs = series.reduce(&fp)?;
        let bch_terms = (0..series.basis.len())
            .map(|i| (series.basis.factors[i], series.basis.words[i][0], fq.from_int(coeffs[i] as i64)))
            .collect();
        let heights = lie.basis().iter().map(|b| b.height).collect();
        Ok(Self { fq, lie, heights, structure, bch_terms })
    }

    pub fn field(&self) -> &FqConfig {
        &self.fq
    }

    pub fn algebra(&self) -> &GradedLieAlgebra<PrimeField> {
        &self.lie
    }

    pub fn dim(&self) -> usize {
        self.heights.len()
    }

    pub fn cutoff(&self) -> usize {
        self.lie.cutoff()
    }

    /// `q^dim`.
    pub fn order(&self) -> u128 {
        (self.fq.q() as u128).pow(self.dim() as u32)
    }

    pub fn bracket(&self, x: &[Fq], y: &[Fq]) -> Vec<Fq> {
        let f = &self.fq;
        let mut out = vec![Fq(0); x.len()];
        for (i, &a) in x.iter().enumerate() {
            if a.0 == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b.0 == 0 {
                    continue;
                }
                let c = f.mul(a, b);
                for &(k, s) in &self.structure[i][j] {
                    out[k] = f.add(out[k], f.mul(c, s));
                }
            }
        }
        out
    }

    /// `log(exp x exp y)`, truncated at the cutoff.
    pub fn bch_multiply(&self, x: &UnipotentElement, y: &UnipotentElement) -> UnipotentElement {
        let f = &self.fq;
        let mut values: Vec<Vec<Fq>> = Vec::with_capacity(self.bch_terms.len());
        let mut out = vec![Fq(0); self.dim()];
        for &(factors, first, c) in &self.bch_terms {
            let v = match factors {
                None if first == 0 => x.0.clone(),
                None => y.0.clone(),
                Some((a, b)) => self.bracket(&values[a], &values[b]),
            };
            if c.0 != 0 {
                for (o, vi) in out.iter_mut().zip(&v) {
                    *o = f.add(*o, f.mul(c, *vi));
                }
            }
            values.push(v);
        }
        UnipotentElement(out)
    }

    /// `u_gamma(a)`: coefficient `a` on the basis vector of degree `gamma`.
    pub fn root_group_element(&self, gamma: &RootVector, a: Fq) -> Result<UnipotentElement> {
        let positive_real = gamma.is_positive() && matches!(root_status(self.lie.gcm(), gamma)?, RootStatus::Real { .. });
        if !positive_real {
            return Err(Error::NotPositiveRealRoot(gamma.to_string()));
        }
        let h = gamma.height();
        if h > self.cutoff() as i64 {
            return Err(Error::HeightExceedsCutoff { height: h, cutoff: self.cutoff() });
        }
        let idx = self.lie.indices_of_root(gamma);
        debug_assert_eq!(idx.len(), 1);
        let mut v = vec![Fq(0); self.dim()];
        v[idx[0]] = a;
        Ok(UnipotentElement(v))
    }

    /// `u_{alpha_s}(v_l)` over all simple roots and basis vectors of `F_q / F_p`.
    pub fn simple_root_generators(&self) -> Vec<UnipotentElement> {
        let n = self.lie.gcm().size();
        let mut out = Vec::new();
        for s in 0..n {
            for v in self.fq.basis() {
                out.push(self.root_group_element(&RootVector::simple(n, s), v).expect("simple roots are real"));
            }
        }
        out
    }

    /// `u_gamma(v_l)` for the non-simple positive real roots of height at most the cutoff.
    pub fn non_simple_real_root_generators(&self) -> Vec<UnipotentElement> {
        let mut out = Vec::new();
        for gamma in positive_real_roots_up_to_height(self.lie.gcm(), self.cutoff()) {
            if gamma.height() < 2 {
                continue;
            }
            for v in self.fq.basis() {
                out.push(self.root_group_element(&gamma, v).expect("enumerated roots are real"));
            }
        }
        out
    }

    /// `x` lies in `U_i`, the elements supported in heights at least `i`.
    pub fn in_filtration(&self, x: &UnipotentElement, i: usize) -> bool {
        x.0.iter().zip(&self.heights).all(|(c, &h)| h >= i || c.0 == 0)
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> UnipotentElement {
        let q = self.fq.q() as u16;
        UnipotentElement((0..self.dim()).map(|_| Fq(rng.gen_range(0..q))).collect())
    }

    /// Random element of `U_i`.
    pub fn random_filtration_element<R: Rng>(&self, i: usize, rng: &mut R) -> UnipotentElement {
        let mut x = self.random_element(rng);
        for (c, &h) in x.0.iter_mut().zip(&self.heights) {
            if h < i {
                *c = Fq(0);
            }
        }
        x
    }

    /// Projection onto the height-one coordinates.
    pub fn abelian_part(&self, x: &UnipotentElement) -> Vec<Fq> {
        x.0.iter().zip(&self.heights).filter(|(_, &h)| h == 1).map(|(c, _)| *c).collect()
    }

    /// `r * dim(n / [n, n])`.
    pub fn frattini_dimension_linear(&self) -> u32 {
        self.fq.r() * self.lie.abelianization_dim() as u32
    }
}

impl GroupOracle for UnipotentGroup {
    type Elem = UnipotentElement;

    fn identity(&self) -> UnipotentElement {
        UnipotentElement(vec![Fq(0); self.dim()])
    }

    fn mul(&self, a: &UnipotentElement, b: &UnipotentElement) -> UnipotentElement {
        self.bch_multiply(a, b)
    }

    fn inv(&self, a: &UnipotentElement) -> UnipotentElement {
        UnipotentElement(a.0.iter().map(|&c| self.fq.neg(c)).collect())
    }
}

/// Results of the Frattini verification on one finite model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub model: String,
    pub note: String,
    pub gcm: Vec<Vec<i64>>,
    pub q: u64,
    #[serde(rename = "H", skip_serializing_if = "Option::is_none", default)]
    pub h: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<usize>,
    pub group_order: u64,
    pub h1_blackbox: u32,
    pub h1_linear: Option<u32>,
    pub h1_predicted: u32,
    pub frattini_eq_derived: bool,
    pub thm_ii_lhs_order: Option<u64>,
    pub thm_ii_rhs_order: Option<u64>,
    /// Whether the two orders above are required to agree (finite type only).
    pub thm_ii_asserted: bool,
    pub generators_generate: bool,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    /// All asserted items hold.
    pub fn passed(&self) -> bool {
        self.h1_blackbox == self.h1_predicted
            && self.h1_linear.map_or(true, |d| d == self.h1_predicted)
            && self.frattini_eq_derived
            && self.generators_generate
            && (!self.thm_ii_asserted || self.thm_ii_lhs_order == self.thm_ii_rhs_order)
    }

    /// The report with its timing removed, for reproducibility comparisons.
    pub fn without_timing(&self) -> Self {
        Self { elapsed_ms: 0, ..self.clone() }
    }
}

pub const DEFAULT_CAP: usize = 1 << 21;

/// Hypothesis of the Frattini theorem: `p` exceeds every `|A_{s,t}|`, `s != t`.
pub fn check_hypothesis(gcm: &GeneralizedCartanMatrix, p: u64) -> Result<()> {
    let bound = gcm.max_off_diagonal();
    if p as i64 <= bound {
        return Err(Error::HypothesisViolated { p, bound });
    }
    Ok(())
}

/// Computes the Frattini quotient of the BCH model black-box and by linear
/// algebra, compares Frattini and derived subgroups, the non-simple
/// real-root subgroup, and whether the simple root groups generate.
pub fn verify_theorem1(gcm: &GeneralizedCartanMatrix, fq: &FqConfig, cutoff: usize, cap: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    if cutoff < 2 {
        return Err(Error::InvalidParameter("the height cutoff must be at least 2".into()));
    }
    check_hypothesis(gcm, fq.p())?;
    let g = UnipotentGroup::new(gcm, fq.clone(), cutoff)?;
    let p = fq.p();
    let gens = g.simple_root_generators();
    let data = group::frattini_quotient_dimension(&g, &gens, p, cap)?;
    let derived = group::derived_subgroup(&g, &gens, cap)?;
    let frattini_eq_derived = derived.same_set(&data.frattini);
    let rhs = group::closure(&g, &g.non_simple_real_root_generators(), cap)?;
    let finite = classify(gcm).sorted_classes().iter().all(|c| *c == GcmClass::Finite);
    Ok(VerificationReport {
        model: "bch".into(),
        note: "truncated BCH model exp(n+ / n+_{>H}) over F_q, valid for p > H".into(),
        gcm: gcm.entries().to_vec(),
        q: fq.q(),
        h: Some(cutoff),
        m: None,
        k: None,
        group_order: data.group_order as u64,
        h1_blackbox: data.dimension,
        h1_linear: Some(g.frattini_dimension_linear()),
        h1_predicted: gcm.size() as u32 * fq.r(),
        frattini_eq_derived,
        thm_ii_lhs_order: Some(data.frattini.order() as u64),
        thm_ii_rhs_order: Some(rhs.order() as u64),
        thm_ii_asserted: finite,
        generators_generate: data.group_order == g.order(),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}
