//! Verification campaigns: a JSON list of model instances and checks, run in
//! a work pool, with one result per instance and check.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::affine::{self, MatrixGroup};
use crate::error::{Error, Result};
use crate::field::{FqConfig, PrimeField, Rationals};
use crate::gcm::GeneralizedCartanMatrix;
use crate::group::{self, GroupOracle};
use crate::lie::GradedLieAlgebra;
use crate::roots::{self, RootStatus, RootTag, RootVector, WeylWord};
use crate::unipotent::{self, UnipotentGroup, DEFAULT_CAP};

pub const DEFAULT_CAMPAIGN: &str = include_str!("../campaigns/default.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    Bch,
    Affine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Theorem1,
    CorLinear,
    Generation,
    Commutator,
    Filtration,
    Tits,
    Roots,
    Lie,
    Properties,
}

impl Check {
    fn applies_to(self, model: Model) -> bool {
        match self {
            Check::Theorem1 | Check::Properties => true,
            Check::Roots | Check::Lie => model == Model::Bch,
            Check::CorLinear | Check::Generation | Check::Commutator | Check::Filtration | Check::Tits => model == Model::Affine,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub model: Model,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gcm: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub q: u64,
    #[serde(rename = "H", default, skip_serializing_if = "Option::is_none")]
    pub h: Option<usize>,
    pub checks: Vec<Check>,
}

fn default_seed() -> u64 {
    1
}

fn default_samples() -> usize {
    1000
}

fn default_cap() -> usize {
    DEFAULT_CAP
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignSpec {
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_cap")]
    pub cap: usize,
    /// Randomized cases per sampled property.
    #[serde(default = "default_samples")]
    pub samples: usize,
    pub instances: Vec<InstanceSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    /// Computed and archived, not asserted.
    Report,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub instance: usize,
    pub check: Check,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub details: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub campaign: CampaignSpec,
    pub results: Vec<CheckResult>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub reported: usize,
}

impl CampaignReport {
    pub fn exit_code(&self) -> i32 {
        if self.failed > 0 {
            1
        } else {
            0
        }
    }

    /// Results with wall-clock fields removed.
    pub fn normalized_results(&self) -> Vec<CheckResult> {
        self.results.iter().map(|r| CheckResult { details: strip_timing(&r.details), ..r.clone() }).collect()
    }
}

fn strip_timing(v: &Value) -> Value {
    match v {
        Value::Object(map) => Value::Object(map.iter().filter(|(k, _)| *k != "elapsed_ms").map(|(k, v)| (k.clone(), strip_timing(v))).collect()),
        Value::Array(a) => Value::Array(a.iter().map(strip_timing).collect()),
        other => other.clone(),
    }
}

pub fn parse_campaign(text: &str) -> Result<CampaignSpec> {
    let spec: CampaignSpec = serde_json::from_str(text).map_err(|e| Error::InvalidParameter(format!("campaign: {e}")))?;
    validate(&spec)?;
    Ok(spec)
}

/// Structural validation; mathematical preconditions are handled per check.
pub fn validate(spec: &CampaignSpec) -> Result<()> {
    if spec.cap == 0 {
        return Err(Error::InvalidParameter("cap must be positive".into()));
    }
    for (i, inst) in spec.instances.iter().enumerate() {
        let bad = |msg: &str| Error::InvalidParameter(format!("instance {i}: {msg}"));
        FqConfig::new(inst.q).map_err(|e| bad(&e.to_string()))?;
        match inst.model {
            Model::Bch => {
                let g = inst.gcm.clone().ok_or_else(|| bad("model bch needs \"gcm\""))?;
                GeneralizedCartanMatrix::new(g).map_err(|e| bad(&e.to_string()))?;
                if inst.h.map_or(true, |h| h == 0) {
                    return Err(bad("model bch needs \"H\" >= 1"));
                }
            }
            Model::Affine => {
                if inst.m.map_or(true, |m| m < 2) || inst.k.map_or(true, |k| k == 0) {
                    return Err(bad("model affine needs \"m\" >= 2 and \"k\" >= 1"));
                }
            }
        }
        if let Some(c) = inst.checks.iter().find(|c| !c.applies_to(inst.model)) {
            return Err(bad(&format!("check {c:?} does not apply to model {:?}", inst.model)));
        }
    }
    Ok(())
}

fn error_name(e: &Error) -> &'static str {
    match e {
        Error::CharacteristicTooSmall { .. } => "CharacteristicTooSmall",
        Error::HypothesisViolated { .. } => "HypothesisViolated",
        Error::EnumerationCapExceeded { .. } => "EnumerationCapExceeded",
        Error::TruncationTooShallow { .. } => "TruncationTooShallow",
        Error::HeightExceedsCutoff { .. } => "HeightExceedsCutoff",
        Error::NotAPGroup { .. } => "NotAPGroup",
        _ => "Error",
    }
}

fn outcome(instance: usize, check: Check, result: Result<(Status, Value)>) -> CheckResult {
    match result {
        Ok((status, details)) => {
            let reason = details.get("not_asserted").and_then(Value::as_str).map(str::to_string);
            CheckResult { instance, check, status, reason, details }
        }
        Err(e) => {
            let status = match e {
                Error::CharacteristicTooSmall { .. }
                | Error::HypothesisViolated { .. }
                | Error::EnumerationCapExceeded { .. }
                | Error::TruncationTooShallow { .. } => Status::Skipped,
                _ => Status::Fail,
            };
            CheckResult { instance, check, status, reason: Some(format!("{}: {e}", error_name(&e))), details: Value::Null }
        }
    }
}

fn pass_if(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

/// Runs every check of every instance; results are in instance order, then
/// check order.
pub fn run_campaign(spec: &CampaignSpec) -> CampaignReport {
    let tasks: Vec<(usize, Check)> = spec.instances.iter().enumerate().flat_map(|(i, inst)| inst.checks.iter().map(move |c| (i, *c))).collect();
    let results: Vec<CheckResult> = tasks.par_iter().map(|&(i, c)| outcome(i, c, run_check(spec, i, c))).collect();
    let count = |s: Status| results.iter().filter(|r| r.status == s).count();
    CampaignReport {
        campaign: spec.clone(),
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        skipped: count(Status::Skipped),
        reported: count(Status::Report),
        results,
    }
}

fn run_check(spec: &CampaignSpec, index: usize, check: Check) -> Result<(Status, Value)> {
    let inst = &spec.instances[index];
    let fq = FqConfig::new(inst.q)?;
    let cap = spec.cap;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed ^ ((index as u64) << 32) ^ check as u64);
    match inst.model {
        Model::Bch => {
            let gcm = GeneralizedCartanMatrix::new(inst.gcm.clone().expect("validated"))?;
            let h = inst.h.expect("validated");
            match check {
                Check::Theorem1 => {
                    let r = unipotent::verify_theorem1(&gcm, &fq, h, cap)?;
                    Ok((pass_if(r.passed()), serde_json::to_value(&r).expect("serializable")))
                }
                Check::Roots => bch_roots(&gcm, h, spec.samples, &mut rng),
                Check::Lie => bch_lie(&gcm, h, &fq),
                Check::Properties => bch_properties(&gcm, h, &fq, spec.samples, &mut rng),
                _ => unreachable!("validated"),
            }
        }
        Model::Affine => {
            let (m, k) = (inst.m.expect("validated"), inst.k.expect("validated"));
            match check {
                Check::Theorem1 => {
                    let r = affine::verify_affine(m, &fq, k, cap)?;
                    Ok((pass_if(r.passed()), serde_json::to_value(&r).expect("serializable")))
                }
                Check::CorLinear => {
                    if k < 2 {
                        return Err(Error::TruncationTooShallow { k, needed: 2 });
                    }
                    unipotent::check_hypothesis(&affine::affine_gcm(m), fq.p())?;
                    let d = affine::frattini_dimension_affine(m, &fq, k, cap)?;
                    let predicted = m as u32 * fq.r();
                    Ok((pass_if(d == predicted), json!({ "h1_blackbox": d, "h1_predicted": predicted })))
                }
                Check::Generation => affine_generation(m, &fq, k, cap),
                Check::Commutator => affine_commutator(&fq, k),
                Check::Filtration => {
                    let r = affine::filtration_lemma_affine(m, &fq, k, cap)?;
                    let mut details = serde_json::to_value(&r).expect("serializable");
                    if !r.hypothesis_holds {
                        details["not_asserted"] = json!("filtration hypothesis fails");
                        return Ok((Status::Report, details));
                    }
                    Ok((pass_if(r.conclusion == Some(true)), details))
                }
                Check::Tits => {
                    let r = affine::verify_tits_sl(m, &fq, cap)?;
                    Ok((pass_if(r.all()), serde_json::to_value(r).expect("serializable")))
                }
                Check::Properties => affine_properties(m, &fq, k, spec.samples, &mut rng),
                _ => unreachable!("validated"),
            }
        }
    }
}

fn bch_roots(gcm: &GeneralizedCartanMatrix, h: usize, samples: usize, rng: &mut ChaCha8Rng) -> Result<(Status, Value)> {
    use rand::Rng;
    let dump = roots::root_dump(gcm, h);
    let real_by_orbit = roots::positive_real_roots_up_to_height(gcm, h);
    let real_in_dump: Vec<RootVector> = dump.iter().filter(|r| r.status == RootTag::Real).map(|r| RootVector(r.coords.clone())).collect();
    let mut ok = real_by_orbit.len() == real_in_dump.len() && real_by_orbit.iter().all(|r| real_in_dump.contains(r));
    // status is constant on W-orbits
    let n = gcm.size();
    let mut failures = 0;
    for _ in 0..samples {
        let alpha = RootVector((0..n).map(|_| rng.gen_range(-3..=3)).collect());
        if alpha.is_zero() {
            continue;
        }
        let w = WeylWord((0..rng.gen_range(0..6)).map(|_| rng.gen_range(0..n)).collect());
        let image = roots::weyl_apply(gcm, &w, &alpha)?;
        let tag = |s: RootStatus| s.tag();
        if tag(roots::root_status(gcm, &alpha)?) != tag(roots::root_status(gcm, &image)?) {
            failures += 1;
        }
    }
    ok &= failures == 0;
    let imaginary = dump.iter().filter(|r| r.status == RootTag::Imaginary).count();
    Ok((
        pass_if(ok),
        json!({ "positive_roots": dump.len(), "imaginary": imaginary, "w_invariance_cases": samples, "w_invariance_failures": failures, "roots": dump }),
    ))
}

fn bch_lie(gcm: &GeneralizedCartanMatrix, h: usize, fq: &FqConfig) -> Result<(Status, Value)> {
    let lie = GradedLieAlgebra::build(gcm, h, Rationals)?;
    let positive = roots::positive_roots_up_to_height(gcm, h);
    let mut support: Vec<RootVector> = lie.basis().iter().map(|b| b.root.clone()).collect();
    support.dedup();
    let support_ok = support.len() == positive.len() && positive.iter().all(|(r, _)| support.contains(r));
    let real_ok = positive.iter().filter(|(_, t)| *t == RootTag::Real).all(|(r, _)| lie.root_multiplicity(r) == Ok(1));
    let jacobi_ok = lie.jacobi_violation().is_none();
    let mut details = json!({
        "dimensions": lie.dimensions(),
        "support_matches_roots": support_ok,
        "real_multiplicity_one": real_ok,
        "jacobi": jacobi_ok,
    });
    let mut ok = support_ok && real_ok && jacobi_ok;
    if fq.p() as usize > h {
        let modp = GradedLieAlgebra::build(gcm, h, PrimeField::new(fq.p())?)?;
        let same = modp.dimensions() == lie.dimensions();
        details["dimensions_mod_p_agree"] = json!(same);
        ok &= same;
    }
    Ok((pass_if(ok), details))
}

fn bch_properties(gcm: &GeneralizedCartanMatrix, h: usize, fq: &FqConfig, samples: usize, rng: &mut ChaCha8Rng) -> Result<(Status, Value)> {
    let g = UnipotentGroup::new(gcm, fq.clone(), h)?;
    let pool: Vec<_> = (0..64).map(|_| g.random_element(rng)).collect();
    let axioms = group::sample_group_axioms(&g, &pool, samples, rng);
    let mut exponent = 0;
    let mut normality = 0;
    let mut commutators = 0;
    let mut abelian_quotient = 0;
    let f = g.field();
    for n in 0..samples {
        let x = g.random_element(rng);
        let y = g.random_element(rng);
        if g.pow(&x, f.p()) != g.identity() {
            exponent += 1;
        }
        let i = 1 + n % h;
        let j = 1 + (n / h) % h;
        let u = g.random_filtration_element(i, rng);
        let v = g.random_filtration_element(j, rng);
        if !g.in_filtration(&g.conjugate(&x, &u), i) {
            normality += 1;
        }
        if !g.in_filtration(&g.commutator(&u, &v), i + j) {
            commutators += 1;
        }
        let sum: Vec<_> = g.abelian_part(&x).iter().zip(g.abelian_part(&y)).map(|(a, b)| f.add(*a, b)).collect();
        if g.abelian_part(&g.mul(&x, &y)) != sum {
            abelian_quotient += 1;
        }
    }
    let total = axioms + exponent + normality + commutators + abelian_quotient;
    Ok((
        pass_if(total == 0),
        json!({
            "cases": samples,
            "group_axiom_failures": axioms,
            "exponent_p_failures": exponent,
            "filtration_normality_failures": normality,
            "filtration_commutator_failures": commutators,
            "abelian_quotient_failures": abelian_quotient,
            "abelian_quotient_order": (f.q() as u128).pow(gcm.size() as u32),
        }),
    ))
}

fn affine_generation(m: usize, fq: &FqConfig, k: usize, cap: usize) -> Result<(Status, Value)> {
    let with = affine::generation_report(m, fq, k, true, cap)?;
    let without = affine::generation_report(m, fq, k, false, cap)?;
    let details = json!({ "with_affine_generator": with, "without_affine_generator": without });
    match unipotent::check_hypothesis(&affine::affine_gcm(m), fq.p()) {
        Ok(()) => Ok((pass_if(with.generates && !without.generates), details)),
        Err(e) => Ok((Status::Report, json!({ "not_asserted": format!("{}: {e}", error_name(&e)), "observed": details }))),
    }
}

fn affine_commutator(fq: &FqConfig, big_k: usize) -> Result<(Status, Value)> {
    let max_exp = (big_k.saturating_sub(1)) / 3;
    if max_exp == 0 {
        return Err(Error::TruncationTooShallow { k: big_k, needed: 4 });
    }
    let mut cases = 0;
    let mut failures = 0;
    for r in fq.elements() {
        for s in fq.elements() {
            for a in 1..=max_exp {
                for b in 1..=max_exp {
                    cases += 1;
                    if !affine::commutator_identity_check(fq, r, s, a, b, big_k)? {
                        failures += 1;
                    }
                }
            }
        }
    }
    Ok((pass_if(failures == 0), json!({ "K": big_k, "max_exponent": max_exp, "cases": cases, "failures": failures })))
}

fn affine_properties(m: usize, fq: &FqConfig, k: usize, samples: usize, rng: &mut ChaCha8Rng) -> Result<(Status, Value)> {
    let g = MatrixGroup::new(m, fq.clone(), k);
    let pool: Vec<_> = (0..64).map(|_| g.random_sylow_element(rng)).collect();
    let axioms = group::sample_group_axioms(&g, &pool, samples, rng);
    let mut membership = 0;
    let mut reduction = 0;
    let mut congruence = 0;
    let smaller = (k > 1).then(|| MatrixGroup::new(m, fq.clone(), k - 1));
    for n in 0..samples {
        let x = g.random_sylow_element(rng);
        let y = g.random_sylow_element(rng);
        let xy = g.mul(&x, &y);
        if !(g.iwahori_sylow_membership(&xy) && g.is_special(&xy)) {
            membership += 1;
        }
        if let Some(s) = &smaller {
            if g.truncate(&xy, s) != s.mul(&g.truncate(&x, s), &g.truncate(&y, s)) {
                reduction += 1;
            }
        }
        // K_i is normal in the Sylow
        let i = 1 + n % k;
        let z = random_congruence_element(&g, i, rng);
        if !g.in_congruence(&g.conjugate(&x, &z), i) {
            congruence += 1;
        }
    }
    let total = axioms + membership + reduction + congruence;
    Ok((
        pass_if(total == 0),
        json!({
            "cases": samples,
            "group_axiom_failures": axioms,
            "sylow_closure_failures": membership,
            "reduction_homomorphism_failures": reduction,
            "congruence_normality_failures": congruence,
        }),
    ))
}

fn random_congruence_element(g: &MatrixGroup, i: usize, rng: &mut ChaCha8Rng) -> affine::AffineMatrix {
    // products of elementary matrices 1 + a t^i E_{a,b} lie in K_i
    use rand::Rng;
    let q = g.field().q() as u16;
    let mut z = g.identity();
    for _ in 0..4 {
        let (a, b) = (rng.gen_range(0..g.m()), rng.gen_range(0..g.m()));
        if a == b {
            continue;
        }
        let e = g.elementary(a, b, crate::field::Fq(rng.gen_range(0..q)), i);
        z = g.mul(&z, &e);
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_campaign_parses() {
        let spec = parse_campaign(DEFAULT_CAMPAIGN).unwrap();
        assert!(!spec.instances.is_empty());
    }

    #[test]
    fn skips_name_the_precondition() {
        let spec = parse_campaign(
            r#"{"seed": 3, "samples": 20, "instances": [
                {"model": "bch", "gcm": [[2,-1],[-1,2]], "q": 4, "H": 3, "checks": ["theorem1"]},
                {"model": "affine", "m": 2, "k": 2, "q": 2, "checks": ["theorem1"]},
                {"model": "bch", "gcm": [[2,-1],[-1,2]], "q": 5, "H": 3, "checks": ["theorem1", "roots", "lie", "properties"]}
            ]}"#,
        )
        .unwrap();
        let report = run_campaign(&spec);
        assert_eq!(report.results[0].status, Status::Skipped);
        assert!(report.results[0].reason.as_deref().unwrap().starts_with("CharacteristicTooSmall"));
        assert_eq!(report.results[1].status, Status::Skipped);
        assert!(report.results[1].reason.as_deref().unwrap().starts_with("HypothesisViolated"));
        assert!(report.results[2..].iter().all(|r| r.status == Status::Pass), "{:?}", report.results);
        assert_eq!(report.exit_code(), 0);
    }

    #[test]
    fn structural_errors() {
        assert!(parse_campaign(r#"{"instances": [{"model": "bch", "q": 5, "H": 3, "checks": []}]}"#).is_err());
        assert!(parse_campaign(r#"{"instances": [{"model": "bch", "gcm": [[2]], "q": 6, "H": 3, "checks": []}]}"#).is_err());
        assert!(parse_campaign(r#"{"instances": [{"model": "bch", "gcm": [[2]], "q": 5, "H": 3, "checks": ["tits"]}]}"#).is_err());
    }

    #[test]
    fn normalization_drops_timing() {
        let v = json!({"a": 1, "elapsed_ms": 5, "b": {"elapsed_ms": 3, "c": [1]}});
        assert_eq!(strip_timing(&v), json!({"a": 1, "b": {"c": [1]}}));
    }
}
