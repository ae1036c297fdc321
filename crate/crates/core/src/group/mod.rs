//! A small finite-group engine over black-box multiplication oracles.
//!
//! Subgroups are enumerated by breadth-first closure from generators. Normal
//! closures, derived subgroups and Frattini subgroups are computed from
//! generating sets, and indices by enumerating cosets with membership tests,
//! so the ambient group never has to be listed.

mod tits;

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};

pub use tits::{verify_tits_axioms, TitsReport};

/// Group law on canonical element values.
pub trait GroupOracle: Sync {
    type Elem: Clone + Eq + Hash + Debug + Send + Sync;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.identity();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `a b a^-1 b^-1`.
    fn commutator(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(&ab, &self.inv(&ba))
    }

    /// `g a g^-1`.
    fn conjugate(&self, g: &Self::Elem, a: &Self::Elem) -> Self::Elem {
        self.mul(&self.mul(g, a), &self.inv(g))
    }

    fn order(&self, a: &Self::Elem) -> u64 {
        let id = self.identity();
        let mut x = a.clone();
        let mut n = 1;
        while x != id {
            x = self.mul(&x, a);
            n += 1;
        }
        n
    }
}

/// An enumerated subgroup in deterministic insertion order, with the
/// generators it was closed from.
#[derive(Debug, Clone)]
pub struct FiniteGroupTable<E> {
    elements: Vec<E>,
    index: HashMap<E, usize>,
    generators: Vec<E>,
}

impl<E: Clone + Eq + Hash + Debug> FiniteGroupTable<E> {
    pub fn trivial(identity: E) -> Self {
        let index = [(identity.clone(), 0)].into_iter().collect();
        Self { elements: vec![identity], index, generators: Vec::new() }
    }

    /// Wraps a set already known to be a subgroup; its elements serve as generators.
    pub fn from_elements(elements: Vec<E>) -> Self {
        let mut table = Self { elements: Vec::new(), index: HashMap::new(), generators: Vec::new() };
        for e in elements {
            if !table.index.contains_key(&e) {
                table.index.insert(e.clone(), table.elements.len());
                table.elements.push(e);
            }
        }
        table.generators = table.elements.clone();
        table
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn generators(&self) -> &[E] {
        &self.generators
    }

    pub fn contains(&self, e: &E) -> bool {
        self.index.contains_key(e)
    }

    pub fn position(&self, e: &E) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.elements.iter().all(|e| other.contains(e))
    }

    pub fn same_set(&self, other: &Self) -> bool {
        self.order() == other.order() && self.is_subset_of(other)
    }

    /// Adds generators and extends the closure; `Ok(false)` if all of them
    /// were already members.
    pub fn extend<G: GroupOracle<Elem = E>>(&mut self, oracle: &G, new: &[E], cap: usize) -> Result<bool> {
        let fresh: Vec<E> = new.iter().filter(|g| !self.contains(g)).cloned().collect();
        if fresh.is_empty() {
            return Ok(false);
        }
        let old_len = self.elements.len();
        // old elements are already closed under the old generators
        for i in 0..old_len {
            for g in &fresh {
                let x = oracle.mul(&self.elements[i], g);
                self.push(x, cap)?;
            }
        }
        self.generators.extend(fresh);
        let mut i = old_len;
        while i < self.elements.len() {
            for j in 0..self.generators.len() {
                let x = oracle.mul(&self.elements[i], &self.generators[j]);
                self.push(x, cap)?;
            }
            i += 1;
        }
        Ok(true)
    }

    fn push(&mut self, x: E, cap: usize) -> Result<()> {
        if !self.index.contains_key(&x) {
            if self.elements.len() >= cap {
                return Err(Error::EnumerationCapExceeded { cap });
            }
            self.index.insert(x.clone(), self.elements.len());
            self.elements.push(x);
        }
        Ok(())
    }
}

/// Subgroup generated by `generators`, closed under right multiplication.
pub fn closure<G: GroupOracle>(oracle: &G, generators: &[G::Elem], cap: usize) -> Result<FiniteGroupTable<G::Elem>> {
    if cap == 0 {
        return Err(Error::InvalidParameter("enumeration cap must be at least 1".into()));
    }
    let mut table = FiniteGroupTable::trivial(oracle.identity());
    table.extend(oracle, generators, cap)?;
    Ok(table)
}

/// Normal closure of `seeds` in the group generated by `ambient`.
pub fn normal_closure<G: GroupOracle>(
    oracle: &G,
    ambient: &[G::Elem],
    seeds: &[G::Elem],
    cap: usize,
) -> Result<FiniteGroupTable<G::Elem>> {
    let mut table = closure(oracle, seeds, cap)?;
    let mut checked = 0;
    while checked < table.generators.len() {
        let h = table.generators[checked].clone();
        let conjugates: Vec<G::Elem> = ambient.iter().map(|g| oracle.conjugate(g, &h)).collect();
        table.extend(oracle, &conjugates, cap)?;
        checked += 1;
    }
    Ok(table)
}

fn pairwise_commutators<G: GroupOracle>(oracle: &G, generators: &[G::Elem]) -> Vec<G::Elem> {
    let mut out = Vec::new();
    for i in 0..generators.len() {
        for j in i + 1..generators.len() {
            out.push(oracle.commutator(&generators[i], &generators[j]));
        }
    }
    out
}

/// `[G, G]` for `G = <generators>`.
pub fn derived_subgroup<G: GroupOracle>(oracle: &G, generators: &[G::Elem], cap: usize) -> Result<FiniteGroupTable<G::Elem>> {
    normal_closure(oracle, generators, &pairwise_commutators(oracle, generators), cap)
}

/// `G^p [G, G]` for `G = <generators>`; this is the Frattini subgroup when
/// `G` is a `p`-group.
pub fn frattini_subgroup<G: GroupOracle>(
    oracle: &G,
    generators: &[G::Elem],
    p: u64,
    cap: usize,
) -> Result<FiniteGroupTable<G::Elem>> {
    let mut seeds: Vec<G::Elem> = generators.iter().map(|g| oracle.pow(g, p)).collect();
    seeds.extend(pairwise_commutators(oracle, generators));
    normal_closure(oracle, generators, &seeds, cap)
}

/// Right-coset representatives of a normal subgroup `n` in `<generators>`.
pub fn coset_representatives<G: GroupOracle>(
    oracle: &G,
    generators: &[G::Elem],
    n: &FiniteGroupTable<G::Elem>,
    cap: usize,
) -> Result<Vec<G::Elem>> {
    let mut reps = vec![oracle.identity()];
    let mut rep_inverses = vec![oracle.identity()];
    let mut i = 0;
    while i < reps.len() {
        for g in generators {
            let x = oracle.mul(&reps[i], g);
            if !rep_inverses.iter().any(|ri| n.contains(&oracle.mul(&x, ri))) {
                if reps.len() >= cap {
                    return Err(Error::EnumerationCapExceeded { cap });
                }
                rep_inverses.push(oracle.inv(&x));
                reps.push(x);
            }
        }
        i += 1;
    }
    Ok(reps)
}

/// `log_p n` when `n` is a power of `p`.
pub fn log_p(n: u128, p: u64) -> Option<u32> {
    let mut m = n;
    let mut e = 0;
    while m > 1 {
        if m % p as u128 != 0 {
            return None;
        }
        m /= p as u128;
        e += 1;
    }
    (m == 1).then_some(e)
}

#[derive(Debug, Clone)]
pub struct FrattiniData<E> {
    pub frattini: FiniteGroupTable<E>,
    pub index: usize,
    pub dimension: u32,
    /// `|Phi| * [G : Phi]`.
    pub group_order: u128,
}

/// Frattini subgroup of the `p`-group `<generators>` and `log_p [G : Phi]`.
///
/// Every element order met along the way (the generators and a sample of
/// `Phi` and coset representatives) is checked to be a power of `p`.
pub fn frattini_quotient_dimension<G: GroupOracle>(
    oracle: &G,
    generators: &[G::Elem],
    p: u64,
    cap: usize,
) -> Result<FrattiniData<G::Elem>> {
    let not_p = |reason: String| Error::NotAPGroup { p, reason };
    for g in generators {
        if log_p(oracle.order(g) as u128, p).is_none() {
            return Err(not_p(format!("a generator has order {}", oracle.order(g))));
        }
    }
    let frattini = frattini_subgroup(oracle, generators, p, cap)?;
    let reps = coset_representatives(oracle, generators, &frattini, cap)?;
    let step = (frattini.order() / 1000).max(1);
    for x in frattini.elements().iter().step_by(step).chain(reps.iter()) {
        let o = oracle.order(x);
        if log_p(o as u128, p).is_none() {
            return Err(not_p(format!("an element has order {o}")));
        }
    }
    let index = reps.len();
    let dimension = log_p(index as u128, p).ok_or_else(|| not_p(format!("index {index} of the Frattini subgroup")))?;
    let group_order = frattini.order() as u128 * index as u128;
    Ok(FrattiniData { frattini, index, dimension, group_order })
}

/// Order of `<generators>` computed as `|N| [G : N]` for a normal subgroup `N`.
pub fn order_via_normal<G: GroupOracle>(
    oracle: &G,
    generators: &[G::Elem],
    n: &FiniteGroupTable<G::Elem>,
    cap: usize,
) -> Result<u128> {
    Ok(n.order() as u128 * coset_representatives(oracle, generators, n, cap)?.len() as u128)
}

/// `[G, G] = G`.
pub fn is_perfect<G: GroupOracle>(oracle: &G, generators: &[G::Elem], cap: usize) -> Result<bool> {
    let g = closure(oracle, generators, cap)?;
    Ok(derived_subgroup(oracle, generators, cap)?.order() == g.order())
}

/// `n` is stable under conjugation by every generator of the ambient group.
pub fn is_normalized_by<G: GroupOracle>(oracle: &G, n: &FiniteGroupTable<G::Elem>, ambient: &[G::Elem]) -> bool {
    ambient.iter().all(|g| n.generators().iter().all(|h| n.contains(&oracle.conjugate(g, h))))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiltrationReport {
    /// `K_i <= V K_{i+1}` for each consecutive pair of the chain.
    pub inclusions: Vec<bool>,
    pub hypothesis_holds: bool,
    /// `K_1 <= V`, evaluated only when every inclusion holds.
    pub conclusion: Option<bool>,
}

/// Checks the inclusions `K_i <= V K_{i+1}` along a chain ending in the
/// trivial group and, when all hold, whether `K_1 <= V`.
pub fn check_filtration_lemma<G: GroupOracle>(
    oracle: &G,
    ambient: &[G::Elem],
    chain: &[FiniteGroupTable<G::Elem>],
    v: &FiniteGroupTable<G::Elem>,
) -> Result<FiltrationReport> {
    let Some(last) = chain.last() else {
        return Err(Error::ChainNotNested(0));
    };
    if last.order() != 1 {
        return Err(Error::ChainNotNested(chain.len() - 1));
    }
    for i in 0..chain.len() {
        if i + 1 < chain.len() && !chain[i + 1].is_subset_of(&chain[i]) {
            return Err(Error::ChainNotNested(i + 1));
        }
        if !is_normalized_by(oracle, &chain[i], ambient) {
            return Err(Error::InvalidParameter(format!("chain member {i} is not normal")));
        }
    }
    let inclusions: Vec<bool> = chain
        .windows(2)
        .map(|w| w[0].elements().iter().all(|k| w[1].elements().iter().any(|x| v.contains(&oracle.mul(k, x)))))
        .collect();
    let hypothesis_holds = inclusions.iter().all(|&b| b);
    let conclusion = hypothesis_holds.then(|| chain[0].is_subset_of(v));
    Ok(FiltrationReport { inclusions, hypothesis_holds, conclusion })
}

/// Associativity, identity and inverse laws on `samples` random triples
/// drawn from `pool`. Returns the number of failures.
pub fn sample_group_axioms<G: GroupOracle, R: Rng>(oracle: &G, pool: &[G::Elem], samples: usize, rng: &mut R) -> usize {
    let id = oracle.identity();
    let mut failures = 0;
    for _ in 0..samples {
        let (Some(a), Some(b), Some(c)) = (pool.choose(rng), pool.choose(rng), pool.choose(rng)) else {
            return 0;
        };
        let assoc = oracle.mul(&oracle.mul(a, b), c) == oracle.mul(a, &oracle.mul(b, c));
        let unit = oracle.mul(a, &id) == *a && oracle.mul(&id, a) == *a;
        let inverse = oracle.mul(a, &oracle.inv(a)) == id && oracle.mul(&oracle.inv(a), a) == id;
        if !(assoc && unit && inverse) {
            failures += 1;
        }
    }
    failures
}

#[cfg(test)]
pub(crate) mod testing {
    use super::GroupOracle;

    /// `Z/n` under addition.
    pub struct Cyclic(pub u64);

    impl GroupOracle for Cyclic {
        type Elem = u64;
        fn identity(&self) -> u64 {
            0
        }
        fn mul(&self, a: &u64, b: &u64) -> u64 {
            (a + b) % self.0
        }
        fn inv(&self, a: &u64) -> u64 {
            (self.0 - a) % self.0
        }
    }

    /// `(Z/p)^d` under addition.
    pub struct Elementary(pub u64, pub usize);

    impl GroupOracle for Elementary {
        type Elem = Vec<u64>;
        fn identity(&self) -> Vec<u64> {
            vec![0; self.1]
        }
        fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
            a.iter().zip(b).map(|(x, y)| (x + y) % self.0).collect()
        }
        fn inv(&self, a: &Vec<u64>) -> Vec<u64> {
            a.iter().map(|x| (self.0 - x) % self.0).collect()
        }
    }

    impl Elementary {
        pub fn unit(&self, i: usize) -> Vec<u64> {
            let mut v = self.identity();
            v[i] = 1;
            v
        }
    }

    /// Upper unitriangular 3x3 matrices over `F_p`, stored as `(a, b, c)` for
    /// `[[1, a, c], [0, 1, b], [0, 0, 1]]`.
    pub struct Heisenberg(pub u64);

    impl GroupOracle for Heisenberg {
        type Elem = [u64; 3];
        fn identity(&self) -> [u64; 3] {
            [0; 3]
        }
        fn mul(&self, x: &[u64; 3], y: &[u64; 3]) -> [u64; 3] {
            let p = self.0;
            [(x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] + x[0] * y[1]) % p]
        }
        fn inv(&self, x: &[u64; 3]) -> [u64; 3] {
            let p = self.0;
            let a = (p - x[0]) % p;
            let b = (p - x[1]) % p;
            // (a', b', c') with c + c' + a b' = 0
            [a, b, (2 * p * p - x[2] - x[0] * b % p) % p]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::testing::*;
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const CAP: usize = 1 << 20;

    #[test]
    fn closures() {
        let c = Cyclic(7);
        assert_eq!(closure(&c, &[], CAP).unwrap().order(), 1);
        assert_eq!(closure(&c, &[3], CAP).unwrap().order(), 7);
        assert_eq!(closure(&Cyclic(100), &[1], 10).err(), Some(Error::EnumerationCapExceeded { cap: 10 }));
    }

    #[test]
    fn heisenberg_oracle_is_a_group() {
        let h = Heisenberg(5);
        let all: Vec<[u64; 3]> = (0..125).map(|i| [i % 5, (i / 5) % 5, i / 25]).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(sample_group_axioms(&h, &all, 2000, &mut rng), 0);
    }

    #[test]
    fn derived_and_frattini() {
        let e = Elementary(3, 4);
        let gens: Vec<_> = (0..4).map(|i| e.unit(i)).collect();
        assert_eq!(derived_subgroup(&e, &gens, CAP).unwrap().order(), 1);
        assert_eq!(frattini_quotient_dimension(&e, &gens, 3, CAP).unwrap().dimension, 4);

        let z = Cyclic(25);
        let data = frattini_quotient_dimension(&z, &[1], 5, CAP).unwrap();
        assert_eq!((data.dimension, data.frattini.order()), (1, 5));

        let h = Heisenberg(5);
        let gens = [[1, 0, 0], [0, 1, 0]];
        let d = derived_subgroup(&h, &gens, CAP).unwrap();
        assert_eq!(d.order(), 5);
        assert!(d.elements().iter().all(|x| x[0] == 0 && x[1] == 0));
        assert_eq!(frattini_quotient_dimension(&h, &gens, 5, CAP).unwrap().dimension, 2);
        assert!(is_normalized_by(&h, &d, &gens));
    }

    #[test]
    fn non_p_groups_are_rejected() {
        let z = Cyclic(6);
        assert!(matches!(frattini_quotient_dimension(&z, &[1], 2, CAP), Err(Error::NotAPGroup { .. })));
    }

    #[test]
    fn perfectness() {
        assert!(is_perfect(&Cyclic(1), &[], CAP).unwrap());
        assert!(!is_perfect(&Heisenberg(3), &[[1, 0, 0], [0, 1, 0]], CAP).unwrap());
    }

    #[test]
    fn order_from_cosets() {
        let h = Heisenberg(7);
        let gens = [[1, 0, 0], [0, 1, 0]];
        let d = derived_subgroup(&h, &gens, CAP).unwrap();
        assert_eq!(order_via_normal(&h, &gens, &d, CAP).unwrap(), 343);
    }

    #[test]
    fn filtration_lemma_examples() {
        let h = Heisenberg(3);
        let gens = [[1, 0, 0], [0, 1, 0]];
        let g = closure(&h, &gens, CAP).unwrap();
        let center = derived_subgroup(&h, &gens, CAP).unwrap();
        let trivial = FiniteGroupTable::trivial(h.identity());
        let chain = vec![g.clone(), center.clone(), trivial.clone()];
        let r = check_filtration_lemma(&h, &gens, &chain, &g).unwrap();
        assert_eq!(r, FiltrationReport { inclusions: vec![true, true], hypothesis_holds: true, conclusion: Some(true) });
        let r = check_filtration_lemma(&h, &gens, &chain, &trivial).unwrap();
        assert!(!r.hypothesis_holds);
        assert_eq!(r.conclusion, None);
        let bad = vec![center.clone(), g.clone(), trivial];
        assert_eq!(check_filtration_lemma(&h, &gens, &bad, &g).err(), Some(Error::ChainNotNested(1)));
        assert_eq!(check_filtration_lemma(&h, &gens, &[center], &g).err(), Some(Error::ChainNotNested(0)));
    }

    #[test]
    fn minimal_generating_sets_match_frattini_dimension() {
        // exhaustive over subsets of a group of order p^3
        let h = Heisenberg(3);
        let all = closure(&h, &[[1, 0, 0], [0, 1, 0]], CAP).unwrap();
        let d = frattini_quotient_dimension(&h, &[[1, 0, 0], [0, 1, 0]], 3, CAP).unwrap().dimension as usize;
        let elems = all.elements();
        let generates = |s: &[[u64; 3]]| closure(&h, s, CAP).unwrap().order() == 27;
        let min = (0..=3)
            .find(|&k| match k {
                0 => generates(&[]),
                1 => elems.iter().any(|a| generates(&[*a])),
                2 => elems.iter().any(|a| elems.iter().any(|b| generates(&[*a, *b]))),
                _ => true,
            })
            .unwrap();
        assert_eq!(min, d);
    }
}
