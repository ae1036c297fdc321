use std::collections::HashSet;

use serde::Serialize;

use super::{closure, FiniteGroupTable, GroupOracle};
use crate::error::Result;

/// Outcome of the four Tits-system axioms plus the Bruhat partition check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TitsReport {
    pub t1: bool,
    pub t2: bool,
    pub t3: bool,
    pub t4: bool,
    /// The double cosets `BwB` over `w` in `W` are pairwise disjoint and cover `G`.
    pub bruhat_partition: bool,
}

impl TitsReport {
    pub fn all(&self) -> bool {
        self.t1 && self.t2 && self.t3 && self.t4 && self.bruhat_partition
    }
}

fn double_coset<G: GroupOracle>(oracle: &G, b: &FiniteGroupTable<G::Elem>, w: &G::Elem) -> HashSet<G::Elem> {
    let mut out = HashSet::new();
    for x in b.elements() {
        let xw = oracle.mul(x, w);
        for y in b.elements() {
            out.insert(oracle.mul(&xw, y));
        }
    }
    out
}

/// Representatives of `N / T` with `T = B ∩ N`.
fn weyl_representatives<G: GroupOracle>(oracle: &G, n: &FiniteGroupTable<G::Elem>, t: &FiniteGroupTable<G::Elem>) -> Vec<G::Elem> {
    let mut reps: Vec<G::Elem> = Vec::new();
    for x in n.elements() {
        let xi = oracle.inv(x);
        if !reps.iter().any(|r| t.contains(&oracle.mul(&xi, r))) {
            reps.push(x.clone());
        }
    }
    reps
}

/// Checks (T1)-(T4) for `(G, B, N, S)` on enumerated groups, where `S` is
/// given by representatives in `N`.
pub fn verify_tits_axioms<G: GroupOracle>(
    oracle: &G,
    g: &FiniteGroupTable<G::Elem>,
    b: &FiniteGroupTable<G::Elem>,
    n: &FiniteGroupTable<G::Elem>,
    s: &[G::Elem],
    cap: usize,
) -> Result<TitsReport> {
    let t = FiniteGroupTable::from_elements(b.elements().iter().filter(|x| n.contains(x)).cloned().collect());
    let mut both: Vec<G::Elem> = b.generators().to_vec();
    both.extend_from_slice(n.generators());
    let t1 = closure(oracle, &both, cap)?.same_set(g)
        && n.elements().iter().all(|x| t.elements().iter().all(|y| t.contains(&oracle.conjugate(x, y))));

    let mut st: Vec<G::Elem> = s.to_vec();
    st.extend_from_slice(t.elements());
    let t2 = s.iter().all(|x| n.contains(x) && !t.contains(x) && t.contains(&oracle.mul(x, x)))
        && closure(oracle, &st, cap)?.same_set(n);

    let reps = weyl_representatives(oracle, n, &t);
    let cosets: Vec<HashSet<G::Elem>> = reps.iter().map(|w| double_coset(oracle, b, w)).collect();
    let coset_of = |x: &G::Elem| cosets.iter().position(|c| c.contains(x));
    let t3 = s.iter().all(|sx| {
        reps.iter().enumerate().all(|(wi, w)| {
            let sw = coset_of(&oracle.mul(sx, w));
            b.elements().iter().all(|y| {
                let z = oracle.mul(&oracle.mul(sx, y), w);
                let c = coset_of(&z);
                c == Some(wi) || c == sw
            })
        })
    });
    let t4 = s.iter().all(|sx| b.elements().iter().any(|y| !b.contains(&oracle.mul(&oracle.mul(sx, y), sx))));

    let total: usize = cosets.iter().map(HashSet::len).sum();
    let union: HashSet<&G::Elem> = cosets.iter().flatten().collect();
    let bruhat_partition = total == g.order() && union.len() == g.order() && g.elements().iter().all(|x| union.contains(x));

    Ok(TitsReport { t1, t2, t3, t4, bruhat_partition })
}
