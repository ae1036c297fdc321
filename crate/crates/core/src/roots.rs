//! Root lattice, Weyl group action and root recognition.
//!
//! Root vectors are dense coordinate vectors in the simple-root basis, in the
//! order of the matrix's index set.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gcm::GeneralizedCartanMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootVector(pub Vec<i64>);

impl RootVector {
    pub fn zero(rank: usize) -> Self {
        Self(vec![0; rank])
    }

    pub fn simple(rank: usize, s: usize) -> Self {
        let mut v = vec![0; rank];
        v[s] = 1;
        Self(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&n| n == 0)
    }

    /// Nonzero with all coordinates nonnegative.
    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&n| n >= 0)
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&n| n <= 0)
    }

    pub fn support(&self) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, &n)| n != 0).map(|(i, _)| i).collect()
    }

    /// Index `s` when this is the simple root `alpha_s`.
    pub fn as_simple(&self) -> Option<usize> {
        match self.support().as_slice() {
            [s] if self.0[*s] == 1 => Some(*s),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl std::ops::Neg for &RootVector {
    type Output = RootVector;
    fn neg(self) -> RootVector {
        RootVector(self.0.iter().map(|n| -n).collect())
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, ")")
    }
}

/// A word in the simple reflections; `letters[0]` is applied last.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeylWord(pub Vec<usize>);

impl WeylWord {
    pub fn identity() -> Self {
        Self(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    pub fn display(&self, gcm: &GeneralizedCartanMatrix) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0.iter().map(|&s| format!("s{}", gcm.label(s))).collect::<Vec<_>>().join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootStatus {
    /// `alpha = weyl_apply(word, alpha_simple)`.
    Real { word: WeylWord, simple: usize },
    Imaginary,
    NotRoot,
}

impl RootStatus {
    pub fn tag(&self) -> Option<RootTag> {
        match self {
            RootStatus::Real { .. } => Some(RootTag::Real),
            RootStatus::Imaginary => Some(RootTag::Imaginary),
            RootStatus::NotRoot => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootTag {
    Real,
    Imaginary,
}

fn check_rank(gcm: &GeneralizedCartanMatrix, alpha: &RootVector) -> Result<()> {
    if alpha.rank() != gcm.size() {
        return Err(Error::InvalidParameter(format!("root vector {alpha} has rank {}, matrix has size {}", alpha.rank(), gcm.size())));
    }
    Ok(())
}

/// `<alpha, alpha_s^vee> = sum_t n_t A[s][t]`.
#[inline]
pub fn coroot_pairing(gcm: &GeneralizedCartanMatrix, s: usize, alpha: &RootVector) -> i64 {
    alpha.0.iter().enumerate().map(|(t, n)| n * gcm.get(s, t)).sum()
}

fn reflect_unchecked(gcm: &GeneralizedCartanMatrix, s: usize, alpha: &RootVector) -> RootVector {
    let mut out = alpha.clone();
    out.0[s] -= coroot_pairing(gcm, s, alpha);
    out
}

/// `s.alpha = alpha - <alpha, alpha_s^vee> alpha_s`, the linear extension of
/// `s.alpha_t = alpha_t - A[s][t] alpha_s`.
pub fn simple_reflection(gcm: &GeneralizedCartanMatrix, s: usize, alpha: &RootVector) -> Result<RootVector> {
    if s >= gcm.size() {
        return Err(Error::UnknownLabel(format!("index {s}")));
    }
    check_rank(gcm, alpha)?;
    Ok(reflect_unchecked(gcm, s, alpha))
}

/// Applies the word right to left.
pub fn weyl_apply(gcm: &GeneralizedCartanMatrix, w: &WeylWord, alpha: &RootVector) -> Result<RootVector> {
    check_rank(gcm, alpha)?;
    if let Some(&bad) = w.0.iter().find(|&&s| s >= gcm.size()) {
        return Err(Error::UnknownLabel(format!("index {bad}")));
    }
    Ok(w.0.iter().rev().fold(alpha.clone(), |acc, &s| reflect_unchecked(gcm, s, &acc)))
}

pub fn height(alpha: &RootVector) -> i64 {
    alpha.height()
}

fn support_connected(gcm: &GeneralizedCartanMatrix, support: &[usize]) -> bool {
    let Some(&first) = support.first() else { return false };
    let mut seen = vec![first];
    let mut i = 0;
    while i < seen.len() {
        let s = seen[i];
        for &t in support {
            if !seen.contains(&t) && gcm.adjacent(s, t) {
                seen.push(t);
            }
        }
        i += 1;
    }
    seen.len() == support.len()
}

/// Decides whether `alpha` is a real root, an imaginary root, or not a root,
/// by height descent towards the fundamental chamber.
///
/// At each step the lowest index `s` with `<alpha, alpha_s^vee> > 0` is used.
pub fn root_status(gcm: &GeneralizedCartanMatrix, alpha: &RootVector) -> Result<RootStatus> {
    check_rank(gcm, alpha)?;
    if alpha.is_zero() {
        return Err(Error::ZeroVector);
    }
    if alpha.is_negative() {
        return Ok(match positive_status(gcm, &-alpha) {
            RootStatus::Real { mut word, simple } => {
                // -alpha = w(alpha_s)  =>  alpha = (w s)(alpha_s)
                word.0.push(simple);
                RootStatus::Real { word, simple }
            }
            other => other,
        });
    }
    if !alpha.is_positive() {
        return Ok(RootStatus::NotRoot);
    }
    Ok(positive_status(gcm, alpha))
}

fn positive_status(gcm: &GeneralizedCartanMatrix, alpha: &RootVector) -> RootStatus {
    let mut current = alpha.clone();
    let mut applied = Vec::new();
    loop {
        if let Some(s) = current.as_simple() {
            return RootStatus::Real { word: WeylWord(applied), simple: s };
        }
        let descent = (0..gcm.size()).find(|&s| coroot_pairing(gcm, s, &current) > 0);
        match descent {
            Some(s) => {
                current = reflect_unchecked(gcm, s, &current);
                // a positive non-simple root stays positive under s
                if current.0.iter().any(|&n| n < 0) {
                    return RootStatus::NotRoot;
                }
                applied.push(s);
            }
            None => {
                return if support_connected(gcm, &current.support()) {
                    RootStatus::Imaginary
                } else {
                    RootStatus::NotRoot
                };
            }
        }
    }
}

/// Positive real roots of height at most `max_height`, by breadth-first
/// closure of the simple roots under simple reflections. Sorted by
/// (height, coordinates).
pub fn positive_real_roots_up_to_height(gcm: &GeneralizedCartanMatrix, max_height: usize) -> Vec<RootVector> {
    let n = gcm.size();
    let h = max_height as i64;
    let mut seen: HashSet<RootVector> = HashSet::new();
    let mut queue: VecDeque<RootVector> = VecDeque::new();
    for s in 0..n {
        let a = RootVector::simple(n, s);
        if h >= 1 && seen.insert(a.clone()) {
            queue.push_back(a);
        }
    }
    while let Some(a) = queue.pop_front() {
        for s in 0..n {
            let b = reflect_unchecked(gcm, s, &a);
            if b.is_positive() && b.height() <= h && seen.insert(b.clone()) {
                queue.push_back(b);
            }
        }
    }
    let mut out: Vec<RootVector> = seen.into_iter().collect();
    sort_roots(&mut out);
    out
}

pub fn sort_roots(roots: &mut [RootVector]) {
    roots.sort_by(|a, b| (a.height(), &a.0).cmp(&(b.height(), &b.0)));
}

/// All nonzero vectors of `Q^+` with height at most `max_height`, in
/// (height, lexicographic) order.
pub fn positive_lattice_points(rank: usize, max_height: usize) -> Vec<RootVector> {
    fn rec(rank: usize, remaining: usize, prefix: &mut Vec<i64>, out: &mut Vec<RootVector>) {
        if prefix.len() == rank {
            if prefix.iter().any(|&x| x != 0) {
                out.push(RootVector(prefix.clone()));
            }
            return;
        }
        for v in 0..=remaining {
            prefix.push(v as i64);
            rec(rank, remaining - v, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(rank, max_height, &mut Vec::new(), &mut out);
    sort_roots(&mut out);
    out
}

/// Every positive root of height at most `max_height` with its tag.
pub fn positive_roots_up_to_height(gcm: &GeneralizedCartanMatrix, max_height: usize) -> Vec<(RootVector, RootTag)> {
    positive_lattice_points(gcm.size(), max_height)
        .into_iter()
        .filter_map(|a| {
            let tag = root_status(gcm, &a).expect("nonzero vector of the right rank").tag()?;
            Some((a, tag))
        })
        .collect()
}

/// One entry of the JSON root listing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootRecord {
    pub coords: Vec<i64>,
    pub height: i64,
    pub status: RootTag,
}

pub fn root_dump(gcm: &GeneralizedCartanMatrix, max_height: usize) -> Vec<RootRecord> {
    positive_roots_up_to_height(gcm, max_height)
        .into_iter()
        .map(|(a, status)| RootRecord { height: a.height(), coords: a.0, status })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refutation {
    /// `beta = -alpha`: every `w` sends the pair to opposite signs.
    OppositeRoots,
    /// The whole W-orbit of the pair was enumerated without a witness.
    ClosedOrbit { orbit_size: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Prenilpotency {
    Prenilpotent { positive_witness: WeylWord, negative_witness: WeylWord },
    NotPrenilpotent(Refutation),
    /// The search bound was reached before a certificate or refutation.
    NotDecided { explored: usize },
}

impl Prenilpotency {
    pub fn is_prenilpotent(&self) -> Option<bool> {
        match self {
            Prenilpotency::Prenilpotent { .. } => Some(true),
            Prenilpotency::NotPrenilpotent(_) => Some(false),
            Prenilpotency::NotDecided { .. } => None,
        }
    }
}

pub fn default_search_bound(gcm: &GeneralizedCartanMatrix, alpha: &RootVector, beta: &RootVector) -> usize {
    let abs_height = |v: &RootVector| v.0.iter().map(|n| n.unsigned_abs() as usize).sum::<usize>();
    abs_height(alpha) + abs_height(beta) + 2 * gcm.size()
}

/// Searches Weyl words of length at most `search_bound` for one sending both
/// roots into `Q^+` and one sending both into `Q^-`.
pub fn is_prenilpotent_pair(
    gcm: &GeneralizedCartanMatrix,
    alpha: &RootVector,
    beta: &RootVector,
    search_bound: usize,
) -> Result<Prenilpotency> {
    for v in [alpha, beta] {
        if !matches!(root_status(gcm, v)?, RootStatus::Real { .. }) {
            return Err(Error::NotRealRoot(v.to_string()));
        }
    }
    if alpha.add(beta).is_zero() {
        return Ok(Prenilpotency::NotPrenilpotent(Refutation::OppositeRoots));
    }
    let mut positive: Option<WeylWord> = None;
    let mut negative: Option<WeylWord> = None;
    let mut seen: HashMap<(RootVector, RootVector), ()> = HashMap::new();
    let mut frontier = vec![(alpha.clone(), beta.clone(), WeylWord::identity())];
    seen.insert((alpha.clone(), beta.clone()), ());
    let mut depth = 0;
    loop {
        for (a, b, w) in &frontier {
            if positive.is_none() && a.is_positive() && b.is_positive() {
                positive = Some(w.clone());
            }
            if negative.is_none() && a.is_negative() && b.is_negative() {
                negative = Some(w.clone());
            }
        }
        if let (Some(p), Some(n)) = (&positive, &negative) {
            return Ok(Prenilpotency::Prenilpotent { positive_witness: p.clone(), negative_witness: n.clone() });
        }
        if depth == search_bound {
            return Ok(Prenilpotency::NotDecided { explored: seen.len() });
        }
        let mut next = Vec::new();
        for (a, b, w) in &frontier {
            for s in 0..gcm.size() {
                let key = (reflect_unchecked(gcm, s, a), reflect_unchecked(gcm, s, b));
                if seen.contains_key(&key) {
                    continue;
                }
                seen.insert(key.clone(), ());
                let mut word = Vec::with_capacity(w.len() + 1);
                word.push(s);
                word.extend_from_slice(&w.0);
                next.push((key.0, key.1, WeylWord(word)));
            }
        }
        if next.is_empty() {
            return Ok(Prenilpotency::NotPrenilpotent(Refutation::ClosedOrbit { orbit_size: seen.len() }));
        }
        frontier = next;
        depth += 1;
    }
}
