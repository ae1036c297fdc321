//! Lyndon words and their standard bracketing, a basis of the free Lie algebra.

use std::collections::HashMap;

pub type Word = Vec<u8>;

/// Lyndon words over `0..alphabet` of length `1..=max_len`, in
/// lexicographic order (Duval's generation algorithm).
pub fn lyndon_words(alphabet: usize, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if alphabet == 0 || max_len == 0 {
        return out;
    }
    let top = (alphabet - 1) as u8;
    let mut w: Vec<u8> = vec![0];
    loop {
        out.push(w.clone());
        let m = w.len();
        while w.len() < max_len {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&top) {
            w.pop();
        }
        let Some(last) = w.last_mut() else { break };
        *last += 1;
    }
    out
}

pub fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// `w = u v` with `v` the longest proper Lyndon suffix. `None` for letters.
pub fn standard_factorization(w: &[u8]) -> Option<(&[u8], &[u8])> {
    (1..w.len()).find(|&i| is_lyndon(&w[i..])).map(|i| w.split_at(i))
}

/// Lyndon words sorted by (length, word), with the indices of the two
/// factors of each standard bracketing.
#[derive(Debug, Clone)]
pub struct LyndonBasis {
    pub words: Vec<Word>,
    pub factors: Vec<Option<(usize, usize)>>,
    index: HashMap<Word, usize>,
}

impl LyndonBasis {
    pub fn new(alphabet: usize, max_len: usize) -> Self {
        let mut words = lyndon_words(alphabet, max_len);
        words.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        let index: HashMap<Word, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let factors = words
            .iter()
            .map(|w| standard_factorization(w).map(|(u, v)| (index[u], index[v])))
            .collect();
        Self { words, factors, index }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn index_of(&self, w: &[u8]) -> Option<usize> {
        self.index.get(w).copied()
    }
}
