//! Bitsets of positive roots over a session-wide registry.

use std::collections::HashMap;
use std::fmt;

use crate::coxeter::Root;

/// Dense id of a registered positive root.
pub type RootId = u32;

/// Append-only dictionary assigning dense ids to positive roots in first-seen order.
#[derive(Debug, Clone, Default)]
pub struct RootRegistry {
    roots: Vec<Root>,
    index: HashMap<Root, RootId>,
}

impl RootRegistry {
    pub fn new() -> RootRegistry {
        RootRegistry::default()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn get(&self, root: &Root) -> Option<RootId> {
        self.index.get(root).copied()
    }

    pub fn root(&self, id: RootId) -> &Root {
        &self.roots[id as usize]
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    /// Returns the id of `root`, registering it if new.
    pub fn intern(&mut self, root: Root) -> RootId {
        if let Some(&id) = self.index.get(&root) {
            return id;
        }
        let id = self.roots.len() as RootId;
        self.index.insert(root.clone(), id);
        self.roots.push(root);
        id
    }
}

/// Set of root ids. Trailing zero words are trimmed, so equality and hashing
/// do not depend on how large the registry was when the set was built.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSet {
    words: Vec<u64>,
}

impl RootSet {
    pub fn new() -> RootSet {
        RootSet::default()
    }

    pub fn from_ids<I: IntoIterator<Item = RootId>>(ids: I) -> RootSet {
        let mut set = RootSet::new();
        for id in ids {
            set.insert(id);
        }
        set
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, id: RootId) -> bool {
        let (w, b) = (id as usize / 64, id % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, id: RootId) -> bool {
        let (w, b) = (id as usize / 64, id % 64);
        if w >= self.words.len() {
            return false;
        }
        let present = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        self.trim();
        present
    }

    pub fn contains(&self, id: RootId) -> bool {
        let (w, b) = (id as usize / 64, id % 64);
        self.words.get(w).is_some_and(|x| x & (1 << b) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_subset(&self, other: &RootSet) -> bool {
        if self.words.len() > other.words.len() {
            return false;
        }
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &RootSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    fn zip_with(&self, other: &RootSet, f: impl Fn(u64, u64) -> u64) -> RootSet {
        let len = self.words.len().max(other.words.len());
        let get = |s: &RootSet, i: usize| s.words.get(i).copied().unwrap_or(0);
        let mut out = RootSet {
            words: (0..len).map(|i| f(get(self, i), get(other, i))).collect(),
        };
        out.trim();
        out
    }

    pub fn union(&self, other: &RootSet) -> RootSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &RootSet) -> RootSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &RootSet) -> RootSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn symmetric_difference(&self, other: &RootSet) -> RootSet {
        self.zip_with(other, |a, b| a ^ b)
    }

    /// `|self Δ other|` without allocating.
    pub fn symmetric_difference_len(&self, other: &RootSet) -> usize {
        let len = self.words.len().max(other.words.len());
        (0..len)
            .map(|i| {
                let a = self.words.get(i).copied().unwrap_or(0);
                let b = other.words.get(i).copied().unwrap_or(0);
                (a ^ b).count_ones() as usize
            })
            .sum()
    }

    /// Ids in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = RootId> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros();
                w &= w - 1;
                Some(i as RootId * 64 + b)
            })
        })
    }
}

impl fmt::Debug for RootSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<RootId> for RootSet {
    fn from_iter<I: IntoIterator<Item = RootId>>(iter: I) -> RootSet {
        RootSet::from_ids(iter)
    }
}
