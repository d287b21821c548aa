//! Permutations in one-line notation and the left/right letter decomposition
//! of their bipartitions.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::coxeter::{CoxeterSystem, GroupElement};
use crate::error::{Error, Result};

/// Inversions of an injective word as `(smaller, larger)` letter pairs.
pub(crate) fn inversion_pairs<T: Ord + Copy>(letters: &[T]) -> BTreeSet<(T, T)> {
    let mut out = BTreeSet::new();
    for (i, &a) in letters.iter().enumerate() {
        for &b in &letters[i + 1..] {
            if a > b {
                out.insert((b, a));
            }
        }
    }
    out
}

/// 0-based rank of each letter among the letters of the word.
pub(crate) fn ranks<T: Ord + Copy>(letters: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = letters.to_vec();
    sorted.sort_unstable();
    letters.iter().map(|a| sorted.binary_search(a).unwrap()).collect()
}

pub(crate) fn check_injective(letters: &[i32]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for &a in letters {
        if !seen.insert(a) {
            return Err(Error::RepeatedLetter(a));
        }
    }
    Ok(())
}

/// Word on distinct positive letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InjWord {
    letters: Vec<u32>,
}

impl InjWord {
    pub fn new(letters: Vec<u32>) -> Result<InjWord> {
        let mut seen = BTreeSet::new();
        for &a in &letters {
            if a == 0 {
                return Err(Error::MalformedWord("letters must be positive".into()));
            }
            if !seen.insert(a) {
                return Err(Error::RepeatedLetter(a as i32));
            }
        }
        Ok(InjWord { letters })
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// Bijection of `[n]` stored as `w(1) ... w(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    oneline: Vec<u32>,
}

impl Permutation {
    pub fn new(oneline: Vec<u32>) -> Result<Permutation> {
        let n = oneline.len();
        let mut seen = vec![false; n + 1];
        for &a in &oneline {
            let a = a as usize;
            if a == 0 || a > n {
                return Err(Error::InvalidPermutation(format!("letter {a} outside 1..{n}")));
            }
            if seen[a] {
                return Err(Error::RepeatedLetter(a as i32));
            }
            seen[a] = true;
        }
        Ok(Permutation { oneline })
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation {
            oneline: (1..=n as u32).collect(),
        }
    }

    /// Digits (`526341`) or a comma/space separated list (`5,2,6,3,4,1`).
    pub fn parse(text: &str) -> Result<Permutation> {
        let text = text.trim();
        let letters: Vec<u32> = if text.contains(|c: char| c == ',' || c.is_whitespace()) {
            text.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u32>().map_err(|_| Error::MalformedWord(text.to_string())))
                .collect::<Result<_>>()?
        } else {
            text.chars()
                .map(|c| c.to_digit(10).ok_or_else(|| Error::MalformedWord(text.to_string())))
                .collect::<Result<_>>()?
        };
        Permutation::new(letters)
    }

    /// Every permutation of `[n]` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur = Permutation::identity(n).oneline;
        loop {
            out.push(Permutation { oneline: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
                return out;
            };
            let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
    }

    pub fn n(&self) -> usize {
        self.oneline.len()
    }

    pub fn oneline(&self) -> &[u32] {
        &self.oneline
    }

    /// `w(i)` for `1 <= i <= n`.
    pub fn get(&self, i: usize) -> u32 {
        self.oneline[i - 1]
    }

    /// 1-based position of a letter.
    pub fn position_of(&self, letter: u32) -> Option<usize> {
        self.oneline.iter().position(|&a| a == letter).map(|p| p + 1)
    }

    pub fn invs(&self) -> BTreeSet<(u32, u32)> {
        inversion_pairs(&self.oneline)
    }

    pub fn length(&self) -> usize {
        self.invs().len()
    }

    /// Positions `i` with `w(i) > w(i+1)`.
    pub fn descents(&self) -> Vec<usize> {
        (1..self.n()).filter(|&i| self.get(i) > self.get(i + 1)).collect()
    }

    pub fn d_r(&self) -> usize {
        self.descents().len()
    }

    pub fn is_identity(&self) -> bool {
        self.oneline.iter().enumerate().all(|(i, &a)| a as usize == i + 1)
    }

    /// Right multiplication by the simple transposition `(i i+1)`, swapping positions.
    pub fn swap_positions(&self, i: usize) -> Permutation {
        let mut oneline = self.oneline.clone();
        oneline.swap(i - 1, i);
        Permutation { oneline }
    }

    /// Subword on the given letters, in order of appearance.
    pub fn restrict(&self, letters: &BTreeSet<u32>) -> InjWord {
        InjWord {
            letters: self.oneline.iter().copied().filter(|a| letters.contains(a)).collect(),
        }
    }

    /// Reduced word in 1-based generator indices, `τ_i` swapping positions `i, i+1`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut cur = self.clone();
        let mut word = Vec::new();
        while let Some(&i) = cur.descents().first() {
            word.push(i);
            cur = cur.swap_positions(i);
        }
        word.reverse();
        word
    }

    /// The unique permutation of `[n]` with the given inversion set.
    pub fn from_invs(invs: &BTreeSet<(u32, u32)>, n: usize) -> Result<Permutation> {
        let mut oneline = vec![0u32; n];
        for a in 1..=n as u32 {
            let before_smaller = (1..a).filter(|&b| !invs.contains(&(b, a))).count();
            let before_larger = (a + 1..=n as u32).filter(|&c| invs.contains(&(a, c))).count();
            let pos = before_smaller + before_larger;
            if pos >= n || oneline[pos] != 0 {
                return Err(Error::InvalidPermutation("not an inversion set".into()));
            }
            oneline[pos] = a;
        }
        let w = Permutation { oneline };
        if &w.invs() != invs {
            return Err(Error::InvalidPermutation("not an inversion set".into()));
        }
        Ok(w)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n() > 9 { "," } else { "" };
        let parts: Vec<String> = self.oneline.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join(sep))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Permutation> {
        Permutation::parse(s)
    }
}

pub fn invs(w: &InjWord) -> BTreeSet<(u32, u32)> {
    inversion_pairs(&w.letters)
}

/// Order-isomorphic relabeling onto `1..=len`.
pub fn std(w: &InjWord) -> Permutation {
    Permutation {
        oneline: ranks(&w.letters).into_iter().map(|r| r as u32 + 1).collect(),
    }
}

/// Standardization of an arbitrary injective word of integers.
pub fn std_letters(letters: &[i32]) -> Result<Permutation> {
    check_injective(letters)?;
    Ok(Permutation {
        oneline: ranks(letters).into_iter().map(|r| r as u32 + 1).collect(),
    })
}

/// Transitivity and the interval condition on all triples `a < b < c`.
pub fn is_inversion_set_a(set: &BTreeSet<(u32, u32)>, n: usize) -> bool {
    if set.iter().any(|&(a, b)| a == 0 || a >= b || b as usize > n) {
        return false;
    }
    let n = n as u32;
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                let ab = set.contains(&(a, b));
                let bc = set.contains(&(b, c));
                let ac = set.contains(&(a, c));
                if ab && bc && !ac {
                    return false;
                }
                if ac && !ab && !bc {
                    return false;
                }
            }
        }
    }
    true
}

/// Removes the letter `n`.
pub fn dec_a(w: &Permutation) -> Permutation {
    let n = w.n() as u32;
    Permutation {
        oneline: w.oneline.iter().copied().filter(|&a| a != n).collect(),
    }
}

/// `invs(w) = invs(u) ⊔ invs(v)`.
pub fn is_bipartition_a(w: &Permutation, u: &Permutation, v: &Permutation) -> bool {
    if u.n() != w.n() || v.n() != w.n() {
        return false;
    }
    let (iw, iu, iv) = (w.invs(), u.invs(), v.invs());
    iu.is_disjoint(&iv) && iu.len() + iv.len() == iw.len() && iu.union(&iv).all(|p| iw.contains(p))
}

/// Letters split around a pivot: right letters are the pivot and the smaller
/// letters after it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LetterClassesA {
    pub left: BTreeSet<u32>,
    pub right: BTreeSet<u32>,
}

pub fn letter_classes_a(w: &Permutation, pivot: u32) -> LetterClassesA {
    let invs = w.invs();
    let mut right: BTreeSet<u32> = (1..pivot).filter(|&a| invs.contains(&(a, pivot))).collect();
    right.insert(pivot);
    let left = (1..=w.n() as u32).filter(|a| !right.contains(a)).collect();
    LetterClassesA { left, right }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionA {
    pub classes: LetterClassesA,
    pub w_l: Permutation,
    pub u_l: Permutation,
    pub v_l: Permutation,
    pub w_r: Permutation,
    pub u_r: Permutation,
    pub v_r: Permutation,
}

impl DecompositionA {
    /// `d_R(x) = d_R(x_L) + d_R(x_R)` for `x = w, u, v`, given the originals.
    pub fn descents_split(&self, w: &Permutation, u: &Permutation, v: &Permutation) -> bool {
        w.d_r() == self.w_l.d_r() + self.w_r.d_r()
            && u.d_r() == self.u_l.d_r() + self.u_r.d_r()
            && v.d_r() == self.v_l.d_r() + self.v_r.d_r()
    }

    pub fn parts_are_bipartitions(&self) -> bool {
        is_bipartition_a(&self.w_l, &self.u_l, &self.v_l) && is_bipartition_a(&self.w_r, &self.u_r, &self.v_r)
    }
}

/// Decomposition with respect to the letter `n`.
pub fn decompose_a(w: &Permutation, u: &Permutation, v: &Permutation) -> Result<DecompositionA> {
    decompose_a_at(w, u, v, w.n() as u32)
}

/// Decomposition with respect to an arbitrary pivot letter.
pub fn decompose_a_at(w: &Permutation, u: &Permutation, v: &Permutation, pivot: u32) -> Result<DecompositionA> {
    if !is_bipartition_a(w, u, v) {
        return Err(Error::NotABipartition);
    }
    if pivot == 0 || pivot as usize > w.n() {
        return Err(Error::Precondition(format!("pivot {pivot} outside 1..{}", w.n())));
    }
    let classes = letter_classes_a(w, pivot);
    let part = |x: &Permutation, set: &BTreeSet<u32>| std(&x.restrict(set));
    Ok(DecompositionA {
        w_l: part(w, &classes.left),
        u_l: part(u, &classes.left),
        v_l: part(v, &classes.left),
        w_r: part(w, &classes.right),
        u_r: part(u, &classes.right),
        v_r: part(v, &classes.right),
        classes,
    })
}

/// `d_R(dec u) + d_R(dec v) = d_R(u) + d_R(v) - 1` for a bipartition of a
/// permutation starting with its largest letter.
pub fn decreasing_check_a(u_r: &Permutation, v_r: &Permutation) -> Result<bool> {
    let n = u_r.n();
    if v_r.n() != n || n < 2 {
        return Err(Error::Precondition(
            "need two permutations of the same size n >= 2".into(),
        ));
    }
    let (iu, iv) = (u_r.invs(), v_r.invs());
    if !iu.is_disjoint(&iv) {
        return Err(Error::Precondition("inversion sets overlap".into()));
    }
    let union: BTreeSet<(u32, u32)> = iu.union(&iv).copied().collect();
    let w_r = Permutation::from_invs(&union, n)
        .map_err(|_| Error::Precondition("parts do not bipartition a permutation".into()))?;
    if w_r.get(1) as usize != n {
        return Err(Error::Precondition(format!("{w_r} does not start with {n}")));
    }
    Ok(dec_a(u_r).d_r() + dec_a(v_r).d_r() + 1 == u_r.d_r() + v_r.d_r())
}

/// Group element of type `A_{n-1}`; generator `i` (0-based) swaps positions `i+1, i+2`.
pub fn coxeter_from_perm(system: &CoxeterSystem, sigma: &Permutation) -> Result<GroupElement> {
    if system.rank() + 1 != sigma.n() {
        return Err(Error::Precondition(format!(
            "permutation of size {} needs rank {}",
            sigma.n(),
            sigma.n().saturating_sub(1)
        )));
    }
    let word: Vec<usize> = sigma.reduced_word().into_iter().map(|i| i - 1).collect();
    system.element_from_word(&word)
}

pub fn perm_from_coxeter(system: &CoxeterSystem, g: &GroupElement) -> Result<Permutation> {
    let mut sigma = Permutation::identity(system.rank() + 1);
    for i in system.reduced_word(g)? {
        sigma = sigma.swap_positions(i + 1);
    }
    Ok(sigma)
}

/// All permutations of `[n]` with inversion sets as bitmasks, for exhaustive sweeps.
pub struct PermTable {
    n: usize,
    perms: Vec<Permutation>,
    masks: Vec<u64>,
    index: HashMap<u64, usize>,
    triples: Vec<(u32, u32, u32)>,
}

fn pair_bit(n: usize, a: usize, b: usize) -> u32 {
    // pairs (a, b) with 1 <= a < b <= n, row-major
    let a0 = a - 1;
    (a0 * (2 * n - a0 - 1) / 2 + (b - a - 1)) as u32
}

impl PermTable {
    /// Supports `n <= 11` (pairs fit a `u64`).
    pub fn new(n: usize) -> Result<PermTable> {
        if n * n.saturating_sub(1) / 2 > 64 || n > 11 {
            return Err(Error::Precondition(format!(
                "n = {n} too large for a permutation table"
            )));
        }
        let perms = Permutation::all(n);
        let masks: Vec<u64> = perms
            .iter()
            .map(|p| {
                p.invs()
                    .into_iter()
                    .fold(0u64, |m, (a, b)| m | 1 << pair_bit(n, a as usize, b as usize))
            })
            .collect();
        let index = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut triples = Vec::new();
        for a in 1..=n {
            for b in a + 1..=n {
                for c in b + 1..=n {
                    triples.push((pair_bit(n, a, b), pair_bit(n, b, c), pair_bit(n, a, c)));
                }
            }
        }
        Ok(PermTable {
            n,
            perms,
            masks,
            index,
            triples,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    pub fn perm(&self, i: usize) -> &Permutation {
        &self.perms[i]
    }

    pub fn perms(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        let m = p
            .invs()
            .into_iter()
            .fold(0u64, |m, (a, b)| m | 1 << pair_bit(self.n, a as usize, b as usize));
        self.index.get(&m).copied()
    }

    fn mask_is_inversion_set(&self, m: u64) -> bool {
        self.triples.iter().all(|&(ab, bc, ac)| {
            let (ab, bc, ac) = (m >> ab & 1 == 1, m >> bc & 1 == 1, m >> ac & 1 == 1);
            !(ab && bc && !ac) && !(ac && !ab && !bc)
        })
    }

    /// Unordered bipartitions `{u, v}` of `perm(w)` as index pairs with `u <= v`,
    /// including `{e, w}`.
    pub fn bipartitions(&self, w: usize) -> Vec<(usize, usize)> {
        let mw = self.masks[w];
        let mut out = Vec::new();
        for (u, &mu) in self.masks.iter().enumerate() {
            if mu & !mw != 0 {
                continue;
            }
            let rest = mw ^ mu;
            if !self.mask_is_inversion_set(rest) {
                continue;
            }
            let v = self.index[&rest];
            if u <= v {
                out.push((u, v));
            }
        }
        out
    }
}
