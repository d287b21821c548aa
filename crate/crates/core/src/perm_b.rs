//! Signed permutations on the alphabet `-n..-1, 1..n` and the
//! forgotten/left/right letter decomposition of their bipartitions.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::coxeter::{CoxeterSystem, GroupElement};
use crate::error::{Error, Result};
use crate::perm_a::{check_injective, inversion_pairs, ranks, std_letters, Permutation};

/// Element of `B_n` stored on all positions `-n..-1, 1..n`, with `σ(-i) = -σ(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    n: usize,
    word: Vec<i32>,
}

fn slot(n: usize, pos: i32) -> usize {
    if pos < 0 {
        (pos + n as i32) as usize
    } else {
        (pos + n as i32 - 1) as usize
    }
}

fn position_at(n: usize, slot: usize) -> i32 {
    if slot < n {
        slot as i32 - n as i32
    } else {
        slot as i32 - n as i32 + 1
    }
}

impl SignedPermutation {
    /// From the positive half `σ(1) ... σ(n)`.
    pub fn from_positive(half: Vec<i32>) -> Result<SignedPermutation> {
        let n = half.len();
        let mut seen = vec![false; n + 1];
        for &a in &half {
            let m = a.unsigned_abs() as usize;
            if a == 0 || m > n {
                return Err(Error::InvalidPermutation(format!("letter {a} outside ±1..{n}")));
            }
            if seen[m] {
                return Err(Error::RepeatedLetter(a));
            }
            seen[m] = true;
        }
        let mut word: Vec<i32> = half.iter().rev().map(|a| -a).collect();
        word.extend(&half);
        Ok(SignedPermutation { n, word })
    }

    /// From the full word on positions `-n..-1, 1..n`.
    pub fn from_full(word: Vec<i32>) -> Result<SignedPermutation> {
        if !word.len().is_multiple_of(2) {
            return Err(Error::InvalidPermutation("odd number of entries".into()));
        }
        let n = word.len() / 2;
        let sigma = SignedPermutation::from_positive(word[n..].to_vec())?;
        if sigma.word != word {
            return Err(Error::InvalidPermutation(
                "negative half is not the mirror of the positive half".into(),
            ));
        }
        Ok(sigma)
    }

    /// `"4 -5 -2 -6 3 1 | -1 -3 6 2 5 -4"` or the positive half `"-1 -3 6 2 5 -4"`.
    pub fn parse(text: &str) -> Result<SignedPermutation> {
        let tokens = |s: &str| -> Result<Vec<i32>> {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<i32>().map_err(|_| Error::MalformedWord(text.to_string())))
                .collect()
        };
        match text.split_once('|') {
            Some((neg, pos)) => {
                let (neg, pos) = (tokens(neg)?, tokens(pos)?);
                if neg.len() != pos.len() {
                    return Err(Error::MalformedWord(format!("halves of different sizes in {text:?}")));
                }
                SignedPermutation::from_full([neg, pos].concat())
            }
            None => {
                let letters = tokens(text)?;
                SignedPermutation::from_positive(letters.clone()).or_else(|e| {
                    if letters.len() % 2 == 0 {
                        SignedPermutation::from_full(letters).map_err(|_| e)
                    } else {
                        Err(e)
                    }
                })
            }
        }
    }

    pub fn identity(n: usize) -> SignedPermutation {
        SignedPermutation::from_positive((1..=n as i32).collect()).unwrap()
    }

    /// `w∘ = n ... 1 | -1 ... -n`.
    pub fn longest(n: usize) -> SignedPermutation {
        SignedPermutation::from_positive((1..=n as i32).map(|a| -a).collect()).unwrap()
    }

    /// All `2^n n!` elements.
    pub fn all(n: usize) -> Vec<SignedPermutation> {
        let mut out = Vec::new();
        for p in Permutation::all(n) {
            for signs in 0u32..1 << n {
                let half = p
                    .oneline()
                    .iter()
                    .enumerate()
                    .map(|(i, &a)| if signs >> i & 1 == 1 { -(a as i32) } else { a as i32 })
                    .collect();
                out.push(SignedPermutation::from_positive(half).unwrap());
            }
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entries at positions `-n..-1, 1..n`.
    pub fn word(&self) -> &[i32] {
        &self.word
    }

    pub fn positive(&self) -> &[i32] {
        &self.word[self.n..]
    }

    /// `σ(pos)` for a nonzero position.
    pub fn value(&self, pos: i32) -> i32 {
        self.word[slot(self.n, pos)]
    }

    pub fn position_of(&self, letter: i32) -> Option<i32> {
        self.word
            .iter()
            .position(|&a| a == letter)
            .map(|s| position_at(self.n, s))
    }

    pub fn n_in_positive_position(&self) -> bool {
        self.n > 0 && self.position_of(self.n as i32).is_some_and(|p| p > 0)
    }

    pub fn is_identity(&self) -> bool {
        self.positive().iter().enumerate().all(|(i, &a)| a == i as i32 + 1)
    }

    pub fn invs(&self) -> BTreeSet<(i32, i32)> {
        inversion_pairs(&self.word)
    }

    pub fn reflections(&self) -> BTreeSet<Reflection> {
        reflections_from_invs(&self.invs())
    }

    pub fn length(&self) -> usize {
        self.reflections().len()
    }

    /// Right descents as generator indices: `0` for `τ0`, `i` for `τi`.
    pub fn descents(&self) -> Vec<usize> {
        let p = self.positive();
        let mut out = Vec::new();
        if self.n > 0 && p[0] < 0 {
            out.push(0);
        }
        out.extend((1..self.n).filter(|&i| p[i - 1] > p[i]));
        out
    }

    pub fn d_r(&self) -> usize {
        self.descents().len()
    }

    /// Adjacent letters `(c, a)` with `c > a` anywhere in the full word.
    pub fn all_position_descents(&self) -> Vec<(i32, i32)> {
        self.word
            .windows(2)
            .filter(|x| x[0] > x[1])
            .map(|x| (x[0], x[1]))
            .collect()
    }

    /// Right multiplication by `τi`.
    pub fn right_mul(&self, i: usize) -> SignedPermutation {
        let mut word = self.word.clone();
        let n = self.n;
        if i == 0 {
            word.swap(slot(n, -1), slot(n, 1));
        } else {
            let i = i as i32;
            word.swap(slot(n, i), slot(n, i + 1));
            word.swap(slot(n, -i), slot(n, -i - 1));
        }
        SignedPermutation { n, word }
    }

    /// Reduced word in generator indices.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut cur = self.clone();
        let mut word = Vec::new();
        while let Some(&i) = cur.descents().first() {
            word.push(i);
            cur = cur.right_mul(i);
        }
        word.reverse();
        word
    }

    /// Subword of the full word on the given letters.
    pub fn restrict(&self, letters: &BTreeSet<i32>) -> Vec<i32> {
        self.word.iter().copied().filter(|a| letters.contains(a)).collect()
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[i32]| xs.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" ");
        write!(f, "{} | {}", join(&self.word[..self.n]), join(self.positive()))
    }
}

impl FromStr for SignedPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<SignedPermutation> {
        SignedPermutation::parse(s)
    }
}

/// A reflection of `B_n` as a permutation of the signed alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Reflection {
    /// `(a |a|)` for `a < 0`.
    Sign(i32),
    /// `(a b)(-b -a)`, stored as the smaller of the two pairs.
    Pair(i32, i32),
}

impl fmt::Display for Reflection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Reflection::Sign(a) => write!(f, "({a} {})", -a),
            Reflection::Pair(a, b) => write!(f, "({a} {b})({} {})", -b, -a),
        }
    }
}

pub fn invs_b(sigma: &SignedPermutation) -> BTreeSet<(i32, i32)> {
    sigma.invs()
}

/// Collapses the paired inversions `(a, b)` and `(-b, -a)`.
pub fn reflections_from_invs(invs: &BTreeSet<(i32, i32)>) -> BTreeSet<Reflection> {
    invs.iter()
        .map(|&(a, b)| {
            if b == -a {
                Reflection::Sign(a)
            } else {
                let (x, y) = (a, b).min((-b, -a));
                Reflection::Pair(x, y)
            }
        })
        .collect()
}

fn signed_alphabet(n: usize) -> Vec<i32> {
    let n = n as i32;
    (-n..=n).filter(|&a| a != 0).collect()
}

/// Transitivity, the interval condition and negation symmetry.
pub fn is_inversion_set_b(set: &BTreeSet<(i32, i32)>, n: usize) -> bool {
    let bound = n as i32;
    if set
        .iter()
        .any(|&(a, b)| a == 0 || b == 0 || a >= b || a.abs() > bound || b.abs() > bound)
    {
        return false;
    }
    if set.iter().any(|&(a, b)| a.abs() != b.abs() && !set.contains(&(-b, -a))) {
        return false;
    }
    let alphabet = signed_alphabet(n);
    for (i, &a) in alphabet.iter().enumerate() {
        for (j, &b) in alphabet.iter().enumerate().skip(i + 1) {
            for &c in &alphabet[j + 1..] {
                let ab = set.contains(&(a, b));
                let bc = set.contains(&(b, c));
                let ac = set.contains(&(a, c));
                if (ab && bc && !ac) || (ac && !ab && !bc) {
                    return false;
                }
            }
        }
    }
    true
}

fn is_symmetric(letters: &[i32]) -> bool {
    let set: BTreeSet<i32> = letters.iter().copied().collect();
    set.iter().all(|a| set.contains(&-a))
}

/// Type B standardization of a word on a symmetric letter set.
pub fn std_b(word: &[i32]) -> Result<SignedPermutation> {
    check_injective(word)?;
    if word.contains(&0) || !is_symmetric(word) {
        return Err(Error::SetNotSymmetric);
    }
    let k = (word.len() / 2) as i32;
    let relabeled = ranks(word)
        .into_iter()
        .map(|r| if (r as i32) < k { r as i32 - k } else { r as i32 - k + 1 })
        .collect();
    SignedPermutation::from_full(relabeled)
}

/// Classical standardization of a word on an antisymmetric letter set.
pub fn std_a_restricted(word: &[i32]) -> Result<Permutation> {
    check_injective(word)?;
    if word.iter().any(|a| word.contains(&-a)) {
        return Err(Error::SetNotAntisymmetric);
    }
    std_letters(word)
}

/// Removes the letters `n` and `-n`.
pub fn dec_b(sigma: &SignedPermutation) -> Result<SignedPermutation> {
    if sigma.n() < 2 {
        return Err(Error::Precondition("decreasing needs n >= 2".into()));
    }
    let n = sigma.n() as i32;
    SignedPermutation::from_full(sigma.word.iter().copied().filter(|a| a.abs() != n).collect())
}

/// `σ·w∘`, negating every entry.
pub fn wo_multiply(sigma: &SignedPermutation) -> SignedPermutation {
    SignedPermutation {
        n: sigma.n,
        word: sigma.word.iter().map(|a| -a).collect(),
    }
}

/// `invs(w) = invs(u) ⊔ invs(v)`.
pub fn is_bipartition_b(w: &SignedPermutation, u: &SignedPermutation, v: &SignedPermutation) -> bool {
    if u.n() != w.n() || v.n() != w.n() {
        return false;
    }
    let (iw, iu, iv) = (w.invs(), u.invs(), v.invs());
    iu.is_disjoint(&iv) && iu.len() + iv.len() == iw.len() && iu.union(&iv).all(|p| iw.contains(p))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LetterClassesB {
    pub left: BTreeSet<i32>,
    pub right: BTreeSet<i32>,
    pub forgotten: BTreeSet<i32>,
}

/// Classes for `n` in positive position: `R` is `n` and the letters forming an
/// inversion with it, `F = -R`, `L` the rest.
pub fn letter_classes_positive(w: &SignedPermutation) -> Result<LetterClassesB> {
    if !w.n_in_positive_position() {
        return Err(Error::NNotPositive);
    }
    let n = w.n() as i32;
    let invs = w.invs();
    let mut right: BTreeSet<i32> = signed_alphabet(w.n())
        .into_iter()
        .filter(|&a| invs.contains(&(a, n)))
        .collect();
    right.insert(n);
    let forgotten: BTreeSet<i32> = right.iter().map(|a| -a).collect();
    let left = signed_alphabet(w.n())
        .into_iter()
        .filter(|a| !right.contains(a) && !forgotten.contains(a))
        .collect();
    Ok(LetterClassesB { left, right, forgotten })
}

/// Classes for `n` in negative position: `L` is the letters below `n` not
/// forming an inversion with it, `F = -L`, `R` the rest.
pub fn letter_classes_negative(w: &SignedPermutation) -> Result<LetterClassesB> {
    if w.n() == 0 || w.n_in_positive_position() {
        return Err(Error::NNotNegative);
    }
    let n = w.n() as i32;
    let invs = w.invs();
    let left: BTreeSet<i32> = signed_alphabet(w.n())
        .into_iter()
        .filter(|&a| a < n && !invs.contains(&(a, n)))
        .collect();
    let forgotten: BTreeSet<i32> = left.iter().map(|a| -a).collect();
    let right = signed_alphabet(w.n())
        .into_iter()
        .filter(|a| !left.contains(a) && !forgotten.contains(a))
        .collect();
    Ok(LetterClassesB { left, right, forgotten })
}

/// Left words of type B, right words of type A.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveDecomposition {
    pub classes: LetterClassesB,
    pub w_l: SignedPermutation,
    pub u_l: SignedPermutation,
    pub v_l: SignedPermutation,
    pub w_r: Permutation,
    pub u_r: Permutation,
    pub v_r: Permutation,
}

impl PositiveDecomposition {
    pub fn descents_split(&self, w: &SignedPermutation, u: &SignedPermutation, v: &SignedPermutation) -> bool {
        w.d_r() == self.w_l.d_r() + self.w_r.d_r()
            && u.d_r() == self.u_l.d_r() + self.u_r.d_r()
            && v.d_r() == self.v_l.d_r() + self.v_r.d_r()
    }

    pub fn parts_are_bipartitions(&self) -> bool {
        is_bipartition_b(&self.w_l, &self.u_l, &self.v_l)
            && crate::perm_a::is_bipartition_a(&self.w_r, &self.u_r, &self.v_r)
    }
}

/// Left words of type A, right words of type B.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegativeDecomposition {
    pub classes: LetterClassesB,
    pub w_l: Permutation,
    pub u_l: Permutation,
    pub v_l: Permutation,
    pub w_r: SignedPermutation,
    pub u_r: SignedPermutation,
    pub v_r: SignedPermutation,
}

impl NegativeDecomposition {
    pub fn descents_split(&self, w: &SignedPermutation, u: &SignedPermutation, v: &SignedPermutation) -> bool {
        w.d_r() == self.w_l.d_r() + self.w_r.d_r()
            && u.d_r() == self.u_l.d_r() + self.u_r.d_r()
            && v.d_r() == self.v_l.d_r() + self.v_r.d_r()
    }

    pub fn parts_are_bipartitions(&self) -> bool {
        crate::perm_a::is_bipartition_a(&self.w_l, &self.u_l, &self.v_l)
            && is_bipartition_b(&self.w_r, &self.u_r, &self.v_r)
    }
}

pub fn decompose_b(
    w: &SignedPermutation,
    u: &SignedPermutation,
    v: &SignedPermutation,
) -> Result<PositiveDecomposition> {
    if !is_bipartition_b(w, u, v) {
        return Err(Error::NotABipartition);
    }
    let classes = letter_classes_positive(w)?;
    let left = |x: &SignedPermutation| std_b(&x.restrict(&classes.left));
    let right = |x: &SignedPermutation| std_a_restricted(&x.restrict(&classes.right));
    Ok(PositiveDecomposition {
        w_l: left(w)?,
        u_l: left(u)?,
        v_l: left(v)?,
        w_r: right(w)?,
        u_r: right(u)?,
        v_r: right(v)?,
        classes,
    })
}

pub fn decompose_b_negative(
    w: &SignedPermutation,
    u: &SignedPermutation,
    v: &SignedPermutation,
) -> Result<NegativeDecomposition> {
    if !is_bipartition_b(w, u, v) {
        return Err(Error::NotABipartition);
    }
    let classes = letter_classes_negative(w)?;
    let left = |x: &SignedPermutation| std_a_restricted(&x.restrict(&classes.left));
    let right = |x: &SignedPermutation| std_b(&x.restrict(&classes.right));
    Ok(NegativeDecomposition {
        w_l: left(w)?,
        u_l: left(u)?,
        v_l: left(v)?,
        w_r: right(w)?,
        u_r: right(u)?,
        v_r: right(v)?,
        classes,
    })
}

/// Group element of type `B_n`; generator `0` is `τ0`, generator `i` is `τi`.
pub fn coxeter_from_signed(system: &CoxeterSystem, sigma: &SignedPermutation) -> Result<GroupElement> {
    if system.rank() != sigma.n() {
        return Err(Error::Precondition(format!(
            "signed permutation of size {} needs rank {}",
            sigma.n(),
            sigma.n()
        )));
    }
    system.element_from_word(&sigma.reduced_word())
}

pub fn signed_from_coxeter(system: &CoxeterSystem, g: &GroupElement) -> Result<SignedPermutation> {
    let mut sigma = SignedPermutation::identity(system.rank());
    for i in system.reduced_word(g)? {
        sigma = sigma.right_mul(i);
    }
    Ok(sigma)
}

/// All of `B_n` with inversion sets as bitmasks, for exhaustive sweeps.
pub struct SignedTable {
    n: usize,
    elements: Vec<SignedPermutation>,
    masks: Vec<u64>,
    index: HashMap<u64, usize>,
    triples: Vec<(u32, u32, u32)>,
    mirrors: Vec<(u32, u32)>,
}

impl SignedTable {
    /// Supports `n <= 5`.
    pub fn new(n: usize) -> Result<SignedTable> {
        if n > 5 {
            return Err(Error::Precondition(format!("n = {n} too large for a signed table")));
        }
        let alphabet = signed_alphabet(n);
        let rank_of = |a: i32| alphabet.binary_search(&a).unwrap();
        let m = alphabet.len();
        let bit = |a: i32, b: i32| {
            let (i, j) = (rank_of(a), rank_of(b));
            (i * (2 * m - i - 1) / 2 + (j - i - 1)) as u32
        };
        let elements = SignedPermutation::all(n);
        let masks: Vec<u64> = elements
            .iter()
            .map(|s| s.invs().into_iter().fold(0u64, |acc, (a, b)| acc | 1 << bit(a, b)))
            .collect();
        let index = masks.iter().enumerate().map(|(i, &mask)| (mask, i)).collect();
        let mut triples = Vec::new();
        let mut mirrors = Vec::new();
        for (i, &a) in alphabet.iter().enumerate() {
            for (j, &b) in alphabet.iter().enumerate().skip(i + 1) {
                if a.abs() != b.abs() {
                    mirrors.push((bit(a, b), bit(-b, -a)));
                }
                for &c in &alphabet[j + 1..] {
                    triples.push((bit(a, b), bit(b, c), bit(a, c)));
                }
            }
        }
        Ok(SignedTable {
            n,
            elements,
            masks,
            index,
            triples,
            mirrors,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &SignedPermutation {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[SignedPermutation] {
        &self.elements
    }

    fn mask_is_inversion_set(&self, m: u64) -> bool {
        let has = |b: u32| m >> b & 1 == 1;
        self.mirrors.iter().all(|&(x, y)| !has(x) || has(y))
            && self.triples.iter().all(|&(ab, bc, ac)| {
                let (ab, bc, ac) = (has(ab), has(bc), has(ac));
                !(ab && bc && !ac) && !(ac && !ab && !bc)
            })
    }

    /// Unordered bipartitions `{u, v}` of `element(w)` with `u <= v`, including `{e, w}`.
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
