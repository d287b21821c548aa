//! Geometric representation: elements as exact matrices acting on the span of
//! the simple roots.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::CoxeterGraph;
use crate::quadring::{QuadScalar, Sign};

/// A vector over the simple-root basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    coords: Vec<QuadScalar>,
}

impl Root {
    pub fn new(coords: Vec<QuadScalar>) -> Root {
        Root { coords }
    }

    pub fn simple(rank: usize, i: usize) -> Root {
        let mut coords = vec![QuadScalar::ZERO; rank];
        coords[i] = QuadScalar::ONE;
        Root { coords }
    }

    pub fn coords(&self) -> &[QuadScalar] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(QuadScalar::is_zero)
    }

    /// Sign of the first nonzero coordinate; roots never mix signs.
    pub fn is_negative(&self) -> bool {
        self.coords
            .iter()
            .find(|c| !c.is_zero())
            .is_some_and(|c| c.sign() == Sign::Negative)
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && !self.is_negative()
    }

    /// `Positive`/`Negative` when all nonzero coordinates agree, `Zero` for mixed or zero vectors.
    pub fn sign_class(&self) -> Sign {
        let mut seen = Sign::Zero;
        for c in &self.coords {
            match (seen, c.sign()) {
                (_, Sign::Zero) => {}
                (Sign::Zero, s) => seen = s,
                (a, b) if a != b => return Sign::Zero,
                _ => {}
            }
        }
        seen
    }

    pub fn checked_neg(&self) -> Result<Root> {
        Ok(Root {
            coords: self
                .coords
                .iter()
                .map(QuadScalar::checked_neg)
                .collect::<Result<_, _>>()?,
        })
    }

    /// The positive one of `±self`.
    pub fn positive_representative(&self) -> Result<Root> {
        if self.is_negative() {
            self.checked_neg()
        } else {
            Ok(self.clone())
        }
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A group element as the matrix of its action; column `j` is `w(α_j)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    rank: usize,
    cols: Vec<QuadScalar>,
}

impl GroupElement {
    pub fn identity(rank: usize) -> GroupElement {
        let mut cols = vec![QuadScalar::ZERO; rank * rank];
        for i in 0..rank {
            cols[i * rank + i] = QuadScalar::ONE;
        }
        GroupElement { rank, cols }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entry(&self, row: usize, col: usize) -> QuadScalar {
        self.cols[col * self.rank + row]
    }

    pub fn column(&self, j: usize) -> &[QuadScalar] {
        &self.cols[j * self.rank..(j + 1) * self.rank]
    }

    /// `w(α_j)`.
    pub fn image_of_simple(&self, j: usize) -> Root {
        Root::new(self.column(j).to_vec())
    }

    pub fn is_identity(&self) -> bool {
        *self == GroupElement::identity(self.rank)
    }

    fn column_is_negative(&self, j: usize) -> bool {
        self.column(j)
            .iter()
            .find(|c| !c.is_zero())
            .is_some_and(|c| c.sign() == Sign::Negative)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rank {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.rank {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entry(r, c))?;
            }
        }
        write!(f, "]")
    }
}

/// A Coxeter graph together with its doubled bilinear form.
#[derive(Debug, Clone)]
pub struct CoxeterSystem {
    graph: CoxeterGraph,
    /// `2B(α_i, α_j)`, row-major.
    form: Vec<QuadScalar>,
}

impl CoxeterSystem {
    pub fn new(graph: CoxeterGraph) -> Result<CoxeterSystem> {
        let n = graph.rank();
        let mut form = vec![QuadScalar::ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                form[i * n + j] = if i == j {
                    QuadScalar::from_int(2)
                } else {
                    QuadScalar::from_label(graph.label(i, j))?.checked_neg()?
                };
            }
        }
        Ok(CoxeterSystem { graph, form })
    }

    pub fn graph(&self) -> &CoxeterGraph {
        &self.graph
    }

    pub fn rank(&self) -> usize {
        self.graph.rank()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity(self.rank())
    }

    fn check_generator(&self, i: usize) -> Result<()> {
        if i >= self.rank() {
            return Err(Error::GeneratorOutOfRange {
                index: i,
                rank: self.rank(),
            });
        }
        Ok(())
    }

    /// `2B(α_i, α_j)`.
    pub fn form_entry(&self, i: usize, j: usize) -> QuadScalar {
        self.form[i * self.rank() + j]
    }

    /// `2B(x, y)`.
    pub fn bilinear(&self, x: &[QuadScalar], y: &[QuadScalar]) -> Result<QuadScalar> {
        let n = self.rank();
        let mut acc = QuadScalar::ZERO;
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            let mut row = QuadScalar::ZERO;
            for j in 0..n {
                row = row.checked_add_mul(&self.form[i * n + j], &y[j])?;
            }
            acc = acc.checked_add_mul(&x[i], &row)?;
        }
        Ok(acc)
    }

    /// `s_i` applied to a vector in place: only coordinate `i` changes.
    fn reflect_in_place(&self, i: usize, x: &mut [QuadScalar]) -> Result<()> {
        let n = self.rank();
        let mut pairing = QuadScalar::ZERO;
        for k in 0..n {
            pairing = pairing.checked_add_mul(&self.form[i * n + k], &x[k])?;
        }
        x[i] = x[i].checked_sub(&pairing)?;
        Ok(())
    }

    pub fn simple_reflection(&self, i: usize) -> Result<GroupElement> {
        self.check_generator(i)?;
        self.right_mul_generator(&self.identity(), i)
    }

    /// `s_i(root)`.
    pub fn reflect(&self, i: usize, root: &Root) -> Result<Root> {
        self.check_generator(i)?;
        let mut coords = root.coords.clone();
        self.reflect_in_place(i, &mut coords)?;
        Ok(Root::new(coords))
    }

    /// `w·s_i`, by updating columns.
    pub fn right_mul_generator(&self, w: &GroupElement, i: usize) -> Result<GroupElement> {
        self.check_generator(i)?;
        let n = self.rank();
        let mut out = w.clone();
        for j in 0..n {
            if j == i {
                continue;
            }
            let c = self.form[i * n + j].checked_neg()?;
            if c.is_zero() {
                continue;
            }
            for r in 0..n {
                out.cols[j * n + r] = out.cols[j * n + r].checked_add_mul(&c, &w.cols[i * n + r])?;
            }
        }
        for r in 0..n {
            out.cols[i * n + r] = w.cols[i * n + r].checked_neg()?;
        }
        Ok(out)
    }

    /// `s_i·w`, reflecting every column.
    pub fn left_mul_generator(&self, i: usize, w: &GroupElement) -> Result<GroupElement> {
        self.check_generator(i)?;
        let n = self.rank();
        let mut out = w.clone();
        for j in 0..n {
            self.reflect_in_place(i, &mut out.cols[j * n..(j + 1) * n])?;
        }
        Ok(out)
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        let n = self.rank();
        let mut cols = vec![QuadScalar::ZERO; n * n];
        for j in 0..n {
            for k in 0..n {
                let bkj = b.cols[j * n + k];
                if bkj.is_zero() {
                    continue;
                }
                for r in 0..n {
                    cols[j * n + r] = cols[j * n + r].checked_add_mul(&a.cols[k * n + r], &bkj)?;
                }
            }
        }
        Ok(GroupElement { rank: n, cols })
    }

    pub fn apply(&self, w: &GroupElement, x: &Root) -> Result<Root> {
        let n = self.rank();
        let mut coords = vec![QuadScalar::ZERO; n];
        for k in 0..n {
            if x.coords[k].is_zero() {
                continue;
            }
            for r in 0..n {
                coords[r] = coords[r].checked_add_mul(&w.cols[k * n + r], &x.coords[k])?;
            }
        }
        Ok(Root::new(coords))
    }

    /// Product of generators, read left to right.
    pub fn element_from_word(&self, word: &[usize]) -> Result<GroupElement> {
        let mut w = self.identity();
        for &s in word {
            w = self.right_mul_generator(&w, s)?;
        }
        Ok(w)
    }

    pub fn inverse(&self, w: &GroupElement) -> Result<GroupElement> {
        let mut word = self.reduced_word(w)?;
        word.reverse();
        self.element_from_word(&word)
    }

    pub fn right_descents(&self, w: &GroupElement) -> Vec<usize> {
        (0..self.rank()).filter(|&j| w.column_is_negative(j)).collect()
    }

    pub fn left_descents(&self, w: &GroupElement) -> Result<Vec<usize>> {
        Ok(self.right_descents(&self.inverse(w)?))
    }

    pub fn is_right_descent(&self, w: &GroupElement, i: usize) -> bool {
        w.column_is_negative(i)
    }

    /// Reduced word, found by stripping the lowest-index right descent until
    /// reaching the identity.
    pub fn reduced_word(&self, w: &GroupElement) -> Result<Vec<usize>> {
        let mut current = w.clone();
        let mut reversed = Vec::new();
        while let Some(s) = (0..self.rank()).find(|&j| current.column_is_negative(j)) {
            current = self.right_mul_generator(&current, s)?;
            reversed.push(s);
        }
        reversed.reverse();
        Ok(reversed)
    }

    pub fn length(&self, w: &GroupElement) -> Result<usize> {
        Ok(self.reduced_word(w)?.len())
    }

    /// Inversion set as explicit roots, in the order `α_{s1}, s1(α_{s2}), ...`
    /// along the reduced word.
    pub fn inversion_roots(&self, w: &GroupElement) -> Result<Vec<Root>> {
        let word = self.reduced_word(w)?;
        let mut prefix = self.identity();
        let mut roots = Vec::with_capacity(word.len());
        for s in word {
            roots.push(prefix.image_of_simple(s));
            prefix = self.right_mul_generator(&prefix, s)?;
        }
        Ok(roots)
    }

    /// `d(u, v) = ℓ(u⁻¹v)`.
    pub fn distance(&self, u: &GroupElement, v: &GroupElement) -> Result<usize> {
        self.length(&self.multiply(&self.inverse(u)?, v)?)
    }

    /// Longest element, or `CapExceeded` once the length passes `cap`.
    pub fn longest_element(&self, cap: usize) -> Result<GroupElement> {
        let mut w = self.identity();
        let mut len = 0;
        while let Some(s) = (0..self.rank()).find(|&j| !w.column_is_negative(j)) {
            if len >= cap {
                return Err(Error::CapExceeded(cap));
            }
            w = self.right_mul_generator(&w, s)?;
            len += 1;
        }
        Ok(w)
    }

    pub fn default_length_cap(&self) -> usize {
        2 * self.rank() * self.rank() * 64
    }

    /// The element whose inversion set is `roots`, found by peeling simple roots.
    pub fn element_from_biclosed(&self, roots: &[Root]) -> Result<GroupElement> {
        let n = self.rank();
        let mut current: HashSet<Root> = roots.iter().cloned().collect();
        if current.len() != roots.len() {
            return Err(Error::NotBiclosed);
        }
        let mut word = Vec::new();
        while !current.is_empty() {
            let s = (0..n)
                .find(|&i| current.contains(&Root::simple(n, i)))
                .ok_or(Error::NotBiclosed)?;
            current.remove(&Root::simple(n, s));
            let mut next = HashSet::with_capacity(current.len());
            for r in &current {
                let image = self.reflect(s, r)?;
                if !image.is_positive() {
                    return Err(Error::NotBiclosed);
                }
                next.insert(image);
            }
            current = next;
            word.push(s);
        }
        self.element_from_word(&word)
    }

    /// Checks `Φ(uv) = Φ(u) Δ ±u(Φ(v))`, the root form of the reflection cocycle.
    pub fn cocycle_check(&self, u: &GroupElement, v: &GroupElement) -> Result<bool> {
        let uv = self.multiply(u, v)?;
        let lhs: HashSet<Root> = self.inversion_roots(&uv)?.into_iter().collect();
        let mut rhs: HashSet<Root> = self.inversion_roots(u)?.into_iter().collect();
        for beta in self.inversion_roots(v)? {
            let image = self.apply(u, &beta)?.positive_representative()?;
            if !rhs.remove(&image) {
                rhs.insert(image);
            }
        }
        Ok(lhs == rhs)
    }

    /// Matrix of the reflection in a root `β` with `B(β, β) = 1`.
    pub fn reflection_matrix(&self, beta: &Root) -> Result<GroupElement> {
        let n = self.rank();
        let mut cols = vec![QuadScalar::ZERO; n * n];
        for j in 0..n {
            let e = Root::simple(n, j);
            let pairing = self.bilinear(e.coords(), beta.coords())?;
            for r in 0..n {
                let delta = if r == j { QuadScalar::ONE } else { QuadScalar::ZERO };
                cols[j * n + r] = delta.checked_sub(&pairing.checked_mul(&beta.coords[r])?)?;
            }
        }
        Ok(GroupElement { rank: n, cols })
    }

    /// `2B(w α_i, w α_j) = 2B(α_i, α_j)` for all `i, j`.
    pub fn preserves_form(&self, w: &GroupElement) -> Result<bool> {
        let n = self.rank();
        for i in 0..n {
            for j in i..n {
                if self.bilinear(w.column(i), w.column(j))? != self.form[i * n + j] {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Whether `γ = aα + bβ` with `a, b ≥ 0`, for linearly independent `α, β`.
    pub fn in_cone(&self, alpha: &Root, beta: &Root, gamma: &Root) -> Result<bool> {
        let n = self.rank();
        for i in 0..n {
            for j in i + 1..n {
                let (ai, aj, bi, bj) = (alpha.coords[i], alpha.coords[j], beta.coords[i], beta.coords[j]);
                let det = ai.checked_mul(&bj)?.checked_sub(&aj.checked_mul(&bi)?)?;
                if det.is_zero() {
                    continue;
                }
                let (gi, gj) = (gamma.coords[i], gamma.coords[j]);
                let a = gi.checked_mul(&bj)?.checked_sub(&gj.checked_mul(&bi)?)?;
                let b = ai.checked_mul(&gj)?.checked_sub(&aj.checked_mul(&gi)?)?;
                for k in 0..n {
                    let lhs = det.checked_mul(&gamma.coords[k])?;
                    let rhs = a
                        .checked_mul(&alpha.coords[k])?
                        .checked_add(&b.checked_mul(&beta.coords[k])?)?;
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
                let ds = det.sign();
                return Ok(a.sign().times(ds) != Sign::Negative && b.sign().times(ds) != Sign::Negative);
            }
        }
        Ok(false)
    }

    /// Closure and coclosure of `set` inside the finite list `positive` of all
    /// positive roots, tested directly on triples.
    pub fn is_biclosed_direct(&self, set: &[Root], positive: &[Root]) -> Result<bool> {
        let inside: HashSet<&Root> = set.iter().collect();
        let outside: Vec<&Root> = positive.iter().filter(|r| !inside.contains(r)).collect();
        let inside_list: Vec<&Root> = set.iter().collect();
        for part in [&inside_list, &outside] {
            let member: HashSet<&Root> = part.iter().copied().collect();
            for (x, a) in part.iter().enumerate() {
                for b in &part[x + 1..] {
                    for g in positive {
                        if member.contains(g) || g == *a || g == *b {
                            continue;
                        }
                        if self.in_cone(a, b, g)? {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }
}
