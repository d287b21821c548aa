//! Balls in the right weak order, intervals, atoms and coatoms, diameters,
//! meets and joins.

use std::collections::HashMap;
use std::ops::Range;

use crate::coxeter::{CoxeterSystem, GroupElement, Root};
use crate::error::{Error, Result};
use crate::graph::CoxeterGraph;
use crate::rootset::{RootId, RootRegistry, RootSet};

/// Dense index of an element inside a [`Ball`].
pub type ElementId = u32;

const NONE: u32 = u32::MAX;

/// Default bound on the number of elements a ball may hold.
pub const DEFAULT_ELEMENT_CAP: usize = 2_000_000;

/// All elements of length at most `radius`, ordered by length and then by
/// first appearance in a breadth-first search over generators `0..n`.
#[derive(Debug, Clone)]
pub struct Ball {
    system: CoxeterSystem,
    radius: usize,
    elements: Vec<GroupElement>,
    lengths: Vec<usize>,
    length_offsets: Vec<usize>,
    parents: Vec<(ElementId, usize)>,
    /// `right_mul[id * n + s]` is the id of `w·s`, or `NONE` outside the ball.
    right_mul: Vec<u32>,
    inversion_sets: Vec<RootSet>,
    right_desc: Vec<u64>,
    left_desc: Vec<u64>,
    registry: RootRegistry,
    /// `reflect[s][r]` is the id of `s(β_r)`, or `NONE` if negative or unregistered.
    reflect: Vec<Vec<u32>>,
    index: HashMap<GroupElement, ElementId>,
}

impl Ball {
    pub fn build(graph: &CoxeterGraph, radius: usize) -> Result<Ball> {
        Ball::build_with_cap(graph, radius, DEFAULT_ELEMENT_CAP)
    }

    pub fn build_with_cap(graph: &CoxeterGraph, radius: usize, element_cap: usize) -> Result<Ball> {
        let system = CoxeterSystem::new(graph.clone())?;
        let n = system.rank();
        if n > 64 {
            return Err(Error::MalformedGraph("rank above 64 is not supported".into()));
        }
        let mut ball = Ball::empty(system, radius);
        let mut layer_start = 0;
        for len in 0..radius {
            let layer_end = ball.elements.len();
            for w in layer_start..layer_end {
                for s in 0..n {
                    if ball.right_desc[w] & (1 << s) != 0 {
                        continue;
                    }
                    let next = ball.system.right_mul_generator(&ball.elements[w], s)?;
                    let id = match ball.index.get(&next) {
                        Some(&id) => id,
                        None => {
                            if ball.elements.len() >= element_cap {
                                return Err(Error::ElementCapExceeded(element_cap));
                            }
                            ball.push_child(w as ElementId, s, next, len + 1)?
                        }
                    };
                    ball.link(w as ElementId, s, id);
                }
            }
            layer_start = layer_end;
            ball.length_offsets.push(ball.elements.len());
        }
        ball.finish()?;
        Ok(ball)
    }

    /// Rebuilds a ball from its spanning tree and cover edges, reproducing
    /// element order and root ids exactly.
    pub fn from_parts(
        graph: &CoxeterGraph,
        radius: usize,
        parents: &[(ElementId, usize)],
        covers: &[(ElementId, usize, ElementId)],
    ) -> Result<Ball> {
        let system = CoxeterSystem::new(graph.clone())?;
        let n = system.rank();
        let mut ball = Ball::empty(system, radius);
        for &(p, s) in parents {
            if p as usize >= ball.elements.len() || s >= n {
                return Err(Error::Cache("parent edge out of range".into()));
            }
            let next = ball.system.right_mul_generator(&ball.elements[p as usize], s)?;
            let len = ball.lengths[p as usize] + 1;
            if len > radius || ball.index.contains_key(&next) {
                return Err(Error::Cache("inconsistent parent edge".into()));
            }
            if ball.lengths.last().is_some_and(|&last| last > len) {
                return Err(Error::Cache("elements not sorted by length".into()));
            }
            let id = ball.push_child(p, s, next, len)?;
            ball.link(p, s, id);
        }
        for &(a, s, b) in covers {
            let (a_len, b_len) = (
                ball.lengths.get(a as usize).copied(),
                ball.lengths.get(b as usize).copied(),
            );
            match (a_len, b_len) {
                (Some(x), Some(y)) if y == x + 1 && s < n => ball.link(a, s, b),
                _ => return Err(Error::Cache("inconsistent cover edge".into())),
            }
        }
        ball.length_offsets = ball.recompute_offsets();
        ball.finish()?;
        for id in 0..ball.elements.len() {
            for s in 0..n {
                let expected = ball.system.right_mul_generator(&ball.elements[id], s)?;
                match ball.right_mul(id as ElementId, s) {
                    Some(x) if ball.elements[x as usize] == expected => {}
                    None if ball.lengths[id] == radius && ball.right_desc[id] & (1 << s) == 0 => {}
                    _ => return Err(Error::Cache("cover edges do not match the group".into())),
                }
            }
        }
        Ok(ball)
    }

    fn empty(system: CoxeterSystem, radius: usize) -> Ball {
        let n = system.rank();
        let mut registry = RootRegistry::new();
        for i in 0..n {
            registry.intern(Root::simple(n, i));
        }
        let identity = system.identity();
        let mut index = HashMap::new();
        index.insert(identity.clone(), 0);
        Ball {
            radius,
            elements: vec![identity],
            lengths: vec![0],
            length_offsets: vec![0, 1],
            parents: vec![(NONE, 0)],
            right_mul: vec![NONE; n],
            inversion_sets: vec![RootSet::new()],
            right_desc: vec![0],
            left_desc: vec![0],
            registry,
            reflect: Vec::new(),
            index,
            system,
        }
    }

    fn recompute_offsets(&self) -> Vec<usize> {
        let mut offsets = vec![0];
        for len in 0..=self.radius {
            let end = self.lengths.partition_point(|&l| l <= len);
            offsets.push(end);
        }
        offsets
    }

    fn push_child(&mut self, parent: ElementId, s: usize, element: GroupElement, len: usize) -> Result<ElementId> {
        let n = self.system.rank();
        let p = parent as usize;
        let new_root = self.elements[p].image_of_simple(s);
        let rid = self.registry.intern(new_root);
        let mut inv = self.inversion_sets[p].clone();
        inv.insert(rid);
        let left = (0..n)
            .filter(|&i| inv.contains(i as RootId))
            .fold(0u64, |acc, i| acc | (1 << i));
        let right = self
            .system
            .right_descents(&element)
            .into_iter()
            .fold(0u64, |acc, i| acc | (1 << i));
        let id = self.elements.len() as ElementId;
        self.index.insert(element.clone(), id);
        self.elements.push(element);
        self.lengths.push(len);
        self.parents.push((parent, s));
        self.right_mul.extend(std::iter::repeat_n(NONE, n));
        self.inversion_sets.push(inv);
        self.right_desc.push(right);
        self.left_desc.push(left);
        Ok(id)
    }

    fn link(&mut self, lower: ElementId, s: usize, upper: ElementId) {
        let n = self.system.rank();
        self.right_mul[lower as usize * n + s] = upper;
        self.right_mul[upper as usize * n + s] = lower;
    }

    fn finish(&mut self) -> Result<()> {
        let n = self.system.rank();
        let mut reflect = vec![vec![NONE; self.registry.len()]; n];
        for (s, table) in reflect.iter_mut().enumerate() {
            for (rid, root) in self.registry.roots().iter().enumerate() {
                if rid == s {
                    continue;
                }
                let image = self.system.reflect(s, root)?;
                if let Some(id) = self.registry.get(&image) {
                    table[rid] = id;
                }
            }
        }
        self.reflect = reflect;
        Ok(())
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    pub fn graph(&self) -> &CoxeterGraph {
        self.system.graph()
    }

    pub fn rank(&self) -> usize {
        self.system.rank()
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn ids(&self) -> Range<ElementId> {
        0..self.elements.len() as ElementId
    }

    pub fn identity(&self) -> ElementId {
        0
    }

    /// Ids of the elements of length exactly `len`.
    pub fn ids_of_length(&self, len: usize) -> Range<ElementId> {
        if len > self.radius {
            let end = self.elements.len() as ElementId;
            return end..end;
        }
        self.length_offsets[len] as ElementId..self.length_offsets[len + 1] as ElementId
    }

    /// Ids of the elements of length at most `len`.
    pub fn ids_up_to_length(&self, len: usize) -> Range<ElementId> {
        let end = self.length_offsets[len.min(self.radius) + 1];
        0..end as ElementId
    }

    pub fn element(&self, id: ElementId) -> &GroupElement {
        &self.elements[id as usize]
    }

    pub fn length(&self, id: ElementId) -> usize {
        self.lengths[id as usize]
    }

    pub fn inversion_set(&self, id: ElementId) -> &RootSet {
        &self.inversion_sets[id as usize]
    }

    pub fn registry(&self) -> &RootRegistry {
        &self.registry
    }

    pub fn id_of(&self, w: &GroupElement) -> Option<ElementId> {
        self.index.get(w).copied()
    }

    /// Spanning-tree parent and the generator leading from it, `None` for `e`.
    pub fn parent(&self, id: ElementId) -> Option<(ElementId, usize)> {
        let (p, s) = self.parents[id as usize];
        (p != NONE).then_some((p, s))
    }

    pub fn right_mul(&self, id: ElementId, s: usize) -> Option<ElementId> {
        let x = self.right_mul[id as usize * self.rank() + s];
        (x != NONE).then_some(x)
    }

    /// Upward cover edges `(s, w·s)` with `ℓ(w·s) = ℓ(w) + 1`.
    pub fn cover_edges(&self, id: ElementId) -> Vec<(usize, ElementId)> {
        (0..self.rank())
            .filter(|&s| self.right_desc[id as usize] & (1 << s) == 0)
            .filter_map(|s| self.right_mul(id, s).map(|x| (s, x)))
            .collect()
    }

    pub fn right_descents(&self, id: ElementId) -> Vec<usize> {
        bits(self.right_desc[id as usize])
    }

    pub fn left_descents(&self, id: ElementId) -> Vec<usize> {
        bits(self.left_desc[id as usize])
    }

    pub fn right_descent_mask(&self, id: ElementId) -> u64 {
        self.right_desc[id as usize]
    }

    pub fn left_descent_mask(&self, id: ElementId) -> u64 {
        self.left_desc[id as usize]
    }

    pub fn d_r(&self, id: ElementId) -> usize {
        self.right_desc[id as usize].count_ones() as usize
    }

    pub fn d_l(&self, id: ElementId) -> usize {
        self.left_desc[id as usize].count_ones() as usize
    }

    /// The reduced word along the spanning tree.
    pub fn word(&self, id: ElementId) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length(id));
        let mut current = id;
        while let Some((p, s)) = self.parent(current) {
            word.push(s);
            current = p;
        }
        word.reverse();
        word
    }

    /// 1-based word string, `e` for the identity.
    pub fn word_string(&self, id: ElementId) -> String {
        format_word(&self.word(id), self.rank())
    }

    /// Looks up the product of a word of generators.
    pub fn element_from_word(&self, word: &[usize]) -> Result<ElementId> {
        let w = self.system.element_from_word(word)?;
        self.id_of(&w).ok_or_else(|| Error::OutsideBall {
            length: self.system.length(&w).unwrap_or(usize::MAX),
            radius: self.radius,
        })
    }

    /// `w⁻¹`, which has the same length as `w`.
    pub fn inverse(&self, id: ElementId) -> ElementId {
        let mut current = 0;
        for s in self.word(id).into_iter().rev() {
            current = self.right_mul(current, s).expect("inverse has the same length");
        }
        current
    }

    pub fn multiply(&self, a: ElementId, b: ElementId) -> Result<ElementId> {
        let product = self.system.multiply(self.element(a), self.element(b))?;
        self.id_of(&product).ok_or_else(|| Error::OutsideBall {
            length: self.system.length(&product).unwrap_or(usize::MAX),
            radius: self.radius,
        })
    }

    /// `u ≤_R w`.
    pub fn is_prefix(&self, u: ElementId, w: ElementId) -> bool {
        self.length(u) <= self.length(w) && self.inversion_set(u).is_subset(self.inversion_set(w))
    }

    /// `d(u, v) = |Φ(u) Δ Φ(v)|`.
    pub fn distance(&self, u: ElementId, v: ElementId) -> usize {
        self.inversion_set(u).symmetric_difference_len(self.inversion_set(v))
    }

    /// The element with inversion set `set`, by peeling simple roots through
    /// the precomputed reflection table.
    pub fn element_from_biclosed(&self, set: &RootSet) -> Result<ElementId> {
        let n = self.rank();
        if set.len() > self.radius {
            return Err(Error::OutsideBall {
                length: set.len(),
                radius: self.radius,
            });
        }
        let mut current = set.clone();
        let mut word = Vec::with_capacity(set.len());
        while !current.is_empty() {
            let s = (0..n)
                .find(|&i| current.contains(i as RootId))
                .ok_or(Error::NotBiclosed)?;
            let mut next = RootSet::new();
            for r in current.iter() {
                if r as usize == s {
                    continue;
                }
                let image = self.reflect[s].get(r as usize).copied().unwrap_or(NONE);
                if image == NONE {
                    return Err(Error::NotBiclosed);
                }
                next.insert(image);
            }
            current = next;
            word.push(s);
        }
        let mut id = 0;
        for s in word {
            id = self.right_mul(id, s).ok_or(Error::NotBiclosed)?;
        }
        Ok(id)
    }

    /// Simple-root vector for id checks in tests and reports.
    pub fn root(&self, id: RootId) -> &Root {
        self.registry.root(id)
    }
}

fn bits(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask & (1 << i) != 0).collect()
}

/// 1-based word text: digits when the rank is below 10, commas otherwise.
pub fn format_word(word: &[usize], rank: usize) -> String {
    if word.is_empty() {
        return "e".to_string();
    }
    let parts: Vec<String> = word.iter().map(|s| (s + 1).to_string()).collect();
    if rank > 9 {
        parts.join(",")
    } else {
        parts.concat()
    }
}

/// Parses a 1-based word (`"42131"`, `"1,10,2"`, or `"e"`) into 0-based generators.
pub fn parse_word(text: &str, rank: usize) -> Result<Vec<usize>> {
    let text = text.trim();
    if text.is_empty() || text == "e" {
        return Ok(Vec::new());
    }
    let letters: Vec<&str> = if text.contains(',') || text.contains(' ') {
        text.split([',', ' ']).filter(|t| !t.is_empty()).collect()
    } else {
        text.split("").filter(|t| !t.is_empty()).collect()
    };
    letters
        .into_iter()
        .map(|t| {
            let k: usize = t
                .parse()
                .map_err(|_| Error::MalformedWord(format!("bad letter {t:?}")))?;
            if k == 0 || k > rank {
                return Err(Error::MalformedWord(format!("letter {k} outside generators 1..{rank}")));
            }
            Ok(k - 1)
        })
        .collect()
}

/// An interval `[u, w]_R` of the weak order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub bottom: ElementId,
    pub top: ElementId,
    pub members: Vec<ElementId>,
}

impl Interval {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, id: ElementId) -> bool {
        self.members.binary_search(&id).is_ok()
    }
}

/// `[e, w]_R` by subset tests against `Φ(w)`.
pub fn interval(ball: &Ball, w: ElementId) -> Interval {
    let target = ball.inversion_set(w);
    let members = ball
        .ids_up_to_length(ball.length(w))
        .filter(|&g| ball.inversion_set(g).is_subset(target))
        .collect();
    Interval {
        bottom: 0,
        top: w,
        members,
    }
}

/// `[u, w]_R`.
pub fn interval_between(ball: &Ball, u: ElementId, w: ElementId) -> Result<Interval> {
    if !ball.is_prefix(u, w) {
        return Err(Error::NotAPrefix);
    }
    let (low, high) = (ball.inversion_set(u), ball.inversion_set(w));
    let lo = ball.ids_of_length(ball.length(u)).start;
    let hi = ball.ids_up_to_length(ball.length(w)).end;
    let members = (lo..hi)
        .filter(|&g| {
            let phi = ball.inversion_set(g);
            low.is_subset(phi) && phi.is_subset(high)
        })
        .collect();
    Ok(Interval {
        bottom: u,
        top: w,
        members,
    })
}

/// `[e, w]_R` by walking down right descents from `w`.
pub fn prefix_set_bfs(ball: &Ball, w: ElementId) -> Vec<ElementId> {
    let mut seen = vec![false; ball.len()];
    let mut stack = vec![w];
    seen[w as usize] = true;
    while let Some(x) = stack.pop() {
        for s in ball.right_descents(x) {
            let y = ball.right_mul(x, s).expect("descents stay inside the ball");
            if !seen[y as usize] {
                seen[y as usize] = true;
                stack.push(y);
            }
        }
    }
    (0..ball.len() as ElementId).filter(|&i| seen[i as usize]).collect()
}

fn between(ball: &Ball, u: ElementId, g: ElementId, w: ElementId) -> bool {
    ball.is_prefix(u, g) && ball.is_prefix(g, w)
}

/// Elements of the interval covering its bottom.
pub fn atoms(ball: &Ball, i: &Interval) -> Vec<ElementId> {
    atoms_between(ball, i.bottom, i.top)
}

/// Elements of the interval covered by its top.
pub fn coatoms(ball: &Ball, i: &Interval) -> Vec<ElementId> {
    coatoms_between(ball, i.bottom, i.top)
}

/// Atoms of `[u, w]_R` without materializing the interval.
pub fn atoms_between(ball: &Ball, u: ElementId, w: ElementId) -> Vec<ElementId> {
    let mut out: Vec<ElementId> = (0..ball.rank())
        .filter(|&s| ball.right_descent_mask(u) & (1 << s) == 0)
        .filter_map(|s| ball.right_mul(u, s))
        .filter(|&g| between(ball, u, g, w))
        .collect();
    out.sort_unstable();
    out
}

/// Coatoms of `[u, w]_R` without materializing the interval.
pub fn coatoms_between(ball: &Ball, u: ElementId, w: ElementId) -> Vec<ElementId> {
    let mut out: Vec<ElementId> = ball
        .right_descents(w)
        .into_iter()
        .filter_map(|s| ball.right_mul(w, s))
        .filter(|&g| between(ball, u, g, w))
        .collect();
    out.sort_unstable();
    out
}

/// Unordered pairs `{u, v}` of `[e, w]_R` at distance `ℓ(w)`, as `(u, v)` with `u ≤ v` by id.
/// For `w = e` this is the single degenerate pair `(e, e)`.
pub fn diameters(ball: &Ball, w: ElementId) -> Vec<(ElementId, ElementId)> {
    let members = interval(ball, w).members;
    let target = ball.length(w);
    let mut out = Vec::new();
    for (a, &u) in members.iter().enumerate() {
        let phi_u = ball.inversion_set(u);
        for &v in &members[a..] {
            if ball.length(u) + ball.length(v) < target {
                continue;
            }
            if phi_u.symmetric_difference_len(ball.inversion_set(v)) == target {
                out.push((u, v));
            }
        }
    }
    out
}

/// Greatest common lower bound.
pub fn meet(ball: &Ball, xs: &[ElementId]) -> Result<ElementId> {
    let Some(&first) = xs.first() else {
        return Err(Error::LatticeViolation("meet of an empty family".into()));
    };
    let common = xs.iter().fold(ball.inversion_set(first).clone(), |acc, &x| {
        acc.intersection(ball.inversion_set(x))
    });
    let min_len = xs.iter().map(|&x| ball.length(x)).min().unwrap_or(0);
    let lower: Vec<ElementId> = ball
        .ids_up_to_length(min_len)
        .filter(|&g| ball.inversion_set(g).is_subset(&common))
        .collect();
    extremum(ball, &lower, true)
}

/// Least common upper bound inside `[e, w]_R`.
pub fn join_bounded(ball: &Ball, xs: &[ElementId], w: ElementId) -> Result<ElementId> {
    if xs.iter().any(|&x| !ball.is_prefix(x, w)) {
        return Err(Error::NotAPrefix);
    }
    let union = xs
        .iter()
        .fold(RootSet::new(), |acc, &x| acc.union(ball.inversion_set(x)));
    let upper: Vec<ElementId> = interval(ball, w)
        .members
        .into_iter()
        .filter(|&g| union.is_subset(ball.inversion_set(g)))
        .collect();
    extremum(ball, &upper, false)
}

fn extremum(ball: &Ball, candidates: &[ElementId], maximum: bool) -> Result<ElementId> {
    let lengths = candidates.iter().map(|&g| ball.length(g));
    let best_len = if maximum { lengths.max() } else { lengths.min() }
        .ok_or_else(|| Error::LatticeViolation("no common bound".into()))?;
    let best: Vec<ElementId> = candidates
        .iter()
        .copied()
        .filter(|&g| ball.length(g) == best_len)
        .collect();
    if best.len() != 1 {
        return Err(Error::LatticeViolation(format!(
            "{} candidates of extremal length {best_len}",
            best.len()
        )));
    }
    let b = best[0];
    let comparable = candidates.iter().all(|&g| {
        if maximum {
            ball.is_prefix(g, b)
        } else {
            ball.is_prefix(b, g)
        }
    });
    if !comparable {
        return Err(Error::LatticeViolation("extremum not comparable to all bounds".into()));
    }
    Ok(b)
}

/// `φ_w(g) = w⁻¹g`.
pub fn phi_map(ball: &Ball, w: ElementId, g: ElementId) -> Result<ElementId> {
    if !ball.is_prefix(g, w) {
        return Err(Error::NotAPrefix);
    }
    ball.multiply(ball.inverse(w), g)
}
