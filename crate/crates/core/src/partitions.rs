//! Bipartitions and k-partitions of inversion sets, partition-irreducibility,
//! and the conjecture verifiers.

use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::weak_order::{self, Ball, ElementId};

/// `Φ(w) = Φ(u) ⊔ Φ(v)` with `u ≤ v` by id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bipartition {
    pub top: ElementId,
    pub u: ElementId,
    pub v: ElementId,
    pub proper: bool,
}

/// Parts in strictly increasing id order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KPartition {
    pub top: ElementId,
    pub parts: Vec<ElementId>,
}

/// The `v` with `Φ(v) = Φ(w) \ Φ(u)`, if that set is an inversion set.
pub fn complement_in(ball: &Ball, w: ElementId, u: ElementId) -> Result<Option<ElementId>> {
    if !ball.is_prefix(u, w) {
        return Err(Error::NotAPrefix);
    }
    let rest = ball.inversion_set(w).difference(ball.inversion_set(u));
    match ball.element_from_biclosed(&rest) {
        Ok(v) => Ok(Some(v)),
        Err(Error::NotBiclosed) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Prefixes of `w` of length at most `max_len`.
fn short_prefixes(ball: &Ball, w: ElementId, max_len: usize) -> impl Iterator<Item = ElementId> + '_ {
    let phi = ball.inversion_set(w);
    ball.ids_up_to_length(max_len)
        .filter(move |&u| ball.inversion_set(u).is_subset(phi))
}

fn complement_of_prefix(ball: &Ball, w: ElementId, u: ElementId) -> Option<ElementId> {
    complement_in(ball, w, u).expect("u is a prefix of w inside the ball")
}

/// All bipartitions of `w`, including the improper `{e, w}`.
pub fn bipartitions(ball: &Ball, w: ElementId) -> Vec<Bipartition> {
    let half = ball.length(w) / 2;
    let mut out = Vec::new();
    for u in short_prefixes(ball, w, half) {
        if let Some(v) = complement_of_prefix(ball, w, u) {
            if u <= v {
                out.push(Bipartition {
                    top: w,
                    u,
                    v,
                    proper: u != 0 && v != 0,
                });
            }
        }
    }
    out
}

pub fn has_proper_bipartition(ball: &Ball, w: ElementId) -> bool {
    if ball.d_l(w) <= 1 {
        return false;
    }
    let half = ball.length(w) / 2;
    short_prefixes(ball, w, half)
        .filter(|&u| u != 0)
        .any(|u| complement_of_prefix(ball, w, u).is_some())
}

pub fn is_partition_irreducible(ball: &Ball, w: ElementId) -> bool {
    !has_proper_bipartition(ball, w)
}

/// All sets of `k` distinct elements whose inversion sets partition `Φ(w)`.
pub fn k_partitions(ball: &Ball, w: ElementId, k: usize) -> Vec<KPartition> {
    let mut out = Vec::new();
    let mut parts = Vec::with_capacity(k);
    collect_partitions(ball, w, k, None, &mut parts, &mut |parts| {
        out.push(KPartition {
            top: w,
            parts: parts.to_vec(),
        })
    });
    out
}

fn collect_partitions(
    ball: &Ball,
    rest: ElementId,
    k: usize,
    floor: Option<ElementId>,
    parts: &mut Vec<ElementId>,
    emit: &mut dyn FnMut(&[ElementId]),
) {
    let above = |g: ElementId| floor.is_none_or(|f| g > f);
    if k == 0 {
        return;
    }
    if k == 1 {
        if above(rest) {
            parts.push(rest);
            emit(parts);
            parts.pop();
        }
        return;
    }
    let candidates: Vec<ElementId> = short_prefixes(ball, rest, ball.length(rest)).collect();
    for u in candidates {
        if !above(u) {
            continue;
        }
        if let Some(v) = complement_of_prefix(ball, rest, u) {
            parts.push(u);
            collect_partitions(ball, v, k - 1, Some(u), parts, emit);
            parts.pop();
        }
    }
}

/// A failed identity, with 1-based words of the elements involved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub w: String,
    pub u: String,
    pub v: String,
    pub detail: String,
}

/// Outcome of checking one top element.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ElementCheck {
    pub pairs: usize,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Conjecture {
    /// `d_R(w) = d_R(u) + d_R(v)`.
    DescentAdditivity,
    /// Coatoms of `[e, w]` split over `[e, u]` and `[e, v]`.
    Coatoms,
    /// Atoms of `[e, w]` split over `[u, w]` and `[v, w]`.
    Atoms,
}

impl Conjecture {
    pub fn from_number(k: u8) -> Option<Conjecture> {
        match k {
            1 => Some(Conjecture::DescentAdditivity),
            2 => Some(Conjecture::Coatoms),
            3 => Some(Conjecture::Atoms),
            _ => None,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Conjecture::DescentAdditivity => 1,
            Conjecture::Coatoms => 2,
            Conjecture::Atoms => 3,
        }
    }
}

fn violation(ball: &Ball, w: ElementId, u: ElementId, v: ElementId, detail: String) -> Violation {
    Violation {
        w: ball.word_string(w),
        u: ball.word_string(u),
        v: ball.word_string(v),
        detail,
    }
}

pub fn verify_conjecture1(ball: &Ball, w: ElementId) -> ElementCheck {
    let mut check = ElementCheck::default();
    for b in bipartitions(ball, w) {
        check.pairs += 1;
        let (dw, du, dv) = (ball.d_r(w), ball.d_r(b.u), ball.d_r(b.v));
        if dw != du + dv {
            let detail = format!("d_R: {dw} != {du} + {dv}");
            check.violations.push(violation(ball, w, b.u, b.v, detail));
        }
    }
    check
}

pub fn coatom_count(ball: &Ball, u: ElementId, w: ElementId) -> usize {
    weak_order::coatoms_between(ball, u, w).len()
}

pub fn atom_count(ball: &Ball, u: ElementId, w: ElementId) -> usize {
    weak_order::atoms_between(ball, u, w).len()
}

pub fn verify_conjecture2(ball: &Ball, w: ElementId) -> ElementCheck {
    let mut check = ElementCheck::default();
    for (u, v) in weak_order::diameters(ball, w) {
        check.pairs += 1;
        let (cw, cu, cv) = (
            coatom_count(ball, 0, w),
            coatom_count(ball, 0, u),
            coatom_count(ball, 0, v),
        );
        if cw != cu + cv {
            let detail = format!("coatoms: {cw} != {cu} + {cv}");
            check.violations.push(violation(ball, w, u, v, detail));
        }
    }
    check
}

pub fn verify_conjecture3(ball: &Ball, w: ElementId) -> ElementCheck {
    let mut check = ElementCheck::default();
    for (u, v) in weak_order::diameters(ball, w) {
        if u == v {
            // The degenerate pair {e, e} of the identity.
            check.pairs += 1;
            continue;
        }
        check.pairs += 1;
        let (aw, au, av) = (atom_count(ball, 0, w), atom_count(ball, u, w), atom_count(ball, v, w));
        if aw != au + av {
            let detail = format!("atoms: {aw} != {au} + {av}");
            check.violations.push(violation(ball, w, u, v, detail));
        }
    }
    check
}

pub fn verify_element(ball: &Ball, conjecture: Conjecture, w: ElementId) -> ElementCheck {
    match conjecture {
        Conjecture::DescentAdditivity => verify_conjecture1(ball, w),
        Conjecture::Coatoms => verify_conjecture2(ball, w),
        Conjecture::Atoms => verify_conjecture3(ball, w),
    }
}

/// Verifier output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub group: String,
    pub radius: usize,
    pub conjecture: u8,
    pub checked_elements: usize,
    pub checked_pairs: usize,
    pub violations: Vec<Violation>,
    pub elapsed_ms: u128,
}

/// Checks a conjecture on every element of length at most `max_len`, in parallel
/// over elements; results are merged in element order.
pub fn verify_ball(ball: &Ball, conjecture: Conjecture, max_len: usize) -> Report {
    let start = Instant::now();
    let ids: Vec<ElementId> = ball.ids_up_to_length(max_len).collect();
    let checks: Vec<ElementCheck> = ids.par_iter().map(|&w| verify_element(ball, conjecture, w)).collect();
    Report {
        group: ball.graph().display_name(),
        radius: max_len.min(ball.radius()),
        conjecture: conjecture.number(),
        checked_elements: ids.len(),
        checked_pairs: checks.iter().map(|c| c.pairs).sum(),
        violations: checks.into_iter().flat_map(|c| c.violations).collect(),
        elapsed_ms: start.elapsed().as_millis(),
    }
}

/// The longest element of a finite group whose whole ball is built.
pub fn longest_in_ball(ball: &Ball) -> Result<ElementId> {
    let system = ball.system();
    let w0 = system.longest_element(system.default_length_cap())?;
    ball.id_of(&w0).ok_or_else(|| Error::OutsideBall {
        length: system.length(&w0).unwrap_or(usize::MAX),
        radius: ball.radius(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LongestReport {
    pub group_order: usize,
    pub longest_length: usize,
    pub total_bipartitions: usize,
    pub proper_bipartitions: usize,
    /// Bipartitions of `w∘` coincide with `{{u, u·w∘}}`.
    pub matches_cosets: bool,
    /// `d_R(u) + d_R(v) = |S|` on every bipartition of `w∘`.
    pub rank_additive: bool,
}

pub fn verify_longest(ball: &Ball) -> Result<LongestReport> {
    let w0 = longest_in_ball(ball)?;
    let found: BTreeSet<(ElementId, ElementId)> = bipartitions(ball, w0).into_iter().map(|b| (b.u, b.v)).collect();
    let mut expected = BTreeSet::new();
    for u in ball.ids() {
        let v = ball.multiply(u, w0)?;
        expected.insert((u.min(v), u.max(v)));
    }
    let rank = ball.rank();
    Ok(LongestReport {
        group_order: ball.len(),
        longest_length: ball.length(w0),
        total_bipartitions: found.len(),
        proper_bipartitions: found.iter().filter(|(u, v)| *u != 0 && *v != 0).count(),
        matches_cosets: found == expected,
        rank_additive: found.iter().all(|&(u, v)| ball.d_r(u) + ball.d_r(v) == rank),
    })
}

fn is_bipartition(ball: &Ball, w: ElementId, u: ElementId, v: ElementId) -> bool {
    let (pu, pv) = (ball.inversion_set(u), ball.inversion_set(v));
    pu.is_disjoint(pv) && pu.union(pv) == *ball.inversion_set(w)
}

/// Truth of the three equivalent clauses relating a triple to `w∘`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ReductionClauses {
    /// `{u, v}` bipartitions `w`.
    pub first: bool,
    /// `{u, w·w∘}` bipartitions `v·w∘`.
    pub second: bool,
    /// `{w·w∘, v}` bipartitions `u·w∘`.
    pub third: bool,
    /// Descent additivity transfers between the first two cases.
    pub descents_transfer: bool,
}

impl ReductionClauses {
    pub fn consistent(&self) -> bool {
        self.first == self.second && self.second == self.third && self.descents_transfer
    }
}

pub fn verify_reduction_longest(
    ball: &Ball,
    w: ElementId,
    u: ElementId,
    v: ElementId,
    w0: ElementId,
) -> Result<ReductionClauses> {
    let ww0 = ball.multiply(w, w0)?;
    let vw0 = ball.multiply(v, w0)?;
    let uw0 = ball.multiply(u, w0)?;
    let first = is_bipartition(ball, w, u, v);
    let second = is_bipartition(ball, vw0, u, ww0);
    let third = is_bipartition(ball, uw0, ww0, v);
    let descents_transfer =
        !first || ((ball.d_r(w) == ball.d_r(u) + ball.d_r(v)) == (ball.d_r(vw0) == ball.d_r(u) + ball.d_r(ww0)));
    Ok(ReductionClauses {
        first,
        second,
        third,
        descents_transfer,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RessayreReport {
    pub rank: usize,
    pub three_partitions: usize,
    pub proper_three_partitions: usize,
    pub violations_all: usize,
    pub violations_proper: usize,
    /// 3-partitions of `w∘` correspond to bipartitions of `u₃·w∘`, counted over choices of `u₃`.
    pub correspondence_holds: bool,
}

pub fn ressayre_check(ball: &Ball) -> Result<RessayreReport> {
    let w0 = longest_in_ball(ball)?;
    let rank = ball.rank();
    let parts = k_partitions(ball, w0, 3);
    let rank_sum = |p: &KPartition| p.parts.iter().map(|&u| ball.d_r(u)).sum::<usize>();
    let proper: Vec<&KPartition> = parts.iter().filter(|p| !p.parts.contains(&0)).collect();

    let mut from_partitions = BTreeSet::new();
    for p in &parts {
        for i in 0..3 {
            let u3 = p.parts[i];
            let mut rest: Vec<ElementId> = p.parts.iter().copied().filter(|&x| x != u3).collect();
            rest.sort_unstable();
            from_partitions.insert((u3, rest[0], rest[1]));
        }
    }
    let mut from_bipartitions = BTreeSet::new();
    let mut consistent = true;
    for u3 in ball.ids() {
        let w = ball.multiply(u3, w0)?;
        for b in bipartitions(ball, w) {
            if b.u == b.v || b.u == u3 || b.v == u3 {
                continue;
            }
            let additive = ball.d_r(b.u) + ball.d_r(b.v) == ball.d_r(w);
            let rank_ok = ball.d_r(b.u) + ball.d_r(b.v) + ball.d_r(u3) == rank;
            consistent &= additive == rank_ok;
            from_bipartitions.insert((u3, b.u, b.v));
        }
    }
    Ok(RessayreReport {
        rank,
        three_partitions: parts.len(),
        proper_three_partitions: proper.len(),
        violations_all: parts.iter().filter(|p| rank_sum(p) != rank).count(),
        violations_proper: proper.iter().filter(|p| rank_sum(p) != rank).count(),
        correspondence_holds: consistent && from_partitions == from_bipartitions,
    })
}
