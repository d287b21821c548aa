//! Checks shared by the acceptance harness and the property suites. Each
//! returns a one-line summary on success and a witness on failure.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use coxpart::enumeration::genfuns;
use coxpart::partitions::{bipartitions, is_partition_irreducible, k_partitions};
use coxpart::perm_a::{coxeter_from_perm, decompose_a, decreasing_check_a, PermTable};
use coxpart::perm_b::{coxeter_from_signed, decompose_b, SignedTable};
use coxpart::weak_order::{self, diameters, join_bounded, meet, prefix_set_bfs};
use coxpart::{parse_graph, Ball, CoxeterSystem, ElementId, GenPoly, QuadScalar, Root, RootSet};

pub type Check = Result<String, String>;

pub fn ball(name: &str, radius: usize) -> Ball {
    Ball::build(&parse_graph(name).unwrap(), radius).unwrap()
}

/// The whole of a finite group.
pub fn full_ball(name: &str) -> Ball {
    let system = CoxeterSystem::new(parse_graph(name).unwrap()).unwrap();
    let w0 = system.longest_element(system.default_length_cap()).unwrap();
    ball(name, system.length(&w0).unwrap())
}

/// Finite groups with the length of their longest element.
pub const FINITE: [(&str, usize); 11] = [
    ("A2", 3),
    ("A3", 6),
    ("A4", 10),
    ("A5", 15),
    ("B2", 4),
    ("B3", 9),
    ("B4", 16),
    ("D4", 12),
    ("D5", 20),
    ("F4", 24),
    ("H3", 15),
];

pub const INFINITE: [&str; 5] = ["affineA2", "affineB2", "affineG2", "tri(3,3,4)", "tritail"];

/// Every reference group with its truncation length.
pub fn reference_groups() -> Vec<(&'static str, usize)> {
    FINITE
        .iter()
        .copied()
        .chain(INFINITE.iter().map(|&g| (g, 12)))
        .collect()
}

pub const BIP: [(&str, &str); 16] = [
    ("A2", "q^3"),
    ("A3", "q^2 + 2q^3 + 4q^4 + 3q^5 + q^6"),
    ("A4", "3q^2 + 7q^3 + 10q^4 + 16q^5 + 16q^6 + 15q^7 + 9q^8 + 4q^9 + q^10"),
    ("A5", "6q^2 + 17q^3 + 30q^4 + 43q^5 + 62q^6 + 78q^7 + 74q^8 + 79q^9 + 67q^10 + 49q^11 + 29q^12 + 14q^13 + 5q^14 + q^15"),
    ("B2", "q^4"),
    ("B3", "q^2 + q^3 + 3q^4 + 2q^5 + 4q^6 + 4q^7 + 3q^8 + q^9"),
    ("B4", "3q^2 + 6q^3 + 10q^4 + 12q^5 + 19q^6 + 17q^7 + 21q^8 + 19q^9 + 22q^10 + 23q^11 + 19q^12 + 16q^13 + 9q^14 + 4q^15 + q^16"),
    ("D4", "3q^2 + 4q^3 + 12q^4 + 15q^5 + 15q^6 + 15q^7 + 21q^8 + 15q^9 + 9q^10 + 4q^11 + q^12"),
    ("D5", "6q^2 + 14q^3 + 26q^4 + 44q^5 + 65q^6 + 78q^7 + 99q^8 + 114q^9 + 103q^10 + 115q^11 + 122q^12 + 101q^13 + 100q^14 + 80q^15 + 54q^16 + 30q^17 + 14q^18 + 5q^19 + q^20"),
    ("F4", "3q^2 + 6q^3 + 7q^4 + 12q^5 + 10q^6 + 20q^7 + 24q^8 + 26q^9 + 26q^10 + 22q^11 + 28q^12 + 22q^13 + 26q^14 + 26q^15 + 28q^16 + 24q^17 + 26q^18 + 20q^19 + 21q^20 + 16q^21 + 9q^22 + 4q^23 + q^24"),
    ("H3", "q^2 + q^3 + 2q^4 + q^5 + 3q^6 + 2q^7 + 4q^8 + 2q^9 + 3q^10 + 2q^11 + 4q^12 + 4q^13 + 3q^14 + q^15"),
    ("affineA2", "3q^3 + 6q^5 + 6q^7 + 6q^9 + 6q^11"),
    ("affineB2", "2q^2 + 4q^3 + 16q^4 + 20q^5 + 12q^6 + 32q^7 + 44q^8 + 24q^9 + 44q^10 + 56q^11 + 36q^12"),
    ("affineG2", "q^2 + 2q^4 + 4q^5 + 2q^6 + 2q^7 + 2q^8 + 4q^9 + 4q^10 + 2q^12"),
    ("tri(3,3,4)", "2q^3 + q^4 + 2q^5 + 4q^6 + 6q^8 + 4q^10 + 2q^11 + 2q^12"),
    ("tritail", "2q^2 + 6q^3 + 9q^4 + 16q^5 + 16q^6 + 22q^7 + 27q^8 + 28q^9 + 32q^10 + 40q^11 + 50q^12"),
];

pub const PIRR: [(&str, &str); 16] = [
    ("A2", "1 + 2q + 2q^2"),
    ("A3", "1 + 3q + 4q^2 + 4q^3 + q^4"),
    ("A4", "1 + 4q + 6q^2 + 8q^3 + 10q^4 + 6q^5 + 4q^6"),
    ("A5", "1 + 5q + 8q^2 + 12q^3 + 19q^4 + 28q^5 + 28q^6 + 23q^7 + 27q^8 + 11q^9 + 4q^10"),
    ("B2", "1 + 2q + 2q^2 + 2q^3"),
    ("B3", "1 + 3q + 4q^2 + 6q^3 + 5q^4 + 6q^5 + 3q^6 + q^7"),
    ("B4", "1 + 4q + 6q^2 + 10q^3 + 14q^4 + 20q^5 + 20q^6 + 27q^7 + 25q^8 + 25q^9 + 17q^10 + 9q^11 + 5q^12"),
    ("D4", "1 + 4q + 6q^2 + 12q^3 + 11q^4 + 13q^5 + 15q^6 + 13q^7 + 2q^8 + q^9"),
    ("D5", "1 + 5q + 8q^2 + 16q^3 + 28q^4 + 41q^5 + 55q^6 + 77q^7 + 86q^8 + 91q^9 + 109q^10 + 90q^11 + 63q^12 + 54q^13 + 20q^14 + 5q^15"),
    ("F4", "1 + 4q + 6q^2 + 10q^3 + 18q^4 + 24q^5 + 38q^6 + 40q^7 + 47q^8 + 54q^9 + 61q^10 + 70q^11 + 66q^12 + 70q^13 + 61q^14 + 54q^15 + 43q^16 + 36q^17 + 22q^18 + 16q^19 + 4q^20"),
    ("H3", "1 + 3q + 4q^2 + 6q^3 + 7q^4 + 10q^5 + 9q^6 + 10q^7 + 8q^8 + 10q^9 + 8q^10 + 7q^11 + 3q^12 + q^13"),
    ("affineA2", "1 + 3q + 6q^2 + 6q^3 + 12q^4 + 9q^5 + 18q^6 + 15q^7 + 24q^8 + 21q^9 + 30q^10 + 27q^11 + 36q^12"),
    ("affineB2", "1 + 3q + 4q^2 + 8q^3 + 9q^4 + 9q^5 + 14q^6 + 17q^7 + 19q^8 + 20q^9 + 23q^10 + 29q^11 + 30q^12"),
    ("affineG2", "1 + 3q + 4q^2 + 6q^3 + 7q^4 + 12q^5 + 13q^6 + 15q^7 + 16q^8 + 19q^9 + 23q^10 + 23q^11 + 27q^12"),
    ("tri(3,3,4)", "1 + 3q + 6q^2 + 8q^3 + 14q^4 + 20q^5 + 27q^6 + 44q^7 + 56q^8 + 87q^9 + 118q^10 + 169q^11 + 238q^12"),
    ("tritail", "1 + 4q + 8q^2 + 14q^3 + 26q^4 + 41q^5 + 73q^6 + 114q^7 + 178q^8 + 278q^9 + 422q^10 + 631q^11 + 939q^12"),
];

/// Reads `3q^2 + q^3 + 1` style polynomials.
pub fn parse_poly(text: &str) -> GenPoly {
    let mut terms = Vec::new();
    for term in text.split('+').map(str::trim).filter(|t| !t.is_empty()) {
        let (coef, power) = match term.find('q') {
            None => (term, 0),
            Some(i) => {
                let power = match term[i + 1..].strip_prefix('^') {
                    Some(p) => p.parse().unwrap(),
                    None => 1,
                };
                (term[..i].trim_end_matches('*'), power)
            }
        };
        let coef = if coef.is_empty() { 1 } else { coef.parse().unwrap() };
        terms.push((coef, power));
    }
    GenPoly::from_terms(&terms)
}

/// `(Bip, PIrr, growth)` for every reference group.
pub fn all_series() -> Vec<(&'static str, usize, GenPoly, GenPoly, GenPoly)> {
    reference_groups()
        .into_iter()
        .map(|(name, k)| {
            let b = ball(name, k);
            let (bip, pirr) = genfuns(&b, k);
            let growth = coxpart::enumeration::growth_series(&b, k);
            (name, k, bip, pirr, growth)
        })
        .collect()
}

fn pairs(ball: &Ball) -> impl Iterator<Item = (ElementId, ElementId)> + '_ {
    ball.ids().flat_map(move |u| ball.ids().map(move |v| (u, v)))
}

/// `Φ(uv) = Φ(u) Δ u·Φ(v)` on all pairs, computed on roots.
pub fn cocycle(name: &str) -> Check {
    let system = CoxeterSystem::new(parse_graph(name).unwrap()).unwrap();
    let b = full_ball(name);
    let mut count = 0;
    for (u, v) in pairs(&b) {
        if !system.cocycle_check(b.element(u), b.element(v)).unwrap() {
            return Err(format!(
                "{name}: cocycle fails for u = {}, v = {}",
                b.word_string(u),
                b.word_string(v)
            ));
        }
        count += 1;
    }
    Ok(format!("{name}: {count} pairs"))
}

/// Length, distance, disjointness, prefix and complement identities on all pairs.
pub fn phi_identities(name: &str) -> Check {
    let system = CoxeterSystem::new(parse_graph(name).unwrap()).unwrap();
    let b = full_ball(name);
    let w0 = coxpart::partitions::longest_in_ball(&b).unwrap();
    let all_roots = b.inversion_set(w0).clone();
    let prefixes: Vec<HashSet<ElementId>> = b.ids().map(|w| prefix_set_bfs(&b, w).into_iter().collect()).collect();
    let roots_of =
        |id: ElementId| -> HashSet<Root> { system.inversion_roots(b.element(id)).unwrap().into_iter().collect() };
    for w in b.ids() {
        if b.inversion_set(w).len() != b.length(w) || system.length(b.element(w)).unwrap() != b.length(w) {
            return Err(format!("{name}: |Φ(w)| != ℓ(w) for {}", b.word_string(w)));
        }
        let ww0 = b.multiply(w, w0).unwrap();
        if *b.inversion_set(ww0) != all_roots.difference(b.inversion_set(w))
            || b.length(ww0) != b.length(w0) - b.length(w)
        {
            return Err(format!("{name}: Φ(w·w∘) != Φ⁺ \\ Φ(w) for {}", b.word_string(w)));
        }
    }
    for (u, v) in pairs(&b) {
        let (pu, pv) = (b.inversion_set(u), b.inversion_set(v));
        let d = system.distance(b.element(u), b.element(v)).unwrap();
        if d != pu.symmetric_difference_len(pv) {
            return Err(format!(
                "{name}: d(u,v) != |Φ(u) Δ Φ(v)| at {}, {}",
                b.word_string(u),
                b.word_string(v)
            ));
        }
        if (d == b.length(u) + b.length(v)) != pu.is_disjoint(pv) {
            return Err(format!(
                "{name}: disjointness criterion fails at {}, {}",
                b.word_string(u),
                b.word_string(v)
            ));
        }
        if pu.is_subset(pv) != prefixes[v as usize].contains(&u) {
            return Err(format!(
                "{name}: Φ(u) ⊆ Φ(v) disagrees with prefix search at {}, {}",
                b.word_string(u),
                b.word_string(v)
            ));
        }
        let uv = b.multiply(u, v).unwrap();
        if b.length(uv) == b.length(u) + b.length(v) {
            let mut expected = roots_of(u);
            for beta in roots_of(v) {
                let image = system.apply(b.element(u), &beta).unwrap();
                if !expected.insert(image) {
                    return Err(format!("{name}: reduced product not disjoint"));
                }
            }
            if expected != roots_of(uv) {
                return Err(format!(
                    "{name}: Φ(uv) != Φ(u) ⊔ u·Φ(v) at {}, {}",
                    b.word_string(u),
                    b.word_string(v)
                ));
            }
        }
    }
    for w in b.ids() {
        let members = weak_order::interval(&b, w).members;
        for &u in &members {
            for &v in &members {
                if b.distance(u, v) > b.length(w) {
                    return Err(format!(
                        "{name}: interval distance above ℓ(w) in [e, {}]",
                        b.word_string(w)
                    ));
                }
            }
        }
    }
    Ok(format!("{name}: {} pairs", b.len() * b.len()))
}

/// All clauses of the k-partition proposition and descent additivity, `k <= 4`.
pub fn k_partition_clauses(name: &str) -> Check {
    let b = full_ball(name);
    let mut count = 0;
    for w in b.ids() {
        for k in 1..=4 {
            for p in k_partitions(&b, w, k) {
                count += 1;
                let label = || format!("{name}: w = {}, parts {:?}", b.word_string(w), p.parts);
                let mut union = RootSet::new();
                let mut lengths = 0;
                let mut left_desc = 0u64;
                let mut d_r = 0;
                for &u in &p.parts {
                    if !union.is_disjoint(b.inversion_set(u)) || b.left_descent_mask(u) & left_desc != 0 {
                        return Err(format!("{} overlap", label()));
                    }
                    union = union.union(b.inversion_set(u));
                    lengths += b.length(u);
                    left_desc |= b.left_descent_mask(u);
                    d_r += b.d_r(u);
                    if !b.is_prefix(u, w) {
                        return Err(format!("{} part not below w", label()));
                    }
                }
                if union != *b.inversion_set(w) || lengths != b.length(w) || left_desc != b.left_descent_mask(w) {
                    return Err(format!("{} does not cover w", label()));
                }
                if k > 1 && meet(&b, &p.parts).unwrap() != b.identity() {
                    return Err(format!("{} meet is not e", label()));
                }
                if join_bounded(&b, &p.parts, w).unwrap() != w {
                    return Err(format!("{} join is not w", label()));
                }
                if d_r != b.d_r(w) {
                    return Err(format!("{} descents not additive", label()));
                }
            }
        }
    }
    Ok(format!("{name}: {count} k-partitions"))
}

/// Complement-based bipartitions equal the diameter scan, and irreducibility
/// matches a lone trivial diameter.
pub fn bipartitions_are_diameters(name: &str, radius: usize) -> Check {
    let b = ball(name, radius);
    let mismatch = b.ids().find(|&w| {
        let from_complements: BTreeSet<(ElementId, ElementId)> =
            bipartitions(&b, w).into_iter().map(|x| (x.u, x.v)).collect();
        let from_scan: BTreeSet<(ElementId, ElementId)> = diameters(&b, w)
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        let lone = from_scan.len() == 1;
        from_complements != from_scan || is_partition_irreducible(&b, w) != lone
    });
    match mismatch {
        Some(w) => Err(format!("{name}: mismatch at {}", b.word_string(w))),
        None => Ok(format!("{name}: {} elements", b.len())),
    }
}

fn positive_root_of_transposition(n: usize, a: u32, c: u32) -> Root {
    let coords = (0..n - 1)
        .map(|i| {
            if i + 1 >= a as usize && i + 1 < c as usize {
                QuadScalar::ONE
            } else {
                QuadScalar::ZERO
            }
        })
        .collect();
    Root::new(coords)
}

/// Lengths, descents, inversion sets and bipartitions of `S_n` agree with the core.
pub fn perm_a_agrees(n: usize) -> Check {
    let name = format!("A{}", n - 1);
    let system = CoxeterSystem::new(parse_graph(&name).unwrap()).unwrap();
    let b = ball(&name, n * (n - 1) / 2);
    let table = PermTable::new(n).unwrap();
    let ids: Vec<ElementId> = table
        .perms()
        .iter()
        .map(|p| b.id_of(&coxeter_from_perm(&system, p).unwrap()).unwrap())
        .collect();
    for (i, p) in table.perms().iter().enumerate() {
        let id = ids[i];
        let desc: Vec<usize> = p.descents().into_iter().map(|d| d - 1).collect();
        if b.length(id) != p.length() || b.right_descents(id) != desc {
            return Err(format!("{name}: length or descents differ at {p}"));
        }
        let roots: HashSet<Root> = system.inversion_roots(b.element(id)).unwrap().into_iter().collect();
        let expected: HashSet<Root> = p
            .invs()
            .into_iter()
            .map(|(a, c)| positive_root_of_transposition(n, a, c))
            .collect();
        if roots != expected {
            return Err(format!("{name}: inversion roots differ at {p}"));
        }
        let mine: BTreeSet<(ElementId, ElementId)> = table
            .bipartitions(i)
            .into_iter()
            .map(|(u, v)| (ids[u].min(ids[v]), ids[u].max(ids[v])))
            .collect();
        let core: BTreeSet<(ElementId, ElementId)> = bipartitions(&b, id).into_iter().map(|x| (x.u, x.v)).collect();
        if mine != core {
            return Err(format!("{name}: bipartitions differ at {p}"));
        }
    }
    Ok(format!("S{n}: {} permutations", table.len()))
}

/// Lengths, descents and bipartitions of `B_n` agree with the core.
pub fn perm_b_agrees(n: usize) -> Check {
    let name = format!("B{n}");
    let system = CoxeterSystem::new(parse_graph(&name).unwrap()).unwrap();
    let b = ball(&name, n * n);
    let table = SignedTable::new(n).unwrap();
    let ids: Vec<ElementId> = table
        .elements()
        .iter()
        .map(|s| b.id_of(&coxeter_from_signed(&system, s).unwrap()).unwrap())
        .collect();
    if ids.iter().collect::<HashSet<_>>().len() != b.len() {
        return Err(format!("{name}: bridge is not a bijection"));
    }
    for (i, s) in table.elements().iter().enumerate() {
        let id = ids[i];
        if b.length(id) != s.length()
            || b.right_descents(id) != s.descents()
            || s.reflections().len() != b.inversion_set(id).len()
        {
            return Err(format!("{name}: length or descents differ at {s}"));
        }
        let mine: BTreeSet<(ElementId, ElementId)> = table
            .bipartitions(i)
            .into_iter()
            .map(|(u, v)| (ids[u].min(ids[v]), ids[u].max(ids[v])))
            .collect();
        let core: BTreeSet<(ElementId, ElementId)> = bipartitions(&b, id).into_iter().map(|x| (x.u, x.v)).collect();
        if mine != core {
            return Err(format!("{name}: bipartitions differ at {s}"));
        }
    }
    Ok(format!("B{n}: {} signed permutations", table.len()))
}

/// Decomposition identities for every bipartition in `S_n`.
pub fn type_a_decomposition(n: usize) -> Check {
    let table = PermTable::new(n).unwrap();
    let (mut split, mut decreasing) = (0, 0);
    for w in 0..table.len() {
        let pw = table.perm(w);
        for (u, v) in table.bipartitions(w) {
            let (pu, pv) = (table.perm(u), table.perm(v));
            let d = decompose_a(pw, pu, pv).map_err(|e| e.to_string())?;
            if !d.parts_are_bipartitions() || !d.descents_split(pw, pu, pv) {
                return Err(format!("S{n}: decomposition fails for w = {pw}, u = {pu}, v = {pv}"));
            }
            split += 1;
            if d.w_r.n() >= 2 {
                if !decreasing_check_a(&d.u_r, &d.v_r).map_err(|e| e.to_string())? {
                    return Err(format!(
                        "S{n}: decreasing identity fails for w = {pw}, u = {pu}, v = {pv}"
                    ));
                }
                decreasing += 1;
            }
        }
    }
    Ok(format!("S{n}: {split} decompositions, {decreasing} decreasing checks"))
}

/// Decomposition identities for every bipartition in `B_n` with `n` in positive position.
pub fn type_b_decomposition(n: usize) -> Check {
    let table = SignedTable::new(n).unwrap();
    let mut count = 0;
    for w in 0..table.len() {
        let sw = table.element(w);
        if !sw.n_in_positive_position() {
            continue;
        }
        for (u, v) in table.bipartitions(w) {
            let (su, sv) = (table.element(u), table.element(v));
            let d = decompose_b(sw, su, sv).map_err(|e| e.to_string())?;
            if !d.parts_are_bipartitions() || !d.descents_split(sw, su, sv) {
                return Err(format!("B{n}: decomposition fails for w = {sw}, u = {su}, v = {sv}"));
            }
            count += 1;
        }
    }
    Ok(format!("B{n}: {count} decompositions"))
}

/// Descent additivity over all bipartitions of `S_n`, by the permutation model.
pub fn type_a_descent_additivity(n: usize) -> Check {
    use rayon::prelude::*;
    let table = PermTable::new(n).unwrap();
    let bad: Option<(usize, usize, usize)> = (0..table.len()).into_par_iter().find_map_first(|w| {
        table
            .bipartitions(w)
            .into_iter()
            .find_map(|(u, v)| (table.perm(w).d_r() != table.perm(u).d_r() + table.perm(v).d_r()).then_some((w, u, v)))
    });
    match bad {
        Some((w, u, v)) => Err(format!(
            "S{n}: {} != {} + {}",
            table.perm(w),
            table.perm(u),
            table.perm(v)
        )),
        None => Ok(format!("S{n}: additive")),
    }
}

/// Descent additivity over bipartitions of elements of `B_n` up to a length.
pub fn type_b_descent_additivity(n: usize, max_len: usize) -> Check {
    use rayon::prelude::*;
    let table = SignedTable::new(n).unwrap();
    let bad = (0..table.len())
        .into_par_iter()
        .filter(|&w| table.element(w).length() <= max_len)
        .find_map_first(|w| {
            let d = |i: usize| table.element(i).d_r();
            table
                .bipartitions(w)
                .into_iter()
                .find_map(|(u, v)| (d(w) != d(u) + d(v)).then_some((w, u, v)))
        });
    match bad {
        Some((w, u, v)) => Err(format!(
            "B{n}: {} != {} + {}",
            table.element(w),
            table.element(u),
            table.element(v)
        )),
        None => Ok(format!("B{n} up to length {max_len}: additive")),
    }
}
