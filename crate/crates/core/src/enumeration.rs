//! Length generating functions of bipartitionable and partition-irreducible elements.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::CoxeterGraph;
use crate::partitions::has_proper_bipartition;
use crate::weak_order::{Ball, ElementId};

/// Polynomial in `q` with nonnegative integer coefficients, indexed by exponent.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenPoly {
    coeffs: Vec<u64>,
}

impl GenPoly {
    pub fn new(mut coeffs: Vec<u64>) -> GenPoly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        GenPoly { coeffs }
    }

    /// Builds a polynomial from `(coefficient, exponent)` terms.
    pub fn from_terms(terms: &[(u64, usize)]) -> GenPoly {
        let degree = terms.iter().map(|&(_, e)| e + 1).max().unwrap_or(0);
        let mut coeffs = vec![0; degree];
        for &(c, e) in terms {
            coeffs[e] += c;
        }
        GenPoly::new(coeffs)
    }

    pub fn coeff(&self, exponent: usize) -> u64 {
        self.coeffs.get(exponent).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.coeffs.iter().sum()
    }

    pub fn add(&self, other: &GenPoly) -> GenPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        GenPoly::new((0..len).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    /// Coefficients padded with zeros up to exponent `k`.
    pub fn padded(&self, k: usize) -> Vec<u64> {
        (0..=k).map(|i| self.coeff(i)).collect()
    }

    pub fn to_json(&self, k: usize) -> String {
        serde_json::json!({ "coeffs": self.padded(k) }).to_string()
    }

    pub fn to_csv(&self, k: usize) -> String {
        let mut out = String::from("length,count\n");
        for (i, c) in self.padded(k).into_iter().enumerate() {
            out.push_str(&format!("{i},{c}\n"));
        }
        out
    }
}

impl fmt::Display for GenPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(e, &c)| match (e, c) {
                (0, c) => c.to_string(),
                (1, 1) => "q".to_string(),
                (1, c) => format!("{c}*q"),
                (e, 1) => format!("q^{e}"),
                (e, c) => format!("{c}*q^{e}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

fn count_by_length(ball: &Ball, k: usize, flags: &[bool]) -> GenPoly {
    let mut coeffs = vec![0u64; k + 1];
    for (id, &flag) in flags.iter().enumerate() {
        if flag {
            coeffs[ball.length(id as ElementId)] += 1;
        }
    }
    GenPoly::new(coeffs)
}

fn proper_flags(ball: &Ball, k: usize) -> Vec<bool> {
    let ids: Vec<ElementId> = ball.ids_up_to_length(k).collect();
    ids.par_iter().map(|&w| has_proper_bipartition(ball, w)).collect()
}

pub fn growth_series(ball: &Ball, k: usize) -> GenPoly {
    let n = ball.ids_up_to_length(k).len();
    count_by_length(ball, k, &vec![true; n])
}

/// Elements of length at most `k` admitting a proper bipartition.
pub fn bip_genfun(ball: &Ball, k: usize) -> GenPoly {
    count_by_length(ball, k, &proper_flags(ball, k))
}

/// Partition-irreducible elements of length at most `k`.
pub fn pirr_genfun(ball: &Ball, k: usize) -> GenPoly {
    let flags: Vec<bool> = proper_flags(ball, k).into_iter().map(|b| !b).collect();
    count_by_length(ball, k, &flags)
}

/// Both series from one pass.
pub fn genfuns(ball: &Ball, k: usize) -> (GenPoly, GenPoly) {
    let flags = proper_flags(ball, k);
    let bip = count_by_length(ball, k, &flags);
    let negated: Vec<bool> = flags.iter().map(|b| !b).collect();
    (bip, count_by_length(ball, k, &negated))
}

/// Builds the ball of radius `k` and returns `(Bip, PIrr, growth)`.
pub fn series_for(graph: &CoxeterGraph, k: usize, element_cap: usize) -> Result<(GenPoly, GenPoly, GenPoly)> {
    let ball = Ball::build_with_cap(graph, k, element_cap)?;
    let (bip, pirr) = genfuns(&ball, k);
    Ok((bip, pirr, growth_series(&ball, k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    fn series(name: &str, k: usize) -> (GenPoly, GenPoly, GenPoly) {
        series_for(&parse_graph(name).unwrap(), k, 1_000_000).unwrap()
    }

    #[test]
    fn formatting() {
        let p = GenPoly::from_terms(&[(1, 2), (2, 3)]);
        assert_eq!(p.to_string(), "q^2 + 2*q^3");
        assert_eq!(GenPoly::from_terms(&[(1, 0), (2, 1)]).to_string(), "1 + 2*q");
        assert_eq!(GenPoly::default().to_string(), "0");
        assert_eq!(p.to_json(4), r#"{"coeffs":[0,0,1,2,0]}"#);
        assert_eq!(p.to_csv(3), "length,count\n0,0\n1,0\n2,1\n3,2\n");
    }

    #[test]
    fn small_groups() {
        let (bip, pirr, growth) = series("A2", 3);
        assert_eq!(bip.to_string(), "q^3");
        assert_eq!(pirr.to_string(), "1 + 2*q + 2*q^2");
        assert_eq!(growth.to_string(), "1 + 2*q + 2*q^2 + q^3");
        let (_, _, growth) = series("B2", 4);
        assert_eq!(growth.coeffs(), &[1, 2, 2, 2, 1]);
        let (bip, _, growth) = series("A3", 6);
        assert_eq!(bip.to_string(), "q^2 + 2*q^3 + 4*q^4 + 3*q^5 + q^6");
        assert_eq!(growth.total(), 24);
    }

    #[test]
    fn zero_radius() {
        let (bip, pirr, _) = series("A3", 0);
        assert_eq!(bip.to_string(), "0");
        assert_eq!(pirr.to_string(), "1");
    }
}
