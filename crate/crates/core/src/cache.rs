//! On-disk cache of weak order balls, keyed by graph hash, engine version and radius.

use std::fs;
use std::io::ErrorKind;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::CoxeterGraph;
use crate::weak_order::{Ball, ElementId};

/// Bumped whenever element order or root numbering could change.
pub const ENGINE_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "+ball1");

pub const CACHE_DIR_ENV: &str = "COXPART_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct CacheFile {
    engine_version: String,
    graph_hash: String,
    graph: serde_json::Value,
    radius: usize,
    /// Spanning tree, one `(parent, generator)` per non-identity element in id order.
    parents: Vec<(ElementId, usize)>,
    /// Remaining cover edges `(w, s, w·s)`.
    covers: Vec<(ElementId, usize, ElementId)>,
}

#[derive(Debug, Clone)]
pub struct BallCache {
    dir: PathBuf,
}

impl BallCache {
    pub fn new(dir: impl Into<PathBuf>) -> BallCache {
        BallCache { dir: dir.into() }
    }

    /// Cache rooted at `$COXPART_CACHE_DIR`, if set.
    pub fn from_env() -> Option<BallCache> {
        std::env::var_os(CACHE_DIR_ENV)
            .filter(|v| !v.is_empty())
            .map(BallCache::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(graph: &CoxeterGraph, radius: usize) -> String {
        let mut hasher = Sha256::new();
        hasher.update(graph.canonical_hash());
        hasher.update(ENGINE_VERSION);
        let digest: String = hasher.finalize().iter().map(|b| format!("{b:02x}")).collect();
        format!("{}-r{radius}", &digest[..24])
    }

    pub fn path(&self, graph: &CoxeterGraph, radius: usize) -> PathBuf {
        self.dir.join(format!("ball-{}.json", BallCache::key(graph, radius)))
    }

    /// `Ok(None)` when no file exists; an error when the file is stale or corrupt.
    pub fn load(&self, graph: &CoxeterGraph, radius: usize) -> Result<Option<Ball>> {
        let text = match fs::read_to_string(self.path(graph, radius)) {
            Ok(text) => text,
            Err(e) if e.kind() == ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let file: CacheFile = serde_json::from_str(&text).map_err(|e| Error::Cache(format!("unreadable: {e}")))?;
        if file.engine_version != ENGINE_VERSION {
            return Err(Error::Cache(format!(
                "engine version {} != {ENGINE_VERSION}",
                file.engine_version
            )));
        }
        if file.graph_hash != graph.canonical_hash() || file.radius != radius {
            return Err(Error::Cache("graph or radius mismatch".into()));
        }
        Ball::from_parts(graph, radius, &file.parents, &file.covers).map(Some)
    }

    pub fn store(&self, ball: &Ball) -> Result<PathBuf> {
        let mut parents = Vec::with_capacity(ball.len().saturating_sub(1));
        let mut covers = Vec::new();
        for id in ball.ids() {
            if let Some(edge) = ball.parent(id) {
                parents.push(edge);
            }
            for (s, up) in ball.cover_edges(id) {
                if ball.parent(up) != Some((id, s)) {
                    covers.push((id, s, up));
                }
            }
        }
        let file = CacheFile {
            engine_version: ENGINE_VERSION.to_string(),
            graph_hash: ball.graph().canonical_hash(),
            graph: ball.graph().to_json(),
            radius: ball.radius(),
            parents,
            covers,
        };
        fs::create_dir_all(&self.dir)?;
        let path = self.path(ball.graph(), ball.radius());
        let tmp = path.with_extension(format!("json.tmp{}", std::process::id()));
        fs::write(&tmp, serde_json::to_string(&file)?)?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }

    /// Loads a cached ball, or builds and stores it. Stale or corrupt entries are rebuilt.
    pub fn get_or_build(&self, graph: &CoxeterGraph, radius: usize, element_cap: usize) -> Result<Ball> {
        if let Ok(Some(ball)) = self.load(graph, radius) {
            if ball.len() <= element_cap {
                return Ok(ball);
            }
            return Err(Error::ElementCapExceeded(element_cap));
        }
        let ball = Ball::build_with_cap(graph, radius, element_cap)?;
        self.store(&ball)?;
        Ok(ball)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    fn same_ball(a: &Ball, b: &Ball) {
        assert_eq!(a.len(), b.len());
        for id in a.ids() {
            assert_eq!(a.element(id), b.element(id));
            assert_eq!(a.inversion_set(id), b.inversion_set(id));
            for s in 0..a.rank() {
                assert_eq!(a.right_mul(id, s), b.right_mul(id, s));
            }
        }
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = BallCache::new(dir.path());
        let graph = parse_graph("tri(3,3,4)").unwrap();
        assert!(cache.load(&graph, 6).unwrap().is_none());
        let built = cache.get_or_build(&graph, 6, 100_000).unwrap();
        let loaded = cache.load(&graph, 6).unwrap().unwrap();
        same_ball(&built, &loaded);
        assert!(cache.load(&graph, 5).unwrap().is_none());
    }

    #[test]
    fn stale_entries_rejected_and_rebuilt() {
        let dir = tempfile::tempdir().unwrap();
        let cache = BallCache::new(dir.path());
        let graph = parse_graph("B3").unwrap();
        let path = cache.store(&Ball::build(&graph, 9).unwrap()).unwrap();
        let text = fs::read_to_string(&path).unwrap().replace(ENGINE_VERSION, "0.0.0+old");
        fs::write(&path, text).unwrap();
        assert!(matches!(cache.load(&graph, 9), Err(Error::Cache(_))));
        let rebuilt = cache.get_or_build(&graph, 9, 1000).unwrap();
        assert_eq!(rebuilt.len(), 48);
        assert!(cache.load(&graph, 9).unwrap().is_some());
        fs::write(&path, "{").unwrap();
        assert!(matches!(cache.load(&graph, 9), Err(Error::Cache(_))));
    }

    #[test]
    fn keys_separate_graphs() {
        let a = parse_graph("A3").unwrap();
        let b = parse_graph("B3").unwrap();
        assert_ne!(BallCache::key(&a, 3), BallCache::key(&b, 3));
        assert_ne!(BallCache::key(&a, 3), BallCache::key(&a, 4));
    }
}
