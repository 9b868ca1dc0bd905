//! Finite trees with leaf boundary.
//!
//! A [`Tree`] is an unlabeled-in-spirit, labeled-in-practice tree on vertices
//! `0..n`. The boundary is always the leaf set. Named families (spiders,
//! double spiders, generalized almost seesaw trees) live in [`families`];
//! isomorphism-invariant codes in [`canon`]; exhaustive generation of free
//! trees in [`enumerate`].

mod canon;
mod enumerate;
mod families;
mod parse;

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

pub use canon::{canonical_code, CanonicalCode};
pub use enumerate::{all_trees, enumerate_trees, FreeTrees};
pub use families::{
    make_as_tree, make_double_spider, make_spider, recognize_double_spider, recognize_spider,
    shape_label, ASParams, DoubleSpiderProfile, SpiderProfile,
};
pub use parse::parse_shorthand;

/// A finite tree on the vertex set `0..n`, `n >= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Tree {
    /// Builds a tree from its order and edge list, checking that the edges
    /// form a spanning tree of `0..n`.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidTree(format!("order {n} < 2")));
        }
        if edges.len() != n - 1 {
            return Err(Error::InvalidTree(format!(
                "order {n} needs {} edges, got {}",
                n - 1,
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(Error::InvalidTree(format!("edge ({u}, {v}) out of range")));
            }
            if u == v {
                return Err(Error::InvalidTree(format!("self-loop at {u}")));
            }
            if adj[u].contains(&v) {
                return Err(Error::InvalidTree(format!("repeated edge ({u}, {v})")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let tree = Tree { edges, adj };
        if tree.bfs_distances(0).contains(&usize::MAX) {
            return Err(Error::InvalidTree("graph is disconnected".into()));
        }
        Ok(tree)
    }

    /// Path with `edges` edges (so `edges + 1` vertices), labeled in order.
    pub fn path(edges: usize) -> Result<Self> {
        if edges == 0 {
            return Err(Error::InvalidTree("a path needs at least one edge".into()));
        }
        Tree::new(edges + 1, (0..edges).map(|i| (i, i + 1)).collect())
    }

    /// Star with center 0 and leaves `1..=leaves`.
    pub fn star(leaves: usize) -> Result<Self> {
        Tree::new(leaves + 1, (1..=leaves).map(|i| (0, i)).collect())
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// The boundary: all degree-1 vertices in ascending order.
    pub fn leaves(&self) -> Vec<usize> {
        (0..self.order()).filter(|&v| self.degree(v) == 1).collect()
    }

    /// Interior vertices (degree >= 2) in ascending order.
    pub fn interior(&self) -> Vec<usize> {
        (0..self.order()).filter(|&v| self.degree(v) != 1).collect()
    }

    /// Breadth-first distances from `src`; unreachable vertices get `usize::MAX`.
    pub fn bfs_distances(&self, src: usize) -> Vec<usize> {
        self.bfs(src).0
    }

    /// Distances and BFS parents from `src` (the parent of `src` is itself).
    pub fn bfs(&self, src: usize) -> (Vec<usize>, Vec<usize>) {
        let n = self.order();
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        dist[src] = 0;
        parent[src] = src;
        queue.push_back(src);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        (dist, parent)
    }

    /// Vertices on the unique path from `from` to `to`, both included.
    pub fn path_between(&self, from: usize, to: usize) -> Vec<usize> {
        let (_, parent) = self.bfs(from);
        let mut path = vec![to];
        let mut x = to;
        while x != from {
            x = parent[x];
            path.push(x);
        }
        path.reverse();
        path
    }

    /// Length in edges of a longest path (double BFS sweep).
    pub fn diameter(&self) -> usize {
        let d0 = self.bfs_distances(0);
        let far = argmax_first(&d0);
        let d1 = self.bfs_distances(far);
        d1.into_iter().max().unwrap_or(0)
    }

    /// The lexicographically first diameter path: its start is the smallest
    /// vertex of maximum eccentricity and its end the smallest vertex at
    /// diameter distance from that start.
    pub fn diameter_path(&self) -> Vec<usize> {
        let d = self.diameter();
        let start = (0..self.order())
            .find(|&x| self.bfs_distances(x).into_iter().max() == Some(d))
            .expect("some vertex attains the diameter");
        let dist = self.bfs_distances(start);
        let end = (0..self.order())
            .find(|&y| dist[y] == d)
            .expect("diameter endpoint exists");
        self.path_between(start, end)
    }

    /// The one or two central vertices (middle of any diameter path).
    pub fn centers(&self) -> Vec<usize> {
        let path = self.diameter_path();
        let d = path.len() - 1;
        if d.is_multiple_of(2) {
            vec![path[d / 2]]
        } else {
            vec![path[d / 2], path[d / 2 + 1]]
        }
    }

    /// Vertices with degree at least three.
    pub fn branch_vertices(&self) -> Vec<usize> {
        (0..self.order()).filter(|&v| self.degree(v) >= 3).collect()
    }

    /// Applies a vertex relabeling `v -> perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Tree> {
        if perm.len() != self.order() {
            return Err(Error::DimensionMismatch {
                expected: self.order(),
                got: perm.len(),
            });
        }
        let edges = self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        Tree::new(self.order(), edges)
    }

    /// Edge-list text: first line `n`, then one `u v` line per edge.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Parses the edge-list text format produced by [`Tree::to_text`].
    pub fn from_text(text: &str) -> Result<Tree> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty tree file".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad vertex count: {e}")))?;
        let mut edges = Vec::with_capacity(n.saturating_sub(1));
        for line in lines {
            let mut it = line.split_whitespace();
            let mut next = || -> Result<usize> {
                it.next()
                    .ok_or_else(|| Error::Parse(format!("edge line `{line}` needs two ids")))?
                    .parse()
                    .map_err(|e| Error::Parse(format!("bad vertex id in `{line}`: {e}")))
            };
            let u = next()?;
            let v = next()?;
            edges.push((u, v));
        }
        Tree::new(n, edges)
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.order())?;
        for &(u, v) in &self.edges {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

fn argmax_first(xs: &[usize]) -> usize {
    let mut best = 0;
    for (i, &x) in xs.iter().enumerate() {
        if x > xs[best] {
            best = i;
        }
    }
    best
}
