//! Spiders, double spiders and generalized almost seesaw trees.
//!
//! Labeling of constructed trees: center(s) first, then the branches in the
//! profile's (descending) length order, each branch listed from the center
//! outward. Leaves therefore appear in ascending id in branch order, so the
//! leaf-indexed vectors of the spectral and flux modules line up with the
//! profile.

use std::fmt;

use super::Tree;
use crate::error::{Error, Result};

/// Branch lengths `ℓ₁ ≥ ℓ₂ ≥ … ≥ ℓ_b ≥ 1` of a spider, `b ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpiderProfile {
    lengths: Vec<usize>,
}

impl SpiderProfile {
    /// Validates and sorts (descending) a branch-length multiset.
    pub fn new(mut lengths: Vec<usize>) -> Result<Self> {
        if lengths.len() < 2 {
            return Err(Error::InvalidProfile(format!(
                "a spider needs at least 2 branches, got {}",
                lengths.len()
            )));
        }
        if lengths.contains(&0) {
            return Err(Error::InvalidProfile("branch lengths must be >= 1".into()));
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        Ok(SpiderProfile { lengths })
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    /// Number of branches `b`.
    pub fn branches(&self) -> usize {
        self.lengths.len()
    }

    pub fn total_length(&self) -> usize {
        self.lengths.iter().sum()
    }

    pub fn order(&self) -> usize {
        1 + self.total_length()
    }

    pub fn diameter(&self) -> usize {
        self.lengths[0] + self.lengths[1]
    }

    /// Lengths after the two principal branches.
    pub fn laterals(&self) -> &[usize] {
        &self.lengths[2..]
    }

    pub fn to_tree(&self) -> Tree {
        make_spider(self)
    }
}

impl fmt::Display for SpiderProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "spider:{}", join(&self.lengths))
    }
}

/// Parameters of the generalized almost seesaw tree
/// `AS(r, q + 2, c, t) = S(r+1, r, (c+1)^t, c^(q-t))` carrying
/// `M = q·c + t` units of lateral length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ASParams {
    pub r: usize,
    pub q: usize,
    pub c: usize,
    pub t: usize,
}

impl ASParams {
    pub fn new(r: usize, q: usize, c: usize, t: usize) -> Result<Self> {
        if r < 1 || q < 1 || c < 1 {
            return Err(Error::InvalidParams(format!(
                "AS needs r, q, c >= 1 (got r={r}, q={q}, c={c})"
            )));
        }
        if t >= q {
            return Err(Error::InvalidParams(format!("AS needs t < q (got t={t}, q={q})")));
        }
        if c > r || (t > 0 && c + 1 > r) {
            return Err(Error::InvalidParams(format!(
                "lateral branches must not exceed r={r} (c={c}, t={t})"
            )));
        }
        Ok(ASParams { r, q, c, t })
    }

    /// The balanced parameters for `q` lateral branches sharing `M` units:
    /// `M = q·c + t`, `0 <= t < q`.
    pub fn balanced(r: usize, q: usize, m: usize) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidParams("q must be >= 1".into()));
        }
        ASParams::new(r, q, m / q, m % q)
    }

    /// Total lateral length `M = q·c + t`.
    pub fn m(&self) -> usize {
        self.q * self.c + self.t
    }

    /// Number of branches `b = q + 2`.
    pub fn b(&self) -> usize {
        self.q + 2
    }

    pub fn order(&self) -> usize {
        2 * self.r + 2 + self.m()
    }

    pub fn diameter(&self) -> usize {
        2 * self.r + 1
    }

    pub fn profile(&self) -> SpiderProfile {
        let mut lengths = vec![self.r + 1, self.r];
        lengths.extend(std::iter::repeat_n(self.c + 1, self.t));
        lengths.extend(std::iter::repeat_n(self.c, self.q - self.t));
        SpiderProfile::new(lengths).expect("AS parameters give a valid spider")
    }
}

impl fmt::Display for ASParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "as:{},{},{},{}", self.r, self.q, self.c, self.t)
    }
}

/// Two adjacent centers `u`, `v` carrying pendant paths `a₁ ≥ … ≥ a_p` at `u`
/// and `b₁ ≥ … ≥ b_q` at `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DoubleSpiderProfile {
    a: Vec<usize>,
    b: Vec<usize>,
}

impl DoubleSpiderProfile {
    pub fn new(mut a: Vec<usize>, mut b: Vec<usize>) -> Result<Self> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::InvalidProfile(
                "both sides of a double spider need at least one branch".into(),
            ));
        }
        if a.contains(&0) || b.contains(&0) {
            return Err(Error::InvalidProfile("branch lengths must be >= 1".into()));
        }
        a.sort_unstable_by(|x, y| y.cmp(x));
        b.sort_unstable_by(|x, y| y.cmp(x));
        Ok(DoubleSpiderProfile { a, b })
    }

    pub fn a(&self) -> &[usize] {
        &self.a
    }

    pub fn b(&self) -> &[usize] {
        &self.b
    }

    pub fn total_length(&self) -> usize {
        self.a.iter().sum::<usize>() + self.b.iter().sum::<usize>()
    }

    pub fn order(&self) -> usize {
        2 + self.total_length()
    }

    pub fn diameter(&self) -> usize {
        let mut d = self.a[0] + 1 + self.b[0];
        if self.a.len() > 1 {
            d = d.max(self.a[0] + self.a[1]);
        }
        if self.b.len() > 1 {
            d = d.max(self.b[0] + self.b[1]);
        }
        d
    }

    /// `Some(r)` when `a₁ = b₁ = r`, the odd-diameter shape `2r + 1`.
    pub fn principal(&self) -> Option<usize> {
        (self.a[0] == self.b[0]).then_some(self.a[0])
    }

    /// The same profile with the two sides exchanged.
    pub fn swapped(&self) -> Self {
        DoubleSpiderProfile {
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }

    /// `true` when the profiles describe the same two-sided shape up to
    /// exchanging the sides.
    pub fn same_shape(&self, other: &Self) -> bool {
        self == other || self.swapped() == *other
    }

    pub fn to_tree(&self) -> Tree {
        make_double_spider(self)
    }
}

impl fmt::Display for DoubleSpiderProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ds:{}/{}", join(&self.a), join(&self.b))
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

/// Appends pendant paths of the given lengths at `center`, numbering new
/// vertices from `next` upward.
fn attach_branches(
    edges: &mut Vec<(usize, usize)>,
    center: usize,
    lengths: &[usize],
    next: &mut usize,
) {
    for &len in lengths {
        let mut prev = center;
        for _ in 0..len {
            edges.push((prev, *next));
            prev = *next;
            *next += 1;
        }
    }
}

/// Glues one endpoint of each branch path to a common center (vertex 0).
pub fn make_spider(profile: &SpiderProfile) -> Tree {
    let n = profile.order();
    let mut edges = Vec::with_capacity(n - 1);
    let mut next = 1;
    attach_branches(&mut edges, 0, &profile.lengths, &mut next);
    Tree::new(n, edges).expect("spider construction is a tree")
}

pub fn make_as_tree(params: &ASParams) -> Tree {
    make_spider(&params.profile())
}

/// Centers `u = 0`, `v = 1`, then the `a` branches, then the `b` branches.
pub fn make_double_spider(profile: &DoubleSpiderProfile) -> Tree {
    let n = profile.order();
    let mut edges = Vec::with_capacity(n - 1);
    edges.push((0, 1));
    let mut next = 2;
    attach_branches(&mut edges, 0, &profile.a, &mut next);
    attach_branches(&mut edges, 1, &profile.b, &mut next);
    Tree::new(n, edges).expect("double spider construction is a tree")
}

/// Length of the pendant path leaving `center` through `first`, or `None`
/// when the walk meets a vertex of degree >= 3 before reaching a leaf.
fn branch_length(t: &Tree, center: usize, first: usize) -> Option<usize> {
    let (mut prev, mut cur, mut len) = (center, first, 1);
    loop {
        match t.degree(cur) {
            1 => return Some(len),
            2 => {
                let nb = t.neighbors(cur);
                let next = if nb[0] == prev { nb[1] } else { nb[0] };
                prev = cur;
                cur = next;
                len += 1;
            }
            _ => return None,
        }
    }
}

/// Recognizes a spider and returns its branch profile.
///
/// Paths are reported as two-branch spiders `(⌈D/2⌉, ⌊D/2⌋)`; the single
/// edge (n = 2) has no such split and yields `None`.
pub fn recognize_spider(t: &Tree) -> Option<SpiderProfile> {
    let hubs = t.branch_vertices();
    match hubs.len() {
        0 => {
            let d = t.diameter();
            SpiderProfile::new(vec![d.div_ceil(2), d / 2]).ok()
        }
        1 => {
            let c = hubs[0];
            let lengths = t
                .neighbors(c)
                .iter()
                .map(|&w| branch_length(t, c, w))
                .collect::<Option<Vec<_>>>()?;
            SpiderProfile::new(lengths).ok()
        }
        _ => None,
    }
}

fn double_spider_at(t: &Tree, u: usize, v: usize) -> Option<DoubleSpiderProfile> {
    let side = |c: usize, other: usize| {
        t.neighbors(c)
            .iter()
            .filter(|&&w| w != other)
            .map(|&w| branch_length(t, c, w))
            .collect::<Option<Vec<_>>>()
    };
    let a = side(u, v)?;
    let b = side(v, u)?;
    let p = DoubleSpiderProfile::new(a, b).ok()?;
    // Present the lexicographically larger side first.
    if p.b > p.a {
        Some(p.swapped())
    } else {
        Some(p)
    }
}

/// Recognizes a double spider: a tree with an edge `uv`, neither endpoint a
/// leaf, such that every vertex of degree >= 3 is `u` or `v`.
///
/// For odd diameter the central edge is tried first, so whenever the tree is
/// a double spider around its central edge the returned profile has
/// `a₁ = b₁ = r`.
pub fn recognize_double_spider(t: &Tree) -> Option<DoubleSpiderProfile> {
    let path = t.diameter_path();
    let d = path.len() - 1;
    if d % 2 == 1 && d >= 3 {
        if let Some(p) = double_spider_at(t, path[d / 2], path[d / 2 + 1]) {
            return Some(p);
        }
    }
    let mut edges: Vec<(usize, usize)> = t
        .edges()
        .iter()
        .map(|&(u, v)| (u.min(v), u.max(v)))
        .collect();
    edges.sort_unstable();
    edges
        .into_iter()
        .filter(|&(u, v)| t.degree(u) >= 2 && t.degree(v) >= 2)
        .find_map(|(u, v)| double_spider_at(t, u, v))
}

/// Short human-readable name: `path:L`, `spider:…`, `ds:…`, or the
/// canonical code for anything else.
pub fn shape_label(t: &Tree) -> String {
    if t.branch_vertices().is_empty() {
        return format!("path:{}", t.diameter());
    }
    if let Some(p) = recognize_spider(t) {
        return p.to_string();
    }
    if let Some(p) = recognize_double_spider(t) {
        return p.to_string();
    }
    format!("code:{}", super::canonical_code(t))
}
