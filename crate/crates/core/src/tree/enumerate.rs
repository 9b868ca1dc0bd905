//! Free-tree generation by level sequences (Wright–Richmond–Odlyzko–McKay,
//! built on the Beyer–Hedetniemi successor for rooted trees).
//!
//! Each free tree is produced exactly once, as the canonical level sequence
//! of the tree rooted at its center. The order of the stream is the fixed
//! order of the successor function, so it is deterministic.

use super::Tree;

/// Iterator over all free trees of a given order.
#[derive(Debug, Clone)]
pub struct FreeTrees {
    layout: Option<Vec<usize>>,
}

impl FreeTrees {
    /// Starts at the path rooted at its center. Orders below 2 yield nothing.
    pub fn new(order: usize) -> Self {
        if order < 2 {
            return FreeTrees { layout: None };
        }
        let layout = (0..=order / 2).chain(1..order.div_ceil(2)).collect();
        FreeTrees {
            layout: Some(layout),
        }
    }
}

enum Step {
    Valid(Vec<usize>),
    Jump(Option<Vec<usize>>),
}

/// Beyer–Hedetniemi successor. `p` overrides the position of the last
/// non-unit level.
fn next_rooted_tree(pred: &[usize], p: Option<usize>) -> Option<Vec<usize>> {
    let p = match p {
        Some(p) => p,
        None => {
            let mut p = pred.len() - 1;
            while pred[p] == 1 {
                p -= 1;
            }
            p
        }
    };
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while pred[q] != pred[p] - 1 {
        q -= 1;
    }
    let mut result = pred.to_vec();
    for i in p..result.len() {
        result[i] = result[i - p + q];
    }
    Some(result)
}

/// Splits a level sequence into the leftmost root subtree (levels shifted up
/// by one) and the remainder with the root.
fn split_tree(layout: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let m = layout
        .iter()
        .enumerate()
        .filter(|&(_, &l)| l == 1)
        .nth(1)
        .map_or(layout.len(), |(i, _)| i);
    let left = layout[1..m].iter().map(|&l| l - 1).collect();
    let rest = std::iter::once(0).chain(layout[m..].iter().copied()).collect();
    (left, rest)
}

fn height(levels: &[usize]) -> usize {
    levels.iter().copied().max().unwrap_or(0)
}

fn next_tree(candidate: Vec<usize>) -> Step {
    let (left, rest) = split_tree(&candidate);
    let (lh, rh) = (height(&left), height(&rest));
    let mut valid = rh >= lh;
    if valid && rh == lh
        && (left.len() > rest.len() || (left.len() == rest.len() && left > rest)) {
            valid = false;
        }
    if valid {
        return Step::Valid(candidate);
    }
    let p = left.len();
    let mut next = next_rooted_tree(&candidate, Some(p));
    if candidate[p] > 2 {
        if let Some(nc) = next.as_mut() {
            let (new_left, _) = split_tree(nc);
            let new_height = height(&new_left);
            let len = nc.len();
            for (k, slot) in nc[len - (new_height + 1)..].iter_mut().enumerate() {
                *slot = k + 1;
            }
        }
    }
    Step::Jump(next)
}

fn layout_to_tree(layout: &[usize]) -> Tree {
    let mut edges = Vec::with_capacity(layout.len() - 1);
    let mut stack: Vec<usize> = Vec::new();
    for (i, &level) in layout.iter().enumerate() {
        while let Some(&j) = stack.last() {
            if layout[j] >= level {
                stack.pop();
            } else {
                edges.push((j, i));
                break;
            }
        }
        stack.push(i);
    }
    Tree::new(layout.len(), edges).expect("level sequence encodes a tree")
}

impl Iterator for FreeTrees {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        loop {
            let cur = self.layout.take()?;
            match next_tree(cur) {
                Step::Valid(layout) => {
                    self.layout = next_rooted_tree(&layout, None);
                    return Some(layout_to_tree(&layout));
                }
                Step::Jump(next) => self.layout = next,
            }
        }
    }
}

/// Every free tree of order `n`, one per isomorphism class.
pub fn all_trees(n: usize) -> FreeTrees {
    FreeTrees::new(n)
}

/// One representative per isomorphism class of trees with order `n` and
/// diameter `d`; empty when none exists.
pub fn enumerate_trees(n: usize, d: usize) -> impl Iterator<Item = Tree> {
    FreeTrees::new(n).filter(move |t| t.diameter() == d)
}
