//! Brute-force certification: enumerate every unlabeled tree of a given
//! order and diameter, evaluate λ₂ numerically, and compare with the
//! classifier and the reduction moves.
//!
//! Evaluation runs on a rayon pool of `jobs` threads (0 = rayon's default).
//! Results are collected in enumeration order and code sets are sorted, so
//! reports do not depend on the thread count.

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;

use crate::classify::{classify, compare_candidates, split_order, QTable};
use crate::error::{Error, Result};
use crate::flux::lambda2_via_distance;
use crate::reduce::{dominating_double_spider, double_spider_lambda2};
use crate::roots::spider_lambda2;
use crate::spectral::lambda2_numeric;
use crate::tree::{
    all_trees, canonical_code, enumerate_trees, recognize_double_spider, recognize_spider,
    CanonicalCode, Tree,
};
use crate::{rel_close, TIE_RTOL};

/// Agreement required between independent λ₂ computations.
pub const CROSS_RTOL: f64 = 1e-10;

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Inconsistent(format!("thread pool: {e}")))
}

/// `f` over `items` on `jobs` threads, results in input order.
fn par_map<T: Sync, U: Send>(
    jobs: usize,
    items: &[T],
    f: impl Fn(&T) -> Result<U> + Sync + Send,
) -> Result<Vec<U>> {
    pool(jobs)?.install(|| items.par_iter().map(f).collect())
}

/// All brute-force maximizers of λ₂ (within [`TIE_RTOL`] of the maximum).
#[derive(Debug, Clone, PartialEq)]
pub struct Extremizers {
    pub trees_enumerated: usize,
    /// Sorted canonical codes, one per winner.
    pub codes: Vec<CanonicalCode>,
    /// Winners in the same order as `codes`.
    pub trees: Vec<Tree>,
    pub lambda2: f64,
}

pub fn brute_force_extremizers(n: usize, d: usize, jobs: usize) -> Result<Extremizers> {
    let trees: Vec<Tree> = enumerate_trees(n, d).collect();
    if trees.is_empty() {
        return Err(Error::InvalidParams(format!(
            "no tree of order {n} has diameter {d}"
        )));
    }
    let values = par_map(jobs, &trees, lambda2_numeric)?;
    let best = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut winners: Vec<(CanonicalCode, Tree)> = trees
        .iter()
        .zip(&values)
        .filter(|&(_, &v)| rel_close(v, best, TIE_RTOL))
        .map(|(t, _)| (canonical_code(t), t.clone()))
        .collect();
    winners.sort_by(|x, y| x.0.cmp(&y.0));
    let (codes, trees_out) = winners.into_iter().unzip();
    Ok(Extremizers {
        trees_enumerated: trees.len(),
        codes,
        trees: trees_out,
        lambda2: best,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Match,
    Mismatch,
    TieUnresolved,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Match => "match",
            Verdict::Mismatch => "mismatch",
            Verdict::TieUnresolved => "tie_unresolved",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub n: usize,
    pub d: usize,
    pub trees_enumerated: usize,
    pub argmax_codes: Vec<CanonicalCode>,
    pub argmax_trees: Vec<Tree>,
    pub argmax_lambda2: f64,
    /// Classifier winners, sorted by canonical code.
    pub classifier_codes: Vec<CanonicalCode>,
    pub classifier_labels: Vec<String>,
    pub case: String,
    pub verdict: Verdict,
    pub wall_time: f64,
}

impl VerificationReport {
    /// Every brute-force winner is a spider.
    pub fn winners_are_spiders(&self) -> bool {
        self.argmax_trees.iter().all(|t| recognize_spider(t).is_some())
    }
}

pub fn verify_classification(n: usize, d: usize, jobs: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let c = classify(n, d)?;
    let brute = brute_force_extremizers(n, d, jobs)?;
    let mut winners: Vec<(CanonicalCode, String)> = c
        .winner_candidates()
        .map(|w| (canonical_code(&w.tree), w.label.clone()))
        .collect();
    winners.sort();
    winners.dedup_by(|x, y| x.0 == y.0);
    let (classifier_codes, classifier_labels): (Vec<_>, Vec<_>) = winners.into_iter().unzip();
    let verdict = if classifier_codes == brute.codes {
        Verdict::Match
    } else if brute.codes.len() > 1 || c.tie_flag {
        Verdict::TieUnresolved
    } else {
        Verdict::Mismatch
    };
    Ok(VerificationReport {
        n,
        d,
        trees_enumerated: brute.trees_enumerated,
        argmax_codes: brute.codes,
        argmax_trees: brute.trees,
        argmax_lambda2: brute.lambda2,
        classifier_codes,
        classifier_labels,
        case: c.case.to_string(),
        verdict,
        wall_time: start.elapsed().as_secs_f64(),
    })
}

/// Tolerance band inside which consecutive `Σ` values count as level.
pub const UNIMODAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct UnimodalityReport {
    pub table: QTable,
    /// `q` of the first maximal entry.
    pub peak: usize,
    pub pass: bool,
}

/// Unimodality of `q ↦ Σ_{r,M}(q)` over feasible integers, with the peak
/// at `q₋` or `q₊`.
pub fn verify_unimodality(r: usize, m: usize) -> Result<UnimodalityReport> {
    let table = compare_candidates(r, m)?;
    let vals: Vec<f64> = table.rows.iter().map(|&(_, v)| v).collect();
    let p = (0..vals.len())
        .max_by(|&i, &j| vals[i].total_cmp(&vals[j]).then(j.cmp(&i)))
        .expect("at least one feasible q");
    let rising = vals[..=p].windows(2).all(|w| w[1] >= w[0] - UNIMODAL_TOL);
    let falling = vals[p..].windows(2).all(|w| w[1] <= w[0] + UNIMODAL_TOL);
    let pass = rising && falling && table.peak_at_nearest();
    Ok(UnimodalityReport {
        peak: table.rows[p].0,
        table,
        pass,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DominationReport {
    pub n: usize,
    pub d: usize,
    pub trees: usize,
    /// `max (λ₂(T) − λ₂(dominating double spider))`; ≤ 1e−9 to pass.
    pub worst_margin: f64,
    /// Trees with `λ₂(T)` equal to the dominating value within 1e−9.
    pub equality_cases: usize,
    /// Equality cases that are not double spiders.
    pub rigidity_failures: usize,
    pub pass: bool,
}

pub fn verify_domination(n: usize, d: usize, jobs: usize) -> Result<DominationReport> {
    split_order(n, d)?;
    let trees: Vec<Tree> = enumerate_trees(n, d).collect();
    let rows = par_map(jobs, &trees, |t| {
        let own = lambda2_numeric(t)?;
        let dom = double_spider_lambda2(&dominating_double_spider(t)?)?;
        let equal = (own - dom).abs() <= 1e-9;
        Ok((own - dom, equal, equal && recognize_double_spider(t).is_none()))
    })?;
    let worst_margin = rows.iter().map(|r| r.0).fold(f64::NEG_INFINITY, f64::max);
    let equality_cases = rows.iter().filter(|r| r.1).count();
    let rigidity_failures = rows.iter().filter(|r| r.2).count();
    Ok(DominationReport {
        n,
        d,
        trees: trees.len(),
        worst_margin,
        equality_cases,
        rigidity_failures,
        pass: worst_margin <= 1e-9 && rigidity_failures == 0,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossMethodReport {
    pub matrix: f64,
    pub distance: f64,
    /// `("spider" | "double_spider", λ₂)` when a root equation applies.
    pub root: Option<(&'static str, f64)>,
    pub max_rel_gap: f64,
    pub pass: bool,
}

/// λ₂ from the scalar root equation, when the shape has one.
pub fn lambda2_by_root(t: &Tree) -> Result<Option<(&'static str, f64)>> {
    if let Some(p) = recognize_spider(t) {
        let ls = p.lengths();
        if ls[0] > ls[1] {
            return Ok(Some(("spider", spider_lambda2(ls)?.value)));
        }
    }
    if let Some(p) = recognize_double_spider(t) {
        if p.principal().is_some() {
            return Ok(Some(("double_spider", double_spider_lambda2(&p)?)));
        }
    }
    Ok(None)
}

pub fn verify_cross_methods(t: &Tree) -> Result<CrossMethodReport> {
    let matrix = lambda2_numeric(t)?;
    let distance = lambda2_via_distance(t)?;
    let root = lambda2_by_root(t)?;
    let mut values = vec![matrix, distance];
    values.extend(root.map(|r| r.1));
    let mut max_rel_gap: f64 = 0.0;
    for (i, &x) in values.iter().enumerate() {
        for &y in &values[i + 1..] {
            max_rel_gap = max_rel_gap.max((x - y).abs() / x.abs().max(y.abs()));
        }
    }
    Ok(CrossMethodReport {
        matrix,
        distance,
        root,
        max_rel_gap,
        pass: max_rel_gap <= CROSS_RTOL,
    })
}

/// Largest `λ₂ − 2/D` over all unlabeled trees of order `n`.
pub fn diameter_bound_excess(n: usize, jobs: usize) -> Result<f64> {
    let trees: Vec<Tree> = all_trees(n).collect();
    let excess = par_map(jobs, &trees, |t| Ok(lambda2_numeric(t)? - 2.0 / t.diameter() as f64))?;
    Ok(excess.into_iter().fold(f64::NEG_INFINITY, f64::max))
}
