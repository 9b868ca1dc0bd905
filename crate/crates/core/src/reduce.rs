//! λ₂-increasing tree moves for odd diameter `D = 2r + 1`.
//!
//! * domination: any tree is beaten (weakly) by a double spider built from an
//!   edge-to-leaf assignment around its central edge;
//! * arm transfer: moving a lateral branch of a double spider onto the side
//!   with the larger `A_ρ`/`B_ρ` value;
//! * main balancing step `(ℓ₁, ℓ₂) → (ℓ₁ − 1, ℓ₂ + 1)` on spiders;
//! * side balancing step `(u, v) → (u − 1, v + 1)` on two lateral branches.
//!
//! [`greedy_ascent`] chains them into a walk ending at a balanced spider.

use crate::error::{Error, Result};
use crate::roots::{double_spider_rho, double_spider_sides, spider_lambda2};
use crate::spectral::lambda2_numeric;
use crate::tree::{recognize_spider, shape_label, DoubleSpiderProfile, SpiderProfile, Tree};

/// Required strict gain of every move.
pub const MOVE_MARGIN: f64 = 1e-10;

/// A move outcome with λ₂ before and after.
#[derive(Debug, Clone, PartialEq)]
pub struct Move<P> {
    pub result: P,
    pub before: f64,
    pub after: f64,
}

impl<P> Move<P> {
    pub fn gain(&self) -> f64 {
        self.after - self.before
    }
}

fn checked<P: std::fmt::Display>(what: &str, from: &P, result: P, before: f64, after: f64) -> Result<Move<P>> {
    if after - before <= MOVE_MARGIN {
        return Err(Error::Inconsistent(format!(
            "{what} {from} -> {result} changed λ₂ by {:e}, expected a strict increase",
            after - before
        )));
    }
    Ok(Move { result, before, after })
}

fn odd_radius(d: usize) -> Result<usize> {
    if d.is_multiple_of(2) {
        return Err(Error::EvenDiameter(d));
    }
    if d < 3 {
        return Err(Error::DiameterTooSmall(d));
    }
    Ok((d - 1) / 2)
}

/// λ₂ of a double spider with `a₁ = b₁`.
pub fn double_spider_lambda2(p: &DoubleSpiderProfile) -> Result<f64> {
    Ok(1.0 / double_spider_rho(p)?.value)
}

/// Branch lengths of the side of `center` away from `other`: each edge goes
/// to the deepest leaf below it, smallest vertex id first among equals.
fn side_lengths(t: &Tree, center: usize, other: usize) -> Vec<usize> {
    let n = t.order();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut order = vec![center];
    parent[center] = center;
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        i += 1;
        for &y in t.neighbors(x) {
            if y != other && parent[y] == usize::MAX {
                parent[y] = x;
                depth[y] = depth[x] + 1;
                order.push(y);
            }
        }
    }
    // best[x]: the chosen leaf below x, as (depth, id); deeper wins, then smaller id.
    let better = |p: (usize, usize), q: (usize, usize)| p.0 > q.0 || (p.0 == q.0 && p.1 < q.1);
    let mut best: Vec<(usize, usize)> = vec![(0, usize::MAX); n];
    for &x in order[1..].iter().rev() {
        if t.degree(x) == 1 {
            best[x] = (depth[x], x);
        }
        if better(best[x], best[parent[x]]) {
            best[parent[x]] = best[x];
        }
    }
    let mut count = vec![0usize; n];
    for &x in &order[1..] {
        count[best[x].1] += 1;
    }
    let mut lengths: Vec<usize> = count.into_iter().filter(|&c| c > 0).collect();
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    lengths
}

/// The double spider dominating `t`: cut the central edge `uv` of the
/// lexicographically first diameter path and collect, on each side, the
/// edges assigned to every leaf into one branch.
pub fn dominating_double_spider(t: &Tree) -> Result<DoubleSpiderProfile> {
    let r = odd_radius(t.diameter())?;
    let path = t.diameter_path();
    let (u, v) = (path[r], path[r + 1]);
    let a = side_lengths(t, u, v);
    let b = side_lengths(t, v, u);
    debug_assert_eq!(a[0], r);
    debug_assert_eq!(b[0], r);
    DoubleSpiderProfile::new(a, b)
}

/// Moves branch `k` (0-based, `k ≥ 1`) of the donor side to the receiving
/// side, where the receiver is the side with the larger of `A_ρ`, `B_ρ`
/// (the `a` side on ties). The result lists the receiver first.
pub fn arm_transfer(p: &DoubleSpiderProfile, k: usize) -> Result<Move<DoubleSpiderProfile>> {
    let rho = double_spider_rho(p)?.value;
    let (a, b) = double_spider_sides(p, rho);
    let (receiver, donor) = if a >= b { (p.a(), p.b()) } else { (p.b(), p.a()) };
    if donor.len() < 2 {
        return Err(Error::IllegalMove(format!(
            "{p}: the donor side has a single branch"
        )));
    }
    if k == 0 || k >= donor.len() {
        return Err(Error::IllegalMove(format!(
            "{p}: branch index {k} is not a lateral branch of the donor side (1..{})",
            donor.len()
        )));
    }
    let mut new_receiver = receiver.to_vec();
    new_receiver.push(donor[k]);
    let mut new_donor = donor.to_vec();
    new_donor.remove(k);
    let result = DoubleSpiderProfile::new(new_receiver, new_donor)?;
    if result.same_shape(p) {
        return Err(Error::IllegalMove(format!("{p}: transfer is a no-op")));
    }
    let before = 1.0 / rho;
    let after = double_spider_lambda2(&result)?;
    checked("arm transfer", p, result, before, after)
}

fn spider_value(p: &SpiderProfile) -> Result<f64> {
    Ok(spider_lambda2(p.lengths())?.value)
}

/// `(ℓ₁, ℓ₂) → (ℓ₁ − 1, ℓ₂ + 1)` for `ℓ₁ ≥ ℓ₂ + 2`, `ℓ₁ + ℓ₂` odd, `b ≥ 3`.
pub fn balance_main_step(p: &SpiderProfile) -> Result<Move<SpiderProfile>> {
    let ls = p.lengths();
    if ls.len() < 3 {
        return Err(Error::IllegalMove(format!("{p}: needs at least three branches")));
    }
    let (l1, l2) = (ls[0], ls[1]);
    if l1 < l2 + 2 || (l1 + l2) % 2 == 0 {
        return Err(Error::IllegalMove(format!(
            "{p}: needs ℓ₁ ≥ ℓ₂ + 2 with ℓ₁ + ℓ₂ odd"
        )));
    }
    let mut next = ls.to_vec();
    next[0] -= 1;
    next[1] += 1;
    let result = SpiderProfile::new(next)?;
    let (before, after) = (spider_value(p)?, spider_value(&result)?);
    checked("main step", p, result, before, after)
}

/// `(u, v) → (u − 1, v + 1)` on lateral branches `i` and `j` (0-based
/// indices into [`SpiderProfile::laterals`]) of a spider with principal
/// lengths `(r + 1, r)`, requiring `u ≥ v + 2`.
pub fn balance_side_pair(p: &SpiderProfile, i: usize, j: usize) -> Result<Move<SpiderProfile>> {
    let ls = p.lengths();
    if ls.len() < 2 || ls[0] != ls[1] + 1 {
        return Err(Error::IllegalMove(format!("{p}: principal lengths are not (r+1, r)")));
    }
    let lat = p.laterals();
    if i >= lat.len() || j >= lat.len() || i == j {
        return Err(Error::IllegalMove(format!(
            "{p}: lateral indices ({i}, {j}) out of range"
        )));
    }
    let (u, v) = (lat[i], lat[j]);
    if u < v + 2 {
        return Err(Error::IllegalMove(format!(
            "{p}: lateral branches {u} and {v} differ by less than 2"
        )));
    }
    let mut next = ls.to_vec();
    next[2 + i] -= 1;
    next[2 + j] += 1;
    let result = SpiderProfile::new(next)?;
    let (before, after) = (spider_value(p)?, spider_value(&result)?);
    checked("side step", p, result, before, after)
}

/// [`balance_side_pair`] on the longest and shortest lateral branches.
pub fn balance_side_step(p: &SpiderProfile) -> Result<Move<SpiderProfile>> {
    let lat = p.laterals();
    if lat.len() < 2 {
        return Err(Error::IllegalMove(format!("{p}: fewer than two lateral branches")));
    }
    balance_side_pair(p, 0, lat.len() - 1)
}

/// `None` when the move's hypothesis fails; other errors pass through.
fn applicable<P>(res: Result<Move<P>>) -> Result<Option<Move<P>>> {
    match res {
        Ok(mv) => Ok(Some(mv)),
        Err(Error::IllegalMove(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// One entry of a [`greedy_ascent`] trace.
#[derive(Debug, Clone, PartialEq)]
pub struct AscentStep {
    /// `input`, `dominate`, `arm_transfer`, `to_spider`, `main_step` or `side_step`.
    pub action: &'static str,
    /// Shorthand of the shape after the step.
    pub shape: String,
    pub lambda2: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ascent {
    pub steps: Vec<AscentStep>,
    pub result: Tree,
    pub profile: SpiderProfile,
}

/// Domination, then arm transfers until one side is a single branch, then
/// main and side balancing steps to a fixpoint. Spiders skip straight to
/// the balancing phase.
pub fn greedy_ascent(t: &Tree) -> Result<Ascent> {
    let r = odd_radius(t.diameter())?;
    let mut steps = vec![AscentStep {
        action: "input",
        shape: shape_label(t),
        lambda2: lambda2_numeric(t)?,
    }];
    let mut spider = match recognize_spider(t) {
        Some(p) => p,
        None => {
            let mut ds = dominating_double_spider(t)?;
            let value = double_spider_lambda2(&ds)?;
            if value + 1e-9 < steps[0].lambda2 {
                return Err(Error::Inconsistent(format!(
                    "domination lowered λ₂ from {} to {value}",
                    steps[0].lambda2
                )));
            }
            steps.push(AscentStep {
                action: "dominate",
                shape: ds.to_string(),
                lambda2: value,
            });
            while ds.a().len() >= 2 && ds.b().len() >= 2 {
                let rho = double_spider_rho(&ds)?.value;
                let (a, b) = double_spider_sides(&ds, rho);
                let donor = if a >= b { ds.b() } else { ds.a() };
                let mv = arm_transfer(&ds, donor.len() - 1)?;
                ds = mv.result;
                steps.push(AscentStep {
                    action: "arm_transfer",
                    shape: ds.to_string(),
                    lambda2: mv.after,
                });
            }
            // The single-branch side becomes the long principal branch.
            let (single, rest) = if ds.b().len() == 1 { (ds.b(), ds.a()) } else { (ds.a(), ds.b()) };
            let mut lengths = vec![single[0] + 1];
            lengths.extend_from_slice(rest);
            let p = SpiderProfile::new(lengths)?;
            steps.push(AscentStep {
                action: "to_spider",
                shape: p.to_string(),
                lambda2: spider_value(&p)?,
            });
            p
        }
    };
    while let Some(mv) = applicable(balance_main_step(&spider))? {
        spider = mv.result;
        steps.push(AscentStep {
            action: "main_step",
            shape: spider.to_string(),
            lambda2: mv.after,
        });
    }
    while let Some(mv) = applicable(balance_side_step(&spider))? {
        spider = mv.result;
        steps.push(AscentStep {
            action: "side_step",
            shape: spider.to_string(),
            lambda2: mv.after,
        });
    }
    debug_assert_eq!(spider.diameter(), 2 * r + 1);
    Ok(Ascent {
        steps,
        result: spider.to_tree(),
        profile: spider,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{canonical_code, parse_shorthand};

    fn ds(a: &[usize], b: &[usize]) -> DoubleSpiderProfile {
        DoubleSpiderProfile::new(a.to_vec(), b.to_vec()).unwrap()
    }

    fn spider(ls: &[usize]) -> SpiderProfile {
        SpiderProfile::new(ls.to_vec()).unwrap()
    }

    fn caterpillar() -> Tree {
        // v0..v5 with a pendant leaf 6 at v2
        Tree::new(7, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6)]).unwrap()
    }

    #[test]
    fn domination_examples() {
        let s321 = parse_shorthand("spider:3,2,1").unwrap();
        let p = dominating_double_spider(&s321).unwrap();
        assert!(p.same_shape(&ds(&[2, 1], &[2])));
        let exact = (6.0 - 3f64.sqrt()) / 11.0;
        assert!((double_spider_lambda2(&p).unwrap() - exact).abs() < 1e-13);

        let p6 = Tree::path(5).unwrap();
        assert_eq!(dominating_double_spider(&p6).unwrap(), ds(&[2], &[2]));

        let c = caterpillar();
        let p = dominating_double_spider(&c).unwrap();
        assert!(p.same_shape(&ds(&[2, 1], &[2])));
        assert!(lambda2_numeric(&c).unwrap() <= exact + 1e-9);

        assert!(dominating_double_spider(&Tree::path(4).unwrap()).is_err());
    }

    #[test]
    fn domination_preserves_order() {
        let t = parse_shorthand("ds:3,2,2,1/3,3,1").unwrap();
        let p = dominating_double_spider(&t).unwrap();
        assert_eq!(p.order(), t.order());
        assert_eq!(p.principal(), Some(3));
        assert!(p.same_shape(&ds(&[3, 2, 2, 1], &[3, 3, 1])));
    }

    #[test]
    fn arm_transfer_examples() {
        let mv = arm_transfer(&ds(&[2, 1], &[2, 1]), 1).unwrap();
        assert_eq!(mv.result, ds(&[2, 1, 1], &[2]));
        assert!((mv.before - 1.0 / (2.0 + 2f64.sqrt() / 2.0)).abs() < 1e-13);
        assert!((mv.after - (17.0 - 17f64.sqrt()) / 34.0).abs() < 1e-13);

        let mv = arm_transfer(&ds(&[3, 1], &[3, 1]), 1).unwrap();
        assert_eq!(mv.result, ds(&[3, 1, 1], &[3]));
        assert!(mv.gain() > MOVE_MARGIN);

        assert!(arm_transfer(&ds(&[3], &[3, 1]), 1).is_err());
        assert!(arm_transfer(&ds(&[3, 1], &[3, 1]), 0).is_err());
        assert!(arm_transfer(&ds(&[3, 1], &[3, 1]), 2).is_err());
    }

    #[test]
    fn main_step_examples() {
        let mv = balance_main_step(&spider(&[4, 1, 1])).unwrap();
        assert_eq!(mv.result, spider(&[3, 2, 1]));
        assert!((mv.before - 1.0 / 3.0).abs() < 1e-14);
        assert!((mv.after - (6.0 - 3f64.sqrt()) / 11.0).abs() < 1e-14);
        let mv = balance_main_step(&spider(&[5, 2, 2, 1])).unwrap();
        assert_eq!(mv.result, spider(&[4, 3, 2, 1]));
        assert!(balance_main_step(&spider(&[4, 1])).is_err());
        assert!(balance_main_step(&spider(&[3, 2, 1])).is_err());
    }

    #[test]
    fn side_step_examples() {
        let mv = balance_side_step(&spider(&[4, 3, 3, 1])).unwrap();
        assert_eq!(mv.result, spider(&[4, 3, 2, 2]));
        assert!(mv.gain() > MOVE_MARGIN);
        let mv = balance_side_step(&spider(&[5, 4, 4, 1, 1])).unwrap();
        assert_eq!(mv.result, spider(&[5, 4, 3, 2, 1]));
        assert!(balance_side_step(&spider(&[4, 3, 2, 2])).is_err());
        assert!(balance_side_step(&spider(&[5, 3, 3, 1])).is_err());
    }

    #[test]
    fn ascent_examples() {
        let p6 = Tree::path(5).unwrap();
        let a = greedy_ascent(&p6).unwrap();
        assert_eq!(canonical_code(&a.result), canonical_code(&p6));
        assert_eq!(a.steps.len(), 1);

        let target = canonical_code(&parse_shorthand("spider:3,2,1").unwrap());
        let a = greedy_ascent(&caterpillar()).unwrap();
        assert_eq!(canonical_code(&a.result), target);

        let a = greedy_ascent(&parse_shorthand("spider:4,1,1").unwrap()).unwrap();
        assert_eq!(canonical_code(&a.result), target);
        assert_eq!(a.steps.iter().map(|s| s.action).collect::<Vec<_>>(), ["input", "main_step"]);

        assert!(greedy_ascent(&Tree::path(4).unwrap()).is_err());
    }

    #[test]
    fn ascent_is_monotone() {
        let t = parse_shorthand("ds:4,1,1,1/4,2,2").unwrap();
        let a = greedy_ascent(&t).unwrap();
        for w in a.steps.windows(2) {
            assert!(w[1].lambda2 >= w[0].lambda2 - 1e-12, "{:?}", a.steps);
        }
        assert_eq!(a.result.order(), t.order());
        assert_eq!(a.result.diameter(), t.diameter());
    }
}
