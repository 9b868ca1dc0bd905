//! Scalar root equations whose unique roots are λ₂ of structured trees.
//!
//! * spider equation `F_ℓ(λ) = Σ 1/(1 − ℓᵢλ)` on `(1/ℓ₁, 1/ℓ₂)`;
//! * balanced family `Φ_{r,M}(λ, q)` on `(1/(r+1), 1/r)`, whose root
//!   `Σ_{r,M}(q)` is λ₂ of the balanced spider with `q` lateral branches;
//! * double-spider equation `1/A_ρ + 1/B_ρ = 1` for `ρ = 1/λ₂ > r`;
//! * the threshold quadratic `P_{s,t}` with root `ζ_{s,t}` and crossover
//!   `κ_{r,t}` deciding between the two balanced candidates.
//!
//! All roots are found by bisection on brackets where the function is
//! strictly increasing; the poles sit at (or just outside) the bracket ends.

use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::flux::BoundaryFlux;
use crate::tree::{ASParams, DoubleSpiderProfile};

/// Bracket width every root is refined to (in practice bisection continues
/// down to adjacent floating-point numbers).
pub const BRACKET_TOL: f64 = 1e-14;

/// A root with its final sign-change bracket and the function value there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult {
    pub value: f64,
    pub bracket: (f64, f64),
    pub residual: f64,
}

#[cfg(debug_assertions)]
fn debug_check_increasing(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64) {
    let mut prev = f64::NEG_INFINITY;
    for k in 1..=100 {
        let x = lo + (hi - lo) * k as f64 / 101.0;
        let y = f(x);
        debug_assert!(y > prev, "function not increasing on ({lo}, {hi}) near {x}");
        prev = y;
    }
}

/// Bisection for a strictly increasing `f` on the open interval `(lo, hi)`
/// with `f → negative` at `lo` and `f → positive` at `hi`. The endpoints
/// themselves are never evaluated.
///
/// Refines until the next split would leave no float strictly inside, then
/// returns the last midpoint together with the bracket that contains it.
pub fn bisect_increasing(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Result<RootResult> {
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Error::BadBracket { lo, hi });
    }
    #[cfg(debug_assertions)]
    debug_check_increasing(&f, lo, hi);
    let (mut lo, mut hi) = (lo, hi);
    loop {
        let mid = lo + 0.5 * (hi - lo);
        if !(lo < mid && mid < hi) {
            return Err(Error::BadBracket { lo, hi });
        }
        let fm = f(mid);
        if fm.is_nan() {
            return Err(Error::Inconsistent(format!("NaN while bisecting at {mid}")));
        }
        if fm == 0.0 {
            return Ok(RootResult {
                value: mid,
                bracket: (mid.next_down(), mid.next_up()),
                residual: 0.0,
            });
        }
        let (nlo, nhi) = if fm < 0.0 { (mid, hi) } else { (lo, mid) };
        let next = nlo + 0.5 * (nhi - nlo);
        if !(nlo < next && next < nhi) {
            debug_assert!(hi - lo <= BRACKET_TOL);
            return Ok(RootResult {
                value: mid,
                bracket: (lo, hi),
                residual: fm,
            });
        }
        lo = nlo;
        hi = nhi;
    }
}

/// `F_ℓ(λ) = Σᵢ 1/(1 − ℓᵢλ)`.
pub fn spider_equation(lengths: &[usize], lambda: f64) -> f64 {
    lengths.iter().map(|&l| 1.0 / (1.0 - l as f64 * lambda)).sum()
}

/// λ₂ of the spider with the given branch lengths, as the unique root of
/// `F_ℓ` in `(1/ℓ₁, 1/ℓ₂)`. Requires `ℓ₁ > ℓ₂` (odd-diameter shape).
pub fn spider_lambda2(lengths: &[usize]) -> Result<RootResult> {
    let mut ls = lengths.to_vec();
    ls.sort_unstable_by(|a, b| b.cmp(a));
    if ls.len() < 2 || ls.contains(&0) {
        return Err(Error::InvalidProfile(format!(
            "spider needs >= 2 positive branch lengths, got {lengths:?}"
        )));
    }
    if ls[0] == ls[1] {
        return Err(Error::InvalidProfile(format!(
            "two longest branches are equal ({}), so the root equation does not apply",
            ls[0]
        )));
    }
    let (lo, hi) = (1.0 / ls[0] as f64, 1.0 / ls[1] as f64);
    bisect_increasing(|x| spider_equation(&ls, x), lo, hi)
}

/// Integer feasibility of the lateral branch count: `⌈M/r⌉ ≤ q ≤ M`.
pub fn feasible_q_range(r: usize, m: usize) -> RangeInclusive<usize> {
    m.div_ceil(r)..=m
}

/// Continuous domain `[M/r, M]` of `Σ_{r,M}`.
pub fn continuous_q_domain(r: usize, m: usize) -> (f64, f64) {
    (m as f64 / r as f64, m as f64)
}

/// `c(q) = ⌊M/q⌋`, snapping ratios within rounding of an integer.
pub fn block_index(m: usize, q: f64) -> usize {
    let ratio = m as f64 / q;
    let near = ratio.round();
    if (ratio - near).abs() <= 1e-12 * ratio {
        near as usize
    } else {
        ratio.floor() as usize
    }
}

/// `Φ_{r,M}(λ, q)` using the formula of block `c` (valid for
/// `M/(c+1) ≤ q ≤ M/c`). Block `c = r` is the endpoint `q = M/r`.
pub fn balanced_equation(r: usize, m: usize, q: f64, c: usize, lambda: f64) -> f64 {
    let (rf, mf, cf) = (r as f64, m as f64, c as f64);
    let principal = 1.0 / (1.0 - (rf + 1.0) * lambda) + 1.0 / (1.0 - rf * lambda);
    if c >= r {
        return 1.0 / (1.0 - (rf + 1.0) * lambda) + (1.0 + mf / rf) / (1.0 - rf * lambda);
    }
    principal + (mf - cf * q) / (1.0 - (cf + 1.0) * lambda) + (q * (cf + 1.0) - mf) / (1.0 - cf * lambda)
}

/// Root of the block-`c` formula of `Φ_{r,M}(·, q)` in `(1/(r+1), 1/r)`.
pub fn sigma_in_block(r: usize, m: usize, q: f64, c: usize) -> Result<RootResult> {
    if r < 1 || m < 1 || c < 1 || c > r {
        return Err(Error::InvalidParams(format!(
            "balanced block needs r, M >= 1 and 1 <= c <= r (r={r}, M={m}, c={c})"
        )));
    }
    let (lo, hi) = (1.0 / (r as f64 + 1.0), 1.0 / r as f64);
    bisect_increasing(|x| balanced_equation(r, m, q, c, x), lo, hi)
}

/// `Σ_{r,M}(q)` for real `q ∈ [M/r, M]`.
pub fn sigma_rm(r: usize, m: usize, q: f64) -> Result<RootResult> {
    if r < 1 || m < 1 {
        return Err(Error::InvalidParams(format!("need r, M >= 1 (r={r}, M={m})")));
    }
    let (qlo, qhi) = continuous_q_domain(r, m);
    let slack = 1e-12 * qhi;
    if !(q >= qlo - slack && q <= qhi + slack) {
        return Err(Error::InvalidParams(format!(
            "q = {q} outside [M/r, M] = [{qlo}, {qhi}]"
        )));
    }
    let c = block_index(m, q).clamp(1, r);
    sigma_in_block(r, m, q, c)
}

/// `A_ρ = Σ 1/(ρ − aᵢ)` and `B_ρ = Σ 1/(ρ − bⱼ)`.
pub fn double_spider_sides(p: &DoubleSpiderProfile, rho: f64) -> (f64, f64) {
    let side = |ls: &[usize]| ls.iter().map(|&l| 1.0 / (rho - l as f64)).sum::<f64>();
    (side(p.a()), side(p.b()))
}

/// `1/A_ρ + 1/B_ρ − 1`.
pub fn double_spider_equation(p: &DoubleSpiderProfile, rho: f64) -> f64 {
    let (a, b) = double_spider_sides(p, rho);
    1.0 / a + 1.0 / b - 1.0
}

fn principal_of(p: &DoubleSpiderProfile) -> Result<usize> {
    p.principal().ok_or_else(|| {
        Error::InvalidProfile(format!(
            "{p} needs a₁ = b₁ (got {} and {})",
            p.a()[0],
            p.b()[0]
        ))
    })
}

/// `ρ = 1/λ₂` of a double spider with `a₁ = b₁ = r`.
pub fn double_spider_rho(p: &DoubleSpiderProfile) -> Result<RootResult> {
    let r = principal_of(p)? as f64;
    let lo = r + 1e-9;
    let hi = r + p.total_length() as f64 + 1.0;
    let f = |x| double_spider_equation(p, x);
    if !(f(lo) < 0.0 && f(hi) > 0.0) {
        return Err(Error::BadBracket { lo, hi });
    }
    bisect_increasing(f, lo, hi)
}

/// Maximizing flux `(x; y)` of the inverse Rayleigh quotient, in leaf order
/// of the constructed double spider: `xᵢ = (1/A)/(ρ − aᵢ) > 0` summing to 1
/// and `yⱼ = −(1/B)/(ρ − bⱼ) < 0` summing to −1.
pub fn double_spider_maximizer(p: &DoubleSpiderProfile) -> Result<BoundaryFlux> {
    let rho = double_spider_rho(p)?.value;
    let (a, b) = double_spider_sides(p, rho);
    let x = p.a().iter().map(|&l| (1.0 / a) / (rho - l as f64));
    let y = p.b().iter().map(|&l| -(1.0 / b) / (rho - l as f64));
    BoundaryFlux::new(x.chain(y).collect())
}

/// `P_{s,t}(λ) = 1 − 3sλ + (2s² + s − 2t − 1)λ²`.
pub fn threshold_polynomial(s: usize, t: usize, lambda: f64) -> f64 {
    let (sf, tf) = (s as f64, t as f64);
    1.0 - 3.0 * sf * lambda + (2.0 * sf * sf + sf - 2.0 * tf - 1.0) * lambda * lambda
}

/// Which balanced candidate wins for `M = k·s + t`, `k ≥ s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regime {
    /// `A_{k,t}` wins for every `k ≥ s`.
    AAlways,
    /// `B_{k,t}` wins for every `k ≥ s`.
    BAlways,
    /// `A` wins iff `k > κ`, `B` iff `k < κ`; tie iff `k = κ ∈ ℤ`.
    Threshold { zeta: f64, kappa: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdData {
    pub r: usize,
    pub s: usize,
    pub t: usize,
    pub regime: Regime,
}

/// Roots of `P_{s,t}` by the cancellation-free quadratic formula, smaller first.
fn threshold_roots(s: usize, t: usize) -> (f64, f64) {
    let (sf, tf) = (s as f64, t as f64);
    let a = 2.0 * sf * sf + sf - 2.0 * tf - 1.0;
    let b = -3.0 * sf;
    let disc = b * b - 4.0 * a;
    let qq = -0.5 * (b - disc.sqrt());
    let (r1, r2) = (1.0 / qq, qq / a);
    (r1.min(r2), r1.max(r2))
}

fn kappa(r: usize, s: usize, t: usize, zeta: f64) -> f64 {
    let (rf, sf, tf) = (r as f64, s as f64, t as f64);
    -(1.0 - sf * zeta)
        * (1.0 / (1.0 - (rf + 1.0) * zeta)
            + 1.0 / (1.0 - rf * zeta)
            + (tf - sf + 1.0) / (1.0 - sf * zeta)
            + (sf - tf) / (1.0 - (sf - 1.0) * zeta))
}

/// Threshold data for `r ≥ 3`, `1 ≤ t ≤ s − 1`, `s = ⌈r/2⌉`.
pub fn threshold_data(r: usize, t: usize) -> Result<ThresholdData> {
    if r < 3 {
        return Err(Error::InvalidParams(format!("threshold data needs r >= 3, got {r}")));
    }
    let s = r.div_ceil(2);
    if t < 1 || t > s - 1 {
        return Err(Error::InvalidParams(format!(
            "threshold data needs 1 <= t <= s - 1 = {} (got t = {t})",
            s - 1
        )));
    }
    let regime = if r == 2 * s && 2 * t < s {
        Regime::AAlways
    } else if r == 2 * s - 1 && 2 * t + 1 >= s {
        Regime::BAlways
    } else {
        let (lo, hi) = (1.0 / (r as f64 + 1.0), 1.0 / r as f64);
        let inside = |x: f64| x > lo && x < hi;
        let (z1, z2) = threshold_roots(s, t);
        let zeta = if inside(z1) {
            z1
        } else if inside(z2) {
            z2
        } else {
            // P is decreasing on I_r.
            bisect_increasing(|x| -threshold_polynomial(s, t, x), lo, hi)?.value
        };
        Regime::Threshold {
            zeta,
            kappa: kappa(r, s, t, zeta),
        }
    };
    Ok(ThresholdData { r, s, t, regime })
}

/// The two balanced candidates for `M = k·s + t` with `1 ≤ t ≤ s − 1`:
/// `A_{k,t} = AS(r, k+2, s, t)` and `B_{k,t} = AS(r, k+3, s−1, k+t−s+1)`,
/// given as `ASParams` with `q` lateral branches.
pub fn threshold_pair(r: usize, k: usize, t: usize) -> Result<(ASParams, ASParams)> {
    let s = r.div_ceil(2);
    if s < 2 || t < 1 || t >= s || k < 1 {
        return Err(Error::InvalidParams(format!(
            "threshold pair needs s >= 2, 1 <= t < s, k >= 1 (r={r}, k={k}, t={t})"
        )));
    }
    let a = ASParams::new(r, k, s, t)?;
    let b = ASParams::new(r, k + 1, s - 1, k + t + 1 - s)?;
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(a: &[usize], b: &[usize]) -> DoubleSpiderProfile {
        DoubleSpiderProfile::new(a.to_vec(), b.to_vec()).unwrap()
    }

    // Independent oracle: the smaller/larger root of a·x² + b·x + c.
    fn quad_roots(a: f64, b: f64, c: f64) -> (f64, f64) {
        let d = (b * b - 4.0 * a * c).sqrt();
        let (x1, x2) = ((-b - d) / (2.0 * a), (-b + d) / (2.0 * a));
        (x1.min(x2), x1.max(x2))
    }

    fn check_root(res: &RootResult) {
        assert!(res.bracket.0 < res.value && res.value < res.bracket.1);
        assert!(res.bracket.1 - res.bracket.0 <= BRACKET_TOL);
        assert!(res.residual.abs() <= 1e-11, "residual {}", res.residual);
    }

    #[test]
    fn spider_roots() {
        let r = spider_lambda2(&[2, 1]).unwrap();
        check_root(&r);
        assert!((r.value - 2.0 / 3.0).abs() < 1e-15);
        // 1/(1−2λ) + 2/(1−λ) = 0 ⇔ 3 − 5λ = 0
        assert!((spider_lambda2(&[2, 1, 1]).unwrap().value - 0.6).abs() < 1e-15);
        // 1/(1−3λ) + 2/(1−2λ) = 0 ⇔ 3 − 8λ = 0
        assert!((spider_lambda2(&[3, 2, 2]).unwrap().value - 3.0 / 8.0).abs() < 1e-15);
        let (small, _) = quad_roots(11.0, -12.0, 3.0);
        assert!((spider_lambda2(&[1, 3, 2]).unwrap().value - small).abs() < 1e-15);
    }

    #[test]
    fn spider_root_errors() {
        assert!(spider_lambda2(&[2, 2, 1]).is_err());
        assert!(spider_lambda2(&[3]).is_err());
        assert!(spider_lambda2(&[3, 0]).is_err());
    }

    #[test]
    fn sigma_examples() {
        let s1 = sigma_rm(2, 2, 1.0).unwrap();
        check_root(&s1);
        assert!((s1.value - 3.0 / 8.0).abs() < 1e-15);
        assert!((s1.value - spider_lambda2(&[3, 2, 2]).unwrap().value).abs() < 1e-15);
        // 4 − 17λ + 17λ² = 0
        let s2 = sigma_rm(2, 2, 2.0).unwrap();
        let (small, _) = quad_roots(17.0, -17.0, 4.0);
        assert!((s2.value - small).abs() < 1e-15);
        assert!((s2.value - (17.0 - 17f64.sqrt()) / 34.0).abs() < 1e-15);
        assert!(s1.value < s2.value);
    }

    #[test]
    fn sigma_endpoint_and_range() {
        // q = M/r uses 1/(1−(r+1)λ) + (1 + M/r)/(1−rλ).
        let (r, m) = (3, 7);
        let q = m as f64 / r as f64;
        let got = sigma_rm(r, m, q).unwrap().value;
        let direct = bisect_increasing(
            |x| 1.0 / (1.0 - 4.0 * x) + (1.0 + q) / (1.0 - 3.0 * x),
            0.25,
            1.0 / 3.0,
        )
        .unwrap()
        .value;
        assert_eq!(got, direct);
        assert!(sigma_rm(3, 7, 3.0).is_ok());
        assert!(sigma_rm(3, 7, 4.5).is_ok());
        assert!(sigma_rm(3, 7, 2.0).is_err());
        assert!(sigma_rm(3, 7, 7.5).is_err());
        assert_eq!(feasible_q_range(3, 7), 3..=7);
        assert_eq!(feasible_q_range(1, 3), 3..=3);
    }

    #[test]
    fn sigma_matches_balanced_spiders() {
        for r in 1..=6 {
            for m in 1..=12 {
                for q in feasible_q_range(r, m) {
                    let p = ASParams::balanced(r, q, m).unwrap();
                    let want = spider_lambda2(p.profile().lengths()).unwrap().value;
                    let got = sigma_rm(r, m, q as f64).unwrap().value;
                    assert!((got - want).abs() <= 1e-14, "r={r} M={m} q={q}");
                }
            }
        }
    }

    #[test]
    fn double_spider_roots() {
        for r in 1..=6 {
            let res = double_spider_rho(&ds(&[r], &[r])).unwrap();
            check_root(&res);
            assert!((res.value - (r as f64 + 0.5)).abs() < 1e-13);
        }
        // 3ρ² − 12ρ + 11 = 0, larger root 2 + 1/√3
        let res = double_spider_rho(&ds(&[2, 1], &[2])).unwrap();
        let (_, big) = quad_roots(3.0, -12.0, 11.0);
        assert!((res.value - big).abs() < 1e-13);
        assert!((1.0 / res.value - (6.0 - 3f64.sqrt()) / 11.0).abs() < 1e-14);
        // ρ² − 5ρ + 5 = 0
        let res = double_spider_rho(&ds(&[3, 1], &[3, 1])).unwrap();
        assert!((res.value - (5.0 + 5f64.sqrt()) / 2.0).abs() < 1e-13);
        assert!(double_spider_rho(&ds(&[3, 1], &[2, 2])).is_err());
    }

    #[test]
    fn maximizer_fluxes() {
        let z = double_spider_maximizer(&ds(&[3], &[3])).unwrap();
        assert_eq!(z.values().len(), 2);
        assert!((z.values()[0] - 1.0).abs() < 1e-12 && (z.values()[1] + 1.0).abs() < 1e-12);

        let p = ds(&[2, 1], &[2]);
        let rho = 2.0 + 1.0 / 3f64.sqrt();
        let z = double_spider_maximizer(&p).unwrap();
        let (w1, w2) = (1.0 / (rho - 2.0), 1.0 / (rho - 1.0));
        let v = z.values();
        assert!((v[0] - w1 / (w1 + w2)).abs() < 1e-12);
        assert!((v[1] - w2 / (w1 + w2)).abs() < 1e-12);
        assert!((v[2] + 1.0).abs() < 1e-12);

        let p = ds(&[3, 1], &[3, 1]);
        let rho = (5.0 + 5f64.sqrt()) / 2.0;
        let v = double_spider_maximizer(&p).unwrap().values().to_vec();
        assert!((v[0] + v[2]).abs() < 1e-12 && (v[1] + v[3]).abs() < 1e-12);
        assert!((v[0] / v[1] - (rho - 1.0) / (rho - 3.0)).abs() < 1e-11);
    }

    #[test]
    fn threshold_examples() {
        let d = threshold_data(4, 1).unwrap();
        let Regime::Threshold { zeta, kappa } = d.regime else {
            panic!("expected threshold regime, got {:?}", d.regime)
        };
        let (small, _) = quad_roots(7.0, -6.0, 1.0);
        assert!((zeta - small).abs() < 1e-15);
        assert!((zeta - (3.0 - 2f64.sqrt()) / 7.0).abs() < 1e-15);
        assert!((kappa + 1.0 + 2f64.sqrt()).abs() < 1e-11);

        assert_eq!(threshold_data(6, 1).unwrap().regime, Regime::AAlways);

        let Regime::Threshold { zeta, kappa } = threshold_data(6, 2).unwrap().regime else {
            panic!("expected threshold regime")
        };
        assert!((zeta - (9.0 - 17f64.sqrt()) / 32.0).abs() < 1e-15);
        assert!((kappa - 1.0).abs() < 1e-11);
    }

    #[test]
    fn threshold_errors() {
        assert!(threshold_data(2, 1).is_err());
        assert!(threshold_data(5, 0).is_err());
        assert!(threshold_data(5, 3).is_err());
    }

    #[test]
    fn threshold_pair_shapes() {
        let (a, b) = threshold_pair(4, 2, 1).unwrap();
        assert_eq!(a.profile().lengths(), &[5, 4, 3, 2]);
        assert_eq!(b.profile().lengths(), &[5, 4, 2, 2, 1]);
        assert_eq!(a.m(), b.m());
    }
}
