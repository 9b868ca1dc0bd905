//! λ₂-maximizing trees of order `n` and odd diameter `D = 2r + 1`.
//!
//! With `M = n − 2r − 2` lateral units and `s = ⌈r/2⌉`, every maximizer is a
//! balanced almost seesaw spider with `q₋ = max(1, ⌊M/s⌋)` or `q₊ = ⌈M/s⌉`
//! lateral branches. Which one wins is decided per case:
//!
//! | case                | condition                 | decided by                  |
//! |---------------------|---------------------------|-----------------------------|
//! | `path`              | `M = 0`                   | only tree                   |
//! | `single_small`      | `M < s`                   | single candidate            |
//! | `divisible`         | `s ∣ M`                   | single candidate            |
//! | `threshold_*`       | `M = ks + t`, `k ≥ s`     | regime / `κ_{r,t}` + roots  |
//! | `initial_orders`    | `M = ks + t`, `1 ≤ k < s` | direct root comparison      |

use std::fmt;

use crate::error::{Error, Result};
use crate::roots::{sigma_rm, spider_lambda2, threshold_data, Regime, ThresholdData};
use crate::tree::{canonical_code, ASParams, CanonicalCode, Tree};
use crate::{rel_close, TIE_RTOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    Path,
    SingleSmall,
    Divisible,
    ThresholdA,
    ThresholdB,
    ThresholdCompare,
    InitialOrders,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::Path => "path",
            CaseTag::SingleSmall => "single_small",
            CaseTag::Divisible => "divisible",
            CaseTag::ThresholdA => "threshold_A",
            CaseTag::ThresholdB => "threshold_B",
            CaseTag::ThresholdCompare => "threshold_compare",
            CaseTag::InitialOrders => "initial_orders",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The two balanced candidates `AS(r, q± + 2, c±, t±)` with `M = q±·c± + t±`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CandidatePair {
    pub r: usize,
    pub m: usize,
    pub s: usize,
    pub q_minus: usize,
    pub q_plus: usize,
    pub as_minus: ASParams,
    pub as_plus: ASParams,
}

impl CandidatePair {
    /// The candidates without repetition (one when `q₋ = q₊`).
    pub fn distinct(&self) -> Vec<ASParams> {
        if self.as_minus == self.as_plus {
            vec![self.as_minus]
        } else {
            vec![self.as_minus, self.as_plus]
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Candidates {
    /// `M = 0`: the path `P_{D+1}` is the only tree.
    Path { r: usize },
    Pair(CandidatePair),
}

/// `(r, M)` for order `n` and diameter `D`, rejecting inputs outside the
/// odd-diameter setting.
pub fn split_order(n: usize, d: usize) -> Result<(usize, usize)> {
    if d.is_multiple_of(2) {
        return Err(Error::EvenDiameter(d));
    }
    if d < 3 {
        return Err(Error::DiameterTooSmall(d));
    }
    if n < d + 1 {
        return Err(Error::OrderTooSmall { n, d });
    }
    let r = (d - 1) / 2;
    Ok((r, n - 2 * r - 2))
}

pub fn candidate_profiles(n: usize, d: usize) -> Result<Candidates> {
    let (r, m) = split_order(n, d)?;
    if m == 0 {
        return Ok(Candidates::Path { r });
    }
    let s = r.div_ceil(2);
    let q_minus = (m / s).max(1);
    let q_plus = m.div_ceil(s);
    Ok(Candidates::Pair(CandidatePair {
        r,
        m,
        s,
        q_minus,
        q_plus,
        as_minus: ASParams::balanced(r, q_minus, m)?,
        as_plus: ASParams::balanced(r, q_plus, m)?,
    }))
}

/// One candidate extremizer with its λ₂ from the spider root equation.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    /// Shorthand label, `path:D` or `spider:…`.
    pub label: String,
    pub params: Option<ASParams>,
    pub tree: Tree,
    pub lambda2: f64,
}

impl Candidate {
    fn path(r: usize) -> Result<Self> {
        Ok(Candidate {
            label: format!("path:{}", 2 * r + 1),
            params: None,
            tree: Tree::path(2 * r + 1)?,
            lambda2: spider_lambda2(&[r + 1, r])?.value,
        })
    }

    fn from_params(p: ASParams) -> Result<Self> {
        let profile = p.profile();
        Ok(Candidate {
            label: profile.to_string(),
            params: Some(p),
            tree: profile.to_tree(),
            lambda2: spider_lambda2(profile.lengths())?.value,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationResult {
    pub n: usize,
    pub d: usize,
    pub r: usize,
    pub m: usize,
    pub case: CaseTag,
    /// Present in the `threshold_*` cases.
    pub threshold: Option<ThresholdData>,
    pub candidates: Vec<Candidate>,
    /// Indices into `candidates` attaining the maximal λ₂.
    pub winners: Vec<usize>,
    /// More than one winner within [`TIE_RTOL`].
    pub tie_flag: bool,
}

impl ClassificationResult {
    pub fn winner_candidates(&self) -> impl Iterator<Item = &Candidate> {
        self.winners.iter().map(|&i| &self.candidates[i])
    }

    pub fn winner_lambda2(&self) -> f64 {
        self.candidates[self.winners[0]].lambda2
    }

    /// Canonical codes of the winners, sorted.
    pub fn winner_codes(&self) -> Vec<CanonicalCode> {
        let mut codes: Vec<_> = self.winner_candidates().map(|c| canonical_code(&c.tree)).collect();
        codes.sort();
        codes.dedup();
        codes
    }
}

/// Indices attaining the maximum within [`TIE_RTOL`].
fn argmax_within_tol(values: &[f64]) -> Vec<usize> {
    let best = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (0..values.len())
        .filter(|&i| rel_close(values[i], best, TIE_RTOL))
        .collect()
}

/// Case tag for `M = ks + t` with `k ≥ s`, `1 ≤ t ≤ s − 1`.
fn threshold_case(k: usize, data: &ThresholdData) -> CaseTag {
    match data.regime {
        Regime::AAlways => CaseTag::ThresholdA,
        Regime::BAlways => CaseTag::ThresholdB,
        Regime::Threshold { kappa, .. } => {
            let k = k as f64;
            if (k - kappa).abs() <= TIE_RTOL * k.max(1.0) {
                CaseTag::ThresholdCompare
            } else if k > kappa {
                CaseTag::ThresholdA
            } else {
                CaseTag::ThresholdB
            }
        }
    }
}

pub fn classify(n: usize, d: usize) -> Result<ClassificationResult> {
    let pair = match candidate_profiles(n, d)? {
        Candidates::Path { r } => {
            return Ok(ClassificationResult {
                n,
                d,
                r,
                m: 0,
                case: CaseTag::Path,
                threshold: None,
                candidates: vec![Candidate::path(r)?],
                winners: vec![0],
                tie_flag: false,
            });
        }
        Candidates::Pair(p) => p,
    };
    let (r, m, s) = (pair.r, pair.m, pair.s);
    let (k, t) = (m / s, m % s);
    let mut threshold = None;
    let case = if m < s {
        CaseTag::SingleSmall
    } else if t == 0 {
        CaseTag::Divisible
    } else if k >= s {
        let data = threshold_data(r, t)?;
        threshold = Some(data);
        threshold_case(k, &data)
    } else {
        CaseTag::InitialOrders
    };

    let candidates = pair
        .distinct()
        .into_iter()
        .map(Candidate::from_params)
        .collect::<Result<Vec<_>>>()?;
    let values: Vec<f64> = candidates.iter().map(|c| c.lambda2).collect();
    let winners = argmax_within_tol(&values);
    let tie_flag = winners.len() > 1;

    // The regime prediction must agree with the direct comparison.
    let predicted = match case {
        CaseTag::ThresholdA => Some(0),
        CaseTag::ThresholdB => Some(1),
        _ => None,
    };
    if let Some(want) = predicted {
        if !tie_flag && winners != [want] {
            return Err(Error::Inconsistent(format!(
                "n={n}, D={d}: case {case} predicts {} but direct comparison prefers {}",
                candidates[want].label, candidates[winners[0]].label
            )));
        }
    }

    Ok(ClassificationResult {
        n,
        d,
        r,
        m,
        case,
        threshold,
        candidates,
        winners,
        tie_flag,
    })
}

/// `Σ_{r,M}(q)` at every feasible integer `q`, with the maximizers.
#[derive(Debug, Clone, PartialEq)]
pub struct QTable {
    pub r: usize,
    pub m: usize,
    pub s: usize,
    pub q_minus: usize,
    pub q_plus: usize,
    pub rows: Vec<(usize, f64)>,
    /// Every `q` within [`TIE_RTOL`] of the maximum.
    pub argmax: Vec<usize>,
}

impl QTable {
    /// Whether some maximizer is `q₋` or `q₊`.
    pub fn peak_at_nearest(&self) -> bool {
        self.argmax.iter().any(|&q| q == self.q_minus || q == self.q_plus)
    }

    pub fn has_tie(&self) -> bool {
        self.argmax.len() > 1
    }
}

pub fn compare_candidates(r: usize, m: usize) -> Result<QTable> {
    if r < 1 || m < 1 {
        return Err(Error::InvalidParams(format!("need r, M >= 1 (r={r}, M={m})")));
    }
    let s = r.div_ceil(2);
    let lo = m.div_ceil(r);
    let rows = (lo..=m)
        .map(|q| Ok((q, sigma_rm(r, m, q as f64)?.value)))
        .collect::<Result<Vec<_>>>()?;
    let values: Vec<f64> = rows.iter().map(|&(_, v)| v).collect();
    let argmax = argmax_within_tol(&values).into_iter().map(|i| rows[i].0).collect();
    Ok(QTable {
        r,
        m,
        s,
        q_minus: (m / s).max(1),
        q_plus: m.div_ceil(s),
        rows,
        argmax,
    })
}
