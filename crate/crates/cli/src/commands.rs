use std::fs;
use std::path::PathBuf;

use steklov_core::classify::{candidate_profiles, classify, Candidates};
use steklov_core::flux::lambda2_via_distance;
use steklov_core::reduce::greedy_ascent;
use steklov_core::roots::Regime;
use steklov_core::spectral::{lambda2_numeric, steklov_spectrum};
use steklov_core::tree::{parse_shorthand, shape_label};
use steklov_core::verify::{lambda2_by_root, verify_classification, verify_unimodality, Verdict};
use steklov_core::{Error, Tree};

use crate::output::{num, Report, Table};

pub enum Failure {
    /// Bad command-line input (exit 1).
    Usage(String),
    /// Valid input outside what an operation accepts (exit 2).
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::InvalidTree(_) => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

pub type Outcome = Result<Report, Failure>;

pub fn load_tree(shorthand: Option<&str>, file: Option<&PathBuf>) -> Result<Tree, Failure> {
    match (shorthand, file) {
        (Some(s), None) => Ok(parse_shorthand(s)?),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            Ok(Tree::from_text(&text)?)
        }
        _ => Err(Failure::Usage("give either a tree shorthand or --file".into())),
    }
}

fn describe(report: &mut Report, t: &Tree) {
    report.field("shape", shape_label(t));
    report.field("order", t.order());
    report.field("diameter", t.diameter());
    report.field("leaves", t.leaves().len());
}

pub fn spectrum(t: &Tree) -> Outcome {
    let mut report = Report::default();
    describe(&mut report, t);
    report.field("tree", t.to_text());
    let mut table = Table::new("eigenvalues", &["k", "eigenvalue"]);
    for (k, v) in steklov_spectrum(t)?.eigenvalues().iter().enumerate() {
        table.push(vec![(k + 1).to_string(), num(*v)]);
    }
    report.tables.push(table);
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Matrix,
    Distance,
    Root,
    /// Every method that applies to the tree.
    All,
}

pub fn lambda2(t: &Tree, method: Method) -> Outcome {
    let mut report = Report::default();
    describe(&mut report, t);
    report.field("tree", t.to_text());
    let mut values: Vec<(String, f64)> = Vec::new();
    if matches!(method, Method::Matrix | Method::All) {
        values.push(("matrix".into(), lambda2_numeric(t)?));
    }
    if matches!(method, Method::Distance | Method::All) {
        values.push(("distance".into(), lambda2_via_distance(t)?));
    }
    if matches!(method, Method::Root | Method::All) {
        match lambda2_by_root(t)? {
            Some((name, v)) => values.push((name.into(), v)),
            None if method == Method::Root => {
                return Err(Failure::Domain(format!(
                    "no root equation applies to {}: needs a spider with ℓ₁ > ℓ₂ or a double spider with a₁ = b₁",
                    shape_label(t)
                )))
            }
            None => {}
        }
    }
    let mut table = Table::new("lambda2", &["method", "lambda2"]);
    for (name, v) in &values {
        table.push(vec![name.clone(), num(*v)]);
    }
    report.tables.push(table);
    Ok(report)
}

fn check_odd(d: usize) -> Result<(), Failure> {
    if d.is_multiple_of(2) {
        return Err(Error::EvenDiameter(d).into());
    }
    Ok(())
}

pub fn classify_cmd(n: usize, d: usize) -> Outcome {
    check_odd(d)?;
    let c = classify(n, d)?;
    let mut report = Report::default();
    report.field("n", n);
    report.field("D", d);
    report.field("r", c.r);
    report.field("M", c.m);
    report.field("case", c.case);
    if let Some(th) = c.threshold {
        report.field("s", th.s);
        report.field("k", c.m / th.s);
        report.field("t", th.t);
        match th.regime {
            Regime::AAlways => report.field("regime", "A_always"),
            Regime::BAlways => report.field("regime", "B_always"),
            Regime::Threshold { zeta, kappa } => {
                report.field("regime", "threshold");
                report.field("zeta", num(zeta));
                report.field("kappa", num(kappa));
            }
        }
    }
    let winners: Vec<String> = c.winner_candidates().map(|w| w.label.clone()).collect();
    report.field("winner", winners.join(";"));
    report.field("lambda2", num(c.winner_lambda2()));
    report.field("tie", c.tie_flag);
    let mut table = Table::new("candidates", &["case", "q", "candidate", "lambda2", "winner"]);
    for (i, cand) in c.candidates.iter().enumerate() {
        table.push(vec![
            c.case.to_string(),
            cand.params.map_or(0, |p| p.q).to_string(),
            cand.label.clone(),
            num(cand.lambda2),
            c.winners.contains(&i).to_string(),
        ]);
    }
    report.tables.push(table);
    Ok(report)
}

pub fn candidates_cmd(n: usize, d: usize) -> Outcome {
    check_odd(d)?;
    let mut report = Report::default();
    report.field("n", n);
    report.field("D", d);
    let mut table = Table::new("candidates", &["side", "q", "c", "t", "params", "shape"]);
    match candidate_profiles(n, d)? {
        Candidates::Path { r } => {
            report.field("r", r);
            report.field("M", 0);
            table.push(vec![
                "path".into(),
                "0".into(),
                "0".into(),
                "0".into(),
                "-".into(),
                format!("path:{d}"),
            ]);
        }
        Candidates::Pair(p) => {
            report.field("r", p.r);
            report.field("M", p.m);
            report.field("s", p.s);
            report.field("q_minus", p.q_minus);
            report.field("q_plus", p.q_plus);
            for (side, a) in [("minus", p.as_minus), ("plus", p.as_plus)] {
                table.push(vec![
                    side.into(),
                    a.q.to_string(),
                    a.c.to_string(),
                    a.t.to_string(),
                    a.to_string(),
                    a.profile().to_string(),
                ]);
            }
        }
    }
    report.tables.push(table);
    Ok(report)
}

pub fn sweep(r: usize, m_max: usize) -> Outcome {
    if r == 0 || m_max == 0 {
        return Err(Failure::Domain("sweep needs --r >= 1 and --M-max >= 1".into()));
    }
    let mut report = Report::default();
    report.field("r", r);
    report.field("M_max", m_max);
    let mut table = Table::new("sigma", &["r", "M", "q", "sigma", "peak", "unimodal"]);
    let mut all = true;
    for m in 1..=m_max {
        let u = verify_unimodality(r, m)?;
        all &= u.pass;
        for &(q, v) in &u.table.rows {
            table.push(vec![
                r.to_string(),
                m.to_string(),
                q.to_string(),
                num(v),
                (q == u.peak).to_string(),
                u.pass.to_string(),
            ]);
        }
    }
    report.field("all_unimodal", all);
    report.tables.push(table);
    Ok(report)
}

pub fn reduce(t: &Tree) -> Outcome {
    let ascent = greedy_ascent(t)?;
    let mut report = Report::default();
    report.field("input", shape_label(t));
    report.field("result", ascent.profile.to_string());
    report.field("steps", ascent.steps.len() - 1);
    report.field("tree", ascent.result.to_text());
    let mut table = Table::new("trace", &["step", "action", "shape", "lambda2"]);
    for (i, s) in ascent.steps.iter().enumerate() {
        table.push(vec![i.to_string(), s.action.into(), s.shape.clone(), num(s.lambda2)]);
    }
    report.tables.push(table);
    Ok(report)
}

/// The report and whether any order ended in a mismatch.
pub fn verify(n: usize, d: usize, all_orders: bool, jobs: usize, timing: bool) -> Result<(Report, bool), Failure> {
    check_odd(d)?;
    let orders = if all_orders { d + 1..=n } else { n..=n };
    let mut columns = vec!["n", "D", "trees", "case", "verdict", "lambda2", "brute_force", "classifier"];
    if timing {
        columns.push("wall_time");
    }
    let mut table = Table::new("runs", &columns);
    let mut counts = [0usize; 3];
    for order in orders {
        let rep = verify_classification(order, d, jobs)?;
        counts[rep.verdict as usize] += 1;
        let brute: Vec<String> = rep.argmax_trees.iter().map(shape_label).collect();
        let mut row = vec![
            order.to_string(),
            d.to_string(),
            rep.trees_enumerated.to_string(),
            rep.case.clone(),
            rep.verdict.to_string(),
            num(rep.argmax_lambda2),
            brute.join(";"),
            rep.classifier_labels.join(";"),
        ];
        if timing {
            row.push(format!("{:.3}", rep.wall_time));
        }
        table.push(row);
    }
    let mut report = Report::default();
    report.field("D", d);
    report.field("orders", table.rows.len());
    report.field("match", counts[Verdict::Match as usize]);
    report.field("mismatch", counts[Verdict::Mismatch as usize]);
    report.field("tie_unresolved", counts[Verdict::TieUnresolved as usize]);
    if !all_orders {
        let row = &table.rows[0];
        report.field("verdict", &row[4]);
        report.field("trees", &row[2]);
    }
    let mismatch = counts[Verdict::Mismatch as usize] > 0;
    report.tables.push(table);
    Ok((report, mismatch))
}
