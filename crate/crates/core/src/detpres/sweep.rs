//! Exhaustive check of the product-of-projective-spaces criterion over a box
//! of dimensions and multidegrees.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::varieties::EmbeddedVariety;

use super::omega::Factorization;
use super::quadratic::{quadratic_part, SpanAccumulator};
use super::report::{
    check_presentation, enumerate_splits, evaluate_split, level_one_verdict, theorem_hypothesis, theorem_split,
    CertificateStatus, CheckOptions, Verdict,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepBounds {
    pub max_factors: usize,
    pub max_dim: usize,
    pub max_degree: i64,
}

impl Default for SweepBounds {
    fn default() -> Self {
        SweepBounds {
            max_factors: 3,
            max_dim: 2,
            max_degree: 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub dims: Vec<usize>,
    pub multidegree: Vec<i64>,
    pub hypothesis: bool,
    pub best_split: Option<Vec<i64>>,
    #[serde(rename = "dim_I2")]
    pub dim_i2: usize,
    pub span: usize,
    /// A verdict name, or `NO_FACTORIZATION` / `SKIPPED`.
    pub verdict: String,
    /// Spans of every single split, for cells outside the hypothesis.
    pub single_spans: Vec<usize>,
    pub certificate: Option<String>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub rows: Vec<SweepRow>,
    pub hypothesis_cells: usize,
    /// Cells meeting the hypothesis with no `DET_PRESENTED` split.
    pub counterexamples: Vec<(Vec<usize>, Vec<i64>)>,
    /// Cells `O(1,...,1)` with three factors where some single split
    /// succeeded, or the pooled coordinate splits did not.
    pub negative_case_failures: Vec<Vec<usize>>,
}

fn cartesian<T: Clone>(choices: &[T], len: usize) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |c| {
                    let mut p = prefix.clone();
                    p.push(c.clone());
                    p
                })
            })
            .collect();
    }
    out
}

/// The cells of the sweep in enumeration order: number of factors, then
/// dimensions, then multidegree, each lex ascending.
pub fn sweep_cells(bounds: &SweepBounds) -> Vec<(Vec<usize>, Vec<i64>)> {
    let dims: Vec<usize> = (1..=bounds.max_dim).collect();
    let degrees: Vec<i64> = (1..=bounds.max_degree).collect();
    let mut out = Vec::new();
    for l in 1..=bounds.max_factors {
        for d in cartesian(&dims, l) {
            for m in cartesian(&degrees, l) {
                out.push((d.clone(), m));
            }
        }
    }
    out
}

fn unit_vector(l: usize, i: usize) -> Vec<i64> {
    (0..l).map(|k| i64::from(k == i)).collect()
}

fn sweep_cell(dims: &[usize], m: &[i64], options: &CheckOptions) -> Result<SweepRow> {
    let v = EmbeddedVariety::segre_veronese(dims, m)?;
    let hypothesis = theorem_hypothesis(m);
    let mut row = SweepRow {
        dims: dims.to_vec(),
        multidegree: m.to_vec(),
        hypothesis,
        best_split: None,
        dim_i2: 0,
        span: 0,
        verdict: String::new(),
        single_spans: Vec::new(),
        certificate: None,
        note: None,
    };
    let splits = enumerate_splits(&v)?;
    if splits.is_empty() {
        row.verdict = "NO_FACTORIZATION".into();
        row.note = Some("no nontrivial factorization".into());
        return Ok(row);
    }
    let q = quadratic_part(&v)?;
    row.dim_i2 = q.dim_i2();
    let surjective = q.mu2_surjective();

    let mut chosen: Option<(Factorization, Verdict)> = None;
    if hypothesis {
        let mut order: Vec<Factorization> = theorem_split(m).into_iter().collect();
        order.extend(splits.iter().cloned());
        let mut best_span = 0;
        for f in order {
            let eval = evaluate_split(&v, &q, &f)?;
            let verdict = level_one_verdict(surjective, eval.span_dim, row.dim_i2, 1);
            best_span = best_span.max(eval.span_dim);
            if verdict == Verdict::DetPresented {
                row.span = eval.span_dim;
                chosen = Some((f, verdict));
                break;
            }
        }
        if chosen.is_none() {
            row.span = best_span;
            row.verdict = level_one_verdict(surjective, best_span, row.dim_i2, 1).as_str().into();
        }
    } else {
        let mut first_success = None;
        for f in &splits {
            let eval = evaluate_split(&v, &q, f)?;
            row.single_spans.push(eval.span_dim);
            if first_success.is_none() && level_one_verdict(surjective, eval.span_dim, row.dim_i2, 1) == Verdict::DetPresented {
                first_success = Some(f.clone());
            }
        }
        if let Some(f) = first_success {
            row.span = row.dim_i2;
            chosen = Some((f, Verdict::DetPresented));
        } else {
            let l = m.len();
            let mut pooled = SpanAccumulator::new(q.sym_len());
            let mut coordinate = Vec::new();
            for i in 0..l {
                let f = Factorization::complement(&unit_vector(l, i), m)?;
                if f.validate(&v).is_ok() {
                    pooled.extend(&evaluate_split(&v, &q, &f)?.span);
                    coordinate.push(f);
                }
            }
            row.span = pooled.rank();
            let verdict = level_one_verdict(surjective, row.span, row.dim_i2, coordinate.len());
            row.verdict = verdict.as_str().into();
            if verdict.is_positive() {
                row.best_split = None;
                row.note = Some(format!("pooled {} coordinate splits", coordinate.len()));
                if options.level == 2 {
                    certify_row(&v, &coordinate, options, &mut row)?;
                }
            }
            return Ok(row);
        }
    }

    if let Some((f, verdict)) = chosen {
        row.best_split = Some(f.e.clone());
        row.verdict = verdict.as_str().into();
        if options.level == 2 {
            certify_row(&v, &[f], options, &mut row)?;
        }
    }
    Ok(row)
}

fn certify_row(v: &EmbeddedVariety, splits: &[Factorization], options: &CheckOptions, row: &mut SweepRow) -> Result<()> {
    let opts = CheckOptions {
        witness: None,
        record_timings: false,
        ..options.clone()
    };
    let report = check_presentation(v, splits, &opts)?;
    match report.certificate.map(|c| c.status) {
        Some(CertificateStatus::Complete) => {
            row.certificate = Some("complete".into());
            row.verdict = report.verdict.as_str().into();
        }
        _ => row.certificate = Some("SKIPPED".into()),
    }
    Ok(())
}

/// Runs every cell; cells are independent and evaluated in parallel, with
/// rows reported in enumeration order.
pub fn sweep(bounds: &SweepBounds, options: &CheckOptions) -> Result<SweepSummary> {
    let cells = sweep_cells(bounds);
    let rows = cells
        .par_iter()
        .map(|(d, m)| match sweep_cell(d, m, options) {
            Err(Error::ResourceExceeded { reason, .. }) => Ok(SweepRow {
                dims: d.clone(),
                multidegree: m.clone(),
                hypothesis: theorem_hypothesis(m),
                best_split: None,
                dim_i2: 0,
                span: 0,
                verdict: "SKIPPED".into(),
                single_spans: Vec::new(),
                certificate: None,
                note: Some(reason),
            }),
            other => other,
        })
        .collect::<Result<Vec<_>>>()?;
    let mut summary = SweepSummary {
        rows: Vec::new(),
        hypothesis_cells: 0,
        counterexamples: Vec::new(),
        negative_case_failures: Vec::new(),
    };
    for row in &rows {
        let trivial = row.verdict == "NO_FACTORIZATION";
        if row.hypothesis && !trivial {
            summary.hypothesis_cells += 1;
            if row.verdict != Verdict::DetPresented.as_str() && row.verdict != "SKIPPED" {
                summary.counterexamples.push((row.dims.clone(), row.multidegree.clone()));
            }
        }
        let all_ones = row.multidegree.len() == 3 && row.multidegree.iter().all(|&x| x == 1);
        if all_ones && (row.verdict != Verdict::GeneratedByMultiple.as_str() || row.single_spans.contains(&row.dim_i2)) {
            summary.negative_case_failures.push(row.dims.clone());
        }
    }
    summary.rows = rows;
    Ok(summary)
}

impl SweepSummary {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("dims,multidegree,hypothesis,best_split,dim_I2,span,verdict\n");
        let j = |v: &[i64]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        for r in &self.rows {
            let dims: Vec<i64> = r.dims.iter().map(|&d| d as i64).collect();
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                j(&dims),
                j(&r.multidegree),
                r.hypothesis,
                r.best_split.as_deref().map_or("-".to_string(), j),
                r.dim_i2,
                r.span,
                r.verdict
            ));
        }
        out
    }
}
