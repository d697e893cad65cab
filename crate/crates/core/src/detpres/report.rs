//! The two-level decision procedure and its report.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::algebra::{Polynomial, Rational, TermOrder};
use crate::error::{Error, Result};
use crate::groebner::{ideal_equal, ring_map_kernel, Budget, Ideal};
use crate::varieties::{EmbeddedVariety, VarietyKind, VarietySpec};

use super::omega::{build_omega, minors, Factorization, MultiplicationMatrix};
use super::quadratic::{accumulate_two_minors, quadratic_part, QuadraticPart, SpanAccumulator};
use super::witness::{one_generic_witness_search, WitnessBudget, WitnessOutcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    DetPresented,
    NotByThisSplit,
    GeneratedByMultiple,
    NotDetermined,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::DetPresented => "DET_PRESENTED",
            Verdict::NotByThisSplit => "NOT_BY_THIS_SPLIT",
            Verdict::GeneratedByMultiple => "GENERATED_BY_MULTIPLE",
            Verdict::NotDetermined => "NOT_DETERMINED",
        }
    }

    pub fn is_positive(self) -> bool {
        matches!(self, Verdict::DetPresented | Verdict::GeneratedByMultiple)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct CheckOptions {
    /// 1: linear algebra in degree 2. 2: additionally a Groebner basis
    /// certificate.
    pub level: u8,
    pub budget: Budget,
    /// `None` skips the 1-genericity diagnostic.
    pub witness: Option<WitnessBudget>,
    pub record_timings: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            level: 1,
            budget: Budget::default(),
            witness: Some(WitnessBudget::default()),
            record_timings: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VarietySummary {
    #[serde(flatten)]
    pub spec: VarietySpec,
    pub sections: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitSummary {
    pub e: Vec<i64>,
    pub e_prime: Vec<i64>,
    pub minor_count: usize,
    pub minor_span_dim: usize,
    pub one_generic: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaSummary {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessSummary {
    pub split: usize,
    pub a: Vec<String>,
    pub b: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateStatus {
    Complete,
    BudgetExceeded,
}

/// Summary of the Groebner basis computations of a Level-2 run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub status: CertificateStatus,
    pub ideal_equal: Option<bool>,
    /// Size of the reduced grevlex basis of `I_X`.
    pub ix_basis_size: Option<usize>,
    /// `dim (I_X)₂` read off the leading monomials of that basis.
    pub ix_quadrics: Option<usize>,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationReport {
    pub variety: VarietySummary,
    pub splits: Vec<SplitSummary>,
    pub omega: Vec<OmegaSummary>,
    pub minor_count: usize,
    #[serde(rename = "dim_I2")]
    pub dim_i2: usize,
    pub minor_span_dim: usize,
    pub sym2_dim: usize,
    pub gamma_l2_dim: usize,
    pub mu2_surjective: bool,
    pub verdict: Verdict,
    pub level: u8,
    pub assumes_quadratic_generation: bool,
    pub one_generic_witness: Option<WitnessSummary>,
    pub certificate: Option<Certificate>,
    pub notes: Vec<String>,
    pub timings_ms: BTreeMap<String, u64>,
}

/// `I_X`: the kernel of `k[y] → Cox / relations`, `y_j ↦ section_j`.
pub fn homogeneous_ideal(v: &EmbeddedVariety, budget: &Budget) -> Result<Ideal<Rational>> {
    ring_map_kernel(
        v.ambient_ring(),
        v.parameterization(),
        v.presentation().relations(),
        budget,
    )
}

/// All `u` with `0 <= u <= m`, `u ∉ {0, m}`, lex ascending.
pub fn nontrivial_classes(m: &[i64]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if m.iter().any(|&x| x < 0) {
        return out;
    }
    let mut u = vec![0i64; m.len()];
    loop {
        if u.iter().any(|&x| x != 0) && u.as_slice() != m {
            out.push(u.clone());
        }
        let mut k = m.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if u[k] < m[k] {
                u[k] += 1;
                break;
            }
            u[k] = 0;
        }
    }
}

/// The nontrivial factorizations of `L` up to swapping the factors, for
/// products of projective spaces and polytope dilations.
pub fn enumerate_splits(v: &EmbeddedVariety) -> Result<Vec<Factorization>> {
    if matches!(v.kind(), VarietyKind::Presented) {
        return Err(Error::SplitsRequired);
    }
    let m = v.bundle_degree();
    let mut out = Vec::new();
    for u in nontrivial_classes(m) {
        let f = Factorization::complement(&u, m)?;
        if f.e <= f.e_prime && f.validate(v).is_ok() {
            out.push(f);
        }
    }
    Ok(out)
}

/// Whether at least `l - 2` entries of `m` are at least 2.
pub fn theorem_hypothesis(m: &[i64]) -> bool {
    let big = m.iter().filter(|&&x| x >= 2).count();
    big + 2 >= m.len()
}

/// The split `u = e_1 + ... + e_{l-1}` after ordering the factors so the
/// entries of `m` decrease. For `l = 1` it is `u = 1`. `None` when this `u`
/// is trivial.
pub fn theorem_split(m: &[i64]) -> Option<Factorization> {
    let l = m.len();
    let u = if l == 1 {
        vec![1]
    } else {
        let mut idx: Vec<usize> = (0..l).collect();
        idx.sort_by_key(|&i| std::cmp::Reverse(m[i]));
        let mut u = vec![0; l];
        for &i in &idx[..l - 1] {
            u[i] = 1;
        }
        u
    };
    let f = Factorization::complement(&u, m).ok()?;
    if f.e_prime.iter().all(|&x| x == 0) || f.e_prime.iter().any(|&x| x < 0) {
        return None;
    }
    Some(f)
}

/// One evaluated split: its matrix and the span of its 2-minors.
pub(crate) struct SplitEvaluation {
    pub omega: MultiplicationMatrix,
    pub span: SpanAccumulator,
    pub minor_count: usize,
    pub span_dim: usize,
}

pub(crate) fn evaluate_split(v: &EmbeddedVariety, q: &QuadraticPart, f: &Factorization) -> Result<SplitEvaluation> {
    let omega = build_omega(v, f)?;
    let mut span = SpanAccumulator::new(q.sym_len());
    let minor_count = accumulate_two_minors(&omega, q, &mut span)?;
    let span_dim = span.rank();
    Ok(SplitEvaluation {
        omega,
        span,
        minor_count,
        span_dim,
    })
}

pub(crate) fn level_one_verdict(surjective: bool, span: usize, dim_i2: usize, nsplits: usize) -> Verdict {
    if !surjective {
        Verdict::NotDetermined
    } else if nsplits > 0 && span == dim_i2 {
        if nsplits == 1 {
            Verdict::DetPresented
        } else {
            Verdict::GeneratedByMultiple
        }
    } else {
        Verdict::NotByThisSplit
    }
}

fn count_quadrics(ix: &Ideal<Rational>, budget: &Budget) -> Result<(usize, usize)> {
    let gb = crate::groebner::buchberger(ix, &TermOrder::GrevLex, budget)?;
    let n = ix.ring().nvars();
    let leads = gb.leading_monomials();
    let mut count = 0;
    for a in 0..n {
        for b in a..n {
            let m = crate::algebra::Monomial::var(n, a).mul(&crate::algebra::Monomial::var(n, b));
            if leads.iter().any(|l| l.divides(&m)) {
                count += 1;
            }
        }
    }
    Ok((gb.basis().len(), count))
}

fn certify(
    v: &EmbeddedVariety,
    omegas: &[MultiplicationMatrix],
    budget: &Budget,
) -> Result<(bool, usize, usize)> {
    let ix = homogeneous_ideal(v, budget)?;
    let (size, quadrics) = count_quadrics(&ix, budget)?;
    let mut gens: Vec<Polynomial<Rational>> = Vec::new();
    for m in omegas {
        gens.extend(minors(m, 2)?);
    }
    let minor_ideal = Ideal::new(v.ambient_ring(), gens)?;
    let equal = ideal_equal(&minor_ideal, &ix, &TermOrder::GrevLex, budget)?;
    Ok((equal, size, quadrics))
}

/// Builds `Ω` for every split, pools their 2-minors and compares their span
/// with `(I_X)₂`. At level 2 the verdict is certified by comparing the
/// ideal of the minors with `I_X`.
pub fn check_presentation(
    v: &EmbeddedVariety,
    splits: &[Factorization],
    options: &CheckOptions,
) -> Result<PresentationReport> {
    if !(1..=2).contains(&options.level) {
        return Err(Error::InvalidInput(format!("level must be 1 or 2, got {}", options.level)));
    }
    let mut timings = BTreeMap::new();
    let mut clock = Instant::now();
    let mut lap = |name: &str, timings: &mut BTreeMap<String, u64>| {
        if options.record_timings {
            timings.insert(name.to_string(), clock.elapsed().as_millis() as u64);
        }
        clock = Instant::now();
    };

    for f in splits {
        f.validate(v)?;
    }
    let q = quadratic_part(v)?;
    lap("quadratic_part", &mut timings);

    let mut notes = Vec::new();
    if splits.is_empty() {
        notes.push("no nontrivial factorization".to_string());
    }
    let mut pooled = SpanAccumulator::new(q.sym_len());
    let mut split_summaries = Vec::new();
    let mut omegas = Vec::new();
    let mut minor_count = 0;
    let mut witness = None;
    for (k, f) in splits.iter().enumerate() {
        let eval = evaluate_split(v, &q, f)?;
        pooled.extend(&eval.span);
        minor_count += eval.minor_count;
        let outcome = options
            .witness
            .as_ref()
            .map(|b| one_generic_witness_search(&eval.omega, b));
        if let Some(WitnessOutcome::Witness { a, b }) = &outcome {
            if witness.is_none() {
                witness = Some(WitnessSummary {
                    split: k,
                    a: a.clone(),
                    b: b.clone(),
                });
                notes.push(format!("matrix {k} is not 1-generic"));
            }
        }
        split_summaries.push(SplitSummary {
            e: f.e.clone(),
            e_prime: f.e_prime.clone(),
            minor_count: eval.minor_count,
            minor_span_dim: eval.span_dim,
            one_generic: outcome.map_or("skipped", |o| o.label()).to_string(),
        });
        omegas.push(eval.omega);
    }
    let span = pooled.rank();
    lap("minors", &mut timings);

    let dim_i2 = q.dim_i2();
    let mut verdict = level_one_verdict(q.mu2_surjective(), span, dim_i2, splits.len());
    let mut level = 1;
    let mut assumes_quadratic_generation = true;
    let mut certificate = None;
    if !q.mu2_surjective() {
        notes.push("multiplication map Sym2 -> Gamma(L^2) is not surjective".to_string());
    }
    if options.level == 2 {
        match certify(v, &omegas, &options.budget) {
            Ok((equal, size, quadrics)) => {
                level = 2;
                assumes_quadratic_generation = false;
                verdict = match (equal, splits.len()) {
                    (true, 1) => Verdict::DetPresented,
                    (true, n) if n > 1 => Verdict::GeneratedByMultiple,
                    _ => Verdict::NotByThisSplit,
                };
                if quadrics != dim_i2 {
                    return Err(Error::InvalidInput(format!(
                        "degree-2 part of I_X has dimension {quadrics}, linear algebra gives {dim_i2}"
                    )));
                }
                certificate = Some(Certificate {
                    status: CertificateStatus::Complete,
                    ideal_equal: Some(equal),
                    ix_basis_size: Some(size),
                    ix_quadrics: Some(quadrics),
                    detail: None,
                });
            }
            Err(e @ Error::ResourceExceeded { .. }) => {
                notes.push("level 2 unavailable: Groebner basis budget exceeded".to_string());
                certificate = Some(Certificate {
                    status: CertificateStatus::BudgetExceeded,
                    ideal_equal: None,
                    ix_basis_size: None,
                    ix_quadrics: None,
                    detail: Some(e.to_string()),
                });
            }
            Err(e) => return Err(e),
        }
        lap("certificate", &mut timings);
    }

    Ok(PresentationReport {
        variety: VarietySummary {
            spec: v.spec().clone(),
            sections: v.gamma().len(),
        },
        splits: split_summaries,
        omega: omegas
            .iter()
            .map(|m| OmegaSummary {
                rows: m.rows(),
                cols: m.cols(),
                entries: m.entry_strings(),
            })
            .collect(),
        minor_count,
        dim_i2,
        minor_span_dim: span,
        sym2_dim: q.sym_len(),
        gamma_l2_dim: q.gamma_l2_dim(),
        mu2_surjective: q.mu2_surjective(),
        verdict,
        level,
        assumes_quadratic_generation,
        one_generic_witness: witness,
        certificate,
        notes,
        timings_ms: timings,
    })
}

fn join<T: fmt::Display>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// Matrices with more entries than this are left out of text output.
const TEXT_MATRIX_LIMIT: usize = 144;

impl PresentationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let spec = &self.variety.spec;
        let kind = serde_json::to_value(spec.kind).expect("kind serializes");
        let _ = write!(out, "variety: {}", kind.as_str().unwrap_or("?"));
        if let Some(name) = &spec.name {
            let _ = write!(out, " ({name})");
        }
        out.push('\n');
        if let (Some(d), Some(m)) = (&spec.dims, &spec.multidegree) {
            let _ = writeln!(out, "  dims {}  multidegree {}", join(d), join(m));
        }
        if let Some(d) = spec.dilation {
            let _ = writeln!(out, "  dilation {d}");
        }
        if let Some(d) = &spec.bundle_degree {
            let _ = writeln!(out, "  bundle degree {}", join(d));
        }
        let _ = writeln!(out, "sections: {} (P^{})", self.variety.sections, self.variety.sections - 1);
        for (k, (s, m)) in self.splits.iter().zip(&self.omega).enumerate() {
            let _ = writeln!(
                out,
                "split {k}: E = ({}) E' = ({})  omega {}x{}  minors {}  span {}  1-generic: {}",
                join(&s.e),
                join(&s.e_prime),
                m.rows,
                m.cols,
                s.minor_count,
                s.minor_span_dim,
                s.one_generic
            );
            if m.rows * m.cols <= TEXT_MATRIX_LIMIT {
                for row in &m.entries {
                    let _ = writeln!(out, "  [{}]", row.join(", "));
                }
            }
        }
        let _ = writeln!(out, "sym2 dim: {}", self.sym2_dim);
        let _ = writeln!(out, "gamma(L^2) dim: {}", self.gamma_l2_dim);
        let _ = writeln!(out, "mu2 surjective: {}", self.mu2_surjective);
        let _ = writeln!(out, "dim I2: {}", self.dim_i2);
        let _ = writeln!(out, "minor count: {}", self.minor_count);
        let _ = writeln!(out, "minor span dim: {}", self.minor_span_dim);
        let _ = writeln!(out, "verdict: {}", self.verdict);
        let _ = writeln!(out, "level: {}", self.level);
        let _ = writeln!(out, "assumes quadratic generation: {}", self.assumes_quadratic_generation);
        if let Some(w) = &self.one_generic_witness {
            let _ = writeln!(out, "1-generic witness (split {}): a = ({}) b = ({})", w.split, w.a.join(","), w.b.join(","));
        }
        if let Some(c) = &self.certificate {
            let status = serde_json::to_value(c.status).expect("status serializes");
            let _ = write!(out, "certificate: {}", status.as_str().unwrap_or("?"));
            if let Some(eq) = c.ideal_equal {
                let _ = write!(out, "  ideal_equal {eq}");
            }
            if let (Some(n), Some(qd)) = (c.ix_basis_size, c.ix_quadrics) {
                let _ = write!(out, "  I_X basis {n}  quadrics {qd}");
            }
            out.push('\n');
            if let Some(d) = &c.detail {
                let _ = writeln!(out, "  {d}");
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        for (k, ms) in &self.timings_ms {
            let _ = writeln!(out, "time {k}: {ms} ms");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classes_and_splits() {
        assert_eq!(nontrivial_classes(&[2, 1, 1]).len(), 10);
        assert!(nontrivial_classes(&[1]).is_empty());
        let v = EmbeddedVariety::segre_veronese(&[1, 1, 1], &[2, 1, 1]).unwrap();
        assert_eq!(enumerate_splits(&v).unwrap().len(), 5);
        let v = EmbeddedVariety::segre_veronese(&[1, 1], &[1, 1]).unwrap();
        assert_eq!(enumerate_splits(&v).unwrap(), vec![Factorization::new(vec![0, 1], vec![1, 0])]);
        let v = EmbeddedVariety::segre_veronese(&[3], &[1]).unwrap();
        assert!(enumerate_splits(&v).unwrap().is_empty());
    }

    #[test]
    fn theorem_splits() {
        assert_eq!(theorem_split(&[2, 1, 1]).unwrap().e, vec![1, 1, 0]);
        assert_eq!(theorem_split(&[1, 1, 3]).unwrap().e, vec![1, 0, 1]);
        assert_eq!(theorem_split(&[1, 1]).unwrap().e, vec![1, 0]);
        assert_eq!(theorem_split(&[3]).unwrap().e, vec![1]);
        assert!(theorem_split(&[1]).is_none());
        assert!(theorem_hypothesis(&[2, 1, 1]));
        assert!(!theorem_hypothesis(&[1, 1, 1]));
        assert!(theorem_hypothesis(&[1, 1]));
    }

    #[test]
    fn conic_level_two() {
        let v = EmbeddedVariety::segre_veronese(&[1], &[2]).unwrap();
        let options = CheckOptions {
            level: 2,
            ..CheckOptions::default()
        };
        let r = check_presentation(&v, &[Factorization::new(vec![1], vec![1])], &options).unwrap();
        assert_eq!(r.verdict, Verdict::DetPresented);
        assert_eq!((r.minor_count, r.dim_i2, r.minor_span_dim), (1, 1, 1));
        assert!(!r.assumes_quadratic_generation);
        assert_eq!(r.certificate.unwrap().ideal_equal, Some(true));
        assert_eq!(r.splits[0].one_generic, "proved_none");
    }

    #[test]
    fn budget_exhaustion_falls_back_to_level_one() {
        let v = EmbeddedVariety::segre_veronese(&[1, 1], &[1, 1]).unwrap();
        let options = CheckOptions {
            level: 2,
            budget: Budget {
                max_pairs: 0,
                max_terms: 10,
                time_limit: None,
            },
            ..CheckOptions::default()
        };
        let r = check_presentation(&v, &enumerate_splits(&v).unwrap(), &options).unwrap();
        assert_eq!(r.level, 1);
        assert_eq!(r.verdict, Verdict::DetPresented);
        assert!(r.assumes_quadratic_generation);
        assert_eq!(r.certificate.unwrap().status, CertificateStatus::BudgetExceeded);
    }

    #[test]
    fn report_json_has_schema_fields() {
        let v = EmbeddedVariety::segre_veronese(&[1], &[2]).unwrap();
        let r = check_presentation(&v, &[Factorization::new(vec![1], vec![1])], &CheckOptions::default()).unwrap();
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        for key in [
            "variety",
            "splits",
            "omega",
            "minor_count",
            "dim_I2",
            "minor_span_dim",
            "mu2_surjective",
            "verdict",
            "level",
            "assumes_quadratic_generation",
            "one_generic_witness",
            "timings_ms",
        ] {
            assert!(json.get(key).is_some(), "missing {key}");
        }
        assert_eq!(json["verdict"], "DET_PRESENTED");
        assert_eq!(json["omega"][0]["entries"][1][1], "y2");
        assert!(r.to_text().contains("verdict: DET_PRESENTED"));
    }
}
