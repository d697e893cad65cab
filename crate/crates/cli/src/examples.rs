//! Golden suite for the worked examples.

use std::fs;
use std::path::Path;

use detpres::detpres::{check_presentation, CheckOptions, Factorization, PresentationReport, Verdict};
use detpres::varieties::{EmbeddedVariety, VarietySpec};

use crate::Failure;

pub const DEFAULT_GOLDEN_DIR: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/golden");

const HEXAGON: &str = include_str!("../data/hexagon.json");
const PLUCKER: &str = include_str!("../data/plucker.json");

struct Case {
    name: &'static str,
    run: fn() -> detpres::Result<PresentationReport>,
    /// Number of sections, `dim (I_X)_2` and verdict stated alongside the
    /// example.
    expected: (usize, usize, Verdict),
}

fn options(level: u8) -> CheckOptions {
    CheckOptions {
        level,
        ..CheckOptions::default()
    }
}

fn split(e: &[i64], e_prime: &[i64]) -> Factorization {
    Factorization::new(e.to_vec(), e_prime.to_vec())
}

fn plucker(degree: i64) -> detpres::Result<EmbeddedVariety> {
    let mut spec = VarietySpec::from_json(PLUCKER)?;
    if degree != 2 {
        spec.section_order = None;
    }
    spec.bundle_degree = Some(vec![degree]);
    spec.build()
}

const CASES: [Case; 5] = [
    Case {
        name: "pp1-cubed-211",
        run: || {
            let v = EmbeddedVariety::segre_veronese(&[1, 1, 1], &[2, 1, 1])?;
            check_presentation(&v, &[split(&[1, 1, 0], &[1, 0, 1])], &options(2))
        },
        expected: (12, 33, Verdict::DetPresented),
    },
    Case {
        name: "pp1-cubed-111",
        run: || {
            let v = EmbeddedVariety::segre_veronese(&[1, 1, 1], &[1, 1, 1])?;
            let splits = [
                split(&[1, 0, 0], &[0, 1, 1]),
                split(&[0, 1, 0], &[1, 0, 1]),
                split(&[0, 0, 1], &[1, 1, 0]),
            ];
            check_presentation(&v, &splits, &options(1))
        },
        expected: (8, 9, Verdict::GeneratedByMultiple),
    },
    Case {
        name: "del-pezzo",
        run: || {
            let v = VarietySpec::from_json(HEXAGON)?.build()?;
            check_presentation(&v, &[split(&[1], &[1])], &options(1))
        },
        expected: (19, 129, Verdict::DetPresented),
    },
    Case {
        name: "grassmannian-o1",
        run: || check_presentation(&plucker(1)?, &[], &options(2)),
        expected: (6, 1, Verdict::NotByThisSplit),
    },
    Case {
        name: "grassmannian-o2",
        run: || check_presentation(&plucker(2)?, &[split(&[1], &[1])], &options(1)),
        expected: (20, 105, Verdict::DetPresented),
    },
];

/// First differing line, 1-based, with both versions.
fn first_difference(expected: &str, actual: &str) -> String {
    let (mut e, mut a) = (expected.lines(), actual.lines());
    let mut line = 1;
    loop {
        match (e.next(), a.next()) {
            (Some(x), Some(y)) if x == y => line += 1,
            (None, None) => return "trailing whitespace differs".into(),
            (x, y) => {
                return format!(
                    "line {line}: golden `{}`, computed `{}`",
                    x.unwrap_or("<end of file>").trim(),
                    y.unwrap_or("<end of file>").trim()
                )
            }
        }
    }
}

pub fn run(only: &[String], golden_dir: &Path, bless: bool) -> Result<u8, Failure> {
    if let Some(unknown) = only.iter().find(|n| !CASES.iter().any(|c| c.name == n.as_str())) {
        let names: Vec<&str> = CASES.iter().map(|c| c.name).collect();
        return Err(crate::usage(format!("unknown example `{unknown}`; known: {}", names.join(", "))));
    }
    let mut failures = Vec::new();
    for case in CASES.iter().filter(|c| only.is_empty() || only.iter().any(|n| n == c.name)) {
        let report = (case.run)()?;
        let actual = report.to_json() + "\n";
        let path = golden_dir.join(format!("{}.json", case.name));
        let (sections, dim_i2, verdict) = case.expected;
        let mut problems = Vec::new();
        if (report.variety.sections, report.dim_i2, report.verdict) != (sections, dim_i2, verdict) {
            problems.push(format!(
                "expected {sections} sections, dim I2 {dim_i2}, {verdict}; computed {}, {}, {}",
                report.variety.sections, report.dim_i2, report.verdict
            ));
        }
        if bless {
            fs::write(&path, &actual).map_err(|e| crate::io_failure(&path, e))?;
        } else {
            match fs::read_to_string(&path) {
                Ok(golden) if golden == actual => {}
                Ok(golden) => problems.push(format!("{}: {}", path.display(), first_difference(&golden, &actual))),
                Err(e) => problems.push(format!("{}: {e}", path.display())),
            }
        }
        let status = match (problems.is_empty(), bless) {
            (true, true) => "BLESSED",
            (true, false) => "PASS",
            (false, _) => "FAIL",
        };
        println!("{:<18} {:<8} {} sections, dim I2 {}, {}", case.name, status, report.variety.sections, report.dim_i2, report.verdict);
        for p in &problems {
            println!("    {p}");
        }
        if !problems.is_empty() {
            failures.push(case.name);
        }
    }
    if failures.is_empty() {
        Ok(0)
    } else {
        eprintln!("mismatches: {}", failures.join(", "));
        Ok(1)
    }
}
