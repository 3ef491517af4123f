use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use crate::hcalc::{boundary_h, check_ball, check_sphere, width, width_formula, HVector};
use crate::realizer::realize;

use super::ball::{certify_ball, Certificate};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Certified,
    Inadmissible,
    /// Admissible but realization or certification failed. Carries the
    /// error or report and, when one was produced, the trace.
    Failed(String),
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub h: HVector,
    pub verdict: Verdict,
    pub failing: Vec<u8>,
    pub facets: usize,
    pub elements: usize,
    pub wall: Duration,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub d_max: usize,
    pub facet_max: i64,
    /// Rows sorted by h.
    pub rows: Vec<SweepRow>,
    /// Condition number to the number of vectors failing it.
    pub condition_counts: BTreeMap<u8, usize>,
    /// Condition number to the number of vectors failing only it.
    pub solo_counts: BTreeMap<u8, usize>,
    /// Even-sum vectors on which the two width computations disagree.
    pub width_disagreements: Vec<HVector>,
    /// Admissible ball vectors whose boundary fails the sphere conditions.
    pub boundary_counterexamples: Vec<HVector>,
}

impl SweepReport {
    pub fn admissible(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| r.verdict != Verdict::Inadmissible)
            .count()
    }

    pub fn certified(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| r.verdict == Verdict::Certified)
            .count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &SweepRow> {
        self.rows
            .iter()
            .filter(|r| matches!(r.verdict, Verdict::Failed(_)))
    }

    /// Every admissible vector certified and no internal disagreement.
    pub fn all_certified(&self) -> bool {
        self.failures().next().is_none()
            && self.width_disagreements.is_empty()
            && self.boundary_counterexamples.is_empty()
    }

    pub fn to_tsv(&self) -> String {
        self.to_tsv_with(true)
    }

    /// The table, optionally without wall times (which vary between runs).
    pub fn to_tsv_with(&self, timing: bool) -> String {
        let mut out = String::from("h\tverdict\tfailing\tfacets\telements\twall_ms\n");
        for r in &self.rows {
            let verdict = match r.verdict {
                Verdict::Certified => "certified",
                Verdict::Inadmissible => "inadmissible",
                Verdict::Failed(_) => "FAILED",
            };
            let failing = if r.failing.is_empty() {
                "-".to_string()
            } else {
                r.failing
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            let wall = if timing {
                format!("{:.3}", r.wall.as_secs_f64() * 1000.0)
            } else {
                "-".to_string()
            };
            let _ = writeln!(
                out,
                "{}\t{verdict}\t{failing}\t{}\t{}\t{wall}",
                r.h, r.facets, r.elements
            );
        }
        let _ = writeln!(
            out,
            "# d <= {}, sum(h) <= {}: {} vectors, {} admissible, {} certified",
            self.d_max,
            self.facet_max,
            self.rows.len(),
            self.admissible(),
            self.certified()
        );
        for c in 1..=7u8 {
            let _ = writeln!(
                out,
                "# condition ({c}): fails {} vectors, {} of them alone",
                self.condition_counts.get(&c).copied().unwrap_or(0),
                self.solo_counts.get(&c).copied().unwrap_or(0)
            );
        }
        let _ = writeln!(
            out,
            "# width disagreements: {}",
            self.width_disagreements.len()
        );
        let _ = writeln!(
            out,
            "# admissible balls with non-sphere boundary: {}",
            self.boundary_counterexamples.len()
        );
        for r in self.failures() {
            if let Verdict::Failed(detail) = &r.verdict {
                let _ = writeln!(out, "# FAILED {}", r.h);
                for line in detail.lines() {
                    let _ = writeln!(out, "#   {line}");
                }
            }
        }
        out
    }
}

/// Every `h` with `h_0 = 1`, `h_d = 0`, nonnegative entries and
/// `sum(h) <= facet_max`, for `1 <= d <= d_max`, in lexicographic order.
pub fn enumerate_vectors(d_max: usize, facet_max: i64) -> Vec<HVector> {
    fn fill(prefix: &mut Vec<i64>, d: usize, budget: i64, out: &mut Vec<HVector>) {
        if prefix.len() == d {
            let mut v = prefix.clone();
            v.push(0);
            out.push(HVector::new(v).expect("nonempty"));
            return;
        }
        for x in 0..=budget {
            prefix.push(x);
            fill(prefix, d, budget - x, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if facet_max < 1 {
        return out;
    }
    for d in 1..=d_max {
        fill(&mut vec![1], d, facet_max - 1, &mut out);
    }
    out.sort_by(|a, b| a.entries().cmp(b.entries()));
    out
}

/// Runs the checker on every small vector and realizes and certifies every
/// admissible one.
pub fn cross_check_small(d_max: usize, facet_max: i64) -> SweepReport {
    let mut report = SweepReport {
        d_max,
        facet_max,
        rows: Vec::new(),
        condition_counts: BTreeMap::new(),
        solo_counts: BTreeMap::new(),
        width_disagreements: Vec::new(),
        boundary_counterexamples: Vec::new(),
    };
    for h in enumerate_vectors(d_max, facet_max) {
        let start = Instant::now();
        let conditions = check_ball(&h);
        let failing = conditions.failed_conditions();
        for &c in &failing {
            *report.condition_counts.entry(c).or_default() += 1;
        }
        if let [only] = failing.as_slice() {
            *report.solo_counts.entry(*only).or_default() += 1;
        }
        for v in [h.clone(), h.bumped(0, -1)] {
            if v.sum() % 2 == 0 && width(&v).ok() != width_formula(&v).ok() {
                report.width_disagreements.push(v);
            }
        }

        let (verdict, facets, elements) = if conditions.is_admissible() {
            let dh = HVector::try_from_wide(boundary_h(&h)).expect("boundary of a small vector");
            if !check_sphere(&dh).is_admissible() {
                report.boundary_counterexamples.push(h.clone());
            }
            certify(&h)
        } else {
            (Verdict::Inadmissible, 0, 0)
        };
        report.rows.push(SweepRow {
            h,
            verdict,
            failing,
            facets,
            elements,
            wall: start.elapsed(),
        });
    }
    report
}

fn certify(h: &HVector) -> (Verdict, usize, usize) {
    let r = match realize(h) {
        Ok(r) => r,
        Err(e) => return (Verdict::Failed(format!("realize: {e}")), 0, 0),
    };
    let (facets, elements) = (r.poset.facet_count(), r.poset.len());
    let cert = Certificate {
        poset: r.poset,
        trace: r.trace,
        h: h.clone(),
    };
    let report = certify_ball(&cert);
    if report.passed() {
        (Verdict::Certified, facets, elements)
    } else {
        let detail = format!("{report}\n{}", cert.trace.to_text());
        (Verdict::Failed(detail), facets, elements)
    }
}
