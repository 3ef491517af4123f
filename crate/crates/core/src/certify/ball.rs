use std::fmt;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::hcalc::{boundary_h, check_ball, check_sphere, HVector};
use crate::poset::{ParseError, SimplicialPoset};
use crate::realizer::{ConstructionTrace, TraceError};

use super::replay::replay;

/// A poset, the trace that claims to build it, and its claimed h-vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub poset: SimplicialPoset,
    pub trace: ConstructionTrace,
    pub h: HVector,
}

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Poset { path: PathBuf, source: ParseError },
    #[error("{path}: {source}")]
    Trace { path: PathBuf, source: TraceError },
}

impl Certificate {
    /// Reads a poset file and a trace file.
    pub fn load(
        poset_path: &Path,
        trace_path: &Path,
        h: HVector,
    ) -> Result<Certificate, CertificateError> {
        let read = |path: &Path| {
            std::fs::read_to_string(path).map_err(|source| CertificateError::Io {
                path: path.to_path_buf(),
                source,
            })
        };
        let poset = SimplicialPoset::from_text(&read(poset_path)?).map_err(|source| {
            CertificateError::Poset {
                path: poset_path.to_path_buf(),
                source,
            }
        })?;
        let trace = ConstructionTrace::from_text(&read(trace_path)?).map_err(|source| {
            CertificateError::Trace {
                path: trace_path.to_path_buf(),
                source,
            }
        })?;
        Ok(Certificate { poset, trace, h })
    }
}

/// One named check with an optional failure witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: char,
    pub title: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifyReport {
    pub checks: Vec<Check>,
}

impl CertifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Names of the failing checks, in order.
    pub fn failed(&self) -> Vec<char> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name)
            .collect()
    }

    pub fn check(&self, name: char) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for CertifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            write!(f, "({}) {}: {verdict}", c.name, c.title)?;
            if let Some(w) = &c.witness {
                write!(f, " ({w})")?;
            }
            writeln!(f)?;
        }
        let overall = if self.passed() {
            "certified"
        } else {
            "not certified"
        };
        write!(f, "overall: {overall}")
    }
}

struct Builder(Vec<Check>);

impl Builder {
    fn push(&mut self, name: char, title: &'static str, result: Result<(), String>) {
        self.0.push(Check {
            name,
            title,
            passed: result.is_ok(),
            witness: result.err(),
        });
    }
}

/// Runs checks (a) through (h) on a certificate.
pub fn certify_ball(c: &Certificate) -> CertifyReport {
    let p = &c.poset;
    let mut out = Builder(Vec::with_capacity(8));

    out.push('a', "trace replays to the poset", replay_matches(c));

    let valid = p.validate().map_err(|e| e.to_string());
    out.push('b', "valid simplicial poset", valid.clone());

    let h = if p.d() == c.h.d() {
        let actual = p.h_vector();
        if actual == c.h {
            Ok(())
        } else {
            Err(format!("poset has h = ({actual}), claimed ({})", c.h))
        }
    } else {
        Err(format!(
            "poset has rank {}, claimed h has d = {}",
            p.d(),
            c.h.d()
        ))
    };
    out.push('c', "h-vector equals the claim", h);

    let pm = pseudomanifold(p);
    out.push('d', "pure pseudomanifold", pm.clone());

    let prereq = valid
        .as_ref()
        .map_err(|_| "depends on (b)".to_string())
        .and_then(|_| pm.as_ref().map_err(|_| "depends on (d)".to_string()))
        .map(|_| ());

    let boundary = prereq.clone().and_then(|_| {
        let b = p.boundary().map_err(|e| e.to_string())?;
        Ok(b.to_poset().0)
    });
    let boundary_h_check = boundary.clone().and_then(|view| {
        if view.facet_count() == 0 {
            return Err("boundary is empty".to_string());
        }
        if c.h.d() != p.d() {
            return Err("claimed h has the wrong dimension".to_string());
        }
        let actual = view.h_vector();
        let expected = boundary_h(&c.h);
        if actual.wide() == expected {
            Ok(())
        } else {
            Err(format!(
                "h(boundary) = ({actual}), boundary of claimed h = ({})",
                join(&expected)
            ))
        }
    });
    out.push(
        'e',
        "boundary nonempty with h = boundary of h",
        boundary_h_check,
    );

    let sphere = boundary.and_then(|view| {
        let report = check_sphere(&view.h_vector());
        if report.is_admissible() {
            Ok(())
        } else {
            Err(first_failure(&report))
        }
    });
    out.push('f', "boundary h passes the sphere conditions", sphere);

    let ball = check_ball(&c.h);
    out.push(
        'g',
        "claimed h passes the ball conditions",
        if ball.is_admissible() {
            Ok(())
        } else {
            Err(first_failure(&ball))
        },
    );

    let closure = prereq.and_then(|_| {
        let boundary = p.boundary().map_err(|e| e.to_string())?.to_poset().0;
        let sp = p.sp_closure().map_err(|e| e.to_string())?;
        let expected = p.facet_count() + boundary.facet_count();
        if sp.facet_count() != expected {
            return Err(format!(
                "SP has {} facets, expected {} + {}",
                sp.facet_count(),
                p.facet_count(),
                boundary.facet_count()
            ));
        }
        let report = check_sphere(&sp.h_vector());
        if report.is_admissible() {
            Ok(())
        } else {
            Err(format!(
                "h(SP) = ({}): {}",
                sp.h_vector(),
                first_failure(&report)
            ))
        }
    });
    out.push(
        'h',
        "SP closure facet identity and sphere conditions",
        closure,
    );

    CertifyReport { checks: out.0 }
}

fn replay_matches(c: &Certificate) -> Result<(), String> {
    let replayed = replay(&c.trace).map_err(|e| e.to_string())?;
    let (a, b) = (replayed.canonical(), c.poset.canonical());
    if a == b {
        return Ok(());
    }
    if a.d() != b.d() || a.len() != b.len() {
        return Err(format!(
            "replay gives {} elements of rank {}, poset has {} of rank {}",
            a.len(),
            a.d(),
            b.len(),
            b.d()
        ));
    }
    let id = (0..a.len())
        .find(|&i| a.elements()[i] != b.elements()[i])
        .unwrap_or(0);
    Err(format!("canonical element {id} differs"))
}

fn pseudomanifold(p: &SimplicialPoset) -> Result<(), String> {
    if let Some(&f) = p.facets().iter().find(|&&f| p.rank(f) != p.d()) {
        return Err(format!("maximal element {f} has rank {}", p.rank(f)));
    }
    if p.d() == 0 {
        return Ok(());
    }
    let up = p.up_covers();
    match p
        .rank_elements(p.d() - 1)
        .find(|&id| !(1..=2).contains(&up[id].len()))
    {
        Some(id) => Err(format!("element {id} is covered {} times", up[id].len())),
        None => Ok(()),
    }
}

fn first_failure(report: &crate::hcalc::ConditionReport) -> String {
    report
        .first_failure()
        .map(|f| format!("fails {f}"))
        .unwrap_or_default()
}

fn join(v: &[i128]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
