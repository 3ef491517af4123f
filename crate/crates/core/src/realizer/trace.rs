//! Construction traces in SSA form:
//!
//! ```text
//! celltrace 1
//! t0 = boolean 4
//! t1 = boolean 4
//! t2 = glue t0 t1 [1:1,2:2,4:4] shelling 5,6
//! result t2
//! ```
//!
//! `glue` pairs are `(id in left, id in right)`. The optional `shelling`
//! suffix lists facets of the glued ideal (ids in the left poset) in a
//! shelling order.

use std::fmt::Write as _;

use thiserror::Error;

use crate::poset::{ElementId, GlueMap};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Boolean(usize),
    Delta {
        d: usize,
        k: usize,
    },
    Glue {
        left: usize,
        right: usize,
        map: GlueMap,
        shelling: Option<Vec<ElementId>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionTrace {
    steps: Vec<Step>,
    result: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("line {line}: expected `{expected}`")]
    Syntax { line: usize, expected: &'static str },
    #[error("unsupported trace version {0}")]
    UnknownVersion(String),
    #[error("line {line}: step is named t{found}, expected t{expected}")]
    StepNumber {
        line: usize,
        found: usize,
        expected: usize,
    },
    #[error("line {line}: t{step} is not defined yet")]
    Forward { line: usize, step: usize },
    #[error("trace has no result line")]
    NoResult,
    #[error("trace has no steps")]
    Empty,
}

impl ConstructionTrace {
    pub fn boolean(d: usize) -> Self {
        ConstructionTrace {
            steps: vec![Step::Boolean(d)],
            result: 0,
        }
    }

    pub fn delta(d: usize, k: usize) -> Self {
        ConstructionTrace {
            steps: vec![Step::Delta { d, k }],
            result: 0,
        }
    }

    /// Builds from raw steps; `result` must name one of them.
    pub fn from_steps(steps: Vec<Step>, result: usize) -> Self {
        ConstructionTrace { steps, result }
    }

    /// `self ∪ right` along `map`. The steps of `right` are renumbered to
    /// follow those of `self`.
    pub fn glue(
        mut self,
        right: ConstructionTrace,
        map: GlueMap,
        shelling: Option<Vec<ElementId>>,
    ) -> Self {
        let offset = self.steps.len();
        let left = self.result;
        self.steps
            .extend(right.steps.into_iter().map(|s| shift(s, offset)));
        self.steps.push(Step::Glue {
            left,
            right: right.result + offset,
            map,
            shelling,
        });
        self.result = self.steps.len() - 1;
        self
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn result(&self) -> usize {
        self.result
    }

    pub fn glue_count(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, Step::Glue { .. }))
            .count()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("celltrace 1\n");
        for (i, step) in self.steps.iter().enumerate() {
            let _ = match step {
                Step::Boolean(d) => writeln!(out, "t{i} = boolean {d}"),
                Step::Delta { d, k } => writeln!(out, "t{i} = delta {d} {k}"),
                Step::Glue {
                    left,
                    right,
                    map,
                    shelling,
                } => {
                    let pairs = map
                        .pairs()
                        .iter()
                        .map(|(a, b)| format!("{a}:{b}"))
                        .collect::<Vec<_>>()
                        .join(",");
                    let _ = write!(out, "t{i} = glue t{left} t{right} [{pairs}]");
                    if let Some(order) = shelling {
                        let ids = order
                            .iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(",");
                        let _ = write!(out, " shelling {ids}");
                    }
                    writeln!(out)
                }
            };
        }
        let _ = writeln!(out, "result t{}", self.result);
        out
    }

    pub fn from_text(text: &str) -> Result<Self, TraceError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line, header) = lines.next().ok_or(TraceError::Empty)?;
        match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["celltrace", "1"] => {}
            ["celltrace", v] => return Err(TraceError::UnknownVersion(v.to_string())),
            _ => {
                return Err(TraceError::Syntax {
                    line,
                    expected: "celltrace 1",
                })
            }
        }

        let mut steps = Vec::new();
        let mut result = None;
        for (line, text) in lines {
            if result.is_some() {
                return Err(TraceError::Syntax {
                    line,
                    expected: "end of file after `result`",
                });
            }
            let fields: Vec<&str> = text.split_whitespace().collect();
            if let ["result", t] = fields.as_slice() {
                let step = step_ref(t, line)?;
                if step >= steps.len() {
                    return Err(TraceError::Forward { line, step });
                }
                result = Some(step);
                continue;
            }
            let syntax = TraceError::Syntax {
                line,
                expected: "t<i> = boolean <d> | delta <d> <k> | glue t<a> t<b> [pairs]",
            };
            let (name, rest) = match fields.as_slice() {
                [name, "=", rest @ ..] => (*name, rest),
                _ => return Err(syntax),
            };
            let index = step_ref(name, line)?;
            if index != steps.len() {
                return Err(TraceError::StepNumber {
                    line,
                    found: index,
                    expected: steps.len(),
                });
            }
            let number = |s: &str| s.parse::<usize>().map_err(|_| syntax.clone());
            let defined = |t: &str| -> Result<usize, TraceError> {
                let step = step_ref(t, line)?;
                if step >= index {
                    return Err(TraceError::Forward { line, step });
                }
                Ok(step)
            };
            let step = match rest {
                ["boolean", d] => Step::Boolean(number(d)?),
                ["delta", d, k] => Step::Delta {
                    d: number(d)?,
                    k: number(k)?,
                },
                ["glue", a, b, pairs, tail @ ..] => {
                    let map = parse_pairs(pairs).ok_or_else(|| syntax.clone())?;
                    let shelling = match tail {
                        [] => None,
                        ["shelling", ids] => {
                            Some(ids.split(',').map(number).collect::<Result<Vec<_>, _>>()?)
                        }
                        _ => return Err(syntax),
                    };
                    Step::Glue {
                        left: defined(a)?,
                        right: defined(b)?,
                        map,
                        shelling,
                    }
                }
                _ => return Err(syntax),
            };
            steps.push(step);
        }
        if steps.is_empty() {
            return Err(TraceError::Empty);
        }
        let result = result.ok_or(TraceError::NoResult)?;
        Ok(ConstructionTrace { steps, result })
    }
}

fn shift(step: Step, offset: usize) -> Step {
    match step {
        Step::Glue {
            left,
            right,
            map,
            shelling,
        } => Step::Glue {
            left: left + offset,
            right: right + offset,
            map,
            shelling,
        },
        other => other,
    }
}

fn step_ref(s: &str, line: usize) -> Result<usize, TraceError> {
    s.strip_prefix('t')
        .and_then(|n| n.parse().ok())
        .ok_or(TraceError::Syntax {
            line,
            expected: "t<i>",
        })
}

fn parse_pairs(s: &str) -> Option<GlueMap> {
    let inner = s.strip_prefix('[')?.strip_suffix(']')?;
    if inner.is_empty() {
        return Some(GlueMap::new(Vec::new()));
    }
    let pairs = inner
        .split(',')
        .map(|p| {
            let (a, b) = p.split_once(':')?;
            Some((a.parse().ok()?, b.parse().ok()?))
        })
        .collect::<Option<Vec<_>>>()?;
    Some(GlueMap::new(pairs))
}
