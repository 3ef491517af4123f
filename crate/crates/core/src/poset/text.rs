//! Line-oriented poset files:
//!
//! ```text
//! cellposet 1
//! d <d>
//! n <element count>
//! e <id> <rank> <covered ids, comma-separated, or ->
//! ```

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use thiserror::Error;

use super::{Element, ElementId, SimplicialPoset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: expected `{expected}`")]
    Syntax { line: usize, expected: &'static str },
    #[error("unsupported format version {0}")]
    UnknownVersion(String),
    #[error("line {line}: duplicate element id {id}")]
    DuplicateId { line: usize, id: u64 },
    #[error("line {line}: unknown element id {id}")]
    UnknownId { line: usize, id: u64 },
    #[error("line {line}: element covers {id} more than once")]
    DuplicateCover { line: usize, id: u64 },
    #[error("line {line}: rank {rank} element covers element {id} of rank {cover_rank}")]
    RankReference {
        line: usize,
        rank: usize,
        id: u64,
        cover_rank: usize,
    },
    #[error("line {line}: rank {rank} outside [1, {d}]")]
    RankOutOfRange { line: usize, rank: usize, d: usize },
    #[error("header declares {declared} elements but {found} were given")]
    CountMismatch { declared: usize, found: usize },
}

const HEADER: &str = "cellposet";
const VERSION: &str = "1";

impl SimplicialPoset {
    /// Canonical text form; ids are the canonical positions.
    pub fn to_text(&self) -> String {
        let c = self.canonical();
        let mut out = String::new();
        let _ = writeln!(out, "{HEADER} {VERSION}");
        let _ = writeln!(out, "d {}", c.d());
        let _ = writeln!(out, "n {}", c.len());
        for (id, e) in c.elements().iter().enumerate() {
            let covers = if e.covers.is_empty() {
                "-".to_string()
            } else {
                e.covers
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            let _ = writeln!(out, "e {id} {} {covers}", e.rank);
        }
        out
    }

    /// Parses a poset file. Covers may reference ids defined later in the
    /// file; the element order of the result is the file order.
    pub fn from_text(text: &str) -> Result<Self, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
            .filter(|(_, l)| !l.trim().is_empty());

        let (line, header) = lines.next().ok_or(ParseError::Syntax {
            line: 1,
            expected: "cellposet 1",
        })?;
        match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            [HEADER, VERSION] => {}
            [HEADER, v] => return Err(ParseError::UnknownVersion(v.to_string())),
            _ => {
                return Err(ParseError::Syntax {
                    line,
                    expected: "cellposet 1",
                })
            }
        }
        let d = keyed_number(lines.next(), "d", "d <rank>")?;
        let n = keyed_number(lines.next(), "n", "n <element count>")?;

        struct Raw {
            line: usize,
            rank: usize,
            covers: Vec<u64>,
        }
        let mut raw = Vec::with_capacity(n);
        let mut index: HashMap<u64, ElementId> = HashMap::with_capacity(n);
        for (line, text) in lines {
            let syntax = ParseError::Syntax {
                line,
                expected: "e <id> <rank> <covers|->",
            };
            let fields: Vec<&str> = text.split_whitespace().collect();
            let [tag, id, rank, covers] = fields.as_slice() else {
                return Err(syntax);
            };
            if *tag != "e" {
                return Err(syntax);
            }
            let id: u64 = id.parse().map_err(|_| syntax.clone())?;
            let rank: usize = rank.parse().map_err(|_| syntax.clone())?;
            if rank == 0 || rank > d {
                return Err(ParseError::RankOutOfRange { line, rank, d });
            }
            let covers: Vec<u64> = if *covers == "-" {
                Vec::new()
            } else {
                covers
                    .split(',')
                    .map(|c| c.parse::<u64>().map_err(|_| syntax.clone()))
                    .collect::<Result<_, _>>()?
            };
            let mut seen = HashSet::new();
            if let Some(&dup) = covers.iter().find(|c| !seen.insert(**c)) {
                return Err(ParseError::DuplicateCover { line, id: dup });
            }
            if index.insert(id, raw.len()).is_some() {
                return Err(ParseError::DuplicateId { line, id });
            }
            raw.push(Raw { line, rank, covers });
        }
        if raw.len() != n {
            return Err(ParseError::CountMismatch {
                declared: n,
                found: raw.len(),
            });
        }

        let mut elements = Vec::with_capacity(n);
        for r in &raw {
            let mut covers = Vec::with_capacity(r.covers.len());
            for &c in &r.covers {
                let &target = index.get(&c).ok_or(ParseError::UnknownId {
                    line: r.line,
                    id: c,
                })?;
                let cover_rank = raw[target].rank;
                if cover_rank + 1 != r.rank {
                    return Err(ParseError::RankReference {
                        line: r.line,
                        rank: r.rank,
                        id: c,
                        cover_rank,
                    });
                }
                covers.push(target);
            }
            elements.push(Element {
                rank: r.rank,
                covers,
            });
        }
        Ok(SimplicialPoset::from_elements(d, elements))
    }
}

fn keyed_number(
    entry: Option<(usize, &str)>,
    key: &str,
    expected: &'static str,
) -> Result<usize, ParseError> {
    let (line, text) = entry.ok_or(ParseError::Syntax { line: 0, expected })?;
    let mut it = text.split_whitespace();
    match (it.next(), it.next(), it.next()) {
        (Some(k), Some(v), None) if k == key => {
            v.parse().map_err(|_| ParseError::Syntax { line, expected })
        }
        _ => Err(ParseError::Syntax { line, expected }),
    }
}
