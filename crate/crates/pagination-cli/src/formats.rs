//! Text file formats.
//!
//! Instance files:
//!
//! ```text
//! pagination-instance v1
//! capacity 7
//! tiles 4
//! a b c d e
//! d e f
//! e f g
//! h i j k
//! ```
//!
//! Tokens are arbitrary non-whitespace strings; the parser builds the dense
//! alphabet in first-appearance order, so writing an instance back yields
//! the exact same bytes. Solution files hold one line of ascending 0-based
//! tile indices per page:
//!
//! ```text
//! pagination-solution v1
//! 0 1
//! 2 3
//! ```
//!
//! Lines starting with `#` are ignored by both parsers; the oracle appends
//! its proof status that way.

use std::fmt::Write as _;

use pagination_core::instance::{Alphabet, Instance, Pagination, Tile};
use pagination_core::set::SymbolSet;

pub const INSTANCE_HEADER: &str = "pagination-instance v1";
pub const SOLUTION_HEADER: &str = "pagination-solution v1";

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: expected {expected:?}")]
    BadHeader { line: usize, expected: &'static str },
    #[error("line {line}: expected `{field} <value>`")]
    BadField { line: usize, field: &'static str },
    #[error("line {line}: {message}")]
    BadValue { line: usize, message: String },
    #[error("expected {expected} tile lines, found {found}")]
    WrongTileCount { expected: usize, found: usize },
    #[error("bad instance: {0}")]
    BadInstance(pagination_core::instance::InstanceError),
}

/// Lines that carry content: comment lines and blank lines are skipped,
/// original line numbers kept for error reporting.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
}

/// Parses an instance file.
pub fn parse_instance(text: &str) -> Result<Instance, FormatError> {
    let mut lines = content_lines(text);

    let (line, header) = lines.next().ok_or(FormatError::BadHeader {
        line: 1,
        expected: INSTANCE_HEADER,
    })?;
    if header.trim() != INSTANCE_HEADER {
        return Err(FormatError::BadHeader {
            line,
            expected: INSTANCE_HEADER,
        });
    }

    let capacity: u32 = parse_field(lines.next(), "capacity")?;
    let tile_count: usize = parse_field(lines.next(), "tiles")?;

    let mut tokens: Vec<String> = Vec::new();
    let mut tiles_tokens: Vec<Vec<usize>> = Vec::new();
    for (line, text) in lines.by_ref().take(tile_count) {
        let mut ids = Vec::new();
        for token in text.split_whitespace() {
            let id = match tokens.iter().position(|t| t == token) {
                Some(id) => id,
                None => {
                    tokens.push(token.to_string());
                    tokens.len() - 1
                }
            };
            ids.push(id);
        }
        if ids.is_empty() {
            return Err(FormatError::BadValue {
                line,
                message: "tile line holds no symbols".into(),
            });
        }
        tiles_tokens.push(ids);
    }
    if tiles_tokens.len() != tile_count {
        return Err(FormatError::WrongTileCount {
            expected: tile_count,
            found: tiles_tokens.len(),
        });
    }
    if let Some((line, _)) = lines.next() {
        return Err(FormatError::BadValue {
            line,
            message: "unexpected content after the last tile".into(),
        });
    }
    if tile_count == 0 {
        return Err(FormatError::BadValue {
            line: 3,
            message: "instances need at least one tile".into(),
        });
    }

    let universe = tokens.len();
    let alphabet = Alphabet::new(tokens).map_err(FormatError::BadInstance)?;
    let tiles = tiles_tokens
        .into_iter()
        .map(|ids| Tile::new(SymbolSet::from_ids(universe, ids)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(FormatError::BadInstance)?;
    Instance::new(capacity, alphabet, tiles).map_err(FormatError::BadInstance)
}

fn parse_field<T: std::str::FromStr>(
    line: Option<(usize, &str)>,
    field: &'static str,
) -> Result<T, FormatError> {
    let (line_no, text) = line.ok_or(FormatError::BadField { line: 0, field })?;
    let mut parts = text.split_whitespace();
    if parts.next() != Some(field) {
        return Err(FormatError::BadField {
            line: line_no,
            field,
        });
    }
    let value = parts.next().ok_or(FormatError::BadField {
        line: line_no,
        field,
    })?;
    if parts.next().is_some() {
        return Err(FormatError::BadField {
            line: line_no,
            field,
        });
    }
    value.parse().map_err(|_| FormatError::BadValue {
        line: line_no,
        message: format!("cannot parse {field} value {value:?}"),
    })
}

/// Canonical text form of an instance.
pub fn write_instance(instance: &Instance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{INSTANCE_HEADER}");
    let _ = writeln!(out, "capacity {}", instance.capacity());
    let _ = writeln!(out, "tiles {}", instance.tile_count());
    for tile in instance.tiles() {
        let mut first = true;
        for symbol in tile.symbols().iter() {
            if !first {
                out.push(' ');
            }
            out.push_str(instance.alphabet().token(symbol));
            first = false;
        }
        out.push('\n');
    }
    out
}

/// Parses a solution file. Validity against an instance is a separate step.
pub fn parse_pagination(text: &str) -> Result<Pagination, FormatError> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or(FormatError::BadHeader {
        line: 1,
        expected: SOLUTION_HEADER,
    })?;
    if header.trim() != SOLUTION_HEADER {
        return Err(FormatError::BadHeader {
            line,
            expected: SOLUTION_HEADER,
        });
    }

    let mut pages: Vec<Vec<usize>> = Vec::new();
    for (line, text) in lines {
        let mut page = Vec::new();
        for part in text.split_whitespace() {
            let index: usize = part.parse().map_err(|_| FormatError::BadValue {
                line,
                message: format!("bad tile index {part:?}"),
            })?;
            page.push(index);
        }
        pages.push(page);
    }
    Ok(Pagination::from_pages(pages))
}

/// Canonical text form of a pagination.
pub fn write_pagination(pagination: &Pagination) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{SOLUTION_HEADER}");
    for page in pagination.pages() {
        let mut first = true;
        for &tile in page.tiles() {
            if !first {
                out.push(' ');
            }
            let _ = write!(out, "{tile}");
            first = false;
        }
        out.push('\n');
    }
    out
}

/// Solution text with the oracle's proof status appended as a sidecar line.
pub fn write_oracle_solution(pagination: &Pagination, proven: bool, nodes: u64) -> String {
    let mut out = write_pagination(pagination);
    let _ = writeln!(out, "# proven {proven} nodes {nodes}");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG2: &str =
        "pagination-instance v1\ncapacity 7\ntiles 4\na b c d e\nd e f\ne f g\nh i j k\n";

    #[test]
    fn instance_round_trip_is_bit_exact() {
        let instance = parse_instance(FIG2).unwrap();
        assert_eq!(instance.capacity(), 7);
        assert_eq!(instance.tile_count(), 4);
        assert_eq!(instance.symbol_count(), 11);
        assert_eq!(write_instance(&instance), FIG2);
    }

    #[test]
    fn parser_skips_comments_and_blank_lines() {
        let text = format!("# comment\n\n{FIG2}");
        assert_eq!(write_instance(&parse_instance(&text).unwrap()), FIG2);
    }

    #[test]
    fn instance_parse_errors() {
        assert!(matches!(
            parse_instance("bogus v9\n"),
            Err(FormatError::BadHeader { .. })
        ));
        assert!(matches!(
            parse_instance("pagination-instance v1\ncapacity x\ntiles 1\na b\n"),
            Err(FormatError::BadValue { .. })
        ));
        assert!(matches!(
            parse_instance("pagination-instance v1\ncapacity 5\ntiles 3\na b\n"),
            Err(FormatError::WrongTileCount {
                expected: 3,
                found: 1
            })
        ));
        assert!(matches!(
            parse_instance("pagination-instance v1\ncapacity 5\ntiles 1\na b\nc d\n"),
            Err(FormatError::BadValue { .. })
        ));
        assert!(matches!(
            parse_instance("pagination-instance v1\ncapacity 5\ntiles 0\n"),
            Err(FormatError::BadValue { .. })
        ));
    }

    #[test]
    fn pagination_round_trip() {
        let text = "pagination-solution v1\n0 1\n2 3\n";
        let pagination = parse_pagination(text).unwrap();
        assert_eq!(pagination.page_count(), 2);
        assert_eq!(write_pagination(&pagination), text);
    }

    #[test]
    fn oracle_sidecar_is_ignored_by_the_parser() {
        let pagination = parse_pagination("pagination-solution v1\n0 1\n2 3\n").unwrap();
        let text = write_oracle_solution(&pagination, true, 42);
        assert!(text.ends_with("# proven true nodes 42\n"));
        assert_eq!(parse_pagination(&text).unwrap(), pagination);
    }
}
