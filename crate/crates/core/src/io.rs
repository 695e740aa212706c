//! Text format for point sets.
//!
//! One vector per line. For `q <= 10` a vector is a compact digit string
//! (`01021`); otherwise coordinates are comma-separated decimals (`0,11,3`).
//! The comma form is accepted for any `q`. Blank lines and lines starting
//! with `#` are ignored. The single vector of `E_q^0` is written `()`.

use std::path::Path;

use crate::cube::{CubeParams, Point, PointSet};
use crate::error::{Error, Result};

const EMPTY_VECTOR: &str = "()";

/// Result of parsing a point-set text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedPointSet {
    pub set: PointSet,
    /// Number of repeated vectors that were dropped.
    pub duplicates: usize,
}

pub fn parse_pointset(text: &str, params: CubeParams) -> Result<ParsedPointSet> {
    let mut points = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let Some(line) = data_line(raw) else { continue };
        let coords = parse_vector(line, params.q()).map_err(|message| Error::Parse { line: line_no, message })?;
        let point = params.point(coords).map_err(|e| Error::Parse { line: line_no, message: e.to_string() })?;
        points.push(point);
    }
    let (set, duplicates) = PointSet::with_duplicate_count(params, points)?;
    Ok(ParsedPointSet { set, duplicates })
}

/// Reads and parses a point-set file.
pub fn read_pointset(path: impl AsRef<Path>, params: CubeParams) -> Result<ParsedPointSet> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))?;
    parse_pointset(&text, params)
}

/// Dimension of the first vector in `text`, if any.
pub fn infer_dimension(text: &str, q: u32) -> Option<usize> {
    let line = text.lines().find_map(data_line)?;
    parse_vector(line, q).ok().map(|v| v.len())
}

pub fn serialize_pointset(set: &PointSet) -> String {
    set.iter().map(format_point).collect::<Vec<_>>().join("\n")
}

pub fn format_point(p: &Point) -> String {
    let coords = p.coords();
    if coords.is_empty() {
        return EMPTY_VECTOR.to_string();
    }
    if p.params().q() <= 10 {
        coords.iter().map(|&c| char::from_digit(c, 10).unwrap_or('?')).collect()
    } else {
        coords.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
    }
}

fn data_line(raw: &str) -> Option<&str> {
    let line = raw.trim();
    (!line.is_empty() && !line.starts_with('#')).then_some(line)
}

fn parse_vector(line: &str, q: u32) -> std::result::Result<Vec<u32>, String> {
    if line == EMPTY_VECTOR {
        return Ok(Vec::new());
    }
    if line.contains(',') || q > 10 {
        return line
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<u32>().map_err(|_| format!("malformed coordinate {tok:?}"))
            })
            .collect();
    }
    line.chars().map(|ch| ch.to_digit(10).ok_or_else(|| format!("unexpected character {ch:?}"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn drops_duplicates() {
        let parsed = parse_pointset("000\n011\n011", CubeParams::binary(3)).unwrap();
        assert_eq!(parsed.duplicates, 1);
        assert_eq!(serialize_pointset(&parsed.set), "000\n011");
    }

    #[test]
    fn comma_form_and_comments() {
        let params = CubeParams::new(3, 3).unwrap();
        let parsed = parse_pointset("# header\n\n0,1,2\n", params).unwrap();
        assert_eq!(parsed.set.points()[0].coords(), &[0, 1, 2]);
        assert_eq!(serialize_pointset(&parsed.set), "012");
    }

    #[test]
    fn wide_alphabet_uses_commas() {
        let params = CubeParams::new(12, 2).unwrap();
        let parsed = parse_pointset("11,0\n3,7", params).unwrap();
        assert_eq!(serialize_pointset(&parsed.set), "3,7\n11,0");
    }

    #[test]
    fn out_of_range_reports_line() {
        let err = parse_pointset("000\n012", CubeParams::binary(3)).unwrap_err();
        match err {
            Error::Parse { line, message } => {
                assert_eq!(line, 2);
                assert!(message.contains("coordinate 2"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn wrong_length_and_garbage() {
        let e = CubeParams::binary(3);
        assert!(matches!(parse_pointset("00", e), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_pointset("000\n0x0", e), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_pointset("0,a,1", e), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn empty_inputs() {
        let e = CubeParams::binary(3);
        assert_eq!(serialize_pointset(&PointSet::empty(e)), "");
        assert!(parse_pointset("", e).unwrap().set.is_empty());
        let zero = CubeParams::binary(0);
        let parsed = parse_pointset("()", zero).unwrap();
        assert_eq!(parsed.set.len(), 1);
        assert_eq!(serialize_pointset(&parsed.set), "()");
    }

    #[test]
    fn dimension_inference() {
        assert_eq!(infer_dimension("# c\n0110\n", 2), Some(4));
        assert_eq!(infer_dimension("1,2,13", 14), Some(3));
        assert_eq!(infer_dimension("\n", 2), None);
    }

    proptest! {
        #[test]
        fn parse_serialize_round_trip(
            q in 2u32..16,
            n in 0usize..6,
            raw in proptest::collection::vec(proptest::collection::vec(0u32..16, 6), 0..12),
        ) {
            let params = CubeParams::new(q, n).unwrap();
            let coords = raw.into_iter().map(|v| v.into_iter().take(n).map(|c| c % q).collect::<Vec<_>>());
            let set = PointSet::from_coords(params, coords).unwrap();
            let text = serialize_pointset(&set);
            let back = parse_pointset(&text, params).unwrap();
            prop_assert_eq!(back.duplicates, 0);
            prop_assert_eq!(&back.set, &set);
            prop_assert_eq!(serialize_pointset(&back.set), text);
        }
    }
}
