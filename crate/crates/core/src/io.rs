//! Plain-text formats.
//!
//! * Point set: a count line, then one `x y` integer pair per line.
//! * Edge list (matchings, removal sets): one `i j` pair per line, sorted.
//! * Rational polygon: a count line, then one `p/q r/s` pair per line.
//!
//! `#` starts a comment; blank lines are ignored.

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::geom::{EdgeRef, Point, PointSet};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(k, line)| {
        let body = line.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((k + 1, body))
    })
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn two_fields(line: usize, body: &str) -> Result<(&str, &str)> {
    let mut it = body.split_whitespace();
    match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) => Ok((a, b)),
        _ => Err(parse_err(line, "expected exactly two fields")),
    }
}

fn counted<'a>(text: &'a str) -> Result<(usize, Vec<(usize, &'a str)>)> {
    let mut lines = content_lines(text);
    let (line, first) = lines.next().ok_or_else(|| parse_err(1, "missing count line"))?;
    let n: usize = first.parse().map_err(|_| parse_err(line, format!("bad count `{first}`")))?;
    let rest: Vec<_> = lines.collect();
    if rest.len() != n {
        let at = rest.last().map_or(line, |r| r.0);
        return Err(parse_err(at, format!("count line says {n} entries, found {}", rest.len())));
    }
    Ok((n, rest))
}

/// Parses a point set; general position is not checked.
pub fn parse_points(text: &str) -> Result<PointSet> {
    let (_, rows) = counted(text)?;
    let mut pts = Vec::with_capacity(rows.len());
    for (line, body) in rows {
        let (a, b) = two_fields(line, body)?;
        let x = a.parse().map_err(|_| parse_err(line, format!("bad integer `{a}`")))?;
        let y = b.parse().map_err(|_| parse_err(line, format!("bad integer `{b}`")))?;
        pts.push(Point::new(x, y));
    }
    PointSet::new(pts)
}

pub fn format_points(points: &[Point]) -> String {
    let mut s = format!("{}\n", points.len());
    for p in points {
        let _ = writeln!(s, "{} {}", p.x, p.y);
    }
    s
}

pub fn parse_edges(text: &str) -> Result<Vec<EdgeRef>> {
    let mut out = Vec::new();
    for (line, body) in content_lines(text) {
        let (a, b) = two_fields(line, body)?;
        let i: usize = a.parse().map_err(|_| parse_err(line, format!("bad index `{a}`")))?;
        let j: usize = b.parse().map_err(|_| parse_err(line, format!("bad index `{b}`")))?;
        if i == j {
            return Err(parse_err(line, "self-loop"));
        }
        out.push(EdgeRef::new(i, j));
    }
    Ok(out)
}

pub fn format_edges(edges: &[EdgeRef]) -> String {
    let mut sorted = edges.to_vec();
    sorted.sort();
    let mut s = String::new();
    for e in sorted {
        let _ = writeln!(s, "{} {}", e.i, e.j);
    }
    s
}

fn parse_rational(line: usize, field: &str) -> Result<BigRational> {
    let bad = || parse_err(line, format!("bad fraction `{field}`"));
    let (num, den) = match field.split_once('/') {
        Some((p, q)) => (p, q),
        None => (field, "1"),
    };
    let p: BigInt = num.parse().map_err(|_| bad())?;
    let q: BigInt = den.parse().map_err(|_| bad())?;
    if q == BigInt::from(0) {
        return Err(parse_err(line, "zero denominator"));
    }
    Ok(BigRational::new(p, q))
}

fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational_points(text: &str) -> Result<Vec<(BigRational, BigRational)>> {
    let (_, rows) = counted(text)?;
    rows.into_iter()
        .map(|(line, body)| {
            let (a, b) = two_fields(line, body)?;
            Ok((parse_rational(line, a)?, parse_rational(line, b)?))
        })
        .collect()
}

pub fn format_rational_points(points: &[(BigRational, BigRational)]) -> String {
    let mut s = format!("{}\n", points.len());
    for (x, y) in points {
        let _ = writeln!(s, "{} {}", format_rational(x), format_rational(y));
    }
    s
}

pub fn read_points(path: impl AsRef<Path>) -> Result<PointSet> {
    parse_points(&std::fs::read_to_string(path)?)
}

pub fn read_edges(path: impl AsRef<Path>) -> Result<Vec<EdgeRef>> {
    parse_edges(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_round_trip() {
        let text = "# square\n4\n0 0\n2 0   # corner\n\n2 2\n0 2\n";
        let ps = parse_points(text).unwrap();
        assert_eq!(ps.len(), 4);
        let again = format_points(ps.points());
        assert_eq!(parse_points(&again).unwrap(), ps);
        assert_eq!(format_points(parse_points(&again).unwrap().points()), again);
    }

    #[test]
    fn point_errors_name_the_line() {
        assert!(matches!(parse_points("2\n0 0\n1 x\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_points("3\n0 0\n1 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_points("2\n0 0\n0 0\n"), Err(Error::DuplicatePoint(_))));
    }

    #[test]
    fn edges_round_trip_sorted() {
        let edges = parse_edges("3 1\n0 2\n").unwrap();
        let text = format_edges(&edges);
        assert_eq!(text, "0 2\n1 3\n");
        assert_eq!(format_edges(&parse_edges(&text).unwrap()), text);
        assert!(parse_edges("1 1\n").is_err());
    }

    #[test]
    fn rationals_round_trip() {
        let pts = parse_rational_points("2\n1/5 -3/4\n2 0/7\n").unwrap();
        let text = format_rational_points(&pts);
        assert_eq!(text, "2\n1/5 -3/4\n2/1 0/1\n");
        assert_eq!(parse_rational_points(&text).unwrap(), pts);
        assert!(parse_rational_points("1\n1/0 1\n").is_err());
    }
}
