//! Text formats: planar point sets, d-dimensional point lists and the simplex exchange format.
//!
//! Point lines hold whitespace-separated rationals (`7`, `-3`, `5/2`). Blank lines and lines
//! starting with `#` are skipped everywhere; reported line numbers are 1-based.

use std::collections::HashMap;

use crate::geometry::{GeometryError, Point, PointSet};
use crate::rat::Rat;
use crate::triangulation::Triangulation;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("expected {expected} fields, found {found}")]
    FieldCount { expected: usize, found: usize },
    #[error("invalid number {0:?}")]
    BadNumber(String),
    #[error("duplicate point, first given on line {first}")]
    Duplicate { first: usize },
    #[error("missing header line \"dim d\"")]
    MissingHeader,
    #[error("invalid header {0:?}")]
    BadHeader(String),
    #[error("invalid vertex index {0:?}")]
    BadIndex(String),
    #[error("vertex index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("no points")]
    Empty,
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn new(line: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, kind }
    }
}

/// Non-comment lines with their 1-based numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn parse_rats(line: usize, fields: &[&str], expected: usize) -> Result<Vec<Rat>, ParseError> {
    if fields.len() != expected {
        return Err(ParseError::new(line, ParseErrorKind::FieldCount { expected, found: fields.len() }));
    }
    fields
        .iter()
        .map(|f| f.parse::<Rat>().map_err(|_| ParseError::new(line, ParseErrorKind::BadNumber(f.to_string()))))
        .collect()
}

pub(crate) fn parse_point(line: usize, text: &str) -> Result<Point, ParseError> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    let mut v = parse_rats(line, &fields, 2)?;
    let y = v.pop().expect("two fields");
    let x = v.pop().expect("two fields");
    Ok(Point::new(x, y))
}

/// Parses a planar point set; duplicates are rejected with both line numbers.
pub fn parse_point_set(text: &str) -> Result<PointSet, ParseError> {
    let mut seen: HashMap<Point, usize> = HashMap::new();
    let mut points = Vec::new();
    let mut last = 0;
    for (n, l) in content_lines(text) {
        last = n;
        let p = parse_point(n, l)?;
        if let Some(&first) = seen.get(&p) {
            return Err(ParseError::new(n, ParseErrorKind::Duplicate { first }));
        }
        seen.insert(p.clone(), n);
        points.push(p);
    }
    PointSet::new(points).map_err(|e| match e {
        GeometryError::Empty => ParseError::new(last, ParseErrorKind::Empty),
        other => unreachable!("duplicates were filtered: {other}"),
    })
}

pub fn format_point_set(a: &PointSet) -> String {
    a.iter().map(|p| format!("{} {}\n", p.x, p.y)).collect()
}

/// Parses points with `d` coordinates each; `d` is taken from the first line when `None`.
pub fn parse_points_nd(text: &str, d: Option<usize>) -> Result<Vec<Vec<Rat>>, ParseError> {
    let mut out: Vec<Vec<Rat>> = Vec::new();
    let mut dim = d;
    let mut seen: HashMap<Vec<Rat>, usize> = HashMap::new();
    for (n, l) in content_lines(text) {
        let fields: Vec<&str> = l.split_whitespace().collect();
        let expected = *dim.get_or_insert(fields.len());
        let p = parse_rats(n, &fields, expected)?;
        if let Some(&first) = seen.get(&p) {
            return Err(ParseError::new(n, ParseErrorKind::Duplicate { first }));
        }
        seen.insert(p.clone(), n);
        out.push(p);
    }
    if out.is_empty() {
        return Err(ParseError::new(0, ParseErrorKind::Empty));
    }
    Ok(out)
}

/// Exchange format: `dim d`, then one simplex per line as `d + 1` zero-based indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexList {
    pub dim: usize,
    pub simplices: Vec<Vec<usize>>,
}

pub fn parse_exchange(text: &str) -> Result<SimplexList, ParseError> {
    let mut lines = content_lines(text);
    let (n, header) = lines.next().ok_or(ParseError::new(0, ParseErrorKind::MissingHeader))?;
    let dim = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["dim", d] => d.parse::<usize>().ok().filter(|&d| d >= 1),
        _ => None,
    }
    .ok_or_else(|| ParseError::new(n, ParseErrorKind::BadHeader(header.to_string())))?;
    let mut simplices = Vec::new();
    for (n, l) in lines {
        let fields: Vec<&str> = l.split_whitespace().collect();
        if fields.len() != dim + 1 {
            return Err(ParseError::new(n, ParseErrorKind::FieldCount { expected: dim + 1, found: fields.len() }));
        }
        let s = fields
            .iter()
            .map(|f| f.parse::<usize>().map_err(|_| ParseError::new(n, ParseErrorKind::BadIndex(f.to_string()))))
            .collect::<Result<Vec<_>, _>>()?;
        simplices.push(s);
    }
    Ok(SimplexList { dim, simplices })
}

pub fn format_exchange(list: &SimplexList) -> String {
    let mut s = format!("dim {}\n", list.dim);
    for simplex in &list.simplices {
        let idx: Vec<String> = simplex.iter().map(usize::to_string).collect();
        s.push_str(&idx.join(" "));
        s.push('\n');
    }
    s
}

/// A planar triangulation from its point set and a `dim 2` exchange file. Indices refer to the
/// sorted order of `base`; the result is not validated.
pub fn parse_triangulation(base: &PointSet, text: &str) -> Result<Triangulation, ParseError> {
    let list = parse_exchange(text)?;
    if list.dim != 2 {
        return Err(ParseError::new(1, ParseErrorKind::DimensionMismatch { expected: 2, found: list.dim }));
    }
    for (k, s) in list.simplices.iter().enumerate() {
        if let Some(&i) = s.iter().find(|&&i| i >= base.len()) {
            return Err(ParseError::new(k + 2, ParseErrorKind::IndexOutOfRange(i)));
        }
    }
    let triangles = list.simplices.iter().map(|s| [s[0], s[1], s[2]]).collect();
    Ok(Triangulation::new(base.clone(), triangles))
}

pub fn format_triangulation(t: &Triangulation) -> String {
    format_exchange(&SimplexList { dim: 2, simplices: t.triangles().iter().map(|t| t.to_vec()).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::triangulate;

    #[test]
    fn point_sets_round_trip() {
        let text = "# corners\n0 0\n3/2 -1\n\n  2 5  \n";
        let a = parse_point_set(text).unwrap();
        assert_eq!(a.len(), 3);
        assert_eq!(a.get(1), &Point::new(Rat::new(3, 2), Rat::from_int(-1)));
        assert_eq!(parse_point_set(&format_point_set(&a)).unwrap(), a);
    }

    #[test]
    fn diagnostics_name_lines() {
        let e = parse_point_set("0 0\n1 1\n# x\n0 0\n").unwrap_err();
        assert_eq!(e, ParseError::new(4, ParseErrorKind::Duplicate { first: 1 }));
        assert_eq!(e.to_string(), "line 4: duplicate point, first given on line 1");
        assert_eq!(parse_point_set("1 2 3").unwrap_err().kind, ParseErrorKind::FieldCount { expected: 2, found: 3 });
        assert_eq!(parse_point_set("1 x").unwrap_err().kind, ParseErrorKind::BadNumber("x".into()));
        assert_eq!(parse_point_set("# nothing\n").unwrap_err().kind, ParseErrorKind::Empty);
        assert_eq!(parse_point_set("1 1/0").unwrap_err().line, 1);
    }

    #[test]
    fn exchange_round_trip() {
        let a = PointSet::grid(0, 0, 3, 2);
        let t = triangulate(&a).unwrap();
        let text = format_triangulation(&t);
        assert!(text.starts_with("dim 2\n"));
        assert_eq!(parse_triangulation(&a, &text).unwrap(), t);
        assert_eq!(parse_exchange("dim 3\n0 1 2\n").unwrap_err().line, 2);
        assert_eq!(parse_exchange("dimension 3\n").unwrap_err().kind, ParseErrorKind::BadHeader("dimension 3".into()));
        assert_eq!(parse_triangulation(&a, "dim 2\n0 1 9\n").unwrap_err().kind, ParseErrorKind::IndexOutOfRange(9));
    }

    #[test]
    fn nd_points() {
        let p = parse_points_nd("0 0 0\n1 0 0\n0 1 0\n0 0 1\n", None).unwrap();
        assert_eq!(p.len(), 4);
        assert!(parse_points_nd("0 0 0\n1 0\n", None).is_err());
    }

    proptest::proptest! {
        #[test]
        fn any_set_round_trips(pts in proptest::collection::btree_set((-50i64..50, -50i64..50, 1i64..5), 1..20)) {
            let points: Vec<Point> = pts.iter().map(|&(x, y, d)| Point::new(Rat::new(x, d), Rat::from_int(y))).collect();
            if let Ok(a) = PointSet::new(points) {
                proptest::prop_assert_eq!(parse_point_set(&format_point_set(&a)).unwrap(), a);
            }
        }
    }
}
