//! Text form of a mixed subdivision.
//!
//! ```text
//! mixed dim=2 |TA|=1 |TB|=1 m11=1 weight=4
//! A 3
//! 0 0
//! ...
//! B 3
//! ...
//! TA 1
//! 0 1 2
//! TB 1
//! 0 1 2
//! cell 2 0 0 1 2 | 0
//! ```
//!
//! A cell line lists `dim F`, `dim G`, the vertex indices of `F`, a bar, and those of `G`.
//! Header counts are redundant and checked on parsing.

use super::{MixedCell, MixedSubdivision};
use crate::geometry::PointSet;
use crate::io::{content_lines, parse_point};
use crate::triangulation::Triangulation;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseMixedError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseMixedError {
    ParseMixedError { line, message: message.into() }
}

pub(super) fn to_text(m: &MixedSubdivision) -> String {
    let mut s = format!("mixed dim=2 |TA|={} |TB|={} m11={} weight={}\n", m.ta.len(), m.tb.len(), m.m11(), m.weight());
    for (tag, set) in [("A", m.a()), ("B", m.b())] {
        s.push_str(&format!("{tag} {}\n", set.len()));
        for p in set.iter() {
            s.push_str(&format!("{} {}\n", p.x, p.y));
        }
    }
    for (tag, t) in [("TA", &m.ta), ("TB", &m.tb)] {
        s.push_str(&format!("{tag} {}\n", t.len()));
        for tri in t.triangles() {
            s.push_str(&format!("{} {} {}\n", tri[0], tri[1], tri[2]));
        }
    }
    for c in &m.cells {
        let (i, j) = c.kind();
        let fa: Vec<String> = c.a_face.iter().map(usize::to_string).collect();
        let fb: Vec<String> = c.b_face.iter().map(usize::to_string).collect();
        s.push_str(&format!("cell {i} {j} {} | {}\n", fa.join(" "), fb.join(" ")));
    }
    s
}

fn header_value(line: usize, field: &str, key: &str) -> Result<usize, ParseMixedError> {
    field
        .strip_prefix(key)
        .and_then(|v| v.strip_prefix('='))
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| err(line, format!("expected {key}=<count>, found {field:?}")))
}

struct Cursor<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn next(&mut self, what: &str) -> Result<(usize, &'a str), ParseMixedError> {
        let last = self.lines.last().map_or(0, |l| l.0);
        let l = self.lines.get(self.pos).copied().ok_or_else(|| err(last, format!("missing {what}")))?;
        self.pos += 1;
        Ok(l)
    }

    fn section(&mut self, tag: &str) -> Result<(usize, usize), ParseMixedError> {
        let (n, l) = self.next(tag)?;
        match l.split_whitespace().collect::<Vec<_>>()[..] {
            [t, k] if t == tag => k.parse().map(|k| (n, k)).map_err(|_| err(n, format!("bad count {k:?}"))),
            _ => Err(err(n, format!("expected section \"{tag} <count>\""))),
        }
    }
}

pub fn parse_mixed(text: &str) -> Result<MixedSubdivision, ParseMixedError> {
    let mut cur = Cursor { lines: content_lines(text).collect(), pos: 0 };
    let (hl, header) = cur.next("header")?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 6 || fields[0] != "mixed" || fields[1] != "dim=2" {
        return Err(err(hl, "expected header \"mixed dim=2 |TA|=.. |TB|=.. m11=.. weight=..\""));
    }
    let counts = [
        header_value(hl, fields[2], "|TA|")?,
        header_value(hl, fields[3], "|TB|")?,
        header_value(hl, fields[4], "m11")?,
        header_value(hl, fields[5], "weight")?,
    ];
    let mut sets = Vec::new();
    for tag in ["A", "B"] {
        let (n, k) = cur.section(tag)?;
        let mut pts = Vec::with_capacity(k);
        for _ in 0..k {
            let (ln, l) = cur.next("point")?;
            pts.push(parse_point(ln, l).map_err(|e| err(e.line, e.kind.to_string()))?);
        }
        let set = PointSet::new(pts.clone()).map_err(|e| err(n, e.to_string()))?;
        if set.points() != pts.as_slice() {
            return Err(err(n, format!("points of {tag} must be listed in sorted order")));
        }
        sets.push(set);
    }
    let mut tris = Vec::new();
    for (tag, set) in [("TA", &sets[0]), ("TB", &sets[1])] {
        let (_, k) = cur.section(tag)?;
        let mut triangles = Vec::with_capacity(k);
        for _ in 0..k {
            let (ln, l) = cur.next("triangle")?;
            let idx = indices(ln, l, set.len())?;
            let [a, b, c] = idx[..] else { return Err(err(ln, "a triangle has three indices")) };
            triangles.push([a, b, c]);
        }
        tris.push(Triangulation::new(set.clone(), triangles));
    }
    let mut cells = Vec::new();
    for &(ln, l) in &cur.lines[cur.pos..] {
        let rest = l.strip_prefix("cell ").ok_or_else(|| err(ln, "expected a cell line"))?;
        let (left, right) = rest.split_once('|').ok_or_else(|| err(ln, "missing '|'"))?;
        let mut lf = left.split_whitespace();
        let dims: Vec<usize> = lf
            .by_ref()
            .take(2)
            .map(|d| d.parse().map_err(|_| err(ln, "bad cell dimension")))
            .collect::<Result<_, _>>()?;
        let a_face = indices(ln, &lf.collect::<Vec<_>>().join(" "), sets[0].len())?;
        let b_face = indices(ln, right, sets[1].len())?;
        if dims.len() != 2 || dims[0] + 1 != a_face.len() || dims[1] + 1 != b_face.len() {
            return Err(err(ln, "cell dimensions do not match its faces"));
        }
        cells.push(MixedCell::new(a_face, b_face));
    }
    let tb = tris.pop().expect("two triangulations");
    let ta = tris.pop().expect("two triangulations");
    let m = MixedSubdivision::new(ta, tb, cells);
    if counts != [m.ta.len(), m.tb.len(), m.m11(), m.weight()] {
        return Err(err(hl, "header counts disagree with the body"));
    }
    Ok(m)
}

fn indices(line: usize, text: &str, bound: usize) -> Result<Vec<usize>, ParseMixedError> {
    text.split_whitespace()
        .map(|f| match f.parse::<usize>() {
            Ok(i) if i < bound => Ok(i),
            _ => Err(err(line, format!("invalid index {f:?}"))),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mixed::triangle_mixed;

    #[test]
    fn round_trip() {
        let a = PointSet::grid(0, 0, 3, 3);
        let b = PointSet::from_ints(&[(0, 0), (2, 0), (0, 1)]).unwrap();
        let m = triangle_mixed(&a, &b).unwrap();
        let text = to_text(&m);
        assert!(text.starts_with(&format!("mixed dim=2 |TA|=8 |TB|=1 m11={} weight={}\n", m.m11(), m.weight())));
        assert_eq!(parse_mixed(&text).unwrap(), m);
    }

    #[test]
    fn rejects_inconsistent_header() {
        let a = PointSet::grid(0, 0, 2, 2);
        let b = PointSet::from_ints(&[(0, 0), (1, 0), (0, 1)]).unwrap();
        let m = triangle_mixed(&a, &b).unwrap();
        let text = to_text(&m).replacen("weight=", "weight=1", 1);
        assert_eq!(parse_mixed(&text).unwrap_err().line, 1);
        assert!(parse_mixed("mixed dim=3 |TA|=0 |TB|=0 m11=0 weight=0\n").is_err());
    }
}
