//! Flat-file formats.
//!
//! Point file: one `x y` pair per line, `#` starts a comment, the point
//! index is its line order among data lines. Numbers are written with
//! Rust's shortest round-trip formatting, so writing a parsed file
//! reproduces it byte for byte.
//!
//! Matching file: optional `# shape <name>` and `# disjointness <mode>`
//! headers, then one pair per line:
//!
//! ```text
//! i j disk cx cy r
//! i j tri A B C down|up
//! i j square x0 y0 s
//! ```

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::exact::{parse_decimal, XPoint};
use crate::geom::{Disk, Homothet, Orientation, Point, Shape, Square, Triangle};
use crate::matching::{Disjointness, Pair, StrongMatching};

fn data_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(k, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then(|| (k + 1, line.split_whitespace().collect()))
    })
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn num(line: usize, s: &str) -> Result<f64> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(parse_err(line, format!("bad number {s:?}"))),
    }
}

pub fn parse_points(text: &str) -> Result<Vec<Point>> {
    data_lines(text)
        .map(|(line, f)| {
            if f.len() != 2 {
                return Err(parse_err(line, format!("expected 2 numbers, got {}", f.len())));
            }
            Ok(Point::new(num(line, f[0])?, num(line, f[1])?))
        })
        .collect()
}

/// Reads the decimal literals as exact rationals.
pub fn parse_points_exact(text: &str) -> Result<Vec<XPoint>> {
    data_lines(text)
        .map(|(line, f)| {
            if f.len() != 2 {
                return Err(parse_err(line, format!("expected 2 numbers, got {}", f.len())));
            }
            let get = |s: &str| parse_decimal(s).ok_or_else(|| parse_err(line, format!("bad number {s:?}")));
            Ok(XPoint { x: get(f[0])?, y: get(f[1])? })
        })
        .collect()
}

pub fn write_points(points: &[Point]) -> String {
    let mut out = String::new();
    for p in points {
        writeln!(out, "{} {}", p.x, p.y).unwrap();
    }
    out
}

pub fn write_matching(m: &StrongMatching) -> String {
    let mut out = String::new();
    writeln!(out, "# shape {}", m.shape.name()).unwrap();
    writeln!(out, "# disjointness {}", m.mode.name()).unwrap();
    for p in &m.pairs {
        write!(out, "{} {} ", p.i, p.j).unwrap();
        match p.rep {
            Homothet::Disk(d) => writeln!(out, "disk {} {} {}", d.cx, d.cy, d.r),
            Homothet::Triangle(t) => {
                let [a, b, c] = t.bounds;
                let o = match t.orient {
                    Orientation::Down => "down",
                    Orientation::Up => "up",
                };
                writeln!(out, "tri {a} {b} {c} {o}")
            }
            Homothet::Square(s) => writeln!(out, "square {} {} {}", s.x0, s.y0, s.s),
        }
        .unwrap();
    }
    out
}

pub fn parse_matching(text: &str) -> Result<StrongMatching> {
    let mut shape = None;
    let mut mode = Disjointness::Strict;
    for (k, raw) in text.lines().enumerate() {
        let Some(rest) = raw.trim().strip_prefix('#') else { continue };
        let f: Vec<&str> = rest.split_whitespace().collect();
        match f.as_slice() {
            ["shape", s] => {
                shape = Some(Shape::parse(s).ok_or_else(|| parse_err(k + 1, format!("unknown shape {s:?}")))?)
            }
            ["disjointness", s] => {
                mode = Disjointness::parse(s).ok_or_else(|| parse_err(k + 1, format!("unknown mode {s:?}")))?
            }
            _ => {}
        }
    }
    let mut pairs = Vec::new();
    for (line, f) in data_lines(text) {
        let arity = match f.get(2) {
            Some(&"disk") | Some(&"square") => 6,
            Some(&"tri") => 7,
            Some(other) => return Err(parse_err(line, format!("unknown kind {other:?}"))),
            None => return Err(parse_err(line, "expected `i j kind params`")),
        };
        if f.len() != arity {
            return Err(parse_err(line, format!("{} takes {} fields, got {}", f[2], arity, f.len())));
        }
        let idx = |s: &str| s.parse::<usize>().map_err(|_| parse_err(line, format!("bad index {s:?}")));
        let (i, j) = (idx(f[0])?, idx(f[1])?);
        let v = |k: usize| num(line, f[k]);
        let rep = match f[2] {
            "disk" => Homothet::Disk(Disk { cx: v(3)?, cy: v(4)?, r: v(5)? }),
            "square" => Homothet::Square(Square { x0: v(3)?, y0: v(4)?, s: v(5)? }),
            _ => {
                let orient = match f[6] {
                    "down" => Orientation::Down,
                    "up" => Orientation::Up,
                    o => return Err(parse_err(line, format!("bad orientation {o:?}"))),
                };
                Homothet::Triangle(Triangle::new(orient, [v(3)?, v(4)?, v(5)?]))
            }
        };
        pairs.push(Pair { i, j, rep });
    }
    let shape = match shape {
        Some(s) => s,
        None => match pairs.first() {
            Some(p) => p.rep.kind().into(),
            None => Shape::Disk,
        },
    };
    Ok(StrongMatching { shape, pairs, mode })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_round_trip() {
        let text = "0.1 0.2\n-3 0.0000001\n0.30000000000000004 5\n";
        let pts = parse_points(text).unwrap();
        assert_eq!(write_points(&pts), text);
        // other spellings settle on the canonical one after one pass
        let once = write_points(&parse_points("1e-7 +2.50\n").unwrap());
        assert_eq!(once, "0.0000001 2.5\n");
        assert_eq!(write_points(&parse_points(&once).unwrap()), once);
    }

    #[test]
    fn comments_and_blank_lines() {
        let pts = parse_points("# header\n\n1 2 # trailing\n3 4\n").unwrap();
        assert_eq!(pts, vec![Point::new(1.0, 2.0), Point::new(3.0, 4.0)]);
    }

    #[test]
    fn parse_errors_carry_the_line() {
        match parse_points("1 2\n3\n") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_points("1 2\n\nx 4\n") {
            Err(Error::Parse { line: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn matching_round_trip() {
        let m = StrongMatching {
            shape: Shape::Theta6,
            mode: Disjointness::Interior,
            pairs: vec![
                Pair { i: 0, j: 3, rep: Homothet::Triangle(Triangle::new(Orientation::Up, [1.5, -2.0, 0.75])) },
                Pair { i: 1, j: 2, rep: Homothet::Triangle(Triangle::new(Orientation::Down, [0.0, 1.0, 2.0])) },
            ],
        };
        let text = write_matching(&m);
        assert_eq!(parse_matching(&text).unwrap(), m);
        let sq = "0 1 square 0.5 0.25 1\n";
        let back = parse_matching(sq).unwrap();
        assert_eq!(back.shape, Shape::Square);
        assert_eq!(back.mode, Disjointness::Strict);
        assert!(parse_matching("0 1 disk 1 2\n").is_err());
    }

    #[test]
    fn exact_points_match_decimals() {
        let x = parse_points_exact("0.1 -2e-3\n").unwrap();
        assert_eq!(x[0].x, parse_decimal("1e-1").unwrap());
    }
}
