use serde::Serialize;

use super::{cone_coords, smallest_homothet, Family, Homothet, Kind, Point, EPS};

/// Which non-degeneracy rule a tuple of points breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Rule {
    /// Four points on the boundary of the diametral disk of two of them.
    CoCircular,
    /// Two points on a common line at 0°, 60° or 120°.
    ConeAligned,
    /// Two points sharing an x or a y coordinate.
    SharedCoordinate,
    /// Four points on the boundary of the canonical square of two of them.
    CoSquare,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub indices: Vec<usize>,
    pub rule: Rule,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneralPositionReport {
    pub family: Family,
    pub violations: Vec<Violation>,
}

impl GeneralPositionReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Reports every tuple of `points` that breaks general position for `family`.
///
/// Identical points are reported under every family.
pub fn check_general_position(points: &[Point], family: Family) -> GeneralPositionReport {
    let n = points.len();
    let mut violations = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (p, q) = (points[i], points[j]);
            let aligned = match family {
                Family::Triangle => {
                    let (fp, fq) = (cone_coords(p), cone_coords(q));
                    (0..3).any(|k| (fp[k] - fq[k]).abs() <= EPS)
                }
                Family::Square => (p.x - q.x).abs() <= EPS || (p.y - q.y).abs() <= EPS,
                Family::Disk => (p.x - q.x).abs() <= EPS && (p.y - q.y).abs() <= EPS,
            };
            if aligned {
                let rule = match family {
                    Family::Triangle => Rule::ConeAligned,
                    _ => Rule::SharedCoordinate,
                };
                violations.push(Violation { indices: vec![i, j], rule });
                continue;
            }
            let kind = match family {
                Family::Disk => Kind::Disk,
                Family::Square => Kind::Square,
                Family::Triangle => continue,
            };
            let Ok(h) = smallest_homothet(p, q, kind) else { continue };
            let near = |r: Point| match h {
                // |d - r| <= EPS implies |d^2 - r^2| <= EPS (2r + EPS)
                Homothet::Disk(d) => {
                    let dd = (r.x - d.cx).powi(2) + (r.y - d.cy).powi(2);
                    (dd - d.r * d.r).abs() <= 2.0 * EPS * (2.0 * d.r + EPS) + f64::EPSILON * dd
                }
                _ => true,
            };
            let on: Vec<usize> = (0..n)
                .filter(|&r| r != i && r != j && near(points[r]) && h.on_boundary(points[r]))
                .collect();
            if on.len() >= 2 {
                let mut indices = vec![i, j];
                indices.extend(on);
                let rule = if kind == Kind::Disk { Rule::CoCircular } else { Rule::CoSquare };
                violations.push(Violation { indices, rule });
            }
        }
    }
    GeneralPositionReport { family, violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(f64, f64)]) -> Vec<Point> {
        v.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    #[test]
    fn shared_x_breaks_square_mode() {
        let r = check_general_position(&pts(&[(0.0, 0.0), (0.0, 1.0)]), Family::Square);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].rule, Rule::SharedCoordinate);
    }

    #[test]
    fn horizontal_pair_breaks_triangle_mode() {
        let r = check_general_position(&pts(&[(0.0, 0.0), (1.0, 0.0)]), Family::Triangle);
        assert_eq!(r.violations[0].rule, Rule::ConeAligned);
    }

    #[test]
    fn generic_triple_is_fine_for_triangles() {
        let r = check_general_position(
            &pts(&[(0.0, 0.0), (1.0, 0.3), (2.0, 0.8)]),
            Family::Triangle,
        );
        assert!(r.ok());
    }

    #[test]
    fn four_on_a_diametral_circle() {
        let r = check_general_position(
            &pts(&[(-1.0, 0.0), (1.0, 0.0), (0.0, 1.0), (0.0, -1.0)]),
            Family::Disk,
        );
        assert!(r.violations.iter().any(|v| v.rule == Rule::CoCircular));
    }
}
