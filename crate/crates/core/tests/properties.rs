use proptest::prelude::*;
use strong_match::exact::XPoint;
use strong_match::geom::{check_general_position, smallest_homothet, Family, Kind, Orientation, Point};
use strong_match::greedy::strong_match_greedy;
use strong_match::io::{parse_points, write_points};
use strong_match::matching::Disjointness;
use strong_match::recursive::{
    bound, square_container, strong_match_square_recursive, strong_match_theta_recursive, triangle_container,
};
use strong_match::spanning::mst;
use strong_match::verify::{verify_strong, verify_strong_exact};

const KINDS: [Kind; 4] = [Kind::Disk, Kind::TriDown, Kind::TriUp, Kind::Square];

fn points(max: usize) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec((0u32..1_000_000, 0u32..1_000_000), 2..max)
        .prop_map(|v| v.into_iter().map(|(x, y)| Point::new(x as f64 / 1e6, y as f64 / 1e6)).collect())
}

fn ceil_div(n: usize, d: usize) -> usize {
    n.saturating_sub(1).div_ceil(d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn greedy_is_strong_and_meets_bounds(pts in points(60), k in 0usize..4) {
        let kind = KINDS[k];
        prop_assume!(check_general_position(&pts, kind.family()).ok());
        let m = strong_match_greedy(&pts, kind).unwrap();
        prop_assert!(verify_strong(&pts, &m, Disjointness::Strict, None).pass);
        let xs: Vec<XPoint> = pts.iter().map(|&p| XPoint::from_f64(p)).collect();
        prop_assert!(verify_strong_exact(&xs, &m, Disjointness::Strict, None).pass);
        match kind {
            Kind::Disk => prop_assert!(m.len() >= ceil_div(pts.len(), 17)),
            Kind::TriDown | Kind::TriUp => prop_assert!(m.len() >= ceil_div(pts.len(), 9)),
            Kind::Square => prop_assert!(!m.is_empty()),
        }
    }

    #[test]
    fn recursion_meets_quarter_bound(pts in points(80), up in any::<bool>(), square in any::<bool>()) {
        let fam = if square { Family::Square } else { Family::Triangle };
        prop_assume!(check_general_position(&pts, fam).ok());
        let (m, c) = if square {
            let c = square_container(&pts);
            (strong_match_square_recursive(&pts, &c).unwrap(), c.into())
        } else {
            let o = if up { Orientation::Up } else { Orientation::Down };
            let c = triangle_container(&pts, o);
            (strong_match_theta_recursive(&pts, &c).unwrap(), c.into())
        };
        prop_assert!(m.len() >= bound(pts.len()));
        let cert = verify_strong(&pts, &m, Disjointness::Interior, Some(&c));
        prop_assert!(cert.pass, "{:?}", cert.failures);
    }

    #[test]
    fn tree_weights_are_minimal_over_pairs(pts in points(30), k in 0usize..4) {
        // each tree edge is no heavier than any pair it could be swapped for
        let kind = KINDS[k];
        prop_assume!(check_general_position(&pts, kind.family()).ok());
        let t = mst(&pts, kind).unwrap();
        prop_assert_eq!(t.edges.len(), pts.len() - 1);
        let total: f64 = t.edges.iter().map(|e| e.key.weight).sum();
        let star: f64 = (1..pts.len())
            .map(|j| smallest_homothet(pts[0], pts[j], kind).unwrap().scale())
            .sum();
        prop_assert!(total <= star + 1e-9);
    }

    #[test]
    fn point_files_round_trip(raw in prop::collection::vec((-1e6f64..1e6, -1e6f64..1e6), 0..40)) {
        let pts: Vec<Point> = raw.into_iter().map(|(x, y)| Point::new(x, y)).collect();
        let text = write_points(&pts);
        let back = parse_points(&text).unwrap();
        prop_assert_eq!(&back, &pts);
        prop_assert_eq!(write_points(&back), text);
    }
}
