//! Exact planar convex hull on rational points.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::quadfield::PlanePoint;

type IPoint = (BigInt, BigInt);

fn cross_i(o: &IPoint, a: &IPoint, b: &IPoint) -> BigInt {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

/// Strictly convex hull, counter-clockwise, starting from the
/// lexicographically smallest point. Collinear boundary points are dropped.
/// Degenerate inputs return the one or two extreme points.
pub fn convex_hull(points: &[PlanePoint]) -> Vec<PlanePoint> {
    if points.is_empty() {
        return Vec::new();
    }
    // Scale to a common denominator so the predicates run on integers.
    let mut den = BigInt::one();
    for p in points {
        den = den.lcm(p.x.denom()).lcm(p.y.denom());
    }
    let mut pts: Vec<(IPoint, usize)> = points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let x = p.x.numer() * (&den / p.x.denom());
            let y = p.y.numer() * (&den / p.y.denom());
            ((x, y), i)
        })
        .collect();
    pts.sort();
    pts.dedup_by(|a, b| a.0 == b.0);
    if pts.len() <= 2 {
        return pts.into_iter().map(|(_, i)| points[i].clone()).collect();
    }
    let mut lower: Vec<(IPoint, usize)> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !cross_i(&lower[lower.len() - 2].0, &lower[lower.len() - 1].0, &p.0).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<(IPoint, usize)> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !cross_i(&upper[upper.len() - 2].0, &upper[upper.len() - 1].0, &p.0).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower.into_iter().map(|(_, i)| points[i].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_with_interior_and_edge_points() {
        let pts: Vec<PlanePoint> = [(0, 0), (2, 0), (2, 2), (0, 2), (1, 1), (1, 0), (2, 1)]
            .iter()
            .map(|&(x, y)| PlanePoint::from_ints(x, y))
            .collect();
        let h = convex_hull(&pts);
        assert_eq!(h.len(), 4);
        assert_eq!(h[0], PlanePoint::from_ints(0, 0));
        assert_eq!(h[1], PlanePoint::from_ints(2, 0));
    }

    #[test]
    fn collinear_input_keeps_endpoints() {
        let pts: Vec<PlanePoint> = (0..5).map(|k| PlanePoint::from_ints(k, 2 * k)).collect();
        assert_eq!(convex_hull(&pts).len(), 2);
    }
}
