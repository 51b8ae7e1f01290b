use alloc::vec::Vec;

use super::{Exponent, PolyError, RatPoly2};

/// Convex hull of the support of a polynomial, counterclockwise, starting at
/// the lexicographically smallest exponent. Collinear boundary points are
/// dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    vertices: Vec<Exponent>,
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn signed(e: Exponent) -> (i64, i64) {
    (e.0 as i64, e.1 as i64)
}

impl NewtonPolygon {
    pub fn of(p: &RatPoly2) -> Result<Self, PolyError> {
        if p.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok(Self::hull(p.support().collect()))
    }

    /// Andrew's monotone chain.
    pub fn hull(mut pts: Vec<Exponent>) -> Self {
        pts.sort_unstable();
        pts.dedup();
        if pts.len() <= 2 {
            return NewtonPolygon { vertices: pts };
        }
        let mut lower: Vec<Exponent> = Vec::new();
        for &q in &pts {
            while lower.len() >= 2
                && cross(
                    signed(lower[lower.len() - 2]),
                    signed(lower[lower.len() - 1]),
                    signed(q),
                ) <= 0
            {
                lower.pop();
            }
            lower.push(q);
        }
        let mut upper: Vec<Exponent> = Vec::new();
        for &q in pts.iter().rev() {
            while upper.len() >= 2
                && cross(
                    signed(upper[upper.len() - 2]),
                    signed(upper[upper.len() - 1]),
                    signed(q),
                ) <= 0
            {
                upper.pop();
            }
            upper.push(q);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        // all points collinear: keep the two extremes
        if lower.len() == 2
            || lower.len() > 2
                && lower
                    .iter()
                    .all(|&v| cross(signed(lower[0]), signed(lower[1]), signed(v)) == 0)
        {
            let first = pts[0];
            let last = *pts.last().unwrap();
            return NewtonPolygon {
                vertices: alloc::vec![first, last],
            };
        }
        NewtonPolygon { vertices: lower }
    }

    pub fn vertices(&self) -> &[Exponent] {
        &self.vertices
    }

    /// Boundary edges as vertex pairs, in counterclockwise order. A segment
    /// yields its two orientations.
    pub fn edges(&self) -> Vec<(Exponent, Exponent)> {
        let v = &self.vertices;
        match v.len() {
            0 | 1 => Vec::new(),
            2 => alloc::vec![(v[0], v[1]), (v[1], v[0])],
            n => (0..n).map(|k| (v[k], v[(k + 1) % n])).collect(),
        }
    }

    /// Primitive inward normal `(p, q)` of each edge, for a counterclockwise
    /// traversal (the interior lies to the left).
    pub fn inward_normals(&self) -> Vec<(i64, i64)> {
        use num_integer::Integer;
        self.edges()
            .into_iter()
            .map(|(a, b)| {
                let (dx, dy) = (b.0 as i64 - a.0 as i64, b.1 as i64 - a.1 as i64);
                let g = dx.gcd(&dy);
                (-dy / g, dx / g)
            })
            .collect()
    }

    /// Whether the lattice point lies in the closed hull.
    pub fn contains(&self, pt: Exponent) -> bool {
        let v = &self.vertices;
        let q = signed(pt);
        match v.len() {
            0 => false,
            1 => v[0] == pt,
            2 => {
                let (a, b) = (signed(v[0]), signed(v[1]));
                cross(a, b, q) == 0 && (q.0 - a.0) * (q.0 - b.0) <= 0 && (q.1 - a.1) * (q.1 - b.1) <= 0
            }
            n => (0..n).all(|k| cross(signed(v[k]), signed(v[(k + 1) % n]), q) >= 0),
        }
    }

    /// Whether this hull lies inside `other`.
    pub fn is_contained_in(&self, other: &NewtonPolygon) -> bool {
        self.vertices.iter().all(|&v| other.contains(v))
    }
}

impl RatPoly2 {
    pub fn newton_polygon(&self) -> Result<NewtonPolygon, PolyError> {
        NewtonPolygon::of(self)
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::p;
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(p("y^2 - x^3").newton_polygon().unwrap().vertices(), &[(0, 2), (3, 0)]);
        assert_eq!(p("1").newton_polygon().unwrap().vertices(), &[(0, 0)]);
        let g = p("y^3 - 20*x*y^2 + 16*y^2 + 45*x^3*y - 40*x^2*y - 27*x^5 + 25*x^4");
        let tri = NewtonPolygon::hull(alloc::vec![(0, 0), (6, 0), (0, 3)]);
        assert!(g.newton_polygon().unwrap().is_contained_in(&tri));
        assert!(RatPoly2::zero().newton_polygon().is_err());
    }

    #[test]
    fn hull_drops_interior_and_collinear() {
        let h = NewtonPolygon::hull(alloc::vec![(0, 0), (1, 0), (2, 0), (0, 2), (1, 1), (0, 1)]);
        assert_eq!(h.vertices(), &[(0, 0), (2, 0), (0, 2)]);
        assert_eq!(NewtonPolygon::hull(h.vertices().to_vec()), h);
        let seg = NewtonPolygon::hull(alloc::vec![(0, 3), (1, 2), (3, 0)]);
        assert_eq!(seg.vertices(), &[(0, 3), (3, 0)]);
    }

    #[test]
    fn normals_point_inward() {
        let h = NewtonPolygon::hull(alloc::vec![(0, 0), (2, 0), (0, 2)]);
        assert_eq!(h.inward_normals(), alloc::vec![(0, 1), (-1, -1), (1, 0)]);
        let cusp = p("y^2 - x^3").newton_polygon().unwrap();
        assert_eq!(cusp.inward_normals(), alloc::vec![(2, 3), (-2, -3)]);
    }
}
