//! The projective plane PG(2,q): canonical points and lines with dense
//! indices and precomputed incidence.
//!
//! Points and lines share one canonical form (first nonzero coordinate equal
//! to one) and one enumeration order: `[1:x1:x2]` by `(x1, x2)`, then
//! `[0:1:x2]` by `x2`, then `[0:0:1]`. A line with coefficients `(u0,u1,u2)`
//! contains `[x0:x1:x2]` when `u0·x0 + u1·x1 + u2·x2 = 0`.

use std::fmt;

use thiserror::Error;

use crate::gf::{FieldElement, FieldError, FieldSpec};
use crate::linalg;

/// Largest order for which incidence tables are built.
pub const MAX_PLANE_ORDER: u32 = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlaneError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("PG(2,{0}) exceeds the incidence-table cap of q = {MAX_PLANE_ORDER}")]
    TooLarge(u32),
    #[error("all coordinates are zero")]
    ZeroVector,
    #[error("points are equal")]
    SamePoint,
    #[error("lines are equal")]
    SameLine,
    #[error("point index {0} out of range")]
    BadIndex(u32),
    #[error("cannot parse point {0:?}")]
    Parse(String),
}

pub type Coords = [FieldElement; 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    pub index: u32,
    pub coords: Coords,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjLine {
    pub index: u32,
    pub coeffs: Coords,
}

/// PG(2,q) over a fixed field.
#[derive(Clone)]
pub struct Plane {
    field: FieldSpec,
    coords: Vec<Coords>,
    // Row i holds the q+1 points of line i (ascending); likewise for the
    // lines through point i.
    points_on_line: Vec<u32>,
    lines_through_point: Vec<u32>,
}

impl fmt::Debug for Plane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Plane").field("field", &self.field).finish()
    }
}

impl Plane {
    pub fn new(field: FieldSpec) -> Result<Self, PlaneError> {
        let q = field.q();
        if q > MAX_PLANE_ORDER {
            return Err(PlaneError::TooLarge(q));
        }
        let n = (q * q + q + 1) as usize;
        let mut coords = Vec::with_capacity(n);
        for x1 in field.elements() {
            for x2 in field.elements() {
                coords.push([FieldElement::ONE, x1, x2]);
            }
        }
        for x2 in field.elements() {
            coords.push([FieldElement::ZERO, FieldElement::ONE, x2]);
        }
        coords.push([FieldElement::ZERO, FieldElement::ZERO, FieldElement::ONE]);

        let row = q as usize + 1;
        let mut points_on_line = Vec::with_capacity(n * row);
        let mut lines_through_point = vec![Vec::with_capacity(row); n];
        for (l, u) in coords.iter().enumerate() {
            for (p, x) in coords.iter().enumerate() {
                if dot(&field, u, x).is_zero() {
                    points_on_line.push(p as u32);
                    lines_through_point[p].push(l as u32);
                }
            }
        }
        debug_assert_eq!(points_on_line.len(), n * row);
        let lines_through_point = lines_through_point.into_iter().flatten().collect();
        Ok(Plane {
            field,
            coords,
            points_on_line,
            lines_through_point,
        })
    }

    /// PG(2,q) over the default field of order q.
    pub fn of_order(q: u32) -> Result<Self, PlaneError> {
        Plane::new(FieldSpec::of_order(q)?)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    /// q² + q + 1, the number of points (and of lines).
    pub fn size(&self) -> usize {
        self.coords.len()
    }

    pub fn point(&self, index: u32) -> ProjPoint {
        ProjPoint {
            index,
            coords: self.coords[index as usize],
        }
    }

    pub fn line(&self, index: u32) -> ProjLine {
        ProjLine {
            index,
            coeffs: self.coords[index as usize],
        }
    }

    pub fn checked_point(&self, index: u32) -> Result<ProjPoint, PlaneError> {
        if (index as usize) < self.size() {
            Ok(self.point(index))
        } else {
            Err(PlaneError::BadIndex(index))
        }
    }

    pub fn all_points(&self) -> Vec<ProjPoint> {
        (0..self.size() as u32).map(|i| self.point(i)).collect()
    }

    pub fn all_lines(&self) -> Vec<ProjLine> {
        (0..self.size() as u32).map(|i| self.line(i)).collect()
    }

    /// Dense index of a canonical coordinate triple.
    fn index_of_canonical(&self, c: &Coords) -> u32 {
        let q = self.q();
        if c[0] == FieldElement::ONE {
            c[1].value() * q + c[2].value()
        } else if c[1] == FieldElement::ONE {
            q * q + c[2].value()
        } else {
            q * q + q
        }
    }

    fn canonical_index(&self, c: Coords) -> Result<u32, PlaneError> {
        let mut v = c;
        if !linalg::normalize(&self.field, &mut v) {
            return Err(PlaneError::ZeroVector);
        }
        Ok(self.index_of_canonical(&v))
    }

    /// Canonicalizes any nonzero coordinate triple.
    pub fn point_from_coords(&self, c: Coords) -> Result<ProjPoint, PlaneError> {
        Ok(self.point(self.canonical_index(c)?))
    }

    pub fn line_from_coeffs(&self, c: Coords) -> Result<ProjLine, PlaneError> {
        Ok(self.line(self.canonical_index(c)?))
    }

    pub fn point_from_values(&self, v: [u32; 3]) -> Result<ProjPoint, PlaneError> {
        let c = [
            self.field.element(v[0])?,
            self.field.element(v[1])?,
            self.field.element(v[2])?,
        ];
        self.point_from_coords(c)
    }

    /// Index of the line through two distinct points.
    pub fn join_index(&self, a: u32, b: u32) -> u32 {
        let c = cross(&self.field, &self.coords[a as usize], &self.coords[b as usize]);
        self.canonical_index(c).expect("distinct points span a line")
    }

    pub fn line_through(&self, a: &ProjPoint, b: &ProjPoint) -> Result<ProjLine, PlaneError> {
        if a.index == b.index {
            return Err(PlaneError::SamePoint);
        }
        Ok(self.line(self.join_index(a.index, b.index)))
    }

    pub fn meet(&self, l1: &ProjLine, l2: &ProjLine) -> Result<ProjPoint, PlaneError> {
        if l1.index == l2.index {
            return Err(PlaneError::SameLine);
        }
        let c = cross(&self.field, &l1.coeffs, &l2.coeffs);
        self.point_from_coords(c)
    }

    /// Indices of the q+1 points on a line, ascending.
    pub fn point_ids_on(&self, line: u32) -> &[u32] {
        let row = self.q() as usize + 1;
        let start = line as usize * row;
        &self.points_on_line[start..start + row]
    }

    /// Indices of the q+1 lines through a point, ascending.
    pub fn line_ids_through(&self, point: u32) -> &[u32] {
        let row = self.q() as usize + 1;
        let start = point as usize * row;
        &self.lines_through_point[start..start + row]
    }

    pub fn points_on(&self, l: &ProjLine) -> Vec<ProjPoint> {
        self.point_ids_on(l.index).iter().map(|&i| self.point(i)).collect()
    }

    pub fn incident(&self, p: &ProjPoint, l: &ProjLine) -> bool {
        dot(&self.field, &l.coeffs, &p.coords).is_zero()
    }

    /// Whether three points lie on a common line (true for repeated points).
    pub fn collinear(&self, a: &ProjPoint, b: &ProjPoint, c: &ProjPoint) -> bool {
        let rows: Vec<Vec<FieldElement>> =
            [a, b, c].iter().map(|p| p.coords.to_vec()).collect();
        linalg::determinant(&self.field, &rows).is_zero()
    }

    pub fn format_point(&self, p: &ProjPoint) -> String {
        self.format_coords(&p.coords)
    }

    pub fn format_coords(&self, c: &[FieldElement]) -> String {
        let parts: Vec<String> = c.iter().map(|&x| self.field.format(x)).collect();
        format!("[{}]", parts.join(":"))
    }

    /// Parses `[a:b:c]` (commas are accepted as separators too). Any nonzero
    /// scaling is accepted and canonicalized.
    pub fn parse_point(&self, text: &str) -> Result<ProjPoint, PlaneError> {
        let err = || PlaneError::Parse(text.to_string());
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(err)?;
        let sep = if inner.contains(':') { ':' } else { ',' };
        let parts: Vec<&str> = inner.split(sep).collect();
        if parts.len() != 3 {
            return Err(err());
        }
        let mut c = [FieldElement::ZERO; 3];
        for (slot, part) in c.iter_mut().zip(&parts) {
            *slot = self.field.parse(part).map_err(|_| err())?;
        }
        self.point_from_coords(c)
    }
}

pub(crate) fn dot(f: &FieldSpec, u: &Coords, x: &Coords) -> FieldElement {
    let a = f.mul(u[0], x[0]);
    let b = f.mul(u[1], x[1]);
    let c = f.mul(u[2], x[2]);
    f.add(f.add(a, b), c)
}

pub(crate) fn cross(f: &FieldSpec, a: &Coords, b: &Coords) -> Coords {
    let m = |i: usize, j: usize| f.sub(f.mul(a[i], b[j]), f.mul(a[j], b[i]));
    [m(1, 2), m(2, 0), m(0, 1)]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(plane: &Plane, v: [u32; 3]) -> ProjPoint {
        plane.point_from_values(v).unwrap()
    }

    #[test]
    fn point_counts() {
        for (q, n) in [(2, 7), (3, 13), (9, 91)] {
            let plane = Plane::of_order(q).unwrap();
            let pts = plane.all_points();
            assert_eq!(pts.len(), n);
            let mut seen: Vec<_> = pts.iter().map(|p| p.coords).collect();
            seen.sort();
            seen.dedup();
            assert_eq!(seen.len(), n);
        }
    }

    #[test]
    fn enumeration_order_and_indices() {
        let plane = Plane::of_order(3).unwrap();
        assert_eq!(plane.format_point(&plane.point(0)), "[1:0:0]");
        assert_eq!(plane.format_point(&plane.point(1)), "[1:0:1]");
        assert_eq!(plane.format_point(&plane.point(3)), "[1:1:0]");
        assert_eq!(plane.format_point(&plane.point(9)), "[0:1:0]");
        assert_eq!(plane.format_point(&plane.point(12)), "[0:0:1]");
        for p in plane.all_points() {
            assert_eq!(plane.point_from_coords(p.coords).unwrap(), p);
        }
    }

    #[test]
    fn line_through_examples() {
        let plane = Plane::of_order(5).unwrap();
        let l = plane
            .line_through(&pt(&plane, [1, 0, 0]), &pt(&plane, [0, 1, 0]))
            .unwrap();
        assert_eq!(l.coeffs.map(|x| x.value()), [0, 0, 1]);
        let a = pt(&plane, [1, 0, 0]);
        let b = pt(&plane, [1, 1, 1]);
        let l = plane.line_through(&a, &b).unwrap();
        assert_eq!(l.coeffs.map(|x| x.value()), [0, 1, 4]);
        assert_eq!(plane.line_through(&b, &a).unwrap(), l);
        assert_eq!(plane.line_through(&a, &a), Err(PlaneError::SamePoint));
    }

    #[test]
    fn meet_examples() {
        let plane = Plane::of_order(5).unwrap();
        let x0 = plane.line_from_coeffs(plane.point(0).coords).unwrap();
        let x1 = plane.line(25);
        assert_eq!(x1.coeffs.map(|x| x.value()), [0, 1, 0]);
        assert_eq!(
            plane.meet(&x0, &x1).unwrap().coords.map(|x| x.value()),
            [0, 0, 1]
        );
        assert_eq!(plane.meet(&x0, &x0), Err(PlaneError::SameLine));
        let (a, b, c, d) = (plane.point(3), plane.point(17), plane.point(22), plane.point(30));
        let l1 = plane.line_through(&a, &b).unwrap();
        let l2 = plane.line_through(&c, &d).unwrap();
        let m = plane.meet(&l1, &l2).unwrap();
        assert!(plane.incident(&m, &l1) && plane.incident(&m, &l2));
    }

    #[test]
    fn lines_have_q_plus_one_points() {
        for q in [2, 8] {
            let plane = Plane::of_order(q).unwrap();
            for l in plane.all_lines() {
                assert_eq!(plane.points_on(&l).len(), q as usize + 1);
            }
        }
    }

    #[test]
    fn collinearity() {
        let plane = Plane::of_order(3).unwrap();
        let p = |v| pt(&plane, v);
        assert!(plane.collinear(&p([1, 0, 0]), &p([0, 1, 0]), &p([1, 1, 0])));
        assert!(!plane.collinear(&p([1, 0, 0]), &p([0, 1, 0]), &p([0, 0, 1])));
        assert!(plane.collinear(&p([1, 2, 0]), &p([1, 1, 0]), &p([0, 1, 0])));
        assert!(plane.collinear(&p([1, 2, 0]), &p([1, 2, 0]), &p([0, 1, 0])));
    }

    #[test]
    fn parse_accepts_noncanonical_scalings() {
        let plane = Plane::of_order(5).unwrap();
        assert_eq!(plane.parse_point("[2:4:2]").unwrap(), pt(&plane, [1, 2, 1]));
        assert_eq!(plane.parse_point("[4,3,1]").unwrap(), pt(&plane, [4, 3, 1]));
        assert!(plane.parse_point("[0:0:0]").is_err());
        assert!(plane.parse_point("1:2:3").is_err());
        let p4 = Plane::new(FieldSpec::new(2, 2, Some(vec![1, 1, 1])).unwrap()).unwrap();
        let x = p4.parse_point("[α:α^2:1]").unwrap();
        assert_eq!(p4.format_point(&x), "[1:a:a^2]");
    }

    #[test]
    fn too_large_plane_rejected() {
        assert_eq!(Plane::of_order(128).unwrap_err(), PlaneError::TooLarge(128));
    }
}
