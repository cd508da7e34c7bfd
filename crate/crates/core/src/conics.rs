//! Ternary quadratic forms over GF(q) and the Veronese embedding.
//!
//! Coefficients use the monomial order `(x0², x0x1, x0x2, x1², x1x2, x2²)`,
//! which is also the coordinate order of the Veronese map
//! `[x0:x1:x2] ↦ [x0²:x0x1:x0x2:x1²:x1x2:x2²]`. A conic therefore vanishes at
//! a point exactly when its coefficient vector is orthogonal to the point's
//! Veronese image.
//!
//! Classification works from the zero set (point count plus a contained-line
//! scan), which behaves the same in every characteristic.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{FieldElement, FieldSpec};
use crate::linalg;
use crate::plane::{Plane, PlaneError, ProjLine, ProjPoint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConicError {
    #[error("the zero form is not a conic")]
    ZeroForm,
    #[error("a conic pencil needs between 1 and 6 points, got {0}")]
    PointCount(usize),
    #[error("nuclei exist only in even characteristic (q = {0})")]
    OddCharacteristic(u32),
    #[error("conic is {0:?}, not irreducible")]
    NotIrreducible(ConicClass),
    #[error("the six points of PG(5,q) are not distinct")]
    DuplicatePoints,
    #[error("zero set of {size} points matches no conic class")]
    Unclassifiable { size: usize },
    #[error(transparent)]
    Plane(#[from] PlaneError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConicClass {
    Irreducible,
    TwoLines,
    DoubleLine,
    ConjugatePair,
}

/// A point of PG(5,q), canonically scaled.
pub type P5Point = [FieldElement; 6];

/// A nonzero quadratic form up to scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Conic {
    coeffs: [FieldElement; 6],
}

impl Conic {
    pub fn new(f: &FieldSpec, coeffs: [FieldElement; 6]) -> Result<Self, ConicError> {
        let mut c = coeffs;
        if !linalg::normalize(f, &mut c) {
            return Err(ConicError::ZeroForm);
        }
        Ok(Conic { coeffs: c })
    }

    pub fn from_values(f: &FieldSpec, v: [u32; 6]) -> Result<Self, ConicError> {
        let mut c = [FieldElement::ZERO; 6];
        for (slot, &x) in c.iter_mut().zip(&v) {
            *slot = f.element(x).map_err(PlaneError::from)?;
        }
        Conic::new(f, c)
    }

    pub fn coeffs(&self) -> &[FieldElement; 6] {
        &self.coeffs
    }

    pub fn eval(&self, plane: &Plane, p: &ProjPoint) -> FieldElement {
        dot6(plane.field(), &self.coeffs, &veronese(plane, p))
    }

    /// Zero set as ascending point indices.
    pub fn zero_set(&self, plane: &Plane) -> Vec<u32> {
        (0..plane.size() as u32)
            .filter(|&i| self.eval(plane, &plane.point(i)).is_zero())
            .collect()
    }

    pub fn format(&self, plane: &Plane) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|&x| plane.field().format(x)).collect();
        format!("({})", parts.join(","))
    }
}

/// All quadratic forms vanishing on a point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConicPencil {
    pub basis: Vec<Conic>,
}

impl ConicPencil {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Whether some nonzero form of the pencil vanishes at `p`. A pencil of
    /// dimension two or more always has one, since vanishing at `p` is a
    /// single linear condition.
    pub fn covers(&self, plane: &Plane, p: &ProjPoint) -> bool {
        match self.basis.len() {
            0 => false,
            1 => self.basis[0].eval(plane, p).is_zero(),
            _ => true,
        }
    }

    /// Union of the zero sets of every form in the pencil.
    pub fn covered_points(&self, plane: &Plane) -> Vec<u32> {
        (0..plane.size() as u32)
            .filter(|&i| self.covers(plane, &plane.point(i)))
            .collect()
    }
}

pub(crate) fn dot6(f: &FieldSpec, a: &[FieldElement; 6], b: &[FieldElement; 6]) -> FieldElement {
    a.iter()
        .zip(b)
        .fold(FieldElement::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// The Veronese image `[x0²:x0x1:x0x2:x1²:x1x2:x2²]`. Canonical points map to
/// canonically scaled images (the first nonzero coordinate stays one).
pub fn veronese(plane: &Plane, p: &ProjPoint) -> P5Point {
    let f = plane.field();
    let [x0, x1, x2] = p.coords;
    [
        f.mul(x0, x0),
        f.mul(x0, x1),
        f.mul(x0, x2),
        f.mul(x1, x1),
        f.mul(x1, x2),
        f.mul(x2, x2),
    ]
}

/// Basis of the pencil of conics through 1 to 6 points.
pub fn conics_through(plane: &Plane, points: &[ProjPoint]) -> Result<ConicPencil, ConicError> {
    if points.is_empty() || points.len() > 6 {
        return Err(ConicError::PointCount(points.len()));
    }
    let f = plane.field();
    let rows: Vec<Vec<FieldElement>> = points.iter().map(|p| veronese(plane, p).to_vec()).collect();
    let basis = linalg::nullspace(f, &rows, 6)
        .into_iter()
        .map(|v| {
            let c: [FieldElement; 6] = v.try_into().expect("six coefficients");
            Conic::new(f, c).expect("nullspace vectors are nonzero")
        })
        .collect();
    Ok(ConicPencil { basis })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub class: ConicClass,
    pub points: Vec<ProjPoint>,
}

fn contains_line(plane: &Plane, zero: &[u32]) -> bool {
    let mut member = vec![false; plane.size()];
    for &i in zero {
        member[i as usize] = true;
    }
    (0..plane.size() as u32).any(|l| plane.point_ids_on(l).iter().all(|&p| member[p as usize]))
}

pub fn classify(plane: &Plane, c: &Conic) -> Result<Classification, ConicError> {
    let zero = c.zero_set(plane);
    let q = plane.q() as usize;
    let class = match zero.len() {
        1 => ConicClass::ConjugatePair,
        n if n == 2 * q + 1 => ConicClass::TwoLines,
        n if n == q + 1 => {
            if contains_line(plane, &zero) {
                ConicClass::DoubleLine
            } else {
                ConicClass::Irreducible
            }
        }
        size => return Err(ConicError::Unclassifiable { size }),
    };
    Ok(Classification {
        class,
        points: zero.iter().map(|&i| plane.point(i)).collect(),
    })
}

/// The line through `p` meeting the conic's zero set only at `p`.
fn tangent_at(plane: &Plane, member: &[bool], p: u32) -> Option<u32> {
    plane.line_ids_through(p).iter().copied().find(|&l| {
        plane
            .point_ids_on(l)
            .iter()
            .all(|&x| x == p || !member[x as usize])
    })
}

/// Common point of the q+1 tangents of an irreducible conic, q even.
pub fn nucleus(plane: &Plane, c: &Conic) -> Result<ProjPoint, ConicError> {
    if plane.q() % 2 == 1 {
        return Err(ConicError::OddCharacteristic(plane.q()));
    }
    let cls = classify(plane, c)?;
    if cls.class != ConicClass::Irreducible {
        return Err(ConicError::NotIrreducible(cls.class));
    }
    let mut member = vec![false; plane.size()];
    for p in &cls.points {
        member[p.index as usize] = true;
    }
    let tangents: Vec<ProjLine> = cls
        .points
        .iter()
        .map(|p| {
            let l = tangent_at(plane, &member, p.index).expect("every conic point has a tangent");
            plane.line(l)
        })
        .collect();
    let n = plane.meet(&tangents[0], &tangents[1])?;
    debug_assert!(tangents.iter().all(|t| plane.incident(&n, t)));
    debug_assert!(!member[n.index as usize]);
    Ok(n)
}

/// Whether six distinct points of PG(5,q) span the whole space, i.e. no
/// hyperplane contains all of them.
pub fn is_5arc_in_p5(f: &FieldSpec, points6: &[P5Point; 6]) -> Result<bool, ConicError> {
    let mut canon: Vec<P5Point> = points6.to_vec();
    for v in canon.iter_mut() {
        if !linalg::normalize(f, v) {
            return Err(ConicError::ZeroForm);
        }
    }
    let mut sorted = canon.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != 6 {
        return Err(ConicError::DuplicatePoints);
    }
    let rows: Vec<Vec<FieldElement>> = canon.iter().map(|v| v.to_vec()).collect();
    Ok(!linalg::determinant(f, &rows).is_zero())
}
