//! Arc predicates in PG(2,q).
//!
//! * an **arc** has no three collinear points;
//! * a **generalized arc** has no six points on a conic, reducible conics
//!   included;
//! * a **Veronesian arc** is both.
//!
//! Completeness has two equivalent readings. [`is_complete`] tries every
//! extension point directly; [`is_complete_by_coverage`] checks that the
//! conics through 5-subsets (and, for the arc kinds, the lines through
//! 2-subsets) cover the plane. A point extends the set exactly when nothing
//! covers it.

pub mod certificate;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conics;
use crate::plane::{Plane, ProjPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArcKind {
    Arc,
    Veronesian,
    Generalized,
}

impl ArcKind {
    pub const ALL: [ArcKind; 3] = [ArcKind::Arc, ArcKind::Veronesian, ArcKind::Generalized];

    pub fn name(self) -> &'static str {
        match self {
            ArcKind::Arc => "arc",
            ArcKind::Veronesian => "veronesian",
            ArcKind::Generalized => "generalized",
        }
    }

    /// Whether the kind forbids three collinear points.
    pub fn needs_arc(self) -> bool {
        matches!(self, ArcKind::Arc | ArcKind::Veronesian)
    }

    /// Whether the kind forbids six points on a conic.
    pub fn needs_conic_check(self) -> bool {
        matches!(self, ArcKind::Veronesian | ArcKind::Generalized)
    }
}

impl fmt::Display for ArcKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ArcKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "arc" => Ok(ArcKind::Arc),
            "veronesian" | "v" => Ok(ArcKind::Veronesian),
            "generalized" | "g" => Ok(ArcKind::Generalized),
            other => Err(format!("unknown arc kind {other:?}")),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArcError {
    #[error("point set is not a valid {0} arc")]
    Invalid(ArcKind),
    #[error("line {line} meets a generalized arc of size {size} in {count} points")]
    FourSecant { line: u32, count: usize, size: usize },
}

/// Lines meeting `s` in at least two points, with the points they contain.
pub fn secants(plane: &Plane, s: &[ProjPoint]) -> BTreeMap<u32, Vec<ProjPoint>> {
    let mut out: BTreeMap<u32, Vec<ProjPoint>> = BTreeMap::new();
    for (a, b) in s.iter().tuple_combinations() {
        let l = plane.join_index(a.index, b.index);
        let entry = out.entry(l).or_default();
        for p in [a, b] {
            if !entry.contains(p) {
                entry.push(*p);
            }
        }
    }
    for pts in out.values_mut() {
        pts.sort();
    }
    out
}

pub fn is_arc(plane: &Plane, s: &[ProjPoint]) -> bool {
    secants(plane, s).values().all(|pts| pts.len() <= 2)
}

/// No six points of `s` on a common conic.
pub fn is_generalized_arc(plane: &Plane, s: &[ProjPoint]) -> bool {
    if s.len() < 6 {
        return true;
    }
    let lines = secants(plane, s);
    if lines.values().any(|pts| pts.len() >= 4) {
        return false;
    }
    // Two disjoint 3-secants form a line pair through six points.
    let triples: Vec<&Vec<ProjPoint>> = lines.values().filter(|pts| pts.len() == 3).collect();
    for (a, b) in triples.iter().tuple_combinations() {
        if a.iter().all(|p| !b.contains(p)) {
            return false;
        }
    }
    for five in s.iter().copied().combinations(5) {
        let pencil = conics::conics_through(plane, &five).expect("five points");
        let hit = s
            .iter()
            .filter(|p| !five.contains(p))
            .any(|p| pencil.covers(plane, p));
        if hit {
            return false;
        }
    }
    true
}

pub fn is_veronesian_arc(plane: &Plane, s: &[ProjPoint]) -> bool {
    is_arc(plane, s) && is_generalized_arc(plane, s)
}

pub fn is_valid(plane: &Plane, s: &[ProjPoint], kind: ArcKind) -> bool {
    match kind {
        ArcKind::Arc => is_arc(plane, s),
        ArcKind::Veronesian => is_veronesian_arc(plane, s),
        ArcKind::Generalized => is_generalized_arc(plane, s),
    }
}

/// Complete: no point outside `s` can be added keeping the kind.
pub fn is_complete(plane: &Plane, s: &[ProjPoint], kind: ArcKind) -> Result<bool, ArcError> {
    if !is_valid(plane, s, kind) {
        return Err(ArcError::Invalid(kind));
    }
    Ok(extension_points(plane, s, kind).is_empty())
}

/// Points whose addition keeps `s` a valid arc of the given kind.
pub fn extension_points(plane: &Plane, s: &[ProjPoint], kind: ArcKind) -> Vec<ProjPoint> {
    let mut ext = s.to_vec();
    ext.push(plane.point(0));
    plane
        .all_points()
        .into_iter()
        .filter(|p| !s.contains(p))
        .filter(|p| {
            *ext.last_mut().unwrap() = *p;
            is_valid(plane, &ext, kind)
        })
        .collect()
}

/// Points covered by the conics through 5-subsets and/or the lines through
/// 2-subsets of `s`, depending on the kind.
pub fn coverage(plane: &Plane, s: &[ProjPoint], kind: ArcKind) -> Vec<bool> {
    let mut covered = vec![false; plane.size()];
    if kind.needs_conic_check() && s.len() >= 5 {
        for five in s.iter().copied().combinations(5) {
            let pencil = conics::conics_through(plane, &five).expect("five points");
            for i in pencil.covered_points(plane) {
                covered[i as usize] = true;
            }
        }
    }
    if kind.needs_arc() {
        for l in secants(plane, s).keys() {
            for &i in plane.point_ids_on(*l) {
                covered[i as usize] = true;
            }
        }
    }
    covered
}

/// Completeness as plane coverage by the conics and lines spanned by `s`.
pub fn is_complete_by_coverage(
    plane: &Plane,
    s: &[ProjPoint],
    kind: ArcKind,
) -> Result<bool, ArcError> {
    if !is_valid(plane, s, kind) {
        return Err(ArcError::Invalid(kind));
    }
    let mut covered = coverage(plane, s, kind);
    for p in s {
        covered[p.index as usize] = true;
    }
    Ok(covered.into_iter().all(|c| c))
}

/// Number of lines meeting `s` in exactly three points. A line with four or
/// more points is an error once `|s| ≥ 6`, since `s` could not then be a
/// generalized arc.
pub fn count_three_secants(plane: &Plane, s: &[ProjPoint]) -> Result<usize, ArcError> {
    let lines = secants(plane, s);
    if s.len() >= 6 {
        if let Some((&line, pts)) = lines.iter().find(|(_, pts)| pts.len() >= 4) {
            return Err(ArcError::FourSecant {
                line,
                count: pts.len(),
                size: s.len(),
            });
        }
    }
    Ok(lines.values().filter(|pts| pts.len() == 3).count())
}

/// Splits off the 3-secant with the least line index: returns the remaining
/// points and the collinear triple, or `None` when there is no 3-secant.
pub fn strip_three_secant(
    plane: &Plane,
    s: &[ProjPoint],
) -> Option<(Vec<ProjPoint>, [ProjPoint; 3])> {
    let lines = secants(plane, s);
    let (_, triple) = lines.iter().find(|(_, pts)| pts.len() == 3)?;
    let rest = s.iter().copied().filter(|p| !triple.contains(p)).collect();
    Some((rest, [triple[0], triple[1], triple[2]]))
}
