#![allow(dead_code)]

use genarc::arcs::{is_valid, secants, ArcKind};
use genarc::conics::{is_5arc_in_p5, veronese, P5Point};
use genarc::gf::{FieldElement, FieldSpec};
use genarc::plane::{Plane, ProjPoint};
use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;

/// No six of the Veronese images lie in a hyperplane of PG(5,q).
pub fn veronese_oracle(plane: &Plane, s: &[ProjPoint]) -> bool {
    let images: Vec<P5Point> = s.iter().map(|p| veronese(plane, p)).collect();
    images.iter().combinations(6).all(|six| {
        let six: [P5Point; 6] = std::array::from_fn(|i| *six[i]);
        is_5arc_in_p5(plane.field(), &six).expect("distinct images")
    })
}

/// Up to `max` distinct random points.
pub fn random_set<R: Rng>(plane: &Plane, rng: &mut R, max: usize) -> Vec<ProjPoint> {
    let k = rng.gen_range(1..=max);
    let mut idx: Vec<u32> = (0..plane.size() as u32).collect();
    idx.shuffle(rng);
    idx[..k].iter().map(|&i| plane.point(i)).collect()
}

/// A random valid set grown greedily, stopped at a random target size or
/// when nothing more fits (so some of these are complete).
pub fn random_valid<R: Rng>(plane: &Plane, rng: &mut R, kind: ArcKind) -> Vec<ProjPoint> {
    let target = rng.gen_range(3..=plane.size());
    let mut idx: Vec<u32> = (0..plane.size() as u32).collect();
    idx.shuffle(rng);
    let mut s = Vec::new();
    for i in idx {
        if s.len() == target {
            break;
        }
        s.push(plane.point(i));
        if !is_valid(plane, &s, kind) {
            s.pop();
        }
    }
    s
}

/// Valid for `kind` with at most three points on a line: the space the
/// searches explore.
pub fn in_search_space(plane: &Plane, s: &[ProjPoint], kind: ArcKind) -> bool {
    is_valid(plane, s, kind) && secants(plane, s).values().all(|l| l.len() <= 3)
}

/// Every valid set of `kind` (as sorted index lists), by orderly extension;
/// with `restricted`, only those in the search space.
pub fn all_valid(plane: &Plane, kind: ArcKind, restricted: bool) -> Vec<Vec<u32>> {
    fn grow(plane: &Plane, kind: ArcKind, restricted: bool, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(cur.clone());
        let from = cur.last().map_or(0, |&l| l + 1);
        for i in from..plane.size() as u32 {
            cur.push(i);
            let pts: Vec<_> = cur.iter().map(|&j| plane.point(j)).collect();
            let ok = if restricted { in_search_space(plane, &pts, kind) } else { is_valid(plane, &pts, kind) };
            if ok {
                grow(plane, kind, restricted, cur, out);
            }
            cur.pop();
        }
    }
    let mut out = Vec::new();
    grow(plane, kind, restricted, &mut Vec::new(), &mut out);
    out
}

/// Coefficient vectors over GF(q) whose first nonzero entry is 1.
pub fn normalized_forms(f: &FieldSpec) -> Vec<[FieldElement; 6]> {
    let q = f.q();
    let mut out = Vec::new();
    for code in 1..q.pow(6) {
        let mut v = [0u32; 6];
        let mut c = code;
        for slot in v.iter_mut().rev() {
            *slot = c % q;
            c /= q;
        }
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            out.push(v.map(|x| f.element(x).unwrap()));
        }
    }
    out
}

