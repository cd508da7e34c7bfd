//! Gaussian elimination over a finite field for the small matrices used by
//! conic fitting and the Veronese rank tests.

use crate::gf::{FieldElement, FieldSpec};

/// Row-reduces `rows` in place to reduced row echelon form and returns the
/// pivot columns.
pub fn row_reduce(f: &FieldSpec, rows: &mut [Vec<FieldElement>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(rows[r][c]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c];
                for (x, &pv) in row.iter_mut().zip(&pivot).take(ncols) {
                    *x = f.sub(*x, f.mul(factor, pv));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank(f: &FieldSpec, rows: &[Vec<FieldElement>]) -> usize {
    let mut m = rows.to_vec();
    row_reduce(f, &mut m).len()
}

/// Basis of the right nullspace `{x : rows · x = 0}`.
pub fn nullspace(f: &FieldSpec, rows: &[Vec<FieldElement>], ncols: usize) -> Vec<Vec<FieldElement>> {
    let mut m = rows.to_vec();
    let pivots = row_reduce(f, &mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![FieldElement::ZERO; ncols];
            v[fc] = FieldElement::ONE;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m[row][fc]);
            }
            v
        })
        .collect()
}

/// Determinant of a square matrix.
pub fn determinant(f: &FieldSpec, rows: &[Vec<FieldElement>]) -> FieldElement {
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut det = FieldElement::ONE;
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return FieldElement::ZERO;
        };
        if pr != c {
            m.swap(pr, c);
            det = f.neg(det);
        }
        det = f.mul(det, m[c][c]);
        let inv = f.inv(m[c][c]).expect("pivot is nonzero");
        let pivot = m[c].clone();
        for row in m.iter_mut().skip(c + 1) {
            if row[c].is_zero() {
                continue;
            }
            let factor = f.mul(row[c], inv);
            for (x, &pv) in row.iter_mut().zip(&pivot).skip(c) {
                *x = f.sub(*x, f.mul(factor, pv));
            }
        }
    }
    det
}

/// Scales a nonzero vector so its first nonzero entry is one.
pub fn normalize(f: &FieldSpec, v: &mut [FieldElement]) -> bool {
    let Some(lead) = v.iter().copied().find(|x| !x.is_zero()) else {
        return false;
    };
    let inv = f.inv(lead).expect("lead is nonzero");
    for x in v.iter_mut() {
        *x = f.mul(*x, inv);
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(f: &FieldSpec, rows: &[&[u32]]) -> Vec<Vec<FieldElement>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| f.element(x).unwrap()).collect())
            .collect()
    }

    #[test]
    fn nullspace_of_two_points_gives_their_line() {
        let f = FieldSpec::of_order(5).unwrap();
        let rows = m(&f, &[&[1, 0, 0], &[1, 1, 1]]);
        let ns = nullspace(&f, &rows, 3);
        assert_eq!(ns.len(), 1);
        let mut v = ns[0].clone();
        normalize(&f, &mut v);
        assert_eq!(v.iter().map(|x| x.value()).collect::<Vec<_>>(), vec![0, 1, 4]);
    }

    #[test]
    fn determinant_and_rank_agree() {
        let f = FieldSpec::of_order(7).unwrap();
        let a = m(&f, &[&[1, 2, 3], &[4, 5, 6], &[0, 1, 3]]);
        let b = m(&f, &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 3]]);
        assert!(!determinant(&f, &a).is_zero());
        assert_eq!(rank(&f, &a), 3);
        assert!(determinant(&f, &b).is_zero());
        assert_eq!(rank(&f, &b), 2);
    }
}
