use super::field::{Field, FqElem};

/// Row-reduces `rows` in place and returns the pivot column of each nonzero row.
pub fn row_reduce(field: &Field, rows: &mut Vec<Vec<FqElem>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = field.inv(rows[r][c]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c];
                for k in 0..rows[i].len() {
                    let sub = field.mul(f, rows[r][k]);
                    rows[i][k] = field.sub(rows[i][k], sub);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(field: &Field, rows: &[Vec<FqElem>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    row_reduce(field, &mut m, ncols).len()
}

/// Solution set of `A z = b` as a particular solution plus a nullspace basis,
/// or `None` when the system is inconsistent. Each row is `[A | b]`.
pub fn solve_affine(field: &Field, augmented: &[Vec<FqElem>], ncols: usize) -> Option<(Vec<FqElem>, Vec<Vec<FqElem>>)> {
    let mut m = augmented.to_vec();
    let pivots = row_reduce(field, &mut m, ncols + 1);
    // a pivot in the right-hand column means 0 = nonzero
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut particular = vec![FqElem::ZERO; ncols];
    for (row, &c) in m.iter().zip(&pivots) {
        particular[c] = row[ncols];
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&fc| {
            let mut v = vec![FqElem::ZERO; ncols];
            v[fc] = FqElem::ONE;
            for (row, &c) in m.iter().zip(&pivots) {
                v[c] = field.neg(row[fc]);
            }
            v
        })
        .collect();
    Some((particular, basis))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_solve() {
        let f = Field::prime(5).unwrap();
        let e = |v: &[i64]| v.iter().map(|&x| f.from_int(x)).collect::<Vec<_>>();
        let a = vec![e(&[1, 2, 3]), e(&[2, 4, 2])];
        assert_eq!(rank(&f, &a, 3), 2);
        let aug = vec![e(&[1, 2, 3, 1]), e(&[2, 4, 6, 2])];
        let (p, basis) = solve_affine(&f, &aug, 3).unwrap();
        assert_eq!(basis.len(), 2);
        assert_eq!(f.dot(&aug[0][..3], &p), f.from_int(1));
        for b in &basis {
            assert!(f.dot(&aug[0][..3], b).is_zero());
        }
        let bad = vec![e(&[1, 1, 0]), e(&[1, 1, 1])];
        assert!(solve_affine(&f, &bad, 2).is_none());
    }
}
