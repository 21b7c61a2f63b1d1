//! Exact rational linear algebra: reduced row echelon form and nullspace
//! bases with integer-primitive, sign-normalized vectors, so that computed
//! bases are reproducible golden data.

use crate::exact::Rat;
use rug::{Integer, Rational};

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let nrows = rows.len();
    if nrows == 0 {
        return Vec::new();
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..ncols {
        let Some(pr) = (r..nrows).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = Rational::from(1) / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x *= inv.clone();
        }
        for i in 0..nrows {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let sub = Rational::from(&rows[r][j] * &f);
                    rows[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Scale a rational vector to primitive integer entries with positive
/// leading coefficient.
pub fn primitive_scale(v: &[Rat]) -> Vec<Rat> {
    let mut lcm = Integer::from(1);
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<Integer> = v
        .iter()
        .map(|x| Rational::from(x * Rational::from(&lcm)).numer().clone())
        .collect();
    let mut g = Integer::new();
    for x in &ints {
        g = g.gcd(x);
    }
    if g == 0 {
        return v.to_vec();
    }
    let lead_neg = ints.iter().find(|x| **x != 0).map(|x| *x < 0).unwrap_or(false);
    let sign = if lead_neg { -1 } else { 1 };
    ints.iter()
        .map(|x| Rational::from(x / &g) * Rational::from(sign))
        .collect()
}

/// Canonical nullspace basis of a rational matrix: reduced echelon form of
/// the solution space, each vector integer-primitive with positive pivot.
///
/// The basis is independent of the input row order (the tests check this).
pub fn nullspace(matrix: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut rows: Vec<Vec<Rat>> = matrix.to_vec();
    for row in &rows {
        assert_eq!(row.len(), ncols);
    }
    let pivots = rref(&mut rows);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let free: Vec<usize> = (0..ncols).filter(|c| !pivot_set.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut v = vec![Rational::new(); ncols];
        v[fc] = Rational::from(1);
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -rows[r][fc].clone();
        }
        basis.push(primitive_scale(&v));
    }
    // echelonize the basis itself for a canonical presentation
    let mut b = basis.clone();
    rref(&mut b);
    b.iter().map(|v| primitive_scale(v)).collect()
}

/// Rank of a rational matrix.
pub fn rank(matrix: &[Vec<Rat>]) -> usize {
    let mut rows = matrix.to_vec();
    rref(&mut rows).len()
}

/// Solve membership: is `target` in the row span of `basis`?
pub fn in_span(basis: &[Vec<Rat>], target: &[Rat]) -> bool {
    let mut rows = basis.to_vec();
    let r0 = rref(&mut rows).len();
    let mut rows2 = basis.to_vec();
    rows2.push(target.to_vec());
    let r1 = rref(&mut rows2).len();
    r0 == r1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};
    use proptest::prelude::*;

    #[test]
    fn simple_nullspace() {
        // x + y + z = 0, x - z = 0  ->  span{(1, -2, 1)}
        let m = vec![
            vec![rat_int(1), rat_int(1), rat_int(1)],
            vec![rat_int(1), rat_int(0), rat_int(-1)],
        ];
        let ns = nullspace(&m, 3);
        assert_eq!(ns, vec![vec![rat_int(1), rat_int(-2), rat_int(1)]]);
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![rat(2, 3), rat(-4, 3), rat_int(2)];
        assert_eq!(
            primitive_scale(&v),
            vec![rat_int(1), rat_int(-2), rat_int(3)]
        );
    }

    proptest! {
        // The canonical basis does not depend on row ordering.
        #[test]
        fn basis_independent_of_row_order(seed in 0u64..500) {
            let mut rows = Vec::new();
            let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
            let mut next = || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 33) % 7) as i64 - 3
            };
            for _ in 0..4 {
                rows.push((0..6).map(|_| rat_int(next())).collect::<Vec<_>>());
            }
            let a = nullspace(&rows, 6);
            let mut shuffled = rows.clone();
            shuffled.reverse();
            shuffled.swap(0, 1);
            let b = nullspace(&shuffled, 6);
            prop_assert_eq!(a, b);
        }

        // Every basis vector is annihilated by the matrix.
        #[test]
        fn nullspace_vectors_annihilate(seed in 0u64..200) {
            let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(7);
            let mut next = || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 33) % 9) as i64 - 4
            };
            let rows: Vec<Vec<Rat>> = (0..3)
                .map(|_| (0..5).map(|_| rat_int(next())).collect())
                .collect();
            for v in nullspace(&rows, 5) {
                for row in &rows {
                    let dot: Rat = row.iter().zip(&v).map(|(a, b)| Rational::from(a * b)).sum();
                    prop_assert_eq!(dot, Rational::new());
                }
            }
        }
    }
}
