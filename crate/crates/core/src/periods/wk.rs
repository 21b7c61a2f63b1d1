//! The spaces W_k = {P ∈ C_{k-2}[X] : P|_{1+S} = P|_{1+U+U²} = 0}, their
//! exact integer bases, and the printed coefficient-condition matrix.

use super::{slash_matrix, MAT_S, MAT_U, MAT_U2};
use crate::exact::{binomial, Rat};
use crate::qseries::{dim_mk, dim_sk};
use crate::relations::linalg::nullspace;
use rug::{Integer, Rational};

/// The stacked integer matrix of the printed coefficient conditions
/// a_m + (-1)^m a_{w-m} = 0 and Σ_m C_w(m,j) a_m = 0 with
/// C_w(m,j) = C(m,j) for m > j and C(w-m, w-j) otherwise
/// (dimensions 2(w+1) × (w+1)).
#[derive(Debug, Clone)]
pub struct RelationMatrix {
    pub weight: u32,
    pub rows: Vec<Vec<Integer>>,
}

pub fn relation_matrix(weight: u32) -> RelationMatrix {
    let w = (weight - 2) as usize;
    let mut rows = Vec::with_capacity(2 * (w + 1));
    for m in 0..=w {
        let mut row = vec![Integer::new(); w + 1];
        row[m] += Integer::from(1);
        let sign = if m % 2 == 0 { 1 } else { -1 };
        row[w - m] += Integer::from(sign);
        rows.push(row);
    }
    for j in 0..=w {
        let mut row = vec![Integer::new(); w + 1];
        for m in 0..=w {
            let c = if m > j {
                binomial(m as i64, j as i64)
            } else {
                binomial((w - m) as i64, (w - j) as i64)
            };
            row[m] = c;
        }
        rows.push(row);
    }
    RelationMatrix { weight, rows }
}

/// Exact canonical basis of W_k from the direct slash-action nullspace:
/// coefficient vectors (c_0,…,c_{k-2}) with Σ over {1+S} and {1+U+U²}
/// vanishing, in integer-primitive reduced echelon form.
pub fn w_k_basis(weight: u32) -> Vec<Vec<Rat>> {
    let w = (weight - 2) as usize;
    let id: Vec<Vec<Integer>> = (0..=w)
        .map(|i| {
            (0..=w)
                .map(|j| Integer::from(if i == j { 1 } else { 0 }))
                .collect()
        })
        .collect();
    let add = |a: &[Vec<Integer>], b: &[Vec<Integer>]| -> Vec<Vec<Integer>> {
        a.iter()
            .zip(b)
            .map(|(r1, r2)| r1.iter().zip(r2).map(|(x, y)| Integer::from(x + y)).collect())
            .collect()
    };
    let s = add(&id, &slash_matrix(weight, MAT_S));
    let u = add(&add(&id, &slash_matrix(weight, MAT_U)), &slash_matrix(weight, MAT_U2));
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for m in [s, u] {
        for row in m {
            rows.push(row.into_iter().map(Rational::from).collect());
        }
    }
    nullspace(&rows, w + 1)
}

/// dim W_k = dim M_k + dim S_k (Eichler–Shimura), used as the trusted count.
pub fn w_k_dimension(weight: u32) -> u32 {
    dim_mk(weight).unwrap() + dim_sk(weight).unwrap()
}
