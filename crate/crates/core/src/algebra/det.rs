//! Determinants of square polynomial matrices.

use std::collections::HashMap;

use super::poly::Poly;

/// Determinant by Laplace expansion along rows, memoised on the set of
/// columns still available. Exact; intended for the small sizes (ℓ ≤ 6)
/// that Saito matrices have.
pub fn poly_matrix_det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    assert!(n <= 20, "matrix too large for subset expansion");
    for row in m {
        assert_eq!(row.len(), n, "matrix must be square");
    }
    let nvars = m.iter().flatten().next().map_or(0, |p| p.nvars());
    if n == 0 {
        return Poly::one(nvars);
    }
    let mut memo: HashMap<u32, Poly> = HashMap::new();
    minor(m, 0, (1u32 << n) - 1, nvars, &mut memo)
}

fn minor(
    m: &[Vec<Poly>],
    row: usize,
    cols: u32,
    nvars: usize,
    memo: &mut HashMap<u32, Poly>,
) -> Poly {
    if row == m.len() {
        return Poly::one(nvars);
    }
    if let Some(p) = memo.get(&cols) {
        return p.clone();
    }
    let mut acc = Poly::zero(nvars);
    let mut sign_positive = true;
    for c in 0..m.len() {
        if cols & (1 << c) == 0 {
            continue;
        }
        let entry = &m[row][c];
        if !entry.is_zero() {
            let sub = minor(m, row + 1, cols & !(1 << c), nvars, memo);
            if !sub.is_zero() {
                let term = entry * &sub;
                acc = if sign_positive {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
        }
        sign_positive = !sign_positive;
    }
    memo.insert(cols, acc.clone());
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::rat;

    fn x(i: usize) -> Poly {
        Poly::var(3, i)
    }

    #[test]
    fn diagonal() {
        let z = Poly::zero(3);
        let m = vec![
            vec![x(0), z.clone(), z.clone()],
            vec![z.clone(), x(1), z.clone()],
            vec![z.clone(), z.clone(), x(2)],
        ];
        assert_eq!(poly_matrix_det(&m), &(&x(0) * &x(1)) * &x(2));
    }

    #[test]
    fn singular() {
        let m = vec![
            vec![x(0), x(1)],
            vec![x(0).scale(&rat(2)), x(1).scale(&rat(2))],
        ];
        assert!(poly_matrix_det(&m).is_zero());
    }

    #[test]
    fn swapping_rows_negates() {
        let m = vec![
            vec![x(0), &x(1) + &x(2), x(2)],
            vec![&x(0) * &x(1), x(1), Poly::one(3)],
            vec![x(2), x(0), &x(0) - &x(1)],
        ];
        let mut swapped = m.clone();
        swapped.swap(0, 2);
        assert_eq!(poly_matrix_det(&swapped), -&poly_matrix_det(&m));
    }
}
