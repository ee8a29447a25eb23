//! Shared generators and independent oracles for the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use arrfree_core::{Arrangement, Hyperplane};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// Random essential arrangement of `size` distinct planes with integer
/// coefficients in `-range..=range`.
pub fn random_arrangement(
    rng: &mut ChaCha8Rng,
    nvars: usize,
    size: usize,
    range: i64,
) -> Arrangement {
    loop {
        let mut hs: Vec<Hyperplane> = Vec::new();
        while hs.len() < size {
            let form: Vec<i64> = (0..nvars).map(|_| rng.gen_range(-range..=range)).collect();
            if form.iter().all(|&c| c == 0) {
                continue;
            }
            let h = Hyperplane::from_i64(&form).unwrap();
            if !hs.contains(&h) {
                hs.push(h);
            }
        }
        let a = Arrangement::new(nvars, hs).unwrap();
        if a.is_essential() {
            return a;
        }
    }
}

/// Random hyperplane outside `a`.
pub fn random_plane(rng: &mut ChaCha8Rng, a: &Arrangement, range: i64) -> Hyperplane {
    loop {
        let form: Vec<i64> = (0..a.nvars())
            .map(|_| rng.gen_range(-range..=range))
            .collect();
        if let Ok(h) = Hyperplane::from_i64(&form) {
            if !a.contains(&h) {
                return h;
            }
        }
    }
}

/// Rank by plain Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let Some(cols) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        let prow: Vec<Q> = rows[r].iter().map(|x| x / &pivot).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        rows[r] = prow;
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// χ(A;t) by Whitney's subset sum, coefficients of t^0..t^ℓ.
pub fn whitney_chi(a: &Arrangement) -> Vec<i64> {
    let n = a.len();
    let l = a.nvars();
    let mut coeffs = vec![0i64; l + 1];
    for mask in 0u32..(1 << n) {
        let rows: Vec<Vec<Q>> = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| a.hyperplanes()[i].form().to_vec())
            .collect();
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        coeffs[l - rank(rows)] += sign;
    }
    coeffs
}

fn monomials(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    if nvars == 1 {
        return vec![vec![degree]];
    }
    let mut out = Vec::new();
    for first in (0..=degree).rev() {
        for mut rest in monomials(nvars - 1, degree - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

type Poly = BTreeMap<Vec<u32>, Q>;

/// Remainder of `x^e` on division by the linear form (leading variable its
/// first nonzero coordinate): rewrite the leading variable until it is gone.
fn remainder(e: &[u32], form: &[Q], memo: &mut HashMap<Vec<u32>, Poly>) -> Poly {
    if let Some(r) = memo.get(e) {
        return r.clone();
    }
    let p = form.iter().position(|c| !c.is_zero()).unwrap();
    let mut out = Poly::new();
    if e[p] == 0 {
        out.insert(e.to_vec(), Q::one());
    } else {
        // x_p = -(Σ_{j≠p} a_j x_j) / a_p modulo α.
        for (j, c) in form.iter().enumerate() {
            if j == p || c.is_zero() {
                continue;
            }
            let mut f = e.to_vec();
            f[p] -= 1;
            f[j] += 1;
            let coeff = -(c / &form[p]);
            for (m, v) in remainder(&f, form, memo) {
                let slot = out.entry(m).or_insert_with(Q::zero);
                *slot += &coeff * v;
            }
        }
        out.retain(|_, v| !v.is_zero());
    }
    memo.insert(e.to_vec(), out.clone());
    out
}

/// `dim D(A)_d` from the defining conditions `α_H | θ(α_H)` with
/// remainders computed by division.
pub fn slice_dim_oracle(a: &Arrangement, degree: u32) -> usize {
    let l = a.nvars();
    let mons = monomials(l, degree);
    let unknowns = l * mons.len();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for h in a.hyperplanes() {
        let form = h.form();
        let mut memo = HashMap::new();
        let mut by_mono: BTreeMap<Vec<u32>, Vec<Q>> = BTreeMap::new();
        for (k, e) in mons.iter().enumerate() {
            let r = remainder(e, form, &mut memo);
            for i in 0..l {
                if form[i].is_zero() {
                    continue;
                }
                for (m, v) in &r {
                    let row = by_mono
                        .entry(m.clone())
                        .or_insert_with(|| vec![Q::zero(); unknowns]);
                    row[i * mons.len() + k] += &form[i] * v;
                }
            }
        }
        rows.extend(
            by_mono
                .into_values()
                .filter(|r| r.iter().any(|x| !x.is_zero())),
        );
    }
    unknowns - rank(rows)
}
