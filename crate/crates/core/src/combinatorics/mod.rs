//! Intersection lattice, Möbius function, characteristic and Poincaré
//! polynomials, Betti numbers.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::matrix::reduce_against;
use crate::algebra::{kernel, rat, rref_exact, QMatrix, Rational, UniPoly};
use crate::arrangement::{Arrangement, Hyperplane};
use crate::error::{Error, Result};

/// A flat `X ∈ L(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    /// Sorted indices of the hyperplanes containing `X`.
    pub members: Vec<usize>,
    pub codim: usize,
    /// Reduced echelon kernel basis of the member forms (a basis of `X`).
    pub basis: Vec<Vec<Rational>>,
}

#[derive(Clone, Debug)]
pub struct IntersectionLattice {
    nvars: usize,
    size: usize,
    /// `flats[k]` holds the flats of codimension `k`, sorted by members.
    flats: Vec<Vec<Flat>>,
    mobius: Vec<Vec<i64>>,
}

/// Rows in reduced echelon form with their pivots; used to test whether a
/// further form lies in the span.
struct Span {
    rows: QMatrix,
    pivots: Vec<usize>,
}

impl Span {
    fn of(forms: &[&[Rational]], nvars: usize) -> Span {
        let m = QMatrix::from_rows(nvars, forms.iter().map(|f| f.to_vec()).collect());
        let (rows, pivots) = rref_exact(&m);
        Span { rows, pivots }
    }

    fn contains(&self, v: &[Rational]) -> bool {
        let mut w = v.to_vec();
        reduce_against(&mut w, &self.rows, &self.pivots);
        w.iter().all(|x| x.is_zero())
    }
}

pub fn intersection_lattice(a: &Arrangement) -> IntersectionLattice {
    let l = a.nvars();
    let hs = a.hyperplanes();
    let closure = |members: &[usize]| -> (Vec<usize>, usize) {
        let forms: Vec<&[Rational]> = members.iter().map(|&i| hs[i].form()).collect();
        let span = Span::of(&forms, l);
        let all = (0..hs.len())
            .filter(|&j| members.contains(&j) || span.contains(hs[j].form()))
            .collect();
        (all, span.pivots.len())
    };
    let mut flats: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new()]];
    loop {
        let prev = flats.last().expect("nonempty");
        let mut next: HashMap<Vec<usize>, ()> = HashMap::new();
        for x in prev {
            for j in 0..hs.len() {
                if x.binary_search(&j).is_ok() {
                    continue;
                }
                let mut m = x.clone();
                m.push(j);
                m.sort_unstable();
                let (closed, _) = closure(&m);
                next.insert(closed, ());
            }
        }
        if next.is_empty() {
            break;
        }
        let mut layer: Vec<Vec<usize>> = next.into_keys().collect();
        layer.sort();
        flats.push(layer);
    }
    let flats: Vec<Vec<Flat>> = flats
        .into_iter()
        .enumerate()
        .map(|(codim, layer)| {
            layer
                .into_iter()
                .map(|members| {
                    let basis = if members.is_empty() {
                        identity_basis(l)
                    } else {
                        let m = QMatrix::from_rows(
                            l,
                            members.iter().map(|&i| hs[i].form().to_vec()).collect(),
                        );
                        kernel(&m)
                    };
                    Flat {
                        members,
                        codim,
                        basis,
                    }
                })
                .collect()
        })
        .collect();
    let mobius = compute_mobius(&flats);
    IntersectionLattice {
        nvars: l,
        size: hs.len(),
        flats,
        mobius,
    }
}

fn identity_basis(l: usize) -> Vec<Vec<Rational>> {
    (0..l)
        .map(|i| (0..l).map(|j| rat(i64::from(i == j))).collect())
        .collect()
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

fn compute_mobius(flats: &[Vec<Flat>]) -> Vec<Vec<i64>> {
    let mut mu: Vec<Vec<i64>> = Vec::with_capacity(flats.len());
    for (k, layer) in flats.iter().enumerate() {
        let mut row = Vec::with_capacity(layer.len());
        for x in layer {
            if k == 0 {
                row.push(1);
                continue;
            }
            let mut s = 0i64;
            for (kk, lower) in flats[..k].iter().enumerate() {
                for (y, m) in lower.iter().zip(&mu[kk]) {
                    if is_subset(&y.members, &x.members) {
                        s += m;
                    }
                }
            }
            row.push(-s);
        }
        mu.push(row);
    }
    mu
}

impl IntersectionLattice {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Rank of the arrangement (codimension of the center).
    pub fn rank(&self) -> usize {
        self.flats.len() - 1
    }

    pub fn flats(&self, codim: usize) -> &[Flat] {
        self.flats.get(codim).map_or(&[], |v| v.as_slice())
    }

    pub fn mobius_values(&self, codim: usize) -> &[i64] {
        self.mobius.get(codim).map_or(&[], |v| v.as_slice())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Flat, i64)> {
        self.flats
            .iter()
            .zip(&self.mobius)
            .flat_map(|(fs, ms)| fs.iter().zip(ms.iter().copied()))
    }

    pub fn len(&self) -> usize {
        self.flats.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn mobius(&self, members: &[usize]) -> Option<i64> {
        self.flats
            .iter()
            .zip(&self.mobius)
            .find_map(|(fs, ms)| fs.iter().position(|f| f.members == members).map(|i| ms[i]))
    }

    /// The flat with exactly these members, if any.
    pub fn find(&self, members: &[usize]) -> Option<&Flat> {
        self.flats.iter().flatten().find(|f| f.members == members)
    }

    /// `χ(A;t) = Σ μ(X) t^{dim X}`.
    pub fn char_poly(&self) -> CharPoly {
        let mut coeffs = vec![0i64; self.nvars + 1];
        for (f, m) in self.iter() {
            coeffs[self.nvars - f.codim] += m;
        }
        CharPoly::new(self.nvars, self.size, UniPoly::from_i64(&coeffs))
    }
}

/// `χ(A;t)` together with the arrangement data needed for derived views.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    nvars: usize,
    size: usize,
    chi: UniPoly,
}

impl CharPoly {
    pub fn new(nvars: usize, size: usize, chi: UniPoly) -> Self {
        CharPoly { nvars, size, chi }
    }

    pub fn chi(&self) -> &UniPoly {
        &self.chi
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// `π(A;t) = (−t)^ℓ χ(A;−t⁻¹)`.
    pub fn poincare(&self) -> UniPoly {
        self.chi.reciprocal_signed(self.nvars)
    }

    /// `χ₀(A;t) = χ(A;t)/(t−1)`.
    pub fn reduced(&self) -> Result<UniPoly> {
        if self.size == 0 {
            return Err(Error::EmptyArrangement);
        }
        let (q, r) = self.chi.div_rem(&UniPoly::linear_root(rat(1)));
        debug_assert!(r.is_zero());
        Ok(q)
    }

    fn signed(poly: &UniPoly, top: usize, i: usize) -> i64 {
        if i > top {
            return 0;
        }
        let c = poly.coeff(top - i).to_integer();
        let c = if i % 2 == 1 { -c } else { c };
        c.to_i64().expect("Betti number fits in i64")
    }

    /// `b_i(A)` with `χ(A;t) = Σ (−1)^i b_i t^{ℓ−i}`.
    pub fn betti(&self, i: usize) -> i64 {
        Self::signed(&self.chi, self.nvars, i)
    }

    /// `b_i⁰(A)` with `χ₀(A;t) = Σ (−1)^i b_i⁰ t^{ℓ−1−i}`.
    pub fn betti0(&self, i: usize) -> Result<i64> {
        let r = self.reduced()?;
        Ok(Self::signed(&r, self.nvars - 1, i))
    }

    pub fn bettis(&self) -> Vec<i64> {
        (0..=self.nvars).map(|i| self.betti(i)).collect()
    }

    /// Integer roots with multiplicity if χ splits over ℚ, else `None`.
    pub fn rational_roots(&self) -> Option<Vec<Rational>> {
        let (roots, rest) = self.chi.rational_roots();
        (rest.degree() == Some(0)).then_some(roots)
    }

    /// True iff `χ(A;t) = ∏ (t − d_i)`.
    pub fn factors_as(&self, exponents: &[usize]) -> bool {
        let roots: Vec<Rational> = exponents.iter().map(|&d| rat(d as i64)).collect();
        self.chi == UniPoly::from_roots(&roots)
    }

    pub fn report(&self) -> CharPolyReport {
        let reduced = self.reduced().ok();
        CharPolyReport {
            chi: self.chi.to_string(),
            poincare: self.poincare().to_string(),
            reduced: reduced.as_ref().map(|r| r.to_string()),
            chi_coefficients: integer_strings(&self.chi),
            betti: self.bettis(),
            betti0: reduced
                .map(|_| {
                    (0..self.nvars)
                        .map(|i| self.betti0(i).unwrap_or(0))
                        .collect()
                })
                .unwrap_or_default(),
            roots: self
                .rational_roots()
                .map(|r| r.iter().map(crate::algebra::format_rational).collect()),
        }
    }
}

fn integer_strings(p: &UniPoly) -> Vec<String> {
    p.coeffs()
        .iter()
        .map(crate::algebra::format_rational)
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CharPolyReport {
    pub chi: String,
    pub poincare: String,
    pub reduced: Option<String>,
    /// Coefficients of χ, constant term first.
    pub chi_coefficients: Vec<String>,
    pub betti: Vec<i64>,
    pub betti0: Vec<i64>,
    /// Roots of χ when it splits over ℚ.
    pub roots: Option<Vec<String>>,
}

pub fn char_poly(a: &Arrangement) -> CharPoly {
    intersection_lattice(a).char_poly()
}

pub fn betti(a: &Arrangement, i: usize) -> i64 {
    char_poly(a).betti(i)
}

pub fn betti0(a: &Arrangement, i: usize) -> Result<i64> {
    char_poly(a).betti0(i)
}

/// `χ(A;t) = χ(A∖{H};t) − χ(A^H;t)`, each side computed from its own lattice.
pub fn deletion_restriction_check(a: &Arrangement, i: usize) -> Result<bool> {
    let del = a.delete(i)?;
    let res = a.restrict(i)?.arrangement;
    let lhs = char_poly(a).chi().clone();
    // χ(A^H) lives in one fewer variable; as a polynomial in t it is the
    // same object.
    let rhs = char_poly(&del).chi().sub(char_poly(&res).chi());
    Ok(lhs == rhs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundBranch {
    /// `n_L ≤ a+1`
    Lower,
    /// `b+1 ≤ n_L`
    Upper,
    Both,
    /// Neither inequality holds.
    Violated,
}

#[derive(Clone, Debug, Serialize)]
pub struct RestrictionBound {
    pub a: String,
    pub b: String,
    pub n_l: usize,
    pub in_arrangement: bool,
    pub branch: BoundBranch,
    /// `n_L = a+1` or `n_L = b+1`.
    pub equality: bool,
}

/// Number of distinct lines `H ∩ L`, `H ∈ A ∖ {L}`.
pub fn intersection_count(a: &Arrangement, l: &Hyperplane) -> Result<usize> {
    let b = match a.index_of(l) {
        Some(_) => a.clone(),
        None => a.add(l.clone())?,
    };
    let idx = b.index_of(l).expect("present");
    Ok(b.restrict(idx)?.arrangement.len())
}

/// Evaluate `n_L ≤ a+1 or b+1 ≤ n_L` for `ℓ = 3` and
/// `χ(A;t) = (t−1)(t−a)(t−b)` with rational `a ≤ b`.
pub fn restriction_size_bound_check(a: &Arrangement, l: &Hyperplane) -> Result<RestrictionBound> {
    if a.nvars() != 3 {
        return Err(Error::WrongDimension {
            expected: 3,
            found: a.nvars(),
        });
    }
    let cp = char_poly(a);
    let red = cp.reduced()?;
    let (roots, rest) = red.rational_roots();
    if roots.len() != 2 || rest.degree() != Some(0) {
        return Err(Error::NotApplicable(
            "χ₀ does not split into rational linear factors".into(),
        ));
    }
    let (ra, rb) = (roots[0].clone(), roots[1].clone());
    let n = intersection_count(a, l)?;
    let nq = Rational::from_integer(BigInt::from(n));
    let one = rat(1);
    let lower = nq <= &ra + &one;
    let upper = &rb + &one <= nq;
    let branch = match (lower, upper) {
        (true, true) => BoundBranch::Both,
        (true, false) => BoundBranch::Lower,
        (false, true) => BoundBranch::Upper,
        (false, false) => BoundBranch::Violated,
    };
    let equality = nq == &ra + &one || nq == &rb + &one;
    Ok(RestrictionBound {
        a: crate::algebra::format_rational(&ra),
        b: crate::algebra::format_rational(&rb),
        n_l: n,
        in_arrangement: a.contains(l),
        branch,
        equality,
    })
}

/// True when every root of `p` is a rational number and none is negative.
pub fn has_nonnegative_rational_roots(p: &UniPoly) -> bool {
    let (roots, rest) = p.rational_roots();
    rest.degree() == Some(0) && roots.iter().all(|r| !r.is_negative())
}
