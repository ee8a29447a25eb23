use std::collections::HashMap;

/// Exponent vector of a monomial.
pub type Exponent = Vec<u32>;

/// `dim S_d` for `S = K[x_1..x_n]`, i.e. `C(d+n-1, n-1)`; zero for `d < 0`.
pub fn homogeneous_dim(nvars: usize, degree: i64) -> usize {
    if degree < 0 {
        return 0;
    }
    if nvars == 0 {
        return usize::from(degree == 0);
    }
    let d = degree as u128;
    let k = (nvars - 1) as u128;
    // C(d+k, k) computed incrementally; exact at every step.
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc * (d + i) / i;
    }
    acc as usize
}

/// All degree-`degree` monomials in `nvars` variables, lexicographically
/// descending (`x_1^d` first).
pub fn monomial_basis(nvars: usize, degree: u32) -> Vec<Exponent> {
    let mut out = Vec::with_capacity(homogeneous_dim(nvars, degree as i64));
    if nvars == 0 {
        if degree == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut current = vec![0u32; nvars];
    fill(&mut current, 0, degree, &mut out);
    out
}

fn fill(current: &mut Exponent, pos: usize, remaining: u32, out: &mut Vec<Exponent>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(current.clone());
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill(current, pos + 1, remaining - e, out);
    }
    current[pos] = 0;
}

/// Monomial basis of one homogeneous degree together with a reverse index.
#[derive(Debug, Clone)]
pub struct MonomialBasis {
    nvars: usize,
    degree: u32,
    monomials: Vec<Exponent>,
    index: HashMap<Exponent, usize>,
}

impl MonomialBasis {
    pub fn new(nvars: usize, degree: u32) -> Self {
        let monomials = monomial_basis(nvars, degree);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        MonomialBasis {
            nvars,
            degree,
            monomials,
            index,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Exponent] {
        &self.monomials
    }

    pub fn get(&self, i: usize) -> &Exponent {
        &self.monomials[i]
    }

    pub fn index_of(&self, e: &[u32]) -> Option<usize> {
        self.index.get(e).copied()
    }
}

/// Cache of monomial bases by degree for a fixed number of variables.
#[derive(Debug, Clone)]
pub struct BasisCache {
    nvars: usize,
    bases: Vec<MonomialBasis>,
}

impl BasisCache {
    pub fn new(nvars: usize) -> Self {
        BasisCache {
            nvars,
            bases: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&mut self, degree: u32) -> &MonomialBasis {
        while self.bases.len() <= degree as usize {
            let d = self.bases.len() as u32;
            self.bases.push(MonomialBasis::new(self.nvars, d));
        }
        &self.bases[degree as usize]
    }

    /// Make sure every degree up to `degree` is present.
    pub fn ensure(&mut self, degree: u32) {
        self.get(degree);
    }

    /// Borrow a degree that was previously ensured.
    pub fn basis(&self, degree: u32) -> &MonomialBasis {
        &self.bases[degree as usize]
    }
}

pub(crate) fn add_exponents(a: &[u32], b: &[u32]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bases() {
        assert_eq!(monomial_basis(3, 0), vec![vec![0, 0, 0]]);
        assert_eq!(monomial_basis(3, 2).len(), 6);
        assert_eq!(monomial_basis(4, 3).len(), 20);
        assert_eq!(
            monomial_basis(2, 2),
            vec![vec![2, 0], vec![1, 1], vec![0, 2]]
        );
        assert_eq!(monomial_basis(3, 1)[0], vec![1, 0, 0]);
    }

    #[test]
    fn dimension_formula_matches_enumeration() {
        for nvars in 2..=5 {
            for d in 0..=12u32 {
                assert_eq!(
                    monomial_basis(nvars, d).len(),
                    homogeneous_dim(nvars, d as i64),
                    "nvars={nvars} d={d}"
                );
            }
        }
        assert_eq!(homogeneous_dim(3, -1), 0);
    }

    #[test]
    fn basis_is_strictly_descending() {
        let b = monomial_basis(3, 4);
        for w in b.windows(2) {
            assert!(w[0] > w[1]);
        }
    }
}
