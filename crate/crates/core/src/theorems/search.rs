//! Searches: free filtrations and free additions from a candidate pool.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use super::{ensure, report, sorted};
use crate::algebra::{kernel, rank, QMatrix, Rational};
use crate::arrangement::{Arrangement, Hyperplane};
use crate::classify::{free_exponents, VerdictSummary};
use crate::combinatorics::intersection_lattice;
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct FiltrationResult {
    /// Hyperplane indices in insertion order, or `None` if no filtration
    /// exists.
    pub ordering: Option<Vec<usize>>,
    /// Exponents of `A_1, …, A_n` along the ordering.
    pub prefix_exponents: Vec<Vec<u32>>,
    /// Distinct sub-arrangements classified during the search.
    pub subsets_examined: usize,
}

/// Removed index and the exponents left behind, one entry per stage.
type Chain = Vec<(usize, Vec<u32>)>;

struct FiltrationSearch<'a> {
    a: &'a Arrangement,
    dead: HashSet<u128>,
    examined: usize,
}

impl FiltrationSearch<'_> {
    fn members(&self, mask: u128) -> Vec<usize> {
        (0..self.a.len()).filter(|&i| mask >> i & 1 == 1).collect()
    }

    /// Peel hyperplanes off the free set `mask` one at a time, keeping every
    /// stage free. Returns the removal order and exponents, largest first.
    fn descend(&mut self, mask: u128) -> Result<Option<Chain>> {
        if mask.count_ones() <= 1 {
            return Ok(Some(Vec::new()));
        }
        for i in self.members(mask) {
            let sub = mask & !(1u128 << i);
            if self.dead.contains(&sub) {
                continue;
            }
            self.examined += 1;
            let Some(exp) = free_exponents(&self.a.subarrangement(&self.members(sub))?)? else {
                self.dead.insert(sub);
                continue;
            };
            if let Some(mut rest) = self.descend(sub)? {
                rest.push((i, exp));
                return Ok(Some(rest));
            }
            self.dead.insert(sub);
        }
        Ok(None)
    }
}

/// Depth-first search for `∅ = A_0 ⊂ A_1 ⊂ ⋯ ⊂ A_n = A` with every `A_i`
/// free. Sub-arrangements already known to admit no filtration are
/// memoized.
pub fn free_filtration(a: &Arrangement) -> Result<FiltrationResult> {
    let n = a.len();
    if n > 128 {
        return Err(Error::NotApplicable(format!(
            "filtration search on {n} hyperplanes"
        )));
    }
    let none = |examined| FiltrationResult {
        ordering: None,
        prefix_exponents: Vec::new(),
        subsets_examined: examined,
    };
    let Some(top) = free_exponents(a)? else {
        return Ok(none(1));
    };
    if n == 0 {
        return Ok(FiltrationResult {
            ordering: Some(Vec::new()),
            prefix_exponents: Vec::new(),
            subsets_examined: 1,
        });
    }
    let full = if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    };
    let mut search = FiltrationSearch {
        a,
        dead: HashSet::new(),
        examined: 1,
    };
    let Some(chain) = search.descend(full)? else {
        return Ok(none(search.examined));
    };
    // `chain` lists (removed index, exponents after removal), smallest stage
    // first; the last survivor is the first hyperplane.
    let removed: BTreeSet<usize> = chain.iter().map(|(i, _)| *i).collect();
    let first = (0..n)
        .find(|i| !removed.contains(i))
        .expect("one hyperplane survives");
    let mut ordering = vec![first];
    let mut prefix_exponents = Vec::with_capacity(n);
    for (_, exp) in &chain {
        prefix_exponents.push(exp.clone());
    }
    ordering.extend(chain.iter().map(|(i, _)| *i));
    prefix_exponents.push(top);
    Ok(FiltrationResult {
        ordering: Some(ordering),
        prefix_exponents,
        subsets_examined: search.examined,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FreeAddition {
    pub hyperplane: String,
    pub exponents: Vec<u32>,
    /// `|B^L|` for `B = A ∪ {L}`.
    pub restriction_size: usize,
    /// `|A| − |B^L|`.
    pub size_gap: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FreeAdditionsReport {
    pub arrangement: VerdictSummary,
    pub candidates: usize,
    /// Distinct pool entries dropped because they already belong to `A`.
    pub filtered: usize,
    pub additions: Vec<FreeAddition>,
    /// The uniqueness regime: strictly plus-one generated with level above
    /// every exponent.
    pub unique_regime: bool,
}

/// Classify `A ∪ {L}` for every `L` in the pool. In the uniqueness regime at
/// most one addition may be free, and it must have `exp(B) = POexp(A)` and
/// `|A| − |B^L|` equal to the level.
pub fn free_additions(a: &Arrangement, pool: &[Hyperplane]) -> Result<FreeAdditionsReport> {
    let mut seen = HashSet::new();
    let fresh: Vec<&Hyperplane> = pool.iter().filter(|h| seen.insert((*h).clone())).collect();
    let filtered = fresh.iter().filter(|h| a.contains(h)).count();
    let candidates: Vec<&Hyperplane> = fresh.into_iter().filter(|h| !a.contains(h)).collect();
    let hits: Vec<Option<FreeAddition>> = candidates
        .par_iter()
        .map(|&h| -> Result<Option<FreeAddition>> {
            let b = a.add(h.clone())?;
            let Some(exponents) = free_exponents(&b)? else {
                return Ok(None);
            };
            let restriction_size = b.restrict(b.len() - 1)?.arrangement.len();
            Ok(Some(FreeAddition {
                hyperplane: h.to_string(),
                exponents: sorted(exponents),
                restriction_size,
                size_gap: a.len() as i64 - restriction_size as i64,
            }))
        })
        .collect::<Result<_>>()?;
    let additions: Vec<FreeAddition> = hits.into_iter().flatten().collect();

    let summary = report(a)?.summary();
    let unique_regime = summary.strict == Some(true)
        && match (&summary.exponents, summary.level) {
            (Some(e), Some(level)) => e.iter().all(|&x| level > x),
            _ => false,
        };
    if unique_regime {
        ensure(additions.len() <= 1, || {
            format!(
                "{} free additions in the uniqueness regime",
                additions.len()
            )
        })?;
        let poexp = summary.exponents.clone().expect("POG exponents");
        let level = summary.level.expect("POG level") as i64;
        for hit in &additions {
            ensure(hit.exponents == poexp, || {
                format!(
                    "free addition {} has exponents {:?}, POexp {poexp:?}",
                    hit.hyperplane, hit.exponents
                )
            })?;
            ensure(hit.size_gap == level, || {
                format!(
                    "free addition {}: |A| − |B^L| = {} but level {level}",
                    hit.hyperplane, hit.size_gap
                )
            })?;
        }
    }
    Ok(FreeAdditionsReport {
        arrangement: summary,
        candidates: candidates.len(),
        filtered,
        additions,
        unique_regime,
    })
}

/// Hyperplanes spanned by two codimension-two flats of `A`, excluding the
/// members of `A`, in a deterministic order.
pub fn default_pool(a: &Arrangement) -> Vec<Hyperplane> {
    let n = a.nvars();
    if n < 2 {
        return Vec::new();
    }
    let lat = intersection_lattice(a);
    let flats = lat.flats(2);
    let mut out = BTreeSet::new();
    for (p, f) in flats.iter().enumerate() {
        for g in &flats[p + 1..] {
            let rows: Vec<Vec<Rational>> = f.basis.iter().chain(&g.basis).cloned().collect();
            let m = QMatrix::from_rows(n, rows);
            if rank(&m) != n - 1 {
                continue;
            }
            if let Some(normal) = kernel(&m).into_iter().next() {
                if let Ok(h) = Hyperplane::new(normal) {
                    if !a.contains(&h) {
                        out.insert(h);
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn check_ordering(a: &Arrangement, r: &FiltrationResult) {
        let ord = r.ordering.as_ref().expect("filtration");
        assert_eq!(ord.len(), a.len());
        assert_eq!(r.prefix_exponents.len(), a.len());
        for k in 1..=a.len() {
            let sub = a.subarrangement(&ord[..k]).unwrap();
            assert_eq!(
                free_exponents(&sub).unwrap().map(sorted),
                Some(sorted(r.prefix_exponents[k - 1].clone()))
            );
        }
    }

    #[test]
    fn filtrations() {
        let b = catalog::boolean(3).unwrap();
        let r = free_filtration(&b).unwrap();
        check_ordering(&b, &r);
        assert!(free_filtration(&catalog::tangent())
            .unwrap()
            .ordering
            .is_none());
        let f = catalog::factor();
        let r = free_filtration(&f).unwrap();
        check_ordering(&f, &r);
    }

    #[test]
    fn pool_and_additions() {
        let t = catalog::tangent();
        let coords: Vec<Hyperplane> = (0..3)
            .map(|i| {
                let mut v = vec![0; 3];
                v[i] = 1;
                Hyperplane::from_i64(&v).unwrap()
            })
            .collect();
        let r = free_additions(&t, &coords).unwrap();
        assert_eq!((r.candidates, r.filtered), (0, 3));
        assert!(r.additions.is_empty());

        let shi = catalog::shi_b(2).unwrap();
        let z = shi.hyperplanes()[0].clone();
        let del = shi.delete(0).unwrap();
        let r = free_additions(&del, &[z]).unwrap();
        assert_eq!(r.additions.len(), 1);
        assert_eq!(r.additions[0].exponents, vec![1, 4, 4]);
        assert_eq!(r.additions[0].size_gap, 4);

        let pool = default_pool(&t);
        assert!(pool.iter().all(|h| !t.contains(h)));
        assert!(!pool.is_empty());
    }
}
