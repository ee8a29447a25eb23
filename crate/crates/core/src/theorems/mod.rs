//! Executable forms of the structural results on free and plus-one
//! generated arrangements. Every checker evaluates the hypotheses, computes
//! the conclusion independently, and returns `Error::Violation` when a
//! satisfied hypothesis meets a failed conclusion.

mod deletion;
mod search;
mod triple;

pub use deletion::{
    combinatorial_deletion_check, conjecture_scan, deletion_construct_pog, relative_criterion,
    CombinatorialDeletion, ConjectureScan, DeletionOutcome, FlatRoot, RelativeCriterion, ScanEntry,
};
pub use search::{
    default_pool, free_additions, free_filtration, FiltrationResult, FreeAddition,
    FreeAdditionsReport,
};
pub use triple::{
    addition_classify, addition_deletion_check, division_check, mat_bch_check,
    restriction_bound_check, AdditionCase, AdditionPrediction, CriterionCheck, DivisionReport,
    MatBchReport, MemberReport, RestrictionBoundReport, TripleReport,
};

use crate::arrangement::Arrangement;
use crate::classify::{classify_any, ClassificationReport, ClassifyOptions};
use crate::error::{Error, Result};

fn report(a: &Arrangement) -> Result<ClassificationReport> {
    classify_any(a, ClassifyOptions::default())
}

fn violation(msg: impl Into<String>) -> Error {
    Error::Violation(msg.into())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(violation(msg()))
    }
}

fn sorted(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable();
    v
}

/// `big` with one copy of `x` removed, if present.
fn remove_one(big: &[u32], x: u32) -> Option<Vec<u32>> {
    let pos = big.iter().position(|&v| v == x)?;
    let mut out = big.to_vec();
    out.remove(pos);
    Some(out)
}

/// The element `x` with `small = big ∖ {x}` as multisets.
fn leftover(big: &[u32], small: &[u32]) -> Option<u32> {
    if big.len() != small.len() + 1 {
        return None;
    }
    let (b, s) = (sorted(big.to_vec()), sorted(small.to_vec()));
    let mut j = 0;
    let mut extra = None;
    for &x in &b {
        if j < s.len() && s[j] == x {
            j += 1;
        } else if extra.is_none() {
            extra = Some(x);
        } else {
            return None;
        }
    }
    extra
}
