//! Text rendering of command results; JSON goes through serde directly.

use std::fmt::Write;

use serde::Serialize;

use arrfree_core::arrangement::write_arrangement;
use arrfree_core::catalog::CatalogEntry;
use arrfree_core::classify::{is_free, ReportJson, VerdictSummary};
use arrfree_core::combinatorics::CharPolyReport;
use arrfree_core::derivations::minimal_generators;
use arrfree_core::theorems::{
    CombinatorialDeletion, ConjectureScan, DivisionReport, FiltrationResult, FreeAdditionsReport,
    MemberReport, RelativeCriterion, TripleReport,
};
use arrfree_core::{Arrangement, Multiplicity};

pub trait Render {
    fn render(&self) -> String;
}

fn tuple(v: &[u32]) -> String {
    let parts: Vec<String> = v.iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or("-".into(), T::to_string)
}

fn summary_line(s: &VerdictSummary) -> String {
    let mut out = s.verdict.to_string();
    if let Some(e) = &s.exponents {
        out += &format!(" {}", tuple(e));
    }
    if let Some(l) = s.level {
        out += &format!(" level {l}");
    }
    out
}

#[derive(Serialize)]
pub struct ChiOut {
    pub size: usize,
    pub nvars: usize,
    pub rank: usize,
    #[serde(flatten)]
    pub report: CharPolyReport,
}

impl ChiOut {
    pub fn new(a: &Arrangement, report: CharPolyReport) -> Self {
        ChiOut {
            size: a.len(),
            nvars: a.nvars(),
            rank: a.rank(),
            report,
        }
    }
}

impl Render for ChiOut {
    fn render(&self) -> String {
        let r = &self.report;
        let mut s = String::new();
        let _ = writeln!(
            s,
            "|A| = {}, {} variables, rank {}",
            self.size, self.nvars, self.rank
        );
        let _ = writeln!(s, "chi(t)  = {}", r.chi);
        let _ = writeln!(s, "pi(t)   = {}", r.poincare);
        if let Some(c0) = &r.reduced {
            let _ = writeln!(s, "chi0(t) = {c0}");
        }
        let _ = writeln!(s, "b       = {:?}", r.betti);
        if !r.betti0.is_empty() {
            let _ = writeln!(s, "b0      = {:?}", r.betti0);
        }
        if let Some(roots) = &r.roots {
            let _ = writeln!(s, "roots   = {}", roots.join(", "));
        }
        s
    }
}

impl Render for ReportJson {
    fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "verdict: {}", self.verdict);
        if let Some(e) = &self.exponents {
            let label = if self.level.is_some() {
                "poexp"
            } else {
                "exponents"
            };
            let _ = writeln!(s, "{label}: {}", tuple(e));
        }
        if let Some(l) = self.level {
            let _ = writeln!(s, "level: {l}");
        }
        if let Some(st) = self.strict {
            let _ = writeln!(s, "strict: {st}");
        }
        let _ = writeln!(s, "generator degrees: {}", tuple(&self.generator_degrees));
        let _ = writeln!(s, "syzygy degrees: {}", tuple(&self.syzygy_degrees));
        let _ = writeln!(s, "bound: {}", self.bound);
        let _ = writeln!(s, "verified to: {}", self.verified_to);
        let _ = writeln!(s, "hilbert checked to: {}", opt(&self.hilbert_checked_to));
        if let Some(o) = &self.obstruction {
            let _ = writeln!(s, "obstruction: {o}");
        }
        let _ = writeln!(s, "generators:");
        for (k, g) in self.generators.iter().enumerate() {
            let _ = writeln!(s, "  g{k} = {g}");
        }
        if let Some(rel) = &self.relation {
            let _ = writeln!(s, "relation coefficients:");
            for (k, r) in rel.iter().enumerate() {
                let _ = writeln!(s, "  r{k} = {r}");
            }
        }
        s
    }
}

/// `classify` on a file with multiplicities: freeness only.
#[derive(Serialize)]
pub struct MultiOut {
    pub free: bool,
    pub exponents: Option<Vec<u32>>,
    pub generator_degrees: Vec<u32>,
    pub verified_to: u32,
}

impl MultiOut {
    pub fn compute(
        a: &Arrangement,
        m: &Multiplicity,
        bound: Option<u32>,
    ) -> arrfree_core::Result<Self> {
        if let Some(c) = is_free(a, Some(m), bound)? {
            let degrees = c.basis.iter().map(|b| b.degree()).collect();
            return Ok(MultiOut {
                free: true,
                exponents: Some(c.exponents),
                generator_degrees: degrees,
                verified_to: bound.unwrap_or(m.total() as u32),
            });
        }
        let gens = minimal_generators(a, Some(m), bound.unwrap_or(m.total() as u32))?;
        Ok(MultiOut {
            free: false,
            exponents: None,
            generator_degrees: gens.degrees(),
            verified_to: gens.verified_to,
        })
    }
}

impl Render for MultiOut {
    fn render(&self) -> String {
        match &self.exponents {
            Some(e) => format!("multiarrangement free with exponents {}\n", tuple(e)),
            None => format!(
                "multiarrangement not free; generator degrees {} (verified to degree {})\n",
                tuple(&self.generator_degrees),
                self.verified_to
            ),
        }
    }
}

#[derive(Serialize)]
pub struct TripleOut {
    pub triple: TripleReport,
    pub division: DivisionReport,
    pub relative: RelativeCriterion,
    pub combinatorial: Option<CombinatorialDeletion>,
}

fn member(s: &mut String, name: &str, m: &MemberReport) {
    let _ = writeln!(
        s,
        "{name:<12} |.| = {:<3} chi = {:<28} {}",
        m.size,
        m.chi,
        summary_line(&m.summary)
    );
}

impl Render for TripleOut {
    fn render(&self) -> String {
        let t = &self.triple;
        let mut s = String::new();
        let _ = writeln!(s, "H_{} = {}", t.index, t.hyperplane);
        member(&mut s, "A", &t.arrangement);
        member(&mut s, "A minus H", &t.deletion);
        member(&mut s, "A^H", &t.restriction);
        let _ = writeln!(s, "d = |A'| - |A^H| = {}", t.d);
        let _ = writeln!(
            s,
            "deletion-restriction identity: {}",
            t.deletion_restriction_identity
        );
        for c in &t.checks {
            let status = match c.confirmed {
                None => "n/a",
                Some(true) => "confirmed",
                Some(false) => "FAILED",
            };
            let _ = writeln!(s, "  {:<32} {:<10} {}", c.name, status, c.detail);
        }
        let d = &self.division;
        let _ = writeln!(
            s,
            "division: pi(A^H) | pi(A) {}, A^H free {}, conclusion {}",
            d.divides,
            d.restriction_exponents.is_some(),
            opt(&d.confirmed)
        );
        let r = &self.relative;
        let _ = writeln!(
            s,
            "relative criterion: restriction branch {}, level-element branch {} (literal {}), large level {}",
            r.restriction_branch, r.modular_branch, r.literal_branch, r.large_level
        );
        if let Some(c) = &self.combinatorial {
            let _ = writeln!(
                s,
                "combinatorial deletion: roots at all {} flats in H {}, deletion free {}",
                c.flats.len(),
                c.predicted_free,
                c.deletion_free
            );
        }
        s
    }
}

#[derive(Serialize)]
pub struct FileOut {
    #[serde(skip)]
    comment: String,
    pub size: usize,
    pub nvars: usize,
    pub file: String,
}

impl FileOut {
    pub fn new(comment: String, a: &Arrangement, m: Option<&Multiplicity>) -> Self {
        FileOut {
            comment,
            size: a.len(),
            nvars: a.nvars(),
            file: write_arrangement(a, m),
        }
    }
}

impl Render for FileOut {
    fn render(&self) -> String {
        format!("{}{}", self.comment, self.file)
    }
}

impl Render for FiltrationResult {
    fn render(&self) -> String {
        let mut s = String::new();
        match &self.ordering {
            None => {
                let _ = writeln!(
                    s,
                    "no free filtration ({} subarrangements examined)",
                    self.subsets_examined
                );
            }
            Some(ord) => {
                let _ = writeln!(
                    s,
                    "free filtration ({} subarrangements examined):",
                    self.subsets_examined
                );
                for (k, (i, e)) in ord.iter().zip(&self.prefix_exponents).enumerate() {
                    let _ = writeln!(s, "  A_{:<3} + H_{:<3} exponents {}", k + 1, i, tuple(e));
                }
            }
        }
        s
    }
}

impl Render for FreeAdditionsReport {
    fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "A: {}", summary_line(&self.arrangement));
        let _ = writeln!(
            s,
            "{} candidates classified, {} already in A",
            self.candidates, self.filtered
        );
        if self.unique_regime {
            let _ = writeln!(s, "level exceeds every exponent: at most one free addition");
        }
        if self.additions.is_empty() {
            let _ = writeln!(s, "no free additions");
        }
        for f in &self.additions {
            let _ = writeln!(
                s,
                "  {:<24} exponents {} |B^L| = {} |A| - |B^L| = {}",
                f.hyperplane,
                tuple(&f.exponents),
                f.restriction_size,
                f.size_gap
            );
        }
        s
    }
}

impl Render for ConjectureScan {
    fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "exponents {}", tuple(&self.exponents));
        for e in &self.entries {
            let place = if e.is_exponent {
                "exponent"
            } else if e.exceeds_max {
                "above all"
            } else {
                "OTHER"
            };
            let _ = writeln!(
                s,
                "  H_{:<3} {:<24} d = {:<3} {:<10} deletion locally free {}",
                e.index, e.hyperplane, e.d, place, e.deletion_locally_free
            );
        }
        let _ = writeln!(s, "all hold: {}", self.all_hold);
        s
    }
}

#[derive(Serialize)]
#[serde(transparent)]
pub struct CatalogList(pub &'static [CatalogEntry]);

impl Render for CatalogList {
    fn render(&self) -> String {
        let mut s = String::new();
        for e in self.0 {
            let name = match e.param {
                Some(p) => format!("{}[:{}]", e.name, p),
                None => e.name.to_string(),
            };
            let _ = writeln!(s, "{name:<32} {}", e.description);
        }
        s
    }
}
