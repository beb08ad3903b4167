//! Verification reports, JSON (de)serialization of modules and bundles, and
//! deterministic DOT emission for AR quivers.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::algebra::AlgRef;
use crate::artheory::ARQuiver;
use crate::constructions::{gabriel_quiver, Subcategory};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::module::FDModule;
use crate::scalar::Scalar;

/// Outcome of a claim-level check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Refuted,
    Inconclusive,
}

impl Status {
    pub fn exit_code(&self) -> i32 {
        match self {
            Status::Verified => 0,
            Status::Refuted => 1,
            Status::Inconclusive => 2,
        }
    }

    /// Worst of the two: refuted beats inconclusive beats verified.
    pub fn combine(self, other: Status) -> Status {
        use Status::*;
        match (self, other) {
            (Refuted, _) | (_, Refuted) => Refuted,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Verified,
        }
    }
}

/// A claim-level verification report. Field order is the serialization
/// order, so repeated runs on identical inputs serialize identically except
/// for the timing entry.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub claim: String,
    pub inputs: String,
    pub status: Status,
    pub witnesses: Vec<String>,
    pub timing_ms: u128,
    pub version: String,
}

impl Report {
    pub fn new(claim: impl Into<String>, inputs: impl Into<String>) -> Self {
        Report {
            claim: claim.into(),
            inputs: inputs.into(),
            status: Status::Verified,
            witnesses: Vec::new(),
            timing_ms: 0,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn refute(&mut self, witness: impl Into<String>) {
        self.status = self.status.combine(Status::Refuted);
        self.witnesses.push(witness.into());
    }

    pub fn inconclusive(&mut self, witness: impl Into<String>) {
        self.status = self.status.combine(Status::Inconclusive);
        self.witnesses.push(witness.into());
    }

    pub fn note(&mut self, witness: impl Into<String>) {
        self.witnesses.push(witness.into());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}

fn dimvec_label(dv: &[usize]) -> String {
    let parts: Vec<String> = dv.iter().map(|d| d.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Deterministic DOT rendering: vertices in knitting order labeled by
/// dimension vector, solid arcs for irreducible maps (multiplicity noted
/// when above one), dashed arcs from each non-projective vertex to its
/// translate.
pub fn ar_quiver_dot<F: Scalar>(q: &ARQuiver<F>) -> String {
    let mut out = String::new();
    out.push_str("digraph ar_quiver {\n");
    out.push_str("  rankdir=LR;\n");
    out.push_str("  node [shape=box];\n");
    for (i, v) in q.vertices.iter().enumerate() {
        let mut marks = String::new();
        if q.projective[i] {
            marks.push('P');
        }
        if q.injective[i] {
            marks.push('I');
        }
        let label = if marks.is_empty() {
            dimvec_label(&v.dimension_vector())
        } else {
            format!("{} {}", dimvec_label(&v.dimension_vector()), marks)
        };
        writeln!(out, "  v{i} [label=\"{label}\"];").unwrap();
    }
    let mut arrows = q.arrows.clone();
    arrows.sort_unstable();
    for (from, to, mult) in arrows {
        if mult > 1 {
            writeln!(out, "  v{from} -> v{to} [label=\"{mult}\"];").unwrap();
        } else {
            writeln!(out, "  v{from} -> v{to};").unwrap();
        }
    }
    for (z, tau) in q.translation.iter().enumerate() {
        if let Some(t) = tau {
            writeln!(out, "  v{z} -> v{t} [style=dashed, constraint=false];").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize, Deserialize)]
struct ModuleFile {
    name: String,
    dim: usize,
    dimension_vector: Vec<usize>,
    /// one matrix per algebra generator, entries as rational strings
    actions: Vec<Vec<Vec<String>>>,
}

#[derive(Serialize, Deserialize)]
struct BundleFile {
    algebra: String,
    modules: Vec<ModuleFile>,
}

fn matrix_to_rows<F: Scalar>(m: &Matrix<F>) -> Vec<Vec<String>> {
    (0..m.rows).map(|i| (0..m.cols).map(|j| m.at(i, j).to_string()).collect()).collect()
}

fn matrix_from_rows<F: Scalar>(rows: &[Vec<String>], dim: usize) -> Result<Matrix<F>> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(Error::BadInput(format!("action matrix is not {dim} by {dim}")));
    }
    let mut parsed = Vec::with_capacity(dim);
    for r in rows {
        let mut row = Vec::with_capacity(dim);
        for s in r {
            row.push(F::from_ratio_str(s).map_err(Error::BadInput)?);
        }
        parsed.push(row);
    }
    if dim == 0 {
        return Ok(Matrix::zero(0, 0));
    }
    Ok(Matrix::from_rows(parsed))
}

fn module_file<F: Scalar>(m: &FDModule<F>) -> ModuleFile {
    ModuleFile {
        name: m.name.clone(),
        dim: m.dim,
        dimension_vector: m.dimension_vector(),
        actions: m.gen_actions.iter().map(matrix_to_rows).collect(),
    }
}

fn module_from_file<F: Scalar>(a: &AlgRef<F>, f: &ModuleFile) -> Result<FDModule<F>> {
    if f.actions.len() != a.generators.len() {
        return Err(Error::BadInput(format!(
            "module {} has {} action matrices, algebra {} has {} generators",
            f.name,
            f.actions.len(),
            a.name,
            a.generators.len()
        )));
    }
    let actions = f
        .actions
        .iter()
        .map(|rows| matrix_from_rows(rows, f.dim))
        .collect::<Result<Vec<_>>>()?;
    let m = FDModule::new(a.clone(), actions, f.name.clone());
    if !m.check_module() {
        return Err(Error::BadInput(format!("{} is not a module over {}", f.name, a.name)));
    }
    Ok(m)
}

pub fn module_to_json<F: Scalar>(m: &FDModule<F>) -> String {
    serde_json::to_string_pretty(&module_file(m)).expect("module serialization")
}

pub fn module_from_json<F: Scalar>(a: &AlgRef<F>, text: &str) -> Result<FDModule<F>> {
    let f: ModuleFile =
        serde_json::from_str(text).map_err(|e| Error::BadInput(format!("bad module JSON: {e}")))?;
    module_from_file(a, &f)
}

pub fn subcategory_to_json<F: Scalar>(s: &Subcategory<F>) -> String {
    let b = BundleFile {
        algebra: s.algebra.name.clone(),
        modules: s.reps.iter().map(module_file).collect(),
    };
    serde_json::to_string_pretty(&b).expect("bundle serialization")
}

pub fn subcategory_from_json<F: Scalar>(a: &AlgRef<F>, text: &str) -> Result<Subcategory<F>> {
    let b: BundleFile =
        serde_json::from_str(text).map_err(|e| Error::BadInput(format!("bad bundle JSON: {e}")))?;
    let mut out = Subcategory::new(a.clone());
    for mf in &b.modules {
        out.add(&module_from_file(a, mf)?)?;
    }
    Ok(out)
}

/// Human-inspectable algebra summary with the extracted Gabriel quiver.
pub fn algebra_summary_json<F: Scalar>(a: &AlgRef<F>) -> Result<String> {
    #[derive(Serialize)]
    struct AlgebraSummary {
        name: String,
        dim: usize,
        vertices: usize,
        gabriel_arrows: Vec<(usize, usize, usize)>,
    }
    let counts = gabriel_quiver(a)?;
    let mut arrows = Vec::new();
    for (i, row) in counts.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            if c > 0 {
                arrows.push((i, j, c));
            }
        }
    }
    let s = AlgebraSummary {
        name: a.name.clone(),
        dim: a.dim,
        vertices: a.idempotents.len(),
        gabriel_arrows: arrows,
    };
    Ok(serde_json::to_string_pretty(&s).expect("summary serialization"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::{ka2, ka3};
    use crate::artheory::knit_ar_quiver;
    use crate::constructions::ind_modules;
    use crate::decomp::iso_test;
    use crate::module::projective_module;

    #[test]
    fn status_codes_and_combination() {
        assert_eq!(Status::Verified.exit_code(), 0);
        assert_eq!(Status::Refuted.exit_code(), 1);
        assert_eq!(Status::Inconclusive.exit_code(), 2);
        assert_eq!(Status::Verified.combine(Status::Inconclusive), Status::Inconclusive);
        assert_eq!(Status::Inconclusive.combine(Status::Refuted), Status::Refuted);
    }

    #[test]
    fn report_serialization_is_stable() {
        let mut r = Report::new("claim", "input");
        r.note("w1");
        let a = r.to_json();
        let b = r.to_json();
        assert_eq!(a, b);
        let back: Report = serde_json::from_str(&a).unwrap();
        assert_eq!(back.status, Status::Verified);
        // key order is struct order
        let ci = a.find("\"claim\"").unwrap();
        let si = a.find("\"status\"").unwrap();
        let ti = a.find("\"timing_ms\"").unwrap();
        assert!(ci < si && si < ti);
    }

    #[test]
    fn dot_output_is_deterministic_and_structured() {
        let a = ka2();
        let q = knit_ar_quiver(&a, 20).unwrap();
        let d1 = ar_quiver_dot(&q);
        let d2 = ar_quiver_dot(&knit_ar_quiver(&a, 20).unwrap());
        assert_eq!(d1, d2);
        assert_eq!(d1.matches("label=").count(), 3 + d1.matches("label=\"2\"").count());
        assert_eq!(d1.matches("style=dashed").count(), 1);
        assert!(d1.starts_with("digraph ar_quiver {"));
        assert!(d1.ends_with("}\n"));
    }

    #[test]
    fn module_json_round_trip() {
        let a = ka3();
        for v in 0..3 {
            let p = projective_module(&a, v);
            let text = module_to_json(&p);
            let back = module_from_json(&a, &text).unwrap();
            assert!(iso_test(&p, &back).unwrap().is_some());
        }
    }

    #[test]
    fn bundle_json_round_trip() {
        let a = ka2();
        let ind = ind_modules(&a, 20).unwrap();
        let text = subcategory_to_json(&ind);
        let back = subcategory_from_json(&a, &text).unwrap();
        assert_eq!(back.len(), ind.len());
    }

    #[test]
    fn algebra_summary_lists_gabriel_arrows() {
        let a = ka2();
        let text = algebra_summary_json(&a).unwrap();
        assert!(text.contains("\"vertices\": 2"));
        assert!(text.contains("[\n      0,\n      1,\n      1\n    ]"));
    }
}
