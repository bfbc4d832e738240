use cartan_core::analysis::DecompositionReport;
use serde::{Deserialize, Serialize};

use crate::problem::{matrix_entries, vector_entries, Entry, ProblemFile};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub problem: ProblemFile,
    pub reflectors: Vec<Vec<Entry>>,
    /// One matrix per reflector, over the problem's basis.
    pub householder_matrices: Vec<Vec<Vec<Entry>>>,
    pub achieved_count: usize,
    pub grade_lower_bound: usize,
    pub kernel_dim: usize,
    /// `null` when float mode cannot decide.
    pub kernel_nondegenerate: Option<bool>,
    pub perp_dim: usize,
    pub recomposition_ok: bool,
    pub minimality_certified: bool,
    pub artinian_branches: usize,
    pub warnings: Vec<String>,
}

impl ReportFile {
    pub fn new(problem: &ProblemFile, report: &DecompositionReport) -> Self {
        let mut warnings = Vec::new();
        match report.kernel.form.as_bool() {
            Some(false) => warnings.push(
                "fixed space Ker(T - I) is degenerate; the perp-dimension minimality criterion does not apply".into(),
            ),
            None => warnings.push("kernel non-degeneracy undetermined at this tolerance".into()),
            Some(true) => {}
        }
        if !report.minimality_certified {
            warnings.push(format!(
                "minimality not certified: grade bound {}, achieved {}",
                report.grade_lower_bound, report.achieved_count
            ));
        }
        ReportFile {
            problem: problem.clone(),
            reflectors: report.sequence.reflectors.iter().map(vector_entries).collect(),
            householder_matrices: report.householder_matrices.iter().map(matrix_entries).collect(),
            achieved_count: report.achieved_count,
            grade_lower_bound: report.grade_lower_bound,
            kernel_dim: report.kernel.kernel_dim,
            kernel_nondegenerate: report.kernel.form.as_bool(),
            perp_dim: report.kernel.perp_dim,
            recomposition_ok: report.recomposition_ok,
            minimality_certified: report.minimality_certified,
            artinian_branches: report.artinian_branches(),
            warnings,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// The echoed problem with this report's reflectors attached, ready for `verify`.
    pub fn as_verification_problem(&self) -> ProblemFile {
        let mut p = self.problem.clone();
        p.reflectors = Some(self.reflectors.clone());
        p
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let sig = &self.problem.signature;
        out.push_str(&format!("signature: ({}, {})\n", sig.p, sig.q));
        out.push_str(&format!("reflectors: {}\n", self.achieved_count));
        for (i, r) in self.reflectors.iter().enumerate() {
            out.push_str(&format!("  r{} = ({})\n", i + 1, entries_text(r)));
        }
        out.push_str(&format!("grade lower bound: {}\n", self.grade_lower_bound));
        out.push_str(&format!(
            "fixed space: dim {}, perp dim {}, non-degenerate: {}\n",
            self.kernel_dim,
            self.perp_dim,
            match self.kernel_nondegenerate {
                Some(true) => "yes",
                Some(false) => "no",
                None => "undetermined",
            }
        ));
        out.push_str(&format!("recomposition ok: {}\n", self.recomposition_ok));
        out.push_str(&format!("minimality certified: {}\n", self.minimality_certified));
        out.push_str(&format!("artinian branches: {}\n", self.artinian_branches));
        for (i, h) in self.householder_matrices.iter().enumerate() {
            out.push_str(&format!("householder matrix {}:\n", i + 1));
            out.push_str(&matrix_text(h));
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out
    }
}

pub fn entry_text(e: &Entry) -> String {
    match e {
        Entry::Text(s) => s.clone(),
        Entry::Number(n) => n.to_string(),
    }
}

pub fn entries_text(row: &[Entry]) -> String {
    row.iter().map(entry_text).collect::<Vec<_>>().join(", ")
}

pub fn matrix_text(rows: &[Vec<Entry>]) -> String {
    let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(entry_text).collect()).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(0);
    cells
        .iter()
        .map(|r| {
            let padded: Vec<String> = r.iter().map(|c| format!("{c:>width$}")).collect();
            format!("  [ {} ]\n", padded.join("  "))
        })
        .collect()
}
