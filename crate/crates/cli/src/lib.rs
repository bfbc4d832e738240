//! Command implementations behind the `cartan` binary.
//!
//! Each command returns the text destined for stdout, or a [`CliError`]
//! whose [`CliError::exit_code`] the binary reports.

pub mod problem;
pub mod report;

use std::fmt;

use cartan_core::analysis::{build_report, householder_matrix, householder_product, versor_grade};
use cartan_core::bilinear_space::is_invertible_vector;
use cartan_core::factorization::{compose_reflections, decompose, recompose};
use cartan_core::sampling::{case_rng, random_isometry};
use cartan_core::{Error as CoreError, NumberMode, OrthogonalBasis, Signature};
use rand::Rng;
use serde::Serialize;

use crate::problem::{matrix_entries, vector_entries, ProblemFile};
use crate::report::{entries_text, matrix_text, ReportFile};

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Malformed input or flags. Exit 2.
    Parse(String),
    /// Input matrix is not an isometry. Exit 3.
    NotOrthogonal(String),
    /// Claimed factorization does not reproduce the matrix. Exit 3.
    Mismatch(String),
    /// An internal invariant failed. Exit 4.
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::NotOrthogonal(_) | CliError::Mismatch(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::NotOrthogonal(m) => write!(f, "not orthogonal: {m}"),
            CliError::Mismatch(m) => write!(f, "verification failed: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

fn internal(e: CoreError) -> CliError {
    match e {
        CoreError::InvariantBreach(m) => CliError::Internal(m),
        other => CliError::Internal(other.to_string()),
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
}

pub fn cmd_decompose(input: &ProblemFile, mode: Option<NumberMode>, format: Format) -> Result<String, CliError> {
    let mode = input.number_mode(mode)?;
    let problem = input.parse(mode)?;
    let report = build_report(&problem.map).map_err(internal)?;
    if !report.recomposition_ok {
        return Err(CliError::Internal("recomposition does not reproduce the input".into()));
    }
    let file = ReportFile::new(input, &report);
    Ok(match format {
        Format::Json => file.to_json() + "\n",
        Format::Text => file.to_text(),
    })
}

#[derive(Serialize)]
struct VerifyOutput {
    pass: bool,
    reflector_count: usize,
    grade_lower_bound: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    householder_matrices: Option<Vec<Vec<Vec<problem::Entry>>>>,
}

/// Recomposes the file's reflectors and compares against its matrix.
pub fn cmd_verify(
    input: &ProblemFile,
    mode: Option<NumberMode>,
    format: Format,
    show_householder: bool,
) -> Result<String, CliError> {
    let mode = input.number_mode(mode)?;
    let problem = input.parse(mode)?;
    let reflectors = problem
        .reflectors
        .ok_or_else(|| CliError::Parse("verify needs a `reflectors` list".into()))?;
    for (i, r) in reflectors.iter().enumerate() {
        let ok = is_invertible_vector(r, problem.signature).map_err(internal)?;
        if !ok {
            return Err(CliError::Mismatch(format!("reflector {} is zero or isotropic", i + 1)));
        }
    }
    let composed = compose_reflections(&reflectors, &problem.basis).map_err(internal)?;
    let target = problem.map.matrix();
    if let Some((i, j)) = composed.first_difference(target) {
        return Err(CliError::Mismatch(format!(
            "entry ({}, {}): composition gives {}, matrix has {}",
            i + 1,
            j + 1,
            composed[(i, j)],
            target[(i, j)]
        )));
    }
    let product = householder_product(&reflectors, &problem.basis).map_err(internal)?;
    if product != *target {
        return Err(CliError::Internal("Householder product disagrees with the composition".into()));
    }
    let grade = versor_grade(&reflectors, problem.signature).map_err(internal)?;
    let householder = if show_householder {
        Some(
            reflectors
                .iter()
                .map(|r| householder_matrix(r, &problem.basis).map(|m| matrix_entries(&m)))
                .collect::<Result<Vec<_>, _>>()
                .map_err(internal)?,
        )
    } else {
        None
    };
    let out = VerifyOutput {
        pass: true,
        reflector_count: reflectors.len(),
        grade_lower_bound: grade,
        householder_matrices: householder,
    };
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&out).expect("serializable") + "\n",
        Format::Text => {
            let mut s = format!(
                "verify: pass ({} reflectors, grade lower bound {})\n",
                out.reflector_count, out.grade_lower_bound
            );
            for (i, h) in out.householder_matrices.iter().flatten().enumerate() {
                s.push_str(&format!("householder matrix {}:\n{}", i + 1, matrix_text(h)));
            }
            s
        }
    })
}

#[derive(Serialize)]
struct HouseholderOutput {
    reflector: Vec<problem::Entry>,
    matrix: Vec<Vec<problem::Entry>>,
}

/// Householder matrix of each listed reflector over the file's basis.
pub fn cmd_householder(input: &ProblemFile, mode: Option<NumberMode>, format: Format) -> Result<String, CliError> {
    let mode = input.number_mode(mode)?;
    let problem = input.parse(mode)?;
    let reflectors = problem
        .reflectors
        .ok_or_else(|| CliError::Parse("householder needs a `reflectors` list".into()))?;
    let mut outputs = Vec::with_capacity(reflectors.len());
    for (i, r) in reflectors.iter().enumerate() {
        let h = householder_matrix(r, &problem.basis).map_err(|e| match e {
            CoreError::NotInvertible => CliError::Parse(format!("reflector {} is zero or isotropic", i + 1)),
            other => internal(other),
        })?;
        outputs.push(HouseholderOutput {
            reflector: vector_entries(r),
            matrix: matrix_entries(&h),
        });
    }
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&outputs).expect("serializable") + "\n",
        Format::Text => outputs
            .iter()
            .enumerate()
            .map(|(i, o)| format!("r{} = ({})\n{}", i + 1, entries_text(&o.reflector), matrix_text(&o.matrix)))
            .collect(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct FuzzConfig {
    pub signature: Signature,
    pub count: u64,
    pub max_reflections: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FuzzCase {
    pub case: u64,
    pub composed: usize,
    pub achieved: usize,
    pub grade_lower_bound: usize,
    pub artinian_branches: usize,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    /// Problem file reproducing a failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<ProblemFile>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FuzzSummary {
    pub p: usize,
    pub q: usize,
    pub seed: u64,
    pub count: u64,
    pub passed: u64,
    pub failed: u64,
    pub artinian_branches: usize,
    pub cases: Vec<FuzzCase>,
}

impl FuzzSummary {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.cases {
            s.push_str(&format!(
                "case {}: {} (composed {}, achieved {}, grade bound {}, artinian {})\n",
                c.case,
                if c.pass { "pass" } else { "FAIL" },
                c.composed,
                c.achieved,
                c.grade_lower_bound,
                c.artinian_branches
            ));
            if let Some(f) = &c.failure {
                s.push_str(&format!("  failure: {f}\n  reproduce with --seed {} (case {})\n", self.seed, c.case));
            }
            if let Some(p) = &c.counterexample {
                s.push_str(&format!("  counterexample:\n{}\n", p.to_json()));
            }
        }
        s.push_str(&format!(
            "fuzz ({}, {}) seed {}: {} passed, {} failed, {} artinian branches\n",
            self.p, self.q, self.seed, self.passed, self.failed, self.artinian_branches
        ));
        s
    }
}

fn fuzz_case(config: &FuzzConfig, case: u64) -> FuzzCase {
    let sig = config.signature;
    let n = sig.dim();
    let basis = OrthogonalBasis::canonical(sig);
    let mut rng = case_rng(config.seed, case);
    let k = rng.gen_range(0..=config.max_reflections);
    let mut out = FuzzCase {
        case,
        composed: k,
        achieved: 0,
        grade_lower_bound: 0,
        artinian_branches: 0,
        pass: false,
        failure: None,
        counterexample: None,
    };
    let iso = match random_isometry(&mut rng, &basis, k) {
        Ok(iso) => iso,
        Err(e) => {
            out.failure = Some(format!("generation failed: {e}"));
            return out;
        }
    };
    let failure = (|| -> Result<(), String> {
        let seq = decompose(&iso.map).map_err(|e| e.to_string())?;
        out.achieved = seq.len();
        out.artinian_branches = seq.artinian_branches.len();
        if seq.len() > n {
            return Err(format!("{} reflectors exceed n = {n}", seq.len()));
        }
        if recompose(&seq).map_err(|e| e.to_string())? != *iso.map.matrix() {
            return Err("recomposition differs from the input".into());
        }
        out.grade_lower_bound = versor_grade(&seq.reflectors, sig).map_err(|e| e.to_string())?;
        if out.grade_lower_bound > seq.len() {
            return Err(format!("grade bound {} exceeds count {}", out.grade_lower_bound, seq.len()));
        }
        Ok(())
    })();
    match failure {
        Ok(()) => out.pass = true,
        Err(msg) => {
            out.failure = Some(msg);
            out.counterexample = Some(ProblemFile {
                signature: problem::SignatureSpec { p: sig.p(), q: sig.q() },
                matrix: matrix_entries(iso.map.matrix()),
                basis: None,
                matrix_coordinates: Default::default(),
                mode: Default::default(),
                tolerance: None,
                reflectors: None,
            });
        }
    }
    out
}

/// Runs `count` seeded cases. Case `i` draws from its own stream, so results
/// do not depend on evaluation order.
pub fn run_fuzz(config: &FuzzConfig) -> Result<FuzzSummary, CliError> {
    if config.max_reflections > config.signature.dim() {
        return Err(CliError::Parse(format!(
            "--max-reflections {} exceeds n = {}",
            config.max_reflections,
            config.signature.dim()
        )));
    }
    let cases: Vec<FuzzCase> = (0..config.count).map(|i| fuzz_case(config, i)).collect();
    let passed = cases.iter().filter(|c| c.pass).count() as u64;
    Ok(FuzzSummary {
        p: config.signature.p(),
        q: config.signature.q(),
        seed: config.seed,
        count: config.count,
        passed,
        failed: config.count - passed,
        artinian_branches: cases.iter().map(|c| c.artinian_branches).sum(),
        cases,
    })
}

/// Fuzz command: the rendered summary, plus an error when any case failed.
pub fn cmd_fuzz(config: &FuzzConfig, format: Format) -> Result<String, (String, CliError)> {
    let summary = run_fuzz(config).map_err(|e| (String::new(), e))?;
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&summary).expect("serializable") + "\n",
        Format::Text => summary.to_text(),
    };
    if summary.failed > 0 {
        let first = summary.cases.iter().find(|c| !c.pass).map_or(0, |c| c.case);
        return Err((
            text,
            CliError::Internal(format!(
                "{} of {} cases failed; first failing case {first}, seed {}",
                summary.failed, summary.count, summary.seed
            )),
        ));
    }
    Ok(text)
}
