//! Command orchestration and the serializable report.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::algebra::{apply, is_solution, Omega};
use crate::boxes::{box_union_subset, BoxUnion};
use crate::error::{Error, Result};
use crate::exact::{exact_solution_set, fully_active_vertices, DEFAULT_CELL_BUDGET};
use crate::io::ProblemInstance;
use crate::normalize::{classical_principal, classical_solvable};
use crate::order::principal_order;
use crate::relax::rel_set;
use crate::scalar::Scalar;
use crate::search::{candidate_tuples, fully_active_solutions, size_classification, IndexTuple, SizeReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Apply,
    Principal,
    Candidates,
    Solve,
    Exact,
    Classify,
    Check,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::Apply,
        Command::Principal,
        Command::Candidates,
        Command::Solve,
        Command::Exact,
        Command::Classify,
        Command::Check,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Apply => "apply",
            Command::Principal => "principal",
            Command::Candidates => "candidates",
            Command::Solve => "solve",
            Command::Exact => "exact",
            Command::Classify => "classify",
            Command::Check => "check",
        }
    }

    /// Commands that evaluate a given vector.
    pub fn needs_vector(self) -> bool {
        matches!(self, Command::Apply | Command::Check)
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown command {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub cell_budget: u128,
    /// Vector for `apply` and `check`.
    pub x: Option<Vec<Scalar>>,
    pub timing: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { cell_budget: DEFAULT_CELL_BUDGET, x: None, timing: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassicalReport {
    pub xbar: Vec<Scalar>,
    /// 1-based rows attaining the column statistic.
    pub msets: Vec<Vec<usize>>,
    pub solvable: bool,
    pub unique: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PrincipalReport {
    pub ranks: Vec<Vec<usize>>,
    pub freqs: Vec<usize>,
    pub f: usize,
    /// Present at level 1 or n.
    pub classical: Option<ClassicalReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RelReport {
    pub x: Vec<Scalar>,
    pub boxes: BoxUnion,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CrossCheck {
    /// Every Rel box lies in the exact set.
    pub rel_within_exact: bool,
    /// Fully active solutions are exactly the feasible arrangement vertices.
    pub vertices_agree: bool,
    /// The size class admits the observed size of the exact set.
    pub classification_agrees: bool,
    /// The covering test agrees with the exact set (level 1 or n only).
    pub classical_agrees: Option<bool>,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Timing {
    pub micros: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SolutionReport {
    pub command: Command,
    pub m: usize,
    pub n: usize,
    pub omega: Scalar,
    pub p: usize,
    pub solvable: Option<bool>,
    pub x: Option<Vec<Scalar>>,
    pub value: Option<Vec<Scalar>>,
    pub member: Option<bool>,
    pub principal: Option<PrincipalReport>,
    pub candidates: Option<Vec<IndexTuple>>,
    pub fully_active: Option<Vec<Vec<Scalar>>>,
    pub indices: Option<Vec<IndexTuple>>,
    pub rel: Option<Vec<RelReport>>,
    pub exact: Option<BoxUnion>,
    pub classification: Option<SizeReport>,
    pub cross_check: Option<CrossCheck>,
    pub warnings: Vec<String>,
    pub timing: Option<Timing>,
}

impl SolutionReport {
    fn blank(command: Command, inst: &ProblemInstance) -> Self {
        SolutionReport {
            command,
            m: inst.matrix.rows(),
            n: inst.matrix.cols(),
            omega: inst.omega.value().clone(),
            p: inst.level,
            solvable: None,
            x: None,
            value: None,
            member: None,
            principal: None,
            candidates: None,
            fully_active: None,
            indices: None,
            rel: None,
            exact: None,
            classification: None,
            cross_check: None,
            warnings: Vec::new(),
            timing: None,
        }
    }

    /// 1 when the system is provably empty (for `check`: when x is not a
    /// solution), else 0. Errors map to 2 at the process boundary.
    pub fn exit_code(&self) -> i32 {
        let negative = match self.command {
            Command::Check => self.member == Some(false),
            _ => self.solvable == Some(false),
        };
        i32::from(negative)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            kind: crate::error::ParseKind::BadEntry,
            source_name: "report".into(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    /// Human-readable summary with boxes written as products of intervals.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        let vec = |v: &[Scalar]| format!("({})", v.iter().join(", "));
        let yes_no = |b: bool| if b { "yes" } else { "no" };
        let _ = writeln!(out, "{}: m = {}, n = {}, omega = {}, p = {}", self.command.name(), self.m, self.n, self.omega, self.p);
        if let Some(x) = &self.x {
            let _ = writeln!(out, "x = {}", vec(x));
        }
        if let Some(v) = &self.value {
            let _ = writeln!(out, "A (x) x = {}", vec(v));
        }
        if let Some(b) = self.member {
            let _ = writeln!(out, "solution: {}", yes_no(b));
        }
        if let Some(pr) = &self.principal {
            let _ = writeln!(out, "principal order matrix:");
            for row in &pr.ranks {
                let _ = writeln!(out, "  {}", row.iter().join(" "));
            }
            let _ = writeln!(out, "frequencies: {} (f = {})", pr.freqs.iter().join(" "), pr.f);
            if let Some(c) = &pr.classical {
                let _ = writeln!(out, "principal solution: {}", vec(&c.xbar));
                let sets = c.msets.iter().map(|s| format!("{{{}}}", s.iter().join(","))).join(" ");
                let _ = writeln!(out, "M sets: {sets}");
                let _ = writeln!(out, "covering: solvable {}, unique {}", yes_no(c.solvable), yes_no(c.unique));
            }
        }
        if let Some(c) = &self.candidates {
            let _ = writeln!(out, "candidates ({}): {}", c.len(), c.iter().join(" "));
        }
        if let Some(fa) = &self.fully_active {
            let _ = writeln!(out, "fully active solutions ({}):", fa.len());
            for x in fa {
                let _ = writeln!(out, "  {}", vec(x));
            }
        }
        if let Some(ix) = &self.indices {
            let _ = writeln!(out, "solution indices ({}): {}", ix.len(), ix.iter().join(" "));
        }
        if let Some(rel) = &self.rel {
            for r in rel {
                let _ = writeln!(out, "Rel{} = {}", vec(&r.x), union_text(&r.boxes));
            }
        }
        if let Some(s) = &self.exact {
            let _ = writeln!(out, "S = {}", union_text(s));
        }
        if let Some(c) = &self.classification {
            let _ = writeln!(out, "size class: {} (m = {}, n = {}, f = {})", c.class, c.m, c.n, c.f);
        }
        if let Some(cc) = &self.cross_check {
            let _ = writeln!(out, "cross-check: {}", if cc.consistent { "consistent" } else { "MISMATCH" });
        }
        if let Some(s) = self.solvable {
            let _ = writeln!(out, "solvable: {}", yes_no(s));
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        if let Some(t) = &self.timing {
            let _ = writeln!(out, "time: {} us", t.micros);
        }
        out
    }
}

fn union_text(u: &BoxUnion) -> String {
    if u.is_empty() {
        "empty".into()
    } else {
        u.boxes().iter().join(" U ")
    }
}

fn vector_arg(opts: &RunOptions, n: usize) -> Result<&[Scalar]> {
    let x = opts.x.as_deref().ok_or_else(|| Error::Domain("this command needs a vector x".into()))?;
    if x.len() != n {
        return Err(Error::DimensionMismatch { what: "x", expected: n, found: x.len() });
    }
    Ok(x)
}

fn classical(a: &crate::algebra::Matrix, omega: &Omega) -> Option<ClassicalReport> {
    let pc = classical_principal(a, omega);
    let verdict = classical_solvable(&pc, a, omega).ok()?;
    Some(ClassicalReport {
        msets: pc.msets.iter().map(|s| s.iter().map(|i| i + 1).collect()).collect(),
        xbar: pc.xbar,
        solvable: verdict.solvable,
        unique: verdict.unique,
    })
}

pub fn run(command: Command, inst: &ProblemInstance, opts: &RunOptions) -> Result<SolutionReport> {
    let started = Instant::now();
    let mut report = SolutionReport::blank(command, inst);
    let a = inst.normalized();
    let omega = &inst.omega;
    match command {
        Command::Apply => {
            let x = vector_arg(opts, a.cols())?;
            let value = apply(&inst.matrix, omega, x)?;
            report.member = Some(value == inst.rhs);
            report.x = Some(x.to_vec());
            report.value = Some(value);
        }
        Command::Check => {
            let x = vector_arg(opts, a.cols())?;
            report.member = Some(is_solution(&inst.matrix, omega, x, &inst.rhs)?);
            report.x = Some(x.to_vec());
        }
        Command::Principal => {
            let pom = principal_order(&a);
            let classical = classical(&a, omega);
            report.solvable = classical.as_ref().map(|c| c.solvable);
            report.principal =
                Some(PrincipalReport { ranks: pom.ranks(), freqs: pom.freqs().to_vec(), f: pom.total_freq(), classical });
        }
        Command::Candidates => {
            let res = fully_active_solutions(&a, omega);
            report.candidates = Some(candidate_tuples(&principal_order(&a), omega));
            report.solvable = Some(!res.fully_active.is_empty());
            report.fully_active = Some(res.fully_active.into_iter().map(|fa| fa.x).collect());
            report.indices = Some(res.indices);
        }
        Command::Exact => {
            let exact = exact_solution_set(&a, omega, opts.cell_budget)?;
            report.solvable = Some(!exact.is_empty());
            report.exact = Some(exact);
        }
        Command::Classify => {
            let c = size_classification(&a);
            if c.class == crate::search::SizeClass::Empty {
                report.solvable = Some(false);
            }
            report.classification = Some(c);
        }
        Command::Solve => solve(&mut report, &a, omega, opts)?,
    }
    if opts.timing {
        report.timing = Some(Timing { micros: u64::try_from(started.elapsed().as_micros()).unwrap_or(u64::MAX) });
    }
    Ok(report)
}

fn solve(report: &mut SolutionReport, a: &crate::algebra::Matrix, omega: &Omega, opts: &RunOptions) -> Result<()> {
    let res = fully_active_solutions(a, omega);
    let exact = exact_solution_set(a, omega, opts.cell_budget)?;
    let fully_active: Vec<Vec<Scalar>> = res.fully_active.into_iter().map(|fa| fa.x).collect();
    let mut rel = Vec::with_capacity(fully_active.len());
    for x in &fully_active {
        rel.push(RelReport { x: x.clone(), boxes: rel_set(a, omega, x)? });
    }
    let classification = size_classification(a);
    let classical = classical(a, omega);

    let mut rel_within_exact = true;
    for r in &rel {
        if !box_union_subset(&r.boxes, &exact)? {
            rel_within_exact = false;
            report.warnings.push(format!("Rel({}) is not contained in the exact set", r.x.iter().join(", ")));
        }
    }
    let mut vertices = fully_active_vertices(a, omega, opts.cell_budget)?;
    vertices.sort();
    let mut sorted = fully_active.clone();
    sorted.sort();
    let vertices_agree = vertices == sorted;
    if !vertices_agree {
        report.warnings.push("fully active solutions differ from the feasible arrangement vertices".into());
    }
    let classification_agrees = classification.class.admits(exact.cardinality());
    if !classification_agrees {
        report.warnings.push(format!("size class {} does not admit the exact set", classification.class));
    }
    let classical_agrees = classical.as_ref().map(|c| c.solvable != exact.is_empty());
    if classical_agrees == Some(false) {
        report.warnings.push("covering test disagrees with the exact set".into());
    }
    let consistent = rel_within_exact && vertices_agree && classification_agrees && classical_agrees != Some(false);

    report.solvable = Some(!exact.is_empty());
    report.fully_active = Some(fully_active);
    report.indices = Some(res.indices);
    report.rel = Some(rel);
    report.exact = Some(exact);
    report.classification = Some(classification);
    report.cross_check = Some(CrossCheck { rel_within_exact, vertices_agree, classification_agrees, classical_agrees, consistent });
    Ok(())
}
