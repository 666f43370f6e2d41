//! Structured reports for the command-line tool, in a human-readable and a
//! JSON form. Both are deterministic functions of the report value.

use std::fmt::Write;

use serde::Serialize;

use crate::action::{IdentityReport, TwistedPartialAction, VerificationReport, Witness};
use crate::criteria::{CriteriaReport, ElementSolve, ModuleIsoPair, Rejection, Verdict};
use crate::dsl::{self, Document};
use crate::graded::{describe, ConditionReport, GradedAlgebra, UvPropertyReport};
use crate::matrix::Matrix;
use crate::search::SearchBudget;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Human,
    Json,
}

pub trait Emit: Serialize {
    fn human(&self) -> String;
}

pub fn emit_report<R: Emit>(r: &R, format: Format) -> String {
    match format {
        Format::Human => r.human(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("reports serialize");
            s.push('\n');
            s
        }
    }
}

fn witness_text(w: &Witness) -> String {
    let mut s = format!("at ({})", w.elements.join(", "));
    if let Some(i) = w.basis_index {
        write!(s, ", basis vector {i}").unwrap();
    }
    write!(s, ": {}", w.detail).unwrap();
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct ActionVerification {
    pub command: &'static str,
    pub action: String,
    pub field: String,
    pub verdict: &'static str,
    pub report: VerificationReport,
}

impl ActionVerification {
    pub fn new(action: &str, th: &TwistedPartialAction, report: VerificationReport) -> ActionVerification {
        ActionVerification {
            command: "verify-action",
            action: action.into(),
            field: th.ambient().field().to_string(),
            verdict: if report.passed() { "pass" } else { "fail" },
            report,
        }
    }
}

impl Emit for ActionVerification {
    fn human(&self) -> String {
        let mut s = format!("action {} over {}: {}\n", self.action, self.field, self.verdict);
        for c in &self.report.checks {
            match &c.witness {
                None => writeln!(s, "  ok    {}", c.check).unwrap(),
                Some(w) => writeln!(s, "  FAIL  {} {}", c.check, witness_text(w)).unwrap(),
            }
        }
        for (g, h) in &self.report.vacuous_twists {
            writeln!(s, "  note  twist ({g}, {h}) has zero carrier").unwrap();
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentitiesOutput {
    pub command: &'static str,
    pub action: String,
    pub verdict: &'static str,
    pub verification: VerificationReport,
    pub identities: Option<IdentityReport>,
}

impl IdentitiesOutput {
    pub fn new(action: &str, verification: VerificationReport, identities: Option<IdentityReport>) -> IdentitiesOutput {
        let ok = verification.passed() && identities.as_ref().is_some_and(|r| r.passed());
        IdentitiesOutput {
            command: "identities",
            action: action.into(),
            verdict: if ok { "pass" } else { "fail" },
            verification,
            identities,
        }
    }
}

impl Emit for IdentitiesOutput {
    fn human(&self) -> String {
        let mut s = format!("identities for action {}: {}\n", self.action, self.verdict);
        match &self.identities {
            None => {
                let f = self.verification.first_failure().expect("verification failed");
                writeln!(s, "  action is not verified: {}", f.check).unwrap();
            }
            Some(r) => {
                for c in &r.checks {
                    match &c.witness {
                        None => writeln!(s, "  ok    {:?}", c.check).unwrap(),
                        Some(w) => writeln!(s, "  FAIL  {:?} {}", c.check, witness_text(w)).unwrap(),
                    }
                }
            }
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GradingCheck {
    pub command: &'static str,
    pub grading: String,
    pub field: String,
    pub verdict: &'static str,
    pub dimensions: Vec<(String, usize)>,
    pub condition_i: ConditionReport,
    pub nondegeneracy: ConditionReport,
}

impl GradingCheck {
    pub fn new(name: &str, gb: &GradedAlgebra) -> GradingCheck {
        let condition_i = crate::graded::check_condition_i(gb);
        let nondegeneracy = crate::graded::check_homogeneous_nondegeneracy(gb);
        let grp = gb.group();
        GradingCheck {
            command: "check-grading",
            grading: name.into(),
            field: gb.field().to_string(),
            verdict: if condition_i.passed() && nondegeneracy.passed() {
                "pass"
            } else {
                "fail"
            },
            dimensions: grp
                .elements()
                .map(|g| (grp.name(g).to_string(), gb.component(g).dim()))
                .collect(),
            condition_i,
            nondegeneracy,
        }
    }
}

fn condition_lines(s: &mut String, title: &str, r: &ConditionReport) {
    for c in &r.checks {
        if c.passed {
            writeln!(s, "  ok    {title} at {}", c.g).unwrap();
        } else {
            writeln!(
                s,
                "  FAIL  {title} at {}: {} (witness {})",
                c.g,
                c.detail.as_deref().unwrap_or(""),
                c.witness.as_deref().unwrap_or("-")
            )
            .unwrap();
        }
    }
}

impl Emit for GradingCheck {
    fn human(&self) -> String {
        let mut s = format!("grading {} over {}: {}\n", self.grading, self.field, self.verdict);
        let dims: Vec<String> = self.dimensions.iter().map(|(g, d)| format!("{g}:{d}")).collect();
        writeln!(s, "  dimensions {}", dims.join(" ")).unwrap();
        condition_lines(&mut s, "condition (i)", &self.condition_i);
        condition_lines(&mut s, "non-degeneracy", &self.nondegeneracy);
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistEntry {
    pub g: String,
    pub h: String,
    pub r: Matrix,
    pub l: Matrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct CornerPairEntry {
    pub g: String,
    pub u_r: Matrix,
    pub u_l: Matrix,
    pub v_r: Matrix,
    pub v_l: Matrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateOutput {
    /// Names of the basis of `B_1`, in which the action is written.
    pub identity_basis: Vec<String>,
    pub domains: Vec<(String, Vec<String>)>,
    pub thetas: Vec<(String, Matrix)>,
    pub twists: Vec<TwistEntry>,
    pub module_pairs: Vec<ModuleIsoPair>,
    pub corner_pairs: Vec<CornerPairEntry>,
    pub corner_identities: Vec<UvPropertyReport>,
    pub crossed_dim: usize,
    pub phi: Matrix,
    /// The reconstructed action in the input format.
    pub action_text: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriteriaOutput {
    pub command: &'static str,
    pub grading: String,
    pub field: String,
    pub verdict: &'static str,
    pub route: String,
    pub budget: SearchBudget,
    pub condition_i: ConditionReport,
    pub nondegeneracy: ConditionReport,
    pub s_unital: Vec<(String, bool)>,
    pub solves: Vec<ElementSolve>,
    pub rejections: Vec<Rejection>,
    pub undecided: Option<String>,
    pub certificate: Option<CertificateOutput>,
}

impl CriteriaOutput {
    pub fn new(name: &str, gb: &GradedAlgebra, r: &CriteriaReport) -> CriteriaOutput {
        let certificate = r.certificate.as_ref().map(|c| {
            let th = &c.action;
            let grp = th.group();
            let a = th.ambient();
            let domains = grp
                .elements()
                .map(|g| {
                    let vs = th.domain(g).space().vectors().iter().map(|v| describe(a, v)).collect();
                    (grp.name(g).to_string(), vs)
                })
                .collect();
            let thetas = grp
                .elements()
                .map(|g| (grp.name(g).to_string(), th.theta(g).clone()))
                .collect();
            let mut twists = Vec::new();
            for g in grp.elements() {
                for h in grp.elements() {
                    let w = th.twist(g, h);
                    twists.push(TwistEntry {
                        g: grp.name(g).into(),
                        h: grp.name(h).into(),
                        r: w.r_matrix().clone(),
                        l: w.l_matrix().clone(),
                    });
                }
            }
            let corner_pairs = c
                .pairs
                .iter()
                .map(|(_, p)| CornerPairEntry {
                    g: p.g.clone(),
                    u_r: p.u.r_matrix().clone(),
                    u_l: p.u.l_matrix().clone(),
                    v_r: p.v.r_matrix().clone(),
                    v_l: p.v.l_matrix().clone(),
                })
                .collect();
            let mut doc = Document {
                field: Some(a.field().into()),
                ..Default::default()
            };
            let (alg_name, grp_name) = (format!("{name}_1"), "G".to_string());
            doc.groups.insert(grp_name.clone(), dsl::group_decl(grp));
            doc.algebras.insert(alg_name.clone(), dsl::algebra_decl(a));
            doc.actions
                .insert(format!("{name}_action"), dsl::action_decl(th, &alg_name, &grp_name));
            CertificateOutput {
                identity_basis: a.names().to_vec(),
                domains,
                thetas,
                twists,
                module_pairs: c.module_pairs.clone(),
                corner_pairs,
                corner_identities: c.uv_reports.clone(),
                crossed_dim: c.crossed.dim(),
                phi: c.phi.clone(),
                action_text: dsl::print(&doc),
            }
        });
        CriteriaOutput {
            command: "check-criteria",
            grading: name.into(),
            field: gb.field().to_string(),
            verdict: match r.verdict {
                Verdict::Certificate => "certificate",
                Verdict::Rejected => "rejected",
                Verdict::Undecided => "undecided",
            },
            route: format!("{:?}", r.config.route).to_lowercase(),
            budget: r.config.budget,
            condition_i: r.condition_i.clone(),
            nondegeneracy: r.nondegeneracy.clone(),
            s_unital: r.s_unital.clone(),
            solves: r.solves.clone(),
            rejections: r.rejections.clone(),
            undecided: r.undecided.clone(),
            certificate,
        }
    }
}

impl Emit for CriteriaOutput {
    fn human(&self) -> String {
        let mut s = format!("grading {} over {}: {}\n", self.grading, self.field, self.verdict);
        writeln!(
            s,
            "  route {} seed {} trials {} enum-budget {}",
            self.route, self.budget.seed, self.budget.trials, self.budget.enum_budget
        )
        .unwrap();
        condition_lines(&mut s, "condition (i)", &self.condition_i);
        condition_lines(&mut s, "non-degeneracy", &self.nondegeneracy);
        for (g, ok) in &self.s_unital {
            writeln!(s, "  {}  D_{g} s-unital", if *ok { "yes " } else { "no  " }).unwrap();
        }
        for e in &self.solves {
            write!(s, "  solve g={} route={}", e.g, e.route).unwrap();
            if let Some(n) = &e.note {
                write!(s, ": {n}").unwrap();
            }
            if let Some(h) = e.probe_hint {
                write!(
                    s,
                    " (modular probe {})",
                    if h { "found a solution" } else { "found nothing" }
                )
                .unwrap();
            }
            s.push('\n');
        }
        for r in &self.rejections {
            write!(s, "  REJECT {}", r.condition).unwrap();
            if let Some(g) = &r.g {
                write!(s, " at {g}").unwrap();
            }
            if let Some(w) = &r.witness {
                write!(s, " witness {w}").unwrap();
            }
            if let Some(d) = &r.detail {
                write!(s, ": {d}").unwrap();
            }
            s.push('\n');
        }
        if let Some(u) = &self.undecided {
            writeln!(s, "  UNDECIDED {u}").unwrap();
        }
        if let Some(c) = &self.certificate {
            writeln!(s, "  B_1 basis: {}", c.identity_basis.join(" ")).unwrap();
            for (g, vs) in &c.domains {
                writeln!(s, "  D_{g} = span{{{}}}", vs.join(", ")).unwrap();
            }
            for (g, m) in &c.thetas {
                writeln!(s, "  theta_{g} = {m}").unwrap();
            }
            for w in &c.twists {
                writeln!(s, "  w_{},{} = (R={}, L={})", w.g, w.h, w.r, w.l).unwrap();
            }
            let ok = c.corner_identities.iter().all(|r| r.passed());
            writeln!(s, "  corner identities: {}", if ok { "all pass" } else { "FAIL" }).unwrap();
            writeln!(s, "  phi ({}-dimensional crossed product) = {}", c.crossed_dim, c.phi).unwrap();
            s.push_str("  reconstructed action:\n");
            for line in c.action_text.lines() {
                writeln!(s, "    {line}").unwrap();
            }
        }
        s
    }
}
