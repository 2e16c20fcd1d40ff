//! Report documents and their text and JSON renderings.
//!
//! The structured form is JSON with the key names below, frozen under the
//! schema tag [`SCHEMA`]. Expressions inside a report are rendered in the
//! session syntax so they can be pasted back into a session file.

use std::fmt::Write as _;

use derlie_core::classify::{CanonicalForm, Solv2Instance};
use derlie_core::{ChainCertificate, Derivation, LieAlgebra, RatFunc, Report};
use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "derlie.report/1.0";
pub const BATCH_SCHEMA: &str = "derlie.batch/1.0";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRecord {
    pub bound: String,
    pub lhs: usize,
    pub rhs: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Certificate data attached to a report: canonical-form witnesses, a chain
/// certificate, or a counterexample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: String,
    pub entries: Vec<Entry>,
    pub checks: Vec<CheckRecord>,
}

impl Witness {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub schema: String,
    pub algebra: String,
    pub variables: Vec<String>,
    pub basis: Vec<String>,
    pub dim_q: usize,
    pub rank_r: usize,
    pub closed: bool,
    pub solvable: bool,
    pub nilpotent: bool,
    pub derived_length: Option<usize>,
    pub nilpotency_class: Option<usize>,
    pub center_dim: usize,
    pub derived_series_dims: Vec<usize>,
    pub lower_central_dims: Vec<usize>,
    pub bound_checks: Vec<BoundRecord>,
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Batch {
    pub schema: String,
    pub all_pass: bool,
    pub reports: Vec<ReportDoc>,
}

fn entry(name: impl Into<String>, value: impl Into<String>) -> Entry {
    Entry {
        name: name.into(),
        value: value.into(),
    }
}

fn show_d(d: &Derivation, vars: &[String]) -> String {
    d.display(vars).to_string()
}

fn show_r(r: &RatFunc, vars: &[String]) -> String {
    r.display(vars).to_string()
}

impl ReportDoc {
    /// Report for `l`; a failed bound attaches a counterexample witness.
    pub fn new(name: &str, vars: &[String], l: &LieAlgebra, r: &Report) -> Self {
        let basis: Vec<String> = l.basis().basis().iter().map(|d| show_d(d, vars)).collect();
        let mut doc = ReportDoc {
            schema: SCHEMA.into(),
            algebra: name.into(),
            variables: vars.to_vec(),
            basis,
            dim_q: r.dim_q,
            rank_r: r.rank_r,
            closed: r.closed,
            solvable: r.solvable,
            nilpotent: r.nilpotent,
            derived_length: r.derived_length,
            nilpotency_class: r.nilpotency_class,
            center_dim: r.center_dim,
            derived_series_dims: r.derived_dims.clone(),
            lower_central_dims: r.lower_central_dims.clone(),
            bound_checks: r
                .bound_checks
                .iter()
                .map(|b| BoundRecord {
                    bound: b.id.as_str().into(),
                    lhs: b.lhs,
                    rhs: b.rhs,
                    pass: b.pass,
                })
                .collect(),
            witnesses: Vec::new(),
        };
        if !doc.bounds_pass() {
            doc.witnesses.push(counterexample(l, r, vars));
        }
        doc
    }

    pub fn bounds_pass(&self) -> bool {
        self.bound_checks.iter().all(|b| b.pass)
    }

    /// Bounds and every attached certificate check pass.
    pub fn all_pass(&self) -> bool {
        self.bounds_pass() && self.witnesses.iter().all(Witness::all_pass)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let opt = |v: Option<usize>| v.map_or("none".to_string(), |v| v.to_string());
        let dims = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(", ");
        let _ = writeln!(out, "algebra: {}", self.algebra);
        let _ = writeln!(out, "variables: {}", self.variables.join(", "));
        let _ = writeln!(out, "basis:");
        for b in &self.basis {
            let _ = writeln!(out, "  {b}");
        }
        let _ = writeln!(out, "dim_Q = {}", self.dim_q);
        let _ = writeln!(out, "rank_R = {}", self.rank_r);
        let _ = writeln!(out, "closed = {}", self.closed);
        let _ = writeln!(out, "solvable = {}", self.solvable);
        let _ = writeln!(out, "nilpotent = {}", self.nilpotent);
        let _ = writeln!(out, "derived_length = {}", opt(self.derived_length));
        let _ = writeln!(out, "nilpotency_class = {}", opt(self.nilpotency_class));
        let _ = writeln!(out, "center_dim = {}", self.center_dim);
        let _ = writeln!(out, "derived_series_dims = ({})", dims(&self.derived_series_dims));
        let _ = writeln!(out, "lower_central_dims = ({})", dims(&self.lower_central_dims));
        for b in &self.bound_checks {
            let verdict = if b.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "bound {}: {} <= {} {verdict}", b.bound, b.lhs, b.rhs);
        }
        for w in &self.witnesses {
            let _ = writeln!(out, "witness {}:", w.kind);
            for e in &w.entries {
                let _ = writeln!(out, "  {} = {}", e.name, e.value);
            }
            for c in &w.checks {
                let verdict = if c.pass { "PASS" } else { "FAIL" };
                match &c.detail {
                    Some(d) => {
                        let _ = writeln!(out, "  check {}: {verdict} ({d})", c.name);
                    }
                    None => {
                        let _ = writeln!(out, "  check {}: {verdict}", c.name);
                    }
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

impl Batch {
    pub fn new(reports: Vec<ReportDoc>) -> Self {
        Batch {
            schema: BATCH_SCHEMA.into(),
            all_pass: reports.iter().all(ReportDoc::all_pass),
            reports,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, r) in self.reports.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            out.push_str(&r.to_text());
        }
        let verdict = if self.all_pass { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "\nverified {} algebras: {verdict}", self.reports.len());
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("batch serializes");
        s.push('\n');
        s
    }
}

fn counterexample(l: &LieAlgebra, r: &Report, vars: &[String]) -> Witness {
    let mut entries = Vec::new();
    for (i, term) in l.derived_series().iter().enumerate() {
        let span: Vec<String> = term.basis().iter().map(|d| show_d(d, vars)).collect();
        entries.push(entry(format!("derived[{i}]"), format!("span{{{}}}", span.join(", "))));
    }
    let checks = r
        .bound_checks
        .iter()
        .filter(|b| !b.pass)
        .map(|b| CheckRecord {
            name: format!("bound {}", b.id.as_str()),
            pass: false,
            detail: Some(format!("{} > {}", b.lhs, b.rhs)),
        })
        .collect();
    Witness {
        kind: "counterexample".into(),
        entries,
        checks,
    }
}

pub fn chain_witness(cert: &ChainCertificate, vars: &[String]) -> Witness {
    let mut entries = Vec::new();
    for (i, d) in cert.adapted_basis.iter().enumerate() {
        entries.push(entry(format!("D{}", i + 1), show_d(d, vars)));
    }
    for (s, ideal) in cert.ideals.iter().enumerate() {
        entries.push(entry(format!("dim I{s}"), ideal.dim().to_string()));
    }
    let checks = cert
        .checks
        .iter()
        .map(|c| CheckRecord {
            name: c.name.clone(),
            pass: c.pass,
            detail: c.witness.as_ref().map(|w| format!("offending element {}", show_d(w, vars))),
        })
        .collect();
    Witness {
        kind: "chain".into(),
        entries,
        checks,
    }
}

fn passed(names: &[String]) -> Vec<CheckRecord> {
    names
        .iter()
        .map(|n| CheckRecord {
            name: n.clone(),
            pass: true,
            detail: None,
        })
        .collect()
}

pub fn canonical_witness(form: &CanonicalForm, vars: &[String]) -> Witness {
    let mut entries: Vec<Entry> = form
        .derivations
        .iter()
        .map(|(n, d)| entry(n.clone(), show_d(d, vars)))
        .collect();
    entries.extend(form.functions.iter().map(|(n, r)| entry(n.clone(), show_r(r, vars))));
    entries.push(entry("dim_F", form.dim_f.to_string()));
    if let Some(k) = form.chain_length {
        entries.push(entry("k", k.to_string()));
    }
    Witness {
        kind: form.kind.as_str().into(),
        entries,
        checks: passed(&form.relations),
    }
}

pub fn solv2_witness(inst: &Solv2Instance, vars: &[String]) -> Witness {
    let mut entries = vec![
        entry("D1", show_d(&inst.d1, vars)),
        entry("D2", show_d(&inst.d2, vars)),
        entry("a", show_r(&inst.a, vars)),
    ];
    if let Some(l) = &inst.d2_rescale {
        entries.push(entry("D2 divided by", l.to_string()));
    }
    for (i, g) in inst.generators.iter().enumerate() {
        entries.push(entry(format!("g{}", i + 1), show_d(g, vars)));
    }
    Witness {
        kind: format!("solv2-type-{}", inst.kind),
        entries,
        checks: passed(&inst.relations),
    }
}
