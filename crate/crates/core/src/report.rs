//! Single-instance commands and their text and JSON renderings.

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::checks::{Check, Mode};
use crate::chromatic::{chromatic_decomposition, monomial_form_report, ChromaticResult, MonomialFormReport};
use crate::error::{Error, Result};
use crate::flows::{flow_polynomials, FlowResult};
use crate::graph::{Multigraph, DEFAULT_ORIENTATION_EDGE_CAP};
use crate::order::{analyze_poset, OrderReport, DEFAULT_POSET_CAP};
use crate::poset::Poset;
use crate::stapledon::AuditReport;
use crate::survey::{sha256_hex, write_audit_rows, SCHEMA_VERSION};

/// Limits applied before any enumeration starts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Vertices of a graph or elements of a poset.
    pub max_size: usize,
    /// Edges, for `2^m` orientation scans.
    pub edges: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self { max_size: crate::chromatic::DEFAULT_VERTEX_CAP, edges: DEFAULT_ORIENTATION_EDGE_CAP }
    }
}

/// Versioned JSON wrapper around a command result.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema: u32,
    pub command: String,
    pub input: String,
    pub input_sha256: String,
    pub passed: bool,
    pub result: T,
}

impl<T: Serialize> Envelope<T> {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

fn envelope<T>(command: &str, path: &Path, bytes: &[u8], passed: bool, result: T) -> Envelope<T> {
    Envelope {
        schema: SCHEMA_VERSION,
        command: command.to_string(),
        input: path.display().to_string(),
        input_sha256: sha256_hex(bytes),
        passed,
        result,
    }
}

fn read_text(path: &Path) -> Result<(Vec<u8>, String)> {
    let bytes = std::fs::read(path)?;
    let text = String::from_utf8(bytes.clone()).map_err(|e| Error::Invalid(format!("input is not UTF-8: {e}")))?;
    Ok((bytes, text))
}

fn check_graph_caps(g: &Multigraph, caps: &Caps) -> Result<()> {
    if g.vertex_count() > caps.max_size {
        return Err(Error::CapExceeded { what: "vertices", value: g.vertex_count() as u128, cap: caps.max_size as u128 });
    }
    if g.edge_count() > caps.edges {
        return Err(Error::CapExceeded { what: "edges", value: g.edge_count() as u128, cap: caps.edges as u128 });
    }
    Ok(())
}

pub fn cmd_chromatic(path: &Path, caps: &Caps) -> Result<Envelope<ChromaticResult>> {
    let (bytes, text) = read_text(path)?;
    let g = Multigraph::parse(&text)?;
    check_graph_caps(&g, caps)?;
    let r = chromatic_decomposition(&g, Mode::Explore)?;
    Ok(envelope("chromatic", path, &bytes, r.holds(), r))
}

pub fn cmd_flow(path: &Path, caps: &Caps) -> Result<Envelope<FlowResult>> {
    let (bytes, text) = read_text(path)?;
    let g = Multigraph::parse(&text)?;
    check_graph_caps(&g, caps)?;
    let r = flow_polynomials(&g, Mode::Explore)?;
    Ok(envelope("flow", path, &bytes, r.holds(), r))
}

pub fn cmd_order(path: &Path, caps: &Caps) -> Result<Envelope<OrderReport>> {
    let (bytes, text) = read_text(path)?;
    let p = Poset::parse(&text)?;
    let cap = caps.max_size.min(DEFAULT_POSET_CAP);
    if p.len() > cap {
        return Err(Error::CapExceeded { what: "poset elements", value: p.len() as u128, cap: cap as u128 });
    }
    let r = analyze_poset(&p, Mode::Explore)?;
    Ok(envelope("order", path, &bytes, r.holds(), r))
}

pub fn cmd_table1() -> Result<MonomialFormReport> {
    monomial_form_report()
}

/// Audit rows as CSV, one line per inequality instance.
pub fn audits_csv(instance: &str, audits: &[AuditReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    write_audit_rows(&mut w, instance, audits)?;
    let bytes = w.into_inner().map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("csv is UTF-8"))
}

fn vector(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn push_audits(out: &mut String, audits: &[AuditReport]) {
    for a in audits {
        let degree = a.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ");
        let _ = writeln!(out, "  {} [{}]: {:?}", a.family, degree, a.verdict);
        for r in &a.rows {
            let mark = if r.holds { "ok" } else { "FAILS" };
            let _ = writeln!(out, "    j={}: {} {} {}  {mark}", r.j, r.lhs, a.relation, r.rhs);
        }
    }
}

fn push_checks(out: &mut String, checks: &[Check]) {
    let failed: Vec<&Check> = checks.iter().filter(|c| !c.holds).collect();
    let _ = writeln!(out, "checks: {} of {} hold", checks.len() - failed.len(), checks.len());
    for c in failed {
        let _ = writeln!(out, "  FAILED {}: {}", c.name, c.detail);
    }
}

pub fn render_chromatic(r: &ChromaticResult) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "chi(n) = {}", r.chi);
    let _ = writeln!(out, "chi* = {}", r.chi_star);
    let _ = writeln!(out, "a = {}", vector(&r.split.p));
    let _ = writeln!(out, "b = {}", vector(&r.split.q));
    let _ = writeln!(out, "acyclic orientations = {}", r.acyclic_count);
    let _ = writeln!(out, "sum of Omega* over acyclic orientations = {}", r.chi_star_via_orders);
    let _ = writeln!(out, "inequalities:");
    push_audits(&mut out, &r.audits);
    push_checks(&mut out, &r.checks);
    out
}

pub fn render_flow(r: &FlowResult) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "cyclomatic number = {}", r.xi);
    let _ = writeln!(out, "phi(n) = {}", r.phi);
    let _ = writeln!(out, "f(n) = {}", r.f);
    let _ = writeln!(out, "phi* = {}", r.phi_star);
    let _ = writeln!(out, "f* = {}", r.f_star);
    let _ = writeln!(out, "alpha = {}", vector(&r.phi_split.p));
    let _ = writeln!(out, "beta = {}", vector(&r.phi_split.q));
    let _ = writeln!(out, "c = {}", vector(&r.f_split.p));
    let _ = writeln!(out, "d = {}", vector(&r.f_split.q));
    let _ = writeln!(out, "totally cyclic orientations = {}", r.tc_orientation_count);
    let _ = writeln!(out, "in-degree sequences = {}", r.indegree_sequence_count);
    let _ = writeln!(out, "positive flows summed over orientations:");
    for k in &r.kochol {
        let _ = writeln!(out, "  n={}: {} (integral count {})", k.n, k.orientation_sum, k.integral);
    }
    let _ = writeln!(out, "inequalities:");
    push_audits(&mut out, &r.audits);
    push_checks(&mut out, &r.checks);
    out
}

pub fn render_order(r: &OrderReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "strict order polynomial = {}", r.omega);
    let _ = writeln!(out, "Omega* = {}", r.omega_star);
    let _ = writeln!(out, "a = {}", vector(&r.split.p));
    let _ = writeln!(out, "b = {}", vector(&r.split.q));
    let _ = writeln!(out, "order polytope ehr(n) = {}", r.ehrhart);
    let _ = writeln!(out, "h* (lattice points) = {}", r.hstar);
    let _ = writeln!(out, "h* (descents) = {}", r.hstar_descents);
    let _ = writeln!(out, "interior h* = {}", r.hstar_interior);
    let _ = writeln!(
        out,
        "h* split: a = {}, b = {}, c = {}",
        vector(&r.stapledon_ab.a),
        vector(&r.stapledon_ab.b),
        vector(&r.stapledon_ca.c)
    );
    let _ = writeln!(out, "reciprocity:");
    for row in &r.reciprocity {
        let _ = writeln!(out, "  n={}: (-1)^d ehr(-n) = {}, interior points = {}", row.n, row.reciprocal, row.interior);
    }
    let _ = writeln!(out, "inequalities:");
    push_audits(&mut out, &r.audits);
    push_checks(&mut out, &r.checks);
    out
}

pub fn render_table1(r: &MonomialFormReport) -> String {
    let mut out = String::new();
    for f in &r.forms {
        let _ = writeln!(out, "d={} j={}: {}", f.d, f.j, f.normalized);
    }
    let _ = writeln!(out, "reference rows:");
    for m in &r.matches {
        let verdict = if m.matched_j.is_empty() {
            "NOT MATCHED".to_string()
        } else {
            format!("matched j={:?}", m.matched_j)
        };
        let _ = writeln!(out, "  d={}: {}  {verdict}", m.d, m.reference);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table1_text() {
        let text = render_table1(&cmd_table1().unwrap());
        assert!(text.contains("d=5 j=2: 5c_1 + c_2 - 4c_3 - 5c_4 + 20 >= 0"));
        assert!(!text.contains("NOT MATCHED"));
    }

    #[test]
    fn audit_csv_rows() {
        let r = chromatic_decomposition(&Multigraph::complete(3), Mode::Verify).unwrap();
        let csv = audits_csv("k3", &r.audits).unwrap();
        assert!(csv.lines().any(|l| l == "k3,binomial_growth,3,1,0,<=,0,true"));
    }
}
