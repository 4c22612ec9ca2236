use std::fmt::Write;

use mw_core::io::{ChowReport, InfoReport, InvariantsReport, ProfileRow, RealizationReport, VerdictJson};

use crate::commands::{EntryResult, QRow, Summary};

fn set(s: &[usize]) -> String {
    let parts: Vec<String> = s.iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

fn family(f: &[Vec<usize>]) -> String {
    f.iter().map(|s| set(s)).collect::<Vec<_>>().join(", ")
}

/// Bracketed rows with right-aligned columns.
fn matrix(rows: &[Vec<String>]) -> String {
    let cols = rows.first().map_or(0, |r| r.len());
    let width: Vec<usize> = (0..cols)
        .map(|j| rows.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r
            .iter()
            .zip(&width)
            .map(|(c, &w)| format!("{c:>w$}"))
            .collect();
        let _ = writeln!(out, "[{}]", cells.join("   "));
    }
    out
}

fn verdict(v: &VerdictJson) -> &'static str {
    match v {
        VerdictJson::NonEmpty => "nonempty",
        VerdictJson::Empty => "empty",
        VerdictJson::Undecided => "undecided",
    }
}

pub fn info(r: &InfoReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "Matroid of rank {} on {} elements", r.rank, r.n);
    let _ = writeln!(out, "bases: {}", r.basis_count);
    let _ = writeln!(out, "loops: {}", set(&r.loops));
    let _ = writeln!(out, "simple: {}", r.simple);
    let _ = writeln!(out, "circuits ({}): {}", r.circuits.len(), family(&r.circuits));
    for (k, flats) in r.flats_by_rank.iter().enumerate() {
        let _ = writeln!(out, "flats of rank {k} ({}): {}", flats.len(), family(flats));
    }
    if let Some(o) = &r.automorphism_order {
        let _ = writeln!(out, "automorphism group order: {o}");
    }
    out
}

pub fn realization(r: &RealizationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "Realization space in characteristic {}", r.characteristic);
    let _ = writeln!(out, "basis: {}", set(&r.basis));
    let _ = writeln!(out, "matrix:");
    out.push_str(&matrix(&r.matrix));
    if !r.substitutions.is_empty() {
        let _ = writeln!(out, "substitutions:");
        for s in &r.substitutions {
            let _ = writeln!(out, "  {s}");
        }
    }
    let ideal = if r.ideal.is_empty() { "0".to_string() } else { r.ideal.join(", ") };
    let _ = writeln!(out, "ideal: <{ideal}>");
    let _ = writeln!(out, "inequations ({}):", r.inequations.len());
    for u in &r.inequations {
        let _ = writeln!(out, "  {u}");
    }
    let _ = writeln!(out, "free variables ({}): {}", r.free_variables.len(), r.free_variables.join(", "));
    let _ = writeln!(out, "verdict: {}", verdict(&r.verdict));
    if let Some(e) = &r.budget_error {
        let _ = writeln!(out, "budget: {e}");
    }
    out
}

pub fn profile(rows: &[ProfileRow]) -> String {
    let mut out = String::from("char  verdict    free\n");
    for r in rows {
        let _ = writeln!(out, "{:<5} {:<10} {}", r.characteristic, verdict(&r.verdict), r.free_variables);
    }
    let yes: Vec<String> = rows
        .iter()
        .filter(|r| r.verdict == VerdictJson::NonEmpty)
        .map(|r| r.characteristic.to_string())
        .collect();
    let _ = writeln!(
        out,
        "realizable in characteristics: {}",
        if yes.is_empty() { "none".to_string() } else { yes.join(", ") }
    );
    out
}

pub fn q_table(rows: &[QRow]) -> String {
    let mut out = String::from("q     realizable\n");
    for r in rows {
        let v = match (r.realizable, &r.error) {
            (Some(b), _) => b.to_string(),
            (None, Some(e)) => format!("undecided ({e})"),
            (None, None) => "undecided".to_string(),
        };
        let _ = writeln!(out, "{:<5} {v}", r.q);
    }
    out
}

pub fn invariants(r: &InvariantsReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "Tutte polynomial: {}", r.tutte);
    let _ = writeln!(out, "characteristic polynomial: {}", r.characteristic);
    match &r.reduced_characteristic {
        Some(p) => {
            let _ = writeln!(out, "reduced characteristic polynomial: {p}");
        }
        None => {
            let _ = writeln!(out, "reduced characteristic polynomial: undefined (matroid has loops)");
        }
    }
    let _ = writeln!(out, "log-concave: {}", if r.log_concave { "yes" } else { "no" });
    match &r.ingleton_violation {
        Some(w) => {
            let _ = writeln!(
                out,
                "Ingleton violated: A = {}, B = {}, C = {}, D = {} ({} > {})",
                set(&w.a),
                set(&w.b),
                set(&w.c),
                set(&w.d),
                w.lhs,
                w.rhs
            );
        }
        None => {
            let _ = writeln!(out, "Ingleton: no violation among small disjoint quadruples");
        }
    }
    out
}

pub fn chow(r: &ChowReport, chi_bar: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "Chow ring on {} flat variables", r.flats.len());
    let _ = writeln!(out, "graded dimensions: {:?}", r.graded_dimensions);
    let _ = writeln!(out, "k = {}, ell = {}", r.k, r.ell);
    let _ = writeln!(out, "Mat1:");
    out.push_str(&matrix(&r.mat1));
    let _ = writeln!(out, "Mat2:");
    out.push_str(&matrix(&r.mat2));
    let _ = writeln!(out, "Mat2 == Mat1: {}", r.mat1 == r.mat2);
    let _ = writeln!(out, "kernel dimension: {}", r.kernel_dimension);
    let _ = writeln!(out, "Poincare duality: {}", r.poincare_nondegenerate);
    let _ = writeln!(out, "hard Lefschetz: {}", r.hard_lefschetz_iso);
    let _ = writeln!(out, "Hodge-Riemann: {}", r.hodge_riemann_definite);
    let _ = writeln!(out, "omega from volumes: ({})", r.omega.join(", "));
    let _ = writeln!(out, "reduced characteristic polynomial: {chi_bar}");
    out
}

pub fn corpus(char: u64, results: &[EntryResult], s: &Summary) -> String {
    let mut out = String::new();
    for r in results {
        match &r.error {
            Some(e) => {
                let _ = writeln!(out, "{}: {} ({e})", r.id, r.verdict);
            }
            None => {
                let _ = writeln!(out, "{}: {}", r.id, r.verdict);
            }
        }
    }
    let _ = writeln!(
        out,
        "{} of {} realizable in characteristic {char} ({} not, {} undecided, {} errors)",
        s.realizable, s.entries, s.not_realizable, s.undecided, s.errors
    );
    out
}
