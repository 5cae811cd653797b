//! Text and LaTeX renderings of an [`AnalysisReport`].

use std::fmt::Write;

use crate::cli::problem::OutputFormat;
use crate::cli::report::AnalysisReport;

pub fn render(report: &AnalysisReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => report.to_json(),
        OutputFormat::Text => render_text(report),
        OutputFormat::Latex => render_latex(report),
    }
}

fn table(rows: &[Vec<String>], indent: &str) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = indent.to_string();
        for (c, cell) in row.iter().enumerate() {
            line.push_str(cell);
            if c + 1 < row.len() {
                line.push_str(&" ".repeat(widths[c] - cell.chars().count() + 2));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

pub fn render_text(report: &AnalysisReport) -> String {
    let n = &report.tilde_n;
    let mut out = String::new();
    let _ = writeln!(out, "{}: rank {}, |G| = {}, {} classes, ñ = {n}", report.name, report.rank, report.group.order, report.group.class_count);

    let mut rows = vec![["class", "rep", "size", "order", "rank", "divisors"].map(String::from).to_vec()];
    for c in &report.group.classes {
        let divs: Vec<String> = c.elementary_divisors.iter().map(|d| d.to_string()).collect();
        rows.push(vec![
            c.index.to_string(),
            c.representative.to_string(),
            c.size.to_string(),
            c.element_order.to_string(),
            c.rank.to_string(),
            if divs.is_empty() { "-".into() } else { divs.join(" ") },
        ]);
    }
    out.push_str("\nclasses\n");
    out.push_str(&table(&rows, "  "));

    let t = &report.character_table;
    let _ = writeln!(out, "\ncharacter table ({}, conductor {})", serde_json::to_value(t.source).unwrap().as_str().unwrap(), t.conductor);
    let mut rows = vec![std::iter::once(String::new()).chain((0..t.values.first().map_or(0, Vec::len)).map(|c| format!("c{c}"))).collect()];
    for (i, r) in t.values.iter().enumerate() {
        rows.push(std::iter::once(format!("χ_{i}")).chain(r.iter().cloned()).collect());
    }
    out.push_str(&table(&rows, "  "));
    let _ = writeln!(out, "\nδ = χ_{}", report.reciprocity.index);

    out.push_str("\nmultiplicities\n");
    for m in &report.multiplicities {
        let _ = writeln!(out, "  m(χ_{}; q)  degree {}, minimal period {}", m.character, m.degree, m.minimal_period);
        let rows: Vec<Vec<String>> = m
            .constituents
            .iter()
            .map(|c| vec![format!("gcd(ñ, q) = {}", c.gcd), c.polynomial.clone()])
            .collect();
        out.push_str(&table(&rows, "    "));
    }

    out.push_str("\norbit counts\n");
    for o in &report.orbit_counts {
        let _ = writeln!(out, "  orbits with isotropy in ker χ_{}", o.character);
        let rows: Vec<Vec<String>> =
            o.constituents.iter().map(|c| vec![format!("gcd(ñ, q) = {}", c.gcd), c.polynomial.clone()]).collect();
        out.push_str(&table(&rows, "    "));
    }

    let _ = writeln!(out, "\nverification (q ≤ {}{})", report.q_max, if report.oracle { ", with brute-force oracle" } else { "" });
    let rows: Vec<Vec<String>> = report
        .verdicts
        .iter()
        .map(|v| vec![v.status.to_uppercase(), v.check.clone(), if v.passed { v.statement.clone() } else { v.detail.clone() }])
        .collect();
    out.push_str(&table(&rows, "  "));
    for c in &report.conventions {
        let _ = writeln!(out, "\nnote: {c}");
    }
    out
}

pub fn render_latex(report: &AnalysisReport) -> String {
    let n = &report.tilde_n;
    let mut out = String::new();
    let _ = writeln!(out, "% {}: |G| = {}, \\tilde{{n}} = {n}", report.name, report.group.order);
    for m in &report.multiplicities {
        let _ = writeln!(out, "\\[\nm(\\chi_{{{}}};\\,q) =\n\\begin{{cases}}", m.character);
        let last = m.qp.constituents().len();
        for (k, (d, p)) in m.qp.constituents().into_iter().enumerate() {
            let sep = if k + 1 < last { " \\\\" } else { "" };
            let _ = writeln!(out, "  {} & \\gcd\\{{{n},q\\}} = {d}{sep}", p.render_latex("q"));
        }
        out.push_str("\\end{cases}\n\\]\n");
    }
    out
}
