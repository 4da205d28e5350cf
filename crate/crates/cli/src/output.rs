//! Report documents and their three renderings: human tables, JSON, CSV.
//!
//! JSON output is canonical: struct fields serialize in a fixed order, map
//! keys are emitted in ascending numeric order, and every number is an
//! integer (rationals elsewhere in the interface travel as strings), so
//! parsing and re-rendering a document is byte-identical and repeated runs
//! of one command produce identical bytes.

use serde::Serialize;
use serde_json::{json, Map, Value};

use confspace::analyze::{DecompositionRow, ScanReport, Stabilization, Violation};
use confspace::homology::BettiTable;
use confspace::manifold::{ManifoldDocument, ManifoldModel};
use confspace::ValidationIssue;

#[derive(Copy, Clone, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Serialize)]
struct ViolationDoc {
    degree: usize,
    k: usize,
    value: usize,
    next: usize,
}

#[derive(Serialize)]
struct DecompositionDoc {
    degree: usize,
    total: usize,
    previous: usize,
    quotient: usize,
    pass: bool,
}

/// One result document; every command renders through this shape.
#[derive(Serialize)]
pub struct Report {
    manifold: String,
    d: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k_range: Option<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    degree: Option<usize>,
    /// `[[k, [b_0, b_1, ...]], ...]`
    betti: BettiEntries,
    /// `[[k, top_chain_degree], ...]` (null top for an empty complex)
    tops: TopEntries,
    #[serde(skip_serializing_if = "Option::is_none")]
    violations: Option<Vec<ViolationDoc>>,
    /// degree (as string key, ascending) -> {"at_k", "value"} | "unresolved"
    #[serde(skip_serializing_if = "Option::is_none")]
    stabilization: Option<Map<String, Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    decomposition: Option<Vec<DecompositionDoc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pass: Option<bool>,
    #[serde(skip)]
    closed: bool,
    #[serde(skip)]
    orientable: bool,
}

/// `[[k, [b_0, b_1, ...]], ...]` rows of the JSON schema.
type BettiEntries = Vec<(usize, Vec<usize>)>;
/// `[[k, top_chain_degree], ...]` rows.
type TopEntries = Vec<(usize, Option<usize>)>;

fn betti_entries(tables: &[BettiTable]) -> (BettiEntries, TopEntries) {
    let betti = tables
        .iter()
        .map(|t| (t.k(), t.values().to_vec()))
        .collect();
    let tops = tables.iter().map(|t| (t.k(), t.top_degree())).collect();
    (betti, tops)
}

fn stabilization_map(entries: impl Iterator<Item = (usize, Stabilization)>) -> Map<String, Value> {
    let mut map = Map::new();
    for (degree, stab) in entries {
        let value = match stab {
            Stabilization::Resolved { at_k, value } => json!({ "at_k": at_k, "value": value }),
            Stabilization::Unresolved => Value::String("unresolved".into()),
        };
        map.insert(degree.to_string(), value);
    }
    map
}

fn violation_docs(violations: &[Violation]) -> Vec<ViolationDoc> {
    violations
        .iter()
        .map(|v| ViolationDoc {
            degree: v.degree,
            k: v.k,
            value: v.value,
            next: v.next,
        })
        .collect()
}

impl Report {
    fn base(m: &ManifoldModel) -> Report {
        Report {
            manifold: m.name().to_string(),
            d: m.d(),
            k: None,
            k_range: None,
            degree: None,
            betti: Vec::new(),
            tops: Vec::new(),
            violations: None,
            stabilization: None,
            decomposition: None,
            pass: None,
            closed: m.closed(),
            orientable: m.orientable(),
        }
    }

    pub fn betti(m: &ManifoldModel, table: &BettiTable) -> Report {
        let (betti, tops) = betti_entries(std::slice::from_ref(table));
        Report {
            k: Some(table.k()),
            betti,
            tops,
            ..Report::base(m)
        }
    }

    pub fn monotonicity(m: &ManifoldModel, scan: &ScanReport) -> Report {
        let (betti, tops) = betti_entries(&scan.tables);
        Report {
            k_range: Some([0, scan.k_max]),
            betti,
            tops,
            violations: Some(violation_docs(&scan.violations)),
            stabilization: Some(stabilization_map(
                scan.stabilization.iter().map(|(&d, &s)| (d, s)),
            )),
            ..Report::base(m)
        }
    }

    pub fn stability_all(m: &ManifoldModel, scan: &ScanReport) -> Report {
        let (betti, tops) = betti_entries(&scan.tables);
        Report {
            k_range: Some([0, scan.k_max]),
            betti,
            tops,
            stabilization: Some(stabilization_map(
                scan.stabilization.iter().map(|(&d, &s)| (d, s)),
            )),
            ..Report::base(m)
        }
    }

    pub fn stability_single(
        m: &ManifoldModel,
        scan: &ScanReport,
        degree: usize,
        stab: Stabilization,
    ) -> Report {
        let (betti, tops) = betti_entries(&scan.tables);
        Report {
            k_range: Some([0, scan.k_max]),
            degree: Some(degree),
            betti,
            tops,
            stabilization: Some(stabilization_map(std::iter::once((degree, stab)))),
            ..Report::base(m)
        }
    }

    pub fn decomposition(
        m: &ManifoldModel,
        k: usize,
        rows: &[DecompositionRow],
        pass: bool,
    ) -> Report {
        Report {
            k: Some(k),
            decomposition: Some(
                rows.iter()
                    .map(|r| DecompositionDoc {
                        degree: r.degree,
                        total: r.total,
                        previous: r.previous,
                        quotient: r.quotient,
                        pass: r.passes(),
                    })
                    .collect(),
            ),
            pass: Some(pass),
            ..Report::base(m)
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_json(self),
            Format::Csv => self.render_csv(),
            Format::Table => self.render_table(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        if let Some(rows) = &self.decomposition {
            out.push_str("degree,total,previous,quotient,pass\n");
            for r in rows {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.degree, r.total, r.previous, r.quotient, r.pass
                ));
            }
        } else {
            out.push_str("k,degree,value\n");
            for (k, values) in &self.betti {
                for (degree, value) in values.iter().enumerate() {
                    out.push_str(&format!("{k},{degree},{value}\n"));
                }
            }
        }
        out
    }

    fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "manifold: {} (d = {}, {}, {})\n",
            self.manifold,
            self.d,
            if self.closed { "closed" } else { "open" },
            if self.orientable {
                "orientable"
            } else {
                "non-orientable"
            },
        ));
        if let Some(k) = self.k {
            out.push_str(&format!("k = {k}\n"));
        }
        if let Some([lo, hi]) = self.k_range {
            out.push_str(&format!("k range: {lo}..={hi}\n"));
        }

        if let Some(rows) = &self.decomposition {
            out.push_str("degree  b(C_k)  b(C_k-1)  quotient  ok\n");
            for r in rows {
                out.push_str(&format!(
                    "{:>6}  {:>6}  {:>8}  {:>8}  {}\n",
                    r.degree,
                    r.total,
                    r.previous,
                    r.quotient,
                    if r.pass { "yes" } else { "NO" }
                ));
            }
            out.push_str(&format!(
                "result: {}\n",
                if self.pass == Some(true) {
                    "PASS"
                } else {
                    "FAIL"
                }
            ));
            return out;
        }

        match self.betti.as_slice() {
            [] => {}
            [(_, values)] => {
                out.push_str("degree  b\n");
                for (degree, value) in values.iter().enumerate() {
                    out.push_str(&format!("{degree:>6}  {value}\n"));
                }
                if let Some((_, top)) = self.tops.first() {
                    match top {
                        Some(top) => out.push_str(&format!("top chain degree: {top}\n")),
                        None => out.push_str("top chain degree: none (empty complex)\n"),
                    }
                }
            }
            tables => {
                out.push_str("     k  betti\n");
                for (k, values) in tables {
                    out.push_str(&format!("{k:>6}  {values:?}\n"));
                }
            }
        }

        if let Some(violations) = &self.violations {
            if violations.is_empty() {
                out.push_str("violations: none\n");
            } else {
                out.push_str("violations (b_i drops from k to k+1):\n");
                for v in violations {
                    out.push_str(&format!(
                        "  degree {}: k {} -> {}, value {} -> {}\n",
                        v.degree,
                        v.k,
                        v.k + 1,
                        v.value,
                        v.next
                    ));
                }
            }
        }

        if let Some(stab) = &self.stabilization {
            out.push_str("stabilization by degree:\n");
            for (degree, value) in stab {
                match value {
                    Value::String(_) => {
                        out.push_str(&format!("  degree {degree}: unresolved\n"));
                    }
                    v => {
                        let at_k = v["at_k"].as_u64().unwrap_or(0);
                        let val = v["value"].as_u64().unwrap_or(0);
                        out.push_str(&format!(
                            "  degree {degree}: constant {val} from k = {at_k}\n"
                        ));
                    }
                }
            }
        }
        out
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    text
}

fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

pub fn render_validation(label: &str, issues: &[ValidationIssue], format: Format) -> String {
    match format {
        Format::Json => {
            let doc = json!({
                "source": label,
                "valid": issues.is_empty(),
                "issues": issues.iter().map(|i| i.to_string()).collect::<Vec<_>>(),
            });
            to_json(&doc)
        }
        Format::Csv => {
            let mut out = String::from("source,issue\n");
            if issues.is_empty() {
                out.push_str(&format!("{},\n", csv_field(label)));
            }
            for issue in issues {
                out.push_str(&format!(
                    "{},{}\n",
                    csv_field(label),
                    csv_field(&issue.to_string())
                ));
            }
            out
        }
        Format::Table => {
            if issues.is_empty() {
                format!("{label}: valid\n")
            } else {
                let mut out = format!("{label}: {} issue(s)\n", issues.len());
                for issue in issues {
                    out.push_str(&format!("  - {issue}\n"));
                }
                out
            }
        }
    }
}

pub fn render_document(doc: &ManifoldDocument, format: Format) -> String {
    match format {
        Format::Json => to_json(doc),
        Format::Csv => {
            let mut out = String::from("j,hc_untwisted,hc_twisted\n");
            for j in 0..doc.hc_untwisted.len() {
                out.push_str(&format!(
                    "{j},{},{}\n",
                    doc.hc_untwisted[j], doc.hc_twisted[j]
                ));
            }
            out
        }
        Format::Table => {
            let mut out = format!(
                "{} (d = {}, {}, {})\n",
                doc.name,
                doc.dim,
                if doc.closed { "closed" } else { "open" },
                if doc.orientable {
                    "orientable"
                } else {
                    "non-orientable"
                },
            );
            out.push_str(&format!("hc_untwisted: {:?}\n", doc.hc_untwisted));
            out.push_str(&format!("hc_twisted:   {:?}\n", doc.hc_twisted));
            if doc.cup.is_empty() {
                out.push_str("cup table: empty\n");
            } else {
                out.push_str("cup table:\n");
                for e in &doc.cup {
                    let results: Vec<String> = e
                        .results
                        .iter()
                        .map(|r| format!("{}*[{}]", r.coef, r.c))
                        .collect();
                    out.push_str(&format!(
                        "  ({},{}) x ({},{}) -> {}\n",
                        e.i,
                        e.a,
                        e.j,
                        e.b,
                        if results.is_empty() {
                            "0".to_string()
                        } else {
                            results.join(" + ")
                        }
                    ));
                }
            }
            out
        }
    }
}

pub fn render_catalog(models: &[ManifoldModel], format: Format) -> String {
    match format {
        Format::Json => {
            let rows: Vec<Value> = models
                .iter()
                .map(|m| {
                    json!({
                        "name": m.name(),
                        "dim": m.d(),
                        "orientable": m.orientable(),
                        "closed": m.closed(),
                    })
                })
                .collect();
            to_json(&rows)
        }
        Format::Csv => {
            let mut out = String::from("name,dim,orientable,closed\n");
            for m in models {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    m.name(),
                    m.d(),
                    m.orientable(),
                    m.closed()
                ));
            }
            out
        }
        Format::Table => {
            let width = models.iter().map(|m| m.name().len()).max().unwrap_or(4);
            let mut out = format!("{:<width$}  d  closed  orientable\n", "name");
            for m in models {
                out.push_str(&format!(
                    "{:<width$}  {}  {:<6}  {}\n",
                    m.name(),
                    m.d(),
                    if m.closed() { "yes" } else { "no" },
                    if m.orientable() { "yes" } else { "no" },
                ));
            }
            out
        }
    }
}
