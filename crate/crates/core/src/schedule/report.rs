use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{ComponentRecord, Group, Registry, ScheduleEntry};
use crate::error::{Error, Result};

const NA: &str = "N/A";
const SEP: &str = " / ";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportFormat {
    #[default]
    Csv,
    Markdown,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(ReportFormat::Csv),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            other => Err(Error::validation(format!(
                "unknown report format `{other}` (expected csv or markdown)"
            ))),
        }
    }
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w
        .into_inner()
        .map_err(|e| Error::validation(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::validation(format!("csv: {e}")))
}

fn csv_err(e: csv::Error) -> Error {
    Error::validation(format!("csv: {e}"))
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|").replace(['\r', '\n'], " ")
}

fn join_or_na(items: &[String]) -> String {
    if items.is_empty() {
        NA.to_string()
    } else {
        items.join(SEP)
    }
}

fn md_row(out: &mut String, cells: &[String]) {
    out.push('|');
    for c in cells {
        let _ = write!(out, " {} |", cell(c));
    }
    out.push('\n');
}

fn md_header(out: &mut String, names: &[&str]) {
    md_row(out, &names.iter().map(|s| s.to_string()).collect::<Vec<_>>());
    out.push('|');
    for _ in names {
        out.push_str("---|");
    }
    out.push('\n');
}

pub fn emit_schedule_report(entries: &[ScheduleEntry], format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Csv => {
            let mut w = csv_writer();
            w.write_record(["due_date", "component_id", "task", "reason"])
                .map_err(csv_err)?;
            for e in entries {
                w.write_record([
                    e.due_date.to_string().as_str(),
                    &e.component_id,
                    &e.task,
                    e.reason.as_str(),
                ])
                .map_err(csv_err)?;
            }
            finish(w)
        }
        ReportFormat::Markdown => {
            let mut out = String::new();
            md_header(&mut out, &["Due date", "Component", "Task", "Reason"]);
            for e in entries {
                md_row(
                    &mut out,
                    &[
                        e.due_date.to_string(),
                        e.component_id.clone(),
                        e.task.clone(),
                        e.reason.as_str().to_string(),
                    ],
                );
            }
            Ok(out)
        }
    }
}

fn service_life_cell(c: &ComponentRecord) -> String {
    match &c.service_life {
        None => NA.to_string(),
        Some(l) if c.manufacturer_specified => format!("{l}*"),
        Some(l) => l.to_string(),
    }
}

fn task_list(c: &ComponentRecord) -> Vec<String> {
    c.tasks.iter().map(|t| t.description.clone()).collect()
}

/// Registry dump grouped by subsystem, in the table layout used for
/// published maintenance schedules.
pub fn emit_registry_report(registry: &Registry, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Csv => {
            let mut w = csv_writer();
            w.write_record([
                "group",
                "component",
                "failure_modes",
                "service_life",
                "specifications",
                "service_tasks",
            ])
            .map_err(csv_err)?;
            for g in Group::ALL {
                for c in registry.components.iter().filter(|c| c.group == g) {
                    w.write_record([
                        g.to_string(),
                        c.id.clone(),
                        join_or_na(&c.failure_modes),
                        service_life_cell(c),
                        join_or_na(&c.specifications),
                        join_or_na(&task_list(c)),
                    ])
                    .map_err(csv_err)?;
                }
            }
            finish(w)
        }
        ReportFormat::Markdown => {
            let mut out = String::new();
            for g in Group::ALL {
                let rows: Vec<_> = registry.components.iter().filter(|c| c.group == g).collect();
                let fastener_list = g == Group::Fasteners && !registry.fasteners.is_empty();
                if rows.is_empty() && !fastener_list {
                    continue;
                }
                if !out.is_empty() {
                    out.push('\n');
                }
                let _ = writeln!(out, "## {g}\n");
                if fastener_list {
                    md_header(
                        &mut out,
                        &["Type/Size", "Grade/Class", "Specifications", "Details"],
                    );
                    for f in &registry.fasteners {
                        md_row(
                            &mut out,
                            &[
                                f.type_size.clone(),
                                f.grade_class.clone().unwrap_or_else(|| NA.into()),
                                f.specifications.clone().unwrap_or_else(|| NA.into()),
                                join_or_na(&f.details),
                            ],
                        );
                    }
                    if !rows.is_empty() {
                        out.push('\n');
                    }
                }
                if rows.is_empty() {
                    continue;
                }
                if g == Group::Fasteners {
                    md_header(&mut out, &["Fastener Type", "Failure Modes", "Service Tasks"]);
                    for c in rows {
                        md_row(
                            &mut out,
                            &[c.id.clone(), join_or_na(&c.failure_modes), join_or_na(&task_list(c))],
                        );
                    }
                } else {
                    md_header(
                        &mut out,
                        &[
                            "Component",
                            "Failure Modes",
                            "Service Life",
                            "Specifications",
                            "Service Tasks",
                        ],
                    );
                    for c in rows {
                        md_row(
                            &mut out,
                            &[
                                c.id.clone(),
                                join_or_na(&c.failure_modes),
                                service_life_cell(c),
                                join_or_na(&c.specifications),
                                join_or_na(&task_list(c)),
                            ],
                        );
                    }
                }
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_schedule_csv_is_header_only() {
        let s = emit_schedule_report(&[], ReportFormat::Csv).unwrap();
        assert_eq!(s, "due_date,component_id,task,reason\r\n");
    }

    #[test]
    fn unknown_format_rejected() {
        assert!("pdf".parse::<ReportFormat>().is_err());
        assert_eq!("Markdown".parse::<ReportFormat>().unwrap(), ReportFormat::Markdown);
    }

    #[test]
    fn registry_markdown_layout() {
        let md = emit_registry_report(&Registry::default_dwt(), ReportFormat::Markdown).unwrap();
        assert!(md.contains("## Fasteners"));
        assert!(md.contains("Inspect / Check torque"));
        assert!(md.contains("| Component | Failure Modes | Service Life | Specifications | Service Tasks |"));
        assert!(md.contains("| Tower | Bending from moment / Fatigue from nacelle imbalance | 5 years* |"));
        assert!(md.contains("| Voltsys Controller |") && md.contains("| N/A | N/A |"));
    }

    #[test]
    fn pipes_escaped() {
        let mut out = String::new();
        md_row(&mut out, &["a|b".to_string()]);
        assert_eq!(out, "| a\\|b |\n");
    }
}
