//! Component registry, usage bookkeeping and the preventive-maintenance
//! schedule compiled from them.
//!
//! The registry is a JSON document, `{"components": [...], "fasteners": [...]}`.
//! Each component carries its failure modes, an optional service life,
//! free-text specifications and a list of tasks. Every task has one
//! trigger:
//!
//! ```json
//! {"calendar_interval": {"years": 1}}
//! {"calendar_interval": {"years": 1, "after_years": 5}}
//! {"cycle_interval": {"cycles": 15, "counter": "jack_cycles"}}
//! {"whichever_first": {"years": 5, "cycles": 100, "counter": "jack_cycles"}}
//! {"event": "high_load"}
//! "as_required"
//! ```
//!
//! and may additionally fire on a logged event through `"on_event"`.

mod compile;
mod report;
mod rul;

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};

pub use compile::{generate_schedule, ScheduleEntry, ScheduleReason};
pub use report::{emit_registry_report, emit_schedule_report, ReportFormat};
pub use rul::{remaining_service_life, LifeSelector, RulReport};

const DEFAULT_REGISTRY_JSON: &str = include_str!("default_registry.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Group {
    Structural,
    Electromechanical,
    Control,
    Fasteners,
}

impl Group {
    pub const ALL: [Group; 4] = [
        Group::Structural,
        Group::Electromechanical,
        Group::Control,
        Group::Fasteners,
    ];
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Group::Structural => "Structural",
            Group::Electromechanical => "Electromechanical",
            Group::Control => "Control",
            Group::Fasteners => "Fasteners",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LifeUnit {
    Years,
    Cycles,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ServiceLife {
    pub value: f64,
    pub unit: LifeUnit,
    /// Usage counter that accumulates a cycles-based life.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counter: Option<String>,
}

impl ServiceLife {
    pub fn years(value: f64) -> Self {
        ServiceLife {
            value,
            unit: LifeUnit::Years,
            counter: None,
        }
    }

    fn validate(&self) -> Result<()> {
        ensure(self.value.is_finite() && self.value > 0.0, || {
            format!("service life must be positive, got {}", self.value)
        })?;
        if self.unit == LifeUnit::Cycles {
            ensure(self.counter.is_some(), || {
                "cycles-based life needs a `counter`".to_string()
            })?;
        }
        Ok(())
    }
}

impl fmt::Display for ServiceLife {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.unit {
            LifeUnit::Years if self.value == 1.0 => write!(f, "1 year"),
            LifeUnit::Years => write!(f, "{} years", self.value),
            LifeUnit::Cycles if self.value >= 1e6 && (self.value / 1e6).fract() == 0.0 => {
                write!(f, "{}M cycles", self.value / 1e6)
            }
            LifeUnit::Cycles => write!(f, "{} cycles", self.value),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    HighLoad,
    PostInstallInspection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Trigger {
    /// Every `years`, the first occurrence at `after_years` when given.
    CalendarInterval {
        years: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        after_years: Option<f64>,
    },
    CycleInterval {
        cycles: f64,
        counter: String,
    },
    WhicheverFirst {
        years: f64,
        cycles: f64,
        counter: String,
    },
    Event(EventKind),
    /// Conditional on an inspection finding; never dated.
    AsRequired,
}

impl Trigger {
    fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            ensure(v.is_finite() && v > 0.0, || format!("{name} must be positive, got {v}"))
        };
        match self {
            Trigger::CalendarInterval { years, after_years } => {
                positive("interval years", *years)?;
                if let Some(a) = after_years {
                    ensure(a.is_finite() && *a >= 0.0, || {
                        format!("after_years must be non-negative, got {a}")
                    })?;
                }
                Ok(())
            }
            Trigger::CycleInterval { cycles, .. } => positive("interval cycles", *cycles),
            Trigger::WhicheverFirst { years, cycles, .. } => {
                positive("interval years", *years)?;
                positive("interval cycles", *cycles)
            }
            Trigger::Event(_) | Trigger::AsRequired => Ok(()),
        }
    }

    pub fn counter(&self) -> Option<&str> {
        match self {
            Trigger::CycleInterval { counter, .. } | Trigger::WhicheverFirst { counter, .. } => {
                Some(counter)
            }
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaintenanceTask {
    pub description: String,
    pub trigger: Trigger,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub on_event: Option<EventKind>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentRecord {
    pub id: String,
    pub group: Group,
    #[serde(default)]
    pub failure_modes: Vec<String>,
    #[serde(default)]
    pub service_life: Option<ServiceLife>,
    /// Service life is the manufacturer's figure (asterisked in tables).
    #[serde(default)]
    pub manufacturer_specified: bool,
    #[serde(default)]
    pub specifications: Vec<String>,
    #[serde(default)]
    pub tasks: Vec<MaintenanceTask>,
    /// Manufacturer rating where it differs from the service life.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rated_life: Option<ServiceLife>,
}

impl ComponentRecord {
    fn validate(&self) -> Result<()> {
        ensure(!self.id.trim().is_empty(), || "component id is empty".to_string())?;
        if let Some(life) = &self.service_life {
            life.validate()?;
        }
        if let Some(life) = &self.rated_life {
            life.validate()?;
        }
        for task in &self.tasks {
            task.trigger
                .validate()
                .map_err(|e| Error::validation(format!("task `{}`: {e}", task.description)))?;
        }
        Ok(())
    }
}

/// One row of the loaded-fastener list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FastenerRecord {
    pub type_size: String,
    #[serde(default)]
    pub grade_class: Option<String>,
    #[serde(default)]
    pub specifications: Option<String>,
    #[serde(default)]
    pub details: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Registry {
    pub components: Vec<ComponentRecord>,
    #[serde(default)]
    pub fasteners: Vec<FastenerRecord>,
}

impl Registry {
    pub fn component(&self, id: &str) -> Option<&ComponentRecord> {
        self.components.iter().find(|c| c.id == id)
    }

    pub fn validate(&self) -> Result<()> {
        let mut ids = HashSet::new();
        for (i, c) in self.components.iter().enumerate() {
            let row = |e: Error| Error::validation(format!("component #{} (`{}`): {e}", i + 1, c.id));
            ensure(ids.insert(c.id.as_str()), || "duplicate component id".to_string()).map_err(row)?;
            c.validate().map_err(row)?;
        }
        Ok(())
    }

    /// The built-in registry for the D3 turbine.
    pub fn default_dwt() -> Self {
        load_registry(DEFAULT_REGISTRY_JSON).expect("built-in registry is valid")
    }
}

/// Parses and validates a registry document, reporting the offending row.
pub fn load_registry(document: &str) -> Result<Registry> {
    let value: serde_json::Value = serde_json::from_str(document)
        .map_err(|e| Error::validation(format!("registry is not valid JSON: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::validation("registry must be a JSON object"))?;
    let rows = obj
        .get("components")
        .and_then(|c| c.as_array())
        .ok_or_else(|| Error::validation("registry needs a `components` array"))?;

    let mut components = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let id = row.get("id").and_then(|v| v.as_str()).unwrap_or("?");
        let c: ComponentRecord = serde_json::from_value(row.clone())
            .map_err(|e| Error::validation(format!("component #{} (`{id}`): {e}", i + 1)))?;
        components.push(c);
    }
    let fasteners = match obj.get("fasteners") {
        None => Vec::new(),
        Some(v) => serde_json::from_value(v.clone())
            .map_err(|e| Error::validation(format!("fastener list: {e}")))?,
    };
    let registry = Registry {
        components,
        fasteners,
    };
    registry.validate()?;
    Ok(registry)
}

/// Daily accumulation rate of each usage counter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UsageProfile {
    pub counters: BTreeMap<String, f64>,
}

impl Default for UsageProfile {
    fn default() -> Self {
        UsageProfile {
            counters: crate::presets::usage_rates(),
        }
    }
}

impl UsageProfile {
    pub fn validate(&self) -> Result<()> {
        for (k, &rate) in &self.counters {
            ensure(rate.is_finite() && rate >= 0.0, || {
                format!("counter `{k}` has negative rate {rate}")
            })?;
        }
        Ok(())
    }

    pub fn rate(&self, counter: &str) -> Option<f64> {
        self.counters.get(counter).copied()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LoggedEvent {
    pub date: NaiveDate,
    pub kind: EventKind,
}

/// Cumulative counter reading.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleReading {
    pub date: NaiveDate,
    pub count: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstallationRecord {
    pub install_date: NaiveDate,
    #[serde(default)]
    pub event_log: Vec<LoggedEvent>,
    #[serde(default)]
    pub cycle_log: BTreeMap<String, Vec<CycleReading>>,
}

impl InstallationRecord {
    pub fn new(install_date: NaiveDate) -> Self {
        InstallationRecord {
            install_date,
            event_log: Vec::new(),
            cycle_log: BTreeMap::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let mut prev = self.install_date;
        for e in &self.event_log {
            ensure(e.date >= prev, || {
                format!("event log date {} precedes {prev}", e.date)
            })?;
            prev = e.date;
        }
        for (counter, readings) in &self.cycle_log {
            let mut prev = self.install_date;
            for r in readings {
                ensure(r.date >= prev, || {
                    format!("`{counter}` reading dated {} precedes {prev}", r.date)
                })?;
                ensure(r.count.is_finite() && r.count >= 0.0, || {
                    format!("`{counter}` reading has negative count {}", r.count)
                })?;
                prev = r.date;
            }
        }
        Ok(())
    }

    /// Latest (date, cumulative count) for `counter`.
    pub fn latest_reading(&self, counter: &str) -> Option<&CycleReading> {
        self.cycle_log.get(counter).and_then(|r| r.last())
    }
}

/// Installation plus usage, the document consumed by `schedule generate`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Deployment {
    pub installation: InstallationRecord,
    #[serde(default)]
    pub usage: UsageProfile,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_registry_is_valid() {
        let r = load_registry(r#"{"components": []}"#).unwrap();
        assert!(r.components.is_empty());
    }

    #[test]
    fn duplicate_ids_rejected_with_row() {
        let doc = r#"{"components": [
            {"id": "Hub", "group": "Structural"},
            {"id": "Hub", "group": "Structural"}
        ]}"#;
        let err = load_registry(doc).unwrap_err().to_string();
        assert!(err.contains("#2") && err.contains("duplicate"), "{err}");
    }

    #[test]
    fn unknown_group_rejected_with_row() {
        let doc = r#"{"components": [{"id": "Hub", "group": "Hydraulic"}]}"#;
        let err = load_registry(doc).unwrap_err().to_string();
        assert!(err.contains("#1") && err.contains("Hydraulic"), "{err}");
    }

    #[test]
    fn nonpositive_interval_rejected() {
        let doc = r#"{"components": [{"id": "Hub", "group": "Structural",
            "tasks": [{"description": "x", "trigger": {"calendar_interval": {"years": 0}}}]}]}"#;
        let err = load_registry(doc).unwrap_err().to_string();
        assert!(err.contains("Hub") && err.contains("positive"), "{err}");
        let doc = r#"{"components": [{"id": "Jack", "group": "Structural",
            "tasks": [{"description": "x", "trigger": {"whichever_first": {"years": 5, "cycles": -1, "counter": "jack_cycles"}}}]}]}"#;
        assert!(load_registry(doc).is_err());
    }

    #[test]
    fn nonpositive_service_life_rejected() {
        let doc = r#"{"components": [{"id": "Hub", "group": "Structural",
            "service_life": {"value": 0, "unit": "years"}}]}"#;
        assert!(load_registry(doc).is_err());
    }

    #[test]
    fn default_registry_loads() {
        let r = Registry::default_dwt();
        let slip = r.component("Slip Ring").unwrap();
        assert!(slip.tasks.iter().any(|t| t.description == "Replace after 20M cycles"));
    }

    #[test]
    fn service_life_display() {
        assert_eq!(ServiceLife::years(1.0).to_string(), "1 year");
        assert_eq!(ServiceLife::years(75.0).to_string(), "75 years");
        let c = ServiceLife {
            value: 4e7,
            unit: LifeUnit::Cycles,
            counter: Some("yaw_oscillations".into()),
        };
        assert_eq!(c.to_string(), "40M cycles");
    }

    #[test]
    fn logs_must_be_ordered() {
        let d = |s: &str| NaiveDate::parse_from_str(s, "%Y-%m-%d").unwrap();
        let mut rec = InstallationRecord::new(d("2025-01-01"));
        rec.event_log.push(LoggedEvent { date: d("2025-03-01"), kind: EventKind::HighLoad });
        rec.event_log.push(LoggedEvent { date: d("2025-02-01"), kind: EventKind::HighLoad });
        assert!(rec.validate().is_err());
        let mut rec = InstallationRecord::new(d("2025-01-01"));
        rec.cycle_log.insert(
            "jack_cycles".into(),
            vec![CycleReading { date: d("2024-12-01"), count: 3.0 }],
        );
        assert!(rec.validate().is_err());
    }
}
