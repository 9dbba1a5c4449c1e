use std::cmp::Ordering;
use std::collections::BTreeSet;

use chrono::{Days, NaiveDate};
use serde::{Deserialize, Serialize};

use super::{
    ComponentRecord, CycleReading, EventKind, InstallationRecord, LifeUnit, Registry, Trigger,
    UsageProfile,
};
use crate::error::{ensure, Error, Result};
use crate::fatigue::DAYS_PER_YEAR;

const EPS: f64 = 1e-9;
const MAX_CALENDAR_ENTRIES: usize = 1_000_000;
pub(super) const END_OF_LIFE_TASK: &str = "End of service life";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScheduleReason {
    IntervalElapsed,
    CyclesElapsed,
    Event,
    LifeExpired,
}

impl ScheduleReason {
    pub fn as_str(self) -> &'static str {
        match self {
            ScheduleReason::IntervalElapsed => "interval_elapsed",
            ScheduleReason::CyclesElapsed => "cycles_elapsed",
            ScheduleReason::Event => "event",
            ScheduleReason::LifeExpired => "life_expired",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScheduleEntry {
    pub due_date: NaiveDate,
    pub component_id: String,
    pub task: String,
    pub reason: ScheduleReason,
    /// Counter threshold reached, for cycle-driven entries.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub due_count: Option<f64>,
}

fn entry_order(a: &ScheduleEntry, b: &ScheduleEntry) -> Ordering {
    a.due_date
        .cmp(&b.due_date)
        .then_with(|| a.component_id.cmp(&b.component_id))
        .then_with(|| a.task.cmp(&b.task))
        .then_with(|| a.reason.cmp(&b.reason))
        .then_with(|| {
            let x = a.due_count.unwrap_or(f64::NEG_INFINITY);
            let y = b.due_count.unwrap_or(f64::NEG_INFINITY);
            x.total_cmp(&y)
        })
}

pub(super) fn add_years(date: NaiveDate, years: f64) -> Result<NaiveDate> {
    let days = (years * DAYS_PER_YEAR).round();
    ensure(days >= 0.0 && days < 3.0e6, || {
        format!("{years} years is outside the supported calendar range")
    })?;
    date.checked_add_days(Days::new(days as u64))
        .ok_or_else(|| Error::validation(format!("{years} years past {date} overflows the calendar")))
}

/// Cumulative count of one usage counter: logged readings up to the last
/// one, then linear growth at the profile rate.
pub(super) struct CounterTrack<'a> {
    readings: &'a [CycleReading],
    base_date: NaiveDate,
    base_count: f64,
    rate: f64,
}

impl<'a> CounterTrack<'a> {
    pub(super) fn new(
        counter: &str,
        install: &'a InstallationRecord,
        usage: &UsageProfile,
    ) -> Result<Self> {
        let readings = install
            .cycle_log
            .get(counter)
            .map(Vec::as_slice)
            .unwrap_or(&[]);
        let rate = match usage.rate(counter) {
            Some(r) => r,
            None if !readings.is_empty() => 0.0,
            None => return Err(Error::UnknownCounter(counter.to_string())),
        };
        let (base_date, base_count) = readings
            .last()
            .map(|r| (r.date, r.count))
            .unwrap_or((install.install_date, 0.0));
        Ok(CounterTrack {
            readings,
            base_date,
            base_count,
            rate,
        })
    }

    /// Earliest date the count reaches `threshold`, if ever.
    fn date_for(&self, threshold: f64) -> Option<NaiveDate> {
        if let Some(r) = self.readings.iter().find(|r| r.count >= threshold - EPS) {
            return Some(r.date);
        }
        if self.rate <= 0.0 {
            return None;
        }
        let days = ((threshold - self.base_count) / self.rate - EPS).ceil().max(0.0);
        if days >= 3.0e6 {
            return None;
        }
        self.base_date.checked_add_days(Days::new(days as u64))
    }

    fn count_at(&self, date: NaiveDate) -> f64 {
        if date >= self.base_date {
            let days = (date - self.base_date).num_days() as f64;
            self.base_count + days * self.rate
        } else {
            self.readings
                .iter()
                .take_while(|r| r.date <= date)
                .last()
                .map_or(0.0, |r| r.count)
        }
    }

    /// Number of whole intervals of `cycles` completed by `date`.
    fn intervals_by(&self, date: NaiveDate, cycles: f64) -> u64 {
        (self.count_at(date) / cycles + EPS).floor().max(0.0) as u64
    }
}

struct Emitter<'a> {
    component: &'a ComponentRecord,
    end: NaiveDate,
    out: Vec<ScheduleEntry>,
}

impl Emitter<'_> {
    fn push(&mut self, due_date: NaiveDate, task: &str, reason: ScheduleReason, due_count: Option<f64>) {
        // Same task due twice on one date is one visit; keep the higher count.
        if let Some(last) = self.out.last_mut() {
            if last.due_date == due_date && last.task == task && last.reason == reason {
                if let (Some(a), Some(b)) = (last.due_count, due_count) {
                    last.due_count = Some(a.max(b));
                }
                return;
            }
        }
        self.out.push(ScheduleEntry {
            due_date,
            component_id: self.component.id.clone(),
            task: task.to_string(),
            reason,
            due_count,
        });
    }
}

/// Compiles the dated maintenance schedule for `horizon_years` after install.
pub fn generate_schedule(
    registry: &Registry,
    install: &InstallationRecord,
    usage: &UsageProfile,
    horizon_years: f64,
) -> Result<Vec<ScheduleEntry>> {
    ensure(horizon_years.is_finite() && horizon_years > 0.0, || {
        format!("horizon must be positive, got {horizon_years}")
    })?;
    registry.validate()?;
    install.validate()?;
    usage.validate()?;
    let start = install.install_date;
    let end = add_years(start, horizon_years)?;

    let mut all = Vec::new();
    for component in &registry.components {
        let mut em = Emitter {
            component,
            end,
            out: Vec::new(),
        };
        for task in &component.tasks {
            let desc = task.description.as_str();
            match &task.trigger {
                Trigger::CalendarInterval { years, after_years } => {
                    calendar(&mut em, start, desc, *years, after_years.unwrap_or(*years))?
                }
                Trigger::CycleInterval { cycles, counter } => {
                    let track = CounterTrack::new(counter, install, usage)?;
                    cycle_interval(&mut em, &track, desc, *cycles);
                }
                Trigger::WhicheverFirst {
                    years,
                    cycles,
                    counter,
                } => {
                    let track = CounterTrack::new(counter, install, usage)?;
                    whichever_first(&mut em, start, &track, desc, *years, *cycles)?;
                }
                Trigger::Event(_) | Trigger::AsRequired => {}
            }
            let kinds: BTreeSet<EventKind> = match task.trigger {
                Trigger::Event(k) => Some(k),
                _ => None,
            }
            .into_iter()
            .chain(task.on_event)
            .collect();
            for ev in &install.event_log {
                if kinds.contains(&ev.kind) && ev.date >= start && ev.date <= end {
                    em.push(ev.date, desc, ScheduleReason::Event, None);
                }
            }
        }
        if let Some(life) = &component.service_life {
            let due = match life.unit {
                LifeUnit::Years => Some(add_years(start, life.value)?),
                LifeUnit::Cycles => {
                    let counter = life.counter.as_deref().unwrap_or_default();
                    CounterTrack::new(counter, install, usage)?.date_for(life.value)
                }
            };
            if let Some(d) = due.filter(|d| *d <= end) {
                em.push(d, END_OF_LIFE_TASK, ScheduleReason::LifeExpired, None);
            }
        }
        all.append(&mut em.out);
    }
    all.sort_by(entry_order);
    Ok(all)
}

fn calendar(em: &mut Emitter, start: NaiveDate, desc: &str, years: f64, first: f64) -> Result<()> {
    for k in 0..MAX_CALENDAR_ENTRIES {
        // Offsets from install, so rounding never accumulates.
        let due = add_years(start, first + k as f64 * years)?;
        if due > em.end {
            return Ok(());
        }
        em.push(due, desc, ScheduleReason::IntervalElapsed, None);
    }
    Err(Error::validation(format!(
        "task `{desc}` recurs more than {MAX_CALENDAR_ENTRIES} times within the horizon"
    )))
}

fn cycle_interval(em: &mut Emitter, track: &CounterTrack, desc: &str, cycles: f64) {
    let mut k = 1u64;
    while let Some(due) = track.date_for(k as f64 * cycles) {
        if due > em.end {
            break;
        }
        let reached = track.intervals_by(due, cycles).max(k);
        em.push(
            due,
            desc,
            ScheduleReason::CyclesElapsed,
            Some(reached as f64 * cycles),
        );
        k = reached + 1;
    }
}

fn whichever_first(
    em: &mut Emitter,
    start: NaiveDate,
    track: &CounterTrack,
    desc: &str,
    years: f64,
    cycles: f64,
) -> Result<()> {
    let mut k = 1u64;
    loop {
        let cal = add_years(start, k as f64 * years)?;
        match track.date_for(k as f64 * cycles) {
            Some(cyc) if cyc < cal => {
                if cyc > em.end {
                    return Ok(());
                }
                // Every later recurrence whose count is already reached
                // here is also due here: its calendar date is later still.
                let reached = track.intervals_by(cyc, cycles).max(k);
                em.push(
                    cyc,
                    desc,
                    ScheduleReason::CyclesElapsed,
                    Some(reached as f64 * cycles),
                );
                k = reached + 1;
            }
            _ => {
                if cal > em.end {
                    return Ok(());
                }
                em.push(cal, desc, ScheduleReason::IntervalElapsed, None);
                k += 1;
            }
        }
        if k as usize > MAX_CALENDAR_ENTRIES {
            return Err(Error::validation(format!(
                "task `{desc}` recurs more than {MAX_CALENDAR_ENTRIES} times within the horizon"
            )));
        }
    }
}
