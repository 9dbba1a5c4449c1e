//! Lifing and maintenance planning for small ducted wind turbines.
//!
//! The numeric modules ([`fatigue`], [`structural`], [`aero`], [`bearing`],
//! [`weibull`], [`system`]) are plain functions over SI values. [`schedule`]
//! turns a component registry and an installation log into dated tasks.
//! [`presets`] holds the reference turbine's data.

pub mod aero;
pub mod bearing;
pub mod error;
pub mod fatigue;
pub mod model;
pub mod presets;
pub mod schedule;
pub mod structural;
pub mod system;
pub mod units;
pub mod weibull;

pub use error::{Error, Result};
pub use model::{ColumnSpec, Material, RectSection};
pub use units::{Quantity, Unit};
