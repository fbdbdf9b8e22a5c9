//! JSON Schemas for every JSON document the crate and the CLI produce.

pub const QUATERNION: &str = include_str!("../schemas/quaternion.json");
pub const REGULARITY_REPORT: &str = include_str!("../schemas/regularity_report.json");
pub const STRUCTURE_TABLE: &str = include_str!("../schemas/structure_table.json");
pub const CONTRADICTION_REPORT: &str = include_str!("../schemas/contradiction_report.json");
pub const DIVISION_REPORT: &str = include_str!("../schemas/division_report.json");
pub const SERIES_VALUE: &str = include_str!("../schemas/series_value.json");
