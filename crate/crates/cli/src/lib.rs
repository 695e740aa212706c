//! Command-line support for `qcube`: JSON report formats, the known-errata
//! registry and the sweep harness.

pub mod errata;
pub mod report;
pub mod sweep;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const UNEQUAL: u8 = 1;
    pub const INPUT: u8 = 2;
    pub const GUARD: u8 = 3;
}
