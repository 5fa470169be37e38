//! Inputs bundled with the crate. The same files live under `data/` for the CLI.

pub const G12_GAR: &str = include_str!("../data/g12.gar");
pub const G13_GAR: &str = include_str!("../data/g13.gar");
pub const TYPEB2_GAR: &str = include_str!("../data/typeb2.gar");
pub const TYPEB3_GAR: &str = include_str!("../data/typeb3.gar");
pub const EXCEPTIONAL: &str = include_str!("../data/exceptional.txt");

/// Central power of the Garside element equal to the full twist.
pub const G12_ZP_DELTA_POWER: i64 = 6;
pub const G13_ZP_DELTA_POWER: i64 = 4;
