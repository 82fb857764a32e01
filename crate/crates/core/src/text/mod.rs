//! Text input and output formats.

pub mod format;
pub mod parse;

pub use format::{
    element_from_json, element_to_json, field_definitions, field_from_json, field_to_json,
    rf_from_json, rf_to_json,
};
pub use parse::{parse_element, parse_poly, parse_rational_function, parse_tower, symbols};
