//! Text and JSON forms of fields, elements and rational functions that the
//! parser reads back.

use std::sync::Arc;

use serde_json::{json, Value};

use super::parse::{parse_element, parse_rational_function, parse_tower};
use crate::arith::{NfElem, NumberField, NumberFieldTower};
use crate::error::{Error, Result};
use crate::poly::RationalFunction;

/// Defining polynomials of the tower, bottom first, e.g. `["a^2 - 2", "b^2 - a"]`.
pub fn field_definitions(field: &Arc<NumberField>) -> Vec<String> {
    NumberFieldTower::from_field(field.clone())
        .generators()
        .into_iter()
        .map(|(sym, m)| m.fmt_var(&sym))
        .collect()
}

pub fn field_to_json(field: &Arc<NumberField>) -> Value {
    json!(field_definitions(field))
}

pub fn field_from_json(v: &Value) -> Result<Arc<NumberField>> {
    let defs = v
        .as_array()
        .ok_or_else(|| Error::Parse("field must be a list of defining polynomials".into()))?
        .iter()
        .map(|d| {
            d.as_str()
                .map(String::from)
                .ok_or_else(|| Error::Parse("field definition must be a string".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    parse_tower(&defs)
}

pub fn element_to_json(e: &NfElem) -> Value {
    json!({ "tower": field_to_json(e.field()), "repr": e.to_string() })
}

pub fn element_from_json(v: &Value, field: &Arc<NumberField>) -> Result<NfElem> {
    let repr = v["repr"]
        .as_str()
        .ok_or_else(|| Error::Parse("element needs a 'repr' string".into()))?;
    parse_element(repr, field)
}

pub fn rf_to_json(f: &RationalFunction<NfElem>, var: &str) -> Value {
    json!({ "num": f.num().fmt_var(var), "den": f.den().fmt_var(var) })
}

pub fn rf_from_json(
    v: &Value,
    var: &str,
    field: &Arc<NumberField>,
) -> Result<RationalFunction<NfElem>> {
    let get = |k: &str| {
        v[k].as_str()
            .ok_or_else(|| Error::Parse(format!("rational function needs a '{k}' string")))
    };
    let num = parse_rational_function(get("num")?, var, field)?;
    let den = parse_rational_function(get("den")?, var, field)?;
    num.div(&den)
        .map_err(|_| Error::Parse("zero denominator".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Field;

    #[test]
    fn tower_round_trip() {
        let k = parse_tower(&["a^2-2".into(), "b^2-a".into()]).unwrap();
        let back = field_from_json(&field_to_json(&k)).unwrap();
        assert_eq!(back.degree(), 4);
        let b = k.tower_generators()[1].clone();
        let e = b.add(&k.one()).mul(&b);
        let e2 = element_from_json(&element_to_json(&e), &back).unwrap();
        assert_eq!(e2.to_string(), e.to_string());
    }

    #[test]
    fn rational_function_round_trip() {
        let k = parse_tower(&["a^2-2".into()]).unwrap();
        let f = parse_rational_function("x/(a*(2x+1)^2)", "x", &k).unwrap();
        let back = rf_from_json(&rf_to_json(&f, "x"), "x", &k).unwrap();
        assert_eq!(back, f);
    }
}
