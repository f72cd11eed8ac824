//! File formats and number formatting.

use std::collections::BTreeMap;
use std::io;
use std::path::Path;

use ecoord::complex::GluingSpec;
use ecoord::HexComplex;
use serde::Serialize;
use serde_json::ser::Formatter;
use serde_json::{Map, Value};

use crate::Failure;

pub fn read_triangulation(path: &Path) -> Result<HexComplex, Failure> {
    let text = read(path)?;
    let spec: GluingSpec = serde_json::from_str(&text)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    HexComplex::build(&spec).map_err(Failure::from)
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

/// One value per edge, from either a flat `{key: number}` object or an
/// object whose `"edges"` member is one. Keys are edge labels or indices.
pub fn read_edge_values(c: &HexComplex, path: &Path) -> Result<Vec<f64>, Failure> {
    let text = read(path)?;
    let doc: Value = serde_json::from_str(&text)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let map = match &doc {
        Value::Object(m) => match m.get("edges") {
            Some(Value::Object(inner)) => inner,
            _ => m,
        },
        _ => {
            return Err(Failure::input(format!(
                "{}: expected a JSON object",
                path.display()
            )))
        }
    };
    edge_values(c, map).map_err(|msg| Failure::input(format!("{}: {msg}", path.display())))
}

fn edge_values(c: &HexComplex, map: &Map<String, Value>) -> Result<Vec<f64>, String> {
    let mut out = vec![None; c.edge_count()];
    for (key, v) in map {
        let e = c
            .edge_by_name(key)
            .or_else(|| key.parse::<usize>().ok().filter(|&i| i < c.edge_count()))
            .ok_or_else(|| format!("unknown edge {key:?}"))?;
        let x = v
            .as_f64()
            .ok_or_else(|| format!("value for {key:?} is not a number"))?;
        if out[e].replace(x).is_some() {
            return Err(format!("edge {} given twice", c.label(e)));
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(e, v)| v.ok_or_else(|| format!("missing edge {}", c.label(e))))
        .collect()
}

pub fn labelled(c: &HexComplex, values: &[f64]) -> BTreeMap<String, f64> {
    values
        .iter()
        .enumerate()
        .map(|(e, &v)| (c.label(e).to_string(), v))
        .collect()
}

/// Compact JSON with every float written to 17 significant digits.
struct Digits17;

impl Formatter for Digits17 {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Digits17);
    value
        .serialize(&mut ser)
        .expect("serializing to memory cannot fail");
    String::from_utf8(buf).expect("JSON is UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use ecoord::fixtures;

    #[test]
    fn floats_round_trip_bitwise() {
        let xs = [1.316_957_896_924_816_7, 0.1, 1e-300, -2.5e17, 1.0 / 3.0];
        let text = to_json(&xs.to_vec());
        let back: Vec<f64> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, xs);
        assert_eq!(to_json(&f64::NAN), "null");
    }

    #[test]
    fn edge_maps() {
        let c = HexComplex::build(&fixtures::pants()).unwrap();
        let parse = |s: &str| {
            edge_values(
                &c,
                serde_json::from_str::<Value>(s)
                    .unwrap()
                    .as_object()
                    .unwrap(),
            )
        };
        assert_eq!(
            parse(r#"{"e0": 1, "e1": 2, "2": 3}"#).unwrap(),
            vec![1.0, 2.0, 3.0]
        );
        assert!(parse(r#"{"e0": 1, "e1": 2}"#)
            .unwrap_err()
            .contains("missing edge e2"));
        assert!(parse(r#"{"e0": 1, "e1": 2, "e2": 3, "e9": 0}"#).is_err());
        assert!(parse(r#"{"e0": 1, "0": 2, "e1": 2, "e2": 3}"#)
            .unwrap_err()
            .contains("twice"));
    }
}
