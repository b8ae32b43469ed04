//! Facet text (`.fac`) and JSON formats.
//!
//! `.fac`: one facet per line, whitespace-separated labels, `#` starts a
//! comment, blank lines ignored. JSON: `{"name": ..., "facets": [[...], ...]}`
//! with integer or string labels.

use serde::{Deserialize, Serialize};

use crate::complex::{Complex, Face};
use crate::error::{Error, Result};
use crate::label::Label;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Fac,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fac" => Ok(Format::Fac),
            "json" => Ok(Format::Json),
            other => Err(Error::Parse(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct JsonComplex {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    name: Option<String>,
    facets: Vec<Vec<Label>>,
}

pub fn parse_fac(text: &str) -> Result<Complex> {
    let mut faces = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let face = tokens
            .iter()
            .map(|t| t.parse::<Label>())
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
        faces.push(face);
    }
    Complex::from_facets(faces)
}

pub fn write_fac(c: &Complex) -> String {
    c.canonical_text()
}

/// Parses the JSON form, returning the optional name alongside.
pub fn parse_json(text: &str) -> Result<(Option<String>, Complex)> {
    let j: JsonComplex = serde_json::from_str(text)?;
    Ok((j.name, Complex::from_facets(j.facets)?))
}

pub fn write_json(c: &Complex, name: Option<&str>) -> String {
    let j = JsonComplex {
        name: name.map(str::to_string),
        facets: c.facets().into_iter().map(|f: Face| f.labels().to_vec()).collect(),
    };
    serde_json::to_string(&j).expect("complex serializes")
}

/// Sniffs the format: JSON when the first non-blank character is `{`.
pub fn parse_any(text: &str) -> Result<Complex> {
    if text.trim_start().starts_with('{') {
        parse_json(text).map(|(_, c)| c)
    } else {
        parse_fac(text)
    }
}

pub fn write(c: &Complex, format: Format, name: Option<&str>) -> String {
    match format {
        Format::Fac => write_fac(c),
        Format::Json => write_json(c, name),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn fac_comments_and_blanks() {
        let c = parse_fac("# header\n1 2 3\n\n2 3 4 # trailing\n   \n").unwrap();
        assert_eq!(c.facet_count(), 2);
        assert_eq!(write_fac(&c), "1 2 3\n2 3 4\n");
    }

    #[test]
    fn fac_empty_is_error() {
        assert_eq!(parse_fac("# nothing\n"), Err(Error::EmptyInput));
    }

    #[test]
    fn json_with_mixed_labels() {
        let (name, c) = parse_json(r#"{"name":"t","facets":[[1,"2p",3],["3",4]]}"#).unwrap();
        assert_eq!(name.as_deref(), Some("t"));
        assert_eq!(c.vertex_count(), 4);
        assert_eq!(write_json(&c, None), r#"{"facets":[[1,3,"2p"],[3,4]]}"#);
    }

    fn arb_complex() -> impl Strategy<Value = Complex> {
        prop::collection::vec(prop::collection::btree_set(0i64..12, 1..5), 1..8).prop_map(|raw| {
            Complex::from_facets(raw.into_iter().map(|s| {
                s.into_iter()
                    .map(|v| if v % 3 == 0 { Label::name(&format!("{v}p")) } else { Label::Num(v) })
                    .collect::<Vec<_>>()
            }))
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn fac_json_round_trip(c in arb_complex()) {
            let via_fac = parse_fac(&write_fac(&c)).unwrap();
            let (_, via_json) = parse_json(&write_json(&c, Some("x"))).unwrap();
            prop_assert_eq!(&via_fac, &c);
            prop_assert_eq!(&via_json, &c);
        }
    }
}
