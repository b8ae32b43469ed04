//! Vertex labels.
//!
//! A label is either an integer or a short name. Integer-looking names are
//! normalized to integers on construction, so `"7"` and `7` are the same
//! vertex and the text and JSON formats round-trip exactly.
//!
//! Ordering is total and fixed: integers sort numerically and precede
//! names, names sort lexicographically. An all-integer vertex set is thus
//! ordered numerically and an all-name set lexicographically.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Num(i64),
    Name(String),
}

impl Label {
    pub fn name(s: &str) -> Label {
        match s.parse::<i64>() {
            Ok(n) => Label::Num(n),
            Err(_) => Label::Name(s.to_string()),
        }
    }

    pub fn as_num(&self) -> Option<i64> {
        match self {
            Label::Num(n) => Some(*n),
            Label::Name(_) => None,
        }
    }
}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Label::Num(a), Label::Num(b)) => a.cmp(b),
            (Label::Num(_), Label::Name(_)) => Ordering::Less,
            (Label::Name(_), Label::Num(_)) => Ordering::Greater,
            (Label::Name(a), Label::Name(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Num(n) => write!(f, "{n}"),
            Label::Name(s) => f.write_str(s),
        }
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() || s.contains(char::is_whitespace) || s.contains('#') {
            return Err(Error::Parse(format!("invalid vertex label {s:?}")));
        }
        Ok(Label::name(s))
    }
}

impl From<i64> for Label {
    fn from(n: i64) -> Self {
        Label::Num(n)
    }
}

impl From<i32> for Label {
    fn from(n: i32) -> Self {
        Label::Num(n as i64)
    }
}

impl From<u32> for Label {
    fn from(n: u32) -> Self {
        Label::Num(n as i64)
    }
}

impl From<usize> for Label {
    fn from(n: usize) -> Self {
        Label::Num(n as i64)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::name(s)
    }
}

impl From<String> for Label {
    fn from(s: String) -> Self {
        Label::name(&s)
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Label::Num(n) => serializer.serialize_i64(*n),
            Label::Name(s) => serializer.serialize_str(s),
        }
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct LabelVisitor;

        impl Visitor<'_> for LabelVisitor {
            type Value = Label;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a string vertex label")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Label, E> {
                Ok(Label::Num(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Label, E> {
                i64::try_from(v)
                    .map(Label::Num)
                    .map_err(|_| E::custom("label out of range"))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Label, E> {
                v.parse::<Label>().map_err(E::custom)
            }
        }

        deserializer.deserialize_any(LabelVisitor)
    }
}

/// Builds a label list from anything label-like; handy in tests and fixtures.
pub fn labels<T: Into<Label>, I: IntoIterator<Item = T>>(items: I) -> Vec<Label> {
    items.into_iter().map(Into::into).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_names_normalize() {
        assert_eq!(Label::name("12"), Label::Num(12));
        assert_eq!(Label::name("1p"), Label::Name("1p".into()));
    }

    #[test]
    fn ordering_numbers_then_names() {
        let mut v = vec![Label::name("x2"), Label::Num(10), Label::name("1p"), Label::Num(2)];
        v.sort();
        assert_eq!(
            v,
            vec![Label::Num(2), Label::Num(10), Label::name("1p"), Label::name("x2")]
        );
    }

    #[test]
    fn json_round_trip() {
        let v = vec![Label::Num(3), Label::name("6p")];
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"[3,"6p"]"#);
        let back: Vec<Label> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        let from_str: Vec<Label> = serde_json::from_str(r#"["3"]"#).unwrap();
        assert_eq!(from_str, vec![Label::Num(3)]);
    }

    #[test]
    fn rejects_bad_tokens() {
        assert!("".parse::<Label>().is_err());
        assert!("a b".parse::<Label>().is_err());
    }
}
