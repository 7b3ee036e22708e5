//! Plain-text polynomial files.
//!
//! ```text
//! # optional comments
//! field 2^1:6:g=1:f=1,1,0,0,0,0,1
//! lin 1 0 0 1 0 0
//! family basefield
//! t 2
//! ```
//!
//! The `field` line comes first, followed by exactly one `lin` or `conv`
//! line of coefficient indices (lowest term first). Any further lines are
//! `key value` metadata, kept in order.

use std::fmt;

use super::{ConventionalPoly, LinearizedPoly};
use crate::error::{Error, Result};
use crate::gf::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyBody {
    Linearized(LinearizedPoly),
    Conventional(ConventionalPoly),
}

impl PolyBody {
    pub fn field(&self) -> &Field {
        match self {
            PolyBody::Linearized(l) => l.field(),
            PolyBody::Conventional(c) => c.field(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFile {
    pub body: PolyBody,
    pub meta: Vec<(String, String)>,
}

impl PolyFile {
    pub fn linearized(poly: LinearizedPoly) -> Self {
        Self {
            body: PolyBody::Linearized(poly),
            meta: Vec::new(),
        }
    }

    pub fn conventional(poly: ConventionalPoly) -> Self {
        Self {
            body: PolyBody::Conventional(poly),
            meta: Vec::new(),
        }
    }

    pub fn with_meta(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.meta.push((key.to_string(), value.to_string()));
        self
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.meta
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidFormat(msg.to_string());
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());

        let field_line = lines.next().ok_or_else(|| bad("empty polynomial file"))?;
        let spec = field_line
            .strip_prefix("field")
            .filter(|rest| rest.starts_with(char::is_whitespace))
            .ok_or_else(|| bad("first line must be `field <spec>`"))?;
        let field = Field::parse(spec.trim())?;

        let body_line = lines.next().ok_or_else(|| bad("missing coefficient line"))?;
        let (tag, rest) = body_line.split_once(char::is_whitespace).unwrap_or((body_line, ""));
        let values = rest
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u64>()
                    .map_err(|_| Error::InvalidFormat(format!("bad coefficient `{tok}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let body = match tag {
            "lin" => {
                if values.len() > field.n() as usize {
                    return Err(bad("more than n linearized coefficients"));
                }
                PolyBody::Linearized(LinearizedPoly::from_indices(&field, &values)?)
            }
            "conv" => {
                let raw = values
                    .iter()
                    .map(|&v| {
                        u32::try_from(v).map_err(|_| Error::CoefficientOutOfRange {
                            value: v,
                            bound: field.q(),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                PolyBody::Conventional(ConventionalPoly::from_base_indices(&field, raw)?)
            }
            other => return Err(Error::InvalidFormat(format!("unknown body tag `{other}`"))),
        };

        let meta = lines
            .map(|l| {
                let (k, v) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
                (k.to_string(), v.trim().to_string())
            })
            .collect();
        Ok(Self { body, meta })
    }
}

impl fmt::Display for PolyFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {}", self.body.field().spec_string())?;
        match &self.body {
            PolyBody::Linearized(l) => {
                f.write_str("lin")?;
                for c in l.coeff_indices() {
                    write!(f, " {c}")?;
                }
            }
            PolyBody::Conventional(c) => {
                f.write_str("conv")?;
                for v in c.base_indices() {
                    write!(f, " {v}")?;
                }
            }
        }
        writeln!(f)?;
        for (k, v) in &self.meta {
            writeln!(f, "{k} {v}")?;
        }
        Ok(())
    }
}
