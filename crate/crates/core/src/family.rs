//! Text grammar for selecting an NLP family, as used on the command line.
//!
//! ```text
//! trace:theta=<idx>,m=<int>          (also θ=, m'=)
//! alphabeta:alpha=<idx>,beta=<idx>   (also α=, β=)
//! basefield:r=<list>,t=<int>
//! valueset:<idx>,<idx>,...
//! sparse:m=<int>
//! ```
//!
//! `<idx>` is an element index of F_{q^n}. A `basefield` list holds the
//! coefficients of r low-degree first, each a nonnegative F_q index or a
//! negative integer read in the prime field, so `r=1,0,-1` is `1 - x^2`.
//! Comma-separated tokens without `=` continue the preceding list.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::linpoly::{ConventionalPoly, Subspace};
use crate::nlp::{nlp_alpha_beta, nlp_base_field, nlp_from_valueset, nlp_trace, NlpCertificate};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Trace { theta: u64, m: u32 },
    AlphaBeta { alpha: u64, beta: u64 },
    BaseField { r: Vec<i64>, t: usize },
    ValueSet { basis: Vec<u64> },
    /// The trace NLP behind the sparse involution over F_{2^{4m}}.
    Sparse { m: u32 },
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidFamily(msg.into())
}

fn parse_num<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.trim()
        .parse()
        .map_err(|_| bad(format!("`{key}` expects an integer, got `{v}`")))
}

/// `key=value` pairs, with bare tokens appended to the previous value.
fn parse_pairs(body: &str) -> Result<Vec<(String, Vec<String>)>> {
    let mut pairs: Vec<(String, Vec<String>)> = Vec::new();
    for token in body.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match token.split_once('=') {
            Some((k, v)) => pairs.push((k.trim().to_string(), vec![v.trim().to_string()])),
            None => match pairs.last_mut() {
                Some((_, values)) => values.push(token.to_string()),
                None => return Err(bad(format!("value `{token}` has no key"))),
            },
        }
    }
    Ok(pairs)
}

struct Pairs(Vec<(String, Vec<String>)>);

impl Pairs {
    fn take(&mut self, names: &[&str]) -> Result<Vec<String>> {
        let pos = self
            .0
            .iter()
            .position(|(k, _)| names.contains(&k.as_str()))
            .ok_or_else(|| bad(format!("missing `{}`", names[0])))?;
        Ok(self.0.remove(pos).1)
    }

    fn take_one<T: FromStr>(&mut self, names: &[&str]) -> Result<T> {
        let values = self.take(names)?;
        if values.len() != 1 {
            return Err(bad(format!("`{}` takes a single value", names[0])));
        }
        parse_num(names[0], &values[0])
    }

    fn finish(self) -> Result<()> {
        match self.0.first() {
            Some((k, _)) => Err(bad(format!("unknown parameter `{k}`"))),
            None => Ok(()),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, body) = s.split_once(':').unwrap_or((s, ""));
        if name == "valueset" {
            let basis = body
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| parse_num("valueset", t))
                .collect::<Result<Vec<u64>>>()?;
            return Ok(FamilySpec::ValueSet { basis });
        }
        let mut pairs = Pairs(parse_pairs(body)?);
        let spec = match name {
            "trace" => FamilySpec::Trace {
                theta: pairs.take_one(&["theta", "θ"])?,
                m: pairs.take_one(&["m", "m'"])?,
            },
            "alphabeta" => FamilySpec::AlphaBeta {
                alpha: pairs.take_one(&["alpha", "α"])?,
                beta: pairs.take_one(&["beta", "β"])?,
            },
            "basefield" => FamilySpec::BaseField {
                r: pairs
                    .take(&["r"])?
                    .iter()
                    .map(|v| parse_num("r", v))
                    .collect::<Result<_>>()?,
                t: pairs.take_one(&["t"])?,
            },
            "sparse" => FamilySpec::Sparse {
                m: pairs.take_one(&["m"])?,
            },
            other => return Err(bad(format!("unknown family `{other}`"))),
        };
        pairs.finish()?;
        Ok(spec)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[String]| v.join(",");
        match self {
            FamilySpec::Trace { theta, m } => write!(f, "trace:theta={theta},m={m}"),
            FamilySpec::AlphaBeta { alpha, beta } => write!(f, "alphabeta:alpha={alpha},beta={beta}"),
            FamilySpec::BaseField { r, t } => {
                let r: Vec<String> = r.iter().map(i64::to_string).collect();
                write!(f, "basefield:r={},t={t}", join(&r))
            }
            FamilySpec::ValueSet { basis } => {
                let b: Vec<String> = basis.iter().map(u64::to_string).collect();
                write!(f, "valueset:{}", join(&b))
            }
            FamilySpec::Sparse { m } => write!(f, "sparse:m={m}"),
        }
    }
}

/// An F_q scalar from text: a nonnegative F_q index, or a negative integer
/// taken in the prime field.
pub fn parse_base_scalar(field: &Field, text: &str) -> Result<FieldElement> {
    let v: i64 = text
        .trim()
        .parse()
        .map_err(|_| Error::InvalidFormat(format!("expected an integer, got `{text}`")))?;
    base_scalar(field, v)
}

fn base_scalar(field: &Field, v: i64) -> Result<FieldElement> {
    if v < 0 {
        Ok(field.from_int(v))
    } else {
        field.base_element(v as u64)
    }
}

impl FamilySpec {
    /// The conventional polynomial r of a `basefield` spec.
    pub fn base_r(field: &Field, r: &[i64]) -> Result<ConventionalPoly> {
        let coeffs = r
            .iter()
            .map(|&v| base_scalar(field, v))
            .collect::<Result<Vec<_>>>()?;
        ConventionalPoly::new(field, &coeffs)
    }

    pub fn build(&self, field: &Field) -> Result<NlpCertificate> {
        match self {
            FamilySpec::Trace { theta, m } => nlp_trace(&field.element(*theta)?, *m),
            FamilySpec::AlphaBeta { alpha, beta } => {
                nlp_alpha_beta(&field.element(*alpha)?, &field.element(*beta)?)
            }
            FamilySpec::BaseField { r, t } => nlp_base_field(&Self::base_r(field, r)?, *t),
            FamilySpec::ValueSet { basis } => {
                let elems = basis
                    .iter()
                    .map(|&i| field.element(i))
                    .collect::<Result<Vec<_>>>()?;
                nlp_from_valueset(&Subspace::span(field, &elems)?)
            }
            FamilySpec::Sparse { m } => {
                if field.p() != 2 {
                    return Err(Error::NotChar2);
                }
                if field.q() != 2 || *m == 0 || field.n() != 4 * m {
                    return Err(bad(format!("sparse:m={m} needs the field 2^1:{}", 4 * m)));
                }
                nlp_trace(&field.one(), *m)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_family() {
        let cases = [
            ("trace:theta=1,m=1", FamilySpec::Trace { theta: 1, m: 1 }),
            ("trace:θ=6,m'=2", FamilySpec::Trace { theta: 6, m: 2 }),
            ("alphabeta:α=2,β=3", FamilySpec::AlphaBeta { alpha: 2, beta: 3 }),
            ("basefield:r=1,0,-1,t=3", FamilySpec::BaseField { r: vec![1, 0, -1], t: 3 }),
            ("basefield:t=2,r=1", FamilySpec::BaseField { r: vec![1], t: 2 }),
            ("valueset:1,2", FamilySpec::ValueSet { basis: vec![1, 2] }),
            ("sparse:m=8", FamilySpec::Sparse { m: 8 }),
        ];
        for (text, expected) in cases {
            let spec: FamilySpec = text.parse().unwrap();
            assert_eq!(spec, expected, "{text}");
            assert_eq!(spec.to_string().parse::<FamilySpec>().unwrap(), expected);
        }
    }

    #[test]
    fn rejects_malformed() {
        for text in ["", "trace:theta=1", "trace:theta=x,m=1", "nope:a=1", "basefield:1,t=2", "sparse:m=1,k=2"] {
            assert!(matches!(text.parse::<FamilySpec>(), Err(Error::InvalidFamily(_))), "{text}");
        }
    }

    #[test]
    fn basefield_r1_on_f64_is_x8_plus_x() {
        let f = Field::new(2, 1, 6).unwrap();
        let cert = "basefield:r=1,t=2".parse::<FamilySpec>().unwrap().build(&f).unwrap();
        assert_eq!(cert.poly().to_string(), "x^8 + x");
        assert_eq!(cert.index(), 2);
    }

    #[test]
    fn negative_scalars_live_in_the_prime_field() {
        let f = Field::new(3, 2, 2).unwrap();
        assert_eq!(parse_base_scalar(&f, "-1").unwrap(), f.from_int(2));
        assert_eq!(parse_base_scalar(&f, "4").unwrap(), f.base_element(4).unwrap());
        assert!(parse_base_scalar(&f, "9").is_err());
    }

    #[test]
    fn sparse_needs_matching_field() {
        let f = Field::new(2, 1, 8).unwrap();
        assert!(FamilySpec::Sparse { m: 2 }.build(&f).is_ok());
        assert!(matches!(FamilySpec::Sparse { m: 1 }.build(&f), Err(Error::InvalidFamily(_))));
    }
}
