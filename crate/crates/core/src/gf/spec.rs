//! Text form of a field: `p^m:n[:g=<hex>][:f=<hex list>]`.
//!
//! `g` is one hex integer `Σ g_i p^i` (leading term included). `f` is a
//! comma-separated list of hex F_q indices, constant term first, or `@name`
//! for one of the [`PRESETS`].

use std::str::FromStr;

use super::Field;
use crate::error::{Error, Result};

/// Named moduli over F_2, as (name, degree, exponents with nonzero coefficient).
///
/// `gf2_32` is `x^32 + x^7 + x^3 + x^2 + 1`. The superficially similar
/// `x^32 + x^7 + x^3 + x + 1` factors as (3)(13)(16) over F_2 and is rejected.
pub const PRESETS: &[(&str, u32, &[u32])] = &[("gf2_32", 32, &[32, 7, 3, 2, 0])];

/// Coefficient list (low-degree-first) of a named binary modulus.
pub fn preset_modulus(name: &str) -> Option<Vec<u32>> {
    PRESETS.iter().find(|(n, _, _)| *n == name).map(|(_, deg, exps)| {
        let mut coeffs = vec![0u32; *deg as usize + 1];
        for &e in exps.iter() {
            coeffs[e as usize] = 1;
        }
        coeffs
    })
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidFieldSpec(msg.into())
}

fn parse_hex(tok: &str) -> Result<u64> {
    let t = tok.trim();
    let t = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")).unwrap_or(t);
    u64::from_str_radix(t, 16).map_err(|_| bad(format!("bad hex value `{tok}`")))
}

fn parse_u32(tok: &str, what: &str) -> Result<u32> {
    tok.trim()
        .parse()
        .map_err(|_| bad(format!("bad {what} `{tok}`")))
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.trim().split(':');
        let head = parts.next().ok_or_else(|| bad("empty"))?;
        let (p, m) = match head.split_once('^') {
            Some((p, m)) => (parse_u32(p, "p")?, parse_u32(m, "m")?),
            None => (parse_u32(head, "p")?, 1),
        };
        let n = parse_u32(parts.next().ok_or_else(|| bad("missing n"))?, "n")?;
        let mut g = None;
        let mut f = None;
        for part in parts {
            if let Some(v) = part.strip_prefix("g=") {
                if p < 2 {
                    return Err(Error::NotPrime(p as u64));
                }
                let mut value = parse_hex(v)?;
                let mut coeffs = Vec::new();
                while value > 0 {
                    coeffs.push((value % p as u64) as u32);
                    value /= p as u64;
                }
                g = Some(coeffs);
            } else if let Some(v) = part.strip_prefix("f=") {
                f = Some(match v.strip_prefix('@') {
                    Some(name) => {
                        preset_modulus(name).ok_or_else(|| bad(format!("unknown preset `{name}`")))?
                    }
                    None => v
                        .split(',')
                        .map(|t| {
                            let c = parse_hex(t)?;
                            u32::try_from(c).map_err(|_| bad(format!("coefficient `{t}` too large")))
                        })
                        .collect::<Result<Vec<_>>>()?,
                });
            } else {
                return Err(bad(format!("unknown component `{part}`")));
            }
        }
        Field::with_moduli(p, m, n, g, f)
    }
}

impl Field {
    pub fn parse(s: &str) -> Result<Self> {
        s.parse()
    }

    /// Canonical spec string with both moduli spelled out.
    pub fn spec_string(&self) -> String {
        let p = self.p() as u64;
        let g_value = self
            .g()
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * p + c as u64);
        let f_list: Vec<String> = self.f().iter().map(|c| format!("{c:x}")).collect();
        format!(
            "{}^{}:{}:g={:x}:f={}",
            self.p(),
            self.m(),
            self.n(),
            g_value,
            f_list.join(",")
        )
    }
}
