//! Lookup-table export of permutations of F_{q^n}.
//!
//! Raw format (all integers little-endian):
//!
//! | bytes | content |
//! |---|---|
//! | 4 | magic `NLPS` |
//! | 1 | version, currently 1 |
//! | 1 | p |
//! | 1 | m |
//! | 2 | n |
//! | w·q^n | record i = index of f(element i), w = ⌈bitlen(q^n - 1)/8⌉ bytes |

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::AffinePerm;

pub const MAGIC: &[u8; 4] = b"NLPS";
pub const VERSION: u8 = 1;
/// Largest table materialized by default.
pub const DEFAULT_TABLE_BUDGET: u64 = 1 << 28;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SboxFormat {
    Raw,
    CArray,
    Json,
}

impl FromStr for SboxFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raw" => Ok(SboxFormat::Raw),
            "carray" => Ok(SboxFormat::CArray),
            "json" => Ok(SboxFormat::Json),
            other => Err(Error::InvalidFormat(format!("unknown export format `{other}`"))),
        }
    }
}

/// Bytes per raw record for a field of the given order.
pub fn record_width(order: u64) -> usize {
    let bits = 64 - (order - 1).leading_zeros() as usize;
    bits.div_ceil(8).max(1)
}

#[derive(Serialize)]
struct JsonExport<'a> {
    field: String,
    polynomial: String,
    family: &'a str,
    involution: bool,
    fixed_point_free: bool,
    order: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    table: Option<Vec<u64>>,
    /// Functional description when the table is not materialized.
    #[serde(skip_serializing_if = "Option::is_none")]
    linear: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    shift: Option<u64>,
}

/// Serializes `f` in the requested format. Above `budget` elements only the
/// JSON functional description is available.
pub fn export_sbox(f: &AffinePerm, family: &str, format: SboxFormat, budget: u64) -> Result<Vec<u8>> {
    let field = f.field();
    let order = field.order();
    let fits = order <= budget;
    if !fits && format != SboxFormat::Json {
        return Err(Error::FieldTooLargeForTable { order, budget });
    }
    let table = fits.then(|| f.compile().table());
    let out = match format {
        SboxFormat::Raw => {
            let (p, m, n) = (field.p(), field.m(), field.n());
            let (Ok(p8), Ok(m8), Ok(n16)) = (u8::try_from(p), u8::try_from(m), u16::try_from(n)) else {
                return Err(Error::InvalidFormat("p, m or n too large for the raw header".into()));
            };
            let table = table.expect("checked above");
            let w = record_width(order);
            let mut out = Vec::with_capacity(9 + w * table.len());
            out.extend_from_slice(MAGIC);
            out.extend_from_slice(&[VERSION, p8, m8]);
            out.extend_from_slice(&n16.to_le_bytes());
            for v in table {
                out.extend_from_slice(&v.to_le_bytes()[..w]);
            }
            out
        }
        SboxFormat::CArray => {
            let table = table.expect("checked above");
            let ty = match record_width(order) {
                1 => "uint8_t",
                2 => "uint16_t",
                3 | 4 => "uint32_t",
                _ => "uint64_t",
            };
            let digits = 2 * record_width(order);
            let mut s = String::new();
            writeln!(s, "/* field {} */", field.spec_string()).unwrap();
            writeln!(s, "/* f(x) = {} + [{}] */", f.linear(), f.shift().index()).unwrap();
            writeln!(s, "#include <stdint.h>\n").unwrap();
            writeln!(s, "static const {ty} sbox[{}] = {{", table.len()).unwrap();
            for row in table.chunks(8) {
                let cells: Vec<String> = row.iter().map(|v| format!("0x{v:0digits$x}")).collect();
                writeln!(s, "    {},", cells.join(", ")).unwrap();
            }
            writeln!(s, "}};").unwrap();
            s.into_bytes()
        }
        SboxFormat::Json => {
            let fixed_point_free = f.is_fixed_point_free();
            let doc = JsonExport {
                field: field.spec_string(),
                polynomial: format!("{} + [{}]", f.linear(), f.shift().index()),
                family,
                involution: f.is_involution(),
                fixed_point_free,
                order,
                linear: table.is_none().then(|| f.linear().coeff_indices()),
                shift: table.is_none().then(|| f.shift().index()),
                table,
            };
            let mut bytes = serde_json::to_vec_pretty(&doc)
                .map_err(|e| Error::InvalidFormat(e.to_string()))?;
            bytes.push(b'\n');
            bytes
        }
    };
    Ok(out)
}

/// A decoded raw S-box file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawSbox {
    pub p: u8,
    pub m: u8,
    pub n: u16,
    pub table: Vec<u64>,
}

pub fn parse_raw(bytes: &[u8]) -> Result<RawSbox> {
    let bad = |msg: &str| Error::InvalidFormat(msg.to_string());
    if bytes.len() < 9 || &bytes[..4] != MAGIC {
        return Err(bad("missing NLPS header"));
    }
    if bytes[4] != VERSION {
        return Err(bad("unsupported raw version"));
    }
    let (p, m) = (bytes[5], bytes[6]);
    let n = u16::from_le_bytes([bytes[7], bytes[8]]);
    let order = (p as u64)
        .checked_pow(m as u32 * n as u32)
        .ok_or_else(|| bad("field order overflows"))?;
    let w = record_width(order);
    let body = &bytes[9..];
    if body.len() as u64 != order * w as u64 {
        return Err(bad("record count does not match the header"));
    }
    let table = body
        .chunks(w)
        .map(|rec| {
            let mut buf = [0u8; 8];
            buf[..w].copy_from_slice(rec);
            u64::from_le_bytes(buf)
        })
        .collect();
    Ok(RawSbox { p, m, n, table })
}
