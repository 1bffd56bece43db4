//! Space measures: how much room a text takes under a given unit.
//!
//! Every measure works on the NFC form of the text. Whitespace and
//! punctuation count like any other scalar.

use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};
use unicode_normalization::UnicodeNormalization;

use crate::gsm7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceMeasure {
    /// Unicode scalar values.
    Characters,
    /// UTF-8 bytes; multiply by 8 for bits.
    Utf8Bytes,
    /// One unit per ASCII scalar, two per other scalar (GBK-style byte count).
    GbkUnits,
    /// GSM-7 septets, extension characters costing two.
    Gsm7Septets,
}

impl SpaceMeasure {
    pub const ALL: [SpaceMeasure; 4] = [
        SpaceMeasure::Characters,
        SpaceMeasure::Utf8Bytes,
        SpaceMeasure::GbkUnits,
        SpaceMeasure::Gsm7Septets,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SpaceMeasure::Characters => "characters",
            SpaceMeasure::Utf8Bytes => "utf8_bytes",
            SpaceMeasure::GbkUnits => "gbk_units",
            SpaceMeasure::Gsm7Septets => "gsm7_septets",
        }
    }
}

impl fmt::Display for SpaceMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SpaceMeasure {
    type Err = MeasureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "characters" | "chars" => Ok(SpaceMeasure::Characters),
            "utf8" | "utf8_bytes" | "bytes" => Ok(SpaceMeasure::Utf8Bytes),
            "gbk" | "gbk_units" => Ok(SpaceMeasure::GbkUnits),
            "gsm7" | "gsm7_septets" => Ok(SpaceMeasure::Gsm7Septets),
            _ => Err(MeasureError::UnknownMeasure),
        }
    }
}

/// What to do with scalars that have no two-byte GBK encoding (emoji, rare
/// symbols) when counting GBK units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GbkFallback {
    Reject,
    #[default]
    CountAsTwo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MeasuredLength {
    pub measure: SpaceMeasure,
    pub value: usize,
}

impl MeasuredLength {
    /// Bits under UTF-8, the unit used when comparing storage size.
    pub fn bits(&self) -> Option<usize> {
        (self.measure == SpaceMeasure::Utf8Bytes).then(|| self.value * 8)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum MeasureError {
    #[error("unknown space measure (expected characters, utf8, gbk or gsm7)")]
    UnknownMeasure,
    #[error("scalar U+{:04X} has no GBK encoding", *.0 as u32)]
    NotGbkEncodable(char),
    #[error("scalar U+{:04X} is not in the GSM-7 alphabet", *.0 as u32)]
    NotGsm7(char),
}

/// Whether `c` has a GBK encoding (ASCII or a two-byte sequence).
pub fn gbk_encodable(c: char) -> bool {
    if c.is_ascii() {
        return true;
    }
    let mut buf = [0u8; 4];
    let (_, _, unmappable) = encoding_rs::GBK.encode(c.encode_utf8(&mut buf));
    !unmappable
}

fn gbk_units(
    chars: impl Iterator<Item = char>,
    fallback: GbkFallback,
) -> Result<usize, MeasureError> {
    let mut total = 0;
    for c in chars {
        total += if c.is_ascii() {
            1
        } else {
            if fallback == GbkFallback::Reject && !gbk_encodable(c) {
                return Err(MeasureError::NotGbkEncodable(c));
            }
            2
        };
    }
    Ok(total)
}

fn gsm7_septets(mut chars: impl Iterator<Item = char>) -> Result<usize, MeasureError> {
    chars.try_fold(0, |acc, c| {
        gsm7::septet_cost(c)
            .map(|n| acc + n)
            .ok_or(MeasureError::NotGsm7(c))
    })
}

/// Measures `text` under `measure`.
///
/// `GbkUnits` consults `fallback` for scalars without a GBK encoding;
/// `Gsm7Septets` fails with [`MeasureError::NotGsm7`] when any character is
/// outside the GSM alphabet, which callers use to fall back to UCS-2.
pub fn count_units(
    text: &str,
    measure: SpaceMeasure,
    fallback: GbkFallback,
) -> Result<MeasuredLength, MeasureError> {
    let chars = text.nfc();
    let value = match measure {
        SpaceMeasure::Characters => chars.count(),
        SpaceMeasure::Utf8Bytes => chars.map(char::len_utf8).sum(),
        SpaceMeasure::GbkUnits => gbk_units(chars, fallback)?,
        SpaceMeasure::Gsm7Septets => gsm7_septets(chars)?,
    };
    Ok(MeasuredLength { measure, value })
}

/// [`count_units`] with the default GBK fallback.
pub fn measure(text: &str, measure: SpaceMeasure) -> Result<usize, MeasureError> {
    count_units(text, measure, GbkFallback::default()).map(|m| m.value)
}
