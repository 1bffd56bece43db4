//! Platform length limits: Twitter, Weibo and a single SMS.

use alloc::borrow::Cow;
use core::fmt;
use core::str::FromStr;

use unicode_normalization::UnicodeNormalization;

use crate::gsm7;
use crate::measure::{count_units, GbkFallback, SpaceMeasure};
use crate::text::nfc_char_count;

/// Septets available in one SMS (140 octets of 7-bit characters).
pub const SMS_GSM7_SEPTETS: usize = 160;
/// UCS-2 code units available in one SMS (140 octets of 16-bit units).
pub const SMS_UCS2_UNITS: usize = 70;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnitScheme {
    GbkUnits,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LimitRule {
    /// At most `n` NFC scalars, whatever their storage size.
    CharLimit(usize),
    /// At most `max_units` encoded units.
    EncodedUnitLimit {
        scheme: UnitScheme,
        max_units: usize,
    },
    /// One SMS: GSM-7 when possible, UCS-2 otherwise.
    SingleSms,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LimitSpec {
    name: Cow<'static, str>,
    rule: LimitRule,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LimitError {
    #[error("limit maximum must be positive")]
    ZeroMaximum,
    #[error("unknown platform `{0}` (expected twitter, weibo or sms)")]
    UnknownPlatform(alloc::string::String),
}

impl LimitSpec {
    pub const TWITTER: LimitSpec = LimitSpec {
        name: Cow::Borrowed("twitter"),
        rule: LimitRule::CharLimit(140),
    };
    pub const WEIBO: LimitSpec = LimitSpec {
        name: Cow::Borrowed("weibo"),
        rule: LimitRule::EncodedUnitLimit {
            scheme: UnitScheme::GbkUnits,
            max_units: 280,
        },
    };
    pub const SMS: LimitSpec = LimitSpec {
        name: Cow::Borrowed("sms"),
        rule: LimitRule::SingleSms,
    };

    pub const PRESETS: [LimitSpec; 3] = [Self::TWITTER, Self::WEIBO, Self::SMS];

    pub fn new(name: impl Into<Cow<'static, str>>, rule: LimitRule) -> Result<Self, LimitError> {
        match rule {
            LimitRule::CharLimit(0) | LimitRule::EncodedUnitLimit { max_units: 0, .. } => {
                Err(LimitError::ZeroMaximum)
            }
            _ => Ok(LimitSpec {
                name: name.into(),
                rule,
            }),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rule(&self) -> LimitRule {
        self.rule
    }
}

impl FromStr for LimitSpec {
    type Err = LimitError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::PRESETS
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| LimitError::UnknownPlatform(s.into()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnitKind {
    Chars,
    GbkUnits,
    Gsm7Septets,
    Ucs2Chars,
}

impl UnitKind {
    pub fn name(self) -> &'static str {
        match self {
            UnitKind::Chars => "chars",
            UnitKind::GbkUnits => "gbk_units",
            UnitKind::Gsm7Septets => "gsm7_septets",
            UnitKind::Ucs2Chars => "ucs2_chars",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SmsEncoding {
    Gsm7,
    Ucs2,
}

impl fmt::Display for SmsEncoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SmsEncoding::Gsm7 => "gsm7",
            SmsEncoding::Ucs2 => "ucs2",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FitResult {
    pub fits: bool,
    pub units_used: usize,
    pub units_max: usize,
    pub unit_kind: UnitKind,
    /// Set only for SMS.
    pub encoding_chosen: Option<SmsEncoding>,
}

impl FitResult {
    pub fn remaining(&self) -> isize {
        self.units_max as isize - self.units_used as isize
    }
}

fn result(
    units_used: usize,
    units_max: usize,
    unit_kind: UnitKind,
    enc: Option<SmsEncoding>,
) -> FitResult {
    FitResult {
        fits: units_used <= units_max,
        units_used,
        units_max,
        unit_kind,
        encoding_chosen: enc,
    }
}

/// Checks `text` against a platform limit.
///
/// UCS-2 usage is counted in UTF-16 code units, so a scalar outside the
/// Basic Multilingual Plane (most emoji) takes two of the 70.
pub fn check_fit(text: &str, limit: &LimitSpec) -> FitResult {
    match limit.rule {
        LimitRule::CharLimit(max) => result(nfc_char_count(text), max, UnitKind::Chars, None),
        LimitRule::EncodedUnitLimit {
            scheme: UnitScheme::GbkUnits,
            max_units,
        } => {
            let used = count_units(text, SpaceMeasure::GbkUnits, GbkFallback::CountAsTwo)
                .map(|m| m.value)
                .expect("count-as-two GBK counting cannot fail");
            result(used, max_units, UnitKind::GbkUnits, None)
        }
        LimitRule::SingleSms => {
            match count_units(text, SpaceMeasure::Gsm7Septets, GbkFallback::default()) {
                Ok(m) => result(
                    m.value,
                    SMS_GSM7_SEPTETS,
                    UnitKind::Gsm7Septets,
                    Some(SmsEncoding::Gsm7),
                ),
                Err(_) => {
                    let used = text.nfc().map(char::len_utf16).sum();
                    result(
                        used,
                        SMS_UCS2_UNITS,
                        UnitKind::Ucs2Chars,
                        Some(SmsEncoding::Ucs2),
                    )
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CharClass {
    /// Printable ASCII letters and digits (all in the GSM default alphabet).
    Ascii,
    /// CJK ideographs.
    Cjk,
}

/// How many characters of one class fit in a message.
pub fn capacity_for_language(limit: &LimitSpec, class: CharClass) -> usize {
    match (limit.rule, class) {
        (LimitRule::CharLimit(max), _) => max,
        (LimitRule::EncodedUnitLimit { max_units, .. }, CharClass::Ascii) => max_units,
        (LimitRule::EncodedUnitLimit { max_units, .. }, CharClass::Cjk) => max_units / 2,
        (LimitRule::SingleSms, CharClass::Ascii) => SMS_GSM7_SEPTETS,
        (LimitRule::SingleSms, CharClass::Cjk) => SMS_UCS2_UNITS,
    }
}

/// Whether `c` costs a single GSM-7 septet.
pub fn is_basic_gsm(c: char) -> bool {
    gsm7::basic_septet(c).is_some()
}
