//! Language tags.

use alloc::borrow::Cow;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Identifies the language variant of a text, e.g. `eng` or `cmn_hant`.
///
/// Tags are only produced by parsing against a [`LanguageRegistry`] (or via
/// the built-in constants), so every tag in circulation is a registered code.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LanguageTag(Cow<'static, str>);

impl LanguageTag {
    pub const ENG: LanguageTag = LanguageTag(Cow::Borrowed("eng"));
    pub const JPN: LanguageTag = LanguageTag(Cow::Borrowed("jpn"));
    pub const CMN_HANS: LanguageTag = LanguageTag(Cow::Borrowed("cmn_hans"));
    pub const CMN_HANT: LanguageTag = LanguageTag(Cow::Borrowed("cmn_hant"));

    pub const BUILTIN: [LanguageTag; 4] = [Self::ENG, Self::JPN, Self::CMN_HANS, Self::CMN_HANT];

    pub fn code(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for LanguageTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LanguageError {
    #[error("empty language code")]
    Empty,
    #[error("unknown language code `{0}`")]
    Unknown(String),
}

/// The set of language codes accepted at parse time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageRegistry {
    codes: Vec<LanguageTag>,
}

impl Default for LanguageRegistry {
    fn default() -> Self {
        LanguageRegistry {
            codes: LanguageTag::BUILTIN.to_vec(),
        }
    }
}

impl LanguageRegistry {
    /// Adds a code to the registry. Codes must be non-empty lowercase ASCII
    /// letters, digits or underscores.
    pub fn register(&mut self, code: &str) -> Result<LanguageTag, LanguageError> {
        if code.is_empty() {
            return Err(LanguageError::Empty);
        }
        if !code
            .bytes()
            .all(|b| b.is_ascii_lowercase() || b.is_ascii_digit() || b == b'_')
        {
            return Err(LanguageError::Unknown(code.into()));
        }
        if let Some(tag) = self.codes.iter().find(|t| t.code() == code) {
            return Ok(tag.clone());
        }
        let tag = LanguageTag(Cow::Owned(code.into()));
        self.codes.push(tag.clone());
        Ok(tag)
    }

    pub fn parse(&self, code: &str) -> Result<LanguageTag, LanguageError> {
        let code = code.trim();
        if code.is_empty() {
            return Err(LanguageError::Empty);
        }
        self.codes
            .iter()
            .find(|t| t.code() == code)
            .cloned()
            .ok_or_else(|| LanguageError::Unknown(code.into()))
    }

    /// Parses a comma separated list such as `eng,jpn,cmn_hans`.
    pub fn parse_list(&self, list: &str) -> Result<Vec<LanguageTag>, LanguageError> {
        list.split(',').map(|c| self.parse(c)).collect()
    }

    pub fn codes(&self) -> &[LanguageTag] {
        &self.codes
    }
}

impl FromStr for LanguageTag {
    type Err = LanguageError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LanguageRegistry::default().parse(s)
    }
}

impl Serialize for LanguageTag {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.code())
    }
}

impl<'de> Deserialize<'de> for LanguageTag {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let code = <Cow<'de, str>>::deserialize(deserializer)?;
        code.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_codes_parse() {
        for tag in LanguageTag::BUILTIN {
            assert_eq!(tag.code().parse::<LanguageTag>().unwrap(), tag);
        }
    }

    #[test]
    fn unknown_and_empty_codes_are_rejected() {
        assert_eq!("".parse::<LanguageTag>(), Err(LanguageError::Empty));
        assert_eq!(
            "fra".parse::<LanguageTag>(),
            Err(LanguageError::Unknown("fra".into()))
        );
    }

    #[test]
    fn registry_extends() {
        let mut reg = LanguageRegistry::default();
        assert!(reg.parse("kor").is_err());
        let kor = reg.register("kor").unwrap();
        assert_eq!(reg.parse("kor").unwrap(), kor);
        assert!(reg.register("Bad Code").is_err());
    }

    #[test]
    fn parse_list_keeps_order() {
        let reg = LanguageRegistry::default();
        let v = reg.parse_list("cmn_hant, eng").unwrap();
        assert_eq!(v, [LanguageTag::CMN_HANT, LanguageTag::ENG]);
    }
}
