//! Script-based language identification.

use crate::lang::LanguageTag;

pub fn is_kana(c: char) -> bool {
    matches!(c,
        '\u{3040}'..='\u{309F}'     // Hiragana
        | '\u{30A0}'..='\u{30FF}'   // Katakana
        | '\u{31F0}'..='\u{31FF}'   // Katakana phonetic extensions
        | '\u{FF66}'..='\u{FF9F}'   // halfwidth Katakana
        | '\u{1B000}'..='\u{1B16F}' // Kana supplement and extended
    )
}

pub fn is_han(c: char) -> bool {
    matches!(c,
        '\u{4E00}'..='\u{9FFF}'
        | '\u{3400}'..='\u{4DBF}'
        | '\u{F900}'..='\u{FAFF}'
        | '\u{20000}'..='\u{2FA1F}'
        | '\u{30000}'..='\u{323AF}'
        | '\u{3005}' | '\u{3007}'
    )
}

pub fn is_latin_letter(c: char) -> bool {
    c.is_ascii_alphabetic()
        || matches!(c,
            '\u{00C0}'..='\u{00D6}'
            | '\u{00D8}'..='\u{00F6}'
            | '\u{00F8}'..='\u{024F}'
            | '\u{1E00}'..='\u{1EFF}'
            | '\u{FF21}'..='\u{FF3A}'
            | '\u{FF41}'..='\u{FF5A}'
        )
}

/// Guesses the language of `text` from the scripts it uses.
///
/// Any kana makes it Japanese; otherwise any Han makes it Chinese (always
/// `cmn_hans`, the script variant is not distinguished); otherwise it is
/// English when at least half of the non-space scalars are Latin letters.
/// Returns `None` when undetermined.
pub fn detect_language(text: &str) -> Option<LanguageTag> {
    let mut han = false;
    let mut latin = 0usize;
    let mut non_space = 0usize;
    for c in text.chars() {
        if is_kana(c) {
            return Some(LanguageTag::JPN);
        }
        han |= is_han(c);
        if !c.is_whitespace() {
            non_space += 1;
            if is_latin_letter(c) {
                latin += 1;
            }
        }
    }
    if han {
        Some(LanguageTag::CMN_HANS)
    } else if non_space > 0 && 2 * latin >= non_space {
        Some(LanguageTag::ENG)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(detect_language("これはペンです"), Some(LanguageTag::JPN));
        assert_eq!(detect_language("信息内容"), Some(LanguageTag::CMN_HANS));
        assert_eq!(
            detect_language("The quick brown fox"),
            Some(LanguageTag::ENG)
        );
    }

    #[test]
    fn undetermined() {
        assert_eq!(detect_language(""), None);
        assert_eq!(detect_language("   "), None);
        assert_eq!(detect_language("12345 !!"), None);
        assert_eq!(detect_language("Привет мир"), None);
    }

    #[test]
    fn latin_threshold_is_inclusive() {
        // 2 letters, 2 digits
        assert_eq!(detect_language("ab 12"), Some(LanguageTag::ENG));
        assert_eq!(detect_language("ab 123"), None);
    }

    #[test]
    fn traditional_han_reads_as_hans() {
        assert_eq!(detect_language("資訊內容"), Some(LanguageTag::CMN_HANS));
    }

    proptest! {
        #[test]
        fn kana_wins(prefix in "\\PC{0,20}", suffix in "\\PC{0,20}", kana in "[\u{3041}-\u{3096}\u{30A1}-\u{30FA}]") {
            let s = format!("{prefix}{kana}{suffix}");
            prop_assert_eq!(detect_language(&s), Some(LanguageTag::JPN));
        }
    }
}
