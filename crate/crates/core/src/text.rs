//! Text preprocessing: normalization and hyperlink removal.

use alloc::string::String;
use core::ops::Range;

use unicode_normalization::{is_nfc_quick, IsNormalized, UnicodeNormalization};

/// Canonically composed (NFC) form of `text`.
pub fn nfc(text: &str) -> String {
    text.nfc().collect()
}

/// Number of Unicode scalar values in the NFC form of `text`.
pub fn nfc_char_count(text: &str) -> usize {
    if is_nfc_quick(text.chars()) == IsNormalized::Yes {
        text.chars().count()
    } else {
        text.nfc().count()
    }
}

const SCHEMES: [&str; 2] = ["http://", "https://"];

fn scheme_at(text: &str, at: usize) -> Option<usize> {
    let rest = &text.as_bytes()[at..];
    SCHEMES
        .iter()
        .find(|s| rest.len() >= s.len() && rest[..s.len()].eq_ignore_ascii_case(s.as_bytes()))
        .map(|s| s.len())
}

/// Iterator over the byte ranges of scheme-prefixed URLs in a text.
///
/// A URL starts at `http://` or `https://` (ASCII case-insensitive) and runs
/// up to, not including, the next whitespace character or the end of text.
#[derive(Debug, Clone)]
pub struct UrlSpans<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Iterator for UrlSpans<'a> {
    type Item = Range<usize>;

    fn next(&mut self) -> Option<Range<usize>> {
        let bytes = self.text.as_bytes();
        while self.pos < bytes.len() {
            let at = self.pos;
            if matches!(bytes[at], b'h' | b'H') {
                if let Some(len) = scheme_at(self.text, at) {
                    let tail = &self.text[at + len..];
                    let end = tail
                        .char_indices()
                        .find(|&(_, c)| c.is_whitespace())
                        .map_or(self.text.len(), |(i, _)| at + len + i);
                    self.pos = end;
                    return Some(at..end);
                }
            }
            self.pos += 1;
        }
        None
    }
}

pub fn url_spans(text: &str) -> UrlSpans<'_> {
    UrlSpans { text, pos: 0 }
}

pub fn url_count(text: &str) -> usize {
    url_spans(text).count()
}

/// Deletes every URL from `text`, leaving the surrounding whitespace as is.
pub fn strip_urls(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut last = 0;
    for span in url_spans(text) {
        out.push_str(&text[last..span.start]);
        last = span.end;
    }
    out.push_str(&text[last..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    #[test]
    fn strip_examples() {
        assert_eq!(strip_urls("Read http://t.co/abc now"), "Read  now");
        assert_eq!(strip_urls("no links here"), "no links here");
        assert_eq!(strip_urls("https://a.b/c"), "");
        assert_eq!(strip_urls("a HTTPS://X.y b"), "a  b");
        assert_eq!(strip_urls("新闻http://t.cn/x\n更多"), "新闻\n更多");
    }

    #[test]
    fn bare_domains_survive() {
        assert_eq!(strip_urls("see t.co/abc"), "see t.co/abc");
        assert_eq!(strip_urls("http:/x"), "http:/x");
    }

    #[test]
    fn counts_urls() {
        assert_eq!(url_count("a http://x b https://y"), 2);
        assert_eq!(url_count("http://xhttp://y"), 1);
        let spans: Vec<_> = url_spans("ab http://c d").collect();
        assert_eq!(spans, alloc::vec![3..11]);
    }

    #[test]
    fn nfc_composes() {
        assert_eq!(nfc_char_count("he\u{301}llo"), 5);
        assert_eq!(nfc("e\u{301}"), "\u{e9}");
    }

    proptest! {
        #[test]
        fn strip_is_idempotent(s in "(\\PC|http://|https://| |HtTp://){0,40}") {
            let once = strip_urls(&s);
            prop_assert_eq!(strip_urls(&once), once.clone());
            prop_assert_eq!(url_count(&once), 0);
        }

        #[test]
        fn stripped_never_longer(s in "(\\PC|http://| ){0,40}") {
            let stripped = strip_urls(&s);
            let (a, b) = (nfc_char_count(&stripped), nfc_char_count(&s));
            prop_assert!(a <= b);
            prop_assert_eq!(a == b, url_count(&s) == 0);
        }

        #[test]
        fn nfc_counting_is_stable(s in "\\PC{0,40}") {
            let once = nfc(&s);
            prop_assert_eq!(nfc(&once), once.clone());
            prop_assert_eq!(nfc_char_count(&once), nfc_char_count(&s));
        }
    }
}
