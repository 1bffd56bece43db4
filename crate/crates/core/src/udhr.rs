//! Paragraph splitting for UDHR translation files.

use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("invalid UTF-8 at byte offset {offset}")]
pub struct DecodeError {
    pub offset: usize,
}

pub fn decode_utf8(content: &[u8]) -> Result<&str, DecodeError> {
    core::str::from_utf8(content).map_err(|e| DecodeError {
        offset: e.valid_up_to(),
    })
}

/// Splits a translation into paragraphs: maximal runs of non-blank lines.
///
/// Lines inside a paragraph keep their `\n` separators; each paragraph is
/// trimmed. Indices start at 0 and are consecutive.
pub fn split_paragraphs(content: &str) -> Vec<(usize, String)> {
    let content = content.strip_prefix('\u{FEFF}').unwrap_or(content);
    let mut out = Vec::new();
    let mut current: Vec<&str> = Vec::new();
    let flush = |current: &mut Vec<&str>, out: &mut Vec<(usize, String)>| {
        if !current.is_empty() {
            let text = current.join("\n");
            out.push((out.len(), String::from(text.trim())));
            current.clear();
        }
    };
    for line in content.lines() {
        if line.trim().is_empty() {
            flush(&mut current, &mut out);
        } else {
            current.push(line);
        }
    }
    flush(&mut current, &mut out);
    out
}

/// Decodes and splits a raw translation file.
pub fn parse_udhr_language_file(content: &[u8]) -> Result<Vec<(usize, String)>, DecodeError> {
    decode_utf8(content).map(split_paragraphs)
}
