//! GSM 03.38 default alphabet and its extension table.

/// The default alphabet, indexed by septet value. `0x1B` is the escape to
/// the extension table and carries no character of its own.
pub const BASIC_TABLE: [char; 128] = [
    '@', '£', '$', '¥', 'è', 'é', 'ù', 'ì', 'ò', 'Ç', '\n', 'Ø', 'ø', '\r', 'Å', 'å', //
    'Δ', '_', 'Φ', 'Γ', 'Λ', 'Ω', 'Π', 'Ψ', 'Σ', 'Θ', 'Ξ', '\u{1B}', 'Æ', 'æ', 'ß', 'É', //
    ' ', '!', '"', '#', '¤', '%', '&', '\'', '(', ')', '*', '+', ',', '-', '.', '/', //
    '0', '1', '2', '3', '4', '5', '6', '7', '8', '9', ':', ';', '<', '=', '>', '?', //
    '¡', 'A', 'B', 'C', 'D', 'E', 'F', 'G', 'H', 'I', 'J', 'K', 'L', 'M', 'N', 'O', //
    'P', 'Q', 'R', 'S', 'T', 'U', 'V', 'W', 'X', 'Y', 'Z', 'Ä', 'Ö', 'Ñ', 'Ü', '§', //
    '¿', 'a', 'b', 'c', 'd', 'e', 'f', 'g', 'h', 'i', 'j', 'k', 'l', 'm', 'n', 'o', //
    'p', 'q', 'r', 's', 't', 'u', 'v', 'w', 'x', 'y', 'z', 'ä', 'ö', 'ñ', 'ü', 'à', //
];

/// Extension table entries as (character, septet after the escape).
pub const EXTENSION_TABLE: [(char, u8); 10] = [
    ('\u{0C}', 0x0A),
    ('^', 0x14),
    ('{', 0x28),
    ('}', 0x29),
    ('\\', 0x2F),
    ('[', 0x3C),
    ('~', 0x3D),
    (']', 0x3E),
    ('|', 0x40),
    ('€', 0x65),
];

const ESCAPE: u8 = 0x1B;

pub fn basic_septet(c: char) -> Option<u8> {
    if c == '\u{1B}' {
        return None;
    }
    if c.is_ascii() {
        let b = c as u8;
        match b {
            b'A'..=b'Z'
            | b'a'..=b'z'
            | b'0'..=b'9'
            | b' '
            | b'\n'
            | b'\r'
            | b'!'..=b'#'
            | b'%'..=b'?' => return Some(b),
            _ => {}
        }
    }
    BASIC_TABLE.iter().position(|&t| t == c).map(|i| i as u8)
}

pub fn extension_septet(c: char) -> Option<u8> {
    EXTENSION_TABLE
        .iter()
        .find(|&&(t, _)| t == c)
        .map(|&(_, code)| code)
}

/// Septets needed for `c`: 1 for the default alphabet, 2 for the extension
/// table (escape + code), `None` if the character cannot be sent as GSM-7.
pub fn septet_cost(c: char) -> Option<usize> {
    if basic_septet(c).is_some() {
        Some(1)
    } else if extension_septet(c).is_some() {
        Some(2)
    } else {
        None
    }
}

/// Septet values for `c`, including the escape for extension characters.
pub fn encode_char(c: char) -> Option<([u8; 2], usize)> {
    if let Some(s) = basic_septet(c) {
        Some(([s, 0], 1))
    } else {
        extension_septet(c).map(|s| ([ESCAPE, s], 2))
    }
}
