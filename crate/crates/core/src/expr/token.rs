use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Number,
    Identifier,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TokenKind::Number => "number",
            TokenKind::Identifier => "identifier",
            TokenKind::Plus => "'+'",
            TokenKind::Minus => "'-'",
            TokenKind::Star => "'*'",
            TokenKind::Slash => "'/'",
            TokenKind::Caret => "'^'",
            TokenKind::LParen => "'('",
            TokenKind::RParen => "')'",
            TokenKind::Comma => "','",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Token<'a> {
    pub kind: TokenKind,
    pub text: &'a str,
    /// Byte offset of the first character in the source.
    pub position: usize,
}

impl Token<'_> {
    pub fn end(&self) -> usize {
        self.position + self.text.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unexpected character {character:?} at offset {position}")]
pub struct LexError {
    pub position: usize,
    pub character: char,
}

/// Splits `source` into tokens, skipping whitespace.
///
/// Numbers are unsigned decimals with an optional fraction and an optional
/// exponent; the exponent is only consumed when digits follow the `e`.
pub fn tokenize(source: &str) -> Result<Vec<Token<'_>>, LexError> {
    let bytes = source.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let kind = match c {
            b'+' => TokenKind::Plus,
            b'-' => TokenKind::Minus,
            b'*' => TokenKind::Star,
            b'/' => TokenKind::Slash,
            b'^' => TokenKind::Caret,
            b'(' => TokenKind::LParen,
            b')' => TokenKind::RParen,
            b',' => TokenKind::Comma,
            b'0'..=b'9' | b'.' => {
                i = scan_number(bytes, i).ok_or_else(|| lex_error(source, start))?;
                tokens.push(Token {
                    kind: TokenKind::Number,
                    text: &source[start..i],
                    position: start,
                });
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                tokens.push(Token {
                    kind: TokenKind::Identifier,
                    text: &source[start..i],
                    position: start,
                });
                continue;
            }
            _ => return Err(lex_error(source, start)),
        };
        i += 1;
        tokens.push(Token {
            kind,
            text: &source[start..i],
            position: start,
        });
    }
    Ok(tokens)
}

/// Returns the end offset of the number starting at `start`, or `None` for a
/// lone `.`.
fn scan_number(bytes: &[u8], start: usize) -> Option<usize> {
    let digits = |mut i: usize| {
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        i
    };
    let mut i = digits(start);
    let mut mantissa_digits = i - start;
    if i < bytes.len() && bytes[i] == b'.' {
        let frac_start = i + 1;
        i = digits(frac_start);
        mantissa_digits += i - frac_start;
    }
    if mantissa_digits == 0 {
        return None;
    }
    if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
        let mut j = i + 1;
        if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
            j += 1;
        }
        let end = digits(j);
        if end > j {
            i = end;
        }
    }
    Some(i)
}

fn lex_error(source: &str, position: usize) -> LexError {
    LexError {
        position,
        character: source[position..].chars().next().unwrap_or('\0'),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<(TokenKind, &str)> {
        tokenize(src)
            .unwrap()
            .into_iter()
            .map(|t| (t.kind, t.text))
            .collect()
    }

    #[test]
    fn simple_division() {
        assert_eq!(
            kinds("x/5"),
            vec![
                (TokenKind::Identifier, "x"),
                (TokenKind::Slash, "/"),
                (TokenKind::Number, "5")
            ]
        );
    }

    #[test]
    fn decimal_coefficients() {
        assert_eq!(
            kinds("2.87*x^2"),
            vec![
                (TokenKind::Number, "2.87"),
                (TokenKind::Star, "*"),
                (TokenKind::Identifier, "x"),
                (TokenKind::Caret, "^"),
                (TokenKind::Number, "2")
            ]
        );
    }

    #[test]
    fn exponents_need_digits() {
        assert_eq!(kinds("1e-3"), vec![(TokenKind::Number, "1e-3")]);
        assert_eq!(kinds("1E+10"), vec![(TokenKind::Number, "1E+10")]);
        assert_eq!(
            kinds("2e"),
            vec![(TokenKind::Number, "2"), (TokenKind::Identifier, "e")]
        );
        assert_eq!(
            kinds("2e-x"),
            vec![
                (TokenKind::Number, "2"),
                (TokenKind::Identifier, "e"),
                (TokenKind::Minus, "-"),
                (TokenKind::Identifier, "x")
            ]
        );
        assert_eq!(kinds(".5"), vec![(TokenKind::Number, ".5")]);
    }

    #[test]
    fn invalid_character() {
        let err = tokenize("x $ 2").unwrap_err();
        assert_eq!(err.position, 2);
        assert_eq!(err.character, '$');
        assert_eq!(tokenize("x + .").unwrap_err().position, 4);
        assert_eq!(tokenize("1 + é").unwrap_err().character, 'é');
    }

    #[test]
    fn positions_strictly_increase() {
        let toks = tokenize(" (x + cos(x)*sin(x))/pi - 1/4 ").unwrap();
        assert!(toks.windows(2).all(|w| w[0].position < w[1].position));
        assert_eq!(toks[0].position, 1);
    }
}
