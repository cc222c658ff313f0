use super::ExprError;
use crate::numerics::Elementary;

#[derive(Debug, Clone, PartialEq)]
pub enum TokenKind {
    Number(f64),
    Identifier,
    /// A reserved function name.
    Keyword,
    Operator(char),
    LParen,
    RParen,
    Comma,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    /// Byte offset of the first character.
    pub position: usize,
}

pub fn is_reserved(name: &str) -> bool {
    Elementary::from_name(name).is_some()
}

/// Splits `text` into tokens, dropping whitespace and `#` comments.
pub fn tokenize(text: &str) -> Result<Vec<Token>, ExprError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            b'0'..=b'9' | b'.' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let lexeme = &text[start..i];
                let value: f64 = lexeme.parse().map_err(|_| ExprError::Lex {
                    position: start,
                    character: c as char,
                })?;
                out.push(Token {
                    kind: TokenKind::Number(value),
                    lexeme: lexeme.to_string(),
                    position: start,
                });
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let lexeme = &text[start..i];
                let kind = if is_reserved(lexeme) {
                    TokenKind::Keyword
                } else {
                    TokenKind::Identifier
                };
                out.push(Token {
                    kind,
                    lexeme: lexeme.to_string(),
                    position: start,
                });
            }
            b'+' | b'-' | b'*' | b'/' | b'^' => {
                out.push(Token {
                    kind: TokenKind::Operator(c as char),
                    lexeme: (c as char).to_string(),
                    position: i,
                });
                i += 1;
            }
            b'(' | b')' | b',' => {
                let kind = match c {
                    b'(' => TokenKind::LParen,
                    b')' => TokenKind::RParen,
                    _ => TokenKind::Comma,
                };
                out.push(Token {
                    kind,
                    lexeme: (c as char).to_string(),
                    position: i,
                });
                i += 1;
            }
            _ => {
                let character = text[i..].chars().next().unwrap_or('\u{fffd}');
                return Err(ExprError::Lex { position: i, character });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(text: &str) -> Vec<TokenKind> {
        tokenize(text).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn product_with_call() {
        let toks = tokenize("a*cos(t)").unwrap();
        let lex: Vec<&str> = toks.iter().map(|t| t.lexeme.as_str()).collect();
        assert_eq!(lex, ["a", "*", "cos", "(", "t", ")"]);
        assert_eq!(toks[0].kind, TokenKind::Identifier);
        assert_eq!(toks[2].kind, TokenKind::Keyword);
        assert!(toks.windows(2).all(|w| w[0].position <= w[1].position));
    }

    #[test]
    fn scientific_number() {
        assert_eq!(kinds("1.5e2"), vec![TokenKind::Number(150.0)]);
        assert_eq!(kinds("2.5E-1"), vec![TokenKind::Number(0.25)]);
    }

    #[test]
    fn bare_e_after_number_is_an_identifier() {
        assert_eq!(
            kinds("2e"),
            vec![TokenKind::Number(2.0), TokenKind::Identifier]
        );
    }

    #[test]
    fn unknown_character_is_reported() {
        assert_eq!(
            tokenize("x @ y"),
            Err(ExprError::Lex {
                position: 2,
                character: '@'
            })
        );
    }

    #[test]
    fn comments_are_skipped() {
        assert_eq!(kinds("1 # trailing * junk"), vec![TokenKind::Number(1.0)]);
    }
}
