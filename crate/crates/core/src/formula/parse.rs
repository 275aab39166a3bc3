//! Recursive-descent parser for the ASCII formula syntax.
//!
//! ```text
//! iff     := implies ( "<->" iff )?
//! implies := or ( "->" implies )?
//! or      := and ( "|" and )*
//! and     := unary ( "&" unary )*
//! unary   := ( "~" | "[]" | "<>" | "nabla" ) unary | primary
//! primary := "p" digits | "true" | "false" | "(" iff ")"
//! ```

use thiserror::Error;

use super::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unknown token `{text}` at position {pos}")]
    UnknownToken { pos: usize, text: String },
    #[error("expected {expected} at position {pos}, found `{found}`")]
    Unexpected {
        pos: usize,
        found: String,
        expected: &'static str,
    },
    #[error("unexpected end of input at position {pos}, expected {expected}")]
    UnexpectedEnd { pos: usize, expected: &'static str },
}

impl ParseError {
    /// Character offset of the error in the input.
    pub fn position(&self) -> usize {
        match self {
            ParseError::UnknownToken { pos, .. }
            | ParseError::Unexpected { pos, .. }
            | ParseError::UnexpectedEnd { pos, .. } => *pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Atom(u32),
    True,
    False,
    Not,
    Box,
    Diamond,
    Nabla,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
}

impl Token {
    fn text(&self) -> String {
        match self {
            Token::Atom(i) => format!("p{i}"),
            Token::True => "true".into(),
            Token::False => "false".into(),
            Token::Not => "~".into(),
            Token::Box => "[]".into(),
            Token::Diamond => "<>".into(),
            Token::Nabla => "nabla".into(),
            Token::And => "&".into(),
            Token::Or => "|".into(),
            Token::Implies => "->".into(),
            Token::Iff => "<->".into(),
            Token::LParen => "(".into(),
            Token::RParen => ")".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<(Vec<(usize, Token)>, usize), ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    let starts_with = |i: usize, s: &str| s.chars().enumerate().all(|(k, c)| chars.get(i + k) == Some(&c));
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let (token, len) = match c {
            '~' => (Token::Not, 1),
            '&' => (Token::And, 1),
            '|' => (Token::Or, 1),
            '(' => (Token::LParen, 1),
            ')' => (Token::RParen, 1),
            '[' if starts_with(i, "[]") => (Token::Box, 2),
            '<' if starts_with(i, "<->") => (Token::Iff, 3),
            '<' if starts_with(i, "<>") => (Token::Diamond, 2),
            '-' if starts_with(i, "->") => (Token::Implies, 2),
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let end = (i..chars.len())
                    .find(|&k| !(chars[k].is_ascii_alphanumeric() || chars[k] == '_'))
                    .unwrap_or(chars.len());
                let word: String = chars[i..end].iter().collect();
                let token = match word.as_str() {
                    "true" => Token::True,
                    "false" => Token::False,
                    "nabla" => Token::Nabla,
                    w => match w.strip_prefix('p') {
                        Some(digits) if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) => {
                            match digits.parse::<u32>() {
                                Ok(n) => Token::Atom(n),
                                Err(_) => return Err(ParseError::UnknownToken { pos: i, text: word }),
                            }
                        }
                        _ => return Err(ParseError::UnknownToken { pos: i, text: word }),
                    },
                };
                (token, end - i)
            }
            other => {
                return Err(ParseError::UnknownToken {
                    pos: i,
                    text: other.to_string(),
                })
            }
        };
        tokens.push((i, token));
        i += len;
    }
    Ok((tokens, chars.len()))
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    next: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.next).map(|(_, t)| t)
    }

    fn eat(&mut self, token: &Token) -> bool {
        if self.peek() == Some(token) {
            self.next += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, expected: &'static str) -> ParseError {
        match self.tokens.get(self.next) {
            Some((pos, t)) => ParseError::Unexpected {
                pos: *pos,
                found: t.text(),
                expected,
            },
            None => ParseError::UnexpectedEnd {
                pos: self.end,
                expected,
            },
        }
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.implies()?;
        if self.eat(&Token::Iff) {
            Ok(Formula::iff(lhs, self.iff()?))
        } else {
            Ok(lhs)
        }
    }

    fn implies(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if self.eat(&Token::Implies) {
            Ok(Formula::implies(lhs, self.implies()?))
        } else {
            Ok(lhs)
        }
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.and()?;
        while self.eat(&Token::Or) {
            acc = Formula::or(acc, self.and()?);
        }
        Ok(acc)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while self.eat(&Token::And) {
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let wrap: fn(Formula) -> Formula = match self.peek() {
            Some(Token::Not) => Formula::not,
            Some(Token::Box) => Formula::necessarily,
            Some(Token::Diamond) => Formula::possibly,
            Some(Token::Nabla) => Formula::plausibly,
            _ => return self.primary(),
        };
        self.next += 1;
        Ok(wrap(self.unary()?))
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        const EXPECTED: &str = "an atom, constant, unary operator or `(`";
        let f = match self.peek() {
            Some(Token::Atom(i)) => Formula::Atom(*i),
            Some(Token::True) => Formula::Top,
            Some(Token::False) => Formula::Bottom,
            Some(Token::LParen) => {
                self.next += 1;
                let inner = self.iff()?;
                if !self.eat(&Token::RParen) {
                    return Err(self.error("`)`"));
                }
                return Ok(inner);
            }
            _ => return Err(self.error(EXPECTED)),
        };
        self.next += 1;
        Ok(f)
    }
}

/// Parses a formula; whitespace is insignificant.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let (tokens, end) = tokenize(text)?;
    let mut parser = Parser { tokens, next: 0, end };
    let f = parser.iff()?;
    if parser.next < parser.tokens.len() {
        return Err(parser.error("a binary operator or end of input"));
    }
    Ok(f)
}
