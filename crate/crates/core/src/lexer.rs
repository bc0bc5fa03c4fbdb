//! Tokenizer shared by the program parser and the formula parser.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    /// lowercase-leading identifier (symbolic constant, predicate, keyword)
    Ident(String),
    /// uppercase-leading identifier
    Var(String),
    Number(BigInt),
    /// `#inf`, `#sup`, `#false`, `#true`
    Hash(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Dot,
    DotDot,
    If,
    Plus,
    Minus,
    Star,
    Slash,
    Backslash,
    Eq,
    Ne,
    Lt,
    Gt,
    Le,
    Ge,
    Amp,
    Bar,
    Arrow,
    Iff,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) | Tok::Var(s) => write!(f, "`{s}`"),
            Tok::Number(n) => write!(f, "`{n}`"),
            Tok::Hash(s) => write!(f, "`#{s}`"),
            Tok::Eof => f.write_str("end of input"),
            other => write!(f, "`{}`", other.symbol()),
        }
    }
}

impl Tok {
    pub(crate) fn symbol(&self) -> &'static str {
        match self {
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Comma => ",",
            Tok::Dot => ".",
            Tok::DotDot => "..",
            Tok::If => ":-",
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Slash => "/",
            Tok::Backslash => "\\",
            Tok::Eq => "=",
            Tok::Ne => "!=",
            Tok::Lt => "<",
            Tok::Gt => ">",
            Tok::Le => "<=",
            Tok::Ge => ">=",
            Tok::Amp => "&",
            Tok::Bar => "|",
            Tok::Arrow => "->",
            Tok::Iff => "<->",
            Tok::Ident(_) => "identifier",
            Tok::Var(_) => "variable",
            Tok::Number(_) => "number",
            Tok::Hash(_) => "#keyword",
            Tok::Eof => "end of input",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

/// A syntax error in a program or formula text.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: expected {}, found {found}", expected_list(.expected))]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

fn expected_list(expected: &[String]) -> String {
    match expected {
        [] => "nothing".to_string(),
        [one] => one.clone(),
        many => {
            let mut s = String::from("one of ");
            for (i, e) in many.iter().enumerate() {
                if i > 0 {
                    s.push_str(", ");
                }
                s.push_str(e);
            }
            s
        }
    }
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);

    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '%' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let (start_line, start_col) = (line, col);
        let peek = |k: usize| chars.get(i + k).copied();
        let (tok, len) = if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let digits: String = chars[i..j].iter().collect();
            let n: BigInt = digits.parse().expect("ascii digits");
            (Tok::Number(n), j - i)
        } else if c.is_ascii_alphabetic() || c == '_' || c == '#' {
            let mut j = i + 1;
            while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            let word: String = chars[i..j].iter().collect();
            let tok = if c == '#' {
                match &word[1..] {
                    "inf" | "sup" | "false" | "true" => Tok::Hash(word[1..].to_string()),
                    _ => return Err(lex_error(start_line, start_col, &word)),
                }
            } else if c == '_' {
                return Err(lex_error(start_line, start_col, &word));
            } else if c.is_ascii_uppercase() {
                Tok::Var(word)
            } else {
                Tok::Ident(word)
            };
            (tok, j - i)
        } else {
            match (c, peek(1), peek(2)) {
                ('<', Some('-'), Some('>')) => (Tok::Iff, 3),
                ('<', Some('='), _) => (Tok::Le, 2),
                ('>', Some('='), _) => (Tok::Ge, 2),
                ('!', Some('='), _) => (Tok::Ne, 2),
                ('-', Some('>'), _) => (Tok::Arrow, 2),
                (':', Some('-'), _) => (Tok::If, 2),
                ('.', Some('.'), _) => (Tok::DotDot, 2),
                ('<', _, _) => (Tok::Lt, 1),
                ('>', _, _) => (Tok::Gt, 1),
                ('=', _, _) => (Tok::Eq, 1),
                ('.', _, _) => (Tok::Dot, 1),
                ('(', _, _) => (Tok::LParen, 1),
                (')', _, _) => (Tok::RParen, 1),
                ('{', _, _) => (Tok::LBrace, 1),
                ('}', _, _) => (Tok::RBrace, 1),
                (',', _, _) => (Tok::Comma, 1),
                ('+', _, _) => (Tok::Plus, 1),
                ('-', _, _) => (Tok::Minus, 1),
                ('*', _, _) => (Tok::Star, 1),
                ('/', _, _) => (Tok::Slash, 1),
                ('\\', _, _) => (Tok::Backslash, 1),
                ('&', _, _) => (Tok::Amp, 1),
                ('|', _, _) => (Tok::Bar, 1),
                _ => return Err(lex_error(start_line, start_col, &c.to_string())),
            }
        };
        out.push(Spanned {
            tok,
            line: start_line,
            column: start_col,
        });
        i += len;
        col += len;
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

fn lex_error(line: usize, column: usize, found: &str) -> ParseError {
    ParseError {
        line,
        column,
        expected: alloc::vec!["a token".to_string()],
        found: alloc::format!("`{found}`"),
    }
}

/// Cursor over a token vector with expected-set tracking.
pub(crate) struct Cursor {
    toks: Vec<Spanned>,
    pub pos: usize,
}

impl Cursor {
    pub fn new(toks: Vec<Spanned>) -> Self {
        Cursor { toks, pos: 0 }
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    pub fn peek_at(&self, k: usize) -> &Tok {
        let idx = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[idx].tok
    }

    pub fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn eat_ident(&mut self, word: &str) -> bool {
        if matches!(self.peek(), Tok::Ident(w) if w == word) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, tok: &Tok) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(&[tok.symbol()]))
        }
    }

    pub fn error(&self, expected: &[&str]) -> ParseError {
        let here = &self.toks[self.pos];
        ParseError {
            line: here.line,
            column: here.column,
            expected: expected
                .iter()
                .map(|e| match *e {
                    "identifier" | "variable" | "number" | "term" | "atom" | "formula"
                    | "end of input" | "rule" => e.to_string(),
                    other if other.starts_with(char::is_alphabetic) => other.to_string(),
                    other => alloc::format!("`{other}`"),
                })
                .collect(),
            found: here.tok.to_string(),
        }
    }
}
