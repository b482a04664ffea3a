//! Parsing and printing of group presentations `<a,b | a^4, b^2=a^2, ...>`
//! and of the generator words used for subgroup specifications.
//!
//! Words are products read left to right: `a*b` means "apply `a`, then `b`".
//! When every generator name is a single letter the `*` may be omitted, so
//! `abc = bca` parses as `a*b*c = b*c*a`. A parenthesised sub-word may carry an
//! exponent, e.g. `(a*b)^2`.

use std::fmt;

/// A word in the generators, kept in free-reduced form: adjacent factors never
/// share a generator and no exponent is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    factors: Vec<(usize, i64)>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(index: usize) -> Self {
        Word {
            factors: vec![(index, 1)],
        }
    }

    /// Builds a word from raw factors, normalizing as it goes.
    pub fn from_factors<I: IntoIterator<Item = (usize, i64)>>(factors: I) -> Self {
        let mut w = Word::identity();
        for (g, e) in factors {
            w.push(g, e);
        }
        w
    }

    pub fn factors(&self) -> &[(usize, i64)] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    fn push(&mut self, gen: usize, exp: i64) {
        if exp == 0 {
            return;
        }
        match self.factors.last_mut() {
            Some((g, e)) if *g == gen => {
                *e += exp;
                if *e == 0 {
                    self.factors.pop();
                }
            }
            _ => self.factors.push((gen, exp)),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &(g, e) in &other.factors {
            w.push(g, e);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word {
            factors: self.factors.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn pow(&self, exp: i64) -> Word {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..exp.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.factors.iter().map(|&(g, _)| g).max()
    }

    /// Expands the word into a sequence of (generator, +1/-1) letters.
    pub fn letters(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.factors.iter().flat_map(|&(g, e)| {
            std::iter::repeat_n((g, e < 0), e.unsigned_abs() as usize)
        })
    }
}

/// A finite presentation: generator names and relators (each meaning `w = 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} | ", self.generators.join(","))?;
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| format_word(r, &self.generators))
            .collect();
        write!(f, "{}>", rels.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown generator {name:?} at line {line}, column {column}")]
    UnknownGenerator {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("zero exponent at line {line}, column {column}")]
    ZeroExponent { line: usize, column: usize },
    #[error("generator {0:?} declared twice")]
    DuplicateGenerator(String),
    #[error("a presentation needs at least one generator")]
    NoGenerators,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok {
    Ident,
    Int,
    One,
    Caret,
    Star,
    Comma,
    Bar,
    Eq,
    LAngle,
    RAngle,
    LParen,
    RParen,
    Eof,
}

#[derive(Clone, Debug)]
struct Token<'a> {
    kind: Tok,
    text: &'a str,
    line: usize,
    column: usize,
}

fn tokenize(src: &str) -> Result<Vec<Token<'_>>, ParseError> {
    let mut tokens = Vec::new();
    let bytes = src.as_bytes();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let (tl, tc) = (line, col);
        let kind = match c {
            b'\n' => {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_ascii_whitespace() => {
                i += 1;
                col += 1;
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    i += 1;
                }
                Tok::Ident
            }
            b'-' | b'0'..=b'9' => {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if &src[start..i] == "1" {
                    Tok::One
                } else {
                    Tok::Int
                }
            }
            _ => {
                i += 1;
                match c {
                    b'^' => Tok::Caret,
                    b'*' => Tok::Star,
                    b',' => Tok::Comma,
                    b'|' => Tok::Bar,
                    b'=' => Tok::Eq,
                    b'<' => Tok::LAngle,
                    b'>' => Tok::RAngle,
                    b'(' => Tok::LParen,
                    b')' => Tok::RParen,
                    _ => {
                        return Err(ParseError::Syntax {
                            line: tl,
                            column: tc,
                            message: format!("unexpected character {:?}", c as char),
                        })
                    }
                }
            }
        };
        col += i - start;
        tokens.push(Token {
            kind,
            text: &src[start..i],
            line: tl,
            column: tc,
        });
    }
    tokens.push(Token {
        kind: Tok::Eof,
        text: "",
        line,
        column: col,
    });
    Ok(tokens)
}

struct Parser<'a, 'g> {
    tokens: Vec<Token<'a>>,
    pos: usize,
    gens: &'g [String],
    juxtapose: bool,
}

impl<'a, 'g> Parser<'a, 'g> {
    fn new(tokens: Vec<Token<'a>>, gens: &'g [String]) -> Self {
        let juxtapose = gens.iter().all(|g| g.len() == 1);
        Parser {
            tokens,
            pos: 0,
            gens,
            juxtapose,
        }
    }

    fn peek(&self) -> &Token<'a> {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token<'a> {
        let t = self.tokens[self.pos].clone();
        if t.kind != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let t = self.peek();
        ParseError::Syntax {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn expect(&mut self, kind: Tok, what: &str) -> Result<Token<'a>, ParseError> {
        if self.peek().kind == kind {
            Ok(self.bump())
        } else {
            Err(self.error(format!("expected {what}, found {:?}", self.peek().text)))
        }
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        if self.peek().kind != Tok::Caret {
            return Ok(1);
        }
        self.bump();
        let t = self.peek().clone();
        match t.kind {
            Tok::Int | Tok::One => {
                self.bump();
                let value: i64 = t.text.parse().map_err(|_| ParseError::Syntax {
                    line: t.line,
                    column: t.column,
                    message: format!("malformed exponent {:?}", t.text),
                })?;
                if value == 0 {
                    return Err(ParseError::ZeroExponent {
                        line: t.line,
                        column: t.column,
                    });
                }
                Ok(value)
            }
            _ => Err(self.error("expected integer exponent")),
        }
    }

    fn lookup(&self, name: &str, line: usize, column: usize) -> Result<usize, ParseError> {
        self.gens
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| ParseError::UnknownGenerator {
                name: name.to_string(),
                line,
                column,
            })
    }

    fn term(&mut self) -> Result<Word, ParseError> {
        let t = self.peek().clone();
        match t.kind {
            Tok::Ident => {
                self.bump();
                let mut w = Word::identity();
                if self.juxtapose {
                    let chars: Vec<char> = t.text.chars().collect();
                    for (k, ch) in chars.iter().enumerate() {
                        let g = self.lookup(&ch.to_string(), t.line, t.column + k)?;
                        if k + 1 < chars.len() {
                            w.push(g, 1);
                        } else {
                            w.push(g, self.exponent()?);
                        }
                    }
                } else {
                    let g = self.lookup(t.text, t.line, t.column)?;
                    w.push(g, self.exponent()?);
                }
                Ok(w)
            }
            Tok::LParen => {
                self.bump();
                let inner = self.word()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner.pow(self.exponent()?))
            }
            _ => Err(self.error(format!("expected generator, found {:?}", t.text))),
        }
    }

    fn starts_term(&self) -> bool {
        matches!(self.peek().kind, Tok::Ident | Tok::LParen)
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        if self.peek().kind == Tok::One {
            self.bump();
            return Ok(Word::identity());
        }
        let mut w = self.term()?;
        loop {
            if self.peek().kind == Tok::Star {
                self.bump();
                let t = self.term()?;
                w = w.concat(&t);
            } else if self.starts_term() {
                let t = self.term()?;
                w = w.concat(&t);
            } else {
                return Ok(w);
            }
        }
    }

    /// A relator, or a chain `w0 = w1 = ... = wk` giving one relator per `=`.
    fn relation(&mut self) -> Result<Vec<Word>, ParseError> {
        let mut prev = self.word()?;
        if self.peek().kind != Tok::Eq {
            return Ok(vec![prev]);
        }
        let mut out = Vec::new();
        while self.peek().kind == Tok::Eq {
            self.bump();
            let next = self.word()?;
            out.push(prev.concat(&next.inverse()));
            prev = next;
        }
        Ok(out)
    }
}

/// Parses `<gens | relations>`. A relation `u = v` is stored as the relator `u*v^-1`;
/// chains `u = v = w` are split into consecutive pairs.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let tokens = tokenize(text)?;
    // Generator names are read before the relation parser is set up, since the
    // juxtaposition rule depends on them.
    let mut pos = 0;
    let tok = |p: usize| &tokens[p];
    if tok(pos).kind != Tok::LAngle {
        return Err(ParseError::Syntax {
            line: tok(pos).line,
            column: tok(pos).column,
            message: "expected '<'".into(),
        });
    }
    pos += 1;
    let mut generators: Vec<String> = Vec::new();
    loop {
        let t = tok(pos);
        if t.kind != Tok::Ident {
            if generators.is_empty() && t.kind == Tok::Bar {
                return Err(ParseError::NoGenerators);
            }
            return Err(ParseError::Syntax {
                line: t.line,
                column: t.column,
                message: format!("expected generator name, found {:?}", t.text),
            });
        }
        if generators.iter().any(|g| g == t.text) {
            return Err(ParseError::DuplicateGenerator(t.text.to_string()));
        }
        generators.push(t.text.to_string());
        pos += 1;
        match tok(pos).kind {
            Tok::Comma => pos += 1,
            Tok::Bar => {
                pos += 1;
                break;
            }
            _ => {
                return Err(ParseError::Syntax {
                    line: tok(pos).line,
                    column: tok(pos).column,
                    message: "expected ',' or '|'".into(),
                })
            }
        }
    }

    let mut parser = Parser::new(tokens, &generators);
    parser.pos = pos;
    let mut relators = Vec::new();
    loop {
        relators.extend(parser.relation()?);
        match parser.peek().kind {
            Tok::Comma => {
                parser.bump();
            }
            Tok::RAngle => {
                parser.bump();
                break;
            }
            _ => return Err(parser.error("expected ',' or '>'")),
        }
    }
    parser.expect(Tok::Eof, "end of input")?;
    Ok(Presentation {
        generators,
        relators,
    })
}

/// Parses a single word over `gens`.
pub fn parse_word(text: &str, gens: &[String]) -> Result<Word, ParseError> {
    if gens.is_empty() {
        return Err(ParseError::NoGenerators);
    }
    let tokens = tokenize(text)?;
    let mut parser = Parser::new(tokens, gens);
    let w = parser.word()?;
    parser.expect(Tok::Eof, "end of word")?;
    Ok(w)
}

/// Parses a comma-separated list of words, as used for `--kernel "a^2,a*b"`.
pub fn parse_word_list(text: &str, gens: &[String]) -> Result<Vec<Word>, ParseError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    if gens.is_empty() {
        return Err(ParseError::NoGenerators);
    }
    let tokens = tokenize(text)?;
    let mut parser = Parser::new(tokens, gens);
    let mut words = vec![parser.word()?];
    while parser.peek().kind == Tok::Comma {
        parser.bump();
        words.push(parser.word()?);
    }
    parser.expect(Tok::Eof, "',' or end of list")?;
    Ok(words)
}

/// Prints a word as `a^2*b^-1`; the identity prints as `1`.
pub fn format_word(w: &Word, gens: &[String]) -> String {
    if w.is_identity() {
        return "1".to_string();
    }
    let parts: Vec<String> = w
        .factors
        .iter()
        .map(|&(g, e)| {
            if e == 1 {
                gens[g].clone()
            } else {
                format!("{}^{}", gens[g], e)
            }
        })
        .collect();
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn chained_equalities() {
        let p = parse_presentation("<a,b,c | a^2=b^2=c^2=1, abc=bca=cab>").unwrap();
        assert_eq!(p.relators.len(), 5);
        assert_eq!(p.relators[0], Word::from_factors([(0, 2), (1, -2)]));
        assert_eq!(p.relators[2], Word::from_factors([(2, 2)]));
    }

    #[test]
    fn smallest_presentation() {
        let p = parse_presentation("<a | a^4>").unwrap();
        assert_eq!(p.generators, gens(&["a"]));
        assert_eq!(p.relators, vec![Word::from_factors([(0, 4)])]);
    }

    #[test]
    fn quaternion_presentation() {
        let p = parse_presentation("<a,b | a^4=1, b^2=a^2, b^-1*a*b=a^-1>").unwrap();
        assert_eq!(p.generator_count(), 2);
        assert_eq!(p.relators.len(), 3);
        assert_eq!(p.relators[0], Word::from_factors([(0, 4)]));
        assert_eq!(p.relators[1], Word::from_factors([(1, 2), (0, -2)]));
        assert_eq!(
            p.relators[2],
            Word::from_factors([(1, -1), (0, 1), (1, 1), (0, 1)])
        );
    }

    #[test]
    fn semidihedral_style_presentation() {
        let p = parse_presentation("<a,b | a^8=1, b^2=a^4, a*b=b*a^3>").unwrap();
        assert_eq!(p.relators.len(), 3);
        assert_eq!(
            p.relators[2],
            Word::from_factors([(0, 1), (1, 1), (0, -3), (1, -1)])
        );
    }

    #[test]
    fn zero_exponent_rejected() {
        let err = parse_presentation("<a | a^0>").unwrap_err();
        assert_eq!(err, ParseError::ZeroExponent { line: 1, column: 8 });
    }

    #[test]
    fn word_examples() {
        let g = gens(&["a", "b"]);
        assert_eq!(parse_word("a^2", &g).unwrap().factors(), &[(0, 2)]);
        assert_eq!(parse_word("a*b", &g).unwrap().factors(), &[(0, 1), (1, 1)]);
        assert!(parse_word("a*a^-1", &g).unwrap().is_identity());
        assert_eq!(parse_word("1", &g).unwrap(), Word::identity());
    }

    #[test]
    fn format_examples() {
        let g = gens(&["a", "b"]);
        assert_eq!(format_word(&Word::from_factors([(0, 2), (1, 1)]), &g), "a^2*b");
        assert_eq!(format_word(&Word::identity(), &g), "1");
        assert_eq!(format_word(&Word::from_factors([(1, -1)]), &g), "b^-1");
    }

    #[test]
    fn juxtaposition_only_with_single_letters() {
        let g = gens(&["a", "b", "c"]);
        assert_eq!(
            parse_word("abc", &g).unwrap(),
            parse_word("a*b*c", &g).unwrap()
        );
        assert_eq!(
            parse_word("ab^2", &g).unwrap().factors(),
            &[(0, 1), (1, 2)]
        );
        let long = gens(&["x", "yy"]);
        assert!(matches!(
            parse_word("xyy", &long),
            Err(ParseError::UnknownGenerator { .. })
        ));
        assert_eq!(parse_word("x*yy", &long).unwrap().factors(), &[(0, 1), (1, 1)]);
    }

    #[test]
    fn unknown_generator_reports_position() {
        let err = parse_presentation("<a,b |\n a^2, c>").unwrap_err();
        assert_eq!(
            err,
            ParseError::UnknownGenerator {
                name: "c".into(),
                line: 2,
                column: 7
            }
        );
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(
            parse_presentation("<a | a^2"),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_presentation("a | a^2>"),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_presentation("<a,a | a^2>"),
            Err(ParseError::DuplicateGenerator(_))
        ));
        assert!(matches!(
            parse_word("a^", &gens(&["a"])),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_word("a^x", &gens(&["a"])),
            Err(ParseError::Syntax { .. })
        ));
    }

    #[test]
    fn parenthesised_power() {
        let g = gens(&["g", "h"]);
        assert_eq!(
            parse_word("(gh^-1)^2", &g).unwrap().factors(),
            &[(0, 1), (1, -1), (0, 1), (1, -1)]
        );
        assert_eq!(
            parse_word("(gh)^-1", &g).unwrap().factors(),
            &[(1, -1), (0, -1)]
        );
    }

    #[test]
    fn word_lists() {
        let g = gens(&["a", "b"]);
        let ws = parse_word_list("a^2, a*b", &g).unwrap();
        assert_eq!(ws.len(), 2);
        assert!(parse_word_list("  ", &g).unwrap().is_empty());
    }

    #[test]
    fn display_round_trips() {
        let p = parse_presentation("<a,b | a^8, b^2=a^4, ab=ba^3>").unwrap();
        let again = parse_presentation(&p.to_string()).unwrap();
        assert_eq!(p, again);
    }
}
