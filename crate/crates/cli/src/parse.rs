//! Expression parser: a lenient superset of
//!
//! ```text
//! element := term { ("+" | "-") term } ;
//! term    := [ coeff ] { factor } ;
//! factor  := atom [ "^" integer ] ;
//! atom    := "a" | "a*" | "g" | "g*" | "u" | "u*" | "v" | "w" | "v*" | "w*" | "z" | "z*"
//!          | "q" | "zeta" | "i" | number | "(" element ")" ;
//! ```
//!
//! Juxtaposition multiplies; a `*` glued to the preceding atom or `)` is the adjoint,
//! a free-standing `*` is an explicit product. Exponents may be negative for invertible
//! factors (`u^-1`, `q^-2`). Numbers may be integers, fractions `3/4` or decimals `0.25`.

use std::fmt;

use qlab_core::algebra::adjoint;
use qlab_core::scalar::parse_rational;
use qlab_core::{Algebra, Element, GaussRat, Generator, LaurentCoefficient, Monomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at position {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { position, message: message.into() })
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    /// `glued`: no whitespace before the star.
    Star { glued: bool },
    Caret,
    Plus,
    Minus,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '0'..='9' | '.' => {
                let start = i;
                while i < chars.len() && (chars[i].1.is_ascii_digit() || chars[i].1 == '.') {
                    i += 1;
                }
                // a fraction bar binds two numbers into one literal
                if i + 1 < chars.len() && chars[i].1 == '/' && chars[i + 1].1.is_ascii_digit() {
                    i += 1;
                    while i < chars.len() && chars[i].1.is_ascii_digit() {
                        i += 1;
                    }
                }
                let s: String = chars[start..i].iter().map(|c| c.1).collect();
                out.push((pos, Tok::Num(s)));
            }
            c if c.is_alphabetic() => {
                let start = i;
                while i < chars.len() && chars[i].1.is_alphabetic() {
                    i += 1;
                }
                let word: String = chars[start..i].iter().map(|c| c.1).collect();
                // glued words such as `gg` or `aa` are products of single-letter atoms;
                // only the named atoms keep their full spelling
                if matches!(word.as_str(), "zeta" | "alpha" | "gamma") {
                    out.push((pos, Tok::Ident(word)));
                } else {
                    for (k, ch) in word.char_indices() {
                        out.push((pos + k, Tok::Ident(ch.to_string())));
                    }
                }
            }
            '*' => {
                let glued = i > 0 && !chars[i - 1].1.is_whitespace();
                out.push((pos, Tok::Star { glued }));
                i += 1;
            }
            '^' => {
                out.push((pos, Tok::Caret));
                i += 1;
            }
            '+' => {
                out.push((pos, Tok::Plus));
                i += 1;
            }
            '-' | '−' => {
                out.push((pos, Tok::Minus));
                i += 1;
            }
            '(' => {
                out.push((pos, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((pos, Tok::RParen));
                i += 1;
            }
            other => return err(pos, format!("unexpected character `{other}`")),
        }
    }
    Ok(out)
}

/// The algebra an expression most naturally lives in: `z` ⇒ Circle, `v`/`w` ⇒ Torus,
/// `u` ⇒ GqTheta, otherwise SUq2.
pub fn infer_algebra(text: &str) -> Algebra {
    let idents: Vec<String> = tokenize(text)
        .map(|t| t.into_iter().filter_map(|(_, t)| if let Tok::Ident(s) = t { Some(s) } else { None }).collect())
        .unwrap_or_default();
    let has = |name: &str| idents.iter().any(|s| s == name);
    if has("z") {
        Algebra::Circle
    } else if has("v") || has("w") {
        Algebra::Torus
    } else if has("u") {
        Algebra::GqTheta
    } else {
        Algebra::SUq2
    }
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    at: usize,
    end: usize,
    algebra: Algebra,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn scalar(&self, c: LaurentCoefficient) -> Element {
        Element::scalar(self.algebra, c)
    }

    fn element(&mut self) -> Result<Element, ParseError> {
        let mut acc = Element::zero(self.algebra);
        let mut first = true;
        loop {
            let negative = match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    false
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = if negative { &acc - &t } else { &acc + &t };
        }
        Ok(acc)
    }

    fn starts_factor(t: &Tok) -> bool {
        matches!(t, Tok::Num(_) | Tok::Ident(_) | Tok::LParen)
    }

    fn term(&mut self) -> Result<Element, ParseError> {
        let start = self.pos();
        let mut acc: Option<Element> = None;
        loop {
            match self.peek() {
                Some(t) if Self::starts_factor(t) => {}
                Some(Tok::Star { .. }) if acc.is_some() => {
                    self.at += 1;
                    match self.peek() {
                        Some(t) if Self::starts_factor(t) => {}
                        _ => return err(self.pos(), "expected a factor after `*`"),
                    }
                }
                _ => break,
            }
            let f = self.factor()?;
            acc = Some(match acc {
                None => f,
                Some(a) => &a * &f,
            });
        }
        match acc {
            Some(t) => Ok(t),
            None if self.at < self.toks.len() => err(start, "expected a term"),
            None => err(start, "unexpected end of input"),
        }
    }

    fn factor(&mut self) -> Result<Element, ParseError> {
        let pos = self.pos();
        let mut x = self.atom()?;
        if let Some(Tok::Star { glued: true }) = self.peek() {
            self.at += 1;
            x = adjoint(&x);
        }
        if let Some(Tok::Caret) = self.peek() {
            self.at += 1;
            let negative = matches!(self.peek(), Some(Tok::Minus));
            if negative {
                self.at += 1;
            }
            let epos = self.pos();
            let n: u32 = match self.toks.get(self.at) {
                Some((_, Tok::Num(s))) => s.parse().map_err(|_| ParseError { position: epos, message: format!("bad exponent `{s}`") })?,
                _ => return err(epos, "expected an integer exponent"),
            };
            self.at += 1;
            if negative {
                x = invert(&x).ok_or_else(|| ParseError { position: pos, message: "negative power of a non-invertible factor".into() })?;
            }
            x = x.pow(n);
        }
        Ok(x)
    }

    fn atom(&mut self) -> Result<Element, ParseError> {
        let Some((pos, tok)) = self.toks.get(self.at).cloned() else {
            return err(self.end, "unexpected end of input");
        };
        self.at += 1;
        match tok {
            Tok::Num(s) => {
                let r = parse_rational(&s).ok_or_else(|| ParseError { position: pos, message: format!("bad number `{s}`") })?;
                Ok(self.scalar(LaurentCoefficient::constant(GaussRat::real(r))))
            }
            Tok::LParen => {
                let x = self.element()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.at += 1;
                        Ok(x)
                    }
                    _ => err(self.pos(), "expected `)`"),
                }
            }
            Tok::Ident(name) => {
                let g = match name.as_str() {
                    "q" => return Ok(self.scalar(LaurentCoefficient::q_pow(1))),
                    "zeta" => return Ok(self.scalar(LaurentCoefficient::zeta_pow(1))),
                    "i" => return Ok(self.scalar(LaurentCoefficient::constant(GaussRat::i()))),
                    "a" | "alpha" => Generator::Alpha,
                    "g" | "gamma" => Generator::Gamma,
                    "u" if self.algebra == Algebra::Circle => {
                        return Element::basis(Algebra::Circle, Monomial::circle(0, 1))
                            .map_err(|e| ParseError { position: pos, message: e.to_string() });
                    }
                    "u" => Generator::U,
                    "v" => Generator::V,
                    "w" => Generator::W,
                    "z" => Generator::Z,
                    other => return err(pos, format!("unknown token `{other}`")),
                };
                Element::generator(self.algebra, g).map_err(|e| ParseError { position: pos, message: e.to_string() })
            }
            other => err(pos, format!("unexpected {}", describe(&other))),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Star { .. } => "`*`",
        Tok::Caret => "`^`",
        Tok::Plus => "`+`",
        Tok::Minus => "`-`",
        Tok::RParen => "`)`",
        _ => "token",
    }
}

/// Inverse of a single term `c·m` with `m` a word in the unitaries and `c` a single
/// Laurent term.
fn invert(x: &Element) -> Option<Element> {
    let mut terms = x.terms();
    let (m, c) = terms.next()?;
    if terms.next().is_some() {
        return None;
    }
    let unitary_word = match *m {
        Monomial::Quantum { alpha, gamma, gamma_star, .. } => alpha == 0 && gamma == 0 && gamma_star == 0,
        _ => true,
    };
    let mut ct = c.terms();
    let (&(qa, zb), r) = ct.next()?;
    if !unitary_word || ct.next().is_some() {
        return None;
    }
    let inv_c = LaurentCoefficient::term(r.inv()?, -qa, -zb);
    // m* = m^{-1} for unitary words; the adjoint conjugates the coefficient, so undo that
    let m_inv = adjoint(&Element::basis(x.algebra(), *m).ok()?);
    Some(m_inv.scale(&inv_c))
}

/// Parses `text` in `algebra` (inferred when `None`) into normal form.
pub fn parse_expression(text: &str, algebra: Option<Algebra>) -> Result<Element, ParseError> {
    let toks = tokenize(text)?;
    let algebra = algebra.unwrap_or_else(|| infer_algebra(text));
    let mut p = Parser { toks: &toks, at: 0, end: text.len(), algebra };
    if toks.is_empty() {
        return err(0, "empty expression");
    }
    let x = p.element()?;
    if p.at < toks.len() {
        return err(p.pos(), format!("unexpected {}", describe(&toks[p.at].1)));
    }
    Ok(x)
}

/// Parses a scalar expression (no generators) into an exact Gaussian rational.
pub fn parse_scalar(text: &str) -> Result<GaussRat, ParseError> {
    let x = parse_expression(text, Some(Algebra::SUq2))?;
    let mut terms = x.terms();
    match (terms.next(), terms.next()) {
        (None, _) => Ok(GaussRat::from_int(0)),
        (Some((m, c)), None) if m.is_unit() => {
            c.as_constant().ok_or_else(|| ParseError { position: 0, message: format!("`{text}` is not a number") })
        }
        _ => err(0, format!("`{text}` is not a number")),
    }
}

/// Splits `[[x11, x12], [x21, x22]]` (or rows separated by `;`) into entry strings.
pub fn split_matrix(text: &str) -> Result<Vec<Vec<String>>, ParseError> {
    let t = text.trim();
    let inner = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')).unwrap_or(t);
    let mut rows = Vec::new();
    let mut depth = 0i32;
    let mut row: Vec<String> = Vec::new();
    let mut cell = String::new();
    let mut in_row = !inner.trim_start().starts_with('[');
    for (pos, ch) in inner.char_indices() {
        match ch {
            '[' if depth == 0 => {
                if in_row {
                    return err(pos, "nested `[`");
                }
                in_row = true;
            }
            ']' if depth == 0 => {
                if !in_row {
                    return err(pos, "unbalanced `]`");
                }
                row.push(std::mem::take(&mut cell).trim().to_string());
                rows.push(std::mem::take(&mut row));
                in_row = false;
            }
            '(' => {
                depth += 1;
                cell.push(ch);
            }
            ')' => {
                depth -= 1;
                cell.push(ch);
            }
            ',' if depth == 0 && in_row => row.push(std::mem::take(&mut cell).trim().to_string()),
            ',' if depth == 0 => {}
            ';' if depth == 0 => {
                row.push(std::mem::take(&mut cell).trim().to_string());
                rows.push(std::mem::take(&mut row));
            }
            _ => cell.push(ch),
        }
    }
    if !cell.trim().is_empty() || !row.is_empty() {
        row.push(cell.trim().to_string());
        rows.push(row);
    }
    if rows.is_empty() || rows.iter().any(|r| r.iter().any(|c| c.is_empty())) {
        return err(0, "malformed matrix");
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use qlab_core::corpus::random_elements;
    use qlab_core::scalar::rat;

    fn p(s: &str) -> Element {
        parse_expression(s, None).unwrap()
    }

    #[test]
    fn grammar_examples() {
        let a = Element::generator(Algebra::SUq2, Generator::Alpha).unwrap();
        let g = Element::generator(Algebra::SUq2, Generator::Gamma).unwrap();
        assert_eq!(p("a^2"), a.pow(2));
        assert_eq!(p("g a"), (&a * &g).scale(&LaurentCoefficient::q_pow(-1)));
        assert_eq!(p("a a*").to_string(), "1 - q^2 g g*");
        assert_eq!(p("a* a").to_string(), "1 - g g*");
        assert_eq!(p("a*a"), p("a* a"));
        assert_eq!(p("a * g"), p("a g"));
        assert_eq!(p("(1/2+3i) g").to_string(), "(1/2+3i) g");
        assert_eq!(p("u^-1"), p("u*"));
        assert_eq!(p("q^-2 g").to_string(), "q^-2 g");
        assert_eq!(p("-2i zeta u").to_string(), "-2i zeta u");
        assert_eq!(p("0"), Element::zero(Algebra::SUq2));
        assert_eq!(p("0.5 g"), p("1/2 g"));
        assert_eq!(p("gg*"), p("g g*"));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_expression("a + ", None).unwrap_err();
        assert_eq!(e.position, 4);
        let e = parse_expression("a u", Some(Algebra::SUq2)).unwrap_err();
        assert_eq!(e.position, 2);
        assert!(parse_expression("a # g", None).is_err());
        assert!(parse_expression("a^-1", None).is_err());
        assert!(parse_expression("(a", None).is_err());
        assert!(parse_expression("a)", None).is_err());
        assert!(parse_expression("", None).is_err());
        assert!(parse_expression("b", None).is_err());
    }

    #[test]
    fn inference() {
        assert_eq!(infer_algebra("a g"), Algebra::SUq2);
        assert_eq!(infer_algebra("a u"), Algebra::GqTheta);
        assert_eq!(infer_algebra("v w*"), Algebra::Torus);
        assert_eq!(infer_algebra("z u"), Algebra::Circle);
        assert_eq!(infer_algebra("zeta g"), Algebra::SUq2);
    }

    #[test]
    fn scalars_and_matrices() {
        assert_eq!(parse_scalar("3/5+4/5 i").unwrap(), GaussRat::new(rat(3, 5), rat(4, 5)));
        assert!(parse_scalar("g").is_err());
        assert_eq!(split_matrix("[[a, -q g*], [g, a*]]").unwrap(), vec![vec!["a", "-q g*"], vec!["g", "a*"]]);
        assert_eq!(split_matrix("a, (1,2); g, a*").unwrap().len(), 2);
        assert!(split_matrix("[[a,], [g, a*]]").is_err());
    }

    #[test]
    fn print_parse_round_trip() {
        for alg in [Algebra::SUq2, Algebra::GqTheta, Algebra::Torus, Algebra::Circle] {
            for x in random_elements(alg, 100, 5, 4, 17) {
                let printed = x.to_string();
                let back = parse_expression(&printed, Some(alg)).unwrap();
                assert_eq!(back, x, "{printed}");
                assert_eq!(back.to_string(), printed);
            }
        }
    }
}
