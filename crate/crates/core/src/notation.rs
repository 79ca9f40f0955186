//! Plain-text notation for Chow elements and correspondences.
//!
//! ```text
//! element        := term (('+' | '-') term)*          e.g. 2*h2^4 + h1^4
//! term           := ['-'] [INT '*'] LABEL
//! correspondence := kterm (('+' | '-') kterm)*
//! kterm          := ['-'] [INT '*'] ['eps' '*'] factor 'x' factor
//! factor         := LABEL | '(' element ')'
//! ```
//! `1` on its own is the unit label; `eps` is the sign parameter.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Int(i64),
    Label(String),
    Plus,
    Minus,
    Star,
    Open,
    Close,
    Cross,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let single = match c {
            '+' => Some(Token::Plus),
            '-' | '\u{2212}' => Some(Token::Minus),
            '*' => Some(Token::Star),
            '(' => Some(Token::Open),
            ')' => Some(Token::Close),
            '\u{d7}' => Some(Token::Cross),
            _ => None,
        };
        if let Some(t) = single {
            out.push(t);
            k += 1;
        } else if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let s: String = chars[start..k].iter().collect();
            out.push(Token::Int(s.parse().map_err(|_| Error::Parse(format!("integer `{s}` too large")))?));
        } else if c.is_ascii_alphabetic() {
            let start = k;
            while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '^' || chars[k] == '_') {
                k += 1;
            }
            let s: String = chars[start..k].iter().collect();
            out.push(if s == "x" { Token::Cross } else { Token::Label(s) });
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

/// Integer combination of labels.
pub type Combination = Vec<(i64, String)>;

/// One Künneth term: coefficient, whether it carries `eps`, and both factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossTerm {
    pub coeff: i64,
    pub eps: bool,
    pub left: Combination,
    pub right: Combination,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn peek_at(&self, k: usize) -> Option<&Token> {
        self.tokens.get(self.pos + k)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Token) -> Result<()> {
        match self.next() {
            Some(ref u) if *u == t => Ok(()),
            other => Err(Error::Parse(format!("expected {t:?}, found {other:?}"))),
        }
    }

    fn sign(&mut self) -> i64 {
        if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            -1
        } else {
            1
        }
    }

    /// `INT '*'` prefix; a bare integer is left for the label rule.
    fn coefficient(&mut self) -> i64 {
        if let (Some(Token::Int(n)), Some(Token::Star)) = (self.peek(), self.peek_at(1)) {
            let n = *n;
            self.pos += 2;
            n
        } else {
            1
        }
    }

    fn label(&mut self) -> Result<String> {
        match self.next() {
            Some(Token::Label(s)) => Ok(s),
            Some(Token::Int(n)) => Ok(n.to_string()),
            other => Err(Error::Parse(format!("expected a class label, found {other:?}"))),
        }
    }

    fn separator(&mut self) -> Option<i64> {
        match self.peek() {
            Some(Token::Plus) => {
                self.pos += 1;
                Some(1)
            }
            Some(Token::Minus) => {
                self.pos += 1;
                Some(-1)
            }
            _ => None,
        }
    }

    fn element(&mut self) -> Result<Combination> {
        let mut out = Vec::new();
        let mut sign = self.sign();
        loop {
            let c = self.coefficient();
            out.push((sign * c, self.label()?));
            match self.separator() {
                Some(s) => sign = s,
                None => return Ok(out),
            }
        }
    }

    fn factor(&mut self) -> Result<Combination> {
        if self.peek() == Some(&Token::Open) {
            self.pos += 1;
            let e = self.element()?;
            self.expect(Token::Close)?;
            Ok(e)
        } else {
            Ok(vec![(1, self.label()?)])
        }
    }

    fn correspondence(&mut self) -> Result<Vec<CrossTerm>> {
        let mut out = Vec::new();
        let mut sign = self.sign();
        loop {
            let coeff = sign * self.coefficient();
            let eps = matches!(self.peek(), Some(Token::Label(s)) if s == "eps");
            if eps {
                self.pos += 1;
                self.expect(Token::Star)?;
            }
            let left = self.factor()?;
            self.expect(Token::Cross)?;
            let right = self.factor()?;
            out.push(CrossTerm { coeff, eps, left, right });
            match self.separator() {
                Some(s) => sign = s,
                None => return Ok(out),
            }
        }
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(Error::Parse(format!("trailing input at {t:?}"))),
        }
    }
}

pub fn parse_combination(text: &str) -> Result<Combination> {
    let mut p = Parser { tokens: tokenize(text)?, pos: 0 };
    if p.peek().is_none() || text.trim() == "0" {
        return Ok(Vec::new());
    }
    let e = p.element()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_cross_terms(text: &str) -> Result<Vec<CrossTerm>> {
    let mut p = Parser { tokens: tokenize(text)?, pos: 0 };
    if p.peek().is_none() || text.trim() == "0" {
        return Ok(Vec::new());
    }
    let e = p.correspondence()?;
    p.finish()?;
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> String {
        x.to_string()
    }

    #[test]
    fn combinations() {
        assert_eq!(parse_combination("2*h2^4 + h1^4").unwrap(), vec![(2, s("h2^4")), (1, s("h1^4"))]);
        assert_eq!(parse_combination("-h1^8 - 3*s1s2").unwrap(), vec![(-1, s("h1^8")), (-3, s("s1s2"))]);
        assert_eq!(parse_combination("1").unwrap(), vec![(1, s("1"))]);
        assert_eq!(parse_combination("0").unwrap(), vec![]);
        assert!(parse_combination("2*").is_err());
        assert!(parse_combination("h1 h2").is_err());
    }

    #[test]
    fn cross_terms() {
        let t = parse_cross_terms("-1 x g1^15 + eps*h1^4 x (g1^11 - g2^11) - 2*(2*h2^5 + h1^5) x 1").unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[0], CrossTerm { coeff: -1, eps: false, left: vec![(1, s("1"))], right: vec![(1, s("g1^15"))] });
        assert!(t[1].eps);
        assert_eq!(t[1].right, vec![(1, s("g1^11")), (-1, s("g2^11"))]);
        assert_eq!(t[2].coeff, -2);
        assert_eq!(t[2].left, vec![(2, s("h2^5")), (1, s("h1^5"))]);
        let unicode = parse_cross_terms("h1^4 \u{d7} 1 \u{2212} 1 \u{d7} g1^4").unwrap();
        assert_eq!(unicode[1].coeff, -1);
        assert!(parse_cross_terms("h1^4 x").is_err());
        assert!(parse_cross_terms("eps h1 x 1").is_err());
    }
}
