use num_complex::Complex64;

use super::ast::HomExpr;
use crate::algebra::linalg::CMat;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(f64),
    /// A number immediately followed by `i`.
    Imag(f64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Compose,
    Plus,
    Minus,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    text: String,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let ch = chars[i];
        let (start_line, start_col) = (line, col);
        let mut push = |tok: Tok, text: String| {
            out.push(Token { tok, text, line: start_line, column: start_col })
        };
        if ch == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if ch.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let single = match ch {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ',' => Some(Tok::Comma),
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '∘' | '.' => Some(Tok::Compose),
            _ => None,
        };
        if let Some(tok) = single {
            push(tok, ch.to_string());
            i += 1;
            col += 1;
            continue;
        }
        if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            // A '.' continues the number only when a digit follows; otherwise it composes.
            if i + 1 < chars.len() && chars[i] == '.' && chars[i + 1].is_ascii_digit() {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let text: String = chars[start..i].iter().collect();
            let value: f64 = text.parse().map_err(|_| Error::Parse {
                line: start_line,
                column: start_col,
                token: text.clone(),
                message: "malformed number".into(),
            })?;
            let imag = i < chars.len()
                && chars[i] == 'i'
                && !chars.get(i + 1).is_some_and(|c| c.is_alphanumeric() || *c == '_');
            if imag {
                i += 1;
                push(Tok::Imag(value), format!("{text}i"));
            } else {
                push(Tok::Number(value), text.clone());
            }
            col += i - start;
            continue;
        }
        if ch.is_alphabetic() || ch == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            push(Tok::Ident(text.clone()), text);
            col += i - start;
            continue;
        }
        return Err(Error::Parse {
            line,
            column: col,
            token: ch.to_string(),
            message: "unexpected character".into(),
        });
    }
    out.push(Token { tok: Tok::End, text: "<end of input>".into(), line, column: col });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(t: &Token, message: impl Into<String>) -> Error {
        Error::Parse {
            line: t.line,
            column: t.column,
            token: t.text.clone(),
            message: message.into(),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Token> {
        let t = self.next();
        if t.tok == tok {
            Ok(t)
        } else {
            Err(Self::error_at(&t, format!("expected {what}")))
        }
    }

    /// expr := atom (COMPOSE atom)*, right-associated.
    fn expr(&mut self) -> Result<HomExpr> {
        let first = self.atom()?;
        if self.peek().tok == Tok::Compose {
            self.next();
            let rest = self.expr()?;
            Ok(HomExpr::compose(first, rest))
        } else {
            Ok(first)
        }
    }

    fn atom(&mut self) -> Result<HomExpr> {
        let t = self.next();
        let name = match &t.tok {
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                return Ok(e);
            }
            Tok::Ident(name) => name.clone(),
            _ => return Err(Self::error_at(&t, "expected a generator")),
        };
        if let Some(rest) = name.strip_prefix("proj") {
            if !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()) {
                let i: usize = rest.parse().map_err(|_| Self::error_at(&t, "bad block index"))?;
                if i == 0 {
                    return Err(Self::error_at(&t, "block indices start at 1"));
                }
                return Ok(HomExpr::Proj(i));
            }
        }
        match name.as_str() {
            "id" => Ok(HomExpr::Id),
            "bar" => Ok(HomExpr::Bar),
            "det" => Ok(HomExpr::Det),
            "join" => Ok(HomExpr::Join),
            "power" => {
                let n = self.int_args(&t, 1)?;
                Ok(HomExpr::Power(n[0]))
            }
            "pad" => Ok(HomExpr::Pad(self.count_arg(&t, 0)?)),
            "amplify" => Ok(HomExpr::Amplify(self.count_arg(&t, 1)?)),
            "amplify_src" => Ok(HomExpr::AmplifySrc(self.count_arg(&t, 1)?)),
            "dsum" => Ok(HomExpr::DirectSum(self.expr_args(&t, 1)?)),
            "mult" => Ok(HomExpr::Mult(self.expr_args(&t, 2)?)),
            "conj" => {
                self.expect(Tok::LParen, "`(`")?;
                let mut ms = vec![self.matrix()?];
                while self.peek().tok == Tok::Comma {
                    self.next();
                    ms.push(self.matrix()?);
                }
                self.expect(Tok::RParen, "`)`")?;
                Ok(HomExpr::Conj(ms))
            }
            "modtwist" => {
                self.expect(Tok::LParen, "`(`")?;
                let alpha = self.real()?;
                self.expect(Tok::Comma, "`,`")?;
                let beta = self.real()?;
                let mut n = 1;
                if self.peek().tok == Tok::Comma {
                    self.next();
                    n = self.int()?;
                }
                let close = self.next();
                if close.tok != Tok::RParen {
                    return Err(Self::error_at(&close, "modtwist takes 2 or 3 arguments"));
                }
                Ok(HomExpr::ModTwist { alpha, beta, n })
            }
            _ => Err(Self::error_at(&t, "unknown generator")),
        }
    }

    fn int(&mut self) -> Result<i64> {
        let neg = if self.peek().tok == Tok::Minus {
            self.next();
            true
        } else {
            false
        };
        let t = self.next();
        match t.tok {
            Tok::Number(x) if x.fract() == 0.0 && !t.text.contains(['.', 'e', 'E']) => {
                let v = t.text.parse::<i64>().map_err(|_| Self::error_at(&t, "integer out of range"))?;
                Ok(if neg { -v } else { v })
            }
            _ => Err(Self::error_at(&t, "expected an integer")),
        }
    }

    fn real(&mut self) -> Result<f64> {
        let neg = if self.peek().tok == Tok::Minus {
            self.next();
            true
        } else {
            false
        };
        let t = self.next();
        match t.tok {
            Tok::Number(x) => Ok(if neg { -x } else { x }),
            _ => Err(Self::error_at(&t, "expected a real number")),
        }
    }

    fn int_args(&mut self, head: &Token, arity: usize) -> Result<Vec<i64>> {
        self.expect(Tok::LParen, "`(`")?;
        let mut out = vec![self.int()?];
        while self.peek().tok == Tok::Comma {
            self.next();
            out.push(self.int()?);
        }
        self.expect(Tok::RParen, "`)`")?;
        if out.len() != arity {
            return Err(Self::error_at(
                head,
                format!("`{}` expects {arity} argument(s), got {}", head.text, out.len()),
            ));
        }
        Ok(out)
    }

    fn count_arg(&mut self, head: &Token, min: i64) -> Result<usize> {
        let n = self.int_args(head, 1)?[0];
        if n < min {
            return Err(Self::error_at(head, format!("`{}` needs an argument ≥ {min}", head.text)));
        }
        Ok(n as usize)
    }

    fn expr_args(&mut self, head: &Token, min: usize) -> Result<Vec<HomExpr>> {
        self.expect(Tok::LParen, "`(`")?;
        let mut out = vec![self.expr()?];
        while self.peek().tok == Tok::Comma {
            self.next();
            out.push(self.expr()?);
        }
        self.expect(Tok::RParen, "`)`")?;
        if out.len() < min {
            return Err(Self::error_at(
                head,
                format!("`{}` expects at least {min} arguments, got {}", head.text, out.len()),
            ));
        }
        Ok(out)
    }

    fn matrix(&mut self) -> Result<CMat> {
        let open = self.expect(Tok::LBracket, "`[` starting a matrix")?;
        let mut rows = vec![self.row()?];
        while self.peek().tok == Tok::Comma {
            self.next();
            rows.push(self.row()?);
        }
        self.expect(Tok::RBracket, "`]`")?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Self::error_at(&open, "matrix literal must be square"));
        }
        Ok(CMat::from_fn(n, n, |r, c| rows[r][c]))
    }

    fn row(&mut self) -> Result<Vec<Complex64>> {
        self.expect(Tok::LBracket, "`[` starting a row")?;
        let mut out = vec![self.complex()?];
        while self.peek().tok == Tok::Comma {
            self.next();
            out.push(self.complex()?);
        }
        self.expect(Tok::RBracket, "`]`")?;
        Ok(out)
    }

    /// A sum of real and imaginary terms, e.g. `-0.5+0.5i`, `i`, `2-i`.
    fn complex(&mut self) -> Result<Complex64> {
        let mut z = Complex64::new(0.0, 0.0);
        let mut sign = 1.0;
        if self.peek().tok == Tok::Minus {
            self.next();
            sign = -1.0;
        } else if self.peek().tok == Tok::Plus {
            self.next();
        }
        loop {
            let t = self.next();
            match &t.tok {
                Tok::Number(x) => z.re += sign * x,
                Tok::Imag(x) => z.im += sign * x,
                Tok::Ident(s) if s == "i" => z.im += sign,
                _ => return Err(Self::error_at(&t, "expected a complex number")),
            }
            match self.peek().tok {
                Tok::Plus => sign = 1.0,
                Tok::Minus => sign = -1.0,
                _ => return Ok(z),
            }
            self.next();
        }
    }
}

/// Parses the concrete syntax into an AST. Shapes are not checked here.
pub fn parse_hom(text: &str) -> Result<HomExpr> {
    let mut p = Parser { tokens: lex(text)?, pos: 0 };
    let e = p.expr()?;
    let t = p.next();
    if t.tok != Tok::End {
        return Err(Parser::error_at(&t, "unexpected trailing input"));
    }
    Ok(e)
}
