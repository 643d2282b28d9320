//! A small arithmetic expression language for functions of one variable `x`.
//!
//! Supported: decimal literals (optional fraction and exponent), the
//! constants `pi` and `e`, the functions `exp ln sin cos sqrt abs`, and the
//! operators `+ - * / ^`. `^` is right-associative and binds tighter than
//! unary minus, so `-x^2` is `-(x^2)` and `2^3^2` is `2^(3^2)`.
//!
//! Evaluation is plain IEEE double precision. Domain violations (`ln` of a
//! non-positive value, division by zero, `0^negative`, overflow) are reported
//! as [`EvalError`] values, never as silent NaN or infinity.

use std::fmt;

/// Unary node kinds: negation and the built-in function set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    Neg,
    Exp,
    Ln,
    Sin,
    Cos,
    Sqrt,
    Abs,
}

impl UnaryOp {
    fn name(self) -> &'static str {
        match self {
            UnaryOp::Neg => "-",
            UnaryOp::Exp => "exp",
            UnaryOp::Ln => "ln",
            UnaryOp::Sin => "sin",
            UnaryOp::Cos => "cos",
            UnaryOp::Sqrt => "sqrt",
            UnaryOp::Abs => "abs",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinaryOp {
    fn symbol(self) -> char {
        match self {
            BinaryOp::Add => '+',
            BinaryOp::Sub => '-',
            BinaryOp::Mul => '*',
            BinaryOp::Div => '/',
            BinaryOp::Pow => '^',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedConstant {
    Pi,
    E,
}

/// Parsed expression tree.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Number(f64),
    /// The single variable `x`.
    Variable,
    Constant(NamedConstant),
    Unary(UnaryOp, Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown identifier `{name}` at position {position}")]
    UnknownIdentifier { name: String, position: usize },
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    #[error("ln of non-positive value {arg}")]
    LogNonPositive { arg: f64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of negative value {arg}")]
    SqrtNegative { arg: f64 },
    #[error("{base}^{exponent} is undefined")]
    InvalidPower { base: f64, exponent: f64 },
    #[error("evaluation produced a non-finite value")]
    NonFinite,
}

/// Parse an expression. Errors carry the byte position of the offending token.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        cursor: 0,
        input_len: text.len(),
    };
    let expr = parser.expression()?;
    parser.expect_end()?;
    Ok(expr)
}

/// Evaluate `expr` at the point `x`.
pub fn evaluate(expr: &Expr, x: f64) -> Result<f64, EvalError> {
    let value = match expr {
        Expr::Number(n) => *n,
        Expr::Variable => x,
        Expr::Constant(NamedConstant::Pi) => std::f64::consts::PI,
        Expr::Constant(NamedConstant::E) => std::f64::consts::E,
        Expr::Unary(op, inner) => {
            let v = evaluate(inner, x)?;
            match op {
                UnaryOp::Neg => -v,
                UnaryOp::Exp => v.exp(),
                UnaryOp::Ln => {
                    if v <= 0.0 {
                        return Err(EvalError::LogNonPositive { arg: v });
                    }
                    v.ln()
                }
                UnaryOp::Sin => v.sin(),
                UnaryOp::Cos => v.cos(),
                UnaryOp::Sqrt => {
                    if v < 0.0 {
                        return Err(EvalError::SqrtNegative { arg: v });
                    }
                    v.sqrt()
                }
                UnaryOp::Abs => v.abs(),
            }
        }
        Expr::Binary(op, lhs, rhs) => {
            let l = evaluate(lhs, x)?;
            let r = evaluate(rhs, x)?;
            match op {
                BinaryOp::Add => l + r,
                BinaryOp::Sub => l - r,
                BinaryOp::Mul => l * r,
                BinaryOp::Div => {
                    if r == 0.0 {
                        return Err(EvalError::DivisionByZero);
                    }
                    l / r
                }
                BinaryOp::Pow => {
                    if l == 0.0 && r < 0.0 {
                        return Err(EvalError::InvalidPower {
                            base: l,
                            exponent: r,
                        });
                    }
                    if l < 0.0 && r.fract() != 0.0 {
                        return Err(EvalError::InvalidPower {
                            base: l,
                            exponent: r,
                        });
                    }
                    l.powf(r)
                }
            }
        }
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(EvalError::NonFinite)
    }
}

impl Expr {
    /// Whether the tree mentions the variable `x` anywhere.
    pub fn contains_variable(&self) -> bool {
        match self {
            Expr::Variable => true,
            Expr::Number(_) | Expr::Constant(_) => false,
            Expr::Unary(_, inner) => inner.contains_variable(),
            Expr::Binary(_, lhs, rhs) => lhs.contains_variable() || rhs.contains_variable(),
        }
    }

    // Precedence used when printing: atoms 5, ^ 4, unary minus 3, * / 2, + - 1.
    // Negative literals print like a negation so they re-parse unambiguously.
    fn precedence(&self) -> u8 {
        match self {
            Expr::Number(n) if *n < 0.0 => 3,
            Expr::Number(_) | Expr::Variable | Expr::Constant(_) => 5,
            Expr::Unary(UnaryOp::Neg, _) => 3,
            Expr::Unary(_, _) => 5,
            Expr::Binary(BinaryOp::Pow, _, _) => 4,
            Expr::Binary(BinaryOp::Mul, _, _) | Expr::Binary(BinaryOp::Div, _, _) => 2,
            Expr::Binary(BinaryOp::Add, _, _) | Expr::Binary(BinaryOp::Sub, _, _) => 1,
        }
    }

    fn fmt_child(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        if self.precedence() < min_prec {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Number(n) => write!(f, "{n}"),
            Expr::Variable => write!(f, "x"),
            Expr::Constant(NamedConstant::Pi) => write!(f, "pi"),
            Expr::Constant(NamedConstant::E) => write!(f, "e"),
            Expr::Unary(UnaryOp::Neg, inner) => {
                write!(f, "-")?;
                inner.fmt_child(f, 3)
            }
            Expr::Unary(op, inner) => write!(f, "{}({})", op.name(), inner),
            Expr::Binary(op, lhs, rhs) => {
                let prec = self.precedence();
                match op {
                    // Right-associative: parenthesize a left child of equal
                    // precedence, keep it for the right child.
                    BinaryOp::Pow => {
                        lhs.fmt_child(f, prec + 1)?;
                        write!(f, "{}", op.symbol())?;
                        rhs.fmt_child(f, prec)
                    }
                    // Left-associative: mirror image.
                    _ => {
                        lhs.fmt_child(f, prec)?;
                        write!(f, "{}", op.symbol())?;
                        rhs.fmt_child(f, prec + 1)
                    }
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Number(n) => format!("number {n}"),
            Token::Ident(s) => format!("identifier `{s}`"),
            Token::Plus => "`+`".into(),
            Token::Minus => "`-`".into(),
            Token::Star => "`*`".into(),
            Token::Slash => "`/`".into(),
            Token::Caret => "`^`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                tokens.push((Token::Plus, i));
                i += 1;
            }
            '-' => {
                tokens.push((Token::Minus, i));
                i += 1;
            }
            '*' => {
                tokens.push((Token::Star, i));
                i += 1;
            }
            '/' => {
                tokens.push((Token::Slash, i));
                i += 1;
            }
            '^' => {
                tokens.push((Token::Caret, i));
                i += 1;
            }
            '(' => {
                tokens.push((Token::LParen, i));
                i += 1;
            }
            ')' => {
                tokens.push((Token::RParen, i));
                i += 1;
            }
            '0'..='9' | '.' => {
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
                // Exponent part only if `e`/`E` is followed by digits
                // (with optional sign); otherwise `e` is the constant.
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
                let literal = &text[start..i];
                let value: f64 = literal.parse().map_err(|_| ParseError::Syntax {
                    position: start,
                    message: format!("invalid number literal `{literal}`"),
                })?;
                tokens.push((Token::Number(value), start));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                tokens.push((Token::Ident(text[start..i].to_string()), start));
            }
            other => {
                return Err(ParseError::Syntax {
                    position: i,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    cursor: usize,
    input_len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.cursor).map(|(t, _)| t)
    }

    fn position(&self) -> usize {
        self.tokens
            .get(self.cursor)
            .map(|(_, p)| *p)
            .unwrap_or(self.input_len)
    }

    fn advance(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.cursor).map(|(t, _)| t.clone());
        if t.is_some() {
            self.cursor += 1;
        }
        t
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(ParseError::Syntax {
                position: self.position(),
                message: format!("unexpected trailing {}", t.describe()),
            }),
        }
    }

    fn expression(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(Token::Plus) => BinaryOp::Add,
                Some(Token::Minus) => BinaryOp::Sub,
                _ => break,
            };
            self.advance();
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.peek() {
                Some(Token::Star) => BinaryOp::Mul,
                Some(Token::Slash) => BinaryOp::Div,
                _ => break,
            };
            self.advance();
            let rhs = self.factor()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if matches!(self.peek(), Some(Token::Minus)) {
            self.advance();
            let inner = self.factor()?;
            return Ok(Expr::Unary(UnaryOp::Neg, Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            self.advance();
            // Recursing into factor keeps `^` right-associative and lets the
            // exponent carry a unary minus, as in 2^-3.
            let exponent = self.factor()?;
            return Ok(Expr::Binary(
                BinaryOp::Pow,
                Box::new(base),
                Box::new(exponent),
            ));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let position = self.position();
        match self.advance() {
            Some(Token::Number(n)) => Ok(Expr::Number(n)),
            Some(Token::LParen) => {
                let inner = self.expression()?;
                match self.advance() {
                    Some(Token::RParen) => Ok(inner),
                    other => Err(ParseError::Syntax {
                        position: self.previous_position(),
                        message: match other {
                            Some(t) => format!("expected `)`, found {}", t.describe()),
                            None => "unbalanced parenthesis: missing `)`".to_string(),
                        },
                    }),
                }
            }
            Some(Token::Ident(name)) => match name.as_str() {
                "x" => Ok(Expr::Variable),
                "pi" => Ok(Expr::Constant(NamedConstant::Pi)),
                "e" => Ok(Expr::Constant(NamedConstant::E)),
                "exp" | "ln" | "sin" | "cos" | "sqrt" | "abs" => {
                    let op = match name.as_str() {
                        "exp" => UnaryOp::Exp,
                        "ln" => UnaryOp::Ln,
                        "sin" => UnaryOp::Sin,
                        "cos" => UnaryOp::Cos,
                        "sqrt" => UnaryOp::Sqrt,
                        _ => UnaryOp::Abs,
                    };
                    match self.advance() {
                        Some(Token::LParen) => {}
                        other => {
                            return Err(ParseError::Syntax {
                                position: self.previous_position(),
                                message: match other {
                                    Some(t) => format!(
                                        "expected `(` after `{name}`, found {}",
                                        t.describe()
                                    ),
                                    None => format!("expected `(` after `{name}`"),
                                },
                            })
                        }
                    }
                    let arg = self.expression()?;
                    match self.advance() {
                        Some(Token::RParen) => Ok(Expr::Unary(op, Box::new(arg))),
                        other => Err(ParseError::Syntax {
                            position: self.previous_position(),
                            message: match other {
                                Some(t) => format!("expected `)`, found {}", t.describe()),
                                None => "unbalanced parenthesis: missing `)`".to_string(),
                            },
                        }),
                    }
                }
                _ => Err(ParseError::UnknownIdentifier { name, position }),
            },
            Some(t) => Err(ParseError::Syntax {
                position,
                message: format!("expected a value, found {}", t.describe()),
            }),
            None => Err(ParseError::Syntax {
                position,
                message: "unexpected end of expression".to_string(),
            }),
        }
    }

    fn previous_position(&self) -> usize {
        if self.cursor == 0 {
            return 0;
        }
        self.tokens
            .get(self.cursor - 1)
            .map(|(_, p)| *p)
            .unwrap_or(self.input_len)
    }
}
