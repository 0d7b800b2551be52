//! Text format for bound quivers.
//!
//! ```text
//! # comment
//! convention: right-to-left
//! vertices: 1 2 3
//! arrow a: 1 -> 2
//! arrow b: 2 -> 3
//! relation: b*a
//! relation: 1 b*a + -1/2 c*d
//! ```
//!
//! With `convention: left-to-right` relation paths are written in the order the
//! arrows are traversed and get reversed on input.

use num::{BigInt, BigRational};

use super::BoundQuiver;
use crate::error::{Error, Result};
use crate::matrix::Scalar;

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

pub fn parse_bound_quiver(text: &str) -> Result<BoundQuiver> {
    let mut vertices: Option<Vec<String>> = None;
    let mut arrows = Vec::new();
    let mut relations = Vec::new();
    let mut left_to_right = false;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(colon) = content.find(':') else {
            return Err(syntax(line_no, 1, "expected `key: value`"));
        };
        let key = content[..colon].trim();
        let value = &content[colon + 1..];
        let value_col = colon + 2;
        if key == "convention" {
            left_to_right = match value.trim() {
                "right-to-left" => false,
                "left-to-right" => true,
                other => {
                    return Err(syntax(line_no, value_col, format!("unknown convention `{other}`")))
                }
            };
        } else if key == "vertices" {
            if vertices.is_some() {
                return Err(syntax(line_no, 1, "vertices declared twice"));
            }
            let vs: Vec<String> = value.split_whitespace().map(str::to_string).collect();
            if vs.is_empty() {
                return Err(syntax(line_no, value_col, "empty vertex list"));
            }
            vertices = Some(vs);
        } else if let Some(id) = key.strip_prefix("arrow") {
            let id = id.trim();
            if !is_identifier(id) {
                return Err(syntax(line_no, 7, format!("invalid arrow id `{id}`")));
            }
            let Some((s, t)) = value.split_once("->") else {
                return Err(syntax(line_no, value_col, "expected `source -> target`"));
            };
            let (s, t) = (s.trim(), t.trim());
            if s.is_empty() || t.is_empty() || s.contains(char::is_whitespace) || t.contains(char::is_whitespace) {
                return Err(syntax(line_no, value_col, "expected `source -> target`"));
            }
            arrows.push((id.to_string(), s.to_string(), t.to_string()));
        } else if key == "relation" {
            let mut terms = parse_relation(value, line_no, value_col)?;
            if left_to_right {
                for (_, path) in &mut terms {
                    path.reverse();
                }
            }
            relations.push(terms);
        } else {
            return Err(syntax(line_no, 1, format!("unknown key `{key}`")));
        }
    }

    let vertices = vertices.ok_or_else(|| syntax(1, 1, "missing `vertices:` line"))?;
    BoundQuiver::from_parts(vertices, arrows, relations)
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

#[derive(Debug, PartialEq)]
enum Token {
    Number(Scalar),
    Path(Vec<String>),
    Plus,
    Minus,
}

fn tokenize(s: &str, line: usize, col0: usize) -> Result<Vec<(Token, usize)>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
        } else if c == '+' {
            out.push((Token::Plus, col));
            i += 1;
        } else if c == '-' {
            out.push((Token::Minus, col));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                i += 1;
            }
            let lit: String = chars[start..i].iter().collect();
            let value = parse_scalar(&lit).ok_or_else(|| syntax(line, col, format!("bad number `{lit}`")))?;
            out.push((Token::Number(value), col));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len()
                && (chars[i].is_ascii_alphanumeric() || matches!(chars[i], '_' | '\'' | '*'))
            {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let ids: Vec<String> = word.split('*').map(str::to_string).collect();
            if ids.iter().any(|id| !is_identifier(id)) {
                return Err(syntax(line, col, format!("bad path `{word}`")));
            }
            out.push((Token::Path(ids), col));
        } else {
            return Err(syntax(line, col, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

pub(crate) fn parse_scalar(lit: &str) -> Option<Scalar> {
    let (neg, body) = match lit.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, lit),
    };
    let value = match body.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.parse().ok()?;
            if q == BigInt::from(0) {
                return None;
            }
            BigRational::new(p.parse().ok()?, q)
        }
        None => BigRational::from_integer(body.parse().ok()?),
    };
    Some(if neg { -value } else { value })
}

fn parse_relation(s: &str, line: usize, col0: usize) -> Result<Vec<(Scalar, Vec<String>)>> {
    let tokens = tokenize(s, line, col0)?;
    if tokens.is_empty() {
        return Err(syntax(line, col0, "empty relation"));
    }
    let mut terms = Vec::new();
    let mut it = tokens.into_iter().peekable();
    let mut first = true;
    loop {
        let mut sign = BigRational::from_integer(1.into());
        if !first {
            match it.next() {
                Some((Token::Plus, _)) => {}
                Some((Token::Minus, _)) => sign = -sign,
                Some((_, col)) => return Err(syntax(line, col, "expected `+` or `-` between terms")),
                None => break,
            }
        }
        first = false;
        if let Some((Token::Minus, _)) = it.peek() {
            it.next();
            sign = -sign;
        }
        let mut coeff = BigRational::from_integer(1.into());
        if let Some((Token::Number(_), _)) = it.peek() {
            if let Some((Token::Number(v), _)) = it.next() {
                coeff = v;
            }
        }
        match it.next() {
            Some((Token::Path(ids), _)) => terms.push((sign * coeff, ids)),
            Some((_, col)) => return Err(syntax(line, col, "expected a path")),
            None => return Err(syntax(line, col0 + s.len(), "relation ends without a path")),
        }
        if it.peek().is_none() {
            break;
        }
    }
    Ok(terms)
}
