//! Textual distribution specifications.
//!
//! ```text
//! exp:<rate>
//! gamma:<shape>,<scale>
//! gammarate:<shape>,<rate>
//! weibull:<shape>,<scale>
//! loglogistic
//! ell:<alpha>,<beta>,<theta>
//! domo:<alpha>,<beta>,<theta>@<baseline>
//! ```

use std::fmt;
use std::str::FromStr;

use oddsmo_core::{Baseline, DistortedOdds, EnlargedLogLogistic, Law, ParamTriple};

/// A parse failure with the 1-based column where it was detected.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{input}\n{caret}\ncolumn {column}: {message}", caret = caret(*column))]
pub struct SpecError {
    pub input: String,
    pub column: usize,
    pub message: String,
}

fn caret(column: usize) -> String {
    format!("{}^", " ".repeat(column.saturating_sub(1)))
}

/// A parsed specification together with the text it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct DistSpec {
    pub text: String,
    pub law: Law,
}

impl fmt::Display for DistSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl FromStr for DistSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, SpecError> {
        let law = Parser { input: s }.law()?;
        Ok(DistSpec {
            text: s.to_string(),
            law,
        })
    }
}

pub fn parse(s: &str) -> Result<Law, SpecError> {
    s.parse::<DistSpec>().map(|d| d.law)
}

/// A family tag or number with its byte offset in the input.
#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    offset: usize,
}

struct Parser<'a> {
    input: &'a str,
}

impl<'a> Parser<'a> {
    fn error(&self, offset: usize, message: impl Into<String>) -> SpecError {
        SpecError {
            input: self.input.to_string(),
            column: offset + 1,
            message: message.into(),
        }
    }

    fn law(&self) -> Result<Law, SpecError> {
        let (head, baseline) = match self.input.find('@') {
            Some(at) => (&self.input[..at], Some(at + 1)),
            None => (self.input, None),
        };
        let (tag, params) = self.family(head, 0)?;
        match (tag.text, baseline) {
            ("domo", Some(start)) => {
                let p = self.triple(tag, &params)?;
                let rest = &self.input[start..];
                if rest.contains('@') {
                    let at = start + rest.find('@').unwrap_or(0);
                    return Err(self.error(at, "baseline of a domo spec must be a plain baseline"));
                }
                let b = self.baseline(rest, start)?;
                Ok(Law::Domo(DistortedOdds::new(b, p)))
            }
            ("domo", None) => Err(self.error(
                self.input.len(),
                "domo spec needs `@<baseline>` after its parameters",
            )),
            (_, Some(start)) => Err(self.error(start - 1, "only domo specs take `@<baseline>`")),
            ("ell", None) => {
                let p = self.triple(tag, &params)?;
                Ok(Law::Ell(EnlargedLogLogistic::new(p)))
            }
            (_, None) => self.baseline(head, 0).map(Law::Baseline),
        }
    }

    /// Splits `tag[:n1,n2,...]` starting at `offset` in the input.
    fn family(&self, s: &'a str, offset: usize) -> Result<(Token<'a>, Vec<(f64, Token<'a>)>), SpecError> {
        let (tag, list) = match s.find(':') {
            Some(colon) => (&s[..colon], Some(colon + 1)),
            None => (s, None),
        };
        if tag.is_empty() {
            return Err(self.error(offset, "expected a family name"));
        }
        let tag = Token { text: tag, offset };
        let mut params = Vec::new();
        if let Some(start) = list {
            let mut at = start;
            for piece in s[start..].split(',') {
                let token = Token {
                    text: piece,
                    offset: offset + at,
                };
                params.push((self.number(token)?, token));
                at += piece.len() + 1;
            }
        }
        Ok((tag, params))
    }

    fn number(&self, t: Token<'_>) -> Result<f64, SpecError> {
        let trimmed = t.text.trim();
        if trimmed.is_empty() {
            return Err(self.error(t.offset, "expected a number"));
        }
        match trimmed.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            Ok(_) => Err(self.error(t.offset, format!("`{trimmed}` is not a finite number"))),
            Err(_) => Err(self.error(t.offset, format!("`{trimmed}` is not a number"))),
        }
    }

    fn arity(&self, tag: Token<'_>, params: &[(f64, Token<'_>)], expected: usize) -> Result<(), SpecError> {
        if params.len() == expected {
            return Ok(());
        }
        let at = match (params.get(expected), params.last()) {
            (Some((_, extra)), _) => extra.offset,
            (None, Some((_, last))) => last.offset + last.text.len(),
            (None, None) => tag.offset + tag.text.len(),
        };
        Err(self.error(
            at,
            format!("`{}` takes {expected} parameter(s), got {}", tag.text, params.len()),
        ))
    }

    fn triple(&self, tag: Token<'_>, params: &[(f64, Token<'_>)]) -> Result<ParamTriple, SpecError> {
        self.arity(tag, params, 3)?;
        ParamTriple::new(params[0].0, params[1].0, params[2].0).map_err(|e| {
            let which = match &e {
                oddsmo_core::Error::InvalidParameter { field, .. } => match *field {
                    "beta" => 1,
                    "theta" => 2,
                    _ => 0,
                },
                _ => 0,
            };
            self.error(params[which].1.offset, e.to_string())
        })
    }

    fn baseline(&self, s: &str, offset: usize) -> Result<Baseline, SpecError> {
        let (tag, params) = self.family(s, offset)?;
        let values: Vec<f64> = params.iter().map(|(v, _)| *v).collect();
        match tag.text {
            "exp" => self.arity(tag, &params, 1)?,
            "gamma" | "gammarate" | "weibull" => self.arity(tag, &params, 2)?,
            "loglogistic" => self.arity(tag, &params, 0)?,
            "ell" | "domo" => {
                return Err(self.error(tag.offset, format!("`{}` cannot serve as a baseline", tag.text)))
            }
            other => return Err(self.error(tag.offset, format!("unknown family `{other}`"))),
        }
        Baseline::from_parts(tag.text, &values).map_err(|e| {
            let bad = params.iter().find(|(v, _)| !(*v > 0.0)).map_or(tag.offset, |(_, t)| t.offset);
            self.error(bad, e.to_string())
        })
    }
}
