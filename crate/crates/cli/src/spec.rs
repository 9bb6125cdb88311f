//! The predictor mini-language:
//!
//! ```text
//! uniform
//! bernoulli NUM/DEN
//! dirac BITSTR
//! table FILE
//! mixture [(W, SPEC), ...]
//! ```
//!
//! Arguments may also be parenthesized, as in `bernoulli(3/4)`. Table files
//! hold `string<TAB>num/den` lines; below a leaf of the table the value is
//! spread uniformly.

use std::fmt;
use std::path::PathBuf;

use predict_core::predictor::{bernoulli, dirac, mixture, table_predictor, uniform, TableRule};
use predict_core::{BitStr, Predictor, Ratio};

use crate::error::{CliError, CliResult};
use crate::input::read_value_table;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PredictorSpec {
    Uniform,
    Bernoulli(Ratio),
    Dirac(BitStr),
    Table(PathBuf),
    Mixture(Vec<(Ratio, PredictorSpec)>),
}

impl fmt::Display for PredictorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PredictorSpec::Uniform => f.write_str("uniform"),
            PredictorSpec::Bernoulli(r) => write!(f, "bernoulli {r}"),
            PredictorSpec::Dirac(x) => write!(f, "dirac {x}"),
            PredictorSpec::Table(p) => write!(f, "table {}", p.display()),
            PredictorSpec::Mixture(items) => {
                f.write_str("mixture [")?;
                for (i, (w, s)) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "({w}, {s})")?;
                }
                f.write_str("]")
            }
        }
    }
}

impl PredictorSpec {
    pub fn parse(text: &str) -> CliResult<Self> {
        let tokens = tokenize(text);
        let mut parser = Parser {
            tokens,
            pos: 0,
            end: text.chars().count() + 1,
        };
        let spec = parser.spec()?;
        if let Some(t) = parser.peek() {
            return Err(spec_error(t.column, format!("unexpected {}", t.kind)));
        }
        Ok(spec)
    }

    pub fn build(&self) -> CliResult<Predictor> {
        Ok(match self {
            PredictorSpec::Uniform => uniform(),
            PredictorSpec::Bernoulli(r) => bernoulli(r.clone())?,
            PredictorSpec::Dirac(x) => dirac(x.clone())?,
            PredictorSpec::Table(path) => {
                table_predictor(read_value_table(path)?, TableRule::UniformBelowLeaves)
                    .map_err(|e| CliError::from(e).context(path.display()))?
            }
            PredictorSpec::Mixture(items) => {
                let family = items
                    .iter()
                    .map(|(w, s)| Ok((w.clone(), s.build()?)))
                    .collect::<CliResult<Vec<_>>>()?;
                mixture(family)?
            }
        })
    }
}

fn spec_error(column: usize, message: impl fmt::Display) -> CliError {
    CliError::usage(format!("predictor spec, column {column}: {message}"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Kind {
    Open,
    Close,
    LBracket,
    RBracket,
    Comma,
    Word(String),
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Open => f.write_str("'('"),
            Kind::Close => f.write_str("')'"),
            Kind::LBracket => f.write_str("'['"),
            Kind::RBracket => f.write_str("']'"),
            Kind::Comma => f.write_str("','"),
            Kind::Word(w) => write!(f, "{w:?}"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: Kind,
    column: usize,
}

fn tokenize(text: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let mut word: Option<(String, usize)> = None;
    for (i, c) in text.chars().enumerate() {
        let column = i + 1;
        let punct = match c {
            '(' => Some(Kind::Open),
            ')' => Some(Kind::Close),
            '[' => Some(Kind::LBracket),
            ']' => Some(Kind::RBracket),
            ',' => Some(Kind::Comma),
            _ => None,
        };
        if punct.is_some() || c.is_whitespace() {
            if let Some((w, col)) = word.take() {
                out.push(Token {
                    kind: Kind::Word(w),
                    column: col,
                });
            }
            if let Some(kind) = punct {
                out.push(Token { kind, column });
            }
        } else {
            word.get_or_insert_with(|| (String::new(), column))
                .0
                .push(c);
        }
    }
    if let Some((w, col)) = word {
        out.push(Token {
            kind: Kind::Word(w),
            column: col,
        });
    }
    out
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self, expected: &str) -> CliResult<Token> {
        let t = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| spec_error(self.end, format!("expected {expected}")))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, kind: Kind) -> CliResult<()> {
        let t = self.next(&kind.to_string())?;
        if t.kind != kind {
            return Err(spec_error(
                t.column,
                format!("expected {kind}, found {}", t.kind),
            ));
        }
        Ok(())
    }

    fn word(&mut self, expected: &str) -> CliResult<(String, usize)> {
        let t = self.next(expected)?;
        match t.kind {
            Kind::Word(w) => Ok((w, t.column)),
            other => Err(spec_error(
                t.column,
                format!("expected {expected}, found {other}"),
            )),
        }
    }

    /// A word, optionally wrapped in parentheses.
    fn argument(&mut self, expected: &str) -> CliResult<(String, usize)> {
        if self.peek().is_some_and(|t| t.kind == Kind::Open) {
            self.pos += 1;
            let w = self.word(expected)?;
            self.expect(Kind::Close)?;
            Ok(w)
        } else {
            self.word(expected)
        }
    }

    fn ratio(&mut self, expected: &str) -> CliResult<Ratio> {
        let (w, col) = self.argument(expected)?;
        w.parse().map_err(|e| spec_error(col, e))
    }

    fn spec(&mut self) -> CliResult<PredictorSpec> {
        let (name, col) = self.word("a predictor name")?;
        Ok(match name.as_str() {
            "uniform" => PredictorSpec::Uniform,
            "bernoulli" => PredictorSpec::Bernoulli(self.ratio("a rate NUM/DEN")?),
            "dirac" => {
                let (w, col) = self.argument("a bit string")?;
                PredictorSpec::Dirac(w.parse().map_err(|e| spec_error(col, e))?)
            }
            "table" => PredictorSpec::Table(PathBuf::from(self.argument("a file name")?.0)),
            "mixture" => {
                self.expect(Kind::LBracket)?;
                let mut items = Vec::new();
                loop {
                    self.expect(Kind::Open)?;
                    let w = self.ratio("a weight NUM/DEN")?;
                    self.expect(Kind::Comma)?;
                    let s = self.spec()?;
                    self.expect(Kind::Close)?;
                    items.push((w, s));
                    let t = self.next("',' or ']'")?;
                    match t.kind {
                        Kind::Comma => continue,
                        Kind::RBracket => break,
                        other => {
                            return Err(spec_error(
                                t.column,
                                format!("expected ',' or ']', found {other}"),
                            ))
                        }
                    }
                }
                PredictorSpec::Mixture(items)
            }
            other => return Err(spec_error(col, format!("unknown predictor {other:?}"))),
        })
    }
}
