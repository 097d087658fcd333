use std::sync::Arc;

use serde::Deserialize;
use toml::Spanned;

use super::{FiniteAlgebra, Label, PosetPattern};
use crate::error::{Error, Result};
use crate::linalg::PrimeField;

/// A parsed ring specification file:
///
/// ```text
/// field = 2
/// size = 3
/// relation = [[1, 2], [1, 3]]
/// quotient = [[1, 3], [3, 3]]   # optional
/// ```
#[derive(Clone, Debug)]
pub struct RingSpec {
    pub field: u32,
    pub size: usize,
    pub relation: Vec<Label>,
    pub quotient: Vec<Label>,
    lines: SpecLines,
}

#[derive(Clone, Debug, Default)]
struct SpecLines {
    field: usize,
    size: usize,
    relation: usize,
    quotient: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    field: Spanned<u32>,
    size: Spanned<usize>,
    #[serde(default)]
    relation: Option<Spanned<Vec<[usize; 2]>>>,
    #[serde(default)]
    quotient: Option<Spanned<Vec<[usize; 2]>>>,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].bytes().filter(|&b| b == b'\n').count() + 1
}

impl RingSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawSpec = toml::from_str(text).map_err(|e| Error::Parse {
            line: e.span().map_or(1, |s| line_of(text, s.start)),
            message: e.message().to_string(),
        })?;
        let pairs = |v: &Option<Spanned<Vec<[usize; 2]>>>| -> (Vec<Label>, usize) {
            v.as_ref().map_or((Vec::new(), 0), |s| {
                (s.get_ref().iter().map(|&[i, j]| (i, j)).collect(), line_of(text, s.span().start))
            })
        };
        let (relation, relation_line) = pairs(&raw.relation);
        let (quotient, quotient_line) = pairs(&raw.quotient);
        Ok(Self {
            field: *raw.field.get_ref(),
            size: *raw.size.get_ref(),
            relation,
            quotient,
            lines: SpecLines {
                field: line_of(text, raw.field.span().start),
                size: line_of(text, raw.size.span().start),
                relation: relation_line,
                quotient: quotient_line,
            },
        })
    }

    /// Builds and validates the algebra, attributing failures to the offending line.
    pub fn build(&self) -> Result<Arc<FiniteAlgebra>> {
        let at = |line: usize| move |e: Error| Error::Parse { line: line.max(1), message: e.to_string() };
        let field = PrimeField::new(self.field).map_err(at(self.lines.field))?;
        let pattern = PosetPattern::new(self.size, self.relation.iter().copied()).map_err(|e| {
            let line = if self.size == 0 { self.lines.size } else { self.lines.relation.max(self.lines.size) };
            at(line)(e)
        })?;
        let algebra = FiniteAlgebra::from_pattern(&pattern, field);
        let algebra = if self.quotient.is_empty() {
            algebra
        } else {
            algebra.quotient(&self.quotient).map_err(at(self.lines.quotient))?
        };
        let report = algebra.verify();
        if let Some(v) = report.violations.first() {
            return Err(Error::Parse { line: 1, message: format!("algebra verification failed: {v:?}") });
        }
        Ok(algebra)
    }

    pub fn load(text: &str) -> Result<Arc<FiniteAlgebra>> {
        Self::parse(text)?.build()
    }
}
