use std::fmt;

use serde::Serialize;

use super::ast::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Category {
    Syntax,
    UnknownName,
    DuplicateName,
    MissingSection,
    InvalidField,
    IncompleteComposition,
    InconsistentComposition,
    NonBijectiveMap,
    DomainMismatch,
    MissingMap,
    NotASubgroupoid,
    InvalidSubring,
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Category::Syntax => "syntax",
            Category::UnknownName => "unknown name",
            Category::DuplicateName => "duplicate name",
            Category::MissingSection => "missing section",
            Category::InvalidField => "invalid field",
            Category::IncompleteComposition => "incomplete composition",
            Category::InconsistentComposition => "inconsistent composition",
            Category::NonBijectiveMap => "non-bijective map",
            Category::DomainMismatch => "domain mismatch",
            Category::MissingMap => "missing map",
            Category::NotASubgroupoid => "not a subgroupoid",
            Category::InvalidSubring => "invalid subring",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub category: Category,
    pub message: String,
}

impl Diagnostic {
    pub fn new(span: Span, category: Category, message: impl Into<String>) -> Self {
        Diagnostic { line: span.line, column: span.column, category, message: message.into() }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}: {}", self.line, self.column, self.category, self.message)
    }
}
