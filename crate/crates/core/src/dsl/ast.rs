//! Syntax tree of a `.gpd` document. Equality ignores source positions, so
//! a document re-parsed from its own emission compares equal to the original.

use std::fmt;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// A value with the position of its first token.
#[derive(Debug, Clone)]
pub struct Spanned<T> {
    pub value: T,
    pub span: Span,
}

impl<T> Spanned<T> {
    pub fn new(value: T, span: Span) -> Self {
        Spanned { value, span }
    }
}

impl<T: PartialEq> PartialEq for Spanned<T> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl<T: Eq> Eq for Spanned<T> {}

pub type Name = Spanned<String>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowDecl {
    pub name: Name,
    pub source: Name,
    pub target: Name,
}

/// `w_1 = w_2 = …`, each word a product read right to left.
pub type Relation = Vec<Vec<Name>>;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupoidSection {
    pub objects: Vec<Name>,
    pub arrows: Vec<ArrowDecl>,
    pub relations: Vec<Relation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapEntry {
    pub from: Name,
    pub automorphism: Option<Name>,
    pub to: Name,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionDecl {
    pub arrow: Name,
    /// Empty for `none`.
    pub entries: Vec<MapEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupoidDecl {
    pub name: Name,
    pub members: Vec<Name>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecl {
    /// `k` or a subfield name such as `Q` or `GF(5)`.
    pub field: Name,
    pub members: Vec<(Option<Name>, Name)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubringDecl {
    pub name: Name,
    pub blocks: Vec<BlockDecl>,
}

/// `assert word word …;` — interpreted by the checker, e.g.
/// `assert grouptype H1;` or `assert invariants H = T;`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assertion {
    pub words: Vec<Name>,
    pub span: SpanEq,
}

/// A span that never affects equality.
#[derive(Debug, Clone, Copy, Default)]
pub struct SpanEq(pub Span);

impl PartialEq for SpanEq {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for SpanEq {}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SpecDocument {
    pub field: Option<Name>,
    pub groupoid: Option<GroupoidSection>,
    pub ring: Vec<(Name, Vec<Name>)>,
    pub action: Vec<ActionDecl>,
    pub subgroupoids: Vec<SubgroupoidDecl>,
    pub subrings: Vec<SubringDecl>,
    pub assertions: Vec<Assertion>,
}
