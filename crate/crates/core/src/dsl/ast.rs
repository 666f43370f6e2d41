use std::collections::BTreeMap;

use crate::error::Result;
use crate::field::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldDecl {
    Rational,
    Prime(u64),
}

impl FieldDecl {
    pub fn field(self) -> Result<Field> {
        match self {
            FieldDecl::Rational => Ok(Field::Rational),
            FieldDecl::Prime(p) => Field::prime(p),
        }
    }
}

impl From<Field> for FieldDecl {
    fn from(f: Field) -> FieldDecl {
        match f {
            Field::Rational => FieldDecl::Rational,
            Field::Prime(p) => FieldDecl::Prime(p),
        }
    }
}

/// `coef name`; the coefficient is kept as written, with an implicit
/// coefficient stored as `1` or `-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coef: String,
    pub name: String,
}

/// A linear combination of basis names; empty means zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinComb(pub Vec<Term>);

impl LinComb {
    pub fn name(name: &str) -> LinComb {
        LinComb(vec![Term {
            coef: "1".into(),
            name: name.into(),
        }])
    }
}

/// Rows of literal entries.
pub type MatrixLit = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupDecl {
    pub elements: Vec<String>,
    pub table: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDecl {
    pub basis: Vec<String>,
    /// `(left, right, product)` in written order.
    pub products: Vec<(String, String, LinComb)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingDecl {
    pub algebra: String,
    pub group: String,
    pub components: Vec<(String, Vec<LinComb>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistDecl {
    pub g: String,
    pub h: String,
    pub r: MatrixLit,
    pub l: MatrixLit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionDecl {
    pub algebra: Option<String>,
    pub group: Option<String>,
    pub domains: Vec<(String, Vec<LinComb>)>,
    pub thetas: Vec<(String, MatrixLit)>,
    pub twists: Vec<TwistDecl>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    pub field: Option<FieldDecl>,
    pub groups: BTreeMap<String, GroupDecl>,
    pub algebras: BTreeMap<String, AlgebraDecl>,
    pub gradings: BTreeMap<String, GradingDecl>,
    pub actions: BTreeMap<String, ActionDecl>,
}

impl Document {
    /// The declared field (`Q` when absent), or `over` when given.
    pub fn field(&self, over: Option<Field>) -> Result<Field> {
        match over {
            Some(f) => Ok(f),
            None => self.field.unwrap_or(FieldDecl::Rational).field(),
        }
    }

    /// The group an action acts by, resolving an omitted `by`.
    pub fn action_group<'a>(&'a self, a: &'a ActionDecl) -> Option<&'a str> {
        a.group.as_deref().or_else(|| only(&self.groups))
    }

    /// The algebra an action acts on, resolving an omitted `on`.
    pub fn action_algebra<'a>(&'a self, a: &'a ActionDecl) -> Option<&'a str> {
        a.algebra.as_deref().or_else(|| only(&self.algebras))
    }
}

fn only<V>(m: &BTreeMap<String, V>) -> Option<&str> {
    if m.len() == 1 {
        m.keys().next().map(|s| s.as_str())
    } else {
        None
    }
}
