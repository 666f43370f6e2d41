//! A small text format for fields, groups, algebras, gradings and twisted
//! partial actions.
//!
//! ```text
//! field Q;
//! group Z2 { elements 1 g; table: 1 g; g 1; }
//! algebra A { basis e1 e2; e1*e1 = e1; e2*e2 = e2; }
//! grading B on A by Z2 { 1: e1 e2; }
//! action T on A by Z2 {
//!   domain g: e1;
//!   theta g: [[1]];
//! }
//! ```
//!
//! Unlisted products are zero. In an action, `domain 1` defaults to the
//! whole algebra and other domains to zero, `theta 1` to the identity, and
//! missing twists to the identity. `theta g` maps the canonical basis of
//! `D_{g^-1}` to that of `D_g`; a twist gives `(R, L)` on the canonical basis
//! of `D_g D_{gh}`. `#` starts a comment.

mod ast;
mod build;
mod lexer;
mod parser;
mod printer;

pub use ast::{
    ActionDecl, AlgebraDecl, Document, FieldDecl, GradingDecl, GroupDecl, LinComb, MatrixLit, Term, TwistDecl,
};
pub use build::{
    action_decl, algebra_decl, build_action, build_algebra, build_grading, build_group, grading_decl, group_decl,
};
pub use parser::{parse, parse_with_field, ErrorKind, ParseError};
pub use printer::print;
