//! The ES5 subset used for method bodies: parsing, scope analysis and
//! verbatim body extraction.

pub mod ast;
mod parser;
mod scope;

pub use ast::{JsFunction, Sexpr};
pub use parser::{parse_assignment_expression, parse_function_expression, parse_program};
pub use scope::{
    find_global_assignments, find_global_assignments_in_program, find_restricted_writes, JsScope, LintFinding,
    WriteKind,
};

/// The exact source slice of `f`, from `function` through the closing brace.
pub fn extract_body_text<'s>(f: &JsFunction, source: &'s str) -> &'s str {
    &source[f.span.start..f.span.end]
}
