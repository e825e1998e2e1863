//! Lexing and parsing of `.jsc` source units.

pub mod ast;
mod lexer;
mod parser;
pub mod token;

pub use ast::*;
pub use lexer::tokenize;
pub use parser::{is_plain_identifier, parse_unit};
