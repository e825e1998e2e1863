//! Compiler core for JSC, a class-based superset of ES5.
//!
//! The pipeline is `syntax` (lexing and declaration parsing), `js` (ES5
//! bodies and the global-write lint), `pool` (name resolution, mixins,
//! protocols, ordering) and `codegen` (the classpool image). [`driver`]
//! wires them together.

pub mod codegen;
pub mod diagnostic;
pub mod driver;
pub mod js;
pub mod pool;
pub mod span;
pub mod synth;
pub mod syntax;

pub use codegen::{emit_image, ClasspoolImage, ImageOptions, ManifestEntry, DEFAULT_KERNEL, FORMAT_HEADER};
pub use diagnostic::{codes, Diagnostic, Note, Severity, SourceFile, SourceMap};
pub use driver::{compile, exit_code, load_sources, BuildConfig, Compilation, DriverError, Mode};
pub use pool::{build_pool, effective_members, initialization_order, resolve_supers, ClassPool};
pub use span::{FileId, LineIndex, Span};
pub use syntax::{parse_unit, ClassDecl, Decl, ProtocolDecl, SourceUnit};
