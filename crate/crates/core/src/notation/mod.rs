//! A small text format for systems, states and role assignments, plus DOT
//! and SVG emitters for structures and partition models.
//!
//! ```text
//! tangnet-spec v1
//! system U { A:2, B:2 }
//! state psi = 0.70710678 |0,1> + (0-0.70710678i) |1,0>;
//! roles { A: S1; B: S2; }
//! ```
//!
//! `#` starts a comment running to the end of the line.

mod diagram;
mod document;
mod format;
mod lexer;
mod parser;

pub use diagram::{
    emit_partition_diagram, emit_structure_diagram, validate_dot, validate_svg, DiagramDoc, DiagramFormat,
    EdgeProvenance, SVG_UNIT,
};
pub use document::{Amplitude, PartyDecl, RoleDecl, Span, SpecDocument, StateDecl, SystemDecl, Term};
pub use format::format;
pub use parser::{parse, parse_with, Diagnostic, ParseOptions, NORM_TOL};
