//! Library side of the `foliate` command-line tool: the input document
//! format, command dispatch and report rendering.

pub mod commands;
pub mod document;
pub mod report;

pub use commands::{run_command, CliError, Command, Options};
pub use document::{parse_document, DocError, FoliationDocument};
pub use report::{Format, Report};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/command-line.md")]
    mod command_line {}
    #[doc = include_str!("../../../book/src/reference/document-format.md")]
    mod document_format {}
}
