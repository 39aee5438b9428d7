//! Text formats, verification campaigns and the command-line front end for
//! [`latlab_core`].

pub mod cli;
pub mod descriptor;
pub mod error;
pub mod format;
pub mod verify;

pub use descriptor::{Descriptor, Structure};
pub use error::{FormatError, LabError, ParseError};
