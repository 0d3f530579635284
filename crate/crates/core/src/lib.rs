//! Exact decision procedures for finite digital images: homotopy questions
//! about continuous maps, and multiplicative structure up to homotopy.

pub mod error;
pub mod format;
pub mod group;
pub mod homotopy;
pub mod hspace;
pub mod image;
pub mod maps;

pub use error::{Error, Result};
pub use group::{DigitalTopologicalGroup, GroupStructure};
pub use homotopy::{HomotopyCertificate, HomotopyVerdict, Status};
pub use hspace::{HSpaceReport, HSpaceStructure, MagmaStructure};
pub use image::{DigitalImage, Vertex};
pub use maps::{Category, DigitalMap, MulTable};
