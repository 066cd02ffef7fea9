//! Exterior algebra over a Lie-algebra model: forms, the Chevalley–Eilenberg
//! differential, operator matrices and file formats.

pub mod form;
pub mod format;
pub mod model;
pub mod multiindex;
pub mod operator;

pub use form::KForm;
pub use format::{form_to_json, parse_form, parse_structure_matrix, FormFile, ModelFile, StructureFile, Term};
pub use model::{model_from_file, parse_model, LieAlgebraModel};
pub use operator::{GradedOperator, OperatorFamily};
