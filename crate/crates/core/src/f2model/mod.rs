//! GF(2) linear algebra for the matrix model `x_i = A x_{i-1}`, `y_i = B x_i`.

mod extract;
mod matrix;
mod text;
pub mod vector;

pub use extract::{
    extract_output_matrix, extract_transition_matrix, extract_transition_matrix_with, output_is_linear,
    transition_is_linear, verify_matrix_model, verify_matrix_model_from, DEFAULT_MAX_STATE_BITS, PROBE_PAIRS,
};
pub use matrix::F2Matrix;
pub use text::{matrix_to_text, parse_matrix_text, write_matrix_text};
pub use vector::F2Vector;
