pub mod error;
pub mod exponent;
pub mod form;
pub mod mixed_norm;
pub mod norm;
pub mod tensor;
pub mod special;
pub mod theory;
pub mod extremal;
pub mod experiment;
