pub mod galois;
pub mod literal;
pub mod series;
pub mod substitute;
pub mod tower;
