mod matrix;
mod poly;
mod rational;
mod var;

pub use matrix::RingMatrix;
pub use poly::{Mono, MultiPoly};
pub use rational::Rational;
pub use var::Var;
