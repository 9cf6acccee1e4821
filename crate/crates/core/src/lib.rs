pub mod gf;
pub mod poly;
pub mod expr;
pub mod quad;
pub mod compositum;
pub mod eqgen;
pub mod tables;
pub mod search;
