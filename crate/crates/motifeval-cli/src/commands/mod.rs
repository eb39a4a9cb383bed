pub mod eval;
pub mod gen;
pub mod import;
pub mod rank;
pub mod rwdemo;
