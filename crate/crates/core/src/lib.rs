pub mod catalog;
pub mod classes;
pub mod cli;
pub mod cyclotomic;
pub mod equivariant;
pub mod genera;
pub mod involution;
pub mod poly;
pub mod ratfn;
pub mod ring;
pub mod series;
pub mod theorems;
