pub mod ast;
pub mod diag;
pub mod lexer;
pub mod parser;
pub mod print;
pub mod elab;
pub mod json;
pub mod gen;
pub mod cli;
pub mod selftest;
