#![allow(dead_code)]

pub mod bracket;
pub mod gen;
