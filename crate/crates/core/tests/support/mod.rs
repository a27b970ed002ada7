#![allow(dead_code)]

pub mod stc;
