#![allow(dead_code)]

pub mod corpus;
pub mod lz_oracle;
pub mod rs_oracle;
