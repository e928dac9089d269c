pub mod arith;
pub mod cli;
pub mod corpus;
pub mod cover;
pub mod cyclotomic;
pub mod epsilon;
pub mod error;
pub mod euler;
pub mod finite_field;
pub mod verify;
pub mod padic;
pub mod poly;
pub mod rep;
pub mod stickelberger;
