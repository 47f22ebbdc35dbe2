pub mod bounded;
pub mod ceresa;
pub mod cyclotomic;
pub mod error;
pub mod extalg;
pub mod fermat;
pub mod selftest;
pub mod specfun;
