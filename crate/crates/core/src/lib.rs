pub mod analysis;
pub mod bench;
pub mod expr;
pub mod methods;
pub mod numeric;
