pub mod criteria;
pub mod exec;
pub mod fppoly;
pub mod intpoly;
pub mod numtheory;
pub mod oracle;
pub mod tower;
