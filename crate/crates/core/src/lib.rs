pub mod document;
pub mod dot;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod labelling;
pub mod order;
pub mod poset;
pub mod report;
pub mod supersolvable;
pub mod verify;
