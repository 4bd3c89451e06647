pub mod a0;
pub mod algebra;
pub mod cartan;
pub mod corpus;
pub mod exactmath;
pub mod green;
pub mod hm;
pub mod quiver;
pub mod regrading;
pub mod render;
pub mod star;
pub mod tree;
pub mod verify;
