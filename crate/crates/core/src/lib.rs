pub mod batch;
pub mod bounds;
pub mod exact;
pub mod geometry;
pub mod integer;
pub mod io;
pub mod polyhedra;
