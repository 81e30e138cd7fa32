pub mod bier;
pub mod buchstaber;
pub mod chordal;
pub mod coloring;
pub mod complex;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod iso;
pub mod verify;
pub mod vertex_set;
