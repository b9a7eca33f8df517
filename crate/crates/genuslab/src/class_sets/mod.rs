//! Adeles, lattices, class sets of GL_n and Čech cocycles.

pub mod adele;
pub mod cech;
pub mod dedekind;
pub mod lattice;
