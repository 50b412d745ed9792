pub mod bijections;
pub mod closed_forms;
pub mod harness;
pub mod partition;
pub mod qpoly;
pub mod tables;
