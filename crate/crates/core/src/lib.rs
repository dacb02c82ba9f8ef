//! Exact GF(p) toolkit for finite-dimensional algebras given by quivers with
//! relations: representations, composition factors, isomorphism classes and
//! the question of whether indecomposables are determined by their
//! composition factors.

pub mod classify;
pub mod field;
pub mod forms;
pub mod presentation;
pub mod repcat;
pub mod report;
pub mod separated;
