//! Linear codes over Z4: factorization of x^n - 1, cyclic and quasi-cyclic
//! constructions, exact minimum Lee distance, and a catalog of results
//! classified through the Gray map.

pub mod algebra;
pub mod catalog;
pub mod codes;
pub mod distance;
pub mod search;
