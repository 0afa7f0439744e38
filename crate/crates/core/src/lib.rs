//! Cellular, mesoprimary and primary decomposition of binomial ideals over
//! exact fields. The guide in `book/` walks through each step.

pub mod cellular;
pub mod error;
pub mod field;
pub mod grading;
pub mod groebner;
pub mod ideal;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod meso;
pub mod poly;
pub mod primdec;
pub mod reduction;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/problem-files.md")]
    mod problem_files {}
    #[doc = include_str!("../../../book/src/cellular.md")]
    mod cellular {}
    #[doc = include_str!("../../../book/src/mesoprimary.md")]
    mod mesoprimary {}
    #[doc = include_str!("../../../book/src/lattices.md")]
    mod lattices {}
    #[doc = include_str!("../../../book/src/primary.md")]
    mod primary {}
    #[doc = include_str!("../../../book/src/toral.md")]
    mod toral {}
    #[doc = include_str!("../../../book/src/restriction.md")]
    mod restriction {}
    #[doc = include_str!("../../../book/src/diagrams.md")]
    mod diagrams {}
    #[doc = include_str!("../../../book/src/json.md")]
    mod json {}
}
