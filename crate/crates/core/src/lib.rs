//! Categories with designated inner automorphisms and their quotients,
//! worked out exactly on finite instances: multiplicity matrices, Bratteli
//! diagrams, weighted disagreement metrics and permutation groups.
//!
//! Composition is diagrammatic throughout: `f.then(g)` is `f` followed by
//! `g`. The guide in `book/` walks through each module.
//!
//! ```
//! use outclass::quotient::{finite_sets_injections_instance, quotient};
//!
//! let spec = finite_sets_injections_instance(3).unwrap();
//! let q = quotient(&spec).unwrap();
//! assert!(q.is_thin());
//! ```

pub mod bratteli;
pub mod matcat;
pub mod metric;
pub mod permgrp;
pub mod quotient;

// Book snippets run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/quotient.md")]
    mod quotient {}
    #[doc = include_str!("../../../book/src/matcat.md")]
    mod matcat {}
    #[doc = include_str!("../../../book/src/bratteli.md")]
    mod bratteli {}
    #[doc = include_str!("../../../book/src/metric.md")]
    mod metric {}
    #[doc = include_str!("../../../book/src/permgrp.md")]
    mod permgrp {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/file-formats.md")]
    mod file_formats {}
}
