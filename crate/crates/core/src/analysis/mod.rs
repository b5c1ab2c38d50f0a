//! Edge colourings, matchings, Tutte barriers and perfect codes.

pub mod coloring;
pub mod goodsets;
pub mod matching;
pub mod perfect_code;

pub use coloring::{chromatic_index, edge_coloring, ChromaticIndex, EdgeColoring};
pub use goodsets::{
    is_good_set, is_very_good_set, minimal_good_sets, odd_components_without, GoodSet,
};
pub use matching::{
    covers_f11, has_perfect_matching, has_semi_perfect_matching, maximum_matching,
    semi_perfect_matching_brute_force, SemiPerfectMatching,
};
pub use perfect_code::{has_perfect_code, is_perfect_code};
