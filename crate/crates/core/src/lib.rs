//! Exact P-position computation and analysis for two-pile impartial
//! take-away games: Nim, Wythoff Nim and (p,q)-GDWN.

pub mod beatty;
pub mod game;
pub mod ordering;
pub mod ratio;
pub mod report;
pub mod sequence;
pub mod solver;
pub mod split;

pub use beatty::{beatty_a, beatty_b, is_wythoff_p, BeattyPair};
pub use game::{canonical, is_option, options, GameSpec, Move, Position};
pub use ordering::{distinct_difference_ordering_exists, OrderingProblem, OrderingResult};
pub use ratio::Rational;
pub use report::{AnalysisReport, Check};
pub use sequence::{check_property_w, density_profile, partial_sum_compare};
pub use solver::{brute_classify, fast_p_sequence, verify_equivalence, PNGrid, PSequence, Pair};
pub use split::{density_split_report, estimate_slopes, sector_census, upper_indices, verify_recurrence};
