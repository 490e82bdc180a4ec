//! Truncated Iwasawa-algebra arithmetic and synthetic checks of the Artin
//! formalism for signed and unbounded L-functions.

mod checks;
mod instance;
mod series;
mod weierstrass;

pub use checks::{
    key_identity_check, lemma_expansion_check, theorem_b_check, KeyReport, LemmaReport, Mismatch,
    TheoremBReport,
};
pub use instance::{make_instance, Hypothesis, PairData, SynthInstance, COEFF_BOUND, MAX_REDRAWS};
pub use series::{cyc_specialize, lift, lift_matrix, outer, TruncSeries1, TruncSeries2, TwoVar};
pub use weierstrass::{
    mu_lambda, mu_lambda_eval_law, theorem_a_endgame, EndgameReport, EvalLawReport, LawStatus,
    WeierstrassData,
};
