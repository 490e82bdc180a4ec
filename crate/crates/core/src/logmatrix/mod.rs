//! The logarithmic matrix `M_log = lim C_1 ... C_n C^{-n-2} A`.
//!
//! Two exact paths coexist. The polynomial path builds `M_n` over the quadratic
//! ring `Q[alpha]` and checks identities such as the determinant formula. The
//! evaluation path computes `M_log(varpi_n)` in factored form
//! `-P_{i1} * lambda_j^{-(n+1)}` with `P = C_1 ... C_{n-1}(varpi_n)`, which needs
//! only `v(alpha)` and `v(beta)` to produce valuations.

mod ap0;
mod build;
mod closed_form;
mod det;
mod eval;

pub use ap0::{
    ap0_structure_check, pollack_eval_vals, pollack_log_trunc, Ap0LevelReport, Ap0Report,
};
pub use build::{build_a_quotient, build_c, build_c_inverse, build_cn, build_mn, PolyMat2};
pub use closed_form::{
    closed_form_ord, closed_form_ord_tn_plus, even_row_delta, tn, tn_limit, Sign,
};
pub use det::{det_identity_check, mercator_diagnostic, DetReport};
pub use eval::{
    eval_mlog, eval_mn_direct, expand_factored, ord_of_eval, stabilization_check,
    FactoredEntry, FactoredEvalMat, Root, StabReport,
};

use crate::arith::{ExtRational, Mat2};

/// Matrix of p-adic valuations; `inf` marks a zero entry.
pub type ValMat2 = Mat2<ExtRational>;

/// Row-major string form used in reports.
pub fn val_strings(m: &ValMat2) -> Vec<Vec<String>> {
    m.rows()
        .iter()
        .map(|row| row.iter().map(ToString::to_string).collect())
        .collect()
}
