//! Exact replay of the finitely checkable steps in the classification of
//! biunitary triperfect numbers divisible by 27.

mod bounds;
mod ledger;
mod lemmas;
mod params;
mod theorem;

pub use bounds::{branch_bound_reports, check_branch_bounds, BRANCH_BOUND_LIMIT};
pub use ledger::{
    ledger_entries, ledger_reports, verify_ledger, Comparator, LedgerEntry, LedgerExpr, FREE_EXPONENT_MAX,
};
pub use lemmas::{
    check_lemma_22, check_lemma_23, check_lemma_24, check_lemma_a, check_lemma_b, classify_lemma22_branch,
    classify_lemma23, sigma_3_14_discrepancy, verify_lemma22_branch, verify_lemma23_branch, Lemma22Branch,
    Lemma22Witness, Lemma23Branch, Lemma23Witness, Lemma24Part, LEMMA24_P_MAX, LEMMA_A_LIMIT, MAX_BRANCH_EXPONENT,
};
pub use params::CaseParams;
pub use theorem::{verify_theorem_desk, EXPECTED_HIT};
