//! Run summaries and paired comparisons.

mod summary;
mod table;
mod wilcoxon;

pub use summary::{summarize, summarize_values, RunSummary};
pub use table::{missing_cells, wlt_table, CellKey, CellMap, TableMode, WltRow, WltTable, WltTotals};
pub use wilcoxon::{
    exact_p_value, normal_p_value, signed_ranks, wilcoxon_signed_rank, PMethod, SignedRanks,
    Verdict, WilcoxonReport, EXACT_LIMIT, MIN_EFFECTIVE,
};
