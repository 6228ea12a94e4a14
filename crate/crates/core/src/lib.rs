//! Hilbert functions of fat point schemes in P¹×P¹.
//!
//! A scheme is given by a grid of multiplicities `m_ij ≥ 0` at the points
//! `R_i × Q_j`. The crate computes the tuples `α_Z`, `β_Z`, the border of
//! the Hilbert function, decides the ACM property, produces Hilbert
//! functions and resolutions of ACM schemes, and checks everything against
//! a linear-algebra oracle that works from explicit coordinates.

pub mod acm;
pub mod border;
pub mod classify;
pub mod cli;
pub mod oracle;
pub mod partition;
pub mod scheme;
pub mod sweep;
pub mod table;

pub use acm::{
    acm_delta, acm_hilbert, combinatorial_table, first_difference, is_acm, is_artinian_staircase, is_totally_ordered,
    resolution, resolution_hilbert, s_set, AcmCertificate, AcmError, OrderStatus, Resolution, SzSet, SzTuple,
};
pub use border::{alpha_beta, border, border_table, hilbert_outside_border, line_hilbert, AlphaBeta, Border, BorderError};
pub use classify::{check_theorems, classify, Classification, ClassifyError, TheoremReport};
pub use oracle::{
    condition_matrix, oracle_hilbert_table, oracle_hilbert_value, verify_acm_equivalence, verify_border,
    AcmEquivalenceReport, BorderReport, ConditionMatrix, FieldConfig, OracleError, Prime,
};
pub use partition::{conjugate_reduction, difference, partial_sums, Partition, PartitionError};
pub use scheme::{parse_scheme, BiDegree, Coordinates, GridScheme, ProjPoint, SchemeError, SchemeFile};
pub use table::{DiffTable, HilbertTable, ShapeViolation};
