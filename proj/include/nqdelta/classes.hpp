#pragma once

#include "nqdelta/duality.hpp"
#include "nqdelta/matrix.hpp"

namespace nqd {

/// The individual membership conditions, named by what they test.
enum class ConditionId {
    bound_sup,             // sup over rows and truncations of the printed row bound
    row_tails_null,        // (a_{nk} Q_k / q_k)_k vanishes, for every row n
    row_tails_convergent,  // same sequence converges, for every row n
    columns_null,          // lim_n a_{nk} = 0 for each column k
    columns_convergent,    // lim_n a_{nk} exists for each column k
    row_sums_null,         // lim_n sum_k a_{nk} = 0
    row_sums_convergent,   // lim_n sum_k a_{nk} exists
};

const char* to_string(ConditionId c);

/// Double sup over rows n and truncations m of the printed row bound
/// (the finiteness condition shared by every class pair).
std::pair<Scalar, Verdict> matrix_bound_sup(WeightsPtr w, const RowMatrix& A,
                                            const TruncationPolicy& policy,
                                            Exec exec = default_exec());

/// Behavior of the sequence (a_{nk} Q_k / q_k)_k for one row n.
Verdict row_tail(const Weights& w, const RowMatrix& A, Index n, BaseSpace target,
                 const TruncationPolicy& policy);

enum class LimitKind { zero, exists };

struct ColumnLimits {
    std::vector<Scalar> values; // one per column k <= policy.column_bound
    Verdict verdict;
};

/// Windowed per-column limits of a_{nk} over n, for k <= policy.column_bound.
ColumnLimits column_limits(const RowMatrix& A, LimitKind kind, const TruncationPolicy& policy);

/// Windowed limit of the row sums over n. Rows without a declared support
/// bound get a windowed per-row sum; a row whose partials escape the
/// divergence threshold raises DivergentRowSumError.
std::pair<Scalar, Verdict> row_sum_limit(const RowMatrix& A, LimitKind kind,
                                         const TruncationPolicy& policy);

struct ClassQuery {
    RowMatrix A;
    SpaceTag domain;    // transformed c0 / c / linf
    BaseSpace codomain; // plain c0 / c / linf
    WeightsPtr weights;
    TruncationPolicy policy;
};

struct ConditionResult {
    ConditionId id;
    Verdict verdict;
    std::vector<Scalar> column_limit_values; // only for the column conditions
};

struct ConditionReport {
    std::vector<ConditionResult> conditions;
    Outcome combined = Outcome::inconclusive;
};

/// Dispatches exactly the conditions the (domain, codomain) pair requires and
/// combines their verdicts. Seven pairs are supported; anything else throws
/// UnsupportedClassError.
ConditionReport class_membership(const ClassQuery& query, Exec exec = default_exec());

/// sup over rows of the row's dual norm (derived variant).
std::pair<Scalar, Verdict> operator_norm(WeightsPtr w, const RowMatrix& A,
                                         const TruncationPolicy& policy,
                                         Exec exec = default_exec());

/// Same double sup as matrix_bound_sup, restricted to rows n > s.
std::pair<Scalar, Verdict> tail_row_bound_sup(WeightsPtr w, const RowMatrix& A, Index s,
                                              const TruncationPolicy& policy,
                                              Exec exec = default_exec());

} // namespace nqd
