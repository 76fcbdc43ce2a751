#include "nqdelta/classes.hpp"

#include <atomic>

namespace nqd {

const char* to_string(ConditionId c) {
    switch (c) {
    case ConditionId::bound_sup: return "bound-sup";
    case ConditionId::row_tails_null: return "row-tails-null";
    case ConditionId::row_tails_convergent: return "row-tails-convergent";
    case ConditionId::columns_null: return "columns-null";
    case ConditionId::columns_convergent: return "columns-convergent";
    case ConditionId::row_sums_null: return "row-sums-null";
    case ConditionId::row_sums_convergent: return "row-sums-convergent";
    }
    return "?";
}

namespace {

// Double sup over rows n > row_offset and all truncations m of the row bound.
// Shared by the bound condition, the operator norm (derived variant) and the
// tail bounds of the compactness module.
std::pair<Scalar, Verdict> double_sup(WeightsPtr w, const RowMatrix& A, PairingVariant variant,
                                      Index row_offset, const TruncationPolicy& policy,
                                      Exec exec) {
    policy.validate();
    std::atomic<bool> inner_open{false};
    auto value_at = [&](Index n) {
        RowSup rs = row_truncation_sup(w, A.row(n), variant, policy);
        if (!rs.closed && rs.scan_outcome != Outcome::holds) inner_open.store(true);
        return rs.value;
    };
    auto prepare = [&](Index hi) {
        // the row bound only touches weights up to the row's support bound
        Index need = 1;
        for (Index n = 0; n <= hi; ++n) {
            auto b = A.row_support(n);
            if (!b) {
                need = std::max(need, policy.n_max + 1);
                break;
            }
            need = std::max(need, *b + 2);
        }
        w->ensure(need);
    };
    Verdict v = sup_scan(value_at, row_offset, policy, exec, prepare);
    if (v.holds() && inner_open.load()) {
        v.outcome = Outcome::inconclusive;
        v.reason = "inner truncation sup did not stabilize for some rows";
    }
    Scalar est = v.estimate.value_or(Scalar::zero(w->mode()));
    return {est, std::move(v)};
}

} // namespace

std::pair<Scalar, Verdict> matrix_bound_sup(WeightsPtr w, const RowMatrix& A,
                                            const TruncationPolicy& policy, Exec exec) {
    return double_sup(std::move(w), A, PairingVariant::printed, -1, policy, exec);
}

std::pair<Scalar, Verdict> operator_norm(WeightsPtr w, const RowMatrix& A,
                                         const TruncationPolicy& policy, Exec exec) {
    return double_sup(std::move(w), A, PairingVariant::derived, -1, policy, exec);
}

std::pair<Scalar, Verdict> tail_row_bound_sup(WeightsPtr w, const RowMatrix& A, Index s,
                                              const TruncationPolicy& policy, Exec exec) {
    return double_sup(std::move(w), A, PairingVariant::printed, s, policy, exec);
}

Verdict row_tail(const Weights& w, const RowMatrix& A, Index n, BaseSpace target,
                 const TruncationPolicy& policy) {
    if (target == BaseSpace::linf)
        throw ValidationError("row tails are tested against c0 or c only");
    auto b = A.row_support(n);
    if (b) {
        // finitely supported rows are trivially null sequences
        Verdict v;
        v.outcome = Outcome::holds;
        v.estimate = Scalar::zero(w.mode());
        for (int i = 0; i < policy.window; ++i)
            v.checkpoints.push_back({*b + 1 + i, Scalar::zero(w.mode())});
        v.reason = "row supported on finitely many columns";
        return v;
    }
    auto value_at = [&w, &A, n](Index k) { return A.at(n, k) * w.diag_ratio(k); };
    auto prepare = [&w](Index hi) { w.ensure(hi + 1); };
    return target == BaseSpace::c0 ? limit_zero_scan(value_at, policy, prepare)
                                   : limit_scan(value_at, policy, prepare);
}

ColumnLimits column_limits(const RowMatrix& A, LimitKind kind, const TruncationPolicy& policy) {
    policy.validate();
    ColumnLimits out;
    std::vector<Verdict> parts;
    for (Index k = 0; k <= policy.column_bound; ++k) {
        auto value_at = [&A, k](Index n) { return A.at(n, k); };
        Verdict v = kind == LimitKind::zero ? limit_zero_scan(value_at, policy)
                                            : limit_scan(value_at, policy);
        out.values.push_back(v.estimate.value_or(Scalar::zero(A.mode())));
        parts.push_back(std::move(v));
    }
    out.verdict = combined_outcome(parts);
    if (!out.verdict.holds() && out.verdict.reason.empty())
        out.verdict.reason = "some column limit did not stabilize";
    return out;
}

namespace {

Scalar row_sum_value(const RowMatrix& A, Index n, const TruncationPolicy& policy,
                     bool& open_row) {
    if (auto s = A.exact_row_sum(n)) return *s;
    // no declared support: window the partial sums of the row
    Mode m = A.mode();
    Scalar acc = Scalar::zero(m);
    Index k = 0;
    auto partial = [&] {
        acc += A.at(n, k++);
        return acc;
    };
    Verdict v = limit_scan_stream(partial, policy);
    if (v.fails()) throw DivergentRowSumError(n);
    if (!v.holds()) open_row = true;
    return v.estimate.value_or(Scalar::zero(m));
}

} // namespace

std::pair<Scalar, Verdict> row_sum_limit(const RowMatrix& A, LimitKind kind,
                                         const TruncationPolicy& policy) {
    policy.validate();
    bool open_row = false;
    auto value_at = [&A, &policy, &open_row](Index n) {
        return row_sum_value(A, n, policy, open_row);
    };
    Verdict v = kind == LimitKind::zero ? limit_zero_scan(value_at, policy)
                                        : limit_scan(value_at, policy);
    if (v.holds() && open_row) {
        v.outcome = Outcome::inconclusive;
        v.reason = "some per-row sum did not stabilize";
    }
    Scalar est = v.estimate.value_or(Scalar::zero(A.mode()));
    return {est, std::move(v)};
}

namespace {

Verdict all_row_tails(const Weights& w, const RowMatrix& A, BaseSpace target,
                      const TruncationPolicy& policy) {
    std::vector<Verdict> parts;
    for (Index n = 0; n <= policy.column_bound; ++n)
        parts.push_back(row_tail(w, A, n, target, policy));
    Verdict v = combined_outcome(parts);
    if (!v.holds() && v.reason.empty()) v.reason = "a row tail test did not stabilize";
    if (v.fails()) {
        for (Index n = 0; n <= policy.column_bound; ++n)
            if (parts[static_cast<size_t>(n)].fails()) {
                v.reason = "row " + std::to_string(n) + ": " + parts[static_cast<size_t>(n)].reason;
                break;
            }
    }
    return v;
}

} // namespace

ConditionReport class_membership(const ClassQuery& query, Exec exec) {
    query.policy.validate();
    if (!query.domain.transformed)
        throw UnsupportedClassError("the domain must be one of the transformed spaces");
    if (!query.weights) throw ValidationError("class query needs weights");

    std::vector<ConditionId> needed;
    const BaseSpace X = query.domain.base;
    const BaseSpace Y = query.codomain;
    if (X == BaseSpace::linf && Y == BaseSpace::linf)
        needed = {ConditionId::bound_sup, ConditionId::row_tails_null};
    else if (X == BaseSpace::c && Y == BaseSpace::linf)
        needed = {ConditionId::bound_sup, ConditionId::row_tails_convergent};
    else if (X == BaseSpace::c0 && Y == BaseSpace::linf)
        needed = {ConditionId::bound_sup};
    else if (X == BaseSpace::c0 && Y == BaseSpace::c0)
        needed = {ConditionId::bound_sup, ConditionId::columns_null};
    else if (X == BaseSpace::c0 && Y == BaseSpace::c)
        needed = {ConditionId::bound_sup, ConditionId::columns_convergent};
    else if (X == BaseSpace::c && Y == BaseSpace::c0)
        needed = {ConditionId::bound_sup, ConditionId::row_tails_null, ConditionId::columns_null,
                  ConditionId::row_sums_null};
    else if (X == BaseSpace::c && Y == BaseSpace::c)
        needed = {ConditionId::bound_sup, ConditionId::row_tails_null,
                  ConditionId::columns_convergent, ConditionId::row_sums_convergent};
    else
        throw UnsupportedClassError(std::string("no condition set for the pair (transformed ") +
                                    to_string(X) + ", " + to_string(Y) + ")");

    ConditionReport report;
    std::vector<Verdict> verdicts;
    for (ConditionId id : needed) {
        ConditionResult res;
        res.id = id;
        switch (id) {
        case ConditionId::bound_sup:
            res.verdict = matrix_bound_sup(query.weights, query.A, query.policy, exec).second;
            break;
        case ConditionId::row_tails_null:
            res.verdict = all_row_tails(*query.weights, query.A, BaseSpace::c0, query.policy);
            break;
        case ConditionId::row_tails_convergent:
            res.verdict = all_row_tails(*query.weights, query.A, BaseSpace::c, query.policy);
            break;
        case ConditionId::columns_null:
        case ConditionId::columns_convergent: {
            ColumnLimits cl = column_limits(
                query.A, id == ConditionId::columns_null ? LimitKind::zero : LimitKind::exists,
                query.policy);
            res.verdict = std::move(cl.verdict);
            res.column_limit_values = std::move(cl.values);
            break;
        }
        case ConditionId::row_sums_null:
        case ConditionId::row_sums_convergent:
            res.verdict = row_sum_limit(query.A,
                                        id == ConditionId::row_sums_null ? LimitKind::zero
                                                                         : LimitKind::exists,
                                        query.policy)
                              .second;
            break;
        }
        verdicts.push_back(res.verdict);
        report.conditions.push_back(std::move(res));
    }
    report.combined = combined_outcome(verdicts).outcome;
    return report;
}

} // namespace nqd
