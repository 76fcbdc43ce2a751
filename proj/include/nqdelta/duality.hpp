#pragma once

#include <atomic>
#include <mutex>

#include "nqdelta/scan.hpp"
#include "nqdelta/spaces.hpp"

namespace nqd {

/// The matrix that carries the pairing sum_k a_k x_k onto transform
/// coordinates. Two variants circulate for its rows:
///   printed  - c_{nk} = g_k * sum_{j=k+1..n} a_j for k < n, -Q_n a_n / q_n at k = n
///   derived  - the printed entries with the extra -Q_k a_k / q_k term for k < n
/// where g_k = Q_k (1/q_{k+1} - 1/q_k). Only the derived variant satisfies the
/// pairing identity exactly, so it is the default everywhere; the printed
/// variant is kept because the row bounds of the class conditions use it
/// literally. See docs/discrepancies.md.
enum class PairingVariant { derived, printed };

const char* to_string(PairingVariant v);
PairingVariant variant_from_string(const std::string& s);

class PairingMatrix {
public:
    PairingMatrix(WeightsPtr w, RowFunctional a, PairingVariant v);
    PairingMatrix(WeightsPtr w, const SequenceSpec& a, PairingVariant v);

    Scalar at(Index n, Index k) const;
    /// sum_{k<=n} |c_{nk}|; the per-n value of the dual norm.
    Scalar row_abs_sum(Index n) const;
    /// signed row sum, for the row-sum limit set.
    Scalar row_sum(Index n) const;

    /// Memoizes prefix sums of a (and the weights) through index n, so
    /// subsequent reads are lock-free. Call before parallel row evaluation.
    void prepare(Index n) const;

    PairingVariant variant() const { return v_; }
    Mode mode() const { return w_->mode(); }
    std::optional<Index> support() const { return a_.support; }
    const Weights& weights() const { return *w_; }

private:
    Scalar prefix(Index k) const; // sum_{j<=k} a_j, prefix(-1) = 0

    WeightsPtr w_;
    RowFunctional a_;
    PairingVariant v_;
    mutable std::mutex mu_;
    mutable std::vector<Scalar> pv_;
    mutable std::atomic<size_t> ready_{0};
};

/// sup over truncations m of the row's bound value (the per-row dual norm).
/// Closed when the row has a declared support bound b: values are constant for
/// m > b+1, so the sup equals the max over m <= b+1 exactly. Otherwise the sup
/// is estimated under the policy.
struct RowSup {
    Scalar value;
    bool closed = false;      // true when the sup closed exactly
    Outcome scan_outcome = Outcome::holds;
};

RowSup row_truncation_sup(WeightsPtr w, const RowFunctional& row, PairingVariant v,
                          const TruncationPolicy& policy);

/// max residual over n <= N of |sum_{k<=n} a_k x_k - (Cy)_n| where x is the
/// closed-form inverse applied to y. Exactly zero for the derived variant.
Scalar pairing_check(const WeightsPtr& w, const SequenceSpec& a, const SequenceSpec& y, Index N,
                     PairingVariant v = PairingVariant::derived);

struct DualNorm {
    Scalar value;
    std::optional<Index> attained;
    Verdict verdict;
};

/// sup_n row_abs_sum(n) under the policy.
DualNorm dual_norm(WeightsPtr w, const SequenceSpec& a, const TruncationPolicy& policy,
                   PairingVariant v = PairingVariant::derived, Exec exec = default_exec());
DualNorm dual_norm(WeightsPtr w, const RowFunctional& a, const TruncationPolicy& policy,
                   PairingVariant v = PairingVariant::derived, Exec exec = default_exec());

struct BetaDualReport {
    struct Set {
        std::string name;
        Verdict verdict;
    };
    std::vector<Set> sets;
    Outcome combined = Outcome::inconclusive;
    std::vector<Scalar> column_limits; // evidence from the column-limit set
};

/// Membership of a in the beta-dual of the tagged transformed space, decided
/// through the pairing-matrix condition sets:
///   c0 domain:   row-l1-sup and column-limits
///   c domain:    row-l1-sup, column-limits, row-sum-limit
///   linf domain: column-limits and l1-limit-interchange
Verdict combined_outcome(const std::vector<Verdict>& parts);
BetaDualReport beta_dual_membership(WeightsPtr w, const SequenceSpec& a, SpaceTag domain,
                                    const TruncationPolicy& policy,
                                    PairingVariant v = PairingVariant::derived,
                                    Exec exec = default_exec());

/// Exact sup over all finite subsets K of the first n_terms indices of
/// |sum_{k in K} row_k| = max(sum of positive entries, |sum of negative entries|).
Scalar finite_subset_sup(const RowFunctional& row, Index n_terms);

} // namespace nqd
