#pragma once

#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "nqdelta/weights.hpp"

namespace nqd {

/// One row of an infinite matrix as an evaluable sequence, with an optional
/// support bound B such that the row vanishes beyond column B.
struct RowFunctional {
    std::function<Scalar(Index)> at;
    std::optional<Index> support;
    Mode mode = Mode::exact;

    static RowFunctional from_sequence(const SequenceSpec& s);
};

/// A lower-triangular infinite matrix given by an entry rule. Entries above
/// the diagonal are identically zero and never materialized. Rules are pure;
/// concurrent entry evaluation is safe unless the optional memo is enabled.
class Triangle {
public:
    using Rule = std::function<Scalar(Index n, Index k)>;

    Triangle(std::string name, Mode mode, Rule rule,
             Index max_row = std::numeric_limits<Index>::max());

    Scalar at(Index n, Index k) const;
    Mode mode() const { return mode_; }
    const std::string& name() const { return name_; }
    /// Rows are defined for n <= max_row() (finite only for truncated inverses).
    Index max_row() const { return max_row_; }

    /// Opt-in per-instance entry cache. Not safe for concurrent first reads.
    Triangle& with_memo();

    RowFunctional row(Index n) const;

private:
    std::string name_;
    Mode mode_;
    Rule rule_;
    Index max_row_;
    std::shared_ptr<std::pair<std::mutex, std::map<std::pair<Index, Index>, Scalar>>> memo_;
};

/// x_k -> x_{k-1} - x_k (with x_{-1} = 0): -1 on the diagonal, 1 below it.
Triangle backward_difference(Mode m);
/// Its inverse: -1 everywhere on and below the diagonal.
Triangle backward_difference_inverse(Mode m);

Triangle identity_triangle(Mode m);
Triangle diagonal_triangle(SequenceSpec diag);

/// Weighted-mean matrix: row n holds q_k / Q_n for k <= n.
Triangle riesz_mean(WeightsPtr w);
/// Closed-form inverse: Q_n/q_n on the diagonal, -Q_{n-1}/q_n just below.
Triangle riesz_mean_inverse(WeightsPtr w);
/// Closed form of (riesz_mean . backward_difference)^-1:
/// Q_k (1/q_{k+1} - 1/q_k) for k < n, -Q_n/q_n on the diagonal.
Triangle mean_difference_inverse(WeightsPtr w);

/// Entry rule e(n,k) = sum_j left(n,j) * right(j,k), evaluated lazily.
Triangle compose(Triangle left, Triangle right);

/// Truncated inverse by forward substitution, exact in exact mode.
/// Throws SingularTriangleError on a zero diagonal entry.
Triangle invert(const Triangle& t, Index N);

/// First N+1 terms of the transform: out_n = sum_{k<=n} t(n,k) x_k.
std::vector<Scalar> apply(const Triangle& t, const SequenceSpec& x, Index N);
std::vector<Scalar> apply(const Triangle& t, const std::vector<Scalar>& x);

} // namespace nqd
