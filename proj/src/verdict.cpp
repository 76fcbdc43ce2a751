#include "nqdelta/verdict.hpp"

#include <algorithm>
#include <cmath>

namespace nqd {

const char* to_string(Outcome o) {
    switch (o) {
    case Outcome::holds: return "holds";
    case Outcome::fails: return "fails";
    case Outcome::inconclusive: return "inconclusive";
    }
    return "?";
}

TruncationPolicy TruncationPolicy::defaults(Mode m) {
    TruncationPolicy p;
    p.tol = m == Mode::exact ? Scalar::exact(0) : Scalar::real(1e-9);
    p.divergence_threshold = m == Mode::exact ? Scalar::exact(1000000000000L) : Scalar::real(1e12);
    return p;
}

void TruncationPolicy::validate() const {
    if (n_start < 0 || n_max < 0) throw ValidationError("policy indices must be nonnegative");
    if (n_start > n_max) throw ValidationError("policy requires n_start <= n_max");
    if (!(growth > 1.0)) throw ValidationError("policy requires growth > 1");
    if (window < 2) throw ValidationError("policy requires window >= 2");
    if (tol.sgn() < 0) throw ValidationError("policy requires tol >= 0");
    if (divergence_threshold.sgn() <= 0)
        throw ValidationError("policy requires a positive divergence threshold");
    if (tol.mode() != divergence_threshold.mode()) throw ModeMismatchError();
}

std::vector<Index> TruncationPolicy::checkpoints() const {
    std::vector<Index> grid;
    Index c = n_start;
    while (true) {
        grid.push_back(c);
        if (c >= n_max) break;
        Index next = std::max<Index>(c + 1, static_cast<Index>(std::floor(static_cast<double>(c) * growth)));
        c = std::min(next, n_max);
    }
    // backfill below n_start so short ladders still provide window-many points
    while (static_cast<Index>(grid.size()) < window && grid.front() > 0)
        grid.insert(grid.begin(), grid.front() - 1);
    return grid;
}

} // namespace nqd
