#pragma once

#include <random>
#include <vector>

#include "nqdelta/compactness.hpp"

namespace nqd::test {

inline Scalar q(long num, long den = 1) { return Scalar::exact(num, den); }

inline std::vector<WeightsPtr> weight_families(Mode m = Mode::exact) {
    return {
        Weights::make(SequenceSpec::constant(Scalar::one(m))),
        Weights::make(SequenceSpec::geometric(Scalar::from_int(2, m), Scalar::one(m))),
        Weights::make(SequenceSpec::geometric(Scalar::from_int(3, m), Scalar::one(m))),
        Weights::make(SequenceSpec::power(1, m)),
    };
}

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}

    long pick(long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(gen);
    }
    Scalar rational(long num_bound = 12, long den_bound = 8) {
        long num = pick(-num_bound, num_bound);
        long den = pick(1, den_bound);
        return Scalar::exact(num, den);
    }
    Scalar nonzero_rational(long num_bound = 12, long den_bound = 8) {
        Scalar v = rational(num_bound, den_bound);
        while (v.is_zero()) v = rational(num_bound, den_bound);
        return v;
    }
    /// random rationals on [0, support], mostly nonzero
    std::vector<Scalar> sparse_terms(Index support) {
        std::vector<Scalar> out;
        for (Index i = 0; i <= support; ++i) out.push_back(rational());
        return out;
    }
};

inline SequenceSpec explicit_seq(std::vector<Scalar> values) {
    return SequenceSpec::explicit_terms(std::move(values), SequenceSpec::Tail::zeros);
}

// independent dense multiply: (left * right)(n, k) for n, k <= N
inline std::vector<std::vector<Scalar>> dense_product(const Triangle& left, const Triangle& right,
                                                      Index N) {
    Mode m = left.mode();
    std::vector<std::vector<Scalar>> out;
    for (Index n = 0; n <= N; ++n) {
        std::vector<Scalar> row;
        for (Index k = 0; k <= n; ++k) {
            Scalar acc = Scalar::zero(m);
            for (Index j = 0; j <= n; ++j) acc += left.at(n, j) * right.at(j, k);
            row.push_back(acc);
        }
        out.push_back(std::move(row));
    }
    return out;
}

inline bool is_identity(const std::vector<std::vector<Scalar>>& rows, Mode m = Mode::exact) {
    for (Index n = 0; n < static_cast<Index>(rows.size()); ++n)
        for (Index k = 0; k <= n; ++k) {
            const Scalar& v = rows[static_cast<size_t>(n)][static_cast<size_t>(k)];
            if (!(v == (n == k ? Scalar::one(m) : Scalar::zero(m)))) return false;
        }
    return true;
}

// brute force over all 2^n subsets of the first n entries
inline Scalar brute_subset_sup(const std::vector<Scalar>& row) {
    Mode m = row.empty() ? Mode::exact : row.front().mode();
    Scalar best = Scalar::zero(m);
    size_t n = row.size();
    for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
        Scalar acc = Scalar::zero(m);
        for (size_t i = 0; i < n; ++i)
            if (mask & (size_t{1} << i)) acc += row[i];
        if (best < acc.abs()) best = acc.abs();
    }
    return best;
}

// x = closed-form inverse applied to y, evaluated entry by entry from the
// triangle itself (no incremental shortcuts)
inline std::vector<Scalar> inverse_applied(const WeightsPtr& w, const std::vector<Scalar>& y) {
    Triangle inv = mean_difference_inverse(w);
    std::vector<Scalar> out;
    for (Index n = 0; n < static_cast<Index>(y.size()); ++n) {
        Scalar acc = Scalar::zero(w->mode());
        for (Index k = 0; k <= n; ++k) acc += inv.at(n, k) * y[static_cast<size_t>(k)];
        out.push_back(acc);
    }
    return out;
}

inline TruncationPolicy exact_policy(Index n_max = 4096) {
    TruncationPolicy p = TruncationPolicy::defaults(Mode::exact);
    p.n_max = n_max;
    if (p.n_start > n_max) p.n_start = n_max;
    return p;
}

// single checkpoint at exactly N: the estimate is the max over the full range
inline TruncationPolicy full_depth_policy(Index N, Mode m = Mode::exact) {
    TruncationPolicy p = TruncationPolicy::defaults(m);
    p.n_start = N;
    p.n_max = N;
    return p;
}

} // namespace nqd::test
