#pragma once

#include <atomic>
#include <memory>
#include <mutex>
#include <vector>

#include "nqdelta/sequence.hpp"

namespace nqd {

/// A positive weight sequence q with memoized partial sums Q_n = q_0 + ... + q_n.
/// Values are filled on demand under a mutex (idempotent fill); reads are
/// lock-free once ensure() covers the index. Parallel kernels call ensure()
/// up front so no growth happens inside a parallel region.
class Weights {
public:
    explicit Weights(SequenceSpec q);

    static std::shared_ptr<const Weights> make(SequenceSpec q) {
        return std::make_shared<const Weights>(std::move(q));
    }

    Mode mode() const { return q_.mode(); }
    const SequenceSpec& spec() const { return q_; }

    /// Memoizes q_0..q_n and Q_0..Q_n. Throws ValidationError on q_k <= 0.
    void ensure(Index n) const;

    Scalar q(Index k) const;
    Scalar Q(Index n) const;

    /// Q_n / q_n
    Scalar diag_ratio(Index n) const { return Q(n) / q(n); }
    /// Q_k * (1/q_{k+1} - 1/q_k): the common off-diagonal factor.
    Scalar offdiag_factor(Index k) const;

    /// Q_0..Q_n; exact in exact mode.
    std::vector<Scalar> partial_sums(Index n) const;

private:
    SequenceSpec q_;
    mutable std::mutex mu_;
    mutable std::vector<Scalar> qv_;
    mutable std::vector<Scalar> Qv_;
    mutable std::atomic<size_t> ready_{0}; // count of memoized indices
};

using WeightsPtr = std::shared_ptr<const Weights>;

inline std::vector<Scalar> partial_sums(const Weights& w, Index n) { return w.partial_sums(n); }

} // namespace nqd
