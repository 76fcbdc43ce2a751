#include "nqdelta/weights.hpp"

namespace nqd {

Weights::Weights(SequenceSpec q) : q_(std::move(q)) {}

void Weights::ensure(Index n) const {
    if (n < 0) throw ValidationError("weight index must be nonnegative");
    size_t need = static_cast<size_t>(n) + 1;
    if (ready_.load(std::memory_order_acquire) >= need) return;
    std::lock_guard lock(mu_);
    for (size_t k = qv_.size(); k < need; ++k) {
        Scalar qk = q_.at(static_cast<Index>(k));
        if (!qk.finite() || qk.sgn() <= 0)
            throw ValidationError("weight sequence must be positive: q_" + std::to_string(k) +
                                  " = " + qk.str());
        Scalar Qk = k == 0 ? qk : Qv_.back() + qk;
        qv_.push_back(std::move(qk));
        Qv_.push_back(std::move(Qk));
    }
    ready_.store(qv_.size(), std::memory_order_release);
}

Scalar Weights::q(Index k) const {
    ensure(k);
    return qv_[static_cast<size_t>(k)];
}

Scalar Weights::Q(Index n) const {
    ensure(n);
    return Qv_[static_cast<size_t>(n)];
}

Scalar Weights::offdiag_factor(Index k) const {
    ensure(k + 1);
    const Scalar one = Scalar::one(mode());
    return Qv_[static_cast<size_t>(k)] *
           (one / qv_[static_cast<size_t>(k) + 1] - one / qv_[static_cast<size_t>(k)]);
}

std::vector<Scalar> Weights::partial_sums(Index n) const {
    ensure(n);
    return std::vector<Scalar>(Qv_.begin(), Qv_.begin() + n + 1);
}

} // namespace nqd
