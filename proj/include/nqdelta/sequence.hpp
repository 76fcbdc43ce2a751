#pragma once

#include <vector>

#include "nqdelta/scalar.hpp"

namespace nqd {

/// Rule-based infinite sequences. Every spec is evaluable at any index k >= 0
/// and evaluation is pure: repeated calls agree bit for bit.
class SequenceSpec {
public:
    enum class Kind { constant, geometric, power, unit, explicit_terms };
    enum class Tail { zeros, repeat_last };

    static SequenceSpec constant(Scalar c);
    /// k -> scale * ratio^k
    static SequenceSpec geometric(Scalar ratio, Scalar scale);
    /// k -> (k+1)^exponent
    static SequenceSpec power(long exponent, Mode m);
    /// k -> 1 at k == j, 0 elsewhere
    static SequenceSpec unit(Index j, Mode m);
    /// Declared prefix plus a mandatory tail rule; there is no finite sequence.
    static SequenceSpec explicit_terms(std::vector<Scalar> values, Tail tail);
    static SequenceSpec zero(Mode m) { return constant(Scalar::zero(m)); }

    Scalar at(Index k) const;
    Mode mode() const { return mode_; }
    Kind kind() const { return kind_; }

    // accessors for the canonical JSON encoding
    const Scalar& constant_value() const { return params_[0]; }
    const Scalar& ratio() const { return params_[0]; }
    const Scalar& scale() const { return params_[1]; }
    long exponent() const { return exponent_; }
    Index unit_index() const { return index_; }
    const std::vector<Scalar>& values() const { return params_; }
    Tail tail() const { return tail_; }

private:
    SequenceSpec(Kind k, Mode m) : kind_(k), mode_(m) {}

    Kind kind_;
    Mode mode_;
    std::vector<Scalar> params_;
    long exponent_ = 0;
    Index index_ = 0;
    Tail tail_ = Tail::zeros;
};

inline Scalar eval_sequence(const SequenceSpec& spec, Index k) { return spec.at(k); }

} // namespace nqd
