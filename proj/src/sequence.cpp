#include "nqdelta/sequence.hpp"

namespace nqd {

SequenceSpec SequenceSpec::constant(Scalar c) {
    SequenceSpec s(Kind::constant, c.mode());
    s.params_.push_back(std::move(c));
    return s;
}

SequenceSpec SequenceSpec::geometric(Scalar ratio, Scalar scale) {
    if (ratio.mode() != scale.mode()) throw ModeMismatchError();
    SequenceSpec s(Kind::geometric, ratio.mode());
    s.params_.push_back(std::move(ratio));
    s.params_.push_back(std::move(scale));
    return s;
}

SequenceSpec SequenceSpec::power(long exponent, Mode m) {
    SequenceSpec s(Kind::power, m);
    s.exponent_ = exponent;
    return s;
}

SequenceSpec SequenceSpec::unit(Index j, Mode m) {
    if (j < 0) throw ValidationError("unit sequence index must be nonnegative");
    SequenceSpec s(Kind::unit, m);
    s.index_ = j;
    return s;
}

SequenceSpec SequenceSpec::explicit_terms(std::vector<Scalar> values, Tail tail) {
    if (values.empty() && tail == Tail::repeat_last)
        throw ValidationError("explicit sequence with repeat-last tail needs at least one value");
    Mode m = values.empty() ? Mode::exact : values.front().mode();
    for (const auto& v : values)
        if (v.mode() != m) throw ModeMismatchError();
    SequenceSpec s(Kind::explicit_terms, m);
    s.params_ = std::move(values);
    s.tail_ = tail;
    return s;
}

Scalar SequenceSpec::at(Index k) const {
    if (k < 0) throw ValidationError("sequence index must be nonnegative");
    switch (kind_) {
    case Kind::constant:
        return params_[0];
    case Kind::geometric:
        return params_[1] * pow_scalar(params_[0], k);
    case Kind::power:
        return pow_scalar(Scalar::from_int(k + 1, mode_), exponent_);
    case Kind::unit:
        return k == index_ ? Scalar::one(mode_) : Scalar::zero(mode_);
    case Kind::explicit_terms:
        if (k < static_cast<Index>(params_.size())) return params_[static_cast<size_t>(k)];
        if (tail_ == Tail::zeros || params_.empty()) return Scalar::zero(mode_);
        return params_.back();
    }
    throw ValidationError("corrupt sequence spec");
}

} // namespace nqd
