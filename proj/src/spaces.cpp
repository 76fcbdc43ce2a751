#include "nqdelta/spaces.hpp"

namespace nqd {

const char* to_string(BaseSpace b) {
    switch (b) {
    case BaseSpace::c0: return "c0";
    case BaseSpace::c: return "c";
    case BaseSpace::linf: return "linf";
    }
    return "?";
}

BaseSpace base_space_from_string(const std::string& s) {
    if (s == "c0") return BaseSpace::c0;
    if (s == "c") return BaseSpace::c;
    if (s == "linf" || s == "l_inf" || s == "loo") return BaseSpace::linf;
    throw ParseError("unknown base space: \"" + s + "\" (expected c0, c, or linf)");
}

TransformStream::TransformStream(const Weights& w, const SequenceSpec& x)
    : w_(w), x_(x), prev_x_(Scalar::zero(x.mode())), acc_(Scalar::zero(x.mode())) {
    if (w.mode() != x.mode()) throw ModeMismatchError();
}

Scalar TransformStream::next() {
    Scalar xn = x_.at(n_);
    acc_ += w_.q(n_) * (prev_x_ - xn);
    prev_x_ = std::move(xn);
    return acc_ / w_.Q(n_++);
}

std::vector<Scalar> mean_difference_transform(const Weights& w, const SequenceSpec& x, Index N) {
    if (N < 0) throw ValidationError("truncation size must be nonnegative");
    TransformStream stream(w, x);
    std::vector<Scalar> out;
    out.reserve(static_cast<size_t>(N) + 1);
    for (Index n = 0; n <= N; ++n) out.push_back(stream.next());
    return out;
}

std::pair<Scalar, Verdict> space_norm(const Weights& w, const SequenceSpec& x,
                                      const TruncationPolicy& policy) {
    TransformStream stream(w, x);
    Verdict v = sup_scan_stream([&stream] { return stream.next().abs(); }, policy);
    Scalar est = v.estimate ? *v.estimate : Scalar::zero(w.mode());
    return {est, std::move(v)};
}

SequenceSpec basis_vector(const Weights& w, Index k) {
    if (k < 0) throw ValidationError("basis index must be nonnegative");
    std::vector<Scalar> prefix(static_cast<size_t>(k), Scalar::zero(w.mode()));
    prefix.push_back(-w.diag_ratio(k));
    prefix.push_back(w.offdiag_factor(k));
    return SequenceSpec::explicit_terms(std::move(prefix), SequenceSpec::Tail::repeat_last);
}

Representation representation(const Weights& w, const SequenceSpec& x, Index N, bool with_limit,
                              const TruncationPolicy* limit_policy) {
    if (N < 0) throw ValidationError("truncation size must be nonnegative");
    Mode m = w.mode();
    Representation rep;
    rep.coefficients = mean_difference_transform(w, x, N);

    if (with_limit) {
        TruncationPolicy lp = limit_policy ? *limit_policy : TruncationPolicy::defaults(m);
        TransformStream stream(w, x);
        rep.limit_verdict = limit_scan_stream([&stream] { return stream.next(); }, lp);
        if (rep.limit_verdict.holds()) rep.limit = rep.limit_verdict.estimate;
    }

    // Rebuild x from the basis columns. The k < n entries of column k are all
    // equal, so the partial sums close incrementally.
    const Scalar l = rep.limit.value_or(Scalar::zero(m));
    Scalar coeff_tail = Scalar::zero(m);  // sum_{k<n} (lambda_k - l) * offdiag_factor(k)
    Scalar limit_tail = Scalar::zero(m);  // sum_{k<n} offdiag_factor(k), for the limit part
    rep.residual = Scalar::zero(m);
    for (Index n = 0; n <= N; ++n) {
        const Scalar& lam = rep.coefficients[static_cast<size_t>(n)];
        Scalar recon = coeff_tail - (lam - l) * w.diag_ratio(n);
        if (with_limit) recon += l * (limit_tail - w.diag_ratio(n));
        Scalar err = (x.at(n) - recon).abs();
        if (rep.residual < err) rep.residual = err;
        Scalar g = w.offdiag_factor(n);
        coeff_tail += (lam - l) * g;
        if (with_limit) limit_tail += g;
    }
    return rep;
}

Verdict space_membership(const Weights& w, const SequenceSpec& x, SpaceTag tag,
                         const TruncationPolicy& policy) {
    if (w.mode() != x.mode()) throw ModeMismatchError();
    std::function<Scalar()> next;
    TransformStream stream(w, x);
    Index plain_n = 0;
    if (tag.transformed) {
        next = [&stream] { return stream.next(); };
    } else {
        next = [&x, &plain_n] { return x.at(plain_n++); };
    }
    switch (tag.base) {
    case BaseSpace::c0:
        return limit_zero_stream(next, policy);
    case BaseSpace::c:
        return limit_scan_stream(next, policy);
    case BaseSpace::linf: {
        auto abs_next = [&next] { return next().abs(); };
        return sup_scan_stream(abs_next, policy);
    }
    }
    throw ValidationError("corrupt space tag");
}

} // namespace nqd
