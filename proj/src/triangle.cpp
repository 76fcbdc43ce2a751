#include "nqdelta/triangle.hpp"

namespace nqd {

RowFunctional RowFunctional::from_sequence(const SequenceSpec& s) {
    RowFunctional r;
    r.at = [s](Index k) { return s.at(k); };
    r.mode = s.mode();
    if (s.kind() == SequenceSpec::Kind::unit) {
        r.support = s.unit_index();
    } else if (s.kind() == SequenceSpec::Kind::explicit_terms &&
               s.tail() == SequenceSpec::Tail::zeros) {
        r.support = static_cast<Index>(s.values().size()) - 1;
    }
    return r;
}

Triangle::Triangle(std::string name, Mode mode, Rule rule, Index max_row)
    : name_(std::move(name)), mode_(mode), rule_(std::move(rule)), max_row_(max_row) {}

Scalar Triangle::at(Index n, Index k) const {
    if (n < 0 || k < 0) throw ValidationError("triangle indices must be nonnegative");
    if (n > max_row_)
        throw ValidationError("triangle \"" + name_ + "\" is truncated at row " +
                              std::to_string(max_row_));
    if (k > n) return Scalar::zero(mode_);
    if (memo_) {
        std::lock_guard lock(memo_->first);
        auto it = memo_->second.find({n, k});
        if (it != memo_->second.end()) return it->second;
        Scalar v = rule_(n, k);
        memo_->second.emplace(std::make_pair(n, k), v);
        return v;
    }
    return rule_(n, k);
}

Triangle& Triangle::with_memo() {
    if (!memo_)
        memo_ = std::make_shared<std::pair<std::mutex, std::map<std::pair<Index, Index>, Scalar>>>();
    return *this;
}

RowFunctional Triangle::row(Index n) const {
    RowFunctional r;
    Triangle self = *this;
    r.at = [self, n](Index k) { return self.at(n, k); };
    r.support = n;
    r.mode = mode_;
    return r;
}

Triangle backward_difference(Mode m) {
    return Triangle("delta-minus", m, [m](Index n, Index k) {
        if (k == n) return Scalar::from_int(-1, m);
        if (k == n - 1) return Scalar::one(m);
        return Scalar::zero(m);
    });
}

Triangle backward_difference_inverse(Mode m) {
    return Triangle("delta-minus-inverse", m,
                    [m](Index, Index) { return Scalar::from_int(-1, m); });
}

Triangle identity_triangle(Mode m) {
    return Triangle("identity", m, [m](Index n, Index k) {
        return k == n ? Scalar::one(m) : Scalar::zero(m);
    });
}

Triangle diagonal_triangle(SequenceSpec diag) {
    Mode m = diag.mode();
    return Triangle("diagonal", m, [d = std::move(diag), m](Index n, Index k) {
        return k == n ? d.at(n) : Scalar::zero(m);
    });
}

Triangle riesz_mean(WeightsPtr w) {
    return Triangle("riesz", w->mode(),
                    [w](Index n, Index k) { return w->q(k) / w->Q(n); });
}

Triangle riesz_mean_inverse(WeightsPtr w) {
    Mode m = w->mode();
    return Triangle("riesz-inverse", m, [w, m](Index n, Index k) {
        if (k == n) return w->Q(n) / w->q(n);
        if (k == n - 1) return -(w->Q(n - 1) / w->q(n));
        return Scalar::zero(m);
    });
}

Triangle mean_difference_inverse(WeightsPtr w) {
    Mode m = w->mode();
    return Triangle("mean-difference-inverse", m, [w](Index n, Index k) {
        if (k == n) return -w->diag_ratio(n);
        return w->offdiag_factor(k);
    });
}

Triangle compose(Triangle left, Triangle right) {
    if (left.mode() != right.mode()) throw ModeMismatchError();
    Mode m = left.mode();
    Index rows = std::min(left.max_row(), right.max_row());
    std::string name = left.name() + "*" + right.name();
    return Triangle(std::move(name), m,
                    [l = std::move(left), r = std::move(right), m](Index n, Index k) {
                        Scalar acc = Scalar::zero(m);
                        for (Index j = k; j <= n; ++j) acc += l.at(n, j) * r.at(j, k);
                        return acc;
                    },
                    rows);
}

Triangle invert(const Triangle& t, Index N) {
    if (N < 0) throw ValidationError("truncation size must be nonnegative");
    if (N > t.max_row())
        throw ValidationError("cannot invert beyond the truncation of \"" + t.name() + "\"");
    Mode m = t.mode();
    const Scalar zero = Scalar::zero(m);
    // dense lower-triangular storage, row n at offset n(n+1)/2
    auto dense = std::make_shared<std::vector<Scalar>>();
    dense->reserve(static_cast<size_t>((N + 1) * (N + 2) / 2));
    std::vector<std::vector<Scalar>> trows(static_cast<size_t>(N) + 1);
    for (Index n = 0; n <= N; ++n) {
        auto& row = trows[static_cast<size_t>(n)];
        row.reserve(static_cast<size_t>(n) + 1);
        for (Index k = 0; k <= n; ++k) row.push_back(t.at(n, k));
        if (row.back().is_zero()) throw SingularTriangleError(n);
    }
    for (Index n = 0; n <= N; ++n) {
        const auto& trow = trows[static_cast<size_t>(n)];
        for (Index k = 0; k <= n; ++k) {
            Scalar acc = k == n ? Scalar::one(m) : zero;
            for (Index j = k; j < n; ++j) {
                const Scalar& inv_jk = (*dense)[static_cast<size_t>(j * (j + 1) / 2 + k)];
                if (!inv_jk.is_zero()) acc -= trow[static_cast<size_t>(j)] * inv_jk;
            }
            dense->push_back(acc / trow[static_cast<size_t>(n)]);
        }
    }
    return Triangle(t.name() + "-inverse", m,
                    [dense](Index n, Index k) {
                        return (*dense)[static_cast<size_t>(n * (n + 1) / 2 + k)];
                    },
                    N);
}

std::vector<Scalar> apply(const Triangle& t, const SequenceSpec& x, Index N) {
    if (N < 0) throw ValidationError("truncation size must be nonnegative");
    std::vector<Scalar> xs;
    xs.reserve(static_cast<size_t>(N) + 1);
    for (Index k = 0; k <= N; ++k) xs.push_back(x.at(k));
    if (!xs.empty() && xs.front().mode() != t.mode()) throw ModeMismatchError();
    return nqd::apply(t, xs);
}

std::vector<Scalar> apply(const Triangle& t, const std::vector<Scalar>& x) {
    Mode m = t.mode();
    std::vector<Scalar> out;
    out.reserve(x.size());
    for (Index n = 0; n < static_cast<Index>(x.size()); ++n) {
        Scalar acc = Scalar::zero(m);
        for (Index k = 0; k <= n; ++k) {
            const Scalar& xk = x[static_cast<size_t>(k)];
            if (!xk.is_zero()) acc += t.at(n, k) * xk;
        }
        out.push_back(std::move(acc));
    }
    return out;
}

} // namespace nqd
