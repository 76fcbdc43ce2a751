#include "nqdelta/matrix.hpp"

namespace nqd {

RowMatrix::RowMatrix(std::string name, Mode mode, EntryRule entry, SupportRule support,
                     std::optional<Index> last_nonzero_row)
    : name_(std::move(name)), mode_(mode), entry_(std::move(entry)),
      support_(std::move(support)), last_row_(last_nonzero_row) {}

RowMatrix RowMatrix::from_triangle(const Triangle& t) {
    Triangle copy = t;
    Index rows = t.max_row();
    return RowMatrix(
        t.name(), t.mode(), [copy](Index n, Index k) { return copy.at(n, k); },
        [](Index n) { return std::optional<Index>(n); },
        rows == std::numeric_limits<Index>::max() ? std::nullopt : std::optional<Index>(rows));
}

RowMatrix RowMatrix::zero(Mode m) {
    return RowMatrix(
        "zero", m, [m](Index, Index) { return Scalar::zero(m); },
        [](Index) { return std::optional<Index>(0); }, Index{-1});
}

RowMatrix RowMatrix::unit_column(Index j, Mode m) {
    if (j < 0) throw ValidationError("unit-column index must be nonnegative");
    return RowMatrix(
        "unit-column(" + std::to_string(j) + ")", m,
        [j, m](Index, Index k) { return k == j ? Scalar::one(m) : Scalar::zero(m); },
        [j](Index) { return std::optional<Index>(j); });
}

RowMatrix RowMatrix::explicit_rows(std::vector<std::vector<Scalar>> rows, Mode m) {
    for (const auto& r : rows)
        for (const auto& v : r)
            if (v.mode() != m) throw ModeMismatchError();
    auto shared = std::make_shared<std::vector<std::vector<Scalar>>>(std::move(rows));
    Index last = static_cast<Index>(shared->size()) - 1;
    return RowMatrix(
        "explicit", m,
        [shared, m](Index n, Index k) {
            if (n >= static_cast<Index>(shared->size())) return Scalar::zero(m);
            const auto& row = (*shared)[static_cast<size_t>(n)];
            if (k >= static_cast<Index>(row.size())) return Scalar::zero(m);
            return row[static_cast<size_t>(k)];
        },
        [shared](Index n) {
            if (n >= static_cast<Index>(shared->size())) return std::optional<Index>(-1);
            return std::optional<Index>(static_cast<Index>((*shared)[static_cast<size_t>(n)].size()) - 1);
        },
        last);
}

RowMatrix RowMatrix::scaled(const Scalar& factor) const {
    if (factor.mode() != mode_) throw ModeMismatchError();
    RowMatrix copy = *this;
    return RowMatrix(
        name_ + "-scaled", mode_,
        [copy, factor](Index n, Index k) { return factor * copy.at(n, k); },
        [copy](Index n) { return copy.row_support(n); }, last_row_);
}

Scalar RowMatrix::at(Index n, Index k) const {
    if (n < 0 || k < 0) throw ValidationError("matrix indices must be nonnegative");
    return entry_(n, k);
}

std::optional<Index> RowMatrix::row_support(Index n) const {
    if (last_row_ && n > *last_row_) return Index{-1};
    return support_ ? support_(n) : std::nullopt;
}

RowFunctional RowMatrix::row(Index n) const {
    RowFunctional r;
    RowMatrix copy = *this;
    r.at = [copy, n](Index k) { return copy.at(n, k); };
    r.support = row_support(n);
    r.mode = mode_;
    return r;
}

std::optional<Scalar> RowMatrix::exact_row_sum(Index n) const {
    auto b = row_support(n);
    if (!b) return std::nullopt;
    Scalar acc = Scalar::zero(mode_);
    for (Index k = 0; k <= *b; ++k) acc += entry_(n, k);
    return acc;
}

} // namespace nqd
