#pragma once

#include "nqdelta/triangle.hpp"

namespace nqd {

/// A general infinite matrix given by a row rule, the input type of the
/// class-membership and compactness checks. Unlike Triangle, rows may have
/// entries anywhere; an optional per-row support bound declares where a row
/// vanishes, which lets the inner sups and row sums close exactly.
class RowMatrix {
public:
    using EntryRule = std::function<Scalar(Index n, Index k)>;
    using SupportRule = std::function<std::optional<Index>(Index n)>;

    RowMatrix(std::string name, Mode mode, EntryRule entry, SupportRule support,
              std::optional<Index> last_nonzero_row = std::nullopt);

    static RowMatrix from_triangle(const Triangle& t);
    static RowMatrix zero(Mode m);
    /// Every row equals the unit sequence at column j.
    static RowMatrix unit_column(Index j, Mode m);
    /// Declared rows, zero rows beyond them.
    static RowMatrix explicit_rows(std::vector<std::vector<Scalar>> rows, Mode m);
    /// Pointwise scaling by a constant (rows keep their support).
    RowMatrix scaled(const Scalar& factor) const;

    Scalar at(Index n, Index k) const;
    std::optional<Index> row_support(Index n) const;
    std::optional<Index> last_nonzero_row() const { return last_row_; }
    RowFunctional row(Index n) const;

    Mode mode() const { return mode_; }
    const std::string& name() const { return name_; }

    /// Exact row sum when the support bound is known.
    std::optional<Scalar> exact_row_sum(Index n) const;

private:
    std::string name_;
    Mode mode_;
    EntryRule entry_;
    SupportRule support_;
    std::optional<Index> last_row_;
};

} // namespace nqd
