#pragma once

#include <optional>
#include <vector>

#include "nqdelta/scalar.hpp"

namespace nqd {

/// Controls how infinite sups and limits are estimated from finite windows.
/// Checkpoint indices grow geometrically from n_start to n_max; a quantity is
/// declared stable when `window` consecutive checkpoint values agree within
/// tol, and divergent when a value escapes divergence_threshold.
struct TruncationPolicy {
    Index n_start = 8;
    Index n_max = 4096;
    double growth = 2.0;
    int window = 3;
    Scalar tol;
    Scalar divergence_threshold;
    /// How many columns (and universally quantified rows) get scanned.
    Index column_bound = 32;

    static TruncationPolicy defaults(Mode m);

    void validate() const;

    /// Checkpoint grid over [0, n_max]. Guarantees at least `window` points
    /// when n_max+1 allows it, backfilling below n_start if the geometric
    /// ladder alone is too short.
    std::vector<Index> checkpoints() const;

    Mode mode() const { return tol.mode(); }
};

enum class Outcome { holds, fails, inconclusive };

const char* to_string(Outcome o);

struct Checkpoint {
    Index index;
    Scalar value;
};

/// Three-valued result of a windowed estimate, with its numeric evidence.
/// Holds and Fails always carry at least `window` checkpoints.
struct Verdict {
    Outcome outcome = Outcome::inconclusive;
    std::optional<Scalar> estimate;
    /// For sup scans: the index achieving the running max.
    std::optional<Index> attained;
    std::vector<Checkpoint> checkpoints;
    std::string reason;

    bool holds() const { return outcome == Outcome::holds; }
    bool fails() const { return outcome == Outcome::fails; }
    bool inconclusive() const { return outcome == Outcome::inconclusive; }
};

} // namespace nqd
