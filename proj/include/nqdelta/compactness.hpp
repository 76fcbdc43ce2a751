#pragma once

#include "nqdelta/classes.hpp"

namespace nqd {

/// How the tail-bound limit relates to the measure of noncompactness of the
/// operator, by codomain: equality for c0, a factor-2 sandwich for c, and an
/// upper bound only for linf.
enum class Regime { c0_exact, c_sandwich, linf_upper };

const char* to_string(Regime r);

/// The tail bound at offset s: sup over rows n > s and truncations m of the
/// printed row bound. Nonincreasing in s.
std::pair<Scalar, Verdict> tail_bound(WeightsPtr w, const RowMatrix& A, Index s,
                                      const TruncationPolicy& policy, Exec exec = default_exec());

/// Tail bounds at several offsets from one shared scan over rows, so the
/// estimates are monotone in s by construction.
std::vector<std::pair<Index, Verdict>> tail_bound_profile(WeightsPtr w, const RowMatrix& A,
                                                          const std::vector<Index>& offsets,
                                                          const TruncationPolicy& policy,
                                                          Exec exec = default_exec());

/// Geometrically spaced offsets 0, 1, 2, 4, ... within the policy range.
std::vector<Index> default_offsets(const TruncationPolicy& policy);

struct CompactnessBounds {
    std::vector<std::pair<Index, Verdict>> per_offset;
    Verdict limit;   // windowed limit of the tail bounds over s
    Regime regime;
    Scalar lower;
    Scalar upper;
    ConditionReport membership;
    bool membership_assumed = false;
};

/// Tail-bound limit plus the noncompactness-measure bracket for the pair
/// (transformed domain, codomain). The pair must pass class_membership unless
/// assume_membership is set.
CompactnessBounds mnc_bounds(WeightsPtr w, const RowMatrix& A, SpaceTag domain,
                             BaseSpace codomain, const TruncationPolicy& policy,
                             bool assume_membership = false, Exec exec = default_exec());

enum class Compactness { compact, not_compact, inconclusive };

const char* to_string(Compactness c);

struct CompactnessVerdict {
    Compactness outcome = Compactness::inconclusive;
    std::string reason;
    CompactnessBounds bounds;
};

/// Zero tail-bound limit means compact. For codomains c0 and c the condition
/// is also necessary, so a limit bounded away from zero means not compact;
/// for linf it is sufficient only and a nonzero limit stays inconclusive.
CompactnessVerdict classify_compact(WeightsPtr w, const RowMatrix& A, SpaceTag domain,
                                    BaseSpace codomain, const TruncationPolicy& policy,
                                    bool assume_membership = false, Exec exec = default_exec());

} // namespace nqd
