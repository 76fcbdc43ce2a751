#pragma once

#include "nqdelta/scan.hpp"
#include "nqdelta/triangle.hpp"

namespace nqd {

enum class BaseSpace { c0, c, linf };

const char* to_string(BaseSpace b);
BaseSpace base_space_from_string(const std::string& s);

/// A base sequence space, either plain or wrapped into the matrix domain of
/// the weighted-mean difference transform.
struct SpaceTag {
    BaseSpace base = BaseSpace::c0;
    bool transformed = true;
};

/// First N+1 terms of the transform tau_n = (1/Q_n) sum_{k<=n} q_k (x_{k-1} - x_k),
/// computed incrementally in O(N).
std::vector<Scalar> mean_difference_transform(const Weights& w, const SequenceSpec& x, Index N);

/// Stateful one-term-at-a-time version of the same transform.
class TransformStream {
public:
    TransformStream(const Weights& w, const SequenceSpec& x);
    Scalar next();

private:
    const Weights& w_;
    SequenceSpec x_;
    Index n_ = 0;
    Scalar prev_x_;
    Scalar acc_;
};

/// sup_n |tau_n|, estimated under the policy. estimate always carries the
/// running max; Holds once stable, Fails past the divergence threshold.
std::pair<Scalar, Verdict> space_norm(const Weights& w, const SequenceSpec& x,
                                      const TruncationPolicy& policy);

/// k-th basis vector of the transformed null space: column k of the closed-form
/// inverse. Its transform is the unit sequence at k.
SequenceSpec basis_vector(const Weights& w, Index k);

struct Representation {
    std::vector<Scalar> coefficients; // tau_0 .. tau_N
    std::optional<Scalar> limit;      // only when requested and the tail stabilized
    Verdict limit_verdict;            // populated when the limit was requested
    Scalar residual;                  // max_{n<=N} |x_n - reconstruction_n|
};

/// Coefficients lambda_k = tau_k(x) plus the residual of rebuilding x from the
/// basis. with_limit additionally estimates the tail limit and uses the
/// limit-split form of the reconstruction.
Representation representation(const Weights& w, const SequenceSpec& x, Index N,
                              bool with_limit = false,
                              const TruncationPolicy* limit_policy = nullptr);

/// Membership of x in the tagged space, decided on tau (transformed tags) or
/// on x itself (plain tags). For the convergent space the verdict's estimate
/// carries the limit once membership holds.
Verdict space_membership(const Weights& w, const SequenceSpec& x, SpaceTag tag,
                         const TruncationPolicy& policy);

} // namespace nqd
