#pragma once

#include <nlohmann/json.hpp>

#include "nqdelta/compactness.hpp"

namespace nqd {

using json = nlohmann::json;

// Scalars encode as JSON integers when they fit (exact, denominator 1),
// as "p/q" strings otherwise, and as plain numbers in float mode.
json encode_scalar(const Scalar& s);
Scalar decode_scalar(const json& j, Mode m);

json encode_sequence(const SequenceSpec& s);
SequenceSpec decode_sequence(const json& j, Mode m);

json encode_policy(const TruncationPolicy& p);
TruncationPolicy decode_policy(const json& j, Mode m);

json encode_space_tag(SpaceTag t);
SpaceTag decode_space_tag(const json& j);

/// A matrix spec materialized both as a general row matrix and, when the kind
/// is triangular, as a Triangle usable by invert.
struct BuiltMatrix {
    RowMatrix rows;
    std::optional<Triangle> triangle;
    json canonical;
};

BuiltMatrix decode_matrix(const json& j, Mode m, const WeightsPtr& w);

json encode_verdict(const Verdict& v);

} // namespace nqd
