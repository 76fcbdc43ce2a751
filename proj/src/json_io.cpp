#include "nqdelta/json_io.hpp"

namespace nqd {

namespace {

const json& require_field(const json& j, const char* key, const char* what) {
    auto it = j.find(key);
    if (it == j.end())
        throw ParseError(std::string(what) + " is missing the \"" + key + "\" field");
    return *it;
}

Index decode_index(const json& j, const char* what) {
    if (!j.is_number_integer())
        throw ParseError(std::string(what) + " must be an integer");
    return j.get<Index>();
}

} // namespace

json encode_scalar(const Scalar& s) {
    if (s.mode() == Mode::floating) return s.to_double();
    const mpq_class& q = s.rat();
    if (q.get_den() == 1 && q.get_num().fits_slong_p())
        return static_cast<std::int64_t>(q.get_num().get_si());
    return s.str();
}

Scalar decode_scalar(const json& j, Mode m) {
    if (j.is_string()) return Scalar::parse(j.get<std::string>(), m);
    if (j.is_number_integer()) return Scalar::from_int(j.get<long>(), m);
    if (j.is_number_float()) {
        if (m == Mode::exact)
            throw ParseError("exact mode needs integer or \"p/q\" scalars, got " + j.dump());
        return Scalar::real(j.get<double>());
    }
    throw ParseError("not a scalar: " + j.dump());
}

json encode_sequence(const SequenceSpec& s) {
    json j;
    switch (s.kind()) {
    case SequenceSpec::Kind::constant:
        j["kind"] = "constant";
        j["value"] = encode_scalar(s.constant_value());
        break;
    case SequenceSpec::Kind::geometric:
        j["kind"] = "geometric";
        j["ratio"] = encode_scalar(s.ratio());
        j["scale"] = encode_scalar(s.scale());
        break;
    case SequenceSpec::Kind::power:
        j["kind"] = "power";
        j["exponent"] = s.exponent();
        break;
    case SequenceSpec::Kind::unit:
        j["kind"] = "unit";
        j["index"] = s.unit_index();
        break;
    case SequenceSpec::Kind::explicit_terms: {
        j["kind"] = "explicit";
        json vals = json::array();
        for (const auto& v : s.values()) vals.push_back(encode_scalar(v));
        j["values"] = std::move(vals);
        j["tail"] = s.tail() == SequenceSpec::Tail::zeros ? "zeros" : "repeat-last";
        break;
    }
    }
    return j;
}

SequenceSpec decode_sequence(const json& j, Mode m) {
    if (!j.is_object()) throw ParseError("sequence spec must be an object, got " + j.dump());
    std::string kind = require_field(j, "kind", "sequence spec").get<std::string>();
    if (kind == "constant")
        return SequenceSpec::constant(decode_scalar(require_field(j, "value", "constant sequence"), m));
    if (kind == "geometric")
        return SequenceSpec::geometric(
            decode_scalar(require_field(j, "ratio", "geometric sequence"), m),
            decode_scalar(require_field(j, "scale", "geometric sequence"), m));
    if (kind == "power")
        return SequenceSpec::power(
            decode_index(require_field(j, "exponent", "power sequence"), "power exponent"), m);
    if (kind == "unit")
        return SequenceSpec::unit(
            decode_index(require_field(j, "index", "unit sequence"), "unit index"), m);
    if (kind == "explicit") {
        const json& vals = require_field(j, "values", "explicit sequence");
        if (!vals.is_array()) throw ParseError("explicit sequence values must be an array");
        std::vector<Scalar> values;
        for (const auto& v : vals) values.push_back(decode_scalar(v, m));
        std::string tail = require_field(j, "tail", "explicit sequence").get<std::string>();
        if (tail == "zeros")
            return SequenceSpec::explicit_terms(std::move(values), SequenceSpec::Tail::zeros);
        if (tail == "repeat-last")
            return SequenceSpec::explicit_terms(std::move(values), SequenceSpec::Tail::repeat_last);
        throw ParseError("unknown tail rule: \"" + tail + "\" (expected zeros or repeat-last)");
    }
    throw ParseError("unknown sequence kind: \"" + kind + "\"");
}

json encode_policy(const TruncationPolicy& p) {
    json j;
    j["n_start"] = p.n_start;
    j["n_max"] = p.n_max;
    j["growth"] = p.growth;
    j["window"] = p.window;
    j["tol"] = encode_scalar(p.tol);
    j["divergence_threshold"] = encode_scalar(p.divergence_threshold);
    j["column_bound"] = p.column_bound;
    return j;
}

TruncationPolicy decode_policy(const json& j, Mode m) {
    TruncationPolicy p = TruncationPolicy::defaults(m);
    if (j.is_null()) return p;
    if (!j.is_object()) throw ParseError("policy must be an object, got " + j.dump());
    if (auto it = j.find("n_start"); it != j.end()) p.n_start = decode_index(*it, "n_start");
    if (auto it = j.find("n_max"); it != j.end()) p.n_max = decode_index(*it, "n_max");
    if (auto it = j.find("growth"); it != j.end()) {
        if (!it->is_number()) throw ParseError("growth must be a number");
        p.growth = it->get<double>();
    }
    if (auto it = j.find("window"); it != j.end())
        p.window = static_cast<int>(decode_index(*it, "window"));
    if (auto it = j.find("tol"); it != j.end()) p.tol = decode_scalar(*it, m);
    if (auto it = j.find("divergence_threshold"); it != j.end())
        p.divergence_threshold = decode_scalar(*it, m);
    if (auto it = j.find("column_bound"); it != j.end())
        p.column_bound = decode_index(*it, "column_bound");
    p.validate();
    return p;
}

json encode_space_tag(SpaceTag t) {
    json j;
    j["base"] = to_string(t.base);
    j["transformed"] = t.transformed;
    return j;
}

SpaceTag decode_space_tag(const json& j) {
    if (j.is_string()) return {base_space_from_string(j.get<std::string>()), true};
    if (!j.is_object()) throw ParseError("space tag must be a string or object, got " + j.dump());
    SpaceTag t;
    t.base = base_space_from_string(require_field(j, "base", "space tag").get<std::string>());
    if (auto it = j.find("transformed"); it != j.end()) {
        if (!it->is_boolean()) throw ParseError("space tag \"transformed\" must be a boolean");
        t.transformed = it->get<bool>();
    }
    return t;
}

namespace {

Triangle decode_triangle(const json& j, Mode m, const WeightsPtr& w);

BuiltMatrix from_triangle_kind(Triangle t, json canonical) {
    RowMatrix rows = RowMatrix::from_triangle(t);
    return BuiltMatrix{std::move(rows), std::move(t), std::move(canonical)};
}

Triangle explicit_triangle(const std::vector<std::vector<Scalar>>& rows, Mode m) {
    for (size_t i = 0; i < rows.size(); ++i)
        if (rows[i].size() > i + 1)
            throw ValidationError("explicit matrix is not lower-triangular at row " +
                                  std::to_string(i));
    auto shared = std::make_shared<std::vector<std::vector<Scalar>>>(rows);
    return Triangle("explicit", m, [shared, m](Index n, Index k) {
        if (n >= static_cast<Index>(shared->size())) return Scalar::zero(m);
        const auto& row = (*shared)[static_cast<size_t>(n)];
        if (k >= static_cast<Index>(row.size())) return Scalar::zero(m);
        return row[static_cast<size_t>(k)];
    });
}

Triangle decode_triangle(const json& j, Mode m, const WeightsPtr& w) {
    std::string kind = require_field(j, "kind", "matrix spec").get<std::string>();
    if (kind == "delta-minus") return backward_difference(m);
    if (kind == "riesz") {
        if (!w) throw ValidationError("a riesz matrix needs weights in the problem spec");
        return riesz_mean(w);
    }
    if (kind == "diagonal")
        return diagonal_triangle(decode_sequence(require_field(j, "seq", "diagonal matrix"), m));
    if (kind == "compose") {
        const json& of = require_field(j, "of", "composed matrix");
        if (!of.is_array() || of.empty())
            throw ParseError("composed matrix needs a nonempty \"of\" array");
        Triangle t = decode_triangle(of[0], m, w);
        for (size_t i = 1; i < of.size(); ++i) t = compose(std::move(t), decode_triangle(of[i], m, w));
        return t;
    }
    if (kind == "explicit") {
        const json& rws = require_field(j, "rows", "explicit matrix");
        if (!rws.is_array()) throw ParseError("explicit matrix rows must be an array");
        std::vector<std::vector<Scalar>> rows;
        for (const auto& r : rws) {
            if (!r.is_array()) throw ParseError("explicit matrix rows must be arrays");
            std::vector<Scalar> row;
            for (const auto& v : r) row.push_back(decode_scalar(v, m));
            rows.push_back(std::move(row));
        }
        return explicit_triangle(rows, m);
    }
    throw ParseError("matrix kind \"" + kind + "\" is not triangular; cannot use it here");
}

} // namespace

BuiltMatrix decode_matrix(const json& j, Mode m, const WeightsPtr& w) {
    if (!j.is_object()) throw ParseError("matrix spec must be an object, got " + j.dump());
    std::string kind = require_field(j, "kind", "matrix spec").get<std::string>();
    json canonical = j;
    if (kind == "unit-column") {
        Index col = decode_index(require_field(j, "index", "unit-column matrix"), "column index");
        return BuiltMatrix{RowMatrix::unit_column(col, m), std::nullopt, std::move(canonical)};
    }
    if (kind == "zero")
        return BuiltMatrix{RowMatrix::zero(m), std::nullopt, std::move(canonical)};
    if (kind == "explicit") {
        const json& rws = require_field(j, "rows", "explicit matrix");
        if (!rws.is_array()) throw ParseError("explicit matrix rows must be an array");
        if (auto it = j.find("tail"); it != j.end() && it->get<std::string>() != "zeros")
            throw ParseError("explicit matrices support only the \"zeros\" row tail");
        std::vector<std::vector<Scalar>> rows;
        bool triangular = true;
        for (const auto& r : rws) {
            if (!r.is_array()) throw ParseError("explicit matrix rows must be arrays");
            std::vector<Scalar> row;
            for (const auto& v : r) row.push_back(decode_scalar(v, m));
            triangular = triangular && row.size() <= rows.size() + 1;
            rows.push_back(std::move(row));
        }
        std::optional<Triangle> tri;
        if (triangular) tri = explicit_triangle(rows, m);
        return BuiltMatrix{RowMatrix::explicit_rows(std::move(rows), m), std::move(tri),
                           std::move(canonical)};
    }
    Triangle t = decode_triangle(j, m, w);
    return from_triangle_kind(std::move(t), std::move(canonical));
}

json encode_verdict(const Verdict& v) {
    json j;
    j["outcome"] = to_string(v.outcome);
    if (v.estimate) j["estimate"] = encode_scalar(*v.estimate);
    if (v.attained) j["attained"] = *v.attained;
    json cps = json::array();
    for (const auto& cp : v.checkpoints) cps.push_back(json::array({cp.index, encode_scalar(cp.value)}));
    j["checkpoints"] = std::move(cps);
    if (!v.reason.empty()) j["reason"] = v.reason;
    return j;
}

} // namespace nqd
