#include "nqdelta/cli.hpp"

#include <chrono>
#include <ctime>
#include <sstream>

namespace nqd::cli {

const char* to_string(Command c) {
    switch (c) {
    case Command::transform: return "transform";
    case Command::norm: return "norm";
    case Command::basis: return "basis";
    case Command::member: return "member";
    case Command::beta_dual: return "beta-dual";
    case Command::dual_norm: return "dual-norm";
    case Command::class_check: return "class-check";
    case Command::mnc: return "mnc";
    case Command::classify_compact: return "classify-compact";
    case Command::invert: return "invert";
    }
    return "?";
}

Command command_from_string(const std::string& s) {
    for (Command c : {Command::transform, Command::norm, Command::basis, Command::member,
                      Command::beta_dual, Command::dual_norm, Command::class_check, Command::mnc,
                      Command::classify_compact, Command::invert})
        if (s == to_string(c)) return c;
    throw ParseError("unknown command: \"" + s + "\"");
}

int exit_code_for(Outcome o) {
    switch (o) {
    case Outcome::holds: return 0;
    case Outcome::fails: return 1;
    case Outcome::inconclusive: return 2;
    }
    return 2;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ParseError*>(&e)) return 3;
    if (dynamic_cast<const UnsupportedClassError*>(&e)) return 5;
    if (dynamic_cast<const ValidationError*>(&e)) return 4;
    if (dynamic_cast<const ComputeError*>(&e)) return 6;
    return 7;
}

ProblemSpec parse_problem_spec(const json& j, const Options& opts) {
    if (!j.is_object()) throw ParseError("problem spec must be a JSON object");
    ProblemSpec spec;

    if (opts.mode) spec.mode = *opts.mode;
    else if (auto it = j.find("mode"); it != j.end())
        spec.mode = mode_from_string(it->get<std::string>());

    if (auto it = j.find("weights"); it != j.end())
        spec.weights = Weights::make(decode_sequence(*it, spec.mode));

    spec.policy = decode_policy(j.value("policy", json()), spec.mode);
    if (opts.n_max) {
        spec.policy.n_max = *opts.n_max;
        if (spec.policy.n_start > spec.policy.n_max) spec.policy.n_start = spec.policy.n_max;
    }
    if (opts.tol) spec.policy.tol = Scalar::parse(*opts.tol, spec.mode);
    spec.policy.validate();

    if (auto it = j.find("matrix"); it != j.end())
        spec.matrix = decode_matrix(*it, spec.mode, spec.weights);
    if (auto it = j.find("sequence"); it != j.end())
        spec.sequence = decode_sequence(*it, spec.mode);
    if (auto it = j.find("space"); it != j.end()) spec.space = decode_space_tag(*it);
    if (opts.space) spec.space = decode_space_tag(json(*opts.space));

    if (auto it = j.find("domain"); it != j.end()) {
        spec.domain = decode_space_tag(*it);
        spec.has_domain = true;
    }
    if (opts.domain) {
        spec.domain = decode_space_tag(json(*opts.domain));
        spec.has_domain = true;
    }
    if (auto it = j.find("codomain"); it != j.end()) {
        spec.codomain = base_space_from_string(it->get<std::string>());
        spec.has_codomain = true;
    }
    if (opts.codomain) {
        spec.codomain = base_space_from_string(*opts.codomain);
        spec.has_codomain = true;
    }

    if (auto it = j.find("variant"); it != j.end())
        spec.variant = variant_from_string(it->get<std::string>());
    if (opts.variant) spec.variant = variant_from_string(*opts.variant);

    if (auto it = j.find("index"); it != j.end()) spec.index = it->get<Index>();
    if (opts.index) spec.index = *opts.index;
    if (auto it = j.find("size"); it != j.end()) spec.size = it->get<Index>();
    if (opts.size) spec.size = *opts.size;
    if (spec.size < 0) throw ValidationError("size must be nonnegative");

    if (auto it = j.find("assume_membership"); it != j.end())
        spec.assume_membership = it->get<bool>();
    if (opts.assume_membership) spec.assume_membership = *opts.assume_membership;

    return spec;
}

json ProblemSpec::echo() const {
    json j;
    j["mode"] = nqd::to_string(mode);
    if (weights) j["weights"] = encode_sequence(weights->spec());
    if (matrix) j["matrix"] = matrix->canonical;
    if (sequence) j["sequence"] = encode_sequence(*sequence);
    j["policy"] = encode_policy(policy);
    if (space) j["space"] = encode_space_tag(*space);
    if (has_domain) j["domain"] = encode_space_tag(domain);
    if (has_codomain) j["codomain"] = nqd::to_string(codomain);
    j["variant"] = nqd::to_string(variant);
    j["index"] = index;
    j["size"] = size;
    j["assume_membership"] = assume_membership;
    return j;
}

namespace {

std::string iso_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
    return buf;
}

const Weights& need_weights(const ProblemSpec& spec) {
    if (!spec.weights) throw ValidationError("this command needs a \"weights\" entry");
    return *spec.weights;
}

const SequenceSpec& need_sequence(const ProblemSpec& spec) {
    if (!spec.sequence) throw ValidationError("this command needs a \"sequence\" entry");
    return *spec.sequence;
}

const BuiltMatrix& need_matrix(const ProblemSpec& spec) {
    if (!spec.matrix) throw ValidationError("this command needs a \"matrix\" entry");
    return *spec.matrix;
}

// The bundled worked example: unit column 1 against geometric ratio-3 weights.
// Its directly evaluated bounds disagree with the closed forms quoted for it;
// reports surface both. See docs/discrepancies.md.
bool is_worked_example(const ProblemSpec& spec) {
    if (!spec.weights || !spec.matrix) return false;
    const json& mj = spec.matrix->canonical;
    if (mj.value("kind", "") != "unit-column" || mj.value("index", -1) != 1) return false;
    const SequenceSpec& q = spec.weights->spec();
    if (q.kind() != SequenceSpec::Kind::geometric) return false;
    return q.ratio() == Scalar::from_int(3, q.mode()) &&
           q.scale() == Scalar::one(q.mode());
}

json worked_example_bound_note(const Scalar& computed) {
    json d;
    d["id"] = "worked-example-bound";
    d["summary"] = "the row-bound sup for this example evaluates to 2 exactly (attained at "
                   "truncation m = 1); the strict bound \"< 2\" quoted for it matches only a "
                   "variant whose final term is shifted";
    d["computed"] = encode_scalar(computed);
    d["quoted"] = "< 2";
    return d;
}

json worked_example_tail_note(const Scalar& computed) {
    json d;
    d["id"] = "worked-example-tail";
    d["summary"] = "the tail bound for this example evaluates to 2 for every offset; the closed "
                   "form 7/6 - 1/(2*3^(s+1)) -> 7/6 quoted for it matches only a variant whose "
                   "final term uses the previous partial sum and skips the m = 1 truncation; the "
                   "operator itself acts as x -> x_1 and is compact";
    d["computed"] = encode_scalar(computed);
    d["quoted"] = "7/6 - 1/(2*3^(s+1)) -> 7/6";
    return d;
}

json condition_report_json(const ConditionReport& report) {
    json out = json::array();
    for (const auto& c : report.conditions) {
        json cj;
        cj["id"] = nqd::to_string(c.id);
        cj["verdict"] = encode_verdict(c.verdict);
        if (!c.column_limit_values.empty()) {
            json vals = json::array();
            for (const auto& v : c.column_limit_values) vals.push_back(encode_scalar(v));
            cj["column_limits"] = std::move(vals);
        }
        out.push_back(std::move(cj));
    }
    return out;
}

json bounds_json(const CompactnessBounds& b) {
    json out;
    json per = json::array();
    for (const auto& [s, v] : b.per_offset) {
        json e;
        e["offset"] = s;
        e["verdict"] = encode_verdict(v);
        per.push_back(std::move(e));
    }
    out["per_offset"] = std::move(per);
    out["limit"] = encode_verdict(b.limit);
    out["regime"] = nqd::to_string(b.regime);
    out["lower"] = encode_scalar(b.lower);
    out["upper"] = encode_scalar(b.upper);
    out["membership"] = condition_report_json(b.membership);
    out["membership_assumed"] = b.membership_assumed;
    return out;
}

} // namespace

Report run(Command cmd, const json& spec_json, const Options& opts) {
    ProblemSpec spec = parse_problem_spec(spec_json, opts);
    Exec exec = opts.serial ? Exec::serial : default_exec();

    Report report;
    json& body = report.body;
    body["command"] = to_string(cmd);
    body["mode"] = nqd::to_string(spec.mode);
    body["policy"] = encode_policy(spec.policy);
    body["spec"] = spec.echo();
    if (!opts.no_timestamp) body["generated_at"] = iso_timestamp();
    json discrepancies = json::array();

    switch (cmd) {
    case Command::transform: {
        const auto& w = need_weights(spec);
        auto values = mean_difference_transform(w, need_sequence(spec), spec.size);
        json vals = json::array();
        for (const auto& v : values) vals.push_back(encode_scalar(v));
        body["size"] = spec.size;
        body["values"] = std::move(vals);
        break;
    }
    case Command::norm: {
        auto [est, verdict] = space_norm(need_weights(spec), need_sequence(spec), spec.policy);
        body["estimate"] = encode_scalar(est);
        body["verdict"] = encode_verdict(verdict);
        report.exit_code = exit_code_for(verdict.outcome);
        break;
    }
    case Command::basis: {
        const auto& w = need_weights(spec);
        SequenceSpec b = basis_vector(w, spec.index);
        body["index"] = spec.index;
        body["vector"] = encode_sequence(b);
        json terms = json::array();
        for (Index n = 0; n <= spec.size; ++n) terms.push_back(encode_scalar(b.at(n)));
        body["terms"] = std::move(terms);
        break;
    }
    case Command::member: {
        SpaceTag tag = spec.space.value_or(SpaceTag{BaseSpace::c0, true});
        Verdict v = space_membership(need_weights(spec), need_sequence(spec), tag, spec.policy);
        body["space"] = encode_space_tag(tag);
        body["verdict"] = encode_verdict(v);
        if (tag.transformed && tag.base == BaseSpace::c && v.holds() && v.estimate)
            body["limit"] = encode_scalar(*v.estimate);
        report.exit_code = exit_code_for(v.outcome);
        break;
    }
    case Command::beta_dual: {
        SpaceTag tag = spec.space.value_or(spec.domain);
        need_weights(spec);
        BetaDualReport r = beta_dual_membership(spec.weights, need_sequence(spec), tag,
                                                spec.policy, spec.variant, exec);
        body["domain"] = encode_space_tag(tag);
        body["variant"] = nqd::to_string(spec.variant);
        json sets = json::array();
        for (const auto& s : r.sets) {
            json sj;
            sj["name"] = s.name;
            sj["verdict"] = encode_verdict(s.verdict);
            sets.push_back(std::move(sj));
        }
        body["sets"] = std::move(sets);
        json alphas = json::array();
        for (const auto& a : r.column_limits) alphas.push_back(encode_scalar(a));
        body["column_limits"] = std::move(alphas);
        body["combined"] = nqd::to_string(r.combined);
        report.exit_code = exit_code_for(r.combined);
        break;
    }
    case Command::dual_norm: {
        const auto& a = need_sequence(spec);
        need_weights(spec);
        DualNorm primary = dual_norm(spec.weights, a, spec.policy, spec.variant, exec);
        PairingVariant other_v = spec.variant == PairingVariant::derived ? PairingVariant::printed
                                                                         : PairingVariant::derived;
        DualNorm other = dual_norm(spec.weights, a, spec.policy, other_v, exec);
        body["variant"] = nqd::to_string(spec.variant);
        body["estimate"] = encode_scalar(primary.value);
        if (primary.attained) body["attained"] = *primary.attained;
        body["verdict"] = encode_verdict(primary.verdict);
        if (!(primary.value == other.value)) {
            body[std::string(nqd::to_string(other_v)) + "_estimate"] = encode_scalar(other.value);
            json d;
            d["id"] = "pairing-variants";
            d["summary"] = "the printed and derived row forms give different dual-norm values "
                           "for this input; the derived form is the one satisfying the pairing "
                           "identity";
            d[std::string(nqd::to_string(spec.variant)) + "_value"] = encode_scalar(primary.value);
            d[std::string(nqd::to_string(other_v)) + "_value"] = encode_scalar(other.value);
            discrepancies.push_back(std::move(d));
        }
        report.exit_code = exit_code_for(primary.verdict.outcome);
        break;
    }
    case Command::class_check: {
        const auto& bm = need_matrix(spec);
        need_weights(spec);
        ClassQuery query{bm.rows, spec.domain, spec.codomain, spec.weights, spec.policy};
        ConditionReport r = class_membership(query, exec);
        body["domain"] = encode_space_tag(spec.domain);
        body["codomain"] = nqd::to_string(spec.codomain);
        body["conditions"] = condition_report_json(r);
        body["combined"] = nqd::to_string(r.combined);
        if (is_worked_example(spec))
            for (const auto& c : r.conditions)
                if (c.id == ConditionId::bound_sup && c.verdict.estimate)
                    discrepancies.push_back(worked_example_bound_note(*c.verdict.estimate));
        report.exit_code = exit_code_for(r.combined);
        break;
    }
    case Command::mnc: {
        const auto& bm = need_matrix(spec);
        need_weights(spec);
        CompactnessBounds b = mnc_bounds(spec.weights, bm.rows, spec.domain, spec.codomain,
                                         spec.policy, spec.assume_membership, exec);
        body["domain"] = encode_space_tag(spec.domain);
        body["codomain"] = nqd::to_string(spec.codomain);
        body["bounds"] = bounds_json(b);
        if (is_worked_example(spec) && b.limit.estimate)
            discrepancies.push_back(worked_example_tail_note(*b.limit.estimate));
        report.exit_code = exit_code_for(b.limit.outcome);
        break;
    }
    case Command::classify_compact: {
        const auto& bm = need_matrix(spec);
        need_weights(spec);
        CompactnessVerdict v = classify_compact(spec.weights, bm.rows, spec.domain, spec.codomain,
                                                spec.policy, spec.assume_membership, exec);
        body["domain"] = encode_space_tag(spec.domain);
        body["codomain"] = nqd::to_string(spec.codomain);
        body["bounds"] = bounds_json(v.bounds);
        body["outcome"] = nqd::to_string(v.outcome);
        body["reason"] = v.reason;
        if (is_worked_example(spec)) {
            if (v.bounds.limit.estimate)
                discrepancies.push_back(worked_example_tail_note(*v.bounds.limit.estimate));
            for (const auto& c : v.bounds.membership.conditions)
                if (c.id == ConditionId::bound_sup && c.verdict.estimate)
                    discrepancies.push_back(worked_example_bound_note(*c.verdict.estimate));
        }
        report.exit_code = v.outcome == Compactness::compact      ? 0
                           : v.outcome == Compactness::not_compact ? 1
                                                                    : 2;
        break;
    }
    case Command::invert: {
        const auto& bm = need_matrix(spec);
        if (!bm.triangle)
            throw ValidationError("matrix kind \"" + bm.canonical.value("kind", "?") +
                                  "\" is not triangular; invert needs a triangle");
        Triangle inv = invert(*bm.triangle, spec.size);
        json rows = json::array();
        for (Index n = 0; n <= spec.size; ++n) {
            json row = json::array();
            for (Index k = 0; k <= n; ++k) row.push_back(encode_scalar(inv.at(n, k)));
            rows.push_back(std::move(row));
        }
        body["size"] = spec.size;
        body["rows"] = std::move(rows);
        break;
    }
    }

    if (!discrepancies.empty()) body["discrepancies"] = std::move(discrepancies);
    return report;
}

Report run_safe(Command cmd, const json& spec_json, const Options& opts) {
    try {
        return run(cmd, spec_json, opts);
    } catch (const std::exception& e) {
        Report r;
        r.body["command"] = to_string(cmd);
        r.body["error"] = e.what();
        r.exit_code = exit_code_for(e);
        return r;
    }
}

namespace {

void render_text_verdict(std::ostream& os, const json& v, const std::string& label) {
    os << "  " << label << ": " << v.value("outcome", "?");
    if (v.contains("estimate")) os << "  estimate=" << v["estimate"].dump();
    if (v.contains("attained")) os << "  attained at n=" << v["attained"].dump();
    if (v.contains("reason")) os << "\n    " << v["reason"].get<std::string>();
    os << "\n";
}

} // namespace

std::string Report::render(const std::string& format) const {
    if (format == "json") return body.dump(2) + "\n";
    if (format == "csv") {
        std::ostringstream os;
        os << "index,value\n";
        auto emit_cps = [&os](const json& v) {
            if (!v.contains("checkpoints")) return;
            for (const auto& cp : v["checkpoints"]) os << cp[0].dump() << "," << cp[1].dump() << "\n";
        };
        if (body.contains("verdict")) emit_cps(body["verdict"]);
        else if (body.contains("values"))
            for (size_t i = 0; i < body["values"].size(); ++i)
                os << i << "," << body["values"][i].dump() << "\n";
        else if (body.contains("terms"))
            for (size_t i = 0; i < body["terms"].size(); ++i)
                os << i << "," << body["terms"][i].dump() << "\n";
        else if (body.contains("bounds"))
            for (const auto& e : body["bounds"]["per_offset"])
                os << e["offset"].dump() << ","
                   << (e["verdict"].contains("estimate") ? e["verdict"]["estimate"].dump() : "") << "\n";
        else if (body.contains("conditions"))
            for (const auto& c : body["conditions"])
                os << c["id"].get<std::string>() << ","
                   << (c["verdict"].contains("estimate") ? c["verdict"]["estimate"].dump() : "") << "\n";
        return os.str();
    }
    if (format == "text") {
        std::ostringstream os;
        os << body.value("command", "?") << " (" << body.value("mode", "?") << " mode)\n";
        if (body.contains("error")) {
            os << "  error: " << body["error"].get<std::string>() << "\n";
            return os.str();
        }
        if (body.contains("estimate")) os << "  estimate: " << body["estimate"].dump() << "\n";
        if (body.contains("verdict")) render_text_verdict(os, body["verdict"], "verdict");
        if (body.contains("outcome")) os << "  outcome: " << body["outcome"].dump() << "\n";
        if (body.contains("reason")) os << "  reason: " << body["reason"].get<std::string>() << "\n";
        if (body.contains("combined")) os << "  combined: " << body["combined"].dump() << "\n";
        if (body.contains("conditions"))
            for (const auto& c : body["conditions"])
                render_text_verdict(os, c["verdict"], c["id"].get<std::string>());
        if (body.contains("sets"))
            for (const auto& s : body["sets"])
                render_text_verdict(os, s["verdict"], s["name"].get<std::string>());
        if (body.contains("bounds")) {
            const json& b = body["bounds"];
            os << "  regime: " << b["regime"].get<std::string>() << "  bracket: ["
               << b["lower"].dump() << ", " << b["upper"].dump() << "]\n";
            render_text_verdict(os, b["limit"], "tail-bound limit");
        }
        if (body.contains("values")) os << "  values: " << body["values"].dump() << "\n";
        if (body.contains("terms")) os << "  terms: " << body["terms"].dump() << "\n";
        if (body.contains("discrepancies"))
            for (const auto& d : body["discrepancies"])
                os << "  note [" << d["id"].get<std::string>() << "]: "
                   << d["summary"].get<std::string>() << "\n";
        return os.str();
    }
    throw ParseError("unknown format: \"" + format + "\" (expected json, csv, or text)");
}

} // namespace nqd::cli
