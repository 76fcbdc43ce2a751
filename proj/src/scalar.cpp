#include "nqdelta/scalar.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

namespace nqd {

const char* to_string(Mode m) { return m == Mode::exact ? "exact" : "float"; }

Mode mode_from_string(const std::string& s) {
    if (s == "exact") return Mode::exact;
    if (s == "float") return Mode::floating;
    throw ParseError("unknown scalar mode: \"" + s + "\" (expected \"exact\" or \"float\")");
}

Scalar Scalar::exact(long num, long den) {
    if (den == 0) throw ValidationError("rational with zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(std::move(q));
}

Scalar Scalar::exact(mpq_class v) {
    if (v.get_den() == 0) throw ValidationError("rational with zero denominator");
    v.canonicalize();
    return Scalar(std::move(v));
}

Scalar Scalar::from_int(long v, Mode m) {
    return m == Mode::exact ? exact(v) : real(static_cast<double>(v));
}

Scalar Scalar::parse(const std::string& text, Mode m) {
    if (text.empty()) throw ParseError("empty scalar literal");
    if (m == Mode::exact) {
        mpq_class q;
        if (q.set_str(text, 10) != 0)
            throw ParseError("not a rational literal: \"" + text + "\"");
        if (q.get_den() == 0) throw ValidationError("rational with zero denominator: \"" + text + "\"");
        q.canonicalize();
        return Scalar(std::move(q));
    }
    char* end = nullptr;
    double d = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        throw ParseError("not a float literal: \"" + text + "\"");
    return real(d);
}

const mpq_class& Scalar::rat() const {
    if (!is_exact()) throw ModeMismatchError();
    return std::get<mpq_class>(v_);
}

double Scalar::dbl() const {
    if (is_exact()) throw ModeMismatchError();
    return std::get<double>(v_);
}

double Scalar::to_double() const {
    return is_exact() ? std::get<mpq_class>(v_).get_d() : std::get<double>(v_);
}

std::string Scalar::str() const {
    if (is_exact()) return std::get<mpq_class>(v_).get_str();
    double d = std::get<double>(v_);
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, d);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, p);
}

bool Scalar::is_zero() const {
    return is_exact() ? sgn() == 0 : std::get<double>(v_) == 0.0;
}

int Scalar::sgn() const {
    if (is_exact()) return ::sgn(std::get<mpq_class>(v_));
    double d = std::get<double>(v_);
    return d > 0 ? 1 : d < 0 ? -1 : 0;
}

bool Scalar::finite() const {
    return is_exact() || std::isfinite(std::get<double>(v_));
}

Scalar Scalar::abs() const {
    if (is_exact()) return Scalar(mpq_class(::abs(std::get<mpq_class>(v_))));
    return Scalar(std::fabs(std::get<double>(v_)));
}

Scalar Scalar::operator-() const {
    if (is_exact()) return Scalar(mpq_class(-std::get<mpq_class>(v_)));
    return Scalar(-std::get<double>(v_));
}

void Scalar::require_same_mode(const Scalar& a, const Scalar& b) {
    if (a.mode() != b.mode()) throw ModeMismatchError();
}

Scalar& Scalar::operator+=(const Scalar& o) {
    require_same_mode(*this, o);
    if (is_exact()) std::get<mpq_class>(v_) += std::get<mpq_class>(o.v_);
    else std::get<double>(v_) += std::get<double>(o.v_);
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    require_same_mode(*this, o);
    if (is_exact()) std::get<mpq_class>(v_) -= std::get<mpq_class>(o.v_);
    else std::get<double>(v_) -= std::get<double>(o.v_);
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    require_same_mode(*this, o);
    if (is_exact()) std::get<mpq_class>(v_) *= std::get<mpq_class>(o.v_);
    else std::get<double>(v_) *= std::get<double>(o.v_);
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    require_same_mode(*this, o);
    if (is_exact()) {
        if (o.is_zero()) throw ComputeError("exact division by zero");
        std::get<mpq_class>(v_) /= std::get<mpq_class>(o.v_);
    } else {
        std::get<double>(v_) /= std::get<double>(o.v_);
    }
    return *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
    Scalar::require_same_mode(a, b);
    if (a.is_exact()) return std::get<mpq_class>(a.v_) == std::get<mpq_class>(b.v_);
    return std::get<double>(a.v_) == std::get<double>(b.v_);
}

bool operator<(const Scalar& a, const Scalar& b) {
    Scalar::require_same_mode(a, b);
    if (a.is_exact()) return std::get<mpq_class>(a.v_) < std::get<mpq_class>(b.v_);
    return std::get<double>(a.v_) < std::get<double>(b.v_);
}

bool operator<=(const Scalar& a, const Scalar& b) {
    Scalar::require_same_mode(a, b);
    if (a.is_exact()) return std::get<mpq_class>(a.v_) <= std::get<mpq_class>(b.v_);
    return std::get<double>(a.v_) <= std::get<double>(b.v_);
}

bool within(const Scalar& a, const Scalar& b, const Scalar& tol) {
    return (a - b).abs() <= tol;
}

bool exceeds(const Scalar& v, const Scalar& bound) {
    // NaN compares false against everything, so the negation catches it too.
    return !(v.abs() <= bound);
}

Scalar pow_scalar(const Scalar& base, long e) {
    if (base.mode() == Mode::floating)
        return Scalar::real(std::pow(base.dbl(), static_cast<double>(e)));
    if (e == 0) return Scalar::exact(1);
    bool inv = e < 0;
    unsigned long ue = static_cast<unsigned long>(inv ? -e : e);
    const mpq_class& q = base.rat();
    if (inv && q == 0) throw ComputeError("zero base with negative exponent");
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), q.get_num().get_mpz_t(), ue);
    mpz_pow_ui(den.get_mpz_t(), q.get_den().get_mpz_t(), ue);
    mpq_class r = inv ? mpq_class(den, num) : mpq_class(num, den);
    r.canonicalize();
    return Scalar::exact(std::move(r));
}

} // namespace nqd
