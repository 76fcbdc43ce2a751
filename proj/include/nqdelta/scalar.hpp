#pragma once

#include <gmpxx.h>

#include <string>
#include <variant>

#include "nqdelta/types.hpp"

namespace nqd {

/// A number in one of two modes: exact rational (GMP mpq) or IEEE double.
/// All arithmetic requires both operands in the same mode; mixing throws
/// ModeMismatchError instead of coercing.
class Scalar {
public:
    Scalar() : v_(mpq_class(0)) {}

    static Scalar exact(long num, long den = 1);
    static Scalar exact(mpq_class v);
    static Scalar real(double v) { return Scalar(v); }
    static Scalar zero(Mode m) { return from_int(0, m); }
    static Scalar one(Mode m) { return from_int(1, m); }
    static Scalar from_int(long v, Mode m);

    /// Parses "p/q", "p", or (float mode only) any decimal/exponent literal.
    static Scalar parse(const std::string& text, Mode m);

    Mode mode() const { return std::holds_alternative<mpq_class>(v_) ? Mode::exact : Mode::floating; }
    bool is_exact() const { return mode() == Mode::exact; }

    const mpq_class& rat() const;
    double dbl() const;

    /// Lossy conversion for display and float-mode interop.
    double to_double() const;

    /// Canonical text: exact -> "p" or "p/q"; float -> shortest round-trip decimal.
    std::string str() const;

    bool is_zero() const;
    int sgn() const;
    /// True for every exact value; false for float NaN/inf.
    bool finite() const;
    Scalar abs() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    friend bool operator<(const Scalar& a, const Scalar& b);
    friend bool operator<=(const Scalar& a, const Scalar& b);
    friend bool operator>(const Scalar& a, const Scalar& b) { return b < a; }
    friend bool operator>=(const Scalar& a, const Scalar& b) { return b <= a; }

private:
    explicit Scalar(mpq_class q) : v_(std::move(q)) {}
    explicit Scalar(double d) : v_(d) {}
    static void require_same_mode(const Scalar& a, const Scalar& b);

    std::variant<mpq_class, double> v_;
};

inline const Scalar& max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }
inline const Scalar& min(const Scalar& a, const Scalar& b) { return b < a ? b : a; }

/// |a - b| <= tol, in the operands' shared mode.
bool within(const Scalar& a, const Scalar& b, const Scalar& tol);

/// True when v escaped the bound: |v| > bound, or v is non-finite (float mode).
bool exceeds(const Scalar& v, const Scalar& bound);

/// base^e with integer exponent (e may be negative; base must be nonzero then).
Scalar pow_scalar(const Scalar& base, long e);

} // namespace nqd
