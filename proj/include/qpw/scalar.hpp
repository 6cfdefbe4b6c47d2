#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qpw {

using Rational = mpq_class;

/// Dense univariate polynomial in t over Q, coefficients stored low to high.
class Poly {
public:
    Poly() = default;
    explicit Poly(const Rational& c);
    explicit Poly(std::vector<Rational> coeffs);
    static Poly t();

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const Rational& lead() const { return c_.back(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(int i) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly scaled(const Rational& s) const;
    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    void divmod(const Poly& d, Poly& q, Poly& r) const;
    Poly monic() const;
    static Poly gcd(Poly a, Poly b);

    Rational eval(const Rational& x) const;
    std::string str() const;
    /// Distinct rational roots, ascending.
    std::vector<Rational> rational_roots() const;

private:
    void trim();
    std::vector<Rational> c_;
};

/// Reduced quotient num/den with den monic.
struct RatFunc {
    Poly num;
    Poly den;
};

/// Element of Q or Q(t). Constants avoid the rational-function path entirely.
class Scalar {
public:
    Scalar() : q_(0) {}
    Scalar(long v) : q_(v) {}
    Scalar(int v) : q_(v) {}
    Scalar(const Rational& v) : q_(v) { q_.canonicalize(); }
    static Scalar from_ratfunc(const Poly& num, const Poly& den);
    static Scalar t();
    static Scalar parse(const std::string& text);

    bool is_rational() const { return !f_; }
    bool is_zero() const { return !f_ && q_ == 0; }
    bool is_one() const { return !f_ && q_ == 1; }
    const Rational& rational() const { return q_; }
    Poly numerator() const;
    Poly denominator() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator-() const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar pow(int e) const;
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// Value at t = x, or nullopt when x is a pole.
    std::optional<Rational> eval(const Rational& x) const;
    /// Canonical text: "p/q" for constants, "(num)/den" otherwise.
    std::string str() const;

private:
    Rational q_;
    std::shared_ptr<const RatFunc> f_;
};

/// Exact k-th root of a rational if it exists.
std::optional<Rational> rational_root(const Rational& x, long k);

} // namespace qpw
