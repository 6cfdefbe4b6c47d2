#include "qpw/scalar.hpp"

#include "qpw/errors.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace qpw {

Poly::Poly(const Rational& c) {
    if (c != 0) c_.push_back(c);
}

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::t() { return Poly(std::vector<Rational>{0, 1}); }

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Poly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
    return c_[i];
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return Poly(std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<Rational> r(c_.size() + o.c_.size() - 1);
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(r));
}

Poly Poly::scaled(const Rational& s) const {
    if (s == 0) return Poly();
    Poly r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
}

void Poly::divmod(const Poly& d, Poly& q, Poly& r) const {
    if (d.is_zero()) fail("DivisionByZero", "polynomial division by zero");
    r = *this;
    std::vector<Rational> qc(std::max(0, degree() - d.degree() + 1));
    while (!r.is_zero() && r.degree() >= d.degree()) {
        int shift = r.degree() - d.degree();
        Rational f = r.lead() / d.lead();
        qc[shift] = f;
        std::vector<Rational> sub(shift + d.c_.size());
        for (size_t i = 0; i < d.c_.size(); ++i) sub[shift + i] = d.c_[i] * f;
        r = r - Poly(std::move(sub));
    }
    q = Poly(std::move(qc));
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return scaled(Rational(1) / lead());
}

Poly Poly::gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly q, r;
        a.divmod(b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Rational Poly::eval(const Rational& x) const {
    Rational acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

std::string Poly::str() const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        const Rational& a = c_[i];
        if (a == 0) continue;
        Rational mag = abs(a);
        bool neg = a < 0;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? "-" : "+";
        }
        bool unit = (mag == 1);
        if (i == 0) {
            out += mag.get_str();
        } else {
            if (!unit) out += mag.get_str() + "*";
            out += "t";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

namespace {

std::vector<mpz_class> divisors(mpz_class n) {
    n = abs(n);
    std::vector<std::pair<mpz_class, int>> fac;
    for (mpz_class p = 2; p * p <= n && p < 200000; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) fac.push_back({p, e});
    }
    if (n > 1) fac.push_back({n, 1});
    std::vector<mpz_class> out{1};
    for (auto& [p, e] : fac) {
        size_t base = out.size();
        mpz_class pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    return out;
}

} // namespace

std::vector<Rational> Poly::rational_roots() const {
    std::set<Rational> roots;
    if (is_zero()) return {};
    std::vector<Rational> cs = c_;
    size_t low = 0;
    while (low < cs.size() && cs[low] == 0) ++low;
    if (low > 0) roots.insert(0);
    cs.erase(cs.begin(), cs.begin() + low);
    if (cs.size() > 1) {
        mpz_class l = 1;
        for (auto& x : cs) l = lcm(l, x.get_den());
        std::vector<mpz_class> ic;
        for (auto& x : cs) ic.push_back(mpz_class(x * l));
        Poly reduced(cs);
        for (auto& p : divisors(ic.front()))
            for (auto& q : divisors(ic.back()))
                for (int sgn : {1, -1}) {
                    Rational cand(p * sgn, q);
                    cand.canonicalize();
                    if (reduced.eval(cand) == 0) roots.insert(cand);
                }
    }
    return {roots.begin(), roots.end()};
}

Scalar Scalar::from_ratfunc(const Poly& num, const Poly& den) {
    if (den.is_zero()) fail("DivisionByZero", "zero denominator");
    if (num.is_zero()) return Scalar();
    Poly g = Poly::gcd(num, den);
    Poly n, d, r;
    num.divmod(g, n, r);
    den.divmod(g, d, r);
    Rational s = d.lead();
    n = n.scaled(Rational(1) / s);
    d = d.scaled(Rational(1) / s);
    if (d.degree() == 0 && n.degree() == 0) return Scalar(n.coeff(0));
    Scalar out;
    out.f_ = std::make_shared<const RatFunc>(RatFunc{n, d});
    return out;
}

Scalar Scalar::t() { return from_ratfunc(Poly::t(), Poly(Rational(1))); }

Poly Scalar::numerator() const { return f_ ? f_->num : Poly(q_); }

Poly Scalar::denominator() const { return f_ ? f_->den : Poly(Rational(1)); }

Scalar Scalar::operator+(const Scalar& o) const {
    if (!f_ && !o.f_) return Scalar(Rational(q_ + o.q_));
    return from_ratfunc(numerator() * o.denominator() + o.numerator() * denominator(),
                        denominator() * o.denominator());
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
    if (!f_) return Scalar(Rational(-q_));
    Scalar out;
    out.f_ = std::make_shared<const RatFunc>(RatFunc{-f_->num, f_->den});
    return out;
}

Scalar Scalar::operator*(const Scalar& o) const {
    if (!f_ && !o.f_) return Scalar(Rational(q_ * o.q_));
    if (is_zero() || o.is_zero()) return Scalar();
    return from_ratfunc(numerator() * o.numerator(), denominator() * o.denominator());
}

Scalar Scalar::operator/(const Scalar& o) const {
    if (o.is_zero()) fail("DivisionByZero", "scalar division by zero");
    if (!f_ && !o.f_) return Scalar(Rational(q_ / o.q_));
    return from_ratfunc(numerator() * o.denominator(), denominator() * o.numerator());
}

Scalar Scalar::pow(int e) const {
    if (e < 0) return Scalar(1) / pow(-e);
    Scalar acc(1), base = *this;
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

bool Scalar::operator==(const Scalar& o) const {
    if (!f_ && !o.f_) return q_ == o.q_;
    if (!f_ || !o.f_) return false;
    return f_->num == o.f_->num && f_->den == o.f_->den;
}

std::optional<Rational> Scalar::eval(const Rational& x) const {
    if (!f_) return q_;
    Rational d = f_->den.eval(x);
    if (d == 0) return std::nullopt;
    return Rational(f_->num.eval(x) / d);
}

std::string Scalar::str() const {
    if (!f_) return q_.get_str();
    std::string den = f_->den.str();
    bool single = std::count(den.begin() + 1, den.end(), '+') + std::count(den.begin() + 1, den.end(), '-') == 0;
    return "(" + f_->num.str() + ")/" + (single ? den : "(" + den + ")");
}

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    Scalar run() {
        Scalar v = expr();
        skip();
        if (pos_ != s_.size()) bad();
        return v;
    }

private:
    [[noreturn]] void bad() { fail("ParseError", "cannot parse scalar '" + s_ + "'"); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Scalar expr() {
        Scalar v = term();
        for (;;) {
            if (eat('+'))
                v += term();
            else if (eat('-'))
                v -= term();
            else
                return v;
        }
    }

    Scalar term() {
        Scalar v = unary();
        for (;;) {
            if (eat('*'))
                v *= unary();
            else if (eat('/'))
                v = v / unary();
            else
                return v;
        }
    }

    Scalar unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        Scalar base = atom();
        if (eat('^')) {
            skip();
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) bad();
            base = base.pow(std::stoi(s_.substr(start, pos_ - start)));
        }
        return base;
    }

    Scalar atom() {
        skip();
        if (eat('(')) {
            Scalar v = expr();
            if (!eat(')')) bad();
            return v;
        }
        if (pos_ < s_.size() && s_[pos_] == 't') {
            ++pos_;
            return Scalar::t();
        }
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) bad();
        return Scalar(Rational(mpz_class(s_.substr(start, pos_ - start))));
    }

    const std::string& s_;
    size_t pos_ = 0;
};

} // namespace

Scalar Scalar::parse(const std::string& text) { return Parser(text).run(); }

std::optional<Rational> rational_root(const Rational& x, long k) {
    if (k <= 0) return std::nullopt;
    if (k == 1) return x;
    if (x < 0 && k % 2 == 0) return std::nullopt;
    mpz_class n = abs(x.get_num()), d = x.get_den(), rn, rd;
    if (!mpz_root(rn.get_mpz_t(), n.get_mpz_t(), k)) return std::nullopt;
    if (!mpz_root(rd.get_mpz_t(), d.get_mpz_t(), k)) return std::nullopt;
    Rational r(rn, rd);
    r.canonicalize();
    if (x < 0) r = -r;
    return r;
}

} // namespace qpw
