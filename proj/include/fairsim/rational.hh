#ifndef FAIRSIM_RATIONAL_HH
#define FAIRSIM_RATIONAL_HH

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace fairsim {

// Exact rational with canonical representation (reduced, positive
// denominator). All probability computation in the toolkit goes through
// this type; there is no floating point on any verdict path.
class Rational {
public:
    Rational() : v_(0) {}

    Rational(long num, long den = 1) : v_(num, den) { v_.canonicalize(); }

    static Rational zero() { return Rational(); }
    static Rational one() { return Rational(1); }

    // Accepts "p", "-p" and "p/q" with arbitrary-precision digits.
    static std::optional<Rational> parse(std::string_view text);

    std::string str() const { return v_.get_str(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool in_unit_interval() const { return sgn(v_) >= 0 && v_ <= 1; }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) { v_ /= o.v_; return *this; }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { Rational r; r.v_ = -a.v_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    static Rational pow2(int exponent); // 2^exponent, exponent may be negative

private:
    mpq_class v_;
};

} // namespace fairsim

#endif
