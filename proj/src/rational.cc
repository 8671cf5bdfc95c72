#include "fairsim/rational.hh"

#include <cctype>

namespace fairsim {

std::optional<Rational> Rational::parse(std::string_view text) {
    if (text.empty()) return std::nullopt;
    std::string num, den = "1";
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        num = std::string(text);
    } else {
        num = std::string(text.substr(0, slash));
        den = std::string(text.substr(slash + 1));
    }
    auto digits_ok = [](const std::string& s, bool sign_ok) {
        if (s.empty()) return false;
        std::size_t i = 0;
        if (sign_ok && (s[0] == '-' || s[0] == '+')) i = 1;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    if (!digits_ok(num, true) || !digits_ok(den, false)) return std::nullopt;
    mpz_class n(num), d(den);
    if (sgn(d) == 0) return std::nullopt;
    Rational r;
    r.v_ = mpq_class(n, d);
    r.v_.canonicalize();
    return r;
}

Rational Rational::pow2(int exponent) {
    mpz_class p = 1;
    p <<= (exponent < 0 ? -exponent : exponent);
    Rational r;
    r.v_ = exponent >= 0 ? mpq_class(p, 1) : mpq_class(1, p);
    r.v_.canonicalize();
    return r;
}

} // namespace fairsim
