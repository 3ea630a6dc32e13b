#include "semiample/arith.hpp"

#include "semiample/errors.hpp"
#include "semiample/matrix.hpp"

#include <climits>

namespace semiample {

std::string to_string(const Integer& x) { return x.get_str(); }

std::string to_string(const Rational& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational parse_rational(const std::string& s) {
    auto valid_int = [](const std::string& t, bool allow_sign) {
        if (t.empty()) return false;
        std::size_t i = 0;
        if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false))
        throw ValidationError("not a rational number: '" + s + "'");
    if (num[0] == '+') num = num.substr(1);
    Integer d(den);
    if (d == 0) throw ValidationError("zero denominator: '" + s + "'");
    Rational r(Integer(num), d);
    r.canonicalize();
    return r;
}

Integer floor_of(const Rational& x) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

Integer ceil_of(const Rational& x) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

bool is_integral(const RationalVector& v) {
    for (const auto& x : v)
        if (x.get_den() != 1) return false;
    return true;
}

LatticeVector to_lattice(const RationalVector& v) {
    LatticeVector r;
    r.reserve(v.size());
    for (const auto& x : v) {
        if (x.get_den() != 1) throw InconsistencyError("expected an integral vector");
        r.push_back(x.get_num());
    }
    return r;
}

RationalVector to_rational(const LatticeVector& v) {
    return RationalVector(v.begin(), v.end());
}

Integer common_denominator(const RationalVector& v) {
    Integer l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    return l;
}

long to_long(const Integer& x) {
    if (!x.fits_slong_p()) throw ValidationError("integer out of range: " + x.get_str());
    return x.get_si();
}

RationalMatrix to_rational(const IntegerMatrix& m) {
    RationalMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
    return r;
}

}  // namespace semiample
