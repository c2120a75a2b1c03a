#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace coxpoly {

using Rational = mpq_class;
using Integer = mpz_class;

// Canonicalized fraction.
inline Rational make_q(const Integer& num, const Integer& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Dense univariate polynomial over Q, coefficient i belongs to x^i.
// Always trimmed: no trailing zero coefficients; zero polynomial is empty.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<Rational> c);
    static QPoly constant(const Rational& c);
    static QPoly monomial(int k, const Rational& c = 1);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(int i) const;
    const Rational& lead() const { return c_.back(); }

    QPoly operator+(const QPoly& o) const;
    QPoly operator-(const QPoly& o) const;
    QPoly operator-() const;
    QPoly operator*(const QPoly& o) const;
    QPoly operator*(const Rational& s) const;
    bool operator==(const QPoly& o) const { return c_ == o.c_; }

    // Euclidean division; divisor must be nonzero.
    std::pair<QPoly, QPoly> divmod(const QPoly& d) const;
    QPoly mod(const QPoly& d) const { return divmod(d).second; }
    QPoly derivative() const;
    QPoly monic() const;

    Rational eval(const Rational& x) const;
    int sign_at(const Rational& x) const { return sgn(eval(x)); }

    // Integer coefficients, content 1, positive leading coefficient.
    std::vector<Integer> primitive() const;
    std::string to_string(const char* var = "x") const;

private:
    void trim();
    std::vector<Rational> c_;
};

QPoly gcd(QPoly a, QPoly b);
// Returns (g, s) with s*a = g mod m, g = gcd(a, m) monic.
std::pair<QPoly, QPoly> gcd_cofactor(const QPoly& a, const QPoly& m);
QPoly squarefree_part(const QPoly& p);

// Sturm sequence of a squarefree polynomial.
std::vector<QPoly> sturm_sequence(const QPoly& p);
// Number of distinct real roots in (lo, hi].
int sturm_count(const std::vector<QPoly>& seq, const Rational& lo, const Rational& hi);

// Cyclotomic polynomial Phi_N (integer coefficients, monic).
const QPoly& cyclotomic(int n);
// Minimal polynomial of 2cos(2 pi / N).
const QPoly& real_cyclotomic(int n);
// D_k with z^k + z^-k = D_k(z + 1/z).
const QPoly& dickson(int k);

}  // namespace coxpoly
