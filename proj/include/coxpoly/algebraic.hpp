#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coxpoly/field.hpp"

namespace coxpoly {

// Exact real algebraic number. Values live in a real cyclotomic field extended by
// square roots; the minimal polynomial and an isolating interval are derived on demand.
class AlgebraicReal {
public:
    AlgebraicReal();
    AlgebraicReal(long v);  // NOLINT(google-explicit-constructor)
    AlgebraicReal(const Rational& q);  // NOLINT(google-explicit-constructor)

    static AlgebraicReal from_rational(const Rational& q) { return AlgebraicReal(q); }
    // cos(pi/m); throws std::domain_error for m < 2.
    static AlgebraicReal cos_pi_over(int m);
    // 2cos(2 pi k / n) as a field element.
    static AlgebraicReal two_cos(int k, int n);

    AlgebraicReal operator+(const AlgebraicReal& o) const;
    AlgebraicReal operator-(const AlgebraicReal& o) const;
    AlgebraicReal operator*(const AlgebraicReal& o) const;
    // Throws std::domain_error on division by zero.
    AlgebraicReal operator/(const AlgebraicReal& o) const;
    AlgebraicReal operator-() const;
    AlgebraicReal& operator+=(const AlgebraicReal& o) { return *this = *this + o; }
    AlgebraicReal& operator-=(const AlgebraicReal& o) { return *this = *this - o; }
    AlgebraicReal& operator*=(const AlgebraicReal& o) { return *this = *this * o; }
    AlgebraicReal& operator/=(const AlgebraicReal& o) { return *this = *this / o; }
    AlgebraicReal inverse() const;
    // Throws std::domain_error when negative.
    AlgebraicReal sqrt_nonneg() const;

    int sign() const;
    bool is_zero() const;
    int compare(const AlgebraicReal& o) const;
    bool operator==(const AlgebraicReal& o) const { return compare(o) == 0; }
    bool operator!=(const AlgebraicReal& o) const { return compare(o) != 0; }
    bool operator<(const AlgebraicReal& o) const { return compare(o) < 0; }
    bool operator>(const AlgebraicReal& o) const { return compare(o) > 0; }
    bool operator<=(const AlgebraicReal& o) const { return compare(o) <= 0; }
    bool operator>=(const AlgebraicReal& o) const { return compare(o) >= 0; }

    bool is_rational() const;
    // Throws std::domain_error if the value is irrational.
    Rational to_rational() const;
    double to_double() const;
    Interval enclose(mpfr_prec_t prec) const { return field_->enclose(c_, prec); }
    // Display only, never used for decisions.
    std::string decimal(int digits = 12) const;

    // Primitive squarefree integer polynomial (positive leading coefficient) vanishing here.
    std::vector<Integer> minpoly() const;
    // Rational interval containing this value and no other root of minpoly().
    std::pair<Rational, Rational> isolating_interval() const;

    // Exact expression in the input grammar.
    std::string to_expr() const;

    const Field* field() const { return field_; }
    const Coeffs& coeffs() const { return c_; }
    AlgebraicReal(const Field* f, Coeffs c) : field_(f), c_(std::move(c)) {}
    // Re-expresses both values over a common field.
    static std::pair<AlgebraicReal, AlgebraicReal> unify(const AlgebraicReal& a, const AlgebraicReal& b);
    AlgebraicReal lifted_to(const Field* f, const std::vector<int>& level_map) const;

private:
    const Field* field_;
    Coeffs c_;
};

std::ostream& operator<<(std::ostream& os, const AlgebraicReal& a);

// Real roots of a x^2 + b x + c with multiplicity, ascending. Throws if all zero.
std::vector<AlgebraicReal> solve_quadratic(const AlgebraicReal& a, const AlgebraicReal& b, const AlgebraicReal& c);

// The unique m in [2, m_max] with x = cos(pi/m), if any.
std::optional<int> recognize_cos_pi(const AlgebraicReal& x, int m_max);

// Brings every value to one common field (used before matrix elimination).
void unify_all(std::vector<AlgebraicReal*> values);

}  // namespace coxpoly
