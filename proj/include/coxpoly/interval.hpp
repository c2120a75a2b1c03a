#pragma once

#include <mpfr.h>

#include "coxpoly/poly.hpp"

namespace coxpoly {

// Closed interval with MPFR endpoints and outward rounding.
class Interval {
public:
    explicit Interval(mpfr_prec_t prec = 64);
    Interval(const Rational& q, mpfr_prec_t prec);
    Interval(const Interval& o);
    Interval(Interval&& o) noexcept;
    Interval& operator=(Interval o) noexcept;
    ~Interval();

    // Encloses 2 cos(2 pi / n).
    static Interval two_cos_2pi_over(int n, mpfr_prec_t prec);

    Interval operator+(const Interval& o) const;
    Interval operator-(const Interval& o) const;
    Interval operator-() const;
    Interval operator*(const Interval& o) const;
    Interval sqrt() const;

    // +1 / -1 when the interval excludes zero, 0 otherwise.
    int certain_sign() const;
    double mid() const;
    double width() const;
    mpfr_prec_t prec() const { return mpfr_get_prec(lo_); }
    const mpfr_t& lo() const { return lo_; }
    const mpfr_t& hi() const { return hi_; }

private:
    void swap(Interval& o) noexcept;
    mpfr_t lo_, hi_;
};

}  // namespace coxpoly
