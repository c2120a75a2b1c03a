#include "coxpoly/interval.hpp"

#include <algorithm>
#include <utility>

namespace coxpoly {

Interval::Interval(mpfr_prec_t prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Rational& q, mpfr_prec_t prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_q(lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, q.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Interval& o) {
    mpfr_init2(lo_, mpfr_get_prec(o.lo_));
    mpfr_init2(hi_, mpfr_get_prec(o.hi_));
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept : Interval(mpfr_get_prec(o.lo_)) { swap(o); }

Interval& Interval::operator=(Interval o) noexcept {
    swap(o);
    return *this;
}

Interval::~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

void Interval::swap(Interval& o) noexcept {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

Interval Interval::two_cos_2pi_over(int n, mpfr_prec_t prec) {
    Interval r(prec);
    if (n <= 2) {
        mpfr_set_si(r.lo_, n == 1 ? 2 : -2, MPFR_RNDD);
        mpfr_set_si(r.hi_, n == 1 ? 2 : -2, MPFR_RNDU);
        return r;
    }
    // t = 2 pi / n lies in (0, pi) and cos is decreasing there.
    mpfr_t tlo, thi;
    mpfr_init2(tlo, prec + 16);
    mpfr_init2(thi, prec + 16);
    mpfr_const_pi(tlo, MPFR_RNDD);
    mpfr_const_pi(thi, MPFR_RNDU);
    mpfr_mul_ui(tlo, tlo, 2, MPFR_RNDD);
    mpfr_mul_ui(thi, thi, 2, MPFR_RNDU);
    mpfr_div_ui(tlo, tlo, n, MPFR_RNDD);
    mpfr_div_ui(thi, thi, n, MPFR_RNDU);
    mpfr_cos(r.lo_, thi, MPFR_RNDD);
    mpfr_cos(r.hi_, tlo, MPFR_RNDU);
    mpfr_mul_ui(r.lo_, r.lo_, 2, MPFR_RNDD);
    mpfr_mul_ui(r.hi_, r.hi_, 2, MPFR_RNDU);
    mpfr_clear(tlo);
    mpfr_clear(thi);
    return r;
}

Interval Interval::operator+(const Interval& o) const {
    Interval r(std::max(prec(), o.prec()));
    mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::operator-(const Interval& o) const {
    Interval r(std::max(prec(), o.prec()));
    mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
    return r;
}

Interval Interval::operator-() const {
    Interval r(prec());
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

Interval Interval::operator*(const Interval& o) const {
    mpfr_prec_t p = std::max(prec(), o.prec());
    Interval r(p);
    mpfr_t t;
    mpfr_init2(t, p);
    const mpfr_t* a[2] = {&lo_, &hi_};
    const mpfr_t* b[2] = {&o.lo_, &o.hi_};
    bool first = true;
    for (auto x : a)
        for (auto y : b) {
            mpfr_mul(t, *x, *y, MPFR_RNDD);
            if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
            mpfr_mul(t, *x, *y, MPFR_RNDU);
            if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(t);
    return r;
}

Interval Interval::sqrt() const {
    Interval r(prec());
    if (mpfr_sgn(lo_) <= 0) mpfr_set_zero(r.lo_, 1);
    else mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    if (mpfr_sgn(hi_) <= 0) mpfr_set_zero(r.hi_, 1);
    else mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    return r;
}

int Interval::certain_sign() const {
    if (mpfr_sgn(lo_) > 0) return 1;
    if (mpfr_sgn(hi_) < 0) return -1;
    return 0;
}

double Interval::mid() const {
    return 0.5 * (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN));
}

double Interval::width() const {
    return mpfr_get_d(hi_, MPFR_RNDU) - mpfr_get_d(lo_, MPFR_RNDD);
}

}  // namespace coxpoly
