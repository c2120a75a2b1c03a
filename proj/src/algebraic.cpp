#include "coxpoly/algebraic.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace coxpoly {

namespace {

// Rational value of 2cos(2 pi k / n) when that field is Q.
Rational rational_two_cos(int k, int n) {
    const QPoly& psi = real_cyclotomic(n);
    Rational x = -psi.coeff(0) / psi.coeff(1);
    return dickson(k).eval(x);
}

long totient(long n) {
    long r = n;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            r -= r / p;
        }
    if (n > 1) r -= r / n;
    return r;
}

int legendre(long a, long p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) return 0;
    long r = 1, e = (p - 1) / 2, b = a;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r == 1 ? 1 : -1;
}

// sqrt(p) for p = 2 or an odd prime, as an element of a real cyclotomic field (Gauss sums).
AlgebraicReal sqrt_prime(long p) {
    if (p == 2) return AlgebraicReal::two_cos(1, 8);
    AlgebraicReal s = 0;
    if (p % 4 == 1) {
        for (long k = 1; k < p; ++k) s += AlgebraicReal::two_cos(k, p) * make_q(legendre(k, p), 2);
    } else {
        long n = 4 * p;
        for (long k = 1; k < p; ++k) {
            long e = ((4 * k - p) % n + n) % n;
            s += AlgebraicReal::two_cos(e, n) * make_q(legendre(k, p), 2);
        }
    }
    return s;
}

// Factor a positive integer's squarefree kernel into primes if it is small enough.
bool small_squarefree(Integer v, Integer& square_root_part, std::vector<long>& primes) {
    square_root_part = 1;
    primes.clear();
    for (long p = 2; p <= 97 && v > 1; ++p) {
        int e = 0;
        while (mpz_divisible_ui_p(v.get_mpz_t(), p)) {
            v /= p;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i) square_root_part *= p;
        if (e % 2) primes.push_back(p);
    }
    if (v != 1) {
        if (mpz_perfect_square_p(v.get_mpz_t())) {
            Integer r;
            mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
            square_root_part *= r;
        } else {
            return false;
        }
    }
    long q = std::accumulate(primes.begin(), primes.end(), 1L, std::multiplies<long>());
    return totient(4 * q) / 2 <= 16;
}

}  // namespace

AlgebraicReal::AlgebraicReal() : field_(Field::rationals()), c_{Rational(0)} {}
AlgebraicReal::AlgebraicReal(long v) : field_(Field::rationals()), c_{Rational(v)} {}
AlgebraicReal::AlgebraicReal(const Rational& q) : field_(Field::rationals()), c_{q} {}

AlgebraicReal AlgebraicReal::two_cos(int k, int n) {
    if (n < 1) throw std::domain_error("two_cos: index must be positive");
    const Field* f = Field::cyclotomic(n);
    if (f->deg() == 1) return AlgebraicReal(rational_two_cos(k, n));
    QPoly r = dickson(((k % n) + n) % n).mod(f->modulus());
    Coeffs c(f->dim());
    for (int i = 0; i <= r.degree(); ++i) c[i] = r.coeff(i);
    return AlgebraicReal(f, std::move(c));
}

AlgebraicReal AlgebraicReal::cos_pi_over(int m) {
    if (m < 2) throw std::domain_error("cos_pi_over requires m >= 2");
    static std::mutex mu;
    static std::map<int, AlgebraicReal> cache;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(m);
        if (it != cache.end()) return it->second;
    }
    AlgebraicReal v = two_cos(1, 2 * m) * Rational(1, 2);
    std::lock_guard<std::mutex> lk(mu);
    return cache.emplace(m, v).first->second;
}

AlgebraicReal AlgebraicReal::lifted_to(const Field* f, const std::vector<int>& level_map) const {
    if (f == field_) return *this;
    return AlgebraicReal(f, embed(field_, f, level_map, c_));
}

std::pair<AlgebraicReal, AlgebraicReal> AlgebraicReal::unify(const AlgebraicReal& a, const AlgebraicReal& b) {
    if (a.field_ == b.field_) return {a, b};
    FieldMerge m = merge_fields(a.field_, b.field_);
    return {a.lifted_to(m.field, m.map_a), b.lifted_to(m.field, m.map_b)};
}

void unify_all(std::vector<AlgebraicReal*> values) {
    if (values.empty()) return;
    const Field* f = values[0]->field();
    for (auto* v : values)
        if (v->field() != f) f = merge_fields(f, v->field()).field;
    // merge(f, v) is f itself once f holds every level of v.
    for (auto* v : values) {
        if (v->field() == f) continue;
        FieldMerge m = merge_fields(f, v->field());
        if (m.field != f) throw std::logic_error("field unification did not converge");
        *v = v->lifted_to(f, m.map_b);
    }
}

AlgebraicReal AlgebraicReal::operator+(const AlgebraicReal& o) const {
    if (field_ == o.field_) return AlgebraicReal(field_, field_->add(c_, o.c_));
    auto [a, b] = unify(*this, o);
    return a + b;
}

AlgebraicReal AlgebraicReal::operator-(const AlgebraicReal& o) const {
    if (field_ == o.field_) return AlgebraicReal(field_, field_->sub(c_, o.c_));
    auto [a, b] = unify(*this, o);
    return a - b;
}

AlgebraicReal AlgebraicReal::operator*(const AlgebraicReal& o) const {
    if (o.field_->dim() == 1) return AlgebraicReal(field_, field_->scale(c_, o.c_[0]));
    if (field_->dim() == 1) return AlgebraicReal(o.field_, o.field_->scale(o.c_, c_[0]));
    if (field_ == o.field_) return AlgebraicReal(field_, field_->mul(c_, o.c_));
    auto [a, b] = unify(*this, o);
    return a * b;
}

AlgebraicReal AlgebraicReal::inverse() const { return AlgebraicReal(field_, field_->inv(c_)); }

AlgebraicReal AlgebraicReal::operator/(const AlgebraicReal& o) const {
    if (o.field_->dim() == 1) {
        if (sgn(o.c_[0]) == 0) throw std::domain_error("division by zero");
        return AlgebraicReal(field_, field_->scale(c_, 1 / o.c_[0]));
    }
    return *this * o.inverse();
}

int AlgebraicReal::compare(const AlgebraicReal& o) const {
    if (field_ != o.field_) {
        // Separate cheaply before building a common field.
        Interval a = enclose(96), b = o.enclose(96);
        if (mpfr_less_p(a.hi(), b.lo())) return -1;
        if (mpfr_greater_p(a.lo(), b.hi())) return 1;
    }
    return (*this - o).sign();
}

AlgebraicReal AlgebraicReal::operator-() const { return AlgebraicReal(field_, field_->neg(c_)); }

int AlgebraicReal::sign() const { return field_->sign(c_); }
bool AlgebraicReal::is_zero() const { return field_->is_zero(c_); }

AlgebraicReal AlgebraicReal::sqrt_nonneg() const {
    int s = sign();
    if (s < 0) throw std::domain_error("sqrt of a negative number");
    if (s == 0) return AlgebraicReal(0);
    if (field_->is_rational(c_)) {
        const Rational& q = c_[0];
        Integer nd = q.get_num() * q.get_den();  // sqrt(a/b) = sqrt(ab)/b
        if (mpz_perfect_square_p(nd.get_mpz_t())) {
            Integer r;
            mpz_sqrt(r.get_mpz_t(), nd.get_mpz_t());
            return AlgebraicReal(make_q(r, q.get_den()));
        }
        Integer outer;
        std::vector<long> primes;
        if (small_squarefree(nd, outer, primes)) {
            AlgebraicReal v(make_q(outer, q.get_den()));
            for (long p : primes) v *= sqrt_prime(p);
            return v;
        }
    }
    auto [f, level] = field_->adjoin_sqrt(c_);
    Coeffs c(f->dim());
    c[(size_t(1) << level) * f->deg()] = 1;
    return AlgebraicReal(f, std::move(c));
}

bool AlgebraicReal::is_rational() const {
    if (field_->is_rational(c_)) return true;
    std::vector<Integer> p = minpoly();
    if (p.size() == 2) return true;
    // A rational root of a primitive polynomial has denominator dividing the leading coefficient.
    double scaled = enclose(128).mid() * p.back().get_d();
    if (std::fabs(scaled) > 1e15) return false;
    Rational guess = make_q(Integer(static_cast<long>(std::llround(scaled))), p.back());
    return (*this - AlgebraicReal(guess)).is_zero();
}

Rational AlgebraicReal::to_rational() const {
    if (field_->is_rational(c_)) return c_[0];
    if (!is_rational()) throw std::domain_error("value is irrational");
    std::vector<Integer> p = minpoly();
    if (p.size() == 2) return make_q(-p[0], p[1]);
    double v = enclose(128).mid();
    return make_q(Integer(static_cast<long>(std::llround(v * p.back().get_d()))), p.back());
}

double AlgebraicReal::to_double() const {
    for (mpfr_prec_t prec = 96;; prec *= 2) {
        Interval iv = enclose(prec);
        double m = iv.mid();
        if (iv.width() <= 1e-17 * std::max(1.0, std::fabs(m)) || prec > 4096) return m;
    }
}

std::string AlgebraicReal::decimal(int digits) const {
    if (is_zero()) return "0";
    for (mpfr_prec_t prec = 128;; prec *= 2) {
        Interval iv = enclose(prec);
        mpfr_t w, m;
        mpfr_init2(w, prec);
        mpfr_init2(m, prec);
        mpfr_sub(w, iv.hi(), iv.lo(), MPFR_RNDU);
        mpfr_add(m, iv.hi(), iv.lo(), MPFR_RNDN);
        mpfr_div_2ui(m, m, 1, MPFR_RNDN);
        bool tight = mpfr_zero_p(w) || mpfr_get_exp(w) < mpfr_get_exp(m) - 4 * (digits + 2);
        if (tight || prec > 8192) {
            char buf[128];
            mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, m);
            mpfr_clear(w);
            mpfr_clear(m);
            return buf;
        }
        mpfr_clear(w);
        mpfr_clear(m);
    }
}

std::vector<Integer> AlgebraicReal::minpoly() const {
    // Krylov iteration: first linear dependency among 1, a, a^2, ...
    size_t dim = field_->dim();
    struct Row {
        Coeffs v;
        std::vector<Rational> expr;
        size_t pivot;
    };
    std::vector<Row> rows;
    Coeffs power = field_->one();
    for (size_t k = 0; k <= dim; ++k) {
        Coeffs v = power;
        std::vector<Rational> expr(k + 1);
        expr[k] = 1;
        for (auto& r : rows) {
            if (sgn(v[r.pivot]) == 0) continue;
            Rational f = v[r.pivot] / r.v[r.pivot];
            for (size_t i = 0; i < dim; ++i)
                if (sgn(r.v[i]) != 0) v[i] -= f * r.v[i];
            for (size_t i = 0; i < r.expr.size(); ++i) expr[i] -= f * r.expr[i];
        }
        size_t piv = dim;
        for (size_t i = 0; i < dim; ++i)
            if (sgn(v[i]) != 0) {
                piv = i;
                break;
            }
        if (piv == dim) return QPoly(expr).primitive();
        rows.push_back({std::move(v), std::move(expr), piv});
        power = field_->mul(power, c_);
    }
    throw std::logic_error("minimal polynomial search overflowed the field dimension");
}

std::pair<Rational, Rational> AlgebraicReal::isolating_interval() const {
    std::vector<Integer> ip = minpoly();
    std::vector<Rational> qc(ip.begin(), ip.end());
    QPoly p(qc);
    if (p.degree() == 1) {
        Rational r = -p.coeff(0) / p.coeff(1);
        return {r, r};
    }
    auto seq = sturm_sequence(p);
    for (mpfr_prec_t prec = 64;; prec *= 2) {
        Interval iv = enclose(prec);
        Rational lo, hi;
        mpfr_get_q(lo.get_mpq_t(), iv.lo());
        mpfr_get_q(hi.get_mpq_t(), iv.hi());
        if (p.sign_at(lo) != 0 && sturm_count(seq, lo, hi) == 1) return {lo, hi};
        if (prec > (1 << 16)) throw std::runtime_error("root isolation did not converge");
    }
}

namespace {

std::string base_expr(int n, const Coeffs& c, size_t off, int deg) {
    // Power basis in x = 2cos(2pi/n); rewritten over cospi(n/2) when n is even.
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < deg; ++i) {
        Rational a = c[off + i];
        if (sgn(a) == 0) continue;
        std::string mono;
        if (i > 0) {
            if (n % 2 == 0) {
                a *= Rational(Integer(1) << i);
                for (int j = 0; j < i; ++j) mono += (j ? "*" : "") + std::string("cospi(") + std::to_string(n / 2) + ")";
            } else {
                std::string x = "(4*cospi(" + std::to_string(n) + ")*cospi(" + std::to_string(n) + ")-2)";
                for (int j = 0; j < i; ++j) mono += (j ? "*" : "") + x;
            }
        }
        bool neg = sgn(a) < 0;
        Rational m = abs(a);
        if (!first) os << (neg ? " - " : " + ");
        else if (neg) os << "-";
        first = false;
        if (mono.empty()) os << m;
        else if (m == 1) os << mono;
        else os << m << "*" << mono;
    }
    return first ? "0" : os.str();
}

bool block_zero(const Coeffs& c, size_t off, size_t len) {
    for (size_t i = off; i < off + len; ++i)
        if (sgn(c[i]) != 0) return false;
    return true;
}

std::string level_expr(const Field* f, int l, const Coeffs& c, size_t off) {
    if (l == 0) return base_expr(f->n(), c, off, f->deg());
    size_t h = size_t(f->deg()) << (l - 1);
    bool lo0 = block_zero(c, off, h), hi0 = block_zero(c, off + h, h);
    if (hi0) return level_expr(f, l - 1, c, off);
    std::string root = "sqrt(" + level_expr(f, l - 1, f->radicand(l - 1), 0) + ")";
    std::string hi = level_expr(f, l - 1, c, off + h);
    std::string term = hi == "1" ? root : "(" + hi + ")*" + root;
    if (lo0) return term;
    return "(" + level_expr(f, l - 1, c, off) + ") + " + term;
}

}  // namespace

std::string AlgebraicReal::to_expr() const { return level_expr(field_, field_->levels(), c_, 0); }

std::ostream& operator<<(std::ostream& os, const AlgebraicReal& a) { return os << a.to_expr(); }

std::vector<AlgebraicReal> solve_quadratic(const AlgebraicReal& a, const AlgebraicReal& b, const AlgebraicReal& c) {
    if (a.is_zero()) {
        if (b.is_zero()) {
            if (c.is_zero()) throw std::domain_error("quadratic is identically zero");
            return {};
        }
        return {-c / b};
    }
    AlgebraicReal disc = b * b - AlgebraicReal(4) * a * c;
    int s = disc.sign();
    if (s < 0) return {};
    AlgebraicReal two_a = a * AlgebraicReal(2);
    if (s == 0) {
        AlgebraicReal r = -b / two_a;
        return {r, r};
    }
    AlgebraicReal sq = disc.sqrt_nonneg();
    AlgebraicReal r1 = (-b - sq) / two_a, r2 = (-b + sq) / two_a;
    if (r1 > r2) std::swap(r1, r2);
    return {r1, r2};
}

std::optional<int> recognize_cos_pi(const AlgebraicReal& x, int m_max) {
    if (m_max < 2) throw std::domain_error("recognize_cos_pi requires m_max >= 2");
    if (x.sign() < 0 || x >= AlgebraicReal(1)) return std::nullopt;
    double v = x.to_double();
    double guess = M_PI / std::acos(std::min(1.0, std::max(-1.0, v)));
    long g = std::lround(guess);
    for (long m = std::max(2L, g - 1); m <= std::min<long>(m_max, g + 1); ++m)
        if (x == AlgebraicReal::cos_pi_over(static_cast<int>(m))) return static_cast<int>(m);
    return std::nullopt;
}

}  // namespace coxpoly
