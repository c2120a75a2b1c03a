#include "coxpoly/expr.hpp"

#include <cctype>
#include <cmath>
#include <complex>
#include <optional>

#include <Eigen/Dense>

namespace coxpoly {

namespace {

class Parser {
public:
    Parser(const std::string& s, int line, int off) : s_(s), line_(line), off_(off) {}

    AlgebraicReal run() {
        AlgebraicReal v = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line_, off_ + static_cast<int>(pos_) + 1);
    }

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

    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    bool keyword(const char* kw) {
        skip();
        size_t n = std::char_traits<char>::length(kw);
        if (s_.compare(pos_, n, kw) == 0) {
            pos_ += n;
            return true;
        }
        return false;
    }

    Integer integer() {
        skip();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a number");
        return Integer(s_.substr(start, pos_ - start));
    }

    AlgebraicReal expr() {
        AlgebraicReal v = term();
        for (;;) {
            if (eat('+')) v += term();
            else if (eat('-')) v -= term();
            else return v;
        }
    }

    AlgebraicReal term() {
        AlgebraicReal v = factor();
        for (;;) {
            if (eat('*')) {
                v *= factor();
            } else if (eat('/')) {
                size_t at = pos_;
                AlgebraicReal d = factor();
                if (d.is_zero()) {
                    pos_ = at;
                    fail("division by zero");
                }
                v /= d;
            } else {
                return v;
            }
        }
    }

    AlgebraicReal factor() {
        if (eat('-')) return -factor();
        if (eat('+')) return factor();
        if (eat('(')) {
            AlgebraicReal v = expr();
            expect(')');
            return v;
        }
        if (keyword("sqrt")) {
            expect('(');
            size_t at = pos_;
            AlgebraicReal v = expr();
            expect(')');
            if (v.sign() < 0) {
                pos_ = at;
                fail("sqrt of a negative value");
            }
            return v.sqrt_nonneg();
        }
        if (keyword("cospi")) {
            expect('(');
            size_t at = pos_;
            Integer m = integer();
            expect(')');
            if (m < 2 || m > 100000) {
                pos_ = at;
                fail("cospi argument must be an integer in [2, 100000]");
            }
            return AlgebraicReal::cos_pi_over(static_cast<int>(m.get_si()));
        }
        return AlgebraicReal(Rational(integer()));
    }

    const std::string& s_;
    size_t pos_ = 0;
    int line_, off_;
};

}  // namespace

AlgebraicReal parse_expr(const std::string& text, int line, int column_offset) {
    return Parser(text, line, column_offset).run();
}

namespace {

std::string rational_text(const Rational& q) { return q.get_str(); }

// n = s^2 * r with r free of small square factors.
void split_square(Integer n, Integer& s, Integer& r) {
    s = 1;
    for (long p = 2; p <= 100000; ++p) {
        Integer pp = p * p;
        if (pp > n) break;
        while (n % pp == 0) {
            n /= pp;
            s *= p;
        }
    }
    r = n;
}

// Root of a x^2 + b x + c (integers, disc > 0) closest to `near`, as text.
std::string quadratic_text(const Integer& c, const Integer& b, const Integer& a, double near) {
    Integer disc = b * b - 4 * a * c;
    Integer s, r;
    split_square(disc, s, r);
    Rational u = make_q(-b, 2 * a);
    double du = u.get_d(), dv = std::abs(make_q(s, 2 * a).get_d()) * std::sqrt(r.get_d());
    Rational v = make_q(s, 2 * a);
    if (v < 0) v = -v;
    if (std::abs(du - dv - near) < std::abs(du + dv - near)) v = -v;
    std::string root = "sqrt(" + r.get_str() + ")";
    std::string vt;
    if (v == 1) vt = root;
    else if (v == -1) vt = "-" + root;
    else if (v.get_den() == 1) vt = v.get_num().get_str() + "*" + root;
    else vt = "(" + rational_text(v) + ")*" + root;
    if (u == 0) return vt;
    if (vt[0] == '-') return rational_text(u) + " - " + vt.substr(1);
    return rational_text(u) + " + " + vt;
}

}  // namespace

namespace {

// Continued-fraction rational within 1e-9 of v, denominators up to 1e6.
std::optional<Rational> rationalize(double v) {
    double x = v;
    long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    for (int it = 0; it < 40; ++it) {
        double a = std::floor(x);
        if (std::abs(a) > 1e12) break;
        long ai = static_cast<long>(a);
        long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
        if (k2 > 1000000) break;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        if (std::abs(static_cast<double>(h1) / k1 - v) < 1e-9 * std::max(1.0, std::abs(v))) return make_q(h1, k1);
        if (x - a < 1e-15) break;
        x = 1 / (x - a);
    }
    return std::nullopt;
}

// Quadratic-surd text for x, using a conjugate among the real roots of p.
std::optional<std::string> quadratic_form(const AlgebraicReal& x, const std::vector<Integer>& p) {
    int deg = static_cast<int>(p.size()) - 1;
    if (deg < 2) return std::nullopt;
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -(p[i].get_d() / p[deg].get_d());
    Eigen::VectorXcd roots = comp.eigenvalues();
    double v = x.to_double();
    for (int i = 0; i < deg; ++i) {
        std::complex<double> r = roots(i);
        if (std::abs(r.imag()) > 1e-7 * std::max(1.0, std::abs(r)) || std::abs(r.real() - v) < 1e-9) continue;
        auto s = rationalize(v + r.real()), q = rationalize(v * r.real());
        if (!s || !q) continue;
        // t^2 - s t + q with integer coefficients
        Integer den = lcm(s->get_den(), q->get_den());
        Rational bs = *s * den, cq = *q * den;
        Integer a = den, b = -bs.get_num(), c = cq.get_num();
        if (b * b - 4 * a * c <= 0) continue;
        std::string text = quadratic_text(c, b, a, v);
        try {
            if (parse_expr(text) == x) return text;
        } catch (const std::exception&) {
        }
    }
    return std::nullopt;
}

}  // namespace

std::string format_expr(const AlgebraicReal& x) {
    if (x.is_rational()) return rational_text(x.to_rational());
    try {
        if (auto t = quadratic_form(x, x.minpoly())) return *t;
        AlgebraicReal y = x * x;
        std::string root;
        if (y.is_rational())
            root = "sqrt(" + rational_text(y.to_rational()) + ")";
        else if (auto t = quadratic_form(y, y.minpoly()))
            root = "sqrt(" + *t + ")";
        if (!root.empty()) {
            std::string text = x.sign() < 0 ? "-" + root : root;
            if (parse_expr(text) == x) return text;
        }
    } catch (const std::exception&) {
    }
    return x.to_expr();
}

}  // namespace coxpoly
