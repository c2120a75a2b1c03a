#include "coxpoly/poly.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace coxpoly {

QPoly::QPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }

QPoly QPoly::constant(const Rational& c) { return QPoly(std::vector<Rational>{c}); }

QPoly QPoly::monomial(int k, const Rational& c) {
    std::vector<Rational> v(k + 1);
    v[k] = c;
    return QPoly(std::move(v));
}

void QPoly::trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Rational QPoly::coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Rational(0);
}

QPoly QPoly::operator+(const QPoly& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return QPoly(std::move(r));
}

QPoly QPoly::operator-(const QPoly& o) const { return *this + (-o); }

QPoly QPoly::operator-() const {
    QPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

QPoly QPoly::operator*(const QPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Rational> r(c_.size() + o.c_.size() - 1);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (sgn(c_[i]) == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    return QPoly(std::move(r));
}

QPoly QPoly::operator*(const Rational& s) const {
    if (sgn(s) == 0) return {};
    QPoly r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
}

std::pair<QPoly, QPoly> QPoly::divmod(const QPoly& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> rem = c_;
    int dd = d.degree();
    if (degree() < dd) return {QPoly(), *this};
    std::vector<Rational> q(degree() - dd + 1);
    Rational inv = 1 / d.lead();
    for (int k = degree() - dd; k >= 0; --k) {
        Rational f = rem[k + dd] * inv;
        if (sgn(f) == 0) continue;
        q[k] = f;
        for (int j = 0; j <= dd; ++j) rem[k + j] -= f * d.c_[j];
    }
    rem.resize(dd);
    return {QPoly(std::move(q)), QPoly(std::move(rem))};
}

QPoly QPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
    return QPoly(std::move(r));
}

QPoly QPoly::monic() const {
    if (is_zero()) return {};
    return *this * (1 / lead());
}

Rational QPoly::eval(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::vector<Integer> QPoly::primitive() const {
    std::vector<Integer> out;
    if (is_zero()) return out;
    Integer den = 1;
    for (auto& x : c_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    Integer g = 0;
    for (auto& x : c_) {
        Integer v = x.get_num() * (den / x.get_den());
        out.push_back(v);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    }
    if (sgn(out.back()) < 0) g = -g;
    for (auto& v : out) v /= g;
    return out;
}

std::string QPoly::to_string(const char* var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rational& a = c_[i];
        if (sgn(a) == 0) continue;
        Rational m = abs(a);
        if (!first) os << (sgn(a) < 0 ? " - " : " + ");
        else if (sgn(a) < 0) os << "-";
        first = false;
        if (i == 0 || m != 1) os << m;
        if (i > 0) {
            if (m != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

QPoly gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        QPoly r = a.mod(b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

std::pair<QPoly, QPoly> gcd_cofactor(const QPoly& a, const QPoly& m) {
    QPoly r0 = m, r1 = a.mod(m);
    QPoly s0, s1 = QPoly::constant(1);
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        QPoly s2 = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    Rational inv = 1 / r0.lead();
    return {r0 * inv, (s0 * inv).mod(m)};
}

QPoly squarefree_part(const QPoly& p) {
    if (p.degree() <= 0) return p.monic();
    QPoly g = gcd(p, p.derivative());
    return p.divmod(g).first.monic();
}

std::vector<QPoly> sturm_sequence(const QPoly& p) {
    std::vector<QPoly> seq{p, p.derivative()};
    while (!seq.back().is_zero()) {
        QPoly r = -(seq[seq.size() - 2].mod(seq.back()));
        if (r.is_zero()) break;
        seq.push_back(std::move(r));
    }
    if (seq.back().is_zero()) seq.pop_back();
    return seq;
}

static int sign_changes(const std::vector<QPoly>& seq, const Rational& x) {
    int changes = 0, last = 0;
    for (auto& q : seq) {
        int s = q.sign_at(x);
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

int sturm_count(const std::vector<QPoly>& seq, const Rational& lo, const Rational& hi) {
    return sign_changes(seq, lo) - sign_changes(seq, hi);
}

namespace {
std::mutex g_poly_mutex;
std::map<int, QPoly> g_cyclo, g_real_cyclo, g_dickson;
}  // namespace

const QPoly& cyclotomic(int n) {
    if (n < 1) throw std::domain_error("cyclotomic index must be positive");
    {
        std::lock_guard<std::mutex> lk(g_poly_mutex);
        auto it = g_cyclo.find(n);
        if (it != g_cyclo.end()) return it->second;
    }
    QPoly p = QPoly::monomial(n) - QPoly::constant(1);
    for (int d = 1; d < n; ++d)
        if (n % d == 0) p = p.divmod(cyclotomic(d)).first;
    std::lock_guard<std::mutex> lk(g_poly_mutex);
    return g_cyclo.emplace(n, std::move(p)).first->second;
}

const QPoly& dickson(int k) {
    {
        std::lock_guard<std::mutex> lk(g_poly_mutex);
        auto it = g_dickson.find(k);
        if (it != g_dickson.end()) return it->second;
    }
    QPoly r;
    if (k == 0) r = QPoly::constant(2);
    else if (k == 1) r = QPoly::monomial(1);
    else r = QPoly::monomial(1) * dickson(k - 1) - dickson(k - 2);
    std::lock_guard<std::mutex> lk(g_poly_mutex);
    return g_dickson.emplace(k, std::move(r)).first->second;
}

const QPoly& real_cyclotomic(int n) {
    {
        std::lock_guard<std::mutex> lk(g_poly_mutex);
        auto it = g_real_cyclo.find(n);
        if (it != g_real_cyclo.end()) return it->second;
    }
    QPoly r;
    if (n == 1) r = QPoly(std::vector<Rational>{-2, 1});
    else if (n == 2) r = QPoly(std::vector<Rational>{2, 1});
    else {
        // Phi_N is palindromic of degree 2h; z^-h Phi_N(z) = c_h + sum c_{h+k} D_k(x).
        const QPoly& phi = cyclotomic(n);
        int h = phi.degree() / 2;
        r = QPoly::constant(phi.coeff(h));
        for (int k = 1; k <= h; ++k) r = r + dickson(k) * phi.coeff(h + k);
    }
    std::lock_guard<std::mutex> lk(g_poly_mutex);
    return g_real_cyclo.emplace(n, std::move(r)).first->second;
}

}  // namespace coxpoly
