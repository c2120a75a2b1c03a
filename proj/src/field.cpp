#include "coxpoly/field.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace coxpoly {

class FieldRegistry {
public:
    static FieldRegistry& get() {
        static FieldRegistry r;
        return r;
    }

    const Field* intern(int n, const Field* parent, const Coeffs* radicand) {
        std::string key = std::to_string(n);
        if (parent) {
            for (int j = 0; j < parent->levels(); ++j) append_key(key, parent->radicand(j));
            append_key(key, *radicand);
        }
        std::lock_guard<std::mutex> lk(mutex_);
        auto it = fields_.find(key);
        if (it != fields_.end()) return it->second.get();
        std::unique_ptr<Field> f(new Field());
        f->n_ = n;
        f->psi_ = &real_cyclotomic(n);
        f->deg_ = f->psi_->degree();
        if (parent) {
            f->radicands_ = parent->radicands_;
            f->radicands_.push_back(*radicand);
            f->parent_ = parent;
            f->chain_ = parent->chain_;
        }
        f->chain_.push_back(f.get());
        const Field* out = f.get();
        fields_.emplace(std::move(key), std::move(f));
        return out;
    }

    std::mutex merge_mutex;
    std::map<std::pair<const Field*, const Field*>, FieldMerge> merges;
    std::mutex embed_mutex;
    std::map<std::pair<int, int>, std::vector<Coeffs>> base_images;

private:
    static void append_key(std::string& key, const Coeffs& c) {
        key += '|';
        for (auto& x : c) {
            key += x.get_str();
            key += ',';
        }
    }
    std::mutex mutex_;
    std::map<std::string, std::unique_ptr<Field>> fields_;
};

namespace {

bool all_zero(const Coeffs& a, size_t from, size_t to) {
    for (size_t i = from; i < to; ++i)
        if (sgn(a[i]) != 0) return false;
    return true;
}

Coeffs slice(const Coeffs& a, size_t from, size_t len) {
    return Coeffs(a.begin() + from, a.begin() + from + len);
}

Coeffs join(Coeffs lo, const Coeffs& hi) {
    lo.insert(lo.end(), hi.begin(), hi.end());
    return lo;
}

void add_into(Coeffs& a, const Coeffs& b) {
    for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
}

void sub_into(Coeffs& a, const Coeffs& b) {
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
}

int normalized_index(int n) { return real_cyclotomic(n).degree() == 1 ? 1 : n; }

}  // namespace

const Field* Field::rationals() { return FieldRegistry::get().intern(1, nullptr, nullptr); }

const Field* Field::cyclotomic(int n) {
    if (n < 1) throw std::domain_error("field index must be positive");
    return FieldRegistry::get().intern(normalized_index(n), nullptr, nullptr);
}

const Field* Field::sub(int l) const { return chain_.at(l); }

std::pair<const Field*, int> Field::adjoin_sqrt(const Coeffs& r) const {
    for (int j = 0; j < levels(); ++j) {
        Coeffs pad = radicands_[j];
        pad.resize(dim());
        if (is_zero(sub(r, pad))) return {this, j};
    }
    return {FieldRegistry::get().intern(n_, this, &r), levels()};
}

Coeffs Field::one() const { return from_rational(1); }

Coeffs Field::from_rational(const Rational& q) const {
    Coeffs c(dim());
    c[0] = q;
    return c;
}

Coeffs Field::add(const Coeffs& a, const Coeffs& b) const {
    Coeffs r = a;
    add_into(r, b);
    return r;
}

Coeffs Field::sub(const Coeffs& a, const Coeffs& b) const {
    Coeffs r = a;
    sub_into(r, b);
    return r;
}

Coeffs Field::neg(const Coeffs& a) const {
    Coeffs r = a;
    for (auto& x : r) x = -x;
    return r;
}

Coeffs Field::scale(const Coeffs& a, const Rational& s) const {
    Coeffs r = a;
    for (auto& x : r) x *= s;
    return r;
}

Coeffs Field::base_mul(const Coeffs& a, const Coeffs& b) const {
    if (deg_ == 1) return {a[0] * b[0]};
    std::vector<Rational> prod(2 * deg_ - 1);
    for (int i = 0; i < deg_; ++i) {
        if (sgn(a[i]) == 0) continue;
        for (int j = 0; j < deg_; ++j)
            if (sgn(b[j]) != 0) prod[i + j] += a[i] * b[j];
    }
    const auto& p = psi_->coeffs();  // monic
    for (int k = 2 * deg_ - 2; k >= deg_; --k) {
        if (sgn(prod[k]) == 0) continue;
        Rational c = prod[k];
        for (int j = 0; j <= deg_; ++j) prod[k - deg_ + j] -= c * p[j];
    }
    prod.resize(deg_);
    return prod;
}

Coeffs Field::base_inv(const Coeffs& a) const {
    if (deg_ == 1) {
        if (sgn(a[0]) == 0) throw std::domain_error("division by zero");
        return {1 / a[0]};
    }
    QPoly pa(a);
    if (pa.is_zero()) throw std::domain_error("division by zero");
    auto [g, s] = gcd_cofactor(pa, *psi_);
    if (g.degree() != 0) throw std::logic_error("reducible field modulus");
    Coeffs out(deg_);
    for (int i = 0; i <= s.degree(); ++i) out[i] = s.coeff(i);
    return out;
}

Coeffs Field::mul_level(int l, const Coeffs& a, const Coeffs& b) const {
    if (l == 0) return base_mul(a, b);
    size_t h = static_cast<size_t>(deg_) << (l - 1);
    bool a1z = all_zero(a, h, 2 * h), b1z = all_zero(b, h, 2 * h);
    Coeffs a0 = slice(a, 0, h), b0 = slice(b, 0, h);
    if (a1z && b1z) return join(mul_level(l - 1, a0, b0), Coeffs(h));
    Coeffs a1 = slice(a, h, h), b1 = slice(b, h, h);
    if (a1z) return join(mul_level(l - 1, a0, b0), mul_level(l - 1, a0, b1));
    if (b1z) return join(mul_level(l - 1, a0, b0), mul_level(l - 1, a1, b0));
    Coeffs p00 = mul_level(l - 1, a0, b0);
    Coeffs p11 = mul_level(l - 1, a1, b1);
    Coeffs s = mul_level(l - 1, add(a0, a1), add(b0, b1));
    sub_into(s, p00);
    sub_into(s, p11);
    Coeffs c0 = p00;
    add_into(c0, mul_level(l - 1, p11, radicands_[l - 1]));
    return join(std::move(c0), s);
}

Coeffs Field::mul(const Coeffs& a, const Coeffs& b) const { return mul_level(levels(), a, b); }

Coeffs Field::inv_level(int l, const Coeffs& a) const {
    if (l == 0) return base_inv(a);
    size_t h = static_cast<size_t>(deg_) << (l - 1);
    Coeffs a0 = slice(a, 0, h), a1 = slice(a, h, h);
    if (zero_level(l - 1, a1)) return join(inv_level(l - 1, a0), Coeffs(h));
    Coeffs t = mul_level(l - 1, a0, a0);
    sub_into(t, mul_level(l - 1, mul_level(l - 1, a1, a1), radicands_[l - 1]));
    if (zero_level(l - 1, t)) {
        // sqrt(r) already lies in the lower field: the value is (1 + s) a0.
        if (sign_level(l - 1, a0) != sign_level(l - 1, a1)) throw std::domain_error("division by zero");
        Coeffs two_a0 = a0;
        for (auto& x : two_a0) x *= 2;
        return join(inv_level(l - 1, two_a0), Coeffs(h));
    }
    Coeffs ti = inv_level(l - 1, t);
    Coeffs hi = mul_level(l - 1, a1, ti);
    for (auto& x : hi) x = -x;
    return join(mul_level(l - 1, a0, ti), hi);
}

Coeffs Field::inv(const Coeffs& a) const { return inv_level(levels(), a); }

bool Field::zero_level(int l, const Coeffs& a) const {
    if (l == 0) return all_zero(a, 0, a.size());
    size_t h = static_cast<size_t>(deg_) << (l - 1);
    Coeffs a0 = slice(a, 0, h), a1 = slice(a, h, h);
    if (zero_level(l - 1, a1)) return zero_level(l - 1, a0);
    // a0 + a1 sqrt(r) = 0 iff a0^2 = a1^2 r with opposite signs.
    Coeffs t = mul_level(l - 1, a0, a0);
    sub_into(t, mul_level(l - 1, mul_level(l - 1, a1, a1), radicands_[l - 1]));
    if (!zero_level(l - 1, t)) return false;
    return sign_level(l - 1, a0) == -sign_level(l - 1, a1);
}

bool Field::is_zero(const Coeffs& a) const { return zero_level(levels(), a); }

int Field::sign_level(int l, const Coeffs& a) const {
    if (int s = enclose_level(l, a, 96).certain_sign()) return s;
    if (zero_level(l, a)) return 0;
    for (mpfr_prec_t prec = 192; prec <= (1 << 20); prec *= 2) {
        int s = enclose_level(l, a, prec).certain_sign();
        if (s != 0) return s;
    }
    throw std::runtime_error("sign determination did not converge");
}

int Field::sign(const Coeffs& a) const { return sign_level(levels(), a); }

const std::vector<Interval>& Field::generators(mpfr_prec_t prec) const {
    {
        std::lock_guard<std::mutex> lk(cache_mutex_);
        auto it = gen_cache_.find(prec);
        if (it != gen_cache_.end()) return it->second;
    }
    std::vector<Interval> g;
    g.push_back(Interval::two_cos_2pi_over(n_, prec));
    for (int j = 0; j < levels(); ++j) g.push_back(chain_[j]->enclose(radicands_[j], prec).sqrt());
    std::lock_guard<std::mutex> lk(cache_mutex_);
    return gen_cache_.emplace(prec, std::move(g)).first->second;
}

Interval Field::enclose_level(int l, const Coeffs& a, mpfr_prec_t prec) const {
    const auto& g = generators(prec);
    if (l == 0) {
        Interval acc(prec);
        for (int i = deg_ - 1; i >= 0; --i) acc = acc * g[0] + Interval(a[i], prec);
        return acc;
    }
    size_t h = static_cast<size_t>(deg_) << (l - 1);
    Interval lo = enclose_level(l - 1, slice(a, 0, h), prec);
    if (all_zero(a, h, 2 * h)) return lo;
    return lo + enclose_level(l - 1, slice(a, h, h), prec) * g[l];
}

Interval Field::enclose(const Coeffs& a, mpfr_prec_t prec) const { return enclose_level(levels(), a, prec); }

bool Field::is_rational(const Coeffs& a) const { return all_zero(a, 1, a.size()); }

namespace {

const std::vector<Coeffs>& base_images(int n1, const Field* to) {
    auto& reg = FieldRegistry::get();
    auto key = std::make_pair(n1, to->n());
    {
        std::lock_guard<std::mutex> lk(reg.embed_mutex);
        auto it = reg.base_images.find(key);
        if (it != reg.base_images.end()) return it->second;
    }
    const Field* src = Field::cyclotomic(n1);
    const Field* dst = Field::cyclotomic(to->n());
    std::vector<Coeffs> pw;
    if (src->deg() > 1) {
        if (to->n() % n1 != 0) throw std::logic_error("field embedding between incompatible indices");
        QPoly img = dickson(to->n() / n1).mod(dst->modulus());
        Coeffs x1(dst->deg());
        for (int i = 0; i <= img.degree(); ++i) x1[i] = img.coeff(i);
        Coeffs cur = dst->one();
        for (int i = 0; i < src->deg(); ++i) {
            pw.push_back(cur);
            cur = dst->mul(cur, x1);
        }
    } else {
        pw.push_back(dst->one());
    }
    std::lock_guard<std::mutex> lk(reg.embed_mutex);
    return reg.base_images.emplace(key, std::move(pw)).first->second;
}

}  // namespace

Coeffs embed(const Field* from, const Field* to, const std::vector<int>& level_map, const Coeffs& c) {
    if (from == to) return c;
    const auto& pw = base_images(from->n(), to);
    Coeffs out(to->dim());
    int fd = from->deg(), td = to->deg();
    for (size_t mask = 0; mask < (size_t(1) << from->levels()); ++mask) {
        size_t tmask = 0;
        for (int j = 0; j < from->levels(); ++j)
            if (mask >> j & 1) tmask |= size_t(1) << level_map[j];
        for (int i = 0; i < fd; ++i) {
            const Rational& a = c[mask * fd + i];
            if (sgn(a) == 0) continue;
            for (int k = 0; k < td; ++k)
                if (sgn(pw[i][k]) != 0) out[tmask * td + k] += a * pw[i][k];
        }
    }
    return out;
}

namespace {

// Adds the levels of `src` on top of `cur`, recording where each one lands.
const Field* absorb(const Field* cur, const Field* src, std::vector<int>& map) {
    for (int j = 0; j < src->levels(); ++j) {
        std::vector<int> partial(map.begin(), map.begin() + j);
        Coeffs r = embed(src->sub(j), cur, partial, src->radicand(j));
        auto [f, level] = cur->adjoin_sqrt(r);
        cur = f;
        map.push_back(level);
    }
    return cur;
}

}  // namespace

FieldMerge merge_fields(const Field* a, const Field* b) {
    if (a == b) {
        std::vector<int> id(a->levels());
        std::iota(id.begin(), id.end(), 0);
        return {a, id, id};
    }
    auto& reg = FieldRegistry::get();
    auto key = std::make_pair(a, b);
    {
        std::lock_guard<std::mutex> lk(reg.merge_mutex);
        auto it = reg.merges.find(key);
        if (it != reg.merges.end()) return it->second;
    }
    int n = std::lcm(a->n(), b->n());
    FieldMerge m;
    const Field* cur = Field::cyclotomic(n);
    cur = absorb(cur, a, m.map_a);
    cur = absorb(cur, b, m.map_b);
    m.field = cur;
    std::lock_guard<std::mutex> lk(reg.merge_mutex);
    reg.merges.emplace(key, m);
    return m;
}

}  // namespace coxpoly
