#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "coxpoly/interval.hpp"
#include "coxpoly/poly.hpp"

namespace coxpoly {

using Coeffs = std::vector<Rational>;

// Real cyclotomic field Q(2cos(2pi/n)) followed by a tower of real square roots.
// An element of a field with L levels is a flat array of (deg << L) rationals:
// block `mask` holds the base coefficient vector multiplying prod_{j in mask} sqrt(r_j).
// Fields are interned and live for the whole process.
class Field {
public:
    int n() const { return n_; }
    int deg() const { return deg_; }
    int levels() const { return static_cast<int>(radicands_.size()); }
    size_t dim() const { return static_cast<size_t>(deg_) << levels(); }
    const QPoly& modulus() const { return *psi_; }
    // Radicand j is an element of sub(j).
    const Coeffs& radicand(int j) const { return radicands_[j]; }
    const Field* sub(int l) const;
    const Field* parent() const { return parent_; }

    static const Field* rationals();
    static const Field* cyclotomic(int n);
    // Adjoins sqrt(r) for r in this field, r > 0. Returns the field and the level
    // holding the root (an existing level is reused when the radicand repeats).
    std::pair<const Field*, int> adjoin_sqrt(const Coeffs& r) const;

    Coeffs zero() const { return Coeffs(dim()); }
    Coeffs one() const;
    Coeffs from_rational(const Rational& q) const;

    Coeffs add(const Coeffs& a, const Coeffs& b) const;
    Coeffs sub(const Coeffs& a, const Coeffs& b) const;
    Coeffs neg(const Coeffs& a) const;
    Coeffs mul(const Coeffs& a, const Coeffs& b) const;
    Coeffs scale(const Coeffs& a, const Rational& s) const;
    // Throws std::domain_error on zero.
    Coeffs inv(const Coeffs& a) const;

    bool is_zero(const Coeffs& a) const;
    int sign(const Coeffs& a) const;
    Interval enclose(const Coeffs& a, mpfr_prec_t prec) const;
    bool is_rational(const Coeffs& a) const;

private:
    Field() = default;
    Coeffs mul_level(int l, const Coeffs& a, const Coeffs& b) const;
    Coeffs inv_level(int l, const Coeffs& a) const;
    bool zero_level(int l, const Coeffs& a) const;
    int sign_level(int l, const Coeffs& a) const;
    Interval enclose_level(int l, const Coeffs& a, mpfr_prec_t prec) const;
    Coeffs base_mul(const Coeffs& a, const Coeffs& b) const;
    Coeffs base_inv(const Coeffs& a) const;
    const std::vector<Interval>& generators(mpfr_prec_t prec) const;

    int n_ = 1;
    int deg_ = 1;
    const QPoly* psi_ = nullptr;
    std::vector<Coeffs> radicands_;
    const Field* parent_ = nullptr;
    std::vector<const Field*> chain_;  // chain_[l] = sub-field with l levels

    mutable std::mutex cache_mutex_;
    mutable std::map<mpfr_prec_t, std::vector<Interval>> gen_cache_;

    friend class FieldRegistry;
};

// Common overfield of two fields plus the level maps that embed each of them.
struct FieldMerge {
    const Field* field;
    std::vector<int> map_a, map_b;
};

FieldMerge merge_fields(const Field* a, const Field* b);
// Embeds an element of `from` into `to`; level_map[j] is the level of `to` with the same radicand.
Coeffs embed(const Field* from, const Field* to, const std::vector<int>& level_map, const Coeffs& c);

}  // namespace coxpoly
