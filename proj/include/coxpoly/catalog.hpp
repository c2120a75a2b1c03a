#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "coxpoly/diagram.hpp"

namespace coxpoly {

constexpr int kMaxNodes = 16;

// Edge codes of a diagram (see EdgeLabel::code) in a fixed-size table.
struct LabelMatrix {
    int d = 0;
    std::array<std::array<std::int16_t, kMaxNodes>, kMaxNodes> a{};

    LabelMatrix() = default;
    explicit LabelMatrix(const CoxeterDiagram& s);
    int operator()(int i, int j) const { return a[i][j]; }
    void set(int i, int j, int c) { a[i][j] = a[j][i] = static_cast<std::int16_t>(c); }
};

inline constexpr int kOrth = 2;
inline constexpr int kBold = -1;
inline constexpr int kDotted = -2;

// Membership tests against the classical lists, evaluated on the nodes in `mask`.
namespace catalog {

// Every connected component is one of A_n, B_n, D_n, E_6..8, F_4, H_3, H_4, G_2^(m).
bool elliptic(const LabelMatrix& l, std::uint32_t mask);
// Every connected component is affine: Ã_n (Ã_1 bold), B̃_n, C̃_n, D̃_n, Ẽ_6..8, F̃_4, G̃_2.
bool parabolic(const LabelMatrix& l, std::uint32_t mask);
// Connected Lannér diagram: dotted pair, hyperbolic triangle, or one of the 9 + 5 diagrams of orders 4 and 5.
bool lanner(const LabelMatrix& l, std::uint32_t mask);
bool connected(const LabelMatrix& l, std::uint32_t mask);
// 1/p + 1/q + 1/r < 1, with 2 standing for an orthogonal pair.
bool hyperbolic_triple(long p, long q, long r);
// Name of the component type, e.g. "A3", "H4", "G2(7)"; empty if not elliptic.
std::string elliptic_type(const LabelMatrix& l, std::uint32_t component_mask);

}  // namespace catalog

bool is_elliptic_catalog(const CoxeterDiagram& s);
bool is_parabolic_catalog(const CoxeterDiagram& s);
bool is_lanner_catalog(const CoxeterDiagram& s);

// Concrete Lannér diagrams of order 4 (nine) and 5 (five).
std::vector<CoxeterDiagram> lanner_catalog(int order);

// Connected elliptic diagrams of a given order with labels <= max_label, one per isomorphism class.
std::vector<CoxeterDiagram> elliptic_catalog(int order, int max_label);
// Connected affine diagrams of a given order (labels <= 6, no bold edge unless order 2).
std::vector<CoxeterDiagram> parabolic_catalog(int order);

}  // namespace coxpoly
