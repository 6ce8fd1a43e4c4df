#pragma once

#include <set>
#include <utility>
#include <vector>

#include "rtglab/linalg.hpp"
#include "rtglab/rtg.hpp"

namespace rtglab {

// Complex-rational function on the group, as a value vector.
using FnVec = std::vector<CRat>;

enum class TopologyTag { tau, sigma };

// Exact linear subspace of functions; basis rows are kept in RREF so equal
// subspaces compare equal.
struct FnSubspace {
    linalg::QSpan span;
    TopologyTag tag = TopologyTag::tau;

    int dimension() const { return span.dim(); }
    const std::vector<FnVec>& basis() const { return span.basis; }
    bool contains(const FnVec& f) const { return span.contains(f); }
    bool contains_subspace(const FnSubspace& other) const { return span.contains_all(other.span.basis); }
    friend bool operator==(const FnSubspace& a, const FnSubspace& b) { return a.span == b.span; }
};

inline bool is_continuous_fn(const AlexandrovTopology& t, const FnVec& f) {
    for (int x = 0; x < t.points; ++x)
        for (int y = 0; y < t.points; ++y)
            if (t.minnbhd[x].test(y) && f[x] != f[y]) return false;
    return true;
}

enum class Side { left, right };

// (R_g f)(x) = f(xg), (L_g f)(x) = f(gx)
inline FnVec translate(const GroupTable& g, const FnVec& f, int elt, Side side) {
    FnVec out(f.size());
    for (int x = 0; x < g.order; ++x)
        out[x] = side == Side::right ? f[g.mul(x, elt)] : f[g.mul(elt, x)];
    return out;
}

namespace detail {
// Nullspace of pairwise equality constraints f(a) = f(b), intersected with
// continuity when with_continuity topology is provided.
inline FnSubspace equality_solve(int n, const std::set<std::pair<int, int>>& pairs, TopologyTag tag) {
    linalg::Matrix<CRat> rows;
    for (auto [a, b] : pairs) {
        if (a == b) continue;
        linalg::Vector<CRat> row(n);
        row[a] = CRat(1);
        row[b] = CRat(-1);
        rows.push_back(std::move(row));
    }
    auto basis = linalg::nullspace(std::move(rows), n);
    FnSubspace out;
    out.span = linalg::QSpan::from_rows(std::move(basis));
    out.tag = tag;
    return out;
}

inline void add_continuity_pairs(const AlexandrovTopology& t, std::set<std::pair<int, int>>& pairs) {
    for (int x = 0; x < t.points; ++x)
        for (int y = 0; y < t.points; ++y)
            if (t.minnbhd[x].test(y) && x != y) pairs.emplace(std::min(x, y), std::max(x, y));
}
} // namespace detail

// C(G,tau) or C(G,sigma): basis is the indicator functions of the cells.
inline FnSubspace continuous_functions(const RtGroup& r, TopologyTag which) {
    const AlexandrovTopology& t = which == TopologyTag::tau ? r.tau : sigma_topology(r);
    std::set<std::pair<int, int>> pairs;
    detail::add_continuity_pairs(t, pairs);
    return detail::equality_solve(r.order(), pairs, which);
}

// LC(G) = {f in C(G,tau) : L_g f in C(G,tau) for all g}
inline FnSubspace lc_space(const RtGroup& r) {
    const int n = r.order();
    std::set<std::pair<int, int>> pairs;
    detail::add_continuity_pairs(r.tau, pairs);
    for (int g = 0; g < n; ++g)
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (r.tau.minnbhd[x].test(y)) {
                    int a = r.group.mul(g, x), b = r.group.mul(g, y);
                    if (a != b) pairs.emplace(std::min(a, b), std::max(a, b));
                }
    return detail::equality_solve(n, pairs, TopologyTag::tau);
}

// D(G) = {f in C(G,tau) : g -> f(y g^-1) is tau-continuous for every y}
inline FnSubspace d_space(const RtGroup& r) {
    const int n = r.order();
    std::set<std::pair<int, int>> pairs;
    detail::add_continuity_pairs(r.tau, pairs);
    for (int y = 0; y < n; ++y)
        for (int g = 0; g < n; ++g)
            for (int g2 = 0; g2 < n; ++g2)
                if (r.tau.minnbhd[g].test(g2)) {
                    int a = r.group.mul(y, r.group.inv(g)), b = r.group.mul(y, r.group.inv(g2));
                    if (a != b) pairs.emplace(std::min(a, b), std::max(a, b));
                }
    return detail::equality_solve(n, pairs, TopologyTag::tau);
}

struct ApWapResult {
    FnSubspace space;
    bool finite_degenerate = true; // right orbits of a finite group are finite sets
};

// AP(G) and WAP(G) both collapse to C(G,tau) on finite models.
inline ApWapResult ap_wap(const RtGroup& r) {
    return {continuous_functions(r, TopologyTag::tau), true};
}

// Fix(A) = {g : L_g f = f for all f in A}; requires A translation invariant.
inline Subgrp fix(const RtGroup& r, const FnSubspace& a) {
    const int n = r.order();
    for (size_t i = 0; i < a.span.basis.size(); ++i)
        for (int g = 0; g < n; ++g) {
            if (!a.span.contains(translate(r.group, a.span.basis[i], g, Side::left)) ||
                !a.span.contains(translate(r.group, a.span.basis[i], g, Side::right)))
                throw NotTranslationInvariant(static_cast<int>(i), g);
        }
    std::uint64_t mask = 0;
    for (int g = 0; g < n; ++g) {
        bool fixes = true;
        for (const FnVec& f : a.span.basis)
            if (translate(r.group, f, g, Side::left) != f) { fixes = false; break; }
        if (fixes) mask |= 1ull << g;
    }
    Subgrp out{mask, n};
    if (!is_subgroup(r.group, out) || !is_normal(r.group, out))
        throw InternalCheckFailure("Fix(A) must be a normal subgroup");
    return out;
}

// True iff for every x and closed C avoiding x some f in the span has
// f(x) outside f(C). It is enough to look at the largest such C, the
// complement of U_x, and at basis differences: over an infinite field a
// finite union of proper subspaces cannot exhaust the span, so pointwise
// separability by basis elements suffices.
inline bool separates_points_from_closed(const FnSubspace& a, const AlexandrovTopology& t) {
    for (int x = 0; x < t.points; ++x)
        for (int c = 0; c < t.points; ++c) {
            if (t.minnbhd[x].test(c)) continue; // c in U_x
            bool separated = false;
            for (const FnVec& f : a.span.basis)
                if (f[x] != f[c]) { separated = true; break; }
            if (!separated) return false;
        }
    return true;
}

} // namespace rtglab
