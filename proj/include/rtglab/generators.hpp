#pragma once

#include <random>
#include <string>
#include <vector>

#include "rtglab/measures.hpp"
#include "rtglab/rtg.hpp"

namespace rtglab {

// Base group A together with a group B of automorphisms of A, given as
// explicit permutations closed under composition and inverse.
struct SchreierSpec {
    GroupTable base;
    std::vector<std::vector<int>> acting;
    std::string name;
};

namespace detail {
inline void check_automorphism(const GroupTable& a, const std::vector<int>& p) {
    if (static_cast<int>(p.size()) != a.order) throw NotAutomorphism(-1, -1);
    std::vector<char> seen(a.order, 0);
    for (int x : p) {
        if (x < 0 || x >= a.order || seen[x]) throw NotAutomorphism(x, -1);
        seen[x] = 1;
    }
    for (int x = 0; x < a.order; ++x)
        for (int y = 0; y < a.order; ++y)
            if (p[a.mul(x, y)] != a.mul(p[x], p[y])) throw NotAutomorphism(x, y);
}

inline int perm_index(const std::vector<std::vector<int>>& list, const std::vector<int>& p) {
    for (size_t i = 0; i < list.size(); ++i)
        if (list[i] == p) return static_cast<int>(i);
    return -1;
}
} // namespace detail

// Group on A x B with (u,eps)(v,delta) = (u eps(v), eps delta).
// Element index is u * |B| + eps.
inline GroupTable schreier_product(const SchreierSpec& spec) {
    const GroupTable& a = spec.base;
    const auto& b = spec.acting;
    for (const auto& p : b) detail::check_automorphism(a, p);
    const int nb = static_cast<int>(b.size());
    // closure of the acting set under composition and inverse
    std::vector<std::vector<int>> comp(nb, std::vector<int>(nb, -1));
    for (int i = 0; i < nb; ++i) {
        for (int j = 0; j < nb; ++j) {
            std::vector<int> c(a.order);
            for (int x = 0; x < a.order; ++x) c[x] = b[i][b[j][x]];
            comp[i][j] = detail::perm_index(b, c);
            if (comp[i][j] < 0) throw NotClosed();
        }
        std::vector<int> inv(a.order);
        for (int x = 0; x < a.order; ++x) inv[b[i][x]] = x;
        if (detail::perm_index(b, inv) < 0) throw NotClosed();
    }
    const int n = a.order * nb;
    auto idx = [&](int u, int e) { return u * nb + e; };
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int u = 0; u < a.order; ++u)
        for (int e = 0; e < nb; ++e)
            for (int v = 0; v < a.order; ++v)
                for (int d = 0; d < nb; ++d)
                    t[idx(u, e)][idx(v, d)] = idx(a.mul(u, b[e][v]), comp[e][d]);
    return validate_group(t, spec.name.empty() ? a.name + "xAut" : spec.name);
}

// Case formula for the two-component instance built from Z_n and the
// multiply-by-u involution phi: the pairing f_delta . mu_gamma evaluated at
// (v, eps) equals sum_t f(t gamma(v)) mu(t) when eps = delta gamma and zero
// otherwise. delta/gamma/eps: false = identity, true = phi.
inline CRat example_5_3_formula(int n, long long u, const FnVec& f, bool delta, const std::vector<CRat>& mu,
                                bool gamma, int v, bool eps) {
    if (((u * u) % n + n) % n != 1) throw NotInvolution(u);
    if (eps != (delta != gamma)) return CRat{}; // eps = delta o gamma fails
    const int gv = gamma ? static_cast<int>((u * v) % n) : v;
    CRat s;
    for (int t = 0; t < n; ++t) s += f[(t + gv) % n] * mu[t];
    return s;
}

inline SchreierSpec mult_involution_spec(int n, long long u, std::string name = {}) {
    if (((u * u) % n + n) % n != 1) throw NotInvolution(u);
    std::vector<int> id(n), phi(n);
    for (int x = 0; x < n; ++x) {
        id[x] = x;
        phi[x] = static_cast<int>((u * x) % n);
    }
    return SchreierSpec{cyclic_group(n), {id, phi}, std::move(name)};
}

// Fixed instance catalog. Order 24 is covered by S4 and the Schreier product
// of Z12 with multiplication by 5.
inline const std::vector<GroupTable>& catalog() {
    static const std::vector<GroupTable> groups = [] {
        std::vector<GroupTable> gs;
        for (int n = 2; n <= 12; ++n) gs.push_back(cyclic_group(n));
        gs.push_back(direct_product(cyclic_group(2), cyclic_group(2), "Z2xZ2"));
        gs.push_back(direct_product(direct_product(cyclic_group(2), cyclic_group(2)), cyclic_group(2), "Z2xZ2xZ2"));
        gs.push_back(symmetric_group(3));
        gs.push_back(symmetric_group(4));
        gs.push_back(dihedral_group(4));
        gs.push_back(dihedral_group(6));
        gs.push_back(quaternion_group_8());
        gs.push_back(alternating_group_4());
        gs.push_back(schreier_product(mult_involution_spec(12, 5, "Sch24")));
        std::sort(gs.begin(), gs.end(), [](const GroupTable& a, const GroupTable& b) {
            return a.order != b.order ? a.order < b.order : a.name < b.name;
        });
        return gs;
    }();
    return groups;
}

// Every catalog group of order <= max_order with every subgroup as cone,
// in deterministic order.
inline std::vector<RtGroup> enumerate_instances(int max_order = kDefaultEnumBound) {
    if (max_order > kDefaultEnumBound) throw OrderTooLarge(max_order, kDefaultEnumBound);
    std::vector<RtGroup> out;
    for (const GroupTable& g : catalog()) {
        if (g.order > max_order) continue;
        for (const Subgrp& h : subgroups(g)) out.push_back(make_rtg(g, h));
    }
    return out;
}

// Deterministic per seed, exactly uniform over the enumerated catalog.
inline RtGroup random_instance(std::uint64_t seed, int max_order = kDefaultEnumBound) {
    auto all = enumerate_instances(max_order);
    std::mt19937_64 eng(seed);
    const std::uint64_t count = all.size();
    const std::uint64_t limit = ~0ull - (~0ull % count + 1) % count; // rejection bound
    std::uint64_t x = eng();
    while (x > limit) x = eng();
    return all[x % count];
}

} // namespace rtglab
