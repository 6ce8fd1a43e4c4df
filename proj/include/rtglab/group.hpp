#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "rtglab/errors.hpp"

namespace rtglab {

inline constexpr int kMaxSubgroupOrder = 64; // Subgrp is a 64-bit element mask
inline constexpr int kDefaultEnumBound = 24;

// Subgroup of a group of order n <= 64, stored as an element bitmask.
struct Subgrp {
    std::uint64_t mask = 0;
    int n = 0;

    bool contains(int x) const { return (mask >> x) & 1u; }
    int size() const { return __builtin_popcountll(mask); }
    std::vector<int> elements() const {
        std::vector<int> out;
        for (int i = 0; i < n; ++i)
            if (contains(i)) out.push_back(i);
        return out;
    }
    friend bool operator==(const Subgrp& a, const Subgrp& b) { return a.mask == b.mask && a.n == b.n; }
    friend bool operator!=(const Subgrp& a, const Subgrp& b) { return !(a == b); }
    bool subset_of(const Subgrp& o) const { return (mask & ~o.mask) == 0; }
};

// Finite group as a multiplication table. mul is row-major: mul[x*n+y] = x*y.
// Identity and inverses are derived and checked at construction time.
struct GroupTable {
    int order = 0;
    std::vector<int> mul_table;
    int identity = 0;
    std::vector<int> inv_table;
    std::string name;

    int mul(int x, int y) const { return mul_table[x * order + y]; }
    int inv(int x) const { return inv_table[x]; }
    int conj(int g, int x) const { return mul(mul(g, x), inv(g)); } // g x g^-1

    Subgrp full_subgroup() const {
        return {order >= 64 ? ~0ull : ((1ull << order) - 1), order};
    }
    Subgrp trivial_subgroup() const { return {1ull << identity, order}; }
};

// Checks the group axioms on a raw table and derives identity/inverses.
// Throws NotAGroup with the violated axiom and a witness.
inline GroupTable validate_group(const std::vector<std::vector<int>>& candidate, std::string name = {}) {
    const int n = static_cast<int>(candidate.size());
    if (n == 0) throw NotAGroup("empty table");
    for (int x = 0; x < n; ++x) {
        if (static_cast<int>(candidate[x].size()) != n) throw NotAGroup("table is not square", x);
        for (int y = 0; y < n; ++y)
            if (candidate[x][y] < 0 || candidate[x][y] >= n)
                throw NotAGroup("entry out of range", x, y);
    }
    // Latin square: each row and column is a permutation.
    for (int x = 0; x < n; ++x) {
        std::uint64_t row_seen = 0, col_seen = 0;
        for (int y = 0; y < n; ++y) {
            std::uint64_t rbit = 1ull << (candidate[x][y] % 64);
            std::uint64_t cbit = 1ull << (candidate[y][x] % 64);
            if (n <= 64) {
                if (row_seen & rbit) throw NotAGroup("Latin square violated in row", x, y);
                if (col_seen & cbit) throw NotAGroup("Latin square violated in column", x, y);
                row_seen |= rbit;
                col_seen |= cbit;
            }
        }
        if (n > 64) {
            std::vector<char> seen(n, 0);
            for (int y = 0; y < n; ++y) {
                if (seen[candidate[x][y]]) throw NotAGroup("Latin square violated in row", x, y);
                seen[candidate[x][y]] = 1;
            }
        }
    }
    GroupTable g;
    g.order = n;
    g.name = std::move(name);
    g.mul_table.resize(n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) g.mul_table[x * n + y] = candidate[x][y];

    int id = -1;
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x) ok = g.mul(e, x) == x && g.mul(x, e) == x;
        if (ok) { id = e; break; }
    }
    if (id < 0) throw NotAGroup("no two-sided identity");
    g.identity = id;

    g.inv_table.assign(n, -1);
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y)
            if (g.mul(x, y) == id && g.mul(y, x) == id) { g.inv_table[x] = y; break; }
        if (g.inv_table[x] < 0) throw NotAGroup("no inverse", x);
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                if (g.mul(g.mul(x, y), z) != g.mul(x, g.mul(y, z)))
                    throw NotAGroup("associativity fails", x, y, z);
    return g;
}

inline std::uint64_t closure_mask(const GroupTable& g, std::uint64_t seed) {
    std::uint64_t cur = seed | (1ull << g.identity);
    for (;;) {
        std::uint64_t next = cur;
        std::vector<int> elems;
        for (int i = 0; i < g.order; ++i)
            if ((cur >> i) & 1u) elems.push_back(i);
        for (int a : elems)
            for (int b : elems) next |= 1ull << g.mul(a, b);
        if (next == cur) return cur;
        cur = next;
    }
}

inline bool is_subgroup(const GroupTable& g, const Subgrp& h) {
    if (h.n != g.order || !h.contains(g.identity)) return false;
    auto elems = h.elements();
    for (int a : elems) {
        if (!h.contains(g.inv(a))) return false;
        for (int b : elems)
            if (!h.contains(g.mul(a, b))) return false;
    }
    return true;
}

inline bool is_normal(const GroupTable& g, const Subgrp& h) {
    for (int x = 0; x < g.order; ++x)
        for (int a : h.elements())
            if (!h.contains(g.conj(x, a))) return false;
    return true;
}

inline bool subgroup_order_less(const Subgrp& a, const Subgrp& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.elements() < b.elements();
}

// Complete subgroup list, by breadth-first closure over generator extensions.
inline std::vector<Subgrp> subgroups(const GroupTable& g, int bound = kDefaultEnumBound) {
    if (g.order > bound) throw OrderTooLarge(g.order, bound);
    std::vector<std::uint64_t> found{1ull << g.identity};
    std::vector<std::uint64_t> frontier = found;
    while (!frontier.empty()) {
        std::vector<std::uint64_t> next;
        for (std::uint64_t h : frontier) {
            for (int x = 0; x < g.order; ++x) {
                if ((h >> x) & 1u) continue;
                std::uint64_t ext = closure_mask(g, h | (1ull << x));
                if (std::find(found.begin(), found.end(), ext) == found.end()) {
                    found.push_back(ext);
                    next.push_back(ext);
                }
            }
        }
        frontier = std::move(next);
    }
    std::vector<Subgrp> out;
    out.reserve(found.size());
    for (std::uint64_t m : found) out.push_back({m, g.order});
    std::sort(out.begin(), out.end(), subgroup_order_less);
    return out;
}

// Smallest normal subgroup containing S: conjugate-and-close until fixpoint.
inline Subgrp normal_closure(const GroupTable& g, const Subgrp& s) {
    std::uint64_t cur = closure_mask(g, s.mask);
    for (;;) {
        std::uint64_t conjs = cur;
        for (int x = 0; x < g.order; ++x)
            for (int a = 0; a < g.order; ++a)
                if ((cur >> a) & 1u) conjs |= 1ull << g.conj(x, a);
        std::uint64_t next = closure_mask(g, conjs);
        if (next == cur) return {cur, g.order};
        cur = next;
    }
}

inline Subgrp normalizer(const GroupTable& g, const Subgrp& h) {
    std::uint64_t out = 0;
    for (int x = 0; x < g.order; ++x) {
        std::uint64_t conj_mask = 0;
        for (int a : h.elements()) conj_mask |= 1ull << g.conj(x, a);
        if (conj_mask == h.mask) out |= 1ull << x;
    }
    return {out, g.order};
}

struct QuotientGroup {
    GroupTable table;
    std::vector<int> projection; // element index -> coset index
};

// Quotient by a normal subgroup; cosets are indexed by their least element.
inline QuotientGroup quotient_group(const GroupTable& g, const Subgrp& n) {
    if (!is_subgroup(g, n)) throw NotASubgroup("quotient kernel");
    for (int x = 0; x < g.order; ++x) {
        std::uint64_t cm = 0;
        for (int a : n.elements()) cm |= 1ull << g.conj(x, a);
        if (cm != n.mask) throw NotNormal(x);
    }
    std::vector<int> coset_of(g.order, -1);
    std::vector<int> reps;
    for (int x = 0; x < g.order; ++x) {
        if (coset_of[x] >= 0) continue;
        int c = static_cast<int>(reps.size());
        reps.push_back(x);
        for (int a : n.elements()) coset_of[g.mul(x, a)] = c; // xN
    }
    const int q = static_cast<int>(reps.size());
    std::vector<std::vector<int>> table(q, std::vector<int>(q));
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) table[i][j] = coset_of[g.mul(reps[i], reps[j])];
    QuotientGroup out{validate_group(table, g.name.empty() ? "" : g.name + "/N"), coset_of};
    return out;
}

// ---- catalog constructors ----

inline GroupTable cyclic_group(int n) {
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) t[x][y] = (x + y) % n;
    return validate_group(t, "Z" + std::to_string(n));
}

// Order 2n; indices 0..n-1 are rotations r^k, n..2n-1 are reflections s r^k.
inline GroupTable dihedral_group(int n) {
    const int m = 2 * n;
    auto idx = [&](int flip, int rot) { return flip * n + ((rot % n) + n) % n; };
    std::vector<std::vector<int>> t(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a) {
        int af = a / n, ar = a % n;
        for (int b = 0; b < m; ++b) {
            int bf = b / n, br = b % n;
            // (s^af r^ar)(s^bf r^br) = s^(af+bf) r^((-1)^bf ar + br)
            t[a][b] = idx((af + bf) % 2, (bf ? -ar : ar) + br);
        }
    }
    return validate_group(t, "D" + std::to_string(n));
}

namespace detail {
inline std::vector<std::vector<int>> permutations_lex(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}
inline bool perm_even(const std::vector<int>& p) {
    int inversions = 0;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inversions;
    return inversions % 2 == 0;
}
// (a*b)(x) = a(b(x))
inline GroupTable group_from_perms(std::vector<std::vector<int>> perms, std::string name) {
    const int m = static_cast<int>(perms.size());
    auto find = [&](const std::vector<int>& q) {
        for (int i = 0; i < m; ++i)
            if (perms[i] == q) return i;
        return -1;
    };
    std::vector<std::vector<int>> t(m, std::vector<int>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            std::vector<int> c(perms[i].size());
            for (size_t x = 0; x < c.size(); ++x) c[x] = perms[i][perms[j][x]];
            int k = find(c);
            if (k < 0) throw NotAGroup("permutation set not closed");
            t[i][j] = k;
        }
    return validate_group(std::move(t), std::move(name));
}
} // namespace detail

inline GroupTable symmetric_group(int n) {
    return detail::group_from_perms(detail::permutations_lex(n), "S" + std::to_string(n));
}

inline GroupTable alternating_group_4() {
    std::vector<std::vector<int>> even;
    for (auto& p : detail::permutations_lex(4))
        if (detail::perm_even(p)) even.push_back(p);
    return detail::group_from_perms(std::move(even), "A4");
}

// Elements ordered 1, -1, i, -i, j, -j, k, -k.
inline GroupTable quaternion_group_8() {
    // encode q = (unit, sign): unit in {1,i,j,k}
    auto enc = [](int unit, int sign) { return unit * 2 + (sign < 0 ? 1 : 0); };
    struct Q { int unit, sign; };
    auto dec = [](int e) { return Q{e / 2, e % 2 ? -1 : 1}; };
    // multiplication of units: 1ijk table with sign
    static const int unit_tab[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sign_tab[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            Q x = dec(a), y = dec(b);
            int u = unit_tab[x.unit][y.unit];
            int s = x.sign * y.sign * sign_tab[x.unit][y.unit];
            t[a][b] = enc(u, s);
        }
    return validate_group(t, "Q8");
}

inline GroupTable direct_product(const GroupTable& a, const GroupTable& b, std::string name = {}) {
    const int n = a.order * b.order;
    auto idx = [&](int x, int y) { return x * b.order + y; };
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int x1 = 0; x1 < a.order; ++x1)
        for (int y1 = 0; y1 < b.order; ++y1)
            for (int x2 = 0; x2 < a.order; ++x2)
                for (int y2 = 0; y2 < b.order; ++y2)
                    t[idx(x1, y1)][idx(x2, y2)] = idx(a.mul(x1, x2), b.mul(y1, y2));
    if (name.empty()) name = a.name + "x" + b.name;
    return validate_group(t, std::move(name));
}

// Small greedy generating set; deterministic.
inline std::vector<int> generating_set(const GroupTable& g) {
    std::vector<int> gens;
    std::uint64_t cur = 1ull << g.identity;
    for (int x = 0; x < g.order && __builtin_popcountll(cur) < g.order; ++x) {
        if ((cur >> x) & 1u) continue;
        gens.push_back(x);
        cur = closure_mask(g, cur | (1ull << x));
    }
    return gens;
}

// All homomorphisms g -> t, found by assigning images to a generating set
// and propagating products until fixpoint or conflict.
inline std::vector<std::vector<int>> homomorphisms(const GroupTable& g, const GroupTable& t) {
    auto gens = generating_set(g);
    std::vector<std::vector<int>> out;
    std::vector<int> choice(gens.size(), 0);
    auto attempt = [&]() {
        std::vector<int> f(g.order, -1);
        f[g.identity] = t.identity;
        for (size_t i = 0; i < gens.size(); ++i) {
            if (f[gens[i]] >= 0 && f[gens[i]] != choice[i]) return;
            f[gens[i]] = choice[i];
        }
        bool changed = true;
        while (changed) {
            changed = false;
            for (int x = 0; x < g.order; ++x) {
                if (f[x] < 0) continue;
                for (int y = 0; y < g.order; ++y) {
                    if (f[y] < 0) continue;
                    int z = g.mul(x, y), w = t.mul(f[x], f[y]);
                    if (f[z] < 0) { f[z] = w; changed = true; }
                    else if (f[z] != w) return;
                }
            }
        }
        for (int x = 0; x < g.order; ++x)
            if (f[x] < 0) return; // generators failed to generate (cannot happen)
        out.push_back(std::move(f));
    };
    if (gens.empty()) { attempt(); return out; }
    for (;;) {
        attempt();
        int i = static_cast<int>(gens.size()) - 1;
        while (i >= 0 && ++choice[i] == t.order) choice[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

namespace detail {
inline bool iso_extend(const GroupTable& a, const GroupTable& b, std::vector<int>& f, int next) {
    if (next == a.order) return true;
    if (f[next] >= 0) return iso_extend(a, b, f, next + 1);
    std::vector<char> used(b.order, 0);
    for (int x = 0; x < a.order; ++x)
        if (f[x] >= 0) used[f[x]] = 1;
    for (int img = 0; img < b.order; ++img) {
        if (used[img]) continue;
        std::vector<int> saved = f;
        f[next] = img;
        bool ok = true;
        // propagate products among defined elements
        bool changed = true;
        while (ok && changed) {
            changed = false;
            for (int x = 0; x < a.order && ok; ++x) {
                if (f[x] < 0) continue;
                for (int y = 0; y < a.order; ++y) {
                    if (f[y] < 0) continue;
                    int z = a.mul(x, y), w = b.mul(f[x], f[y]);
                    if (f[z] < 0) { f[z] = w; changed = true; }
                    else if (f[z] != w) { ok = false; break; }
                }
            }
        }
        if (ok) {
            // injectivity
            std::vector<char> seen(b.order, 0);
            for (int x = 0; x < a.order && ok; ++x)
                if (f[x] >= 0) {
                    if (seen[f[x]]) ok = false;
                    seen[f[x]] = 1;
                }
        }
        if (ok && iso_extend(a, b, f, next + 1)) return true;
        f = saved;
    }
    return false;
}
} // namespace detail

inline bool is_isomorphic(const GroupTable& a, const GroupTable& b) {
    if (a.order != b.order) return false;
    std::vector<int> f(a.order, -1);
    f[a.identity] = b.identity;
    return detail::iso_extend(a, b, f, 0);
}

} // namespace rtglab
