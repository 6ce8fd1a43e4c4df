#pragma once

#include <boost/dynamic_bitset.hpp>

#include <string>
#include <vector>

#include "rtglab/errors.hpp"

namespace rtglab {

using PointSet = boost::dynamic_bitset<>;

// Finite (Alexandrov) topology as the minimal-open-neighborhood matrix:
// row x is U_x, and minnbhd[x][y] means y lies in U_x. Opens are exactly the
// sets V with U_x subset of V for every x in V.
struct AlexandrovTopology {
    int points = 0;
    std::vector<PointSet> minnbhd;

    static AlexandrovTopology discrete(int n) {
        AlexandrovTopology t{n, std::vector<PointSet>(n, PointSet(n))};
        for (int i = 0; i < n; ++i) t.minnbhd[i].set(i);
        return t;
    }
    static AlexandrovTopology indiscrete(int n) {
        AlexandrovTopology t{n, std::vector<PointSet>(n, PointSet(n))};
        for (int i = 0; i < n; ++i) t.minnbhd[i].set();
        return t;
    }

    bool in_nbhd(int x, int y) const { return minnbhd[x].test(y); }

    void validate() const {
        for (int x = 0; x < points; ++x) {
            if (static_cast<int>(minnbhd[x].size()) != points)
                throw Error("topology row size mismatch");
            if (!minnbhd[x].test(x)) throw Error("topology not reflexive at " + std::to_string(x));
        }
        for (int x = 0; x < points; ++x)
            for (int y = 0; y < points; ++y)
                if (minnbhd[x].test(y) && !minnbhd[y].is_subset_of(minnbhd[x]))
                    throw Error("topology not transitive at (" + std::to_string(x) + "," + std::to_string(y) + ")");
    }

    friend bool operator==(const AlexandrovTopology& a, const AlexandrovTopology& b) {
        return a.points == b.points && a.minnbhd == b.minnbhd;
    }
    friend bool operator!=(const AlexandrovTopology& a, const AlexandrovTopology& b) { return !(a == b); }
};

inline bool is_open(const AlexandrovTopology& t, const PointSet& v) {
    for (int x = 0; x < t.points; ++x)
        if (v.test(x) && !t.minnbhd[x].is_subset_of(v)) return false;
    return true;
}

// cl(A) = {y : U_y meets A}
inline PointSet closure(const AlexandrovTopology& t, const PointSet& a) {
    PointSet out(t.points);
    for (int y = 0; y < t.points; ++y)
        if (t.minnbhd[y].intersects(a)) out.set(y);
    return out;
}

inline PointSet interior(const AlexandrovTopology& t, const PointSet& a) {
    PointSet out(t.points);
    for (int x = 0; x < t.points; ++x)
        if (t.minnbhd[x].is_subset_of(a)) out.set(x);
    return out;
}

// Smallest open superset: union of minimal neighborhoods over the set.
inline PointSet open_hull(const AlexandrovTopology& t, const PointSet& a) {
    PointSet out(t.points);
    for (int x = 0; x < t.points; ++x)
        if (a.test(x)) out |= t.minnbhd[x];
    return out;
}

inline AlexandrovTopology product_topology(const AlexandrovTopology& t1, const AlexandrovTopology& t2) {
    const int n = t1.points * t2.points;
    AlexandrovTopology p{n, std::vector<PointSet>(n, PointSet(n))};
    for (int x = 0; x < t1.points; ++x)
        for (int a = 0; a < t2.points; ++a) {
            PointSet& row = p.minnbhd[x * t2.points + a];
            for (int y = 0; y < t1.points; ++y) {
                if (!t1.minnbhd[x].test(y)) continue;
                for (int b = 0; b < t2.points; ++b)
                    if (t2.minnbhd[a].test(b)) row.set(y * t2.points + b);
            }
        }
    return p;
}

// Final (quotient) topology of t under a surjection f onto {0..y_count-1}.
// Minimal neighborhood of y is grown by saturation: V <- f(open_hull(f^-1(V)))
// until fixpoint.
inline AlexandrovTopology final_topology(const AlexandrovTopology& t, const std::vector<int>& f, int y_count) {
    std::vector<char> hit(y_count, 0);
    for (int x = 0; x < t.points; ++x) {
        if (f[x] < 0 || f[x] >= y_count) throw Error("final_topology: image out of range");
        hit[f[x]] = 1;
    }
    for (int y = 0; y < y_count; ++y)
        if (!hit[y]) throw NotSurjective(y);

    std::vector<PointSet> pre(y_count, PointSet(t.points));
    for (int x = 0; x < t.points; ++x) pre[f[x]].set(x);

    AlexandrovTopology out{y_count, std::vector<PointSet>(y_count, PointSet(y_count))};
    for (int y = 0; y < y_count; ++y) {
        PointSet v(y_count);
        v.set(y);
        for (;;) {
            PointSet lifted(t.points);
            for (int z = 0; z < y_count; ++z)
                if (v.test(z)) lifted |= pre[z];
            PointSet hull = open_hull(t, lifted);
            PointSet next = v;
            for (int x = 0; x < t.points; ++x)
                if (hull.test(x)) next.set(f[x]);
            if (next == v) break;
            v = std::move(next);
        }
        out.minnbhd[y] = std::move(v);
    }
    out.validate(); // saturation preserves reflexivity and transitivity
    return out;
}

// Minimal-neighborhood criterion: f continuous iff f(U_x) subset of U_{f(x)}.
inline bool is_continuous(const std::vector<int>& f, const AlexandrovTopology& tx, const AlexandrovTopology& ty) {
    for (int x = 0; x < tx.points; ++x)
        for (int y = 0; y < tx.points; ++y)
            if (tx.minnbhd[x].test(y) && !ty.minnbhd[f[x]].test(f[y])) return false;
    return true;
}

inline bool is_open_map(const std::vector<int>& f, const AlexandrovTopology& tx, const AlexandrovTopology& ty) {
    for (int x = 0; x < tx.points; ++x) {
        PointSet img(ty.points);
        for (int y = 0; y < tx.points; ++y)
            if (tx.minnbhd[x].test(y)) img.set(f[y]);
        if (!is_open(ty, img)) return false;
    }
    return true;
}

// All open sets, by filtering subsets. Exponential; callers gate the size.
inline std::vector<PointSet> all_opens(const AlexandrovTopology& t) {
    if (t.points > 20) throw OrderTooLarge(t.points, 20);
    std::vector<PointSet> out;
    const std::uint64_t lim = 1ull << t.points;
    for (std::uint64_t m = 0; m < lim; ++m) {
        PointSet v(t.points);
        for (int i = 0; i < t.points; ++i)
            if ((m >> i) & 1u) v.set(i);
        if (is_open(t, v)) out.push_back(std::move(v));
    }
    return out;
}

// Definition-level continuity: every open preimage is open.
inline bool is_continuous_bruteforce(const std::vector<int>& f, const AlexandrovTopology& tx,
                                     const AlexandrovTopology& ty) {
    for (const PointSet& v : all_opens(ty)) {
        PointSet pre(tx.points);
        for (int x = 0; x < tx.points; ++x)
            if (v.test(f[x])) pre.set(x);
        if (!is_open(tx, pre)) return false;
    }
    return true;
}

struct SeparationFlags {
    bool is_t0 = false, is_t1 = false, is_hausdorff = false, is_discrete = false, is_indiscrete = false;
};

inline SeparationFlags separation(const AlexandrovTopology& t) {
    SeparationFlags s;
    s.is_t0 = true;
    bool discrete = true, indiscrete = true;
    for (int x = 0; x < t.points; ++x) {
        if (t.minnbhd[x].count() != 1) discrete = false;
        if (static_cast<int>(t.minnbhd[x].count()) != t.points) indiscrete = false;
        for (int y = 0; y < t.points; ++y)
            if (x != y && t.minnbhd[x].test(y) && t.minnbhd[y].test(x)) s.is_t0 = false;
    }
    s.is_discrete = discrete;
    s.is_indiscrete = indiscrete;
    s.is_t1 = discrete; // finite: T1 = discrete
    s.is_hausdorff = discrete;
    return s;
}

// Subspace topology on the listed points (in the given order).
inline AlexandrovTopology induced_topology(const AlexandrovTopology& t, const std::vector<int>& pts) {
    const int m = static_cast<int>(pts.size());
    AlexandrovTopology out{m, std::vector<PointSet>(m, PointSet(m))};
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (t.minnbhd[pts[i]].test(pts[j])) out.minnbhd[i].set(j);
    return out;
}

// Every A-open is B-open (A coarser than B).
inline bool coarser_or_equal(const AlexandrovTopology& a, const AlexandrovTopology& b) {
    for (int x = 0; x < a.points; ++x)
        if (!is_open(b, a.minnbhd[x])) return false;
    return true;
}

// Classes of the symmetric-transitive closure of the specialization preorder;
// complex-valued continuous functions are exactly the class-constant ones.
inline std::vector<int> component_of(const AlexandrovTopology& t) {
    std::vector<int> parent(t.points);
    for (int i = 0; i < t.points; ++i) parent[i] = i;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int x = 0; x < t.points; ++x)
        for (int y = 0; y < t.points; ++y)
            if (t.minnbhd[x].test(y)) parent[find(x)] = find(y);
    std::vector<int> cls(t.points, -1);
    int next = 0;
    for (int x = 0; x < t.points; ++x) {
        int r = find(x);
        if (cls[r] < 0) cls[r] = next++;
        cls[x] = cls[r];
    }
    return cls; // class ids in first-seen order
}

inline int component_count(const AlexandrovTopology& t) {
    auto c = component_of(t);
    int m = 0;
    for (int v : c) m = std::max(m, v + 1);
    return m;
}

// Text rendering of the preorder: one line per point with its minimal open
// set, plus the component partition.
inline std::string pretty_print(const AlexandrovTopology& t) {
    std::string out;
    for (int x = 0; x < t.points; ++x) {
        out += "U_" + std::to_string(x) + " = {";
        bool first = true;
        for (int y = 0; y < t.points; ++y)
            if (t.minnbhd[x].test(y)) {
                if (!first) out += ",";
                out += std::to_string(y);
                first = false;
            }
        out += "}\n";
    }
    auto cls = component_of(t);
    int m = 0;
    for (int v : cls) m = std::max(m, v + 1);
    out += "components:";
    for (int c = 0; c < m; ++c) {
        out += " {";
        bool first = true;
        for (int x = 0; x < t.points; ++x)
            if (cls[x] == c) {
                if (!first) out += ",";
                out += std::to_string(x);
                first = false;
            }
        out += "}";
    }
    out += "\n";
    return out;
}

} // namespace rtglab
