#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "rtglab/group.hpp"
#include "rtglab/topology.hpp"

namespace rtglab {

// sigma, sigma-sigma and N(G), computed once per instance and cached.
struct SigmaData {
    AlexandrovTopology sigma;
    AlexandrovTopology sigma_sigma;
    Subgrp n_of_g;
};

namespace detail {
struct SigmaCache {
    std::once_flag once;
    std::optional<SigmaData> data;
};
} // namespace detail

// A finite group together with a right-invariant topology. The minimal open
// sets are exactly the right cosets of the cone subgroup H = U_e, which is
// verified (or derived) at construction; that classification is what makes
// closed-form oracles available for everything downstream.
struct RtGroup {
    GroupTable group;
    AlexandrovTopology tau;
    Subgrp cone;

    std::vector<int> cell_of;            // element -> tau-cell index
    std::vector<std::vector<int>> cells; // tau-cells, ordered by least element

    std::shared_ptr<detail::SigmaCache> sigma_cache = std::make_shared<detail::SigmaCache>();

    int order() const { return group.order; }
    int cell_count() const { return static_cast<int>(cells.size()); }
    int cell_rep(int c) const { return cells[c][0]; }
    // image cell of cell c under right translation by g
    int cell_mul(int c, int g) const { return cell_of[group.mul(cells[c][0], g)]; }

    const SigmaData& sigma() const;

    std::string id() const {
        std::string s = group.name + ":cone[";
        bool first = true;
        for (int x : cone.elements()) {
            if (!first) s += ",";
            s += std::to_string(x);
            first = false;
        }
        return s + "]";
    }
};

namespace detail {
inline void fill_cells(RtGroup& r) {
    const int n = r.group.order;
    r.cell_of.assign(n, -1);
    r.cells.clear();
    for (int x = 0; x < n; ++x) {
        if (r.cell_of[x] >= 0) continue;
        int c = static_cast<int>(r.cells.size());
        std::vector<int> cell;
        for (int y = 0; y < n; ++y)
            if (r.tau.minnbhd[x].test(y)) {
                r.cell_of[y] = c;
                cell.push_back(y);
            }
        r.cells.push_back(std::move(cell));
    }
}
} // namespace detail

// Canonical finite model: topology with U_x = Hx.
inline RtGroup make_rtg(const GroupTable& g, const Subgrp& h) {
    if (h.n != g.order || !is_subgroup(g, h)) throw NotASubgroup("cone");
    RtGroup r;
    r.group = g;
    r.cone = h;
    r.tau.points = g.order;
    r.tau.minnbhd.assign(g.order, PointSet(g.order));
    for (int x = 0; x < g.order; ++x)
        for (int a : h.elements()) r.tau.minnbhd[x].set(g.mul(a, x)); // U_x = Hx
    r.tau.validate();
    detail::fill_cells(r);
    return r;
}

// Validates right-invariance of an arbitrary topology and extracts the cone.
inline RtGroup make_rtg_from_topology(const GroupTable& g, const AlexandrovTopology& t) {
    if (t.points != g.order) throw Error("topology point count differs from group order");
    t.validate();
    for (int x = 0; x < g.order; ++x)
        for (int y = 0; y < g.order; ++y)
            for (int gg = 0; gg < g.order; ++gg)
                if (t.minnbhd[x].test(y) != t.minnbhd[g.mul(x, gg)].test(g.mul(y, gg)))
                    throw NotRightInvariant(x, y, gg);
    std::uint64_t cone_mask = 0;
    for (int y = 0; y < g.order; ++y)
        if (t.minnbhd[g.identity].test(y)) cone_mask |= 1ull << y;
    Subgrp cone{cone_mask, g.order};
    if (!is_subgroup(g, cone))
        throw InternalCheckFailure("U_e of a right-invariant topology must be a subgroup");
    RtGroup r = make_rtg(g, cone);
    if (r.tau != t) throw InternalCheckFailure("right-invariant topology is not the coset partition of its cone");
    return r;
}

// Joint continuity of (x,y) -> xy plus continuity of inversion, checked
// directly on the product topology.
inline bool is_topological_direct(const RtGroup& r) {
    const int n = r.group.order;
    AlexandrovTopology prod = product_topology(r.tau, r.tau);
    std::vector<int> mul_map(n * n), inv_map(n);
    for (int x = 0; x < n; ++x) {
        inv_map[x] = r.group.inv(x);
        for (int y = 0; y < n; ++y) mul_map[x * n + y] = r.group.mul(x, y);
    }
    return is_continuous(mul_map, prod, r.tau) && is_continuous(inv_map, r.tau, r.tau);
}

inline bool is_topological(const RtGroup& r) { return is_normal(r.group, r.cone); }

// Lambda(G): elements whose left translation is continuous. Computed by the
// direct continuity check; the normalizer of the cone is the closed-form
// oracle and the two must agree.
inline Subgrp topological_center(const RtGroup& r) {
    const int n = r.group.order;
    std::uint64_t direct = 0;
    for (int g = 0; g < n; ++g) {
        std::vector<int> lg(n);
        for (int x = 0; x < n; ++x) lg[x] = r.group.mul(g, x);
        if (is_continuous(lg, r.tau, r.tau)) direct |= 1ull << g;
    }
    Subgrp oracle = normalizer(r.group, r.cone);
    if (direct != oracle.mask)
        throw InternalCheckFailure("topological center differs from normalizer oracle");
    return {direct, n};
}

inline bool is_admissible(const RtGroup& r) {
    PointSet lam(r.group.order);
    for (int x : topological_center(r).elements()) lam.set(x);
    return closure(r.tau, lam).count() == static_cast<size_t>(r.group.order);
}

namespace detail {
inline std::vector<int> quotient_map_phi(const GroupTable& g) {
    const int n = g.order;
    std::vector<int> phi(n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) phi[x * n + y] = g.mul(g.inv(x), y);
    return phi;
}

inline AlexandrovTopology coset_partition(const GroupTable& g, const Subgrp& h) {
    AlexandrovTopology t{g.order, std::vector<PointSet>(g.order, PointSet(g.order))};
    for (int x = 0; x < g.order; ++x)
        for (int a : h.elements()) t.minnbhd[x].set(g.mul(a, x));
    return t;
}

inline SigmaData compute_sigma(const RtGroup& r) {
    const GroupTable& g = r.group;
    auto phi = quotient_map_phi(g);

    AlexandrovTopology sigma = final_topology(product_topology(r.tau, r.tau), phi, g.order);
    Subgrp ncl = normal_closure(g, r.cone);
    if (sigma != coset_partition(g, ncl))
        throw InternalCheckFailure("sigma differs from the normal-closure coset oracle");

    AlexandrovTopology ss = final_topology(product_topology(sigma, sigma), phi, g.order);
    if (ss != coset_partition(g, ncl))
        throw InternalCheckFailure("sigma-sigma differs from the normal-closure coset oracle");

    PointSet e(g.order);
    e.set(g.identity);
    PointSet ngset = closure(ss, e);
    std::uint64_t ngmask = 0;
    for (int i = 0; i < g.order; ++i)
        if (ngset.test(i)) ngmask |= 1ull << i;
    if (ngmask != ncl.mask)
        throw InternalCheckFailure("sigma-sigma closure of {e} differs from normal closure");

    return SigmaData{std::move(sigma), std::move(ss), Subgrp{ngmask, g.order}};
}
} // namespace detail

inline const SigmaData& RtGroup::sigma() const {
    std::call_once(sigma_cache->once, [this] { sigma_cache->data = detail::compute_sigma(*this); });
    return *sigma_cache->data;
}

inline const AlexandrovTopology& sigma_topology(const RtGroup& r) { return r.sigma().sigma; }
inline const AlexandrovTopology& sigma_sigma_topology(const RtGroup& r) { return r.sigma().sigma_sigma; }
inline const Subgrp& n_of_g(const RtGroup& r) { return r.sigma().n_of_g; }

enum class NbhdVariant { nbhds_in_G, nbhds_in_L };

// N(L): intersection of all sigma-closed sigma-neighborhoods of e, with the
// ambient read (in G) or the relative read (in L with the induced sigma).
// Polynomial criterion: x escapes iff e lies in the interior of the
// complement of U_x.
inline Subgrp n_of(const RtGroup& r, const Subgrp& l, NbhdVariant variant) {
    if (!is_subgroup(r.group, l)) throw NotASubgroup("L");
    const AlexandrovTopology& s = sigma_topology(r);
    const int e = r.group.identity;
    std::uint64_t out = 0;
    if (variant == NbhdVariant::nbhds_in_G) {
        for (int x : l.elements())
            if (s.minnbhd[e].intersects(s.minnbhd[x])) out |= 1ull << x;
    } else {
        auto pts = l.elements();
        AlexandrovTopology sl = induced_topology(s, pts);
        int el = -1;
        for (size_t i = 0; i < pts.size(); ++i)
            if (pts[i] == e) el = static_cast<int>(i);
        for (size_t i = 0; i < pts.size(); ++i)
            if (sl.minnbhd[el].intersects(sl.minnbhd[i])) out |= 1ull << pts[i];
    }
    Subgrp result{out, r.group.order};
    if (!is_subgroup(r.group, result)) throw InternalCheckFailure("N(L) is not a subgroup");
    return result;
}

struct QuotientRtg {
    RtGroup quotient;                  // G/K with the tau-quotient topology
    std::vector<int> projection;       // element -> coset
    AlexandrovTopology sigma_quotient; // quotient of sigma under the projection
    bool kernel_sigma_closed = false;
    bool kernel_sigma_sigma_closed = false;
    bool hausdorff = false;
    bool topological = false;
};

// G/K with the final topology of tau; the sigma of the quotient group must
// agree with the quotient of sigma, which is asserted here.
inline QuotientRtg quotient_rtg(const RtGroup& r, const Subgrp& k) {
    QuotientGroup q = quotient_group(r.group, k); // throws NotNormal
    AlexandrovTopology tau_q = final_topology(r.tau, q.projection, q.table.order);
    RtGroup quot = make_rtg_from_topology(q.table, tau_q);

    AlexandrovTopology sigma_of_quotient = sigma_topology(quot);
    AlexandrovTopology quotient_of_sigma = final_topology(sigma_topology(r), q.projection, q.table.order);
    if (sigma_of_quotient != quotient_of_sigma)
        throw InternalCheckFailure("sigma of quotient differs from quotient of sigma");

    PointSet kset(r.group.order);
    for (int x : k.elements()) kset.set(x);
    bool s_closed = closure(sigma_topology(r), kset) == kset;
    bool ss_closed = closure(sigma_sigma_topology(r), kset) == kset;

    QuotientRtg out;
    out.sigma_quotient = std::move(quotient_of_sigma);
    out.projection = q.projection;
    out.kernel_sigma_closed = s_closed;
    out.kernel_sigma_sigma_closed = ss_closed;
    out.hausdorff = separation(tau_q).is_hausdorff;
    out.topological = is_topological_direct(quot);
    out.quotient = std::move(quot);
    return out;
}

struct NamiokaReport {
    bool admissible = false;
    bool phi_open = false;        // product(tau,tau) -> (G,sigma) open
    bool base_at_identity = false; // {U^-1 U} a base of sigma-neighborhoods of e
    std::vector<int> uinv_u;       // the set U_e^-1 U_e
};

inline NamiokaReport check_namioka_base(const RtGroup& r) {
    NamiokaReport rep;
    rep.admissible = is_admissible(r);
    const GroupTable& g = r.group;
    rep.phi_open = is_open_map(detail::quotient_map_phi(g), product_topology(r.tau, r.tau), sigma_topology(r));

    PointSet b(g.order);
    for (int a : r.cone.elements())
        for (int c : r.cone.elements()) b.set(g.mul(g.inv(a), c));
    for (int x = 0; x < g.order; ++x)
        if (b.test(x)) rep.uinv_u.push_back(x);
    // With the canonical base {U_e} at e, the family is a base at e in sigma
    // iff U_e^-1 U_e is sigma-open and sits inside the minimal sigma
    // neighborhood of e.
    const AlexandrovTopology& s = sigma_topology(r);
    rep.base_at_identity = is_open(s, b) && b.is_subset_of(s.minnbhd[g.identity]);
    return rep;
}

} // namespace rtglab
