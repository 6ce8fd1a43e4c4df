#pragma once

#include <vector>

#include "rtglab/measures.hpp"
#include "rtglab/rtg.hpp"

namespace rtglab {

enum class SystemMode { strict, relaxed };

// L/M for subgroups M <= L of the ambient group, carrying the quotient of
// the induced topology.
struct SubQuotient {
    GroupTable table;            // group on the cosets of M in L
    std::vector<int> l_elements; // global elements of L, sorted
    std::vector<int> proj_local; // local index in L -> coset index
    std::vector<int> coset_rep_global; // coset -> a global representative
    AlexandrovTopology topology;
};

inline SubQuotient make_sub_quotient(const RtGroup& r, const Subgrp& l, const Subgrp& m) {
    SubQuotient out;
    out.l_elements = l.elements();
    const int nl = static_cast<int>(out.l_elements.size());
    std::vector<int> local_of(r.order(), -1);
    for (int i = 0; i < nl; ++i) local_of[out.l_elements[i]] = i;

    std::vector<std::vector<int>> tab(nl, std::vector<int>(nl));
    for (int i = 0; i < nl; ++i)
        for (int j = 0; j < nl; ++j)
            tab[i][j] = local_of[r.group.mul(out.l_elements[i], out.l_elements[j])];
    GroupTable lgrp = validate_group(tab);

    std::uint64_t m_local = 0;
    for (int x : m.elements()) {
        if (local_of[x] < 0) throw PreconditionFailed("M subset of L", "element " + std::to_string(x));
        m_local |= 1ull << local_of[x];
    }
    QuotientGroup q = quotient_group(lgrp, Subgrp{m_local, nl});
    out.table = q.table;
    out.proj_local = q.projection;
    out.coset_rep_global.assign(q.table.order, -1);
    for (int i = 0; i < nl; ++i)
        if (out.coset_rep_global[q.projection[i]] < 0)
            out.coset_rep_global[q.projection[i]] = out.l_elements[i];

    AlexandrovTopology induced = induced_topology(r.tau, out.l_elements);
    out.topology = final_topology(induced, out.proj_local, q.table.order);
    return out;
}

struct StepCert {
    bool quotient_hausdorff = false;
    bool quotient_topological = false;
    bool action_jointly_continuous = false;
    bool action_separately_continuous = false;
};

// Decreasing chain G = L_0 > L_1 > ... > L_k = {e} of subgroups normal in G,
// with the per-level and per-step certificates that drive the Haar
// construction.
struct NormalSystem {
    std::vector<Subgrp> chain;
    SystemMode mode = SystemMode::relaxed;
    std::vector<bool> level_sigma_closed; // per chain entry
    std::vector<StepCert> steps;          // per consecutive pair

    bool certified() const {
        if (chain.size() < 2) return false;
        for (size_t i = 0; i + 1 < chain.size(); ++i) {
            const StepCert& s = steps[i];
            if (!s.quotient_topological || !s.action_jointly_continuous) return false;
            if (mode == SystemMode::strict && !s.quotient_hausdorff) return false;
        }
        if (mode == SystemMode::strict)
            for (bool c : level_sigma_closed)
                if (!c) return false;
        return true;
    }
};

namespace detail {
inline bool subgroup_sigma_closed(const RtGroup& r, const Subgrp& l) {
    PointSet s(r.order());
    for (int x : l.elements()) s.set(x);
    return closure(sigma_topology(r), s) == s;
}

inline StepCert certify_step(const RtGroup& r, const Subgrp& l, const Subgrp& m) {
    StepCert cert;
    SubQuotient lm = make_sub_quotient(r, l, m);
    RtGroup lm_rtg = make_rtg_from_topology(lm.table, lm.topology);
    cert.quotient_hausdorff = separation(lm.topology).is_hausdorff;
    cert.quotient_topological = is_topological_direct(lm_rtg);

    QuotientRtg gm = quotient_rtg(r, m);
    const RtGroup& gq = gm.quotient;
    const int qg = gq.order(), ql = lm.table.order;
    std::vector<int> action(qg * ql);
    for (int a = 0; a < qg; ++a) {
        int xrep = -1;
        for (int x = 0; x < r.order(); ++x)
            if (gm.projection[x] == a) { xrep = x; break; }
        for (int b = 0; b < ql; ++b)
            action[a * ql + b] = gm.projection[r.group.mul(xrep, lm.coset_rep_global[b])];
    }
    cert.action_jointly_continuous =
        is_continuous(action, product_topology(gq.tau, lm.topology), gq.tau);

    bool sep = true;
    for (int b = 0; b < ql && sep; ++b) {
        std::vector<int> slice(qg);
        for (int a = 0; a < qg; ++a) slice[a] = action[a * ql + b];
        sep = is_continuous(slice, gq.tau, gq.tau);
    }
    for (int a = 0; a < qg && sep; ++a) {
        std::vector<int> slice(ql);
        for (int b = 0; b < ql; ++b) slice[b] = action[a * ql + b];
        sep = is_continuous(slice, lm.topology, gq.tau);
    }
    cert.action_separately_continuous = sep;
    return cert;
}

inline void chain_dfs(const RtGroup& r, const std::vector<Subgrp>& normals, std::vector<Subgrp>& cur,
                      SystemMode mode, std::vector<NormalSystem>& out) {
    const Subgrp top = cur.back();
    if (top.size() == 1) {
        NormalSystem sys;
        sys.chain = cur;
        sys.mode = mode;
        for (const Subgrp& l : sys.chain) sys.level_sigma_closed.push_back(subgroup_sigma_closed(r, l));
        for (size_t i = 0; i + 1 < sys.chain.size(); ++i)
            sys.steps.push_back(certify_step(r, sys.chain[i], sys.chain[i + 1]));
        if (sys.certified()) out.push_back(std::move(sys));
        return;
    }
    for (const Subgrp& next : normals) {
        if (next.size() >= top.size() || !next.subset_of(top)) continue;
        cur.push_back(next);
        chain_dfs(r, normals, cur, mode, out);
        cur.pop_back();
    }
}
} // namespace detail

// Exhaustive search over strictly decreasing chains of normal subgroups of G
// from G to {e}; every returned system carries full certificates for the
// requested mode. An empty list is a valid outcome.
inline std::vector<NormalSystem> find_normal_systems(const RtGroup& r, SystemMode mode) {
    std::vector<Subgrp> normals;
    for (const Subgrp& h : subgroups(r.group))
        if (is_normal(r.group, h)) normals.push_back(h);
    std::vector<NormalSystem> out;
    std::vector<Subgrp> cur{r.group.full_subgroup()};
    detail::chain_dfs(r, normals, cur, mode, out);
    return out;
}

// The averaging map C(G/M) -> C(G/L), f -> integral over L/M of f(. t).
// Functions on quotients are indexed by coset index.
struct AveragingOperator {
    std::vector<int> proj_gm, proj_gl; // G -> G/M, G -> G/L
    std::vector<int> rep_gl;           // G/L coset -> global representative
    std::vector<int> rep_gm;
    std::vector<int> l_elements;
    int q_m = 0, q_l = 0;
    const GroupTable* g = nullptr;

    FnVec apply(const FnVec& f) const {
        FnVec out(q_l);
        CRat inv_l(1, static_cast<long long>(l_elements.size()));
        for (int c = 0; c < q_l; ++c) {
            CRat s;
            for (int t : l_elements) s += f[proj_gm[g->mul(rep_gl[c], t)]];
            out[c] = s * inv_l;
        }
        return out;
    }
    // inclusion C(G/L) into C(G/M)
    FnVec pullback(const FnVec& f) const {
        FnVec out(q_m);
        for (int c = 0; c < q_m; ++c) out[c] = f[proj_gl[rep_gm[c]]];
        return out;
    }
    // right translation by [g] on the G/M level
    FnVec translate_gm(const FnVec& f, int global_g) const {
        FnVec out(q_m);
        for (int c = 0; c < q_m; ++c) out[c] = f[proj_gm[g->mul(rep_gm[c], global_g)]];
        return out;
    }
    // right translation by [g] on the G/L level
    FnVec translate_gl(const FnVec& f, int global_g) const {
        FnVec out(q_l);
        for (int c = 0; c < q_l; ++c) out[c] = f[proj_gl[g->mul(rep_gl[c], global_g)]];
        return out;
    }
};

inline AveragingOperator averaging_operator(const RtGroup& r, const Subgrp& l, const Subgrp& m) {
    if (!m.subset_of(l)) throw PreconditionFailed("M subset of L", "mask");
    if (!is_normal(r.group, l)) throw PreconditionFailed("L normal in G", "L");
    if (!is_normal(r.group, m)) throw PreconditionFailed("M normal in G", "M");
    SubQuotient lm = make_sub_quotient(r, l, m);
    RtGroup lm_rtg = make_rtg_from_topology(lm.table, lm.topology);
    if (!is_topological_direct(lm_rtg))
        throw PreconditionFailed("L/M topological", "joint continuity fails");

    QuotientGroup qm = quotient_group(r.group, m);
    QuotientGroup ql = quotient_group(r.group, l);
    AveragingOperator op;
    op.proj_gm = qm.projection;
    op.proj_gl = ql.projection;
    op.q_m = qm.table.order;
    op.q_l = ql.table.order;
    op.rep_gm.assign(op.q_m, -1);
    op.rep_gl.assign(op.q_l, -1);
    for (int x = 0; x < r.order(); ++x) {
        if (op.rep_gm[qm.projection[x]] < 0) op.rep_gm[qm.projection[x]] = x;
        if (op.rep_gl[ql.projection[x]] < 0) op.rep_gl[ql.projection[x]] = x;
    }
    op.l_elements = l.elements();
    op.g = &r.group;
    return op;
}

// Per-level functionals of the inductive construction, for inspection.
struct HaarState {
    // psi[i] lives on C(G/chain[i+1]); the last one is the functional on C(G).
    std::vector<std::vector<CRat>> psi;
    std::vector<std::vector<int>> proj; // G -> G/chain[i+1]
};

inline HaarState construct_haar_state(const RtGroup& r, const NormalSystem& sys) {
    if (!sys.certified()) throw SystemNotCertified();
    HaarState st;
    const int k = static_cast<int>(sys.chain.size()) - 1;
    // base level: Haar on G/L_1 is uniform over its cosets (equivalently over
    // the Borel cells, which are equal-size unions of cosets)
    {
        QuotientGroup q1 = quotient_group(r.group, sys.chain[1]);
        std::vector<CRat> base(q1.table.order, CRat(1, q1.table.order));
        st.psi.push_back(std::move(base));
        st.proj.push_back(q1.projection);
    }
    for (int step = 1; step < k; ++step) {
        const Subgrp& l = sys.chain[step];
        const Subgrp& m = sys.chain[step + 1];
        AveragingOperator phi = averaging_operator(r, l, m);
        const std::vector<CRat>& prev = st.psi.back();
        std::vector<CRat> next(phi.q_m);
        CRat inv_l(1, static_cast<long long>(phi.l_elements.size()));
        for (int c = 0; c < phi.q_l; ++c)
            for (int t : phi.l_elements)
                next[phi.proj_gm[r.group.mul(phi.rep_gl[c], t)]] += prev[c] * inv_l;
        st.psi.push_back(std::move(next));
        st.proj.push_back(phi.proj_gm);
    }
    return st;
}

// Finite induction down a certified chain; the result must coincide with the
// solver's Haar measure, which callers assert.
inline Meas construct_haar(const RtGroup& r, const NormalSystem& sys) {
    HaarState st = construct_haar_state(r, sys);
    const std::vector<int>& proj = st.proj.back(); // quotient by {e}: a relabeling
    std::vector<CRat> w(r.order());
    for (int x = 0; x < r.order(); ++x) w[x] = st.psi.back()[proj[x]];
    return make_meas(r, std::move(w));
}

inline bool is_right_invariant(const RtGroup& r, const Meas& mu) {
    for (int g = 0; g < r.order(); ++g)
        if (!radon_equal(translate_meas(r, mu, g, Side::right), mu)) return false;
    return true;
}

// True iff canonical forms are proportional; both inputs must be right
// invariant.
inline bool verify_uniqueness(const RtGroup& r, const Meas& mu1, const Meas& mu2) {
    if (!is_right_invariant(r, mu1) || !is_right_invariant(r, mu2)) throw NotInvariant();
    linalg::Matrix<CRat> m{mu1.canonical, mu2.canonical};
    return linalg::rank(std::move(m)) <= 1;
}

// Finite shadow of the fixed-point route: the uniform average of the right
// orbit, normalized to mass one.
inline Meas haar_from_orbit_average(const RtGroup& r, const Meas& mu) {
    if (!in_msigma(r, mu)) throw MuNotInMSigma();
    if (mu.total_mass().is_zero()) throw ZeroTotalMass();
    std::vector<CRat> w(r.order());
    for (int g = 0; g < r.order(); ++g) {
        Meas t = translate_meas(r, mu, g, Side::right);
        for (int x = 0; x < r.order(); ++x) w[x] += t.weights[x];
    }
    CRat scale = CRat(1) / (mu.total_mass() * CRat(r.order()));
    for (CRat& v : w) v *= scale;
    return make_meas(r, std::move(w));
}

} // namespace rtglab
