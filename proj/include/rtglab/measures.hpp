#pragma once

#include <vector>

#include "rtglab/functions.hpp"
#include "rtglab/linalg.hpp"
#include "rtglab/rtg.hpp"

namespace rtglab {

// Radon measure as exact point weights plus its canonical form: the weight
// aggregate per tau-cell. M(G) is the dual of C(G), so only the aggregates
// are observable; two measures are Radon-equal iff canonical forms agree.
struct Meas {
    std::vector<CRat> weights;   // per element
    std::vector<CRat> canonical; // per tau-cell

    CRat total_mass() const {
        CRat s;
        for (const CRat& w : canonical) s += w;
        return s;
    }
    double tv_norm() const { // reported only; exact math never uses it
        double s = 0;
        for (const CRat& w : canonical) s += w.to_double_abs();
        return s;
    }
};

inline Meas make_meas(const RtGroup& r, std::vector<CRat> weights) {
    Meas m;
    m.canonical.assign(r.cell_count(), CRat{});
    for (int x = 0; x < r.order(); ++x) m.canonical[r.cell_of[x]] += weights[x];
    m.weights = std::move(weights);
    return m;
}

// canonical lift: spread each cell weight uniformly over the cell
inline Meas meas_from_canonical(const RtGroup& r, const std::vector<CRat>& cellw) {
    std::vector<CRat> w(r.order());
    for (int c = 0; c < r.cell_count(); ++c) {
        CRat share = cellw[c] / CRat(static_cast<long long>(r.cells[c].size()));
        for (int x : r.cells[c]) w[x] = share;
    }
    return make_meas(r, std::move(w));
}

inline Meas delta(const RtGroup& r, int g) {
    std::vector<CRat> w(r.order());
    w[g] = CRat(1);
    return make_meas(r, std::move(w));
}

inline Meas uniform_measure(const RtGroup& r) {
    std::vector<CRat> w(r.order(), CRat(1, static_cast<long long>(r.order())));
    return make_meas(r, std::move(w));
}

inline bool radon_equal(const Meas& a, const Meas& b) { return a.canonical == b.canonical; }

// mu_g = mu(.g) and _g mu = mu(g.)
inline Meas translate_meas(const RtGroup& r, const Meas& mu, int g, Side side) {
    std::vector<CRat> w(r.order());
    for (int x = 0; x < r.order(); ++x)
        w[x] = side == Side::right ? mu.weights[r.group.mul(x, g)] : mu.weights[r.group.mul(g, x)];
    return make_meas(r, std::move(w));
}

// (f.mu)(y) = sum_x f(xy) mu(x); requires f tau-continuous so the value only
// depends on the canonical form of mu.
inline FnVec act(const RtGroup& r, const FnVec& f, const Meas& mu) {
    if (!is_continuous_fn(r.tau, f)) throw FNotContinuous();
    FnVec out(r.order());
    for (int y = 0; y < r.order(); ++y) {
        CRat s;
        for (int x = 0; x < r.order(); ++x) s += f[r.group.mul(x, y)] * mu.weights[x];
        out[y] = s;
    }
    return out;
}

inline std::vector<FnVec> cell_indicators(const RtGroup& r) {
    std::vector<FnVec> out;
    for (int c = 0; c < r.cell_count(); ++c) {
        FnVec f(r.order());
        for (int x : r.cells[c]) f[x] = CRat(1);
        out.push_back(std::move(f));
    }
    return out;
}

inline bool in_mc(const RtGroup& r, const Meas& mu) {
    for (const FnVec& f : cell_indicators(r))
        if (!is_continuous_fn(r.tau, act(r, f, mu))) return false;
    return true;
}

inline bool in_msigma(const RtGroup& r, const Meas& mu) {
    const AlexandrovTopology& s = sigma_topology(r);
    for (const FnVec& f : cell_indicators(r))
        if (!is_continuous_fn(s, act(r, f, mu))) return false;
    return true;
}

// mu box nu: f -> sum_y (f.mu)(y) nu(y). Defined when mu is in M_C, so that
// f.mu is continuous and the iterated pairing is well defined on canonical
// forms. Pointwise this is the usual convolution of weights.
inline Meas convolve(const RtGroup& r, const Meas& mu, const Meas& nu) {
    if (!in_mc(r, mu)) throw MuNotInMC();
    std::vector<CRat> w(r.order());
    for (int x = 0; x < r.order(); ++x) {
        if (mu.weights[x].is_zero()) continue;
        for (int y = 0; y < r.order(); ++y)
            w[r.group.mul(x, y)] += mu.weights[x] * nu.weights[y];
    }
    return make_meas(r, std::move(w));
}

enum class MeasTag { M_C, M_sigma, M_W, L_C, L_G };

// Subspace of M(G) in canonical (cell) coordinates.
struct MeasSubspace {
    linalg::QSpan span; // rows are canonical coordinate vectors
    MeasTag tag = MeasTag::M_C;

    int dimension() const { return span.dim(); }
    bool contains(const Meas& m) const { return span.contains(m.canonical); }
    bool contains_subspace(const MeasSubspace& o) const { return span.contains_all(o.span.basis); }
    std::vector<Meas> basis_measures(const RtGroup& r) const {
        std::vector<Meas> out;
        for (const auto& v : span.basis) out.push_back(meas_from_canonical(r, v));
        return out;
    }
    friend bool operator==(const MeasSubspace& a, const MeasSubspace& b) { return a.span == b.span; }
};

namespace detail {
// value of the continuous function R_y f on cell c
inline CRat ryf_on_cell(const RtGroup& r, const FnVec& f, int y, int c) {
    return f[r.group.mul(r.cell_rep(c), y)];
}

// rows demanding (f.mu) constant on the cells of `t`, for all f in the
// C(G,tau) basis; unknowns are canonical coordinates.
inline linalg::Matrix<CRat> act_constancy_rows(const RtGroup& r, const AlexandrovTopology& t) {
    linalg::Matrix<CRat> rows;
    const int cc = r.cell_count();
    auto fs = cell_indicators(r);
    for (const FnVec& f : fs)
        for (int y = 0; y < r.order(); ++y)
            for (int y2 = y + 1; y2 < r.order(); ++y2) {
                if (!t.minnbhd[y].test(y2)) continue;
                linalg::Vector<CRat> row(cc);
                bool nonzero = false;
                for (int c = 0; c < cc; ++c) {
                    row[c] = ryf_on_cell(r, f, y, c) - ryf_on_cell(r, f, y2, c);
                    if (!row[c].is_zero()) nonzero = true;
                }
                if (nonzero) rows.push_back(std::move(row));
            }
    return rows;
}
} // namespace detail

// M_C: measures with f.mu continuous for every continuous f.
inline MeasSubspace mc_subspace(const RtGroup& r) {
    auto rows = detail::act_constancy_rows(r, r.tau);
    MeasSubspace out;
    out.span = linalg::QSpan::from_rows(linalg::nullspace(std::move(rows), r.cell_count()));
    out.tag = MeasTag::M_C;
    return out;
}

// M_sigma: f.mu lands in C(G,sigma) for every continuous f.
inline MeasSubspace msigma_subspace(const RtGroup& r) {
    auto rows = detail::act_constancy_rows(r, sigma_topology(r));
    MeasSubspace out;
    out.span = linalg::QSpan::from_rows(linalg::nullspace(std::move(rows), r.cell_count()));
    out.tag = MeasTag::M_sigma;
    return out;
}

struct MwResult {
    MeasSubspace space;
    bool finite_degenerate = true; // right orbits are finite, hence weakly compact
};

// M_W: right orbit relatively weakly compact. Finite orbits always are, so
// this is M_C with a degeneracy flag.
inline MwResult mw_subspace(const RtGroup& r) {
    MwResult out{mc_subspace(r), true};
    out.space.tag = MeasTag::M_W;
    return out;
}

namespace detail {
// rows: canonical(mu_a)[c] == canonical(mu_b)[c] for cells c, as linear
// constraints on canonical coordinates (cell translates are cells).
inline void add_translate_rows(const RtGroup& r, int a, int b, linalg::Matrix<CRat>& rows) {
    const int cc = r.cell_count();
    for (int c = 0; c < cc; ++c) {
        int ca = r.cell_mul(c, a), cb = r.cell_mul(c, b);
        if (ca == cb) continue;
        linalg::Vector<CRat> row(cc);
        row[ca] = CRat(1);
        row[cb] += CRat(-1);
        rows.push_back(std::move(row));
    }
}
} // namespace detail

// L_C: mu in M_C whose translate orbit map is norm continuous. The translate
// of a functional along R_g pairs as <f, mu_g> = <R_g f, mu>, which on
// weights is the set translate by g^-1; outside the Hausdorff (= discrete)
// case the two readings differ and this one is the reading under which
// delta_e qualifies and L_1 ∩ AP ∩ D lands inside.
inline MeasSubspace lc_measures(const RtGroup& r) {
    auto rows = detail::act_constancy_rows(r, r.tau);
    for (int g = 0; g < r.order(); ++g)
        for (int g2 = g + 1; g2 < r.order(); ++g2)
            if (r.tau.minnbhd[g].test(g2))
                detail::add_translate_rows(r, r.group.inv(g), r.group.inv(g2), rows);
    MeasSubspace out;
    out.span = linalg::QSpan::from_rows(linalg::nullspace(std::move(rows), r.cell_count()));
    out.tag = MeasTag::L_C;
    return out;
}

// L_G: densities f dlambda (finitely: all of M(G)) with y -> mu_{y^-1} norm
// continuous.
inline MeasSubspace lg_measures(const RtGroup& r) {
    linalg::Matrix<CRat> rows;
    for (int y = 0; y < r.order(); ++y)
        for (int y2 = y + 1; y2 < r.order(); ++y2)
            if (r.tau.minnbhd[y].test(y2))
                detail::add_translate_rows(r, r.group.inv(y), r.group.inv(y2), rows);
    MeasSubspace out;
    out.span = linalg::QSpan::from_rows(linalg::nullspace(std::move(rows), r.cell_count()));
    out.tag = MeasTag::L_G;
    return out;
}

struct HaarResult {
    Meas measure;
    int uniqueness_dim = 0; // dimension of the right-invariant solution space
};

// Solve mu(Eg) = mu(E) over Borel sets (unions of tau-cells) and all g,
// normalized to a probability measure.
inline HaarResult haar_solver(const RtGroup& r) {
    linalg::Matrix<CRat> rows;
    const int cc = r.cell_count();
    for (int c = 0; c < cc; ++c)
        for (int g = 0; g < r.order(); ++g) {
            int cg = r.cell_mul(c, g);
            if (cg == c) continue;
            linalg::Vector<CRat> row(cc);
            row[c] = CRat(1);
            row[cg] = CRat(-1);
            rows.push_back(std::move(row));
        }
    auto basis = linalg::nullspace(std::move(rows), cc);
    if (basis.empty()) throw InternalCheckFailure("Haar system has no solution");
    // normalize the first basis vector to total mass 1
    CRat mass;
    for (const CRat& v : basis[0]) mass += v;
    if (mass.is_zero()) throw InternalCheckFailure("invariant solution with zero mass");
    std::vector<CRat> cellw(cc);
    for (int c = 0; c < cc; ++c) cellw[c] = basis[0][c] / mass;
    return HaarResult{meas_from_canonical(r, cellw), static_cast<int>(basis.size())};
}

// lambda_{H'}: uniform probability mass on the subgroup H' embedded in G.
// When H' is normal and central enough (inside Lambda(G)) the membership
// lambda_{H'} in M_C is a theorem and is checked here; likewise for M_sigma
// when H' is sigma-sigma-closed.
inline Meas lambda_h(const RtGroup& r, const Subgrp& h) {
    if (!is_subgroup(r.group, h)) throw NotASubgroup("H'");
    std::vector<CRat> w(r.order());
    for (int x : h.elements()) w[x] = CRat(1, h.size());
    Meas m = make_meas(r, std::move(w));
    if (is_normal(r.group, h) && h.subset_of(topological_center(r))) {
        if (!in_mc(r, m)) throw InternalCheckFailure("lambda_H outside M_C under theorem hypotheses");
        PointSet hs(r.order());
        for (int x : h.elements()) hs.set(x);
        if (closure(sigma_sigma_topology(r), hs) == hs && !in_msigma(r, m))
            throw InternalCheckFailure("lambda_H outside M_sigma for sigma-sigma-closed H");
    }
    return m;
}

// Right orbit of mu inside M_C; when the whole orbit stays in M_C the
// measure must already be in M_sigma.
inline bool check_translates_in_mc(const RtGroup& r, const Meas& mu) {
    if (!in_mc(r, mu)) throw MuNotInMC();
    for (int x = 0; x < r.order(); ++x)
        if (!in_mc(r, translate_meas(r, mu, x, Side::right))) return false;
    if (!in_msigma(r, mu))
        throw InternalCheckFailure("all right translates in M_C but mu outside M_sigma");
    return true;
}

} // namespace rtglab
