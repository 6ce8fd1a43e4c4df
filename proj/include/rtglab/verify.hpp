#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rtglab/generators.hpp"
#include "rtglab/haar_construction.hpp"
#include "rtglab/serialization.hpp"

namespace rtglab::verify {

enum class PropStatus { pass, fail, degenerate_pass, diagnostic };

inline const char* status_name(PropStatus s) {
    switch (s) {
        case PropStatus::pass: return "pass";
        case PropStatus::fail: return "fail";
        case PropStatus::degenerate_pass: return "degenerate-pass";
        case PropStatus::diagnostic: return "diagnostic";
    }
    return "?";
}

struct PropertyRecord {
    std::string id;
    PropStatus status = PropStatus::pass;
    Json payload; // replayable witness on fail, data on diagnostic
};

// Per-instance evaluation context with lazily cached shared computations.
struct Ctx {
    RtGroup r;
    std::optional<AlexandrovTopology> claimed_sigma;
    std::optional<std::vector<int>> claimed_ng;

    std::optional<std::vector<Subgrp>> subs_;
    std::optional<std::vector<std::pair<Subgrp, QuotientRtg>>> quotients_;
    std::optional<MeasSubspace> mc_, msigma_, lcm_, lgm_;
    std::optional<FnSubspace> lc_, d_, ctau_, csigma_;
    std::optional<HaarResult> haar_;
    std::optional<std::vector<NormalSystem>> strict_, relaxed_;

    const std::vector<Subgrp>& subs() {
        if (!subs_) subs_ = subgroups(r.group);
        return *subs_;
    }
    const std::vector<std::pair<Subgrp, QuotientRtg>>& quotients() {
        if (!quotients_) {
            quotients_.emplace();
            for (const Subgrp& k : subs())
                if (is_normal(r.group, k)) quotients_->emplace_back(k, quotient_rtg(r, k));
        }
        return *quotients_;
    }
    const MeasSubspace& mc() {
        if (!mc_) mc_ = mc_subspace(r);
        return *mc_;
    }
    const MeasSubspace& msig() {
        if (!msigma_) msigma_ = msigma_subspace(r);
        return *msigma_;
    }
    const MeasSubspace& lcm() {
        if (!lcm_) lcm_ = lc_measures(r);
        return *lcm_;
    }
    const MeasSubspace& lgm() {
        if (!lgm_) lgm_ = lg_measures(r);
        return *lgm_;
    }
    const FnSubspace& lc() {
        if (!lc_) lc_ = lc_space(r);
        return *lc_;
    }
    const FnSubspace& dsp() {
        if (!d_) d_ = d_space(r);
        return *d_;
    }
    const FnSubspace& ctau() {
        if (!ctau_) ctau_ = continuous_functions(r, TopologyTag::tau);
        return *ctau_;
    }
    const FnSubspace& csigma() {
        if (!csigma_) csigma_ = continuous_functions(r, TopologyTag::sigma);
        return *csigma_;
    }
    const HaarResult& haar() {
        if (!haar_) haar_ = haar_solver(r);
        return *haar_;
    }
    const std::vector<NormalSystem>& strict_systems() {
        if (!strict_) strict_ = find_normal_systems(r, SystemMode::strict);
        return *strict_;
    }
    const std::vector<NormalSystem>& relaxed_systems() {
        if (!relaxed_) relaxed_ = find_normal_systems(r, SystemMode::relaxed);
        return *relaxed_;
    }

    std::uint64_t stable_seed() const { // FNV-1a over the instance id
        std::uint64_t h = 1469598103934665603ull;
        for (char c : r.id()) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ull;
        }
        return h;
    }
};

struct Property {
    std::string id;
    std::function<PropertyRecord(Ctx&)> run;
};

namespace detail {
inline PropertyRecord pass(const std::string& id) { return {id, PropStatus::pass, {}}; }
inline PropertyRecord degenerate(const std::string& id, std::string note) {
    PropertyRecord rec{id, PropStatus::degenerate_pass, {}};
    rec.payload = Json{{"note", std::move(note)}};
    return rec;
}
inline PropertyRecord diagnostic(const std::string& id, Json data) {
    return {id, PropStatus::diagnostic, std::move(data)};
}
inline PropertyRecord fail(const std::string& id, Json witness) {
    return {id, PropStatus::fail, std::move(witness)};
}
inline PropertyRecord check(const std::string& id, bool ok, Json witness) {
    return ok ? pass(id) : fail(id, std::move(witness));
}

inline Json subgrp_json(const Subgrp& s) {
    Json arr = Json::array();
    for (int x : s.elements()) arr.push_back(x);
    return arr;
}

inline std::vector<int> inversion_map(const GroupTable& g) {
    std::vector<int> inv(g.order);
    for (int x = 0; x < g.order; ++x) inv[x] = g.inv(x);
    return inv;
}

inline Meas density_measure(const RtGroup& r, const FnVec& f) {
    std::vector<CRat> w(r.order());
    for (int x = 0; x < r.order(); ++x) w[x] = f[x] * CRat(1, r.order());
    return make_meas(r, std::move(w));
}

inline Meas random_subspace_element(const RtGroup& r, const MeasSubspace& sub, std::mt19937_64& rng) {
    std::vector<CRat> canon(r.cell_count());
    for (const auto& b : sub.span.basis) {
        CRat coef(Rat(static_cast<long long>(rng() % 7) - 3, 1 + static_cast<long long>(rng() % 4)),
                  Rat(static_cast<long long>(rng() % 5) - 2, 1 + static_cast<long long>(rng() % 3)));
        for (int c = 0; c < r.cell_count(); ++c) canon[c] += coef * b[c];
    }
    return meas_from_canonical(r, canon);
}
} // namespace detail

// ---------------------------------------------------------------- sigma suite

inline std::vector<Property> sigma_suite() {
    using namespace detail;
    std::vector<Property> props;

    props.push_back({"grp.axioms", [](Ctx& c) {
        std::vector<std::vector<int>> t(c.r.order(), std::vector<int>(c.r.order()));
        for (int x = 0; x < c.r.order(); ++x)
            for (int y = 0; y < c.r.order(); ++y) t[x][y] = c.r.group.mul(x, y);
        try {
            GroupTable g = validate_group(t);
            return check("grp.axioms", g.identity == c.r.group.identity, Json{{"detail", "identity mismatch"}});
        } catch (const NotAGroup& e) {
            return fail("grp.axioms", Json{{"reason", e.reason}, {"witness", {e.x, e.y, e.z}}});
        }
    }});

    props.push_back({"grp.subgroups-closed", [](Ctx& c) {
        for (const Subgrp& h : c.subs())
            if (!is_subgroup(c.r.group, h))
                return fail("grp.subgroups-closed", Json{{"subgroup", subgrp_json(h)}});
        return pass("grp.subgroups-closed");
    }});

    props.push_back({"grp.normal-closure-fixpoint", [](Ctx& c) {
        Subgrp nc = normal_closure(c.r.group, c.r.cone);
        if (!c.r.cone.subset_of(nc) || !is_normal(c.r.group, nc))
            return fail("grp.normal-closure-fixpoint", Json{{"closure", subgrp_json(nc)}});
        std::uint64_t again = nc.mask;
        for (int x = 0; x < c.r.order(); ++x)
            for (int a : nc.elements()) again |= 1ull << c.r.group.conj(x, a);
        return check("grp.normal-closure-fixpoint", closure_mask(c.r.group, again) == nc.mask,
                     Json{{"detail", "conjugate-and-close moved the set"}});
    }});

    props.push_back({"grp.normalizer-contains-cone", [](Ctx& c) {
        return check("grp.normalizer-contains-cone",
                     c.r.cone.subset_of(normalizer(c.r.group, c.r.cone)), Json::object());
    }});

    props.push_back({"grp.quotient-projection-hom", [](Ctx& c) {
        for (const auto& [k, q] : c.quotients())
            for (int x = 0; x < c.r.order(); ++x)
                for (int y = 0; y < c.r.order(); ++y)
                    if (q.projection[c.r.group.mul(x, y)] !=
                        q.quotient.group.mul(q.projection[x], q.projection[y]))
                        return fail("grp.quotient-projection-hom",
                                    Json{{"kernel", subgrp_json(k)}, {"x", x}, {"y", y}});
        return pass("grp.quotient-projection-hom");
    }});

    props.push_back({"topo.closure-kuratowski", [](Ctx& c) {
        for (const AlexandrovTopology* t : {&c.r.tau, &sigma_topology(c.r)}) {
            std::vector<PointSet> samples;
            for (int x = 0; x < t->points; ++x) {
                PointSet s(t->points);
                s.set(x);
                samples.push_back(s);
            }
            for (const auto& cell : c.r.cells) {
                PointSet s(t->points);
                for (int x : cell) s.set(x);
                samples.push_back(s);
                samples.push_back(~s);
            }
            for (const PointSet& a : samples) {
                PointSet cl = closure(*t, a);
                if (!a.is_subset_of(cl) || closure(*t, cl) != cl || interior(*t, a) != ~closure(*t, ~a))
                    return fail("topo.closure-kuratowski", Json{{"detail", "kuratowski axiom violated"}});
                for (const PointSet& b : samples)
                    if (a.is_subset_of(b) && !cl.is_subset_of(closure(*t, b)))
                        return fail("topo.closure-kuratowski", Json{{"detail", "monotonicity violated"}});
            }
        }
        return pass("topo.closure-kuratowski");
    }});

    props.push_back({"topo.continuity-two-routes", [](Ctx& c) {
        if (c.r.order() > 12)
            return degenerate("topo.continuity-two-routes", "open-set enumeration gated to n <= 12");
        const GroupTable& g = c.r.group;
        for (int e = 0; e < g.order; ++e) {
            std::vector<int> lg(g.order), rg(g.order);
            for (int x = 0; x < g.order; ++x) {
                lg[x] = g.mul(e, x);
                rg[x] = g.mul(x, e);
            }
            for (const auto& f : {lg, rg})
                if (is_continuous(f, c.r.tau, c.r.tau) != is_continuous_bruteforce(f, c.r.tau, c.r.tau))
                    return fail("topo.continuity-two-routes", Json{{"translation_by", e}});
        }
        auto inv = inversion_map(g);
        return check("topo.continuity-two-routes",
                     is_continuous(inv, c.r.tau, c.r.tau) ==
                         is_continuous_bruteforce(inv, c.r.tau, c.r.tau),
                     Json{{"map", "inversion"}});
    }});

    props.push_back({"topo.product-opens-are-box-unions", [](Ctx& c) {
        AlexandrovTopology p = product_topology(c.r.tau, c.r.tau);
        const int n = c.r.order();
        for (int x = 0; x < n; ++x)
            for (int a = 0; a < n; ++a) {
                PointSet expect(p.points);
                for (int y = 0; y < n; ++y)
                    for (int b = 0; b < n; ++b)
                        if (c.r.tau.minnbhd[x].test(y) && c.r.tau.minnbhd[a].test(b)) expect.set(y * n + b);
                if (p.minnbhd[x * n + a] != expect)
                    return fail("topo.product-opens-are-box-unions", Json{{"point", {x, a}}});
            }
        if (p.points <= 16) { // exhaustive: every up-set is a union of boxes
            for (const PointSet& v : all_opens(p)) {
                PointSet rebuilt(p.points);
                for (int q = 0; q < p.points; ++q)
                    if (v.test(q) && p.minnbhd[q].is_subset_of(v)) rebuilt |= p.minnbhd[q];
                if (rebuilt != v)
                    return fail("topo.product-opens-are-box-unions", Json{{"detail", "non-box open"}});
            }
        }
        return pass("topo.product-opens-are-box-unions");
    }});

    props.push_back({"thm-si.1.sigma-subset-tau", [](Ctx& c) {
        return check("thm-si.1.sigma-subset-tau", coarser_or_equal(sigma_topology(c.r), c.r.tau),
                     Json::object());
    }});

    props.push_back({"thm-si.1.equality-iff-topological", [](Ctx& c) {
        bool eq = sigma_topology(c.r) == c.r.tau;
        bool direct = is_topological_direct(c.r);
        bool normal_cone = is_normal(c.r.group, c.r.cone);
        return check("thm-si.1.equality-iff-topological", eq == direct && direct == normal_cone,
                     Json{{"sigma_equals_tau", eq}, {"joint_continuity", direct}, {"cone_normal", normal_cone}});
    }});

    props.push_back({"thm-si.2.inverse-continuous", [](Ctx& c) {
        auto inv = inversion_map(c.r.group);
        const AlexandrovTopology& s = sigma_topology(c.r);
        return check("thm-si.2.inverse-continuous", is_continuous(inv, s, s), Json::object());
    }});

    props.push_back({"sigma.oracle-normal-closure", [](Ctx& c) {
        Subgrp nc = normal_closure(c.r.group, c.r.cone);
        RtGroup oracle = make_rtg(c.r.group, nc);
        return check("sigma.oracle-normal-closure", sigma_topology(c.r) == oracle.tau,
                     Json{{"normal_closure", subgrp_json(nc)}});
    }});

    props.push_back({"sigmasigma.oracle-and-ng", [](Ctx& c) {
        const SigmaData& sd = c.r.sigma();
        if (sd.sigma_sigma != sd.sigma)
            return fail("sigmasigma.oracle-and-ng", Json{{"detail", "sigma-sigma differs from sigma"}});
        Subgrp nc = normal_closure(c.r.group, c.r.cone);
        Subgrp via_nof = n_of(c.r, c.r.group.full_subgroup(), NbhdVariant::nbhds_in_G);
        PointSet e(c.r.order());
        e.set(c.r.group.identity);
        PointSet cl = closure(sd.sigma_sigma, e);
        std::uint64_t clmask = 0;
        for (int i = 0; i < c.r.order(); ++i)
            if (cl.test(i)) clmask |= 1ull << i;
        bool ok = sd.n_of_g == nc && via_nof == nc && clmask == nc.mask;
        return check("sigmasigma.oracle-and-ng", ok,
                     Json{{"n_of_g", subgrp_json(sd.n_of_g)},
                          {"n_of", subgrp_json(via_nof)},
                          {"normal_closure", subgrp_json(nc)}});
    }});

    props.push_back({"ng.variant-comparison", [](Ctx& c) {
        int agreements = 0, total = 0;
        for (const Subgrp& l : c.subs()) {
            ++total;
            if (n_of(c.r, l, NbhdVariant::nbhds_in_G) == n_of(c.r, l, NbhdVariant::nbhds_in_L)) ++agreements;
        }
        return diagnostic("ng.variant-comparison", Json{{"subgroups", total}, {"agreements", agreements}});
    }});

    props.push_back({"lambda.direct-equals-normalizer", [](Ctx& c) {
        try {
            Subgrp lam = topological_center(c.r); // asserts the oracle internally
            return check("lambda.direct-equals-normalizer", lam == normalizer(c.r.group, c.r.cone),
                         Json{{"lambda", subgrp_json(lam)}});
        } catch (const InternalCheckFailure& e) {
            return fail("lambda.direct-equals-normalizer", Json{{"detail", e.what()}});
        }
    }});

    props.push_back({"degeneracy.admissible-topological-normal", [](Ctx& c) {
        bool adm = is_admissible(c.r);
        bool topo = is_topological_direct(c.r);
        bool nrm = is_normal(c.r.group, c.r.cone);
        if (adm == topo && topo == nrm)
            return degenerate("degeneracy.admissible-topological-normal",
                              "finite models: admissible = topological = normal cone");
        return fail("degeneracy.admissible-topological-normal",
                    Json{{"admissible", adm}, {"topological", topo}, {"cone_normal", nrm}});
    }});

    props.push_back({"thm-open.namioka-base", [](Ctx& c) {
        NamiokaReport rep = check_namioka_base(c.r);
        Json data{{"admissible", rep.admissible},
                  {"phi_open", rep.phi_open},
                  {"base_at_identity", rep.base_at_identity},
                  {"uinv_u", rep.uinv_u}};
        if (!rep.admissible) return diagnostic("thm-open.namioka-base", std::move(data));
        return check("thm-open.namioka-base", rep.phi_open && rep.base_at_identity, std::move(data));
    }});

    props.push_back({"prop-hausdorff.quotient-iff-sigma-closed", [](Ctx& c) {
        for (const auto& [k, q] : c.quotients())
            if (q.hausdorff != q.kernel_sigma_closed)
                return fail("prop-hausdorff.quotient-iff-sigma-closed",
                            Json{{"kernel", subgrp_json(k)},
                                 {"hausdorff", q.hausdorff},
                                 {"sigma_closed", q.kernel_sigma_closed}});
        return pass("prop-hausdorff.quotient-iff-sigma-closed");
    }});

    props.push_back({"lem-sisi.hausdorff-topological-iff-sigmasigma-closed", [](Ctx& c) {
        for (const auto& [k, q] : c.quotients())
            if ((q.hausdorff && q.topological) != q.kernel_sigma_sigma_closed)
                return fail("lem-sisi.hausdorff-topological-iff-sigmasigma-closed",
                            Json{{"kernel", subgrp_json(k)},
                                 {"hausdorff", q.hausdorff},
                                 {"topological", q.topological},
                                 {"sigma_sigma_closed", q.kernel_sigma_sigma_closed}});
        return pass("lem-sisi.hausdorff-topological-iff-sigmasigma-closed");
    }});

    props.push_back({"lem-quoti.sigma-commutes", [](Ctx& c) {
        for (const auto& [k, q] : c.quotients()) {
            if (sigma_topology(q.quotient) != q.sigma_quotient)
                return fail("lem-quoti.sigma-commutes", Json{{"kernel", subgrp_json(k)}});
            // closed-form cross-check: partition by the image of N(G) k
            Subgrp img_cone{0, q.quotient.order()};
            for (int x : n_of_g(c.r).elements()) img_cone.mask |= 1ull << q.projection[x];
            if (q.sigma_quotient != make_rtg(q.quotient.group, img_cone).tau)
                return fail("lem-quoti.sigma-commutes",
                            Json{{"kernel", subgrp_json(k)}, {"detail", "projected oracle differs"}});
        }
        return pass("lem-quoti.sigma-commutes");
    }});

    props.push_back({"prop-factor.homs-constant-on-ng", [](Ctx& c) {
        const Subgrp& ng = n_of_g(c.r);
        for (int m : {2, 3}) {
            GroupTable target = cyclic_group(m);
            AlexandrovTopology dt = AlexandrovTopology::discrete(m);
            for (const auto& f : homomorphisms(c.r.group, target)) {
                if (!is_continuous(f, c.r.tau, dt)) continue;
                for (int x = 0; x < c.r.order(); ++x)
                    for (int a : ng.elements())
                        if (f[c.r.group.mul(a, x)] != f[x])
                            return fail("prop-factor.homs-constant-on-ng",
                                        Json{{"target", m}, {"x", x}, {"a", a}});
            }
        }
        return pass("prop-factor.homs-constant-on-ng");
    }});

    props.push_back({"lem-openmap.discrete-targets", [](Ctx& c) {
        for (const auto& [k, q] : c.quotients()) {
            if (!q.hausdorff) continue;
            if (!is_continuous(q.projection, c.r.tau, q.quotient.tau) ||
                !is_open_map(q.projection, c.r.tau, q.quotient.tau))
                return fail("lem-openmap.discrete-targets", Json{{"kernel", subgrp_json(k)}});
        }
        for (int m : {2, 3}) {
            GroupTable target = cyclic_group(m);
            AlexandrovTopology dt = AlexandrovTopology::discrete(m);
            for (const auto& f : homomorphisms(c.r.group, target)) {
                std::vector<char> hit(m, 0);
                for (int x = 0; x < c.r.order(); ++x) hit[f[x]] = 1;
                bool surj = true;
                for (char h : hit) surj = surj && h;
                if (!surj || !is_continuous(f, c.r.tau, dt)) continue;
                if (!is_open_map(f, c.r.tau, dt))
                    return fail("lem-openmap.discrete-targets", Json{{"target", m}});
            }
        }
        return pass("lem-openmap.discrete-targets");
    }});

    props.push_back({"prop-metrizable.hausdorff-implies-topological", [](Ctx& c) {
        if (!separation(c.r.tau).is_hausdorff)
            return degenerate("prop-metrizable.hausdorff-implies-topological", "instance not Hausdorff");
        return check("prop-metrizable.hausdorff-implies-topological", is_topological_direct(c.r),
                     Json::object());
    }});

    props.push_back({"prop-loc5.quotient-by-ng", [](Ctx& c) {
        QuotientRtg q = quotient_rtg(c.r, n_of_g(c.r));
        if (!q.topological || !q.hausdorff)
            return fail("prop-loc5.quotient-by-ng", Json{{"detail", "quotient not Hausdorff topological"}});
        if (q.quotient.tau != q.sigma_quotient)
            return fail("prop-loc5.quotient-by-ng", Json{{"detail", "tau and sigma quotients differ"}});
        const RtGroup& quot = q.quotient;
        const int m = quot.order();
        std::vector<int> action(m * m);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) action[a * m + b] = quot.group.mul(a, b);
        return check("prop-loc5.quotient-by-ng",
                     is_continuous(action, product_topology(quot.tau, quot.tau), quot.tau),
                     Json{{"detail", "action map discontinuous"}});
    }});

    props.push_back({"degeneracy.hausdorff-iff-discrete", [](Ctx& c) {
        SeparationFlags f = separation(c.r.tau);
        if (f.is_hausdorff == f.is_discrete && f.is_t1 == f.is_discrete)
            return degenerate("degeneracy.hausdorff-iff-discrete", "finite models: Hausdorff = T1 = discrete");
        return fail("degeneracy.hausdorff-iff-discrete", Json::object());
    }});

    props.push_back({"fixture.claimed-sigma", [](Ctx& c) {
        if (!c.claimed_sigma) return degenerate("fixture.claimed-sigma", "no claimed sigma in fixture");
        const AlexandrovTopology& got = sigma_topology(c.r);
        if (got == *c.claimed_sigma) return pass("fixture.claimed-sigma");
        int bx = -1, by = -1;
        for (int x = 0; x < got.points && bx < 0; ++x)
            for (int y = 0; y < got.points; ++y)
                if (got.minnbhd[x].test(y) != c.claimed_sigma->minnbhd[x].test(y)) {
                    bx = x;
                    by = y;
                    break;
                }
        return fail("fixture.claimed-sigma",
                    Json{{"instance", c.r.id()}, {"first_differing_entry", {bx, by}}});
    }});

    props.push_back({"fixture.claimed-ng", [](Ctx& c) {
        if (!c.claimed_ng) return degenerate("fixture.claimed-ng", "no claimed N(G) in fixture");
        std::vector<int> got = n_of_g(c.r).elements();
        return check("fixture.claimed-ng", got == *c.claimed_ng,
                     Json{{"instance", c.r.id()}, {"computed", got}, {"claimed", *c.claimed_ng}});
    }});

    return props;
}

// ------------------------------------------------------------ functions suite

inline std::vector<Property> functions_suite() {
    using namespace detail;
    std::vector<Property> props;

    props.push_back({"fn.continuous-dimension-counts-cells", [](Ctx& c) {
        bool ok = c.ctau().dimension() == c.r.cell_count() &&
                  c.csigma().dimension() == component_count(sigma_topology(c.r));
        for (const FnVec& f : cell_indicators(c.r))
            ok = ok && c.ctau().contains(f);
        return check("fn.continuous-dimension-counts-cells", ok,
                     Json{{"c_tau_dim", c.ctau().dimension()}, {"cells", c.r.cell_count()}});
    }});

    props.push_back({"fn.right-translates-stay-continuous", [](Ctx& c) {
        for (const FnVec& f : c.ctau().basis())
            for (int g = 0; g < c.r.order(); ++g)
                if (!is_continuous_fn(c.r.tau, translate(c.r.group, f, g, Side::right)))
                    return fail("fn.right-translates-stay-continuous", Json{{"g", g}});
        return pass("fn.right-translates-stay-continuous");
    }});

    props.push_back({"thm-loc6.1.csigma-inside-lc", [](Ctx& c) {
        return check("thm-loc6.1.csigma-inside-lc", c.lc().contains_subspace(c.csigma()), Json::object());
    }});

    props.push_back({"thm-loc6.4.lc-equals-csigma", [](Ctx& c) {
        return check("thm-loc6.4.lc-equals-csigma", c.lc() == c.csigma(),
                     Json{{"lc_dim", c.lc().dimension()}, {"c_sigma_dim", c.csigma().dimension()}});
    }});

    props.push_back({"thm-loc6.2.lc-separates-iff-topological", [](Ctx& c) {
        bool sep = separates_points_from_closed(c.lc(), c.r.tau);
        bool topo = is_topological_direct(c.r);
        return check("thm-loc6.2.lc-separates-iff-topological", sep == topo,
                     Json{{"separates", sep}, {"topological", topo}});
    }});

    props.push_back({"cor-loc3.fix-csigma-is-ng", [](Ctx& c) {
        Subgrp f = fix(c.r, c.csigma());
        return check("cor-loc3.fix-csigma-is-ng", f == n_of_g(c.r),
                     Json{{"fix", subgrp_json(f)}, {"n_of_g", subgrp_json(n_of_g(c.r))}});
    }});

    props.push_back({"lem-loc2.fix-normal-and-identification", [](Ctx& c) {
        std::vector<FnSubspace> spaces;
        FnSubspace constants;
        constants.span = linalg::QSpan::from_rows({FnVec(c.r.order(), CRat(1))});
        spaces.push_back(constants);
        spaces.push_back(c.csigma());
        spaces.push_back(c.lc());
        if (is_topological(c.r)) spaces.push_back(c.ctau());
        for (const FnSubspace& a : spaces) {
            Subgrp f = fix(c.r, a);
            if (!is_normal(c.r.group, f))
                return fail("lem-loc2.fix-normal-and-identification", Json{{"fix", subgrp_json(f)}});
            std::set<std::pair<int, int>> pairs;
            for (int x = 0; x < c.r.order(); ++x)
                for (int y = 0; y < c.r.order(); ++y)
                    if (c.r.tau.minnbhd[x].test(y) && x != y) pairs.emplace(std::min(x, y), std::max(x, y));
            for (int y : f.elements())
                for (int x = 0; x < c.r.order(); ++x) {
                    int a2 = c.r.group.mul(y, x);
                    if (a2 != x) pairs.emplace(std::min(a2, x), std::max(a2, x));
                }
            linalg::Matrix<CRat> rows;
            for (auto [i, j] : pairs) {
                linalg::Vector<CRat> row(c.r.order());
                row[i] = CRat(1);
                row[j] = CRat(-1);
                rows.push_back(std::move(row));
            }
            auto rebuilt = linalg::QSpan::from_rows(linalg::nullspace(std::move(rows), c.r.order()));
            if (!(rebuilt == a.span))
                return fail("lem-loc2.fix-normal-and-identification",
                            Json{{"detail", "A differs from the Fix(A)-invariant continuous functions"}});
        }
        return pass("lem-loc2.fix-normal-and-identification");
    }});

    props.push_back({"fn.fix-rejects-non-invariant-spaces", [](Ctx& c) {
        if (is_topological(c.r)) {
            Subgrp f = fix(c.r, c.ctau());
            return check("fn.fix-rejects-non-invariant-spaces", f == c.r.cone,
                         Json{{"fix", subgrp_json(f)}});
        }
        try {
            fix(c.r, c.ctau());
            return fail("fn.fix-rejects-non-invariant-spaces",
                        Json{{"detail", "expected NotTranslationInvariant"}});
        } catch (const NotTranslationInvariant&) {
            return pass("fn.fix-rejects-non-invariant-spaces");
        }
    }});

    props.push_back({"d.contains-constants-and-matches-oracle", [](Ctx& c) {
        if (!c.dsp().contains(FnVec(c.r.order(), CRat(1))))
            return fail("d.contains-constants-and-matches-oracle", Json{{"detail", "constants missing"}});
        // independent route: union-find over the defining equалities
        const int n = c.r.order();
        std::vector<int> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int(int)> find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (c.r.tau.minnbhd[x].test(y)) unite(x, y);
        for (int y = 0; y < n; ++y)
            for (int g = 0; g < n; ++g)
                for (int g2 = 0; g2 < n; ++g2)
                    if (c.r.tau.minnbhd[g].test(g2))
                        unite(c.r.group.mul(y, c.r.group.inv(g)), c.r.group.mul(y, c.r.group.inv(g2)));
        std::vector<FnVec> rows;
        for (int root = 0; root < n; ++root) {
            if (find(root) != root) continue;
            FnVec f(n);
            for (int x = 0; x < n; ++x)
                if (find(x) == root) f[x] = CRat(1);
            rows.push_back(std::move(f));
        }
        auto oracle = linalg::QSpan::from_rows(std::move(rows));
        return check("d.contains-constants-and-matches-oracle", oracle == c.dsp().span,
                     Json{{"oracle_dim", oracle.dim()}, {"solver_dim", c.dsp().dimension()}});
    }});

    props.push_back({"apwap.degenerate-equals-ctau", [](Ctx& c) {
        ApWapResult ap = ap_wap(c.r);
        if (ap.finite_degenerate && ap.space == c.ctau())
            return degenerate("apwap.degenerate-equals-ctau", "finite orbits are norm compact");
        return fail("apwap.degenerate-equals-ctau", Json::object());
    }});

    props.push_back({"prop-wapd.cd-densities-have-continuous-translates", [](Ctx& c) {
        for (const FnVec& f : c.dsp().basis()) {
            Meas m = density_measure(c.r, f);
            if (!c.lgm().contains(m) || !c.lcm().contains(m))
                return fail("prop-wapd.cd-densities-have-continuous-translates", Json::object());
        }
        return pass("prop-wapd.cd-densities-have-continuous-translates");
    }});

    props.push_back({"fn.separation-basics", [](Ctx& c) {
        bool full = separates_points_from_closed(c.ctau(), c.r.tau);
        FnSubspace constants;
        constants.span = linalg::QSpan::from_rows({FnVec(c.r.order(), CRat(1))});
        bool cst = separates_points_from_closed(constants, c.r.tau);
        bool ok = full && (cst == (c.r.cell_count() == 1));
        return check("fn.separation-basics", ok, Json{{"full", full}, {"constants", cst}});
    }});

    return props;
}

// ------------------------------------------------------------- measures suite

inline std::vector<Property> measures_suite() {
    using namespace detail;
    std::vector<Property> props;

    props.push_back({"meas.radon-equality-respects-act", [](Ctx& c) {
        // two weight vectors with the same canonical form act identically
        Meas a = delta(c.r, c.r.group.identity);
        std::vector<CRat> canon(c.r.cell_count());
        canon[c.r.cell_of[c.r.group.identity]] = CRat(1);
        Meas b = meas_from_canonical(c.r, canon);
        if (!radon_equal(a, b)) return fail("meas.radon-equality-respects-act", Json::object());
        for (const FnVec& f : cell_indicators(c.r))
            if (act(c.r, f, a) != act(c.r, f, b))
                return fail("meas.radon-equality-respects-act", Json::object());
        return pass("meas.radon-equality-respects-act");
    }});

    props.push_back({"mc.contains-center-deltas", [](Ctx& c) {
        for (int g : topological_center(c.r).elements())
            if (!c.mc().contains(delta(c.r, g)))
                return fail("mc.contains-center-deltas", Json{{"g", g}});
        return pass("mc.contains-center-deltas");
    }});

    props.push_back({"mc.identity-associativity-closure", [](Ctx& c) {
        std::mt19937_64 rng(c.stable_seed());
        for (const Meas& b : c.mc().basis_measures(c.r)) {
            if (!radon_equal(convolve(c.r, delta(c.r, c.r.group.identity), b), b) ||
                !radon_equal(convolve(c.r, b, delta(c.r, c.r.group.identity)), b))
                return fail("mc.identity-associativity-closure", Json{{"detail", "delta_e not an identity"}});
        }
        for (int trial = 0; trial < 6; ++trial) {
            Meas a = random_subspace_element(c.r, c.mc(), rng);
            Meas b = random_subspace_element(c.r, c.mc(), rng);
            Meas d = random_subspace_element(c.r, c.mc(), rng);
            if (!c.mc().contains(convolve(c.r, a, b)))
                return fail("mc.identity-associativity-closure", Json{{"detail", "not closed under box"}});
            if (!radon_equal(convolve(c.r, convolve(c.r, a, b), d), convolve(c.r, a, convolve(c.r, b, d))))
                return fail("mc.identity-associativity-closure",
                            Json{{"detail", "associativity failed"}, {"trial", trial}});
        }
        return pass("mc.identity-associativity-closure");
    }});

    props.push_back({"mc.definitional-oracle", [](Ctx& c) {
        // independent constraint assembly straight from the definition
        linalg::Matrix<CRat> rows;
        std::vector<Meas> units;
        for (int cc = 0; cc < c.r.cell_count(); ++cc) {
            std::vector<CRat> canon(c.r.cell_count());
            canon[cc] = CRat(1);
            units.push_back(meas_from_canonical(c.r, canon));
        }
        for (const FnVec& f : cell_indicators(c.r)) {
            std::vector<FnVec> acted;
            for (const Meas& u : units) acted.push_back(act(c.r, f, u));
            for (int y = 0; y < c.r.order(); ++y)
                for (int y2 = y + 1; y2 < c.r.order(); ++y2) {
                    if (!c.r.tau.minnbhd[y].test(y2)) continue;
                    linalg::Vector<CRat> row(c.r.cell_count());
                    for (int cc = 0; cc < c.r.cell_count(); ++cc) row[cc] = acted[cc][y] - acted[cc][y2];
                    rows.push_back(std::move(row));
                }
        }
        auto oracle = linalg::QSpan::from_rows(linalg::nullspace(std::move(rows), c.r.cell_count()));
        if (!(oracle == c.mc().span))
            return fail("mc.definitional-oracle",
                        Json{{"oracle_dim", oracle.dim()}, {"solver_dim", c.mc().dimension()}});
        for (const Meas& b : c.mc().basis_measures(c.r))
            if (!in_mc(c.r, b)) return fail("mc.definitional-oracle", Json{{"detail", "basis fails predicate"}});
        return pass("mc.definitional-oracle");
    }});

    props.push_back({"prop-loc23.msigma-left-ideal", [](Ctx& c) {
        for (const Meas& mu : c.mc().basis_measures(c.r))
            for (const Meas& nu : c.msig().basis_measures(c.r))
                if (!c.msig().contains(convolve(c.r, mu, nu)))
                    return fail("prop-loc23.msigma-left-ideal", Json::object());
        return pass("prop-loc23.msigma-left-ideal");
    }});

    props.push_back({"prop-loc23.msigma-right-translation-closed", [](Ctx& c) {
        for (const Meas& nu : c.msig().basis_measures(c.r))
            for (int g = 0; g < c.r.order(); ++g)
                if (!c.msig().contains(translate_meas(c.r, nu, g, Side::right)))
                    return fail("prop-loc23.msigma-right-translation-closed", Json{{"g", g}});
        return pass("prop-loc23.msigma-right-translation-closed");
    }});

    props.push_back({"prop-loc23.msigma-contains-haar", [](Ctx& c) {
        return check("prop-loc23.msigma-contains-haar", c.msig().contains(uniform_measure(c.r)),
                     Json::object());
    }});

    props.push_back({"thm-cont.densities-inside-mc-iff-topological", [](Ctx& c) {
        bool all_in = true;
        for (const FnVec& f : cell_indicators(c.r))
            if (!c.mc().contains(density_measure(c.r, f))) all_in = false;
        return check("thm-cont.densities-inside-mc-iff-topological", all_in == is_topological(c.r),
                     Json{{"densities_in_mc", all_in}});
    }});

    props.push_back({"cor-cont.mc-full-iff-topological", [](Ctx& c) {
        return check("cor-cont.mc-full-iff-topological",
                     (c.mc().dimension() == c.r.cell_count()) == is_topological(c.r),
                     Json{{"mc_dim", c.mc().dimension()}, {"cells", c.r.cell_count()}});
    }});

    props.push_back({"prop-translates.imply-msigma", [](Ctx& c) {
        for (const Meas& mu : c.mc().basis_measures(c.r)) {
            bool all_in = true;
            for (int x = 0; x < c.r.order() && all_in; ++x)
                all_in = c.mc().contains(translate_meas(c.r, mu, x, Side::right));
            if (all_in && !c.msig().contains(mu))
                return fail("prop-translates.imply-msigma", Json::object());
            if (all_in != check_translates_in_mc(c.r, mu))
                return fail("prop-translates.imply-msigma", Json{{"detail", "two routes disagree"}});
        }
        return pass("prop-translates.imply-msigma");
    }});

    props.push_back({"mw.degenerate-structure", [](Ctx& c) {
        MwResult mw = mw_subspace(c.r);
        bool ok = mw.finite_degenerate && mw.space.span == c.mc().span &&
                  mw.space.contains_subspace(c.lcm()) && c.mc().contains_subspace(mw.space);
        // left ideal + invariance under the topological center
        for (const Meas& mu : c.mc().basis_measures(c.r))
            for (const Meas& nu : mw.space.basis_measures(c.r))
                ok = ok && mw.space.contains(convolve(c.r, mu, nu));
        for (const Meas& nu : mw.space.basis_measures(c.r))
            for (int g : topological_center(c.r).elements())
                ok = ok && mw.space.contains(translate_meas(c.r, nu, g, Side::right)) &&
                     mw.space.contains(translate_meas(c.r, nu, g, Side::left));
        if (ok) return degenerate("mw.degenerate-structure", "finite orbits: M_W = M_C");
        return fail("mw.degenerate-structure", Json::object());
    }});

    props.push_back({"lideal-lc.structure", [](Ctx& c) {
        for (const Meas& mu : c.mc().basis_measures(c.r))
            for (const Meas& nu : c.lcm().basis_measures(c.r))
                if (!c.lcm().contains(convolve(c.r, mu, nu)))
                    return fail("lideal-lc.structure", Json{{"detail", "not a left ideal"}});
        for (const Meas& nu : c.lcm().basis_measures(c.r))
            for (int y = 0; y < c.r.order(); ++y)
                for (int y2 = 0; y2 < c.r.order(); ++y2)
                    if (c.r.tau.minnbhd[y].test(y2) &&
                        !radon_equal(translate_meas(c.r, nu, c.r.group.inv(y), Side::right),
                                     translate_meas(c.r, nu, c.r.group.inv(y2), Side::right)))
                        return fail("lideal-lc.structure", Json{{"detail", "orbit map not norm continuous"}});
        return check("lideal-lc.structure", c.mc().contains_subspace(c.lcm()), Json::object());
    }});

    props.push_back({"lideal-lg.relation-to-lc", [](Ctx& c) {
        if (!c.mc().contains_subspace(c.lgm()))
            return fail("lideal-lg.relation-to-lc", Json{{"detail", "L_G escapes M_C"}});
        bool lg_eq_lc = c.lgm().span == c.lcm().span;
        bool lg_eq_mc = c.lgm().span == c.mc().span;
        return diagnostic("lideal-lg.relation-to-lc",
                          Json{{"lg_dim", c.lgm().dimension()},
                               {"lc_dim", c.lcm().dimension()},
                               {"lg_equals_lc", lg_eq_lc},
                               {"lg_equals_mc", lg_eq_mc}});
    }});

    props.push_back({"haar.solver-unique-uniform-center-invariant", [](Ctx& c) {
        const HaarResult& h = c.haar();
        if (h.uniqueness_dim != 1)
            return fail("haar.solver-unique-uniform-center-invariant", Json{{"dim", h.uniqueness_dim}});
        if (h.measure.total_mass() != CRat(1))
            return fail("haar.solver-unique-uniform-center-invariant", Json{{"detail", "not normalized"}});
        CRat expect(1, c.r.cell_count());
        for (const CRat& m : h.measure.canonical)
            if (m != expect)
                return fail("haar.solver-unique-uniform-center-invariant",
                            Json{{"detail", "differs from coset-uniform oracle"}});
        for (int g = 0; g < c.r.order(); ++g)
            if (!radon_equal(translate_meas(c.r, h.measure, g, Side::right), h.measure))
                return fail("haar.solver-unique-uniform-center-invariant", Json{{"detail", "not invariant"}});
        for (int g : topological_center(c.r).elements())
            if (!radon_equal(translate_meas(c.r, h.measure, g, Side::left), h.measure))
                return fail("haar.solver-unique-uniform-center-invariant",
                            Json{{"detail", "not left invariant under the center"}, {"g", g}});
        return pass("haar.solver-unique-uniform-center-invariant");
    }});

    props.push_back({"haar.four-way-equivalence", [](Ctx& c) {
        bool solver_ok = c.haar().uniqueness_dim >= 1;
        bool msig_ok = c.msig().dimension() > 0;
        bool mw_ok = mw_subspace(c.r).space.dimension() > 0;
        bool lc_ok = c.lcm().dimension() > 0;
        return check("haar.four-way-equivalence",
                     solver_ok == msig_ok && msig_ok == mw_ok && mw_ok == lc_ok && solver_ok,
                     Json{{"solver", solver_ok}, {"msigma", msig_ok}, {"mw", mw_ok}, {"lc", lc_ok}});
    }});

    props.push_back({"prop-heheh.admissible-mw-inside-msigma", [](Ctx& c) {
        if (!is_admissible(c.r))
            return degenerate("prop-heheh.admissible-mw-inside-msigma", "instance not admissible");
        return check("prop-heheh.admissible-mw-inside-msigma",
                     c.msig().contains_subspace(mw_subspace(c.r).space), Json::object());
    }});

    props.push_back({"thm-subgroup.lambda-h-membership", [](Ctx& c) {
        Subgrp lam = topological_center(c.r);
        PointSet cache(c.r.order());
        for (const Subgrp& h : c.subs()) {
            if (!is_normal(c.r.group, h) || !h.subset_of(lam)) continue;
            Meas lh = lambda_h(c.r, h); // membership theorems asserted inside
            if (!c.mc().contains(lh))
                return fail("thm-subgroup.lambda-h-membership", Json{{"subgroup", subgrp_json(h)}});
            PointSet hs(c.r.order());
            for (int x : h.elements()) hs.set(x);
            if (closure(sigma_sigma_topology(c.r), hs) == hs && !c.msig().contains(lh))
                return fail("thm-subgroup.lambda-h-membership",
                            Json{{"subgroup", subgrp_json(h)}, {"detail", "sigma-sigma-closed but not in M_sigma"}});
        }
        (void)cache;
        return pass("thm-subgroup.lambda-h-membership");
    }});

    props.push_back({"ex53.case-formula-vs-convolution", [](Ctx& c) {
        if (c.r.group.name != "Sch24" || c.r.cone.size() != 1)
            return degenerate("ex53.case-formula-vs-convolution",
                              "only evaluated on the discrete Schreier instance");
        const int n = 12;
        const long long u = 5;
        auto idx = [&](int t, bool phi_comp) { return t * 2 + (phi_comp ? 1 : 0); };
        for (int j = 0; j < n; ++j) {
            FnVec fbase(n);
            fbase[j] = CRat(1);
            for (bool dlt : {false, true})
                for (bool gam : {false, true}) {
                    FnVec fbig(2 * n);
                    for (int t = 0; t < n; ++t) fbig[idx(t, dlt)] = fbase[t];
                    for (int t = 0; t < n; ++t) {
                        std::vector<CRat> mubase(n);
                        mubase[t] = CRat(1);
                        std::vector<CRat> w(2 * n);
                        w[idx(t, gam)] = CRat(1);
                        FnVec acted = act(c.r, fbig, make_meas(c.r, w));
                        for (int v = 0; v < n; ++v)
                            for (bool eps : {false, true})
                                if (acted[idx(v, eps)] !=
                                    example_5_3_formula(n, u, fbase, dlt, mubase, gam, v, eps))
                                    return fail("ex53.case-formula-vs-convolution",
                                                Json{{"f", j}, {"t", t}, {"v", v}});
                    }
                }
        }
        return pass("ex53.case-formula-vs-convolution");
    }});

    props.push_back({"meas.float-crosscheck", [](Ctx& c) {
        // re-run the Haar solve in floating point; 1e-9 agreement
        using CF = std::complex<double>;
        linalg::Matrix<CF> rows;
        const int cc = c.r.cell_count();
        for (int cell = 0; cell < cc; ++cell)
            for (int g = 0; g < c.r.order(); ++g) {
                int cg = c.r.cell_mul(cell, g);
                if (cg == cell) continue;
                linalg::Vector<CF> row(cc);
                row[cell] += CF(1);
                row[cg] -= CF(1);
                rows.push_back(std::move(row));
            }
        auto basis = linalg::nullspace(std::move(rows), cc);
        if (basis.size() != 1) return fail("meas.float-crosscheck", Json{{"dim", basis.size()}});
        CF mass{};
        for (const CF& v : basis[0]) mass += v;
        for (int cell = 0; cell < cc; ++cell) {
            double got = (basis[0][cell] / mass).real();
            double expect = static_cast<double>(c.haar().measure.canonical[cell].re);
            if (std::abs(got - expect) > 1e-9)
                return fail("meas.float-crosscheck", Json{{"cell", cell}});
        }
        return pass("meas.float-crosscheck");
    }});

    return props;
}

// ----------------------------------------------------------------- haar suite

inline std::vector<Property> haar_suite() {
    using namespace detail;
    std::vector<Property> props;

    props.push_back({"ns.certificates-revalidate", [](Ctx& c) {
        for (SystemMode mode : {SystemMode::strict, SystemMode::relaxed}) {
            const auto& systems = mode == SystemMode::strict ? c.strict_systems() : c.relaxed_systems();
            for (const NormalSystem& sys : systems) {
                if (!sys.certified()) return fail("ns.certificates-revalidate", Json::object());
                if (sys.chain.front() != c.r.group.full_subgroup() || sys.chain.back().size() != 1)
                    return fail("ns.certificates-revalidate", Json{{"detail", "chain endpoints"}});
                for (size_t i = 0; i + 1 < sys.chain.size(); ++i)
                    if (!sys.chain[i + 1].subset_of(sys.chain[i]) ||
                        sys.chain[i + 1].size() >= sys.chain[i].size())
                        return fail("ns.certificates-revalidate", Json{{"detail", "chain not decreasing"}});
            }
        }
        // strict systems are also relaxed-certified
        for (const NormalSystem& sys : c.strict_systems()) {
            NormalSystem as_relaxed = sys;
            as_relaxed.mode = SystemMode::relaxed;
            if (!as_relaxed.certified()) return fail("ns.certificates-revalidate", Json::object());
        }
        return pass("ns.certificates-revalidate");
    }});

    props.push_back({"ns.strict-iff-discrete", [](Ctx& c) {
        bool strict_exists = !c.strict_systems().empty();
        bool discrete = separation(c.r.tau).is_discrete;
        if (strict_exists == discrete)
            return degenerate("ns.strict-iff-discrete",
                              "finite models admit strict systems exactly when discrete");
        return fail("ns.strict-iff-discrete", Json{{"strict", strict_exists}, {"discrete", discrete}});
    }});

    props.push_back({"ns.expected-chains", [](Ctx& c) {
        auto has_chain = [](const std::vector<NormalSystem>& systems, const std::vector<Subgrp>& chain) {
            for (const NormalSystem& s : systems)
                if (s.chain == chain) return true;
            return false;
        };
        if (c.r.group.name == "S3" && c.r.cone.elements() == std::vector<int>{0, 2}) {
            Subgrp a3{(1ull << 0) | (1ull << 3) | (1ull << 4), 6};
            bool ok = c.strict_systems().empty() &&
                      has_chain(c.relaxed_systems(), {c.r.group.full_subgroup(), a3, Subgrp{1, 6}});
            return check("ns.expected-chains", ok, Json{{"relaxed", c.relaxed_systems().size()}});
        }
        if (c.r.group.name == "D4" && c.r.cone.elements() == std::vector<int>{0, 4}) {
            Subgrp rot{(1ull << 0) | (1ull << 1) | (1ull << 2) | (1ull << 3), 8};
            bool ok = has_chain(c.relaxed_systems(), {c.r.group.full_subgroup(), rot, Subgrp{1, 8}});
            return check("ns.expected-chains", ok, Json{{"relaxed", c.relaxed_systems().size()}});
        }
        if (separation(c.r.tau).is_discrete) {
            bool ok = !c.strict_systems().empty();
            return check("ns.expected-chains", ok, Json{{"detail", "discrete instance needs a strict system"}});
        }
        return degenerate("ns.expected-chains", "no pinned chain for this instance");
    }});

    props.push_back({"lem-loc1.averaging-operator", [](Ctx& c) {
        for (const NormalSystem& sys : c.relaxed_systems()) {
            for (size_t i = 1; i + 1 < sys.chain.size(); ++i) {
                AveragingOperator phi = averaging_operator(c.r, sys.chain[i], sys.chain[i + 1]);
                // retraction
                for (int cl = 0; cl < phi.q_l; ++cl) {
                    FnVec g(phi.q_l);
                    g[cl] = CRat(2, 3);
                    if (phi.apply(phi.pullback(g)) != g)
                        return fail("lem-loc1.averaging-operator", Json{{"detail", "retraction"}});
                }
                // positivity on indicator pullbacks
                for (int cm = 0; cm < phi.q_m; ++cm) {
                    FnVec f(phi.q_m);
                    f[cm] = CRat(1);
                    for (const CRat& v : phi.apply(f))
                        if (v.im != 0 || v.re < 0)
                            return fail("lem-loc1.averaging-operator", Json{{"detail", "positivity"}});
                }
                // equivariance for every group element
                FnVec probe(phi.q_m);
                for (int cm = 0; cm < phi.q_m; ++cm) probe[cm] = CRat(cm + 1, cm + 2);
                for (int g = 0; g < c.r.order(); ++g)
                    if (phi.translate_gl(phi.apply(probe), g) != phi.apply(phi.translate_gm(probe, g)))
                        return fail("lem-loc1.averaging-operator", Json{{"detail", "equivariance"}, {"g", g}});
            }
        }
        return pass("lem-loc1.averaging-operator");
    }});

    props.push_back({"thm-haarmeas.construct-equals-solver", [](Ctx& c) {
        for (SystemMode mode : {SystemMode::strict, SystemMode::relaxed}) {
            const auto& systems = mode == SystemMode::strict ? c.strict_systems() : c.relaxed_systems();
            for (const NormalSystem& sys : systems) {
                Meas m = construct_haar(c.r, sys);
                if (!radon_equal(m, c.haar().measure))
                    return fail("thm-haarmeas.construct-equals-solver",
                                Json{{"chain_length", sys.chain.size()}});
                if (!verify_uniqueness(c.r, m, c.haar().measure))
                    return fail("thm-haarmeas.construct-equals-solver", Json{{"detail", "not proportional"}});
            }
        }
        return pass("thm-haarmeas.construct-equals-solver");
    }});

    props.push_back({"thm-haarmeas.psi-chain-conditions", [](Ctx& c) {
        for (const NormalSystem& sys : c.relaxed_systems()) {
            HaarState st = construct_haar_state(c.r, sys);
            for (size_t lvl = 0; lvl < st.psi.size(); ++lvl) {
                CRat total;
                for (const CRat& v : st.psi[lvl]) {
                    if (v.im != 0 || v.re < 0)
                        return fail("thm-haarmeas.psi-chain-conditions", Json{{"detail", "positivity"}});
                    total += v;
                }
                if (total != CRat(1))
                    return fail("thm-haarmeas.psi-chain-conditions", Json{{"detail", "normalization"}});
                QuotientGroup q = quotient_group(c.r.group, sys.chain[lvl + 1]);
                // right invariance of the functional: psi(R_g f) = psi(f)
                for (int g = 0; g < q.table.order; ++g) {
                    for (int cs = 0; cs < q.table.order; ++cs) {
                        // R_g indicator of coset cs is the indicator of cs g^-1
                        CRat lhs = st.psi[lvl][q.table.mul(cs, q.table.inv(g))];
                        CRat rhs = st.psi[lvl][cs];
                        if (lhs != rhs)
                            return fail("thm-haarmeas.psi-chain-conditions",
                                        Json{{"detail", "right invariance"}, {"g", g}});
                    }
                }
            }
            // consistency of deeper functionals with shallower ones
            for (size_t shallow = 0; shallow + 1 < st.psi.size(); ++shallow)
                for (size_t cs = 0; cs < st.psi[shallow].size(); ++cs) {
                    const auto& deep_proj = st.proj.back();
                    const auto& deep_w = st.psi.back();
                    CRat v;
                    std::vector<char> counted(deep_w.size(), 0);
                    for (int x = 0; x < c.r.order(); ++x)
                        if (st.proj[shallow][x] == static_cast<int>(cs) && !counted[deep_proj[x]]) {
                            counted[deep_proj[x]] = 1;
                            v += deep_w[deep_proj[x]];
                        }
                    if (v != st.psi[shallow][cs])
                        return fail("thm-haarmeas.psi-chain-conditions", Json{{"detail", "consistency"}});
                }
        }
        return pass("thm-haarmeas.psi-chain-conditions");
    }});

    props.push_back({"thm-msc.orbit-average", [](Ctx& c) {
        Meas lam = c.haar().measure;
        if (!radon_equal(haar_from_orbit_average(c.r, lam), lam))
            return fail("thm-msc.orbit-average", Json{{"detail", "haar not a fixed point"}});
        for (const Meas& b : c.msig().basis_measures(c.r)) {
            if (b.total_mass().is_zero()) continue;
            if (!radon_equal(haar_from_orbit_average(c.r, b), lam))
                return fail("thm-msc.orbit-average", Json::object());
        }
        return pass("thm-msc.orbit-average");
    }});

    props.push_back({"uniq.scalar-multiples", [](Ctx& c) {
        Meas lam = c.haar().measure;
        std::vector<CRat> twice(c.r.cell_count());
        for (int cc = 0; cc < c.r.cell_count(); ++cc) twice[cc] = lam.canonical[cc] * CRat(2);
        return check("uniq.scalar-multiples", verify_uniqueness(c.r, lam, meas_from_canonical(c.r, twice)),
                     Json::object());
    }});

    props.push_back({"namioka.separate-implies-joint", [](Ctx& c) {
        int separate = 0, joint = 0, both = 0;
        for (const NormalSystem& sys : c.relaxed_systems())
            for (const StepCert& st : sys.steps) {
                if (st.action_separately_continuous) ++separate;
                if (st.action_jointly_continuous) ++joint;
                if (st.action_separately_continuous && st.action_jointly_continuous) ++both;
            }
        if (both != separate) // a separately- but not jointly-continuous action would land here
            return fail("namioka.separate-implies-joint", Json{{"separate", separate}, {"joint", joint}});
        return diagnostic("namioka.separate-implies-joint",
                          Json{{"separate", separate}, {"joint", joint}});
    }});

    return props;
}

// ------------------------------------------------------------------- reports

struct InstanceReport {
    std::string id;
    Json instance;
    std::vector<PropertyRecord> records;
};

struct VerificationReport {
    std::string suite;
    int max_order = 0;
    std::vector<InstanceReport> instances;
    int pass = 0, fail = 0, degenerate = 0, diagnostic = 0;
    double total_ms = 0; // envelope only, never serialized into the payload
};

inline std::vector<Property> suite_registry(const std::string& suite) {
    std::vector<Property> props;
    auto append = [&](std::vector<Property> more) {
        for (auto& p : more) props.push_back(std::move(p));
    };
    if (suite == "sigma" || suite == "all") append(sigma_suite());
    if (suite == "functions" || suite == "all") append(functions_suite());
    if (suite == "measures" || suite == "all") append(measures_suite());
    if (suite == "haar" || suite == "all") append(haar_suite());
    if (props.empty()) throw Error("unknown suite: " + suite);
    return props;
}

struct SuiteInput {
    RtGroup rtg;
    std::optional<AlexandrovTopology> claimed_sigma;
    std::optional<std::vector<int>> claimed_ng;
};

inline VerificationReport run_suite(const std::string& suite, std::vector<SuiteInput> inputs) {
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.suite = suite;
    auto props = suite_registry(suite);
    for (SuiteInput& in : inputs) {
        Ctx ctx{std::move(in.rtg), std::move(in.claimed_sigma), std::move(in.claimed_ng)};
        InstanceReport ir;
        ir.id = ctx.r.id();
        ir.instance = instance_to_json(ctx.r);
        for (const Property& p : props) {
            PropertyRecord rec;
            try {
                rec = p.run(ctx);
            } catch (const std::exception& e) {
                rec = detail::fail(p.id, Json{{"exception", e.what()}});
            }
            switch (rec.status) {
                case PropStatus::pass: ++rep.pass; break;
                case PropStatus::fail: ++rep.fail; break;
                case PropStatus::degenerate_pass: ++rep.degenerate; break;
                case PropStatus::diagnostic: ++rep.diagnostic; break;
            }
            ir.records.push_back(std::move(rec));
        }
        rep.instances.push_back(std::move(ir));
    }
    rep.total_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

inline VerificationReport run_suite_on_catalog(const std::string& suite, int max_order) {
    std::vector<SuiteInput> inputs;
    for (RtGroup& r : enumerate_instances(max_order)) inputs.push_back({std::move(r), {}, {}});
    VerificationReport rep = run_suite(suite, std::move(inputs));
    rep.max_order = max_order;
    return rep;
}

// Deterministic payload: no timing anywhere inside.
inline Json report_to_json(const VerificationReport& rep) {
    Json instances = Json::array();
    for (const InstanceReport& ir : rep.instances) {
        Json records = Json::array();
        for (const PropertyRecord& r : ir.records) {
            Json rec{{"id", r.id}, {"status", status_name(r.status)}};
            if (!r.payload.is_null()) {
                if (r.status == PropStatus::fail)
                    rec["witness"] = r.payload;
                else
                    rec["data"] = r.payload;
            }
            records.push_back(std::move(rec));
        }
        instances.push_back(Json{{"id", ir.id}, {"instance", ir.instance}, {"properties", std::move(records)}});
    }
    return Json{{"suite", rep.suite},
                {"max_order", rep.max_order},
                {"instances", std::move(instances)},
                {"summary", Json{{"pass", rep.pass},
                                 {"fail", rep.fail},
                                 {"degenerate_pass", rep.degenerate},
                                 {"diagnostic", rep.diagnostic}}}};
}

inline std::string csv_escape(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    return out + "\"";
}

// One row per (instance, property); stable column order.
inline std::string report_to_csv(const Json& report_json) {
    std::ostringstream os;
    os << "instance,property,status,witness\n";
    if (report_json.contains("instances"))
        for (const Json& inst : report_json["instances"])
            for (const Json& rec : inst["properties"]) {
                std::string payload;
                if (rec.contains("witness")) payload = rec["witness"].dump();
                else if (rec.contains("data")) payload = rec["data"].dump();
                os << csv_escape(inst["id"].get<std::string>()) << ","
                   << csv_escape(rec["id"].get<std::string>()) << ","
                   << rec["status"].get<std::string>() << "," << csv_escape(payload) << "\n";
            }
    return os.str();
}

} // namespace rtglab::verify
