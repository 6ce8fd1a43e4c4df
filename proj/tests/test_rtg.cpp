#include <catch_amalgamated.hpp>

#include "rtglab/rtg.hpp"

using namespace rtglab;

namespace {
Subgrp sg(int n, std::initializer_list<int> elems) {
    std::uint64_t m = 0;
    for (int e : elems) m |= 1ull << e;
    return {m, n};
}
// S3 in lex permutation order: 0=e 1=(23) 2=(12) 3=(123) 4=(132) 5=(13)
RtGroup s3_instance() { return make_rtg(symmetric_group(3), sg(6, {0, 2})); }
RtGroup d4_instance() { return make_rtg(dihedral_group(4), sg(8, {0, 4})); }
} // namespace

TEST_CASE("make_rtg: discrete, non-topological and central-cone instances") {
    RtGroup z4 = make_rtg(cyclic_group(4), sg(4, {0}));
    CHECK(separation(z4.tau).is_discrete);
    CHECK(is_topological(z4));
    CHECK(is_topological_direct(z4));

    RtGroup s3 = s3_instance();
    CHECK(s3.cell_count() == 3);
    CHECK_FALSE(is_topological(s3));
    CHECK_FALSE(is_topological_direct(s3));
    // left translation by (13) is discontinuous
    std::vector<int> lg(6);
    for (int x = 0; x < 6; ++x) lg[x] = s3.group.mul(5, x);
    CHECK_FALSE(is_continuous(lg, s3.tau, s3.tau));

    RtGroup q8 = make_rtg(quaternion_group_8(), sg(8, {0, 1}));
    CHECK(is_topological(q8));
    CHECK(is_topological_direct(q8));

    CHECK_THROWS_AS(make_rtg(symmetric_group(3), sg(6, {0, 1, 2})), NotASubgroup);
}

TEST_CASE("make_rtg_from_topology validates right invariance") {
    GroupTable z2 = cyclic_group(2);
    RtGroup r = make_rtg_from_topology(z2, AlexandrovTopology::discrete(2));
    CHECK(r.cone == sg(2, {0}));

    RtGroup s3 = s3_instance();
    RtGroup round = make_rtg_from_topology(s3.group, s3.tau);
    CHECK(round.cone == s3.cone);

    AlexandrovTopology sierp{2, {PointSet(2), PointSet(2)}};
    sierp.minnbhd[0].set(0);
    sierp.minnbhd[1].set(0);
    sierp.minnbhd[1].set(1);
    CHECK_THROWS_AS(make_rtg_from_topology(z2, sierp), NotRightInvariant);
}

TEST_CASE("topological center: direct check equals normalizer oracle") {
    RtGroup z4 = make_rtg(cyclic_group(4), sg(4, {0}));
    CHECK(topological_center(z4) == z4.group.full_subgroup());

    CHECK(topological_center(s3_instance()) == sg(6, {0, 2}));
    CHECK(topological_center(d4_instance()) == sg(8, {0, 2, 4, 6}));
}

TEST_CASE("admissibility") {
    CHECK(is_admissible(make_rtg(quaternion_group_8(), sg(8, {0, 1}))));
    CHECK_FALSE(is_admissible(s3_instance()));
    CHECK_FALSE(is_admissible(d4_instance()));
}

TEST_CASE("sigma topology equals the normal-closure coset partition") {
    RtGroup z4 = make_rtg(cyclic_group(4), sg(4, {0}));
    CHECK(sigma_topology(z4) == z4.tau);

    RtGroup s3 = s3_instance();
    CHECK(sigma_topology(s3) == AlexandrovTopology::indiscrete(6));

    RtGroup d4 = d4_instance();
    const AlexandrovTopology& sig = sigma_topology(d4);
    PointSet klein(8);
    for (int x : {0, 2, 4, 6}) klein.set(x);
    CHECK(sig.minnbhd[0] == klein);
    CHECK(sig.minnbhd[1] == ~klein);
}

TEST_CASE("sigma-sigma and N(G)") {
    RtGroup z4 = make_rtg(cyclic_group(4), sg(4, {0}));
    CHECK(n_of_g(z4) == sg(4, {0}));

    CHECK(n_of_g(s3_instance()) == symmetric_group(3).full_subgroup());
    CHECK(n_of_g(d4_instance()) == sg(8, {0, 2, 4, 6}));
    CHECK(sigma_sigma_topology(d4_instance()) == sigma_topology(d4_instance()));
}

TEST_CASE("theorem si: sigma coarser, equality iff topological, continuous inverse") {
    for (const RtGroup& r : {make_rtg(cyclic_group(6), sg(6, {0, 3})), s3_instance(), d4_instance(),
                             make_rtg(quaternion_group_8(), sg(8, {0, 1}))}) {
        const AlexandrovTopology& sig = sigma_topology(r);
        CHECK(coarser_or_equal(sig, r.tau));
        CHECK((sig == r.tau) == is_topological_direct(r));
        CHECK((sig == r.tau) == is_normal(r.group, r.cone));
        std::vector<int> inv(r.order());
        for (int x = 0; x < r.order(); ++x) inv[x] = r.group.inv(x);
        CHECK(is_continuous(inv, sig, sig));
    }
}

TEST_CASE("N(L) variants") {
    RtGroup s3 = s3_instance();
    CHECK(n_of(s3, sg(6, {0}), NbhdVariant::nbhds_in_G) == sg(6, {0}));
    CHECK(n_of(s3, sg(6, {0}), NbhdVariant::nbhds_in_L) == sg(6, {0}));
    CHECK(n_of(s3, s3.group.full_subgroup(), NbhdVariant::nbhds_in_G) == s3.group.full_subgroup());

    RtGroup d4 = d4_instance();
    CHECK(n_of(d4, d4.group.full_subgroup(), NbhdVariant::nbhds_in_G) == sg(8, {0, 2, 4, 6}));
    // both readings agree on every subgroup of these finite instances
    for (const RtGroup& r : {s3, d4})
        for (const Subgrp& l : subgroups(r.group))
            CHECK(n_of(r, l, NbhdVariant::nbhds_in_G) == n_of(r, l, NbhdVariant::nbhds_in_L));
}

TEST_CASE("quotient by the trivial subgroup echoes the instance") {
    RtGroup s3 = s3_instance();
    QuotientRtg q = quotient_rtg(s3, sg(6, {0}));
    CHECK(q.quotient.group.order == 6);
    CHECK(q.quotient.tau == s3.tau);
    CHECK(q.hausdorff == separation(s3.tau).is_hausdorff);
    CHECK(q.topological == is_topological_direct(s3));
}

TEST_CASE("quotient of D4 by N(G) is discrete Z2, Hausdorff and topological") {
    QuotientRtg q = quotient_rtg(d4_instance(), sg(8, {0, 2, 4, 6}));
    CHECK(q.quotient.group.order == 2);
    CHECK(separation(q.quotient.tau).is_discrete);
    CHECK(q.hausdorff);
    CHECK(q.topological);
    CHECK(q.kernel_sigma_closed);
    CHECK(q.kernel_sigma_sigma_closed);
}

TEST_CASE("quotient of the S3 instance by A3 is indiscrete and not Hausdorff") {
    QuotientRtg q = quotient_rtg(s3_instance(), sg(6, {0, 3, 4}));
    CHECK(q.quotient.group.order == 2);
    CHECK(q.quotient.tau == AlexandrovTopology::indiscrete(2));
    CHECK_FALSE(q.hausdorff);
    CHECK_FALSE(q.kernel_sigma_closed);
    CHECK_FALSE(q.kernel_sigma_sigma_closed);
    // the indiscrete quotient is a topological group even so; only the
    // conjunction with Hausdorff tracks sigma-sigma-closedness
    CHECK(q.topological);
    CHECK((q.hausdorff && q.topological) == q.kernel_sigma_sigma_closed);

    CHECK_THROWS_AS(quotient_rtg(s3_instance(), sg(6, {0, 2})), NotNormal);
}

TEST_CASE("quotient flags match the closure predicates across instances") {
    for (const RtGroup& r : {s3_instance(), d4_instance(), make_rtg(cyclic_group(6), sg(6, {0, 3})),
                             make_rtg(quaternion_group_8(), sg(8, {0, 1}))}) {
        for (const Subgrp& k : subgroups(r.group)) {
            if (!is_normal(r.group, k)) continue;
            QuotientRtg q = quotient_rtg(r, k);
            CHECK(q.hausdorff == q.kernel_sigma_closed);
            CHECK((q.hausdorff && q.topological) == q.kernel_sigma_sigma_closed);
        }
    }
}

TEST_CASE("namioka base report") {
    RtGroup z4 = make_rtg(cyclic_group(4), sg(4, {0}));
    NamiokaReport rep = check_namioka_base(z4);
    CHECK(rep.admissible);
    CHECK(rep.phi_open);
    CHECK(rep.base_at_identity);

    NamiokaReport s3rep = check_namioka_base(s3_instance());
    CHECK_FALSE(s3rep.admissible);
    CHECK_FALSE(s3rep.base_at_identity); // H^-1 H = H but the minimal sigma nbhd is all of S3
    CHECK(s3rep.uinv_u == std::vector<int>{0, 2});

    NamiokaReport q8rep = check_namioka_base(make_rtg(quaternion_group_8(), sg(8, {0, 1})));
    CHECK(q8rep.admissible);
    CHECK(q8rep.phi_open);
    CHECK(q8rep.base_at_identity);
}

TEST_CASE("continuous homomorphisms into discrete groups factor through N(G)") {
    RtGroup s3 = s3_instance();
    const Subgrp& ng = n_of_g(s3);
    for (const GroupTable& target : {cyclic_group(2), cyclic_group(3)}) {
        for (const auto& f : homomorphisms(s3.group, target)) {
            std::vector<int> fv(f.begin(), f.end());
            if (!is_continuous(fv, s3.tau, AlexandrovTopology::discrete(target.order))) continue;
            for (int x = 0; x < 6; ++x)
                for (int a : ng.elements())
                    REQUIRE(f[s3.group.mul(a, x)] == f[x]);
        }
    }
}

TEST_CASE("metrizability shadow: Hausdorff instances are discrete hence topological") {
    for (const GroupTable& g : {cyclic_group(5), symmetric_group(3), dihedral_group(4)}) {
        RtGroup r = make_rtg(g, Subgrp{1ull << g.identity, g.order});
        CHECK(separation(r.tau).is_hausdorff);
        CHECK(is_topological_direct(r));
    }
}

TEST_CASE("quotient by N(G) is topological with matching sigma quotient") {
    for (const RtGroup& r : {s3_instance(), d4_instance()}) {
        QuotientRtg q = quotient_rtg(r, n_of_g(r));
        CHECK(q.topological);
        CHECK(q.hausdorff);
        CHECK(q.quotient.tau == q.sigma_quotient);
        // action map of the proposition, with L = G
        const RtGroup& quot = q.quotient;
        const int m = quot.order();
        std::vector<int> action(m * m);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) action[a * m + b] = quot.group.mul(a, b);
        CHECK(is_continuous(action, product_topology(quot.tau, quot.tau), quot.tau));
    }
}
