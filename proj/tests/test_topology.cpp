#include <catch_amalgamated.hpp>

#include <random>

#include "rtglab/group.hpp"
#include "rtglab/topology.hpp"

using namespace rtglab;

namespace {
PointSet ps(int n, std::initializer_list<int> elems) {
    PointSet s(n);
    for (int e : elems) s.set(e);
    return s;
}

AlexandrovTopology sierpinski() {
    // U_0 = {0}, U_1 = {0,1}; opens are {}, {0}, {0,1}
    AlexandrovTopology t{2, {PointSet(2), PointSet(2)}};
    t.minnbhd[0].set(0);
    t.minnbhd[1].set(0);
    t.minnbhd[1].set(1);
    t.validate();
    return t;
}

// right-coset topology of H inside g
AlexandrovTopology coset_topology(const GroupTable& g, const Subgrp& h) {
    AlexandrovTopology t{g.order, std::vector<PointSet>(g.order, PointSet(g.order))};
    for (int x = 0; x < g.order; ++x)
        for (int a : h.elements()) t.minnbhd[x].set(g.mul(a, x));
    t.validate();
    return t;
}
} // namespace

TEST_CASE("convention pin: Sierpinski space") {
    AlexandrovTopology t = sierpinski();
    CHECK(is_open(t, ps(2, {0})));
    CHECK_FALSE(is_open(t, ps(2, {1})));
    CHECK(is_open(t, ps(2, {0, 1})));
    CHECK(closure(t, ps(2, {1})) == ps(2, {1}));
    CHECK(closure(t, ps(2, {0})) == ps(2, {0, 1}));
    auto s = separation(t);
    CHECK(s.is_t0);
    CHECK_FALSE(s.is_t1);
}

TEST_CASE("closure on discrete, indiscrete and coset topologies") {
    AlexandrovTopology d = AlexandrovTopology::discrete(4);
    CHECK(closure(d, ps(4, {1, 2})) == ps(4, {1, 2}));

    AlexandrovTopology ind = AlexandrovTopology::indiscrete(3);
    CHECK(closure(ind, ps(3, {0})) == ps(3, {0, 1, 2}));

    GroupTable s3 = symmetric_group(3);
    Subgrp h{0, 6};
    h.mask = (1ull << 0) | (1ull << 2); // {e, (0 1)} in lex permutation order
    AlexandrovTopology t = coset_topology(s3, h);
    // cl({e}) is the cell of e, read off via the minimal-neighborhood dual
    PointSet cl = closure(t, ps(6, {0}));
    CHECK(cl == ps(6, {0, 2}));
    // cross-check against the open-set definition: smallest closed superset
    PointSet best(6);
    best.set();
    for (std::uint64_t m = 0; m < 64; ++m) {
        PointSet v(6);
        for (int i = 0; i < 6; ++i)
            if ((m >> i) & 1u) v.set(i);
        PointSet comp = ~v;
        if (is_open(t, comp) && v.test(0) && v.count() < best.count()) best = v;
    }
    CHECK(cl == best);
}

TEST_CASE("interior is the complement dual of closure") {
    GroupTable d4 = dihedral_group(4);
    Subgrp h{(1ull << 0) | (1ull << 4), 8};
    AlexandrovTopology t = coset_topology(d4, h);
    std::mt19937 rng(7);
    for (int it = 0; it < 50; ++it) {
        PointSet a(8);
        for (int i = 0; i < 8; ++i)
            if (rng() & 1u) a.set(i);
        CHECK(interior(t, a) == ~closure(t, ~a));
    }
}

TEST_CASE("closure is monotone, idempotent, extensive") {
    GroupTable s3 = symmetric_group(3);
    Subgrp h{(1ull << 0) | (1ull << 2), 6};
    for (const AlexandrovTopology& t :
         {coset_topology(s3, h), AlexandrovTopology::discrete(6), AlexandrovTopology::indiscrete(6)}) {
        std::mt19937 rng(11);
        for (int it = 0; it < 40; ++it) {
            PointSet a(6), b(6);
            for (int i = 0; i < 6; ++i) {
                if (rng() & 1u) a.set(i);
                if (rng() & 1u) b.set(i);
            }
            PointSet ab = a | b;
            CHECK(a.is_subset_of(closure(t, a)));
            CHECK(closure(t, closure(t, a)) == closure(t, a));
            CHECK(closure(t, a).is_subset_of(closure(t, ab)));
        }
    }
}

TEST_CASE("product topology") {
    AlexandrovTopology d2 = AlexandrovTopology::discrete(2);
    CHECK(product_topology(d2, d2) == AlexandrovTopology::discrete(4));

    // indiscrete x T: minimal neighborhood of (x,a) is whole x U_a
    AlexandrovTopology ind = AlexandrovTopology::indiscrete(2);
    AlexandrovTopology s = sierpinski();
    AlexandrovTopology p = product_topology(ind, s);
    for (int x = 0; x < 2; ++x)
        for (int a = 0; a < 2; ++a) {
            PointSet expect(4);
            for (int y = 0; y < 2; ++y)
                for (int b = 0; b < 2; ++b)
                    if (s.minnbhd[a].test(b)) expect.set(y * 2 + b);
            CHECK(p.minnbhd[x * 2 + a] == expect);
        }
    // brute-force cross-check: opens of the product are exactly the unions
    // of boxes of opens
    auto popens = all_opens(p);
    auto o1 = all_opens(ind), o2 = all_opens(s);
    for (const PointSet& v : popens) {
        PointSet rebuilt(4);
        for (const PointSet& a : o1)
            for (const PointSet& b : o2) {
                PointSet box(4);
                for (int x = 0; x < 2; ++x)
                    for (int y = 0; y < 2; ++y)
                        if (a.test(x) && b.test(y)) box.set(x * 2 + y);
                if (box.is_subset_of(v)) rebuilt |= box;
            }
        CHECK(rebuilt == v);
    }

    // Sierpinski x Sierpinski: minimal neighborhood sizes {1,2,2,4}
    AlexandrovTopology ss = product_topology(s, s);
    std::vector<size_t> sizes;
    for (auto& row : ss.minnbhd) sizes.push_back(row.count());
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<size_t>{1, 2, 2, 4});
}

TEST_CASE("final topology: identity and discrete cases") {
    GroupTable s3 = symmetric_group(3);
    Subgrp h{(1ull << 0) | (1ull << 2), 6};
    AlexandrovTopology t = coset_topology(s3, h);
    std::vector<int> id(6);
    for (int i = 0; i < 6; ++i) id[i] = i;
    CHECK(final_topology(t, id, 6) == t);

    AlexandrovTopology d = AlexandrovTopology::discrete(6);
    std::vector<int> f{0, 1, 2, 0, 1, 2};
    CHECK(final_topology(d, f, 3) == AlexandrovTopology::discrete(3));

    CHECK_THROWS_AS(final_topology(d, f, 4), NotSurjective);
}

TEST_CASE("final topology of the difference map collapses S3 to indiscrete") {
    GroupTable s3 = symmetric_group(3);
    Subgrp h{(1ull << 0) | (1ull << 2), 6};
    AlexandrovTopology t = coset_topology(s3, h);
    AlexandrovTopology prod = product_topology(t, t);
    std::vector<int> phi(36);
    for (int x = 0; x < 6; ++x)
        for (int y = 0; y < 6; ++y) phi[x * 6 + y] = s3.mul(s3.inv(x), y);
    AlexandrovTopology sig = final_topology(prod, phi, 6);
    // oracle: coset partition of the normal closure of the cone, here all of S3
    CHECK(sig == AlexandrovTopology::indiscrete(6));
    sig.validate();
}

TEST_CASE("continuity and openness checks") {
    AlexandrovTopology s = sierpinski();
    std::vector<int> id{0, 1};
    CHECK(is_continuous(id, s, s));
    CHECK(is_open_map(id, s, s));

    // constant map to a discrete point: continuous, and open since the image
    // singleton is open
    AlexandrovTopology one = AlexandrovTopology::discrete(1);
    std::vector<int> c{0, 0};
    CHECK(is_continuous(c, s, one));
    CHECK(is_open_map(c, s, one));

    // swap on Sierpinski is not continuous
    std::vector<int> swap{1, 0};
    CHECK_FALSE(is_continuous(swap, s, s));

    // quotient projection S3 -> S3/A3 with coset source topology and
    // indiscrete target: continuous and open
    GroupTable s3 = symmetric_group(3);
    Subgrp h{(1ull << 0) | (1ull << 2), 6};
    AlexandrovTopology t = coset_topology(s3, h);
    Subgrp a3 = normal_closure(s3, Subgrp{(1ull << 0) | (1ull << 3), 6});
    QuotientGroup q = quotient_group(s3, a3);
    AlexandrovTopology ind2 = AlexandrovTopology::indiscrete(2);
    CHECK(is_continuous(q.projection, t, ind2));
    CHECK(is_open_map(q.projection, t, ind2));
}

TEST_CASE("minimal-neighborhood continuity agrees with open-preimage brute force") {
    GroupTable d4 = dihedral_group(4);
    Subgrp h{(1ull << 0) | (1ull << 4), 8};
    AlexandrovTopology t = coset_topology(d4, h);
    std::mt19937 rng(3);
    for (int it = 0; it < 30; ++it) {
        std::vector<int> f(8);
        for (int& v : f) v = rng() % 8;
        REQUIRE(is_continuous(f, t, t) == is_continuous_bruteforce(f, t, t));
    }
    // structured maps: all right translations (continuous), all left ones
    for (int g = 0; g < 8; ++g) {
        std::vector<int> rg(8), lg(8);
        for (int x = 0; x < 8; ++x) {
            rg[x] = d4.mul(x, g);
            lg[x] = d4.mul(g, x);
        }
        REQUIRE(is_continuous(rg, t, t));
        REQUIRE(is_continuous(lg, t, t) == is_continuous_bruteforce(lg, t, t));
    }
}

TEST_CASE("separation flags") {
    auto d = separation(AlexandrovTopology::discrete(3));
    CHECK(d.is_t0);
    CHECK(d.is_t1);
    CHECK(d.is_hausdorff);
    CHECK(d.is_discrete);
    CHECK_FALSE(d.is_indiscrete);

    auto i = separation(AlexandrovTopology::indiscrete(2));
    CHECK_FALSE(i.is_t0);
    CHECK_FALSE(i.is_t1);
    CHECK(i.is_indiscrete);

    GroupTable s3 = symmetric_group(3);
    Subgrp h{(1ull << 0) | (1ull << 2), 6};
    auto c = separation(coset_topology(s3, h));
    CHECK_FALSE(c.is_t0); // two-point cells specialize into each other
    CHECK_FALSE(c.is_t1);
    CHECK_FALSE(c.is_discrete);
    CHECK_FALSE(c.is_indiscrete);
}

TEST_CASE("induced topology restricts minimal neighborhoods") {
    GroupTable s3 = symmetric_group(3);
    Subgrp h{(1ull << 0) | (1ull << 2), 6};
    AlexandrovTopology t = coset_topology(s3, h);
    AlexandrovTopology sub = induced_topology(t, {0, 3, 4}); // A3 carries the discrete trace
    CHECK(sub == AlexandrovTopology::discrete(3));
}

TEST_CASE("pretty printer renders cells") {
    std::string txt = pretty_print(sierpinski());
    CHECK(txt.find("U_1 = {0,1}") != std::string::npos);
    CHECK(txt.find("components: {0,1}") != std::string::npos);
}
