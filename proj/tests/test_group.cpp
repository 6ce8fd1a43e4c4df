#include <catch_amalgamated.hpp>

#include "rtglab/group.hpp"

using namespace rtglab;

namespace {
Subgrp sg(const GroupTable& g, std::initializer_list<int> elems) {
    std::uint64_t m = 0;
    for (int e : elems) m |= 1ull << e;
    return {m, g.order};
}

// index of a permutation of {0..n-1} inside symmetric_group(n)'s element order
int perm_idx(int n, std::vector<int> p) {
    auto all = detail::permutations_lex(n);
    for (size_t i = 0; i < all.size(); ++i)
        if (all[i] == p) return static_cast<int>(i);
    return -1;
}
} // namespace

TEST_CASE("validate_group accepts Z2 and derives identity") {
    GroupTable z2 = validate_group({{0, 1}, {1, 0}});
    CHECK(z2.order == 2);
    CHECK(z2.identity == 0);
    CHECK(z2.inv(1) == 1);
}

TEST_CASE("validate_group rejects a constant row") {
    CHECK_THROWS_AS(validate_group({{0, 1}, {1, 1}}), NotAGroup);
}

TEST_CASE("validate_group rejects non-associative Latin squares") {
    // order-5 quasigroup (subtraction mod 5) is a Latin square but not a group
    std::vector<std::vector<int>> sub(5, std::vector<int>(5));
    for (int x = 0; x < 5; ++x)
        for (int y = 0; y < 5; ++y) sub[x][y] = ((x - y) % 5 + 5) % 5;
    CHECK_THROWS_AS(validate_group(sub), NotAGroup);
}

TEST_CASE("S3 built from permutation composition satisfies the axioms") {
    GroupTable s3 = symmetric_group(3);
    CHECK(s3.order == 6);
    // brute-force re-verification, independent of validate_group internals
    for (int x = 0; x < 6; ++x)
        for (int y = 0; y < 6; ++y)
            for (int z = 0; z < 6; ++z)
                REQUIRE(s3.mul(s3.mul(x, y), z) == s3.mul(x, s3.mul(y, z)));
}

TEST_CASE("subgroup enumeration matches independent subset filter") {
    // independent oracle: all subsets that directly satisfy the axioms
    auto oracle_count = [](const GroupTable& g) {
        int count = 0;
        for (std::uint64_t m = 1; m < (1ull << g.order); ++m) {
            if (!((m >> g.identity) & 1u)) continue;
            if (is_subgroup(g, Subgrp{m, g.order})) ++count;
        }
        return count;
    };
    GroupTable z2 = cyclic_group(2), z4 = cyclic_group(4), s3 = symmetric_group(3);
    CHECK(subgroups(z2).size() == 2);
    CHECK(subgroups(z4).size() == 3);
    CHECK(subgroups(s3).size() == 6);
    CHECK(oracle_count(z2) == 2);
    CHECK(oracle_count(z4) == 3);
    CHECK(oracle_count(s3) == 6);
    GroupTable d4 = dihedral_group(4), q8 = quaternion_group_8();
    CHECK(subgroups(d4).size() == static_cast<size_t>(oracle_count(d4)));
    CHECK(subgroups(q8).size() == static_cast<size_t>(oracle_count(q8)));
    CHECK(oracle_count(q8) == 6);
}

TEST_CASE("subgroups are sorted by size then lexicographically") {
    auto subs = subgroups(symmetric_group(3));
    for (size_t i = 0; i + 1 < subs.size(); ++i) CHECK(subgroup_order_less(subs[i], subs[i + 1]));
    CHECK(subs.front().size() == 1);
    CHECK(subs.back().size() == 6);
}

TEST_CASE("normal closure of a transposition is all of S3") {
    GroupTable s3 = symmetric_group(3);
    int t12 = perm_idx(3, {1, 0, 2});
    CHECK(normal_closure(s3, sg(s3, {s3.identity, t12})).size() == 6);
    CHECK(normal_closure(s3, sg(s3, {s3.identity})) == sg(s3, {s3.identity}));
}

TEST_CASE("normal closure of a reflection in D4 is the Klein four group") {
    GroupTable d4 = dihedral_group(4);
    Subgrp nc = normal_closure(d4, sg(d4, {0, 4})); // {e, s}
    CHECK(nc == sg(d4, {0, 2, 4, 6}));              // {e, r^2, s, s r^2}
}

TEST_CASE("normalizers") {
    GroupTable s3 = symmetric_group(3);
    int t12 = perm_idx(3, {1, 0, 2});
    Subgrp h = sg(s3, {0, t12});
    CHECK(normalizer(s3, h) == h);

    GroupTable d4 = dihedral_group(4);
    CHECK(normalizer(d4, sg(d4, {0, 4})) == sg(d4, {0, 2, 4, 6}));

    // normal subgroup: normalizer is everything
    Subgrp a3 = normal_closure(s3, sg(s3, {0, perm_idx(3, {1, 2, 0})}));
    CHECK(a3.size() == 3);
    CHECK(normalizer(s3, a3) == s3.full_subgroup());
}

TEST_CASE("quotients") {
    GroupTable s3 = symmetric_group(3);
    Subgrp a3 = normal_closure(s3, sg(s3, {0, perm_idx(3, {1, 2, 0})}));
    QuotientGroup q = quotient_group(s3, a3);
    CHECK(q.table.order == 2);
    CHECK(is_isomorphic(q.table, cyclic_group(2)));

    QuotientGroup triv = quotient_group(s3, sg(s3, {0}));
    CHECK(triv.table.order == 6);
    for (int x = 0; x < 6; ++x) CHECK(triv.projection[x] == x);

    int t12 = perm_idx(3, {1, 0, 2});
    CHECK_THROWS_AS(quotient_group(s3, sg(s3, {0, t12})), NotNormal);
}

TEST_CASE("projection is a homomorphism for all normal subgroups of D4 and Q8") {
    for (const GroupTable& g : {dihedral_group(4), quaternion_group_8()}) {
        for (const Subgrp& h : subgroups(g)) {
            if (!is_normal(g, h)) continue;
            QuotientGroup q = quotient_group(g, h);
            for (int x = 0; x < g.order; ++x)
                for (int y = 0; y < g.order; ++y)
                    REQUIRE(q.projection[g.mul(x, y)] == q.table.mul(q.projection[x], q.projection[y]));
        }
    }
}

TEST_CASE("normalizer contains the subgroup and closures are fixpoints") {
    for (const GroupTable& g : {symmetric_group(3), dihedral_group(4), alternating_group_4()}) {
        for (const Subgrp& h : subgroups(g)) {
            CHECK(h.subset_of(normalizer(g, h)));
            Subgrp nc = normal_closure(g, h);
            CHECK(h.subset_of(nc));
            CHECK(is_normal(g, nc));
            // fixpoint: conjugating and closing again changes nothing
            std::uint64_t again = nc.mask;
            for (int x = 0; x < g.order; ++x)
                for (int a : nc.elements()) again |= 1ull << g.conj(x, a);
            CHECK(closure_mask(g, again) == nc.mask);
        }
    }
}

TEST_CASE("homomorphism enumeration finds exactly the expected counts") {
    GroupTable s3 = symmetric_group(3), z2 = cyclic_group(2), z3 = cyclic_group(3);
    CHECK(homomorphisms(s3, z2).size() == 2); // trivial and sign
    CHECK(homomorphisms(s3, z3).size() == 1); // trivial only
    CHECK(homomorphisms(cyclic_group(4), z2).size() == 2);
    CHECK(homomorphisms(cyclic_group(6), cyclic_group(6)).size() == 6);
    for (const auto& f : homomorphisms(s3, z2))
        for (int x = 0; x < 6; ++x)
            for (int y = 0; y < 6; ++y) REQUIRE(f[s3.mul(x, y)] == z2.mul(f[x], f[y]));
}

TEST_CASE("group order bound is enforced") {
    CHECK_THROWS_AS(subgroups(symmetric_group(4), 12), OrderTooLarge);
}
