#include <doctest.h>

#include <sgpd/instances.hpp>
#include <sgpd/iso.hpp>
#include <sgpd/semidirect.hpp>

#include "corpus.hpp"

using namespace sgpd;

namespace {

// Z/2 with an adjoined unit named "1"; group identity "e".
InverseSemigroupoid adjoined_unit_group() {
    PartialMagma z2{PartialTable(2), {"e", "g"}};
    z2.table.set(0, 0, 0);
    z2.table.set(0, 1, 1);
    z2.table.set(1, 0, 1);
    z2.table.set(1, 1, 0);
    return require_inverse(adjoin_unit(require_exel(z2), "1"));
}

// The global action of the adjoined-unit group on T = {0,t,u,v}: the unit
// acts on everything, the group part acts on the ideal {0,u,v} swapping u,v.
Preaction t_action() {
    Preaction p;
    p.kind = PreactionKind::Global;
    p.actor = adjoined_unit_group();
    p.space = graph_default(t_semigroup());
    p.anchor.assign(4, 0);
    p.theta = {FiberedPartialBijection::identity_on(0, {0, 2, 3}),
               FiberedPartialBijection{0, 0, {{0, 0}, {2, 3}, {3, 2}}},
               FiberedPartialBijection::identity_on(0, {0, 1, 2, 3})};
    return require_valid_preaction(p);
}

// The same action restricted to the ideal I = {0,u,v} of T.
Preaction t_action_on_ideal() {
    PartialMagma ideal{PartialTable(3), {"0", "u", "v"}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) ideal.table.set(i, j, 0);
    Preaction p;
    p.kind = PreactionKind::Global;
    p.actor = adjoined_unit_group();
    p.space = graph_default(require_exel(ideal));
    p.anchor.assign(3, 0);
    p.theta = {FiberedPartialBijection::identity_on(0, {0, 1, 2}),
               FiberedPartialBijection{0, 0, {{0, 0}, {1, 2}, {2, 1}}},
               FiberedPartialBijection::identity_on(0, {0, 1, 2})};
    return require_valid_preaction(p);
}

}  // namespace

TEST_CASE("translation multipliers satisfy the laws, also restricted to ideals") {
    for (const ExelSemigroupoid& s : {t_semigroup(), symmetric_inverse_monoid(2)}) {
        for (int x = 0; x < s.size(); ++x)
            CHECK(validate_multiplier(s, translation_multiplier(s, x)).ok);
    }
    // restricted to an ideal, the translations form a multiplier of the
    // ideal as a structure of its own
    auto t = t_semigroup();
    std::vector<int> ideal{0, 2, 3};
    auto i_struct = sub_semigroupoid(t, ideal);
    auto raw = translation_multiplier(t, 1, &ideal);
    Multiplier restricted{std::vector<int>(3, kUndef), std::vector<int>(3, kUndef)};
    std::vector<int> pos(t.size(), kUndef);
    for (size_t i = 0; i < ideal.size(); ++i) pos[ideal[i]] = static_cast<int>(i);
    for (size_t i = 0; i < ideal.size(); ++i) {
        if (raw.l_map[ideal[i]] != kUndef) restricted.l_map[i] = pos[raw.l_map[ideal[i]]];
        if (raw.r_map[ideal[i]] != kUndef) restricted.r_map[i] = pos[raw.r_map[ideal[i]]];
    }
    CHECK(validate_multiplier(i_struct, restricted).ok);
}

TEST_CASE("a constant left map on a group violates the multiplier laws") {
    auto z2 = cyclic_group(2);
    Multiplier bad{{0, 0}, {0, 0}};
    auto rep = validate_multiplier(z2, bad);
    CHECK_FALSE(rep.ok);
    CHECK_FALSE(rep.violations.empty());
}

TEST_CASE("nondegeneracy of translations") {
    CHECK(is_nondegenerate(cyclic_group(3)));
    CHECK(is_nondegenerate(symmetric_inverse_monoid(2)));
    auto t = t_semigroup();
    CHECK_FALSE(is_nondegenerate(t));
    auto w = nondegeneracy_witness(t);
    REQUIRE(w.has_value());
    CHECK(w->first == 0);  // the zero and u translate identically
    CHECK(w->second == 2);
}

TEST_CASE("associativity evidence") {
    CHECK(lr_associativity_evidence(symmetric_inverse_monoid(2)) == LrEvidence::Idempotent);
    CHECK(lr_associativity_evidence(cyclic_group(4)) == LrEvidence::Idempotent);
    CHECK(lr_associativity_evidence(t_semigroup()) == LrEvidence::DirectOnly);
    for (const auto& inst : sgpd_tests::theorem_corpus())
        CHECK(lr_associativity_evidence(inst.s.exel()) == LrEvidence::Idempotent);
}

TEST_CASE("the adjoined-unit action on T is not associative, with the exact witness") {
    auto p = t_action();
    auto r = semidirect_product(p);
    auto* na = std::get_if<NotAssociative>(&r);
    REQUIRE(na != nullptr);
    // pairs sorted by (actor, space): the witness is ((1,t),(g,u),(1,t))
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < p.actor.size(); ++a)
        for (int x : p.theta[a].domain()) pairs.push_back({a, x});
    std::sort(pairs.begin(), pairs.end());
    auto index_of = [&](int a, int x) {
        return static_cast<int>(std::lower_bound(pairs.begin(), pairs.end(),
                                                 std::make_pair(a, x)) -
                                pairs.begin());
    };
    const int one_t = index_of(2, 1), g_u = index_of(1, 2);
    CHECK(na->triple == std::array<int, 3>{one_t, g_u, one_t});
    CHECK(na->lhs == index_of(1, 2));  // left parse (g,u)
    CHECK(na->rhs == index_of(1, 0));  // right parse (g,0)
    CHECK(na->held == std::array<bool, 3>{true, true, true});
}

TEST_CASE("the restriction to the ideal is associative but not regular") {
    auto p = t_action_on_ideal();
    CHECK(validate_preaction(p).nondegenerate);
    auto sd = require_semidirect(p);
    CHECK(sd.pairs.size() == 9);
    auto rep = inverse_iff_check(p, sd);
    CHECK(rep.ok);
    CHECK_FALSE(rep.space_regular);
    CHECK_FALSE(rep.product_regular);
}

TEST_CASE("conjugation actions produce associative inverse products") {
    auto i2 = require_inverse(symmetric_inverse_monoid(2));
    auto munn = munn_conjugation_action(i2);
    auto sd = require_semidirect(munn.on_idempotents);
    CHECK(sd.pairs.size() == 17);
    auto rep = inverse_iff_check(munn.on_idempotents, sd);
    CHECK(rep.ok);
    CHECK(rep.space_inverse);
    CHECK(rep.product_inverse);
}

TEST_CASE("a groupoid acting on its vertex set gives a groupoid") {
    auto pg = require_inverse(pair_groupoid(2));
    auto sd = require_semidirect(canonical_vertex_action(pg));
    auto q = require_inverse(sd.graphed.base);
    CHECK(classify(q) == SubClass::Groupoid);
    auto rep = inverse_iff_check(canonical_vertex_action(pg), sd);
    CHECK(rep.ok);
}

TEST_CASE("the vertex action embeds every instance into its own semidirect product") {
    for (const auto& inst : sgpd_tests::theorem_corpus()) {
        INFO(inst.label);
        auto sd = require_semidirect(canonical_vertex_action(inst.s));
        REQUIRE(sd.pairs.size() == static_cast<size_t>(inst.s.size()));
        // eta(a) = (a, s(a)) is a bijective homomorphism both ways
        Homomorphism eta;
        eta.map.resize(inst.s.size());
        for (int a = 0; a < inst.s.size(); ++a) {
            eta.map[a] = sd.index_of(a, inst.s.src(a));
            REQUIRE(eta.map[a] != kUndef);
        }
        CHECK(is_homomorphism(inst.s.exel(), sd.graphed.base, eta));
        for (int a = 0; a < inst.s.size(); ++a)
            for (int b = 0; b < inst.s.size(); ++b)
                CHECK(inst.s.defined(a, b) ==
                      sd.graphed.base.defined(eta.map[a], eta.map[b]));
    }
}

TEST_CASE("actions on regular spaces always yield associative products") {
    for (const auto& inst : sgpd_tests::theorem_corpus()) {
        INFO(inst.label);
        auto munn = munn_conjugation_action(inst.s);
        CHECK(std::holds_alternative<SemidirectProduct>(semidirect_product(munn.on_fixing)));
        CHECK(std::holds_alternative<SemidirectProduct>(
            semidirect_product(munn.on_idempotents)));
    }
}

TEST_CASE("underlying groupoid of a group or groupoid is itself") {
    auto z4 = require_inverse(cyclic_group(4));
    CHECK(isomorphic(underlying_groupoid(z4).groupoid.exel(), z4.exel()));
    auto pg = require_inverse(pair_groupoid(3));
    auto u = underlying_groupoid(pg);
    CHECK(isomorphic(u.groupoid.exel(), pg.exel()));
    // idempotent on groupoids
    auto uu = underlying_groupoid(u.groupoid);
    CHECK(uu.groupoid.exel().m.table == u.groupoid.exel().m.table);
}

TEST_CASE("underlying groupoid of the symmetric inverse monoid") {
    auto i2 = require_inverse(symmetric_inverse_monoid(2));
    auto u = underlying_groupoid(i2);
    CHECK(u.units.size() == 4);
    int composable = 0;
    for (int a = 0; a < u.groupoid.size(); ++a)
        for (int b = 0; b < u.groupoid.size(); ++b) composable += u.groupoid.defined(a, b);
    CHECK(composable == 13);
    // order of the underlying groupoid is equality
    for (int a = 0; a < u.groupoid.size(); ++a)
        for (int b = 0; b < u.groupoid.size(); ++b)
            CHECK(u.groupoid.leq(a, b) == (a == b));
}

TEST_CASE("homomorphisms from groupoids land in the underlying groupoid") {
    auto z2 = require_inverse(cyclic_group(2));
    auto i2 = require_inverse(symmetric_inverse_monoid(2));
    // 1 -> identity map, g -> the swap
    int id_map = kUndef, swap = kUndef;
    for (int i = 0; i < i2.size(); ++i) {
        if (i2.exel().name(i) == "p0011") id_map = i;
        if (i2.exel().name(i) == "p0110") swap = i;
    }
    Homomorphism h{{id_map, swap}};
    REQUIRE(is_homomorphism(z2.exel(), i2.exel(), h));
    CHECK(lands_in_underlying(z2, i2, h));
}
