#include <doctest.h>

#include <sgpd/duality.hpp>
#include <sgpd/instances.hpp>
#include <sgpd/iso.hpp>

#include "corpus.hpp"

using namespace sgpd;

namespace {

// Oracle: ultrafilters as inclusion-maximal proper filters, by enumerating
// every subset. Only usable for small semilattices.
std::vector<FilterSet> oracle_ultrafilters(const SemilatticeWithZero& e) {
    REQUIRE(e.size() <= 16);
    std::vector<FilterSet> proper;
    for (int mask = 1; mask < (1 << e.size()); ++mask) {
        FilterSet f;
        for (int i = 0; i < e.size(); ++i)
            if (mask & (1 << i)) f.push_back(i);
        if (is_proper_filter(e, f)) proper.push_back(f);
    }
    std::vector<FilterSet> maximal;
    for (const auto& f : proper) {
        bool max = true;
        for (const auto& g : proper)
            if (f != g && std::includes(g.begin(), g.end(), f.begin(), f.end())) max = false;
        if (max) maximal.push_back(f);
    }
    std::sort(maximal.begin(), maximal.end());
    return maximal;
}

std::vector<std::vector<char>> trivial_order(int n, int zero) {
    std::vector<std::vector<char>> sub(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i) {
        sub[i][i] = 1;
        sub[zero][i] = 1;
    }
    return sub;
}

SigmaOrderedSemigroup group_with_zero_sigma() {
    PartialMagma gz{PartialTable(3), {"0", "1", "g"}};
    for (int i = 0; i < 3; ++i) {
        gz.table.set(0, i, 0);
        gz.table.set(i, 0, 0);
    }
    gz.table.set(1, 1, 1);
    gz.table.set(1, 2, 2);
    gz.table.set(2, 1, 2);
    gz.table.set(2, 2, 1);
    return make_sigma(require_inverse(require_exel(gz)), trivial_order(3, 0));
}

}  // namespace

TEST_CASE("ultrafilter criterion agrees with maximality by enumeration") {
    std::vector<SemilatticeWithZero> lattices;
    lattices.push_back(make_semilattice(chain_semilattice(2)));
    lattices.push_back(make_semilattice(chain_semilattice(4)));
    lattices.push_back(make_semilattice(vee_semilattice()));
    lattices.push_back(make_semilattice(boolean_semilattice(3)));
    for (const auto& inst : sgpd_tests::theorem_corpus()) {
        if (inst.s.g.n_vertices != 1) continue;
        auto kbres = kb(inst.s);
        if (auto* k = std::get_if<KBResult>(&kbres)) {
            auto esl = idempotent_semilattice(k->sigma);
            if (esl.e.size() <= 10) lattices.push_back(esl.e);
        }
    }
    for (const auto& e : lattices) {
        auto fast = ultrafilters(e);
        CHECK(fast.ultrafilters == oracle_ultrafilters(e));
        for (const auto& f : fast.ultrafilters) CHECK(is_ultrafilter(e, f));
    }
}

TEST_CASE("ultrafilters of a finite semilattice are the principal filters of minimal elements") {
    auto e = make_semilattice(boolean_semilattice(2));
    auto om = ultrafilters(e);
    CHECK(om.size() == 2);
    for (const auto& f : om.ultrafilters) {
        // the minimum of the filter is minimal nonzero
        int m = f.front();
        for (int x : f)
            if (e.leq(x, m)) m = x;
        CHECK(m != e.zero);
        for (int x = 0; x < e.size(); ++x)
            if (x != e.zero && e.leq(x, m)) CHECK(x == m);
        CHECK(f == principal_filter(e, m));
    }
    CHECK(ultrafilters(make_semilattice(chain_semilattice(2))).size() == 1);
}

TEST_CASE("basic open sets intersect multiplicatively") {
    auto e = make_semilattice(boolean_semilattice(3));
    auto om = ultrafilters(e);
    for (int x = 0; x < e.size(); ++x)
        for (int y = 0; y < e.size(); ++y) {
            auto bx = om.basic(x), by = om.basic(y);
            std::vector<int> inter;
            std::set_intersection(bx.begin(), bx.end(), by.begin(), by.end(),
                                  std::back_inserter(inter));
            CHECK(inter == om.basic(e.at(x, y)));
        }
}

TEST_CASE("ultrafilters are prime for the extrinsic order") {
    auto kbr = require_kb(require_inverse(pair_groupoid(2)));
    auto esl = idempotent_semilattice(kbr.sigma);
    auto om = ultrafilters(esl.e);
    for (size_t i = 0; i < esl.elems.size(); ++i)
        for (size_t j = 0; j < esl.elems.size(); ++j) {
            const int join = kbr.sigma.join(esl.elems[i], esl.elems[j]);
            if (join == kUndef) continue;
            const int jpos = esl.pos[join];
            REQUIRE(jpos != kUndef);
            auto bi = om.basic(static_cast<int>(i)), bj = om.basic(static_cast<int>(j));
            std::vector<int> uni;
            std::set_union(bi.begin(), bi.end(), bj.begin(), bj.end(), std::back_inserter(uni));
            CHECK(uni == om.basic(jpos));
        }
}

TEST_CASE("the idempotent bisections of the two-point monoid have one ultrafilter") {
    auto i2 = require_inverse(symmetric_inverse_monoid(2));
    auto kbr = require_kb(i2);
    auto esl = idempotent_semilattice(kbr.sigma);
    CHECK(esl.e.size() == 5);
    auto om = ultrafilters(esl.e);
    REQUIRE(om.size() == 1);
    // generated by the singleton holding the zero map, which is the unique
    // minimal nonzero idempotent bisection
    const auto& f = om.ultrafilters.front();
    CHECK(f.size() == 4);  // every nonzero idempotent bisection
    int least = f.front();
    for (int x : f)
        if (esl.e.leq(x, least)) least = x;
    CHECK(kbr.bisections[esl.elems[least]] == std::vector<int>{0});
}

TEST_CASE("bisection counts") {
    CHECK(require_kb(require_inverse(symmetric_inverse_monoid(2))).bisections.size() == 8);
    CHECK(require_kb(require_inverse(pair_groupoid(2))).bisections.size() == 7);
    CHECK(require_kb(require_inverse(pair_groupoid(3))).bisections.size() == 34);
    auto prod = require_inverse(direct_product(pair_groupoid(2), chain_semilattice(2)));
    CHECK(require_kb(prod).bisections.size() == 17);
    auto capped = kb(require_inverse(pair_groupoid(3)), 10);
    CHECK(std::holds_alternative<BisectionCountCap>(capped));
}

TEST_CASE("the bisections of the pair groupoid form the symmetric inverse monoid") {
    auto kbr = require_kb(require_inverse(pair_groupoid(2)));
    CHECK(isomorphic(kbr.sigma.s.exel(), symmetric_inverse_monoid(2)));
}

TEST_CASE("sigma axioms hold for bisection semigroups") {
    for (const auto& inst : sgpd_tests::theorem_corpus()) {
        if (inst.s.size() > 10) continue;
        INFO(inst.label);
        CHECK(validate_sigma(require_kb(inst.s).sigma).ok);
    }
    CHECK(validate_sigma(require_kb(require_inverse(pair_groupoid(3))).sigma).ok);
}

TEST_CASE("inclusion equals the canonical order exactly on groupoids") {
    for (const auto& inst : sgpd_tests::theorem_corpus()) {
        if (inst.s.size() > 10) continue;
        auto kbr = require_kb(inst.s);
        const auto cls = classify(inst.s);
        const bool is_groupoid = cls == SubClass::Groupoid || cls == SubClass::Group;
        bool orders_equal = true;
        for (int a = 0; a < kbr.sigma.size(); ++a)
            for (int b = 0; b < kbr.sigma.size(); ++b)
                if (kbr.sigma.below(a, b) != kbr.sigma.s.leq(a, b)) orders_equal = false;
        INFO(inst.label);
        CHECK(orders_equal == is_groupoid);
    }
}

TEST_CASE("weakly Boolean instances carry trivial interpolators") {
    // the Boolean semilattice with its canonical order as the extrinsic one
    auto bs = require_inverse(boolean_semilattice(2));
    std::vector<std::vector<char>> sub(4, std::vector<char>(4, 0));
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) sub[a][b] = bs.leq(a, b);
    auto sg = make_sigma(bs, sub);
    CHECK(validate_sigma(sg).ok);
    for (int t = 0; t < 4; ++t)
        for (int a = 0; a < 4; ++a) {
            if (!sg.s.leq(t, a)) continue;
            auto p = interpolator(sg, t, a);
            CHECK(std::get<int>(p) == t);
        }
}

TEST_CASE("interpolators in bisection semigroups restrict the larger element") {
    for (const ExelSemigroupoid& base :
         {pair_groupoid(2), symmetric_inverse_monoid(2), chain_semilattice(3)}) {
        auto s = require_inverse(base);
        auto kbr = require_kb(s);
        const auto& sg = kbr.sigma;
        for (int t = 0; t < sg.size(); ++t)
            for (int a = 0; a < sg.size(); ++a) {
                if (!sg.s.leq(t, a)) continue;
                auto p = interpolator(sg, t, a);
                REQUIRE(std::holds_alternative<int>(p));
                // the interpolator keeps the arrows of the larger bisection
                // whose sources appear in the smaller one
                std::vector<char> src_used(s.g.n_vertices, 0);
                for (int u : kbr.bisections[t]) src_used[s.src(u)] = 1;
                std::vector<int> expect;
                for (int u : kbr.bisections[a])
                    if (src_used[s.src(u)]) expect.push_back(u);
                CHECK(kbr.bisections[std::get<int>(p)] == expect);
            }
    }
}

TEST_CASE("relative complements on idempotent bisections") {
    auto kbr = require_kb(require_inverse(pair_groupoid(2)));
    const auto& sg = kbr.sigma;
    for (int e = 0; e < sg.size(); ++e)
        for (int f = 0; f < sg.size(); ++f) {
            if (!sg.s.is_idempotent_elt(e) || !sg.s.is_idempotent_elt(f) || !sg.below(e, f))
                continue;
            auto c = relative_complement(sg, e, f);
            REQUIRE(c.has_value());
            // set difference of the underlying bisections
            std::vector<int> diff;
            std::set_difference(kbr.bisections[f].begin(), kbr.bisections[f].end(),
                                kbr.bisections[e].begin(), kbr.bisections[e].end(),
                                std::back_inserter(diff));
            CHECK(kbr.bisections[*c] == diff);
        }
}

TEST_CASE("sigma-morphism counterexamples fail exactly one axiom each") {
    auto l3 = make_sigma(require_inverse(chain_semilattice(3)), trivial_order(3, 0));
    auto l2 = make_sigma(require_inverse(chain_semilattice(2)), trivial_order(2, 0));
    REQUIRE(validate_sigma(l3).ok);
    REQUIRE(validate_sigma(l2).ok);

    auto theta = sigma_morphism_report(l3, l2, {0, 1, 1});
    CHECK(theta.semigroup_hom);
    CHECK(theta.zero);
    CHECK(theta.monotone);
    CHECK(theta.cup_morphism);
    CHECK_FALSE(theta.weak_meet);
    CHECK(theta.proper);
    CHECK(theta.interpolators);

    auto eta = sigma_morphism_report(l3, l2, {0, 0, 1});
    CHECK(eta.semigroup_hom);
    CHECK(eta.zero);
    CHECK(eta.monotone);
    CHECK(eta.cup_morphism);
    CHECK(eta.weak_meet);
    CHECK(eta.proper);
    CHECK_FALSE(eta.interpolators);
}

TEST_CASE("preimages along coverings are sigma-morphisms") {
    auto pg = require_inverse(pair_groupoid(2));
    auto z2 = require_inverse(cyclic_group(2));
    // (i,j) -> i + j mod 2 is a covering homomorphism
    Homomorphism h{{0, 1, 1, 0}};
    REQUIRE(is_homomorphism(pg.exel(), z2.exel(), h));
    auto kbs = require_kb(pg);
    auto kbt = require_kb(z2);
    auto r = k_on_morphism(pg, z2, h, kbs, kbt);
    auto* res = std::get_if<KOnMorphismResult>(&r);
    REQUIRE(res != nullptr);
    CHECK(res->verification.ok());

    // identity is a covering and induces the identity morphism
    Homomorphism id{all_elements(pg.size())};
    auto rid = k_on_morphism(pg, pg, id, kbs, kbs);
    auto* resid = std::get_if<KOnMorphismResult>(&rid);
    REQUIRE(resid != nullptr);
    CHECK(resid->map == all_elements(static_cast<int>(kbs.bisections.size())));
    CHECK(resid->verification.ok());

    // collapsing the pair groupoid onto a point is not star-injective
    auto triv = require_inverse(cyclic_group(1));
    Homomorphism collapse{{0, 0, 0, 0}};
    auto bad = k_on_morphism(pg, triv, collapse, kbs, require_kb(triv));
    CHECK(std::holds_alternative<NotCovering>(bad));
}

TEST_CASE("reconstruction from bisections") {
    auto i2 = require_inverse(symmetric_inverse_monoid(2));
    auto p1 = p_functor(require_kb(i2).sigma);
    CHECK(p1.result.size() == 7);
    CHECK(p1.omega.size() == 1);
    CHECK(isomorphic(p1.result.exel(), i2.exel()));

    auto pg = require_inverse(pair_groupoid(2));
    auto p2 = p_functor(require_kb(pg).sigma);
    CHECK(p2.result.size() == 4);
    CHECK(p2.omega.size() == 2);
    CHECK(isomorphic(p2.result.exel(), pg.exel()));

    // over a trivial extrinsic order the germ classes are the nonzero elements
    auto p3 = p_functor(group_with_zero_sigma());
    CHECK(p3.result.size() == 2);
    CHECK(isomorphic(p3.result.exel(), cyclic_group(2)));
}

TEST_CASE("the reconstruction germ relation matches its direct characterization") {
    for (const ExelSemigroupoid& base : {pair_groupoid(2), symmetric_inverse_monoid(2)}) {
        auto sg = require_kb(require_inverse(base)).sigma;
        auto pf = p_functor(sg);
        // (s,F) ~ (t,G) iff F = G and some u below both has u*u in F
        const int np = static_cast<int>(pf.sp.pairs.size());
        for (int i = 0; i < np; ++i)
            for (int j = 0; j < np; ++j) {
                const auto [si, fi] = pf.sp.pairs[i];
                const auto [sj, fj] = pf.sp.pairs[j];
                bool direct = false;
                if (fi == fj)
                    for (int u = 0; u < sg.size() && !direct; ++u) {
                        if (!sg.below(u, si) || !sg.below(u, sj)) continue;
                        const int uu = sg.s.at(sg.s.star(u), u);
                        const auto& fl = pf.omega.ultrafilters[fi];
                        if (std::binary_search(fl.begin(), fl.end(), pf.esl.pos[uu]))
                            direct = true;
                    }
                CHECK((pf.pair_class[i] == pf.pair_class[j]) == direct);
            }
        // the transported order is a compatible preorder on the product
        auto sp_inv = require_inverse(pf.sp.graphed.base);
        CompatiblePreorder pre;
        pre.rel.assign(np, std::vector<char>(np, 0));
        for (int i = 0; i < np; ++i)
            for (int j = 0; j < np; ++j)
                pre.rel[i][j] = pf.sp.pairs[i].second == pf.sp.pairs[j].second &&
                                sg.below(pf.sp.pairs[i].first, pf.sp.pairs[j].first);
        CHECK(validate_preorder(sp_inv, pre).ok);
    }
}

TEST_CASE("kappa also holds away from bisection semigroups") {
    // a weakly Boolean instance and a group with zero
    auto bs = require_inverse(boolean_semilattice(2));
    std::vector<std::vector<char>> sub(4, std::vector<char>(4, 0));
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) sub[a][b] = bs.leq(a, b);
    auto boolean_sigma = make_sigma(bs, sub);
    REQUIRE(validate_sigma(boolean_sigma).ok);
    auto k1 = kappa(boolean_sigma);
    CHECK(k1.iso);
    CHECK(k1.order_iso);

    auto gz = group_with_zero_sigma();
    REQUIRE(validate_sigma(gz).ok);
    auto k2 = kappa(gz);
    CHECK(k2.iso);
    CHECK(k2.order_iso);
}

TEST_CASE("materialized partial-bijection structures pass the product check") {
    CHECK(ipi_product_check(Bundle{2, 1, {0, 0}}).ok);
    CHECK(ipi_product_check(Bundle{3, 2, {0, 0, 1}}).ok);
    CHECK(ipi_product_check(Bundle{3, 2, {0, 0, 1}}).elements == 15);
}

TEST_CASE("reconstruction of a morphism is a covering with the basic preimage law") {
    auto pg = require_inverse(pair_groupoid(2));
    auto z2 = require_inverse(cyclic_group(2));
    Homomorphism h{{0, 1, 1, 0}};
    auto kbs = require_kb(pg);
    auto kbt = require_kb(z2);
    auto km = std::get<KOnMorphismResult>(k_on_morphism(pg, z2, h, kbs, kbt));
    // the sigma-morphism runs KB(Z2) -> KB(pair2)
    auto ps = p_functor(kbt.sigma);
    auto pt = p_functor(kbs.sigma);
    auto pm = p_on_morphism(kbt.sigma, km.map, ps, pt);
    CHECK(pm.covering.covering());
    CHECK(pm.basic_preimage_law);
    CHECK(is_homomorphism(pt.result.exel(), ps.result.exel(), pm.map));

    // identity morphism reconstructs to the identity
    std::vector<int> idm = all_elements(static_cast<int>(kbs.bisections.size()));
    auto pid = p_on_morphism(kbs.sigma, idm, pt, pt);
    CHECK(pid.map.map == all_elements(pt.result.size()));
}

TEST_CASE("naturality of both isomorphisms on a covering instance") {
    // phi: pair groupoid -> Z2, (i,j) -> i+j, a covering homomorphism
    auto pg = require_inverse(pair_groupoid(2));
    auto z2 = require_inverse(cyclic_group(2));
    Homomorphism phi{{0, 1, 1, 0}};

    auto zs = zeta(pg);
    auto zt = zeta(z2);
    REQUIRE(zs.iso);
    REQUIRE(zt.iso);
    auto km = std::get<KOnMorphismResult>(k_on_morphism(pg, z2, phi, zs.kbr, zt.kbr));

    // the square for zeta: reconstructing the preimage morphism and chasing
    // each arrow both ways around
    auto pkm = p_on_morphism(zt.kbr.sigma, km.map, zt.pk, zs.pk);
    REQUIRE(pkm.covering.covering());
    for (int a = 0; a < pg.size(); ++a)
        CHECK(pkm.map.map[zs.map.map[a]] == zt.map.map[phi.map[a]]);

    // the square for kappa, one level up: theta = the preimage morphism
    auto ks = kappa(zt.kbr.sigma);  // source of theta
    auto kt = kappa(zs.kbr.sigma);  // target of theta
    REQUIRE(ks.iso);
    REQUIRE(kt.iso);
    auto kpm = std::get<KOnMorphismResult>(
        k_on_morphism(kt.p.result, ks.p.result, pkm.map, kt.kb_of_p, ks.kb_of_p));
    for (size_t s = 0; s < ks.map.map.size(); ++s)
        CHECK(kpm.map[ks.map.map[s]] == kt.map.map[km.map[s]]);
}

TEST_CASE("both duality isomorphisms hold on the standard instances") {
    auto i2 = require_inverse(symmetric_inverse_monoid(2));
    auto z = zeta(i2);
    CHECK(z.iso);
    auto kpp = kappa(z.kbr.sigma);
    CHECK(kpp.iso);
    CHECK(kpp.order_iso);

    auto z2 = require_inverse(cyclic_group(2));
    CHECK(zeta(z2).iso);

    // the composite stabilizes: KB(P(KB(S))) has as many elements as KB(S)
    auto pg = require_inverse(pair_groupoid(2));
    auto zr = zeta(pg);
    REQUIRE(zr.iso);
    auto again = require_kb(zr.pk.result);
    CHECK(again.bisections.size() == zr.kbr.bisections.size());
    CHECK(isomorphic(again.sigma.s.exel(), zr.kbr.sigma.s.exel()));
}
