#ifndef SGPD_QUOTIENTS_HPP
#define SGPD_QUOTIENTS_HPP

// Graphed congruences and quotients, compatible preorders and germ
// relations, the initial groupoid, idempotent-pure congruences, quotients of
// preactions, and the quotient/semidirect commutation isomorphism.

#include "semidirect.hpp"

namespace sgpd {

// ---------------------------------------------------------------------------
// Graphed congruences
// ---------------------------------------------------------------------------

/// Partition of the arrow carrier; source, range and products descend to
/// classes. Class ids are normalized by first occurrence.
struct GraphedCongruence {
    std::vector<int> cls;
    int n_classes = 0;

    bool related(int a, int b) const { return cls[a] == cls[b]; }
    bool operator==(const GraphedCongruence&) const = default;
};

struct NotGraphable {
    int a, b;  // pair with mismatched endpoints
};

inline GraphedCongruence identity_congruence(int n) {
    GraphedCongruence c;
    c.cls = all_elements(n);
    c.n_classes = n;
    return c;
}

/// Least graphed congruence containing the given pairs: union-find closure
/// under transitivity and products.
inline std::variant<GraphedCongruence, NotGraphable> congruence_closure(
    const GraphedSemigroupoid& g, const std::vector<std::pair<int, int>>& pairs) {
    for (auto [a, b] : pairs)
        if (g.src[a] != g.src[b] || g.rng[a] != g.rng[b]) return NotGraphable{a, b};
    const int n = g.size();
    detail::DisjointSets uf(n);
    for (auto [a, b] : pairs) uf.unite(a, b);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int a = 0; a < n; ++a)
            for (int a2 = 0; a2 < n; ++a2) {
                if (uf.find(a) != uf.find(a2)) continue;
                for (int b = 0; b < n; ++b) {
                    if (!g.base.defined(a, b)) continue;
                    for (int b2 = 0; b2 < n; ++b2) {
                        if (uf.find(b) != uf.find(b2) || !g.base.defined(a2, b2)) continue;
                        if (uf.find(g.base.at(a, b)) != uf.find(g.base.at(a2, b2))) {
                            uf.unite(g.base.at(a, b), g.base.at(a2, b2));
                            changed = true;
                        }
                    }
                }
            }
    }
    GraphedCongruence c;
    c.cls = uf.classes();
    c.n_classes = 1 + *std::max_element(c.cls.begin(), c.cls.end());
    return c;
}

inline GraphedCongruence require_congruence(const GraphedSemigroupoid& g,
                                            const std::vector<std::pair<int, int>>& pairs) {
    auto r = congruence_closure(g, pairs);
    if (auto* c = std::get_if<GraphedCongruence>(&r)) return *c;
    throw std::invalid_argument("congruence_closure: pair has mismatched endpoints");
}

/// Checks that a partition actually is a graphed congruence.
inline bool is_graphed_congruence(const GraphedSemigroupoid& g, const GraphedCongruence& c) {
    const int n = g.size();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (!c.related(a, b)) continue;
            if (g.src[a] != g.src[b] || g.rng[a] != g.rng[b]) return false;
        }
    for (int a = 0; a < n; ++a)
        for (int a2 = 0; a2 < n; ++a2)
            for (int b = 0; b < n; ++b)
                for (int b2 = 0; b2 < n; ++b2) {
                    if (!c.related(a, a2) || !c.related(b, b2)) continue;
                    if (!g.base.defined(a, b)) continue;
                    if (!g.base.defined(a2, b2) ||
                        !c.related(g.base.at(a, b), g.base.at(a2, b2)))
                        return false;
                }
    return true;
}

// ---------------------------------------------------------------------------
// Quotients
// ---------------------------------------------------------------------------

struct QuotientResult {
    InverseSemigroupoid quotient;  // vertex set reused from the original
    Homomorphism projection;       // element -> class index
    std::vector<int> class_rep;    // least representative per class
};

/// [a][b] = [ab] on classes; the vertex set is kept. The result is again an
/// inverse semigroupoid.
inline QuotientResult quotient(const InverseSemigroupoid& s, const GraphedCongruence& c) {
    if (!is_graphed_congruence(s.g, c))
        throw std::invalid_argument("quotient: relation is not a graphed congruence");
    const int n = s.size();
    QuotientResult out;
    out.class_rep.assign(c.n_classes, kUndef);
    for (int a = 0; a < n; ++a)
        if (out.class_rep[c.cls[a]] == kUndef) out.class_rep[c.cls[a]] = a;

    PartialMagma m{PartialTable(c.n_classes), {}};
    for (int k = 0; k < c.n_classes; ++k) m.names.push_back("[" + s.name(out.class_rep[k]) + "]");
    std::vector<int> qsrc(c.n_classes), qrng(c.n_classes);
    for (int k = 0; k < c.n_classes; ++k) {
        qsrc[k] = s.src(out.class_rep[k]);
        qrng[k] = s.rng(out.class_rep[k]);
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (s.defined(a, b)) m.table.set(c.cls[a], c.cls[b], c.cls[s.at(a, b)]);

    // restrict the vertex set to covered vertices, keeping original names
    std::vector<int> vmap(s.g.n_vertices, kUndef);
    std::vector<std::string> vnames;
    int nv = 0;
    for (int k = 0; k < c.n_classes; ++k)
        for (int v : {qsrc[k], qrng[k]})
            if (vmap[v] == kUndef) {
                vmap[v] = nv++;
                vnames.push_back(s.g.vertex_name(v));
            }
    for (int k = 0; k < c.n_classes; ++k) {
        qsrc[k] = vmap[qsrc[k]];
        qrng[k] = vmap[qrng[k]];
    }
    out.quotient = make_inverse_with_graph(require_exel(m), qsrc, qrng, nv, vnames);
    out.projection.map = c.cls;
    return out;
}

/// Universal property, checked against a supplied homomorphism: phi factors
/// uniquely through the projection iff it is constant on classes.
inline std::optional<Homomorphism> factor_through(const QuotientResult& q,
                                                  const InverseSemigroupoid& target,
                                                  const Homomorphism& phi) {
    Homomorphism psi;
    psi.map.assign(q.class_rep.size(), kUndef);
    for (size_t a = 0; a < phi.map.size(); ++a) {
        int& slot = psi.map[q.projection.map[a]];
        if (slot == kUndef) slot = phi.map[a];
        else if (slot != phi.map[a]) return std::nullopt;
    }
    if (!is_homomorphism(q.quotient.exel(), target.exel(), psi)) return std::nullopt;
    return psi;
}

// ---------------------------------------------------------------------------
// Idempotent purity
// ---------------------------------------------------------------------------

struct IdempotentPureReport {
    bool pure = false;
    bool saturation_characterization = false;  // saturation of E is E
    bool preimage_characterization = false;    // classes of idempotents contain only idempotents
    bool starred_characterization = false;     // related pairs have idempotent a*b and ab*
    bool agree = false;
};

inline IdempotentPureReport is_idempotent_pure(const InverseSemigroupoid& s,
                                               const GraphedCongruence& c) {
    IdempotentPureReport rep;
    const int n = s.size();
    rep.saturation_characterization = true;
    rep.starred_characterization = true;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (!c.related(a, b)) continue;
            if (s.is_idempotent_elt(b) && !s.is_idempotent_elt(a))
                rep.saturation_characterization = false;
            const int ab = s.at(a, s.star(b));
            const int ba = s.at(s.star(a), b);
            if (!s.is_idempotent_elt(ab) || !s.is_idempotent_elt(ba))
                rep.starred_characterization = false;
        }
    // preimage of E(S/R) = E(S)
    auto q = quotient(s, c);
    rep.preimage_characterization = true;
    for (int a = 0; a < n; ++a) {
        const bool class_idem = q.quotient.is_idempotent_elt(c.cls[a]);
        if (class_idem != s.is_idempotent_elt(a)) rep.preimage_characterization = false;
    }
    rep.agree = rep.saturation_characterization == rep.preimage_characterization &&
                rep.preimage_characterization == rep.starred_characterization;
    rep.pure = rep.saturation_characterization && rep.agree;
    return rep;
}

// ---------------------------------------------------------------------------
// Compatible preorders and germ relations
// ---------------------------------------------------------------------------

struct CompatiblePreorder {
    std::vector<std::vector<char>> rel;  // rel[a][b] iff a is below b

    static CompatiblePreorder from_pairs(int n, const std::vector<std::pair<int, int>>& pairs,
                                         bool reflexive_close = true) {
        CompatiblePreorder p;
        p.rel.assign(n, std::vector<char>(n, 0));
        if (reflexive_close)
            for (int i = 0; i < n; ++i) p.rel[i][i] = 1;
        for (auto [a, b] : pairs) p.rel[a][b] = 1;
        return p;
    }
    bool below(int a, int b) const { return rel[a][b]; }
    int size() const { return static_cast<int>(rel.size()); }
};

inline CompatiblePreorder canonical_order_relation(const InverseSemigroupoid& s) {
    CompatiblePreorder p;
    p.rel.assign(s.size(), std::vector<char>(s.size(), 0));
    for (int a = 0; a < s.size(); ++a)
        for (int b = 0; b < s.size(); ++b) p.rel[a][b] = s.leq(a, b);
    return p;
}

struct PreorderReport {
    bool ok = true;
    std::vector<PreactionViolation> violations;
};

/// Reflexive, transitive, below the canonical order, multiplicative on both
/// sides, and conditionally downwards directed.
inline PreorderReport validate_preorder(const InverseSemigroupoid& s,
                                        const CompatiblePreorder& p, int max_violations = 32) {
    PreorderReport rep;
    auto fail = [&](const std::string& ax, std::vector<int> w) {
        rep.ok = false;
        if (static_cast<int>(rep.violations.size()) < max_violations)
            rep.violations.push_back({ax, std::move(w)});
    };
    const int n = s.size();
    for (int a = 0; a < n; ++a)
        if (!p.below(a, a)) fail("reflexive", {a});
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (!p.below(a, b)) continue;
            if (!s.leq(a, b)) fail("below_canonical", {a, b});
            for (int c = 0; c < n; ++c)
                if (p.below(b, c) && !p.below(a, c)) fail("transitive", {a, b, c});
            for (int x = 0; x < n; ++x) {
                if (s.defined(a, x) && !(s.defined(b, x) && p.below(s.at(a, x), s.at(b, x))))
                    fail("right_multiplicative", {a, b, x});
                if (s.defined(x, a) && !(s.defined(x, b) && p.below(s.at(x, a), s.at(x, b))))
                    fail("left_multiplicative", {a, b, x});
            }
        }
    // conditional downward directedness (a consequence, verified)
    for (int a = 0; a < n; ++a)
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                if (!p.below(x, a) || !p.below(y, a)) continue;
                bool found = false;
                for (int z = 0; z < n && !found; ++z)
                    if (p.below(z, x) && p.below(z, y)) found = true;
                if (!found) fail("downwards_directed", {a, x, y});
            }
    return rep;
}

/// Germ relation: a ~ b iff some z lies below both. Built by union-find over
/// the comparability pairs; a graphed congruence for compatible preorders.
inline GraphedCongruence germ_congruence(const InverseSemigroupoid& s,
                                         const CompatiblePreorder& p) {
    detail::DisjointSets uf(s.size());
    for (int a = 0; a < s.size(); ++a)
        for (int b = 0; b < s.size(); ++b)
            if (p.below(a, b)) uf.unite(a, b);
    GraphedCongruence c;
    c.cls = uf.classes();
    c.n_classes = 1 + *std::max_element(c.cls.begin(), c.cls.end());
    if (!is_graphed_congruence(s.g, c))
        throw std::logic_error("germ_congruence: relation failed the congruence laws");
    return c;
}

// ---------------------------------------------------------------------------
// Initial groupoid
// ---------------------------------------------------------------------------

struct InitialGroupoidResult {
    QuotientResult q;  // quotient by the germ relation of the canonical order
};

/// S / ~_<= ; canonical order of the result is equality, so it is the
/// universal groupoid quotient.
inline InitialGroupoidResult initial_groupoid(const InverseSemigroupoid& s) {
    InitialGroupoidResult out{quotient(s, germ_congruence(s, canonical_order_relation(s)))};
    const auto& g = out.q.quotient;
    for (int a = 0; a < g.size(); ++a)
        for (int b = 0; b < g.size(); ++b)
            if (a != b && g.leq(a, b))
                throw std::logic_error("initial_groupoid: quotient order is not equality");
    return out;
}

// ---------------------------------------------------------------------------
// Quotients of preactions
// ---------------------------------------------------------------------------

struct HypothesisViolation {
    enum class Which { H1IdempotentPure, H2RelationMorphism } which;
    std::vector<int> witness;
};

struct QuotientActionResult {
    Preaction action;     // of actor/R1 on space/R2, declared as a wedge-preaction
    QuotientResult actor_q;
    // space side kept as raw data: class per space point and the quotient table
    GraphedCongruence space_congruence;
    GraphedSemigroupoid space_quotient;
    std::vector<int> space_class_rep;
};

namespace detail {

inline GraphedSemigroupoid quotient_graphed(const GraphedSemigroupoid& g,
                                            const GraphedCongruence& c,
                                            std::vector<int>& class_rep) {
    if (!is_graphed_congruence(g, c))
        throw std::invalid_argument("quotient_graphed: not a graphed congruence");
    class_rep.assign(c.n_classes, kUndef);
    for (int a = 0; a < g.size(); ++a)
        if (class_rep[c.cls[a]] == kUndef) class_rep[c.cls[a]] = a;
    PartialMagma m{PartialTable(c.n_classes), {}};
    for (int k = 0; k < c.n_classes; ++k) m.names.push_back("[" + g.base.name(class_rep[k]) + "]");
    for (int a = 0; a < g.size(); ++a)
        for (int b = 0; b < g.size(); ++b)
            if (g.base.defined(a, b)) m.table.set(c.cls[a], c.cls[b], c.cls[g.base.at(a, b)]);
    GraphedSemigroupoid out;
    out.base = require_exel(m);
    std::vector<int> vmap(g.n_vertices, kUndef);
    int nv = 0;
    out.src.resize(c.n_classes);
    out.rng.resize(c.n_classes);
    std::vector<std::string> vnames;
    for (int k = 0; k < c.n_classes; ++k)
        for (int v : {g.src[class_rep[k]], g.rng[class_rep[k]]})
            if (vmap[v] == kUndef) {
                vmap[v] = nv++;
                vnames.push_back(g.vertex_name(v));
            }
    for (int k = 0; k < c.n_classes; ++k) {
        out.src[k] = vmap[g.src[class_rep[k]]];
        out.rng[k] = vmap[g.rng[class_rep[k]]];
    }
    out.n_vertices = nv;
    out.vertex_names = vnames;
    out.vertex_tags.assign(nv, VertexTag{VertexKind::Named, kUndef});
    if (!validate_graphed(out).ok) throw std::logic_error("quotient_graphed: laws failed");
    return out;
}

}  // namespace detail

/// Theta_[a]([x]) = [theta_a(x)] under H1 (R1 idempotent pure) and H2 (theta
/// an R2-morphism). The result is validated as a wedge-preaction and is not
/// upgraded to a partial action even when the input was one.
inline std::variant<QuotientActionResult, HypothesisViolation> quotient_action(
    const Preaction& p, const GraphedCongruence& r1, const GraphedCongruence& r2) {
    const auto& s = p.actor;
    if (!is_idempotent_pure(s, r1).pure)
        return HypothesisViolation{HypothesisViolation::Which::H1IdempotentPure, {}};
    for (int a = 0; a < s.size(); ++a)
        for (auto [x, y1] : p.theta[a].graph)
            for (auto [x2, y2] : p.theta[a].graph)
                if (r2.related(x, x2) && !r2.related(y1, y2))
                    return HypothesisViolation{HypothesisViolation::Which::H2RelationMorphism,
                                               {a, x, x2}};

    QuotientActionResult out;
    out.actor_q = quotient(s, r1);
    out.space_congruence = r2;
    out.space_quotient = detail::quotient_graphed(p.space, r2, out.space_class_rep);

    Preaction q;
    q.kind = PreactionKind::Wedge;
    q.actor = out.actor_q.quotient;
    q.space = out.space_quotient;
    q.anchor.assign(r2.n_classes, kUndef);
    for (int x = 0; x < p.space.size(); ++x) q.anchor[r2.cls[x]] = p.anchor[x];
    // vertex ids of the quotient actor may be renumbered; map via projection
    // of an anchor representative. The actor quotient keeps vertex names, so
    // match source vertices through class representatives.
    {
        // actor vertex v (original) -> vertex id in quotient actor
        std::vector<int> vmap(s.g.n_vertices, kUndef);
        for (int k = 0; k < out.actor_q.quotient.size(); ++k) {
            const int rep = out.actor_q.class_rep[k];
            vmap[s.src(rep)] = out.actor_q.quotient.src(k);
            vmap[s.rng(rep)] = out.actor_q.quotient.rng(k);
        }
        for (int& v : q.anchor) {
            if (v == kUndef) throw std::logic_error("quotient_action: uncovered space class");
            v = vmap[v];
        }
    }
    q.theta.resize(out.actor_q.quotient.size());
    for (int k = 0; k < out.actor_q.quotient.size(); ++k) {
        std::map<int, int> graph;
        for (int a = 0; a < s.size(); ++a) {
            if (r1.cls[a] != k) continue;
            for (auto [x, y] : p.theta[a].graph) {
                auto it = graph.find(r2.cls[x]);
                if (it != graph.end() && it->second != r2.cls[y])
                    throw std::logic_error("quotient_action: Theta not well-defined");
                graph[r2.cls[x]] = r2.cls[y];
            }
        }
        FiberedPartialBijection f{out.actor_q.quotient.rng(k), out.actor_q.quotient.src(k), {}};
        for (auto [x, y] : graph) f.graph.push_back({x, y});
        q.theta[k] = f;
    }
    out.action = require_valid_preaction(q);
    return out;
}

// ---------------------------------------------------------------------------
// Quotients commute with semidirect products
// ---------------------------------------------------------------------------

struct PhiResult {
    bool iso = false;
    SemidirectProduct product;            // of the original action
    GraphedCongruence product_congruence; // R1 x R2 on it
    GraphedSemigroupoid product_quotient; // (S x| T) / (R1 x R2)
    SemidirectProduct quotient_product;   // (S/R1) x| (T/R2)
    Homomorphism phi;                     // class of (a,x) -> pair ([a],[x])
};

/// Phi([a,x]) = ([a],[x]) from (S x| T)/(R1 x R2) to (S/R1) x| (T/R2);
/// verified to be a bijective homomorphism.
inline PhiResult phi_isomorphism(const Preaction& p, const GraphedCongruence& r1,
                                 const GraphedCongruence& r2) {
    auto qa = quotient_action(p, r1, r2);
    if (std::holds_alternative<HypothesisViolation>(qa))
        throw std::invalid_argument("phi_isomorphism: hypotheses H1/H2 violated");
    auto& q = std::get<QuotientActionResult>(qa);

    PhiResult out;
    out.product = require_semidirect(p);
    out.quotient_product = require_semidirect(q.action);

    // R1 x R2 on the product pairs
    const int np = static_cast<int>(out.product.pairs.size());
    GraphedCongruence pc;
    pc.cls.assign(np, kUndef);
    std::vector<std::pair<int, int>> key_of;  // class -> ([a],[x])
    for (int i = 0; i < np; ++i) {
        const auto [a, x] = out.product.pairs[i];
        const std::pair<int, int> key{r1.cls[a], r2.cls[x]};
        int found = kUndef;
        for (size_t k = 0; k < key_of.size(); ++k)
            if (key_of[k] == key) found = static_cast<int>(k);
        if (found == kUndef) {
            found = static_cast<int>(key_of.size());
            key_of.push_back(key);
        }
        pc.cls[i] = found;
    }
    pc.n_classes = static_cast<int>(key_of.size());
    out.product_congruence = pc;

    std::vector<int> rep;
    out.product_quotient = detail::quotient_graphed(out.product.graphed, pc, rep);

    out.phi.map.resize(pc.n_classes);
    for (int k = 0; k < pc.n_classes; ++k) {
        const auto [ka, kx] = key_of[k];
        const int idx = out.quotient_product.index_of(ka, kx);
        if (idx == kUndef) throw std::logic_error("phi_isomorphism: image pair missing");
        out.phi.map[k] = idx;
    }
    // bijective homomorphism that also reflects products
    out.iso = pc.n_classes == static_cast<int>(out.quotient_product.pairs.size());
    std::vector<char> hit(out.quotient_product.pairs.size(), 0);
    for (int v : out.phi.map) {
        if (hit[v]) out.iso = false;
        hit[v] = 1;
    }
    if (out.iso &&
        !is_homomorphism(out.product_quotient.base, out.quotient_product.graphed.base, out.phi))
        out.iso = false;
    if (out.iso) {
        const auto& a = out.product_quotient.base;
        const auto& b = out.quotient_product.graphed.base;
        for (int i = 0; i < a.size() && out.iso; ++i)
            for (int j = 0; j < a.size(); ++j)
                if (a.defined(i, j) != b.defined(out.phi.map[i], out.phi.map[j])) {
                    out.iso = false;
                    break;
                }
    }
    return out;
}

}  // namespace sgpd

#endif  // SGPD_QUOTIENTS_HPP
