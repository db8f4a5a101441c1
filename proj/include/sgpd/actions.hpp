#ifndef SGPD_ACTIONS_HPP
#define SGPD_ACTIONS_HPP

// Bundles, partial bijections between fibers, the representation of an
// inverse semigroupoid inside them, map classes between inverse
// semigroupoids, and (pre)actions on sets and semigroupoids.

#include <map>

#include "inverse.hpp"

namespace sgpd {

// ---------------------------------------------------------------------------
// Bundles and fibered partial bijections
// ---------------------------------------------------------------------------

struct Bundle {
    int total = 0, base = 0;
    std::vector<int> proj;  // total element -> base point

    std::vector<int> fiber(int x) const {
        std::vector<int> out;
        for (int i = 0; i < total; ++i)
            if (proj[i] == x) out.push_back(i);
        return out;
    }
};

/// A triple (target vertex, injective partial map, source vertex). Equality
/// compares all three fields, so empty maps at different fibers differ.
struct FiberedPartialBijection {
    int tgt_vertex = kUndef, src_vertex = kUndef;
    std::vector<std::pair<int, int>> graph;  // (x, y), sorted by x, injective

    bool operator==(const FiberedPartialBijection&) const = default;

    std::optional<int> apply(int x) const {
        for (auto [a, b] : graph)
            if (a == x) return b;
        return std::nullopt;
    }
    std::vector<int> domain() const {
        std::vector<int> d;
        for (auto [a, b] : graph) d.push_back(a);
        return d;
    }
    std::vector<int> range() const {
        std::vector<int> r;
        for (auto [a, b] : graph) r.push_back(b);
        std::sort(r.begin(), r.end());
        return r;
    }
    FiberedPartialBijection inverse() const {
        FiberedPartialBijection out{src_vertex, tgt_vertex, {}};
        for (auto [a, b] : graph) out.graph.push_back({b, a});
        std::sort(out.graph.begin(), out.graph.end());
        return out;
    }
    /// Graph containment with matching endpoint vertices.
    bool leq(const FiberedPartialBijection& other) const {
        if (src_vertex != other.src_vertex || tgt_vertex != other.tgt_vertex) return false;
        for (auto [a, b] : graph) {
            auto y = other.apply(a);
            if (!y || *y != b) return false;
        }
        return true;
    }
    static FiberedPartialBijection identity_on(int vertex, const std::vector<int>& subset) {
        FiberedPartialBijection f{vertex, vertex, {}};
        for (int x : subset) f.graph.push_back({x, x});
        std::sort(f.graph.begin(), f.graph.end());
        return f;
    }
    bool well_formed() const {
        for (size_t i = 0; i + 1 < graph.size(); ++i)
            if (graph[i].first >= graph[i + 1].first) return false;
        std::vector<int> r = range();
        return std::adjacent_find(r.begin(), r.end()) == r.end();
    }
};

struct VertexMismatch {
    int expected, got;
};

/// (z,g,y)(y,f,x) = (z, g.f, x) on f^{-1}(ran f n dom g).
inline std::variant<FiberedPartialBijection, VertexMismatch> compose_fibered(
    const FiberedPartialBijection& g, const FiberedPartialBijection& f) {
    if (g.src_vertex != f.tgt_vertex) return VertexMismatch{g.src_vertex, f.tgt_vertex};
    FiberedPartialBijection out{g.tgt_vertex, f.src_vertex, {}};
    for (auto [x, y] : f.graph)
        if (auto z = g.apply(y)) out.graph.push_back({x, *z});
    std::sort(out.graph.begin(), out.graph.end());
    return out;
}

inline FiberedPartialBijection compose_fibered_checked(const FiberedPartialBijection& g,
                                                       const FiberedPartialBijection& f) {
    auto r = compose_fibered(g, f);
    if (auto* v = std::get_if<FiberedPartialBijection>(&r)) return *v;
    throw std::invalid_argument("compose_fibered: vertex mismatch");
}

// ---------------------------------------------------------------------------
// The inverse semigroupoid of all partial bijections between fibers
// ---------------------------------------------------------------------------

struct IpiResult {
    ExelSemigroupoid table;
    std::vector<FiberedPartialBijection> elements;  // index -> triple
    InverseSemigroupoid structure;                  // canonical graphing
};

/// Materializes every partial bijection between fibers of a small bundle and
/// verifies the composition table is an inverse semigroupoid.
inline IpiResult ipi_all(const Bundle& pi, size_t cap = 1 << 16) {
    std::vector<FiberedPartialBijection> elems;
    for (int x = 0; x < pi.base; ++x)
        for (int y = 0; y < pi.base; ++y) {
            const auto dom = pi.fiber(x);
            const auto ran = pi.fiber(y);
            // all injective partial maps dom -> ran
            std::vector<std::pair<int, int>> cur;
            std::vector<char> used(pi.total, 0);
            auto rec = [&](auto&& self, size_t pos) -> void {
                if (elems.size() > cap) throw std::length_error("ipi_all: cap exceeded");
                if (pos == dom.size()) {
                    FiberedPartialBijection f{y, x, cur};
                    std::sort(f.graph.begin(), f.graph.end());
                    elems.push_back(f);
                    return;
                }
                self(self, pos + 1);
                for (int v : ran) {
                    if (used[v]) continue;
                    used[v] = 1;
                    cur.push_back({dom[pos], v});
                    self(self, pos + 1);
                    cur.pop_back();
                    used[v] = 0;
                }
            };
            rec(rec, 0);
        }
    const int n = static_cast<int>(elems.size());
    auto index_of = [&](const FiberedPartialBijection& f) {
        for (int i = 0; i < n; ++i)
            if (elems[i] == f) return i;
        return kUndef;
    };
    PartialMagma m{PartialTable(n), {}};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto r = compose_fibered(elems[i], elems[j]);
            if (auto* f = std::get_if<FiberedPartialBijection>(&r)) m.table.set(i, j, index_of(*f));
        }
    IpiResult out{require_exel(m), elems, {}};
    out.structure = require_inverse(out.table);
    return out;
}

struct IpiCheckReport {
    bool ok = false;
    int elements = 0;
};

/// Materializes the full composition table over a small bundle and checks it
/// carries a unique-inverse structure.
inline IpiCheckReport ipi_product_check(const Bundle& pi, size_t cap = 1 << 16) {
    IpiCheckReport rep;
    try {
        auto all = ipi_all(pi, cap);
        rep.elements = all.table.size();
        rep.ok = true;
    } catch (const std::exception&) {
        rep.ok = false;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Map classes between inverse semigroupoids
// ---------------------------------------------------------------------------

struct MapKindReport {
    bool preserves_star = false;    // theta(a*) = theta(a)*
    bool wedge_condition = false;   // theta(a)theta(b) defined and <= theta(ab)
    bool monotone = false;          // a <= b implies theta(a) <= theta(b)
    bool vee_condition = false;     // theta(ab) <= theta(a)theta(b)
    bool homomorphism = false;

    bool wedge_prehomomorphism() const { return preserves_star && wedge_condition; }
    bool partial_homomorphism() const { return wedge_prehomomorphism() && monotone; }
    bool vee_prehomomorphism() const { return vee_condition; }
    bool none() const {
        return !homomorphism && !wedge_prehomomorphism() && !vee_prehomomorphism();
    }
};

/// Exhaustively labels a total map between inverse semigroupoids.
inline MapKindReport validate_map_kind(const InverseSemigroupoid& s, const InverseSemigroupoid& t,
                                       const std::vector<int>& map) {
    MapKindReport r;
    const int n = s.size();
    r.preserves_star = true;
    for (int a = 0; a < n; ++a)
        if (map[s.star(a)] != t.star(map[a])) r.preserves_star = false;
    r.wedge_condition = true;
    r.vee_condition = true;
    r.homomorphism = true;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (!s.defined(a, b)) continue;
            const int ab = s.at(a, b);
            if (!t.defined(map[a], map[b])) {
                r.wedge_condition = r.vee_condition = r.homomorphism = false;
                continue;
            }
            const int im = t.at(map[a], map[b]);
            if (!t.leq(im, map[ab])) r.wedge_condition = false;
            if (!t.leq(map[ab], im)) r.vee_condition = false;
            if (im != map[ab]) r.homomorphism = false;
        }
    r.monotone = true;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (s.leq(a, b) && !t.leq(map[a], map[b])) r.monotone = false;
    return r;
}

// ---------------------------------------------------------------------------
// Preactions
// ---------------------------------------------------------------------------

enum class PreactionKind { Wedge, Partial, Global };

inline const char* to_string(PreactionKind k) {
    switch (k) {
        case PreactionKind::Wedge: return "wedge-preaction";
        case PreactionKind::Partial: return "partial";
        case PreactionKind::Global: return "global";
    }
    return "?";
}

/// An anchor map to the actor's vertex set plus one partial isomorphism
/// theta_a per actor element; the declared kind is verified, not inferred.
struct Preaction {
    PreactionKind kind = PreactionKind::Wedge;
    InverseSemigroupoid actor;
    GraphedSemigroupoid space;  // unit groupoid when acting on a plain set
    std::vector<int> anchor;    // space element -> actor vertex
    std::vector<FiberedPartialBijection> theta;  // per actor element

    std::vector<int> anchor_fiber(int vertex) const {
        std::vector<int> out;
        for (int x = 0; x < space.size(); ++x)
            if (anchor[x] == vertex) out.push_back(x);
        return out;
    }
};

struct PreactionViolation {
    std::string axiom;
    std::vector<int> witness;
};

struct PreactionReport {
    bool ok = true;
    bool nondegenerate = false;  // computed flag, never a requirement
    std::vector<PreactionViolation> violations;
};

/// Verifies the invariants of the declared kind plus the semigroupoid-action
/// conditions (anchor homomorphism, fibers and domains are ideals, theta_a
/// isomorphisms), the containment dom(theta_a) in dom(theta_{a*a}), and the
/// coincidence of theta_b with theta_a on dom(theta_{a*a}) when a <= b.
/// Topological conditions hold trivially on finite discrete carriers.
inline PreactionReport validate_preaction(const Preaction& p, int max_violations = 32) {
    PreactionReport rep;
    auto fail = [&](const std::string& ax, std::vector<int> w) {
        rep.ok = false;
        if (static_cast<int>(rep.violations.size()) < max_violations)
            rep.violations.push_back({ax, std::move(w)});
    };
    const auto& s = p.actor;
    const auto& sp = p.space;
    const int n = s.size();
    if (static_cast<int>(p.theta.size()) != n ||
        static_cast<int>(p.anchor.size()) != sp.size()) {
        fail("shape", {});
        return rep;
    }

    for (int a = 0; a < n; ++a) {
        const auto& th = p.theta[a];
        if (!th.well_formed()) fail("theta_injective", {a});
        if (th.src_vertex != s.src(a) || th.tgt_vertex != s.rng(a)) fail("theta_endpoints", {a});
        for (auto [x, y] : th.graph) {
            if (p.anchor[x] != s.src(a)) fail("domain_in_anchor_fiber", {a, x});
            if (p.anchor[y] != s.rng(a)) fail("range_in_anchor_fiber", {a, y});
        }
        if (!(p.theta[s.star(a)] == th.inverse())) fail("theta_star_is_inverse", {a});
    }

    // anchor is a homomorphism to the unit groupoid of vertices
    for (int x = 0; x < sp.size(); ++x)
        for (int y = 0; y < sp.size(); ++y)
            if (sp.base.defined(x, y)) {
                if (p.anchor[x] != p.anchor[y]) fail("anchor_homomorphism", {x, y});
                else if (p.anchor[sp.base.at(x, y)] != p.anchor[x])
                    fail("anchor_homomorphism", {x, y});
            }

    // anchor fibers are ideals of the space
    for (int v = 0; v < s.g.n_vertices; ++v)
        if (!is_ideal(sp.base, p.anchor_fiber(v))) fail("fiber_ideal", {v});

    // dom(theta_a) is an ideal of its fiber; theta_a is a semigroupoid
    // isomorphism between its domain and range
    for (int a = 0; a < n; ++a) {
        const auto dom = p.theta[a].domain();
        std::vector<char> in_dom(sp.size(), 0);
        for (int x : dom) in_dom[x] = 1;
        for (int x : p.anchor_fiber(s.src(a)))
            for (int d : dom) {
                if (sp.base.defined(x, d) && !in_dom[sp.base.at(x, d)]) fail("domain_left_ideal", {a, x, d});
                if (sp.base.defined(d, x) && !in_dom[sp.base.at(d, x)]) fail("domain_right_ideal", {a, d, x});
            }
        for (int x : dom)
            for (int y : dom) {
                const bool dxy = sp.base.defined(x, y);
                const int ix = *p.theta[a].apply(x), iy = *p.theta[a].apply(y);
                if (dxy != sp.base.defined(ix, iy)) fail("theta_iso_definedness", {a, x, y});
                else if (dxy && *p.theta[a].apply(sp.base.at(x, y)) != sp.base.at(ix, iy))
                    fail("theta_iso_product", {a, x, y});
            }
    }

    // composition law for the declared kind
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (s.src(a) != s.rng(b)) continue;
            auto r = compose_fibered(p.theta[a], p.theta[b]);
            auto* comp = std::get_if<FiberedPartialBijection>(&r);
            if (!comp) {
                fail("theta_endpoints", {a, b});
                continue;
            }
            const auto& tab = p.theta[s.at(a, b)];
            if (p.kind == PreactionKind::Global) {
                if (!(*comp == tab)) fail("global_composition", {a, b});
            } else if (!comp->leq(tab)) {
                fail("wedge_composition", {a, b});
            }
        }
    if (p.kind == PreactionKind::Partial || p.kind == PreactionKind::Global) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (s.leq(a, b) && !p.theta[a].leq(p.theta[b])) fail("order_monotone", {a, b});
    }

    // derived consequences, reported for diagnosis
    for (int a = 0; a < n; ++a) {
        const int aa = s.at(s.star(a), a);
        for (int x : p.theta[a].domain())
            if (!p.theta[aa].apply(x)) fail("domain_in_idempotent_domain", {a, x});
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (!s.leq(a, b)) continue;
            const int aa = s.at(s.star(a), a);
            for (int x : p.theta[aa].domain())
                if (auto yb = p.theta[b].apply(x)) {
                    auto ya = p.theta[a].apply(x);
                    if (ya && *ya != *yb) fail("coincidence_on_common_domain", {a, b, x});
                }
        }

    std::vector<char> covered(sp.size(), 0);
    for (int a = 0; a < n; ++a)
        for (int x : p.theta[a].domain()) covered[x] = 1;
    rep.nondegenerate = std::all_of(covered.begin(), covered.end(), [](char c) { return c; });
    return rep;
}

inline Preaction require_valid_preaction(Preaction p) {
    auto rep = validate_preaction(p);
    if (!rep.ok)
        throw std::invalid_argument("invalid " + std::string(to_string(p.kind)) + ": " +
                                    rep.violations.front().axiom);
    return p;
}

// ---------------------------------------------------------------------------
// Extension of a wedge-preaction to its minimal partial action
// ---------------------------------------------------------------------------

/// Joins theta_b over b <= a; compatibility of the family guarantees the
/// union of graphs is a function. Minimal among partial extensions with the
/// same anchor.
inline Preaction extend_to_partial(const Preaction& p) {
    Preaction out = p;
    out.kind = PreactionKind::Partial;
    const auto& s = p.actor;
    for (int a = 0; a < s.size(); ++a) {
        std::map<int, int> g;
        for (int b = 0; b < s.size(); ++b) {
            if (!s.leq(b, a)) continue;
            for (auto [x, y] : p.theta[b].graph) {
                auto it = g.find(x);
                if (it != g.end() && it->second != y)
                    throw std::invalid_argument("extend_to_partial: incompatible family");
                g[x] = y;
            }
        }
        FiberedPartialBijection f{s.rng(a), s.src(a), {}};
        for (auto [x, y] : g) f.graph.push_back({x, y});
        out.theta[a] = f;
    }
    return require_valid_preaction(out);
}

// ---------------------------------------------------------------------------
// Canonical actions
// ---------------------------------------------------------------------------

/// Global action of S on its vertex set: the one-point maps s(a) -> r(a).
inline Preaction canonical_vertex_action(const InverseSemigroupoid& s) {
    Preaction p;
    p.kind = PreactionKind::Global;
    p.actor = s;
    auto ug = unit_table(s.g.n_vertices);
    p.space = ug;
    p.anchor.resize(s.g.n_vertices);
    for (int v = 0; v < s.g.n_vertices; ++v) p.anchor[v] = v;
    for (int a = 0; a < s.size(); ++a)
        p.theta.push_back(FiberedPartialBijection{s.rng(a), s.src(a), {{s.src(a), s.rng(a)}}});
    return require_valid_preaction(p);
}

/// Elements b with s(b) = r(b) that fix every idempotent below b*b; the
/// carrier of the conjugation action.
inline std::vector<int> central_fixing_elements(const InverseSemigroupoid& s) {
    std::vector<int> out;
    for (int b = 0; b < s.size(); ++b) {
        if (s.src(b) != s.rng(b)) continue;
        const int bb = s.at(s.star(b), b);
        bool fixes = true;
        for (int e : idempotents(s)) {
            if (!s.leq(e, bb)) continue;
            const int be = s.at(b, e);
            if (s.at(be, s.star(b)) != e) fixes = false;
        }
        if (fixes) out.push_back(b);
    }
    return out;
}

struct ConjugationAction {
    Preaction on_fixing;      // S acting on F(S) by b -> aba*
    Preaction on_idempotents; // restriction to E(S)
    std::vector<int> fixing;  // carrier of F(S), as elements of S
};

/// The conjugation action mu_a(b) = a b a* with dom(mu_a) = {b : bb* <= a*a},
/// on F(S) and restricted to E(S).
inline ConjugationAction munn_conjugation_action(const InverseSemigroupoid& s) {
    auto build = [&](const std::vector<int>& carrier) {
        // restricted product table on the carrier
        PartialMagma m{PartialTable(static_cast<int>(carrier.size())), {}};
        auto pos = [&](int elt) {
            for (size_t i = 0; i < carrier.size(); ++i)
                if (carrier[i] == elt) return static_cast<int>(i);
            return kUndef;
        };
        for (size_t i = 0; i < carrier.size(); ++i) {
            m.names.push_back(s.name(carrier[i]));
            for (size_t j = 0; j < carrier.size(); ++j)
                if (s.defined(carrier[i], carrier[j])) {
                    const int q = pos(s.at(carrier[i], carrier[j]));
                    if (q == kUndef)
                        throw std::logic_error("munn_conjugation_action: carrier not closed");
                    m.table.set(static_cast<int>(i), static_cast<int>(j), q);
                }
        }
        auto table = require_exel(m);
        Preaction p;
        p.kind = PreactionKind::Global;
        p.actor = s;
        p.space = graph_default(table);
        // the graphing above may merge vertices; anchor directly by s(b)
        p.anchor.resize(carrier.size());
        for (size_t i = 0; i < carrier.size(); ++i) p.anchor[i] = s.src(carrier[i]);
        for (int a = 0; a < s.size(); ++a) {
            FiberedPartialBijection f{s.rng(a), s.src(a), {}};
            const int aa = s.at(s.star(a), a);
            for (size_t i = 0; i < carrier.size(); ++i) {
                const int b = carrier[i];
                const int bbstar = s.at(b, s.star(b));
                if (!s.leq(bbstar, aa)) continue;
                const int image = s.at(s.at(a, b), s.star(a));
                f.graph.push_back({static_cast<int>(i), pos(image)});
            }
            std::sort(f.graph.begin(), f.graph.end());
            p.theta.push_back(f);
        }
        return p;
    };
    ConjugationAction out;
    out.fixing = central_fixing_elements(s);
    out.on_fixing = require_valid_preaction(build(out.fixing));
    out.on_idempotents = require_valid_preaction(build(idempotents(s)));
    return out;
}

// ---------------------------------------------------------------------------
// The representation through partial bijections between range fibers
// ---------------------------------------------------------------------------

struct RepresentationResult {
    Preaction action;                         // global action on the carrier set
    std::vector<FiberedPartialBijection> alpha;  // per element a: (r(a), t -> at, s(a))
    ExelSemigroupoid image;                   // the image sub-semigroupoid, materialized
    Homomorphism embedding;                   // S -> image (a bijection onto it)
    bool injective = false;
    bool multiplicative = false;
    bool definedness_equivalent = false;      // ab defined iff alpha(a)alpha(b) defined
};

/// alpha(a) = (r(a), t -> at on D_{a*}, s(a)) where D_a = {t : tt* <= aa*};
/// an injective homomorphism whose image is closed under the product.
inline RepresentationResult representation(const InverseSemigroupoid& s) {
    const int n = s.size();
    RepresentationResult out;
    auto dom_of = [&](int a) {  // D_a
        std::vector<int> d;
        const int aa = s.at(a, s.star(a));
        for (int t = 0; t < n; ++t)
            if (s.leq(s.at(t, s.star(t)), aa)) d.push_back(t);
        return d;
    };
    for (int a = 0; a < n; ++a) {
        FiberedPartialBijection f{s.rng(a), s.src(a), {}};
        for (int t : dom_of(s.star(a))) f.graph.push_back({t, s.at(a, t)});
        std::sort(f.graph.begin(), f.graph.end());
        out.alpha.push_back(f);
    }
    // image table, indexed like s (alpha is injective precisely when all
    // triples are distinct)
    out.injective = true;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (out.alpha[a] == out.alpha[b]) out.injective = false;

    out.multiplicative = true;
    out.definedness_equivalent = true;
    PartialMagma m{PartialTable(n), {}};
    for (int a = 0; a < n; ++a) m.names.push_back(s.name(a));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            auto comp = compose_fibered(out.alpha[a], out.alpha[b]);
            auto* f = std::get_if<FiberedPartialBijection>(&comp);
            if (s.defined(a, b) != (f != nullptr)) out.definedness_equivalent = false;
            if (!s.defined(a, b) || !f) continue;
            if (!(*f == out.alpha[s.at(a, b)])) out.multiplicative = false;
            m.table.set(a, b, s.at(a, b));
        }
    out.image = require_exel(m);
    out.embedding.map = all_elements(n);

    // as a global action on the carrier set: anchor = range map
    Preaction p;
    p.kind = PreactionKind::Global;
    p.actor = s;
    p.space = unit_table(n);
    p.anchor.resize(n);
    for (int t = 0; t < n; ++t) p.anchor[t] = s.rng(t);
    p.theta = out.alpha;
    out.action = require_valid_preaction(p);
    return out;
}

}  // namespace sgpd

#endif  // SGPD_ACTIONS_HPP
