#ifndef SGPD_INVERSE_HPP
#define SGPD_INVERSE_HPP

// Inverse semigroupoids: detection of the unique-inverse structure, the
// canonical graphing through idempotent germs, the canonical order and its
// properties, subclass classification, compatibility and meets.

#include <optional>
#include <variant>

#include "core.hpp"

namespace sgpd {

struct InverseSemigroupoid {
    GraphedSemigroupoid g;
    std::vector<int> inv;  // a -> a*

    int size() const { return g.size(); }
    bool defined(int a, int b) const { return g.base.defined(a, b); }
    int at(int a, int b) const { return g.base.at(a, b); }
    int star(int a) const { return inv[a]; }
    int src(int a) const { return g.src[a]; }
    int rng(int a) const { return g.rng[a]; }
    std::string name(int a) const { return g.base.name(a); }
    const ExelSemigroupoid& exel() const { return g.base; }

    bool is_idempotent_elt(int e) const { return defined(e, e) && at(e, e) == e; }

    /// a <= b iff a = b(a*a).
    bool leq(int a, int b) const {
        const int aa = at(star(a), a);
        return defined(b, aa) && at(b, aa) == a;
    }
};

inline std::vector<int> idempotents(const InverseSemigroupoid& s) {
    std::vector<int> out;
    for (int e = 0; e < s.size(); ++e)
        if (s.is_idempotent_elt(e)) out.push_back(e);
    return out;
}

/// The isotropy at a vertex: arrows looping there. Closed under the product,
/// and an inverse semigroup in its own right.
inline std::vector<int> isotropy(const InverseSemigroupoid& s, int vertex) {
    std::vector<int> out;
    for (int a = 0; a < s.size(); ++a)
        if (s.src(a) == vertex && s.rng(a) == vertex) out.push_back(a);
    return out;
}

inline bool canonical_order(const InverseSemigroupoid& s, int a, int b) { return s.leq(a, b); }

// ---------------------------------------------------------------------------
// Detection
// ---------------------------------------------------------------------------

struct InverseDetectError {
    enum class Kind { NotRegular, NotUniqueInverse, NotCategorical, GraphingBroken } kind;
    int element = kUndef;
    std::vector<int> inverses;  // for NotUniqueInverse
};

/// All inverses of a: elements b with ab, ba defined, aba=a and bab=b.
inline std::vector<int> inverses_of(const ExelSemigroupoid& s, int a) {
    std::vector<int> out;
    for (int b = 0; b < s.size(); ++b) {
        // Pseudoinverse pre-pass: aba = a, then confirm bab = b.
        if (!s.defined(a, b) || !s.defined(b, a)) continue;
        const int ab = s.at(a, b);
        if (!s.defined(ab, a) || s.at(ab, a) != a) continue;
        const int ba = s.at(b, a);
        if (s.defined(b, ab) && s.at(b, ab) == b && s.defined(ba, b)) out.push_back(b);
    }
    return out;
}

namespace detail {

/// The canonical graphing of an inverse table: vertices are germ classes of
/// idempotents under e ~ f iff ef is defined; s(a) = [a*a], r(a) = [aa*].
inline std::optional<GraphedSemigroupoid> germ_graphing(const ExelSemigroupoid& s,
                                                        const std::vector<int>& inv) {
    const int n = s.size();
    std::vector<int> idem;
    for (int e = 0; e < n; ++e)
        if (s.defined(e, e) && s.at(e, e) == e) idem.push_back(e);
    DisjointSets uf(n);
    for (int e : idem)
        for (int f : idem)
            if (s.defined(e, f)) uf.unite(e, f);
    // vertex per class, anchored at the least idempotent
    std::vector<int> vertex_of(n, kUndef);
    std::vector<VertexTag> tags;
    for (int e : idem) {
        const int root = uf.find(e);
        if (vertex_of[root] == kUndef) {
            vertex_of[root] = static_cast<int>(tags.size());
            tags.push_back({VertexKind::LowerClass, e});
        }
    }
    GraphedSemigroupoid g;
    g.base = s;
    g.n_vertices = static_cast<int>(tags.size());
    g.vertex_tags = tags;
    g.src.assign(n, kUndef);
    g.rng.assign(n, kUndef);
    for (int a = 0; a < n; ++a) {
        if (!s.defined(inv[a], a) || !s.defined(a, inv[a])) return std::nullopt;
        g.src[a] = vertex_of[uf.find(s.at(inv[a], a))];
        g.rng[a] = vertex_of[uf.find(s.at(a, inv[a]))];
    }
    if (!validate_graphed(g).ok) return std::nullopt;
    return g;
}

}  // namespace detail

/// Finds the inverse of every element; succeeds iff each has exactly one, and
/// equips the result with the canonical graphing.
inline std::variant<InverseSemigroupoid, InverseDetectError> detect_inverse(
    const ExelSemigroupoid& s) {
    const int n = s.size();
    std::vector<int> inv(n, kUndef);
    for (int a = 0; a < n; ++a) {
        auto invs = inverses_of(s, a);
        if (invs.empty())
            return InverseDetectError{InverseDetectError::Kind::NotRegular, a, {}};
        if (invs.size() > 1)
            return InverseDetectError{InverseDetectError::Kind::NotUniqueInverse, a, invs};
        inv[a] = invs.front();
    }
    auto g = detail::germ_graphing(s, inv);
    if (!g) return InverseDetectError{InverseDetectError::Kind::GraphingBroken, kUndef, {}};
    return InverseSemigroupoid{*g, inv};
}

inline InverseSemigroupoid require_inverse(const ExelSemigroupoid& s) {
    auto r = detect_inverse(s);
    if (auto* i = std::get_if<InverseSemigroupoid>(&r)) return *i;
    const auto& e = std::get<InverseDetectError>(r);
    throw std::invalid_argument("not an inverse semigroupoid (element " +
                                (e.element == kUndef ? std::string("?") : s.name(e.element)) + ")");
}

/// Wraps a table with an externally supplied graphing (e.g. a quotient that
/// keeps the original vertex set); inverses are detected, laws verified.
inline InverseSemigroupoid make_inverse_with_graph(const ExelSemigroupoid& s,
                                                   const std::vector<int>& src,
                                                   const std::vector<int>& rng, int n_vertices,
                                                   std::vector<std::string> vertex_names = {}) {
    InverseSemigroupoid base = require_inverse(s);
    GraphedSemigroupoid g;
    g.base = s;
    g.n_vertices = n_vertices;
    g.src = src;
    g.rng = rng;
    g.vertex_tags.assign(n_vertices, VertexTag{VertexKind::Named, kUndef});
    g.vertex_names = std::move(vertex_names);
    if (!validate_graphed(g).ok)
        throw std::invalid_argument("make_inverse_with_graph: graphing violates the graphed laws");
    return InverseSemigroupoid{g, base.inv};
}

// ---------------------------------------------------------------------------
// Order properties
// ---------------------------------------------------------------------------

struct OrderAxiomsReport {
    bool ok = true;
    struct Item {
        std::string id;  // which law failed
        std::vector<int> witness;
    };
    std::vector<Item> failures;  // first counterexample per item
};

/// Exhaustively verifies (ab)* = b*a*, conjugates of idempotents, the four
/// characterizations of <=, the partial-order axioms, and monotonicity of the
/// product. Failures indicate an implementation bug; these are theorems.
inline OrderAxiomsReport order_axioms_check(const InverseSemigroupoid& s) {
    OrderAxiomsReport rep;
    auto fail = [&](const std::string& id, std::vector<int> w) {
        for (const auto& it : rep.failures)
            if (it.id == id) return;
        rep.ok = false;
        rep.failures.push_back({id, std::move(w)});
    };
    const int n = s.size();

    // (a) star is an anti-homomorphism
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (s.defined(a, b)) {
                if (!s.defined(s.star(b), s.star(a)) ||
                    s.at(s.star(b), s.star(a)) != s.star(s.at(a, b)))
                    fail("star_antihom", {a, b});
            }
    // (b) beb* idempotent
    for (int b = 0; b < n; ++b)
        for (int e : idempotents(s)) {
            if (!s.defined(b, e)) continue;
            const int be = s.at(b, e);
            if (!s.defined(be, s.star(b)) || !s.is_idempotent_elt(s.at(be, s.star(b))))
                fail("conjugate_idempotent", {b, e});
        }
    // (c) four characterizations of <=
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const bool base = s.leq(a, b);
            bool via_e = false, via_f = false;
            for (int e : idempotents(s)) {
                if (s.defined(b, e) && s.at(b, e) == a) via_e = true;
                if (s.defined(e, b) && s.at(e, b) == a) via_f = true;
            }
            const bool via_star = s.leq(s.star(a), s.star(b));
            if (base != via_e || base != via_f || base != via_star)
                fail("order_characterizations", {a, b});
        }
    // (d) partial order
    for (int a = 0; a < n; ++a)
        if (!s.leq(a, a)) fail("order_reflexive", {a});
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a != b && s.leq(a, b) && s.leq(b, a)) fail("order_antisymmetric", {a, b});
            for (int c = 0; c < n; ++c)
                if (s.leq(a, b) && s.leq(b, c) && !s.leq(a, c)) fail("order_transitive", {a, b, c});
        }
    // (e) product monotone
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (!s.leq(a, b)) continue;
            for (int c = 0; c < n; ++c) {
                if (!s.defined(a, c)) continue;
                for (int d = 0; d < n; ++d) {
                    if (!s.leq(c, d)) continue;
                    if (!s.defined(b, d) || !s.leq(s.at(a, c), s.at(b, d)))
                        fail("product_monotone", {a, b, c, d});
                }
            }
        }
    return rep;
}

// ---------------------------------------------------------------------------
// Classification, compatibility, meets
// ---------------------------------------------------------------------------

enum class SubClass { InverseSemigroup, Groupoid, Group, General };

/// Semigroup iff all idempotent pairs multiply; groupoid iff ef defined
/// implies e = f (equivalently, the canonical order is equality).
inline SubClass classify(const InverseSemigroupoid& s) {
    auto es = idempotents(s);
    bool semigroup = true, groupoid = true;
    for (int e : es)
        for (int f : es) {
            if (!s.defined(e, f)) semigroup = false;
            else if (e != f) groupoid = false;
        }
    if (semigroup && groupoid) return SubClass::Group;
    if (semigroup) return SubClass::InverseSemigroup;
    if (groupoid) return SubClass::Groupoid;
    return SubClass::General;
}

/// Compatible iff a*b and ab* are (defined and) idempotent.
inline bool compatible(const InverseSemigroupoid& s, int a, int b) {
    if (!s.defined(s.star(a), b) || !s.defined(a, s.star(b))) return false;
    return s.is_idempotent_elt(s.at(s.star(a), b)) && s.is_idempotent_elt(s.at(a, s.star(b)));
}

/// When a and b have a common upper bound, their meet exists and is a(b*b).
inline std::optional<int> meet(const InverseSemigroupoid& s, int a, int b) {
    bool bounded = false;
    for (int c = 0; c < s.size() && !bounded; ++c)
        if (s.leq(a, c) && s.leq(b, c)) bounded = true;
    if (!bounded) return std::nullopt;
    const int bb = s.at(s.star(b), b);
    return s.at(a, bb);
}

}  // namespace sgpd

#endif  // SGPD_INVERSE_HPP
