#ifndef SGPD_SEMIDIRECT_HPP
#define SGPD_SEMIDIRECT_HPP

// Multipliers and their laws, sufficient conditions for associativity of the
// semidirect product, the product construction itself with direct
// verification, and the underlying (restricted product) groupoid.

#include "actions.hpp"

namespace sgpd {

// ---------------------------------------------------------------------------
// Multipliers
// ---------------------------------------------------------------------------

/// A pair of partial self-maps; kUndef marks points outside the domains.
struct Multiplier {
    std::vector<int> l_map, r_map;

    bool in_dom_l(int a) const { return l_map[a] != kUndef; }
    bool in_dom_r(int a) const { return r_map[a] != kUndef; }
};

struct MultiplierReport {
    bool ok = true;
    std::vector<PreactionViolation> violations;  // reuse {law, witness} records
};

/// Checks dom(L) right ideal, dom(R) left ideal, and the three exchange laws
/// L(ab)=L(a)b, R(ab)=aR(b), R(a)b=aL(b), each with definedness equivalence.
inline MultiplierReport validate_multiplier(const ExelSemigroupoid& s, const Multiplier& m,
                                            int max_violations = 32) {
    MultiplierReport rep;
    auto fail = [&](const std::string& law, std::vector<int> w) {
        rep.ok = false;
        if (static_cast<int>(rep.violations.size()) < max_violations)
            rep.violations.push_back({law, std::move(w)});
    };
    const int n = s.size();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (!s.defined(a, b)) {
                // R(a)b = aL(b) can still be asserted through definedness
                const bool lhs = m.in_dom_r(a) && s.defined(m.r_map[a], b);
                const bool rhs = m.in_dom_l(b) && s.defined(a, m.l_map[b]);
                if (lhs != rhs) fail("exchange_definedness", {a, b});
                else if (lhs && s.at(m.r_map[a], b) != s.at(a, m.l_map[b])) fail("exchange_value", {a, b});
                continue;
            }
            const int ab = s.at(a, b);
            if (m.in_dom_l(a) && !m.in_dom_l(ab)) fail("dom_l_right_ideal", {a, b});
            if (m.in_dom_r(b) && !m.in_dom_r(ab)) fail("dom_r_left_ideal", {a, b});
            {
                const bool lhs = m.in_dom_l(ab);
                const bool rhs = m.in_dom_l(a) && s.defined(m.l_map[a], b);
                if (lhs != rhs) fail("l_exchange_definedness", {a, b});
                else if (lhs && m.l_map[ab] != s.at(m.l_map[a], b)) fail("l_exchange_value", {a, b});
            }
            {
                const bool lhs = m.in_dom_r(ab);
                const bool rhs = m.in_dom_r(b) && s.defined(a, m.r_map[b]);
                if (lhs != rhs) fail("r_exchange_definedness", {a, b});
                else if (lhs && m.r_map[ab] != s.at(a, m.r_map[b])) fail("r_exchange_value", {a, b});
            }
            {
                const bool lhs = m.in_dom_r(a) && s.defined(m.r_map[a], b);
                const bool rhs = m.in_dom_l(b) && s.defined(a, m.l_map[b]);
                if (lhs != rhs) fail("exchange_definedness", {a, b});
                else if (lhs && s.at(m.r_map[a], b) != s.at(a, m.l_map[b])) fail("exchange_value", {a, b});
            }
        }
    return rep;
}

/// (L_x, R_x): a -> xa on left_set(x), a -> ax on right_set(x); optionally
/// restricted to an ideal.
inline Multiplier translation_multiplier(const ExelSemigroupoid& s, int x,
                                         const std::vector<int>* ideal = nullptr) {
    std::vector<char> in(s.size(), 1);
    if (ideal) {
        in.assign(s.size(), 0);
        for (int i : *ideal) in[i] = 1;
    }
    Multiplier m{std::vector<int>(s.size(), kUndef), std::vector<int>(s.size(), kUndef)};
    for (int a = 0; a < s.size(); ++a) {
        if (!in[a]) continue;
        if (s.defined(x, a)) m.l_map[a] = s.at(x, a);
        if (s.defined(a, x)) m.r_map[a] = s.at(a, x);
    }
    return m;
}

/// Distinct elements induce distinct translation pairs.
inline bool is_nondegenerate(const ExelSemigroupoid& s) { return !nondegeneracy_witness(s); }

enum class LrEvidence { Idempotent, NondegNoEmptyRight, NondegNoEmptyLeft, DirectOnly };

inline const char* to_string(LrEvidence e) {
    switch (e) {
        case LrEvidence::Idempotent: return "idempotent";
        case LrEvidence::NondegNoEmptyRight: return "nondegenerate, no empty right sets";
        case LrEvidence::NondegNoEmptyLeft: return "nondegenerate, no empty left sets";
        case LrEvidence::DirectOnly: return "direct verification only";
    }
    return "?";
}

/// Which sufficient condition certifies that every multiplier pair commutes.
/// DirectOnly means semidirect products over this space rely on the direct
/// triple check alone.
inline LrEvidence lr_associativity_evidence(const ExelSemigroupoid& s) {
    if (structural_predicates(s).idempotent) return LrEvidence::Idempotent;
    if (is_nondegenerate(s)) {
        bool right_ok = true, left_ok = true;
        for (int a = 0; a < s.size(); ++a) {
            if (right_set(s, a).empty()) right_ok = false;
            if (left_set(s, a).empty()) left_ok = false;
        }
        if (right_ok) return LrEvidence::NondegNoEmptyRight;
        if (left_ok) return LrEvidence::NondegNoEmptyLeft;
    }
    return LrEvidence::DirectOnly;
}

// ---------------------------------------------------------------------------
// Semidirect products
// ---------------------------------------------------------------------------

struct SemidirectProduct {
    std::vector<std::pair<int, int>> pairs;  // (actor, space point), sorted
    GraphedSemigroupoid graphed;             // table over pair indices
    std::vector<int> vertex_point;           // product vertex -> space vertex

    int index_of(int a, int x) const {
        const auto it = std::lower_bound(pairs.begin(), pairs.end(), std::make_pair(a, x));
        if (it == pairs.end() || *it != std::make_pair(a, x)) return kUndef;
        return static_cast<int>(it - pairs.begin());
    }
};

struct NotAssociative {
    std::array<int, 3> triple;   // pair indices, earliest in lexicographic order
    std::array<bool, 3> held;    // definedness conditions at the witness
    int lhs = kUndef, rhs = kUndef;  // both parses when defined
};

/// Builds all pairs (a,x), x in dom(theta_a), with the product
/// (a,x)(b,y) = (ab, theta_{b*}(x . theta_b(y))), then verifies associativity
/// of the result exhaustively. Pairs are ordered by (actor, space point).
inline std::variant<SemidirectProduct, NotAssociative> semidirect_product(const Preaction& p) {
    {
        auto rep = validate_preaction(p);
        if (!rep.ok)
            throw std::invalid_argument("semidirect_product: invalid preaction (" +
                                        rep.violations.front().axiom + ")");
    }
    const auto& s = p.actor;
    const auto& sp = p.space.base;
    SemidirectProduct out;
    for (int a = 0; a < s.size(); ++a)
        for (int x : p.theta[a].domain()) out.pairs.push_back({a, x});
    std::sort(out.pairs.begin(), out.pairs.end());

    const int n = static_cast<int>(out.pairs.size());
    PartialMagma m{PartialTable(n), {}};
    for (auto [a, x] : out.pairs) m.names.push_back("(" + s.name(a) + "," + sp.name(x) + ")");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const auto [a, x] = out.pairs[i];
            const auto [b, y] = out.pairs[j];
            if (!s.defined(a, b)) continue;
            const int ty = *p.theta[b].apply(y);
            if (!sp.defined(x, ty)) continue;
            const auto back = p.theta[s.star(b)].apply(sp.at(x, ty));
            if (!back)
                throw std::logic_error("semidirect_product: x.theta_b(y) escaped ran(theta_b)");
            const int k = out.index_of(s.at(a, b), *back);
            if (k == kUndef)
                throw std::logic_error("semidirect_product: product pair not in the carrier");
            m.table.set(i, j, k);
        }

    auto rep = validate_exel_report(m, 1);
    if (!rep.ok) {
        const auto& v = rep.violations.front();
        NotAssociative na{v.triple, v.held, v.lhs, v.rhs};
        return na;
    }

    // graphing over the realized space vertices: s(a,x) = s(x),
    // r(a,x) = r(theta_a(x))
    std::vector<int> point_vertex;  // dense reindexing of used space vertices
    std::vector<int> dense(p.space.n_vertices, kUndef);
    auto vert = [&](int v) {
        if (dense[v] == kUndef) {
            dense[v] = static_cast<int>(point_vertex.size());
            point_vertex.push_back(v);
        }
        return dense[v];
    };
    GraphedSemigroupoid g;
    g.base = ExelSemigroupoid{m};
    g.src.resize(n);
    g.rng.resize(n);
    for (int i = 0; i < n; ++i) {
        const auto [a, x] = out.pairs[i];
        g.src[i] = vert(p.space.src[x]);
        g.rng[i] = vert(p.space.rng[*p.theta[a].apply(x)]);
    }
    g.n_vertices = static_cast<int>(point_vertex.size());
    for (int v : point_vertex) g.vertex_tags.push_back({VertexKind::Named, v});
    out.vertex_point = point_vertex;
    out.graphed = g;
    if (!validate_graphed(g).ok)
        throw std::logic_error("semidirect_product: graphing laws failed");
    return out;
}

inline SemidirectProduct require_semidirect(const Preaction& p) {
    auto r = semidirect_product(p);
    if (auto* sp = std::get_if<SemidirectProduct>(&r)) return *sp;
    throw std::invalid_argument("semidirect product is not associative");
}

// ---------------------------------------------------------------------------
// Regular/inverse transfer between the space and the product
// ---------------------------------------------------------------------------

struct InverseIffReport {
    bool ok = true;
    bool space_regular = false, space_inverse = false;
    bool product_regular = false, product_inverse = false;
    std::vector<PreactionViolation> violations;
};

/// For a non-degenerate preaction with associative product: the product is
/// regular (resp. inverse) iff the space is, and inverses of (a,x) are
/// exactly (a*, theta_a(y)) for y an inverse of x.
inline InverseIffReport inverse_iff_check(const Preaction& p, const SemidirectProduct& sd) {
    InverseIffReport rep;
    auto fail = [&](const std::string& what, std::vector<int> w) {
        rep.ok = false;
        rep.violations.push_back({what, std::move(w)});
    };
    const auto& sp = p.space.base;
    const auto& prod = sd.graphed.base;

    auto regular_inverse = [](const ExelSemigroupoid& s, bool& regular, bool& inverse) {
        regular = true;
        inverse = true;
        for (int a = 0; a < s.size(); ++a) {
            const auto inv = inverses_of(s, a);
            if (inv.empty()) regular = false;
            if (inv.size() != 1) inverse = false;
        }
        if (!regular) inverse = false;
    };
    regular_inverse(sp, rep.space_regular, rep.space_inverse);
    regular_inverse(prod, rep.product_regular, rep.product_inverse);
    if (rep.space_regular != rep.product_regular) fail("regular_iff", {});
    if (rep.space_inverse != rep.product_inverse) fail("inverse_iff", {});

    // shape of inverses
    for (int i = 0; i < static_cast<int>(sd.pairs.size()); ++i) {
        const auto [a, x] = sd.pairs[i];
        for (int j : inverses_of(prod, i)) {
            const auto [b, z] = sd.pairs[j];
            bool shaped = false;
            for (int y : inverses_of(sp, x)) {
                auto im = p.theta[a].apply(y);
                if (b == p.actor.star(a) && im && *im == z) shaped = true;
            }
            if (!shaped) fail("inverse_shape", {i, j});
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Underlying groupoid
// ---------------------------------------------------------------------------

struct UnderlyingGroupoid {
    InverseSemigroupoid groupoid;  // same carrier, restricted product
    std::vector<int> units;        // = idempotents of the original
};

/// Product restricted to pairs with a*a = bb*. The canonical order of the
/// result is equality, and the construction is the identity on groupoids.
inline UnderlyingGroupoid underlying_groupoid(const InverseSemigroupoid& s) {
    const int n = s.size();
    PartialMagma m{PartialTable(n), {}};
    for (int a = 0; a < n; ++a) m.names.push_back(s.name(a));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (s.defined(a, b) && s.at(s.star(a), a) == s.at(b, s.star(b)))
                m.table.set(a, b, s.at(a, b));
    UnderlyingGroupoid out;
    out.groupoid = require_inverse(require_exel(m));
    out.units = idempotents(s);
    if (classify(out.groupoid) != SubClass::Groupoid && classify(out.groupoid) != SubClass::Group)
        throw std::logic_error("underlying_groupoid: result is not a groupoid");
    return out;
}

/// Any homomorphism from a groupoid lands inside the restricted product:
/// composable images always satisfy a*a = bb*.
inline bool lands_in_underlying(const InverseSemigroupoid& g, const InverseSemigroupoid& s,
                                const Homomorphism& h) {
    for (int a = 0; a < g.size(); ++a)
        for (int b = 0; b < g.size(); ++b) {
            if (!g.defined(a, b)) continue;
            const int ia = h.map[a], ib = h.map[b];
            if (s.at(s.star(ia), ia) != s.at(ib, s.star(ib))) return false;
        }
    return true;
}

}  // namespace sgpd

#endif  // SGPD_SEMIDIRECT_HPP
