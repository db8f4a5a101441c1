#ifndef SGPD_DUALITY_HPP
#define SGPD_DUALITY_HPP

// Finite non-commutative Stone duality: semilattice spectra, Sigma-ordered
// inverse semigroups, the semigroup of bisections with set inclusion, its
// morphisms, the germ-quotient reconstruction, and the two natural
// isomorphisms tying them together.

#include <set>

#include "quotients.hpp"

namespace sgpd {

// ---------------------------------------------------------------------------
// Semilattices with zero and their spectra
// ---------------------------------------------------------------------------

struct SemilatticeWithZero {
    PartialTable meet;  // total, commutative, associative, idempotent
    int zero = kUndef;
    std::vector<std::string> names;

    int size() const { return meet.size(); }
    int at(int a, int b) const { return meet.at(a, b); }
    bool leq(int a, int b) const { return meet.at(a, b) == a; }
    std::string name(int i) const {
        if (i < static_cast<int>(names.size()) && !names[i].empty()) return names[i];
        return "e" + std::to_string(i);
    }
};

inline SemilatticeWithZero make_semilattice(const ExelSemigroupoid& table) {
    const int n = table.size();
    SemilatticeWithZero e;
    e.meet = PartialTable(n);
    for (int i = 0; i < n; ++i) {
        e.names.push_back(table.name(i));
        for (int j = 0; j < n; ++j) {
            if (!table.defined(i, j)) throw std::invalid_argument("make_semilattice: partial table");
            if (table.at(i, j) != table.at(j, i))
                throw std::invalid_argument("make_semilattice: not commutative");
            e.meet.set(i, j, table.at(i, j));
        }
        if (table.at(i, i) != i) throw std::invalid_argument("make_semilattice: not idempotent");
    }
    for (int i = 0; i < n; ++i) {
        bool absorbing = true;
        for (int j = 0; j < n; ++j)
            if (e.at(i, j) != i) absorbing = false;
        if (absorbing) e.zero = i;
    }
    if (e.zero == kUndef) throw std::invalid_argument("make_semilattice: no zero");
    return e;
}

using FilterSet = std::vector<int>;  // sorted element indices

inline bool is_filter(const SemilatticeWithZero& e, const FilterSet& f) {
    if (f.empty()) return false;
    std::vector<char> in(e.size(), 0);
    for (int x : f) in[x] = 1;
    for (int x : f)
        for (int y : f)
            if (!in[e.at(x, y)]) return false;
    for (int x : f)
        for (int y = 0; y < e.size(); ++y)
            if (e.leq(x, y) && !in[y]) return false;
    return true;
}

inline bool is_proper_filter(const SemilatticeWithZero& e, const FilterSet& f) {
    return is_filter(e, f) && !std::binary_search(f.begin(), f.end(), e.zero);
}

/// Ultrafilter criterion: a proper filter F is maximal iff every element
/// whose products with F avoid zero already lies in F.
inline bool is_ultrafilter(const SemilatticeWithZero& e, const FilterSet& f) {
    if (!is_proper_filter(e, f)) return false;
    for (int x = 0; x < e.size(); ++x) {
        if (std::binary_search(f.begin(), f.end(), x)) continue;
        bool avoids_zero = true;
        for (int y : f)
            if (e.at(x, y) == e.zero) avoids_zero = false;
        if (avoids_zero) return false;
    }
    return true;
}

inline FilterSet principal_filter(const SemilatticeWithZero& e, int m) {
    FilterSet f;
    for (int x = 0; x < e.size(); ++x)
        if (e.leq(m, x)) f.push_back(x);
    return f;
}

struct Spectrum {
    std::vector<FilterSet> ultrafilters;  // sorted canonically

    int size() const { return static_cast<int>(ultrafilters.size()); }
    int index_of(const FilterSet& f) const {
        for (int i = 0; i < size(); ++i)
            if (ultrafilters[i] == f) return i;
        return kUndef;
    }
    /// X[e] = indices of ultrafilters containing e.
    std::vector<int> basic(int e) const {
        std::vector<int> out;
        for (int i = 0; i < size(); ++i)
            if (std::binary_search(ultrafilters[i].begin(), ultrafilters[i].end(), e))
                out.push_back(i);
        return out;
    }
};

/// Every ultrafilter of a finite semilattice is principal, so the candidates
/// are the upward closures of nonzero elements, kept when the criterion
/// accepts them.
inline Spectrum ultrafilters(const SemilatticeWithZero& e) {
    Spectrum out;
    std::set<FilterSet> seen;
    for (int m = 0; m < e.size(); ++m) {
        if (m == e.zero) continue;
        auto f = principal_filter(e, m);
        if (is_ultrafilter(e, f)) seen.insert(f);
    }
    out.ultrafilters.assign(seen.begin(), seen.end());
    return out;
}

// ---------------------------------------------------------------------------
// Sigma-ordered inverse semigroups
// ---------------------------------------------------------------------------

/// An inverse semigroup with zero (total product, single vertex) carrying an
/// extrinsic compatible order with joins, complements and interpolation.
struct SigmaOrderedSemigroup {
    InverseSemigroupoid s;
    int zero = kUndef;
    std::vector<std::vector<char>> sub;      // extrinsic order
    std::vector<std::vector<int>> join_tab;  // sup under sub, kUndef if none
    std::vector<std::vector<int>> meet_tab;  // inf under sub, kUndef if none

    int size() const { return s.size(); }
    bool below(int a, int b) const { return sub[a][b]; }
    int join(int a, int b) const { return join_tab[a][b]; }
    int meet2(int a, int b) const { return meet_tab[a][b]; }
};

inline SigmaOrderedSemigroup make_sigma(InverseSemigroupoid s,
                                        std::vector<std::vector<char>> sub) {
    SigmaOrderedSemigroup out;
    if (s.g.n_vertices != 1) throw std::invalid_argument("make_sigma: not a semigroup");
    const int n = s.size();
    out.zero = kUndef;
    for (int z = 0; z < n; ++z) {
        bool absorbing = true;
        for (int a = 0; a < n; ++a)
            if (s.at(z, a) != z || s.at(a, z) != z) absorbing = false;
        if (absorbing) out.zero = z;
    }
    if (out.zero == kUndef) throw std::invalid_argument("make_sigma: no zero element");
    out.s = std::move(s);
    out.sub = std::move(sub);
    out.join_tab.assign(n, std::vector<int>(n, kUndef));
    out.meet_tab.assign(n, std::vector<int>(n, kUndef));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int sup = kUndef, inf = kUndef;
            for (int c = 0; c < n; ++c) {
                if (out.sub[a][c] && out.sub[b][c]) {
                    bool least = true;
                    for (int d = 0; d < n; ++d)
                        if (out.sub[a][d] && out.sub[b][d] && !out.sub[c][d]) least = false;
                    if (least) sup = c;
                }
                if (out.sub[c][a] && out.sub[c][b]) {
                    bool greatest = true;
                    for (int d = 0; d < n; ++d)
                        if (out.sub[d][a] && out.sub[d][b] && !out.sub[d][c]) greatest = false;
                    if (greatest) inf = c;
                }
            }
            out.join_tab[a][b] = sup;
            out.meet_tab[a][b] = inf;
        }
    return out;
}

/// The idempotent semilattice of a Sigma-ordered semigroup, with the element
/// translation table.
struct IdempotentSemilattice {
    SemilatticeWithZero e;
    std::vector<int> elems;  // semilattice index -> element of s
    std::vector<int> pos;    // element of s -> semilattice index or kUndef
};

inline IdempotentSemilattice idempotent_semilattice(const SigmaOrderedSemigroup& sg) {
    IdempotentSemilattice out;
    out.elems = idempotents(sg.s);
    out.pos.assign(sg.size(), kUndef);
    for (size_t i = 0; i < out.elems.size(); ++i) out.pos[out.elems[i]] = static_cast<int>(i);
    PartialMagma m{PartialTable(static_cast<int>(out.elems.size())), {}};
    for (size_t i = 0; i < out.elems.size(); ++i) {
        m.names.push_back(sg.s.name(out.elems[i]));
        for (size_t j = 0; j < out.elems.size(); ++j)
            m.table.set(static_cast<int>(i), static_cast<int>(j),
                        out.pos[sg.s.at(out.elems[i], out.elems[j])]);
    }
    out.e = make_semilattice(require_exel(m));
    return out;
}

struct SigmaReport {
    bool ok = true;
    std::vector<PreactionViolation> failures;  // axiom id + witness
};

struct NoInterpolator {
    int t, a;
};

namespace detail {

/// One-sided interpolant for (Sigma-vi): z with t <= z below a and the same
/// left annihilators as t; dual side via `right`.
inline std::optional<int> one_sided_interpolant(const SigmaOrderedSemigroup& sg, int t, int a,
                                                bool right) {
    for (int z = 0; z < sg.size(); ++z) {
        if (!sg.s.leq(t, z) || !sg.below(z, a)) continue;
        bool match = true;
        for (int x = 0; x < sg.size() && match; ++x) {
            const bool tz = (right ? sg.s.at(x, t) : sg.s.at(t, x)) == sg.zero;
            const bool zz = (right ? sg.s.at(x, z) : sg.s.at(z, x)) == sg.zero;
            if (tz != zz) match = false;
        }
        if (match) return z;
    }
    return std::nullopt;
}

}  // namespace detail

/// The unique p with t <= p below a sharing both-sided annihilators with t;
/// the meet of the two one-sided interpolants.
inline std::variant<int, NoInterpolator> interpolator(const SigmaOrderedSemigroup& sg, int t,
                                                      int a) {
    if (!sg.s.leq(t, a)) throw std::invalid_argument("interpolator: t is not below a");
    auto z = detail::one_sided_interpolant(sg, t, a, false);
    auto w = detail::one_sided_interpolant(sg, t, a, true);
    if (!z || !w) return NoInterpolator{t, a};
    // p = z ^ w = z w* w
    const int p = sg.s.at(sg.s.at(*z, sg.s.star(*w)), *w);
    // annihilator characterization, both sides
    for (int x = 0; x < sg.size(); ++x) {
        if ((sg.s.at(t, x) == sg.zero) != (sg.s.at(p, x) == sg.zero)) return NoInterpolator{t, a};
        if ((sg.s.at(x, t) == sg.zero) != (sg.s.at(x, p) == sg.zero)) return NoInterpolator{t, a};
    }
    if (!sg.s.leq(t, p) || !sg.below(p, a)) return NoInterpolator{t, a};
    return p;
}

/// Complement of e in f within the idempotents (relative to the extrinsic
/// order): the unique c with e v c = f and e ^ c = 0.
inline std::optional<int> relative_complement(const SigmaOrderedSemigroup& sg, int e, int f) {
    if (!sg.s.is_idempotent_elt(e) || !sg.s.is_idempotent_elt(f) || !sg.below(e, f))
        throw std::invalid_argument("relative_complement: expects idempotents with e below f");
    for (int c = 0; c < sg.size(); ++c) {
        if (!sg.s.is_idempotent_elt(c)) continue;
        if (sg.join(e, c) == f && sg.meet2(e, c) == sg.zero) return c;
    }
    return std::nullopt;
}

/// Complement of a in b for arbitrary elements with a below b: the translate
/// b (b*b \ a*a) of the idempotent complement, when that exists.
inline std::optional<int> general_complement(const SigmaOrderedSemigroup& sg, int a, int b) {
    if (!sg.below(a, b)) return std::nullopt;
    const int aa = sg.s.at(sg.s.star(a), a);
    const int bb = sg.s.at(sg.s.star(b), b);
    if (!sg.below(aa, bb)) return std::nullopt;
    auto e = relative_complement(sg, aa, bb);
    if (!e) return std::nullopt;
    const int c = sg.s.at(b, *e);
    if (sg.join(a, c) != b || sg.meet2(a, c) != sg.zero) return std::nullopt;
    return c;
}

/// Exhaustively checks the compatible-order laws, the six order axioms, and
/// the derived identities (the meet formula, De Morgan, translation of
/// complements).
inline SigmaReport validate_sigma(const SigmaOrderedSemigroup& sg, int max_violations = 32) {
    SigmaReport rep;
    auto fail = [&](const std::string& ax, std::vector<int> w) {
        rep.ok = false;
        if (static_cast<int>(rep.failures.size()) < max_violations)
            rep.failures.push_back({ax, std::move(w)});
    };
    const int n = sg.size();
    const auto& s = sg.s;

    for (int a = 0; a < n; ++a) {
        if (!sg.below(a, a)) fail("compatible_reflexive", {a});
        if (!sg.below(sg.zero, a)) fail("zero_minimum", {a});
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (!sg.below(a, b)) continue;
            if (a != b && sg.below(b, a)) fail("compatible_antisymmetric", {a, b});
            if (!s.leq(a, b)) fail("compatible_below_canonical", {a, b});
            for (int c = 0; c < n; ++c) {
                if (sg.below(b, c) && !sg.below(a, c)) fail("compatible_transitive", {a, b, c});
                if (!sg.below(s.at(a, c), s.at(b, c)) || !sg.below(s.at(c, a), s.at(c, b)))
                    fail("compatible_multiplicative", {a, b, c});
            }
        }

    // (Sigma-ii) conditional joins
    for (int c = 0; c < n; ++c)
        for (int a1 = 0; a1 < n; ++a1)
            for (int a2 = 0; a2 < n; ++a2)
                if (sg.below(a1, c) && sg.below(a2, c) && sg.join(a1, a2) == kUndef)
                    fail("conditional_joins", {a1, a2, c});

    // (Sigma-iii) distributivity over existing joins, both sides
    for (int c1 = 0; c1 < n; ++c1)
        for (int c2 = 0; c2 < n; ++c2) {
            const int j = sg.join(c1, c2);
            if (j == kUndef) continue;
            for (int a = 0; a < n; ++a) {
                if (sg.join(s.at(a, c1), s.at(a, c2)) != s.at(a, j))
                    fail("distributivity_left", {a, c1, c2});
                if (sg.join(s.at(c1, a), s.at(c2, a)) != s.at(j, a))
                    fail("distributivity_right", {a, c1, c2});
            }
        }

    // (Sigma-iv) relative complements in E
    for (int e = 0; e < n; ++e)
        for (int f = 0; f < n; ++f) {
            if (!s.is_idempotent_elt(e) || !s.is_idempotent_elt(f) || !sg.below(e, f)) continue;
            if (!relative_complement(sg, e, f)) fail("es_relative_complements", {e, f});
        }

    // (Sigma-v) orthogonal joins
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (s.at(s.star(a), b) == sg.zero && s.at(a, s.star(b)) == sg.zero &&
                sg.join(a, b) == kUndef)
                fail("orthogonal_joins", {a, b});

    // (Sigma-vi) interpolation, one-sided as stated
    for (int t = 0; t < n; ++t)
        for (int a = 0; a < n; ++a)
            if (s.leq(t, a) && !detail::one_sided_interpolant(sg, t, a, false))
                fail("interpolation", {t, a});

    // derived: meet formula x ^ y = x y* y = y y* x for x, y below a
    for (int a = 0; a < n; ++a)
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                if (!sg.below(x, a) || !sg.below(y, a)) continue;
                const int xy = s.at(s.at(x, s.star(y)), y);
                const int yx = s.at(s.at(y, s.star(y)), x);
                if (sg.meet2(x, y) != xy || xy != yx) fail("meet_formula", {a, x, y});
            }

    // derived: De Morgan on idempotents below a common f, and translation of
    // complements c(f \ e) = (cf) \ (ce)
    for (int f = 0; f < n; ++f) {
        if (!s.is_idempotent_elt(f)) continue;
        for (int e1 = 0; e1 < n; ++e1)
            for (int e2 = 0; e2 < n; ++e2) {
                if (!s.is_idempotent_elt(e1) || !s.is_idempotent_elt(e2)) continue;
                if (!sg.below(e1, f) || !sg.below(e2, f)) continue;
                auto c1 = relative_complement(sg, e1, f);
                auto c2 = relative_complement(sg, e2, f);
                if (!c1 || !c2) continue;
                const int join12 = sg.join(e1, e2);
                if (join12 != kUndef) {
                    auto cj = relative_complement(sg, join12, f);
                    if (!cj || sg.meet2(*c1, *c2) != *cj) fail("de_morgan_meet", {f, e1, e2});
                }
                const int meet12 = sg.meet2(e1, e2);
                if (meet12 != kUndef) {
                    auto cm = relative_complement(sg, meet12, f);
                    if (!cm || sg.join(*c1, *c2) != *cm) fail("de_morgan_join", {f, e1, e2});
                }
            }
    }

    // derived: translation of complements, c (b \ a) = (cb) \ (ca)
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (!sg.below(a, b)) continue;
            auto d = general_complement(sg, a, b);
            if (!d) {
                fail("complement_exists", {a, b});
                continue;
            }
            for (int c2 = 0; c2 < n; ++c2) {
                auto dd = general_complement(sg, s.at(c2, a), s.at(c2, b));
                if (!dd || *dd != s.at(c2, *d)) fail("complement_translation", {c2, a, b});
            }
        }
    return rep;
}

// ---------------------------------------------------------------------------
// The bisection semigroup with set inclusion
// ---------------------------------------------------------------------------

struct KBResult {
    SigmaOrderedSemigroup sigma;
    std::vector<std::vector<int>> bisections;  // sorted by (size, lexicographic)

    int index_of(const std::vector<int>& b) const {
        auto key = [](const std::vector<int>& v) { return std::make_pair(v.size(), v); };
        const auto it =
            std::lower_bound(bisections.begin(), bisections.end(), b,
                             [&](const auto& x, const auto& y) { return key(x) < key(y); });
        if (it == bisections.end() || *it != b) return kUndef;
        return static_cast<int>(it - bisections.begin());
    }
};

struct BisectionCountCap {
    size_t count, cap;
};

/// All subsets on which both source and range are injective, enumerated by
/// per-source-vertex backtracking with range pruning. The product of sets
/// makes them an inverse semigroup; set inclusion is the Sigma-order.
inline std::variant<KBResult, BisectionCountCap> kb(const InverseSemigroupoid& s,
                                                    size_t cap = size_t{1} << 16) {
    std::vector<std::vector<int>> by_src(s.g.n_vertices);
    for (int a = 0; a < s.size(); ++a) by_src[s.src(a)].push_back(a);

    std::vector<std::vector<int>> bis;
    std::vector<int> cur;
    std::vector<char> rng_used(s.g.n_vertices, 0);
    bool capped = false;
    auto rec = [&](auto&& self, int v) -> void {
        if (capped) return;
        if (v == s.g.n_vertices) {
            if (bis.size() >= cap) {
                capped = true;
                return;
            }
            bis.push_back(cur);
            return;
        }
        self(self, v + 1);  // no element with this source
        for (int a : by_src[v]) {
            if (rng_used[s.rng(a)]) continue;
            rng_used[s.rng(a)] = 1;
            cur.push_back(a);
            self(self, v + 1);
            cur.pop_back();
            rng_used[s.rng(a)] = 0;
        }
    };
    rec(rec, 0);
    if (capped) return BisectionCountCap{bis.size(), cap};
    for (auto& b : bis) std::sort(b.begin(), b.end());
    std::sort(bis.begin(), bis.end(), [](const auto& x, const auto& y) {
        return std::make_pair(x.size(), x) < std::make_pair(y.size(), y);
    });

    KBResult out;
    out.bisections = bis;
    const int n = static_cast<int>(bis.size());
    PartialMagma m{PartialTable(n), {}};
    for (int i = 0; i < n; ++i) {
        std::string nm = "{";
        for (size_t k = 0; k < bis[i].size(); ++k) nm += (k ? " " : "") + s.name(bis[i][k]);
        m.names.push_back(nm + "}");
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto prod = subset_product(s.exel(), bis[i], bis[j]);
            const int k = out.index_of(prod);
            if (k == kUndef) throw std::logic_error("kb: product of bisections not a bisection");
            m.table.set(i, j, k);
        }
    std::vector<std::vector<char>> sub(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            sub[i][j] = std::includes(bis[j].begin(), bis[j].end(), bis[i].begin(), bis[i].end());
    out.sigma = make_sigma(require_inverse(require_exel(m)), sub);
    return out;
}

inline KBResult require_kb(const InverseSemigroupoid& s, size_t cap = size_t{1} << 16) {
    auto r = kb(s, cap);
    if (auto* k = std::get_if<KBResult>(&r)) return *k;
    throw std::length_error("kb: bisection count cap exceeded");
}

// ---------------------------------------------------------------------------
// Morphisms of Sigma-ordered semigroups
// ---------------------------------------------------------------------------

struct SigmaMorphismReport {
    bool semigroup_hom = false;
    bool zero = false;           // (i)
    bool monotone = false;       // (ii)
    bool cup_morphism = false;   // (iii)
    bool weak_meet = false;      // (iv)
    bool proper = false;         // (v)
    bool interpolators = false;  // (vi)

    bool ok() const {
        return semigroup_hom && zero && monotone && cup_morphism && weak_meet && proper &&
               interpolators;
    }
};

inline SigmaMorphismReport sigma_morphism_report(const SigmaOrderedSemigroup& a,
                                                 const SigmaOrderedSemigroup& b,
                                                 const std::vector<int>& map) {
    SigmaMorphismReport rep;
    const int n = a.size();
    rep.semigroup_hom = true;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (map[a.s.at(x, y)] != b.s.at(map[x], map[y])) rep.semigroup_hom = false;
    rep.zero = map[a.zero] == b.zero;
    rep.monotone = true;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (a.below(x, y) && !b.below(map[x], map[y])) rep.monotone = false;
    rep.cup_morphism = true;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const int j = a.join(x, y);
            if (j == kUndef) continue;
            if (b.join(map[x], map[y]) != map[j]) rep.cup_morphism = false;
        }
    rep.weak_meet = true;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int t = 0; t < b.size(); ++t) {
                if (!b.below(t, map[x]) || !b.below(t, map[y])) continue;
                bool found = false;
                for (int c = 0; c < n && !found; ++c)
                    if (a.below(c, x) && a.below(c, y) && b.below(t, map[c])) found = true;
                if (!found) rep.weak_meet = false;
            }
    // properness: every t is a join of elements below images
    rep.proper = true;
    for (int t = 0; t < b.size(); ++t) {
        std::vector<char> reach(b.size(), 0);
        for (int u = 0; u < b.size(); ++u) {
            if (!b.below(u, t)) continue;
            for (int x = 0; x < n; ++x)
                if (b.below(u, map[x])) reach[u] = 1;
        }
        bool grew = true;
        while (grew) {
            grew = false;
            for (int u = 0; u < b.size(); ++u)
                for (int v = 0; v < b.size(); ++v) {
                    if (!reach[u] || !reach[v]) continue;
                    const int j = b.join(u, v);
                    if (j != kUndef && b.below(j, t) && !reach[j]) {
                        reach[j] = 1;
                        grew = true;
                    }
                }
        }
        if (!reach[t]) rep.proper = false;
    }
    rep.interpolators = true;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (!a.s.leq(x, y)) continue;
            auto ia = interpolator(a, x, y);
            auto ib = interpolator(b, map[x], map[y]);
            auto* pa = std::get_if<int>(&ia);
            auto* pb = std::get_if<int>(&ib);
            if (!pa || !pb || map[*pa] != *pb) rep.interpolators = false;
        }
    return rep;
}

// ---------------------------------------------------------------------------
// Covering homomorphisms and the bisection functor on them
// ---------------------------------------------------------------------------

struct CoveringReport {
    bool star_injective = false;
    bool star_surjective = false;
    std::vector<int> injective_witness;   // (a, b) with equal source and image
    std::vector<int> surjective_witness;  // (t, a) with no lift

    bool covering() const { return star_injective && star_surjective; }
};

inline CoveringReport check_covering(const InverseSemigroupoid& s, const InverseSemigroupoid& t,
                                     const Homomorphism& h) {
    CoveringReport rep;
    rep.star_injective = true;
    for (int a = 0; a < s.size(); ++a)
        for (int b = a + 1; b < s.size(); ++b)
            if (s.src(a) == s.src(b) && h.map[a] == h.map[b]) {
                rep.star_injective = false;
                if (rep.injective_witness.empty()) rep.injective_witness = {a, b};
            }
    rep.star_surjective = true;
    for (int tt = 0; tt < t.size(); ++tt)
        for (int a = 0; a < s.size(); ++a) {
            if (t.src(tt) != t.src(h.map[a])) continue;
            bool lifted = false;
            for (int b = 0; b < s.size() && !lifted; ++b)
                if (s.src(b) == s.src(a) && h.map[b] == tt) lifted = true;
            if (!lifted) {
                rep.star_surjective = false;
                if (rep.surjective_witness.empty()) rep.surjective_witness = {tt, a};
            }
        }
    return rep;
}

struct NotCovering {
    CoveringReport report;
};

struct KOnMorphismResult {
    std::vector<int> map;  // KB(T) index -> KB(S) index, A -> preimage of A
    SigmaMorphismReport verification;
};

/// For a covering homomorphism phi: S -> T, the preimage map on bisections is
/// a morphism of Sigma-ordered semigroups KB(T) -> KB(S); all six axioms are
/// verified on the instance.
inline std::variant<KOnMorphismResult, NotCovering> k_on_morphism(const InverseSemigroupoid& s,
                                                                  const InverseSemigroupoid& t,
                                                                  const Homomorphism& h,
                                                                  const KBResult& kbs,
                                                                  const KBResult& kbt) {
    auto cov = check_covering(s, t, h);
    if (!cov.covering()) return NotCovering{cov};
    KOnMorphismResult out;
    for (const auto& bt : kbt.bisections) {
        std::vector<int> pre;
        for (int a = 0; a < s.size(); ++a)
            if (std::binary_search(bt.begin(), bt.end(), h.map[a])) pre.push_back(a);
        const int idx = kbs.index_of(pre);
        if (idx == kUndef)
            throw std::logic_error("k_on_morphism: preimage of a bisection is not a bisection");
        out.map.push_back(idx);
    }
    out.verification = sigma_morphism_report(kbt.sigma, kbs.sigma, out.map);
    return out;
}

// ---------------------------------------------------------------------------
// The reconstruction functor
// ---------------------------------------------------------------------------

struct PFunctorResult {
    IdempotentSemilattice esl;
    Spectrum omega;
    Preaction dual_action;  // on the spectrum as a set
    SemidirectProduct sp;
    GraphedCongruence germs;
    std::vector<int> pair_class;   // sp pair index -> result element
    InverseSemigroupoid result;    // vertex set = the spectrum

    int class_of(int elt, int filter_idx) const {
        const int i = sp.index_of(elt, filter_idx);
        return i == kUndef ? kUndef : pair_class[i];
    }
};

/// Dual conjugation action on the spectrum, semidirect product, and the
/// quotient by the order germ relation: (s,F) ~ (t,F) iff some u below both
/// (extrinsically) has u*u in F.
inline PFunctorResult p_functor(const SigmaOrderedSemigroup& sg) {
    PFunctorResult out;
    out.esl = idempotent_semilattice(sg);
    out.omega = ultrafilters(out.esl.e);
    const int nf = out.omega.size();

    // dual action of the conjugation representation
    Preaction act;
    act.kind = PreactionKind::Global;
    act.actor = sg.s;
    act.space = unit_table(nf);
    act.anchor.assign(nf, 0);
    for (int a = 0; a < sg.size(); ++a) {
        const int astar_a = sg.s.at(sg.s.star(a), a);
        FiberedPartialBijection f{0, 0, {}};
        for (int fi = 0; fi < nf; ++fi) {
            const auto& fl = out.omega.ultrafilters[fi];
            if (!std::binary_search(fl.begin(), fl.end(), out.esl.pos[astar_a])) continue;
            // image ultrafilter: up-closure of conjugates of the filter part
            // below a*a
            std::vector<char> in(out.esl.e.size(), 0);
            for (int ei : fl) {
                const int e = out.esl.elems[ei];
                if (!sg.s.leq(e, astar_a)) continue;
                const int im = sg.s.at(sg.s.at(a, e), sg.s.star(a));
                for (int u = 0; u < out.esl.e.size(); ++u)
                    if (out.esl.e.leq(out.esl.pos[im], u)) in[u] = 1;
            }
            FilterSet img;
            for (int u = 0; u < out.esl.e.size(); ++u)
                if (in[u]) img.push_back(u);
            const int gi = out.omega.index_of(img);
            if (gi == kUndef) throw std::logic_error("p_functor: dual image is not an ultrafilter");
            f.graph.push_back({fi, gi});
        }
        act.theta.push_back(f);
    }
    out.dual_action = require_valid_preaction(act);
    out.sp = require_semidirect(out.dual_action);

    // germ congruence of the extrinsic order transported to pairs
    const int np = static_cast<int>(out.sp.pairs.size());
    detail::DisjointSets uf(np);
    for (int i = 0; i < np; ++i)
        for (int j = 0; j < np; ++j) {
            const auto [si, fi] = out.sp.pairs[i];
            const auto [sj, fj] = out.sp.pairs[j];
            if (fi == fj && sg.below(si, sj)) uf.unite(i, j);
        }
    out.germs.cls = uf.classes();
    out.germs.n_classes = 1 + *std::max_element(out.germs.cls.begin(), out.germs.cls.end());
    if (!is_graphed_congruence(out.sp.graphed, out.germs))
        throw std::logic_error("p_functor: germ relation is not a graphed congruence");
    out.pair_class = out.germs.cls;

    // build the quotient with the spectrum as the vertex set
    std::vector<int> rep(out.germs.n_classes, kUndef);
    for (int i = 0; i < np; ++i)
        if (rep[out.germs.cls[i]] == kUndef) rep[out.germs.cls[i]] = i;
    PartialMagma m{PartialTable(out.germs.n_classes), {}};
    for (int k = 0; k < out.germs.n_classes; ++k)
        m.names.push_back("[" + sg.s.name(out.sp.pairs[rep[k]].first) + ";F" +
                          std::to_string(out.sp.pairs[rep[k]].second) + "]");
    for (int i = 0; i < np; ++i)
        for (int j = 0; j < np; ++j)
            if (out.sp.graphed.base.defined(i, j))
                m.table.set(out.germs.cls[i], out.germs.cls[j],
                            out.germs.cls[out.sp.graphed.base.at(i, j)]);
    std::vector<int> qsrc(out.germs.n_classes), qrng(out.germs.n_classes);
    std::vector<std::string> vnames;
    for (int fi = 0; fi < nf; ++fi) vnames.push_back("F" + std::to_string(fi));
    for (int k = 0; k < out.germs.n_classes; ++k) {
        const auto [a, fi] = out.sp.pairs[rep[k]];
        qsrc[k] = fi;
        qrng[k] = *out.dual_action.theta[a].apply(fi);
    }
    out.result = make_inverse_with_graph(require_exel(m), qsrc, qrng, nf, vnames);
    return out;
}

struct POnMorphismResult {
    std::vector<int> vertex_map;  // spectrum of T -> spectrum of S
    Homomorphism map;             // P(T) -> P(S)
    CoveringReport covering;
    bool basic_preimage_law = false;  // preimage of X[e] is X[theta(e)]
};

/// The arrow part of the reconstruction on a Sigma-morphism theta: S -> T:
/// ultrafilters pull back through idempotent preimages, and each germ [t,F]
/// lifts through properness to a germ [s, F'] with [theta(s),F] = [t,F].
inline POnMorphismResult p_on_morphism(const SigmaOrderedSemigroup& sg_s,
                                       const std::vector<int>& theta, const PFunctorResult& ps,
                                       const PFunctorResult& pt) {
    POnMorphismResult out;
    // vertex map: F -> {e in E(S) : zero not in e . theta^{-1}(F)}
    for (int fi = 0; fi < pt.omega.size(); ++fi) {
        const auto& fl = pt.omega.ultrafilters[fi];
        std::vector<int> pre;  // elements of E(S) whose image lies in F
        for (size_t i = 0; i < ps.esl.elems.size(); ++i) {
            const int im = theta[ps.esl.elems[i]];
            const int impos = pt.esl.pos[im];
            if (impos != kUndef && std::binary_search(fl.begin(), fl.end(), impos)) pre.push_back(ps.esl.elems[i]);
        }
        FilterSet img;
        for (size_t i = 0; i < ps.esl.elems.size(); ++i) {
            const int e = ps.esl.elems[i];
            bool kills = false;
            for (int p : pre)
                if (sg_s.s.at(e, p) == sg_s.zero) kills = true;
            if (!kills) img.push_back(static_cast<int>(i));
        }
        const int gi = ps.omega.index_of(img);
        if (gi == kUndef) throw std::logic_error("p_on_morphism: pulled-back filter not ultra");
        out.vertex_map.push_back(gi);
    }
    out.basic_preimage_law = true;
    for (size_t i = 0; i < ps.esl.elems.size(); ++i) {
        // preimage of X[e] under the vertex map equals X[theta(e)]
        const int impos = pt.esl.pos[theta[ps.esl.elems[i]]];
        for (int fi = 0; fi < pt.omega.size(); ++fi) {
            const bool in_pre = std::binary_search(
                ps.omega.ultrafilters[out.vertex_map[fi]].begin(),
                ps.omega.ultrafilters[out.vertex_map[fi]].end(), static_cast<int>(i));
            const bool in_img =
                impos != kUndef &&
                std::binary_search(pt.omega.ultrafilters[fi].begin(),
                                   pt.omega.ultrafilters[fi].end(), impos);
            if (in_pre != in_img) out.basic_preimage_law = false;
        }
    }
    // arrow map via germ lifting
    out.map.map.assign(pt.result.size(), kUndef);
    for (int k = 0; k < pt.result.size(); ++k) {
        // find any pair (t, F) in the class, then s with [theta(s), F] = [t, F]
        int found = kUndef, ffound = kUndef;
        for (size_t i = 0; i < pt.sp.pairs.size() && found == kUndef; ++i) {
            if (pt.pair_class[i] != k) continue;
            const auto [t, fi] = pt.sp.pairs[i];
            for (int s = 0; s < sg_s.size() && found == kUndef; ++s) {
                const int ims = theta[s];
                const int j = pt.sp.index_of(ims, fi);
                if (j != kUndef && pt.pair_class[j] == k) {
                    found = s;
                    ffound = fi;
                }
            }
        }
        if (found == kUndef) throw std::logic_error("p_on_morphism: germ does not lift");
        out.map.map[k] = ps.class_of(found, out.vertex_map[ffound]);
        if (out.map.map[k] == kUndef) throw std::logic_error("p_on_morphism: lifted pair missing");
    }
    out.covering = check_covering(pt.result, ps.result, out.map);
    return out;
}

// ---------------------------------------------------------------------------
// The natural isomorphisms
// ---------------------------------------------------------------------------

struct ZetaResult {
    bool iso = false;
    Homomorphism map;  // S -> P(KB(S))
    KBResult kbr;
    PFunctorResult pk;
};

/// zeta(a) = [{a}, psi(s(a))] with psi(x) the ultrafilter of idempotent
/// bisections whose source set contains x.
inline ZetaResult zeta(const InverseSemigroupoid& s, size_t cap = size_t{1} << 16) {
    ZetaResult out;
    out.kbr = require_kb(s, cap);
    out.pk = p_functor(out.kbr.sigma);
    out.map.map.assign(s.size(), kUndef);

    auto psi_index = [&](int x) {
        FilterSet f;
        for (size_t i = 0; i < out.pk.esl.elems.size(); ++i) {
            const auto& bi = out.kbr.bisections[out.pk.esl.elems[i]];
            bool hits = false;
            for (int u : bi)
                if (s.src(u) == x) hits = true;
            if (hits) f.push_back(static_cast<int>(i));
        }
        return out.pk.omega.index_of(f);
    };

    bool ok = true;
    for (int a = 0; a < s.size(); ++a) {
        const int bi = out.kbr.index_of({a});
        const int fi = psi_index(s.src(a));
        if (bi == kUndef || fi == kUndef) {
            ok = false;
            break;
        }
        out.map.map[a] = out.pk.class_of(bi, fi);
        if (out.map.map[a] == kUndef) ok = false;
    }
    if (ok) {
        // bijective
        if (s.size() != out.pk.result.size()) ok = false;
        std::vector<char> hit(out.pk.result.size(), 0);
        for (int v : out.map.map) {
            if (v == kUndef || hit[v]) ok = false;
            else hit[v] = 1;
        }
    }
    if (ok) {
        for (int a = 0; a < s.size() && ok; ++a)
            for (int b = 0; b < s.size(); ++b) {
                const bool da = s.defined(a, b);
                const bool db = out.pk.result.defined(out.map.map[a], out.map.map[b]);
                if (da != db ||
                    (da && out.pk.result.at(out.map.map[a], out.map.map[b]) !=
                               out.map.map[s.at(a, b)])) {
                    ok = false;
                    break;
                }
            }
    }
    out.iso = ok;
    return out;
}

struct KappaResult {
    bool iso = false;        // bijective multiplicative
    bool order_iso = false;  // extrinsic order matches set inclusion
    Homomorphism map;        // S -> KB(P(S))
    PFunctorResult p;
    KBResult kb_of_p;
};

/// kappa(s) = [s, X[s*s]] as a compact-open bisection of the reconstruction.
inline KappaResult kappa(const SigmaOrderedSemigroup& sg, size_t cap = size_t{1} << 16) {
    KappaResult out;
    out.p = p_functor(sg);
    out.kb_of_p = require_kb(out.p.result, cap);
    out.map.map.assign(sg.size(), kUndef);
    bool ok = true;
    for (int a = 0; a < sg.size(); ++a) {
        std::vector<int> bis;
        const int aa = sg.s.at(sg.s.star(a), a);
        for (int fi : out.p.omega.basic(out.p.esl.pos[aa])) {
            const int cls = out.p.class_of(a, fi);
            if (cls == kUndef) {
                ok = false;
                break;
            }
            bis.push_back(cls);
        }
        std::sort(bis.begin(), bis.end());
        out.map.map[a] = out.kb_of_p.index_of(bis);
        if (out.map.map[a] == kUndef) ok = false;
    }
    if (ok) {
        if (sg.size() != static_cast<int>(out.kb_of_p.bisections.size())) ok = false;
        std::vector<char> hit(out.kb_of_p.bisections.size(), 0);
        for (int v : out.map.map) {
            if (v == kUndef || hit[v]) ok = false;
            else hit[v] = 1;
        }
        for (int a = 0; a < sg.size() && ok; ++a)
            for (int b = 0; b < sg.size(); ++b)
                if (out.kb_of_p.sigma.s.at(out.map.map[a], out.map.map[b]) !=
                    out.map.map[sg.s.at(a, b)]) {
                    ok = false;
                    break;
                }
    }
    out.iso = ok;
    out.order_iso = ok;
    if (ok)
        for (int a = 0; a < sg.size(); ++a)
            for (int b = 0; b < sg.size(); ++b)
                if (sg.below(a, b) !=
                    out.kb_of_p.sigma.below(out.map.map[a], out.map.map[b]))
                    out.order_iso = false;
    return out;
}

}  // namespace sgpd

#endif  // SGPD_DUALITY_HPP
