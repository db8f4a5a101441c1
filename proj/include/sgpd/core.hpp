#ifndef SGPD_CORE_HPP
#define SGPD_CORE_HPP

// Partial binary structures: validation of the three-way associativity
// axioms, the categorical property, and construction/classification of
// compatible graph structures on a finite carrier.
//
// Elements are dense integer indices 0..n-1 with an optional name table.
// The partial product is stored as an n x n table of optional entries.

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace sgpd {

constexpr int kUndef = -1;

/// Partial binary product on {0..n-1}; kUndef marks undefined entries.
class PartialTable {
public:
    PartialTable() = default;
    explicit PartialTable(int n) : n_(n), cells_(static_cast<size_t>(n) * n, kUndef) {}

    int size() const { return n_; }
    bool defined(int i, int j) const { return cells_[idx(i, j)] != kUndef; }
    int at(int i, int j) const { return cells_[idx(i, j)]; }

    void set(int i, int j, int k) {
        if (k < 0 || k >= n_) throw std::invalid_argument("PartialTable::set: value out of range");
        cells_[idx(i, j)] = k;
    }
    void unset(int i, int j) { cells_[idx(i, j)] = kUndef; }

    bool operator==(const PartialTable& o) const = default;

private:
    size_t idx(int i, int j) const {
        if (i < 0 || i >= n_ || j < 0 || j >= n_) throw std::out_of_range("PartialTable: index out of range");
        return static_cast<size_t>(i) * n_ + j;
    }
    int n_ = 0;
    std::vector<int> cells_;
};

/// Raw input type: a finite carrier with a partially defined product.
struct PartialMagma {
    PartialTable table;
    std::vector<std::string> names;  // optional; empty means auto "e<i>"

    int size() const { return table.size(); }
    std::string name(int i) const {
        if (i >= 0 && i < static_cast<int>(names.size()) && !names[i].empty()) return names[i];
        return "e" + std::to_string(i);
    }
};

// ---------------------------------------------------------------------------
// Associativity validation (the three equivalent definedness conditions)
// ---------------------------------------------------------------------------

enum class ExelViolationKind { Axiom, Equality };

struct ExelViolation {
    ExelViolationKind kind;
    std::array<int, 3> triple;      // (f, g, h)
    std::array<bool, 3> held;       // which of conditions (i),(ii),(iii) held
    int lhs = kUndef, rhs = kUndef; // (fg)h and f(gh) for Equality
};

struct ExelReport {
    bool ok = false;
    std::vector<ExelViolation> violations;  // collected up to a limit
    bool truncated = false;
};

/// Carrier whose table passed validate_exel.
struct ExelSemigroupoid {
    PartialMagma m;

    int size() const { return m.size(); }
    bool defined(int i, int j) const { return m.table.defined(i, j); }
    int at(int i, int j) const { return m.table.at(i, j); }
    std::string name(int i) const { return m.name(i); }
};

namespace detail {
// Evaluates conditions (i),(ii),(iii) for one triple; on a violation fills
// `out` and returns false.
inline bool check_triple(const PartialTable& t, int f, int g, int h, ExelViolation& out) {
    const bool fg = t.defined(f, g);
    const bool gh = t.defined(g, h);
    const bool c1 = fg && gh;
    const bool c2 = fg && t.defined(t.at(f, g), h);
    const bool c3 = gh && t.defined(f, t.at(g, h));
    if (c1 != c2 || c2 != c3) {
        out = ExelViolation{ExelViolationKind::Axiom, {f, g, h}, {c1, c2, c3}};
        return false;
    }
    if (c1) {
        const int lhs = t.at(t.at(f, g), h);
        const int rhs = t.at(f, t.at(g, h));
        if (lhs != rhs) {
            out = ExelViolation{ExelViolationKind::Equality, {f, g, h}, {c1, c2, c3}, lhs, rhs};
            return false;
        }
    }
    return true;
}
}  // namespace detail

/// Checks every triple against the definedness conditions and the equality
/// (fg)h = f(gh); reports violations up to `max_violations`.
inline ExelReport validate_exel_report(const PartialMagma& m, int max_violations = 32) {
    ExelReport rep;
    rep.ok = true;
    const int n = m.size();
    for (int f = 0; f < n; ++f)
        for (int g = 0; g < n; ++g)
            for (int h = 0; h < n; ++h) {
                ExelViolation v;
                if (!detail::check_triple(m.table, f, g, h, v)) {
                    rep.ok = false;
                    if (static_cast<int>(rep.violations.size()) < max_violations) {
                        rep.violations.push_back(v);
                    } else {
                        rep.truncated = true;
                        return rep;
                    }
                }
            }
    return rep;
}

inline std::variant<ExelSemigroupoid, ExelReport> validate_exel(const PartialMagma& m,
                                                                int max_violations = 32) {
    ExelReport rep = validate_exel_report(m, max_violations);
    if (rep.ok) return ExelSemigroupoid{m};
    return rep;
}

/// Throwing convenience used by builders and tests.
inline ExelSemigroupoid require_exel(const PartialMagma& m) {
    auto r = validate_exel(m);
    if (auto* s = std::get_if<ExelSemigroupoid>(&r)) return *s;
    const auto& v = std::get<ExelReport>(r).violations.front();
    throw std::invalid_argument("not a semigroupoid: violation at triple (" +
                                m.name(v.triple[0]) + "," + m.name(v.triple[1]) + "," +
                                m.name(v.triple[2]) + ")");
}

// ---------------------------------------------------------------------------
// Left/right definedness sets
// ---------------------------------------------------------------------------

/// left_set(S,a) = { b : ab is defined }.
inline std::vector<int> left_set(const ExelSemigroupoid& s, int a) {
    std::vector<int> out;
    for (int b = 0; b < s.size(); ++b)
        if (s.defined(a, b)) out.push_back(b);
    return out;
}

/// right_set(S,a) = { b : ba is defined }.
inline std::vector<int> right_set(const ExelSemigroupoid& s, int a) {
    std::vector<int> out;
    for (int b = 0; b < s.size(); ++b)
        if (s.defined(b, a)) out.push_back(b);
    return out;
}

// ---------------------------------------------------------------------------
// Categorical property
// ---------------------------------------------------------------------------

struct CategoricalWitness {
    // The families Lambda^a (LeftFamily) and Lambda_a (RightFamily) must each
    // be pairwise disjoint-or-equal; a witness names two elements whose sets
    // overlap without being equal.
    enum class Family { LeftFamily, RightFamily } family;
    int a, b;
    int common;      // element of the intersection
    int separating;  // element of the symmetric difference
};

struct CategoricalResult {
    bool categorical = false;
    std::optional<CategoricalWitness> witness;        // first found, left family
    std::optional<CategoricalWitness> right_witness;  // first found, right family
};

namespace detail {
inline std::optional<CategoricalWitness> family_witness(
    const std::vector<std::vector<int>>& sets, CategoricalWitness::Family fam) {
    const int n = static_cast<int>(sets.size());
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            if (sets[a] == sets[b]) continue;
            std::vector<int> common;
            std::set_intersection(sets[a].begin(), sets[a].end(), sets[b].begin(), sets[b].end(),
                                  std::back_inserter(common));
            if (common.empty()) continue;
            std::vector<int> diff;
            std::set_symmetric_difference(sets[a].begin(), sets[a].end(), sets[b].begin(),
                                          sets[b].end(), std::back_inserter(diff));
            return CategoricalWitness{fam, a, b, common.front(), diff.front()};
        }
    return std::nullopt;
}
}  // namespace detail

/// True iff all left sets are pairwise disjoint or equal; by the equivalence
/// proposition the verdict agrees with the right-set family (both scanned so
/// a witness can be reported for either).
inline CategoricalResult is_categorical(const ExelSemigroupoid& s) {
    const int n = s.size();
    std::vector<std::vector<int>> lefts(n), rights(n);
    for (int a = 0; a < n; ++a) {
        lefts[a] = left_set(s, a);
        rights[a] = right_set(s, a);
    }
    CategoricalResult res;
    res.witness = detail::family_witness(lefts, CategoricalWitness::Family::LeftFamily);
    res.right_witness = detail::family_witness(rights, CategoricalWitness::Family::RightFamily);
    res.categorical = !res.witness && !res.right_witness;
    return res;
}

// ---------------------------------------------------------------------------
// Graph structures
// ---------------------------------------------------------------------------

enum class VertexKind {
    LowerClass,  // a nonempty set Lambda_a
    V0Class,     // class of a dummy source symbol v0(a)
    V1Class,     // class of a dummy range symbol v1(a)
    Named,       // from explicit input
};

struct VertexTag {
    VertexKind kind = VertexKind::Named;
    int anchor = kUndef;  // least element index this vertex came from
};

struct GraphedSemigroupoid {
    ExelSemigroupoid base;
    int n_vertices = 0;
    std::vector<int> src, rng;  // per element
    std::vector<VertexTag> vertex_tags;
    std::vector<std::string> vertex_names;  // optional

    int size() const { return base.size(); }
    std::string vertex_name(int v) const {
        if (v >= 0 && v < static_cast<int>(vertex_names.size()) && !vertex_names[v].empty())
            return vertex_names[v];
        return "v" + std::to_string(v);
    }
};

/// Unit groupoid on k points (xx = x only), graphed with one vertex per point.
inline GraphedSemigroupoid unit_table(int k) {
    PartialMagma m{PartialTable(k), {}};
    for (int i = 0; i < k; ++i) {
        m.table.set(i, i, i);
        m.names.push_back("x" + std::to_string(i));
    }
    GraphedSemigroupoid g;
    g.base = ExelSemigroupoid{m};
    g.n_vertices = k;
    g.src.resize(k);
    g.rng.resize(k);
    for (int i = 0; i < k; ++i) {
        g.src[i] = i;
        g.rng[i] = i;
        g.vertex_tags.push_back({VertexKind::LowerClass, i});
    }
    return g;
}

struct GraphedLawViolation {
    enum class Kind { Definedness, SourceOfProduct, RangeOfProduct, UncoveredVertex } kind;
    int a = kUndef, b = kUndef;  // offending pair (or vertex in `a` for Uncovered)
};

struct GraphedReport {
    bool ok = false;
    std::vector<GraphedLawViolation> violations;
};

/// Checks the graphed-semigroupoid laws: products defined exactly on
/// composable pairs, s(ab)=s(b), r(ab)=r(a), every vertex covered.
inline GraphedReport validate_graphed(const GraphedSemigroupoid& g, int max_violations = 32) {
    GraphedReport rep;
    rep.ok = true;
    const int n = g.size();
    auto add = [&](GraphedLawViolation v) {
        rep.ok = false;
        if (static_cast<int>(rep.violations.size()) < max_violations) rep.violations.push_back(v);
    };
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const bool composable = g.src[a] == g.rng[b];
            if (g.base.defined(a, b) != composable) {
                add({GraphedLawViolation::Kind::Definedness, a, b});
                continue;
            }
            if (!composable) continue;
            const int ab = g.base.at(a, b);
            if (g.src[ab] != g.src[b]) add({GraphedLawViolation::Kind::SourceOfProduct, a, b});
            if (g.rng[ab] != g.rng[a]) add({GraphedLawViolation::Kind::RangeOfProduct, a, b});
        }
    std::vector<char> covered(g.n_vertices, 0);
    for (int a = 0; a < n; ++a) {
        covered[g.src[a]] = 1;
        covered[g.rng[a]] = 1;
    }
    for (int v = 0; v < g.n_vertices; ++v)
        if (!covered[v]) add({GraphedLawViolation::Kind::UncoveredVertex, v, kUndef});
    return rep;
}

/// Vertices with no incoming (source) / no outgoing (sink) arrows.
inline std::vector<int> graph_sources(const GraphedSemigroupoid& g) {
    std::vector<char> has_in(g.n_vertices, 0);
    for (int a = 0; a < g.size(); ++a) has_in[g.rng[a]] = 1;
    std::vector<int> out;
    for (int v = 0; v < g.n_vertices; ++v)
        if (!has_in[v]) out.push_back(v);
    return out;
}

inline std::vector<int> graph_sinks(const GraphedSemigroupoid& g) {
    std::vector<char> has_out(g.n_vertices, 0);
    for (int a = 0; a < g.size(); ++a) has_out[g.src[a]] = 1;
    std::vector<int> out;
    for (int v = 0; v < g.n_vertices; ++v)
        if (!has_out[v]) out.push_back(v);
    return out;
}

// ---------------------------------------------------------------------------
// Graphing choices: partitions of the dummy-vertex symbol sets
// ---------------------------------------------------------------------------

/// Partitions of V0 = {v0(a) : left_set(a) empty} and V1 = {v1(a) :
/// right_set(a) empty} subject to the closure condition: for every defined
/// product ab, if left_set(b) is empty then v0(b) ~ v0(ab), and if
/// right_set(a) is empty then v1(a) ~ v1(ab).
struct GraphingChoice {
    std::vector<int> v0_elements, v1_elements;  // sorted element indices
    std::vector<int> r0_class, r1_class;        // normalized class ids per symbol
};

struct InvalidChoice {
    int symbol_a = kUndef, symbol_b = kUndef;  // elements of an unclosed pair
    bool on_v1 = false;
};
struct NotCategorical {};
struct CapExceeded {
    int symbols = 0, cap = 0;
};

namespace detail {

inline std::vector<int> normalize_classes(std::vector<int> cls) {
    std::vector<int> remap(cls.size(), kUndef);
    int next = 0;
    for (int& c : cls) {
        if (remap[c] == kUndef) remap[c] = next++;
        c = remap[c];
    }
    return cls;
}

struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
    std::vector<int> classes() {
        std::vector<int> cls(parent.size());
        for (size_t i = 0; i < parent.size(); ++i) cls[i] = find(static_cast<int>(i));
        return normalize_classes(cls);
    }
};

struct DummySymbols {
    std::vector<int> v0_elements, v1_elements;
    std::vector<int> v0_pos, v1_pos;  // element -> symbol position or kUndef
    // forced identifications from the closure condition
    std::vector<std::pair<int, int>> forced0, forced1;  // positions
};

inline DummySymbols dummy_symbols(const ExelSemigroupoid& s) {
    DummySymbols d;
    const int n = s.size();
    d.v0_pos.assign(n, kUndef);
    d.v1_pos.assign(n, kUndef);
    for (int a = 0; a < n; ++a) {
        if (left_set(s, a).empty()) {
            d.v0_pos[a] = static_cast<int>(d.v0_elements.size());
            d.v0_elements.push_back(a);
        }
        if (right_set(s, a).empty()) {
            d.v1_pos[a] = static_cast<int>(d.v1_elements.size());
            d.v1_elements.push_back(a);
        }
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (!s.defined(a, b)) continue;
            const int ab = s.at(a, b);
            if (d.v0_pos[b] != kUndef) d.forced0.push_back({d.v0_pos[b], d.v0_pos[ab]});
            if (d.v1_pos[a] != kUndef) d.forced1.push_back({d.v1_pos[a], d.v1_pos[ab]});
        }
    return d;
}

}  // namespace detail

/// The finest partitions satisfying the closure condition (the generated
/// closure of the forced pairs); always a valid choice.
inline GraphingChoice default_graphing_choice(const ExelSemigroupoid& s) {
    auto d = detail::dummy_symbols(s);
    detail::DisjointSets u0(static_cast<int>(d.v0_elements.size()));
    detail::DisjointSets u1(static_cast<int>(d.v1_elements.size()));
    for (auto [x, y] : d.forced0) u0.unite(x, y);
    for (auto [x, y] : d.forced1) u1.unite(x, y);
    return GraphingChoice{d.v0_elements, d.v1_elements, u0.classes(), u1.classes()};
}

inline std::optional<InvalidChoice> check_choice(const ExelSemigroupoid& s,
                                                 const GraphingChoice& c) {
    auto d = detail::dummy_symbols(s);
    if (d.v0_elements != c.v0_elements || d.v1_elements != c.v1_elements)
        return InvalidChoice{};  // symbol sets do not match this semigroupoid
    for (auto [x, y] : d.forced0)
        if (c.r0_class[x] != c.r0_class[y]) return InvalidChoice{c.v0_elements[x], c.v0_elements[y], false};
    for (auto [x, y] : d.forced1)
        if (c.r1_class[x] != c.r1_class[y]) return InvalidChoice{c.v1_elements[x], c.v1_elements[y], true};
    return std::nullopt;
}

/// Builds the graphed structure determined by a valid choice. Vertices are,
/// in order: the distinct nonempty sets Lambda_a (by least representative),
/// then V0-classes, then V1-classes.
inline std::variant<GraphedSemigroupoid, NotCategorical, InvalidChoice> graph(
    const ExelSemigroupoid& s, const GraphingChoice& c) {
    if (!is_categorical(s).categorical) return NotCategorical{};
    if (auto bad = check_choice(s, c)) return *bad;

    const int n = s.size();
    std::vector<std::vector<int>> rights(n);
    for (int a = 0; a < n; ++a) rights[a] = right_set(s, a);

    // Vertex ids for the distinct nonempty right sets.
    std::vector<int> lower_vertex(n, kUndef);  // per element a: vertex of Lambda_a
    std::vector<VertexTag> tags;
    for (int a = 0; a < n; ++a) {
        if (rights[a].empty() || lower_vertex[a] != kUndef) continue;
        const int v = static_cast<int>(tags.size());
        tags.push_back({VertexKind::LowerClass, a});
        for (int b = a; b < n; ++b)
            if (rights[b] == rights[a]) lower_vertex[b] = v;
    }
    const int n0 = c.v0_elements.empty() ? 0 : 1 + *std::max_element(c.r0_class.begin(), c.r0_class.end());
    const int n1 = c.v1_elements.empty() ? 0 : 1 + *std::max_element(c.r1_class.begin(), c.r1_class.end());
    const int base0 = static_cast<int>(tags.size());
    for (int k = 0; k < n0; ++k) {
        int anchor = kUndef;
        for (size_t i = 0; i < c.v0_elements.size(); ++i)
            if (c.r0_class[i] == k && (anchor == kUndef || c.v0_elements[i] < anchor))
                anchor = c.v0_elements[i];
        tags.push_back({VertexKind::V0Class, anchor});
    }
    const int base1 = static_cast<int>(tags.size());
    for (int k = 0; k < n1; ++k) {
        int anchor = kUndef;
        for (size_t i = 0; i < c.v1_elements.size(); ++i)
            if (c.r1_class[i] == k && (anchor == kUndef || c.v1_elements[i] < anchor))
                anchor = c.v1_elements[i];
        tags.push_back({VertexKind::V1Class, anchor});
    }

    std::vector<int> v0_of(n, kUndef), v1_of(n, kUndef);
    for (size_t i = 0; i < c.v0_elements.size(); ++i) v0_of[c.v0_elements[i]] = base0 + c.r0_class[i];
    for (size_t i = 0; i < c.v1_elements.size(); ++i) v1_of[c.v1_elements[i]] = base1 + c.r1_class[i];

    GraphedSemigroupoid g;
    g.base = s;
    g.n_vertices = static_cast<int>(tags.size());
    g.vertex_tags = tags;
    g.src.assign(n, kUndef);
    g.rng.assign(n, kUndef);
    for (int a = 0; a < n; ++a) {
        const auto lft = left_set(s, a);
        g.src[a] = lft.empty() ? v0_of[a] : lower_vertex[lft.front()];
        g.rng[a] = rights[a].empty() ? v1_of[a] : lower_vertex[a];
    }
    return g;
}

inline GraphedSemigroupoid graph_default(const ExelSemigroupoid& s) {
    auto r = graph(s, default_graphing_choice(s));
    if (auto* g = std::get_if<GraphedSemigroupoid>(&r)) return *g;
    throw std::invalid_argument("graph_default: semigroupoid is not categorical");
}

/// All (R0,R1) pairs satisfying the closure condition; these classify the
/// compatible graph structures up to a graph isomorphism fixing arrows.
/// Enumeration walks restricted-growth strings over the forced classes.
inline std::variant<std::vector<GraphingChoice>, NotCategorical, CapExceeded> enumerate_graphings(
    const ExelSemigroupoid& s, int cap = 8) {
    if (!is_categorical(s).categorical) return NotCategorical{};
    auto fin = default_graphing_choice(s);
    const int symbols = static_cast<int>(fin.v0_elements.size() + fin.v1_elements.size());
    if (symbols > cap) return CapExceeded{symbols, cap};

    // Partitions of a k-element set as restricted-growth strings.
    auto partitions = [](int k) {
        std::vector<std::vector<int>> out;
        std::vector<int> rgs(k, 0);
        if (k == 0) {
            out.push_back({});
            return out;
        }
        while (true) {
            out.push_back(rgs);
            int i = k - 1;
            for (; i > 0; --i) {
                int maxv = 0;
                for (int j = 0; j < i; ++j) maxv = std::max(maxv, rgs[j]);
                if (rgs[i] <= maxv) break;
            }
            if (i == 0) break;
            ++rgs[i];
            for (int j = i + 1; j < k; ++j) rgs[j] = 0;
        }
        return out;
    };

    // Coarsenings of the finest partition = partitions of its class set.
    const int k0 = fin.v0_elements.empty() ? 0 : 1 + *std::max_element(fin.r0_class.begin(), fin.r0_class.end());
    const int k1 = fin.v1_elements.empty() ? 0 : 1 + *std::max_element(fin.r1_class.begin(), fin.r1_class.end());
    auto p0 = partitions(k0);
    auto p1 = partitions(k1);
    std::vector<GraphingChoice> out;
    for (const auto& a : p0)
        for (const auto& b : p1) {
            GraphingChoice c = fin;
            for (auto& x : c.r0_class) x = k0 ? a[x] : x;
            for (auto& x : c.r1_class) x = k1 ? b[x] : x;
            c.r0_class = detail::normalize_classes(c.r0_class);
            c.r1_class = detail::normalize_classes(c.r1_class);
            out.push_back(c);
        }
    return out;
}

// ---------------------------------------------------------------------------
// Homomorphisms
// ---------------------------------------------------------------------------

struct Homomorphism {
    std::vector<int> map;  // source element -> target element
};

struct HomViolation {
    enum class Kind { Definedness, Product } kind;
    int a, b;
};

inline std::optional<HomViolation> homomorphism_violation(const ExelSemigroupoid& src,
                                                          const ExelSemigroupoid& dst,
                                                          const Homomorphism& h) {
    for (int a = 0; a < src.size(); ++a)
        for (int b = 0; b < src.size(); ++b) {
            if (!src.defined(a, b)) continue;
            if (!dst.defined(h.map[a], h.map[b])) return HomViolation{HomViolation::Kind::Definedness, a, b};
            if (dst.at(h.map[a], h.map[b]) != h.map[src.at(a, b)])
                return HomViolation{HomViolation::Kind::Product, a, b};
        }
    return std::nullopt;
}

inline bool is_homomorphism(const ExelSemigroupoid& src, const ExelSemigroupoid& dst,
                            const Homomorphism& h) {
    return !homomorphism_violation(src, dst, h).has_value();
}

struct HasSourceOrSink {
    int vertex;
    bool is_sink;
};

/// The unique vertex map making (phi0, phi) a graph morphism, when the source
/// structure has neither sources nor sinks.
inline std::variant<std::vector<int>, HasSourceOrSink> induce_vertex_map(
    const GraphedSemigroupoid& a, const GraphedSemigroupoid& b, const Homomorphism& h) {
    auto srcs = graph_sources(a);
    if (!srcs.empty()) return HasSourceOrSink{srcs.front(), false};
    auto snks = graph_sinks(a);
    if (!snks.empty()) return HasSourceOrSink{snks.front(), true};
    std::vector<int> v(a.n_vertices, kUndef);
    for (int x = 0; x < a.size(); ++x) {
        v[a.src[x]] = b.src[h.map[x]];
        v[a.rng[x]] = b.rng[h.map[x]];
    }
    return v;
}

// ---------------------------------------------------------------------------
// Subset products, ideals, structural predicates
// ---------------------------------------------------------------------------

inline std::vector<int> subset_product(const ExelSemigroupoid& s, const std::vector<int>& a,
                                       const std::vector<int>& b) {
    std::vector<char> in(s.size(), 0);
    for (int x : a)
        for (int y : b)
            if (s.defined(x, y)) in[s.at(x, y)] = 1;
    std::vector<int> out;
    for (int i = 0; i < s.size(); ++i)
        if (in[i]) out.push_back(i);
    return out;
}

inline std::vector<int> all_elements(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i;
    return v;
}

inline bool is_left_ideal(const ExelSemigroupoid& s, const std::vector<int>& ideal) {
    std::vector<char> in(s.size(), 0);
    for (int x : ideal) in[x] = 1;
    for (int a = 0; a < s.size(); ++a)
        for (int x : ideal)
            if (s.defined(a, x) && !in[s.at(a, x)]) return false;
    return true;
}

inline bool is_right_ideal(const ExelSemigroupoid& s, const std::vector<int>& ideal) {
    std::vector<char> in(s.size(), 0);
    for (int x : ideal) in[x] = 1;
    for (int a = 0; a < s.size(); ++a)
        for (int x : ideal)
            if (s.defined(x, a) && !in[s.at(x, a)]) return false;
    return true;
}

inline bool is_ideal(const ExelSemigroupoid& s, const std::vector<int>& ideal) {
    return is_left_ideal(s, ideal) && is_right_ideal(s, ideal);
}

/// Graphs of the translation maps x -> ax and x -> xa; two elements are
/// indistinguishable exactly when these pairs coincide.
inline bool translations_coincide(const ExelSemigroupoid& s, int a, int b) {
    for (int x = 0; x < s.size(); ++x) {
        if (s.defined(a, x) != s.defined(b, x)) return false;
        if (s.defined(a, x) && s.at(a, x) != s.at(b, x)) return false;
        if (s.defined(x, a) != s.defined(x, b)) return false;
        if (s.defined(x, a) && s.at(x, a) != s.at(x, b)) return false;
    }
    return true;
}

inline std::optional<std::pair<int, int>> nondegeneracy_witness(const ExelSemigroupoid& s) {
    for (int a = 0; a < s.size(); ++a)
        for (int b = a + 1; b < s.size(); ++b)
            if (translations_coincide(s, a, b)) return std::make_pair(a, b);
    return std::nullopt;
}

struct StructuralPredicates {
    bool idempotent = false;  // every element factors as a product
    std::vector<int> non_factorable;
    bool left_s_unital = false;
    std::vector<int> no_left_unit;  // elements t with no u, ut = t
    bool nondegenerate = false;
    std::optional<std::pair<int, int>> degeneracy_witness;
    std::vector<int> sinks, sources;  // vertex lists; filled for graphed input
};

inline StructuralPredicates structural_predicates(const ExelSemigroupoid& s,
                                                  const GraphedSemigroupoid* g = nullptr) {
    StructuralPredicates p;
    const int n = s.size();
    std::vector<char> product(n, 0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (s.defined(a, b)) product[s.at(a, b)] = 1;
    for (int x = 0; x < n; ++x)
        if (!product[x]) p.non_factorable.push_back(x);
    p.idempotent = p.non_factorable.empty();

    for (int t = 0; t < n; ++t) {
        bool found = false;
        for (int u = 0; u < n && !found; ++u)
            if (s.defined(u, t) && s.at(u, t) == t) found = true;
        if (!found) p.no_left_unit.push_back(t);
    }
    p.left_s_unital = p.no_left_unit.empty();

    p.degeneracy_witness = nondegeneracy_witness(s);
    p.nondegenerate = !p.degeneracy_witness.has_value();

    if (g) {
        p.sinks = graph_sinks(*g);
        p.sources = graph_sources(*g);
    }
    return p;
}

/// Preimage of a sub-semigroupoid under a homomorphism (always closed).
inline std::vector<int> preimage(const Homomorphism& h, int src_size,
                                 const std::vector<int>& target_subset) {
    std::vector<char> in(1 + *std::max_element(h.map.begin(), h.map.end()), 0);
    for (int x : target_subset)
        if (x < static_cast<int>(in.size())) in[x] = 1;
    std::vector<int> out;
    for (int a = 0; a < src_size; ++a)
        if (in[h.map[a]]) out.push_back(a);
    return out;
}

/// Materializes a closed subset as a semigroupoid of its own, reindexed in
/// the order given.
inline ExelSemigroupoid sub_semigroupoid(const ExelSemigroupoid& s,
                                         const std::vector<int>& subset) {
    std::vector<int> pos(s.size(), kUndef);
    for (size_t i = 0; i < subset.size(); ++i) pos[subset[i]] = static_cast<int>(i);
    PartialMagma m{PartialTable(static_cast<int>(subset.size())), {}};
    for (size_t i = 0; i < subset.size(); ++i) {
        m.names.push_back(s.name(subset[i]));
        for (size_t j = 0; j < subset.size(); ++j) {
            if (!s.defined(subset[i], subset[j])) continue;
            const int k = pos[s.at(subset[i], subset[j])];
            if (k == kUndef) throw std::invalid_argument("sub_semigroupoid: subset not closed");
            m.table.set(static_cast<int>(i), static_cast<int>(j), k);
        }
    }
    return ExelSemigroupoid{m};
}

inline bool is_subsemigroupoid(const ExelSemigroupoid& s, const std::vector<int>& subset) {
    std::vector<char> in(s.size(), 0);
    for (int x : subset) in[x] = 1;
    for (int a : subset)
        for (int b : subset)
            if (s.defined(a, b) && !in[s.at(a, b)]) return false;
    return true;
}

}  // namespace sgpd

#endif  // SGPD_CORE_HPP
