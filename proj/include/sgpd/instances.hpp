#ifndef SGPD_INSTANCES_HPP
#define SGPD_INSTANCES_HPP

// Builders for standard finite instances: groups, semilattices, symmetric
// inverse monoids, pair groupoids, products, unions, and the small tables
// used throughout the test suite.

#include <map>
#include <numeric>

#include "core.hpp"
#include "inverse.hpp"

namespace sgpd {

inline PartialMagma magma_from_entries(int n, const std::vector<std::array<int, 3>>& entries,
                                       std::vector<std::string> names = {}) {
    PartialMagma m{PartialTable(n), std::move(names)};
    for (auto [i, j, k] : entries) m.table.set(i, j, k);
    return m;
}

// --- groups ---------------------------------------------------------------

inline ExelSemigroupoid cyclic_group(int n) {
    PartialMagma m{PartialTable(n), {}};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.table.set(i, j, (i + j) % n);
    for (int i = 0; i < n; ++i) m.names.push_back(i == 0 ? "1" : "g" + std::to_string(i));
    return require_exel(m);
}

inline ExelSemigroupoid klein_four() {
    // 0 = unit; products by xor
    PartialMagma m{PartialTable(4), {"1", "a", "b", "c"}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m.table.set(i, j, i ^ j);
    return require_exel(m);
}

// --- semilattices ----------------------------------------------------------

/// Chain 0 < 1 < ... < n-1 under meet (min).
inline ExelSemigroupoid chain_semilattice(int n) {
    PartialMagma m{PartialTable(n), {}};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.table.set(i, j, std::min(i, j));
    for (int i = 0; i < n; ++i) m.names.push_back(std::to_string(i));
    return require_exel(m);
}

/// {0, a, b} with a, b incomparable above 0.
inline ExelSemigroupoid vee_semilattice() {
    PartialMagma m{PartialTable(3), {"0", "a", "b"}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m.table.set(i, j, i == j ? i : 0);
    return require_exel(m);
}

/// Subsets of a k-element set under intersection; index = bitmask.
inline ExelSemigroupoid boolean_semilattice(int k) {
    const int n = 1 << k;
    PartialMagma m{PartialTable(n), {}};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.table.set(i, j, i & j);
    for (int i = 0; i < n; ++i) m.names.push_back("s" + std::to_string(i));
    return require_exel(m);
}

// --- symmetric inverse monoid ----------------------------------------------

/// Partial injective self-maps of {0..k-1}; product is composition
/// (left factor applied second). Elements sorted by their image vectors,
/// kUndef entries first, so indexing is deterministic.
inline ExelSemigroupoid symmetric_inverse_monoid(int k) {
    std::vector<std::vector<int>> maps;
    std::vector<int> cur(k, kUndef);
    std::vector<char> used(k, 0);
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == k) {
            maps.push_back(cur);
            return;
        }
        cur[pos] = kUndef;
        self(self, pos + 1);
        for (int v = 0; v < k; ++v) {
            if (used[v]) continue;
            used[v] = 1;
            cur[pos] = v;
            self(self, pos + 1);
            used[v] = 0;
        }
        cur[pos] = kUndef;
    };
    rec(rec, 0);
    std::sort(maps.begin(), maps.end());

    auto index_of = [&](const std::vector<int>& f) {
        return static_cast<int>(std::lower_bound(maps.begin(), maps.end(), f) - maps.begin());
    };
    const int n = static_cast<int>(maps.size());
    PartialMagma m{PartialTable(n), {}};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<int> comp(k, kUndef);
            for (int x = 0; x < k; ++x) {
                const int y = maps[j][x];
                if (y != kUndef && maps[i][y] != kUndef) comp[x] = maps[i][y];
            }
            m.table.set(i, j, index_of(comp));
        }
    m.names.resize(n);
    for (int i = 0; i < n; ++i) {
        std::string nm = "p";
        bool any = false;
        for (int x = 0; x < k; ++x)
            if (maps[i][x] != kUndef) {
                nm += std::to_string(x) + std::to_string(maps[i][x]);
                any = true;
            }
        m.names[i] = any ? nm : "z";
    }
    return require_exel(m);
}

// --- groupoids --------------------------------------------------------------

/// Arrows (i,j) on k points, s(i,j)=j, r(i,j)=i, (i,j)(j,l)=(i,l).
inline ExelSemigroupoid pair_groupoid(int k) {
    const int n = k * k;
    PartialMagma m{PartialTable(n), {}};
    auto id = [k](int i, int j) { return i * k + j; };
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            for (int l = 0; l < k; ++l) m.table.set(id(i, j), id(j, l), id(i, l));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            m.names.push_back("a" + std::to_string(i) + std::to_string(j));
    return require_exel(m);
}

/// Unit groupoid on k points: xx = x only.
inline ExelSemigroupoid unit_groupoid(int k) {
    PartialMagma m{PartialTable(k), {}};
    for (int i = 0; i < k; ++i) m.table.set(i, i, i);
    for (int i = 0; i < k; ++i) m.names.push_back("x" + std::to_string(i));
    return require_exel(m);
}

// --- combinators -------------------------------------------------------------

inline ExelSemigroupoid direct_product(const ExelSemigroupoid& a, const ExelSemigroupoid& b) {
    const int n = a.size() * b.size();
    PartialMagma m{PartialTable(n), {}};
    auto id = [&](int x, int y) { return x * b.size() + y; };
    for (int x1 = 0; x1 < a.size(); ++x1)
        for (int y1 = 0; y1 < b.size(); ++y1)
            for (int x2 = 0; x2 < a.size(); ++x2)
                for (int y2 = 0; y2 < b.size(); ++y2)
                    if (a.defined(x1, x2) && b.defined(y1, y2))
                        m.table.set(id(x1, y1), id(x2, y2), id(a.at(x1, x2), b.at(y1, y2)));
    for (int x = 0; x < a.size(); ++x)
        for (int y = 0; y < b.size(); ++y) m.names.push_back(a.name(x) + "." + b.name(y));
    return require_exel(m);
}

inline ExelSemigroupoid disjoint_union(const ExelSemigroupoid& a, const ExelSemigroupoid& b) {
    const int n = a.size() + b.size();
    PartialMagma m{PartialTable(n), {}};
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < a.size(); ++j)
            if (a.defined(i, j)) m.table.set(i, j, a.at(i, j));
    for (int i = 0; i < b.size(); ++i)
        for (int j = 0; j < b.size(); ++j)
            if (b.defined(i, j)) m.table.set(a.size() + i, a.size() + j, a.size() + b.at(i, j));
    for (int i = 0; i < a.size(); ++i) m.names.push_back(a.name(i) + "'");
    for (int i = 0; i < b.size(); ++i) m.names.push_back(b.name(i) + "''");
    return require_exel(m);
}

/// Adjoins a new two-sided unit as the last element.
inline ExelSemigroupoid adjoin_unit(const ExelSemigroupoid& s, const std::string& unit_name = "u") {
    const int n = s.size() + 1;
    const int u = n - 1;
    PartialMagma m{PartialTable(n), {}};
    for (int i = 0; i < s.size(); ++i)
        for (int j = 0; j < s.size(); ++j)
            if (s.defined(i, j)) m.table.set(i, j, s.at(i, j));
    for (int i = 0; i < s.size(); ++i) {
        m.table.set(u, i, i);
        m.table.set(i, u, i);
    }
    m.table.set(u, u, u);
    for (int i = 0; i < s.size(); ++i) m.names.push_back(s.name(i));
    m.names.push_back(unit_name);
    return require_exel(m);
}

// --- fixed small tables -------------------------------------------------------

/// T = {0,t,u,v}: tv = vt = u, every other product 0. Total, commutative,
/// not idempotent (t has no factorization), degenerate.
inline ExelSemigroupoid t_semigroup() {
    PartialMagma m{PartialTable(4), {"0", "t", "u", "v"}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m.table.set(i, j, 0);
    m.table.set(1, 3, 2);
    m.table.set(3, 1, 2);
    return require_exel(m);
}

/// Strict order on {0..n-1} as a semigroupoid: arrows (a,b) with b < a,
/// (a,b)(b,c) = (a,c). Every vertex map test case needs n >= 3.
inline ExelSemigroupoid strict_order_semigroupoid(int n) {
    std::vector<std::pair<int, int>> arrows;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < a; ++b) arrows.push_back({a, b});
    const int m_sz = static_cast<int>(arrows.size());
    auto id = [&](int a, int b) {
        for (int i = 0; i < m_sz; ++i)
            if (arrows[i] == std::make_pair(a, b)) return i;
        return kUndef;
    };
    PartialMagma m{PartialTable(m_sz), {}};
    for (int i = 0; i < m_sz; ++i)
        for (int j = 0; j < m_sz; ++j)
            if (arrows[i].second == arrows[j].first)
                m.table.set(i, j, id(arrows[i].first, arrows[j].second));
    for (auto [a, b] : arrows) m.names.push_back("w" + std::to_string(a) + std::to_string(b));
    return require_exel(m);
}

/// Rectangular band on m x k symbols: (i,j)(p,q) = (i,q). Regular with
/// non-unique inverses when m, k > 1.
inline ExelSemigroupoid rectangular_band(int rows, int cols) {
    const int n = rows * cols;
    PartialMagma m{PartialTable(n), {}};
    auto id = [&](int i, int j) { return i * cols + j; };
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            for (int p = 0; p < rows; ++p)
                for (int q = 0; q < cols; ++q) m.table.set(id(i, j), id(p, q), id(i, q));
    for (int i = 0; i < n; ++i) m.names.push_back("b" + std::to_string(i));
    return require_exel(m);
}

/// The three-element semigroup {e,f,g}: ee=e, ff=f, all other products g.
/// The inclusion of {e,f} is a homomorphism with non-closed image.
inline ExelSemigroupoid efg_semigroup() {
    PartialMagma m{PartialTable(3), {"e", "f", "g"}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m.table.set(i, j, 2);
    m.table.set(0, 0, 0);
    m.table.set(1, 1, 1);
    return require_exel(m);
}

inline ExelSemigroupoid ef_partial() {
    return require_exel(magma_from_entries(2, {{0, 0, 0}, {1, 1, 1}}, {"e", "f"}));
}

// Counterexample tables for the associativity conditions. Elements f,g,h.
inline PartialMagma counterexample_i_only() {  // fg=f, gh=h: (i) holds, (ii),(iii) fail
    return magma_from_entries(3, {{0, 1, 0}, {1, 2, 2}}, {"f", "g", "h"});
}
inline PartialMagma counterexample_iii_fails() {  // fg=g, gh=h: (i),(ii) hold, (iii) fails
    return magma_from_entries(3, {{0, 1, 1}, {1, 2, 2}}, {"f", "g", "h"});
}
inline PartialMagma counterexample_ii_fails() {  // fg=f, gh=g: (i),(iii) hold, (ii) fails
    return magma_from_entries(3, {{0, 1, 0}, {1, 2, 1}}, {"f", "g", "h"});
}
inline PartialMagma counterexample_ii_only() {  // fg=hh=h: (ii) holds, (i),(iii) fail
    return magma_from_entries(3, {{0, 1, 2}, {2, 2, 2}}, {"f", "g", "h"});
}
inline PartialMagma counterexample_iii_only() {  // gh=h, fh=h: (iii) holds, (i),(ii) fail
    return magma_from_entries(3, {{1, 2, 2}, {0, 2, 2}}, {"f", "g", "h"});
}
inline PartialMagma counterexample_equality() {  // aa=ab=b, bb=ba=a: total, not associative
    return magma_from_entries(2, {{0, 0, 1}, {0, 1, 1}, {1, 1, 0}, {1, 0, 0}}, {"a", "b"});
}
/// aa=a, xa=y, ya=y, bb=b, xb=z, zb=z: a valid semigroupoid that is not
/// categorical (the right sets of a and b overlap without being equal).
inline ExelSemigroupoid noncategorical_five() {
    return require_exel(magma_from_entries(
        5, {{0, 0, 0}, {2, 0, 3}, {3, 0, 3}, {1, 1, 1}, {2, 1, 4}, {4, 1, 4}},
        {"a", "b", "x", "y", "z"}));
}

// --- enumeration of all semilattices ------------------------------------------

/// All meet-semilattice tables on n elements, one per isomorphism class.
/// Enumerates partial orders and keeps those where every pair has a meet.
inline std::vector<ExelSemigroupoid> all_semilattices(int n) {
    std::vector<ExelSemigroupoid> out;
    if (n <= 0) return out;
    std::vector<std::pair<int, int>> off;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) off.push_back({i, j});
    const int bits = static_cast<int>(off.size());

    std::vector<std::vector<std::vector<int>>> canon_seen;  // canonical forms
    for (long long mask = 0; mask < (1LL << bits); ++mask) {
        std::vector<std::vector<char>> le(n, std::vector<char>(n, 0));
        for (int i = 0; i < n; ++i) le[i][i] = 1;
        for (int b = 0; b < bits; ++b)
            if (mask & (1LL << b)) le[off[b].first][off[b].second] = 1;
        // antisymmetry + transitivity
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            for (int j = 0; j < n && ok; ++j) {
                if (i != j && le[i][j] && le[j][i]) ok = false;
                for (int k = 0; k < n && ok; ++k)
                    if (le[i][j] && le[j][k] && !le[i][k]) ok = false;
            }
        if (!ok) continue;
        // all binary meets exist
        PartialMagma m{PartialTable(n), {}};
        for (int i = 0; i < n && ok; ++i)
            for (int j = 0; j < n && ok; ++j) {
                int glb = kUndef;
                for (int z = 0; z < n; ++z) {
                    if (!le[z][i] || !le[z][j]) continue;
                    if (glb == kUndef || le[glb][z]) glb = z;
                }
                if (glb == kUndef) {
                    ok = false;
                    break;
                }
                for (int z = 0; z < n; ++z)
                    if (le[z][i] && le[z][j] && !le[z][glb]) ok = false;
                m.table.set(i, j, glb);
            }
        if (!ok) continue;
        // canonical form: lexicographically least table over all relabelings
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::vector<std::vector<int>> best;
        do {
            std::vector<std::vector<int>> t(n, std::vector<int>(n));
            std::vector<int> inv_p(n);
            for (int i = 0; i < n; ++i) inv_p[perm[i]] = i;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) t[i][j] = inv_p[m.table.at(perm[i], perm[j])];
            if (best.empty() || t < best) best = t;
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (std::find(canon_seen.begin(), canon_seen.end(), best) != canon_seen.end()) continue;
        canon_seen.push_back(best);
        PartialMagma cm{PartialTable(n), {}};
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) cm.table.set(i, j, best[i][j]);
        for (int i = 0; i < n; ++i) cm.names.push_back("m" + std::to_string(i));
        out.push_back(require_exel(cm));
    }
    return out;
}

}  // namespace sgpd

#endif  // SGPD_INSTANCES_HPP
