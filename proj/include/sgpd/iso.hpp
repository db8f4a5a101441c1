#ifndef SGPD_ISO_HPP
#define SGPD_ISO_HPP

// Brute-force isomorphism testing for small semigroupoid tables, with
// signature-based pruning. Capped at 64 elements.

#include <optional>

#include "core.hpp"

namespace sgpd {

namespace detail {

struct Signature {
    bool idem;
    int left_size, right_size;
    int out_def;  // number of defined products as left factor that equal self
    bool operator==(const Signature&) const = default;
};

inline Signature element_signature(const ExelSemigroupoid& s, int a) {
    Signature sig{};
    sig.idem = s.defined(a, a) && s.at(a, a) == a;
    sig.left_size = static_cast<int>(left_set(s, a).size());
    sig.right_size = static_cast<int>(right_set(s, a).size());
    sig.out_def = 0;
    for (int b = 0; b < s.size(); ++b)
        if (s.defined(a, b) && s.at(a, b) == a) ++sig.out_def;
    return sig;
}

}  // namespace detail

/// A bijection f with ab defined iff f(a)f(b) defined and f(ab) = f(a)f(b),
/// or nullopt. Throws if either side exceeds max_elements.
inline std::optional<std::vector<int>> find_isomorphism(const ExelSemigroupoid& a,
                                                        const ExelSemigroupoid& b,
                                                        int max_elements = 64) {
    if (a.size() > max_elements || b.size() > max_elements)
        throw std::invalid_argument("find_isomorphism: instance exceeds element cap");
    if (a.size() != b.size()) return std::nullopt;
    const int n = a.size();

    std::vector<detail::Signature> sa(n), sb(n);
    for (int i = 0; i < n; ++i) {
        sa[i] = detail::element_signature(a, i);
        sb[i] = detail::element_signature(b, i);
    }
    {
        // signature multisets must match
        auto key = [](const detail::Signature& s) {
            return std::array<int, 4>{s.idem ? 1 : 0, s.left_size, s.right_size, s.out_def};
        };
        std::vector<std::array<int, 4>> ka, kb;
        for (int i = 0; i < n; ++i) {
            ka.push_back(key(sa[i]));
            kb.push_back(key(sb[i]));
        }
        std::sort(ka.begin(), ka.end());
        std::sort(kb.begin(), kb.end());
        if (ka != kb) return std::nullopt;
    }

    std::vector<int> f(n, kUndef);
    std::vector<char> used(n, 0);

    // check all constraints among currently mapped elements involving `last`
    auto consistent = [&](int last) {
        for (int x = 0; x < n; ++x) {
            if (f[x] == kUndef) continue;
            for (auto [p, q] : {std::pair{last, x}, std::pair{x, last}}) {
                if (a.defined(p, q) != b.defined(f[p], f[q])) return false;
                if (a.defined(p, q)) {
                    const int ab = a.at(p, q);
                    if (f[ab] != kUndef && f[ab] != b.at(f[p], f[q])) return false;
                }
            }
        }
        // products landing on `last`
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) {
                if (f[p] == kUndef || f[q] == kUndef || !a.defined(p, q)) continue;
                if (a.at(p, q) == last && b.at(f[p], f[q]) != f[last]) return false;
            }
        return true;
    };

    auto rec = [&](auto&& self, int pos) -> bool {
        if (pos == n) return true;
        for (int cand = 0; cand < n; ++cand) {
            if (used[cand] || !(sa[pos] == sb[cand])) continue;
            f[pos] = cand;
            used[cand] = 1;
            if (consistent(pos) && self(self, pos + 1)) return true;
            used[cand] = 0;
            f[pos] = kUndef;
        }
        return false;
    };
    if (rec(rec, 0)) return f;
    return std::nullopt;
}

inline bool isomorphic(const ExelSemigroupoid& a, const ExelSemigroupoid& b,
                       int max_elements = 64) {
    return find_isomorphism(a, b, max_elements).has_value();
}

}  // namespace sgpd

#endif  // SGPD_ISO_HPP
