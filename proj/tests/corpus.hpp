#ifndef SGPD_TESTS_CORPUS_HPP
#define SGPD_TESTS_CORPUS_HPP

// The generated instance corpus used by the theorem suites: semilattices up
// to four elements, groups up to order four, the symmetric inverse monoid on
// two points, pair groupoids up to three points, the product of the pair
// groupoid with the two-chain, and all single-pair quotients of these.

#include <sgpd/instances.hpp>
#include <sgpd/iso.hpp>
#include <sgpd/quotients.hpp>

namespace sgpd_tests {

struct CorpusInstance {
    std::string label;
    sgpd::InverseSemigroupoid s;
};

inline const std::vector<CorpusInstance>& theorem_corpus() {
    using namespace sgpd;
    static const std::vector<CorpusInstance> corpus = [] {
        std::vector<CorpusInstance> out;
        auto add = [&](const std::string& label, const ExelSemigroupoid& table) {
            out.push_back({label, require_inverse(table)});
        };
        for (int n = 1; n <= 4; ++n) {
            int k = 0;
            for (const auto& sl : all_semilattices(n))
                add("semilattice_" + std::to_string(n) + "_" + std::to_string(k++), sl);
        }
        for (int n = 1; n <= 4; ++n) add("cyclic_" + std::to_string(n), cyclic_group(n));
        add("klein4", klein_four());
        add("I2", symmetric_inverse_monoid(2));
        add("pair2", pair_groupoid(2));
        add("pair3", pair_groupoid(3));
        add("pair2_x_L2", direct_product(pair_groupoid(2), chain_semilattice(2)));

        // quotients, iterated to a fixpoint so every congruence is reached
        // through chains of one-pair closures; deduplicated up to isomorphism
        for (size_t i = 0; i < out.size(); ++i) {
            const auto s = out[i].s;  // copy: the vector may reallocate
            std::vector<GraphedCongruence> seen;
            for (int a = 0; a < s.size(); ++a)
                for (int b = a + 1; b < s.size(); ++b) {
                    if (s.src(a) != s.src(b) || s.rng(a) != s.rng(b)) continue;
                    auto c = require_congruence(s.g, {{a, b}});
                    if (std::find(seen.begin(), seen.end(), c) != seen.end()) continue;
                    seen.push_back(c);
                    auto q = quotient(s, c);
                    bool fresh = true;
                    for (const auto& other : out)
                        if (other.s.size() == q.quotient.size() &&
                            isomorphic(other.s.exel(), q.quotient.exel()))
                            fresh = false;
                    if (fresh)
                        out.push_back({out[i].label + "_mod_" + s.name(a) + s.name(b),
                                       q.quotient});
                }
        }
        return out;
    }();
    return corpus;
}

}  // namespace sgpd_tests

#endif
