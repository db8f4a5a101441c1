#ifndef SGPD_CLI_HPP
#define SGPD_CLI_HPP

// Command execution over parsed .sgpd documents. Exit codes: 0 all checks
// pass, 1 violation found, 2 input error. Reports go to `out`, diagnostics
// to `err`; --json switches the report stream to a single JSON object.

#include <json.hpp>
#include <ostream>

#include "duality.hpp"
#include "iso.hpp"
#include "parser.hpp"

namespace sgpd {

struct CliOptions {
    bool json = false;
    int max_violations = 32;
    size_t cap_bisections = size_t{1} << 16;
    int cap_graphings = 8;
    int cap_iso = 64;
};

namespace cli {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInputError = 2;

struct NamedSemigroupoid {
    std::string name;
    ExelSemigroupoid table;
    std::map<std::string, int> index;
};

inline std::string elt_list(const ExelSemigroupoid& s, const std::vector<int>& v) {
    std::string out = "{";
    for (size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + s.name(v[i]);
    return out + "}";
}

/// Elaborates and associativity-checks a named semigroupoid; reports
/// violations on failure.
inline std::variant<NamedSemigroupoid, int> load_semigroupoid(const Document& doc,
                                                              const std::string& name,
                                                              const CliOptions& opt,
                                                              std::ostream& out, Json* js,
                                                              std::ostream& err) {
    const auto* d = doc.semigroupoid(name);
    if (!d) {
        err << "no semigroupoid named '" << name << "'\n";
        return kExitInputError;
    }
    auto el = elaborate_semigroupoid(*d);
    auto& e = std::get<Elaborated>(el);
    auto rep = validate_exel_report(e.magma, opt.max_violations);
    if (!rep.ok) {
        if (js) {
            Json viols = Json::array();
            for (const auto& v : rep.violations) {
                Json j;
                j["kind"] = v.kind == ExelViolationKind::Axiom ? "axiom" : "equality";
                j["triple"] = {e.magma.name(v.triple[0]), e.magma.name(v.triple[1]),
                               e.magma.name(v.triple[2])};
                j["held"] = {v.held[0], v.held[1], v.held[2]};
                if (v.kind == ExelViolationKind::Equality) {
                    j["lhs"] = e.magma.name(v.lhs);
                    j["rhs"] = e.magma.name(v.rhs);
                }
                viols.push_back(j);
            }
            (*js)["semigroupoids"][name] = {{"valid", false}, {"violations", viols}};
        } else {
            out << name << ": NOT a semigroupoid (" << rep.violations.size() << " violation(s)";
            out << (rep.truncated ? ", truncated)\n" : ")\n");
            for (const auto& v : rep.violations) {
                out << "  triple (" << e.magma.name(v.triple[0]) << "," << e.magma.name(v.triple[1])
                    << "," << e.magma.name(v.triple[2]) << "): ";
                if (v.kind == ExelViolationKind::Axiom) {
                    out << "conditions held:";
                    const char* names[] = {"(i)", "(ii)", "(iii)"};
                    for (int k = 0; k < 3; ++k)
                        if (v.held[k]) out << " " << names[k];
                    out << "; failed:";
                    for (int k = 0; k < 3; ++k)
                        if (!v.held[k]) out << " " << names[k];
                    out << "\n";
                } else {
                    out << "products differ: " << e.magma.name(v.lhs) << " vs "
                        << e.magma.name(v.rhs) << "\n";
                }
            }
        }
        return kExitViolation;
    }
    return NamedSemigroupoid{name, ExelSemigroupoid{e.magma}, e.element_index};
}

/// The graphing used for a semigroupoid: a declared graph block when present,
/// the canonical one otherwise (requires inverse structure).
inline std::variant<InverseSemigroupoid, int> load_inverse(const Document& doc,
                                                           const NamedSemigroupoid& ns,
                                                           std::ostream& err) {
    auto det = detect_inverse(ns.table);
    if (auto* e = std::get_if<InverseDetectError>(&det)) {
        if (e->kind == InverseDetectError::Kind::NotRegular)
            err << ns.name << ": not regular (element " << ns.table.name(e->element)
                << " has no inverse)\n";
        else if (e->kind == InverseDetectError::Kind::NotUniqueInverse)
            err << ns.name << ": element " << ns.table.name(e->element) << " has "
                << e->inverses.size() << " inverses\n";
        else
            err << ns.name << ": inverse structure broken\n";
        return kExitInputError;
    }
    auto inv = std::get<InverseSemigroupoid>(det);
    if (const auto* gd = doc.graph_on(ns.name)) {
        std::map<std::string, int> vix;
        for (size_t i = 0; i < gd->vertices.size(); ++i)
            vix[gd->vertices[i]] = static_cast<int>(i);
        std::vector<int> src(ns.table.size(), kUndef), rng(ns.table.size(), kUndef);
        for (const auto& [el, v] : gd->src) src[ns.index.at(el)] = vix.at(v);
        for (const auto& [el, v] : gd->rng) rng[ns.index.at(el)] = vix.at(v);
        for (int a = 0; a < ns.table.size(); ++a)
            if (src[a] == kUndef || rng[a] == kUndef) {
                err << ns.name << ": graph block leaves element " << ns.table.name(a)
                    << " unmapped\n";
                return kExitInputError;
            }
        try {
            inv = make_inverse_with_graph(ns.table, src, rng,
                                          static_cast<int>(gd->vertices.size()), gd->vertices);
        } catch (const std::exception& ex) {
            err << ns.name << ": declared graph invalid: " << ex.what() << "\n";
            return kExitInputError;
        }
    }
    return inv;
}

inline std::variant<Preaction, int> load_action(const Document& doc, const std::string& name,
                                                const CliOptions& opt, std::ostream& out,
                                                Json* js, std::ostream& err) {
    const auto* ad = doc.action(name);
    if (!ad) {
        err << "no action named '" << name << "'\n";
        return kExitInputError;
    }
    auto actor_s = load_semigroupoid(doc, ad->actor, opt, out, js, err);
    if (auto* code = std::get_if<int>(&actor_s)) return *code;
    auto space_s = load_semigroupoid(doc, ad->space, opt, out, js, err);
    if (auto* code = std::get_if<int>(&space_s)) return *code;
    auto& actor_n = std::get<NamedSemigroupoid>(actor_s);
    auto& space_n = std::get<NamedSemigroupoid>(space_s);
    auto actor = load_inverse(doc, actor_n, err);
    if (auto* code = std::get_if<int>(&actor)) return *code;
    auto& inv = std::get<InverseSemigroupoid>(actor);

    Preaction p;
    p.kind = PreactionKind::Wedge;
    p.actor = inv;
    try {
        p.space = graph_default(space_n.table);
    } catch (const std::exception&) {
        err << ad->space << ": space is not categorical, cannot be graphed\n";
        return kExitInputError;
    }
    // anchor vertex symbols: resolved against a declared graph, or the unique
    // vertex when the canonical graphing is a single point
    std::map<std::string, int> vix;
    if (const auto* gd = doc.graph_on(ad->actor)) {
        for (size_t i = 0; i < gd->vertices.size(); ++i)
            vix[gd->vertices[i]] = static_cast<int>(i);
    }
    p.anchor.assign(space_n.table.size(), kUndef);
    for (const auto& [x, v] : ad->anchor) {
        int vid = kUndef;
        if (vix.count(v)) vid = vix.at(v);
        else if (inv.g.n_vertices == 1) vid = 0;
        if (vid == kUndef) {
            err << name << ": unknown actor vertex '" << v << "'\n";
            return kExitInputError;
        }
        p.anchor[space_n.index.at(x)] = vid;
    }
    for (int x = 0; x < space_n.table.size(); ++x)
        if (p.anchor[x] == kUndef) {
            err << name << ": anchor leaves " << space_n.table.name(x) << " unmapped\n";
            return kExitInputError;
        }
    p.theta.resize(inv.size());
    for (int a = 0; a < inv.size(); ++a)
        p.theta[a] = FiberedPartialBijection{inv.rng(a), inv.src(a), {}};
    for (const auto& [el, entries] : ad->theta) {
        auto& f = p.theta[actor_n.index.at(el)];
        for (const auto& [x, y] : entries)
            f.graph.push_back({space_n.index.at(x), space_n.index.at(y)});
        std::sort(f.graph.begin(), f.graph.end());
    }
    return p;
}

// --- subcommands -------------------------------------------------------------

inline int cmd_validate(const Document& doc, const CliOptions& opt, std::ostream& out,
                        Json* js, std::ostream& err) {
    int code = kExitOk;
    auto worst = [&](int c) { code = std::max(code, c); };
    std::map<std::string, NamedSemigroupoid> loaded;
    for (const auto& sd : doc.semigroupoids) {
        auto r = load_semigroupoid(doc, sd.name, opt, out, js, err);
        if (auto* c = std::get_if<int>(&r)) {
            worst(*c);
            continue;
        }
        loaded[sd.name] = std::get<NamedSemigroupoid>(r);
        if (js) (*js)["semigroupoids"][sd.name] = {{"valid", true}};
        else out << sd.name << ": valid semigroupoid (" << loaded[sd.name].table.size()
                 << " elements)\n";
    }
    for (const auto& gd : doc.graphs) {
        if (!loaded.count(gd.on)) continue;
        const auto& ns = loaded[gd.on];
        std::map<std::string, int> vix;
        for (size_t i = 0; i < gd.vertices.size(); ++i) vix[gd.vertices[i]] = static_cast<int>(i);
        GraphedSemigroupoid g;
        g.base = ns.table;
        g.n_vertices = static_cast<int>(gd.vertices.size());
        g.vertex_names = gd.vertices;
        g.vertex_tags.assign(g.n_vertices, VertexTag{VertexKind::Named, kUndef});
        g.src.assign(ns.table.size(), kUndef);
        g.rng.assign(ns.table.size(), kUndef);
        for (const auto& [el, v] : gd.src) g.src[ns.index.at(el)] = vix.at(v);
        for (const auto& [el, v] : gd.rng) g.rng[ns.index.at(el)] = vix.at(v);
        bool total = true;
        for (int a = 0; a < ns.table.size(); ++a)
            if (g.src[a] == kUndef || g.rng[a] == kUndef) total = false;
        if (!total) {
            if (js) (*js)["graphs"][gd.name] = {{"valid", false}};
            else out << gd.name << ": graphing leaves elements unmapped\n";
            worst(kExitViolation);
            continue;
        }
        auto rep = validate_graphed(g, opt.max_violations);
        if (js) (*js)["graphs"][gd.name] = {{"valid", rep.ok}};
        else out << gd.name << ": " << (rep.ok ? "valid graphing" : "graphing violates the laws")
                 << "\n";
        if (!rep.ok) worst(kExitViolation);
    }
    for (const auto& md : doc.maps) {
        if (!loaded.count(md.source) || !loaded.count(md.target)) continue;
        const auto& src = loaded[md.source];
        const auto& dst = loaded[md.target];
        Homomorphism h;
        h.map.assign(src.table.size(), kUndef);
        for (const auto& [a, b] : md.entries) h.map[src.index.at(a)] = dst.index.at(b);
        bool total = std::none_of(h.map.begin(), h.map.end(),
                                  [](int x) { return x == kUndef; });
        const bool ok = total && is_homomorphism(src.table, dst.table, h);
        if (js) (*js)["maps"][md.name] = {{"homomorphism", ok}};
        else out << md.name << ": " << (ok ? "homomorphism" : "NOT a homomorphism") << "\n";
        if (!ok) worst(kExitViolation);
    }
    for (const auto& ad : doc.actions) {
        auto r = load_action(doc, ad.name, opt, out, js, err);
        if (auto* c = std::get_if<int>(&r)) {
            worst(*c);
            continue;
        }
        auto rep = validate_preaction(std::get<Preaction>(r), opt.max_violations);
        if (js) {
            Json v = Json::array();
            for (const auto& viol : rep.violations) v.push_back(viol.axiom);
            (*js)["actions"][ad.name] = {{"valid", rep.ok},
                                         {"nondegenerate", rep.nondegenerate},
                                         {"violations", v}};
        } else {
            out << ad.name << ": " << (rep.ok ? "valid wedge-preaction" : "INVALID preaction");
            if (rep.ok) out << (rep.nondegenerate ? " (non-degenerate)" : " (degenerate)");
            out << "\n";
            for (const auto& viol : rep.violations) out << "  violated: " << viol.axiom << "\n";
        }
        if (!rep.ok) worst(kExitViolation);
    }
    for (const auto& cd : doc.congruences) {
        if (!loaded.count(cd.on)) continue;
        const auto& ns = loaded[cd.on];
        auto inv = load_inverse(doc, ns, err);
        if (auto* c = std::get_if<int>(&inv)) {
            worst(*c);
            continue;
        }
        std::vector<std::pair<int, int>> pairs;
        for (const auto& [a, b] : cd.pairs) pairs.push_back({ns.index.at(a), ns.index.at(b)});
        auto cc = congruence_closure(std::get<InverseSemigroupoid>(inv).g, pairs);
        const bool ok = std::holds_alternative<GraphedCongruence>(cc);
        if (js) (*js)["congruences"][cd.name] = {{"graphable", ok}};
        else out << cd.name << ": "
                 << (ok ? "generates a graphed congruence" : "pair has mismatched endpoints")
                 << "\n";
        if (!ok) worst(kExitViolation);
    }
    for (const auto& od : doc.orders) {
        if (!loaded.count(od.on)) continue;
        const auto& ns = loaded[od.on];
        auto inv = load_inverse(doc, ns, err);
        if (auto* c = std::get_if<int>(&inv)) {
            worst(*c);
            continue;
        }
        const auto& s = std::get<InverseSemigroupoid>(inv);
        std::vector<std::pair<int, int>> pairs;
        for (const auto& [a, b] : od.pairs) pairs.push_back({ns.index.at(a), ns.index.at(b)});
        auto pre = CompatiblePreorder::from_pairs(s.size(), pairs);
        // transitive closure of the declared pairs
        for (int k = 0; k < s.size(); ++k)
            for (int i = 0; i < s.size(); ++i)
                for (int j = 0; j < s.size(); ++j)
                    if (pre.rel[i][k] && pre.rel[k][j]) pre.rel[i][j] = 1;
        auto rep = validate_preorder(s, pre, opt.max_violations);
        if (js) {
            Json v = Json::array();
            for (const auto& viol : rep.violations) v.push_back(viol.axiom);
            (*js)["orders"][od.name] = {{"compatible", rep.ok}, {"violations", v}};
        } else {
            out << od.name << ": " << (rep.ok ? "compatible preorder" : "NOT compatible") << "\n";
            for (const auto& viol : rep.violations) out << "  violated: " << viol.axiom << "\n";
        }
        if (!rep.ok) worst(kExitViolation);
    }
    return code;
}

inline int cmd_analyze(const Document& doc, const std::vector<std::string>& names,
                       const CliOptions& opt, std::ostream& out, Json* js, std::ostream& err) {
    std::vector<std::string> targets = names;
    if (targets.empty())
        for (const auto& sd : doc.semigroupoids) targets.push_back(sd.name);
    int code = kExitOk;
    for (const auto& name : targets) {
        auto r = load_semigroupoid(doc, name, opt, out, js, err);
        if (auto* c = std::get_if<int>(&r)) return std::max(code, *c);
        const auto& ns = std::get<NamedSemigroupoid>(r);
        auto cat = is_categorical(ns.table);
        auto pred = structural_predicates(ns.table);
        Json j;
        j["elements"] = ns.table.size();
        j["categorical"] = cat.categorical;
        j["idempotent"] = pred.idempotent;
        j["left_s_unital"] = pred.left_s_unital;
        j["nondegenerate"] = pred.nondegenerate;
        j["lr_evidence"] = to_string(lr_associativity_evidence(ns.table));
        auto det = detect_inverse(ns.table);
        if (auto* inv = std::get_if<InverseSemigroupoid>(&det)) {
            const char* cls = "general";
            switch (classify(*inv)) {
                case SubClass::Group: cls = "group"; break;
                case SubClass::Groupoid: cls = "groupoid"; break;
                case SubClass::InverseSemigroup: cls = "inverse semigroup"; break;
                default: break;
            }
            j["inverse"] = true;
            j["class"] = cls;
            j["vertices"] = inv->g.n_vertices;
            Json idem = Json::array();
            for (int e : idempotents(*inv)) idem.push_back(ns.table.name(e));
            j["idempotents"] = idem;
            int order_pairs = 0;
            for (int a = 0; a < inv->size(); ++a)
                for (int b = 0; b < inv->size(); ++b)
                    if (a != b && inv->leq(a, b)) ++order_pairs;
            j["strict_order_pairs"] = order_pairs;
        } else {
            j["inverse"] = false;
        }
        if (js) (*js)["analyze"][name] = j;
        else {
            out << name << ": " << j["elements"].get<int>() << " elements"
                << (j["categorical"].get<bool>() ? ", categorical" : ", NOT categorical");
            if (j["inverse"].get<bool>())
                out << ", inverse (" << j["class"].get<std::string>() << ", "
                    << j["vertices"].get<int>() << " vertex/vertices, |E|="
                    << j["idempotents"].size() << ")";
            out << "\n  idempotent=" << pred.idempotent << " left_s_unital=" << pred.left_s_unital
                << " nondegenerate=" << pred.nondegenerate
                << " evidence=" << j["lr_evidence"].get<std::string>() << "\n";
            if (!cat.categorical && cat.right_witness) {
                const auto& w = *cat.right_witness;
                out << "  witness: right sets of " << ns.table.name(w.a) << " and "
                    << ns.table.name(w.b) << " share " << ns.table.name(w.common)
                    << " but differ at " << ns.table.name(w.separating) << "\n";
            }
        }
    }
    return code;
}

inline int cmd_graphings(const Document& doc, const std::string& name, const CliOptions& opt,
                         std::ostream& out, Json* js, std::ostream& err) {
    auto r = load_semigroupoid(doc, name, opt, out, js, err);
    if (auto* c = std::get_if<int>(&r)) return *c;
    const auto& ns = std::get<NamedSemigroupoid>(r);
    auto en = enumerate_graphings(ns.table, opt.cap_graphings);
    if (std::holds_alternative<NotCategorical>(en)) {
        err << name << ": not categorical, no graphings exist\n";
        return kExitViolation;
    }
    if (auto* cap = std::get_if<CapExceeded>(&en)) {
        err << name << ": " << cap->symbols << " dummy symbols exceed the cap " << cap->cap
            << "\n";
        return kExitInputError;
    }
    const auto& choices = std::get<std::vector<GraphingChoice>>(en);
    if (js) (*js)["graphings"][name] = {{"count", choices.size()}};
    else {
        out << name << ": " << choices.size() << " compatible graphing(s)\n";
        for (size_t i = 0; i < choices.size(); ++i) {
            auto g = graph(ns.table, choices[i]);
            out << "  choice " << i << ": " << std::get<GraphedSemigroupoid>(g).n_vertices
                << " vertices\n";
        }
    }
    return kExitOk;
}

inline int cmd_wagner_preston(const Document& doc, const std::string& name, const CliOptions& opt,
                              std::ostream& out, Json* js, std::ostream& err) {
    auto r = load_semigroupoid(doc, name, opt, out, js, err);
    if (auto* c = std::get_if<int>(&r)) return *c;
    auto inv = load_inverse(doc, std::get<NamedSemigroupoid>(r), err);
    if (auto* c = std::get_if<int>(&inv)) return *c;
    auto rep = representation(std::get<InverseSemigroupoid>(inv));
    const bool ok = rep.injective && rep.multiplicative && rep.definedness_equivalent;
    if (js)
        (*js)["wagner_preston"][name] = {{"injective", rep.injective},
                                         {"multiplicative", rep.multiplicative},
                                         {"definedness_equivalent", rep.definedness_equivalent},
                                         {"image_size", rep.image.size()}};
    else
        out << name << ": representation is " << (ok ? "a faithful embedding" : "BROKEN")
            << "; image has " << rep.image.size() << " partial bijections\n";
    return ok ? kExitOk : kExitViolation;
}

inline int cmd_semidirect(const Document& doc, const std::string& action, const CliOptions& opt,
                          std::ostream& out, Json* js, std::ostream& err) {
    auto r = load_action(doc, action, opt, out, js, err);
    if (auto* c = std::get_if<int>(&r)) return *c;
    auto& p = std::get<Preaction>(r);
    auto rep = validate_preaction(p, opt.max_violations);
    if (!rep.ok) {
        err << action << ": not a valid wedge-preaction (" << rep.violations.front().axiom
            << ")\n";
        return kExitInputError;
    }
    auto sd = semidirect_product(p);
    if (auto* na = std::get_if<NotAssociative>(&sd)) {
        // pair names for the witness
        std::vector<std::pair<int, int>> pairs;
        for (int a = 0; a < p.actor.size(); ++a)
            for (int x : p.theta[a].domain()) pairs.push_back({a, x});
        std::sort(pairs.begin(), pairs.end());
        auto pname = [&](int i) {
            return "(" + p.actor.name(pairs[i].first) + "," + p.space.base.name(pairs[i].second) +
                   ")";
        };
        if (js) {
            (*js)["semidirect"][action] = {
                {"associative", false},
                {"witness", {pname(na->triple[0]), pname(na->triple[1]), pname(na->triple[2])}},
                {"left_parse", na->lhs == kUndef ? "undefined" : pname(na->lhs)},
                {"right_parse", na->rhs == kUndef ? "undefined" : pname(na->rhs)}};
        } else {
            out << action << ": NOT associative at " << pname(na->triple[0]) << " "
                << pname(na->triple[1]) << " " << pname(na->triple[2]) << ": left parse ";
            out << (na->lhs == kUndef ? std::string("undefined") : pname(na->lhs));
            out << ", right parse ";
            out << (na->rhs == kUndef ? std::string("undefined") : pname(na->rhs)) << "\n";
        }
        return kExitViolation;
    }
    const auto& prod = std::get<SemidirectProduct>(sd);
    if (js)
        (*js)["semidirect"][action] = {{"associative", true},
                                       {"elements", prod.pairs.size()},
                                       {"vertices", prod.graphed.n_vertices}};
    else
        out << action << ": semidirect product has " << prod.pairs.size() << " elements over "
            << prod.graphed.n_vertices << " vertices\n";
    return kExitOk;
}

inline void print_table(const ExelSemigroupoid& s, const std::string& name, std::ostream& out,
                        Json* js, const char* key) {
    if (js) {
        Json products = Json::array();
        Json elems = Json::array();
        for (int i = 0; i < s.size(); ++i) elems.push_back(s.name(i));
        for (int a = 0; a < s.size(); ++a)
            for (int b = 0; b < s.size(); ++b)
                if (s.defined(a, b))
                    products.push_back({s.name(a), s.name(b), s.name(s.at(a, b))});
        (*js)[key][name] = {{"elements", elems}, {"products", products}};
        return;
    }
    out << "semigroupoid " << name << " {\n  elements:";
    for (int i = 0; i < s.size(); ++i) out << " " << s.name(i);
    out << ";\n  products: ";
    bool first = true;
    for (int a = 0; a < s.size(); ++a)
        for (int b = 0; b < s.size(); ++b)
            if (s.defined(a, b)) {
                if (!first) out << ", ";
                first = false;
                out << s.name(a) << "*" << s.name(b) << "=" << s.name(s.at(a, b));
            }
    out << ";\n}\n";
}

inline int cmd_quotient(const Document& doc, const std::string& name, const std::string& cong,
                        const CliOptions& opt, std::ostream& out, Json* js, std::ostream& err) {
    auto r = load_semigroupoid(doc, name, opt, out, js, err);
    if (auto* c = std::get_if<int>(&r)) return *c;
    const auto& ns = std::get<NamedSemigroupoid>(r);
    auto inv = load_inverse(doc, ns, err);
    if (auto* c = std::get_if<int>(&inv)) return *c;
    const auto* cd = doc.congruence(cong);
    if (!cd || cd->on != name) {
        err << "no congruence named '" << cong << "' on " << name << "\n";
        return kExitInputError;
    }
    std::vector<std::pair<int, int>> pairs;
    for (const auto& [a, b] : cd->pairs) pairs.push_back({ns.index.at(a), ns.index.at(b)});
    auto cc = congruence_closure(std::get<InverseSemigroupoid>(inv).g, pairs);
    if (auto* ng = std::get_if<NotGraphable>(&cc)) {
        out << cong << ": pair (" << ns.table.name(ng->a) << "," << ns.table.name(ng->b)
            << ") has mismatched endpoints\n";
        return kExitViolation;
    }
    auto q = quotient(std::get<InverseSemigroupoid>(inv), std::get<GraphedCongruence>(cc));
    // grammar-compatible class names
    ExelSemigroupoid table = q.quotient.exel();
    for (int k = 0; k < table.size(); ++k)
        table.m.names[k] = "q_" + ns.table.name(q.class_rep[k]);
    print_table(table, name + "_mod_" + cong, out, js, "quotient");
    const auto purity = is_idempotent_pure(std::get<InverseSemigroupoid>(inv),
                                           std::get<GraphedCongruence>(cc));
    if (js) (*js)["quotient"][name + "_mod_" + cong]["idempotent_pure"] = purity.pure;
    else out << "# idempotent pure: " << (purity.pure ? "yes" : "no") << "\n";
    return kExitOk;
}

inline int cmd_germ(const Document& doc, const std::string& name, const std::string& order,
                    const CliOptions& opt, std::ostream& out, Json* js, std::ostream& err) {
    auto r = load_semigroupoid(doc, name, opt, out, js, err);
    if (auto* c = std::get_if<int>(&r)) return *c;
    const auto& ns = std::get<NamedSemigroupoid>(r);
    auto invr = load_inverse(doc, ns, err);
    if (auto* c = std::get_if<int>(&invr)) return *c;
    const auto& s = std::get<InverseSemigroupoid>(invr);
    CompatiblePreorder pre = canonical_order_relation(s);
    if (!order.empty()) {
        const auto* od = doc.order(order);
        if (!od || od->on != name) {
            err << "no order named '" << order << "' on " << name << "\n";
            return kExitInputError;
        }
        std::vector<std::pair<int, int>> pairs;
        for (const auto& [a, b] : od->pairs) pairs.push_back({ns.index.at(a), ns.index.at(b)});
        pre = CompatiblePreorder::from_pairs(s.size(), pairs);
        for (int k = 0; k < s.size(); ++k)
            for (int i = 0; i < s.size(); ++i)
                for (int j = 0; j < s.size(); ++j)
                    if (pre.rel[i][k] && pre.rel[k][j]) pre.rel[i][j] = 1;
        auto rep = validate_preorder(s, pre, opt.max_violations);
        if (!rep.ok) {
            out << order << ": not a compatible preorder (" << rep.violations.front().axiom
                << ")\n";
            return kExitViolation;
        }
    }
    auto q = quotient(s, germ_congruence(s, pre));
    ExelSemigroupoid table = q.quotient.exel();
    for (int k = 0; k < table.size(); ++k)
        table.m.names[k] = "g_" + ns.table.name(q.class_rep[k]);
    print_table(table, name + "_germ", out, js, "germ");
    bool is_gpd = true;
    for (int a = 0; a < q.quotient.size(); ++a)
        for (int b = 0; b < q.quotient.size(); ++b)
            if (a != b && q.quotient.leq(a, b)) is_gpd = false;
    if (js) (*js)["germ"][name + "_germ"]["groupoid"] = is_gpd;
    else out << "# groupoid: " << (is_gpd ? "yes" : "no") << "\n";
    return kExitOk;
}

inline int cmd_underlying(const Document& doc, const std::string& name, const CliOptions& opt,
                          std::ostream& out, Json* js, std::ostream& err) {
    auto r = load_semigroupoid(doc, name, opt, out, js, err);
    if (auto* c = std::get_if<int>(&r)) return *c;
    auto inv = load_inverse(doc, std::get<NamedSemigroupoid>(r), err);
    if (auto* c = std::get_if<int>(&inv)) return *c;
    auto u = underlying_groupoid(std::get<InverseSemigroupoid>(inv));
    print_table(u.groupoid.exel(), name + "_underlying", out, js, "underlying");
    if (!js) out << "# units: " << elt_list(u.groupoid.exel(), u.units) << "\n";
    return kExitOk;
}

inline int cmd_spectrum(const Document& doc, const std::string& name, const CliOptions& opt,
                        std::ostream& out, Json* js, std::ostream& err) {
    auto r = load_semigroupoid(doc, name, opt, out, js, err);
    if (auto* c = std::get_if<int>(&r)) return *c;
    auto inv = load_inverse(doc, std::get<NamedSemigroupoid>(r), err);
    if (auto* c = std::get_if<int>(&inv)) return *c;
    const auto& s = std::get<InverseSemigroupoid>(inv);
    if (s.g.n_vertices != 1) {
        err << name << ": idempotents form a semilattice only for inverse semigroups\n";
        return kExitInputError;
    }
    SigmaOrderedSemigroup sg;
    try {
        std::vector<std::vector<char>> sub(s.size(), std::vector<char>(s.size(), 0));
        for (int i = 0; i < s.size(); ++i) sub[i][i] = 1;
        sg = make_sigma(s, sub);
    } catch (const std::exception& ex) {
        err << name << ": " << ex.what() << "\n";
        return kExitInputError;
    }
    auto esl = idempotent_semilattice(sg);
    auto omega = ultrafilters(esl.e);
    if (js) {
        Json filters = Json::array();
        for (const auto& f : omega.ultrafilters) {
            Json one = Json::array();
            for (int i : f) one.push_back(esl.e.name(i));
            filters.push_back(one);
        }
        (*js)["spectrum"][name] = {{"idempotents", esl.e.size()}, {"ultrafilters", filters}};
    } else {
        out << name << ": |E|=" << esl.e.size() << ", " << omega.size() << " ultrafilter(s)\n";
        for (const auto& f : omega.ultrafilters) {
            out << "  {";
            for (size_t i = 0; i < f.size(); ++i) out << (i ? " " : "") << esl.e.name(f[i]);
            out << "}\n";
        }
    }
    return kExitOk;
}

inline int cmd_kb(const Document& doc, const std::string& name, const CliOptions& opt,
                  std::ostream& out, Json* js, std::ostream& err) {
    auto r = load_semigroupoid(doc, name, opt, out, js, err);
    if (auto* c = std::get_if<int>(&r)) return *c;
    auto inv = load_inverse(doc, std::get<NamedSemigroupoid>(r), err);
    if (auto* c = std::get_if<int>(&inv)) return *c;
    auto kbr = kb(std::get<InverseSemigroupoid>(inv), opt.cap_bisections);
    if (auto* cap = std::get_if<BisectionCountCap>(&kbr)) {
        err << name << ": bisection count exceeds cap " << cap->cap << "\n";
        return kExitInputError;
    }
    const auto& k = std::get<KBResult>(kbr);
    auto sig = validate_sigma(k.sigma, opt.max_violations);
    if (js)
        (*js)["kb"][name] = {{"bisections", k.bisections.size()}, {"sigma_ordered", sig.ok}};
    else
        out << name << ": " << k.bisections.size() << " bisections; sigma axioms "
            << (sig.ok ? "hold" : "FAIL") << "\n";
    return sig.ok ? kExitOk : kExitViolation;
}

inline int cmd_p(const Document& doc, const std::string& name, const std::string& order,
                 const CliOptions& opt, std::ostream& out, Json* js, std::ostream& err) {
    auto r = load_semigroupoid(doc, name, opt, out, js, err);
    if (auto* c = std::get_if<int>(&r)) return *c;
    const auto& ns = std::get<NamedSemigroupoid>(r);
    auto inv = load_inverse(doc, ns, err);
    if (auto* c = std::get_if<int>(&inv)) return *c;
    const auto& s = std::get<InverseSemigroupoid>(inv);
    SigmaOrderedSemigroup sg;
    if (order.empty()) {
        auto kbr = kb(s, opt.cap_bisections);
        if (std::holds_alternative<BisectionCountCap>(kbr)) {
            err << name << ": bisection cap exceeded\n";
            return kExitInputError;
        }
        sg = std::get<KBResult>(kbr).sigma;
    } else {
        const auto* od = doc.order(order);
        if (!od || od->on != name) {
            err << "no order named '" << order << "' on " << name << "\n";
            return kExitInputError;
        }
        if (s.g.n_vertices != 1) {
            err << name << ": extrinsic orders require an inverse semigroup\n";
            return kExitInputError;
        }
        std::vector<std::vector<char>> sub(s.size(), std::vector<char>(s.size(), 0));
        for (int i = 0; i < s.size(); ++i) sub[i][i] = 1;
        for (const auto& [a, b] : od->pairs) sub[ns.index.at(a)][ns.index.at(b)] = 1;
        for (int k2 = 0; k2 < s.size(); ++k2)
            for (int i = 0; i < s.size(); ++i)
                for (int j = 0; j < s.size(); ++j)
                    if (sub[i][k2] && sub[k2][j]) sub[i][j] = 1;
        try {
            sg = make_sigma(s, sub);
        } catch (const std::exception& ex) {
            err << name << ": " << ex.what() << "\n";
            return kExitInputError;
        }
    }
    auto sig = validate_sigma(sg, opt.max_violations);
    if (!sig.ok) {
        out << name << ": sigma axioms fail (" << sig.failures.front().axiom << ")\n";
        return kExitViolation;
    }
    auto pf = p_functor(sg);
    print_table(pf.result.exel(), name + "_p", out, js, "p");
    if (js) (*js)["p"][name + "_p"]["vertices"] = pf.result.g.n_vertices;
    else out << "# vertices (ultrafilters): " << pf.result.g.n_vertices << "\n";
    return kExitOk;
}

inline int cmd_roundtrip(const Document& doc, const std::string& name, const CliOptions& opt,
                         std::ostream& out, Json* js, std::ostream& err) {
    auto r = load_semigroupoid(doc, name, opt, out, js, err);
    if (auto* c = std::get_if<int>(&r)) return *c;
    auto inv = load_inverse(doc, std::get<NamedSemigroupoid>(r), err);
    if (auto* c = std::get_if<int>(&inv)) return *c;
    const auto& s = std::get<InverseSemigroupoid>(inv);
    auto z = zeta(s, opt.cap_bisections);
    auto kp = kappa(z.kbr.sigma, opt.cap_bisections);
    const bool ok = z.iso && kp.iso && kp.order_iso;
    if (js)
        (*js)["roundtrip"][name] = {{"zeta_iso", z.iso},
                                    {"zeta_elements", s.size()},
                                    {"kappa_iso", kp.iso && kp.order_iso},
                                    {"kappa_elements", z.kbr.bisections.size()}};
    else
        out << "zeta: " << (z.iso ? "iso" : "NOT iso") << " (" << s.size() << " elements); kappa: "
            << (kp.iso && kp.order_iso ? "iso" : "NOT iso") << " (" << z.kbr.bisections.size()
            << " elements)\n";
    return ok ? kExitOk : kExitViolation;
}

inline int cmd_iso(const Document& doc, const std::string& a, const std::string& b,
                   const CliOptions& opt, std::ostream& out, Json* js, std::ostream& err) {
    auto ra = load_semigroupoid(doc, a, opt, out, js, err);
    if (auto* c = std::get_if<int>(&ra)) return *c;
    auto rb = load_semigroupoid(doc, b, opt, out, js, err);
    if (auto* c = std::get_if<int>(&rb)) return *c;
    std::optional<std::vector<int>> f;
    try {
        f = find_isomorphism(std::get<NamedSemigroupoid>(ra).table,
                             std::get<NamedSemigroupoid>(rb).table, opt.cap_iso);
    } catch (const std::exception& ex) {
        err << ex.what() << "\n";
        return kExitInputError;
    }
    if (js) (*js)["iso"] = {{"a", a}, {"b", b}, {"isomorphic", f.has_value()}};
    else out << a << " and " << b << " are " << (f ? "isomorphic" : "NOT isomorphic") << "\n";
    return f ? kExitOk : kExitViolation;
}

}  // namespace cli

/// Dispatches one subcommand over a parsed document.
inline int run_command(const std::string& cmd, const std::vector<std::string>& args,
                       const Document& doc, const CliOptions& opt, std::ostream& out,
                       std::ostream& err) {
    cli::Json js;
    cli::Json* jp = opt.json ? &js : nullptr;
    int code = cli::kExitInputError;
    auto need = [&](size_t k) {
        if (args.size() >= k) return true;
        err << cmd << ": missing argument(s)\n";
        return false;
    };
    if (cmd == "validate") {
        code = cli::cmd_validate(doc, opt, out, jp, err);
    } else if (cmd == "analyze") {
        code = cli::cmd_analyze(doc, args, opt, out, jp, err);
    } else if (cmd == "graphings") {
        if (need(1)) code = cli::cmd_graphings(doc, args[0], opt, out, jp, err);
    } else if (cmd == "wagner-preston") {
        if (need(1)) code = cli::cmd_wagner_preston(doc, args[0], opt, out, jp, err);
    } else if (cmd == "semidirect") {
        if (need(1)) code = cli::cmd_semidirect(doc, args[0], opt, out, jp, err);
    } else if (cmd == "quotient") {
        if (need(2)) code = cli::cmd_quotient(doc, args[0], args[1], opt, out, jp, err);
    } else if (cmd == "germ") {
        if (need(1))
            code = cli::cmd_germ(doc, args[0], args.size() > 1 ? args[1] : "", opt, out, jp, err);
    } else if (cmd == "underlying") {
        if (need(1)) code = cli::cmd_underlying(doc, args[0], opt, out, jp, err);
    } else if (cmd == "spectrum") {
        if (need(1)) code = cli::cmd_spectrum(doc, args[0], opt, out, jp, err);
    } else if (cmd == "kb") {
        if (need(1)) code = cli::cmd_kb(doc, args[0], opt, out, jp, err);
    } else if (cmd == "p") {
        if (need(1))
            code = cli::cmd_p(doc, args[0], args.size() > 1 ? args[1] : "", opt, out, jp, err);
    } else if (cmd == "roundtrip") {
        if (need(1)) code = cli::cmd_roundtrip(doc, args[0], opt, out, jp, err);
    } else if (cmd == "iso") {
        if (need(2)) code = cli::cmd_iso(doc, args[0], args[1], opt, out, jp, err);
    } else {
        err << "unknown command '" << cmd << "'\n";
    }
    if (opt.json) out << js.dump(2) << "\n";
    return code;
}

}  // namespace sgpd

#endif  // SGPD_CLI_HPP
