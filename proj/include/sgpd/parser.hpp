#ifndef SGPD_PARSER_HPP
#define SGPD_PARSER_HPP

// The .sgpd description format: named semigroupoid tables, graphings, maps,
// actions, congruences and orders, in a line-oriented syntax with `#`
// comments. Parsing is deterministic with line/column error positions.

#include <map>
#include <sstream>

#include "core.hpp"

namespace sgpd {

struct SyntaxError {
    int line = 0, col = 0;
    std::string expected;
};
struct UnresolvedName {
    int line = 0, col = 0;
    std::string name;
};
struct DuplicateDefinition {
    int line = 0, col = 0;
    std::string name;
};

using ParseError = std::variant<SyntaxError, UnresolvedName, DuplicateDefinition>;

inline std::string describe(const ParseError& e) {
    std::ostringstream os;
    if (auto* s = std::get_if<SyntaxError>(&e))
        os << "syntax error at " << s->line << ":" << s->col << ": expected " << s->expected;
    else if (auto* u = std::get_if<UnresolvedName>(&e))
        os << "unresolved name '" << u->name << "' at " << u->line << ":" << u->col;
    else if (auto* d = std::get_if<DuplicateDefinition>(&e))
        os << "duplicate definition '" << d->name << "' at " << d->line << ":" << d->col;
    return os.str();
}

// --- document model ----------------------------------------------------------

struct SemigroupoidDecl {
    std::string name;
    std::vector<std::string> elements;
    std::vector<std::array<std::string, 3>> products;  // a*b=c

    bool operator==(const SemigroupoidDecl&) const = default;
};

struct GraphDecl {
    std::string name, on;
    std::vector<std::string> vertices;
    std::vector<std::pair<std::string, std::string>> src, rng;  // element -> vertex

    bool operator==(const GraphDecl&) const = default;
};

struct MapDecl {
    std::string name, source, target;
    std::vector<std::pair<std::string, std::string>> entries;

    bool operator==(const MapDecl&) const = default;
};

struct ActionDecl {
    std::string name, actor, space;
    std::vector<std::pair<std::string, std::string>> anchor;  // space elt -> vertex
    std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> theta;

    bool operator==(const ActionDecl&) const = default;
};

struct CongruenceDecl {
    std::string name, on;
    std::vector<std::pair<std::string, std::string>> pairs;  // a~b

    bool operator==(const CongruenceDecl&) const = default;
};

struct OrderDecl {
    std::string name, on;
    std::vector<std::pair<std::string, std::string>> pairs;  // a<=b

    bool operator==(const OrderDecl&) const = default;
};

struct Document {
    std::vector<SemigroupoidDecl> semigroupoids;
    std::vector<GraphDecl> graphs;
    std::vector<MapDecl> maps;
    std::vector<ActionDecl> actions;
    std::vector<CongruenceDecl> congruences;
    std::vector<OrderDecl> orders;

    bool operator==(const Document&) const = default;

    const SemigroupoidDecl* semigroupoid(const std::string& n) const {
        for (const auto& s : semigroupoids)
            if (s.name == n) return &s;
        return nullptr;
    }
    const GraphDecl* graph_on(const std::string& sgpd) const {
        for (const auto& g : graphs)
            if (g.on == sgpd) return &g;
        return nullptr;
    }
    const ActionDecl* action(const std::string& n) const {
        for (const auto& a : actions)
            if (a.name == n) return &a;
        return nullptr;
    }
    const CongruenceDecl* congruence(const std::string& n) const {
        for (const auto& c : congruences)
            if (c.name == n) return &c;
        return nullptr;
    }
    const OrderDecl* order(const std::string& n) const {
        for (const auto& o : orders)
            if (o.name == n) return &o;
        return nullptr;
    }
    const MapDecl* map_decl(const std::string& n) const {
        for (const auto& m : maps)
            if (m.name == n) return &m;
        return nullptr;
    }
};

// --- tokenizer ----------------------------------------------------------------

namespace detail {

struct Token {
    enum class Kind { Ident, Punct, End } kind = Kind::End;
    std::string text;
    int line = 0, col = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return tok_; }
    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') bump();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                bump();
            } else {
                break;
            }
        }
        tok_ = Token{Token::Kind::End, "", line_, col_};
        if (pos_ >= text_.size()) return;
        const char c = text_[pos_];
        tok_.line = line_;
        tok_.col = col_;
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
            std::string id;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                id += text_[pos_];
                bump();
            }
            tok_.kind = Token::Kind::Ident;
            tok_.text = id;
            return;
        }
        tok_.kind = Token::Kind::Punct;
        if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
            tok_.text = "->";
            bump();
            bump();
        } else if (c == '<' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
            tok_.text = "<=";
            bump();
            bump();
        } else {
            tok_.text = std::string(1, c);
            bump();
        }
    }
    void bump() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& text_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

}  // namespace detail

// --- parser --------------------------------------------------------------------

class Parser {
public:
    explicit Parser(const std::string& text) : lex_(text) {}

    std::variant<Document, ParseError> run() {
        Document doc;
        while (lex_.peek().kind != detail::Token::Kind::End) {
            const auto kw = lex_.peek();
            if (kw.kind != detail::Token::Kind::Ident)
                return err("a block keyword", kw);
            if (kw.text == "semigroupoid") {
                if (auto e = parse_semigroupoid(doc)) return *e;
            } else if (kw.text == "graph") {
                if (auto e = parse_graph(doc)) return *e;
            } else if (kw.text == "map") {
                if (auto e = parse_map(doc)) return *e;
            } else if (kw.text == "action") {
                if (auto e = parse_action(doc)) return *e;
            } else if (kw.text == "congruence") {
                if (auto e = parse_congruence(doc)) return *e;
            } else if (kw.text == "order") {
                if (auto e = parse_order(doc)) return *e;
            } else {
                return err("semigroupoid/graph/map/action/congruence/order", kw);
            }
        }
        if (auto e = resolve(doc)) return *e;
        return doc;
    }

private:
    detail::Lexer lex_;

    ParseError err(const std::string& expected, const detail::Token& at) {
        return SyntaxError{at.line, at.col, expected};
    }

    std::optional<ParseError> expect_punct(const std::string& p) {
        auto t = lex_.next();
        if (t.kind != detail::Token::Kind::Punct || t.text != p) return err("'" + p + "'", t);
        return std::nullopt;
    }
    std::optional<ParseError> expect_keyword(const std::string& k) {
        auto t = lex_.next();
        if (t.kind != detail::Token::Kind::Ident || t.text != k) return err("'" + k + "'", t);
        return std::nullopt;
    }
    std::variant<std::string, ParseError> ident() {
        auto t = lex_.next();
        if (t.kind != detail::Token::Kind::Ident) return err("an identifier", t);
        return t.text;
    }
    bool peek_punct(const std::string& p) {
        return lex_.peek().kind == detail::Token::Kind::Punct && lex_.peek().text == p;
    }
    bool peek_ident(const std::string& k) {
        return lex_.peek().kind == detail::Token::Kind::Ident && lex_.peek().text == k;
    }

    // entries of the form `a OP b` separated by commas or whitespace, ending
    // at ';'
    std::optional<ParseError> pair_list(const std::string& op,
                                        std::vector<std::pair<std::string, std::string>>& out) {
        while (!peek_punct(";")) {
            auto a = ident();
            if (auto* e = std::get_if<ParseError>(&a)) return *e;
            if (auto e = expect_punct(op)) return e;
            auto b = ident();
            if (auto* e = std::get_if<ParseError>(&b)) return *e;
            out.push_back({std::get<std::string>(a), std::get<std::string>(b)});
            if (peek_punct(",")) lex_.next();
        }
        lex_.next();  // ';'
        return std::nullopt;
    }

    std::optional<ParseError> parse_semigroupoid(Document& doc) {
        lex_.next();  // keyword
        auto name = ident();
        if (auto* e = std::get_if<ParseError>(&name)) return *e;
        SemigroupoidDecl d;
        d.name = std::get<std::string>(name);
        if (auto e = expect_punct("{")) return e;
        if (auto e = expect_keyword("elements")) return e;
        if (auto e = expect_punct(":")) return e;
        while (!peek_punct(";")) {
            auto el = ident();
            if (auto* e = std::get_if<ParseError>(&el)) return *e;
            d.elements.push_back(std::get<std::string>(el));
        }
        lex_.next();
        if (peek_ident("products")) {
            lex_.next();
            if (auto e = expect_punct(":")) return e;
            while (!peek_punct(";")) {
                auto a = ident();
                if (auto* e = std::get_if<ParseError>(&a)) return *e;
                if (auto e = expect_punct("*")) return e;
                auto b = ident();
                if (auto* e = std::get_if<ParseError>(&b)) return *e;
                if (auto e = expect_punct("=")) return e;
                auto c = ident();
                if (auto* e = std::get_if<ParseError>(&c)) return *e;
                d.products.push_back({std::get<std::string>(a), std::get<std::string>(b),
                                      std::get<std::string>(c)});
                if (peek_punct(",")) lex_.next();
            }
            lex_.next();
        }
        if (auto e = expect_punct("}")) return e;
        doc.semigroupoids.push_back(std::move(d));
        return std::nullopt;
    }

    std::optional<ParseError> parse_graph(Document& doc) {
        lex_.next();
        GraphDecl d;
        auto name = ident();
        if (auto* e = std::get_if<ParseError>(&name)) return *e;
        d.name = std::get<std::string>(name);
        if (auto e = expect_keyword("on")) return e;
        auto on = ident();
        if (auto* e = std::get_if<ParseError>(&on)) return *e;
        d.on = std::get<std::string>(on);
        if (auto e = expect_punct("{")) return e;
        if (auto e = expect_keyword("vertices")) return e;
        if (auto e = expect_punct(":")) return e;
        while (!peek_punct(";")) {
            auto v = ident();
            if (auto* e = std::get_if<ParseError>(&v)) return *e;
            d.vertices.push_back(std::get<std::string>(v));
        }
        lex_.next();
        if (auto e = expect_keyword("s")) return e;
        if (auto e = expect_punct(":")) return e;
        if (auto e = pair_list("->", d.src)) return e;
        if (auto e = expect_keyword("r")) return e;
        if (auto e = expect_punct(":")) return e;
        if (auto e = pair_list("->", d.rng)) return e;
        if (auto e = expect_punct("}")) return e;
        doc.graphs.push_back(std::move(d));
        return std::nullopt;
    }

    std::optional<ParseError> parse_map(Document& doc) {
        lex_.next();
        MapDecl d;
        auto name = ident();
        if (auto* e = std::get_if<ParseError>(&name)) return *e;
        d.name = std::get<std::string>(name);
        if (auto e = expect_punct(":")) return e;
        auto src = ident();
        if (auto* e = std::get_if<ParseError>(&src)) return *e;
        d.source = std::get<std::string>(src);
        if (auto e = expect_punct("->")) return e;
        auto dst = ident();
        if (auto* e = std::get_if<ParseError>(&dst)) return *e;
        d.target = std::get<std::string>(dst);
        if (auto e = expect_punct("{")) return e;
        while (!peek_punct("}")) {
            auto a = ident();
            if (auto* e = std::get_if<ParseError>(&a)) return *e;
            if (auto e = expect_punct("->")) return e;
            auto b = ident();
            if (auto* e = std::get_if<ParseError>(&b)) return *e;
            d.entries.push_back({std::get<std::string>(a), std::get<std::string>(b)});
            if (peek_punct(",")) lex_.next();
        }
        lex_.next();
        doc.maps.push_back(std::move(d));
        return std::nullopt;
    }

    std::optional<ParseError> parse_action(Document& doc) {
        lex_.next();
        ActionDecl d;
        auto name = ident();
        if (auto* e = std::get_if<ParseError>(&name)) return *e;
        d.name = std::get<std::string>(name);
        if (auto e = expect_punct(":")) return e;
        auto actor = ident();
        if (auto* e = std::get_if<ParseError>(&actor)) return *e;
        d.actor = std::get<std::string>(actor);
        if (auto e = expect_keyword("on")) return e;
        auto space = ident();
        if (auto* e = std::get_if<ParseError>(&space)) return *e;
        d.space = std::get<std::string>(space);
        if (auto e = expect_punct("{")) return e;
        if (auto e = expect_keyword("anchor")) return e;
        if (auto e = expect_punct(":")) return e;
        if (auto e = pair_list("->", d.anchor)) return e;
        while (peek_ident("theta")) {
            lex_.next();
            auto a = ident();
            if (auto* e = std::get_if<ParseError>(&a)) return *e;
            if (auto e = expect_punct("{")) return e;
            std::vector<std::pair<std::string, std::string>> entries;
            while (!peek_punct("}")) {
                auto x = ident();
                if (auto* e = std::get_if<ParseError>(&x)) return *e;
                if (auto e = expect_punct("->")) return e;
                auto y = ident();
                if (auto* e = std::get_if<ParseError>(&y)) return *e;
                entries.push_back({std::get<std::string>(x), std::get<std::string>(y)});
                if (peek_punct(",")) lex_.next();
            }
            lex_.next();
            d.theta.push_back({std::get<std::string>(a), std::move(entries)});
        }
        if (auto e = expect_punct("}")) return e;
        doc.actions.push_back(std::move(d));
        return std::nullopt;
    }

    std::optional<ParseError> parse_congruence(Document& doc) {
        lex_.next();
        CongruenceDecl d;
        auto name = ident();
        if (auto* e = std::get_if<ParseError>(&name)) return *e;
        d.name = std::get<std::string>(name);
        if (auto e = expect_keyword("on")) return e;
        auto on = ident();
        if (auto* e = std::get_if<ParseError>(&on)) return *e;
        d.on = std::get<std::string>(on);
        if (auto e = expect_punct("{")) return e;
        while (!peek_punct("}")) {
            auto a = ident();
            if (auto* e = std::get_if<ParseError>(&a)) return *e;
            if (auto e = expect_punct("~")) return e;
            auto b = ident();
            if (auto* e = std::get_if<ParseError>(&b)) return *e;
            d.pairs.push_back({std::get<std::string>(a), std::get<std::string>(b)});
            if (peek_punct(",")) lex_.next();
        }
        lex_.next();
        doc.congruences.push_back(std::move(d));
        return std::nullopt;
    }

    std::optional<ParseError> parse_order(Document& doc) {
        lex_.next();
        OrderDecl d;
        auto name = ident();
        if (auto* e = std::get_if<ParseError>(&name)) return *e;
        d.name = std::get<std::string>(name);
        if (auto e = expect_keyword("on")) return e;
        auto on = ident();
        if (auto* e = std::get_if<ParseError>(&on)) return *e;
        d.on = std::get<std::string>(on);
        if (auto e = expect_punct("{")) return e;
        while (!peek_punct("}")) {
            auto a = ident();
            if (auto* e = std::get_if<ParseError>(&a)) return *e;
            if (auto e = expect_punct("<=")) return e;
            auto b = ident();
            if (auto* e = std::get_if<ParseError>(&b)) return *e;
            d.pairs.push_back({std::get<std::string>(a), std::get<std::string>(b)});
            if (peek_punct(",")) lex_.next();
        }
        lex_.next();
        doc.orders.push_back(std::move(d));
        return std::nullopt;
    }

    /// Name resolution: every referenced name must exist, all element and
    /// vertex symbols must be declared, and names must be unique per kind.
    std::optional<ParseError> resolve(const Document& doc) {
        std::map<std::string, int> names;
        auto dup = [&](const std::string& n) -> std::optional<ParseError> {
            if (names.count(n)) return DuplicateDefinition{0, 0, n};
            names[n] = 1;
            return std::nullopt;
        };
        auto has_element = [](const SemigroupoidDecl& s, const std::string& e) {
            return std::find(s.elements.begin(), s.elements.end(), e) != s.elements.end();
        };
        for (const auto& s : doc.semigroupoids) {
            if (auto e = dup(s.name)) return e;
            std::map<std::string, int> elems;
            for (const auto& el : s.elements) {
                if (elems.count(el)) return DuplicateDefinition{0, 0, s.name + "." + el};
                elems[el] = 1;
            }
            for (const auto& p : s.products)
                for (const auto& sym : p)
                    if (!elems.count(sym)) return UnresolvedName{0, 0, sym};
        }
        for (const auto& g : doc.graphs) {
            if (auto e = dup(g.name)) return e;
            const auto* s = doc.semigroupoid(g.on);
            if (!s) return UnresolvedName{0, 0, g.on};
            std::map<std::string, int> verts;
            for (const auto& v : g.vertices) verts[v] = 1;
            for (const auto& lists : {g.src, g.rng})
                for (const auto& [el, v] : lists) {
                    if (!has_element(*s, el)) return UnresolvedName{0, 0, el};
                    if (!verts.count(v)) return UnresolvedName{0, 0, v};
                }
        }
        for (const auto& m : doc.maps) {
            if (auto e = dup(m.name)) return e;
            const auto* src = doc.semigroupoid(m.source);
            const auto* dst = doc.semigroupoid(m.target);
            if (!src) return UnresolvedName{0, 0, m.source};
            if (!dst) return UnresolvedName{0, 0, m.target};
            for (const auto& [a, b] : m.entries) {
                if (!has_element(*src, a)) return UnresolvedName{0, 0, a};
                if (!has_element(*dst, b)) return UnresolvedName{0, 0, b};
            }
        }
        for (const auto& a : doc.actions) {
            if (auto e = dup(a.name)) return e;
            const auto* actor = doc.semigroupoid(a.actor);
            const auto* space = doc.semigroupoid(a.space);
            if (!actor) return UnresolvedName{0, 0, a.actor};
            if (!space) return UnresolvedName{0, 0, a.space};
            for (const auto& [x, v] : a.anchor)
                if (!has_element(*space, x)) return UnresolvedName{0, 0, x};
            for (const auto& [elt, entries] : a.theta) {
                if (!has_element(*actor, elt)) return UnresolvedName{0, 0, elt};
                for (const auto& [x, y] : entries) {
                    if (!has_element(*space, x)) return UnresolvedName{0, 0, x};
                    if (!has_element(*space, y)) return UnresolvedName{0, 0, y};
                }
            }
        }
        for (const auto& c : doc.congruences) {
            if (auto e = dup(c.name)) return e;
            const auto* s = doc.semigroupoid(c.on);
            if (!s) return UnresolvedName{0, 0, c.on};
            for (const auto& [a, b] : c.pairs) {
                if (!has_element(*s, a)) return UnresolvedName{0, 0, a};
                if (!has_element(*s, b)) return UnresolvedName{0, 0, b};
            }
        }
        for (const auto& o : doc.orders) {
            if (auto e = dup(o.name)) return e;
            const auto* s = doc.semigroupoid(o.on);
            if (!s) return UnresolvedName{0, 0, o.on};
            for (const auto& [a, b] : o.pairs) {
                if (!has_element(*s, a)) return UnresolvedName{0, 0, a};
                if (!has_element(*s, b)) return UnresolvedName{0, 0, b};
            }
        }
        return std::nullopt;
    }
};

inline std::variant<Document, ParseError> parse(const std::string& text) {
    return Parser(text).run();
}

// --- canonical printer -----------------------------------------------------------

/// Elements sorted lexicographically; products and entries sorted by symbol.
/// parse(print(doc)) reproduces the printed document exactly.
inline std::string print_document(const Document& doc) {
    std::ostringstream os;
    auto sorted = [](auto v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    for (auto s : doc.semigroupoids) {
        os << "semigroupoid " << s.name << " {\n  elements:";
        for (const auto& e : sorted(s.elements)) os << " " << e;
        os << ";\n";
        if (!s.products.empty()) {
            os << "  products: ";
            auto ps = sorted(s.products);
            for (size_t i = 0; i < ps.size(); ++i)
                os << (i ? ", " : "") << ps[i][0] << "*" << ps[i][1] << "=" << ps[i][2];
            os << ";\n";
        }
        os << "}\n";
    }
    for (auto g : doc.graphs) {
        os << "graph " << g.name << " on " << g.on << " {\n  vertices:";
        for (const auto& v : sorted(g.vertices)) os << " " << v;
        os << ";\n  s: ";
        auto ss = sorted(g.src);
        for (size_t i = 0; i < ss.size(); ++i)
            os << (i ? ", " : "") << ss[i].first << "->" << ss[i].second;
        os << ";\n  r: ";
        auto rs = sorted(g.rng);
        for (size_t i = 0; i < rs.size(); ++i)
            os << (i ? ", " : "") << rs[i].first << "->" << rs[i].second;
        os << ";\n}\n";
    }
    for (auto m : doc.maps) {
        os << "map " << m.name << " : " << m.source << " -> " << m.target << " {\n  ";
        auto es = sorted(m.entries);
        for (size_t i = 0; i < es.size(); ++i)
            os << (i ? ", " : "") << es[i].first << "->" << es[i].second;
        os << "\n}\n";
    }
    for (auto a : doc.actions) {
        os << "action " << a.name << " : " << a.actor << " on " << a.space << " {\n  anchor: ";
        auto as = sorted(a.anchor);
        for (size_t i = 0; i < as.size(); ++i)
            os << (i ? ", " : "") << as[i].first << "->" << as[i].second;
        os << ";\n";
        auto ts = a.theta;
        std::sort(ts.begin(), ts.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        for (auto& [elt, entries] : ts) {
            os << "  theta " << elt << " { ";
            auto es = sorted(entries);
            for (size_t i = 0; i < es.size(); ++i)
                os << (i ? ", " : "") << es[i].first << "->" << es[i].second;
            os << " }\n";
        }
        os << "}\n";
    }
    for (auto c : doc.congruences) {
        os << "congruence " << c.name << " on " << c.on << " { ";
        auto ps = sorted(c.pairs);
        for (size_t i = 0; i < ps.size(); ++i)
            os << (i ? ", " : "") << ps[i].first << "~" << ps[i].second;
        os << " }\n";
    }
    for (auto o : doc.orders) {
        os << "order " << o.name << " on " << o.on << " { ";
        auto ps = sorted(o.pairs);
        for (size_t i = 0; i < ps.size(); ++i)
            os << (i ? ", " : "") << ps[i].first << "<=" << ps[i].second;
        os << " }\n";
    }
    return os.str();
}

// --- elaboration into core structures ----------------------------------------------

struct Elaborated {
    PartialMagma magma;
    std::map<std::string, int> element_index;
};

inline std::variant<Elaborated, UnresolvedName> elaborate_semigroupoid(
    const SemigroupoidDecl& d) {
    Elaborated out;
    out.magma.table = PartialTable(static_cast<int>(d.elements.size()));
    out.magma.names = d.elements;
    for (size_t i = 0; i < d.elements.size(); ++i)
        out.element_index[d.elements[i]] = static_cast<int>(i);
    for (const auto& [a, b, c] : d.products) {
        out.magma.table.set(out.element_index.at(a), out.element_index.at(b),
                            out.element_index.at(c));
    }
    return out;
}

}  // namespace sgpd

#endif  // SGPD_PARSER_HPP
