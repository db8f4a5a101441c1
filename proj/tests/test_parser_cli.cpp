#include <doctest.h>

#include <fstream>
#include <sgpd/cli.hpp>
#include <sstream>

using namespace sgpd;

namespace {

std::string read_data(const std::string& file) {
    std::ifstream in(std::string(SGPD_DATA_DIR) + "/" + file);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Document parse_ok(const std::string& text) {
    auto r = parse(text);
    if (auto* e = std::get_if<ParseError>(&r)) FAIL(describe(*e));
    return std::get<Document>(r);
}

struct CliRun {
    int code;
    std::string out, err;
};

CliRun run(const std::string& cmd, const std::vector<std::string>& args, const Document& doc,
           CliOptions opt = {}) {
    std::ostringstream out, err;
    int code = run_command(cmd, args, doc, opt, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("parsing the golden files") {
    auto nc = parse_ok(read_data("noncategorical.sgpd"));
    REQUIRE(nc.semigroupoids.size() == 1);
    CHECK(nc.semigroupoids[0].name == "nc");
    CHECK(nc.semigroupoids[0].elements.size() == 5);
    CHECK(nc.semigroupoids[0].products.size() == 6);

    auto t = parse_ok(read_data("semidirect_t.sgpd"));
    CHECK(t.semigroupoids.size() == 2);
    CHECK(t.graphs.size() == 1);
    REQUIRE(t.actions.size() == 1);
    CHECK(t.actions[0].theta.size() == 3);

    auto q = parse_ok(read_data("quotient_remark.sgpd"));
    CHECK(q.congruences.size() == 1);
    CHECK(q.orders.size() == 2);
}

TEST_CASE("empty input gives an empty document") {
    auto doc = parse_ok("  # nothing here\n");
    CHECK(doc == Document{});
}

TEST_CASE("undeclared symbols are reported") {
    auto r = parse("semigroupoid s { elements: a b; products: a*b=c; }");
    auto* e = std::get_if<ParseError>(&r);
    REQUIRE(e != nullptr);
    auto* u = std::get_if<UnresolvedName>(e);
    REQUIRE(u != nullptr);
    CHECK(u->name == "c");
}

TEST_CASE("duplicate names are reported") {
    auto r = parse(
        "semigroupoid s { elements: a; }\n"
        "semigroupoid s { elements: b; }\n");
    auto* e = std::get_if<ParseError>(&r);
    REQUIRE(e != nullptr);
    CHECK(std::holds_alternative<DuplicateDefinition>(*e));
}

TEST_CASE("syntax errors carry line and column") {
    auto r = parse("semigroupoid s {\n  elements a b;\n}");
    auto* e = std::get_if<ParseError>(&r);
    REQUIRE(e != nullptr);
    auto* s = std::get_if<SyntaxError>(e);
    REQUIRE(s != nullptr);
    CHECK(s->line == 2);
    CHECK(s->expected == "':'");
}

TEST_CASE("truncated input fails cleanly") {
    for (const std::string text :
         {"semigroupoid s { elements: a", "graph g on", "action a : x on", "order o on s {",
          "semigroupoid s { elements: a; products: a*", "map m : a ->"}) {
        auto r = parse(text);
        CHECK(std::holds_alternative<ParseError>(r));
    }
}

TEST_CASE("printing is canonical and parse-stable") {
    for (const std::string file :
         {"i2.sgpd", "pair2.sgpd", "noncategorical.sgpd", "semidirect_t.sgpd",
          "quotient_remark.sgpd", "defect_triples.sgpd"}) {
        auto doc = parse_ok(read_data(file));
        const auto printed = print_document(doc);
        auto canonical = parse_ok(printed);
        // on canonical-form documents, parse then print is the identity
        CHECK(parse_ok(print_document(canonical)) == canonical);
        CHECK(print_document(canonical) == printed);
    }
}

TEST_CASE("cli validate: intact and defective files") {
    auto ok = run("validate", {}, parse_ok(read_data("i2.sgpd")));
    CHECK(ok.code == 0);
    auto bad = run("validate", {}, parse_ok(read_data("defect_triples.sgpd")));
    CHECK(bad.code == 1);
    CHECK(bad.out.find("NOT a semigroupoid") != std::string::npos);
    CHECK(bad.out.find("failed:") != std::string::npos);
}

TEST_CASE("cli analyze names the non-categorical witness") {
    auto r = run("analyze", {}, parse_ok(read_data("noncategorical.sgpd")));
    CHECK(r.code == 0);
    CHECK(r.out.find("NOT categorical") != std::string::npos);
    CHECK(r.out.find("share x") != std::string::npos);
}

TEST_CASE("cli semidirect reports the witness triple with both parses") {
    auto r = run("semidirect", {"act"}, parse_ok(read_data("semidirect_t.sgpd")));
    CHECK(r.code == 1);
    CHECK(r.out.find("(1,t) (g,u) (1,t)") != std::string::npos);
    CHECK(r.out.find("left parse (g,u)") != std::string::npos);
    CHECK(r.out.find("right parse (g,0)") != std::string::npos);
}

TEST_CASE("cli quotient, germ, underlying, spectrum") {
    auto doc = parse_ok(read_data("quotient_remark.sgpd"));
    auto q = run("quotient", {"E", "collapse"}, doc);
    CHECK(q.code == 0);
    CHECK(q.out.find("idempotent pure: yes") != std::string::npos);

    auto g = run("germ", {"E"}, doc);
    CHECK(g.code == 0);
    CHECK(g.out.find("groupoid: yes") != std::string::npos);

    // the reflexive-only order keeps all classes apart
    auto g2 = run("germ", {"E", "trivial"}, doc);
    CHECK(g2.code == 0);
    CHECK(g2.out.find("groupoid: no") != std::string::npos);

    auto i2 = parse_ok(read_data("i2.sgpd"));
    auto u = run("underlying", {"I2"}, i2);
    CHECK(u.code == 0);
    CHECK(u.out.find("units:") != std::string::npos);

    // E(I2) has two minimal nonzero idempotents, so two ultrafilters
    auto sp = run("spectrum", {"I2"}, i2);
    CHECK(sp.code == 0);
    CHECK(sp.out.find("|E|=4") != std::string::npos);
    CHECK(sp.out.find("2 ultrafilter") != std::string::npos);
}

TEST_CASE("cli kb, p and roundtrip") {
    auto i2 = parse_ok(read_data("i2.sgpd"));
    auto kbr = run("kb", {"I2"}, i2);
    CHECK(kbr.code == 0);
    CHECK(kbr.out.find("8 bisections") != std::string::npos);

    auto p = run("p", {"I2"}, i2);
    CHECK(p.code == 0);
    CHECK(p.out.find("vertices (ultrafilters): 1") != std::string::npos);

    // reconstruction from a declared extrinsic order
    auto remark = parse_ok(read_data("quotient_remark.sgpd"));
    auto pl2 = run("p", {"L2", "tv"}, remark);
    CHECK(pl2.code == 0);
    CHECK(pl2.out.find("vertices (ultrafilters): 1") != std::string::npos);
    // the reflexive-only order on E has no minimum, so the axioms fail
    auto pe = run("p", {"E", "trivial"}, remark);
    CHECK(pe.code == 1);
    CHECK(pe.out.find("sigma axioms fail") != std::string::npos);

    auto rt = run("roundtrip", {"I2"}, i2);
    CHECK(rt.code == 0);
    CHECK(rt.out.find("zeta: iso (7 elements); kappa: iso (8 elements)") != std::string::npos);
}

TEST_CASE("cli wagner-preston and graphings") {
    auto i2 = parse_ok(read_data("i2.sgpd"));
    auto wp = run("wagner-preston", {"I2"}, i2);
    CHECK(wp.code == 0);
    CHECK(wp.out.find("7 partial bijections") != std::string::npos);
    auto gr = run("graphings", {"I2"}, i2);
    CHECK(gr.code == 0);
    CHECK(gr.out.find("1 compatible graphing") != std::string::npos);
}

TEST_CASE("cli iso compares named tables") {
    auto doc = parse_ok(read_data("pair2.sgpd") + read_data("i2.sgpd"));
    auto same = run("iso", {"pair2", "pair2"}, doc);
    CHECK(same.code == 0);
    auto diff = run("iso", {"pair2", "I2"}, doc);
    CHECK(diff.code == 1);
}

TEST_CASE("cli exit code 2 on unknown names") {
    auto doc = parse_ok(read_data("i2.sgpd"));
    CHECK(run("analyze", {"nope"}, doc).code == 2);
    CHECK(run("quotient", {"I2", "nope"}, doc).code == 2);
    CHECK(run("bogus", {}, doc).code == 2);
}

TEST_CASE("json reports are deterministic") {
    CliOptions opt;
    opt.json = true;
    auto doc = parse_ok(read_data("quotient_remark.sgpd"));
    auto a = run("validate", {}, doc, opt);
    auto b = run("validate", {}, doc, opt);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\"actions\"") != std::string::npos);
    auto j = nlohmann::json::parse(a.out);
    CHECK(j["actions"]["act"]["valid"].get<bool>());
}
