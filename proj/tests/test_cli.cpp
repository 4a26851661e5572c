#include "doctest.h"

#include "cli.hpp"
#include "lieforge/catalog.hpp"
#include "lieforge/io.hpp"
#include "support/generators.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace lieforge;
namespace t = lieforge::testing;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run lf(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& content)
{
    const auto path = std::filesystem::temp_directory_path() / ("lieforge_test_" + name);
    std::ofstream(path) << content;
    return path.string();
}

bool has_line(const std::string& text, const std::string& line)
{
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);)
        if (l == line)
            return true;
    return false;
}

const char* bad_jacobi = "lieforge/1\nalgebra\n  dim 3\n  bracket 1 2 3:1\n  bracket 1 3 1:1\nend\n";

}  // namespace

TEST_CASE("parse errors name the byte offset and the field")
{
    const std::string text = "lieforge/1\nalgebra\ndim 3\nbracket 1 2 3:1\nbracket 1 3 1:x\nend\n";
    try {
        parse_algebra(text);
        FAIL("parsed");
    } catch (const ParseError& err) {
        CHECK(err.offset() == text.find(":x") + 1);
        CHECK(err.field() == "algebra.bracket.value");
        CHECK(std::string(err.what()).find("byte 55") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_algebra("lieforge/2\n"), ParseError);
    CHECK_THROWS_AS(parse_algebra("lieforge/1\nalgebra\ndim 3\nbracket 2 1 3:1\nend\n"), ParseError);
    CHECK_THROWS_AS(parse_algebra("lieforge/1\nalgebra\ndim 3\nbracket 1 4 3:1\nend\n"), ParseError);
    CHECK_THROWS_AS(parse_algebra("lieforge/1\nalgebra\ndim 3\n"), ParseError);

    auto r = lf({"check", "jacobi", "--algebra", write_temp("bad.lf", text)});
    CHECK(r.code == 2);
    CHECK(r.err.find("byte 55 (field algebra.bracket.value)") != std::string::npos);
}

TEST_CASE("inline expressions")
{
    const auto labels = LieAlgebra::default_labels(5);
    CHECK(parse_vector_expr("e3 + 1/2*e5", labels) == Vector{0, 0, 1, 0, Scalar(1, 2)});
    CHECK(parse_vector_expr("0,0,1,0,-2", labels) == Vector{0, 0, 1, 0, -2});
    CHECK(parse_vector_expr("e3* - e5*", labels) == Vector{0, 0, 1, 0, -1});
    CHECK(parse_vector_expr("0", labels).is_zero());
    CHECK_THROWS_AS(parse_vector_expr("e9", labels), ParseError);

    const KForm w = parse_two_form_expr("e1^e2 - 1/2*e3^e4", labels);
    CHECK(w.coefficient({0, 1}) == 1);
    CHECK(w.coefficient({2, 3}) == Scalar(-1, 2));
    CHECK(parse_two_form_expr("e2^e1", labels).coefficient({0, 1}) == -1);

    CHECK(parse_map_expr("diag:1/2,1/2,1", 3) == Matrix::diagonal(std::vector<Scalar>{Scalar(1, 2), Scalar(1, 2), 1}));
    CHECK(parse_map_expr("matrix:0,-1;1,0", 2) == Matrix::from_rows({{0, -1}, {1, 0}}));
    CHECK(parse_map_expr("id", 2) == Matrix::identity(2));
    CHECK_THROWS_AS(parse_map_expr("diag:1,2", 3), ParseError);

    CHECK(format_form(w, labels) == "e1*^e2* - 1/2*e3*^e4*");
    CHECK(format_form(w, labels, WedgeConvention::Paper) == "-e1*^e2* + 1/2*e3*^e4*");
}

TEST_CASE("algebra files round-trip")
{
    for (const auto& name : builtin_names()) {
        const auto& g = builtin(name).algebra;
        CHECK(parse_algebra(write_algebra(g)) == g);
    }
    t::Rng rng(401);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = t::random_lie_algebra(rng, static_cast<std::size_t>(t::small_int(rng, 1, 6)));
        CHECK(parse_algebra(write_algebra(g)) == g);
    }
}

TEST_CASE("command output reads back as input")
{
    for (const auto& name : builtin_names()) {
        auto r = lf({"builtin", name});
        REQUIRE(r.code == 0);
        const ParsedDocument doc = parse_document(r.out);
        const auto& b = builtin(name);
        REQUIRE(doc.algebra);
        CHECK(*doc.algebra == b.algebra);
        if (b.sasakian) {
            REQUIRE(doc.sasakian);
            CHECK(doc.sasakian->xi == b.sasakian->xi);
            CHECK(doc.sasakian->alpha == b.sasakian->alpha);
            CHECK(doc.sasakian->phi == b.sasakian->phi);
        }
        if (b.kahler) {
            REQUIRE(doc.kahler);
            CHECK(doc.kahler->J == b.kahler->J);
            CHECK(doc.kahler->omega == b.kahler->omega);
        }
    }

    // The paper convention changes only printed expressions.
    auto paper = lf({"builtin", "d4half", "--wedge-convention", "paper"});
    const ParsedDocument doc = parse_document(paper.out);
    REQUIRE(doc.kahler);
    CHECK(doc.kahler->omega == builtin("d4half").kahler->omega);
    CHECK(paper.out.find("omega_expr -e1*^e2* + e3*^e4*") != std::string::npos);
}

TEST_CASE("check commands")
{
    auto s = lf({"check", "sasakian", "--builtin", "h3"});
    CHECK(s.code == 0);
    CHECK(has_line(s.out, "verdict pass"));

    auto c = lf({"check", "contact", "--builtin", "h3", "--form", "e3"});
    CHECK(c.code == 0);
    CHECK(has_line(c.out, "info reeb e3"));

    auto j = lf({"check", "jacobi", "--algebra", write_temp("jacobi.lf", bad_jacobi)});
    CHECK(j.code == 1);
    CHECK(has_line(j.out, "verdict fail"));
    CHECK(has_line(j.out, "  indices 1 2 3"));

    auto k = lf({"check", "kahler", "--builtin", "d4half"});
    CHECK(k.code == 0);
    auto f = lf({"check", "frobenius", "--builtin", "d4half"});
    CHECK(f.code == 0);
    for (const char* name : {"g0", "g5"})
        CHECK(lf({"check", "sasakian", "--builtin", name}).code == 0);

    auto der = lf({"check", "derivation", "--builtin", "h3", "--map", "id"});
    CHECK(der.code == 1);
    CHECK(has_line(der.out, "  indices 1 2"));

    auto paper = lf({"check", "contact", "--builtin", "h3", "--form", "e3", "--wedge-convention", "paper"});
    CHECK(paper.code == c.code);
}

TEST_CASE("usage errors exit with 2")
{
    CHECK(lf({}).code == 2);
    CHECK(lf({"builtin", "nope"}).code == 2);
    CHECK(lf({"builtin", "nope"}).err.find("h3, d4half, g0, g5") != std::string::npos);
    CHECK(lf({"check", "sasakian"}).code == 2);
    CHECK(lf({"check", "contact", "--builtin", "h3", "--form", "e7"}).code == 2);
    CHECK(lf({"check", "sasakian", "--builtin", "h3", "--output", "xml"}).code == 2);
    CHECK(lf({"check", "jacobi", "--algebra", "/nonexistent/file.lf"}).code == 2);
}

TEST_CASE("extend commands")
{
    auto d = lf({"extend", "derivation", "--builtin", "h3", "--map", "diag:1/2,1/2,1"});
    CHECK(d.code == 0);
    CHECK(same_structure(*parse_document(d.out).algebra, builtin("d4half").algebra));

    auto r = lf({"extend", "reversed", "--builtin", "h3", "--form", "e3", "--map", "diag:1/2,1/2,1"});
    CHECK(r.code == 0);
    CHECK(same_structure(*parse_document(r.out).algebra, builtin("g5").algebra));

    auto c = lf({"extend", "central", "--builtin", "h3", "--two-form", "0"});
    CHECK(c.code == 0);
    CHECK(has_line(c.out, "info central e4"));
    CHECK(parse_document(c.out).algebra->dim() == 4);

    auto bad = lf({"extend", "central", "--builtin", "d4half", "--two-form", "e1^e2"});
    CHECK(bad.code == 1);
    CHECK(has_line(bad.out, "  indices 1 2 4"));
    auto forced = lf({"extend", "central", "--builtin", "d4half", "--two-form", "e1^e2", "--force"});
    CHECK(forced.code == 1);  // output fails Jacobi
    CHECK(has_line(forced.out, "item output.jacobi fail"));
}

TEST_CASE("construct commands")
{
    auto g0 = lf({"construct", "fk-to-sasakian", "--builtin", "d4half", "--map", "E"});
    CHECK(g0.code == 0);
    CHECK(same_structure(*parse_document(g0.out).algebra, builtin("g0").algebra));

    auto fk = lf({"construct", "sasakian-to-fk", "--builtin", "h3", "--map", "diag:1/2,1/2,1"});
    CHECK(fk.code == 0);
    CHECK(same_structure(*parse_document(fk.out).algebra, builtin("d4half").algebra));

    auto red = lf({"construct", "sasakian-reduction", "--builtin", "g5"});
    CHECK(red.code == 0);
    CHECK(same_structure(*parse_document(red.out).algebra, builtin("d4half").algebra));

    auto none = lf({"construct", "sasakian-reduction", "--builtin", "g0"});
    CHECK(none.code == 1);
    CHECK(none.out.find("center is trivial") != std::string::npos);

    auto k2s = lf({"construct", "kahler-to-sasakian", "--builtin", "d4half"});
    CHECK(k2s.code == 0);
    CHECK(same_structure(*parse_document(k2s.out).algebra, builtin("g5").algebra));

    CHECK(lf({"construct", "contact-ideal", "--builtin", "d4half"}).code == 0);
    CHECK(lf({"construct", "sasakian-double", "--builtin", "h3", "--map", "diag:0,0,0,1"}).code == 0);
}

TEST_CASE("solve commands")
{
    auto d = lf({"solve", "derivations", "--builtin", "h3"});
    CHECK(d.code == 0);
    CHECK(has_line(d.out, "info dimension 6"));

    auto p = lf({"solve", "principal", "--builtin", "d4half", "--form", "e3"});
    CHECK(p.code == 0);
    CHECK(has_line(p.out, "info principal e4"));

    auto fixed = lf({"solve", "derivations", "--builtin", "h3", "--fix", "alpha∘D=alpha:e3"});
    CHECK(fixed.code == 0);
    CHECK(has_line(fixed.out, "map particular"));

    auto empty = lf({"solve", "derivations", "--builtin", "h3", "--fix", "D(1,1)=1", "--fix", "D(1,1)=2"});
    CHECK(empty.code == 1);
    CHECK(empty.out.find("empty") != std::string::npos);

    auto reeb = lf({"solve", "reeb", "--builtin", "g0", "--form", "e3+e5"});
    CHECK(reeb.code == 0);
    CHECK(has_line(reeb.out, "info reeb e5"));
}

TEST_CASE("output is deterministic and JSON mirrors the report")
{
    const std::vector<std::vector<std::string>> commands = {
        {"builtin", "g0"},
        {"construct", "fk-to-sasakian", "--builtin", "d4half", "--map", "E"},
        {"check", "jacobi", "--algebra", write_temp("jacobi2.lf", bad_jacobi)},
    };
    for (auto args : commands) {
        CHECK(lf(args).out == lf(args).out);
        args.insert(args.end(), {"--output", "json"});
        const auto a = lf(args), b = lf(args);
        CHECK(a.out == b.out);
        const auto doc = nlohmann::json::parse(a.out);
        CHECK(doc["format"] == "lieforge/1");
        CHECK(doc["verdict"] == (a.code == 0 ? "pass" : "fail"));
        for (const auto& item : doc["items"])
            if (item["verdict"] == "fail")
                CHECK(item.contains("witness"));
    }
}
