// Acceptance runner: one PASS/FAIL line per criterion. With arguments, runs
// only the listed criteria (ctest registers each separately).

#include "cli.hpp"
#include "lieforge/catalog.hpp"
#include "lieforge/io.hpp"
#include "support/suites.hpp"

#include <chrono>
#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace lieforge;
namespace t = lieforge::testing;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void expect(bool cond, const std::string& what)
    {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

struct CliResult {
    int code;
    std::string out;
};

CliResult lf(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str() + err.str()};
}

bool has_line(const std::string& text, const std::string& line)
{
    return ("\n" + text).find("\n" + line + "\n") != std::string::npos;
}

Outcome from_tally(const t::Tally& tally, int minimum)
{
    Outcome o;
    o.expect(tally.instances >= minimum, "only " + std::to_string(tally.instances) + " instances");
    o.expect(tally.failures == 0, std::to_string(tally.failures) + " of " + std::to_string(tally.instances) +
                                      " failed; first: " + tally.first_failure);
    o.detail = (o.ok ? std::to_string(tally.instances) + " instances" : o.detail) +
               (tally.summary.empty() ? "" : " [" + tally.summary + "]");
    return o;
}

Outcome golden_pipeline()
{
    Outcome o;
    auto ext = lf({"extend", "derivation", "--builtin", "h3", "--map", "diag:1/2,1/2,1"});
    o.expect(ext.code == 0, "extend derivation failed");
    const ParsedDocument doc = parse_document(ext.out);
    o.expect(doc.algebra && same_structure(*doc.algebra, builtin("d4half").algebra), "extension is not D4,1/2");
    // solve principal runs on the extension exactly as printed.
    const auto path = std::filesystem::temp_directory_path() / "lieforge_acceptance_d4.lf";
    std::ofstream(path) << ext.out;
    auto principal = lf({"solve", "principal", "--algebra", path.string(), "--form", "e3"});
    o.expect(principal.code == 0 && has_line(principal.out, "info principal e4"), "solve principal did not print e4");
    o.expect(principal_element(*doc.algebra, KForm::one_form(Vector{0, 0, 1, 0})) == Vector{0, 0, 0, 1},
             "principal element is not e4");

    o.expect(lf({"check", "frobenius", "--builtin", "d4half"}).code == 0, "check frobenius failed");
    auto kahler = lf({"check", "kahler", "--builtin", "d4half"});
    o.expect(kahler.code == 0, "check kahler failed");
    o.expect(has_line(kahler.out, "note metric [1 0 0 0; 0 1 0 0; 0 0 1 0; 0 0 0 1]"), "metric is not the identity");
    const auto& d4 = builtin("d4half");
    const auto k = check_kahler(d4.algebra, d4.kahler->J, d4.kahler->omega);
    o.expect(k.structure && k.structure->metric == Matrix::identity(4), "library metric is not the identity");

    const KForm da = ce_differential(d4.algebra, KForm::one_form(Vector{0, 0, 1, 0}));
    o.expect(da.evaluate_basis({0, 1}) == -1, "dalpha(e1,e2) != -1");
    o.expect(da.evaluate_basis({2, 3}) == 1, "dalpha(e3,e4) != 1");
    if (o.ok)
        o.detail = "x_P = e4, metric = I, dalpha = -1 on (e1,e2), +1 on (e3,e4)";
    return o;
}

Outcome sasakian_constructions()
{
    Outcome o;
    auto g0 = lf({"construct", "fk-to-sasakian", "--builtin", "d4half", "--map", "E"});
    o.expect(g0.code == 0, "fk-to-sasakian failed");
    const ParsedDocument a = parse_document(g0.out);
    o.expect(a.algebra && same_structure(*a.algebra, builtin("g0").algebra), "output is not g0");
    if (a.algebra) {
        o.expect(center(*a.algebra).is_zero(), "center of g0 is not trivial");
        o.expect(a.sasakian.has_value(), "no Sasakian structure printed");
        if (a.sasakian)
            o.expect(check_sasakian(*a.algebra, a.sasakian->xi, a.sasakian->alpha, a.sasakian->phi).report.passed(),
                     "printed g0 structure does not verify");
    }

    auto g5 = lf({"extend", "reversed", "--builtin", "h3", "--form", "e3", "--map", "diag:1/2,1/2,1"});
    o.expect(g5.code == 0, "extend reversed failed");
    const ParsedDocument b = parse_document(g5.out);
    o.expect(b.algebra && same_structure(*b.algebra, builtin("g5").algebra), "output is not g5");
    if (b.algebra) {
        o.expect(center(*b.algebra).contains(Vector::unit(5, 4)), "z is not central in g5");
        const auto& s = *builtin("g5").sasakian;
        o.expect(check_sasakian(*b.algebra, s.xi, s.alpha, s.phi).report.passed(), "g5 is not Sasakian");
    }
    o.expect(lf({"check", "sasakian", "--builtin", "g5"}).code == 0, "check sasakian g5 failed");
    o.expect(lf({"check", "sasakian", "--builtin", "g0"}).code == 0, "check sasakian g0 failed");
    if (o.ok)
        o.detail = "g0 (center 0) and g5 (z central) both Sasakian";
    return o;
}

Outcome no_go_suite()
{
    const t::Tally h = t::no_go(7001, "h3", 10);
    const t::Tally g = t::no_go(7002, "g0", 10);
    Outcome o;
    o.expect(h.instances == 11 && h.passed(), "h3: " + h.first_failure);
    o.expect(g.instances == 11 && g.passed(), "g0: " + g.first_failure);
    if (o.ok)
        o.detail = "h3 [" + h.summary + "], g0 [" + g.summary + "]";
    return o;
}

struct Criterion {
    int number;
    const char* title;
    double budget_seconds;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv)
{
    const std::vector<Criterion> criteria = {
        {1, "golden pipeline", 1, golden_pipeline},
        {2, "Sasakian constructions", 1, sasakian_constructions},
        {3, "double-extension condition equivalence", 30,
         [] { return from_tally(t::double_extension_equivalence(3001, 120), 100); }},
        {4, "Nijenhuis identity on almost-Kähler extensions", 30,
         [] { return from_tally(t::nijenhuis_identity(4001, 120), 100); }},
        {5, "forced extension iff-suite", 30, [] { return from_tally(t::extension_iff(5001, 240), 200); }},
        {6, "reduction round trip", 10, [] { return from_tally(t::round_trip(6001, 20), 22); }},
        {7, "no-go suite", 5, no_go_suite},
        {8, "calculus invariants", 30, [] { return from_tally(t::calculus(8001, 120), 100); }},
    };

    std::vector<int> selected;
    for (int i = 1; i < argc; ++i)
        selected.push_back(std::atoi(argv[i]));

    bool all = true;
    for (const Criterion& c : criteria) {
        if (!selected.empty() && std::find(selected.begin(), selected.end(), c.number) == selected.end())
            continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (seconds > c.budget_seconds) {
            o.ok = false;
            o.detail += " (over the " + std::to_string(static_cast<int>(c.budget_seconds)) + " s budget)";
        }
        all = all && o.ok;
        std::printf("criterion %d %s: %s (%.2f s) %s\n", c.number, o.ok ? "PASS" : "FAIL", c.title, seconds,
                    o.detail.c_str());
    }
    return all ? 0 : 1;
}
