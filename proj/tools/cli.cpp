#include "cli.hpp"

#include "lieforge/catalog.hpp"
#include "lieforge/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <regex>
#include <sstream>

namespace lieforge::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string kind;
    std::string builtin;
    std::string algebra_file;
    std::vector<std::string> structure_files;
    std::string form;
    std::string two_form;
    std::string map;
    std::string c = "1";
    std::vector<std::string> fixes;
    std::string output = "text";
    std::string convention = "determinant";
    bool force = false;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UsageError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Everything the command line can refer to, resolved once.
class Context {
public:
    explicit Context(const Options& o) : opts_(o)
    {
        if (o.builtin.empty() == o.algebra_file.empty())
            throw UsageError("give exactly one of --builtin or --algebra");
        if (!o.builtin.empty()) {
            try {
                builtin_ = &builtin(o.builtin);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            algebra_ = builtin_->algebra;
        } else {
            file_ = parse_document(read_file(o.algebra_file));
            if (!file_.algebra)
                throw UsageError("'" + o.algebra_file + "' has no algebra block");
            algebra_ = *file_.algebra;
        }
        for (const auto& path : o.structure_files)
            merge(parse_document(read_file(path)));
    }

    const LieAlgebra& algebra() const { return *algebra_; }
    const std::vector<std::string>& labels() const { return algebra_->labels(); }
    std::size_t dim() const { return algebra_->dim(); }

    KForm form() const
    {
        if (!opts_.form.empty())
            return KForm::one_form(parse_vector_expr(opts_.form, labels()));
        if (file_.form)
            return checked_form(*file_.form, "form");
        if (builtin_ && builtin_->sasakian)
            return builtin_->sasakian->alpha;
        if (builtin_ && builtin_->frobenius)
            return builtin_->frobenius->phi;
        throw UsageError("this command needs a 1-form (--form)");
    }

    KForm two_form(bool default_zero = false) const
    {
        if (!opts_.two_form.empty())
            return parse_two_form_expr(opts_.two_form, labels());
        if (file_.two_form)
            return checked_form(*file_.two_form, "two_form");
        if (default_zero)
            return KForm(dim(), 2);
        throw UsageError("this command needs a 2-form (--two-form)");
    }

    LinearMap map(std::size_t n) const
    {
        if (!opts_.map.empty()) {
            if (builtin_) {
                const auto it = builtin_->maps.find(opts_.map);
                if (it != builtin_->maps.end()) {
                    if (it->second.rows() != n)
                        throw UsageError("map '" + opts_.map + "' acts on dimension " +
                                         std::to_string(it->second.rows()) + ", expected " + std::to_string(n));
                    return it->second;
                }
            }
            return parse_map_expr(opts_.map, n);
        }
        if (file_.map) {
            if (file_.map->rows() != n)
                throw UsageError("map from file has dimension " + std::to_string(file_.map->rows()) + ", expected " +
                                 std::to_string(n));
            return *file_.map;
        }
        throw UsageError("this command needs a linear map (--map)");
    }

    SasakianStructure sasakian() const
    {
        if (file_.sasakian) {
            const SasakianData& s = *file_.sasakian;
            require_dim(s.xi.size(), "sasakian");
            return SasakianStructure{s.xi, s.alpha, s.phi, sasakian_metric(algebra(), s.alpha, s.phi)};
        }
        if (builtin_ && builtin_->sasakian)
            return *builtin_->sasakian;
        throw UsageError("this command needs a Sasakian structure (--structure)");
    }

    KahlerStructure kahler() const
    {
        if (file_.kahler) {
            require_dim(file_.kahler->J.rows(), "kahler");
            return KahlerStructure{file_.kahler->J, file_.kahler->omega,
                                   kahler_metric(file_.kahler->J, file_.kahler->omega)};
        }
        if (builtin_ && builtin_->kahler)
            return *builtin_->kahler;
        throw UsageError("this command needs a Kähler structure (--structure)");
    }

    FrobeniusStructure frobenius() const
    {
        if (!opts_.form.empty())
            return FrobeniusStructure{form(), Vector(dim())};
        if (file_.frobenius) {
            require_dim(file_.frobenius->phi.dim(), "frobenius");
            return FrobeniusStructure{file_.frobenius->phi, file_.frobenius->principal.value_or(Vector(dim()))};
        }
        if (builtin_ && builtin_->frobenius)
            return *builtin_->frobenius;
        throw UsageError("this command needs a Frobenius form (--form or --structure)");
    }

    std::optional<DoubleExtensionParams> params() const { return file_.params; }

private:
    void merge(ParsedDocument doc)
    {
        if (doc.algebra && !same_structure(*doc.algebra, *algebra_))
            throw UsageError("structure file carries a different algebra");
        if (doc.form)
            file_.form = doc.form;
        if (doc.two_form)
            file_.two_form = doc.two_form;
        if (doc.map)
            file_.map = doc.map;
        if (doc.sasakian)
            file_.sasakian = doc.sasakian;
        if (doc.kahler)
            file_.kahler = doc.kahler;
        if (doc.frobenius)
            file_.frobenius = doc.frobenius;
        if (doc.params)
            file_.params = doc.params;
    }

    KForm checked_form(const KForm& f, const std::string& what) const
    {
        require_dim(f.dim(), what);
        return f;
    }

    void require_dim(std::size_t found, const std::string& what) const
    {
        if (found != dim())
            throw UsageError(what + " has dimension " + std::to_string(found) + ", the algebra has " +
                             std::to_string(dim()));
    }

    const Options& opts_;
    const Builtin* builtin_ = nullptr;
    std::optional<LieAlgebra> algebra_;
    ParsedDocument file_;
};

std::string describe(const Vector& v, const LieAlgebra& g) { return format_vector(v, g.labels()); }

void add_jacobi(ReportDocument& doc, const LieAlgebra& g)
{
    doc.report.merge(check_jacobi(g), "output.");
}

// ---------------------------------------------------------------- check

ReportDocument cmd_check(const Options& o, const Context& ctx)
{
    ReportDocument doc;
    doc.command = "check " + o.kind;
    const LieAlgebra& g = ctx.algebra();
    if (o.kind == "jacobi") {
        doc.report = check_jacobi(g);
    } else if (o.kind == "cocycle") {
        const KForm theta = ctx.two_form();
        doc.report = is_cocycle(g, theta);
        doc.items.push_back(NamedForm{"theta", theta});
    } else if (o.kind == "derivation") {
        const LinearMap d = ctx.map(g.dim());
        doc.report = is_derivation(g, d);
        doc.items.push_back(NamedMap{"D", d});
    } else if (o.kind == "contact") {
        Checked<ContactStructure> c = check_contact(g, ctx.form());
        doc.report = c.report;
        if (c.structure) {
            doc.info.emplace_back("reeb", describe(c.structure->reeb, g));
            doc.items.push_back(*c.structure);
        }
    } else if (o.kind == "frobenius") {
        Checked<FrobeniusStructure> f = check_frobenius(g, ctx.frobenius().phi);
        doc.report = f.report;
        if (f.structure) {
            doc.info.emplace_back("principal", describe(f.structure->principal, g));
            doc.items.push_back(*f.structure);
        }
    } else if (o.kind == "kahler") {
        const KahlerStructure k = ctx.kahler();
        Checked<KahlerStructure> c = check_kahler(g, k.J, k.omega);
        doc.report = c.report;
        if (c.structure)
            doc.items.push_back(*c.structure);
    } else if (o.kind == "sasakian") {
        const SasakianStructure s = ctx.sasakian();
        Checked<SasakianStructure> c = check_sasakian(g, s.xi, s.alpha, s.phi);
        doc.report = c.report;
        if (c.structure)
            doc.items.push_back(*c.structure);
    } else {
        throw UsageError("unknown check '" + o.kind + "'");
    }
    return doc;
}

// ---------------------------------------------------------------- extend

void add_bookkeeping(ReportDocument& doc, const ExtensionResult& ext)
{
    const LieAlgebra& g = ext.algebra;
    if (ext.central)
        doc.info.emplace_back("central", g.label(*ext.central));
    if (ext.derivation)
        doc.info.emplace_back("derivation", g.label(*ext.derivation));
    // The cocycle and derivation live on smaller algebras than the output,
    // so they go out as info lines rather than document blocks.
    if (ext.cocycle) {
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < ext.cocycle->dim(); ++i)
            labels.push_back(g.label(i));
        doc.info.emplace_back("cocycle", format_form(*ext.cocycle, labels));
    }
    if (ext.derivation_map)
        doc.info.emplace_back("derivation_map", matrix_text(*ext.derivation_map));
    doc.algebra = g;
}

ReportDocument cmd_extend(const Options& o, const Context& ctx)
{
    ReportDocument doc;
    doc.command = "extend " + o.kind;
    const LieAlgebra& g = ctx.algebra();
    const ExtensionOptions eo{o.force};
    std::optional<ExtensionResult> ext;
    if (o.kind == "central") {
        const KForm theta = ctx.two_form();
        doc.report.merge(is_cocycle(g, theta));
        ext = central_extension(g, theta, eo);
    } else if (o.kind == "derivation") {
        const LinearMap d = ctx.map(g.dim());
        doc.report.merge(is_derivation(g, d));
        ext = derivation_extension(g, d, eo);
    } else if (o.kind == "double") {
        const KForm theta = ctx.two_form();
        const LinearMap d = ctx.map(g.dim() + 1);
        doc.report.merge(is_cocycle(g, theta));
        doc.report.merge(is_derivation(central_extension(g, theta, {true}).algebra, d));
        ext = double_extension(g, theta, d, eo);
    } else if (o.kind == "reversed") {
        const KForm alpha = ctx.form();
        const LinearMap d = ctx.map(g.dim());
        doc.report.merge(is_derivation(g, d));
        ext = reversed_double_extension(g, alpha, d, eo);
        const LieAlgebra gd = derivation_extension(g, d, {true}).algebra;
        const Subspace rad = radical(gd, *ext->cocycle);
        doc.report.add("nondegenerate", rad.is_zero(),
                       Witness{{}, {}, "radical of -dalpha on g(D) has dimension " + std::to_string(rad.dim())});
    } else {
        throw UsageError("unknown extension '" + o.kind + "'");
    }
    add_jacobi(doc, ext->algebra);
    add_bookkeeping(doc, *ext);
    return doc;
}

// ---------------------------------------------------------------- construct

void add_sasakian_result(ReportDocument& doc, const SasakianConstruction& c)
{
    doc.report.merge(c.report);
    add_bookkeeping(doc, c.extension);
    doc.info.emplace_back("reeb", describe(c.xi, c.extension.algebra));
    doc.info.emplace_back("center_dim", std::to_string(center(c.extension.algebra).dim()));
    if (c.sasakian)
        doc.items.push_back(*c.sasakian);
    else
        doc.items.push_back(SasakianStructure{c.xi, c.alpha, c.phi,
                                              sasakian_metric(c.extension.algebra, c.alpha, c.phi)});
}

ReportDocument cmd_construct(const Options& o, const Context& ctx)
{
    ReportDocument doc;
    doc.command = "construct " + o.kind;
    const LieAlgebra& g = ctx.algebra();
    if (o.kind == "fk-to-sasakian") {
        add_sasakian_result(doc, fk_to_sasakian(g, ctx.frobenius(), ctx.kahler(), ctx.map(g.dim())));
    } else if (o.kind == "kahler-to-sasakian") {
        add_sasakian_result(doc, kahler_to_sasakian_central(g, ctx.kahler()));
    } else if (o.kind == "sasakian-to-fk") {
        const FrobeniusKahlerConstruction c = sasakian_to_fk(g, ctx.sasakian(), ctx.map(g.dim()));
        doc.report.merge(c.report);
        add_bookkeeping(doc, c.extension);
        doc.items.push_back(c.frobenius.value_or(FrobeniusStructure{c.phi, Vector(c.extension.algebra.dim())}));
        doc.items.push_back(c.kahler.value_or(KahlerStructure{c.J, c.omega, kahler_metric(c.J, c.omega)}));
    } else if (o.kind == "sasakian-reduction") {
        const SasakianReduction r = sasakian_reduction(g, ctx.sasakian());
        doc.report = r.report;
        doc.algebra = r.algebra;
        doc.items.push_back(NamedMap{"basis", r.basis});
        doc.items.push_back(r.kahler.value_or(KahlerStructure{r.J, r.omega, kahler_metric(r.J, r.omega)}));
    } else if (o.kind == "sasakian-double") {
        const SasakianStructure s = ctx.sasakian();
        const KForm theta = ctx.two_form(true);
        const LinearMap d = ctx.map(g.dim() + 1);
        Scalar c;
        try {
            c = parse_scalar(o.c);
        } catch (const std::invalid_argument&) {
            throw UsageError("--c expects a rational number");
        }
        const DoubleExtensionParams p =
            ctx.params() ? *ctx.params() : solve_double_extension_params(g, s, theta, d, c);
        doc.report.merge(double_extension_conditions(g, s, theta, d, p), "conditions.");
        add_sasakian_result(doc, sasakian_double_extension(g, s, theta, d, p));
        doc.items.push_back(p);
    } else if (o.kind == "contact-ideal") {
        const ContactIdealRestriction r = contact_ideal_restriction(g, ctx.frobenius(), ctx.kahler());
        doc.report = r.report;
        doc.algebra = r.algebra;
        doc.items.push_back(NamedMap{"basis", r.basis});
        if (r.sasakian)
            doc.items.push_back(*r.sasakian);
    } else {
        throw UsageError("unknown construction '" + o.kind + "'");
    }
    return doc;
}

// ---------------------------------------------------------------- solve

DerivationConstraint parse_fix(std::string fix, const Context& ctx)
{
    std::string s;
    for (std::size_t i = 0; i < fix.size(); ++i) {
        if (fix.compare(i, 3, "∘") == 0) {
            s += '*';
            i += 2;
        } else if (!std::isspace(static_cast<unsigned char>(fix[i]))) {
            s += fix[i];
        }
    }
    const std::size_t n = ctx.dim();
    auto after_colon = [&](std::size_t from) {
        const std::size_t colon = s.find(':', from);
        if (colon == std::string::npos)
            throw UsageError("--fix '" + fix + "': missing ':'");
        return s.substr(colon + 1);
    };
    if (s.rfind("alpha*D=", 0) == 0) {
        const std::string rhs = s.substr(8, s.find(':') - 8);
        Scalar lambda;
        if (rhs == "alpha")
            lambda = 1;
        else if (rhs == "0")
            lambda = 0;
        else if (rhs.size() > 6 && rhs.compare(rhs.size() - 6, 6, "*alpha") == 0)
            lambda = parse_scalar(rhs.substr(0, rhs.size() - 6));
        else
            throw UsageError("--fix '" + fix + "': expected alpha∘D=alpha, alpha∘D=0 or alpha∘D=q*alpha");
        return FormScaling{parse_vector_expr(after_colon(0), ctx.labels()), lambda};
    }
    if (s.rfind("commute:", 0) == 0 || s.rfind("DJ=JD:", 0) == 0) {
        return CommutesWith{ctx.map(n), std::nullopt};
    }
    static const std::regex entry(R"(D\((\d+),(\d+)\)=(.+))");
    std::smatch m;
    if (std::regex_match(s, m, entry)) {
        const std::size_t r = std::stoul(m[1]), c = std::stoul(m[2]);
        if (r < 1 || c < 1 || r > n || c > n)
            throw UsageError("--fix '" + fix + "': indices are 1-based and at most " + std::to_string(n));
        return EntryEquals{r - 1, c - 1, parse_scalar(m[3].str())};
    }
    throw UsageError("--fix '" + fix + "': unknown constraint");
}

ReportDocument cmd_solve(const Options& o, const Context& ctx)
{
    ReportDocument doc;
    doc.command = "solve " + o.kind;
    const LieAlgebra& g = ctx.algebra();
    if (o.kind == "derivations") {
        std::vector<DerivationConstraint> constraints{LeibnizRule{}};
        for (const auto& f : o.fixes)
            constraints.push_back(parse_fix(f, ctx));
        const DerivationSpace space = derivation_space(g, constraints);
        if (!space.particular) {
            doc.report.fail("consistent",
                            Witness{{}, {}, "empty: first inconsistent row is " + space.failing_constraint.value_or("?")});
            doc.info.emplace_back("solution", "empty");
            return doc;
        }
        doc.report.pass("consistent");
        doc.info.emplace_back("dimension", std::to_string(space.homogeneous_basis.size()));
        doc.items.push_back(NamedMap{"particular", *space.particular});
        for (std::size_t i = 0; i < space.homogeneous_basis.size(); ++i)
            doc.items.push_back(NamedMap{"basis" + std::to_string(i + 1), space.homogeneous_basis[i]});
    } else if (o.kind == "reeb") {
        Checked<ContactStructure> c = check_contact(g, ctx.form());
        doc.report = c.report;
        if (c.structure) {
            doc.info.emplace_back("reeb", describe(c.structure->reeb, g));
            doc.items.push_back(*c.structure);
        }
    } else if (o.kind == "principal") {
        Checked<FrobeniusStructure> f = check_frobenius(g, ctx.form());
        doc.report = f.report;
        if (f.structure) {
            doc.info.emplace_back("principal", describe(f.structure->principal, g));
            doc.items.push_back(*f.structure);
        }
    } else {
        throw UsageError("unknown solve target '" + o.kind + "'");
    }
    return doc;
}

// ---------------------------------------------------------------- builtin

ReportDocument cmd_builtin(const std::string& name)
{
    const Builtin* b = nullptr;
    try {
        b = &builtin(name);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    ReportDocument doc;
    doc.command = "builtin " + name;
    doc.algebra = b->algebra;
    doc.info.emplace_back("description", b->description);
    doc.report.merge(check_jacobi(b->algebra), "jacobi.");
    if (b->sasakian) {
        const auto& s = *b->sasakian;
        doc.report.merge(check_sasakian(b->algebra, s.xi, s.alpha, s.phi).report, "sasakian.");
        doc.items.push_back(s);
    }
    if (b->frobenius) {
        doc.report.merge(check_frobenius(b->algebra, b->frobenius->phi).report, "frobenius.");
        doc.items.push_back(*b->frobenius);
    }
    if (b->kahler) {
        doc.report.merge(check_kahler(b->algebra, b->kahler->J, b->kahler->omega).report, "kahler.");
        doc.items.push_back(*b->kahler);
    }
    for (const auto& [map_name, m] : b->maps)
        doc.items.push_back(NamedMap{map_name, m});
    return doc;
}

void add_common(CLI::App* sub, Options& o, bool with_inputs)
{
    if (with_inputs) {
        sub->add_option("--builtin", o.builtin, "built-in algebra (h3, d4half, g0, g5)");
        sub->add_option("--algebra", o.algebra_file, "algebra file (lieforge/1)");
        sub->add_option("--structure", o.structure_files, "structure file(s): forms, maps, sasakian, kahler, ...");
        sub->add_option("--form", o.form, "1-form, e.g. e3 or 0,0,1");
        sub->add_option("--two-form", o.two_form, "2-form, e.g. e1^e2 - e3^e4 (values on basis pairs)");
        sub->add_option("--map", o.map, "map: diag:a,b,..., matrix:r1;r2;..., 0, id or a built-in name");
    }
    sub->add_option("--output", o.output, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--wedge-convention", o.convention, "printing convention for wedge expressions")
        ->check(CLI::IsMember({"determinant", "paper"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact Lie algebra extensions and Sasakian/Kähler structure checks", "lieforge"};
    app.require_subcommand(1);
    Options o;

    auto* check = app.add_subcommand("check", "verify a structure");
    check->add_option("kind", o.kind, "jacobi|cocycle|derivation|contact|frobenius|kahler|sasakian")
        ->required()
        ->check(CLI::IsMember({"jacobi", "cocycle", "derivation", "contact", "frobenius", "kahler", "sasakian"}));
    add_common(check, o, true);

    auto* extend = app.add_subcommand("extend", "build an extension");
    extend->add_option("kind", o.kind, "central|derivation|double|reversed")
        ->required()
        ->check(CLI::IsMember({"central", "derivation", "double", "reversed"}));
    add_common(extend, o, true);
    extend->add_flag("--force", o.force, "skip precondition checks");

    auto* construct = app.add_subcommand("construct", "build a geometric structure from another");
    construct
        ->add_option("kind", o.kind,
                     "fk-to-sasakian|sasakian-to-fk|kahler-to-sasakian|sasakian-reduction|sasakian-double|contact-ideal")
        ->required()
        ->check(CLI::IsMember({"fk-to-sasakian", "sasakian-to-fk", "kahler-to-sasakian", "sasakian-reduction",
                               "sasakian-double", "contact-ideal"}));
    add_common(construct, o, true);
    construct->add_option("--c", o.c, "scale of w for sasakian-double (default 1)");

    auto* solve = app.add_subcommand("solve", "solve a linear problem");
    solve->add_option("kind", o.kind, "derivations|reeb|principal")
        ->required()
        ->check(CLI::IsMember({"derivations", "reeb", "principal"}));
    add_common(solve, o, true);
    solve->add_option("--fix", o.fixes,
                      "extra constraint: alpha∘D=alpha:FORM, alpha∘D=0:FORM, DJ=JD (with --map), D(i,j)=v");

    auto* show = app.add_subcommand("builtin", "print a built-in algebra and its structures");
    std::string name;
    show->add_option("name", name, "h3|d4half|g0|g5")->required();
    add_common(show, o, false);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        ReportDocument doc;
        try {
            if (show->parsed()) {
                doc = cmd_builtin(name);
            } else {
                const Context ctx(o);
                if (check->parsed())
                    doc = cmd_check(o, ctx);
                else if (extend->parsed())
                    doc = cmd_extend(o, ctx);
                else if (construct->parsed())
                    doc = cmd_construct(o, ctx);
                else
                    doc = cmd_solve(o, ctx);
            }
        } catch (const PreconditionError& e) {
            doc = ReportDocument{};
            doc.command = app.get_subcommands().front()->get_name() + " " + o.kind;
            doc.report = e.report();
            doc.info.emplace_back("error", e.what());
        }
        const RenderOptions ro{o.convention == "paper" ? WedgeConvention::Paper : WedgeConvention::Determinant};
        out << (o.output == "json" ? render_json(doc, ro) : render_text(doc, ro));
        return doc.report.passed() ? 0 : 1;
    } catch (const ParseError& e) {
        err << e.what() << "\n";
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
    } catch (const std::invalid_argument& e) {
        // DimensionError and malformed scalars
        err << "error: " << e.what() << "\n";
    }
    return 2;
}

}  // namespace lieforge::cli
