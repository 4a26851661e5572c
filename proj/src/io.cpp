#include "lieforge/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace lieforge {

ParseError::ParseError(std::size_t offset, std::string field, const std::string& message)
    : std::runtime_error("parse error at byte " + std::to_string(offset) + " (field " + field + "): " + message),
      offset_(offset),
      field_(std::move(field))
{
}

namespace {

// ---------------------------------------------------------------- reading

struct Token {
    std::string text;
    std::size_t offset;
};

struct Line {
    std::vector<Token> tokens;
    std::size_t offset;
    const std::string& key() const { return tokens.front().text; }
};

std::vector<Line> split_lines(std::string_view text)
{
    std::vector<Line> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        const std::size_t hash = raw.find('#');
        if (hash != std::string_view::npos)
            raw = raw.substr(0, hash);
        Line line{{}, pos};
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i])))
                ++i;
            const std::size_t start = i;
            while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i])))
                ++i;
            if (i > start)
                line.tokens.push_back({std::string(raw.substr(start, i - start)), pos + start});
        }
        if (!line.tokens.empty()) {
            line.offset = line.tokens.front().offset;
            lines.push_back(std::move(line));
        }
        if (end == text.size())
            break;
        pos = end + 1;
    }
    return lines;
}

Scalar scalar_at(const Token& t, const std::string& field)
{
    try {
        return parse_scalar(t.text);
    } catch (const std::invalid_argument&) {
        throw ParseError(t.offset, field, "'" + t.text + "' is not a rational number");
    }
}

std::size_t index_at(const Token& t, const std::string& field, std::size_t dim)
{
    std::size_t value = 0;
    if (t.text.empty() || !std::all_of(t.text.begin(), t.text.end(), [](char c) { return std::isdigit(c); }))
        throw ParseError(t.offset, field, "'" + t.text + "' is not a positive integer");
    try {
        value = std::stoul(t.text);
    } catch (const std::exception&) {
        throw ParseError(t.offset, field, "'" + t.text + "' is out of range");
    }
    if (value < 1 || value > dim)
        throw ParseError(t.offset, field, "index " + t.text + " is outside 1.." + std::to_string(dim));
    return value - 1;
}

Vector vector_from(const Line& line, const std::string& field, std::optional<std::size_t> dim)
{
    const std::size_t count = line.tokens.size() - 1;
    if (dim && count != *dim)
        throw ParseError(line.offset, field,
                         "expected " + std::to_string(*dim) + " entries, found " + std::to_string(count));
    Vector v(count);
    for (std::size_t i = 0; i < count; ++i)
        v[i] = scalar_at(line.tokens[i + 1], field);
    return v;
}

// A block: keyed lines, with `row` lines attached to the preceding key.
struct Entry {
    Line line;
    std::vector<Line> rows;
};

struct Block {
    Line head;
    std::vector<Entry> entries;

    const std::string& kind() const { return head.key(); }
    const Entry* find(const std::string& key) const
    {
        for (const auto& e : entries)
            if (e.line.key() == key)
                return &e;
        return nullptr;
    }
    const Entry& require(const std::string& key) const
    {
        if (const Entry* e = find(key))
            return *e;
        throw ParseError(head.offset, kind() + "." + key, "missing");
    }
};

Matrix matrix_from(const Entry& e, const std::string& field, std::optional<std::size_t> dim)
{
    const std::size_t n = dim ? *dim : e.rows.size();
    if (e.rows.size() != n)
        throw ParseError(e.line.offset, field,
                         "expected " + std::to_string(n) + " rows, found " + std::to_string(e.rows.size()));
    Matrix m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        const Vector row = vector_from(e.rows[r], field, n);
        for (std::size_t c = 0; c < n; ++c)
            m(r, c) = row[c];
    }
    return m;
}

std::size_t size_from(const Entry& e, const std::string& field)
{
    if (e.line.tokens.size() != 2)
        throw ParseError(e.line.offset, field, "expected one integer");
    const Token& t = e.line.tokens[1];
    if (!std::all_of(t.text.begin(), t.text.end(), [](char c) { return std::isdigit(c); }) || t.text.size() > 4)
        throw ParseError(t.offset, field, "'" + t.text + "' is not a dimension");
    return std::stoul(t.text);
}

KForm pairs_from(const std::vector<const Entry*>& pairs, const std::string& field, std::size_t dim)
{
    KForm f(dim, 2);
    for (const Entry* e : pairs) {
        const auto& t = e->line.tokens;
        if (t.size() != 4)
            throw ParseError(e->line.offset, field, "expected 'pair i j value'");
        const std::size_t i = index_at(t[1], field, dim), j = index_at(t[2], field, dim);
        if (i >= j)
            throw ParseError(t[1].offset, field, "pairs must have i < j");
        f.add_term({i, j}, scalar_at(t[3], field));
    }
    return f;
}

std::vector<const Entry*> all(const Block& b, const std::string& key)
{
    std::vector<const Entry*> out;
    for (const auto& e : b.entries)
        if (e.line.key() == key)
            out.push_back(&e);
    return out;
}

LieAlgebra algebra_from(const Block& b)
{
    const std::size_t n = size_from(b.require("dim"), "algebra.dim");
    std::vector<std::string> labels;
    if (const Entry* e = b.find("basis")) {
        for (std::size_t i = 1; i < e->line.tokens.size(); ++i)
            labels.push_back(e->line.tokens[i].text);
        if (labels.size() != n)
            throw ParseError(e->line.offset, "algebra.basis",
                             "expected " + std::to_string(n) + " labels, found " + std::to_string(labels.size()));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (labels[i] == labels[j])
                    throw ParseError(e->line.tokens[i + 1].offset, "algebra.basis",
                                     "duplicate label '" + labels[i] + "'");
    }
    std::vector<LieAlgebra::Entry> entries;
    for (const Entry* e : all(b, "bracket")) {
        const auto& t = e->line.tokens;
        if (t.size() < 3)
            throw ParseError(e->line.offset, "algebra.bracket", "expected 'bracket i j k:value ...'");
        const std::size_t i = index_at(t[1], "algebra.bracket", n), j = index_at(t[2], "algebra.bracket", n);
        if (i >= j)
            throw ParseError(t[1].offset, "algebra.bracket", "brackets are given for i < j only");
        Vector v(n);
        for (std::size_t k = 3; k < t.size(); ++k) {
            const std::size_t colon = t[k].text.find(':');
            if (colon == std::string::npos)
                throw ParseError(t[k].offset, "algebra.bracket", "expected k:value, found '" + t[k].text + "'");
            const std::size_t idx =
                index_at(Token{t[k].text.substr(0, colon), t[k].offset}, "algebra.bracket.k", n);
            v[idx] += scalar_at(Token{t[k].text.substr(colon + 1), t[k].offset + colon + 1}, "algebra.bracket.value");
        }
        entries.push_back({i, j, v});
    }
    for (const auto& e : b.entries) {
        const std::string& k = e.line.key();
        if (k != "dim" && k != "basis" && k != "bracket")
            throw ParseError(e.line.offset, "algebra", "unknown field '" + k + "'");
    }
    return LieAlgebra(n, entries, labels);
}

void check_dim(const Line& where, const std::string& field, std::optional<std::size_t> known, std::size_t found)
{
    if (known && *known != found)
        throw ParseError(where.offset, field,
                         "dimension " + std::to_string(found) + " does not match the algebra (" +
                             std::to_string(*known) + ")");
}

const std::vector<std::string> report_keys = {"report", "verdict", "item", "note", "info", "indices", "values", "detail"};
const std::vector<std::string> block_kinds = {"algebra",  "sasakian", "kahler", "frobenius", "contact",
                                              "map",      "form",     "two_form", "params"};
const std::vector<std::string> matrix_keys = {"phi", "J", "metric", "matrix"};

bool contains(const std::vector<std::string>& v, const std::string& s)
{
    return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

ParsedDocument parse_document(std::string_view text)
{
    const std::vector<Line> lines = split_lines(text);
    if (lines.empty() || lines.front().tokens.size() != 1 || lines.front().key() != format_header)
        throw ParseError(lines.empty() ? 0 : lines.front().offset, "header",
                         "expected '" + std::string(format_header) + "' on the first line");

    std::vector<Block> blocks;
    for (std::size_t i = 1; i < lines.size();) {
        const Line& line = lines[i];
        if (contains(report_keys, line.key())) {
            ++i;
            continue;
        }
        if (!contains(block_kinds, line.key()))
            throw ParseError(line.offset, "document", "unknown section '" + line.key() + "'");
        Block block{line, {}};
        ++i;
        bool closed = false;
        for (; i < lines.size(); ++i) {
            const Line& l = lines[i];
            if (l.key() == "end") {
                closed = true;
                ++i;
                break;
            }
            if (l.key() == "row") {
                if (block.kind() == "map" && (block.entries.empty() || block.entries.back().line.key() != "matrix"))
                    block.entries.push_back({Line{{{"matrix", l.offset}}, l.offset}, {}});
                if (block.entries.empty() || !contains(matrix_keys, block.entries.back().line.key()))
                    throw ParseError(l.offset, block.kind() + ".row", "row outside of a matrix field");
                block.entries.back().rows.push_back(l);
                continue;
            }
            block.entries.push_back({l, {}});
        }
        if (!closed)
            throw ParseError(block.head.offset, block.kind(), "block is not closed with 'end'");
        blocks.push_back(std::move(block));
    }

    ParsedDocument doc;
    for (const Block& b : blocks)
        if (b.kind() == "algebra") {
            if (doc.algebra)
                throw ParseError(b.head.offset, "algebra", "more than one algebra block");
            doc.algebra = algebra_from(b);
        }
    std::optional<std::size_t> n;
    if (doc.algebra)
        n = doc.algebra->dim();

    for (const Block& b : blocks) {
        const std::string& kind = b.kind();
        if (kind == "algebra" || kind == "contact")
            continue;
        if (kind == "form") {
            const Entry& e = b.require("coeffs");
            const Vector v = vector_from(e.line, "form.coeffs", n);
            doc.form = KForm::one_form(v);
        } else if (kind == "two_form") {
            const Entry& d = b.require("dim");
            const std::size_t dim = size_from(d, "two_form.dim");
            check_dim(d.line, "two_form.dim", n, dim);
            doc.two_form = pairs_from(all(b, "pair"), "two_form.pair", dim);
        } else if (kind == "map") {
            const Entry& e = b.require("matrix");
            const Matrix m = matrix_from(e, "map.row", std::nullopt);
            doc.map = m;
        } else if (kind == "sasakian") {
            const Vector xi = vector_from(b.require("xi").line, "sasakian.xi", n);
            const Vector alpha = vector_from(b.require("alpha").line, "sasakian.alpha", xi.size());
            const Matrix phi = matrix_from(b.require("phi"), "sasakian.phi", xi.size());
            doc.sasakian = SasakianData{xi, KForm::one_form(alpha), phi};
        } else if (kind == "kahler") {
            const Entry& j = b.require("J");
            const Matrix jm = matrix_from(j, "kahler.J", n);
            check_dim(j.line, "kahler.J", n, jm.rows());
            doc.kahler = KahlerData{jm, pairs_from(all(b, "pair"), "kahler.pair", jm.rows())};
        } else if (kind == "frobenius") {
            const Vector phi = vector_from(b.require("phi").line, "frobenius.phi", n);
            FrobeniusData f{KForm::one_form(phi), std::nullopt};
            if (const Entry* p = b.find("principal"))
                f.principal = vector_from(p->line, "frobenius.principal", phi.size());
            doc.frobenius = f;
        } else if (kind == "params") {
            auto one = [&](const std::string& key) {
                const Entry& e = b.require(key);
                if (e.line.tokens.size() != 2)
                    throw ParseError(e.line.offset, "params." + key, "expected one value");
                return scalar_at(e.line.tokens[1], "params." + key);
            };
            DoubleExtensionParams p;
            p.a = one("a");
            p.b = one("b");
            p.c = one("c");
            p.d = one("d");
            p.u = vector_from(b.require("u").line, "params.u", n);
            doc.params = p;
        }
    }
    return doc;
}

LieAlgebra parse_algebra(std::string_view text)
{
    ParsedDocument doc = parse_document(text);
    if (!doc.algebra)
        throw ParseError(0, "algebra", "document has no algebra block");
    return *doc.algebra;
}

// ------------------------------------------------------ inline notations

namespace {

std::string strip_spaces(std::string_view text)
{
    std::string out;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            out += c;
    // accept the UTF-8 wedge and composition signs as ASCII
    for (const auto& [from, to] : {std::pair<std::string, std::string>{"∧", "^"}, {"·", "*"}}) {
        std::size_t pos;
        while ((pos = out.find(from)) != std::string::npos)
            out.replace(pos, from.size(), to);
    }
    return out;
}

std::size_t label_index(const std::string& raw, const std::vector<std::string>& labels, std::size_t offset,
                        const std::string& field)
{
    std::string name = raw;
    if (!name.empty() && name.back() == '*')
        name.pop_back();
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == name)
            return i;
    throw ParseError(offset, field, "unknown basis label '" + raw + "'");
}

// Splits "a - 1/2*b + c" into signed terms. Each term is (coefficient, body).
struct Term {
    Scalar coeff;
    std::string body;
    std::size_t offset;
};

std::vector<Term> split_terms(const std::string& s, const std::string& field)
{
    std::vector<Term> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const std::size_t start = i;
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (!out.empty()) {
            throw ParseError(i, field, "expected '+' or '-'");
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != '+' && s[j] != '-')
            ++j;
        std::string body = s.substr(i, j - i);
        if (body.empty())
            throw ParseError(i, field, "empty term");
        Scalar coeff = sign;
        const std::size_t star = body.find('*');
        if (!body.empty() && (std::isdigit(static_cast<unsigned char>(body[0])))) {
            if (star == std::string::npos)
                throw ParseError(i, field, "expected coefficient*label in '" + body + "'");
            try {
                coeff *= parse_scalar(body.substr(0, star));
            } catch (const std::invalid_argument&) {
                throw ParseError(i, field, "bad coefficient '" + body.substr(0, star) + "'");
            }
            body = body.substr(star + 1);
        }
        out.push_back({coeff, body, start});
        i = j;
    }
    return out;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<Scalar> scalar_list(const std::string& s, const std::string& field)
{
    std::vector<Scalar> out;
    std::size_t offset = 0;
    for (const auto& part : split(s, ',')) {
        try {
            out.push_back(parse_scalar(part));
        } catch (const std::invalid_argument&) {
            throw ParseError(offset, field, "'" + part + "' is not a rational number");
        }
        offset += part.size() + 1;
    }
    return out;
}

}  // namespace

Vector parse_vector_expr(std::string_view text, const std::vector<std::string>& labels)
{
    const std::string s = strip_spaces(text);
    const std::size_t n = labels.size();
    if (s.empty())
        throw ParseError(0, "vector", "empty expression");
    if (s == "0")
        return Vector(n);
    if (s.find(',') != std::string::npos) {
        const auto values = scalar_list(s, "vector");
        if (values.size() != n)
            throw ParseError(0, "vector", "expected " + std::to_string(n) + " coefficients, found " +
                                              std::to_string(values.size()));
        return Vector(values);
    }
    Vector v(n);
    for (const Term& t : split_terms(s, "vector"))
        v[label_index(t.body, labels, t.offset, "vector")] += t.coeff;
    return v;
}

KForm parse_two_form_expr(std::string_view text, const std::vector<std::string>& labels)
{
    const std::string s = strip_spaces(text);
    KForm f(labels.size(), 2);
    if (s.empty())
        throw ParseError(0, "two_form", "empty expression");
    if (s == "0")
        return f;
    for (const Term& t : split_terms(s, "two_form")) {
        const std::size_t caret = t.body.find('^');
        if (caret == std::string::npos)
            throw ParseError(t.offset, "two_form", "expected a^b in '" + t.body + "'");
        const std::size_t i = label_index(t.body.substr(0, caret), labels, t.offset, "two_form");
        const std::size_t j = label_index(t.body.substr(caret + 1), labels, t.offset + caret + 1, "two_form");
        f.add_term({i, j}, t.coeff);
    }
    return f;
}

LinearMap parse_map_expr(std::string_view text, std::size_t dim)
{
    const std::string s = strip_spaces(text);
    if (s == "0")
        return Matrix(dim, dim);
    if (s == "id")
        return Matrix::identity(dim);
    if (s.rfind("diag:", 0) == 0) {
        const auto values = scalar_list(s.substr(5), "map.diag");
        if (values.size() != dim)
            throw ParseError(5, "map.diag", "expected " + std::to_string(dim) + " entries, found " +
                                                std::to_string(values.size()));
        return Matrix::diagonal(values);
    }
    if (s.rfind("matrix:", 0) == 0) {
        const auto rows = split(s.substr(7), ';');
        if (rows.size() != dim)
            throw ParseError(7, "map.matrix", "expected " + std::to_string(dim) + " rows, found " +
                                                  std::to_string(rows.size()));
        std::vector<std::vector<Scalar>> data;
        for (const auto& r : rows) {
            data.push_back(scalar_list(r, "map.matrix"));
            if (data.back().size() != dim)
                throw ParseError(7, "map.matrix", "every row needs " + std::to_string(dim) + " entries");
        }
        return Matrix::from_rows(data);
    }
    throw ParseError(0, "map", "expected diag:..., matrix:..., 0, id or a named map, found '" + s + "'");
}

std::string format_form(const KForm& form, const std::vector<std::string>& labels, WedgeConvention convention)
{
    if (form.is_zero())
        return "0";
    const int sign = convention_sign(form.degree(), convention);
    std::string out;
    for (const auto& [idx, c] : form.terms()) {
        const Scalar value = sign * c;
        const bool negative = sgn(value) < 0;
        const Scalar mag = negative ? Scalar(-value) : value;
        if (out.empty())
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        if (mag != 1 || idx.empty())
            out += to_string(mag) + (idx.empty() ? "" : "*");
        for (std::size_t k = 0; k < idx.size(); ++k)
            out += (k ? "^" : "") + labels[idx[k]] + "*";
    }
    return out;
}

// ---------------------------------------------------------------- writing

namespace {

std::string join(const Vector& v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? " " : "") + to_string(v[i]);
    return out;
}

void write_matrix(std::ostringstream& os, const std::string& key, const Matrix& m)
{
    os << "  " << key << "\n";
    for (std::size_t r = 0; r < m.rows(); ++r)
        os << "    row " << join(m.row(r)) << "\n";
}

void write_pairs(std::ostringstream& os, const KForm& f)
{
    for (const auto& [idx, c] : f.terms())
        os << "  pair " << idx[0] + 1 << " " << idx[1] + 1 << " " << to_string(c) << "\n";
}

void write_algebra_block(std::ostringstream& os, const LieAlgebra& g)
{
    os << "algebra\n  dim " << g.dim() << "\n  basis";
    for (const auto& l : g.labels())
        os << " " << l;
    os << "\n";
    for (const auto& e : g.upper_entries()) {
        os << "  bracket " << e.i + 1 << " " << e.j + 1;
        for (std::size_t k = 0; k < e.value.size(); ++k)
            if (!is_zero(e.value[k]))
                os << " " << k + 1 << ":" << to_string(e.value[k]);
        os << "\n";
    }
    os << "end\n";
}

// Labels for a structure of the given dimension: the document's algebra
// labels when they fit, default ones otherwise.
std::vector<std::string> names_for(const std::vector<std::string>& labels, std::size_t dim)
{
    return labels.size() == dim ? labels : LieAlgebra::default_labels(dim);
}

struct TextWriter {
    std::ostringstream& os;
    const std::vector<std::string>& labels;
    WedgeConvention convention;

    void operator()(const SasakianStructure& s)
    {
        os << "sasakian\n  xi " << join(s.xi) << "\n  alpha " << join(s.alpha.covector()) << "\n";
        os << "  alpha_expr " << format_form(s.alpha, names_for(labels, s.alpha.dim()), convention) << "\n";
        write_matrix(os, "phi", s.phi);
        write_matrix(os, "metric", s.metric);
        os << "end\n";
    }
    void operator()(const KahlerStructure& k)
    {
        os << "kahler\n";
        write_matrix(os, "J", k.J);
        write_pairs(os, k.omega);
        os << "  omega_expr " << format_form(k.omega, names_for(labels, k.omega.dim()), convention) << "\n";
        write_matrix(os, "metric", k.metric);
        os << "end\n";
    }
    void operator()(const FrobeniusStructure& f)
    {
        os << "frobenius\n  phi " << join(f.phi.covector()) << "\n";
        os << "  phi_expr " << format_form(f.phi, names_for(labels, f.phi.dim()), convention) << "\n";
        os << "  principal " << join(f.principal) << "\n";
        os << "end\n";
    }
    void operator()(const ContactStructure& c)
    {
        os << "contact\n  alpha " << join(c.alpha.covector()) << "\n  reeb " << join(c.reeb) << "\nend\n";
    }
    void operator()(const NamedMap& m)
    {
        os << "map " << m.name << "\n";
        for (std::size_t r = 0; r < m.map.rows(); ++r)
            os << "  row " << join(m.map.row(r)) << "\n";
        os << "end\n";
    }
    void operator()(const NamedForm& f)
    {
        const auto names = names_for(labels, f.form.dim());
        if (f.form.degree() == 1) {
            os << "form " << f.name << "\n  coeffs " << join(f.form.covector()) << "\n";
        } else if (f.form.degree() == 2) {
            os << "two_form " << f.name << "\n  dim " << f.form.dim() << "\n";
            write_pairs(os, f.form);
        } else {
            os << "form " << f.name << "\n  degree " << f.form.degree() << "\n";
        }
        os << "  expr " << format_form(f.form, names, convention) << "\nend\n";
    }
    void operator()(const DoubleExtensionParams& p)
    {
        os << "params\n  a " << to_string(p.a) << "\n  b " << to_string(p.b) << "\n  c " << to_string(p.c)
           << "\n  d " << to_string(p.d) << "\n  u " << join(p.u) << "\nend\n";
    }
};

using ojson = nlohmann::ordered_json;

ojson json_vector(const Vector& v)
{
    ojson out = ojson::array();
    for (const auto& x : v)
        out.push_back(to_string(x));
    return out;
}

ojson json_matrix(const Matrix& m)
{
    ojson out = ojson::array();
    for (std::size_t r = 0; r < m.rows(); ++r)
        out.push_back(json_vector(m.row(r)));
    return out;
}

ojson json_pairs(const KForm& f)
{
    ojson out = ojson::array();
    for (const auto& [idx, c] : f.terms())
        out.push_back({{"i", idx[0] + 1}, {"j", idx[1] + 1}, {"value", to_string(c)}});
    return out;
}

ojson json_algebra(const LieAlgebra& g)
{
    ojson brackets = ojson::array();
    for (const auto& e : g.upper_entries()) {
        ojson coeffs = ojson::array();
        for (std::size_t k = 0; k < e.value.size(); ++k)
            if (!is_zero(e.value[k]))
                coeffs.push_back({{"k", k + 1}, {"value", to_string(e.value[k])}});
        brackets.push_back({{"i", e.i + 1}, {"j", e.j + 1}, {"coeffs", coeffs}});
    }
    return {{"dim", g.dim()}, {"basis", g.labels()}, {"brackets", brackets}};
}

struct JsonWriter {
    const std::vector<std::string>& labels;
    WedgeConvention convention;

    ojson operator()(const SasakianStructure& s) const
    {
        return {{"kind", "sasakian"},
                {"xi", json_vector(s.xi)},
                {"alpha", json_vector(s.alpha.covector())},
                {"alpha_expr", format_form(s.alpha, names_for(labels, s.alpha.dim()), convention)},
                {"phi", json_matrix(s.phi)},
                {"metric", json_matrix(s.metric)}};
    }
    ojson operator()(const KahlerStructure& k) const
    {
        return {{"kind", "kahler"},
                {"J", json_matrix(k.J)},
                {"omega", json_pairs(k.omega)},
                {"omega_expr", format_form(k.omega, names_for(labels, k.omega.dim()), convention)},
                {"metric", json_matrix(k.metric)}};
    }
    ojson operator()(const FrobeniusStructure& f) const
    {
        return {{"kind", "frobenius"},
                {"phi", json_vector(f.phi.covector())},
                {"phi_expr", format_form(f.phi, names_for(labels, f.phi.dim()), convention)},
                {"principal", json_vector(f.principal)}};
    }
    ojson operator()(const ContactStructure& c) const
    {
        return {{"kind", "contact"}, {"alpha", json_vector(c.alpha.covector())}, {"reeb", json_vector(c.reeb)}};
    }
    ojson operator()(const NamedMap& m) const
    {
        return {{"kind", "map"}, {"name", m.name}, {"matrix", json_matrix(m.map)}};
    }
    ojson operator()(const NamedForm& f) const
    {
        const auto names = names_for(labels, f.form.dim());
        ojson out = {{"kind", f.form.degree() == 2 ? "two_form" : "form"}, {"name", f.name}};
        if (f.form.degree() == 1)
            out["coeffs"] = json_vector(f.form.covector());
        else if (f.form.degree() == 2) {
            out["dim"] = f.form.dim();
            out["pairs"] = json_pairs(f.form);
        }
        out["expr"] = format_form(f.form, names, convention);
        return out;
    }
    ojson operator()(const DoubleExtensionParams& p) const
    {
        return {{"kind", "params"},     {"a", to_string(p.a)}, {"b", to_string(p.b)},
                {"c", to_string(p.c)}, {"d", to_string(p.d)}, {"u", json_vector(p.u)}};
    }
};

}  // namespace

std::string write_algebra(const LieAlgebra& g)
{
    std::ostringstream os;
    os << format_header << "\n";
    write_algebra_block(os, g);
    return os.str();
}

std::string render_text(const ReportDocument& doc, const RenderOptions& options)
{
    std::ostringstream os;
    os << format_header << "\n";
    os << "report " << doc.command << "\n";
    os << "verdict " << (doc.report.passed() ? "pass" : "fail") << "\n";
    for (const auto& item : doc.report.items()) {
        os << "item " << item.name << " " << (item.passed() ? "pass" : "fail") << "\n";
        if (item.passed())
            continue;
        const Witness& w = item.witness;
        if (!w.indices.empty()) {
            os << "  indices";
            for (auto i : w.indices)
                os << " " << i + 1;
            os << "\n";
        }
        if (!w.values.empty()) {
            os << "  values";
            for (const auto& v : w.values)
                os << " " << to_string(v);
            os << "\n";
        }
        if (!w.detail.empty())
            os << "  detail " << w.detail << "\n";
    }
    for (const auto& note : doc.report.notes())
        os << "note " << note.name << " " << note.text << "\n";
    for (const auto& [key, value] : doc.info)
        os << "info " << key << " " << value << "\n";
    const std::vector<std::string> labels =
        doc.algebra ? doc.algebra->labels() : std::vector<std::string>{};
    if (doc.algebra)
        write_algebra_block(os, *doc.algebra);
    for (const auto& item : doc.items)
        std::visit(TextWriter{os, labels, options.convention}, item);
    return os.str();
}

std::string render_json(const ReportDocument& doc, const RenderOptions& options)
{
    ojson out;
    out["format"] = format_header;
    out["command"] = doc.command;
    out["verdict"] = doc.report.passed() ? "pass" : "fail";
    ojson items = ojson::array();
    for (const auto& item : doc.report.items()) {
        ojson j = {{"name", item.name}, {"verdict", item.passed() ? "pass" : "fail"}};
        if (!item.passed()) {
            ojson idx = ojson::array();
            for (auto i : item.witness.indices)
                idx.push_back(i + 1);
            ojson vals = ojson::array();
            for (const auto& v : item.witness.values)
                vals.push_back(to_string(v));
            j["witness"] = {{"indices", idx}, {"values", vals}, {"detail", item.witness.detail}};
        }
        items.push_back(j);
    }
    out["items"] = items;
    ojson notes = ojson::array();
    for (const auto& n : doc.report.notes())
        notes.push_back({{"name", n.name}, {"text", n.text}});
    out["notes"] = notes;
    ojson info = ojson::array();
    for (const auto& [k, v] : doc.info)
        info.push_back({{"key", k}, {"value", v}});
    out["info"] = info;
    const std::vector<std::string> labels =
        doc.algebra ? doc.algebra->labels() : std::vector<std::string>{};
    out["algebra"] = doc.algebra ? json_algebra(*doc.algebra) : ojson(nullptr);
    ojson structures = ojson::array();
    for (const auto& item : doc.items)
        structures.push_back(std::visit(JsonWriter{labels, options.convention}, item));
    out["structures"] = structures;
    return out.dump(2) + "\n";
}

}  // namespace lieforge
