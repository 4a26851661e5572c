#pragma once

#include "lieforge/forms.hpp"
#include "lieforge/structures.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace lieforge {

inline constexpr std::string_view format_header = "lieforge/1";

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, std::string field, const std::string& message);
    std::size_t offset() const { return offset_; }
    const std::string& field() const { return field_; }

private:
    std::size_t offset_;
    std::string field_;
};

// Structure data as it appears in files. Metrics are derived, never read.
struct SasakianData {
    Vector xi;
    KForm alpha;
    LinearMap phi;
};
struct KahlerData {
    LinearMap J;
    KForm omega;
};
struct FrobeniusData {
    KForm phi;
    std::optional<Vector> principal;
};

// Everything a lieforge/1 document can carry. Report lines (verdict, item,
// note, info) are skipped on input, so command output can be read back.
struct ParsedDocument {
    std::optional<LieAlgebra> algebra;
    std::optional<KForm> form;
    std::optional<KForm> two_form;
    std::optional<LinearMap> map;
    std::optional<SasakianData> sasakian;
    std::optional<KahlerData> kahler;
    std::optional<FrobeniusData> frobenius;
    std::optional<DoubleExtensionParams> params;
};

ParsedDocument parse_document(std::string_view text);
LieAlgebra parse_algebra(std::string_view text);

// Inline command-line notations, resolved against the algebra's labels:
//   vector / 1-form: "e3 + 1/2*e5", "0", or a comma list "0,0,1"
//   2-form:          "e1^e2 - 1/2*e3^e4" (values on basis pairs) or "0"
//   map:             "diag:a,b,c", "matrix:r11,r12;r21,r22", "0", "id"
Vector parse_vector_expr(std::string_view text, const std::vector<std::string>& labels);
KForm parse_two_form_expr(std::string_view text, const std::vector<std::string>& labels);
LinearMap parse_map_expr(std::string_view text, std::size_t dim);

// "e1*^e2* - e3*^e4*" under the chosen convention; "0" for the zero form.
std::string format_form(const KForm& form, const std::vector<std::string>& labels,
                        WedgeConvention convention = WedgeConvention::Determinant);

struct NamedMap {
    std::string name;
    LinearMap map;
};
struct NamedForm {
    std::string name;
    KForm form;
};

using DocumentItem = std::variant<SasakianStructure, KahlerStructure, FrobeniusStructure, ContactStructure, NamedMap,
                                  NamedForm, DoubleExtensionParams>;

struct ReportDocument {
    std::string command;
    CheckReport report;
    std::vector<std::pair<std::string, std::string>> info;
    std::optional<LieAlgebra> algebra;
    std::vector<DocumentItem> items;
};

struct RenderOptions {
    WedgeConvention convention = WedgeConvention::Determinant;
};

std::string render_text(const ReportDocument& doc, const RenderOptions& options = {});
std::string render_json(const ReportDocument& doc, const RenderOptions& options = {});

// Just the algebra block, with header.
std::string write_algebra(const LieAlgebra& g);

}  // namespace lieforge
