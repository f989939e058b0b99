#include "ksmooth/io.hpp"

#include <fstream>
#include <sstream>

#include "ksmooth/error.hpp"

namespace ksmooth {

namespace {

[[noreturn]] void field_error(const std::string& where, const std::string& what) {
    throw Error(ErrorKind::ParseError, "field " + (where.empty() ? std::string("/") : where) + ": " + what);
}

Rational rational_field(const Json& v, const std::string& where) {
    if (v.is_number_integer()) return Rational(v.dump());
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>());
        } catch (const Error& e) {
            field_error(where, e.what());
        }
    }
    field_error(where, "expected a rational string or integer");
}

std::size_t size_field(const Json& doc, const char* key, const std::string& where) {
    auto it = doc.find(key);
    if (it == doc.end()) field_error(where + "/" + key, "missing");
    if (!it->is_number_unsigned() || it->get<std::size_t>() == 0)
        field_error(where + "/" + key, "expected a positive integer");
    return it->get<std::size_t>();
}

Field field_of(const Json& doc, const std::string& where) {
    auto it = doc.find("field");
    if (it == doc.end()) return Field::real;
    if (*it == "real") return Field::real;
    if (*it == "complex") return Field::complex;
    field_error(where + "/field", "expected \"real\" or \"complex\"");
}

Json parse_document(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw Error(ErrorKind::ParseError,
                    "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json matrix_json(const Matrix& re, const std::optional<Matrix>& im) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < re.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < re.cols(); ++j) {
            if (im)
                row.push_back(Json::array({to_string(re(i, j)), to_string((*im)(i, j))}));
            else
                row.push_back(to_string(re(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

bool is_primitive(const Json& v) { return !v.is_structured(); }

std::string primitive_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

bool flat_array(const Json& v) {
    if (!v.is_array()) return false;
    for (const auto& e : v)
        if (!is_primitive(e)) return false;
    return true;
}

std::string tuple_text(const Json& v) {
    std::string s = "(";
    bool first = true;
    for (const auto& e : v) {
        if (!first) s += ", ";
        first = false;
        s += primitive_text(e);
    }
    return s + ")";
}

void render_object(const Json& obj, int indent, std::string& out);

void render_value(const std::string& key, const Json& v, int indent, std::string& out) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (is_primitive(v)) {
        out += pad + key + ": " + primitive_text(v) + "\n";
    } else if (flat_array(v)) {
        out += pad + key + ": " + tuple_text(v) + "\n";
    } else if (v.is_object()) {
        out += pad + key + ":\n";
        render_object(v, indent + 2, out);
    } else {
        out += pad + key + ":" + (v.empty() ? " none" : "") + "\n";
        for (const auto& e : v) {
            if (flat_array(e)) {
                out += pad + "  - " + tuple_text(e) + "\n";
            } else if (e.is_object()) {
                std::string inner;
                render_object(e, indent + 4, inner);
                inner.replace(static_cast<std::size_t>(indent), 4, "  - ");
                out += inner;
            } else if (is_primitive(e)) {
                out += pad + "  - " + primitive_text(e) + "\n";
            } else {
                out += pad + "  - " + e.dump() + "\n";
            }
        }
    }
}

void render_object(const Json& obj, int indent, std::string& out) {
    for (auto it = obj.begin(); it != obj.end(); ++it) render_value(it.key(), it.value(), indent, out);
}

}  // namespace

ParsedSpace parse_space_json(const Json& doc, const std::string& where) {
    if (!doc.is_object()) field_error(where, "expected an object");
    auto type_it = doc.find("type");
    if (type_it == doc.end() || !type_it->is_string()) field_error(where + "/type", "missing space type");
    const std::string type = type_it->get<std::string>();
    const std::size_t dim = size_field(doc, "dim", where);
    if (type == "euclidean") return {EuclideanSpace{dim, field_of(doc, where)}, {}};
    if (doc.contains("field") && field_of(doc, where) == Field::complex)
        field_error(where + "/field", "polyhedral spaces are real");
    if (type == "linf" || type == "l1") {
        if (dim > scope_max_dim())
            throw Error(ErrorKind::ScopeExceeded, "dimension " + std::to_string(dim) + " above scope bound");
        return {type == "linf" ? PolyhedralSpace::linf(dim) : PolyhedralSpace::l1(dim), {}};
    }
    if (type != "polyhedral") field_error(where + "/type", "unknown space type \"" + type + "\"");
    auto vit = doc.find("vertices");
    if (vit == doc.end() || !vit->is_array() || vit->empty()) field_error(where + "/vertices", "expected a list");
    std::vector<Vec> points;
    for (std::size_t i = 0; i < vit->size(); ++i) {
        const Json& p = (*vit)[i];
        const std::string here = where + "/vertices/" + std::to_string(i);
        if (!p.is_array() || p.size() != dim) field_error(here, "expected " + std::to_string(dim) + " coordinates");
        Vec v;
        for (std::size_t j = 0; j < p.size(); ++j) v.push_back(rational_field(p[j], here + "/" + std::to_string(j)));
        points.push_back(std::move(v));
    }
    try {
        auto validated = validate_polyhedral(std::move(points));
        return {std::move(validated.space), std::move(validated.warnings)};
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ScopeExceeded) throw;
        throw Error(e.kind(), std::string("field ") + (where.empty() ? "/" : where) + ": " + e.what());
    }
}

ParsedSpace parse_space(std::string_view text) { return parse_space_json(parse_document(text)); }

ParsedOperator parse_operator_json(const Json& doc) {
    if (!doc.is_object()) field_error("", "expected an object");
    for (const char* key : {"matrix", "domain", "codomain"})
        if (!doc.contains(key)) field_error(std::string("/") + key, "missing");
    ParsedSpace dom = parse_space_json(doc["domain"], "/domain");
    ParsedSpace cod = parse_space_json(doc["codomain"], "/codomain");
    const std::size_t rows = dimension(cod.space), cols = dimension(dom.space);
    const Json& m = doc["matrix"];
    if (!m.is_array() || m.size() != rows)
        field_error("/matrix", "expected " + std::to_string(rows) + " rows (codomain dimension)");
    Matrix re(rows, cols), im(rows, cols);
    bool has_imag = false;
    for (std::size_t i = 0; i < rows; ++i) {
        const std::string here = "/matrix/" + std::to_string(i);
        if (!m[i].is_array() || m[i].size() != cols)
            field_error(here, "expected " + std::to_string(cols) + " entries (domain dimension)");
        for (std::size_t j = 0; j < cols; ++j) {
            const Json& e = m[i][j];
            const std::string at = here + "/" + std::to_string(j);
            if (e.is_array()) {
                if (e.size() != 2) field_error(at, "complex entries are [re, im] pairs");
                re(i, j) = rational_field(e[0], at + "/0");
                im(i, j) = rational_field(e[1], at + "/1");
                has_imag = true;
            } else {
                re(i, j) = rational_field(e, at);
            }
        }
    }
    std::vector<std::string> warnings = dom.warnings;
    for (auto& w : cod.warnings) warnings.push_back(w);
    std::optional<Matrix> imag;
    if (has_imag) imag = std::move(im);
    try {
        return {Operator(std::move(re), std::move(dom.space), std::move(cod.space), std::move(imag)),
                std::move(warnings)};
    } catch (const Error& e) {
        throw Error(ErrorKind::ValidationError, e.what());
    }
}

ParsedOperator parse_operator(std::string_view text) { return parse_operator_json(parse_document(text)); }

ParsedSpace load_space(const std::string& path) { return parse_space(read_file(path)); }
ParsedOperator load_operator(const std::string& path) { return parse_operator(read_file(path)); }

Vec parse_point(std::string_view text) {
    Vec v;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string_view::npos) comma = text.size();
        std::string_view part = text.substr(start, comma - start);
        while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
        while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
        if (part.empty()) throw Error(ErrorKind::ParseError, "empty coordinate in point \"" + std::string(text) + "\"");
        v.push_back(parse_rational(part));
        start = comma + 1;
    }
    return v;
}

Json vector_json(std::span<const Rational> v) {
    Json a = Json::array();
    for (const auto& q : v) a.push_back(to_string(q));
    return a;
}

Json scalar_json(const Scalar& s) {
    if (s.is_exact()) return to_string(s.exact());
    return s.to_double();
}

Json space_json(const Space& space) {
    if (const auto* e = std::get_if<EuclideanSpace>(&space))
        return Json{{"type", "euclidean"}, {"dim", e->dim}, {"field", e->field == Field::real ? "real" : "complex"}};
    const auto& p = std::get<PolyhedralSpace>(space);
    Json verts = Json::array();
    for (const auto& v : p.vertices()) verts.push_back(vector_json(v));
    return Json{{"type", "polyhedral"}, {"dim", p.dim()}, {"vertices", std::move(verts)}};
}

Json operator_json(const Operator& t) {
    return Json{{"matrix", matrix_json(t.matrix(), t.imag())},
                {"domain", space_json(t.domain())},
                {"codomain", space_json(t.codomain())}};
}

Json attainment_json(const NormAttainment& att) {
    Json verts = Json::array();
    for (const auto& v : att.attaining_vertices) verts.push_back(vector_json(v));
    return Json{{"norm", scalar_json(att.norm_value)},
                {"attaining_count", att.attaining_vertices.size()},
                {"attaining_vertices", std::move(verts)}};
}

Json smoothness_json(const SmoothnessReport& r) {
    Json out{{"order", r.order}, {"norm", scalar_json(r.norm_value)}, {"attaining_count", r.attaining_count}};
    if (r.case_label) out["case"] = to_string(*r.case_label);
    if (r.s1_size) out["s1_size"] = *r.s1_size;
    if (r.predicted_order) {
        out["predicted_order"] = *r.predicted_order;
        out["prediction_agrees"] = r.prediction_agrees();
    }
    Json pairs = Json::array();
    for (const auto& p : r.witness_pairs) {
        Json ys = Json::array();
        for (const auto& s : p.y_star) ys.push_back(scalar_json(s));
        pairs.push_back(Json{{"x", vector_json(p.x)}, {"y_star", std::move(ys)}});
    }
    out["witness_pairs"] = std::move(pairs);
    return out;
}

Json support_face_json(const SupportFace& face) {
    Json fs = Json::array();
    for (const auto& f : face.functionals) fs.push_back(vector_json(f));
    return Json{{"point", vector_json(face.base_point)}, {"functionals", std::move(fs)}};
}

Json extreme_json(const ExtremeCriterion& c) {
    return Json{{"attaining_count", c.attaining_count},
                {"images_extreme", c.images_extreme},
                {"extreme", c.extreme},
                {"order", c.order},
                {"bridge_holds", c.bridge_holds}};
}

std::string render_text(const Json& report) {
    std::string out;
    if (report.is_object())
        render_object(report, 0, out);
    else
        out = primitive_text(report) + "\n";
    return out;
}

std::string render(const Json& report, bool as_json) { return as_json ? report.dump(2) + "\n" : render_text(report); }

}  // namespace ksmooth
