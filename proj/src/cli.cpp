#include "ksmooth/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <optional>

#include "ksmooth/error.hpp"
#include "ksmooth/extremal.hpp"
#include "ksmooth/hilbert.hpp"
#include "ksmooth/io.hpp"
#include "ksmooth/verify.hpp"

namespace ksmooth {

namespace {

struct Options {
    std::vector<std::string> ops;
    std::string other;
    std::string space;
    std::string point;
    double tol = kUnitTol;
    double gap_tol = kGapTol;
    std::uint64_t seed = 1;
    std::size_t seeds = 100;
    std::string format = "text";
    std::string theorem;
    std::optional<std::size_t> samples;
    std::optional<std::size_t> claim_order;
    std::optional<std::size_t> claim_attaining;
};

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::GenerationExhausted:
        case ErrorKind::Internal: return 1;
        default: return 2;
    }
}

class Runner {
public:
    Runner(const Options& o, std::ostream& out, std::ostream& err) : o_(o), out_(out), err_(err) {}

    int dispatch(const std::string& verb) {
        if (verb == "space-validate") return space_validate();
        if (verb == "space-dual") return space_dual();
        if (verb == "point-smoothness") return point_smooth();
        if (verb == "op-norm") return op_norm();
        if (verb == "op-mt") return op_mt();
        if (verb == "op-smoothness") return op_smoothness();
        if (verb == "op-classify") return op_classify();
        if (verb == "op-bj") return op_bj();
        if (verb == "op-adjoint") return op_adjoint();
        if (verb == "op-extreme") return op_extreme();
        if (verb == "hilbert-smoothness") return hilbert_smooth();
        if (verb == "hilbert-bj") return hilbert_bj();
        if (verb == "verify") return verify();
        throw Error(ErrorKind::ValidationError, "unknown verb " + verb);
    }

private:
    void emit(const Json& j) { out_ << render(j, o_.format == "json"); }

    void warn(const std::vector<std::string>& warnings) {
        for (const auto& w : warnings) err_ << "warning: " << w << "\n";
    }

    Space space() {
        if (o_.space.empty()) throw Error(ErrorKind::ValidationError, "--space is required");
        auto p = load_space(o_.space);
        warn(p.warnings);
        return p.space;
    }

    Operator op(std::size_t index = 0) {
        std::string path;
        if (index < o_.ops.size())
            path = o_.ops[index];
        else if (index == 1 && !o_.other.empty())
            path = o_.other;
        if (path.empty())
            throw Error(ErrorKind::ValidationError, index == 0 ? "--op is required" : "a second operator is required (--other or a second --op)");
        auto p = load_operator(path);
        warn(p.warnings);
        return p.op;
    }

    int space_validate() {
        Space s = space();
        Json j = space_json(s);
        if (const auto* p = std::get_if<PolyhedralSpace>(&s)) {
            Json fs = Json::array();
            for (const auto& f : p->facets()) fs.push_back(vector_json(f));
            j["vertex_count"] = p->vertices().size();
            j["facet_count"] = p->facets().size();
            j["facets"] = std::move(fs);
        }
        emit(j);
        return 0;
    }

    int space_dual() {
        Space s = space();
        const auto* p = std::get_if<PolyhedralSpace>(&s);
        if (!p) {
            emit(space_json(s));
            return 0;
        }
        emit(space_json(dual_space(*p)));
        return 0;
    }

    int point_smooth() {
        Space s = space();
        if (o_.point.empty()) throw Error(ErrorKind::ValidationError, "--point is required");
        Vec y = parse_point(o_.point);
        Json j{{"point", vector_json(y)}, {"norm", scalar_json(norm(s, y))}};
        auto face = support_face(s, y, o_.tol);
        j["smoothness"] = point_smoothness(s, y, o_.tol);
        j["extreme_point"] = is_extreme_point(s, y, o_.tol);
        j["functionals"] = support_face_json(face)["functionals"];
        emit(j);
        return 0;
    }

    int op_norm() {
        Operator t = op();
        emit(Json{{"norm", scalar_json(operator_norm(t))}});
        return 0;
    }

    int op_mt() {
        emit(attainment_json(norm_attainment_ext(op())));
        return 0;
    }

    int op_smoothness() {
        Operator t = op();
        auto report = operator_smoothness(t);
        Json j = smoothness_json(report);
        const std::size_t oracle = brute_rank_oracle(t);
        j["oracle_order"] = oracle;
        Json att = Json::array();
        for (const auto& v : norm_attainment_ext(t).attaining_vertices) att.push_back(vector_json(v));
        j["attaining_vertices"] = std::move(att);
        bool violated = oracle != report.order || !report.prediction_agrees();
        Json claims = Json::object();
        if (o_.claim_order) {
            const bool ok = *o_.claim_order == report.order;
            claims["order"] = Json{{"claimed", *o_.claim_order}, {"computed", report.order}, {"agrees", ok}};
            violated = violated || !ok;
        }
        if (o_.claim_attaining) {
            const bool ok = *o_.claim_attaining == report.attaining_count;
            claims["attaining_count"] =
                Json{{"claimed", *o_.claim_attaining}, {"computed", report.attaining_count}, {"agrees", ok}};
            violated = violated || !ok;
        }
        if (!claims.empty()) j["claims"] = std::move(claims);
        emit(j);
        if (violated) err_ << "divergence: computed values differ from a claim or cross-check\n";
        return violated ? 1 : 0;
    }

    int op_classify() {
        Operator t = op();
        auto report = classify_linf3_case(t);
        emit(smoothness_json(report));
        if (!report.prediction_agrees()) {
            err_ << "violation: predicted order differs from the rank\n";
            return 1;
        }
        return 0;
    }

    int op_bj() {
        Operator t = op(0), a = op(1);
        emit(Json{{"orthogonal", bj_orthogonal(t, a)}});
        return 0;
    }

    int op_adjoint() {
        emit(operator_json(adjoint(op())));
        return 0;
    }

    int op_extreme() {
        Operator t = op();
        Json j{{"extreme", extreme_contraction_lp(t)}};
        bool violated = false;
        try {
            auto c = extreme_contraction_smoothness(t);
            j["criterion"] = extreme_json(c);
            violated = c.extreme != j["extreme"].get<bool>() || !c.bridge_holds;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::WrongSpaces) throw;
        }
        emit(j);
        return violated ? 1 : 0;
    }

    int hilbert_smooth() {
        Operator t = op();
        auto s = top_singular_subspace(t, o_.gap_tol);
        const std::size_t order = hilbert_smoothness(t, o_.gap_tol);
        const std::size_t sampled = sampled_rank_oracle(t, o_.gap_tol, o_.samples, o_.seed);
        emit(Json{{"sigma_max", s.sigma_max},
                  {"multiplicity", s.multiplicity},
                  {"gap", s.gap},
                  {"field", s.field == Field::real ? "real" : "complex"},
                  {"order", order},
                  {"sampled_order", sampled}});
        return order == sampled ? 0 : 1;
    }

    int hilbert_bj() {
        Operator t = op(0), a = op(1);
        emit(Json{{"orthogonal", bj_orthogonal_hilbert(t, a, o_.gap_tol)}});
        return 0;
    }

    int verify() {
        if (o_.theorem.empty()) throw Error(ErrorKind::ValidationError, "--theorem is required");
        auto report = verify_theorem(o_.theorem, o_.seeds, o_.seed);
        emit(verification_json(report));
        return report.failures.empty() ? 0 : 1;
    }

    const Options& o_;
    std::ostream& out_;
    std::ostream& err_;
};

struct Verb {
    const char* name;
    const char* help;
};

constexpr Verb kVerbs[] = {
    {"space-validate", "validate a space file and list its vertices and facets"},
    {"space-dual", "print the dual space"},
    {"point-smoothness", "support face and smoothness of a unit vector"},
    {"op-norm", "operator norm"},
    {"op-mt", "norm-attaining extreme points"},
    {"op-smoothness", "order of smoothness with witnesses"},
    {"op-classify", "case classification for maps out of l-infinity^3"},
    {"op-bj", "Birkhoff-James orthogonality of two operators, polyhedral spaces"},
    {"op-adjoint", "adjoint operator file"},
    {"op-extreme", "extreme contraction test"},
    {"hilbert-smoothness", "top singular structure and order of smoothness"},
    {"hilbert-bj", "Birkhoff-James orthogonality of two operators, Euclidean spaces"},
    {"verify", "run a seeded theorem verification suite"},
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"smoothness of vectors and operators between finite-dimensional normed spaces", "smoothctl"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--op", o.ops, "operator file (repeat for two-operator verbs)");
    app.add_option("--other", o.other, "second operator file");
    app.add_option("--space", o.space, "space file");
    app.add_option("--point", o.point, "comma-separated rationals");
    app.add_option("--tol", o.tol, "unit-norm tolerance for Euclidean spaces")->check(CLI::PositiveNumber);
    app.add_option("--gap-tol", o.gap_tol, "singular value clustering tolerance")->check(CLI::PositiveNumber);
    app.add_option("--seed", o.seed, "seed");
    app.add_option("--seeds", o.seeds, "number of seeds for verify");
    app.add_option("--theorem", o.theorem, "theorem id for verify");
    app.add_option("--samples", o.samples, "sample count for the sampled rank oracle");
    app.add_option("--claim-order", o.claim_order, "expected order; exit 1 when it differs");
    app.add_option("--claim-attaining", o.claim_attaining, "expected number of attaining vertices; exit 1 when it differs");
    for (const auto& v : kVerbs) app.add_subcommand(v.name, v.help);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    }
    const std::string verb = app.get_subcommands().front()->get_name();
    if (verb == "verify" && std::find(theorem_ids().begin(), theorem_ids().end(), o.theorem) == theorem_ids().end()) {
        err << "error: unknown theorem id \"" << o.theorem << "\"; known:";
        for (const auto& id : theorem_ids()) err << " " << id;
        err << "\n";
        return 2;
    }
    try {
        Runner r(o, out, err);
        return r.dispatch(verb);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace ksmooth
