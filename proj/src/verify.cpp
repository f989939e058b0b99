#include "ksmooth/verify.hpp"

#include <Eigen/Dense>

#include <chrono>
#include <functional>
#include <optional>
#include <random>

#include "ksmooth/error.hpp"
#include "ksmooth/extremal.hpp"
#include "ksmooth/generators.hpp"
#include "ksmooth/hilbert.hpp"

namespace ksmooth {

namespace {

constexpr std::size_t kAttempts = 200;

struct Outcome {
    bool pass = true;
    std::string detail;
    std::string bucket;
    Json payload;
};

// One seed: draw candidates until the hypotheses hold, then check.
struct Context {
    std::mt19937_64 rng;
    std::size_t rejections = 0;

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
    std::uint64_t next() { return rng(); }
};

Outcome fail(std::string detail, Json payload, std::string bucket = "") {
    return {false, std::move(detail), std::move(bucket), std::move(payload)};
}

Outcome pass(std::string bucket) { return {true, "", std::move(bucket), Json()}; }

[[noreturn]] void exhausted(const std::string& id) {
    throw Error(ErrorKind::GenerationExhausted, id + ": no hypothesis-satisfying instance within budget");
}

PolyhedralSpace random_space(Context& c, std::size_t dim) {
    switch (c.uniform(0, 3)) {
        case 0: return PolyhedralSpace::linf(dim);
        case 1: return PolyhedralSpace::l1(dim);
        default: return random_polytope(c.rng, dim);
    }
}

std::string dims(const Operator& t) {
    return std::to_string(dimension(t.domain())) + "->" + std::to_string(dimension(t.codomain()));
}

std::vector<Vec> canonical_attaining(const Operator& t) {
    std::vector<Vec> reps;
    for (const auto& x : norm_attainment_ext(t).attaining_vertices)
        if (leading_positive(x)) reps.push_back(x);
    return reps;
}

// Point smoothness of Tx/‖T‖; Euclidean spaces are smooth.
std::size_t image_smoothness(const Operator& t, const Vec& x) {
    if (!is_polyhedral(t.codomain())) return 1;
    const Rational n = operator_norm(t).exact();
    return point_smoothness(t.codomain(), scaled(t.apply(x), 1 / n));
}

Json pair_payload(const Operator& t, const Operator& a) {
    Json j = operator_json(t);
    j["other"] = operator_json(a);
    return j;
}

Outcome check_adjoint(Context& c) {
    for (std::size_t k = 0; k < kAttempts; ++k) {
        PolyhedralSpace x = random_space(c, static_cast<std::size_t>(c.uniform(2, 4)));
        PolyhedralSpace y = random_space(c, static_cast<std::size_t>(c.uniform(2, 4)));
        Matrix m = random_integer_matrix(c.rng, y.dim(), x.dim(), 3);
        if (m.is_zero()) {
            ++c.rejections;
            continue;
        }
        Operator t = normalized(Operator(m, x, y));
        Operator ts = adjoint(t);
        const std::size_t a = operator_smoothness(t).order, b = operator_smoothness(ts).order;
        if (a != b)
            return fail("order(T) = " + std::to_string(a) + " but order(T*) = " + std::to_string(b),
                        operator_json(t), dims(t));
        if (!(adjoint(ts) == t)) return fail("adjoint is not an involution", operator_json(t), dims(t));
        return pass(dims(t));
    }
    exhausted("adjoint");
}

Operator sum_rule_candidate(Context& c) {
    InstanceConfig cfg;
    switch (c.uniform(0, 4)) {
        case 0:
            cfg.codomain = CodomainFamily::image_hull;
            cfg.target = TargetCase::reduced_independent;
            break;
        case 1:
            cfg.domain = DomainKind::random_polyhedral;
            cfg.domain_dim = static_cast<std::size_t>(c.uniform(2, 3));
            cfg.codomain = CodomainFamily::image_hull;
            cfg.codomain_dim = static_cast<std::size_t>(c.uniform(2, static_cast<int>(cfg.domain_dim)));
            break;
        case 2:
            cfg.domain = DomainKind::random_polyhedral;
            cfg.domain_dim = static_cast<std::size_t>(c.uniform(2, 3));
            cfg.codomain = CodomainFamily::euclidean;
            cfg.codomain_dim = static_cast<std::size_t>(c.uniform(1, 3));
            break;
        case 3:
            cfg.codomain = CodomainFamily::polygon;
            break;
        default:
            cfg.domain = DomainKind::linf;
            cfg.domain_dim = static_cast<std::size_t>(c.uniform(2, 4));
            cfg.codomain = CodomainFamily::random_polyhedral;
            cfg.codomain_dim = static_cast<std::size_t>(c.uniform(2, 3));
    }
    auto g = random_instance(c.next(), cfg);
    c.rejections += g.rejections;
    return g.op;
}

Outcome check_sum_rule(Context& c) {
    for (std::size_t k = 0; k < kAttempts; ++k) {
        Operator t = sum_rule_candidate(c);
        auto reps = canonical_attaining(t);
        if (rank_gauss(reps) != reps.size()) {
            ++c.rejections;
            continue;
        }
        std::size_t sum = 0;
        for (const auto& x : reps) sum += image_smoothness(t, x);
        const std::size_t order = operator_smoothness(t).order;
        const std::string bucket = "r=" + std::to_string(reps.size());
        if (order != sum)
            return fail("order " + std::to_string(order) + " but the point smoothness sum is " + std::to_string(sum),
                        operator_json(t), bucket);
        return pass(bucket);
    }
    exhausted("sum-rule");
}

Outcome check_mr_rule(Context& c) {
    for (std::size_t k = 0; k < kAttempts; ++k) {
        InstanceConfig cfg;
        const int family = c.uniform(0, 2);
        if (family == 0) {
            cfg.domain = DomainKind::linf;
            cfg.domain_dim = static_cast<std::size_t>(c.uniform(2, 4));
        } else if (family == 1) {
            cfg.domain = DomainKind::random_polyhedral;
            cfg.domain_dim = static_cast<std::size_t>(c.uniform(2, 3));
        }
        cfg.codomain = CodomainFamily::image_hull;
        cfg.codomain_dim = static_cast<std::size_t>(c.uniform(2, static_cast<int>(std::min<std::size_t>(cfg.domain_dim, 3))));
        auto g = random_instance(c.next(), cfg);
        c.rejections += g.rejections;
        const Operator& t = g.op;
        const std::size_t m = dimension(t.codomain());
        auto reps = canonical_attaining(t);
        std::vector<Vec> full;
        for (const auto& x : reps)
            if (image_smoothness(t, x) == m) full.push_back(x);
        // basis drawn from the fully smooth attaining vertices must span them all
        const std::size_t r = rank_gauss(full);
        if (full.empty() || r != rank_gauss(reps)) {
            ++c.rejections;
            continue;
        }
        const std::size_t order = operator_smoothness(t).order;
        const std::string bucket = "m=" + std::to_string(m) + ",r=" + std::to_string(r);
        if (order != m * r)
            return fail("order " + std::to_string(order) + " but m*r = " + std::to_string(m * r), operator_json(t),
                        bucket);
        return pass(bucket);
    }
    exhausted("mr-rule");
}

std::size_t expected_case_order(CaseLabel label) {
    switch (label) {
        case CaseLabel::Ia: return 3;
        case CaseLabel::Ib: return 4;
        case CaseLabel::II: return 4;
        case CaseLabel::III: return 5;
        case CaseLabel::IV: return 6;
        case CaseLabel::reduced: return 0;
    }
    return 0;
}

Outcome check_linf3_cases(Context& c, std::uint64_t seed) {
    static const TargetCase targets[] = {TargetCase::Ia, TargetCase::Ib, TargetCase::II, TargetCase::III,
                                         TargetCase::IV};
    InstanceConfig cfg;
    cfg.target = targets[seed % 5];
    const int family = c.uniform(0, 5);
    if (family == 0)
        cfg.codomain = CodomainFamily::linf2;
    else if (family == 1 && (cfg.target == TargetCase::Ia || cfg.target == TargetCase::Ib))
        cfg.codomain = CodomainFamily::euclidean2;
    auto g = random_instance(c.next(), cfg);
    c.rejections += g.rejections;
    const Operator& t = g.op;
    auto report = classify_linf3_case(t);
    const std::string bucket = to_string(*report.case_label);
    if (report.attaining_count != 8) return fail("expected 8 attaining vertices", operator_json(t), bucket);
    if (!report.prediction_agrees())
        return fail("predicted " + std::to_string(*report.predicted_order) + " but rank gives " +
                        std::to_string(report.order),
                    operator_json(t), bucket);
    if (report.order != expected_case_order(*report.case_label))
        return fail("order " + std::to_string(report.order) + " for case " + bucket, operator_json(t), bucket);
    if (brute_rank_oracle(t) != report.order) return fail("oracle disagrees", operator_json(t), bucket);
    return pass(bucket);
}

Outcome check_rank_order(Context& c, std::uint64_t seed) {
    InstanceConfig cfg;
    cfg.target = seed % 2 ? TargetCase::Ib : TargetCase::Ia;
    cfg.codomain = CodomainFamily::euclidean2;
    auto g = random_instance(c.next(), cfg);
    c.rejections += g.rejections;
    const Operator& t = g.op;
    if (norm_attainment_ext(t).attaining_vertices.size() != 8) {
        ++c.rejections;
        return check_rank_order(c, seed);
    }
    const std::size_t rank = rank_gauss(t.matrix().row_list());
    const std::size_t order = operator_smoothness(t).order;
    const std::string bucket = "rank " + std::to_string(rank);
    if (order != rank + 2)
        return fail("rank " + std::to_string(rank) + " operator has order " + std::to_string(order), operator_json(t),
                    bucket);
    return pass(bucket);
}

Operator extreme_candidate(Context& c) {
    InstanceConfig cfg;
    switch (c.uniform(0, 7)) {
        case 0: cfg.target = TargetCase::IV; break;
        case 1: cfg.target = TargetCase::IV; cfg.codomain = CodomainFamily::linf2; break;
        case 2: cfg.target = TargetCase::III; break;
        case 3: cfg.target = TargetCase::Ib; break;
        case 4: cfg.target = TargetCase::II; break;
        case 5:
            cfg.codomain = CodomainFamily::image_hull;
            cfg.target = TargetCase::reduced_independent;
            break;
        case 6: cfg.codomain = CodomainFamily::image_hull; break;
        default: cfg.codomain = CodomainFamily::polygon;
    }
    auto g = random_instance(c.next(), cfg);
    c.rejections += g.rejections;
    return g.op;
}

Outcome check_extreme(Context& c) {
    Operator t = extreme_candidate(c);
    const bool lp = extreme_contraction_lp(t);
    const auto crit = extreme_contraction_smoothness(t);
    const std::string bucket = std::string(lp ? "extreme" : "not extreme") + ", |M|=" +
                               std::to_string(crit.attaining_count);
    if (lp != crit.extreme)
        return fail(std::string("linear program says ") + (lp ? "extreme" : "not extreme") +
                        " but the vertex criterion disagrees",
                    operator_json(t), bucket);
    if (lp != (crit.order == 6))
        return fail("extremality disagrees with order " + std::to_string(crit.order), operator_json(t), bucket);
    return pass(bucket);
}

Outcome check_hilbert(Context& c, std::uint64_t seed, Field field) {
    InstanceConfig cfg;
    cfg.target = TargetCase::planted;
    cfg.domain = DomainKind::euclidean;
    cfg.codomain = CodomainFamily::euclidean;
    cfg.domain_dim = 6;
    cfg.codomain_dim = 6;
    cfg.field = field;
    cfg.multiplicity = 1 + seed % 4;
    auto g = random_instance(c.next(), cfg);
    c.rejections += g.rejections;
    const Operator& t = g.op;
    const std::size_t n = cfg.multiplicity;
    const std::size_t expected = field == Field::real ? n * (n + 1) / 2 : n * n;
    const std::size_t formula = hilbert_smoothness(t);
    const std::size_t sampled = sampled_rank_oracle(t, kGapTol, std::nullopt, c.next());
    const std::string bucket = "n=" + std::to_string(n);
    if (formula != expected || sampled != expected)
        return fail("expected " + std::to_string(expected) + ", formula " + std::to_string(formula) + ", sampled " +
                        std::to_string(sampled),
                    operator_json(t), bucket);
    return pass(bucket);
}

Outcome check_bj_hilbert(Context& c) {
    for (std::size_t k = 0; k < kAttempts; ++k) {
        InstanceConfig cfg;
        cfg.target = TargetCase::planted;
        cfg.domain = DomainKind::euclidean;
        cfg.codomain = CodomainFamily::euclidean;
        cfg.domain_dim = static_cast<std::size_t>(c.uniform(2, 4));
        cfg.codomain_dim = static_cast<std::size_t>(c.uniform(2, 4));
        cfg.multiplicity = static_cast<std::size_t>(
            c.uniform(1, static_cast<int>(std::min(cfg.domain_dim - 1, cfg.codomain_dim))));
        auto g = random_instance(c.next(), cfg);
        c.rejections += g.rejections;
        const Operator& t = g.op;
        Matrix a = random_integer_matrix(c.rng, cfg.codomain_dim, cfg.domain_dim, 3);
        if (a.is_zero()) {
            ++c.rejections;
            continue;
        }
        // W = [lo, hi] for the restricted symmetric form; shift A by a multiple of
        // T to place 0 well inside or well outside it.
        const auto s = top_singular_subspace(t);
        const Eigen::MatrixXd tm = to_complex_matrix(t).real();
        const Eigen::MatrixXd am = to_complex_matrix(Operator(a, t.domain(), t.codomain())).real();
        const Eigen::MatrixXd v0 = s.h0_basis.real();
        Eigen::MatrixXd q = v0.transpose() * tm.transpose() * am * v0;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (q + q.transpose()));
        const double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
        const double sigma2 = s.sigma_max * s.sigma_max;
        const double scale = s.sigma_max * am.norm();
        const bool want_inside = c.uniform(0, 1) == 1;
        double shift;
        if (want_inside) {
            if (hi - lo < 0.2 * scale) {
                ++c.rejections;
                continue;
            }
            shift = 0.5 * (lo + hi) + std::uniform_real_distribution<double>(-0.25, 0.25)(c.rng) * (hi - lo);
        } else {
            const double margin = std::uniform_real_distribution<double>(0.05, 0.5)(c.rng) * scale;
            shift = c.uniform(0, 1) ? hi + margin : lo - margin;
        }
        // rounded to a short rational so payloads stay readable
        const Rational cq = fraction(std::lround(shift / sigma2 * 1024), 1024);
        const double moved = cq.get_d() * sigma2;
        const double dlo = lo - moved, dhi = hi - moved;
        const double margin = std::min(std::abs(dlo), std::abs(dhi));
        if (margin < 0.05 * scale) {
            ++c.rejections;
            continue;
        }
        Operator ao(a - t.matrix().scaled(cq), t.domain(), t.codomain());
        if (ao.is_zero()) {
            ++c.rejections;
            continue;
        }
        const bool lib = bj_orthogonal_hilbert(t, ao);
        const bool oracle = bj_hilbert_min_oracle(t, ao, 1e-7);
        const std::string bucket = oracle ? "orthogonal" : "not orthogonal";
        if (lib != oracle)
            return fail(std::string("range test says ") + (lib ? "orthogonal" : "not orthogonal") +
                            " but the minimisation oracle disagrees",
                        pair_payload(t, ao), bucket);
        return pass(bucket);
    }
    exhausted("bj-hilbert");
}

Outcome check_bj_polyhedral(Context& c) {
    for (std::size_t k = 0; k < kAttempts; ++k) {
        const std::size_t n = static_cast<std::size_t>(c.uniform(2, 3));
        const std::size_t m = n == 3 && c.uniform(0, 1) ? 2 : n;
        const int bound = c.uniform(1, 3);
        Matrix tm = random_integer_matrix(c.rng, m, n, bound);
        Matrix am = random_integer_matrix(c.rng, m, n, bound);
        if (tm.is_zero() || am.is_zero()) {
            ++c.rejections;
            continue;
        }
        Operator t(tm, PolyhedralSpace::linf(n), PolyhedralSpace::linf(m));
        if (c.uniform(0, 1)) {
            // zero the slope of one active pair by subtracting a multiple of T
            const auto att = norm_attainment_ext(t);
            const auto& v = att.attaining_vertices.front();
            const Vec tv = t.apply(v), av = am.apply(v);
            std::size_t i = 0;
            for (std::size_t r = 0; r < m; ++r)
                if (abs(tv[r]) == att.norm_value.exact()) i = r;
            am = am - tm.scaled(av[i] / tv[i]);
            if (am.is_zero()) {
                ++c.rejections;
                continue;
            }
        }
        Operator a(am, t.domain(), t.codomain());
        const bool lib = bj_orthogonal(t, a);
        const bool oracle = bj_breakpoint_oracle(t, a);
        const std::string bucket = std::string(oracle ? "orthogonal" : "not orthogonal") + " " + dims(t);
        if (lib != oracle)
            return fail(std::string("slope test says ") + (lib ? "orthogonal" : "not orthogonal") +
                            " but breakpoint enumeration disagrees",
                        pair_payload(t, a), bucket);
        return pass(bucket);
    }
    exhausted("bj-polyhedral");
}

Outcome check_oracle_equality(Context& c) {
    InstanceConfig cfg;
    switch (c.uniform(0, 4)) {
        case 0: cfg.target = static_cast<TargetCase>(c.uniform(1, 5)); break;
        case 1:
            cfg.domain = DomainKind::random_polyhedral;
            cfg.domain_dim = static_cast<std::size_t>(c.uniform(2, 4));
            cfg.codomain = CodomainFamily::random_polyhedral;
            cfg.codomain_dim = static_cast<std::size_t>(c.uniform(2, 4));
            break;
        case 2:
            cfg.domain = DomainKind::linf;
            cfg.domain_dim = static_cast<std::size_t>(c.uniform(2, 4));
            cfg.codomain = CodomainFamily::euclidean;
            cfg.codomain_dim = static_cast<std::size_t>(c.uniform(1, 3));
            break;
        case 3:
            cfg.domain = DomainKind::linf;
            cfg.domain_dim = static_cast<std::size_t>(c.uniform(2, 4));
            cfg.codomain = CodomainFamily::image_hull;
            cfg.codomain_dim = 2;
            break;
        default: cfg.codomain = CodomainFamily::polygon;
    }
    auto g = random_instance(c.next(), cfg);
    c.rejections += g.rejections;
    const Operator& t = g.op;
    const std::size_t a = operator_smoothness(t).order, b = brute_rank_oracle(t);
    if (a != b)
        return fail("pipeline order " + std::to_string(a) + ", oracle " + std::to_string(b), operator_json(t),
                    dims(t));
    return pass(dims(t));
}

// Picks up to `count` independent vectors from `pool` in random order.
std::vector<Vec> independent_subset(Context& c, std::vector<Vec> pool, std::size_t count) {
    std::shuffle(pool.begin(), pool.end(), c.rng);
    SpanBasis basis(pool.front().size());
    std::vector<Vec> out;
    for (const auto& v : pool) {
        if (out.size() == count) break;
        if (basis.insert(v)) out.push_back(v);
    }
    return out;
}

Outcome check_independence(Context& c) {
    for (std::size_t k = 0; k < kAttempts; ++k) {
        PolyhedralSpace x = random_space(c, static_cast<std::size_t>(c.uniform(2, 4)));
        PolyhedralSpace y = random_space(c, static_cast<std::size_t>(c.uniform(2, 4)));
        const auto m = static_cast<std::size_t>(c.uniform(1, static_cast<int>(x.dim())));
        const auto n = static_cast<std::size_t>(c.uniform(1, static_cast<int>(y.dim())));
        auto xs = independent_subset(c, x.vertices(), m);
        auto fs = independent_subset(c, y.facets(), n);
        if (xs.size() != m || fs.size() != n || rank_gauss(xs) != m || rank_gauss(fs) != n) {
            ++c.rejections;
            continue;
        }
        std::vector<Vec> rows;
        for (const auto& f : fs)
            for (const auto& v : xs) rows.push_back(outer_flat(f, v));
        const std::size_t rank = rank_bareiss(rows);
        const std::string bucket = "nm=" + std::to_string(n * m);
        if (rank != n * m) {
            Json payload{{"vertices", Json::array()}, {"functionals", Json::array()}};
            for (const auto& v : xs) payload["vertices"].push_back(vector_json(v));
            for (const auto& f : fs) payload["functionals"].push_back(vector_json(f));
            return fail("rank " + std::to_string(rank) + " below " + std::to_string(n * m), payload, bucket);
        }
        return pass(bucket);
    }
    exhausted("independence");
}

using Suite = std::function<Outcome(Context&, std::uint64_t)>;

const std::map<std::string, Suite>& suites() {
    static const std::map<std::string, Suite> table = {
        {"adjoint", [](Context& c, std::uint64_t) { return check_adjoint(c); }},
        {"sum-rule", [](Context& c, std::uint64_t) { return check_sum_rule(c); }},
        {"mr-rule", [](Context& c, std::uint64_t) { return check_mr_rule(c); }},
        {"linf3-cases", check_linf3_cases},
        {"rank-order", check_rank_order},
        {"extreme", [](Context& c, std::uint64_t) { return check_extreme(c); }},
        {"hilbert-real", [](Context& c, std::uint64_t s) { return check_hilbert(c, s, Field::real); }},
        {"hilbert-complex", [](Context& c, std::uint64_t s) { return check_hilbert(c, s, Field::complex); }},
        {"bj-hilbert", [](Context& c, std::uint64_t) { return check_bj_hilbert(c); }},
        {"bj-polyhedral", [](Context& c, std::uint64_t) { return check_bj_polyhedral(c); }},
        {"oracle-equality", [](Context& c, std::uint64_t) { return check_oracle_equality(c); }},
        {"independence", [](Context& c, std::uint64_t) { return check_independence(c); }},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& theorem_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (const auto& [id, suite] : suites()) v.push_back(id);
        return v;
    }();
    return ids;
}

VerificationReport verify_theorem(const std::string& theorem_id, std::size_t seeds, std::uint64_t seed0) {
    auto it = suites().find(theorem_id);
    if (it == suites().end()) throw Error(ErrorKind::UnknownTheorem, "unknown theorem id \"" + theorem_id + "\"");
    const auto start = std::chrono::steady_clock::now();
    VerificationReport report;
    report.theorem_id = theorem_id;
    for (std::uint64_t seed = seed0; seed < seed0 + seeds; ++seed) {
        Context c{std::mt19937_64(seed ^ 0x5eedf00dull), 0};
        Outcome o;
        try {
            o = it->second(c, seed);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::GenerationExhausted && e.kind() != ErrorKind::Internal) throw;
            o = fail(e.what(), Json(), "error");
        }
        ++report.seeds_run;
        report.rejections += c.rejections;
        ++report.histogram[o.bucket];
        if (o.pass)
            ++report.passes;
        else
            report.failures.push_back({seed, o.detail, std::move(o.payload)});
    }
    report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

Json verification_json(const VerificationReport& r) {
    Json hist = Json::object();
    for (const auto& [k, v] : r.histogram) hist[k.empty() ? "unlabelled" : k] = v;
    Json failures = Json::array();
    for (const auto& f : r.failures) failures.push_back(Json{{"seed", f.seed}, {"detail", f.detail}, {"payload", f.payload}});
    return Json{{"theorem", r.theorem_id},
                {"seeds_run", r.seeds_run},
                {"passes", r.passes},
                {"failure_count", r.failures.size()},
                {"rejections", r.rejections},
                {"wall_time_s", r.wall_time},
                {"histogram", std::move(hist)},
                {"failures", std::move(failures)}};
}

}  // namespace ksmooth
