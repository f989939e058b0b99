// Acceptance checks: one [PASS]/[FAIL] line per criterion.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "ksmooth/error.hpp"
#include "ksmooth/extremal.hpp"
#include "ksmooth/io.hpp"
#include "ksmooth/verify.hpp"

using namespace ksmooth;

namespace {

struct Verdict {
    bool ok;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<Verdict()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v{false, ""};
    try {
        v = body();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit_s > 0 && secs > limit_s) {
        v.ok = false;
        v.detail += "; over the " + std::to_string(limit_s) + " s limit";
    }
    if (!v.ok) ++failures;
    std::printf("[%s] %2d %s: %s (%.2f s)\n", v.ok ? "PASS" : "FAIL", id, name, v.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string suite_detail(const VerificationReport& r) {
    std::string s = std::to_string(r.passes) + "/" + std::to_string(r.seeds_run) + " passes, " +
                    std::to_string(r.rejections) + " rejected candidates";
    for (const auto& f : r.failures) s += "; seed " + std::to_string(f.seed) + ": " + f.detail;
    return s;
}

std::string histogram(const VerificationReport& r) {
    std::string s;
    for (const auto& [k, v] : r.histogram) s += (s.empty() ? "" : ", ") + k + ":" + std::to_string(v);
    return "{" + s + "}";
}

bool all_pass(const VerificationReport& r, std::size_t expected) {
    return r.seeds_run == expected && r.passes == expected && r.failures.empty();
}

Operator linf3_to_plane(std::vector<Vec> rows) {
    return Operator(Matrix::from_rows(rows), PolyhedralSpace::linf(3), EuclideanSpace{2, Field::real});
}

}  // namespace

int main() {
    criterion(1, "rank-one map into the Euclidean plane", 1.0, [] {
        std::string detail;
        bool ok = true;
        for (Vec u : {Vec{Rational(3, 5), Rational(4, 5)}, Vec{1, 0}, Vec{Rational(-5, 13), Rational(12, 13)}}) {
            Operator t = linf3_to_plane({{u[0], 0, 0}, {u[1], 0, 0}});
            const auto order = operator_smoothness(t).order;
            const auto oracle = brute_rank_oracle(t);
            ok = ok && order == 3 && oracle == 3;
            detail += (detail.empty() ? "" : ", ") + std::string("u=") + to_string(u) + " order " +
                      std::to_string(order) + " oracle " + std::to_string(oracle);
        }
        return Verdict{ok, detail + " (expected 3)"};
    });

    criterion(2, "rank-two map into the Euclidean plane", 1.0, [] {
        Operator t = linf3_to_plane({{Rational(1, 2), Rational(1, 2), 0}, {Rational(1, 2), Rational(-1, 2), 0}});
        const auto att = norm_attainment_ext(t).attaining_vertices.size();
        if (att != 8) return Verdict{false, "hypothesis failed: " + std::to_string(att) + " attaining vertices"};
        const auto order = operator_smoothness(t).order;
        const auto oracle = brute_rank_oracle(t);
        return Verdict{order == 4 && oracle == 4, "8 attaining vertices, order " + std::to_string(order) +
                                                      ", oracle " + std::to_string(oracle) + " (expected 4)"};
    });

    criterion(3, "case classification out of l-inf^3", 60.0, [] {
        auto r = verify_theorem("linf3-cases", 100, 1);
        bool ok = all_pass(r, 100);
        for (const char* label : {"I(a)", "I(b)", "II", "III", "IV"}) ok = ok && r.histogram[label] >= 5;
        return Verdict{ok, suite_detail(r) + " " + histogram(r)};
    });

    criterion(4, "adjoint invariance", 120.0, [] {
        auto r = verify_theorem("adjoint", 200, 1);
        return Verdict{all_pass(r, 200), suite_detail(r) + " " + histogram(r)};
    });

    criterion(5, "sum rule and mr rule", 0, [] {
        auto s = verify_theorem("sum-rule", 100, 1);
        auto m = verify_theorem("mr-rule", 100, 1);
        return Verdict{all_pass(s, 100) && all_pass(m, 100),
                       "sum rule " + suite_detail(s) + " " + histogram(s) + "; mr rule " + suite_detail(m) + " " +
                           histogram(m)};
    });

    criterion(6, "Hilbert formula against sampled rank", 30.0, [] {
        auto re = verify_theorem("hilbert-real", 200, 1);
        auto cx = verify_theorem("hilbert-complex", 200, 1);
        bool ok = all_pass(re, 200) && all_pass(cx, 200);
        for (const char* n : {"n=1", "n=2", "n=3", "n=4"}) ok = ok && re.histogram[n] == 50 && cx.histogram[n] == 50;
        return Verdict{ok, "real " + suite_detail(re) + " " + histogram(re) + "; complex " + suite_detail(cx) + " " +
                               histogram(cx)};
    });

    criterion(7, "orthogonality in Euclidean spaces", 0, [] {
        auto r = verify_theorem("bj-hilbert", 100, 1);
        return Verdict{all_pass(r, 100), suite_detail(r) + " " + histogram(r) + ", oracle tolerance 1e-7"};
    });

    criterion(8, "orthogonality in polyhedral spaces", 0, [] {
        auto r = verify_theorem("bj-polyhedral", 100, 1);
        return Verdict{all_pass(r, 100), suite_detail(r) + " " + histogram(r)};
    });

    criterion(9, "extreme contraction three-way agreement", 0, [] {
        auto r = verify_theorem("extreme", 100, 1);
        return Verdict{all_pass(r, 100), suite_detail(r) + " " + histogram(r)};
    });

    criterion(10, "l-inf^4 into the rectangle ball", 0, [] {
        auto rect = validate_polyhedral({{2, 1}, {2, -1}, {-2, -1}, {-2, 1}}).space;
        Operator t(Matrix::from_rows({{0, 1, 0, 1}, {1, 0, 0, 0}}), PolyhedralSpace::linf(4), rect);
        const Scalar n = operator_norm(t);
        const auto att = norm_attainment_ext(t);
        const auto report = operator_smoothness(t);
        const auto oracle = brute_rank_oracle(t);
        std::printf("     attainment set (%zu vertices):", att.attaining_vertices.size());
        for (const auto& v : att.attaining_vertices) std::printf(" %s", to_string(v).c_str());
        std::printf("\n");
        const bool norm_ok = n.is_exact() && n.exact() == 1;
        std::string detail = "norm " + n.str() + ", " + std::to_string(att.attaining_vertices.size()) +
                             " attaining vertices, order " + std::to_string(report.order) + ", oracle " +
                             std::to_string(oracle);
        if (att.attaining_vertices.size() != 8)
            detail += "; divergence: computed attainment set has " + std::to_string(att.attaining_vertices.size()) +
                      " elements, the stated set has 8";
        if (report.order != 6)
            detail += "; divergence: computed order " + std::to_string(report.order) + ", stated order 6";
        return Verdict{norm_ok && oracle == report.order, detail};
    });

    criterion(11, "independence of outer-product functionals", 0, [] {
        auto r = verify_theorem("independence", 100, 1);
        return Verdict{all_pass(r, 100), suite_detail(r) + " " + histogram(r)};
    });

    std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
