#include <doctest.h>

#include <random>

#include "ksmooth/error.hpp"
#include "ksmooth/extremal.hpp"
#include "ksmooth/generators.hpp"
#include "ksmooth/hilbert.hpp"
#include "ksmooth/verify.hpp"

using namespace ksmooth;

namespace {

Operator sq(std::vector<Vec> rows, std::size_t dom = 2) {
    return Operator(Matrix::from_rows(rows), PolyhedralSpace::linf(dom), PolyhedralSpace::linf(2));
}

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Internal;
}

// Extremality by brute force on a lattice: T is not extreme when some
// nonzero S with entries in {-k/q, ..., k/q} keeps ‖T ± S‖ ≤ 1. Only the
// "not extreme" direction is certified; a failure to find S is inconclusive.
bool lattice_perturbation_exists(const Operator& t, int q) {
    const std::size_t n = t.matrix().rows() * t.matrix().cols();
    std::vector<int> digits(n, -1);
    for (;;) {
        bool nonzero = false;
        Matrix s(t.matrix().rows(), t.matrix().cols());
        for (std::size_t i = 0; i < n; ++i) {
            s(i / s.cols(), i % s.cols()) = fraction(digits[i], q);
            nonzero = nonzero || digits[i] != 0;
        }
        if (nonzero) {
            Operator plus(t.matrix() + s, t.domain(), t.codomain());
            Operator minus(t.matrix() - s, t.domain(), t.codomain());
            if (!plus.is_zero() && !minus.is_zero() && operator_norm(plus).exact() <= 1 &&
                operator_norm(minus).exact() <= 1)
                return true;
        }
        std::size_t k = 0;
        while (k < n && digits[k] == 1) digits[k++] = -1;
        if (k == n) return false;
        ++digits[k];
    }
}

}  // namespace

TEST_CASE("feasibility problem shape") {
    auto p = extreme_feasibility(sq({{1, 0}, {0, 1}}));
    CHECK(p.unknowns == 4);
    CHECK(p.rows.size() == p.rhs.size());
    for (const auto& b : p.rhs) CHECK(b >= 0);
    // symmetric under S -> -S
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
        bool mirrored = false;
        for (std::size_t j = 0; j < p.rows.size(); ++j)
            if (p.rows[j] == negated(p.rows[i]) && p.rhs[j] == p.rhs[i]) mirrored = true;
        CHECK(mirrored);
    }
}

TEST_CASE("exact simplex") {
    // max x + y with x <= 1, y <= 2, x + y <= 5/2 and the mirrored rows
    FeasibilityProblem p{2, {{1, 0}, {0, 1}, {1, 1}, {-1, 0}, {0, -1}}, {1, 2, Rational(5, 2), 1, 1}};
    auto r = maximize({1, 1}, p);
    CHECK(r.bounded);
    CHECK(r.value == Rational(5, 2));
    FeasibilityProblem open{1, {{-1}}, {0}};
    CHECK_FALSE(maximize({1}, open).bounded);
    CHECK(maximize({-1}, open).value == 0);
}

TEST_CASE("extreme contraction by linear programming") {
    CHECK(extreme_contraction_lp(sq({{1, 0}, {0, 1}})));
    CHECK_FALSE(extreme_contraction_lp(sq({{1, 0}, {0, Rational(1, 2)}})));
    CHECK(extreme_contraction_lp(sq({{1, 0, 0}, {0, 1, 0}}, 3)));
    CHECK(kind_of([] { extreme_contraction_lp(sq({{2, 0}, {0, 1}})); }) == ErrorKind::NotUnitNorm);
    CHECK(kind_of([] {
              extreme_contraction_lp(Operator(Matrix::identity(2), PolyhedralSpace::linf(2), EuclideanSpace{2}));
          }) == ErrorKind::UnsupportedSpacePair);
}

TEST_CASE("LP verdicts against lattice search") {
    std::mt19937_64 rng(5);
    int checked = 0;
    for (int i = 0; i < 40 && checked < 15; ++i) {
        InstanceConfig c;
        c.domain = DomainKind::linf;
        c.domain_dim = 2;
        c.codomain = CodomainFamily::linf2;
        Operator t = random_instance(rng(), c).op;
        const bool lp = extreme_contraction_lp(t);
        if (lattice_perturbation_exists(t, 8)) CHECK_FALSE(lp);
        ++checked;
    }
    CHECK(checked == 15);
}

TEST_CASE("vertex criterion examples") {
    auto proj = extreme_contraction_smoothness(sq({{1, 0, 0}, {0, 1, 0}}, 3));
    CHECK(proj.extreme);
    CHECK(proj.attaining_count == 8);
    CHECK(proj.images_extreme);
    CHECK(proj.order == 6);
    CHECK(proj.bridge_holds);
    auto r1 = extreme_contraction_smoothness(sq({{1, 0, 0}, {0, 0, 0}}, 3));
    CHECK_FALSE(r1.extreme);
    CHECK_FALSE(r1.images_extreme);
    auto padded = extreme_contraction_smoothness(sq({{1, 0, 0}, {0, Rational(1, 2), 0}}, 3));
    CHECK_FALSE(padded.extreme);
    CHECK(padded.bridge_holds);
    CHECK(kind_of([] { extreme_contraction_smoothness(sq({{1, 0}, {0, 1}})); }) == ErrorKind::WrongSpaces);
}

TEST_CASE("brute rank oracle examples") {
    CHECK(brute_rank_oracle(Operator(
              Matrix::from_rows({{Rational(1, 2), Rational(1, 2), 0}, {Rational(1, 2), Rational(-1, 2), 0}}),
              PolyhedralSpace::linf(3), EuclideanSpace{2, Field::real})) == 4);
    CHECK(brute_rank_oracle(sq({{1, 0}, {0, 1}})) == 4);
    std::mt19937_64 rng(77);
    for (int i = 0; i < 60; ++i) {
        auto x = random_polytope(rng, 2 + i % 3);
        auto y = random_polygon(rng);
        Operator t(random_integer_matrix(rng, 2, x.dim(), 2), x, y);
        if (t.is_zero()) continue;
        CHECK(brute_rank_oracle(t) == operator_smoothness(t).order);
    }
}

TEST_CASE("breakpoint oracle examples") {
    CHECK(bj_breakpoint_oracle(sq({{1, 0}, {0, Rational(1, 2)}}), sq({{0, 0}, {0, 1}})));
    CHECK_FALSE(bj_breakpoint_oracle(sq({{1, 0}, {0, 1}}), sq({{1, 0}, {0, 1}})));
    CHECK(bj_breakpoint_oracle(sq({{1, 0}, {0, 1}}), sq({{1, 0}, {0, -1}})));
}

TEST_CASE("generator examples") {
    InstanceConfig iv;
    iv.target = TargetCase::IV;
    auto g = random_instance(42, iv);
    auto r = classify_linf3_case(g.op);
    CHECK(r.case_label == CaseLabel::IV);
    CHECK(r.s1_size == 0u);
    CHECK(r.order == 6);

    InstanceConfig red;
    red.codomain = CodomainFamily::image_hull;
    red.target = TargetCase::reduced_independent;
    auto h = random_instance(7, red);
    auto rr = classify_linf3_case(h.op);
    CHECK(rr.attaining_count == 6);
    CHECK(rr.case_label == CaseLabel::reduced);
    CHECK(rr.prediction_agrees());

    InstanceConfig pl;
    pl.domain = DomainKind::euclidean;
    pl.codomain = CodomainFamily::euclidean;
    pl.domain_dim = pl.codomain_dim = 5;
    pl.target = TargetCase::planted;
    pl.multiplicity = 3;
    CHECK(top_singular_subspace(random_instance(1, pl).op).multiplicity == 3);
}

TEST_CASE("generator determinism and soundness") {
    for (auto target : {TargetCase::Ia, TargetCase::Ib, TargetCase::II, TargetCase::III, TargetCase::IV}) {
        for (auto family : {CodomainFamily::polygon, CodomainFamily::linf2, CodomainFamily::euclidean2}) {
            if (family == CodomainFamily::euclidean2 && target != TargetCase::Ia && target != TargetCase::Ib) continue;
            InstanceConfig c;
            c.target = target;
            c.codomain = family;
            for (std::uint64_t seed = 1; seed <= 8; ++seed) {
                auto a = random_instance(seed, c);
                CHECK(a.op == random_instance(seed, c).op);
                auto r = classify_linf3_case(a.op);
                CHECK(r.attaining_count == 8);
                CHECK(to_string(*r.case_label) == to_string(target));
            }
        }
    }
}

TEST_CASE("generator budget is reported") {
    InstanceConfig c;
    c.target = TargetCase::II;
    c.codomain = CodomainFamily::euclidean2;
    CHECK(kind_of([&] { random_instance(1, c); }) == ErrorKind::GenerationExhausted);
    c.budget = 0;
    c.codomain = CodomainFamily::polygon;
    CHECK(kind_of([&] { random_instance(1, c); }) == ErrorKind::GenerationExhausted);
}

TEST_CASE("verification suites") {
    for (const auto& id : theorem_ids()) {
        auto r = verify_theorem(id, 12, 3);
        CAPTURE(id);
        CHECK(r.seeds_run == 12);
        CHECK(r.passes + r.failures.size() == r.seeds_run);
        CHECK(r.failures.empty());
    }
    CHECK(kind_of([] { verify_theorem("no-such", 1, 1); }) == ErrorKind::UnknownTheorem);
}

TEST_CASE("verification is deterministic") {
    for (const char* id : {"adjoint", "linf3-cases", "bj-hilbert"}) {
        auto a = verify_theorem(id, 10, 5), b = verify_theorem(id, 10, 5);
        CHECK(a.passes == b.passes);
        CHECK(a.histogram == b.histogram);
        CHECK(a.rejections == b.rejections);
    }
}
