#include <doctest.h>

#include <algorithm>
#include <random>

#include "ksmooth/error.hpp"
#include "ksmooth/extremal.hpp"
#include "ksmooth/generators.hpp"
#include "ksmooth/operator.hpp"

using namespace ksmooth;

namespace {

PolyhedralSpace rectangle() { return validate_polyhedral({{2, 1}, {2, -1}, {-2, -1}, {-2, 1}}).space; }

Operator worked_example() {
    return Operator(Matrix::from_rows({{0, 1, 0, 1}, {1, 0, 0, 0}}), PolyhedralSpace::linf(4), rectangle());
}

Operator rank_two() {
    return Operator(Matrix::from_rows({{Rational(1, 2), Rational(1, 2), 0}, {Rational(1, 2), Rational(-1, 2), 0}}),
                    PolyhedralSpace::linf(3), EuclideanSpace{2, Field::real});
}

Operator rank_one(const Vec& u) {
    return Operator(Matrix::from_rows({{u[0], 0, 0}, {u[1], 0, 0}}), PolyhedralSpace::linf(3),
                    EuclideanSpace{2, Field::real});
}

Operator diag_half() {
    return Operator(Matrix::from_rows({{1, 0}, {0, Rational(1, 2)}}), PolyhedralSpace::linf(2),
                    PolyhedralSpace::linf(2));
}

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Internal;
}

std::size_t rref_rank(std::vector<Vec> m) {
    if (m.empty()) return 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m[0].size() && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (i != r && m[i][c] != 0) {
                Rational f = m[i][c] / m[r][c];
                for (std::size_t j = 0; j < m[0].size(); ++j) m[i][j] -= f * m[r][j];
            }
        ++r;
    }
    return r;
}

// Order of smoothness from scratch: every vertex (no antipodal reduction),
// every dual vertex active at the normalised image, functionals as
// column-major outer products.
std::size_t order_from_scratch(const Operator& t) {
    const auto& x = std::get<PolyhedralSpace>(t.domain());
    const auto& y = std::get<PolyhedralSpace>(t.codomain());
    auto yd = dual_space(y);
    Rational best = 0;
    for (const auto& v : x.vertices())
        for (const auto& f : yd.vertices()) best = std::max(best, dot(f, t.apply(v)));
    std::vector<Vec> rows;
    for (const auto& v : x.vertices())
        for (const auto& f : yd.vertices())
            if (dot(f, t.apply(v)) == best) {
                Vec r;
                for (const auto& vj : v)
                    for (const auto& fi : f) r.push_back(fi * vj);
                rows.push_back(r);
            }
    return rref_rank(rows);
}

std::vector<Vec> sorted(std::vector<Vec> v) {
    std::sort(v.begin(), v.end(), [](const Vec& a, const Vec& b) { return lex_less(a, b); });
    return v;
}

}  // namespace

TEST_CASE("operator construction checks") {
    CHECK(kind_of([] { Operator(Matrix(2, 3), PolyhedralSpace::linf(2), PolyhedralSpace::linf(2)); }) ==
          ErrorKind::ShapeMismatch);
    CHECK(kind_of([] {
              Operator(Matrix(2, 2), EuclideanSpace{2, Field::real}, EuclideanSpace{2, Field::real}, Matrix(2, 2));
          }) == ErrorKind::ValidationError);
    CHECK(kind_of([] { Operator(Matrix(2, 2), EuclideanSpace{2, Field::complex}, EuclideanSpace{2, Field::real}); }) ==
          ErrorKind::UnsupportedSpacePair);
}

TEST_CASE("operator norm examples") {
    CHECK(operator_norm(worked_example()).exact() == 1);
    CHECK(operator_norm(Operator(Matrix::identity(2), PolyhedralSpace::linf(2), PolyhedralSpace::linf(2))).exact() ==
          1);
    CHECK(operator_norm(rank_two()).exact() == 1);
    CHECK(kind_of([] { operator_norm(Operator(Matrix(2, 2), PolyhedralSpace::linf(2), PolyhedralSpace::linf(2))); }) ==
          ErrorKind::ZeroOperator);
    CHECK(kind_of([] {
              operator_norm(Operator(Matrix::identity(2), EuclideanSpace{2, Field::real}, PolyhedralSpace::linf(2)));
          }) == ErrorKind::UnsupportedSpacePair);
    Operator e(Matrix::from_rows({{1, 0}, {0, Rational(1, 2)}}), EuclideanSpace{2, Field::real},
               EuclideanSpace{2, Field::real});
    CHECK(operator_norm(e).to_double() == doctest::Approx(1.0));
}

TEST_CASE("norm equals the supremum over sampled points of the ball") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 60; ++i) {
        auto x = random_polytope(rng, 2 + i % 3);
        auto y = random_polygon(rng);
        Operator t(random_integer_matrix(rng, 2, x.dim(), 3), x, y);
        if (t.is_zero()) continue;
        const Rational n = operator_norm(t).exact();
        Rational best_vertex = 0;
        for (const auto& v : x.vertices()) best_vertex = std::max(best_vertex, norm_exact(y, t.apply(v)));
        CHECK(best_vertex == n);
        // random convex combinations never exceed it
        std::uniform_int_distribution<int> w(0, 9);
        for (int s = 0; s < 50; ++s) {
            Vec p(x.dim(), Rational(0));
            Rational total = 0;
            for (const auto& v : x.vertices()) {
                Rational c = w(rng);
                total += c;
                for (std::size_t j = 0; j < p.size(); ++j) p[j] += c * v[j];
            }
            if (total == 0) continue;
            CHECK(norm_exact(y, t.apply(scaled(p, 1 / total))) <= n);
        }
    }
}

TEST_CASE("attainment examples") {
    auto d = norm_attainment_ext(diag_half());
    CHECK(d.attaining_vertices.size() == 4);
    CHECK(norm_attainment_ext(rank_two()).attaining_vertices.size() == 8);
    auto w = norm_attainment_ext(worked_example());
    CHECK(w.norm_value.exact() == 1);
    CHECK(w.attaining_vertices.size() == 16);
    CHECK(std::find(w.attaining_vertices.begin(), w.attaining_vertices.end(), Vec{1, -1, 1, 1}) !=
          w.attaining_vertices.end());
    for (const auto& x : w.attaining_vertices)
        CHECK(std::find(w.attaining_vertices.begin(), w.attaining_vertices.end(), negated(x)) !=
              w.attaining_vertices.end());
}

TEST_CASE("Ext J examples") {
    auto pairs = ext_J_operator(diag_half());
    REQUIRE(pairs.size() == 2);
    std::vector<Vec> xs;
    for (const auto& p : pairs) {
        xs.push_back(p.x);
        CHECK(p.direction == Vec{1, 0});
    }
    CHECK(sorted(xs) == sorted({{1, 1}, {1, -1}}));

    auto id = ext_J_operator(Operator(Matrix::identity(2), PolyhedralSpace::linf(2), PolyhedralSpace::linf(2)));
    std::vector<Vec> flat;
    for (const auto& p : id) flat.push_back(outer_flat(p.direction, p.x));
    CHECK(sorted(flat) == sorted({outer_flat(Vec{1, 0}, Vec{1, 1}), outer_flat(Vec{0, 1}, Vec{1, 1}),
                                  outer_flat(Vec{1, 0}, Vec{1, -1}), outer_flat(Vec{0, -1}, Vec{1, -1})}));

    auto r1 = ext_J_operator(rank_one({Rational(3, 5), Rational(4, 5)}));
    CHECK(r1.size() == 4);
    for (const auto& p : r1) {
        CHECK(leading_positive(p.x));
        // y*(Tx) = ‖T‖ = 1
        Vec tx = rank_one({Rational(3, 5), Rational(4, 5)}).apply(p.x);
        CHECK(dot(p.direction, tx) * dot(p.direction, tx) == squared_norm(p.direction));
    }
}

TEST_CASE("operator smoothness examples") {
    CHECK(operator_smoothness(rank_one({Rational(3, 5), Rational(4, 5)})).order == 3);
    CHECK(operator_smoothness(rank_one({1, 0})).order == 3);
    CHECK(operator_smoothness(rank_two()).order == 4);
    CHECK(operator_smoothness(diag_half()).order == 2);
    auto w = operator_smoothness(worked_example());
    CHECK(w.order == 7);
    CHECK(w.attaining_count == 16);
    CHECK(order_from_scratch(worked_example()) == 7);
}

TEST_CASE("irrational norm into a Euclidean codomain") {
    // images have norm sqrt 2 at the vertex (1, 1)
    Operator t(Matrix::from_rows({{1, 0}, {0, 1}}), PolyhedralSpace::linf(2), EuclideanSpace{2, Field::real});
    CHECK_FALSE(operator_norm(t).is_exact());
    CHECK(operator_norm(t).to_double() == doctest::Approx(std::sqrt(2.0)));
    CHECK(norm_attainment_ext(t).attaining_vertices.size() == 4);
    CHECK(operator_smoothness(t).order == 2);
    CHECK(brute_rank_oracle(t) == 2);
}

TEST_CASE("smoothness report invariants and agreement with a from-scratch rank") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 80; ++i) {
        auto x = random_polytope(rng, 2 + i % 3);
        auto y = random_polytope(rng, 2 + (i / 3) % 3);
        Operator t(random_integer_matrix(rng, y.dim(), x.dim(), 3), x, y);
        if (t.is_zero()) continue;
        auto r = operator_smoothness(t);
        CHECK(r.order >= 1);
        CHECK(r.order <= x.dim() * y.dim());
        CHECK(r.witness_pairs.size() == r.order);
        std::vector<Vec> rows;
        for (const auto& p : r.witness_pairs) rows.push_back(outer_flat(p.direction, p.x));
        CHECK(rref_rank(rows) == r.order);
        CHECK(order_from_scratch(t) == r.order);
        // scaling does not change the order
        CHECK(operator_smoothness(Operator(t.matrix().scaled(Rational(7, 3)), x, y)).order == r.order);
    }
}

TEST_CASE("adjoint examples") {
    Matrix m = Matrix::from_rows({{1, 2, 0}, {0, 1, -1}});
    Operator t(m, PolyhedralSpace::linf(3), PolyhedralSpace::linf(2));
    Operator ts = adjoint(t);
    CHECK(ts.matrix() == m.transpose());
    CHECK(std::get<PolyhedralSpace>(ts.domain()) == PolyhedralSpace::l1(2));
    CHECK(std::get<PolyhedralSpace>(ts.codomain()) == PolyhedralSpace::l1(3));
    CHECK(adjoint(ts) == t);
    CHECK(operator_smoothness(adjoint(diag_half())).order == 2);
    CHECK(operator_norm(ts) == operator_norm(t));
    CHECK(kind_of([] { adjoint(rank_two()); }) == ErrorKind::UnsupportedSpacePair);
}

TEST_CASE("Birkhoff-James orthogonality examples") {
    auto sq = PolyhedralSpace::linf(2);
    auto diag = [&](Rational a, Rational b) { return Operator(Matrix::from_rows({{a, 0}, {0, b}}), sq, sq); };
    CHECK(bj_orthogonal(diag(1, Rational(1, 2)), diag(0, 1)));
    CHECK_FALSE(bj_orthogonal(diag(1, 1), diag(1, 1)));
    CHECK(bj_orthogonal(diag(1, 1), diag(1, -1)));
    CHECK(kind_of([&] { bj_orthogonal(diag(1, 1), Operator(Matrix(2, 3), PolyhedralSpace::linf(3), sq)); }) ==
          ErrorKind::ShapeMismatch);
    CHECK(kind_of([&] { bj_orthogonal(rank_two(), rank_two()); }) == ErrorKind::UnsupportedSpacePair);
}

TEST_CASE("case classification examples") {
    auto r2 = classify_linf3_case(rank_two());
    CHECK(r2.case_label == CaseLabel::Ib);
    CHECK(r2.order == 4);
    CHECK(r2.s1_size == 4u);
    auto r1 = classify_linf3_case(rank_one({Rational(3, 5), Rational(4, 5)}));
    CHECK(r1.case_label == CaseLabel::Ia);
    CHECK(r1.order == 3);
    auto iv = classify_linf3_case(
        Operator(Matrix::from_rows({{1, 0, 0}, {0, 1, 0}}), PolyhedralSpace::linf(3), PolyhedralSpace::linf(2)));
    CHECK(iv.case_label == CaseLabel::IV);
    CHECK(iv.s1_size == 0u);
    CHECK(iv.order == 6);
    CHECK(iv.prediction_agrees());

    // attains only where x = y or x = z: six vertices
    const Rational h(1, 2);
    auto reduced = classify_linf3_case(Operator(Matrix::from_rows({{h, h, 0}, {h, 0, h}}), PolyhedralSpace::linf(3),
                                                PolyhedralSpace::linf(2)));
    CHECK(reduced.case_label == CaseLabel::reduced);
    CHECK(reduced.attaining_count == 6);
    CHECK(reduced.prediction_agrees());

    CHECK(kind_of([] { classify_linf3_case(diag_half()); }) == ErrorKind::WrongSpaces);
    CHECK(kind_of([] {
              classify_linf3_case(Operator(Matrix::from_rows({{2, 0, 0}, {0, 2, 0}}), PolyhedralSpace::linf(3),
                                           PolyhedralSpace::linf(2)));
          }) == ErrorKind::NotNormalized);
}

TEST_CASE("normalisation") {
    Operator t(Matrix::from_rows({{3, 0}, {0, 1}}), PolyhedralSpace::linf(2), PolyhedralSpace::linf(2));
    CHECK(operator_norm(normalized(t)).exact() == 1);
    Operator irr(Matrix::identity(2), PolyhedralSpace::linf(2), EuclideanSpace{2, Field::real});
    CHECK(kind_of([&] { normalized(irr); }) == ErrorKind::ModeMismatch);
    CHECK(is_linf(PolyhedralSpace::linf(3), 3));
    CHECK_FALSE(is_linf(PolyhedralSpace::l1(3), 3));
}
