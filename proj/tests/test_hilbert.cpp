#include <doctest.h>

#include <Eigen/Dense>

#include <random>

#include "ksmooth/error.hpp"
#include "ksmooth/extremal.hpp"
#include "ksmooth/generators.hpp"
#include "ksmooth/hilbert.hpp"

using namespace ksmooth;

namespace {

Operator diag(std::vector<Rational> d, Field field = Field::real) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return Operator(m, EuclideanSpace{d.size(), field}, EuclideanSpace{d.size(), field});
}

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Internal;
}

Operator planted(std::uint64_t seed, std::size_t dom, std::size_t cod, std::size_t n, Field field) {
    InstanceConfig c;
    c.domain = DomainKind::euclidean;
    c.codomain = CodomainFamily::euclidean;
    c.target = TargetCase::planted;
    c.domain_dim = dom;
    c.codomain_dim = cod;
    c.multiplicity = n;
    c.field = field;
    return random_instance(seed, c).op;
}

}  // namespace

TEST_CASE("top singular subspace examples") {
    auto s = top_singular_subspace(diag({1, 1, Rational(1, 2)}));
    CHECK(s.sigma_max == doctest::Approx(1.0));
    CHECK(s.multiplicity == 2);
    CHECK(s.gap == doctest::Approx(0.5));
    // H0 = span{e1, e2}
    CHECK(s.h0_basis.row(2).norm() == doctest::Approx(0.0));
    CHECK(top_singular_subspace(diag({1, Rational(1, 2), Rational(1, 3)})).multiplicity == 1);
    CHECK(kind_of([] { top_singular_subspace(diag({1, 1, 1})); }) == ErrorKind::NoGap);
    CHECK(kind_of([] { top_singular_subspace(diag({0, 0})); }) == ErrorKind::ZeroOperator);
}

TEST_CASE("singular structure invariants on planted instances") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const std::size_t n = 1 + seed % 3;
        for (Field f : {Field::real, Field::complex}) {
            Operator t = planted(seed, 5, 4, n, f);
            auto s = top_singular_subspace(t);
            REQUIRE(s.multiplicity == n);
            Eigen::MatrixXcd gram = s.h0_basis.adjoint() * s.h0_basis;
            CHECK((gram - Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)))
                      .norm() < 1e-10);
            Eigen::MatrixXcd m = to_complex_matrix(t);
            for (Eigen::Index j = 0; j < s.h0_basis.cols(); ++j)
                CHECK(std::abs((m * s.h0_basis.col(j)).norm() - s.sigma_max) < 1e-9);
            CHECK(s.gap > kGapTol);
        }
    }
}

TEST_CASE("generator plants the requested multiplicity") {
    auto s = top_singular_subspace(planted(1, 5, 5, 3, Field::real));
    CHECK(s.multiplicity == 3);
    CHECK(kind_of([] { planted(1, 3, 3, 3, Field::real); }) == ErrorKind::ValidationError);
}

TEST_CASE("smoothness formula examples") {
    CHECK(hilbert_smoothness(diag({1, 1, Rational(1, 2)})) == 3);
    CHECK(hilbert_smoothness(diag({1, Rational(1, 2), Rational(1, 3)})) == 1);
    CHECK(hilbert_smoothness(diag({1, 1, Rational(1, 2)}, Field::complex)) == 4);
    CHECK(kind_of([] { hilbert_smoothness(diag({2, 2})); }) == ErrorKind::NoGap);
}

TEST_CASE("sampled rank oracle examples") {
    CHECK(sampled_rank_oracle(diag({1, 1, Rational(1, 2)})) == 3);
    CHECK(sampled_rank_oracle(diag({1, 1, 1, Rational(1, 2)})) == 6);
    CHECK(sampled_rank_oracle(diag({1, 1, Rational(1, 2)}, Field::complex)) == 4);
    CHECK(minimum_samples(2) == 24);
    CHECK(kind_of([] { sampled_rank_oracle(diag({1, 1, Rational(1, 2)}), kGapTol, 3); }) ==
          ErrorKind::ValidationError);
    CHECK(sampled_rank_oracle(diag({1, 1, Rational(1, 2)}), kGapTol, std::nullopt, 5) ==
          sampled_rank_oracle(diag({1, 1, Rational(1, 2)}), kGapTol, std::nullopt, 5));
}

TEST_CASE("formula and sampling agree and grow with the multiplicity") {
    for (std::size_t n = 1; n <= 4; ++n) {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            Operator r = planted(seed, 6, 6, n, Field::real);
            CHECK(hilbert_smoothness(r) == n * (n + 1) / 2);
            CHECK(sampled_rank_oracle(r, kGapTol, std::nullopt, seed) == n * (n + 1) / 2);
            Operator c = planted(seed, 6, 6, n, Field::complex);
            CHECK(hilbert_smoothness(c) == n * n);
            CHECK(sampled_rank_oracle(c, kGapTol, std::nullopt, seed) == n * n);
        }
    }
}

TEST_CASE("multiplicity is invariant under positive scaling") {
    Operator t = planted(4, 5, 5, 2, Field::real);
    Operator s(t.matrix().scaled(Rational(37, 5)), t.domain(), t.codomain());
    CHECK(hilbert_smoothness(s) == hilbert_smoothness(t));
    CHECK(top_singular_subspace(s).sigma_max == doctest::Approx(7.4 * top_singular_subspace(t).sigma_max));
}

TEST_CASE("orthogonality examples") {
    Operator t = diag({1, Rational(1, 2)});
    Matrix a(2, 2);
    a(1, 1) = 1;
    CHECK(bj_orthogonal_hilbert(t, Operator(a, t.domain(), t.codomain())));
    CHECK_FALSE(bj_orthogonal_hilbert(t, t));
    Operator t3 = diag({1, 1, Rational(1, 2)});
    CHECK(bj_orthogonal_hilbert(t3, diag({1, -1, 0})));
    CHECK_FALSE(bj_orthogonal_hilbert(t3, diag({1, 1, -5})));
    CHECK(kind_of([] { bj_orthogonal_hilbert(diag({1, 1}), diag({1, 0})); }) == ErrorKind::NoGap);
    CHECK(kind_of([] { bj_orthogonal_hilbert(diag({1, 0}), diag({1, 0, 0})); }) == ErrorKind::ShapeMismatch);
}

TEST_CASE("complex orthogonality through the numerical range") {
    // T = diag(1,1,1/2); A restricted to H0 is diag(1, i): range is the segment [1, i]
    Matrix re(3, 3), im(3, 3);
    re(0, 0) = 1;
    im(1, 1) = 1;
    Operator t = diag({1, 1, Rational(1, 2)}, Field::complex);
    Operator a(re, t.domain(), t.codomain(), im);
    CHECK_FALSE(bj_orthogonal_hilbert(t, a));
    CHECK(bj_hilbert_min_oracle(t, a) == false);
    // diag(1, -1) on H0 contains 0
    Operator b = diag({1, -1, 0}, Field::complex);
    CHECK(bj_orthogonal_hilbert(t, b));
    CHECK(bj_hilbert_min_oracle(t, b));
    // i·diag(1, -1) on H0: range is the segment [i, -i]
    Matrix im2(3, 3);
    im2(0, 0) = 1;
    im2(1, 1) = -1;
    Operator c(Matrix(3, 3), t.domain(), t.codomain(), im2);
    CHECK(bj_orthogonal_hilbert(t, c));
}

TEST_CASE("range test agrees with direct minimisation on random pairs") {
    std::mt19937_64 rng(41);
    int agree = 0, total = 0;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        for (Field f : {Field::real, Field::complex}) {
            Operator t = planted(seed, 3, 3, 1 + seed % 2, f);
            Matrix a = random_integer_matrix(rng, 3, 3, 2);
            std::optional<Matrix> ai;
            if (f == Field::complex) ai = random_integer_matrix(rng, 3, 3, 2);
            Operator ao(a, t.domain(), t.codomain(), ai);
            if (ao.is_zero()) continue;
            ++total;
            if (bj_orthogonal_hilbert(t, ao) == bj_hilbert_min_oracle(t, ao)) ++agree;
        }
    }
    CHECK(agree == total);
}
