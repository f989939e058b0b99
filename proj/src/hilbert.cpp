#include "ksmooth/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ksmooth/error.hpp"

namespace ksmooth {

namespace {

const EuclideanSpace& euclidean(const Space& s, const char* role) {
    const auto* e = std::get_if<EuclideanSpace>(&s);
    if (!e) throw Error(ErrorKind::UnsupportedSpacePair, std::string("Hilbert analysis needs a Euclidean ") + role);
    return *e;
}

Field field_of(const Operator& t) {
    const auto& dom = euclidean(t.domain(), "domain");
    euclidean(t.codomain(), "codomain");
    return dom.field;
}

double lambda_max_hermitian(const Eigen::MatrixXcd& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

}  // namespace

Eigen::MatrixXcd to_complex_matrix(const Operator& t) {
    const auto& m = t.matrix();
    Eigen::MatrixXcd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            double im = t.imag() ? (*t.imag())(i, j).get_d() : 0.0;
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = {m(i, j).get_d(), im};
        }
    return out;
}

double spectral_norm(const Operator& t) {
    field_of(t);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_complex_matrix(t));
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

SingularStructure top_singular_subspace(const Operator& t, double gap_tol) {
    SingularStructure s;
    s.field = field_of(t);
    if (t.is_zero()) throw Error(ErrorKind::ZeroOperator, "the zero operator has no top singular subspace");
    const Eigen::MatrixXcd m = to_complex_matrix(t);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
    const Eigen::Index n = m.cols();
    // Columns beyond the codomain dimension belong to the kernel.
    Eigen::VectorXd sigma = Eigen::VectorXd::Zero(n);
    sigma.head(svd.singularValues().size()) = svd.singularValues();
    s.sigma_max = sigma(0);
    Eigen::Index k = 1;
    while (k < n && s.sigma_max - sigma(k) <= gap_tol * s.sigma_max) ++k;
    s.multiplicity = static_cast<std::size_t>(k);
    if (k == n)
        throw Error(ErrorKind::NoGap, "every singular value lies in the top cluster (multiplicity " +
                                          std::to_string(k) + " = domain dimension)");
    s.gap = s.sigma_max - sigma(k);
    s.h0_basis = svd.matrixV().leftCols(k);
    return s;
}

std::size_t hilbert_smoothness(const Operator& t, double gap_tol) {
    const auto s = top_singular_subspace(t, gap_tol);
    const std::size_t n = s.multiplicity;
    return s.field == Field::real ? n * (n + 1) / 2 : n * n;
}

std::size_t minimum_samples(std::size_t multiplicity) { return 4 * multiplicity * multiplicity + 8; }

std::size_t sampled_rank_oracle(const Operator& t, double gap_tol, std::optional<std::size_t> sample_count,
                                std::uint64_t seed) {
    const auto s = top_singular_subspace(t, gap_tol);
    const std::size_t count = sample_count.value_or(minimum_samples(s.multiplicity));
    if (count < minimum_samples(s.multiplicity))
        throw Error(ErrorKind::ValidationError, "sample_count " + std::to_string(count) + " below the minimum " +
                                                    std::to_string(minimum_samples(s.multiplicity)));
    const Eigen::MatrixXcd m = to_complex_matrix(t);
    const Eigen::Index rows = m.rows();
    const Eigen::Index cols = m.cols();
    const auto n = static_cast<Eigen::Index>(s.multiplicity);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    Eigen::MatrixXcd stacked(static_cast<Eigen::Index>(count), rows * cols);
    for (std::size_t k = 0; k < count; ++k) {
        Eigen::VectorXcd a(n);
        for (Eigen::Index i = 0; i < n; ++i)
            a(i) = s.field == Field::real ? std::complex<double>(gauss(rng), 0.0)
                                          : std::complex<double>(gauss(rng), gauss(rng));
        a.normalize();
        const Eigen::VectorXcd x = s.h0_basis * a;
        const Eigen::VectorXcd tx = m * x;
        // ⟨Sx, Tx⟩ = Σ conj(Tx)_i S_ij x_j
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j = 0; j < cols; ++j)
                stacked(static_cast<Eigen::Index>(k), i * cols + j) = std::conj(tx(i)) * x(j);
    }
    if (s.field == Field::real) {
        // Real-linear span: the imaginary parts are numerical noise here.
        Eigen::MatrixXd re = stacked.real();
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(re);
        const auto& sv = svd.singularValues();
        std::size_t r = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv(i) > kRankTol * sv(0)) ++r;
        return r;
    }
    return numerical_rank(stacked);
}

std::size_t numerical_rank(const Eigen::MatrixXcd& m, double rel_tol) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > rel_tol * sv(0)) ++r;
    return r;
}

bool bj_orthogonal_hilbert(const Operator& t, const Operator& a, double gap_tol) {
    if (!(t.domain() == a.domain()) || !(t.codomain() == a.codomain()))
        throw Error(ErrorKind::ShapeMismatch, "operators act between different spaces");
    const auto s = top_singular_subspace(t, gap_tol);
    const Eigen::MatrixXcd tm = to_complex_matrix(t);
    const Eigen::MatrixXcd am = to_complex_matrix(a);
    // ⟨A V₀c, T V₀c⟩ = c* Q c
    const Eigen::MatrixXcd q = s.h0_basis.adjoint() * tm.adjoint() * am * s.h0_basis;
    const double eps = 1e-12 * std::max(1.0, s.sigma_max * am.norm());

    if (s.field == Field::real) {
        // W is the interval spanned by the eigenvalues of the symmetric part.
        const Eigen::MatrixXd sym = (q.real() + q.real().transpose()) / 2.0;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
        return es.eigenvalues().minCoeff() <= eps && -eps <= es.eigenvalues().maxCoeff();
    }

    // W is the numerical range of Q (convex); 0 ∈ W iff its support function
    // h(θ) = λ_max(Re(e^{iθ} Q)) is nonnegative in every direction.
    auto support = [&](double theta) {
        const std::complex<double> rot = std::polar(1.0, theta);
        const Eigen::MatrixXcd h = (rot * q + std::conj(rot) * q.adjoint()) / 2.0;
        return lambda_max_hermitian(h);
    };
    constexpr int grid = 720;
    const double step = 2 * std::numbers::pi / grid;
    std::vector<double> values(grid);
    for (int k = 0; k < grid; ++k) values[static_cast<std::size_t>(k)] = support(k * step);
    double lowest = *std::min_element(values.begin(), values.end());
    for (int k = 0; k < grid; ++k) {
        const double prev = values[static_cast<std::size_t>((k + grid - 1) % grid)];
        const double next = values[static_cast<std::size_t>((k + 1) % grid)];
        const double here = values[static_cast<std::size_t>(k)];
        if (here > prev || here > next) continue;
        // golden-section refinement of a local minimum bracket
        double lo = (k - 1) * step, hi = (k + 1) * step;
        const double g = (std::sqrt(5.0) - 1) / 2;
        double c = hi - g * (hi - lo), d = lo + g * (hi - lo);
        double fc = support(c), fd = support(d);
        for (int it = 0; it < 60; ++it) {
            if (fc < fd) {
                hi = d;
                d = c;
                fd = fc;
                c = hi - g * (hi - lo);
                fc = support(c);
            } else {
                lo = c;
                c = d;
                fc = fd;
                d = lo + g * (hi - lo);
                fd = support(d);
            }
        }
        lowest = std::min({lowest, fc, fd});
    }
    return lowest >= -eps;
}

}  // namespace ksmooth
