#include "ksmooth/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <random>

#include "ksmooth/error.hpp"
#include "ksmooth/hilbert.hpp"

namespace ksmooth {

namespace {

std::pair<const PolyhedralSpace&, const PolyhedralSpace&> polyhedral_pair(const Operator& t) {
    const auto* dom = std::get_if<PolyhedralSpace>(&t.domain());
    const auto* cod = std::get_if<PolyhedralSpace>(&t.codomain());
    if (!dom || !cod) throw Error(ErrorKind::UnsupportedSpacePair, "needs polyhedral domain and codomain");
    return {*dom, *cod};
}

void require_unit_norm(const Operator& t) {
    if (t.is_zero()) throw Error(ErrorKind::NotUnitNorm, "zero operator");
    Scalar n = operator_norm(t);
    if (!(n == Scalar(Rational(1)))) throw Error(ErrorKind::NotUnitNorm, "‖T‖ = " + n.str());
}

}  // namespace

FeasibilityProblem extreme_feasibility(const Operator& t) {
    auto [dom, cod] = polyhedral_pair(t);
    FeasibilityProblem p;
    p.unknowns = dom.dim() * cod.dim();
    std::map<Vec, Rational> tightest;
    auto add = [&](Vec row, Rational bound) {
        auto [it, inserted] = tightest.emplace(std::move(row), bound);
        if (!inserted && bound < it->second) it->second = bound;
    };
    for (const auto& v : dom.vertices()) {
        if (!leading_positive(v)) continue;
        Vec tv = t.apply(v);
        for (const auto& f : cod.facets()) {
            Vec row = outer_flat(f, v);
            Rational bound = 1 - dot(f, tv);
            add(negated(row), bound);
            add(std::move(row), bound);
        }
    }
    for (auto& [row, bound] : tightest) {
        p.rows.push_back(row);
        p.rhs.push_back(bound);
    }
    return p;
}

LpResult maximize(const Vec& objective, const FeasibilityProblem& problem) {
    const std::size_t n = problem.unknowns;
    const std::size_t m = problem.rows.size();
    if (objective.size() != n) throw Error(ErrorKind::DimensionMismatch, "objective length");
    for (const auto& b : problem.rhs)
        if (b < 0) throw Error(ErrorKind::ValidationError, "origin must be feasible");

    // columns: p (n), q (n), slack (m); last column is the right-hand side
    const std::size_t cols = 2 * n + m;
    std::vector<Vec> tab(m, Vec(cols + 1, Rational(0)));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            tab[i][j] = problem.rows[i][j];
            tab[i][n + j] = -problem.rows[i][j];
        }
        tab[i][2 * n + i] = 1;
        tab[i][cols] = problem.rhs[i];
    }
    // reduced costs for maximisation: z_j - c_j stored as negatives of c
    Vec cost(cols + 1, Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
        cost[j] = -objective[j];
        cost[n + j] = objective[j];
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = 2 * n + i;

    for (;;) {
        // Bland: lowest-index column with negative reduced cost enters.
        std::size_t enter = cols;
        for (std::size_t j = 0; j < cols; ++j)
            if (cost[j] < 0) {
                enter = j;
                break;
            }
        if (enter == cols) break;
        std::size_t leave = m;
        Rational best_ratio;
        for (std::size_t i = 0; i < m; ++i) {
            if (tab[i][enter] <= 0) continue;
            Rational ratio = tab[i][cols] / tab[i][enter];
            if (leave == m || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == m) return {false, Rational(0), {}};
        Rational piv = tab[leave][enter];
        for (auto& x : tab[leave]) x /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || tab[i][enter] == 0) continue;
            Rational f = tab[i][enter];
            for (std::size_t j = 0; j <= cols; ++j) tab[i][j] -= f * tab[leave][j];
        }
        if (cost[enter] != 0) {
            Rational f = cost[enter];
            for (std::size_t j = 0; j <= cols; ++j) cost[j] -= f * tab[leave][j];
        }
        basis[leave] = enter;
    }
    LpResult r{true, cost[cols], Vec(n, Rational(0))};
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < n) r.argmax[basis[i]] += tab[i][cols];
        else if (basis[i] < 2 * n) r.argmax[basis[i] - n] -= tab[i][cols];
    }
    return r;
}

bool extreme_contraction_lp(const Operator& t) {
    auto [dom, cod] = polyhedral_pair(t);
    require_unit_norm(t);
    if (dom.dim() * cod.dim() > 16) throw Error(ErrorKind::ScopeExceeded, "LP oracle limited to 16 unknowns");
    const FeasibilityProblem p = extreme_feasibility(t);
    for (std::size_t k = 0; k < p.unknowns; ++k) {
        Vec c(p.unknowns, Rational(0));
        c[k] = 1;
        LpResult r = maximize(c, p);
        if (!r.bounded) throw Error(ErrorKind::Internal, "perturbation region is unbounded");
        if (r.value > 0) return false;
    }
    return true;
}

ExtremeCriterion extreme_contraction_smoothness(const Operator& t) {
    if (!is_linf(t.domain(), 3) || !is_polyhedral(t.codomain()) || dimension(t.codomain()) != 2)
        throw Error(ErrorKind::WrongSpaces, "criterion needs ℓ∞³ into a 2-dimensional polyhedral space");
    require_unit_norm(t);
    ExtremeCriterion c;
    auto att = norm_attainment_ext(t);
    c.attaining_count = att.attaining_vertices.size();
    c.images_extreme = std::all_of(att.attaining_vertices.begin(), att.attaining_vertices.end(),
                                   [&](const Vec& x) { return is_extreme_point(t.codomain(), t.apply(x)); });
    c.extreme = c.attaining_count >= 6 && c.images_extreme;
    c.order = operator_smoothness(t).order;
    c.bridge_holds = c.extreme == (c.order == 6);
    return c;
}

namespace {

// Exact rank by Gaussian elimination on a private copy, column-major sweep.
std::size_t exact_rank_columns(std::vector<Vec> rows) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows.front().size();
    std::size_t r = 0;
    for (std::size_t c = cols; c-- > 0 && r < rows.size();) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][c] == 0) continue;
            Rational f = rows[i][c] / rows[r][c];
            for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= f * rows[r][j];
        }
        ++r;
    }
    return r;
}

}  // namespace

std::size_t brute_rank_oracle(const Operator& t) {
    const auto* dom = std::get_if<PolyhedralSpace>(&t.domain());
    if (!dom) throw Error(ErrorKind::UnsupportedSpacePair, "oracle needs a polyhedral domain");
    if (t.is_zero()) throw Error(ErrorKind::ZeroOperator, "zero operator");
    const Matrix& m = t.matrix();
    std::vector<Vec> images;
    for (const auto& v : dom->vertices()) images.push_back(m.apply(v));

    std::vector<Vec> functionals;
    if (const auto* cod = std::get_if<PolyhedralSpace>(&t.codomain())) {
        const PolyhedralSpace dual = dual_space(*cod);
        Rational best = 0;
        for (const auto& f : dual.vertices())
            for (const auto& img : images) best = std::max(best, Rational(dot(f, img)));
        // dual-vertex-major assembly order
        for (const auto& f : dual.vertices())
            for (std::size_t k = 0; k < images.size(); ++k)
                if (dot(f, images[k]) == best) functionals.push_back(outer_flat(f, dom->vertices()[k]));
    } else {
        Rational best = 0;
        for (const auto& img : images) best = std::max(best, Rational(dot(img, img)));
        for (std::size_t k = images.size(); k-- > 0;)
            if (dot(images[k], images[k]) == best) functionals.push_back(outer_flat(images[k], dom->vertices()[k]));
    }

    std::mt19937_64 rng(0x0bad5eedull);
    std::size_t ranks[3];
    for (auto& r : ranks) r = rank_mod_prime(functionals, random_prime(rng));
    if (ranks[0] == ranks[1] && ranks[1] == ranks[2]) return ranks[0];
    return exact_rank_columns(std::move(functionals));
}

bool bj_breakpoint_oracle(const Operator& t, const Operator& a) {
    auto [dom, cod] = polyhedral_pair(t);
    if (!(t.domain() == a.domain()) || !(t.codomain() == a.codomain()))
        throw Error(ErrorKind::ShapeMismatch, "operators act between different spaces");
    // affine pieces λ ↦ c + λ s with |f(·)| folded in by the symmetric facet list
    std::vector<std::pair<Rational, Rational>> lines;
    for (const auto& v : dom.vertices()) {
        Vec tv = t.apply(v), av = a.apply(v);
        for (const auto& f : cod.facets()) lines.emplace_back(dot(f, tv), dot(f, av));
    }
    std::sort(lines.begin(), lines.end());
    lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
    auto g = [&](const Rational& lambda) {
        Rational best = lines.front().first + lambda * lines.front().second;
        for (const auto& [c, s] : lines) best = std::max(best, Rational(c + lambda * s));
        return best;
    };
    const Rational at_zero = g(Rational(0));
    std::vector<Rational> candidates;
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j)
            if (lines[i].second != lines[j].second)
                candidates.push_back((lines[j].first - lines[i].first) / (lines[i].second - lines[j].second));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const auto& lambda : candidates)
        if (g(lambda) < at_zero) return false;
    return true;
}

bool bj_hilbert_min_oracle(const Operator& t, const Operator& a, double tol) {
    const Eigen::MatrixXcd tm = to_complex_matrix(t);
    const Eigen::MatrixXcd am = to_complex_matrix(a);
    // ‖M‖₂ via the largest eigenvalue of M*M, independent of the SVD path.
    auto norm2 = [](const Eigen::MatrixXcd& mat) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(mat.adjoint() * mat, Eigen::EigenvaluesOnly);
        return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
    };
    const double base = norm2(tm);
    const double anorm = norm2(am);
    if (anorm == 0) return true;
    // beyond |λ| = 2‖T‖/‖A‖ the norm exceeds ‖T‖
    const double radius = 2 * base / anorm;
    const bool complex_field = std::get<EuclideanSpace>(t.domain()).field == Field::complex;
    // complex scalars: λ = r·e^{iθ} with r real, θ ∈ [0, π)
    const int directions = complex_field ? 90 : 1;
    const int grid = complex_field ? 160 : 400;
    const double phi = (std::sqrt(5.0) - 1) / 2;
    double lowest = base;
    for (int k = 0; k < directions; ++k) {
        const std::complex<double> dir = std::polar(1.0, std::acos(-1.0) * k / directions);
        auto g = [&](double r) { return norm2(tm + (r * dir) * am); };
        std::vector<double> xs(grid + 1), gs(grid + 1);
        for (int i = 0; i <= grid; ++i) {
            xs[i] = -radius + 2 * radius * i / grid;
            gs[i] = g(xs[i]);
            lowest = std::min(lowest, gs[i]);
        }
        for (int i = 0; i <= grid; ++i) {
            if (i > 0 && gs[i] > gs[i - 1]) continue;
            if (i < grid && gs[i] > gs[i + 1]) continue;
            double lo = xs[std::max(i - 1, 0)], hi = xs[std::min(i + 1, grid)];
            double c = hi - phi * (hi - lo), d = lo + phi * (hi - lo);
            double fc = g(c), fd = g(d);
            for (int it = 0; it < 80; ++it) {
                if (fc < fd) {
                    hi = d;
                    d = c;
                    fd = fc;
                    c = hi - phi * (hi - lo);
                    fc = g(c);
                } else {
                    lo = c;
                    c = d;
                    fc = fd;
                    d = lo + phi * (hi - lo);
                    fd = g(d);
                }
            }
            lowest = std::min({lowest, fc, fd});
        }
    }
    return lowest >= base - tol;
}

}  // namespace ksmooth
