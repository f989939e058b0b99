#include "ksmooth/space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>

#include "ksmooth/error.hpp"

namespace ksmooth {

std::size_t scope_max_dim() {
    if (const char* env = std::getenv("SMOOTH_SCOPE_MAX_DIM")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) return static_cast<std::size_t>(v);
    }
    return 4;
}

namespace {

void check_scope(std::size_t dim, std::size_t vertex_count) {
    if (dim > scope_max_dim())
        throw Error(ErrorKind::ScopeExceeded, "dimension " + std::to_string(dim) + " exceeds scope bound " +
                                                  std::to_string(scope_max_dim()));
    if (vertex_count > kMaxVertices)
        throw Error(ErrorKind::ScopeExceeded, std::to_string(vertex_count) + " vertices exceed scope bound " +
                                                  std::to_string(kMaxVertices));
}

void sort_unique(std::vector<Vec>& vs) {
    std::sort(vs.begin(), vs.end(), [](const Vec& a, const Vec& b) { return lex_less(a, b); });
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
}

// Every functional f with f(p) = 1 on some linearly independent dim-subset of
// the points and f <= 1 on all of them. For a symmetric full-dimensional point
// set these are exactly the facet functionals of its convex hull.
std::vector<Vec> scan_facets(const std::vector<Vec>& points, std::size_t dim) {
    std::vector<Vec> found;
    const std::size_t n = points.size();
    if (n < dim) return found;
    std::vector<std::size_t> idx(dim);
    for (std::size_t i = 0; i < dim; ++i) idx[i] = i;
    const Vec ones(dim, Rational(1));
    std::set<Vec> seen;
    for (;;) {
        Matrix a(dim, dim);
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c) a(r, c) = points[idx[r]][c];
        if (auto f = solve(a, ones); f && !seen.contains(*f)) {
            seen.insert(*f);
            bool supporting = std::all_of(points.begin(), points.end(),
                                          [&](const Vec& p) { return dot(*f, p) <= 1; });
            if (supporting) found.push_back(*f);
        }
        // next combination
        std::size_t k = dim;
        while (k > 0 && idx[k - 1] == n - dim + (k - 1)) --k;
        if (k == 0) break;
        ++idx[k - 1];
        for (std::size_t j = k; j < dim; ++j) idx[j] = idx[j - 1] + 1;
    }
    sort_unique(found);
    return found;
}

std::vector<Vec> active(const std::vector<Vec>& facets, std::span<const Rational> x) {
    std::vector<Vec> out;
    for (const auto& f : facets)
        if (dot(f, x) == 1) out.push_back(f);
    return out;
}

std::vector<Vec> sign_vectors(std::size_t dim) {
    std::vector<Vec> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << dim); ++mask) {
        Vec v(dim);
        for (std::size_t i = 0; i < dim; ++i) v[i] = (mask >> i) & 1 ? -1 : 1;
        out.push_back(std::move(v));
    }
    sort_unique(out);
    return out;
}

std::vector<Vec> signed_basis(std::size_t dim) {
    std::vector<Vec> out;
    for (std::size_t i = 0; i < dim; ++i)
        for (int s : {1, -1}) {
            Vec v(dim, Rational(0));
            v[i] = s;
            out.push_back(std::move(v));
        }
    sort_unique(out);
    return out;
}

}  // namespace

PolyhedralSpace::PolyhedralSpace(std::size_t dim, std::vector<Vec> vertices, std::vector<Vec> facets)
    : dim_(dim), vertices_(std::move(vertices)), facets_(std::move(facets)) {}

PolyhedralSpace PolyhedralSpace::linf(std::size_t dim) {
    if (dim == 0) throw Error(ErrorKind::ValidationError, "dimension must be positive");
    check_scope(dim, 0);
    return PolyhedralSpace(dim, sign_vectors(dim), signed_basis(dim));
}

PolyhedralSpace PolyhedralSpace::l1(std::size_t dim) {
    if (dim == 0) throw Error(ErrorKind::ValidationError, "dimension must be positive");
    check_scope(dim, 0);
    return PolyhedralSpace(dim, signed_basis(dim), sign_vectors(dim));
}

std::size_t dimension(const Space& space) {
    return std::visit([](const auto& s) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, PolyhedralSpace>)
            return s.dim();
        else
            return s.dim;
    }, space);
}

bool is_polyhedral(const Space& space) { return std::holds_alternative<PolyhedralSpace>(space); }

std::string describe(const Space& space) {
    if (const auto* p = std::get_if<PolyhedralSpace>(&space))
        return "polyhedral(dim=" + std::to_string(p->dim()) + ", vertices=" + std::to_string(p->vertices().size()) +
               ", facets=" + std::to_string(p->facets().size()) + ")";
    const auto& e = std::get<EuclideanSpace>(space);
    return std::string(e.field == Field::real ? "euclidean-real" : "euclidean-complex") + "(dim=" +
           std::to_string(e.dim) + ")";
}

ValidatedSpace validate_polyhedral(std::vector<Vec> points) {
    if (points.empty()) throw Error(ErrorKind::ValidationError, "empty vertex list");
    const std::size_t dim = points.front().size();
    if (dim == 0) throw Error(ErrorKind::ValidationError, "zero-dimensional vertex");
    for (const auto& p : points)
        if (p.size() != dim)
            throw Error(ErrorKind::DimensionMismatch, "vertex " + to_string(p) + " does not have dimension " +
                                                          std::to_string(dim));
    check_scope(dim, 0);
    sort_unique(points);
    for (const auto& p : points) {
        Vec m = negated(p);
        if (!std::binary_search(points.begin(), points.end(), m, [](const Vec& a, const Vec& b) { return lex_less(a, b); }))
            throw Error(ErrorKind::NotSymmetric, to_string(p) + " is present but " + to_string(m) + " is not");
    }
    if (rank_gauss(points) < dim)
        throw Error(ErrorKind::NotFullDimensional, "points span a proper subspace of dimension " + std::to_string(dim));
    check_scope(dim, points.size());

    std::vector<Vec> facets = scan_facets(points, dim);
    ValidatedSpace out{PolyhedralSpace(dim, {}, facets), {}};
    for (auto& p : points) {
        auto act = active(facets, p);
        if (act.empty()) {
            out.warnings.push_back("dropped interior point " + to_string(p));
        } else if (rank_gauss(act) < dim) {
            out.warnings.push_back("dropped non-vertex boundary point " + to_string(p));
        } else {
            out.space.vertices_.push_back(std::move(p));
        }
    }
    return out;
}

std::vector<Vec> facet_enumeration(const PolyhedralSpace& space) {
    check_scope(space.dim(), space.vertices().size());
    return scan_facets(space.vertices(), space.dim());
}

PolyhedralSpace dual_space(const PolyhedralSpace& space) {
    check_scope(space.dim(), space.facets().size());
    return PolyhedralSpace(space.dim(), space.facets(), space.vertices());
}

Rational norm_exact(const PolyhedralSpace& space, std::span<const Rational> x) {
    if (x.size() != space.dim())
        throw Error(ErrorKind::DimensionMismatch, "vector of length " + std::to_string(x.size()) +
                                                      " in space of dimension " + std::to_string(space.dim()));
    Rational best = 0;
    for (const auto& f : space.facets()) {
        Rational v = dot(f, x);
        if (v > best) best = v;
    }
    return best;
}

Rational squared_norm(std::span<const Rational> x) { return dot(x, x); }

Scalar norm(const Space& space, std::span<const Rational> x) {
    if (const auto* p = std::get_if<PolyhedralSpace>(&space)) return Scalar(norm_exact(*p, x));
    const auto& e = std::get<EuclideanSpace>(space);
    if (x.size() != e.dim)
        throw Error(ErrorKind::DimensionMismatch, "vector of length " + std::to_string(x.size()) +
                                                      " in space of dimension " + std::to_string(e.dim));
    return sqrt_scalar(squared_norm(x));
}

SupportFace support_face(const Space& space, std::span<const Rational> y, double tol) {
    SupportFace face{Vec(y.begin(), y.end()), {}};
    if (const auto* p = std::get_if<PolyhedralSpace>(&space)) {
        if (norm_exact(*p, y) != 1) throw Error(ErrorKind::NotUnitVector, to_string(y) + " does not have norm 1");
        face.functionals = active(p->facets(), y);
        return face;
    }
    Scalar n = norm(space, y);
    if (std::abs(n.to_double() - 1.0) > tol)
        throw Error(ErrorKind::NotUnitVector, to_string(y) + " has Euclidean norm " + n.str());
    face.functionals.push_back(face.base_point);
    return face;
}

std::size_t point_smoothness(const Space& space, std::span<const Rational> y, double tol) {
    return rank_bareiss(support_face(space, y, tol).functionals);
}

bool is_extreme_point(const Space& space, std::span<const Rational> x, double tol) {
    if (const auto* p = std::get_if<PolyhedralSpace>(&space)) {
        if (x.size() != p->dim()) throw Error(ErrorKind::DimensionMismatch, "vector dimension mismatch");
        Vec v(x.begin(), x.end());
        return std::binary_search(p->vertices().begin(), p->vertices().end(), v,
                                  [](const Vec& a, const Vec& b) { return lex_less(a, b); });
    }
    return std::abs(norm(space, x).to_double() - 1.0) <= tol;
}

}  // namespace ksmooth
