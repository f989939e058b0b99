#include "ksmooth/generators.hpp"

#include <Eigen/Dense>

#include <algorithm>

#include "ksmooth/error.hpp"
#include "ksmooth/hilbert.hpp"

namespace ksmooth {

std::string to_string(TargetCase target) {
    switch (target) {
        case TargetCase::none: return "none";
        case TargetCase::Ia: return "I(a)";
        case TargetCase::Ib: return "I(b)";
        case TargetCase::II: return "II";
        case TargetCase::III: return "III";
        case TargetCase::IV: return "IV";
        case TargetCase::reduced_independent: return "reduced-independent";
        case TargetCase::planted: return "planted";
    }
    return "unknown";
}

namespace {

int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(v.size()) - 1))];
}

Vec random_point(std::mt19937_64& rng, std::size_t dim, int bound) {
    Vec v(dim);
    do {
        for (auto& x : v) x = uniform_int(rng, -bound, bound);
    } while (is_zero(v));
    return v;
}

PolyhedralSpace hull_of(std::vector<Vec> points) {
    std::vector<Vec> sym;
    for (auto& p : points) {
        sym.push_back(negated(p));
        sym.push_back(std::move(p));
    }
    return validate_polyhedral(std::move(sym)).space;
}

struct Edge {
    Vec from, to;
    Vec facet;
};

std::vector<Edge> polygon_edges(const PolyhedralSpace& y) {
    std::vector<Edge> edges;
    for (const auto& f : y.facets()) {
        std::vector<Vec> act;
        for (const auto& v : y.vertices())
            if (dot(f, v) == 1) act.push_back(v);
        if (act.size() == 2) edges.push_back({act[0], act[1], f});
    }
    return edges;
}

Vec along(const Edge& e, const Rational& t) {
    Vec p(e.from.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = e.from[i] + t * (e.to[i] - e.from[i]);
    return p;
}

Rational open_unit(std::mt19937_64& rng) { return fraction(uniform_int(rng, 1, 7), 8); }

// T with T(1,1,1) = p1, T(-1,1,1) = p2, T(-1,-1,1) = p3.
Matrix from_images(const Vec& p1, const Vec& p2, const Vec& p3) {
    // columns of X are x1, x2, x3; T = P X^{-1}
    static const Matrix x_inv = [] {
        Matrix x = Matrix::from_rows({{1, -1, -1}, {1, 1, -1}, {1, 1, 1}});
        Matrix inv(3, 3);
        for (std::size_t c = 0; c < 3; ++c) {
            Vec e(3, Rational(0));
            e[c] = 1;
            Vec col = *solve(x, e);
            for (std::size_t r = 0; r < 3; ++r) inv(r, c) = col[r];
        }
        return inv;
    }();
    Matrix p(p1.size(), 3);
    for (std::size_t i = 0; i < p1.size(); ++i) {
        p(i, 0) = p1[i];
        p(i, 1) = p2[i];
        p(i, 2) = p3[i];
    }
    return p * x_inv;
}

// An isometry of ℓ∞³: signed permutation matrix.
Matrix random_signed_permutation(std::mt19937_64& rng) {
    std::vector<std::size_t> perm = {0, 1, 2};
    std::shuffle(perm.begin(), perm.end(), rng);
    Matrix q(3, 3);
    for (std::size_t i = 0; i < 3; ++i) q(i, perm[i]) = uniform_int(rng, 0, 1) ? 1 : -1;
    return q;
}

// Two free sphere points A, B realised as images of the cube representatives
// using one of the linear relations that keep all eight vertices on the sphere.
Matrix pair_family(std::mt19937_64& rng, const Vec& a, const Vec& b) {
    switch (uniform_int(rng, 0, 2)) {
        case 0: return from_images(a, b, negated(a));  // Tx3 = -Tx1, Tx4 = -Tx2
        case 1: return from_images(a, a, b);           // Tx2 = Tx1, Tx4 = Tx3
        default: return from_images(a, b, b);          // Tx3 = Tx2, Tx4 = Tx1
    }
}

Vec rational_unit_circle(std::mt19937_64& rng) {
    int m = uniform_int(rng, 1, 6), n = uniform_int(rng, 0, m - 1);
    Rational d = m * m + n * n;
    Vec v = {Rational(m * m - n * n) / d, Rational(2 * m * n) / d};
    if (uniform_int(rng, 0, 1)) std::swap(v[0], v[1]);
    if (uniform_int(rng, 0, 1)) v[0] = -v[0];
    if (uniform_int(rng, 0, 1)) v[1] = -v[1];
    return v;
}

std::optional<Matrix> linf3_polygon_case(std::mt19937_64& rng, TargetCase target, const PolyhedralSpace& y) {
    const auto edges = polygon_edges(y);
    const auto& verts = y.vertices();
    auto edge_point = [&](const Edge& e) { return along(e, open_unit(rng)); };
    switch (target) {
        case TargetCase::IV: return pair_family(rng, pick(rng, verts), pick(rng, verts));
        case TargetCase::III: {
            if (uniform_int(rng, 0, 1)) {
                Vec a = pick(rng, verts), b = edge_point(pick(rng, edges));
                if (uniform_int(rng, 0, 1)) std::swap(a, b);
                return pair_family(rng, a, b);
            }
            // -Tx1 and Tx2 are the two ends of one edge; Tx3 inside it.
            const Edge& e = pick(rng, edges);
            return from_images(negated(e.from), e.to, along(e, open_unit(rng)));
        }
        case TargetCase::II: {
            const Edge& e = pick(rng, edges);
            Rational t2 = open_unit(rng), t3 = open_unit(rng);
            if (t2 == t3) return std::nullopt;
            if (t2 < t3) std::swap(t2, t3);
            return from_images(negated(e.from), along(e, t2), along(e, t3));
        }
        case TargetCase::Ib: {
            const Edge& e1 = pick(rng, edges);
            const Edge& e2 = pick(rng, edges);
            if (e1.facet == e2.facet || e1.facet == negated(e2.facet)) return std::nullopt;
            return pair_family(rng, edge_point(e1), edge_point(e2));
        }
        case TargetCase::Ia: {
            const Edge& e1 = pick(rng, edges);
            if (uniform_int(rng, 0, 2) == 0) {
                // rank one: x ↦ ±x_k · u
                Vec u = edge_point(e1);
                Matrix t(2, 3);
                std::size_t k = static_cast<std::size_t>(uniform_int(rng, 0, 2));
                int s = uniform_int(rng, 0, 1) ? 1 : -1;
                for (std::size_t i = 0; i < 2; ++i) t(i, k) = s * u[i];
                return t;
            }
            Vec a = edge_point(e1), b = edge_point(e1);
            if (uniform_int(rng, 0, 1)) b = negated(b);
            return pair_family(rng, a, b);
        }
        default: return std::nullopt;
    }
}

std::optional<Matrix> linf3_euclidean_case(std::mt19937_64& rng, TargetCase target) {
    Vec a = rational_unit_circle(rng), b = rational_unit_circle(rng);
    if (target == TargetCase::Ia) {
        if (uniform_int(rng, 0, 1)) {
            Matrix t(2, 3);
            std::size_t k = static_cast<std::size_t>(uniform_int(rng, 0, 2));
            for (std::size_t i = 0; i < 2; ++i) t(i, k) = a[i];
            return t;
        }
        return pair_family(rng, a, uniform_int(rng, 0, 1) ? a : negated(a));
    }
    if (target == TargetCase::Ib) {
        if (a == b || a == negated(b)) return std::nullopt;
        return pair_family(rng, a, b);
    }
    return std::nullopt;
}

std::optional<CaseLabel> label_of(TargetCase t) {
    switch (t) {
        case TargetCase::Ia: return CaseLabel::Ia;
        case TargetCase::Ib: return CaseLabel::Ib;
        case TargetCase::II: return CaseLabel::II;
        case TargetCase::III: return CaseLabel::III;
        case TargetCase::IV: return CaseLabel::IV;
        default: return std::nullopt;
    }
}

Space make_domain(std::mt19937_64& rng, const InstanceConfig& c) {
    switch (c.domain) {
        case DomainKind::linf3: return PolyhedralSpace::linf(3);
        case DomainKind::linf: return PolyhedralSpace::linf(c.domain_dim);
        case DomainKind::random_polyhedral: return random_polytope(rng, c.domain_dim);
        case DomainKind::euclidean: return EuclideanSpace{c.domain_dim, c.field};
    }
    throw Error(ErrorKind::ValidationError, "unknown domain kind");
}

Eigen::MatrixXcd random_unitary(std::mt19937_64& rng, Eigen::Index n, Field field) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = {g(rng), field == Field::complex ? g(rng) : 0.0};
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
    return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
}

Operator planted(std::mt19937_64& rng, const InstanceConfig& c) {
    const auto d = static_cast<Eigen::Index>(c.domain_dim);
    const auto m = static_cast<Eigen::Index>(c.codomain_dim);
    if (c.multiplicity == 0 || static_cast<Eigen::Index>(c.multiplicity) >= d ||
        static_cast<Eigen::Index>(c.multiplicity) > m)
        throw Error(ErrorKind::ValidationError, "planted multiplicity must lie in [1, min(dom-1, cod)]");
    std::uniform_real_distribution<double> low(0.05, 0.85);
    Eigen::MatrixXcd sigma = Eigen::MatrixXcd::Zero(m, d);
    for (Eigen::Index i = 0; i < std::min(m, d); ++i)
        sigma(i, i) = i < static_cast<Eigen::Index>(c.multiplicity) ? 1.0 : low(rng);
    Eigen::MatrixXcd t = random_unitary(rng, m, c.field) * sigma * random_unitary(rng, d, c.field).adjoint();
    Matrix re(c.codomain_dim, c.domain_dim), im(c.codomain_dim, c.domain_dim);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < d; ++j) {
            re(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = Rational(t(i, j).real());
            im(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = Rational(t(i, j).imag());
        }
    std::optional<Matrix> imag;
    if (c.field == Field::complex) imag = std::move(im);
    return Operator(std::move(re), EuclideanSpace{c.domain_dim, c.field}, EuclideanSpace{c.codomain_dim, c.field},
                    std::move(imag));
}

// One candidate; nullopt or a thrown validation error counts as a rejection.
std::optional<Operator> candidate(std::mt19937_64& rng, const InstanceConfig& c) {
    if (c.target == TargetCase::planted) {
        Operator t = planted(rng, c);
        if (top_singular_subspace(t).multiplicity != c.multiplicity) return std::nullopt;
        return t;
    }
    if (auto label = label_of(c.target)) {
        if (c.domain != DomainKind::linf3) throw Error(ErrorKind::ValidationError, "case targets need an ℓ∞³ domain");
        std::optional<Matrix> m;
        Space cod = EuclideanSpace{2, Field::real};
        if (c.codomain == CodomainFamily::euclidean2) {
            m = linf3_euclidean_case(rng, c.target);
        } else {
            PolyhedralSpace y = c.codomain == CodomainFamily::linf2 ? PolyhedralSpace::linf(2) : random_polygon(rng);
            m = linf3_polygon_case(rng, c.target, y);
            cod = y;
        }
        if (!m) return std::nullopt;
        Operator t(*m * random_signed_permutation(rng), PolyhedralSpace::linf(3), cod);
        auto report = classify_linf3_case(t);
        if (report.case_label != *label) return std::nullopt;
        return t;
    }

    Space dom = make_domain(rng, c);
    if (c.codomain == CodomainFamily::image_hull) {
        const auto* pd = std::get_if<PolyhedralSpace>(&dom);
        if (!pd) throw Error(ErrorKind::ValidationError, "image hulls need a polyhedral domain");
        Matrix m = random_integer_matrix(rng, c.codomain_dim, pd->dim(), 3);
        std::vector<Vec> pts;
        for (const auto& v : pd->vertices())
            if (leading_positive(v)) pts.push_back(m.apply(v));
        // occasional extra points push part of the image off the sphere
        if (c.target == TargetCase::none && uniform_int(rng, 0, 2) == 0) {
            Vec extra = random_point(rng, c.codomain_dim, 6);
            pts.push_back(extra);
        }
        Operator t(m, dom, hull_of(std::move(pts)));
        t = normalized(t);
        if (c.target == TargetCase::reduced_independent) {
            auto att = norm_attainment_ext(t);
            std::vector<Vec> reps;
            for (const auto& x : att.attaining_vertices)
                if (leading_positive(x)) reps.push_back(x);
            if (rank_gauss(reps) != reps.size() || reps.size() != pd->dim()) return std::nullopt;
        }
        return t;
    }
    Space cod = [&]() -> Space {
        switch (c.codomain) {
            case CodomainFamily::polygon: return random_polygon(rng);
            case CodomainFamily::linf2: return PolyhedralSpace::linf(2);
            case CodomainFamily::euclidean2: return EuclideanSpace{2, Field::real};
            case CodomainFamily::random_polyhedral: return random_polytope(rng, c.codomain_dim);
            case CodomainFamily::euclidean: return EuclideanSpace{c.codomain_dim, c.field};
            default: throw Error(ErrorKind::ValidationError, "unsupported codomain family");
        }
    }();
    Matrix m = random_integer_matrix(rng, dimension(cod), dimension(dom), 3);
    if (m.is_zero()) return std::nullopt;
    Operator t(m, dom, cod);
    if (is_polyhedral(cod) && is_polyhedral(dom)) t = normalized(t);
    return t;
}

}  // namespace

Matrix random_integer_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int bound) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform_int(rng, -bound, bound);
    return m;
}

PolyhedralSpace random_polygon(std::mt19937_64& rng) {
    for (;;) {
        std::vector<Vec> pts;
        const int pairs = uniform_int(rng, 2, 4);
        for (int k = 0; k < pairs; ++k) pts.push_back(random_point(rng, 2, 4));
        try {
            return hull_of(std::move(pts));
        } catch (const Error&) {
        }
    }
}

PolyhedralSpace random_polytope(std::mt19937_64& rng, std::size_t dim) {
    for (;;) {
        std::vector<Vec> pts;
        const int pairs = uniform_int(rng, static_cast<int>(dim), static_cast<int>(dim) + 2);
        for (int k = 0; k < pairs; ++k) pts.push_back(random_point(rng, dim, 3));
        try {
            PolyhedralSpace p = hull_of(std::move(pts));
            if (p.facets().size() <= kMaxVertices) return p;
        } catch (const Error&) {
        }
    }
}

GeneratedInstance random_instance(std::uint64_t seed, const InstanceConfig& config) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 0x632be59bd9b4e019ull);
    std::size_t rejections = 0;
    while (rejections < config.budget) {
        try {
            if (auto t = candidate(rng, config)) return {std::move(*t), rejections};
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::ValidationError || e.kind() == ErrorKind::Internal) throw;
        }
        ++rejections;
    }
    throw Error(ErrorKind::GenerationExhausted, "no instance for target " + to_string(config.target) + " after " +
                                                    std::to_string(rejections) + " candidates");
}

}  // namespace ksmooth
