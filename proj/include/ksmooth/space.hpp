#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "ksmooth/linalg.hpp"
#include "ksmooth/rational.hpp"

namespace ksmooth {

inline constexpr double kUnitTol = 1e-9;
inline constexpr std::size_t kMaxVertices = 64;

// Largest dimension the facet scan accepts; SMOOTH_SCOPE_MAX_DIM overrides the default of 4.
std::size_t scope_max_dim();

struct ValidatedSpace;

// Finite-dimensional real space whose unit ball is a centrally symmetric
// polytope. Vertices are Ext(B_X); facets are Ext(B_{X*}) as functionals
// normalised so that max over the ball is 1. Both lists are sorted
// lexicographically.
class PolyhedralSpace {
public:
    std::size_t dim() const { return dim_; }
    const std::vector<Vec>& vertices() const { return vertices_; }
    const std::vector<Vec>& facets() const { return facets_; }

    static PolyhedralSpace linf(std::size_t dim);
    static PolyhedralSpace l1(std::size_t dim);

    friend bool operator==(const PolyhedralSpace& a, const PolyhedralSpace& b) {
        return a.dim_ == b.dim_ && a.vertices_ == b.vertices_;
    }

private:
    PolyhedralSpace(std::size_t dim, std::vector<Vec> vertices, std::vector<Vec> facets);

    friend ValidatedSpace validate_polyhedral(std::vector<Vec> points);
    friend PolyhedralSpace dual_space(const PolyhedralSpace& space);

    std::size_t dim_;
    std::vector<Vec> vertices_;
    std::vector<Vec> facets_;
};

enum class Field { real, complex };

struct EuclideanSpace {
    std::size_t dim = 1;
    Field field = Field::real;

    friend bool operator==(const EuclideanSpace&, const EuclideanSpace&) = default;
};

using Space = std::variant<PolyhedralSpace, EuclideanSpace>;

std::size_t dimension(const Space& space);
bool is_polyhedral(const Space& space);
std::string describe(const Space& space);

struct ValidatedSpace {
    PolyhedralSpace space;
    std::vector<std::string> warnings;
};

// Canonicalises a point list into a polyhedral space. Points that are not
// vertices of the hull are dropped with a warning.
ValidatedSpace validate_polyhedral(std::vector<Vec> points);

// Fresh hyperplane scan over all dim-subsets of the vertices.
std::vector<Vec> facet_enumeration(const PolyhedralSpace& space);

// Polar polytope: the unit ball of the dual norm.
PolyhedralSpace dual_space(const PolyhedralSpace& space);

Scalar norm(const Space& space, std::span<const Rational> x);
Rational norm_exact(const PolyhedralSpace& space, std::span<const Rational> x);
Rational squared_norm(std::span<const Rational> x);

struct SupportFace {
    Vec base_point;
    std::vector<Vec> functionals;
};

// Ext J(y): the extreme norm-one functionals attaining 1 at the unit vector y.
// Polyhedral spaces demand exact unit norm; Euclidean spaces accept |‖y‖-1| <= tol.
SupportFace support_face(const Space& space, std::span<const Rational> y, double tol = kUnitTol);
std::size_t point_smoothness(const Space& space, std::span<const Rational> y, double tol = kUnitTol);
bool is_extreme_point(const Space& space, std::span<const Rational> x, double tol = kUnitTol);

}  // namespace ksmooth
