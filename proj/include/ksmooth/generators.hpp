#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>

#include "ksmooth/operator.hpp"

namespace ksmooth {

enum class DomainKind { linf3, linf, random_polyhedral, euclidean };
enum class CodomainFamily { polygon, linf2, euclidean2, random_polyhedral, image_hull, euclidean };
enum class TargetCase { none, Ia, Ib, II, III, IV, reduced_independent, planted };

std::string to_string(TargetCase target);

struct InstanceConfig {
    DomainKind domain = DomainKind::linf3;
    CodomainFamily codomain = CodomainFamily::polygon;
    TargetCase target = TargetCase::none;
    std::size_t domain_dim = 3;
    std::size_t codomain_dim = 2;
    std::size_t multiplicity = 1;  // planted top singular multiplicity
    Field field = Field::real;
    std::size_t budget = 500;
};

struct GeneratedInstance {
    Operator op;
    std::size_t rejections = 0;
};

// Deterministic in (seed, config). Targeted instances are re-checked against
// their declared case before being returned; GenerationExhausted is thrown
// once `budget` candidates have been rejected.
GeneratedInstance random_instance(std::uint64_t seed, const InstanceConfig& config);

// Building blocks shared with the verification suites.
PolyhedralSpace random_polygon(std::mt19937_64& rng);
PolyhedralSpace random_polytope(std::mt19937_64& rng, std::size_t dim);
Matrix random_integer_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int bound);

}  // namespace ksmooth
