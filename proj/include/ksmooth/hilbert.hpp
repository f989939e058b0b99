#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <optional>

#include "ksmooth/operator.hpp"

namespace ksmooth {

inline constexpr double kGapTol = 1e-8;
inline constexpr double kRankTol = 1e-8;

// Top singular structure of an operator between Euclidean spaces.
// Singular values within gap_tol·sigma_max of sigma_max are one cluster; its
// right singular vectors span H₀, the subspace whose unit sphere is M_T.
struct SingularStructure {
    double sigma_max = 0;
    Eigen::MatrixXcd h0_basis;  // domain_dim x multiplicity, orthonormal columns
    std::size_t multiplicity = 0;
    double gap = 0;
    Field field = Field::real;
};

Eigen::MatrixXcd to_complex_matrix(const Operator& t);
double spectral_norm(const Operator& t);

// Throws NoGap when nothing lies strictly below the top cluster.
SingularStructure top_singular_subspace(const Operator& t, double gap_tol = kGapTol);

// n(n+1)/2 over the reals and n² over the complex field.
std::size_t hilbert_smoothness(const Operator& t, double gap_tol = kGapTol);

std::size_t minimum_samples(std::size_t multiplicity);

// Numerical rank of the span of S ↦ ⟨Sx, Tx⟩ over random unit x ∈ H₀.
std::size_t sampled_rank_oracle(const Operator& t, double gap_tol = kGapTol,
                                std::optional<std::size_t> sample_count = std::nullopt, std::uint64_t seed = 1);

// T ⊥_B A decided through W = {⟨Ax, Tx⟩ : x ∈ S_{H₀}}.
bool bj_orthogonal_hilbert(const Operator& t, const Operator& a, double gap_tol = kGapTol);

// Number of singular values above rel_tol times the largest one.
std::size_t numerical_rank(const Eigen::MatrixXcd& m, double rel_tol = kRankTol);

}  // namespace ksmooth
