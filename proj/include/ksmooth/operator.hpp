#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ksmooth/linalg.hpp"
#include "ksmooth/space.hpp"

namespace ksmooth {

// A linear map between finite-dimensional spaces. Rows of `matrix` are
// indexed by codomain coordinates. `imag` carries imaginary parts and is only
// allowed between complex Euclidean spaces.
class Operator {
public:
    Operator(Matrix matrix, Space domain, Space codomain, std::optional<Matrix> imag = std::nullopt);

    const Matrix& matrix() const { return matrix_; }
    const std::optional<Matrix>& imag() const { return imag_; }
    const Space& domain() const { return domain_; }
    const Space& codomain() const { return codomain_; }

    bool is_zero() const { return matrix_.is_zero() && (!imag_ || imag_->is_zero()); }
    Vec apply(std::span<const Rational> x) const { return matrix_.apply(x); }

    friend bool operator==(const Operator&, const Operator&) = default;

private:
    Matrix matrix_;
    std::optional<Matrix> imag_;
    Space domain_;
    Space codomain_;
};

// M_T ∩ Ext(B_X) for a polyhedral domain. Comparisons are exact: Euclidean
// codomains are compared through squared norms.
struct NormAttainment {
    Scalar norm_value;
    std::vector<Vec> attaining_vertices;
};

// A generator y*⊗x of Ext J(T), acting on operators as S ↦ y*(Sx).
// `direction` is a positive multiple of y_star with rational entries; it equals
// y_star except for Euclidean codomains with irrational ‖T‖.
struct ExtJPair {
    Vec x;
    std::vector<Scalar> y_star;
    Vec direction;
};

enum class CaseLabel { Ia, Ib, II, III, IV, reduced };
std::string to_string(CaseLabel label);

struct SmoothnessReport {
    std::size_t order = 0;
    std::vector<ExtJPair> witness_pairs;
    Scalar norm_value;
    std::size_t attaining_count = 0;
    std::optional<CaseLabel> case_label;
    std::optional<std::size_t> s1_size;
    std::optional<std::size_t> predicted_order;

    bool prediction_agrees() const { return !predicted_order || *predicted_order == order; }
};

Scalar operator_norm(const Operator& t);
NormAttainment norm_attainment_ext(const Operator& t);
std::vector<ExtJPair> ext_J_operator(const Operator& t);
SmoothnessReport operator_smoothness(const Operator& t);
Operator adjoint(const Operator& t);

// T ⊥_B A on a polyhedral pair, decided by the signs of the one-sided
// derivatives of λ ↦ ‖T+λA‖ at 0.
bool bj_orthogonal(const Operator& t, const Operator& a);

// Requires domain ℓ∞³, a real 2-dimensional codomain and ‖T‖ = 1.
SmoothnessReport classify_linf3_case(const Operator& t);

// T/‖T‖ when ‖T‖ is rational; throws ModeMismatch otherwise.
Operator normalized(const Operator& t);

bool is_linf(const Space& space, std::size_t dim);

}  // namespace ksmooth
