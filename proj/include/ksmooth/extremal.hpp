#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ksmooth/operator.hpp"

namespace ksmooth {

// {S : ‖T+S‖ ≤ 1, ‖T−S‖ ≤ 1} written as rows·vec(S) ≤ rhs, vec row-major.
// The four inequalities ±f((T±S)v) ≤ 1 per vertex v and facet f reduce to
// ±f(Sv) ≤ 1 − f(Tv) over one vertex per antipodal pair and all facets;
// duplicate rows keep the tightest bound.
struct FeasibilityProblem {
    std::size_t unknowns = 0;
    std::vector<Vec> rows;
    Vec rhs;
};

FeasibilityProblem extreme_feasibility(const Operator& t);

struct LpResult {
    bool bounded = true;
    Rational value;
    Vec argmax;
};

// max c·s subject to rows·s ≤ rhs with free s and rhs ≥ 0, by an exact
// tableau simplex on s = p − q with Bland's rule.
LpResult maximize(const Vec& objective, const FeasibilityProblem& problem);

// Requires polyhedral spaces and ‖T‖ = 1 exactly.
bool extreme_contraction_lp(const Operator& t);

struct ExtremeCriterion {
    std::size_t attaining_count = 0;
    bool images_extreme = false;
    bool extreme = false;      // |M_T ∩ Ext B_X| ≥ 6 and T(M_T ∩ Ext B_X) ⊆ Ext B_Y
    std::size_t order = 0;
    bool bridge_holds = false;  // extreme == (order == 6)
};

// ℓ∞³ into a 2-dimensional polyhedral space with ‖T‖ = 1.
ExtremeCriterion extreme_contraction_smoothness(const Operator& t);

// Order of smoothness recomputed without the operator-analysis pipeline:
// all (vertex, dual vertex) pairs attaining the maximum, ranked modulo three
// random primes with an exact fallback when they disagree.
std::size_t brute_rank_oracle(const Operator& t);

// Minimum of λ ↦ ‖T+λA‖ over every breakpoint of the underlying finite max of
// affine functions, compared against ‖T‖. Polyhedral pairs only.
bool bj_breakpoint_oracle(const Operator& t, const Operator& a);

// Grid plus golden-section minimisation of λ ↦ ‖T+λA‖₂ on |λ| ≤ radius,
// along 90 directions e^{iθ} for complex spaces; orthogonal iff the minimum is
// ≥ ‖T‖₂ − tol.
bool bj_hilbert_min_oracle(const Operator& t, const Operator& a, double tol = 1e-7);

}  // namespace ksmooth
