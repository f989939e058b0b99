#include "ksmooth/operator.hpp"

#include <algorithm>

#include "ksmooth/error.hpp"
#include "ksmooth/hilbert.hpp"

namespace ksmooth {

namespace {

bool is_complex(const Space& s) {
    const auto* e = std::get_if<EuclideanSpace>(&s);
    return e && e->field == Field::complex;
}

// Polyhedral domain required for every finite attainment computation.
const PolyhedralSpace& polyhedral_domain(const Operator& t) {
    const auto* dom = std::get_if<PolyhedralSpace>(&t.domain());
    if (!dom)
        throw Error(ErrorKind::UnsupportedSpacePair,
                    "Euclidean domain has a continuum attainment set; use the Hilbert analysis");
    if (is_complex(t.codomain()))
        throw Error(ErrorKind::UnsupportedSpacePair, "complex codomain with a polyhedral domain");
    return *dom;
}

void require_nonzero(const Operator& t) {
    if (t.is_zero()) throw Error(ErrorKind::ZeroOperator, "the zero operator has no norming functionals");
}

// ‖Tv‖ for polyhedral codomains and ‖Tv‖² for Euclidean ones; both are
// monotone in the norm, so maxima and ties coincide.
Rational image_measure(const Operator& t, std::span<const Rational> image) {
    if (const auto* cod = std::get_if<PolyhedralSpace>(&t.codomain())) return norm_exact(*cod, image);
    return squared_norm(image);
}

struct Attainment {
    Rational measure;
    std::vector<Vec> vertices;
};

Attainment attainment(const Operator& t) {
    const auto& dom = polyhedral_domain(t);
    require_nonzero(t);
    Attainment a{Rational(0), {}};
    for (const auto& v : dom.vertices()) {
        Rational m = image_measure(t, t.apply(v));
        if (m > a.measure) {
            a.measure = m;
            a.vertices.clear();
        }
        if (m == a.measure) a.vertices.push_back(v);
    }
    return a;
}

Scalar measure_to_norm(const Operator& t, const Rational& measure) {
    if (is_polyhedral(t.codomain())) return Scalar(measure);
    return sqrt_scalar(measure);
}

std::vector<Scalar> to_scalars(std::span<const Rational> v) { return {v.begin(), v.end()}; }

const std::vector<Vec>& linf3_reps() {
    static const std::vector<Vec> reps = {
        {Rational(1), Rational(1), Rational(1)},
        {Rational(-1), Rational(1), Rational(1)},
        {Rational(-1), Rational(-1), Rational(1)},
        {Rational(1), Rational(-1), Rational(1)},
    };
    return reps;
}

bool real_two_dimensional(const Space& s) { return dimension(s) == 2 && !is_complex(s); }

// Case analysis for T: ℓ∞³ → 2-dimensional Y, filled into an existing report.
void fill_linf3_case(const Operator& t, const Attainment& att, SmoothnessReport& report) {
    const Scalar n = measure_to_norm(t, att.measure);
    auto support_directions = [&](std::span<const Rational> x) -> std::vector<Vec> {
        Vec image = t.apply(x);
        if (const auto* cod = std::get_if<PolyhedralSpace>(&t.codomain()))
            return support_face(*cod, scaled(image, Rational(1) / n.exact())).functionals;
        return {image};
    };
    if (att.vertices.size() < 8) {
        std::size_t predicted = 0;
        for (const auto& x : att.vertices)
            if (leading_positive(x)) predicted += rank_bareiss(support_directions(x));
        report.case_label = CaseLabel::reduced;
        report.predicted_order = predicted;
        return;
    }
    std::vector<std::vector<Vec>> faces;
    std::size_t s1 = 0;
    for (const auto& x : linf3_reps()) {
        faces.push_back(support_directions(x));
        if (rank_bareiss(faces.back()) == 1) ++s1;
    }
    report.s1_size = s1;
    if (s1 == 4) {
        // Singleton faces that agree up to sign: every image lies on one
        // segment of the sphere or its reflection.
        const Vec& f0 = faces.front().front();
        bool same_line = std::all_of(faces.begin(), faces.end(), [&](const std::vector<Vec>& f) {
            return f.size() == 1 && (f.front() == f0 || f.front() == negated(f0));
        });
        if (!is_polyhedral(t.codomain())) {
            // Euclidean directions are images, not unit functionals; compare projectively.
            same_line = std::all_of(faces.begin(), faces.end(), [&](const std::vector<Vec>& f) {
                return rank_bareiss({f.front(), f0}) == 1;
            });
        }
        report.case_label = same_line ? CaseLabel::Ia : CaseLabel::Ib;
        report.predicted_order = same_line ? 3 : 4;
    } else if (s1 == 3) {
        report.case_label = CaseLabel::II;
        report.predicted_order = 4;
    } else if (s1 == 2) {
        report.case_label = CaseLabel::III;
        report.predicted_order = 5;
    } else {
        report.case_label = CaseLabel::IV;
        report.predicted_order = 6;
    }
}

std::vector<ExtJPair> pairs_from(const Operator& t, const Attainment& att) {
    const Scalar n = measure_to_norm(t, att.measure);
    std::vector<ExtJPair> out;
    for (const auto& x : att.vertices) {
        if (!leading_positive(x)) continue;
        Vec image = t.apply(x);
        if (const auto* cod = std::get_if<PolyhedralSpace>(&t.codomain())) {
            for (auto& f : support_face(*cod, scaled(image, Rational(1) / n.exact())).functionals)
                out.push_back({x, to_scalars(f), f});
        } else if (n.is_exact()) {
            Vec y = scaled(image, Rational(1) / n.exact());
            out.push_back({x, to_scalars(y), y});
        } else {
            std::vector<Scalar> y;
            for (const auto& c : image) y.emplace_back(c.get_d() / n.to_double());
            out.push_back({x, std::move(y), image});
        }
    }
    return out;
}

}  // namespace

Operator::Operator(Matrix matrix, Space domain, Space codomain, std::optional<Matrix> imag)
    : matrix_(std::move(matrix)), imag_(std::move(imag)), domain_(std::move(domain)), codomain_(std::move(codomain)) {
    const std::size_t m = dimension(codomain_);
    const std::size_t n = dimension(domain_);
    if (matrix_.rows() != m || matrix_.cols() != n)
        throw Error(ErrorKind::ShapeMismatch, "matrix is " + std::to_string(matrix_.rows()) + "x" +
                                                  std::to_string(matrix_.cols()) + " but spaces need " +
                                                  std::to_string(m) + "x" + std::to_string(n));
    if (is_complex(domain_) != is_complex(codomain_))
        throw Error(ErrorKind::UnsupportedSpacePair, "complex spaces must be paired with complex spaces");
    if (imag_) {
        if (!is_complex(domain_))
            throw Error(ErrorKind::ValidationError, "imaginary entries need complex Euclidean spaces");
        if (imag_->rows() != m || imag_->cols() != n)
            throw Error(ErrorKind::ShapeMismatch, "imaginary part shape differs from real part");
    }
}

std::string to_string(CaseLabel label) {
    switch (label) {
        case CaseLabel::Ia: return "I(a)";
        case CaseLabel::Ib: return "I(b)";
        case CaseLabel::II: return "II";
        case CaseLabel::III: return "III";
        case CaseLabel::IV: return "IV";
        case CaseLabel::reduced: return "reduced";
    }
    return "unknown";
}

bool is_linf(const Space& space, std::size_t dim) {
    const auto* p = std::get_if<PolyhedralSpace>(&space);
    return p && p->dim() == dim && *p == PolyhedralSpace::linf(dim);
}

Scalar operator_norm(const Operator& t) {
    if (!is_polyhedral(t.domain())) {
        if (is_polyhedral(t.codomain()))
            throw Error(ErrorKind::UnsupportedSpacePair, "Euclidean domain with polyhedral codomain");
        require_nonzero(t);
        return Scalar(spectral_norm(t));
    }
    auto att = attainment(t);
    return measure_to_norm(t, att.measure);
}

NormAttainment norm_attainment_ext(const Operator& t) {
    auto att = attainment(t);
    return {measure_to_norm(t, att.measure), std::move(att.vertices)};
}

std::vector<ExtJPair> ext_J_operator(const Operator& t) { return pairs_from(t, attainment(t)); }

SmoothnessReport operator_smoothness(const Operator& t) {
    auto att = attainment(t);
    SmoothnessReport report;
    report.norm_value = measure_to_norm(t, att.measure);
    report.attaining_count = att.vertices.size();

    auto pairs = pairs_from(t, att);
    std::vector<Vec> flat;
    flat.reserve(pairs.size());
    for (const auto& p : pairs) flat.push_back(outer_flat(p.direction, p.x));

    report.order = rank_bareiss(flat);
    SpanBasis basis(dimension(t.domain()) * dimension(t.codomain()));
    for (std::size_t k = 0; k < pairs.size(); ++k)
        if (basis.insert(flat[k])) report.witness_pairs.push_back(pairs[k]);
    if (basis.rank() != report.order)
        throw Error(ErrorKind::Internal, "Bareiss rank " + std::to_string(report.order) +
                                             " disagrees with incremental rank " + std::to_string(basis.rank()));

    // Modular cross-check: a prime can only lower the rank, and only by
    // dividing every maximal minor.
    std::mt19937_64 rng(0x6b736d6f6f7468ull);
    bool confirmed = false;
    for (int attempt = 0; attempt < 3 && !confirmed; ++attempt) {
        std::size_t r = rank_mod_prime(flat, random_prime(rng));
        if (r > report.order) throw Error(ErrorKind::Internal, "modular rank exceeds exact rank");
        confirmed = r == report.order;
    }
    if (!confirmed) throw Error(ErrorKind::Internal, "modular rank cross-check failed for three primes");

    if (is_linf(t.domain(), 3) && real_two_dimensional(t.codomain())) fill_linf3_case(t, att, report);
    return report;
}

Operator adjoint(const Operator& t) {
    const auto* dom = std::get_if<PolyhedralSpace>(&t.domain());
    const auto* cod = std::get_if<PolyhedralSpace>(&t.codomain());
    if (dom && cod) return Operator(t.matrix().transpose(), dual_space(*cod), dual_space(*dom));
    if (!dom && !cod) {
        std::optional<Matrix> imag;
        if (t.imag()) imag = t.imag()->transpose().scaled(Rational(-1));
        return Operator(t.matrix().transpose(), t.codomain(), t.domain(), std::move(imag));
    }
    throw Error(ErrorKind::UnsupportedSpacePair, "adjoint needs both spaces polyhedral or both Euclidean");
}

bool bj_orthogonal(const Operator& t, const Operator& a) {
    const auto* dom = std::get_if<PolyhedralSpace>(&t.domain());
    const auto* cod = std::get_if<PolyhedralSpace>(&t.codomain());
    if (!dom || !cod) throw Error(ErrorKind::UnsupportedSpacePair, "exact orthogonality test needs polyhedral spaces");
    if (!(t.domain() == a.domain()) || !(t.codomain() == a.codomain()))
        throw Error(ErrorKind::ShapeMismatch, "operators act between different spaces");

    // ‖T+λA‖ = max over (v, f) of f(Tv) + λ f(Av); only pairs active at 0 matter.
    Rational best = 0;
    Rational slope_min = 0, slope_max = 0;
    bool any = false;
    for (const auto& v : dom->vertices()) {
        Vec tv = t.apply(v);
        Vec av = a.apply(v);
        for (const auto& f : cod->facets()) {
            Rational value = dot(f, tv);
            Rational slope = dot(f, av);
            if (!any || value > best) {
                best = value;
                slope_min = slope_max = slope;
                any = true;
            } else if (value == best) {
                slope_min = std::min(slope_min, slope);
                slope_max = std::max(slope_max, slope);
            }
        }
    }
    return slope_min <= 0 && 0 <= slope_max;
}

Operator normalized(const Operator& t) {
    Scalar n = operator_norm(t);
    const Rational inv = Rational(1) / n.exact();
    std::optional<Matrix> imag;
    if (t.imag()) imag = t.imag()->scaled(inv);
    return Operator(t.matrix().scaled(inv), t.domain(), t.codomain(), std::move(imag));
}

SmoothnessReport classify_linf3_case(const Operator& t) {
    if (!is_linf(t.domain(), 3) || !real_two_dimensional(t.codomain()))
        throw Error(ErrorKind::WrongSpaces, "case analysis needs ℓ∞³ into a real 2-dimensional space, got " +
                                                describe(t.domain()) + " -> " + describe(t.codomain()));
    Scalar n = operator_norm(t);
    if (!(n == Scalar(Rational(1))))
        throw Error(ErrorKind::NotNormalized, "case analysis needs ‖T‖ = 1, got " + n.str());
    return operator_smoothness(t);
}

}  // namespace ksmooth
