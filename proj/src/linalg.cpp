#include "ksmooth/linalg.hpp"

#include <algorithm>

#include "ksmooth/error.hpp"

namespace ksmooth {

Matrix Matrix::from_rows(const std::vector<Vec>& rows) {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols_) throw Error(ErrorKind::ShapeMismatch, "ragged matrix rows");
        std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * m.cols_));
    }
    return m;
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Vec Matrix::column(std::size_t j) const {
    Vec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

std::vector<Vec> Matrix::row_list() const {
    std::vector<Vec> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.emplace_back(row(i).begin(), row(i).end());
    return out;
}

Vec Matrix::apply(std::span<const Rational> x) const {
    if (x.size() != cols_)
        throw Error(ErrorKind::DimensionMismatch,
                    "matrix with " + std::to_string(cols_) + " columns applied to vector of length " +
                        std::to_string(x.size()));
    Vec y(rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::scaled(const Rational& s) const {
    Matrix m = *this;
    for (auto& x : m.data_) x *= s;
    return m;
}

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return x == 0; });
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::ShapeMismatch, "matrix sum shapes differ");
    Matrix m = a;
    for (std::size_t k = 0; k < m.data_.size(); ++k) m.data_[k] += b.data_[k];
    return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::ShapeMismatch, "matrix difference shapes differ");
    Matrix m = a;
    for (std::size_t k = 0; k < m.data_.size(); ++k) m.data_[k] -= b.data_[k];
    return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::ShapeMismatch, "matrix product shapes differ");
    Matrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += a(i, k) * b(k, j);
        }
    return m;
}

Vec outer_flat(std::span<const Rational> left, std::span<const Rational> right) {
    Vec out;
    out.reserve(left.size() * right.size());
    for (const auto& l : left)
        for (const auto& r : right) out.push_back(l * r);
    return out;
}

namespace {

std::vector<std::vector<mpz_class>> integer_rows(const std::vector<Vec>& rows) {
    std::vector<std::vector<mpz_class>> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        mpz_class l = 1;
        for (const auto& q : r) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
        std::vector<mpz_class> ir;
        ir.reserve(r.size());
        for (const auto& q : r) ir.push_back(q.get_num() * (l / q.get_den()));
        out.push_back(std::move(ir));
    }
    return out;
}

}  // namespace

std::size_t rank_bareiss(const std::vector<Vec>& rows) {
    if (rows.empty()) return 0;
    auto m = integer_rows(rows);
    const std::size_t n = m.size();
    const std::size_t cols = m.front().size();
    mpz_class prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < n; ++c) {
        std::size_t p = r;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = r + 1; i < n; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                mpz_class v = m[r][c] * m[i][j] - m[i][c] * m[r][j];
                mpz_divexact(m[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        ++r;
    }
    return r;
}

std::size_t rank_gauss(const std::vector<Vec>& rows) {
    std::vector<Vec> m = rows;
    if (m.empty()) return 0;
    const std::size_t cols = m.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = r + 1; i < m.size(); ++i) {
            if (m[i][c] == 0) continue;
            Rational f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

std::size_t rank_mod_prime(const std::vector<Vec>& rows, std::uint64_t prime) {
    if (rows.empty()) return 0;
    auto ints = integer_rows(rows);
    const std::size_t n = ints.size();
    const std::size_t cols = ints.front().size();
    mpz_class p(std::to_string(prime), 10);
    std::vector<std::vector<std::uint64_t>> m(n, std::vector<std::uint64_t>(cols));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            mpz_class v;
            mpz_mod(v.get_mpz_t(), ints[i][j].get_mpz_t(), p.get_mpz_t());
            m[i][j] = std::stoull(v.get_str());
        }
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < n; ++c) {
        std::size_t piv = r;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) continue;
        std::swap(m[piv], m[r]);
        std::uint64_t inv = powmod(m[r][c], prime - 2, prime);
        for (std::size_t i = r + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            std::uint64_t f = mulmod(m[i][c], inv, prime);
            for (std::size_t j = c; j < cols; ++j) {
                std::uint64_t sub = mulmod(f, m[r][j], prime);
                m[i][j] = m[i][j] >= sub ? m[i][j] - sub : m[i][j] + prime - sub;
            }
        }
        ++r;
    }
    return r;
}

bool is_probable_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These bases are deterministic for all 64-bit inputs.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t random_prime(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> dist(1ull << 60, (1ull << 62) - 1);
    for (;;) {
        std::uint64_t c = dist(rng) | 1ull;
        if (is_probable_prime(c)) return c;
    }
}

std::optional<Vec> solve(const Matrix& a, std::span<const Rational> b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) throw Error(ErrorKind::ShapeMismatch, "solve needs a square system");
    std::vector<Vec> m(n, Vec(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = a(i, j);
        m[i][n] = b[i];
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return std::nullopt;
        std::swap(m[p], m[c]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || m[i][c] == 0) continue;
            Rational f = m[i][c] / m[c][c];
            for (std::size_t j = c; j <= n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    Vec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n] / m[i][i];
    return x;
}

Vec SpanBasis::reduce(std::span<const Rational> v) const {
    if (v.size() != ambient_) throw Error(ErrorKind::DimensionMismatch, "span basis ambient dimension mismatch");
    Vec w(v.begin(), v.end());
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        const std::size_t p = pivots_[k];
        if (w[p] == 0) continue;
        Rational f = w[p];
        for (std::size_t j = p; j < ambient_; ++j) w[j] -= f * basis_[k][j];
    }
    return w;
}

bool SpanBasis::insert(std::span<const Rational> v) {
    Vec w = reduce(v);
    auto it = std::find_if(w.begin(), w.end(), [](const Rational& x) { return x != 0; });
    if (it == w.end()) return false;
    const std::size_t p = static_cast<std::size_t>(it - w.begin());
    Rational lead = w[p];
    for (auto& x : w) x /= lead;
    // Keep the basis fully reduced so that reduce() needs one pass.
    for (auto& b : basis_) {
        if (b[p] == 0) continue;
        Rational f = b[p];
        for (std::size_t j = 0; j < ambient_; ++j) b[j] -= f * w[j];
    }
    basis_.push_back(std::move(w));
    pivots_.push_back(p);
    return true;
}

bool SpanBasis::contains(std::span<const Rational> v) const { return is_zero(reduce(v)); }

}  // namespace ksmooth
