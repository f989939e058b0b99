#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "ksmooth/rational.hpp"

namespace ksmooth {

// Dense row-major rational matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}
    static Matrix from_rows(const std::vector<Vec>& rows);
    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Rational> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    Vec column(std::size_t j) const;
    std::vector<Vec> row_list() const;

    Vec apply(std::span<const Rational> x) const;
    Matrix transpose() const;
    Matrix scaled(const Rational& s) const;
    bool is_zero() const;

    // Row-major flattening; the trace pairing makes this the coordinate
    // vector of a functional on matrices.
    const std::vector<Rational>& flat() const { return data_; }

    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

// Flattened outer product: entry (i, j) = left[i] * right[j].
Vec outer_flat(std::span<const Rational> left, std::span<const Rational> right);

// Fraction-free (Bareiss) elimination after clearing row denominators.
std::size_t rank_bareiss(const std::vector<Vec>& rows);

// Plain Gaussian elimination over the rationals.
std::size_t rank_gauss(const std::vector<Vec>& rows);

// Rank of the row-wise denominator-cleared integer matrix modulo `prime`.
// Never exceeds the rational rank.
std::size_t rank_mod_prime(const std::vector<Vec>& rows, std::uint64_t prime);

bool is_probable_prime(std::uint64_t n);
std::uint64_t random_prime(std::mt19937_64& rng);

// Unique solution of A x = b, or nullopt when A is singular.
std::optional<Vec> solve(const Matrix& a, std::span<const Rational> b);

// Incrementally maintained row-echelon basis of a span.
class SpanBasis {
public:
    explicit SpanBasis(std::size_t ambient) : ambient_(ambient) {}

    // Returns true when v is independent of what was inserted before.
    bool insert(std::span<const Rational> v);
    bool contains(std::span<const Rational> v) const;
    std::size_t rank() const { return basis_.size(); }

private:
    Vec reduce(std::span<const Rational> v) const;

    std::size_t ambient_;
    std::vector<Vec> basis_;
    std::vector<std::size_t> pivots_;
};

}  // namespace ksmooth
