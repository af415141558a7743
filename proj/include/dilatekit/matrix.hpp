#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "dilatekit/rational.hpp"

namespace dilatekit {

/// A column vector in Q^d.
using Vec = std::vector<Rat>;

Vec zero_vec(std::size_t dim);
Vec unit_vec(std::size_t dim, std::size_t i);
bool is_zero(const Vec& v);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const Rat& c, const Vec& v);

/// Dense row-major matrix over Q.
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols);
    Mat(std::initializer_list<std::initializer_list<Rat>> rows);

    static Mat identity(std::size_t n);
    static Mat zero(std::size_t rows, std::size_t cols) { return Mat(rows, cols); }
    static Mat from_columns(const std::vector<Vec>& columns, std::size_t rows);
    /// Assembles a block matrix. Blocks in a block-row share a height and
    /// blocks in a block-column share a width.
    static Mat from_blocks(const std::vector<std::vector<Mat>>& blocks);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vec column(std::size_t j) const;
    std::vector<Vec> columns() const;
    Mat block(std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols) const;
    Mat transpose() const;
    bool is_zero() const;

    friend bool operator==(const Mat&, const Mat&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rat> data_;
};

Mat operator+(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Mat operator-(const Mat& a);
Mat operator*(const Rat& c, const Mat& a);

/// Throws DimensionMismatch when a.cols() != b.rows().
Mat mat_mul(const Mat& a, const Mat& b);
inline Mat operator*(const Mat& a, const Mat& b) { return mat_mul(a, b); }
Vec mat_vec(const Mat& a, const Vec& v);
inline Vec operator*(const Mat& a, const Vec& v) { return mat_vec(a, v); }
Mat mat_pow(const Mat& a, std::size_t n);

/// Gauss-Jordan inverse. Throws SingularMatrix when rank < rows.
Mat mat_inverse(const Mat& a);
std::optional<Mat> try_inverse(const Mat& a);

Rat trace(const Mat& a);

struct Rref {
    Mat reduced;
    std::vector<std::size_t> pivot_columns;
};

/// Pivot on the leftmost nonzero column, using the first row at or below
/// the current one with a nonzero entry; each pivot is scaled to 1.
Rref rref(const Mat& a);
std::size_t rank(const Mat& a);

struct ImageKernel {
    std::vector<Vec> image;
    std::vector<Vec> kernel;
};

/// Image basis is the reduced echelon basis of the column space (nonzero
/// rows of rref(a^T)); kernel basis has one vector per free column of
/// rref(a), with a 1 in that coordinate.
ImageKernel rref_image_kernel(const Mat& a);

/// Reduced echelon basis of span(vectors) in Q^dim. Equal spans give equal
/// bases.
std::vector<Vec> canonical_basis(const std::vector<Vec>& vectors, std::size_t dim);
std::size_t span_rank(const std::vector<Vec>& vectors, std::size_t dim);
bool span_contains(const std::vector<Vec>& basis, const Vec& v, std::size_t dim);

}  // namespace dilatekit
