#include "dilatekit/matrix.hpp"

#include <string>

#include "dilatekit/errors.hpp"

namespace dilatekit {

namespace {

std::string shape(const Mat& a) { return std::to_string(a.rows()) + "x" + std::to_string(a.cols()); }

void require_same_shape(const Mat& a, const Mat& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch(std::string(op) + ": " + shape(a) + " vs " + shape(b));
}

void require_same_length(const Vec& a, const Vec& b) {
    if (a.size() != b.size())
        throw DimensionMismatch("vector lengths " + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
}

}  // namespace

Vec zero_vec(std::size_t dim) { return Vec(dim); }

Vec unit_vec(std::size_t dim, std::size_t i) {
    Vec v(dim);
    v.at(i) = 1;
    return v;
}

bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

Vec operator+(const Vec& a, const Vec& b) {
    require_same_length(a, b);
    Vec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Vec operator-(const Vec& a, const Vec& b) {
    require_same_length(a, b);
    Vec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Vec operator*(const Rat& c, const Vec& v) {
    Vec r(v);
    for (auto& x : r) x *= c;
    return r;
}

Mat::Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Mat::Mat(std::initializer_list<std::initializer_list<Rat>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) throw DimensionMismatch("ragged matrix literal");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Mat Mat::from_columns(const std::vector<Vec>& columns, std::size_t rows) {
    Mat m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != rows) throw DimensionMismatch("column length mismatch");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
}

Mat Mat::from_blocks(const std::vector<std::vector<Mat>>& blocks) {
    if (blocks.empty()) return {};
    const std::size_t block_cols = blocks.front().size();
    std::vector<std::size_t> heights, widths;
    for (const auto& row : blocks) {
        if (row.size() != block_cols) throw DimensionMismatch("ragged block matrix");
        heights.push_back(row.front().rows());
    }
    for (const auto& b : blocks.front()) widths.push_back(b.cols());

    std::size_t total_rows = 0, total_cols = 0;
    for (auto h : heights) total_rows += h;
    for (auto w : widths) total_cols += w;

    Mat m(total_rows, total_cols);
    std::size_t r0 = 0;
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        std::size_t c0 = 0;
        for (std::size_t bj = 0; bj < block_cols; ++bj) {
            const Mat& b = blocks[bi][bj];
            if (b.rows() != heights[bi] || b.cols() != widths[bj])
                throw DimensionMismatch("block (" + std::to_string(bi) + "," + std::to_string(bj) +
                                        ") has shape " + shape(b));
            for (std::size_t i = 0; i < b.rows(); ++i)
                for (std::size_t j = 0; j < b.cols(); ++j) m(r0 + i, c0 + j) = b(i, j);
            c0 += widths[bj];
        }
        r0 += heights[bi];
    }
    return m;
}

Vec Mat::column(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

std::vector<Vec> Mat::columns() const {
    std::vector<Vec> out;
    out.reserve(cols_);
    for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
    return out;
}

Mat Mat::block(std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols) const {
    if (row0 + rows > rows_ || col0 + cols > cols_) throw DimensionMismatch("block out of range");
    Mat b(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) b(i, j) = (*this)(row0 + i, col0 + j);
    return b;
}

Mat Mat::transpose() const {
    Mat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool Mat::is_zero() const {
    for (const auto& x : data_)
        if (!x.is_zero()) return false;
    return true;
}

Mat operator+(const Mat& a, const Mat& b) {
    require_same_shape(a, b, "add");
    Mat r(a);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) += b(i, j);
    return r;
}

Mat operator-(const Mat& a, const Mat& b) {
    require_same_shape(a, b, "sub");
    Mat r(a);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) -= b(i, j);
    return r;
}

Mat operator-(const Mat& a) { return Rat(-1) * a; }

Mat operator*(const Rat& c, const Mat& a) {
    Mat r(a);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) *= c;
    return r;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows())
        throw DimensionMismatch("mat_mul: " + shape(a) + " times " + shape(b));
    Mat r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Rat& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

Vec mat_vec(const Mat& a, const Vec& v) {
    if (a.cols() != v.size())
        throw DimensionMismatch("mat_vec: " + shape(a) + " times vector of length " +
                                std::to_string(v.size()));
    Vec r(a.rows());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        if (v[j].is_zero()) continue;
        for (std::size_t i = 0; i < a.rows(); ++i) r[i] += a(i, j) * v[j];
    }
    return r;
}

Mat mat_pow(const Mat& a, std::size_t n) {
    if (!a.is_square()) throw DimensionMismatch("mat_pow of non-square " + shape(a));
    Mat result = Mat::identity(a.rows());
    Mat base = a;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return result;
}

std::optional<Mat> try_inverse(const Mat& a) {
    if (!a.is_square()) throw DimensionMismatch("inverse of non-square " + shape(a));
    const std::size_t n = a.rows();
    Mat work = Mat::from_blocks({{a, Mat::identity(n)}});
    if (n == 0) return Mat();
    Rref r = rref(work);
    for (std::size_t i = 0; i < n; ++i)
        if (i >= r.pivot_columns.size() || r.pivot_columns[i] != i) return std::nullopt;
    return r.reduced.block(0, n, n, n);
}

Mat mat_inverse(const Mat& a) {
    auto inv = try_inverse(a);
    if (!inv) throw SingularMatrix("matrix of shape " + shape(a) + " is singular");
    return *inv;
}

Rat trace(const Mat& a) {
    if (!a.is_square()) throw DimensionMismatch("trace of non-square " + shape(a));
    Rat t;
    for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

Rref rref(const Mat& a) {
    Rref out{a, {}};
    Mat& m = out.reduced;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.rows() && m(pivot, col).is_zero()) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(pivot, j));
        const Rat scale = m(row, col).inverse();
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= scale;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col).is_zero()) continue;
            const Rat factor = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= factor * m(row, j);
        }
        out.pivot_columns.push_back(col);
        ++row;
    }
    return out;
}

std::size_t rank(const Mat& a) { return rref(a).pivot_columns.size(); }

ImageKernel rref_image_kernel(const Mat& a) {
    ImageKernel out;
    out.image = canonical_basis(a.columns(), a.rows());

    const Rref r = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : r.pivot_columns) is_pivot[c] = true;
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec k(a.cols());
        k[free] = 1;
        for (std::size_t i = 0; i < r.pivot_columns.size(); ++i) k[r.pivot_columns[i]] = -r.reduced(i, free);
        out.kernel.push_back(std::move(k));
    }
    return out;
}

std::vector<Vec> canonical_basis(const std::vector<Vec>& vectors, std::size_t dim) {
    if (vectors.empty()) return {};
    const Rref r = rref(Mat::from_columns(vectors, dim).transpose());
    std::vector<Vec> basis;
    for (std::size_t i = 0; i < r.pivot_columns.size(); ++i) {
        Vec v(dim);
        for (std::size_t j = 0; j < dim; ++j) v[j] = r.reduced(i, j);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t span_rank(const std::vector<Vec>& vectors, std::size_t dim) {
    if (vectors.empty()) return 0;
    return rank(Mat::from_columns(vectors, dim));
}

bool span_contains(const std::vector<Vec>& basis, const Vec& v, std::size_t dim) {
    std::vector<Vec> extended(basis);
    extended.push_back(v);
    return span_rank(extended, dim) == span_rank(basis, dim);
}

}  // namespace dilatekit
