// Test-only oracles and generators. Nothing here calls into the library's
// linear algebra or operator code, so agreement is meaningful.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "dilatekit/finsupp.hpp"
#include "dilatekit/matrix.hpp"
#include "dilatekit/rational.hpp"

namespace oracle {

using Q = mpq_class;
using QVec = std::vector<Q>;
using QMat = std::vector<QVec>;

inline Q q(const dilatekit::Rat& r) {
    Q v(r.numerator(), r.denominator());
    v.canonicalize();
    return v;
}

inline dilatekit::Rat rat(const Q& v) { return dilatekit::Rat(v.get_num(), v.get_den()); }

inline QMat to_q(const dilatekit::Mat& m) {
    QMat out(m.rows(), QVec(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = q(m(i, j));
    return out;
}

inline dilatekit::Mat from_q(const QMat& m, std::size_t cols) {
    dilatekit::Mat out(m.size(), cols);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) out(i, j) = rat(m[i][j]);
    return out;
}

inline QVec to_q(const dilatekit::Vec& v) {
    QVec out;
    for (const auto& x : v) out.push_back(q(x));
    return out;
}

inline QMat identity(std::size_t n) {
    QMat m(n, QVec(n));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline QMat mul(const QMat& a, const QMat& b, std::size_t inner, std::size_t cols) {
    QMat out(a.size(), QVec(cols));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k)
            if (sgn(a[i][k]) != 0)
                for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
    return out;
}

inline QVec mul(const QMat& a, const QVec& v) {
    QVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < v.size(); ++k) out[i] += a[i][k] * v[k];
    return out;
}

inline QMat power(const QMat& a, std::size_t n) {
    QMat out = identity(a.size());
    for (std::size_t k = 0; k < n; ++k) out = mul(out, a, a.size(), a.size());
    return out;
}

/// Gauss-Jordan with largest-magnitude pivoting.
inline std::optional<dilatekit::Mat> inverse(const dilatekit::Mat& m) {
    const std::size_t n = m.rows();
    QMat a = to_q(m), inv = identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t best = n;
        for (std::size_t r = c; r < n; ++r)
            if (sgn(a[r][c]) != 0 && (best == n || abs(a[r][c]) > abs(a[best][c]))) best = r;
        if (best == n) return std::nullopt;
        std::swap(a[c], a[best]);
        std::swap(inv[c], inv[best]);
        const Q p = a[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            a[c][j] /= p;
            inv[c][j] /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || sgn(a[r][c]) == 0) continue;
            const Q f = a[r][c];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[c][j];
                inv[r][j] -= f * inv[c][j];
            }
        }
    }
    return from_q(inv, n);
}

/// Row-echelon rank by forward elimination, pivoting on the last nonzero row.
inline std::size_t rank(QMat a, std::size_t cols) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
        std::size_t piv = a.size();
        for (std::size_t i = r; i < a.size(); ++i)
            if (sgn(a[i][c]) != 0) piv = i;
        if (piv == a.size()) continue;
        std::swap(a[r], a[piv]);
        for (std::size_t i = r + 1; i < a.size(); ++i) {
            if (sgn(a[i][c]) == 0) continue;
            const Q f = a[i][c] / a[r][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

inline std::size_t rank(const dilatekit::Mat& m) { return rank(to_q(m), m.cols()); }

/// Finite window of a sequence space with a dense block operator on it.
/// Blocks are given by a rule (row index, column index) -> optional block.
struct Window {
    std::vector<dilatekit::Index> indices;
    std::size_t dim;

    std::size_t position(dilatekit::Index i) const {
        for (std::size_t k = 0; k < indices.size(); ++k)
            if (indices[k] == i) return k;
        return indices.size();
    }

    static Window line(std::int64_t lo, std::int64_t hi, std::size_t dim) {
        Window w{{}, dim};
        for (std::int64_t n = lo; n <= hi; ++n) w.indices.push_back({n, 0});
        return w;
    }
    static Window grid(std::int64_t n_hi, std::int64_t m_hi, std::size_t dim) {
        Window w{{}, dim};
        for (std::int64_t n = 0; n <= n_hi; ++n)
            for (std::int64_t m = 0; m <= m_hi; ++m) w.indices.push_back({n, m});
        return w;
    }

    /// Throws if x has support outside the window.
    QVec flatten(const dilatekit::FsVec& x) const {
        QVec out(indices.size() * dim);
        for (const auto& [i, v] : x.support()) {
            const std::size_t k = position(i);
            if (k == indices.size()) throw std::out_of_range("probe support outside window");
            for (std::size_t c = 0; c < dim; ++c) out[k * dim + c] = q(v[c]);
        }
        return out;
    }

    dilatekit::FsVec unflatten(const QVec& v, dilatekit::IndexDomain domain) const {
        dilatekit::FsVec x(domain, dim);
        for (std::size_t k = 0; k < indices.size(); ++k) {
            dilatekit::Vec col(dim);
            for (std::size_t c = 0; c < dim; ++c) col[c] = rat(v[k * dim + c]);
            x.add_at(indices[k], col);
        }
        return x;
    }
};

using BlockRule = std::function<std::optional<QMat>(dilatekit::Index row, dilatekit::Index col)>;

inline QMat dense(const Window& w, const BlockRule& rule) {
    const std::size_t n = w.indices.size() * w.dim;
    QMat m(n, QVec(n));
    for (std::size_t r = 0; r < w.indices.size(); ++r)
        for (std::size_t c = 0; c < w.indices.size(); ++c)
            if (auto b = rule(w.indices[r], w.indices[c]))
                for (std::size_t i = 0; i < w.dim; ++i)
                    for (std::size_t j = 0; j < w.dim; ++j) m[r * w.dim + i][c * w.dim + j] += (*b)[i][j];
    return m;
}

}  // namespace oracle

/// SplitMix64; independent of the library's generator.
class TestRng {
public:
    explicit TestRng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    dilatekit::Rat rat(std::int64_t bound = 9) {
        return dilatekit::Rat(mpz_class(static_cast<long>(range(-bound, bound))),
                              mpz_class(static_cast<long>(range(1, bound))));
    }
    dilatekit::Vec vec(std::size_t d, std::int64_t bound = 9) {
        dilatekit::Vec v(d);
        for (auto& x : v) x = rat(bound);
        return v;
    }
    dilatekit::Mat mat(std::size_t r, std::size_t c, std::int64_t bound = 9) {
        dilatekit::Mat m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = rat(bound);
        return m;
    }
    /// Support drawn from [lo, hi] (rows) and [0, m_hi] (columns, grid only).
    dilatekit::FsVec fsvec(dilatekit::IndexDomain domain, std::size_t d, std::int64_t lo, std::int64_t hi,
                           std::int64_t m_hi = 0, std::size_t max_support = 5) {
        dilatekit::FsVec x(domain, d);
        const auto count = range(1, static_cast<std::int64_t>(max_support));
        for (std::int64_t k = 0; k < count; ++k) {
            const dilatekit::Index i{range(lo, hi), domain == dilatekit::IndexDomain::Grid ? range(0, m_hi) : 0};
            x.add_at(i, vec(d));
        }
        return x;
    }

private:
    std::uint64_t state_;
};
