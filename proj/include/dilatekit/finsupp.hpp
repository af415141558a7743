#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>

#include "dilatekit/matrix.hpp"

namespace dilatekit {

/// Index sets of the sequence spaces: one-sided Z+, bilateral Z, and the
/// grid Z+ x Z+.
enum class IndexDomain { UniNat, BiInt, Grid };

std::string to_string(IndexDomain d);

/// A position in an index domain. One-dimensional domains keep `m == 0`.
/// Ordering is lexicographic, so grid supports are stored row by row.
struct Index {
    std::int64_t n = 0;
    std::int64_t m = 0;

    friend auto operator<=>(const Index&, const Index&) = default;
};

bool in_domain(IndexDomain d, Index i);
std::string to_string(IndexDomain d, Index i);

struct Space {
    IndexDomain domain;
    std::size_t dim;

    friend bool operator==(const Space&, const Space&) = default;
};

/// A finitely supported family of columns in Q^dim indexed by a domain.
/// Zero columns are never stored.
class FsVec {
public:
    using Support = std::map<Index, Vec>;

    FsVec(IndexDomain domain, std::size_t dim) : domain_(domain), dim_(dim) {}
    explicit FsVec(Space s) : FsVec(s.domain, s.dim) {}

    /// e_i (x) v.
    static FsVec unit(IndexDomain domain, Index i, const Vec& v);

    IndexDomain domain() const { return domain_; }
    std::size_t dim() const { return dim_; }
    Space space() const { return {domain_, dim_}; }
    const Support& support() const { return support_; }
    bool is_zero() const { return support_.empty(); }

    /// Coordinate at i, zero if not in the support.
    Vec at(Index i) const;
    /// Adds v into coordinate i, removing the entry if it cancels.
    void add_at(Index i, const Vec& v);
    /// True iff every stored index is `i`.
    bool supported_only_at(Index i) const;

private:
    void check_index(Index i) const;

    IndexDomain domain_;
    std::size_t dim_;
    Support support_;
};

FsVec fs_add(const FsVec& a, const FsVec& b);
FsVec fs_scale(const Rat& c, const FsVec& a);
FsVec fs_sub(const FsVec& a, const FsVec& b);
/// Throws DomainMismatch when the spaces differ.
bool fs_eq(const FsVec& a, const FsVec& b);

inline FsVec operator+(const FsVec& a, const FsVec& b) { return fs_add(a, b); }
inline FsVec operator-(const FsVec& a, const FsVec& b) { return fs_sub(a, b); }
inline FsVec operator*(const Rat& c, const FsVec& a) { return fs_scale(c, a); }
inline bool operator==(const FsVec& a, const FsVec& b) { return fs_eq(a, b); }

/// Grid helpers: (n, m) -> (n, m + 1) and (n, m) -> (n + 1, m).
FsVec prepend_zero_column(const FsVec& grid);
FsVec prepend_zero_row(const FsVec& grid);

}  // namespace dilatekit
