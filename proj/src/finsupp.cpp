#include "dilatekit/finsupp.hpp"

#include "dilatekit/errors.hpp"

namespace dilatekit {

namespace {

void require_same_space(const FsVec& a, const FsVec& b) {
    if (a.domain() != b.domain() || a.dim() != b.dim())
        throw DomainMismatch("sequence spaces differ: " + to_string(a.domain()) + "/" +
                             std::to_string(a.dim()) + " vs " + to_string(b.domain()) + "/" +
                             std::to_string(b.dim()));
}

FsVec reindex(const FsVec& grid, Index delta) {
    if (grid.domain() != IndexDomain::Grid) throw DomainMismatch("grid operation on " + to_string(grid.domain()));
    FsVec out(grid.space());
    for (const auto& [i, v] : grid.support()) out.add_at({i.n + delta.n, i.m + delta.m}, v);
    return out;
}

}  // namespace

std::string to_string(IndexDomain d) {
    switch (d) {
        case IndexDomain::UniNat: return "uninat";
        case IndexDomain::BiInt: return "biint";
        case IndexDomain::Grid: return "grid";
    }
    return "?";
}

bool in_domain(IndexDomain d, Index i) {
    switch (d) {
        case IndexDomain::UniNat: return i.n >= 0 && i.m == 0;
        case IndexDomain::BiInt: return i.m == 0;
        case IndexDomain::Grid: return i.n >= 0 && i.m >= 0;
    }
    return false;
}

std::string to_string(IndexDomain d, Index i) {
    if (d == IndexDomain::Grid) return "(" + std::to_string(i.n) + "," + std::to_string(i.m) + ")";
    return std::to_string(i.n);
}

FsVec FsVec::unit(IndexDomain domain, Index i, const Vec& v) {
    FsVec x(domain, v.size());
    x.add_at(i, v);
    return x;
}

void FsVec::check_index(Index i) const {
    if (!in_domain(domain_, i))
        throw DomainMismatch("index " + to_string(domain_, i) + " outside domain " + to_string(domain_));
}

Vec FsVec::at(Index i) const {
    check_index(i);
    auto it = support_.find(i);
    return it == support_.end() ? zero_vec(dim_) : it->second;
}

void FsVec::add_at(Index i, const Vec& v) {
    check_index(i);
    if (v.size() != dim_)
        throw DimensionMismatch("column of length " + std::to_string(v.size()) + " in space of dim " +
                                std::to_string(dim_));
    if (dilatekit::is_zero(v)) return;
    auto [it, inserted] = support_.try_emplace(i, v);
    if (inserted) return;
    it->second = it->second + v;
    if (dilatekit::is_zero(it->second)) support_.erase(it);
}

bool FsVec::supported_only_at(Index i) const {
    return support_.empty() || (support_.size() == 1 && support_.begin()->first == i);
}

FsVec fs_add(const FsVec& a, const FsVec& b) {
    require_same_space(a, b);
    FsVec out(a);
    for (const auto& [i, v] : b.support()) out.add_at(i, v);
    return out;
}

FsVec fs_scale(const Rat& c, const FsVec& a) {
    FsVec out(a.space());
    if (c.is_zero()) return out;
    for (const auto& [i, v] : a.support()) out.add_at(i, c * v);
    return out;
}

FsVec fs_sub(const FsVec& a, const FsVec& b) { return fs_add(a, fs_scale(Rat(-1), b)); }

bool fs_eq(const FsVec& a, const FsVec& b) {
    require_same_space(a, b);
    return a.support() == b.support();
}

FsVec prepend_zero_column(const FsVec& grid) { return reindex(grid, {0, 1}); }
FsVec prepend_zero_row(const FsVec& grid) { return reindex(grid, {1, 0}); }

}  // namespace dilatekit
