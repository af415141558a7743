#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dilatekit/finsupp.hpp"
#include "dilatekit/matrix.hpp"
#include "dilatekit/report.hpp"

namespace dilatekit {

struct SeqOpNode;

/// Immutable structured linear operator between sequence spaces. Operators
/// on infinite-dimensional spaces are kept as terms and applied to finitely
/// supported inputs; nothing is materialized as an infinite matrix.
///
/// Every operator maps FsVec to FsVec except `embed`, which maps a plain
/// column of Q^d into a sequence space.
class SeqOp {
public:
    using BlockMap = std::map<std::pair<std::int64_t, std::int64_t>, Mat>;

    /// x -> e_0 (x) x, with e_0 = (0,0) on the grid.
    static SeqOp embed(IndexDomain domain, std::size_t dim);
    /// Keeps coordinate 0 (or (0,0)) and drops the rest.
    static SeqOp coord_proj0(IndexDomain domain, std::size_t dim);
    static SeqOp identity(Space space);
    /// (x_0, x_1, ...) -> (0, x_0, x_1, ...) on Z+.
    static SeqOp shift_right(std::size_t dim);
    /// e_n (x) v -> e_{n+offset} (x) v on Z.
    static SeqOp shift_bilat(std::size_t dim, std::int64_t offset = 1);
    /// Bilateral operator with blocks u_{0,0} = T and u_{n,n+1} = I:
    /// (Ux)_n = x_{n+1} + [n = 0] T x_0.
    static SeqOp schaffer_u(Mat T);
    /// Two-sided inverse of schaffer_u(T): v_{n,n-1} = I, v_{1,-1} = -T,
    /// so (Vx)_n = x_{n-1} - [n = 1] T x_{-1}.
    static SeqOp schaffer_v_inv(Mat T);
    /// (n, m) -> (n + 1, m) on the grid.
    static SeqOp grid_down(std::size_t dim);
    /// (n, m) -> (n, m + 1) on the grid.
    static SeqOp grid_right(std::size_t dim);
    /// (x_n) -> e_0 (x) sum_n T^n x_n on Z+.
    static SeqOp proj_std(Mat T);
    /// (x_{n,m}) -> e_{(0,0)} (x) sum T^n S^m x_{n,m} on the grid.
    static SeqOp proj_ando(Mat T, Mat S);
    /// Dense block matrix M acting on sequences supported in [0, K) of Z+,
    /// K = M.rows() / dim.
    static SeqOp block_dense(Mat M, std::size_t dim);
    /// (x_n) -> (S x_n).
    static SeqOp componentwise(Mat S, IndexDomain domain = IndexDomain::UniNat);
    /// (Rx)_row = sum_col blocks[(row, col)] x_col, finitely many blocks.
    static SeqOp column_blocks(IndexDomain domain, std::size_t in_dim, std::size_t out_dim, BlockMap blocks);
    /// compose({A, B, C}) = A o B o C.
    static SeqOp compose(std::vector<SeqOp> factors);
    static SeqOp power(SeqOp base, std::size_t n);

    const SeqOpNode& node() const { return *node_; }
    std::string kind() const;
    /// Input space; nullopt when the operator consumes a plain column.
    std::optional<Space> source() const;
    std::size_t source_dim() const;
    Space target() const;

private:
    explicit SeqOp(std::shared_ptr<const SeqOpNode> node) : node_(std::move(node)) {}
    std::shared_ptr<const SeqOpNode> node_;
};

namespace opterm {
struct Embed { IndexDomain domain; std::size_t dim; };
struct CoordProj0 { IndexDomain domain; std::size_t dim; };
struct Identity { Space space; };
struct ShiftRight { std::size_t dim; };
struct ShiftBilat { std::size_t dim; std::int64_t offset; };
struct SchafferU { Mat T; };
struct SchafferVInv { Mat T; };
struct GridDown { std::size_t dim; };
struct GridRight { std::size_t dim; };
struct ProjStd { Mat T; };
struct ProjAndo { Mat T; Mat S; };
struct BlockDense { Mat M; std::size_t dim; };
struct Componentwise { Mat S; IndexDomain domain; };
struct ColumnBlocks { IndexDomain domain; std::size_t in_dim; std::size_t out_dim; SeqOp::BlockMap blocks; };
struct Compose { std::vector<SeqOp> factors; };
struct Power { SeqOp base; std::size_t n; };
}  // namespace opterm

struct SeqOpNode {
    std::variant<opterm::Embed, opterm::CoordProj0, opterm::Identity, opterm::ShiftRight, opterm::ShiftBilat,
                 opterm::SchafferU, opterm::SchafferVInv, opterm::GridDown, opterm::GridRight, opterm::ProjStd,
                 opterm::ProjAndo, opterm::BlockDense, opterm::Componentwise, opterm::ColumnBlocks,
                 opterm::Compose, opterm::Power>
        term;
};

/// Throws DomainMismatch when x does not live in op.source().
FsVec apply(const SeqOp& op, const FsVec& x);
/// For operators whose rightmost factor is an embedding.
FsVec apply(const SeqOp& op, const Vec& x);
FsVec op_power_apply(const SeqOp& op, std::size_t n, const FsVec& x);

/// Checks a(b(x)) = x and b(a(x)) = x on every probe.
Report check_inverse_pair(const SeqOp& a, const SeqOp& b, const std::vector<FsVec>& probes);

/// (W, I, U, P) with an optional second forward operator V.
struct DilationQuadruple {
    Space space;
    std::size_t base_dim;
    SeqOp embed;
    SeqOp forward;
    SeqOp proj;
    std::optional<SeqOp> second;

    /// Throws DomainMismatch when the operators do not fit together.
    void validate() const;
};

}  // namespace dilatekit
