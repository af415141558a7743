#include "dilatekit/seqop.hpp"

#include <type_traits>

#include "dilatekit/errors.hpp"
#include "dilatekit/serialize.hpp"

namespace dilatekit {

namespace {

template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

std::string describe(const std::optional<Space>& s) {
    if (!s) return "V";
    return to_string(s->domain) + "/" + std::to_string(s->dim);
}

void require_square(const Mat& T, const char* who) {
    if (!T.is_square()) throw DimensionMismatch(std::string(who) + ": operator block must be square");
}

constexpr Index kOrigin{0, 0};

FsVec translate(const FsVec& x, Index delta) {
    FsVec out(x.space());
    for (const auto& [i, v] : x.support()) out.add_at({i.n + delta.n, i.m + delta.m}, v);
    return out;
}

Vec power_apply(const Mat& T, std::int64_t n, Vec v) {
    for (std::int64_t k = 0; k < n; ++k) v = T * v;
    return v;
}

FsVec apply_term(const SeqOp& self, const FsVec& x);

}  // namespace

SeqOp SeqOp::embed(IndexDomain domain, std::size_t dim) {
    return SeqOp(std::make_shared<SeqOpNode>(SeqOpNode{opterm::Embed{domain, dim}}));
}

SeqOp SeqOp::coord_proj0(IndexDomain domain, std::size_t dim) {
    return SeqOp(std::make_shared<SeqOpNode>(SeqOpNode{opterm::CoordProj0{domain, dim}}));
}

SeqOp SeqOp::identity(Space space) {
    return SeqOp(std::make_shared<SeqOpNode>(SeqOpNode{opterm::Identity{space}}));
}

SeqOp SeqOp::shift_right(std::size_t dim) {
    return SeqOp(std::make_shared<SeqOpNode>(SeqOpNode{opterm::ShiftRight{dim}}));
}

SeqOp SeqOp::shift_bilat(std::size_t dim, std::int64_t offset) {
    return SeqOp(std::make_shared<SeqOpNode>(SeqOpNode{opterm::ShiftBilat{dim, offset}}));
}

SeqOp SeqOp::schaffer_u(Mat T) {
    require_square(T, "schaffer_u");
    return SeqOp(std::make_shared<SeqOpNode>(SeqOpNode{opterm::SchafferU{std::move(T)}}));
}

SeqOp SeqOp::schaffer_v_inv(Mat T) {
    require_square(T, "schaffer_v_inv");
    return SeqOp(std::make_shared<SeqOpNode>(SeqOpNode{opterm::SchafferVInv{std::move(T)}}));
}

SeqOp SeqOp::grid_down(std::size_t dim) {
    return SeqOp(std::make_shared<SeqOpNode>(SeqOpNode{opterm::GridDown{dim}}));
}

SeqOp SeqOp::grid_right(std::size_t dim) {
    return SeqOp(std::make_shared<SeqOpNode>(SeqOpNode{opterm::GridRight{dim}}));
}

SeqOp SeqOp::proj_std(Mat T) {
    require_square(T, "proj_std");
    return SeqOp(std::make_shared<SeqOpNode>(SeqOpNode{opterm::ProjStd{std::move(T)}}));
}

SeqOp SeqOp::proj_ando(Mat T, Mat S) {
    require_square(T, "proj_ando");
    require_square(S, "proj_ando");
    if (T.rows() != S.rows()) throw DimensionMismatch("proj_ando: T and S differ in size");
    return SeqOp(std::make_shared<SeqOpNode>(SeqOpNode{opterm::ProjAndo{std::move(T), std::move(S)}}));
}

SeqOp SeqOp::block_dense(Mat M, std::size_t dim) {
    if (dim == 0 || !M.is_square() || M.rows() % dim != 0)
        throw DimensionMismatch("block_dense: matrix is not a square grid of " + std::to_string(dim) +
                                "-blocks");
    return SeqOp(std::make_shared<SeqOpNode>(SeqOpNode{opterm::BlockDense{std::move(M), dim}}));
}

SeqOp SeqOp::componentwise(Mat S, IndexDomain domain) {
    return SeqOp(std::make_shared<SeqOpNode>(SeqOpNode{opterm::Componentwise{std::move(S), domain}}));
}

SeqOp SeqOp::column_blocks(IndexDomain domain, std::size_t in_dim, std::size_t out_dim, BlockMap blocks) {
    if (domain == IndexDomain::Grid) throw DomainMismatch("column_blocks: grid domain not supported");
    BlockMap kept;
    for (auto& [rc, b] : blocks) {
        if (b.rows() != out_dim || b.cols() != in_dim)
            throw DimensionMismatch("column_blocks: block (" + std::to_string(rc.first) + "," +
                                    std::to_string(rc.second) + ") is not " + std::to_string(out_dim) + "x" +
                                    std::to_string(in_dim));
        if (!in_domain(domain, {rc.first, 0}) || !in_domain(domain, {rc.second, 0}))
            throw DomainMismatch("column_blocks: block index outside " + to_string(domain));
        if (!b.is_zero()) kept.emplace(rc, std::move(b));
    }
    return SeqOp(
        std::make_shared<SeqOpNode>(SeqOpNode{opterm::ColumnBlocks{domain, in_dim, out_dim, std::move(kept)}}));
}

SeqOp SeqOp::compose(std::vector<SeqOp> factors) {
    if (factors.empty()) throw InvalidArgument("compose: no factors");
    for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
        const auto src = factors[i].source();
        if (!src) throw DomainMismatch("compose: only the rightmost factor may be an embedding");
        if (!(*src == factors[i + 1].target()))
            throw DomainMismatch("compose: factor " + std::to_string(i) + " expects " + describe(src) +
                                 " but factor " + std::to_string(i + 1) + " produces " +
                                 describe(factors[i + 1].target()));
    }
    return SeqOp(std::make_shared<SeqOpNode>(SeqOpNode{opterm::Compose{std::move(factors)}}));
}

SeqOp SeqOp::power(SeqOp base, std::size_t n) {
    const auto src = base.source();
    if (!src || !(*src == base.target())) throw DomainMismatch("power: operator is not an endomorphism");
    return SeqOp(std::make_shared<SeqOpNode>(SeqOpNode{opterm::Power{std::move(base), n}}));
}

std::string SeqOp::kind() const {
    return std::visit(overloaded{
                          [](const opterm::Embed&) { return "embed"; },
                          [](const opterm::CoordProj0&) { return "coord_proj0"; },
                          [](const opterm::Identity&) { return "identity"; },
                          [](const opterm::ShiftRight&) { return "shift_right"; },
                          [](const opterm::ShiftBilat&) { return "shift_bilat"; },
                          [](const opterm::SchafferU&) { return "schaffer_u"; },
                          [](const opterm::SchafferVInv&) { return "schaffer_v_inv"; },
                          [](const opterm::GridDown&) { return "grid_down"; },
                          [](const opterm::GridRight&) { return "grid_right"; },
                          [](const opterm::ProjStd&) { return "proj_std"; },
                          [](const opterm::ProjAndo&) { return "proj_ando"; },
                          [](const opterm::BlockDense&) { return "block_dense"; },
                          [](const opterm::Componentwise&) { return "componentwise"; },
                          [](const opterm::ColumnBlocks&) { return "column_blocks"; },
                          [](const opterm::Compose&) { return "compose"; },
                          [](const opterm::Power&) { return "power"; },
                      },
                      node_->term);
}

Space SeqOp::target() const {
    return std::visit(overloaded{
                          [](const opterm::Embed& t) { return Space{t.domain, t.dim}; },
                          [](const opterm::CoordProj0& t) { return Space{t.domain, t.dim}; },
                          [](const opterm::Identity& t) { return t.space; },
                          [](const opterm::ShiftRight& t) { return Space{IndexDomain::UniNat, t.dim}; },
                          [](const opterm::ShiftBilat& t) { return Space{IndexDomain::BiInt, t.dim}; },
                          [](const opterm::SchafferU& t) { return Space{IndexDomain::BiInt, t.T.rows()}; },
                          [](const opterm::SchafferVInv& t) { return Space{IndexDomain::BiInt, t.T.rows()}; },
                          [](const opterm::GridDown& t) { return Space{IndexDomain::Grid, t.dim}; },
                          [](const opterm::GridRight& t) { return Space{IndexDomain::Grid, t.dim}; },
                          [](const opterm::ProjStd& t) { return Space{IndexDomain::UniNat, t.T.rows()}; },
                          [](const opterm::ProjAndo& t) { return Space{IndexDomain::Grid, t.T.rows()}; },
                          [](const opterm::BlockDense& t) { return Space{IndexDomain::UniNat, t.dim}; },
                          [](const opterm::Componentwise& t) { return Space{t.domain, t.S.rows()}; },
                          [](const opterm::ColumnBlocks& t) { return Space{t.domain, t.out_dim}; },
                          [](const opterm::Compose& t) { return t.factors.front().target(); },
                          [](const opterm::Power& t) { return t.base.target(); },
                      },
                      node_->term);
}

std::optional<Space> SeqOp::source() const {
    if (std::holds_alternative<opterm::Embed>(node_->term)) return std::nullopt;
    if (const auto* c = std::get_if<opterm::Componentwise>(&node_->term)) return Space{c->domain, c->S.cols()};
    if (const auto* c = std::get_if<opterm::ColumnBlocks>(&node_->term)) return Space{c->domain, c->in_dim};
    if (const auto* c = std::get_if<opterm::Compose>(&node_->term)) return c->factors.back().source();
    return target();
}

std::size_t SeqOp::source_dim() const {
    if (const auto* e = std::get_if<opterm::Embed>(&node_->term)) return e->dim;
    if (const auto* c = std::get_if<opterm::Compose>(&node_->term)) return c->factors.back().source_dim();
    return source()->dim;
}

namespace {

FsVec apply_term(const SeqOp& self, const FsVec& x) {
    const Space tgt = self.target();
    return std::visit(
        overloaded{
            [&](const opterm::Embed&) -> FsVec {
                throw DomainMismatch("embed acts on plain columns, not on sequences");
            },
            [&](const opterm::CoordProj0&) {
                FsVec out(tgt);
                out.add_at(kOrigin, x.at(kOrigin));
                return out;
            },
            [&](const opterm::Identity&) { return x; },
            [&](const opterm::ShiftRight&) { return translate(x, {1, 0}); },
            [&](const opterm::ShiftBilat& t) { return translate(x, {t.offset, 0}); },
            [&](const opterm::SchafferU& t) {
                FsVec out = translate(x, {-1, 0});
                out.add_at(kOrigin, t.T * x.at(kOrigin));
                return out;
            },
            [&](const opterm::SchafferVInv& t) {
                FsVec out = translate(x, {1, 0});
                out.add_at({1, 0}, Rat(-1) * (t.T * x.at({-1, 0})));
                return out;
            },
            [&](const opterm::GridDown&) { return translate(x, {1, 0}); },
            [&](const opterm::GridRight&) { return translate(x, {0, 1}); },
            [&](const opterm::ProjStd& t) {
                Vec acc = zero_vec(tgt.dim);
                for (const auto& [i, v] : x.support()) acc = acc + power_apply(t.T, i.n, v);
                FsVec out(tgt);
                out.add_at(kOrigin, acc);
                return out;
            },
            [&](const opterm::ProjAndo& t) {
                Vec acc = zero_vec(tgt.dim);
                for (const auto& [i, v] : x.support()) acc = acc + power_apply(t.T, i.n, power_apply(t.S, i.m, v));
                FsVec out(tgt);
                out.add_at(kOrigin, acc);
                return out;
            },
            [&](const opterm::BlockDense& t) {
                const std::size_t blocks = t.M.rows() / t.dim;
                Vec packed(t.M.rows());
                for (const auto& [i, v] : x.support()) {
                    if (i.n >= static_cast<std::int64_t>(blocks))
                        throw DomainMismatch("block_dense: input supported at " + std::to_string(i.n) +
                                             " beyond " + std::to_string(blocks) + " blocks");
                    for (std::size_t r = 0; r < t.dim; ++r) packed[i.n * t.dim + r] = v[r];
                }
                const Vec image = t.M * packed;
                FsVec out(tgt);
                for (std::size_t k = 0; k < blocks; ++k)
                    out.add_at({static_cast<std::int64_t>(k), 0},
                               Vec(image.begin() + k * t.dim, image.begin() + (k + 1) * t.dim));
                return out;
            },
            [&](const opterm::Componentwise& t) {
                FsVec out(tgt);
                for (const auto& [i, v] : x.support()) out.add_at(i, t.S * v);
                return out;
            },
            [&](const opterm::ColumnBlocks& t) {
                FsVec out(tgt);
                for (const auto& [i, v] : x.support())
                    for (const auto& [rc, b] : t.blocks)
                        if (rc.second == i.n) out.add_at({rc.first, 0}, b * v);
                return out;
            },
            [&](const opterm::Compose& t) {
                FsVec y = x;
                for (auto it = t.factors.rbegin(); it != t.factors.rend(); ++it) y = apply(*it, y);
                return y;
            },
            [&](const opterm::Power& t) { return op_power_apply(t.base, t.n, x); },
        },
        self.node().term);
}

}  // namespace

FsVec apply(const SeqOp& op, const FsVec& x) {
    const auto src = op.source();
    if (!src) throw DomainMismatch(op.kind() + " acts on plain columns, not on sequences");
    if (!(x.space() == *src))
        throw DomainMismatch(op.kind() + " expects " + describe(src) + " but got " + describe(x.space()));
    return apply_term(op, x);
}

FsVec apply(const SeqOp& op, const Vec& x) {
    if (const auto* e = std::get_if<opterm::Embed>(&op.node().term)) {
        if (x.size() != e->dim)
            throw DimensionMismatch("embed expects dim " + std::to_string(e->dim) + " but got " +
                                    std::to_string(x.size()));
        return FsVec::unit(e->domain, kOrigin, x);
    }
    if (const auto* c = std::get_if<opterm::Compose>(&op.node().term)) {
        FsVec y = dilatekit::apply(c->factors.back(), x);
        for (auto it = std::next(c->factors.rbegin()); it != c->factors.rend(); ++it) y = apply(*it, y);
        return y;
    }
    throw DomainMismatch(op.kind() + " acts on sequences, not on plain columns");
}

FsVec op_power_apply(const SeqOp& op, std::size_t n, const FsVec& x) {
    FsVec y = x;
    if (n == 0) {
        const auto src = op.source();
        if (!src || !(*src == op.target()) || !(x.space() == *src))
            throw DomainMismatch("power of " + op.kind() + " on " + describe(x.space()));
        return y;
    }
    for (std::size_t k = 0; k < n; ++k) y = apply(op, y);
    return y;
}

Report check_inverse_pair(const SeqOp& a, const SeqOp& b, const std::vector<FsVec>& probes) {
    Report report("inverse_pair");
    const std::string bound = "probes=" + std::to_string(probes.size());
    if (probes.empty()) report.add_note("no probes supplied; inverse-pair check is vacuous");
    for (const auto& x : probes) {
        const FsVec ab = apply(a, apply(b, x));
        report.expect(ab == x, "a(b(x)) = x", bound, [&] {
            return nlohmann::json{{"probe", to_json(x)}, {"a(b(x))", to_json(ab)}};
        });
        const FsVec ba = apply(b, apply(a, x));
        report.expect(ba == x, "b(a(x)) = x", bound, [&] {
            return nlohmann::json{{"probe", to_json(x)}, {"b(a(x))", to_json(ba)}};
        });
    }
    return report;
}

void DilationQuadruple::validate() const {
    if (embed.source() || embed.source_dim() != base_dim || !(embed.target() == space))
        throw DomainMismatch("dilation: embedding does not map V into W");
    auto endo = [&](const SeqOp& op, const char* name) {
        if (!op.source() || !(*op.source() == space) || !(op.target() == space))
            throw DomainMismatch(std::string("dilation: ") + name + " is not an operator on W");
    };
    endo(forward, "U");
    endo(proj, "P");
    if (second) endo(*second, "V");
}

}  // namespace dilatekit
