#include "dilatekit/serialize.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <variant>

#include "dilatekit/errors.hpp"

namespace dilatekit {

using nlohmann::json;

namespace {

template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ParseError(where + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(where, std::string("missing field \"") + key + "\"");
    return *it;
}

std::string sub(const std::string& where, const char* key) { return where + "." + key; }
std::string sub(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

std::int64_t parse_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) fail(where, "expected an integer");
    return j.get<std::int64_t>();
}

std::size_t parse_count(const json& j, const std::string& where) {
    const auto v = parse_int(j, where);
    if (v < 0) fail(where, "expected a non-negative integer");
    return static_cast<std::size_t>(v);
}

json space_fields(IndexDomain d, std::size_t dim) { return {{"domain", to_string(d)}, {"dim", dim}}; }

}  // namespace

json to_json(const Rat& r) {
    if (r.is_integer()) {
        const mpz_class n = r.numerator();
        if (n.fits_slong_p()) return static_cast<std::int64_t>(n.get_si());
    }
    return r.to_string();
}

json to_json(const Vec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

json to_json(const Mat& m) {
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        a.push_back(std::move(row));
    }
    return a;
}

json to_json(const FsVec& x) {
    json support = json::array();
    for (const auto& [i, v] : x.support()) {
        json index = x.domain() == IndexDomain::Grid ? json::array({i.n, i.m}) : json(i.n);
        support.push_back({{"index", std::move(index)}, {"value", to_json(v)}});
    }
    return {{"domain", to_string(x.domain())}, {"dim", x.dim()}, {"support", std::move(support)}};
}

json to_json(const SeqOp& op) {
    json j = std::visit(
        overloaded{
            [](const opterm::Embed& t) { return space_fields(t.domain, t.dim); },
            [](const opterm::CoordProj0& t) { return space_fields(t.domain, t.dim); },
            [](const opterm::Identity& t) { return space_fields(t.space.domain, t.space.dim); },
            [](const opterm::ShiftRight& t) { return json{{"dim", t.dim}}; },
            [](const opterm::ShiftBilat& t) { return json{{"dim", t.dim}, {"offset", t.offset}}; },
            [](const opterm::SchafferU& t) { return json{{"T", to_json(t.T)}}; },
            [](const opterm::SchafferVInv& t) { return json{{"T", to_json(t.T)}}; },
            [](const opterm::GridDown& t) { return json{{"dim", t.dim}}; },
            [](const opterm::GridRight& t) { return json{{"dim", t.dim}}; },
            [](const opterm::ProjStd& t) { return json{{"T", to_json(t.T)}}; },
            [](const opterm::ProjAndo& t) { return json{{"T", to_json(t.T)}, {"S", to_json(t.S)}}; },
            [](const opterm::BlockDense& t) { return json{{"M", to_json(t.M)}, {"dim", t.dim}}; },
            [](const opterm::Componentwise& t) {
                return json{{"S", to_json(t.S)}, {"domain", to_string(t.domain)}};
            },
            [](const opterm::ColumnBlocks& t) {
                json blocks = json::array();
                for (const auto& [rc, b] : t.blocks)
                    blocks.push_back({{"row", rc.first}, {"col", rc.second}, {"value", to_json(b)}});
                return json{{"domain", to_string(t.domain)},
                            {"in_dim", t.in_dim},
                            {"out_dim", t.out_dim},
                            {"blocks", std::move(blocks)}};
            },
            [](const opterm::Compose& t) {
                json factors = json::array();
                for (const auto& f : t.factors) factors.push_back(to_json(f));
                return json{{"factors", std::move(factors)}};
            },
            [](const opterm::Power& t) { return json{{"op", to_json(t.base)}, {"n", t.n}}; },
        },
        op.node().term);
    j["kind"] = op.kind();
    return j;
}

Rat parse_rat(const json& j, const std::string& where) {
    if (j.is_number_integer()) {
        if (j.is_number_unsigned()) return Rat(mpz_class(std::to_string(j.get<std::uint64_t>())), mpz_class(1));
        return Rat(j.get<std::int64_t>());
    }
    if (j.is_string()) {
        try {
            return Rat::parse(j.get<std::string>());
        } catch (const DenominatorZero& e) {
            throw DenominatorZero(where + ": " + e.what());
        } catch (const ParseError& e) {
            fail(where, e.what());
        }
    }
    if (j.is_number_float()) fail(where, "floating-point literals are not accepted; use \"p/q\"");
    fail(where, "expected a rational (\"p/q\" string or integer)");
}

Vec parse_vec(const json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array of rationals");
    Vec v;
    v.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(parse_rat(j[i], sub(where, i)));
    return v;
}

Mat parse_mat(const json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected a matrix (array of rows)");
    if (j.empty()) return {};
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < j.size(); ++i) {
        rows.push_back(parse_vec(j[i], sub(where, i)));
        if (rows.back().size() != rows.front().size())
            fail(sub(where, i), "row length " + std::to_string(rows.back().size()) + " differs from " +
                                    std::to_string(rows.front().size()));
    }
    return Mat::from_columns(rows, rows.front().size()).transpose();
}

IndexDomain parse_domain(const json& j, const std::string& where) {
    if (!j.is_string()) fail(where, "expected a domain name");
    const auto s = j.get<std::string>();
    if (s == "uninat") return IndexDomain::UniNat;
    if (s == "biint") return IndexDomain::BiInt;
    if (s == "grid") return IndexDomain::Grid;
    fail(where, "unknown domain \"" + s + "\"");
}

FsVec parse_fsvec(const json& j, const std::string& where) {
    const IndexDomain domain = parse_domain(field(j, "domain", where), sub(where, "domain"));
    const std::size_t dim = parse_count(field(j, "dim", where), sub(where, "dim"));
    FsVec x(domain, dim);
    const json& support = field(j, "support", where);
    if (!support.is_array()) fail(sub(where, "support"), "expected an array");
    for (std::size_t k = 0; k < support.size(); ++k) {
        const std::string at = sub(sub(where, "support"), k);
        const json& idx = field(support[k], "index", at);
        Index i;
        if (domain == IndexDomain::Grid) {
            if (!idx.is_array() || idx.size() != 2) fail(sub(at, "index"), "grid index must be [n, m]");
            i = {parse_int(idx[0], sub(at, "index")), parse_int(idx[1], sub(at, "index"))};
        } else {
            i = {parse_int(idx, sub(at, "index")), 0};
        }
        if (!in_domain(domain, i)) fail(sub(at, "index"), "index outside domain " + to_string(domain));
        Vec v = parse_vec(field(support[k], "value", at), sub(at, "value"));
        if (v.size() != dim) fail(sub(at, "value"), "column length differs from dim");
        x.add_at(i, v);
    }
    return x;
}

SeqOp parse_seqop(const json& j, const std::string& where) {
    const json& kind_j = field(j, "kind", where);
    if (!kind_j.is_string()) fail(sub(where, "kind"), "expected a string");
    const auto kind = kind_j.get<std::string>();
    auto mat = [&](const char* key) { return parse_mat(field(j, key, where), sub(where, key)); };
    auto count = [&](const char* key) { return parse_count(field(j, key, where), sub(where, key)); };
    auto domain = [&](IndexDomain def) {
        return j.contains("domain") ? parse_domain(j["domain"], sub(where, "domain")) : def;
    };
    try {
        if (kind == "embed") return SeqOp::embed(domain(IndexDomain::UniNat), count("dim"));
        if (kind == "coord_proj0") return SeqOp::coord_proj0(domain(IndexDomain::BiInt), count("dim"));
        if (kind == "identity") return SeqOp::identity({domain(IndexDomain::UniNat), count("dim")});
        if (kind == "shift_right") return SeqOp::shift_right(count("dim"));
        if (kind == "shift_bilat")
            return SeqOp::shift_bilat(count("dim"),
                                      j.contains("offset") ? parse_int(j["offset"], sub(where, "offset")) : 1);
        if (kind == "schaffer_u") return SeqOp::schaffer_u(mat("T"));
        if (kind == "schaffer_v_inv") return SeqOp::schaffer_v_inv(mat("T"));
        if (kind == "grid_down") return SeqOp::grid_down(count("dim"));
        if (kind == "grid_right") return SeqOp::grid_right(count("dim"));
        if (kind == "proj_std") return SeqOp::proj_std(mat("T"));
        if (kind == "proj_ando") return SeqOp::proj_ando(mat("T"), mat("S"));
        if (kind == "block_dense") return SeqOp::block_dense(mat("M"), count("dim"));
        if (kind == "componentwise") return SeqOp::componentwise(mat("S"), domain(IndexDomain::UniNat));
        if (kind == "column_blocks") {
            const json& blocks_j = field(j, "blocks", where);
            if (!blocks_j.is_array()) fail(sub(where, "blocks"), "expected an array");
            SeqOp::BlockMap blocks;
            for (std::size_t k = 0; k < blocks_j.size(); ++k) {
                const std::string at = sub(sub(where, "blocks"), k);
                const auto row = parse_int(field(blocks_j[k], "row", at), sub(at, "row"));
                const auto col = parse_int(field(blocks_j[k], "col", at), sub(at, "col"));
                Mat value = parse_mat(field(blocks_j[k], "value", at), sub(at, "value"));
                auto [it, inserted] = blocks.emplace(std::make_pair(row, col), value);
                if (!inserted) it->second = it->second + value;
            }
            return SeqOp::column_blocks(domain(IndexDomain::UniNat), count("in_dim"), count("out_dim"),
                                        std::move(blocks));
        }
        if (kind == "compose") {
            const json& fj = field(j, "factors", where);
            if (!fj.is_array()) fail(sub(where, "factors"), "expected an array");
            std::vector<SeqOp> factors;
            for (std::size_t k = 0; k < fj.size(); ++k) factors.push_back(parse_seqop(fj[k], sub(sub(where, "factors"), k)));
            return SeqOp::compose(std::move(factors));
        }
        if (kind == "power") return SeqOp::power(parse_seqop(field(j, "op", where), sub(where, "op")), count("n"));
    } catch (const ParseError&) {
        throw;
    } catch (const DenominatorZero&) {
        throw;
    } catch (const Error& e) {
        fail(where, e.what());
    }
    fail(sub(where, "kind"), "unknown operator kind \"" + kind + "\"");
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace dilatekit
