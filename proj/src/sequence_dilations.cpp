#include "dilatekit/sequence_dilations.hpp"

#include <map>

#include "dilatekit/errors.hpp"
#include "dilatekit/serialize.hpp"

namespace dilatekit {

using nlohmann::json;

namespace {

constexpr Index kOrigin{0, 0};

void require_square(const Mat& T) {
    if (!T.is_square()) throw DimensionMismatch("operator must be square");
}

/// Rank of a family of sequence vectors, computed on the union of their
/// supports.
std::size_t sequence_rank(const std::vector<FsVec>& xs) {
    if (xs.empty()) return 0;
    std::map<Index, std::size_t> slot;
    for (const auto& x : xs)
        for (const auto& [i, v] : x.support()) slot.emplace(i, 0);
    std::size_t k = 0;
    for (auto& [i, s] : slot) s = k++;
    const std::size_t dim = xs.front().dim();
    std::vector<Vec> columns;
    for (const auto& x : xs) {
        Vec flat(slot.size() * dim);
        for (const auto& [i, v] : x.support())
            for (std::size_t r = 0; r < dim; ++r) flat[slot[i] * dim + r] = v[r];
        columns.push_back(std::move(flat));
    }
    return span_rank(columns, slot.size() * dim);
}

void check_projection(Report& r, const std::string& prefix, const SeqOp& P, const SeqOp& I,
                      const ProbeSet& probes, const std::string& bound) {
    for (const FsVec& x : probes.space) {
        const FsVec px = dilatekit::apply(P, x);
        const FsVec ppx = dilatekit::apply(P, px);
        r.expect(ppx == px, prefix + "P P x = P x", bound, [&] {
            return json{{"probe", to_json(x)}, {"Px", to_json(px)}, {"PPx", to_json(ppx)}};
        });
        r.expect(px.supported_only_at(kOrigin), prefix + "support(P x) within the base coordinate", bound,
                 [&] { return json{{"probe", to_json(x)}, {"Px", to_json(px)}}; });
    }
    for (const Vec& x : probes.base) {
        const FsVec ix = dilatekit::apply(I, x);
        const FsVec pix = dilatekit::apply(P, ix);
        r.expect(pix == ix, prefix + "P I x = I x", bound, [&] {
            return json{{"probe", to_json(x)}, {"Ix", to_json(ix)}, {"PIx", to_json(pix)}};
        });
    }
}

}  // namespace

DilationQuadruple SchafferDilation::quadruple() const {
    DilationQuadruple q{{IndexDomain::BiInt, T.rows()}, T.rows(), I, U, P, std::nullopt};
    q.validate();
    return q;
}

SchafferDilation schaffer_build(const Mat& T) {
    require_square(T);
    const std::size_t d = T.rows();
    return {T, SeqOp::schaffer_u(T), SeqOp::schaffer_v_inv(T), SeqOp::coord_proj0(IndexDomain::BiInt, d),
            SeqOp::embed(IndexDomain::BiInt, d)};
}

Report schaffer_verify(const SchafferDilation& sd, const ProbeSet& probes, std::size_t n_max) {
    if (n_max < 1) throw InvalidArgument("schaffer_verify: n_max must be at least 1");
    Report r("schaffer");
    const std::string probe_bound = "probes=" + std::to_string(probes.space.size());
    const std::string bound = "1<=n<=" + std::to_string(n_max) + ", probes=" + std::to_string(probes.base.size());
    if (probes.space.empty() && probes.base.empty()) r.add_note("no probes supplied; checks are vacuous");

    for (const FsVec& x : probes.space) {
        const FsVec uv = dilatekit::apply(sd.U, dilatekit::apply(sd.U_inv, x));
        r.expect(uv == x, "schaffer: U U_inv x = x", probe_bound, [&] {
            return json{{"T", to_json(sd.T)}, {"probe", to_json(x)}, {"U U_inv x", to_json(uv)}};
        });
        const FsVec vu = dilatekit::apply(sd.U_inv, dilatekit::apply(sd.U, x));
        r.expect(vu == x, "schaffer: U_inv U x = x", probe_bound, [&] {
            return json{{"T", to_json(sd.T)}, {"probe", to_json(x)}, {"U_inv U x", to_json(vu)}};
        });
    }

    for (const Vec& x : probes.base) {
        FsVec y = dilatekit::apply(sd.I, x);
        Vec expected = x;
        for (std::size_t n = 1; n <= n_max; ++n) {
            y = dilatekit::apply(sd.U, y);
            expected = sd.T * expected;
            const FsVec lhs = dilatekit::apply(sd.P, y);
            const FsVec rhs = dilatekit::apply(sd.I, expected);
            r.expect(lhs == rhs, "schaffer: P U^n I x = I T^n x", bound, [&] {
                return json{{"T", to_json(sd.T)},          {"n", n},
                            {"probe", to_json(x)},         {"expected", to_json(expected)},
                            {"actual", to_json(lhs.at(kOrigin))}};
            });
        }
    }
    return r;
}

StandardDilation standard_build(const Mat& T) {
    require_square(T);
    const std::size_t d = T.rows();
    DilationQuadruple q{{IndexDomain::UniNat, d}, d, SeqOp::embed(IndexDomain::UniNat, d), SeqOp::shift_right(d),
                        SeqOp::proj_std(T), std::nullopt};
    q.validate();
    return {T, std::move(q)};
}

Report standard_verify(const StandardDilation& sd, const ProbeSet& probes, std::size_t n_max) {
    Report r("standard");
    const auto& q = sd.quadruple;
    const std::size_t d = q.base_dim;
    const std::string probe_bound =
        "probes=" + std::to_string(probes.space.size()) + "+" + std::to_string(probes.base.size());
    const std::string bound = "0<=n<=" + std::to_string(n_max) + ", probes=" + std::to_string(probes.base.size());

    std::vector<FsVec> images;
    for (std::size_t i = 0; i < d; ++i) images.push_back(dilatekit::apply(q.embed, unit_vec(d, i)));
    const std::size_t irank = sequence_rank(images);
    r.expect(irank == d, "standard: I injective (rank of I e_i = d)", "basis", [&] {
        return json{{"T", to_json(sd.T)}, {"rank", irank}, {"dim", d}};
    });

    const std::size_t probe_rank = sequence_rank(probes.space);
    std::vector<FsVec> shifted;
    for (const auto& x : probes.space) shifted.push_back(dilatekit::apply(q.forward, x));
    const std::size_t shifted_rank = sequence_rank(shifted);
    r.expect(shifted_rank == probe_rank, "standard: U injective on span of probes", probe_bound, [&] {
        return json{{"rank_probes", probe_rank}, {"rank_U_probes", shifted_rank}};
    });
    r.add_note("U is the right shift, which is injective; the probe check confirms it on the probe span");

    check_projection(r, "standard: ", q.proj, q.embed, probes, probe_bound);

    for (const Vec& x : probes.base) {
        FsVec y = dilatekit::apply(q.embed, x);
        Vec expected = x;
        for (std::size_t n = 0; n <= n_max; ++n) {
            if (n > 0) {
                y = dilatekit::apply(q.forward, y);
                expected = sd.T * expected;
            }
            const FsVec lhs = dilatekit::apply(q.proj, y);
            const FsVec rhs = dilatekit::apply(q.embed, expected);
            r.expect(lhs == rhs, "standard: P U^n I x = I T^n x", bound, [&] {
                return json{{"T", to_json(sd.T)}, {"n", n},
                            {"probe", to_json(x)}, {"expected", to_json(rhs)},
                            {"actual", to_json(lhs)}};
            });
        }
    }
    return r;
}

Report standard_minimality_check(const StandardDilation& sd, std::size_t n_max) {
    Report r("standard_minimality");
    const auto& q = sd.quadruple;
    const std::size_t d = q.base_dim;
    const std::string bound = "n<=" + std::to_string(n_max) + ", i<" + std::to_string(d);
    for (std::size_t i = 0; i < d; ++i) {
        FsVec y = dilatekit::apply(q.embed, unit_vec(d, i));
        for (std::size_t n = 0; n <= n_max; ++n) {
            if (n > 0) y = dilatekit::apply(q.forward, y);
            const FsVec basis = FsVec::unit(IndexDomain::UniNat, {static_cast<std::int64_t>(n), 0}, unit_vec(d, i));
            r.expect(y == basis, "standard: e_n (x) e_i = U^n I e_i", bound, [&] {
                return json{{"n", n}, {"i", i}, {"U^n I e_i", to_json(y)}};
            });
        }
    }
    r.add_note("every basis vector e_n (x) e_i with n <= " + std::to_string(n_max) +
               " lies in span{U^n I x}; certified up to that bound");
    return r;
}

DilationQuadruple AndoVariant::quadruple() const {
    DilationQuadruple q{{IndexDomain::Grid, T.rows()}, T.rows(), I, U, P, V};
    q.validate();
    return q;
}

AndoVariant ando_build(const Mat& T, const Mat& S) {
    require_square(T);
    require_square(S);
    if (T.rows() != S.rows()) throw DimensionMismatch("ando_build: T and S differ in size");
    const Mat commutator = T * S - S * T;
    if (!commutator.is_zero())
        throw NonCommuting("T S != S T", json{{"T", to_json(T)}, {"S", to_json(S)}, {"TS - ST", to_json(commutator)}});
    const std::size_t d = T.rows();
    return {T, S, SeqOp::embed(IndexDomain::Grid, d), SeqOp::grid_down(d), SeqOp::grid_right(d),
            SeqOp::proj_ando(T, S)};
}

Report ando_verify(const AndoVariant& av, const ProbeSet& probes, std::size_t n_max, std::size_t m_max) {
    if (n_max < 1 || m_max < 1) throw InvalidArgument("ando_verify: bounds must be at least 1");
    Report r("ando");
    const std::string bound = "n<=" + std::to_string(n_max) + ", m<=" + std::to_string(m_max) +
                              ", probes=" + std::to_string(probes.base.size());
    const std::string probe_bound = "probes=" + std::to_string(probes.space.size());

    for (const Vec& x : probes.base) {
        FsVec column = dilatekit::apply(av.I, x);
        Vec s_pow = x;
        for (std::size_t m = 0; m <= m_max; ++m) {
            if (m > 0) {
                column = dilatekit::apply(av.V, column);
                s_pow = av.S * s_pow;
            }
            FsVec y = column;
            Vec expected = s_pow;
            for (std::size_t n = 0; n <= n_max; ++n) {
                if (n > 0) {
                    y = dilatekit::apply(av.U, y);
                    expected = av.T * expected;
                }
                const FsVec lhs = dilatekit::apply(av.P, y);
                const FsVec rhs = dilatekit::apply(av.I, expected);
                const bool ok = lhs == rhs;
                auto witness = [&] {
                    return json{{"T", to_json(av.T)},          {"S", to_json(av.S)},
                                {"n", n},                      {"m", m},
                                {"probe", to_json(x)},         {"expected", to_json(expected)},
                                {"actual", to_json(lhs.at(kOrigin))}};
                };
                r.expect(ok, "ando: P U^n V^m I x = I T^n S^m x", bound, witness);
                if (m == 0) r.expect(ok, "ando: P U^n I x = I T^n x", bound, witness);
                if (n == 0) r.expect(ok, "ando: P V^m I x = I S^m x", bound, witness);
            }
        }
    }

    for (const FsVec& x : probes.space) {
        const FsVec ux = dilatekit::apply(av.U, x);
        const FsVec vx = dilatekit::apply(av.V, x);
        const FsVec vu = dilatekit::apply(av.V, ux);
        const FsVec uv = dilatekit::apply(av.U, vx);
        r.expect(vu == uv, "ando: V U x = U V x", probe_bound, [&] {
            return json{{"probe", to_json(x)}, {"VUx", to_json(vu)}, {"UVx", to_json(uv)}};
        });
        const FsVec col_padded = prepend_zero_column(ux);
        const FsVec row_padded = prepend_zero_row(vx);
        r.expect(col_padded == row_padded && col_padded == vu,
                 "ando: zero column prepended to U x = zero row prepended to V x", probe_bound, [&] {
                     return json{{"probe", to_json(x)},
                                 {"prepend_column(Ux)", to_json(col_padded)},
                                 {"prepend_row(Vx)", to_json(row_padded)}};
                 });
    }
    check_projection(r, "ando: ", av.P, av.I, probes, probe_bound);
    return r;
}

}  // namespace dilatekit
