#include "dilatekit/intertwine.hpp"

#include "dilatekit/errors.hpp"
#include "dilatekit/serialize.hpp"

namespace dilatekit {

using nlohmann::json;

namespace {

constexpr Index kOrigin{0, 0};

std::vector<FsVec> basis_probes(std::size_t dim, std::size_t n_max) {
    std::vector<FsVec> out;
    for (std::size_t n = 0; n <= n_max; ++n)
        for (std::size_t i = 0; i < dim; ++i)
            out.push_back(FsVec::unit(IndexDomain::UniNat, {static_cast<std::int64_t>(n), 0}, unit_vec(dim, i)));
    return out;
}

void require_maps(const SeqOp& R, std::size_t d2, std::size_t d1) {
    const auto src = R.source();
    const Space w2{IndexDomain::UniNat, d2}, w1{IndexDomain::UniNat, d1};
    if (!src || !(*src == w2) || !(R.target() == w1))
        throw DomainMismatch("R must map uninat/" + std::to_string(d2) + " to uninat/" + std::to_string(d1));
}

}  // namespace

IntertwinePair make_intertwine_pair(const Mat& T1, const Mat& T2, const Mat& S) {
    if (!T1.is_square() || !T2.is_square()) throw DimensionMismatch("T1 and T2 must be square");
    if (S.rows() != T1.rows() || S.cols() != T2.rows())
        throw DimensionMismatch("S must be " + std::to_string(T1.rows()) + "x" + std::to_string(T2.rows()));
    const Mat gap = T1 * S - S * T2;
    if (!gap.is_zero())
        throw NotIntertwining("T1 S != S T2", json{{"T1", to_json(T1)}, {"T2", to_json(T2)}, {"S", to_json(S)},
                                                   {"T1 S - S T2", to_json(gap)}});
    return {T1, T2, S, standard_build(T1), standard_build(T2)};
}

LiftedOp lift_intertwiner(const IntertwinePair& p) {
    return {SeqOp::componentwise(p.S, IndexDomain::UniNat)};
}

Report verify_lift(const LiftedOp& R, const IntertwinePair& p, const ProbeSet& probes, std::size_t n_max) {
    Report r("intertwine");
    const auto& q1 = p.dil1.quadruple;
    const auto& q2 = p.dil2.quadruple;
    const SeqOp& op = R.representation;
    require_maps(op, q2.base_dim, q1.base_dim);

    std::vector<FsVec> space = probes.space;
    const auto basis = basis_probes(q2.base_dim, n_max);
    space.insert(space.end(), basis.begin(), basis.end());
    const std::string bound = "probes=" + std::to_string(probes.space.size()) + " + basis n<=" + std::to_string(n_max);

    for (const FsVec& x : space) {
        const FsVec ur = dilatekit::apply(q1.forward, dilatekit::apply(op, x));
        const FsVec ru = dilatekit::apply(op, dilatekit::apply(q2.forward, x));
        r.expect(ur == ru, "intertwine: U1 R = R U2", bound, [&] {
            return json{{"probe", to_json(x)}, {"U1 R x", to_json(ur)}, {"R U2 x", to_json(ru)}};
        });
        const FsVec rp = dilatekit::apply(op, dilatekit::apply(q2.proj, x));
        const FsVec pr = dilatekit::apply(q1.proj, dilatekit::apply(op, x));
        r.expect(rp == pr, "intertwine: R P2 = P1 R", bound, [&] {
            return json{{"probe", to_json(x)}, {"R P2 x", to_json(rp)}, {"P1 R x", to_json(pr)}};
        });
    }

    std::vector<Vec> base = probes.base;
    for (std::size_t i = 0; i < q2.base_dim; ++i) base.push_back(unit_vec(q2.base_dim, i));
    for (const Vec& y : base) {
        const FsVec ri = dilatekit::apply(op, dilatekit::apply(q2.embed, y));
        const FsVec is = dilatekit::apply(q1.embed, p.S * y);
        r.expect(ri == is, "intertwine: R I2 = I1 S", "probes=" + std::to_string(base.size()), [&] {
            return json{{"probe", to_json(y)}, {"R I2 y", to_json(ri)}, {"I1 S y", to_json(is)}};
        });
    }
    return r;
}

Extraction extract_intertwiner(const LiftedOp& R, const StandardDilation& dil1, const StandardDilation& dil2,
                               std::size_t cert_bound) {
    const auto& q1 = dil1.quadruple;
    const auto& q2 = dil2.quadruple;
    const SeqOp& op = R.representation;
    const std::size_t d1 = q1.base_dim, d2 = q2.base_dim;
    require_maps(op, d2, d1);

    Report cert("intertwine_extract");
    const std::string bound = "basis n<=" + std::to_string(cert_bound);
    for (const FsVec& x : basis_probes(d2, cert_bound)) {
        const FsVec ur = dilatekit::apply(q1.forward, dilatekit::apply(op, x));
        const FsVec ru = dilatekit::apply(op, dilatekit::apply(q2.forward, x));
        if (!(ur == ru))
            throw HypothesisFailed("U1 R = R U2 fails on a basis probe",
                                   json{{"relation", "U1 R = R U2"}, {"probe", to_json(x)},
                                        {"U1 R x", to_json(ur)}, {"R U2 x", to_json(ru)}});
        cert.pass("extract: U1 R = R U2 (hypothesis)", bound);
        const FsVec rp = dilatekit::apply(op, dilatekit::apply(q2.proj, x));
        const FsVec pr = dilatekit::apply(q1.proj, dilatekit::apply(op, x));
        if (!(rp == pr))
            throw HypothesisFailed("R P2 = P1 R fails on a basis probe",
                                   json{{"relation", "R P2 = P1 R"}, {"probe", to_json(x)},
                                        {"R P2 x", to_json(rp)}, {"P1 R x", to_json(pr)}});
        cert.pass("extract: R P2 = P1 R (hypothesis)", bound);
    }

    Mat S(d1, d2);
    for (std::size_t i = 0; i < d2; ++i) {
        const FsVec y = dilatekit::apply(q1.proj, dilatekit::apply(op, dilatekit::apply(q2.embed, unit_vec(d2, i))));
        if (!y.supported_only_at(kOrigin))
            throw RangeViolation("P1 R I2 e_i is not supported at coordinate 0",
                                 json{{"i", i}, {"P1 R I2 e_i", to_json(y)}});
        const Vec col = y.at(kOrigin);
        for (std::size_t r = 0; r < d1; ++r) S(r, i) = col[r];
    }
    cert.pass("extract: P1 R I2 e_i supported at 0", "", d2);

    for (std::size_t i = 0; i < d2; ++i) {
        const Vec e = unit_vec(d2, i);
        const FsVec ri = dilatekit::apply(op, dilatekit::apply(q2.embed, e));
        const FsVec is = dilatekit::apply(q1.embed, S * e);
        if (!(ri == is))
            throw HypothesisFailed("R I2 = I1 S fails for the extracted S",
                                   json{{"relation", "R I2 = I1 S"}, {"i", i}, {"R I2 e_i", to_json(ri)},
                                        {"I1 S e_i", to_json(is)}});
    }
    cert.pass("extract: R I2 = I1 S (conclusion)", "", d2);

    const Mat gap = dil1.T * S - S * dil2.T;
    if (!gap.is_zero())
        throw HypothesisFailed("extracted S does not intertwine",
                               json{{"relation", "T1 S = S T2"}, {"S", to_json(S)}, {"T1 S - S T2", to_json(gap)}});
    cert.pass("extract: T1 S = S T2 (conclusion)");
    cert.add_note("hypotheses certified on basis probes up to n = " + std::to_string(cert_bound));
    return {std::move(S), std::move(cert)};
}

}  // namespace dilatekit
