#include <doctest.h>

#include "dilatekit/errors.hpp"
#include "dilatekit/intertwine.hpp"
#include "dilatekit/serialize.hpp"
#include "support.hpp"

using namespace dilatekit;

namespace {

FsVec e(std::int64_t n, const Vec& v) { return FsVec::unit(IndexDomain::UniNat, {n, 0}, v); }

ProbeSet probes_for(TestRng& rng, std::size_t d, std::size_t count) {
    ProbeSet p;
    for (std::size_t k = 0; k < count; ++k) {
        p.base.push_back(rng.vec(d));
        p.space.push_back(rng.fsvec(IndexDomain::UniNat, d, 0, 6));
    }
    return p;
}

}  // namespace

TEST_CASE("intertwining pair examples") {
    const IntertwinePair p = make_intertwine_pair(Mat{{2}}, Mat{{2}}, Mat{{3}});
    const LiftedOp R = lift_intertwiner(p);
    CHECK(dilatekit::apply(R.representation, e(4, {5}) + e(1, {-1})) == e(4, {15}) + e(1, {-3}));
    CHECK(dilatekit::apply(R.representation, dilatekit::apply(p.dil2.quadruple.embed, Vec{1})) == e(0, {3}));

    try {
        (void)make_intertwine_pair(Mat{{1}}, Mat{{2}}, Mat{{1}});
        FAIL("expected NotIntertwining");
    } catch (const NotIntertwining& err) {
        CHECK(parse_mat(err.witness().at("T1 S - S T2")) == Mat{{-1}});
    }

    const Mat N{{0, 1}, {0, 0}};
    const IntertwinePair q = make_intertwine_pair(N, N, N);
    TestRng rng(2);
    CHECK(verify_lift(lift_intertwiner(q), q, probes_for(rng, 2, 10), 8).passed());
}

TEST_CASE("verify_lift catches an R that misses the embedding") {
    const IntertwinePair p = make_intertwine_pair(Mat{{2}}, Mat{{2}}, Mat{{3}});
    const LiftedOp bad{SeqOp::compose({SeqOp::shift_right(1), SeqOp::componentwise(Mat{{3}})})};
    ProbeSet probes;
    probes.base = {{1}};
    const Report r = verify_lift(bad, p, probes, 4);
    const Check* c = r.find("intertwine: R I2 = I1 S");
    REQUIRE(c);
    CHECK(c->status() == Status::Fail);
    CHECK(parse_vec(c->witness->at("probe")) == Vec{1});

    ProbeSet mixed;
    mixed.space = {e(0, {1}) + e(1, {2}) + e(3, {-1})};
    CHECK(verify_lift(lift_intertwiner(p), p, mixed, 4).passed());
}

TEST_CASE("extraction examples") {
    const IntertwinePair p = make_intertwine_pair(Mat{{2}}, Mat{{2}}, Mat{{3}});
    const Extraction ex = extract_intertwiner(lift_intertwiner(p), p.dil1, p.dil2, 12);
    CHECK(ex.S == Mat{{3}});
    CHECK(ex.certificate.passed());

    const StandardDilation id = standard_build(Mat{{1}});
    CHECK(extract_intertwiner(LiftedOp{SeqOp::componentwise(Mat{{5}})}, id, id, 6).S == Mat{{5}});

    const LiftedOp broken{SeqOp::column_blocks(IndexDomain::UniNat, 1, 1, {{{0, 0}, Mat{{3}}}, {{0, 1}, Mat{{1}}}})};
    try {
        (void)extract_intertwiner(broken, p.dil1, p.dil2, 6);
        FAIL("expected HypothesisFailed");
    } catch (const HypothesisFailed& err) {
        CHECK(err.witness().at("relation") == "U1 R = R U2");
        const FsVec x = parse_fsvec(err.witness().at("probe"));
        CHECK(x == e(0, {1}));
        CHECK_FALSE(dilatekit::apply(p.dil1.quadruple.forward, dilatekit::apply(broken.representation, x)) ==
                    dilatekit::apply(broken.representation, dilatekit::apply(p.dil2.quadruple.forward, x)));
    }
}

TEST_CASE("property: lift relations and round trip on constructed triples") {
    TestRng rng(1729);
    for (int trial = 0; trial < 30; ++trial) {
        const auto d = static_cast<std::size_t>(rng.range(1, 3));
        const Mat T = rng.mat(d, d, 5);
        const Mat S0 = rng.rat(5) * Mat::identity(d) + rng.rat(5) * T + rng.rat(5) * (T * T);
        Mat T1 = T, T2 = T, S = S0;
        if (trial % 3 == 1) {
            const Mat A = rng.mat(1, 1, 5);
            T1 = Mat::from_blocks({{T, Mat(d, 1)}, {Mat(1, d), A}});
            S = Mat::from_blocks({{S0}, {Mat(1, d)}});
        } else if (trial % 3 == 2) {
            const Mat A = rng.mat(2, 2, 5);
            T2 = Mat::from_blocks({{T, Mat(d, 2)}, {Mat(2, d), A}});
            S = Mat::from_blocks({{S0, Mat(d, 2)}});
        }
        // Intertwining is checked with the oracle product, not assumed.
        REQUIRE(oracle::mul(oracle::to_q(T1), oracle::to_q(S), T1.cols(), S.cols()) ==
                oracle::mul(oracle::to_q(S), oracle::to_q(T2), S.cols(), T2.cols()));
        const IntertwinePair p = make_intertwine_pair(T1, T2, S);
        const LiftedOp R = lift_intertwiner(p);
        CHECK(verify_lift(R, p, probes_for(rng, T2.rows(), 8), 10).passed());
        const Extraction ex = extract_intertwiner(R, p.dil1, p.dil2, 10);
        CHECK(ex.S == S);
        CHECK(T1 * ex.S == ex.S * T2);
    }
}
