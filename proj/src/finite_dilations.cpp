#include "dilatekit/finite_dilations.hpp"

#include <algorithm>
#include <cctype>

#include "dilatekit/errors.hpp"
#include "dilatekit/serialize.hpp"

namespace dilatekit {

using nlohmann::json;

namespace {

void require_square(const Mat& T) {
    if (!T.is_square())
        throw DimensionMismatch("operator must be square, got " + std::to_string(T.rows()) + "x" +
                                std::to_string(T.cols()));
}

Mat inverse_or_fail(const Mat& m, const std::string& name) {
    auto inv = try_inverse(m);
    if (!inv) throw PreconditionFailed(name, json{{"singular", name}, {"matrix", to_json(m)}});
    return *inv;
}

void verify_inverse(Report& r, const Mat& U, const Mat& U_inv, const std::string& prefix) {
    const std::size_t n = U.rows();
    const Mat left = U * U_inv;
    r.expect(left == Mat::identity(n), prefix + "U U_inv = I", "", [&] {
        return json{{"U", to_json(U)}, {"U_inv", to_json(U_inv)}, {"product", to_json(left)}};
    });
    const Mat right = U_inv * U;
    r.expect(right == Mat::identity(n), prefix + "U_inv U = I", "", [&] {
        return json{{"U", to_json(U)}, {"U_inv", to_json(U_inv)}, {"product", to_json(right)}};
    });
    const auto oracle = try_inverse(U);
    r.expect(oracle && *oracle == U_inv, prefix + "closed-form inverse = Gauss-Jordan inverse", "", [&] {
        return json{{"U", to_json(U)},
                    {"closed_form", to_json(U_inv)},
                    {"gauss_jordan", oracle ? to_json(*oracle) : json("singular")}};
    });
}

}  // namespace

HalmosDilation halmos_build(const Mat& T) {
    require_square(T);
    const std::size_t d = T.rows();
    const Mat I = Mat::identity(d), Z = Mat::zero(d, d);
    HalmosDilation h{T, Mat::from_blocks({{T, I}, {I, Z}}), Mat::from_blocks({{Z, I}, {I, -T}})};
    if (!(h.U * h.U_inv == Mat::identity(2 * d))) throw Error("halmos_build: closed-form inverse is wrong");
    return h;
}

Report halmos_verify(const HalmosDilation& h) {
    Report r("halmos");
    const std::size_t d = h.T.rows();
    verify_inverse(r, h.U, h.U_inv, "halmos: ");
    const Mat corner = h.U.block(0, 0, d, d);
    r.expect(corner == h.T, "halmos: top-left block of U = T", "", [&] {
        return json{{"T", to_json(h.T)}, {"top_left", to_json(corner)}};
    });
    return r;
}

std::string to_string(SchurClass c) {
    switch (c) {
        case SchurClass::I: return "i";
        case SchurClass::II: return "ii";
        case SchurClass::III: return "iii";
        case SchurClass::IV: return "iv";
    }
    return "?";
}

SchurClass parse_schur_class(const std::string& s) {
    std::string lower(s);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "i" || lower == "1") return SchurClass::I;
    if (lower == "ii" || lower == "2") return SchurClass::II;
    if (lower == "iii" || lower == "3") return SchurClass::III;
    if (lower == "iv" || lower == "4") return SchurClass::IV;
    throw InvalidArgument("unknown Schur class \"" + s + "\" (expected i, ii, iii or iv)");
}

SchurFamily schur_build(SchurClass cls, const Mat& T, const Mat& B, const Mat& C, const Mat& D) {
    for (const Mat* m : {&T, &B, &C, &D}) require_square(*m);
    const std::size_t d = T.rows();
    if (B.rows() != d || C.rows() != d || D.rows() != d) throw DimensionMismatch("schur blocks differ in size");

    SchurFamily f{cls, T, B, C, D, {}, Mat::from_blocks({{T, B}, {C, D}}), {}};
    switch (cls) {
        case SchurClass::I: {
            const Mat Ti = inverse_or_fail(T, "T");
            f.schur = D - C * Ti * B;
            const Mat Si = inverse_or_fail(f.schur, "D - C T^-1 B");
            f.U_inv = Mat::from_blocks({{Ti + Ti * B * Si * C * Ti, -(Ti * B * Si)}, {-(Si * C * Ti), Si}});
            break;
        }
        case SchurClass::II: {
            const Mat Di = inverse_or_fail(D, "D");
            f.schur = T - B * Di * C;
            const Mat Si = inverse_or_fail(f.schur, "T - B D^-1 C");
            f.U_inv = Mat::from_blocks({{Si, -(Si * B * Di)}, {-(Di * C * Si), Di + Di * C * Si * B * Di}});
            break;
        }
        case SchurClass::III: {
            const Mat Bi = inverse_or_fail(B, "B");
            f.schur = C - D * Bi * T;
            const Mat Si = inverse_or_fail(f.schur, "C - D B^-1 T");
            f.U_inv = Mat::from_blocks({{-(Si * D * Bi), Si}, {Bi + Bi * T * Si * D * Bi, -(Bi * T * Si)}});
            break;
        }
        case SchurClass::IV: {
            const Mat Ci = inverse_or_fail(C, "C");
            f.schur = B - T * Ci * D;
            const Mat Si = inverse_or_fail(f.schur, "B - T C^-1 D");
            f.U_inv = Mat::from_blocks({{-(Ci * D * Si), Ci + Ci * D * Si * T * Ci}, {Si, -(Si * T * Ci)}});
            break;
        }
    }
    if (!(f.U * f.U_inv == Mat::identity(2 * d)))
        throw Error("schur_build: closed-form inverse for class " + to_string(cls) + " is wrong");
    return f;
}

Report schur_verify(const SchurFamily& f) {
    Report r("schur");
    verify_inverse(r, f.U, f.U_inv, "schur (" + to_string(f.schur_class) + "): ");
    return r;
}

Mat schur_class_i_top_left_uncorrected(const Mat& T, const Mat& B, const Mat& C, const Mat& D) {
    const Mat Ti = inverse_or_fail(T, "T");
    const Mat Si = inverse_or_fail(D - C * Ti * B, "D - C T^-1 B");
    return Ti + Ti * B * Si;
}

std::string to_string(SimilarityVerdict v) {
    return v == SimilarityVerdict::NotSimilar ? "not_similar" : "inconclusive";
}

NonsimilarPair nonsimilar_pair(const Mat& T) {
    require_square(T);
    const std::size_t d = T.rows();
    const Mat I = Mat::identity(d);
    const HalmosDilation h = halmos_build(T);
    NonsimilarPair p;
    p.T = T;
    p.A1 = Mat::from_blocks({{T, T - I}, {T + I, T}});
    p.A1_inv = Mat::from_blocks({{T, I - T}, {-(T + I), T}});
    p.A2 = h.U;
    p.A2_inv = h.U_inv;
    p.trace_A1 = trace(p.A1);
    p.trace_A2 = trace(p.A2);
    p.verdict = p.trace_A1 != p.trace_A2 ? SimilarityVerdict::NotSimilar : SimilarityVerdict::Inconclusive;
    return p;
}

Report nonsimilar_verify(const NonsimilarPair& p) {
    Report r("nonsimilar");
    verify_inverse(r, p.A1, p.A1_inv, "nonsimilar: A1 ");
    verify_inverse(r, p.A2, p.A2_inv, "nonsimilar: A2 ");
    const std::size_t d = p.T.rows();
    r.expect(p.A1.block(0, 0, d, d) == p.T && p.A2.block(0, 0, d, d) == p.T,
             "nonsimilar: both top-left blocks = T", "", [&] { return json{{"T", to_json(p.T)}}; });
    const Rat tT = trace(p.T);
    r.expect(p.trace_A1 == Rat(2) * tT && p.trace_A2 == tT, "nonsimilar: trace A1 = 2 trace T, trace A2 = trace T",
             "", [&] {
                 return json{{"T", to_json(p.T)}, {"trace_A1", to_json(p.trace_A1)}, {"trace_A2", to_json(p.trace_A2)}};
             });
    const json witness = {{"T", to_json(p.T)},
                          {"trace_T", to_json(tT)},
                          {"trace_A1", to_json(p.trace_A1)},
                          {"trace_A2", to_json(p.trace_A2)}};
    if (p.verdict == SimilarityVerdict::NotSimilar) {
        // Equal traces would contradict the verdict.
        r.expect(p.trace_A1 != p.trace_A2, "nonsimilar: trace witness separates A1 and A2", "",
                 [&] { return witness; });
    } else {
        r.record("nonsimilar: trace witness separates A1 and A2", Status::Inconclusive, "", witness);
        r.add_note("trace T = 0: the trace does not separate A1 and A2");
    }
    return r;
}

NDilation ndilation_build(const Mat& T, std::size_t N) {
    require_square(T);
    if (N == 0) throw InvalidArgument("ndilation_build: N must be at least 1");
    const std::size_t d = T.rows();
    const std::size_t blocks = N + 1;
    const Mat I = Mat::identity(d), Z = Mat::zero(d, d);
    std::vector<std::vector<Mat>> u(blocks, std::vector<Mat>(blocks, Z));
    std::vector<std::vector<Mat>> v(blocks, std::vector<Mat>(blocks, Z));
    u[0][0] = T;
    u[0][N] = I;
    for (std::size_t k = 1; k <= N; ++k) u[k][k - 1] = I;
    for (std::size_t k = 0; k < N; ++k) v[k][k + 1] = I;
    v[N][0] = I;
    v[N][1] = v[N][1] - T;
    NDilation nd{T, N, Mat::from_blocks(u), Mat::from_blocks(v)};
    const Mat Id = Mat::identity(blocks * d);
    if (!(nd.U * nd.U_inv == Id) || !(nd.U_inv * nd.U == Id)) throw Error("ndilation_build: inverse is wrong");
    return nd;
}

Report ndilation_verify(const NDilation& nd, const std::vector<Vec>& probes, std::size_t k_max) {
    if (k_max < nd.N + 1)
        throw InvalidArgument("ndilation_verify: k_max " + std::to_string(k_max) + " is below N + 1 = " +
                              std::to_string(nd.N + 1));
    Report r("ndilation");
    const std::size_t d = nd.T.rows();
    const std::string bound = "k<=" + std::to_string(k_max) + ", probes=" + std::to_string(probes.size());
    verify_inverse(r, nd.U, nd.U_inv, "ndilation: ");
    if (probes.empty()) r.add_note("no probes supplied; dilation equation checks are vacuous");

    bool breaks_beyond_n = false;
    for (const Vec& x : probes) {
        if (x.size() != d) throw DimensionMismatch("ndilation_verify: probe length differs from dim");
        Vec stacked(nd.U.rows());
        std::copy(x.begin(), x.end(), stacked.begin());
        Vec expected = x;
        for (std::size_t k = 1; k <= k_max; ++k) {
            stacked = nd.U * stacked;
            expected = nd.T * expected;
            const Vec first(stacked.begin(), stacked.begin() + d);
            const bool ok = first == expected;
            const bool required = k <= nd.N;
            if (k == nd.N + 1 && !ok) breaks_beyond_n = true;
            r.expect(ok,
                     required ? "ndilation: first block of U^k (x,0,...,0) = T^k x for k <= N"
                              : "ndilation: first block of U^k (x,0,...,0) = T^k x for k > N [observation]",
                     bound,
                     [&] {
                         return json{{"T", to_json(nd.T)}, {"N", nd.N},        {"k", k},
                                     {"probe", to_json(x)}, {"expected", to_json(expected)},
                                     {"actual", to_json(first)}};
                     },
                     required);
        }
    }
    if (!probes.empty()) {
        r.expect(breaks_beyond_n, "ndilation: equation fails at k = N+1 on some probe", bound,
                 [&] { return json{{"T", to_json(nd.T)}, {"N", nd.N}, {"observation", "holds at k = N+1 on all probes"}}; },
                 false);
    }
    return r;
}

}  // namespace dilatekit
