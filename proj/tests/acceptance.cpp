// Acceptance gate: one line per criterion, exact equality throughout.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "dilatekit/errors.hpp"
#include "dilatekit/finite_dilations.hpp"
#include "dilatekit/harness.hpp"
#include "dilatekit/intertwine.hpp"
#include "dilatekit/sequence_dilations.hpp"
#include "dilatekit/wold.hpp"
#include "support.hpp"

using namespace dilatekit;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) detail = what;
        ok = ok && cond;
    }
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

/// Every named identity is present with at least `min_count` passing
/// instances and no failures.
void require_identities(Outcome& o, const Report& r, const std::vector<std::string>& names, std::size_t min_count) {
    o.require(r.passed(), r.suite() + " report has a failing required check");
    for (const auto& name : names) {
        const Check* c = r.find(name);
        o.require(c != nullptr, "missing check: " + name);
        if (!c) continue;
        o.require(c->failed == 0, "failures in: " + name);
        o.require(c->passed >= min_count,
                  name + ": only " + std::to_string(c->passed) + " passing instances");
    }
}

Report suite_report(SuiteKind kind, SuiteConfig cfg) {
    cfg.suites = {kind};
    return run_suites(cfg).at(0);
}

Outcome halmos() {
    const auto t0 = Clock::now();
    Outcome o;
    SuiteConfig cfg;
    cfg.dim_max = 5;
    for (std::size_t counter = 0; counter < 200; ++counter) {
        const Mat T = generate_instance(cfg, SuiteKind::Halmos, counter).mat("T");
        const std::size_t d = T.rows();
        const HalmosDilation h = halmos_build(T);
        o.require(h.U_inv == Mat::from_blocks({{Mat(d, d), Mat::identity(d)}, {Mat::identity(d), -T}}),
                  "closed form differs from [[0,I],[I,-T]]");
        o.require(h.U * h.U_inv == Mat::identity(2 * d), "U U_inv != I");
        o.require(oracle::inverse(h.U) == h.U_inv, "closed form differs from the oracle inverse");
        o.require(halmos_verify(h).passed(), "halmos_verify failed");
    }
    const double s = seconds_since(t0);
    o.require(s < 5.0, "runtime " + std::to_string(s) + " s");
    return o;
}

Outcome schur() {
    Outcome o;
    SuiteConfig cfg;
    for (int cls = 0; cls < 4; ++cls) {
        for (std::size_t k = 0; k < 100; ++k) {
            const Instance inst = generate_schur_instance(cfg, static_cast<SchurClass>(cls), 1000 * cls + k);
            const SchurFamily f = schur_build(static_cast<SchurClass>(cls), inst.mat("T"), inst.mat("B"),
                                              inst.mat("C"), inst.mat("D"));
            o.require(f.U_inv == mat_inverse(f.U), "closed form != mat_inverse(U), class " + to_string(f.schur_class));
            o.require(oracle::inverse(f.U) == f.U_inv, "closed form != oracle inverse, class " + to_string(f.schur_class));
        }
    }
    const Mat T{{2}}, B{{1}}, C{{1}}, D{{1}};
    const SchurFamily f = schur_build(SchurClass::I, T, B, C, D);
    o.require(f.U_inv(0, 0) == Rat(1), "class (i) corrected top-left entry is not 1");
    o.require(schur_class_i_top_left_uncorrected(T, B, C, D) == Mat{{Rat::parse("3/2")}},
              "uncorrected class (i) entry is not 3/2");
    o.require(f.U_inv == Mat{{1, -1}, {-1, 2}}, "class (i) inverse of [[2,1],[1,1]] is wrong");
    return o;
}

Outcome nonsimilar() {
    Outcome o;
    SuiteConfig cfg;
    for (std::size_t k = 0; k < 100; ++k) {
        const Mat T = generate_instance(cfg, SuiteKind::Nonsimilar, k).mat("T");
        const NonsimilarPair p = nonsimilar_pair(T);
        o.require(!trace(T).is_zero(), "generated T has zero trace");
        o.require(p.verdict == SimilarityVerdict::NotSimilar, "verdict is not NotSimilar");
        o.require(p.trace_A1 == Rat(2) * trace(T) && p.trace_A2 == trace(T) && p.trace_A1 != p.trace_A2,
                  "trace relation fails");
    }
    o.require(nonsimilar_pair(Mat{{0, 1}, {0, 0}}).verdict == SimilarityVerdict::Inconclusive,
              "nilpotent block is not Inconclusive");
    return o;
}

Outcome ndilation() {
    Outcome o;
    for (std::size_t N = 1; N <= 5; ++N) {
        const NDilation nd = ndilation_build(Mat{{2}}, N);
        Vec y(N + 1);
        y[0] = 1;
        Rat power = 1;
        for (std::size_t k = 1; k <= N + 1; ++k) {
            y = nd.U * y;
            power = power * Rat(2);
            if (k <= N)
                o.require(y[0] == power, "T=[2], N=" + std::to_string(N) + ": mismatch at k=" + std::to_string(k));
            else
                o.require(y[0] != power, "T=[2], N=" + std::to_string(N) + ": no break at k=N+1");
            if (N == 2 && k == 3) o.require(y[0] == Rat(9) && power == Rat(8), "N=2, k=3 is not 9 vs 8");
        }
    }
    SuiteConfig cfg;
    cfg.dim_max = 4;
    cfg.nd_max = 4;
    for (std::size_t k = 0; k < 100; ++k) {
        const Instance inst = generate_instance(cfg, SuiteKind::NDilation, k);
        const auto N = static_cast<std::size_t>(inst.param("N", 0));
        const NDilation nd = ndilation_build(inst.mat("T"), N);
        const std::size_t d = nd.T.rows();
        o.require(N >= 1 && N <= 4 && d <= 4, "instance outside d <= 4, N <= 4");
        o.require(nd.U * nd.U_inv == Mat::identity(d * (N + 1)), "U U_inv != I");
        const auto Tq = oracle::to_q(nd.T), Uq = oracle::to_q(nd.U);
        for (const Vec& x : inst.probes.base) {
            oracle::QVec tx = oracle::to_q(x), ux(d * (N + 1));
            std::copy(tx.begin(), tx.end(), ux.begin());
            for (std::size_t j = 1; j <= N; ++j) {
                tx = oracle::mul(Tq, tx);
                ux = oracle::mul(Uq, ux);
                o.require(oracle::QVec(ux.begin(), ux.begin() + static_cast<std::ptrdiff_t>(d)) == tx,
                          "first block differs from T^k x for k <= N");
            }
        }
        const Report r = ndilation_verify(nd, inst.probes.base, N + 1);
        o.require(r.passed(), "ndilation_verify failed");
    }
    return o;
}

Outcome schaffer() {
    Outcome o;
    SuiteConfig cfg;
    cfg.trials = 100;
    cfg.dim_max = 4;
    cfg.n_max = 12;
    cfg.probes = 20;
    const Report r = suite_report(SuiteKind::Schaffer, cfg);
    require_identities(o, r, {"schaffer: P U^n I x = I T^n x", "schaffer: U U_inv x = x", "schaffer: U_inv U x = x"},
                       100 * 20);
    return o;
}

Outcome standard() {
    Outcome o;
    SuiteConfig cfg;
    cfg.trials = 100;
    cfg.n_max = 12;
    const Report r = suite_report(SuiteKind::Standard, cfg);
    require_identities(o, r,
                       {"standard: P P x = P x", "standard: support(P x) within the base coordinate",
                        "standard: P I x = I x", "standard: P U^n I x = I T^n x",
                        "standard: e_n (x) e_i = U^n I e_i", "standard: I injective (rank of I e_i = d)"},
                       100);
    return o;
}

Outcome wold() {
    Outcome o;
    SuiteConfig cfg;
    cfg.trials = 100;
    cfg.dim_max = 6;
    const Report r = suite_report(SuiteKind::Wold, cfg);
    require_identities(o, r,
                       {"wold: V_b (+) V_s = V (combined rank = d)", "wold: V_b = eventual image of T",
                        "wold: span(V_s) meets eventual image only in 0 (shift)", "wold: stabilization index <= dim"},
                       100);
    const Check* inv = r.find("wold: T(V_b) within V_b");
    o.require(inv && inv->failed == 0 && inv->passed > 0, "T-invariance of V_b not established");
    const Check* strict_inj = r.find("wold (strict): injective T gives V_s = {0}");
    const Check* strict_non = r.find("wold (strict): non-injective T rejected with kernel witness");
    o.require(strict_inj && strict_inj->failed == 0 && strict_inj->passed > 0, "strict mode on injective T");
    o.require(strict_non && strict_non->failed == 0 && strict_non->passed > 0, "strict mode on non-injective T");

    for (std::size_t d = 1; d <= 6; ++d) {
        Mat J(d, d);
        for (std::size_t i = 0; i + 1 < d; ++i) J(i, i + 1) = 1;
        const WoldDecomposition w = wold_decompose(J, WoldMode::Extended);
        o.require(w.Vb_basis.empty() && w.stabilization_index == d, "nilpotent Jordan block of size " + std::to_string(d));
        o.require(w.certificates.passed(), "nilpotent Jordan certificates");
    }
    try {
        (void)wold_decompose(Mat{{0, 1}, {0, 0}}, WoldMode::Strict);
        o.require(false, "strict mode accepted [[0,1],[0,0]]");
    } catch (const NotInjective&) {
    }
    return o;
}

Outcome intertwine() {
    Outcome o;
    SuiteConfig cfg;
    cfg.trials = 100;
    const Report r = suite_report(SuiteKind::Intertwine, cfg);
    require_identities(o, r,
                       {"intertwine: U1 R = R U2", "intertwine: R P2 = P1 R", "intertwine: R I2 = I1 S",
                        "intertwine: extract(lift(S)) = S",
                        "intertwine: corrupted R fails bounded certification with reproducible witness"},
                       100);
    return o;
}

Outcome ando() {
    Outcome o;
    SuiteConfig cfg;
    cfg.trials = 100;
    cfg.n_max = 8;
    cfg.m_max = 8;
    const Report r = suite_report(SuiteKind::Ando, cfg);
    require_identities(o, r,
                       {"ando: P U^n V^m I x = I T^n S^m x", "ando: P U^n I x = I T^n x", "ando: P V^m I x = I S^m x",
                        "ando: V U x = U V x", "ando: zero column prepended to U x = zero row prepended to V x"},
                       100);
    return o;
}

Outcome determinism() {
    Outcome o;
    const SuiteConfig cfg;
    const auto t0 = Clock::now();
    const auto first = run_suites(cfg);
    const double s = seconds_since(t0);
    const auto second = run_suites(cfg, 1);
    o.require(reports_to_json(first).dump(2) == reports_to_json(second).dump(2), "reports differ between runs");
    o.require(all_passed(first), "default suite has failures");
    o.require(s < 60.0, "default suite took " + std::to_string(s) + " s");
    std::printf("      default suite: %.2f s\n", s);
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"1 halmos dilation and dense-inverse oracle", halmos},
        {"2 schur families and class (i) correction", schur},
        {"3 non-similarity trace witness", nonsimilar},
        {"4 N-dilation up to N and break at N+1", ndilation},
        {"5 schaffer bilateral dilation", schaffer},
        {"6 standard dilation and minimality", standard},
        {"7 wold decomposition", wold},
        {"8 intertwining lift and extraction", intertwine},
        {"9 ando variant for commuting pairs", ando},
        {"10 determinism and default-suite budget", determinism},
    };
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::printf("%s  [%s]%s%s\n", o.ok ? "PASS" : "FAIL", name.c_str(), o.ok ? "" : "  ", o.detail.c_str());
        std::fflush(stdout);
        if (!o.ok) ++failures;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
