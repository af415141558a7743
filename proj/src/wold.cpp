#include "dilatekit/wold.hpp"

#include "dilatekit/errors.hpp"
#include "dilatekit/serialize.hpp"

namespace dilatekit {

using nlohmann::json;

namespace {

json basis_json(const std::vector<Vec>& basis) {
    json a = json::array();
    for (const auto& v : basis) a.push_back(to_json(v));
    return a;
}

std::vector<Vec> image_of(const Mat& T, const std::vector<Vec>& basis) {
    std::vector<Vec> out;
    out.reserve(basis.size());
    for (const auto& b : basis) out.push_back(T * b);
    return out;
}

std::vector<Vec> concat(std::vector<Vec> a, const std::vector<Vec>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

}  // namespace

std::string to_string(WoldMode m) { return m == WoldMode::Strict ? "strict" : "extended"; }

WoldMode parse_wold_mode(const std::string& s) {
    if (s == "strict") return WoldMode::Strict;
    if (s == "extended") return WoldMode::Extended;
    throw InvalidArgument("unknown Wold mode \"" + s + "\" (expected strict or extended)");
}

EventualImage eventual_image(const Mat& T) {
    if (!T.is_square()) throw DimensionMismatch("eventual_image: T must be square");
    const std::size_t d = T.rows();
    std::vector<Vec> current = canonical_basis(Mat::identity(d).columns(), d);
    std::size_t k = 0;
    while (true) {
        std::vector<Vec> next = canonical_basis(image_of(T, current), d);
        if (next.size() == current.size()) return {std::move(current), k};
        current = std::move(next);
        ++k;
    }
}

WoldDecomposition wold_decompose(const Mat& T, WoldMode mode) {
    if (!T.is_square()) throw DimensionMismatch("wold_decompose: T must be square");
    const std::size_t d = T.rows();
    if (mode == WoldMode::Strict) {
        const auto ik = rref_image_kernel(T);
        if (!ik.kernel.empty())
            throw NotInjective("T has a nontrivial kernel",
                               json{{"T", to_json(T)}, {"kernel_vector", to_json(ik.kernel.front())}});
    }
    EventualImage ei = eventual_image(T);

    std::vector<Vec> complement;
    std::vector<Vec> spanned = ei.basis;
    for (std::size_t i = 0; i < d && spanned.size() < d; ++i) {
        Vec e = unit_vec(d, i);
        spanned.push_back(e);
        if (span_rank(spanned, d) == spanned.size())
            complement.push_back(std::move(e));
        else
            spanned.pop_back();
    }

    WoldDecomposition w{T, std::move(ei.basis), std::move(complement), ei.stabilization_index, mode, Report()};
    w.certificates = verify_wold(w);
    return w;
}

Report verify_wold(const WoldDecomposition& w) {
    Report r("wold");
    const Mat& T = w.T;
    const std::size_t d = T.rows();
    const bool strict = w.mode == WoldMode::Strict;
    if (!strict) r.add_note("extended mode: T need not be injective");

    const auto all = concat(w.Vb_basis, w.Vs_basis);
    const std::size_t total_rank = span_rank(all, d);
    r.expect(total_rank == d && all.size() == d, "wold: V_b (+) V_s = V (combined rank = d)", "", [&] {
        return json{{"T", to_json(T)}, {"rank", total_rank}, {"vectors", all.size()}, {"dim", d},
                    {"Vb", basis_json(w.Vb_basis)}, {"Vs", basis_json(w.Vs_basis)}};
    });

    const auto TVb = image_of(T, w.Vb_basis);
    for (std::size_t k = 0; k < TVb.size(); ++k) {
        r.expect(span_contains(w.Vb_basis, TVb[k], d), "wold: T(V_b) within V_b", "", [&] {
            return json{{"T", to_json(T)}, {"basis_vector", to_json(w.Vb_basis[k])}, {"image", to_json(TVb[k])}};
        });
    }

    const std::size_t image_rank = span_rank(TVb, d);
    const std::size_t vb_rank = span_rank(w.Vb_basis, d);
    r.expect(image_rank == vb_rank, "wold: T restricted to V_b is bijective", "", [&] {
        return json{{"T", to_json(T)}, {"dim_Vb", vb_rank}, {"rank_T_on_Vb", image_rank}};
    }, strict);

    const EventualImage ei = eventual_image(T);
    const bool same = canonical_basis(w.Vb_basis, d) == ei.basis;
    r.expect(same, "wold: V_b = eventual image of T", "", [&] {
        return json{{"T", to_json(T)}, {"Vb", basis_json(w.Vb_basis)}, {"eventual_image", basis_json(ei.basis)}};
    });

    const std::size_t meet_rank = span_rank(concat(w.Vs_basis, ei.basis), d);
    const std::size_t vs_rank = span_rank(w.Vs_basis, d);
    r.expect(meet_rank == vs_rank + ei.basis.size(), "wold: span(V_s) meets eventual image only in 0 (shift)", "",
             [&] {
                 return json{{"T", to_json(T)},
                             {"Vs", basis_json(w.Vs_basis)},
                             {"eventual_image", basis_json(ei.basis)},
                             {"rank_union", meet_rank}};
             });

    r.expect(w.stabilization_index <= d, "wold: stabilization index <= dim", "", [&] {
        return json{{"T", to_json(T)}, {"stabilization_index", w.stabilization_index}, {"dim", d}};
    });
    return r;
}

}  // namespace dilatekit
