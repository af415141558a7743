#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dilatekit/matrix.hpp"
#include "dilatekit/report.hpp"

namespace dilatekit {

/// Strict mode requires T injective. Extended mode accepts any T.
enum class WoldMode { Strict, Extended };

std::string to_string(WoldMode m);
WoldMode parse_wold_mode(const std::string& s);

struct EventualImage {
    std::vector<Vec> basis;  ///< canonical reduced echelon basis
    std::size_t stabilization_index;
};

/// im(T^k) for the least k with dim im(T^k) = dim im(T^{k+1}). In finite
/// dimension this is the intersection of all im(T^n), and k <= dim.
EventualImage eventual_image(const Mat& T);

/// V = V_b (+) V_s with V_b the eventual image and V_s its greedy
/// complement from the standard basis.
struct WoldDecomposition {
    Mat T;
    std::vector<Vec> Vb_basis;
    std::vector<Vec> Vs_basis;
    std::size_t stabilization_index;
    WoldMode mode;
    Report certificates;
};

/// Throws NotInjective (witness: a kernel vector) in strict mode when T has
/// a nontrivial kernel.
WoldDecomposition wold_decompose(const Mat& T, WoldMode mode);

/// Direct sum, T-invariance of V_b, bijectivity of T on V_b, V_b equal to the
/// eventual image, and span(V_s) meeting the eventual image only in 0.
Report verify_wold(const WoldDecomposition& w);

}  // namespace dilatekit
