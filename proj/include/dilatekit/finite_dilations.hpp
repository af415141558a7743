#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dilatekit/matrix.hpp"
#include "dilatekit/report.hpp"

namespace dilatekit {

/// U = [[T, I], [I, 0]] on V (+) V with inverse [[0, I], [I, -T]].
struct HalmosDilation {
    Mat T;
    Mat U;
    Mat U_inv;
};

/// Throws DimensionMismatch for non-square T.
HalmosDilation halmos_build(const Mat& T);
/// Closed-form inverse against U, and against the Gauss-Jordan inverse.
Report halmos_verify(const HalmosDilation& h);

/// Which block of U = [[T, B], [C, D]] is inverted first:
/// (i) T, (ii) D, (iii) B, (iv) C.
enum class SchurClass { I, II, III, IV };

std::string to_string(SchurClass c);
/// Accepts "i", "ii", "iii", "iv" (any case). Throws InvalidArgument.
SchurClass parse_schur_class(const std::string& s);

struct SchurFamily {
    SchurClass schur_class;
    Mat T, B, C, D;
    /// (i) D - C T^-1 B, (ii) T - B D^-1 C, (iii) C - D B^-1 T, (iv) B - T C^-1 D.
    Mat schur;
    Mat U;
    Mat U_inv;
};

/// Assembles U and its closed-form block inverse. Throws PreconditionFailed
/// naming the singular block ("T", "D", "B", "C") or Schur complement.
SchurFamily schur_build(SchurClass cls, const Mat& T, const Mat& B, const Mat& C, const Mat& D);
Report schur_verify(const SchurFamily& f);

/// T^-1 + T^-1 B s^-1, the class (i) top-left block without the trailing
/// C T^-1. Not the inverse block in general; used to show the difference.
Mat schur_class_i_top_left_uncorrected(const Mat& T, const Mat& B, const Mat& C, const Mat& D);

enum class SimilarityVerdict { NotSimilar, Inconclusive };

std::string to_string(SimilarityVerdict v);

/// Two Halmos dilations of T: A1 = [[T, T - I], [T + I, T]] and
/// A2 = [[T, I], [I, 0]]. Both blocks of A1 commute, so its inverse is
/// [[T, I - T], [-(T + I), T]]. The trace separates them unless trace T = 0.
struct NonsimilarPair {
    Mat T;
    Mat A1, A1_inv;
    Mat A2, A2_inv;
    Rat trace_A1;
    Rat trace_A2;
    SimilarityVerdict verdict;
};

NonsimilarPair nonsimilar_pair(const Mat& T);
Report nonsimilar_verify(const NonsimilarPair& p);

/// (N+1) x (N+1) block operator: T at (0,0), I at (0,N), I on the block
/// subdiagonal. Its inverse has I on the superdiagonal, I at (N,0) and -T at (N,1).
struct NDilation {
    Mat T;
    std::size_t N;
    Mat U;
    Mat U_inv;
};

/// Throws InvalidArgument for N == 0 and DimensionMismatch for non-square T.
NDilation ndilation_build(const Mat& T, std::size_t N);

/// Per-k check that the first block of U^k (x, 0, ..., 0) equals T^k x.
/// k <= N is required; N < k <= k_max is recorded as an observation.
/// Throws InvalidArgument when k_max < N + 1.
Report ndilation_verify(const NDilation& nd, const std::vector<Vec>& probes, std::size_t k_max);

}  // namespace dilatekit
