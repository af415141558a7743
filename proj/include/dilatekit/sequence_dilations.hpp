#pragma once

#include <cstddef>
#include <vector>

#include "dilatekit/finsupp.hpp"
#include "dilatekit/matrix.hpp"
#include "dilatekit/report.hpp"
#include "dilatekit/seqop.hpp"

namespace dilatekit {

/// Probe inputs for bounded verification: plain columns of V and elements
/// of the dilation space W.
struct ProbeSet {
    std::vector<Vec> base;
    std::vector<FsVec> space;
};

/// Bilateral dilation on the finitely supported Z-indexed sequences.
/// Fields are public so a caller can swap in a modified operator.
struct SchafferDilation {
    Mat T;
    SeqOp U;
    SeqOp U_inv;
    SeqOp P;
    SeqOp I;

    DilationQuadruple quadruple() const;
};

SchafferDilation schaffer_build(const Mat& T);
/// (a) U and U_inv are two-sided inverses on probes.space;
/// (b) coordinate 0 of U^n I x equals T^n x for 1 <= n <= n_max on probes.base.
Report schaffer_verify(const SchafferDilation& sd, const ProbeSet& probes, std::size_t n_max);

/// Minimal injective dilation on one-sided sequences:
/// I x = (x, 0, ...), U = right shift, P (x_n) = e_0 (x) sum T^n x_n.
struct StandardDilation {
    Mat T;
    DilationQuadruple quadruple;
};

StandardDilation standard_build(const Mat& T);
Report standard_verify(const StandardDilation& sd, const ProbeSet& probes, std::size_t n_max);
/// Certifies e_n (x) e_i = U^n I e_i for every n <= n_max and i < d.
Report standard_minimality_check(const StandardDilation& sd, std::size_t n_max);

/// Grid dilation of a commuting pair: U moves rows down, V moves columns
/// right, P (x_{n,m}) = e_(0,0) (x) sum T^n S^m x_{n,m}.
struct AndoVariant {
    Mat T;
    Mat S;
    SeqOp I;
    SeqOp U;
    SeqOp V;
    SeqOp P;

    DilationQuadruple quadruple() const;
};

/// Throws NonCommuting (witness T S - S T) unless T S = S T exactly.
AndoVariant ando_build(const Mat& T, const Mat& S);
Report ando_verify(const AndoVariant& av, const ProbeSet& probes, std::size_t n_max, std::size_t m_max);

}  // namespace dilatekit
