#pragma once

#include <cstddef>
#include <vector>

#include "dilatekit/matrix.hpp"
#include "dilatekit/report.hpp"
#include "dilatekit/seqop.hpp"
#include "dilatekit/sequence_dilations.hpp"

namespace dilatekit {

/// S : V2 -> V1 with T1 S = S T2, together with both standard dilations.
struct IntertwinePair {
    Mat T1;
    Mat T2;
    Mat S;
    StandardDilation dil1;
    StandardDilation dil2;
};

/// Throws NotIntertwining (witness T1 S - S T2) when the relation fails.
IntertwinePair make_intertwine_pair(const Mat& T1, const Mat& T2, const Mat& S);

/// R : W2 -> W1 between the dilation spaces.
struct LiftedOp {
    SeqOp representation;
};

/// (x_n) -> (S x_n).
LiftedOp lift_intertwiner(const IntertwinePair& p);

/// U1 R = R U2 and R P2 = P1 R on probes.space plus the basis probes
/// e_n (x) e_i for n <= n_max; R I2 = I1 S on probes.base plus e_i.
Report verify_lift(const LiftedOp& R, const IntertwinePair& p, const ProbeSet& probes, std::size_t n_max);

struct Extraction {
    Mat S;
    /// Hypotheses and conclusions checked, labelled with the bound.
    Report certificate;
};

/// Recovers S with I1 S y = P1 R I2 y from an R satisfying U1 R = R U2 and
/// R P2 = P1 R. The hypotheses are certified on e_n (x) e_i for
/// n <= cert_bound only. Throws HypothesisFailed with the first failing
/// basis probe, or RangeViolation if P1 R I2 e_i leaves coordinate 0.
Extraction extract_intertwiner(const LiftedOp& R, const StandardDilation& dil1, const StandardDilation& dil2,
                               std::size_t cert_bound);

}  // namespace dilatekit
