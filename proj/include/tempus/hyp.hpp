#pragma once

#include <complex>

#include "tempus/errors.hpp"

namespace tempus {

using cplx = std::complex<double>;

struct HypOptions {
    double rel_tol = 1e-12; // series termination: |term| below rel_tol * |sum|
    int max_terms = 10000;
    double err_guard = 1e-5; // NonConvergent if estimated relative error exceeds this
    // Apply the Kummer transformation 1F1(a;b;z) = e^z 1F1(b-a;b;-z) when
    // Re z < 0. Disable to force raw series evaluation on both sides of the
    // transformation identity when testing it (otherwise the identity is a
    // code no-op).
    bool use_kummer = true;
};

struct HypResult {
    cplx value;
    int terms = 0;      // number of series terms summed
    double err_est = 0; // estimated absolute error (roundoff + truncation)
};

// Maclaurin summation in double-double arithmetic. Raises InvalidParam for
// non-positive-integer denominator parameters, NonConvergent when the term cap
// is hit or cancellation exceeds the accuracy guard.
HypResult hyp_1f1_ex(cplx a, cplx b, cplx z, const HypOptions& opt = {});
HypResult hyp_2f2_ex(cplx a1, cplx a2, cplx b1, cplx b2, cplx z,
                     const HypOptions& opt = {});

cplx hyp_1f1(cplx a, cplx b, cplx z, const HypOptions& opt = {});
cplx hyp_2f2(cplx a1, cplx a2, cplx b1, cplx b2, cplx z,
             const HypOptions& opt = {});

} // namespace tempus
