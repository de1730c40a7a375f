#include "tempus/hyp.hpp"

#include <array>
#include <cmath>
#include <cstdlib>

#include "tempus/dd.hpp"

namespace tempus {

namespace {

using detail::cdd;
using detail::dd;

constexpr double kEpsDD = 1.3e-32; // ~2^-106, unit roundoff of the accumulator

bool nonpositive_integer(cplx b) {
    return b.imag() == 0.0 && b.real() <= 0.0 &&
           b.real() == std::floor(b.real());
}

// a + m captured exactly: two_sum keeps the rounding remainder, so the
// recurrence factors carry full double-double accuracy even for generic a.
cdd shift_exact(cplx a, int m) {
    return {detail::two_sum(a.real(), static_cast<double>(m)), dd{a.imag()}};
}

template <size_t P>
HypResult sum_series(const std::array<cplx, P>& num,
                     const std::array<cplx, P>& den, cplx z,
                     const HypOptions& opt) {
    for (auto b : den) {
        if (nonpositive_integer(b))
            throw InvalidParam("hypergeometric: denominator parameter is a "
                               "non-positive integer");
    }
    const cdd zdd{z};
    cdd term{dd{1.0}, dd{0.0}};
    cdd sum = term;
    double sum_abs = 1.0; // sum of |term|, conditioning of the summation
    double term_abs = 1.0;
    int m = 0, streak = 0;
    bool converged = false;
    for (; m < opt.max_terms; ++m) {
        cdd f = shift_exact(num[0], m);
        for (size_t j = 1; j < P; ++j) f = detail::mul(f, shift_exact(num[j], m));
        f = detail::mul(f, zdd);
        cdd g = shift_exact(den[0], m);
        for (size_t j = 1; j < P; ++j) g = detail::mul(g, shift_exact(den[j], m));
        g = detail::mul(g, dd{static_cast<double>(m + 1)});
        term = detail::div(detail::mul(term, f), g);
        sum = detail::add(sum, term);
        term_abs = detail::abs_approx(term);
        sum_abs += term_abs;
        double ref = std::max(detail::abs_approx(sum), 1e-300);
        if (term_abs < opt.rel_tol * ref) {
            if (++streak >= 3) {
                converged = true;
                ++m;
                break;
            }
        } else {
            streak = 0;
        }
    }
    if (!converged)
        throw NonConvergent("hypergeometric series: term cap reached before "
                            "tolerance");
    HypResult res;
    res.value = detail::to_complex(sum);
    res.terms = m;
    // roundoff: each term carries O(m * eps_dd) relative error and the sum
    // adds eps_dd per term; truncation: bounded by the termination criterion
    res.err_est = 4.0 * kEpsDD * m * sum_abs +
                  opt.rel_tol * std::abs(res.value) + 3.0 * term_abs;
    double scale = std::max(std::abs(res.value), 1e-300);
    if (res.err_est > opt.err_guard * scale)
        throw NonConvergent("hypergeometric series: cancellation exceeds "
                            "accuracy guard (|z| too large)");
    return res;
}

} // namespace

HypResult hyp_1f1_ex(cplx a, cplx b, cplx z, const HypOptions& opt) {
    if (nonpositive_integer(b))
        throw InvalidParam("hyp_1f1: b is a non-positive integer");
    if (opt.use_kummer && z.real() < 0.0) {
        HypOptions raw = opt;
        raw.use_kummer = false;
        HypResult r = hyp_1f1_ex(b - a, b, -z, raw);
        cplx ez = std::exp(z); // |e^z| < 1 here, error does not inflate
        r.value *= ez;
        r.err_est *= std::abs(ez);
        return r;
    }
    return sum_series<1>({a}, {b}, z, opt);
}

HypResult hyp_2f2_ex(cplx a1, cplx a2, cplx b1, cplx b2, cplx z,
                     const HypOptions& opt) {
    return sum_series<2>({a1, a2}, {b1, b2}, z, opt);
}

cplx hyp_1f1(cplx a, cplx b, cplx z, const HypOptions& opt) {
    return hyp_1f1_ex(a, b, z, opt).value;
}

cplx hyp_2f2(cplx a1, cplx a2, cplx b1, cplx b2, cplx z,
             const HypOptions& opt) {
    return hyp_2f2_ex(a1, a2, b1, b2, z, opt).value;
}

} // namespace tempus
