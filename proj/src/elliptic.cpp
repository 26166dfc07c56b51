#include "duplexem/elliptic.hpp"

#include <cmath>
#include <limits>

#include "duplexem/types.hpp"

namespace duplexem {

namespace {

struct AgmResult {
    double mean;
    double csum;  // sum_{n>=0} 2^{n-1} c_n^2
};

AgmResult agm_with_sum(double k) {
    double a = 1.0;
    double b = std::sqrt((1.0 - k) * (1.0 + k));
    double c = k;
    double pow2 = 0.5;
    double csum = pow2 * c * c;
    for (int it = 0; it < 64; ++it) {
        // stop at ulp level: iterating on a 1-ulp gap only inflates 2^n c^2
        if (std::abs(a - b) <= 4.0 * std::numeric_limits<double>::epsilon() * a) break;
        const double an = 0.5 * (a + b);
        const double bn = std::sqrt(a * b);
        c = 0.5 * (a - b);
        a = an;
        b = bn;
        pow2 *= 2.0;
        csum += pow2 * c * c;
    }
    return {a, csum};
}

}  // namespace

double elliptic_K(double k) {
    k = std::abs(k);
    if (!(k < 1.0)) throw DomainError("elliptic_K: diverges at k >= 1");
    if (k == 0.0) return kPi / 2.0;
    return kPi / (2.0 * agm_with_sum(k).mean);
}

double elliptic_E(double k) {
    k = std::abs(k);
    if (k > 1.0) throw DomainError("elliptic_E: requires |k| <= 1");
    if (k == 1.0) return 1.0;
    if (k == 0.0) return kPi / 2.0;
    const AgmResult r = agm_with_sum(k);
    return kPi / (2.0 * r.mean) * (1.0 - r.csum);
}

double elliptic_KmE_over_m(double k) {
    const double m = k * k;
    if (m < 0.05) {
        // (K - E)/m = (pi/2) sum_{n>=1} c_n^2 (2n/(2n-1)) m^{n-1}, c_n = (2n-1)!!/(2n)!!
        double cn = 1.0;
        double term_m = 1.0;
        double sum = 0.0;
        for (int n = 1; n < 60; ++n) {
            cn *= (2.0 * n - 1.0) / (2.0 * n);
            const double t = cn * cn * (2.0 * n / (2.0 * n - 1.0)) * term_m;
            sum += t;
            if (t < 1e-18 * sum) break;
            term_m *= m;
        }
        return kPi / 2.0 * sum;
    }
    return (elliptic_K(k) - elliptic_E(k)) / m;
}

}  // namespace duplexem
