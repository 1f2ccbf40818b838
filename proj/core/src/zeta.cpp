#include "scratchoff/zeta.hpp"

#include <cmath>

#include "scratchoff/errors.hpp"

namespace scratchoff {

namespace {

constexpr double kLogSqrt2Pi = 0.918938533204672741780329736406;

// stirlerr(n) = ln(n!) - ln(sqrt(2*pi*n) * (n/e)^n), the Stirling remainder.
// Exact table for small n, asymptotic series beyond it.
double stirlerr(double n) {
    static const double kExact[16] = {
        0.0,
        0.0810614667953272582196703,
        0.0413406959554092940938221,
        0.0276779256849983391487893,
        0.0207906721037650931115228,
        0.0166446911898211921631949,
        0.0138761288230707479987457,
        0.0118967099458917700950557,
        0.0104112652619720964974786,
        0.0092554621827127329177286,
        0.0083305634333628712564693,
        0.0075736754879518407949720,
        0.0069428401072095298656642,
        0.0064089941880042070684396,
        0.0059513701127588477356244,
        0.0055547335519628013710387,
    };
    constexpr double S0 = 1.0 / 12.0;
    constexpr double S1 = 1.0 / 360.0;
    constexpr double S2 = 1.0 / 1260.0;
    constexpr double S3 = 1.0 / 1680.0;
    constexpr double S4 = 1.0 / 1188.0;

    if (n < 16) return kExact[static_cast<int>(n)];
    const double nn = n * n;
    if (n > 500) return (S0 - S1 / nn) / n;
    if (n > 80) return (S0 - (S1 - S2 / nn) / nn) / n;
    if (n > 35) return (S0 - (S1 - (S2 - S3 / nn) / nn) / nn) / n;
    return (S0 - (S1 - (S2 - (S3 - S4 / nn) / nn) / nn) / nn) / n;
}

// bd0(x, np) = x*ln(x/np) + np - x, evaluated by series when x ~ np so the
// cancellation between the two terms never surfaces.
double bd0(double x, double np) {
    if (std::fabs(x - np) < 0.1 * (x + np)) {
        const double v = (x - np) / (x + np);
        double s = (x - np) * v;
        double ej = 2 * x * v;
        const double v2 = v * v;
        for (int j = 1;; ++j) {
            ej *= v2;
            const double s1 = s + ej / (2 * j + 1);
            if (s1 == s) return s1;
            s = s1;
        }
    }
    return x * std::log(x / np) + np - x;
}

} // namespace

double binom_pmf(uint64_t x, uint64_t t, double p) {
    const double n = static_cast<double>(t);
    const double k = static_cast<double>(x);
    if (p <= 0.0) return x == 0 ? 1.0 : 0.0;
    if (p >= 1.0) return x == t ? 1.0 : 0.0;
    if (x == 0) return std::exp(n * std::log1p(-p));
    if (x == t) return std::exp(n * std::log(p));
    const double lc = stirlerr(n) - stirlerr(k) - stirlerr(n - k) -
                      bd0(k, n * p) - bd0(n - k, n * (1.0 - p));
    const double lf = kLogSqrt2Pi + 0.5 * std::log(k * (n - k) / n);
    return std::exp(lc - lf);
}

double zeta(uint64_t l, uint64_t t, double d) {
    if (d < 0.0 || std::isnan(d)) throw InvalidParameter("zeta: d must be >= 0");
    if (l == 0) return 1.0;
    if (l > t) return 0.0;

    const double p = std::exp2(-d);
    if (p >= 1.0) return 1.0; // d == 0: every attempt wins and l <= t
    if (p <= 0.0) return 0.0; // difficulty beyond double range

    // Sum whichever side has fewer terms; Kahan compensation keeps the
    // accumulation error near machine epsilon even for ~5e5 terms.
    const uint64_t lower_terms = l;
    const uint64_t upper_terms = t - l + 1;

    double sum = 0.0, carry = 0.0;
    auto add = [&](double term) {
        const double y = term - carry;
        const double s = sum + y;
        carry = (s - sum) - y;
        sum = s;
    };

    if (lower_terms <= upper_terms) {
        for (uint64_t i = 0; i < l; ++i) add(binom_pmf(i, t, p));
        const double v = 1.0 - sum;
        return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
    }
    for (uint64_t i = l; i <= t; ++i) add(binom_pmf(i, t, p));
    return sum > 1.0 ? 1.0 : sum;
}

double zeta_paper_literal(uint64_t l, double t, double d) {
    if (l != 1) throw UnsupportedOrder("zeta_paper_literal expands l = 1 only");
    if (t < 0.0 || d < 0.0) throw InvalidParameter("zeta_paper_literal: t, d must be >= 0");
    const double p = std::exp2(-d);
    if (t == 0.0) return 0.0;
    return t * p * std::exp((t - 1.0) * std::log1p(-p));
}

} // namespace scratchoff
