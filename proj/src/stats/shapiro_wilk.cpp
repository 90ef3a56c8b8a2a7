#include "stats/shapiro_wilk.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "stats/normal.hpp"

namespace ocam::stats {

namespace {

double poly(const double* coeffs, int order, double x) {
    double r = coeffs[0];
    double xp = 1.0;
    for (int i = 1; i < order; ++i) {
        xp *= x;
        r += coeffs[i] * xp;
    }
    return r;
}

// AS R94 coefficient sets
constexpr double kC1[6] = {0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056};
constexpr double kC2[6] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
constexpr double kC3[4] = {0.5440, -0.39978, 0.025054, -6.714e-4};
constexpr double kC4[4] = {1.3822, -0.77857, 0.062767, -0.0020322};
constexpr double kC5[4] = {-1.5861, -0.31082, -0.083751, 0.0038915};
constexpr double kC6[3] = {-0.4803, -0.082676, 0.0030302};
constexpr double kG[2] = {-2.273, 0.459};

}  // namespace

core::Result<SwResult> shapiro_wilk(std::span<const double> xs) {
    using R = core::Result<SwResult>;
    const std::int64_t n = static_cast<std::int64_t>(xs.size());
    if (n < 3 || n > 5000) {
        return R::failure(core::Errc::out_of_range,
                          "shapiro_wilk: n must be in [3, 5000], got " + std::to_string(n));
    }

    std::vector<double> x(xs.begin(), xs.end());
    std::sort(x.begin(), x.end());
    const double range = x.back() - x.front();
    if (range <= 0.0) {
        return R::failure(core::Errc::undefined_result,
                          "shapiro_wilk: W undefined for a constant sample");
    }

    const std::size_t n2 = x.size() / 2;
    std::vector<double> a(n2);
    const double an = static_cast<double>(n);

    if (n == 3) {
        a[0] = std::sqrt(0.5);
    } else {
        const double an25 = an + 0.25;
        double summ2 = 0.0;
        for (std::size_t i = 0; i < n2; ++i) {
            a[i] = normal_ppf((static_cast<double>(i + 1) - 0.375) / an25);
            summ2 += a[i] * a[i];
        }
        summ2 *= 2.0;
        const double ssumm2 = std::sqrt(summ2);
        const double rsn = 1.0 / std::sqrt(an);
        const double a1 = poly(kC1, 6, rsn) - a[0] / ssumm2;

        std::size_t i1;
        double fac;
        if (n > 5) {
            i1 = 2;
            const double a2 = -a[1] / ssumm2 + poly(kC2, 6, rsn);
            fac = std::sqrt((summ2 - 2.0 * a[0] * a[0] - 2.0 * a[1] * a[1]) /
                            (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
            a[1] = a2;
        } else {
            i1 = 1;
            fac = std::sqrt((summ2 - 2.0 * a[0] * a[0]) / (1.0 - 2.0 * a1 * a1));
        }
        a[0] = a1;
        for (std::size_t i = i1; i < n2; ++i) a[i] = -a[i] / fac;
    }

    // W as a squared correlation between ordered data and the weights
    const std::size_t nn = x.size();
    double sx = 0.0;
    for (std::size_t i = 0; i < nn; ++i) sx += x[i] / range;
    sx /= an;
    double sa = 0.0;
    for (std::size_t i = 0; i < nn; ++i) {
        const std::size_t mirror = nn - 1 - i;
        if (i != mirror) sa += (i < mirror ? -1.0 : 1.0) * a[std::min(i, mirror)];
    }
    sa /= an;

    double ssa = 0.0, ssx = 0.0, sax = 0.0;
    for (std::size_t i = 0; i < nn; ++i) {
        const std::size_t mirror = nn - 1 - i;
        const double ai = i == mirror ? 0.0 : (i < mirror ? -1.0 : 1.0) * a[std::min(i, mirror)];
        const double asa = ai - sa;
        const double xsx = x[i] / range - sx;
        ssa += asa * asa;
        ssx += xsx * xsx;
        sax += asa * xsx;
    }
    const double ssassx = std::sqrt(ssa * ssx);
    const double w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);
    const double w = 1.0 - w1;

    SwResult out;
    out.n = n;
    out.w_statistic = w;

    if (n == 3) {
        constexpr double pi6 = 1.90985931710274;
        constexpr double stqr = 1.04719755119660;
        double pw = pi6 * (std::asin(std::sqrt(w)) - stqr);
        out.p_value = std::clamp(pw, 0.0, 1.0);
        return out;
    }

    const double y = std::log1p(-w);  // ln(1 - W)
    double m, s, zval;
    if (n <= 11) {
        const double gamma = poly(kG, 2, an);
        if (y >= gamma) {
            out.p_value = 1e-99;  // W so small the transform degenerates
            return out;
        }
        const double yy = -std::log(gamma - y);
        m = poly(kC3, 4, an);
        s = std::exp(poly(kC4, 4, an));
        zval = (yy - m) / s;
    } else {
        const double ln_n = std::log(an);
        m = poly(kC5, 4, ln_n);
        s = std::exp(poly(kC6, 3, ln_n));
        zval = (y - m) / s;
    }
    out.p_value = normal_sf(zval);
    return out;
}

}  // namespace ocam::stats
