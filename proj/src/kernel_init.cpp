#include "rcd/kernel_init.hpp"

#include <cmath>

#include "rcd/rng.hpp"

namespace rcd {

void StreakParams::validate() const {
    if (k == 0 || k % 2 == 0) throw ConfigError("streak kernel side must be odd");
    if (!(length > 0.0) || !(width > 0.0)) throw ConfigError("streak length and width must be positive");
    if (length > static_cast<double>(k) || width > static_cast<double>(k)) {
        throw ConfigError("streak length and width must not exceed the kernel side");
    }
    if (!(angle > -1.5707963267948966028 && angle <= 1.5707963267948966028)) {
        throw ConfigError("streak angle must lie in (-pi/2, pi/2]");
    }
}

Tensor make_streak_kernel(const StreakParams& p) {
    p.validate();
    const std::size_t k = p.k;
    const std::ptrdiff_t c0 = static_cast<std::ptrdiff_t>(k / 2);
    const double sa2 = 2.0 * (p.length / 2.0) * (p.length / 2.0);
    const double sb2 = 2.0 * (p.width / 2.0) * (p.width / 2.0);
    const double ca = std::cos(p.angle), sn = std::sin(p.angle);
    const double tint[3] = {p.gray ? 1.0 : 0.9, 1.0, p.gray ? 1.0 : 1.1};

    Tensor out({k, k, 3});
    double ss = 0.0;
    for (std::size_t ui = 0; ui < k; ++ui) {
        for (std::size_t vi = 0; vi < k; ++vi) {
            const double u = static_cast<double>(static_cast<std::ptrdiff_t>(ui) - c0);
            const double v = static_cast<double>(static_cast<std::ptrdiff_t>(vi) - c0);
            const double a = u * ca + v * sn;   // along the ridge
            const double b = -u * sn + v * ca;  // across the ridge
            const double val = std::exp(-(a * a / sa2 + b * b / sb2));
            for (std::size_t c = 0; c < 3; ++c) {
                const double x = val * tint[c];
                out.at({ui, vi, c}) = x;
                ss += x * x;
            }
        }
    }
    const double inv = 1.0 / std::sqrt(ss);
    double* d = out.data();
    for (std::size_t i = 0; i < out.size(); ++i) d[i] *= inv;
    return out;
}

void DictionaryParams::validate() const {
    if (count == 0) throw ConfigError("dictionary needs at least one atom");
    if (!(angle_lo <= angle_hi) || !(length_lo <= length_hi) || !(width_lo <= width_hi)) {
        throw ConfigError("dictionary parameter ranges must be nonempty");
    }
}

KernelDictionary init_dictionary(const DictionaryParams& p) {
    p.validate();
    // additive recurrence with the inverse powers of the plastic constant
    // (the R3 sequence); three mutually irrational strides
    constexpr double kStride[3] = {0.8191725133961644, 0.6710436067037893, 0.5497004779019703};
    Rng rng(p.seed);
    double phase[3];
    for (double& ph : phase) ph = rng.uniform();

    Tensor atoms({p.k, p.k, 3, p.count});
    const std::size_t plane = p.k * p.k * 3;
    for (std::size_t i = 0; i < p.count; ++i) {
        double t[3];
        for (int j = 0; j < 3; ++j) {
            t[j] = p.count == 1
                       ? 0.5
                       : std::fmod(0.5 + phase[j] + static_cast<double>(i) * kStride[j], 1.0);
        }
        StreakParams sp;
        sp.angle = p.angle_lo + t[0] * (p.angle_hi - p.angle_lo);
        sp.length = p.length_lo + t[1] * (p.length_hi - p.length_lo);
        sp.width = p.width_lo + t[2] * (p.width_hi - p.width_lo);
        sp.k = p.k;
        sp.gray = p.gray;
        const Tensor atom = make_streak_kernel(sp);
        double* dst = atoms.data();
        for (std::size_t q = 0; q < plane; ++q) dst[q * p.count + i] = atom[q];
    }
    return KernelDictionary(std::move(atoms));
}

double max_pairwise_correlation(const KernelDictionary& dict) {
    const std::size_t d = dict.count();
    if (d < 2) return 0.0;
    const std::size_t plane = dict.atoms.size() / d;
    const double* a = dict.atoms.data();

    std::vector<double> norms(d, 0.0);
    for (std::size_t q = 0; q < plane; ++q)
        for (std::size_t i = 0; i < d; ++i) norms[i] += a[q * d + i] * a[q * d + i];
    for (double& v : norms) v = std::sqrt(v);

    double worst = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) {
            double acc = 0.0;
            for (std::size_t q = 0; q < plane; ++q) acc += a[q * d + i] * a[q * d + j];
            worst = std::max(worst, std::abs(acc) / (norms[i] * norms[j]));
        }
    }
    return worst;
}

Image render_tile_sheet(const Tensor& kernels) {
    if (kernels.order() != 4) throw DimensionError("tile sheet expects a k x k x C x N tensor");
    const std::size_t k = kernels.extent(0), C = kernels.extent(2), n = kernels.extent(3);
    const std::size_t cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    const std::size_t rows = (n + cols - 1) / cols;
    const std::size_t H = rows * (k + 1) + 1;
    const std::size_t W = cols * (k + 1) + 1;

    Image sheet(Tensor::full({H, W, 3}, 0.5));
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r0 = (i / cols) * (k + 1) + 1;
        const std::size_t c0 = (i % cols) * (k + 1) + 1;
        double lo = kernels.at({0, 0, 0, i}), hi = lo;
        for (std::size_t u = 0; u < k; ++u)
            for (std::size_t v = 0; v < k; ++v)
                for (std::size_t c = 0; c < C; ++c) {
                    const double x = kernels.at({u, v, c, i});
                    lo = std::min(lo, x);
                    hi = std::max(hi, x);
                }
        const double span = hi > lo ? hi - lo : 1.0;
        for (std::size_t u = 0; u < k; ++u)
            for (std::size_t v = 0; v < k; ++v)
                for (std::size_t c = 0; c < 3; ++c) {
                    const double x = kernels.at({u, v, std::min(c, C - 1), i});
                    sheet.pixels.at({r0 + u, c0 + v, c}) = (x - lo) / span;
                }
    }
    return sheet;
}

}  // namespace rcd
