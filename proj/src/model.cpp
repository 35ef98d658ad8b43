#include "rcd/model.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <vector>

#include "rcd/conv.hpp"

namespace rcd {

Image::Image(Tensor t) : pixels(std::move(t)) {
    if (pixels.order() != 3 || pixels.extent(2) != 3) {
        throw DimensionError("image must be H x W x 3");
    }
}

void Image::check_unit_range(double tol) const {
    const double* p = pixels.data();
    for (std::size_t i = 0; i < pixels.size(); ++i) {
        if (p[i] < -tol || p[i] > 1.0 + tol) {
            throw ConstraintError("image intensity outside [0,1]");
        }
    }
}

RainMaps::RainMaps(Tensor t) : maps(std::move(t)) {
    if (maps.order() != 3) throw DimensionError("rain maps must be H x W x N");
}

KernelStack::KernelStack(Tensor t, double bound) : kernels(std::move(t)), norm_bound(bound) {
    if (kernels.order() != 4 || kernels.extent(2) != 3) {
        throw DimensionError("kernel stack must be k x k x 3 x N");
    }
    if (kernels.extent(0) != kernels.extent(1)) {
        throw DimensionError("kernel stack must be square in the first two extents");
    }
}

KernelDictionary::KernelDictionary(Tensor t) : atoms(std::move(t)) {
    if (atoms.order() != 4 || atoms.extent(2) != 3) {
        throw DimensionError("kernel dictionary must be k x k x 3 x d");
    }
    if (atoms.extent(0) != atoms.extent(1)) {
        throw DimensionError("kernel dictionary must be square in the first two extents");
    }
}

Coefficients::Coefficients(Tensor t) : weights(std::move(t)) {
    if (weights.order() != 2) throw DimensionError("coefficients must be d x N");
}

double Coefficients::max_unit_norm_violation() const {
    const std::size_t d = weights.extent(0), n = weights.extent(1);
    const double* p = weights.data();
    double worst = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        double ss = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            const double v = p[i * n + c];
            ss += v * v;
        }
        worst = std::max(worst, std::abs(std::sqrt(ss) - 1.0));
    }
    return worst;
}

Image synthesize_rain(const KernelStack& kernels, const RainMaps& maps) {
    if (kernels.count() != maps.count()) {
        throw DimensionError("kernel count " + std::to_string(kernels.count()) +
                             " does not match map count " + std::to_string(maps.count()));
    }
    return Image(conv2d_multi(kernels.kernels, maps.maps));
}

KernelStack dict_apply(const KernelDictionary& dictionary, const Coefficients& coeffs) {
    if (dictionary.count() != coeffs.dictionary_size()) {
        throw DimensionError("dictionary size " + std::to_string(dictionary.count()) +
                             " does not match coefficient rows " +
                             std::to_string(coeffs.dictionary_size()));
    }
    const std::size_t k = dictionary.kernel_size();
    const std::size_t d = dictionary.count();
    const std::size_t n = coeffs.count();
    const std::size_t plane = k * k * 3;  // per-atom values

    Tensor out({k, k, 3, n});
    const double* atoms = dictionary.atoms.data();
    const double* w = coeffs.weights.data();
    double* dst = out.data();
    // atoms are stored with the atom index innermost, so walk the flat plane
    for (std::size_t p = 0; p < plane; ++p) {
        const double* arow = atoms + p * d;
        double* orow = dst + p * n;
        for (std::size_t c = 0; c < n; ++c) {
            double acc = 0.0;
            for (std::size_t i = 0; i < d; ++i) acc += arow[i] * w[i * n + c];
            orow[c] = acc;
        }
    }
    return KernelStack(std::move(out));
}

double objective_given_rain(const Image& O, const Image& B, const Tensor& rain,
                            const RainMaps& M, double tau_m, const ProxSpec& reg_b) {
    if (!O.pixels.same_shape(B.pixels) || !O.pixels.same_shape(rain)) {
        throw DimensionError("objective: image shape mismatch");
    }
    double fid = 0.0;
    const double* po = O.pixels.data();
    const double* pb = B.pixels.data();
    const double* pr = rain.data();
    for (std::size_t i = 0; i < rain.size(); ++i) {
        const double r = po[i] - pb[i] - pr[i];
        fid += r * r;
    }
    return fid + tau_m * l1_norm(M.maps) + penalty_value(reg_b, B.pixels);
}

double objective_crcd(const Image& O, const Image& B, const RainMaps& M, const KernelStack& K,
                      double tau_m, const ProxSpec& reg_b) {
    if (tau_m < 0.0) throw ConfigError("tau_m must be nonnegative");
    const Image rain = synthesize_rain(K, M);
    return objective_given_rain(O, B, rain.pixels, M, tau_m, reg_b);
}

double objective_drcd(const Image& O, const Image& B, const RainMaps& M,
                      const KernelDictionary& D, const Coefficients& alpha, double tau_m,
                      double tau_alpha, const ProxSpec& reg_b) {
    if (tau_m < 0.0 || tau_alpha < 0.0) throw ConfigError("thresholds must be nonnegative");
    if (alpha.max_unit_norm_violation() > 1e-9) {
        throw ConstraintError("coefficient columns must have unit l2 norm");
    }
    const KernelStack K = dict_apply(D, alpha);
    const Image rain = synthesize_rain(K, M);
    return objective_given_rain(O, B, rain.pixels, M, tau_m, reg_b) +
           tau_alpha * l1_norm(alpha.weights);
}

// --- container io -----------------------------------------------------------

namespace {

constexpr char kMagic[5] = {'R', 'C', 'D', 'K', '1'};

void put_u32_le(std::vector<unsigned char>& buf, std::uint32_t v) {
    buf.push_back(static_cast<unsigned char>(v & 0xff));
    buf.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
    buf.push_back(static_cast<unsigned char>((v >> 16) & 0xff));
    buf.push_back(static_cast<unsigned char>((v >> 24) & 0xff));
}

std::uint32_t get_u32_le(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void write_file_atomic(const std::string& path, const std::vector<unsigned char>& bytes) {
    const std::string tmp = path + ".tmp";
    std::FILE* f = std::fopen(tmp.c_str(), "wb");
    if (!f) throw IoError("cannot open for writing: " + tmp);
    const std::size_t written = std::fwrite(bytes.data(), 1, bytes.size(), f);
    const bool ok = written == bytes.size() && std::fclose(f) == 0;
    if (!ok) {
        std::remove(tmp.c_str());
        throw IoError("write failed: " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::remove(tmp.c_str());
        throw IoError("rename failed: " + path + " (" + ec.message() + ")");
    }
}

std::vector<unsigned char> read_file(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw IoError("cannot open: " + path);
    std::fseek(f, 0, SEEK_END);
    const long sz = std::ftell(f);
    std::fseek(f, 0, SEEK_SET);
    std::vector<unsigned char> bytes(sz > 0 ? static_cast<std::size_t>(sz) : 0);
    const std::size_t got = bytes.empty() ? 0 : std::fread(bytes.data(), 1, bytes.size(), f);
    std::fclose(f);
    if (got != bytes.size()) throw IoError("short read: " + path);
    return bytes;
}

void save_container(const std::string& path, const Tensor& t, std::uint32_t e0, std::uint32_t e1,
                    std::uint32_t e2) {
    std::vector<unsigned char> buf;
    buf.reserve(5 + 12 + 8 * t.size());
    buf.insert(buf.end(), kMagic, kMagic + 5);
    put_u32_le(buf, e0);
    put_u32_le(buf, e1);
    put_u32_le(buf, e2);
    static_assert(sizeof(double) == 8);
    const double* p = t.data();
    for (std::size_t i = 0; i < t.size(); ++i) {
        std::uint64_t bits;
        std::memcpy(&bits, &p[i], 8);
        for (int b = 0; b < 8; ++b) buf.push_back(static_cast<unsigned char>((bits >> (8 * b)) & 0xff));
    }
    write_file_atomic(path, buf);
}

struct ContainerHeader {
    std::uint32_t e0, e1, e2;
    std::vector<double> payload;
};

ContainerHeader load_container(const std::string& path) {
    const std::vector<unsigned char> bytes = read_file(path);
    if (bytes.size() < 17 || std::memcmp(bytes.data(), kMagic, 5) != 0) {
        throw IoError("not an RCDK1 container: " + path);
    }
    ContainerHeader h;
    h.e0 = get_u32_le(bytes.data() + 5);
    h.e1 = get_u32_le(bytes.data() + 9);
    h.e2 = get_u32_le(bytes.data() + 13);
    const std::size_t rest = bytes.size() - 17;
    if (rest % 8 != 0) throw IoError("truncated RCDK1 payload: " + path);
    h.payload.resize(rest / 8);
    for (std::size_t i = 0; i < h.payload.size(); ++i) {
        std::uint64_t bits = 0;
        for (int b = 0; b < 8; ++b) {
            bits |= static_cast<std::uint64_t>(bytes[17 + 8 * i + b]) << (8 * b);
        }
        std::memcpy(&h.payload[i], &bits, 8);
    }
    return h;
}

}  // namespace

void save_kernel_container(const std::string& path, const Tensor& kernels) {
    if (kernels.order() != 4 || kernels.extent(0) != kernels.extent(1)) {
        throw DimensionError("kernel container expects a square k x k x C x N tensor");
    }
    save_container(path, kernels, static_cast<std::uint32_t>(kernels.extent(0)),
                   static_cast<std::uint32_t>(kernels.extent(2)),
                   static_cast<std::uint32_t>(kernels.extent(3)));
}

Tensor load_kernel_container(const std::string& path) {
    ContainerHeader h = load_container(path);
    const std::size_t k = h.e0, c = h.e1, n = h.e2;
    if (k == 0 || c == 0 || n == 0 || h.payload.size() != k * k * c * n) {
        throw IoError("RCDK1 payload does not match kernel-stack layout: " + path);
    }
    return Tensor({k, k, c, n}, std::move(h.payload));
}

void save_map_container(const std::string& path, const Tensor& maps) {
    if (maps.order() != 3) throw DimensionError("map container expects an H x W x N tensor");
    save_container(path, maps, static_cast<std::uint32_t>(maps.extent(0)),
                   static_cast<std::uint32_t>(maps.extent(1)),
                   static_cast<std::uint32_t>(maps.extent(2)));
}

Tensor load_map_container(const std::string& path) {
    ContainerHeader h = load_container(path);
    const std::size_t H = h.e0, W = h.e1, n = h.e2;
    if (H == 0 || W == 0 || n == 0 || h.payload.size() != H * W * n) {
        throw IoError("RCDK1 payload does not match map layout: " + path);
    }
    return Tensor({H, W, n}, std::move(h.payload));
}

}  // namespace rcd
