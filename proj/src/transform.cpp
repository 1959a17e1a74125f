#include "smf/transform.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace smf {
namespace {

bool is_pow2(Index n) { return n > 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 Cooley-Tukey, in place, n a power of two.
void fft_radix2(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const auto u = a[i + j];
                const auto v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

void require_scalar(const SequenceSlice& s, const char* op) {
    if (!s.kind().is_scalar())
        throw PreconditionError(std::string(op) + " requires scalar components");
}

SequenceSlice with_same_provenance(const SequenceSlice& s, Eigen::MatrixXd values) {
    return SequenceSlice(s.id(), s.pid(), s.offset(), std::move(values));
}

} // namespace

std::string to_string(TransformKind kind) {
    switch (kind) {
        case TransformKind::Identity: return "identity";
        case TransformKind::Dft: return "dft";
        case TransformKind::Paa: return "paa";
    }
    return "?";
}

Index TransformSpec::output_len(Index w) const {
    switch (kind) {
        case TransformKind::Identity: return w;
        case TransformKind::Dft: return 2 * out_size;
        case TransformKind::Paa: return out_size;
    }
    return w;
}

SequenceSlice TransformSpec::apply(const SequenceSlice& s) const {
    switch (kind) {
        case TransformKind::Identity: return s;
        case TransformKind::Dft: return dft_transform(s, out_size);
        case TransformKind::Paa: return paa_transform(s, out_size);
    }
    return s;
}

SequenceSlice dft_transform(const SequenceSlice& s, Index k) {
    require_scalar(s, "dft_transform");
    const Index n = s.len();
    if (k < 1 || k > n)
        throw PreconditionError("dft coefficient count out of range: k=" + std::to_string(k) +
                                ", n=" + std::to_string(n));

    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    Eigen::MatrixXd out(1, 2 * k);

    // Direct evaluation for small or non-power-of-two n, radix-2 FFT otherwise.
    if (n <= 64 || !is_pow2(n)) {
        for (Index f = 0; f < k; ++f) {
            std::complex<double> acc(0.0, 0.0);
            for (Index t = 0; t < n; ++t) {
                const double ang = -2.0 * std::numbers::pi * static_cast<double>(f) *
                                   static_cast<double>(t) / static_cast<double>(n);
                acc += s.values()(0, t) * std::complex<double>(std::cos(ang), std::sin(ang));
            }
            out(0, 2 * f) = scale * acc.real();
            out(0, 2 * f + 1) = scale * acc.imag();
        }
    } else {
        std::vector<std::complex<double>> buf(static_cast<std::size_t>(n));
        for (Index t = 0; t < n; ++t) buf[static_cast<std::size_t>(t)] = s.values()(0, t);
        fft_radix2(buf);
        for (Index f = 0; f < k; ++f) {
            out(0, 2 * f) = scale * buf[static_cast<std::size_t>(f)].real();
            out(0, 2 * f + 1) = scale * buf[static_cast<std::size_t>(f)].imag();
        }
    }
    return with_same_provenance(s, std::move(out));
}

SequenceSlice paa_transform(const SequenceSlice& s, Index m) {
    require_scalar(s, "paa_transform");
    const Index n = s.len();
    if (m < 1) throw PreconditionError("paa segment count must be >= 1");
    if (n % m != 0)
        throw PreconditionError("paa segment count must divide the length: n=" +
                                std::to_string(n) + ", m=" + std::to_string(m));
    const Index seg = n / m;
    Eigen::MatrixXd out(1, m);
    for (Index j = 0; j < m; ++j) out(0, j) = s.values().row(0).segment(j * seg, seg).mean();
    return with_same_provenance(s, std::move(out));
}

} // namespace smf
