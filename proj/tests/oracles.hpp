// Test-only reference implementations, kept deliberately naive and
// independent of the library code paths they check.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "smf/sequence.hpp"

namespace oracle {

using smf::Index;

inline smf::SequenceSlice slice(const std::string& id, const std::vector<double>& v) {
    return smf::SequenceSlice::scalars(id, v);
}

// --------------------------------------------------------------------------
// textbook DFT by direct summation, no normalization tricks shared with the
// implementation under test
inline std::vector<std::complex<double>> naive_dft(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<std::complex<double>> out(n);
    const double pi = 3.14159265358979323846;
    for (std::size_t f = 0; f < n; ++f) {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t t = 0; t < n; ++t) {
            const double ang = -2.0 * pi * double(f) * double(t) / double(n);
            acc += x[t] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out[f] = acc / std::sqrt(double(n));
    }
    return out;
}

// --------------------------------------------------------------------------
// memoized recursions straight from the distance definitions

class DtwOracle {
public:
    DtwOracle(const std::vector<double>& a, const std::vector<double>& b,
              std::optional<Index> band)
        : a_(a), b_(b), band_(band) {}

    double value() {
        if (a_.empty() || b_.empty()) return std::numeric_limits<double>::infinity();
        return visit(Index(a_.size()) - 1, Index(b_.size()) - 1);
    }

private:
    double visit(Index i, Index j) {
        if (i < 0 || j < 0) return std::numeric_limits<double>::infinity();
        if (band_ && std::abs(i - j) > *band_) return std::numeric_limits<double>::infinity();
        auto key = std::make_pair(i, j);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        const double d = a_[std::size_t(i)] - b_[std::size_t(j)];
        double best;
        if (i == 0 && j == 0) {
            best = 0.0;
        } else {
            best = std::min({visit(i - 1, j), visit(i, j - 1), visit(i - 1, j - 1)});
        }
        const double v = d * d + best;
        memo_.emplace(key, v);
        return v;
    }

    const std::vector<double>& a_;
    const std::vector<double>& b_;
    std::optional<Index> band_;
    std::map<std::pair<Index, Index>, double> memo_;
};

inline double dtw(const std::vector<double>& a, const std::vector<double>& b,
                  std::optional<Index> band = std::nullopt) {
    return DtwOracle(a, b, band).value();
}

class ErpOracle {
public:
    ErpOracle(const std::vector<double>& a, const std::vector<double>& b, double g)
        : a_(a), b_(b), g_(g) {}

    double value() { return visit(Index(a_.size()), Index(b_.size())); }

private:
    double visit(Index i, Index j) {
        if (i == 0 && j == 0) return 0.0;
        auto key = std::make_pair(i, j);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        double v;
        if (i == 0) {
            v = visit(0, j - 1) + std::abs(b_[std::size_t(j - 1)] - g_);
        } else if (j == 0) {
            v = visit(i - 1, 0) + std::abs(a_[std::size_t(i - 1)] - g_);
        } else {
            const double match =
                visit(i - 1, j - 1) + std::abs(a_[std::size_t(i - 1)] - b_[std::size_t(j - 1)]);
            const double gap_a = visit(i - 1, j) + std::abs(a_[std::size_t(i - 1)] - g_);
            const double gap_b = visit(i, j - 1) + std::abs(b_[std::size_t(j - 1)] - g_);
            v = std::min({match, gap_a, gap_b});
        }
        memo_.emplace(key, v);
        return v;
    }

    const std::vector<double>& a_;
    const std::vector<double>& b_;
    double g_;
    std::map<std::pair<Index, Index>, double> memo_;
};

inline double erp(const std::vector<double>& a, const std::vector<double>& b, double g) {
    return ErpOracle(a, b, g).value();
}

class EdrOracle {
public:
    EdrOracle(const std::vector<double>& a, const std::vector<double>& b, double eps)
        : a_(a), b_(b), eps_(eps) {}

    double value() { return visit(Index(a_.size()), Index(b_.size())); }

private:
    double visit(Index i, Index j) {
        if (i == 0) return double(j);
        if (j == 0) return double(i);
        auto key = std::make_pair(i, j);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        const double sub =
            std::abs(a_[std::size_t(i - 1)] - b_[std::size_t(j - 1)]) <= eps_ ? 0.0 : 1.0;
        const double v =
            std::min({visit(i - 1, j - 1) + sub, visit(i - 1, j) + 1.0, visit(i, j - 1) + 1.0});
        memo_.emplace(key, v);
        return v;
    }

    const std::vector<double>& a_;
    const std::vector<double>& b_;
    double eps_;
    std::map<std::pair<Index, Index>, double> memo_;
};

inline double edr(const std::vector<double>& a, const std::vector<double>& b, double eps) {
    return EdrOracle(a, b, eps).value();
}

class LcssOracle {
public:
    LcssOracle(const std::vector<double>& a, const std::vector<double>& b, double eps,
               std::optional<Index> delta)
        : a_(a), b_(b), eps_(eps), delta_(delta) {}

    double length() { return visit(Index(a_.size()), Index(b_.size())); }

private:
    double visit(Index i, Index j) {
        if (i == 0 || j == 0) return 0.0;
        auto key = std::make_pair(i, j);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        const bool in_window = !delta_ || std::abs(i - j) <= *delta_;
        double v;
        if (in_window && std::abs(a_[std::size_t(i - 1)] - b_[std::size_t(j - 1)]) <= eps_)
            v = visit(i - 1, j - 1) + 1.0;
        else
            v = std::max(visit(i - 1, j), visit(i, j - 1));
        memo_.emplace(key, v);
        return v;
    }

    const std::vector<double>& a_;
    const std::vector<double>& b_;
    double eps_;
    std::optional<Index> delta_;
    std::map<std::pair<Index, Index>, double> memo_;
};

inline double lcss(const std::vector<double>& a, const std::vector<double>& b, double eps,
                   std::optional<Index> delta = std::nullopt) {
    if (a.empty() || b.empty()) return 1.0;
    const double len = LcssOracle(a, b, eps, delta).length();
    return 1.0 - len / double(std::min(a.size(), b.size()));
}

// --------------------------------------------------------------------------
// deterministic data generators

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline std::vector<double> random_walk(std::mt19937_64& gen, std::size_t len) {
    std::normal_distribution<double> step(0.0, 1.0);
    std::vector<double> out(len);
    double x = step(gen);
    for (std::size_t i = 0; i < len; ++i) {
        x += step(gen);
        out[i] = x;
    }
    return out;
}

inline std::vector<double> random_values(std::mt19937_64& gen, std::size_t len, double lo = -1.0,
                                         double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> out(len);
    for (double& v : out) v = dist(gen);
    return out;
}

// all sequences of the given length over alphabet {0, 1, ..., alphabet-1}
inline std::vector<std::vector<double>> enumerate_sequences(std::size_t len, int alphabet) {
    std::vector<std::vector<double>> out;
    std::vector<int> digits(len, 0);
    while (true) {
        std::vector<double> seq(len);
        for (std::size_t i = 0; i < len; ++i) seq[i] = double(digits[i]);
        out.push_back(std::move(seq));
        std::size_t pos = 0;
        while (pos < len && ++digits[pos] == alphabet) digits[pos++] = 0;
        if (pos == len) break;
        if (len == 0) break;
    }
    return out;
}

} // namespace oracle
