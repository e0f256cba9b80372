#pragma once

// Analytic EVM gas model for halving-proof verification.
//
// Per-component costs are linear regressions: calldata and halving scale with
// the round count tau - delta, the terminal exponentiation scales with the
// squaring count 2^delta. The total
//
//     G(tau, delta) = (alpha + beta) * (tau - delta) + gamma * 2^delta + C'
//
// is strictly convex in delta and has the unique real minimizer
//
//     delta_m = log2(alpha + beta) - log2(ln 2 * gamma),
//
// rounded to an integer by comparing the fractional part against
// -log2(ln 2) ~ 0.5288.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "vdfgas/bignum.hpp"
#include "vdfgas/errors.hpp"

namespace vdfgas {

inline constexpr std::uint64_t kTxBaseGas = 21000;
inline constexpr std::uint64_t kNonZeroByteGas = 16;
inline constexpr std::uint64_t kZeroByteGas = 4;
inline constexpr std::uint64_t kDefaultBlockGasLimit = 30'000'000;

struct LinearModel {
    double slope = 0.0;
    double intercept = 0.0;
};

inline double eval_linear(const LinearModel& model, double u) {
    return model.slope * u + model.intercept;
}

// Regression constants for one key length: calldata slope alpha, halving
// slope beta, per-squaring slope gamma, their intercepts c1..c3, and a free
// residual constant C (not reported by the measurements; defaults to 0).
struct GasCoefficients {
    unsigned lambda = 0;  // modulus bit length the fit was made at
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
    double C = 0.0;

    LinearModel calldata_model() const { return {alpha, c1}; }
    LinearModel halving_model() const { return {beta, c2}; }
    LinearModel exp_model() const { return {gamma, c3}; }
};

// EIP-2028 calldata pricing: 16 gas per non-zero byte, 4 per zero byte.
inline std::uint64_t calldata_gas(std::span<const std::uint8_t> data) {
    std::uint64_t gas = 0;
    for (std::uint8_t b : data) {
        gas += b == 0 ? kZeroByteGas : kNonZeroByteGas;
    }
    return gas;
}

inline std::uint64_t calldata_gas(const Bytes& data) {
    return calldata_gas(std::span<const std::uint8_t>(data.data(), data.size()));
}

inline double expected_calldata_gas(std::int64_t n_bytes, double p_nonzero) {
    if (n_bytes < 0) {
        throw InvalidInputError("expected_calldata_gas: byte count must be non-negative");
    }
    if (!(p_nonzero >= 0.0 && p_nonzero <= 1.0)) {
        throw InvalidProbabilityError("expected_calldata_gas: probability outside [0, 1]");
    }
    return static_cast<double>(n_bytes) *
           (16.0 * p_nonzero + 4.0 * (1.0 - p_nonzero));
}

inline std::uint64_t intrinsic_gas(std::span<const std::uint8_t> data) {
    return kTxBaseGas + calldata_gas(data);
}

inline std::uint64_t intrinsic_gas(const Bytes& data) {
    return kTxBaseGas + calldata_gas(data);
}

// ModExp precompile price per EIP-2565. exp_head is the integer value of the
// most-significant 32 bytes of the exponent (the whole exponent when
// exp_len <= 32).
inline std::uint64_t modexp_gas(std::uint64_t base_len, std::uint64_t exp_len,
                                const Natural& exp_head, std::uint64_t mod_len) {
    const Natural words = (Natural(std::max(base_len, mod_len)) + 7) / 8;
    const Natural mult_complexity = words * words;
    Natural iteration_count;
    const Natural head_bits = static_cast<std::uint64_t>(bit_length(exp_head));
    if (exp_len <= 32) {
        iteration_count = head_bits > 0 ? head_bits - 1 : Natural(0);
    } else {
        iteration_count = Natural(8) * (exp_len - 32) + (head_bits > 0 ? head_bits - 1 : Natural(0));
    }
    if (iteration_count < 1) {
        iteration_count = 1;
    }
    Natural gas = mult_complexity * iteration_count / 3;
    if (gas < 200) {
        gas = 200;
    }
    if (gas > std::numeric_limits<std::uint64_t>::max()) {
        throw InvalidInputError("modexp_gas: price exceeds 64 bits");
    }
    return gas.convert_to<std::uint64_t>();
}

// Total verification gas. delta = tau is permitted: zero halving rounds, the
// claim settled by direct squaring.
inline double total_gas(const GasCoefficients& k, unsigned tau, unsigned delta) {
    if (delta > tau) {
        throw InvalidDeltaError("total_gas: delta exceeds tau");
    }
    const double rounds = static_cast<double>(tau - delta);
    const double squarings = std::exp2(static_cast<double>(delta));
    return (k.alpha + k.beta) * rounds + k.gamma * squarings + k.c1 + k.c2 + k.c3 + k.C;
}

inline double delta_star_real(const GasCoefficients& k) {
    if (!(k.alpha + k.beta > 0.0) || !(k.gamma > 0.0)) {
        throw InvalidCoefficientsError("delta_star_real: slopes must be positive");
    }
    return std::log2(k.alpha + k.beta) - std::log2(std::numbers::ln2 * k.gamma);
}

// Integer minimizer: floor when the fractional part is below -log2(ln 2),
// ceil when above; the equality tie resolves to floor. Clamped at 0.
inline unsigned delta_star_int(const GasCoefficients& k) {
    const double dm = delta_star_real(k);
    if (dm <= 0.0) {
        return 0;
    }
    const double threshold = -std::log2(std::numbers::ln2);  // ~0.5288
    const double fl = std::floor(dm);
    const double frac = dm - fl;
    const double chosen = frac > threshold ? fl + 1.0 : fl;
    return static_cast<unsigned>(chosen);
}

// Exhaustive minimum of total_gas over delta in [0, tau]; ties go to the
// smaller delta.
inline unsigned argmin_grid(const GasCoefficients& k, unsigned tau) {
    unsigned best = 0;
    double best_gas = total_gas(k, tau, 0);
    for (unsigned d = 1; d <= tau; ++d) {
        const double g = total_gas(k, tau, d);
        if (g < best_gas) {
            best_gas = g;
            best = d;
        }
    }
    return best;
}

// Ordinary least squares for g = slope * u + intercept.
inline LinearModel fit_least_squares(std::span<const std::pair<double, double>> points) {
    if (points.size() < 2) {
        throw SingularFitError("fit_least_squares: need at least two points");
    }
    const double n = static_cast<double>(points.size());
    double mean_u = 0.0;
    double mean_g = 0.0;
    for (const auto& [u, g] : points) {
        mean_u += u;
        mean_g += g;
    }
    mean_u /= n;
    mean_g /= n;
    double suu = 0.0;
    double sug = 0.0;
    for (const auto& [u, g] : points) {
        suu += (u - mean_u) * (u - mean_u);
        sug += (u - mean_u) * (g - mean_g);
    }
    if (suu == 0.0) {
        throw SingularFitError("fit_least_squares: degenerate abscissae");
    }
    const double slope = sug / suu;
    return {slope, mean_g - slope * mean_u};
}

inline LinearModel fit_least_squares(const std::vector<std::pair<double, double>>& points) {
    return fit_least_squares(std::span<const std::pair<double, double>>(points));
}

}  // namespace vdfgas
