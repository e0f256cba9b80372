#pragma once

// Probabilistic primality: Miller-Rabin with seeded random bases, and
// Baillie-PSW (base-2 Miller-Rabin paired with a strong Lucas probable-prime
// test, Selfridge parameter selection). Also the hash-to-prime gas
// feasibility estimate and a deterministic RSA test-modulus generator.

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "vdfgas/bignum.hpp"
#include "vdfgas/errors.hpp"
#include "vdfgas/gas_model.hpp"
#include "vdfgas/rng.hpp"

namespace vdfgas {

namespace detail {

inline constexpr std::array<unsigned, 25> kSmallPrimes = {
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
    53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
};

// Jacobi symbol (a/n) for odd n > 0.
inline int jacobi(Natural a, Natural n) {
    a %= n;
    if (a < 0) {
        a += n;
    }
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            const unsigned r = (n % 8).convert_to<unsigned>();
            if (r == 3 || r == 5) {
                result = -result;
            }
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) {
            result = -result;
        }
        a %= n;
    }
    return n == 1 ? result : 0;
}

inline bool is_perfect_square(const Natural& n) {
    if (n < 0) {
        return false;
    }
    const Natural root = boost::multiprecision::sqrt(n);
    return root * root == n;
}

// One Miller-Rabin round: witness check of n against base a, n odd, n > 3.
inline bool passes_miller_rabin_round(const Natural& n, const Natural& a) {
    const Natural n_minus_1 = n - 1;
    std::uint64_t s = 0;
    Natural d = n_minus_1;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    Natural x = mod_exp(a, d, n);
    if (x == 1 || x == n_minus_1) {
        return true;
    }
    for (std::uint64_t i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == n_minus_1) {
            return true;
        }
        if (x == 1) {
            return false;  // non-trivial square root of 1
        }
    }
    return false;
}

// Strong Lucas probable-prime test with Selfridge's parameter selection:
// first D in 5, -7, 9, -11, ... with (D/n) = -1, P = 1, Q = (1 - D)/4.
// Assumes n odd, n > 1, not a perfect square, no small prime factors.
inline bool passes_strong_lucas(const Natural& n) {
    Natural d = 5;
    for (;;) {
        const int j = jacobi(d, n);
        if (j == 0) {
            return boost::multiprecision::abs(d) == n;  // proper factor otherwise
        }
        if (j == -1) {
            break;
        }
        d = d > 0 ? Natural(-(d + 2)) : Natural(-(d - 2));
    }
    const Natural q = (1 - d) / 4;

    // n + 1 = k * 2^s with k odd.
    Natural k = n + 1;
    std::uint64_t s = 0;
    while (k % 2 == 0) {
        k /= 2;
        ++s;
    }

    auto reduce = [&n](const Natural& v) {
        Natural r = v % n;
        if (r < 0) {
            r += n;
        }
        return r;
    };
    auto halve = [&n](Natural v) {
        if (v % 2 != 0) {
            v += n;
        }
        return v / 2;
    };

    // Binary ladder over the bits of k: U_1 = V_1 = 1 (P = 1), Q^1 = Q.
    Natural u = 1;
    Natural v = 1;
    Natural qk = reduce(q);
    const std::size_t bits = bit_length(k);
    for (std::size_t i = bits - 1; i-- > 0;) {
        // double: (U, V, Q^j) -> (U*V, V^2 - 2Q^j, Q^2j)
        u = reduce(u * v);
        v = reduce(v * v - 2 * qk);
        qk = reduce(qk * qk);
        if (boost::multiprecision::bit_test(k, static_cast<unsigned>(i))) {
            // increment: U' = (U + V)/2, V' = (D*U + V)/2, Q^j -> Q^(j+1)
            const Natural du = reduce(d * u);
            Natural u_next = reduce(halve(reduce(u + v)));
            v = reduce(halve(reduce(du + v)));
            u = std::move(u_next);
            qk = reduce(qk * q);
        }
    }

    if (u == 0 || v == 0) {
        return true;  // U_k = 0 or V_k = 0
    }
    // V_{k * 2^r} = 0 for some r in [1, s)
    for (std::uint64_t r = 1; r < s; ++r) {
        v = reduce(v * v - 2 * qk);
        if (v == 0) {
            return true;
        }
        qk = reduce(qk * qk);
    }
    return false;
}

// Decides n by the small-prime table when possible. Returns -1 when
// undecided, 0 composite, 1 prime.
inline int trial_division_verdict(const Natural& n) {
    for (unsigned p : kSmallPrimes) {
        if (n == p) {
            return 1;
        }
        if (n % p == 0) {
            return 0;
        }
    }
    constexpr unsigned last = kSmallPrimes.back();
    if (n < Natural(last) * last) {
        return 1;  // no prime factor up to sqrt(n)
    }
    return -1;
}

}  // namespace detail

// Miller-Rabin with `iterations` bases drawn uniformly from [2, n-2] by the
// seeded stream. The base sequence for a given seed is a prefix of the
// sequence for the same seed with more iterations.
inline bool miller_rabin(const Natural& n, unsigned iterations, const Seed& seed) {
    if (n < 2) {
        throw InvalidInputError("miller_rabin: n must be at least 2");
    }
    if (iterations < 1) {
        throw InvalidInputError("miller_rabin: need at least one iteration");
    }
    if (n == 2 || n == 3) {
        return true;
    }
    if (n % 2 == 0) {
        return false;
    }
    KeccakStream stream(seed);
    for (unsigned i = 0; i < iterations; ++i) {
        const Natural a = stream.in_range(2, n - 2);
        if (!detail::passes_miller_rabin_round(n, a)) {
            return false;
        }
    }
    return true;
}

inline bool baillie_psw(const Natural& n) {
    if (n < 2) {
        throw InvalidInputError("baillie_psw: n must be at least 2");
    }
    const int verdict = detail::trial_division_verdict(n);
    if (verdict >= 0) {
        return verdict == 1;
    }
    if (detail::is_perfect_square(n)) {
        return false;
    }
    return detail::passes_miller_rabin_round(n, 2) && detail::passes_strong_lucas(n);
}

// Worst-case count of prime candidates below a `bits`-bit bound under the
// squared-log prime-gap bound: round((bits * log_base(2))^2).
inline std::uint64_t candidate_count(unsigned bits, double log_base = 10.0) {
    if (bits < 1) {
        throw InvalidInputError("candidate_count: bits must be positive");
    }
    if (!(log_base > 1.0)) {
        throw InvalidInputError("candidate_count: log base must exceed 1");
    }
    const double log_x = static_cast<double>(bits) * std::log(2.0) / std::log(log_base);
    return static_cast<std::uint64_t>(std::llround(log_x * log_x));
}

struct FeasibilityReport {
    std::uint64_t candidates = 0;
    std::uint64_t per_check_gas = 0;
    std::uint64_t total_gas = 0;
    std::uint64_t block_gas_limit = 0;
    bool feasible = false;
};

inline FeasibilityReport hash_to_prime_feasibility(
    unsigned bits, std::uint64_t per_check_gas,
    std::uint64_t block_gas_limit = kDefaultBlockGasLimit) {
    if (bits < 1 || per_check_gas < 1 || block_gas_limit < 1) {
        throw InvalidInputError("hash_to_prime_feasibility: arguments must be positive");
    }
    FeasibilityReport report;
    report.candidates = candidate_count(bits);
    report.per_check_gas = per_check_gas;
    report.total_gas = report.candidates * per_check_gas;
    report.block_gas_limit = block_gas_limit;
    report.feasible = report.total_gas <= block_gas_limit;
    return report;
}

struct RsaModulus {
    Natural n;
    Natural p;
    Natural q;
};

// Deterministic lambda-bit RSA test modulus: two distinct Baillie-PSW primes
// of lambda/2 bits, top bit set. Not for production key material.
inline RsaModulus gen_test_modulus(unsigned lambda, const Seed& seed) {
    if (lambda < 16 || lambda % 2 != 0) {
        throw InvalidInputError("gen_test_modulus: lambda must be even and at least 16");
    }
    constexpr std::uint64_t kMaxAttempts = 1'000'000;
    const unsigned half = lambda / 2;
    KeccakStream stream(seed);
    RsaModulus out;
    Natural* targets[2] = {&out.p, &out.q};
    for (Natural* target : targets) {
        for (std::uint64_t attempt = 0;; ++attempt) {
            if (attempt >= kMaxAttempts) {
                throw GenerationFailureError("gen_test_modulus: candidate search exhausted");
            }
            Natural candidate = stream.below(Natural(1) << half);
            boost::multiprecision::bit_set(candidate, half - 1);  // full width
            boost::multiprecision::bit_set(candidate, 0);         // odd
            if (target == &out.q && candidate == out.p) {
                continue;
            }
            if (baillie_psw(candidate)) {
                *target = std::move(candidate);
                break;
            }
        }
    }
    out.n = out.p * out.q;
    return out;
}

}  // namespace vdfgas
