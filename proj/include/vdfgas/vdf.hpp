#pragma once

// Pietrzak VDF: evaluation by repeated squaring, non-interactive halving
// proofs, and verification with an optional proof-shortening parameter delta.
//
// A claim (x, y, T, N) asserts y = x^(2^T) mod N. One halving round turns it
// into a claim of half the size: with the midpoint v = x^(2^ceil(T/2)) and a
// Keccak challenge r = H(x || y || v),
//
//     x' = x^r * v,   y' = v^r * y_adj,   T' = ceil(T/2),
//
// where y_adj = y^2 when T is odd and y otherwise (the challenge is computed
// before the adjustment). After tau - delta rounds the verifier settles the
// remaining claim directly with T' sequential squarings; for T = 2^tau that
// remainder is exactly 2^delta.

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "vdfgas/bignum.hpp"
#include "vdfgas/errors.hpp"
#include "vdfgas/keccak.hpp"

namespace vdfgas {

struct VdfClaim {
    Natural x;
    Natural y;
    std::uint64_t T = 0;
    Natural N;
};

struct HalvingProof {
    std::vector<Natural> v;  // midpoint values, one per halving round
    unsigned delta = 0;      // rounds skipped
    unsigned tau = 0;        // floor(log2 T)
};

inline unsigned floor_log2(std::uint64_t t) {
    if (t == 0) {
        throw InvalidInputError("floor_log2: argument must be positive");
    }
    unsigned r = 0;
    while (t >>= 1) {
        ++r;
    }
    return r;
}

using ProgressFn = std::function<void(std::uint64_t completed)>;

namespace detail {

inline void check_group_element(const Natural& x, const Natural& N, const char* what) {
    if (N < 2) {
        throw InvalidModulusError("vdf: modulus must be at least 2");
    }
    if (x < 1 || x >= N) {
        throw InvalidInputError(std::string("vdf: ") + what + " must lie in [1, N)");
    }
}

}  // namespace detail

// y = x^(2^T) mod N by T sequential squarings.
inline Natural evaluate(const Natural& x, std::uint64_t T, const Natural& N,
                        const ProgressFn& progress = nullptr) {
    detail::check_group_element(x, N, "x");
    if (T < 1) {
        throw InvalidInputError("evaluate: T must be at least 1");
    }
    Natural y = x;
    for (std::uint64_t k = 0; k < T; ++k) {
        y = (y * y) % N;
        if (progress && ((k + 1) & 0xFFFF) == 0) {
            progress(k + 1);
        }
    }
    return y;
}

using Checkpoints = std::vector<std::pair<std::uint64_t, Natural>>;

// As evaluate, but additionally records x^(2^k) for every k that is a
// multiple of stride, 0 <= k <= T.
inline std::pair<Natural, Checkpoints> evaluate_with_checkpoints(const Natural& x,
                                                                 std::uint64_t T,
                                                                 const Natural& N,
                                                                 std::uint64_t stride) {
    detail::check_group_element(x, N, "x");
    if (T < 1) {
        throw InvalidInputError("evaluate_with_checkpoints: T must be at least 1");
    }
    if (stride < 1) {
        throw InvalidInputError("evaluate_with_checkpoints: stride must be at least 1");
    }
    Checkpoints cps;
    cps.emplace_back(0, x % N);
    Natural y = x;
    for (std::uint64_t k = 1; k <= T; ++k) {
        y = (y * y) % N;
        if (k % stride == 0) {
            cps.emplace_back(k, y);
        }
    }
    return {y, std::move(cps)};
}

// 256-bit challenge r = keccak256(x.val || y.val || v.val), each operand in
// its word-aligned encoding, read big-endian.
inline Natural derive_challenge(const Natural& x, const Natural& y, const Natural& v) {
    Bytes buf;
    for (const Natural* n : {&x, &y, &v}) {
        const EvmBigNumber e = to_evm(*n);
        buf.insert(buf.end(), e.val.begin(), e.val.end());
    }
    const Digest digest = keccak256(buf);
    Natural r;
    boost::multiprecision::import_bits(r, digest.begin(), digest.end(), 8);
    return r;
}

namespace detail {

// Subsampled squaring chain of the current claim base: positions are
// multiples of `stride`, position 0 is always present. value_at(p) squares
// forward from the nearest stored position at or below p.
class CheckpointChain {
public:
    CheckpointChain(Checkpoints cps, const Natural& modulus)
        : cps_(std::move(cps)), n_(modulus) {}

    Natural value_at(std::uint64_t p) const {
        std::size_t idx = cps_.size();
        while (idx > 0 && cps_[idx - 1].first > p) {
            --idx;
        }
        // cps_[idx-1] is the last checkpoint at or below p; position 0 exists.
        Natural v = cps_[idx - 1].second;
        for (std::uint64_t k = cps_[idx - 1].first; k < p; ++k) {
            v = (v * v) % n_;
        }
        return v;
    }

    // Rebase the chain to the folded claim: new[p] = old[p]^r * old[p + c]
    // for grid positions p <= c. Folding x -> x^r * v maps the whole chain.
    void fold(const Natural& r, std::uint64_t c, std::uint64_t stride) {
        Checkpoints next;
        std::uint64_t p = 0;
        for (;;) {
            Natural folded = (mod_exp(value_at(p), r, n_) * value_at(p + c)) % n_;
            next.emplace_back(p, std::move(folded));
            if (c - p < stride) {
                break;  // next grid position would pass c
            }
            p += stride;
        }
        cps_ = std::move(next);
    }

private:
    Checkpoints cps_;
    Natural n_;
};

}  // namespace detail

// Halving proof for an honest claim y = x^(2^T) mod N, skipping the last
// `delta` rounds. `stride` tunes the prover's checkpoint spacing only; the
// emitted proof is identical for every stride.
inline HalvingProof prove(const Natural& x, const Natural& y, std::uint64_t T,
                          unsigned delta, const Natural& N,
                          std::optional<std::uint64_t> stride = std::nullopt) {
    detail::check_group_element(x, N, "x");
    detail::check_group_element(y, N, "y");
    if (T < 1) {
        throw InvalidInputError("prove: T must be at least 1");
    }
    const unsigned tau = floor_log2(T);
    if (delta > tau) {
        throw InvalidDeltaError("prove: delta exceeds floor(log2 T)");
    }

    HalvingProof proof;
    proof.delta = delta;
    proof.tau = tau;
    const unsigned rounds = tau - delta;
    if (rounds == 0) {
        return proof;
    }

    const std::uint64_t s =
        stride.value_or(tau > 6 ? (std::uint64_t{1} << (tau - 6)) : std::uint64_t{1});
    auto [y_eval, cps] = evaluate_with_checkpoints(x, T, N, s);
    detail::CheckpointChain chain(std::move(cps), N);

    Natural xc = x;
    Natural yc = y;
    std::uint64_t tc = T;
    proof.v.reserve(rounds);
    for (unsigned i = 0; i < rounds; ++i) {
        const std::uint64_t c = (tc + 1) / 2;
        Natural v = chain.value_at(c);
        const Natural r = derive_challenge(xc, yc, v);
        if (tc % 2 == 1) {
            yc = (yc * yc) % N;
        }
        chain.fold(r, c, s);
        xc = (mod_exp(xc, r, N) * v) % N;
        yc = (mod_exp(v, r, N) * yc) % N;
        tc = c;
        proof.v.push_back(std::move(v));
    }
    return proof;
}

namespace detail {

// Replays `rounds` halving rounds and settles the remaining claim by
// sequential squaring. Range-invalid inputs are verification failures, not
// errors: a verifier must not throw on adversarial values.
inline bool replay_and_check(const Natural& x, const Natural& y, std::uint64_t T,
                             std::size_t rounds, const std::vector<Natural>& v,
                             const Natural& N) {
    if (N < 2 || x < 1 || x >= N || y < 1 || y >= N) {
        return false;
    }
    Natural xc = x;
    Natural yc = y;
    std::uint64_t tc = T;
    for (std::size_t i = 0; i < rounds; ++i) {
        const Natural& vi = v[i];
        if (vi < 1 || vi >= N) {
            return false;
        }
        const Natural r = derive_challenge(xc, yc, vi);
        if (tc % 2 == 1) {
            yc = (yc * yc) % N;
        }
        xc = (mod_exp(xc, r, N) * vi) % N;
        yc = (mod_exp(vi, r, N) * yc) % N;
        tc = (tc + 1) / 2;
    }
    Natural z = xc;
    for (std::uint64_t k = 0; k < tc; ++k) {
        z = (z * z) % N;
    }
    return z == yc;
}

}  // namespace detail

// Full verification: tau rounds, then the terminal squaring check (y = x^2
// when T is a power of two).
inline bool verify_full(const Natural& x, const Natural& y, std::uint64_t T,
                        const std::vector<Natural>& proof, const Natural& N) {
    if (T < 1) {
        throw InvalidInputError("verify_full: T must be at least 1");
    }
    const unsigned tau = floor_log2(T);
    if (proof.size() != tau) {
        throw MalformedProofError("verify_full: proof length must equal floor(log2 T)");
    }
    return detail::replay_and_check(x, y, T, tau, proof, N);
}

// Refined verification: tau - delta rounds, then 2^delta squarings when T is
// a power of two (in general, as many squarings as remain of the halved T).
inline bool verify_refined(const Natural& x, const Natural& y, std::uint64_t T,
                           unsigned delta, const std::vector<Natural>& proof,
                           const Natural& N) {
    if (T < 1) {
        throw InvalidInputError("verify_refined: T must be at least 1");
    }
    const unsigned tau = floor_log2(T);
    if (delta > tau) {
        throw InvalidDeltaError("verify_refined: delta exceeds floor(log2 T)");
    }
    if (proof.size() != static_cast<std::size_t>(tau - delta)) {
        throw MalformedProofError("verify_refined: proof length must equal tau - delta");
    }
    return detail::replay_and_check(x, y, T, proof.size(), proof, N);
}

inline bool verify_refined(const Natural& x, const Natural& y, std::uint64_t T,
                           const HalvingProof& proof, const Natural& N) {
    return verify_refined(x, y, T, proof.delta, proof.v, N);
}

}  // namespace vdfgas
