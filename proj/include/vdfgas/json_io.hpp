#pragma once

// JSON forms: a big number is {"val": "0x...", "bitlen": k} with the
// word-aligned lowercase hex of its byte encoding; a proof bundle is
// {x, y, n, T, delta, v: [...]} and doubles as a bare claim when delta/v are
// absent.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "vdfgas/abi.hpp"
#include "vdfgas/bignum.hpp"
#include "vdfgas/errors.hpp"

namespace vdfgas {

inline nlohmann::json evm_to_json(const EvmBigNumber& e) {
    return {{"val", "0x" + bytes_to_hex(e.val)}, {"bitlen", e.bitlen}};
}

inline EvmBigNumber evm_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("val") || !j.contains("bitlen") ||
        !j["val"].is_string() || !j["bitlen"].is_number_unsigned()) {
        throw MalformedBigNumberError("big number JSON must be {val, bitlen}");
    }
    EvmBigNumber e;
    e.val = hex_to_bytes(j["val"].get<std::string>());
    e.bitlen = j["bitlen"].get<std::size_t>();
    from_evm(e);  // validate
    return e;
}

inline nlohmann::json natural_to_json(const Natural& u) {
    return evm_to_json(to_evm(u));
}

// Accepts either the object form or a bare "0x..." hex string.
inline Natural natural_from_json(const nlohmann::json& j) {
    if (j.is_string()) {
        return natural_from_hex(j.get<std::string>());
    }
    return from_evm(evm_from_json(j));
}

// Claim plus (optionally) its proof, in one bundle.
struct ProofBundle {
    Natural x;
    Natural y;
    Natural n;
    std::uint64_t T = 0;
    unsigned delta = 0;
    std::vector<Natural> v;
};

inline nlohmann::json bundle_to_json(const ProofBundle& b) {
    nlohmann::json j;
    j["x"] = natural_to_json(b.x);
    j["y"] = natural_to_json(b.y);
    j["n"] = natural_to_json(b.n);
    j["T"] = b.T;
    j["delta"] = b.delta;
    nlohmann::json vs = nlohmann::json::array();
    for (const Natural& vi : b.v) {
        vs.push_back(natural_to_json(vi));
    }
    j["v"] = vs;
    return j;
}

inline ProofBundle bundle_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("x") || !j.contains("n") || !j.contains("T") ||
        !j["T"].is_number_unsigned()) {
        throw InvalidInputError("bundle JSON must contain x, n and a non-negative T");
    }
    ProofBundle b;
    b.x = natural_from_json(j["x"]);
    b.n = natural_from_json(j["n"]);
    b.T = j["T"].get<std::uint64_t>();
    if (j.contains("y")) {
        b.y = natural_from_json(j["y"]);
    }
    if (j.contains("delta")) {
        if (!j["delta"].is_number_unsigned()) {
            throw InvalidInputError("bundle JSON: delta must be a non-negative integer");
        }
        b.delta = j["delta"].get<unsigned>();
    }
    if (j.contains("v")) {
        if (!j["v"].is_array()) {
            throw InvalidInputError("bundle JSON: v must be an array");
        }
        for (const auto& item : j["v"]) {
            b.v.push_back(natural_from_json(item));
        }
    }
    return b;
}

inline ProofCall bundle_to_call(const ProofBundle& b) {
    ProofCall call;
    call.x = to_evm(b.x);
    call.y = to_evm(b.y);
    call.n = to_evm(b.n);
    call.delta = b.delta;
    call.T = b.T;
    call.v.reserve(b.v.size());
    for (const Natural& vi : b.v) {
        call.v.push_back(to_evm(vi));
    }
    return call;
}

inline ProofBundle call_to_bundle(const ProofCall& call) {
    ProofBundle b;
    b.x = from_evm(call.x);
    b.y = from_evm(call.y);
    b.n = from_evm(call.n);
    b.delta = static_cast<unsigned>(call.delta);
    b.T = call.T;
    b.v.reserve(call.v.size());
    for (const EvmBigNumber& e : call.v) {
        b.v.push_back(from_evm(e));
    }
    return b;
}

}  // namespace vdfgas
