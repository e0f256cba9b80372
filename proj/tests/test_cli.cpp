// End-to-end tests of the vdfgas binary. The path comes from the build via
// VDFGAS_CLI_PATH.

#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "vdfgas/json_io.hpp"
#include "vdfgas/primality.hpp"
#include "vdfgas/vdf.hpp"

using nlohmann::json;
using namespace vdfgas;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(VDFGAS_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        result.out.append(buf.data(), n);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("vdfgas_test_" + name);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

}  // namespace

TEST_CASE("cli evaluate") {
    const RunResult r = run_cli("evaluate --x 0x02 --T 4 --n 0x23");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["y"]["bitlen"] == 5);
    const std::string val = j["y"]["val"].get<std::string>();
    CHECK(val.substr(val.size() - 2) == "10");  // 16
    CHECK(j.contains("elapsed_ms"));

    CHECK(run_cli("evaluate --x 0x01 --T 9 --n 0x23").exit_code == 0);
    CHECK(run_cli("evaluate --x 0xzz --T 4 --n 0x23").exit_code == 2);
    CHECK(run_cli("evaluate --x 0x02 --n 0x23").exit_code == 2);  // missing flag
}

TEST_CASE("cli prove, verify, encode, decode round trip") {
    const RsaModulus mod = gen_test_modulus(512, seed_from_label("cli-mod"));
    const Natural x = mod.n - 12345;  // full width, so payload sizes are closed-form
    const std::uint64_t T = 1024;     // tau = 10
    const Natural y = evaluate(x, T, mod.n);

    ProofBundle claim;
    claim.x = x;
    claim.y = y;
    claim.n = mod.n;
    claim.T = T;
    const auto claim_path = temp_file("claim.json");
    write_text(claim_path, bundle_to_json(claim).dump());

    const RunResult proved = run_cli("--delta 3 prove --claim " + claim_path.string());
    REQUIRE(proved.exit_code == 0);
    const json bundle = json::parse(proved.out);
    CHECK(bundle["delta"] == 3);
    CHECK(bundle["v"].size() == 7);

    const auto bundle_path = temp_file("bundle.json");
    write_text(bundle_path, proved.out);
    CHECK(run_cli("verify --proof " + bundle_path.string()).exit_code == 0);

    // flipped y must fail verification with exit code 1
    json tampered = bundle;
    tampered["y"] = natural_to_json(y + 1);
    const auto tampered_path = temp_file("tampered.json");
    write_text(tampered_path, tampered.dump());
    const RunResult bad = run_cli("verify --proof " + tampered_path.string());
    CHECK(bad.exit_code == 1);
    CHECK(json::parse(bad.out)["valid"] == false);

    // delta out of range is a usage error
    CHECK(run_cli("--delta 99 prove --claim " + claim_path.string()).exit_code == 2);

    // encode to a file, decode back, verify the decoded bundle
    const auto payload_path = temp_file("payload.bin");
    CHECK(run_cli("encode --proof " + bundle_path.string() + " --out " +
                  payload_path.string())
              .exit_code == 0);
    const RunResult decoded = run_cli("decode --payload " + payload_path.string());
    REQUIRE(decoded.exit_code == 0);
    const ProofBundle decoded_bundle = bundle_from_json(json::parse(decoded.out));
    CHECK(decoded_bundle.x == x);
    CHECK(verify_refined(decoded_bundle.x, decoded_bundle.y, decoded_bundle.T,
                         decoded_bundle.delta, decoded_bundle.v, decoded_bundle.n));

    // payload length vs the closed form (full-width 512-bit values)
    CHECK(std::filesystem::file_size(payload_path) == payload_size(512, 10, 3));
}

TEST_CASE("cli gas-plan") {
    const RunResult r = run_cli("--lambda 2048 --tau 25 gas-plan");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["delta_int"] == 9);
    CHECK(j["delta"] == 9);
    CHECK(j["payload_bytes"] == 7428);
    CHECK(j["delta_real"].get<double>() == Catch::Approx(9.43).margin(0.01));
    CHECK(j["table"].size() == 26);

    const RunResult r3072 = run_cli("--lambda 3072 --tau 20 gas-plan");
    REQUIRE(r3072.exit_code == 0);
    const json j3072 = json::parse(r3072.out);
    CHECK(j3072["delta_int"] == 9);
    CHECK(j3072["payload_bytes"] == 7300);

    CHECK(run_cli("--preset 1024 gas-plan").exit_code == 2);  // unknown preset
}

TEST_CASE("cli fit") {
    const RunResult r = run_cli("fit --points \"[[0,1],[1,3],[2,5]]\"");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["slope"].get<double>() == Catch::Approx(2.0));
    CHECK(j["intercept"].get<double>() == Catch::Approx(1.0));
    CHECK(run_cli("fit --points \"[[1,1]]\"").exit_code == 2);
}

TEST_CASE("cli primality and h2p") {
    const RunResult carmichael = run_cli("primality --n 561");
    REQUIRE(carmichael.exit_code == 0);
    CHECK(json::parse(carmichael.out)["verdict"] == "composite");

    const RunResult seven = run_cli("primality --n 7");
    CHECK(json::parse(seven.out)["verdict"] == "probably_prime");

    const RunResult h2p = run_cli("h2p --bits 256 --per-check-gas 21446");
    REQUIRE(h2p.exit_code == 0);
    const json j = json::parse(h2p.out);
    CHECK(j["candidates"] == 5939);
    CHECK(j["total_gas"] == 127367794);
    CHECK(j["feasible"] == false);
}

TEST_CASE("cli reproduce") {
    const RunResult r = run_cli("--json reproduce");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["pass"] == true);
    CHECK(j["rows"].size() == 12);

    // a tampered coefficient file must fail the reproduction
    const auto config_path = temp_file("tampered_config.json");
    write_text(config_path, R"({"presets": {"2048": {"alpha": 5295.73,
        "beta": 999999.0, "gamma": 346.92, "c1": 37610.11, "c2": -157178.66,
        "c3": 33432.08}}})");
    CHECK(run_cli("--config " + config_path.string() + " reproduce").exit_code == 1);
}

TEST_CASE("cli config file and env fallback") {
    const auto config_path = temp_file("config.json");
    write_text(config_path, R"({"block_gas_limit": 1000,
        "presets": {"2048": {"alpha": 5295.73, "beta": 160604.41, "gamma": 346.92,
        "c1": 37610.11, "c2": -157178.66, "c3": 33432.08}}})");

    const RunResult r = run_cli("--config " + config_path.string() + " --lambda 2048 gas-plan");
    REQUIRE(r.exit_code == 0);
    CHECK(json::parse(r.out)["block_gas_limit"] == 1000);

    // same config through the environment variable
    const std::string cmd = "VDF_GASLAB_CONFIG=" + config_path.string() + " " +
                            std::string(VDFGAS_CLI_PATH) + " --lambda 2048 gas-plan";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        out.append(buf.data(), n);
    }
    REQUIRE(pclose(pipe) == 0);
    CHECK(json::parse(out)["block_gas_limit"] == 1000);
}
