#include <doctest.h>

#include <stdexcept>

#include <filesystem>
#include <fstream>

#include "fractalfilter/manifest.hpp"
#include "fractalfilter/signal.hpp"
#include "fractalfilter/signal_io.hpp"

using namespace fractalfilter;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    const fs::path dir = fs::path(TEST_SCRATCH_DIR) / "io";
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("signal csv round trip is bit-exact") {
    const fs::path path = scratch_dir() / "roundtrip.csv";
    Signal s = gen_trig(333, 2.0);
    s.samples[5] = 1.0 / 3.0;
    s.samples[6] = -1e-17;
    s.samples[7] = 12345678.987654321;
    write_signal_csv(path, s);

    const Signal back = read_signal_csv(path);
    REQUIRE(back.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(back.samples[i] == s.samples[i]);
    CHECK(back.dx == doctest::Approx(s.dx).epsilon(1e-12));
    CHECK(back.x0 == s.x0);
}

TEST_CASE("sidecar overrides dx and x0 and carries the seed") {
    const fs::path path = scratch_dir() / "meta.csv";
    Signal s = gen_step(16);
    write_signal_csv(path, s);
    SignalMeta meta;
    meta.dx = 0.25;
    meta.x0 = -1.0;
    meta.description = "step generator";
    meta.seed = 777;
    write_sidecar(path, meta);

    const Signal back = read_signal_csv(path);
    CHECK(back.dx == 0.25);
    CHECK(back.x0 == -1.0);
    const auto read_back = read_sidecar(path);
    REQUIRE(read_back.has_value());
    CHECK(read_back->seed == 777);
    CHECK(read_back->description == "step generator");
}

TEST_CASE("reader rejects malformed files") {
    const fs::path dir = scratch_dir();
    SUBCASE("bad header") {
        const fs::path p = dir / "bad_header.csv";
        std::ofstream(p) << "time,val\n0,1\n1,2\n";
        CHECK_THROWS_AS(read_signal_csv(p), std::invalid_argument);
    }
    SUBCASE("non-uniform spacing") {
        const fs::path p = dir / "non_uniform.csv";
        std::ofstream(p) << "x,value\n0,1\n1,2\n2.5,3\n";
        CHECK_THROWS_AS(read_signal_csv(p), std::invalid_argument);
    }
    SUBCASE("decreasing x") {
        const fs::path p = dir / "decreasing.csv";
        std::ofstream(p) << "x,value\n2,1\n1,2\n0,3\n";
        CHECK_THROWS_AS(read_signal_csv(p), std::invalid_argument);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(read_signal_csv(dir / "nope.csv"), std::invalid_argument);
    }
    SUBCASE("garbage value") {
        const fs::path p = dir / "garbage.csv";
        std::ofstream(p) << "x,value\n0,1\n1,abc\n";
        CHECK_THROWS_AS(read_signal_csv(p), std::invalid_argument);
    }
}

TEST_CASE("reader accepts CRLF line endings") {
    const fs::path p = scratch_dir() / "crlf.csv";
    std::ofstream(p, std::ios::binary) << "x,value\r\n0,1.5\r\n0.5,2.5\r\n1,3.5\r\n";
    const Signal s = read_signal_csv(p);
    REQUIRE(s.size() == 3);
    CHECK(s.samples[1] == 2.5);
    CHECK(s.dx == doctest::Approx(0.5));
}

TEST_CASE("manifest round trip") {
    const fs::path p = scratch_dir() / "m.json";
    RunManifest m;
    m.command = "filter";
    m.argv = {"filter", "fft", "--in", "a.csv", "--out", "b.csv"};
    m.parameters = {{"a", 0.25}, {"lambda", 1.5}};
    m.details = {{"characteristic_frequencies", {{"xi_1", 25.0}}}};
    m.timestamp = utc_timestamp();
    m.seed = 42;
    m.save(p);

    const RunManifest back = RunManifest::load(p);
    CHECK(back.command == m.command);
    CHECK(back.argv == m.argv);
    CHECK(back.parameters["lambda"] == 1.5);
    CHECK(back.details["characteristic_frequencies"]["xi_1"] == 25.0);
    CHECK(back.seed == 42);
}

TEST_CASE("rewrite_output_paths rebases only output flags") {
    const std::vector<std::string> argv = {"filter", "fft",  "--in",       "in/sig.csv",
                                           "--out",  "x.csv", "--manifest", "m.json"};
    const auto out = rewrite_output_paths(argv, "newdir");
    CHECK(out[3] == "in/sig.csv");  // inputs untouched
    CHECK(out[5] == fs::path("newdir/x.csv").string());
    CHECK(out[7] == fs::path("newdir/m.json").string());
}
