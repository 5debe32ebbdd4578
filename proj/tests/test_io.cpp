// test_io.cpp: state files, configuration, CSV and SVG output

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "bhdimer/config.hpp"
#include "bhdimer/io.hpp"
#include "bhdimer/state_io.hpp"
#include "bhdimer/svg.hpp"

using namespace bhdimer;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "bhdimer_test_io";
    fs::create_directories(dir);
    return dir / name;
}

DensityMatrix random_state(int n_max, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    const int d = FockBasis::dim_for(n_max);
    Matrix A(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) A(i, j) = Complex(g(rng), g(rng));
    Matrix R = A * A.adjoint();
    R /= R.trace().real();
    return DensityMatrix(0.5 * (R + R.adjoint()));
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST(StateIo, BinaryRoundTripIsExact) {
    const auto R = random_state(5, 1);
    const auto p = scratch("r.bin").string();
    write_state_binary(p, 5, R);
    EXPECT_EQ(fs::file_size(p), 16u + 16u * 21u * 21u);
    const auto back = read_state(p);
    EXPECT_EQ(back.n_max, 5);
    EXPECT_EQ((back.state.matrix() - R.matrix()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(StateIo, TextRoundTripIsExact) {
    const auto R = random_state(3, 2);
    const auto p = scratch("r.txt").string();
    write_state_text(p, 3, R);
    const auto back = read_state(p);
    EXPECT_EQ(back.n_max, 3);
    EXPECT_EQ((back.state.matrix() - R.matrix()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(StateIo, RejectsDamagedFiles) {
    const auto R = random_state(2, 3);
    const auto p = scratch("d.bin").string();
    write_state_binary(p, 2, R);
    const std::string good = slurp(p);

    auto put = [&](const std::string& bytes) {
        std::ofstream(p, std::ios::binary | std::ios::trunc) << bytes;
    };
    put(good.substr(0, good.size() - 5));
    EXPECT_THROW(read_state(p), FormatError);
    put(good + "x");
    EXPECT_THROW(read_state(p), FormatError);
    std::string bad = good;
    bad[4] = 9; // version
    put(bad);
    EXPECT_THROW(read_state(p), FormatError);
    bad = good;
    bad[12] = 7; // dim no longer matches n_max
    put(bad);
    EXPECT_THROW(read_state(p), FormatError);
    put("garbage");
    EXPECT_THROW(read_state(p), FormatError);
    put("bhdimer-state 1 2 6\n0 0 1 1\n");
    EXPECT_THROW(read_state(p), FormatError);
    EXPECT_THROW(read_state(scratch("missing.bin").string()), FormatError);

    EXPECT_THROW(write_state_binary(p, 3, R), std::invalid_argument);
}

TEST(Config, DefaultsValidateAndRoundTrip) {
    RunConfig c;
    EXPECT_NO_THROW(validate_config(c));
    EXPECT_DOUBLE_EQ(c.dt_max(), c.period() / c.dt_divisor);

    c.gamma = 0.004;
    c.n_max = 12;
    c.leakage_action = LeakageAction::abort;
    c.output_dir = "somewhere";
    RunConfig back;
    apply_config_json(back, config_to_json(c));
    EXPECT_EQ(config_values(back), config_values(c));

    RunConfig from_text;
    std::istringstream in(config_text(c));
    apply_config_text(from_text, in, "mem");
    EXPECT_EQ(config_values(from_text), config_values(c));
}

TEST(Config, TextParsing) {
    RunConfig c;
    std::istringstream in("# comment\n\n  U = 0.5   # trailing\nn_max=7\nsvg = false\n");
    apply_config_text(c, in, "mem");
    EXPECT_DOUBLE_EQ(c.U, 0.5);
    EXPECT_EQ(c.n_max, 7);
    EXPECT_FALSE(c.svg);

    std::istringstream unknown("nonsense = 1\n");
    EXPECT_THROW(apply_config_text(c, unknown, "mem"), ConfigError);
    std::istringstream no_eq("U 0.5\n");
    EXPECT_THROW(apply_config_text(c, no_eq, "mem"), ConfigError);
    EXPECT_THROW(set_config_value(c, "U", "abc"), ConfigError);
    EXPECT_THROW(set_config_value(c, "n_max", "2.5"), ConfigError);
    EXPECT_THROW(set_config_value(c, "leakage_action", "maybe"), ConfigError);
}

TEST(Config, ValidationRejects) {
    auto bad = [](auto mutate) {
        RunConfig c;
        mutate(c);
        EXPECT_THROW(validate_config(c), ConfigError);
    };
    bad([](RunConfig& c) { c.J = 0.0; });
    bad([](RunConfig& c) { c.detuning_f = c.detuning_in; });
    bad([](RunConfig& c) { c.detuning_sign = 0.5; });
    bad([](RunConfig& c) { c.n_max = 0; });
    bad([](RunConfig& c) { c.project_sector = c.n_max + 1; });
    bad([](RunConfig& c) { c.jo_periods = 0.0; });
    bad([](RunConfig& c) { c.output_dir.clear(); });
}

TEST(Config, LoadsManifest) {
    RunConfig c;
    c.U = 0.3;
    const auto p = scratch("manifest.json");
    write_json(p, {{"tool", "bhdimer"}, {"config", config_to_json(c)}});
    EXPECT_DOUBLE_EQ(load_config(p.string()).U, 0.3);

    std::ofstream(scratch("broken.json")) << "{ not json";
    EXPECT_THROW(load_config(scratch("broken.json").string()), ConfigError);
    EXPECT_THROW(load_config(scratch("nope.conf").string()), ConfigError);
}

TEST(Csv, WritesFullPrecisionAndChecksWidth) {
    const auto p = scratch("t.csv");
    CsvWriter w(p, {"a", "b"});
    w.row({0.1, 1.0 / 3.0});
    EXPECT_THROW(w.row({1.0}), std::logic_error);
    w.close();
    EXPECT_EQ(w.rows(), 1u);
    EXPECT_EQ(slurp(p), "a,b\n0.10000000000000001,0.33333333333333331\n");
}

TEST(Svg, RendersSeries) {
    svg::Plot plot{"t <&> title", "x", "y", {{{0, 1, 2}, {0, 1, 4}, "s1"}, {{0, 2}, {1, 1}, "", "#ff0000", true}}};
    const std::string s = svg::render(plot);
    EXPECT_EQ(s.rfind("<svg", 0), 0u);
    EXPECT_NE(s.find("t &lt;&amp;&gt; title"), std::string::npos);
    EXPECT_NE(s.find("stroke-dasharray"), std::string::npos);
    EXPECT_EQ(s.substr(s.size() - 7), "</svg>\n");

    svg::Plot empty;
    EXPECT_NO_THROW(svg::render(empty));
}
