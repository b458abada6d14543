#include "gsx/cli.hpp"
#include "gsx/error.hpp"
#include "gsx/io.hpp"

#include <algorithm>
#include <cmath>
#include <doctest.h>
#include <filesystem>
#include <fmt/core.h>
#include <numbers>
#include <unistd.h>

using namespace gsx;
using namespace gsx::cli;
namespace fs = std::filesystem;

namespace {

struct Scratch {
    fs::path dir;
    explicit Scratch(const char* name)
        : dir(fs::temp_directory_path() / fmt::format("gsx_cli_{}_{}", name, static_cast<long>(::getpid()))) {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string path(const char* file) const { return (dir / file).string(); }
    int entries() const {
        return static_cast<int>(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}));
    }
};

bool mentions(const std::vector<std::string>& diags, const std::string& needle) {
    return std::any_of(diags.begin(), diags.end(), [&](const std::string& d) { return d.find(needle) != std::string::npos; });
}

CommandConfig neighbor_sweep() {
    CommandConfig c;
    c.subcommand = "sweep";
    c.model = "kitaev";
    c.n = 124;
    c.mode = "neighbor";
    c.epsilon = 0.002;
    c.out = "neighbor.csv";
    return c;
}

} // namespace

TEST_CASE("well-formed neighbor sweep validates cleanly") {
    CHECK(validate(neighbor_sweep()).empty());
}

TEST_CASE("validation names the offending values") {
    CommandConfig c = neighbor_sweep();
    c.delta = 1.5;
    CHECK(mentions(validate(c), "delta out of [-1,1]"));

    CommandConfig o;
    o.subcommand = "oracle-check";
    o.n = 20;
    o.out = "x.csv";
    CHECK(mentions(validate(o), "oracle capped at n <= 12"));
    o.n = 6;
    CHECK(validate(o).empty());
    o.n = 7;
    CHECK(mentions(validate(o), "even n"));
}

TEST_CASE("validation reports every problem at once") {
    CommandConfig c = neighbor_sweep();
    c.delta = 1.5;
    c.ref_delta = -3.0;
    c.step = 0.0;
    c.mode = "sideways";
    c.out.clear();
    const auto d = validate(c);
    CHECK(d.size() == 5);
    CHECK(mentions(d, "--out"));
    CHECK(mentions(d, "--ref-delta"));
    CHECK(mentions(d, "--step"));
    CHECK(mentions(d, "--mode"));

    CommandConfig m = neighbor_sweep();
    m.model = "ising";
    CHECK(mentions(validate(m), "unknown model 'ising' (--model)"));
    m.model = "rainbow";
    CHECK(mentions(validate(m), "no delta to sweep"));

    CommandConfig s;
    s.subcommand = "scaling";
    s.out = "s.csv";
    s.models = {"ssh:1", "ising", "random_chiral"};
    s.sizes = "7,8";
    const auto sd = validate(s);
    CHECK(mentions(sd, "unknown model 'ising'"));
    CHECK(mentions(sd, "n=7"));
    CHECK(validate(CommandConfig{}).size() == 1);
}

TEST_CASE("size and site lists") {
    CHECK(parse_sizes("8:124") == std::vector<int>{8, 16, 32, 64, 124});
    CHECK(parse_sizes("8:8") == std::vector<int>{8});
    CHECK(parse_sizes("4,6,10") == std::vector<int>{4, 6, 10});
    CHECK_THROWS_AS(parse_sizes("8:4"), InvalidInput);
    CHECK_THROWS_AS(parse_sizes("a"), InvalidInput);
    CHECK_THROWS_AS(parse_sizes(""), InvalidInput);
    CHECK(parse_sites("1-4") == std::vector<int>{1, 2, 3, 4});
    CHECK(parse_sites("1,3,5") == std::vector<int>{1, 3, 5});
    CHECK(parse_sites("2-3,7") == std::vector<int>{2, 3, 7});
    CHECK_THROWS_AS(parse_sites("4-1"), InvalidInput);
    CHECK_THROWS_AS(parse_sites("x"), InvalidInput);
}

TEST_CASE("config json round-trip") {
    CommandConfig c = neighbor_sweep();
    c.delta = 0.25;
    c.threads = 3;
    c.models = {"ssh:1"};
    const CommandConfig back = config_from_json(cli::to_json(c));
    CHECK(cli::to_json(back) == cli::to_json(c));
    CHECK_THROWS_AS(config_from_json(nlohmann::json{{"n", "many"}}), InvalidInput);
}

TEST_CASE("exit codes") {
    Scratch s("exit");
    CHECK(run({"sweep", "--model", "kitaev", "--n", "8", "--delta-min", "-0.5", "--delta-max", "0.5", "--step", "0.25", "--out",
               s.path("ok.csv")}) == 0);
    CHECK(fs::exists(s.path("ok.csv")));
    CHECK(fs::exists(s.path("ok.csv.json")));
    CHECK(run({"sweep", "--model", "kitaev", "--n", "8", "--ref-delta", "1.5", "--out", s.path("bad.csv")}) == 1);
    CHECK(run({"bogus"}) == 1);
    CHECK(run({"sweep", "--no-such-flag"}) == 1);
    CHECK(run({"oracle-check", "--n", "20", "--out", s.path("o.csv")}) == 1);
    CHECK(run({"ee", "--model", "ising", "--out", s.path("e.csv")}) == 1);
    CHECK(run({"oracle-check", "--n", "4", "--cases", "5", "--seed", "7", "--out", s.path("o.csv")}) == 0);
    CHECK(run({"--help"}) == 0);
}

TEST_CASE("every run writes exactly one data file and one sidecar") {
    Scratch s("files");
    CHECK(run({"ee", "--model", "ssh", "--n", "8", "--delta", "0.3", "--out", s.path("ee.csv")}) == 0);
    CHECK(s.entries() == 2);
    const auto side = nlohmann::json::parse(io::read_file(s.path("ee.csv.json")));
    CHECK(side["version"] == io::kToolVersion);
    CHECK(side["config"]["subcommand"] == "ee");
    const auto t = io::parse_csv(io::read_file(s.path("ee.csv")));
    CHECK(t.columns == std::vector<std::string>{"subsystem_size", "entropy"});
    CHECK(t.rows.size() == 7);
}

TEST_CASE("failed runs leave no files behind") {
    Scratch s("partial");
    CHECK(run({"sweep", "--model", "kitaev", "--n", "8", "--delta-min", "0.5", "--delta-max", "-0.5", "--out", s.path("a.csv")}) == 1);
    CHECK(run({"sweep", "--model", "kitaev", "--n", "8", "--step", "1e-9", "--out", s.path("b.csv")}) == 1);
    CHECK(run({"ee", "--model", "ssh", "--n", "8", "--delta", "0", "--out", s.path("missing/c.csv")}) == 1);
    CHECK(s.entries() == 0);
}

TEST_CASE("sidecar replays the run bit-exactly") {
    Scratch s("replay");
    const std::vector<std::vector<std::string>> runs{
        {"sweep", "--model", "ssh", "--n", "12", "--mode", "neighbor", "--epsilon", "0.01", "--step", "0.1", "--out"},
        {"spectrum", "--model", "kitaev", "--n", "10", "--step", "0.2", "--format", "json", "--out"},
        {"scaling", "--models", "ssh:1,random_chain:3,random_chiral", "--sizes", "4:16", "--seed", "11", "--out"},
        {"ee", "--model", "random_chiral", "--n", "8", "--seed", "5", "--covariance", "interleaved", "--out"},
        {"oracle-check", "--n", "4", "--cases", "3", "--seed", "2", "--out"}};
    int k = 0;
    for (auto args : runs) {
        const std::string first = s.path(fmt::format("r{}.dat", k).c_str());
        const std::string second = s.path(fmt::format("r{}_again.dat", k).c_str());
        args.push_back(first);
        CAPTURE(args.front());
        REQUIRE(run(args) == 0);
        REQUIRE(run({args.front(), "--config", io::sidecar_path(first), "--out", second}) == 0);
        CHECK(io::read_file(first) == io::read_file(second));
        ++k;
    }
    CHECK(run({"ee", "--config", io::sidecar_path(s.path("r0.dat")), "--out", s.path("x.dat")}) == 1);
}

TEST_CASE("scaling output carries the vacuum distance") {
    Scratch s("scaling");
    REQUIRE(run({"scaling", "--models", "ssh:1,ssh:0,rainbow:1,random_chain,random_chiral", "--sizes", "8:32", "--reference",
                 "fock", "--out", s.path("vacuum_scaling.csv")}) == 0);
    const auto t = io::parse_csv(io::read_file(s.path("vacuum_scaling.csv")));
    CHECK(t.columns == std::vector<std::string>{"model", "n", "complexity", "entropy_half", "obstructed"});
    REQUIRE(t.rows.size() == 15);
    const auto n = t.column("n");
    const auto c = t.column("complexity");
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        CHECK(*c[i] == doctest::Approx(std::sqrt(*n[i]) * std::numbers::pi / 2).epsilon(1e-10));
}
