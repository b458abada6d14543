#include "gsx/error.hpp"
#include "gsx/measures.hpp"
#include "gsx/models.hpp"
#include "gsx/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <doctest.h>
#include <numbers>
#include <stdexcept>

using namespace gsx;
using namespace gsx::sweep;
using models::Kind;
using models::ModelSpec;

namespace {

ModelSpec family(Kind kind, int n) {
    ModelSpec s;
    s.kind = kind;
    s.n = n;
    return s;
}

bool same_rows(const SweepTable& a, const SweepTable& b) {
    if (a.rows.size() != b.rows.size()) return false;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        const auto& x = a.rows[i];
        const auto& y = b.rows[i];
        if (x.delta != y.delta || x.complexity != y.complexity || x.fidelity != y.fidelity ||
            x.fubini_study != y.fubini_study || x.entropy_half != y.entropy_half || x.d2_fidelity != y.d2_fidelity ||
            x.d2_complexity != y.d2_complexity)
            return false;
    }
    return true;
}

} // namespace

TEST_CASE("grid construction") {
    const Grid g = default_grid();
    REQUIRE(g.points.size() == 401);
    CHECK(g.points.front() == -1.0);
    CHECK(g.points.back() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(g.points[200] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(make_grid(0.5, 0.5, 0.1).points.size() == 1);
    CHECK_THROWS_AS(make_grid(0.0, 1.0, 0.0), InvalidInput);
    CHECK_THROWS_AS(make_grid(1.0, 0.0, 0.1), InvalidInput);
}

TEST_CASE("mode names round-trip") {
    CHECK(mode_from_string(to_string(Mode::fixed_ref)) == Mode::fixed_ref);
    CHECK(mode_from_string(to_string(Mode::neighbor)) == Mode::neighbor);
    CHECK_THROWS_AS(mode_from_string("adjacent"), InvalidMode);
}

TEST_CASE("fixed reference sweep is trivial at the reference point") {
    for (Kind kind : {Kind::ssh, Kind::kitaev}) {
        const auto t = sweep_fixed_reference(family(kind, 16), -1.0, make_grid(-1.0, 1.0, 0.25));
        REQUIRE(t.rows.size() == 9);
        CHECK(*t.rows.front().complexity <= 1e-12);
        CHECK(t.rows.front().fidelity == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(t.rows.front().fubini_study <= 1e-12);
        CHECK_FALSE(t.rows.front().d2_fidelity.has_value());
        CHECK(t.rows[1].d2_fidelity.has_value());
        CHECK_FALSE(t.rows.back().d2_complexity.has_value());
        CHECK(t.meta.ref_delta == -1.0);
        CHECK_FALSE(t.meta.model.delta.has_value());
        // Complexity grows as the target leaves the reference.
        for (std::size_t i = 1; i < t.rows.size(); ++i) CHECK(*t.rows[i].complexity >= *t.rows[i - 1].complexity - 1e-12);
    }
}

TEST_CASE("ssh of 2L sites doubles the kitaev chain of L sites") {
    const Grid g = make_grid(-1.0, 1.0, 0.125);
    for (int l : {8, 16}) {
        const auto k = sweep_fixed_reference(family(Kind::kitaev, l), -1.0, g);
        const auto s = sweep_fixed_reference(family(Kind::ssh, 2 * l), -1.0, g);
        for (std::size_t i = 0; i < g.points.size(); ++i) {
            CAPTURE(g.points[i]);
            CHECK(*s.rows[i].complexity == doctest::Approx(std::sqrt(2.0) * *k.rows[i].complexity).epsilon(1e-9));
            CHECK(s.rows[i].fidelity == doctest::Approx(k.rows[i].fidelity * k.rows[i].fidelity).epsilon(1e-9));
        }
    }
}

TEST_CASE("neighbor sweep with zero epsilon is flat") {
    const auto t = sweep_neighbor(family(Kind::kitaev, 12), 0.0, make_grid(-1.0, 1.0, 0.1));
    CHECK(t.rows.size() == 21);
    CHECK_FALSE(t.meta.clipped);
    for (const auto& r : t.rows) {
        CHECK(*r.complexity == 0.0);
        CHECK(r.fidelity == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("neighbor sweep drops points beyond the end of the range") {
    const auto t = sweep_neighbor(family(Kind::ssh, 8), 0.002, default_grid());
    CHECK(t.rows.size() == 400);
    CHECK(t.meta.clipped);
    CHECK(t.rows.back().delta == doctest::Approx(0.995).epsilon(1e-13));
    CHECK(*t.meta.epsilon == 0.002);
    CHECK_THROWS_AS(sweep_neighbor(family(Kind::ssh, 8), 0.5, make_grid(0.8, 1.0, 0.1)), InvalidInput);
    CHECK_THROWS_AS(sweep_neighbor(family(Kind::ssh, 8), -0.1, default_grid()), InvalidInput);
}

TEST_CASE("neighbor complexity is linear in epsilon away from the critical point") {
    const Grid one = make_grid(0.5, 0.5, 0.01);
    const auto big = sweep_neighbor(family(Kind::kitaev, 32), 0.002, one);
    const auto small = sweep_neighbor(family(Kind::kitaev, 32), 0.001, one);
    const auto& sb = big.rows.front();
    const auto& ss = small.rows.front();
    // Sum of squared phases scales with epsilon squared.
    const double ratio = (*sb.complexity * *sb.complexity) / (*ss.complexity * *ss.complexity);
    CHECK(ratio == doctest::Approx(4.0).epsilon(5e-3));
}

TEST_CASE("sweeps reject unsweepable families and bad inputs") {
    for (Kind kind : {Kind::rainbow, Kind::random_chain, Kind::random_chiral}) {
        CHECK_THROWS_AS(sweep_fixed_reference(family(kind, 8), -1.0, default_grid()), InvalidMode);
        CHECK_THROWS_AS(sweep_neighbor(family(kind, 8), 0.002, default_grid()), InvalidMode);
        CHECK_THROWS_AS(spectral_flow(family(kind, 8), Mode::neighbor, default_grid(), 0.002, std::nullopt), InvalidMode);
    }
    CHECK_THROWS_AS(sweep_fixed_reference(family(Kind::ssh, 8), 1.5, default_grid()), InvalidInput);
    Grid bad;
    bad.points = {0.0, 0.1, 0.3};
    bad.step = 0.1;
    CHECK_THROWS(sweep_fixed_reference(family(Kind::ssh, 8), -1.0, bad));
    Grid outside = make_grid(0.5, 1.5, 0.5);
    CHECK_THROWS_AS(sweep_fixed_reference(family(Kind::ssh, 8), -1.0, outside), InvalidInput);
    CHECK_THROWS_AS(sweep_fixed_reference(family(Kind::ssh, 8), -1.0, Grid{}), InvalidInput);
}

TEST_CASE("sweeps are deterministic and independent of the thread count") {
    const Grid g = make_grid(-1.0, 1.0, 0.05);
    const auto a = sweep_fixed_reference(family(Kind::kitaev, 24), -1.0, g, 1);
    const auto b = sweep_fixed_reference(family(Kind::kitaev, 24), -1.0, g, 1);
    const auto c = sweep_fixed_reference(family(Kind::kitaev, 24), -1.0, g, 3);
    CHECK(same_rows(a, b));
    CHECK(same_rows(a, c));
    const auto n1 = sweep_neighbor(family(Kind::ssh, 20), 0.002, g, 1);
    const auto n4 = sweep_neighbor(family(Kind::ssh, 20), 0.002, g, 4);
    CHECK(same_rows(n1, n4));
}

TEST_CASE("spectral flow at the reference point is zero") {
    const auto f = spectral_flow(family(Kind::ssh, 12), Mode::fixed_ref, make_grid(-1.0, 1.0, 0.1), std::nullopt, -1.0);
    REQUIRE(f.delta.size() == 21);
    REQUIRE(f.phases.size() == 21);
    CHECK(f.phases.front().size() == 6);
    for (double p : f.phases.front()) CHECK(std::abs(p) <= 1e-12);
    for (const auto& row : f.phases)
        for (double p : row) {
            CHECK(p >= -1e-12);
            CHECK(p <= std::numbers::pi + 1e-12);
        }
    // The flow reproduces the sweep complexity.
    const auto t = sweep_fixed_reference(family(Kind::ssh, 12), -1.0, make_grid(-1.0, 1.0, 0.1));
    for (std::size_t i = 0; i < f.delta.size(); ++i) {
        double sq = 0.0;
        for (double p : f.phases[i]) sq += p * p;
        CHECK(std::sqrt(sq) == doctest::Approx(*t.rows[i].complexity).epsilon(1e-10));
    }
}

TEST_CASE("spectral flow in neighbor mode") {
    const auto f = spectral_flow(family(Kind::kitaev, 8), Mode::neighbor, default_grid(), 0.002, std::nullopt);
    CHECK(f.delta.size() == 400);
    CHECK(f.meta.clipped);
    CHECK(*f.meta.epsilon == 0.002);
    for (const auto& row : f.phases) CHECK(row.size() == 4);
}

TEST_CASE("phase tracking follows crossing curves") {
    // Two lines crossing at row 5; the raw rows are sorted so the labels swap there.
    std::vector<std::vector<double>> raw;
    for (int i = 0; i < 11; ++i) {
        const double a = 0.1 * i;
        const double b = 1.0 - 0.1 * i;
        raw.push_back({std::min(a, b), std::max(a, b)});
    }
    std::vector<int> ambiguous;
    const auto tracked = track_phases(raw, &ambiguous);
    REQUIRE(tracked.size() == 11);
    for (int i = 0; i < 11; ++i) {
        CHECK(tracked[i][0] == doctest::Approx(0.1 * i));
        CHECK(tracked[i][1] == doctest::Approx(1.0 - 0.1 * i));
    }
    CHECK(track_phases({}).empty());
    CHECK_THROWS_AS(track_phases({{0.0, 1.0}, {0.5}}), InvalidInput);
}

TEST_CASE("phase tracking flags ties") {
    std::vector<int> ambiguous;
    track_phases({{0.5, 0.5}, {0.4, 0.6}}, &ambiguous);
    REQUIRE(ambiguous.size() == 1);
    CHECK(ambiguous.front() == 1);
    ambiguous.clear();
    track_phases({{0.1, 0.9}, {0.2, 0.8}, {0.3, 0.7}}, &ambiguous);
    CHECK(ambiguous.empty());
}

TEST_CASE("half-filled models sit at the same distance from the fock vacuum") {
    std::vector<ModelSpec> specs;
    ModelSpec ssh = family(Kind::ssh, 0);
    ssh.delta = 1.0;
    ModelSpec flat = family(Kind::ssh, 0);
    flat.delta = 0.0;
    ModelSpec rain = family(Kind::rainbow, 0);
    rain.h = 1.0;
    ModelSpec rc = family(Kind::random_chain, 0);
    rc.seed = 5;
    ModelSpec rx = family(Kind::random_chiral, 0);
    rx.seed = 5;
    specs = {ssh, flat, rain, rc, rx};
    const auto rows = scaling_run(specs, {16}, Reference::fock);
    REQUIRE(rows.size() == 5);
    for (const auto& r : rows) {
        CAPTURE(r.model);
        CHECK(r.n == 16);
        REQUIRE(r.complexity.has_value());
        CHECK(*r.complexity == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-8));
        CHECK_FALSE(r.obstructed);
    }
}

TEST_CASE("scaling flags parity obstructions") {
    ModelSpec ssh = family(Kind::ssh, 0);
    ssh.delta = 1.0;
    // Six sites in the dimerised phase hold three fermions: odd parity against the vacuum.
    const auto rows = scaling_run({ssh}, {6, 8}, Reference::fock);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].obstructed);
    CHECK_FALSE(rows[0].complexity.has_value());
    CHECK_FALSE(rows[1].obstructed);
    CHECK_THROWS_AS(scaling_run({family(Kind::random_chiral, 0)}, {7}, Reference::fock), InvalidInput);
}

TEST_CASE("reference states") {
    CHECK(reference_from_string("kitaev_trivial") == Reference::kitaev_trivial);
    CHECK(to_string(Reference::ssh_trivial) == "ssh_trivial");
    CHECK_THROWS_AS(reference_from_string("bogus"), InvalidInput);
    CHECK(reference_state(Reference::fock, 4).gamma() == gaussian::fock_vacuum(4).gamma());
    CHECK(reference_state(Reference::kitaev_trivial, 6).n_modes() == 6);
}

TEST_CASE("thread count resolution") {
    CHECK(resolve_threads(3) == 3);
    ::setenv("GSX_THREADS", "5", 1);
    CHECK(resolve_threads(std::nullopt) == 5);
    CHECK(resolve_threads(2) == 2);
    ::setenv("GSX_THREADS", "junk", 1);
    CHECK(resolve_threads(std::nullopt) >= 1);
    ::unsetenv("GSX_THREADS");
    CHECK(resolve_threads(std::nullopt) >= 1);
    CHECK(resolve_threads(0) >= 1);
}

TEST_CASE("parallel loop visits every index and propagates failures") {
    std::vector<std::atomic<int>> hits(100);
    parallel_for(100, 4, [&](int i) { ++hits[i]; });
    for (const auto& h : hits) CHECK(h.load() == 1);
    CHECK_THROWS_AS(parallel_for(50, 3,
                                 [](int i) {
                                     if (i == 17) throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
    parallel_for(0, 4, [](int) { throw std::runtime_error("never"); });
}
