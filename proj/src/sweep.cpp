#include "gsx/sweep.hpp"

#include "gsx/error.hpp"
#include "gsx/measures.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fmt/core.h>
#include <mutex>
#include <numbers>
#include <thread>
#include <tuple>

namespace gsx::sweep {

using gaussian::MajoranaCovariance;
using models::ModelSpec;

namespace {

ModelSpec at_delta(const ModelSpec& family, double delta) {
    ModelSpec s = family;
    s.delta = delta;
    return s;
}

void require_delta_family(const ModelSpec& family) {
    if (!family.has_delta())
        throw InvalidMode(fmt::format("{} has no delta parameter to sweep", models::to_string(family.kind)));
    if (family.n < 2) throw InvalidInput(fmt::format("n must be at least 2, got {}", family.n));
}

void require_in_range(double delta, const char* what) {
    if (!(delta >= -1.0 && delta <= 1.0)) throw InvalidInput(fmt::format("{} out of [-1,1]: {}", what, delta));
}

void check_grid(const Grid& grid) {
    if (grid.points.empty()) throw InvalidInput("empty grid");
    for (double d : grid.points) require_in_range(d, "delta");
    if (grid.points.size() >= 3) measures::uniform_step(grid.points);
    for (std::size_t i = 1; i < grid.points.size(); ++i)
        if (!(grid.points[i] > grid.points[i - 1])) throw InvalidInput("grid must be strictly ascending");
}

std::vector<MajoranaCovariance> ground_states(const ModelSpec& family, const std::vector<double>& deltas, int threads) {
    std::vector<std::optional<MajoranaCovariance>> slots(deltas.size());
    parallel_for(static_cast<int>(deltas.size()), threads,
                 [&](int i) { slots[i] = models::ground_state(at_delta(family, deltas[i])); });
    std::vector<MajoranaCovariance> out;
    out.reserve(slots.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

void fill_derivatives(SweepTable& t) {
    auto& rows = t.rows;
    if (rows.size() < 3) return;
    const double h = t.meta.step;
    for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
        rows[i].d2_fidelity = (rows[i + 1].fidelity - 2.0 * rows[i].fidelity + rows[i - 1].fidelity) / (h * h);
        if (rows[i - 1].complexity && rows[i].complexity && rows[i + 1].complexity)
            rows[i].d2_complexity = (*rows[i + 1].complexity - 2.0 * *rows[i].complexity + *rows[i - 1].complexity) / (h * h);
    }
}

SweepRow make_row(double delta, const measures::MeasureResult& r, double entropy) {
    SweepRow row;
    row.delta = delta;
    row.complexity = r.complexity;
    row.fidelity = r.fidelity;
    row.fubini_study = r.fubini_study;
    row.entropy_half = entropy;
    return row;
}

std::vector<double> flow_row(const skewlin::PhaseSpectrum& s, int width) {
    std::vector<double> row = s.quadruplets;
    row.insert(row.end(), static_cast<std::size_t>(s.n_zero_pairs / 2), 0.0);
    row.insert(row.end(), static_cast<std::size_t>(s.n_pi_pairs / 2), std::numbers::pi);
    row.resize(static_cast<std::size_t>(width), 0.0);
    std::sort(row.begin(), row.end());
    return row;
}

} // namespace

Grid make_grid(double start, double stop, double step) {
    if (!(step > 0.0)) throw InvalidInput(fmt::format("grid step must be positive, got {}", step));
    if (!(stop >= start)) throw InvalidInput(fmt::format("grid end {} lies below its start {}", stop, start));
    const auto count = static_cast<long>(std::floor((stop - start) / step + 0.5)) + 1;
    if (count > 10'000'000) throw InvalidInput("grid too large");
    Grid g;
    g.step = step;
    g.points.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) g.points.push_back(start + static_cast<double>(i) * step);
    return g;
}

Grid default_grid() {
    return make_grid(-1.0, 1.0, 0.005);
}

std::string to_string(Mode m) {
    return m == Mode::fixed_ref ? "fixed_ref" : "neighbor";
}

Mode mode_from_string(const std::string& s) {
    if (s == "fixed_ref") return Mode::fixed_ref;
    if (s == "neighbor") return Mode::neighbor;
    throw InvalidMode(fmt::format("unknown sweep mode '{}'", s));
}

SweepTable sweep_fixed_reference(const ModelSpec& family, double ref_delta, const Grid& grid, int threads) {
    require_delta_family(family);
    require_in_range(ref_delta, "ref_delta");
    check_grid(grid);

    const MajoranaCovariance ref = models::ground_state(at_delta(family, ref_delta));
    const auto targets = ground_states(family, grid.points, threads);

    SweepTable t;
    t.meta = {family, Mode::fixed_ref, std::nullopt, ref_delta, grid.step, false};
    t.meta.model.delta.reset();
    t.rows.resize(grid.points.size());
    parallel_for(static_cast<int>(grid.points.size()), threads, [&](int i) {
        t.rows[i] = make_row(grid.points[i], measures::compare(ref, targets[i]), measures::half_chain_entropy(targets[i]));
    });
    fill_derivatives(t);
    return t;
}

SweepTable sweep_neighbor(const ModelSpec& family, double epsilon, const Grid& grid, int threads) {
    require_delta_family(family);
    if (!(epsilon >= 0.0)) throw InvalidInput(fmt::format("epsilon must be non-negative, got {}", epsilon));
    check_grid(grid);

    std::vector<double> kept;
    for (double d : grid.points)
        if (d + epsilon <= 1.0 + 1e-12) kept.push_back(d);
    if (kept.empty()) throw InvalidInput("every grid point has delta + epsilon > 1");
    std::vector<double> shifted;
    for (double d : kept) shifted.push_back(std::min(d + epsilon, 1.0));

    const auto refs = ground_states(family, kept, threads);
    const auto targets = ground_states(family, shifted, threads);

    SweepTable t;
    t.meta = {family, Mode::neighbor, epsilon, std::nullopt, grid.step, kept.size() < grid.points.size()};
    t.meta.model.delta.reset();
    t.rows.resize(kept.size());
    parallel_for(static_cast<int>(kept.size()), threads, [&](int i) {
        t.rows[i] = make_row(kept[i], measures::compare(refs[i], targets[i]), measures::half_chain_entropy(refs[i]));
    });
    fill_derivatives(t);
    return t;
}

std::vector<std::vector<double>> track_phases(const std::vector<std::vector<double>>& raw, std::vector<int>* ambiguous_rows) {
    std::vector<std::vector<double>> out;
    if (raw.empty()) return out;
    const std::size_t width = raw.front().size();
    out.push_back(raw.front());
    std::sort(out.back().begin(), out.back().end());
    for (std::size_t i = 1; i < raw.size(); ++i) {
        if (raw[i].size() != width) throw InvalidInput(fmt::format("phase row {} has width {}, expected {}", i, raw[i].size(), width));
        std::vector<double> pred(width);
        for (std::size_t j = 0; j < width; ++j) pred[j] = i >= 2 ? 2.0 * out[i - 1][j] - out[i - 2][j] : out[i - 1][j];

        std::vector<std::tuple<double, std::size_t, std::size_t>> cost;
        cost.reserve(width * width);
        for (std::size_t j = 0; j < width; ++j)
            for (std::size_t k = 0; k < width; ++k) cost.emplace_back(std::abs(pred[j] - raw[i][k]), j, k);
        std::sort(cost.begin(), cost.end());

        std::vector<double> row(width, 0.0);
        std::vector<char> track_done(width, 0), cand_done(width, 0);
        bool ambiguous = false;
        for (std::size_t c = 0; c < cost.size(); ++c) {
            const auto [d, j, k] = cost[c];
            if (track_done[j] || cand_done[k]) continue;
            for (std::size_t e = c + 1; e < cost.size() && std::get<0>(cost[e]) - d <= 1e-12; ++e) {
                const auto [d2, j2, k2] = cost[e];
                if (j2 == j && !cand_done[k2] && std::abs(raw[i][k2] - raw[i][k]) > 1e-12) ambiguous = true;
            }
            row[j] = raw[i][k];
            track_done[j] = cand_done[k] = 1;
        }
        if (ambiguous && ambiguous_rows) ambiguous_rows->push_back(static_cast<int>(i));
        out.push_back(std::move(row));
    }
    return out;
}

SpectralFlow spectral_flow(const ModelSpec& family, Mode mode, const Grid& grid, std::optional<double> epsilon,
                           std::optional<double> ref_delta, int threads) {
    require_delta_family(family);
    check_grid(grid);
    SpectralFlow flow;
    flow.meta.model = family;
    flow.meta.model.delta.reset();
    flow.meta.mode = mode;
    flow.meta.step = grid.step;

    std::vector<MajoranaCovariance> refs, targets;
    if (mode == Mode::fixed_ref) {
        const double r = ref_delta.value_or(-1.0);
        require_in_range(r, "ref_delta");
        flow.meta.ref_delta = r;
        flow.delta = grid.points;
        refs.assign(1, models::ground_state(at_delta(family, r)));
        targets = ground_states(family, flow.delta, threads);
    } else {
        const double eps = epsilon.value_or(0.002);
        if (!(eps >= 0.0)) throw InvalidInput(fmt::format("epsilon must be non-negative, got {}", eps));
        flow.meta.epsilon = eps;
        std::vector<double> shifted;
        for (double d : grid.points)
            if (d + eps <= 1.0 + 1e-12) {
                flow.delta.push_back(d);
                shifted.push_back(std::min(d + eps, 1.0));
            }
        flow.meta.clipped = flow.delta.size() < grid.points.size();
        refs = ground_states(family, flow.delta, threads);
        targets = ground_states(family, shifted, threads);
    }

    const int width = family.n / 2;
    std::vector<std::vector<double>> raw(flow.delta.size());
    parallel_for(static_cast<int>(raw.size()), threads, [&](int i) {
        const auto& ref = refs.size() == 1 ? refs.front() : refs[i];
        raw[i] = flow_row(measures::phase_spectrum(ref, targets[i]), width);
    });
    flow.phases = track_phases(raw, &flow.ambiguous_rows);
    return flow;
}

std::string to_string(Reference r) {
    switch (r) {
    case Reference::fock: return "fock";
    case Reference::kitaev_trivial: return "kitaev_trivial";
    case Reference::ssh_trivial: return "ssh_trivial";
    }
    return "unknown";
}

Reference reference_from_string(const std::string& s) {
    for (Reference r : {Reference::fock, Reference::kitaev_trivial, Reference::ssh_trivial})
        if (to_string(r) == s) return r;
    throw InvalidInput(fmt::format("unknown reference '{}'", s));
}

MajoranaCovariance reference_state(Reference r, int n) {
    ModelSpec s;
    s.n = n;
    switch (r) {
    case Reference::fock: return gaussian::fock_vacuum(n);
    case Reference::kitaev_trivial:
        s.kind = models::Kind::kitaev;
        s.delta = 1.0;
        return models::ground_state(s);
    case Reference::ssh_trivial:
        s.kind = models::Kind::ssh;
        s.delta = -1.0;
        return models::ground_state(s);
    }
    throw InvalidInput("unknown reference");
}

std::vector<ScalingRow> scaling_run(const std::vector<ModelSpec>& specs, const std::vector<int>& sizes, Reference reference,
                                    int threads) {
    std::vector<ModelSpec> jobs;
    for (const auto& m : specs)
        for (int n : sizes) {
            ModelSpec s = m;
            s.n = n;
            const auto problems = s.validate();
            if (!problems.empty()) throw InvalidInput(fmt::format("{} at n={}: {}", m.label(), n, problems.front()));
            jobs.push_back(s);
        }
    std::vector<ScalingRow> rows(jobs.size());
    parallel_for(static_cast<int>(jobs.size()), threads, [&](int i) {
        const auto& s = jobs[i];
        const MajoranaCovariance tgt = models::ground_state(s);
        const auto r = measures::compare(reference_state(reference, s.n), tgt);
        rows[i] = {s.label(), s.n, r.complexity, measures::half_chain_entropy(tgt), r.parity_obstructed};
    });
    return rows;
}

int resolve_threads(std::optional<int> flag) {
    if (flag && *flag > 0) return *flag;
    if (const char* env = std::getenv("GSX_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(int count, int threads, const std::function<void(int)>& body) {
    if (count <= 0) return;
    const int workers = std::clamp(threads, 1, count);
    if (workers == 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (int i = next++; i < count; i = next++) {
                    try {
                        body(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        next = count;
                    }
                }
            });
    }
    if (failure) std::rethrow_exception(failure);
}

} // namespace gsx::sweep
