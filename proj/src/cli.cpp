#include "gsx/cli.hpp"

#include "gsx/crosscheck.hpp"
#include "gsx/error.hpp"
#include "gsx/io.hpp"
#include "gsx/measures.hpp"
#include "gsx/models.hpp"
#include "gsx/oracle.hpp"
#include "gsx/sweep.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fmt/core.h>
#include <iostream>
#include <limits>
#include <sstream>

namespace gsx::cli {

using nlohmann::json;
using models::Kind;
using models::ModelSpec;

namespace {

const std::vector<std::string> kSubcommands{"sweep", "spectrum", "scaling", "ee", "oracle-check"};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

double parse_number(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty()) throw InvalidInput(fmt::format("cannot read {} from '{}'", what, s));
    return v;
}

int parse_int(const std::string& s, const std::string& what) {
    const double v = parse_number(s, what);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw InvalidInput(fmt::format("{} must be an integer, got '{}'", what, s));
    return static_cast<int>(v);
}

bool known_kind(const std::string& s) {
    for (Kind k : {Kind::ssh, Kind::kitaev, Kind::rainbow, Kind::random_chain, Kind::random_chiral})
        if (models::to_string(k) == s) return true;
    return false;
}

ModelSpec single_model(const CommandConfig& c) {
    ModelSpec s;
    s.kind = models::kind_from_string(c.model);
    s.n = c.n;
    s.chiral_sign = c.chiral_sign;
    if (s.has_delta()) s.delta = c.delta;
    if (s.kind == Kind::rainbow) s.h = c.h.value_or(1.0);
    if (s.is_random()) s.seed = c.seed;
    return s;
}

std::string render(const io::Table& t, const std::string& format) {
    return format == "json" ? io::to_json(t).dump(2) + "\n" : io::to_csv(t);
}

json base_sidecar(const CommandConfig& c) {
    return json{{"tool", "gsx"}, {"version", io::kToolVersion}, {"config", to_json(c)}};
}

void emit(const CommandConfig& c, const std::string& data, json sidecar) {
    io::write_atomic(c.out, data);
    io::write_atomic(io::sidecar_path(c.out), sidecar.dump(2) + "\n");
}

std::string range_text(const std::vector<std::optional<double>>& v) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& x : v)
        if (x) {
            lo = std::min(lo, *x);
            hi = std::max(hi, *x);
        }
    return lo <= hi ? fmt::format("[{:.6g}, {:.6g}]", lo, hi) : std::string("[null]");
}

Outcome run_sweep(const CommandConfig& c, int threads) {
    ModelSpec family = single_model(c);
    family.delta.reset();
    const auto grid = sweep::make_grid(c.delta_min, c.delta_max, c.step);
    const auto mode = sweep::mode_from_string(c.mode);
    const auto table = mode == sweep::Mode::fixed_ref ? sweep::sweep_fixed_reference(family, c.ref_delta, grid, threads)
                                                      : sweep::sweep_neighbor(family, c.epsilon, grid, threads);
    const io::Table t = io::sweep_table(table);
    json side = base_sidecar(c);
    side["metadata"] = io::sweep_metadata(table.meta, grid);
    side["columns"] = t.columns;
    side["units"] = {{"complexity", "dimensionless"}, {"fubini_study", "rad"}, {"entropy_half", "nats"}};
    side["rows"] = t.rows.size();
    emit(c, render(t, c.format), side);
    return {0, fmt::format("sweep: {} rows -> {}; complexity {} fidelity {}{}", t.rows.size(), c.out,
                           range_text(t.column("complexity")), range_text(t.column("fidelity")),
                           table.meta.clipped ? " (grid clipped at delta+epsilon > 1)" : "")};
}

Outcome run_spectrum(const CommandConfig& c, int threads) {
    ModelSpec family = single_model(c);
    family.delta.reset();
    const auto grid = sweep::make_grid(c.delta_min, c.delta_max, c.step);
    const auto mode = sweep::mode_from_string(c.mode);
    const auto flow = sweep::spectral_flow(family, mode, grid, c.epsilon, c.ref_delta, threads);
    const io::Table t = io::spectral_table(flow);
    json side = base_sidecar(c);
    side["metadata"] = io::sweep_metadata(flow.meta, grid);
    side["columns"] = t.columns;
    side["units"] = {{"theta", "rad"}};
    side["rows"] = t.rows.size();
    side["ambiguous_rows"] = flow.ambiguous_rows;
    emit(c, render(t, c.format), side);
    return {0, fmt::format("spectrum: {} rows x {} tracks -> {}; {} ambiguous matches", t.rows.size(), t.columns.size() - 1,
                           c.out, flow.ambiguous_rows.size())};
}

Outcome run_scaling(const CommandConfig& c, int threads) {
    std::vector<ModelSpec> specs;
    for (const auto& tok : c.models) specs.push_back(parse_model_token(tok, c.seed, c.chiral_sign));
    const auto rows = sweep::scaling_run(specs, parse_sizes(c.sizes), sweep::reference_from_string(c.reference), threads);
    const io::Table t = io::scaling_table(rows);
    json side = base_sidecar(c);
    side["reference"] = c.reference;
    side["models"] = json::array();
    for (const auto& s : specs) side["models"].push_back(io::to_json(s));
    side["columns"] = t.columns;
    side["units"] = {{"complexity", "dimensionless"}, {"entropy_half", "nats"}};
    side["rows"] = t.rows.size();
    emit(c, render(t, c.format), side);
    int obstructed = 0;
    for (const auto& r : rows) obstructed += r.obstructed;
    return {0, fmt::format("scaling: {} rows -> {}; complexity {} entropy_half {}; {} obstructed", rows.size(), c.out,
                           range_text(t.column("complexity")), range_text(t.column("entropy_half")), obstructed)};
}

Outcome run_ee(const CommandConfig& c) {
    const ModelSpec spec = single_model(c);
    const auto state = models::ground_state(spec);
    json side = base_sidecar(c);
    side["model"] = io::to_json(spec);

    if (!c.covariance.empty()) {
        const Eigen::MatrixXd m = c.covariance == "interleaved" ? gaussian::interleave(state) : state.gamma();
        side["n_modes"] = state.n_modes();
        side["ordering"] = c.covariance;
        side["params"] = json::object();
        if (spec.delta) side["params"]["delta"] = *spec.delta;
        if (spec.h) side["params"]["h"] = *spec.h;
        side["seed"] = spec.seed ? json(*spec.seed) : json(nullptr);
        std::string data;
        if (c.format == "json") {
            json rows = json::array();
            for (Eigen::Index r = 0; r < m.rows(); ++r) {
                json row = json::array();
                for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(r, k));
                rows.push_back(std::move(row));
            }
            data = json{{"matrix", rows}}.dump(2) + "\n";
        } else {
            data = io::covariance_csv(m);
        }
        emit(c, data, side);
        return {0, fmt::format("ee: {}x{} {} covariance -> {}", m.rows(), m.cols(), c.covariance, c.out)};
    }

    io::Table t{{"subsystem_size", "entropy"}, {}};
    if (!c.sites.empty()) {
        const auto sites = parse_sites(c.sites);
        t.rows.push_back({static_cast<double>(sites.size()), measures::entanglement_entropy(state, sites)});
        side["sites"] = sites;
    } else {
        std::vector<int> prefix;
        for (int l = 1; l < spec.n; ++l) {
            prefix.push_back(l);
            t.rows.push_back({static_cast<double>(l), measures::entanglement_entropy(state, prefix)});
        }
        side["sites"] = "prefixes";
    }
    side["columns"] = t.columns;
    side["units"] = {{"entropy", "nats"}};
    side["rows"] = t.rows.size();
    emit(c, render(t, c.format), side);
    return {0, fmt::format("ee: {} rows -> {}; entropy {}", t.rows.size(), c.out, range_text(t.column("entropy")))};
}

Outcome run_oracle_check(const CommandConfig& c, int threads) {
    const auto results = crosscheck::run_cases({c.n}, c.cases, c.seed, threads);
    io::Table t{{"case", "model", "n", "fidelity_dev", "covariance_dev", "entropy_dev", "energy_dev", "parity_dev"}, {}};
    double f = 0, g = 0, s = 0, e = 0, p = 0;
    for (const auto& r : results) {
        t.rows.push_back({static_cast<double>(r.index), r.model.label(), static_cast<double>(r.model.n), r.fidelity, r.covariance,
                          r.entropy, r.energy, r.parity});
        f = std::max(f, r.fidelity);
        g = std::max(g, r.covariance);
        s = std::max(s, r.entropy);
        e = std::max(e, r.energy);
        p = std::max(p, r.parity);
    }
    json side = base_sidecar(c);
    side["columns"] = t.columns;
    side["rows"] = t.rows.size();
    side["max_deviation"] = {{"fidelity", f}, {"covariance", g}, {"entropy", s}, {"energy", e}, {"parity", p}};
    emit(c, render(t, c.format), side);
    const bool ok = std::max({f, g, s, e, p}) <= 1e-9;
    return {ok ? 0 : 2, fmt::format("oracle-check: {} cases at n={} -> {}; max deviations fidelity {:.3g} covariance {:.3g} "
                                    "entropy {:.3g} energy {:.3g} parity {:.3g}{}",
                                    results.size(), c.n, c.out, f, g, s, e, p, ok ? "" : " (above 1e-9)")};
}

} // namespace

ModelSpec parse_model_token(const std::string& token, std::uint64_t seed, int chiral_sign) {
    const auto colon = token.find(':');
    const std::string name = token.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : token.substr(colon + 1);
    if (!known_kind(name)) throw InvalidInput(fmt::format("unknown model '{}' (--models)", name));
    ModelSpec s;
    s.kind = models::kind_from_string(name);
    s.chiral_sign = chiral_sign;
    if (s.has_delta()) {
        if (arg.empty()) throw InvalidInput(fmt::format("model '{}' needs a delta, e.g. {}:1 (--models)", token, name));
        s.delta = parse_number(arg, "delta");
    } else if (s.kind == Kind::rainbow) {
        s.h = arg.empty() ? 1.0 : parse_number(arg, "h");
    } else {
        s.seed = arg.empty() ? seed : static_cast<std::uint64_t>(parse_number(arg, "seed"));
    }
    return s;
}

json to_json(const CommandConfig& c) {
    return json{{"subcommand", c.subcommand},
                {"model", c.model},
                {"n", c.n},
                {"delta", c.delta ? json(*c.delta) : json(nullptr)},
                {"h", c.h ? json(*c.h) : json(nullptr)},
                {"seed", c.seed},
                {"chiral_sign", c.chiral_sign},
                {"mode", c.mode},
                {"epsilon", c.epsilon},
                {"ref_delta", c.ref_delta},
                {"delta_min", c.delta_min},
                {"delta_max", c.delta_max},
                {"step", c.step},
                {"models", c.models},
                {"sizes", c.sizes},
                {"reference", c.reference},
                {"sites", c.sites},
                {"covariance", c.covariance},
                {"cases", c.cases},
                {"threads", c.threads ? json(*c.threads) : json(nullptr)},
                {"out", c.out},
                {"format", c.format}};
}

CommandConfig config_from_json(const json& j) {
    CommandConfig c;
    try {
        auto get = [&](const char* key, auto& field) {
            if (j.contains(key) && !j[key].is_null()) field = j[key].get<std::decay_t<decltype(field)>>();
        };
        auto get_opt = [&](const char* key, auto& field) {
            if (j.contains(key) && !j[key].is_null()) field = j[key].get<typename std::decay_t<decltype(field)>::value_type>();
        };
        get("subcommand", c.subcommand);
        get("model", c.model);
        get("n", c.n);
        get_opt("delta", c.delta);
        get_opt("h", c.h);
        get("seed", c.seed);
        get("chiral_sign", c.chiral_sign);
        get("mode", c.mode);
        get("epsilon", c.epsilon);
        get("ref_delta", c.ref_delta);
        get("delta_min", c.delta_min);
        get("delta_max", c.delta_max);
        get("step", c.step);
        get("models", c.models);
        get("sizes", c.sizes);
        get("reference", c.reference);
        get("sites", c.sites);
        get("covariance", c.covariance);
        get("cases", c.cases);
        get_opt("threads", c.threads);
        get("out", c.out);
        get("format", c.format);
    } catch (const json::exception& e) {
        throw InvalidInput(fmt::format("malformed config: {}", e.what()));
    }
    return c;
}

std::vector<int> parse_sizes(const std::string& s) {
    std::vector<int> out;
    const auto colon = s.find(':');
    if (colon != std::string::npos) {
        const int lo = parse_int(s.substr(0, colon), "size");
        const int hi = parse_int(s.substr(colon + 1), "size");
        if (lo < 2 || hi < lo) throw InvalidInput(fmt::format("size range '{}' must satisfy 2 <= start <= end", s));
        for (int v = lo; v < hi; v *= 2) out.push_back(v);
        out.push_back(hi);
        return out;
    }
    for (const auto& tok : split(s, ',')) out.push_back(parse_int(tok, "size"));
    if (out.empty()) throw InvalidInput("no sizes given");
    return out;
}

std::vector<int> parse_sites(const std::string& s) {
    std::vector<int> out;
    for (const auto& tok : split(s, ',')) {
        const auto dash = tok.find('-', 1);
        if (dash == std::string::npos) {
            out.push_back(parse_int(tok, "site"));
            continue;
        }
        const int a = parse_int(tok.substr(0, dash), "site");
        const int b = parse_int(tok.substr(dash + 1), "site");
        if (b < a) throw InvalidInput(fmt::format("site range '{}' is descending", tok));
        for (int i = a; i <= b; ++i) out.push_back(i);
    }
    if (out.empty()) throw InvalidInput("no sites given");
    return out;
}

std::vector<std::string> validate(const CommandConfig& c) {
    std::vector<std::string> d;
    auto in_range = [](double x) { return x >= -1.0 && x <= 1.0; };
    if (std::find(kSubcommands.begin(), kSubcommands.end(), c.subcommand) == kSubcommands.end()) {
        d.push_back(fmt::format("unknown subcommand '{}'", c.subcommand));
        return d;
    }
    if (c.out.empty()) d.push_back("--out is required");
    if (c.format != "csv" && c.format != "json") d.push_back(fmt::format("unknown format '{}' (--format)", c.format));
    if (c.threads && *c.threads < 1) d.push_back(fmt::format("--threads must be positive, got {}", *c.threads));
    if (c.chiral_sign != 1 && c.chiral_sign != -1) d.push_back(fmt::format("--chiral-sign must be +1 or -1, got {}", c.chiral_sign));

    const bool single = c.subcommand == "sweep" || c.subcommand == "spectrum" || c.subcommand == "ee";
    if (single) {
        if (!known_kind(c.model)) {
            d.push_back(fmt::format("unknown model '{}' (--model)", c.model));
        } else {
            const Kind k = models::kind_from_string(c.model);
            const bool has_delta = k == Kind::ssh || k == Kind::kitaev;
            if (c.subcommand != "ee" && !has_delta) d.push_back(fmt::format("model '{}' has no delta to sweep (--model)", c.model));
            if (k == Kind::rainbow && c.n % 2 != 0) d.push_back(fmt::format("rainbow needs an even number of sites (--n {})", c.n));
            if (k == Kind::random_chiral && c.n % 2 != 0) d.push_back(fmt::format("random_chiral needs even n (--n {})", c.n));
            if (k == Kind::rainbow && c.h && !(*c.h >= 0.0)) d.push_back(fmt::format("h must be non-negative (--h {})", *c.h));
            if (c.subcommand == "ee" && has_delta && !c.delta) d.push_back(fmt::format("model '{}' needs --delta", c.model));
        }
        if (c.n < 2) d.push_back(fmt::format("--n must be at least 2, got {}", c.n));
        if (c.delta && !in_range(*c.delta)) d.push_back(fmt::format("delta out of [-1,1] (--delta {})", *c.delta));
    }
    if (c.subcommand == "sweep" || c.subcommand == "spectrum") {
        if (c.mode != "fixed_ref" && c.mode != "neighbor") d.push_back(fmt::format("unknown mode '{}' (--mode)", c.mode));
        if (!(c.epsilon >= 0.0)) d.push_back(fmt::format("--epsilon must be non-negative, got {}", c.epsilon));
        if (!in_range(c.ref_delta)) d.push_back(fmt::format("ref_delta out of [-1,1] (--ref-delta {})", c.ref_delta));
        if (!in_range(c.delta_min)) d.push_back(fmt::format("delta out of [-1,1] (--delta-min {})", c.delta_min));
        if (!in_range(c.delta_max)) d.push_back(fmt::format("delta out of [-1,1] (--delta-max {})", c.delta_max));
        if (!(c.delta_max >= c.delta_min)) d.push_back("--delta-max must not be below --delta-min");
        if (!(c.step > 0.0)) d.push_back(fmt::format("--step must be positive, got {}", c.step));
    }
    if (c.subcommand == "scaling") {
        if (c.models.empty()) d.push_back("--models is required");
        std::vector<ModelSpec> specs;
        for (const auto& tok : c.models) {
            try {
                specs.push_back(parse_model_token(tok, c.seed, c.chiral_sign));
            } catch (const InvalidInput& e) {
                d.push_back(e.what());
            }
        }
        std::vector<int> sizes;
        try {
            sizes = parse_sizes(c.sizes);
        } catch (const InvalidInput& e) {
            d.push_back(fmt::format("{} (--sizes)", e.what()));
        }
        try {
            sweep::reference_from_string(c.reference);
        } catch (const InvalidInput&) {
            d.push_back(fmt::format("unknown reference '{}' (--reference)", c.reference));
        }
        for (const auto& s : specs)
            for (int n : sizes) {
                ModelSpec t = s;
                t.n = n;
                for (const auto& p : t.validate()) d.push_back(fmt::format("{} at n={}: {} (--models/--sizes)", s.label(), n, p));
            }
    }
    if (c.subcommand == "ee") {
        if (!c.sites.empty()) {
            try {
                std::vector<int> sites = parse_sites(c.sites);
                std::sort(sites.begin(), sites.end());
                if (sites.front() < 1 || sites.back() > c.n) d.push_back(fmt::format("sites must lie in 1..{} (--sites)", c.n));
                if (std::adjacent_find(sites.begin(), sites.end()) != sites.end()) d.push_back("duplicate site (--sites)");
            } catch (const InvalidInput& e) {
                d.push_back(fmt::format("{} (--sites)", e.what()));
            }
        }
        if (!c.covariance.empty() && c.covariance != "block" && c.covariance != "interleaved")
            d.push_back(fmt::format("unknown ordering '{}' (--covariance)", c.covariance));
    }
    if (c.subcommand == "oracle-check") {
        if (c.n > oracle::kMaxModes) d.push_back(fmt::format("oracle capped at n <= {} (--n {})", oracle::kMaxModes, c.n));
        if (c.n < 2 || c.n % 2 != 0) d.push_back(fmt::format("oracle-check needs an even n >= 2 (--n {})", c.n));
        if (c.cases < 1) d.push_back(fmt::format("--cases must be positive, got {}", c.cases));
    }
    return d;
}

Outcome execute(const CommandConfig& c) {
    const int threads = sweep::resolve_threads(c.threads);
    if (c.subcommand == "sweep") return run_sweep(c, threads);
    if (c.subcommand == "spectrum") return run_spectrum(c, threads);
    if (c.subcommand == "scaling") return run_scaling(c, threads);
    if (c.subcommand == "ee") return run_ee(c);
    if (c.subcommand == "oracle-check") return run_oracle_check(c, threads);
    throw InvalidInput(fmt::format("unknown subcommand '{}'", c.subcommand));
}

int run(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("gsx");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data());
}

int run(int argc, const char* const* argv) {
    CommandConfig c;
    std::string config_file, out;
    double delta = 0.0, h = 0.0;
    int threads = 0;

    CLI::App app{"Fermionic Gaussian-state complexity, fidelity and entanglement toolkit", "gsx"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);
    app.set_version_flag("--version", io::kToolVersion);

    std::map<std::string, CLI::App*> subs;
    auto common = [&](CLI::App* s) {
        s->add_option("--out", out, "Data file; the sidecar is written next to it as <out>.json");
        s->add_option("--format", c.format, "csv or json")->capture_default_str();
        s->add_option("--config", config_file, "Re-run the configuration stored in a sidecar");
        s->add_option("--threads", threads, "Worker cap (fallback: GSX_THREADS)");
        s->add_option("--seed", c.seed, "Seed for random models")->capture_default_str();
    };
    auto model_flags = [&](CLI::App* s) {
        s->add_option("--model", c.model, "ssh | kitaev | rainbow | random_chain | random_chiral")->capture_default_str();
        s->add_option("--n", c.n, "Number of sites")->capture_default_str();
        s->add_option("--delta", delta, "Dimerization in [-1, 1]");
        s->add_option("--h", h, "Rainbow inhomogeneity");
        s->add_option("--chiral-sign", c.chiral_sign, "Sublattice projection sign for random_chiral")->capture_default_str();
    };
    auto grid_flags = [&](CLI::App* s) {
        s->add_option("--mode", c.mode, "fixed_ref or neighbor")->capture_default_str();
        s->add_option("--epsilon", c.epsilon, "Neighbor offset")->capture_default_str();
        s->add_option("--ref-delta", c.ref_delta, "Reference dimerization")->capture_default_str();
        s->add_option("--delta-min", c.delta_min)->capture_default_str();
        s->add_option("--delta-max", c.delta_max)->capture_default_str();
        s->add_option("--step", c.step, "Grid step")->capture_default_str();
    };

    subs["sweep"] = app.add_subcommand("sweep", "Measures along a delta grid (fixed reference or neighbor pairs)");
    subs["spectrum"] = app.add_subcommand("spectrum", "Tracked eigenphases of the relative covariance along a delta grid");
    subs["scaling"] = app.add_subcommand("scaling", "Complexity and half-chain entropy versus system size");
    subs["ee"] = app.add_subcommand("ee", "Entanglement entropy profile or covariance dump of one ground state");
    subs["oracle-check"] = app.add_subcommand("oracle-check", "Compare covariance routes with exact diagonalization");
    for (auto& [name, s] : subs) common(s);
    for (const char* name : {"sweep", "spectrum", "ee"}) model_flags(subs[name]);
    grid_flags(subs["sweep"]);
    grid_flags(subs["spectrum"]);
    subs["scaling"]->add_option("--models", c.models, "Comma-separated: ssh:1,kitaev:0,rainbow:1,random_chain,random_chiral")->delimiter(',');
    subs["scaling"]->add_option("--sizes", c.sizes, "a:b (doubling from a, ending at b) or a comma list")->capture_default_str();
    subs["scaling"]->add_option("--reference", c.reference, "fock | kitaev_trivial | ssh_trivial")->capture_default_str();
    subs["scaling"]->add_option("--chiral-sign", c.chiral_sign)->capture_default_str();
    subs["ee"]->add_option("--sites", c.sites, "Subsystem, e.g. 1-4 or 1,3,5 (default: every prefix)");
    subs["ee"]->add_option("--covariance", c.covariance, "Dump Gamma instead: block or interleaved");
    subs["oracle-check"]->add_option("--n", c.n, "Number of sites (even, <= 12)");
    subs["oracle-check"]->add_option("--cases", c.cases)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    CLI::App* sub = app.get_subcommands().front();
    c.subcommand = sub->get_name();
    auto given = [&](const std::string& flag) {
        const auto* opt = sub->get_option_no_throw(flag);
        return opt != nullptr && opt->count() > 0;
    };
    if (given("--delta")) c.delta = delta;
    if (given("--h")) c.h = h;
    if (given("--threads")) c.threads = threads;
    if (c.subcommand == "oracle-check" && !given("--n")) c.n = 6;
    c.out = out;

    try {
        if (!config_file.empty()) {
            const json j = json::parse(io::read_file(config_file));
            CommandConfig loaded = config_from_json(j.contains("config") ? j["config"] : j);
            if (loaded.subcommand != c.subcommand)
                throw InvalidInput(fmt::format("config is for '{}', not '{}' (--config)", loaded.subcommand, c.subcommand));
            if (!out.empty()) loaded.out = out;
            if (c.threads) loaded.threads = c.threads;
            c = std::move(loaded);
        }
    } catch (const json::exception& e) {
        std::cerr << "error: cannot parse config: " << e.what() << " (--config)\n";
        return 1;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    const auto diagnostics = validate(c);
    if (!diagnostics.empty()) {
        for (const auto& m : diagnostics) std::cerr << "error: " << m << "\n";
        return 1;
    }
    try {
        const Outcome o = execute(c);
        std::cout << o.summary << "\n";
        return o.exit_code;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace gsx::cli
