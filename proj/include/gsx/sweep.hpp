#pragma once

#include "gsx/gaussian.hpp"
#include "gsx/models.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace gsx::sweep {

struct Grid {
    std::vector<double> points;
    double step = 0.0;
};

// points[i] = start + i * step, last point within half a step of stop.
Grid make_grid(double start, double stop, double step);
Grid default_grid();

enum class Mode { fixed_ref, neighbor };
std::string to_string(Mode m);
Mode mode_from_string(const std::string& s);

struct SweepRow {
    double delta = 0.0;
    std::optional<double> complexity;
    double fidelity = 0.0;
    double fubini_study = 0.0;
    double entropy_half = 0.0;   // of the ground state at this row's delta
    std::optional<double> d2_fidelity;
    std::optional<double> d2_complexity;
};

struct SweepMeta {
    models::ModelSpec model;     // family; delta unused
    Mode mode = Mode::fixed_ref;
    std::optional<double> epsilon;
    std::optional<double> ref_delta;
    double step = 0.0;
    bool clipped = false;        // neighbor grid points with delta + epsilon > 1 dropped
};

struct SweepTable {
    SweepMeta meta;
    std::vector<SweepRow> rows;
};

SweepTable sweep_fixed_reference(const models::ModelSpec& family, double ref_delta, const Grid& grid,
                                 int threads = 1);
SweepTable sweep_neighbor(const models::ModelSpec& family, double epsilon, const Grid& grid, int threads = 1);

struct SpectralFlow {
    SweepMeta meta;
    std::vector<double> delta;
    std::vector<std::vector<double>> phases;   // phases[row][track]
    std::vector<int> ambiguous_rows;           // rows where the matching needed a tie-break
};

SpectralFlow spectral_flow(const models::ModelSpec& family, Mode mode, const Grid& grid,
                           std::optional<double> epsilon, std::optional<double> ref_delta, int threads = 1);

// Reorders each row so that columns follow continuous curves; rows must share a width.
std::vector<std::vector<double>> track_phases(const std::vector<std::vector<double>>& raw,
                                              std::vector<int>* ambiguous_rows = nullptr);

enum class Reference { fock, kitaev_trivial, ssh_trivial };
std::string to_string(Reference r);
Reference reference_from_string(const std::string& s);

gaussian::MajoranaCovariance reference_state(Reference r, int n);

struct ScalingRow {
    std::string model;
    int n = 0;
    std::optional<double> complexity;
    double entropy_half = 0.0;
    bool obstructed = false;
};

// models carry everything but n, which is taken from sizes.
std::vector<ScalingRow> scaling_run(const std::vector<models::ModelSpec>& models, const std::vector<int>& sizes,
                                    Reference reference, int threads = 1);

// Explicit flag wins, then GSX_THREADS, then the hardware count.
int resolve_threads(std::optional<int> flag);

void parallel_for(int count, int threads, const std::function<void(int)>& body);

} // namespace gsx::sweep
