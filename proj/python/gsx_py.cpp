#include "gsx/cli.hpp"
#include "gsx/error.hpp"
#include "gsx/gaussian.hpp"
#include "gsx/io.hpp"
#include "gsx/measures.hpp"
#include "gsx/models.hpp"
#include "gsx/skewlin.hpp"
#include "gsx/sweep.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace gsx;

namespace {

models::ModelSpec make_spec(const std::string& model, int n, std::optional<double> delta, std::optional<double> h,
                            std::optional<std::uint64_t> seed, int chiral_sign) {
    models::ModelSpec s;
    s.kind = models::kind_from_string(model);
    s.n = n;
    s.delta = delta;
    s.h = h;
    s.seed = seed;
    s.chiral_sign = chiral_sign;
    const auto problems = s.validate();
    if (!problems.empty()) throw InvalidInput(problems.front());
    return s;
}

py::dict sweep_to_dict(const sweep::SweepTable& t) {
    const std::size_t m = t.rows.size();
    std::vector<double> delta(m), fidelity(m), fs(m), entropy(m);
    std::vector<std::optional<double>> complexity(m), d2f(m), d2c(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& r = t.rows[i];
        delta[i] = r.delta;
        complexity[i] = r.complexity;
        fidelity[i] = r.fidelity;
        fs[i] = r.fubini_study;
        entropy[i] = r.entropy_half;
        d2f[i] = r.d2_fidelity;
        d2c[i] = r.d2_complexity;
    }
    py::dict d;
    d["delta"] = delta;
    d["complexity"] = complexity;
    d["fidelity"] = fidelity;
    d["fubini_study"] = fs;
    d["entropy_half"] = entropy;
    d["d2_fidelity"] = d2f;
    d["d2_complexity"] = d2c;
    d["clipped"] = t.meta.clipped;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Fermionic Gaussian states: covariances, Pfaffians, complexity and fidelity";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    auto invalid = py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<DimensionError>(m, "DimensionError", invalid.ptr());
    py::register_exception<InvalidMode>(m, "InvalidMode", invalid.ptr());
    py::register_exception<CapacityError>(m, "CapacityError", invalid.ptr());
    auto numeric = py::register_exception<NumericError>(m, "NumericError", error.ptr());
    py::register_exception<StructureError>(m, "StructureError", numeric.ptr());
    py::register_exception<NonGaussianState>(m, "NonGaussianState", numeric.ptr());
    py::register_exception<TrackingError>(m, "TrackingError", numeric.ptr());
    py::register_exception<ParityError>(m, "ParityError", error.ptr());

    m.attr("__version__") = io::kToolVersion;

    // Skew-symmetric linear algebra.
    m.def("pfaffian", py::overload_cast<const Eigen::MatrixXd&>(&skewlin::pfaffian), py::arg("a"),
          "Pfaffian of a real antisymmetric matrix of even dimension.");
    m.def(
        "pfaffian_signed_log",
        [](const Eigen::MatrixXd& a) {
            const auto r = skewlin::pfaffian_signed_log(skewlin::SkewMatrix(a));
            return py::make_tuple(r.sign, r.log_abs);
        },
        py::arg("a"), "Pfaffian as (sign, log|Pf|).");
    m.def("eigenphases", &skewlin::eigenphases, py::arg("q"), "Eigenphases of an orthogonal matrix in [0, pi].");

    py::class_<skewlin::PhaseSpectrum>(m, "PhaseSpectrum")
        .def_readonly("n_zero_pairs", &skewlin::PhaseSpectrum::n_zero_pairs)
        .def_readonly("n_pi_pairs", &skewlin::PhaseSpectrum::n_pi_pairs)
        .def_readonly("quadruplets", &skewlin::PhaseSpectrum::quadruplets)
        .def_readonly("parity_obstructed", &skewlin::PhaseSpectrum::parity_obstructed)
        .def_property_readonly("dim", &skewlin::PhaseSpectrum::dim)
        .def_property_readonly("sum_squares", &skewlin::PhaseSpectrum::sum_squares);
    m.def("orthogonal_phases", &skewlin::orthogonal_phases, py::arg("q"), py::arg("tol") = skewlin::kPhaseTol);

    // Gaussian states.
    py::class_<gaussian::QuadraticHamiltonian>(m, "QuadraticHamiltonian")
        .def(py::init<Eigen::MatrixXcd, Eigen::MatrixXcd>(), py::arg("t"), py::arg("f"))
        .def_property_readonly("t", &gaussian::QuadraticHamiltonian::t)
        .def_property_readonly("f", &gaussian::QuadraticHamiltonian::f)
        .def_property_readonly("n_modes", &gaussian::QuadraticHamiltonian::n_modes)
        .def("nambu", &gaussian::QuadraticHamiltonian::nambu)
        .def("majorana_matrix", [](const gaussian::QuadraticHamiltonian& h) { return gaussian::majorana_matrix(h); });

    py::class_<gaussian::MajoranaCovariance>(m, "Covariance")
        .def(py::init<const Eigen::MatrixXd&, double>(), py::arg("gamma"), py::arg("purity_tol") = 1e-8)
        .def_property_readonly("gamma", &gaussian::MajoranaCovariance::gamma)
        .def_property_readonly("n_modes", &gaussian::MajoranaCovariance::n_modes)
        .def_property_readonly("parity", [](const gaussian::MajoranaCovariance& s) { return gaussian::parity(s); })
        .def("interleaved", [](const gaussian::MajoranaCovariance& s) { return gaussian::interleave(s); });

    m.def("fock_vacuum", &gaussian::fock_vacuum, py::arg("n"));
    m.def("fully_occupied", &gaussian::fully_occupied, py::arg("n"));
    m.def(
        "ground_state_covariance",
        [](const gaussian::QuadraticHamiltonian& h, const std::optional<gaussian::QuadraticHamiltonian>& hint) {
            return gaussian::ground_state_covariance(h, hint ? &*hint : nullptr);
        },
        py::arg("h"), py::arg("adiabatic_hint") = py::none());
    m.def("ground_energy", &gaussian::ground_energy, py::arg("h"));
    m.def("energy", &gaussian::energy, py::arg("h"), py::arg("state"));
    m.def("relative_covariance", &gaussian::relative_covariance, py::arg("ref"), py::arg("tgt"));
    m.def("random_pure_state", &gaussian::random_pure_state, py::arg("n"), py::arg("seed"));
    m.def("flip_mode", &gaussian::flip_mode, py::arg("state"), py::arg("site"));

    // Models.
    m.def(
        "hamiltonian",
        [](const std::string& model, int n, std::optional<double> delta, std::optional<double> h,
           std::optional<std::uint64_t> seed, int chiral_sign) {
            return models::build(make_spec(model, n, delta, h, seed, chiral_sign));
        },
        py::arg("model"), py::arg("n"), py::arg("delta") = py::none(), py::arg("h") = py::none(),
        py::arg("seed") = py::none(), py::arg("chiral_sign") = -1);
    m.def(
        "ground_state",
        [](const std::string& model, int n, std::optional<double> delta, std::optional<double> h,
           std::optional<std::uint64_t> seed, int chiral_sign) {
            return models::ground_state(make_spec(model, n, delta, h, seed, chiral_sign));
        },
        py::arg("model"), py::arg("n"), py::arg("delta") = py::none(), py::arg("h") = py::none(),
        py::arg("seed") = py::none(), py::arg("chiral_sign") = -1,
        "Ground-state covariance of a named model with the adiabatic zero-mode convention.");
    m.def(
        "reference_state",
        [](const std::string& name, int n) { return sweep::reference_state(sweep::reference_from_string(name), n); },
        py::arg("name"), py::arg("n"));

    // Measures.
    m.def(
        "compare",
        [](const gaussian::MajoranaCovariance& ref, const gaussian::MajoranaCovariance& tgt) {
            const auto r = measures::compare(ref, tgt);
            py::dict d;
            d["complexity"] = r.complexity;
            d["fidelity"] = r.fidelity;
            d["fubini_study"] = r.fubini_study;
            d["parity_obstructed"] = r.parity_obstructed;
            d["phases"] = r.phase_spectrum;
            return d;
        },
        py::arg("ref"), py::arg("tgt"), "Complexity, fidelity and Fubini-Study distance from one phase extraction.");
    m.def("complexity", py::overload_cast<const gaussian::MajoranaCovariance&, const gaussian::MajoranaCovariance&>(
                            &measures::complexity),
          py::arg("ref"), py::arg("tgt"));
    m.def(
        "fidelity",
        [](const gaussian::MajoranaCovariance& ref, const gaussian::MajoranaCovariance& tgt, const std::string& method) {
            if (method == "phases") return measures::fidelity(ref, tgt, measures::FidelityMethod::phases);
            if (method == "pfaffian") return measures::fidelity(ref, tgt, measures::FidelityMethod::pfaffian);
            throw InvalidMode("unknown fidelity method '" + method + "'");
        },
        py::arg("ref"), py::arg("tgt"), py::arg("method") = "phases");
    m.def("phase_spectrum", &measures::phase_spectrum, py::arg("ref"), py::arg("tgt"),
          py::arg("tol") = skewlin::kPhaseTol);
    m.def("entanglement_entropy", &measures::entanglement_entropy, py::arg("state"), py::arg("sites"));
    m.def("half_chain_entropy", &measures::half_chain_entropy, py::arg("state"));

    // Sweeps and scaling.
    m.def(
        "sweep",
        [](const std::string& model, int n, const std::string& mode, double delta_min, double delta_max, double step,
           std::optional<double> epsilon, std::optional<double> ref_delta, std::optional<int> threads) {
            models::ModelSpec family;
            family.kind = models::kind_from_string(model);
            family.n = n;
            const auto grid = sweep::make_grid(delta_min, delta_max, step);
            const int t = sweep::resolve_threads(threads);
            if (sweep::mode_from_string(mode) == sweep::Mode::neighbor)
                return sweep_to_dict(sweep::sweep_neighbor(family, epsilon.value_or(0.002), grid, t));
            return sweep_to_dict(sweep::sweep_fixed_reference(family, ref_delta.value_or(-1.0), grid, t));
        },
        py::arg("model"), py::arg("n"), py::arg("mode") = "fixed_ref", py::arg("delta_min") = -0.995,
        py::arg("delta_max") = 0.995, py::arg("step") = 0.005, py::arg("epsilon") = py::none(),
        py::arg("ref_delta") = py::none(), py::arg("threads") = py::none(),
        "Sweep delta and return the frozen columns as lists (None where undefined).");
    m.def(
        "scaling",
        [](const std::vector<std::string>& model_names, const std::vector<int>& sizes, const std::string& reference,
           std::uint64_t seed, int chiral_sign, std::optional<int> threads) {
            std::vector<models::ModelSpec> specs;
            for (const auto& name : model_names) specs.push_back(cli::parse_model_token(name, seed, chiral_sign));
            const auto rows = sweep::scaling_run(specs, sizes, sweep::reference_from_string(reference),
                                                 sweep::resolve_threads(threads));
            py::list out;
            for (const auto& r : rows) {
                py::dict d;
                d["model"] = r.model;
                d["n"] = r.n;
                d["complexity"] = r.complexity;
                d["entropy_half"] = r.entropy_half;
                d["obstructed"] = r.obstructed;
                out.append(d);
            }
            return out;
        },
        py::arg("models"), py::arg("sizes"), py::arg("reference") = "fock", py::arg("seed") = 1, py::arg("chiral_sign") = -1,
        py::arg("threads") = py::none(), "Complexity against a fixed reference across system sizes.");
}
