// SPDX-License-Identifier: Apache-2.0
//
// ris-mcrb: mutual-coupling-aware RIS channel estimation bounds
// Copyright (C) 2026 ris-mcrb contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ris_mcrb/bounds.hpp"
#include "ris_mcrb/channel.hpp"
#include "ris_mcrb/errors.hpp"
#include "ris_mcrb/experiments.hpp"
#include "ris_mcrb/impedance.hpp"
#include "ris_mcrb/noise.hpp"
#include "ris_mcrb/scenario.hpp"

namespace py = pybind11;
using namespace ris_mcrb;

namespace
{
    RisLoadSequence loads_from(const CMatrix &loads)
    {
        RisLoadSequence seq;
        seq.loads = loads;
        return seq;
    }

    RealifiedModel model_from(const RMatrix &D, bool mutual) { return RealifiedModel{D, mutual}; }

    Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor> positions(const RisGrid &grid)
    {
        Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor> out(static_cast<Eigen::Index>(grid.size()), 3);
        for (std::size_t i = 0; i < grid.size(); ++i)
            out.row(static_cast<Eigen::Index>(i)) = grid.element_positions[i].transpose();
        return out;
    }
}

PYBIND11_MODULE(_core, m)
{
    m.doc() = "C++ core of ris_mcrb: thin-wire impedances, RIS channel model and estimation bounds.";
    m.attr("__version__") = version_string();

    // Exceptions, mirroring the C++ hierarchy.
    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", error.ptr());
    py::register_exception<ParseError>(m, "ParseError", error.ptr());
    py::register_exception<ValidationError>(m, "ValidationError", error.ptr());
    auto numerical = py::register_exception<NumericalError>(m, "NumericalError", error.ptr());
    py::register_exception<DegenerateGeometry>(m, "DegenerateGeometry", numerical.ptr());
    py::register_exception<InvalidGeometry>(m, "InvalidGeometry", numerical.ptr());
    py::register_exception<ConvergenceError>(m, "ConvergenceError", numerical.ptr());
    py::register_exception<SingularModel>(m, "SingularModel", numerical.ptr());
    py::register_exception<DegenerateDesign>(m, "DegenerateDesign", numerical.ptr());
    py::register_exception<FileError>(m, "FileError", error.ptr());

    // ---- geometry --------------------------------------------------------
    py::class_<PhysicalConstants>(m, "PhysicalConstants")
        .def_readonly("frequency", &PhysicalConstants::frequency)
        .def_readonly("wavelength", &PhysicalConstants::wavelength)
        .def_readonly("wavenumber", &PhysicalConstants::wavenumber)
        .def_readonly("intrinsic_impedance", &PhysicalConstants::intrinsic_impedance)
        .def_readonly("mu0", &PhysicalConstants::mu0)
        .def_readonly("eps0", &PhysicalConstants::eps0);
    m.def("derive_constants", &derive_constants, py::arg("frequency_hz"));

    py::class_<Radiator>(m, "Radiator")
        .def(py::init([](const Vec3 &p, double h, double r)
                      {
                          Radiator rad{p, h, r};
                          rad.validate();
                          return rad;
                      }),
             py::arg("position"), py::arg("half_length"), py::arg("wire_radius"))
        .def_readonly("position", &Radiator::position)
        .def_readonly("half_length", &Radiator::half_length)
        .def_readonly("wire_radius", &Radiator::wire_radius);

    py::class_<RisGrid>(m, "RisGrid")
        .def_readonly("n1", &RisGrid::n1)
        .def_readonly("n2", &RisGrid::n2)
        .def_readonly("spacing", &RisGrid::spacing)
        .def_readonly("center", &RisGrid::center)
        .def_property_readonly("positions", &positions)
        .def("__len__", &RisGrid::size);
    m.def("build_ris_grid", &build_ris_grid, py::arg("n1"), py::arg("n2"), py::arg("spacing"), py::arg("center"));

    // ---- scenario ----------------------------------------------------------
    py::class_<NoiseModel>(m, "NoiseModel")
        .def(py::init<double, double, double>(), py::arg("psd_dbm_hz") = -173.855, py::arg("noise_figure_db") = 10.0,
             py::arg("bandwidth_hz") = 1.0)
        .def_readonly("psd_dbm_hz", &NoiseModel::psd_dbm_hz)
        .def_readonly("noise_figure_db", &NoiseModel::noise_figure_db)
        .def_readonly("bandwidth_hz", &NoiseModel::bandwidth_hz);
    m.def("noise_variance", &noise_variance, py::arg("noise"));
    m.def("dbm_to_watts", &dbm_to_watts, py::arg("dbm"));

    py::class_<Scenario>(m, "Scenario")
        .def_readonly("constants", &Scenario::constants)
        .def_readonly("tx", &Scenario::tx)
        .def_readonly("rx", &Scenario::rx)
        .def_readonly("ris", &Scenario::ris)
        .def_readonly("element_half_length", &Scenario::element_half_length)
        .def_readonly("element_wire_radius", &Scenario::element_wire_radius)
        .def_readonly("noise", &Scenario::noise)
        .def_readonly("num_transmissions", &Scenario::num_transmissions)
        .def_readonly("rng_seed", &Scenario::rng_seed)
        .def_property_readonly("num_elements", &Scenario::num_elements)
        .def_property_readonly("sigma2", [](const Scenario &s) { return noise_variance(s.noise); })
        .def("serialize", [](const Scenario &s) { return serialize_scenario(s.config); });
    m.def("load_scenario", [](const std::string &text) { return load_scenario(text); }, py::arg("config_text") = "");
    m.def("load_scenario_file", &load_scenario_file, py::arg("path"));
    m.def("with_ris_grid", &with_ris_grid, py::arg("scenario"), py::arg("n1"), py::arg("n2"),
          py::arg("spacing_over_lambda"));

    // ---- impedances ----------------------------------------------------------
    py::class_<QuadratureSpec>(m, "QuadratureSpec")
        .def(py::init([](int base, int factor, double tol, int max_ref)
                      {
                          QuadratureSpec q{base, factor, tol, max_ref};
                          q.validate();
                          return q;
                      }),
             py::arg("base_order") = 16, py::arg("refinement_factor") = 2, py::arg("rel_tolerance") = 1e-9,
             py::arg("max_refinements") = 6)
        .def_readonly("base_order", &QuadratureSpec::base_order)
        .def_readonly("refinement_factor", &QuadratureSpec::refinement_factor)
        .def_readonly("rel_tolerance", &QuadratureSpec::rel_tolerance)
        .def_readonly("max_refinements", &QuadratureSpec::max_refinements);

    py::class_<Impedance>(m, "Impedance")
        .def_readonly("value", &Impedance::value)
        .def_readonly("error_estimate", &Impedance::error_estimate)
        .def_readonly("order", &Impedance::order)
        .def("__abs__", [](const Impedance &z) { return std::abs(z.value); });

    m.def("kernel_distance", &kernel_distance, py::arg("xi"), py::arg("z"), py::arg("rho1"), py::arg("rho2"));
    m.def("mutual_impedance", &mutual_impedance, py::arg("p"), py::arg("q"), py::arg("constants"),
          py::arg("quad") = QuadratureSpec{});
    m.def(
        "impedance_matrix",
        [](const std::vector<Radiator> &elements, const PhysicalConstants &c, const QuadratureSpec &quad)
        {
            auto z = impedance_matrix(elements, c, quad);
            return py::make_tuple(z.self, z.mutual);
        },
        py::arg("elements"), py::arg("constants"), py::arg("quad") = QuadratureSpec{},
        "Returns (diag of Z_SS^self, Z_SS^mutual).");
    m.def(
        "coupling_vector",
        [](const Radiator &antenna, const std::vector<Radiator> &elements, const PhysicalConstants &c,
           const QuadratureSpec &quad) { return coupling_vector(antenna, elements, c, quad); },
        py::arg("antenna"), py::arg("elements"), py::arg("constants"), py::arg("quad") = QuadratureSpec{});

    py::class_<ImpedanceSet>(m, "ImpedanceSet")
        .def_readonly("z_st", &ImpedanceSet::z_st)
        .def_readonly("z_rs", &ImpedanceSet::z_rs)
        .def_readonly("zss_self", &ImpedanceSet::zss_self)
        .def_readonly("zss_mutual", &ImpedanceSet::zss_mutual)
        .def("zss_total", &ImpedanceSet::zss_total);
    m.def(
        "compute_impedances",
        [](const Scenario &s, const QuadratureSpec &quad) { return compute_impedances(s, quad); },
        py::arg("scenario"), py::arg("quad") = QuadratureSpec{});

    // ---- channel model -------------------------------------------------------
    m.def(
        "sample_loads", [](const Scenario &s) { return sample_loads(s).loads; }, py::arg("scenario"),
        "G x N complex tunable loads from the scenario's 'loads' substream.");
    m.def("e2e_channel", &e2e_channel, py::arg("z_rs"), py::arg("zss_total"), py::arg("z_ris"), py::arg("z_st"));
    m.def(
        "build_B",
        [](const CVector &z_rs, const CVector &self, const CMatrix &mutual, const CMatrix &loads)
        { return build_B(z_rs, self, mutual, loads_from(loads)); },
        py::arg("z_rs"), py::arg("zss_self"), py::arg("zss_mutual"), py::arg("loads"));
    m.def(
        "build_B_uncoupled",
        [](const CVector &z_rs, const CVector &self, const CMatrix &loads)
        { return build_B_uncoupled(z_rs, self, loads_from(loads)); },
        py::arg("z_rs"), py::arg("zss_self"), py::arg("loads"));

    py::class_<RealifiedModel>(m, "RealifiedModel")
        .def(py::init(&model_from), py::arg("D"), py::arg("includes_mutual_coupling") = false)
        .def_readonly("D", &RealifiedModel::D)
        .def_readonly("includes_mutual_coupling", &RealifiedModel::includes_mutual_coupling);
    m.def("realify", &realify, py::arg("B"), py::arg("includes_mutual_coupling") = false);
    m.def("realify_vec", &realify_vec, py::arg("v"));
    m.def("complexify_vec", &complexify_vec, py::arg("x"));
    m.def(
        "generate_observations",
        [](const RealifiedModel &model, const RVector &x, double p_t, double sigma2, std::uint64_t seed,
           bool noiseless)
        {
            Rng rng(seed);
            return generate_observations(model, x, p_t, sigma2, rng, noiseless);
        },
        py::arg("model"), py::arg("x"), py::arg("p_t"), py::arg("sigma2"), py::arg("seed") = 0,
        py::arg("noiseless") = false);

    // ---- bounds --------------------------------------------------------------
    py::class_<BoundReport>(m, "BoundReport")
        .def_readonly("p_t", &BoundReport::p_t)
        .def_readonly("gamma", &BoundReport::gamma)
        .def_readonly("tr_mcrb", &BoundReport::tr_mcrb)
        .def_readonly("tr_bias", &BoundReport::tr_bias)
        .def_readonly("lb", &BoundReport::lb)
        .def_readonly("crlb", &BoundReport::crlb)
        .def_readonly("rmse", &BoundReport::rmse);

    m.def(
        "ml_estimate", [](const RealifiedModel &D, const RVector &r, double p_t) { return ml_estimate(D, r, p_t).x; },
        py::arg("D_est"), py::arg("r"), py::arg("p_t"));
    m.def(
        "pseudo_true",
        [](const RealifiedModel &est, const RealifiedModel &truth, const RVector &x)
        { return pseudo_true(est, truth, ChannelVector{x}).x; },
        py::arg("D_est"), py::arg("D_true"), py::arg("x_true"));
    m.def("mcrb_trace", &mcrb_trace, py::arg("D_est"), py::arg("gamma"));
    m.def(
        "bias_trace",
        [](const RealifiedModel &est, const RealifiedModel &truth, const RVector &x)
        { return bias_trace(est, truth, ChannelVector{x}); },
        py::arg("D_est"), py::arg("D_true"), py::arg("x_true"));
    m.def("crlb", &crlb, py::arg("D_true"), py::arg("gamma"));
    m.def(
        "lower_bound",
        [](const RealifiedModel &est, const RealifiedModel &truth, const RVector &x, double gamma)
        { return lower_bound(est, truth, ChannelVector{x}, gamma); },
        py::arg("D_est"), py::arg("D_true"), py::arg("x_true"), py::arg("gamma"));
    m.def(
        "mc_rmse",
        [](const RealifiedModel &est, const RealifiedModel &truth, const RVector &x, double p_t, double sigma2,
           std::size_t trials, std::uint64_t seed, const std::string &prefix, bool noiseless)
        {
            py::gil_scoped_release release;
            return mc_rmse(est, truth, ChannelVector{x}, p_t, sigma2, trials, SeedTree(seed), prefix, noiseless);
        },
        py::arg("D_est"), py::arg("D_true"), py::arg("x_true"), py::arg("p_t"), py::arg("sigma2"),
        py::arg("trials"), py::arg("seed") = 1, py::arg("stream_prefix") = "noise", py::arg("noiseless") = false);

    // ---- sweeps --------------------------------------------------------------
    py::enum_<SweepKind>(m, "SweepKind")
        .value("lb_vs_power", SweepKind::lb_vs_power)
        .value("bias_vs_spacing", SweepKind::bias_vs_spacing)
        .value("crlb_vs_spacing", SweepKind::crlb_vs_spacing)
        .value("mc_rmse", SweepKind::mc_rmse);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("p_t_dbm", &SweepRow::p_t_dbm)
        .def_readonly("d_over_lambda", &SweepRow::d_over_lambda)
        .def_readonly("n1", &SweepRow::n1)
        .def_readonly("n2", &SweepRow::n2)
        .def_readonly("report", &SweepRow::report);

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("kind", &SweepResult::kind)
        .def_readonly("rows", &SweepResult::rows)
        .def("to_csv", &to_csv)
        .def_property_readonly("wall_clock_seconds",
                               [](const SweepResult &r) { return r.metadata.wall_clock_seconds; });

    m.def(
        "run_sweep",
        [](SweepKind kind, const Scenario &scenario, std::vector<double> powers_dbm, std::vector<double> spacings,
           std::vector<std::pair<std::size_t, std::size_t>> sizes, std::size_t trials, bool matched,
           bool noiseless, bool use_cache)
        {
            SweepRequest req;
            req.kind = kind;
            req.scenario = scenario;
            req.power_grid_dbm = std::move(powers_dbm);
            req.spacing_grid = std::move(spacings);
            for (const auto &[a, b] : sizes)
                req.sizes.push_back({a, b});
            req.trials = trials;
            req.matched = matched;
            req.noiseless = noiseless;
            req.use_cache = use_cache;
            py::gil_scoped_release release;
            return run_sweep(req);
        },
        py::arg("kind"), py::arg("scenario"), py::arg("powers_dbm") = std::vector<double>{},
        py::arg("spacings_over_lambda") = std::vector<double>{},
        py::arg("sizes") = std::vector<std::pair<std::size_t, std::size_t>>{}, py::arg("trials") = 0,
        py::arg("matched") = false, py::arg("noiseless") = false, py::arg("use_cache") = true);

    m.def(
        "impedance_sweep",
        [](const Scenario &s, const std::vector<double> &d)
        {
            std::vector<cdouble> out;
            for (const auto &row : run_impedance_sweep(s, d))
                out.push_back(row.z.value);
            return out;
        },
        py::arg("scenario"), py::arg("distances_over_lambda"));
}
