#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dcopt/convergence.hpp"
#include "dcopt/data.hpp"
#include "dcopt/dc_loss.hpp"
#include "dcopt/errors.hpp"
#include "dcopt/io.hpp"
#include "dcopt/lambert_w.hpp"
#include "dcopt/neuron.hpp"
#include "dcopt/sweep.hpp"
#include "dcopt/verify.hpp"

namespace py = pybind11;
using namespace dcopt;

namespace {

std::vector<std::vector<double>> rows_of(const Dataset& data) {
  std::vector<std::vector<double>> out;
  out.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto row = data.row(i);
    out.emplace_back(row.begin(), row.end());
  }
  return out;
}

Dataset dataset_from(const std::vector<std::vector<double>>& rows, const std::vector<int>& labels) {
  if (rows.size() != labels.size()) throw DimensionError("dataset: row and label counts differ");
  if (rows.empty()) throw EmptyDatasetError("dataset: no rows");
  Dataset data(rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) data.push_back(rows[i], labels[i]);
  return data;
}

py::dict trace_entry(const EpochTrace& e) {
  py::dict d;
  d["epoch"] = e.epoch;
  d["train_loss"] = e.train_loss;
  d["test_accuracy"] = e.test_accuracy;
  d["theta_norm"] = e.theta_norm;
  d["min_normalized_margin"] = e.min_normalized_margin;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "DC loss laboratory core";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<EmptyDatasetError>(m, "EmptyDatasetError", base.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());
  py::register_exception<FormatError>(m, "FormatError", base.ptr());

  m.def("w0", py::overload_cast<double>(&w0), py::arg("x"), "Principal branch of the Lambert W function.");
  m.def(
      "w0_log_enclosure",
      [](double z) {
        const auto e = w0_log_enclosure(z);
        return py::make_tuple(e.lower, e.upper);
      },
      py::arg("z"), "(ln z - ln ln z, ln z), which encloses W0(z) for z > e.");

  py::class_<DCParams>(m, "DCParams")
      .def(py::init<double, double, double, double>(), py::arg("r"), py::arg("c"), py::arg("d"), py::arg("p_d"))
      .def_property_readonly("r", &DCParams::r)
      .def_property_readonly("c", &DCParams::c)
      .def_property_readonly("d", &DCParams::d)
      .def_property_readonly("p_d", &DCParams::p_d)
      .def_property_readonly("eps", &DCParams::eps)
      .def_property_readonly("a", &DCParams::a)
      .def_property_readonly("b", &DCParams::b)
      .def_property_readonly("kind", [](const DCParams& p) { return std::string(to_string(classify_config(p))); })
      .def("__eq__", [](const DCParams& x, const DCParams& y) { return x == y; })
      .def("__repr__", [](const DCParams& p) {
        std::ostringstream os;
        os.precision(17);
        os << "DCParams(r=" << p.r() << ", c=" << p.c() << ", d=" << p.d() << ", p_d=" << p.p_d() << ")";
        return os.str();
      });

  m.def("response_probability", &response_probability, py::arg("params"), py::arg("t"));
  m.def("log_response_probability", &log_response_probability, py::arg("params"), py::arg("t"));
  m.def("per_sample_loss", &per_sample_loss, py::arg("params"), py::arg("t"));
  m.def("loss_derivative", &loss_derivative, py::arg("params"), py::arg("t"));
  m.def("margin_transform", &margin_transform, py::arg("params"), py::arg("t"));
  m.def("two_pl", &two_pl, py::arg("omega"), py::arg("r"), py::arg("d"));

  m.def("dc_rate", &dc_rate, py::arg("params"), py::arg("z"));
  m.def("rate_onset", &rate_onset, py::arg("b"));
  m.def("default_rate", &default_rate, py::arg("z"));
  m.def(
      "theorem_bracket",
      [](double b, double z) {
        const auto br = theorem_bracket(b, z);
        py::dict d;
        d["lower"] = br.lower;
        d["upper"] = br.upper;
        d["z"] = br.z;
        d["value"] = br.value;
        return d;
      },
      py::arg("b"), py::arg("z"));

  m.def(
      "run_suites",
      [](const std::string& selection, std::uint64_t seed) {
        std::vector<std::tuple<std::string, bool, std::string>> out;
        for (const auto& o : run_suites(selection, seed)) out.emplace_back(o.name, o.passed, o.report.dump());
        return out;
      },
      py::arg("suite") = "all", py::arg("seed") = 7, "Returns (name, passed, report_json) per suite.");

  py::class_<Dataset>(m, "Dataset")
      .def(py::init(&dataset_from), py::arg("rows"), py::arg("labels"))
      .def("__len__", &Dataset::size)
      .def_property_readonly("dim", &Dataset::dim)
      .def_property_readonly("rows", &rows_of)
      .def_property_readonly("labels", [](const Dataset& d) { return std::vector<int>(d.labels().begin(), d.labels().end()); })
      .def("to_csv", [](const Dataset& d) {
        std::ostringstream os;
        write_csv(d, os);
        return os.str();
      });

  m.def(
      "generate",
      [](std::size_t m_, std::size_t n, double center_distance, double noise_sigma, std::uint64_t seed) {
        SyntheticSpec spec;
        spec.m = m_;
        spec.n = n;
        spec.center_distance = center_distance;
        spec.noise_sigma = noise_sigma;
        spec.seed = seed;
        return generate(spec);
      },
      py::arg("m") = 1000, py::arg("n") = 2, py::arg("center_distance") = 1.5, py::arg("noise_sigma") = 1.0,
      py::arg("seed") = 0);
  m.def(
      "split",
      [](const Dataset& data, double fraction, std::uint64_t seed) {
        auto s = split(data, fraction, seed);
        return py::make_tuple(std::move(s.train), std::move(s.test));
      },
      py::arg("data"), py::arg("fraction") = 0.8, py::arg("seed") = 0);

  m.def("empirical_loss",
        [](const DCParams& p, const std::vector<double>& theta, const Dataset& data) {
          return empirical_loss(p, WeightVector(theta), data);
        },
        py::arg("params"), py::arg("theta"), py::arg("data"));
  m.def("loss_gradient",
        [](const DCParams& p, const std::vector<double>& theta, const Dataset& data) {
          return loss_gradient(p, WeightVector(theta), data);
        },
        py::arg("params"), py::arg("theta"), py::arg("data"));
  m.def("accuracy",
        [](const std::vector<double>& theta, const Dataset& data) { return accuracy(WeightVector(theta), data); },
        py::arg("theta"), py::arg("data"));

  m.def(
      "train",
      [](const DCParams& p, const Dataset& train_set, const Dataset& test_set, double eta, std::size_t batch_size,
         std::size_t epochs, std::uint64_t seed, const std::string& mode, const std::string& init) {
        if (mode != "sgd" && mode != "gd") throw ValidationError("mode must be 'sgd' or 'gd'");
        if (init != "zeros" && init != "gaussian") throw ValidationError("init must be 'zeros' or 'gaussian'");
        TrainConfig cfg;
        cfg.eta = eta;
        cfg.batch_size = batch_size;
        cfg.epochs = epochs;
        cfg.seed = seed;
        cfg.mode = mode == "gd" ? TrainMode::GD : TrainMode::SGD;
        cfg.init = init == "gaussian" ? InitScheme::GaussianScaled : InitScheme::Zeros;
        TrainResult result;
        {
          py::gil_scoped_release release;
          result = train(p, train_set, test_set, cfg);
        }
        py::list trace;
        for (const auto& e : result.trace) trace.append(trace_entry(e));
        py::dict out;
        out["trace"] = trace;
        out["theta"] = result.theta.theta;
        return out;
      },
      py::arg("params"), py::arg("train_set"), py::arg("test_set"), py::arg("eta") = 0.01,
      py::arg("batch_size") = 75, py::arg("epochs") = 1500, py::arg("seed") = 0, py::arg("mode") = "sgd",
      py::arg("init") = "zeros");

  m.def(
      "grid_size", [](std::size_t d, std::size_t p_d, std::size_t r, std::size_t c) {
        GridSpec spec;
        spec.d.steps = d;
        spec.p_d.steps = p_d;
        spec.r.steps = r;
        spec.c.steps = c;
        return build_grid(spec).size();
      },
      py::arg("d_steps") = 11, py::arg("p_d_steps") = 9, py::arg("r_steps") = 24, py::arg("c_steps") = 25);
  m.def(
      "sample_grid",
      [](double pick_fraction, std::uint64_t seed) {
        const auto grid = build_grid(GridSpec{});
        return sample_grid(grid, pick_fraction, seed);
      },
      py::arg("pick_fraction") = 0.025, py::arg("seed") = 0, "Random subset of the default grid, in grid order.");
}
