#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "shearhom/commands.hpp"
#include "shearhom/config.hpp"
#include "shearhom/diagnostics.hpp"
#include "shearhom/errors.hpp"
#include "shearhom/mm.hpp"
#include "shearhom/mst.hpp"
#include "shearhom/pwe.hpp"
#include "shearhom/report.hpp"

namespace py = pybind11;
using namespace shearhom;

namespace {

Point point(std::pair<double, double> c) { return {c.first, c.second}; }

SeriesConfig series(int j, int m, const std::string& mu0, const std::string& path) {
  SeriesConfig s;
  s.j = j;
  s.m = m;
  s.mu0 = parse_mu0(mu0);
  s.path = parse_path(path);
  return s;
}

py::dict to_dict(const EstimateReport& r) {
  py::dict d;
  d["f"] = r.f;
  d["c_numeric"] = r.c_numeric;
  d["c_pwe"] = r.c_pwe;
  d["c_mm"] = r.c_mm;
  d["c_mmtilde"] = r.c_mmtilde;
  d["c_mst_a"] = r.c_mst_a;
  d["c_mst_b"] = r.c_mst_b;
  d["c_upper_bound"] = r.c_upper_bound;
  d["terms_used"] = r.terms_used;
  d["last_term"] = r.last_term;
  d["warnings"] = r.warnings;
  return d;
}

Composition declared(const Lattice& lat) {
  Composition c;
  const auto f = lat.filling_fractions();
  for (std::size_t k = 0; k < lat.size(); ++k) {
    c.names.push_back(lat.phases()[k].name);
    c.materials.push_back(lat.phases()[k].material);
    c.fractions.push_back(f[k]);
  }
  return c;
}

}  // namespace

PYBIND11_MODULE(_shearhom, m) {
  m.doc() = "Quasistatic antiplane shear speed of 2D periodic composites";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidGeometry>(m, "InvalidGeometry", base.ptr());
  py::register_exception<DivergenceError>(m, "DivergenceError", base.ptr());
  py::register_exception<InvalidResult>(m, "InvalidResult", base.ptr());
  py::register_exception<InvalidRegime>(m, "InvalidRegime", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

  py::class_<Material>(m, "Material")
      .def(py::init([](double mu, double rho) { return Material{mu, rho}; }), py::arg("mu"),
           py::arg("rho"))
      .def_readwrite("mu", &Material::mu)
      .def_readwrite("rho", &Material::rho);

  py::class_<Phase>(m, "Phase").def_readonly("name", &Phase::name).def_readonly("material", &Phase::material);

  auto phase = [](Material mat, Shape s, std::string name) { return Phase{mat, std::move(s), std::move(name)}; };
  m.def("matrix", [=](Material mat, std::string name) { return phase(mat, FullCell{}, std::move(name)); },
        py::arg("material"), py::arg("name") = "matrix");
  m.def("square",
        [=](Material mat, double side, std::pair<double, double> c, std::string name) {
          return phase(mat, AxisSquare{side, point(c)}, std::move(name));
        },
        py::arg("material"), py::arg("side"), py::arg("center") = std::pair{0.5, 0.5}, py::arg("name") = "square");
  m.def("square45",
        [=](Material mat, double side, std::pair<double, double> c, std::string name) {
          return phase(mat, RotatedSquare45{side, point(c)}, std::move(name));
        },
        py::arg("material"), py::arg("side"), py::arg("center") = std::pair{0.5, 0.5}, py::arg("name") = "square45");
  m.def("circle",
        [=](Material mat, double radius, std::pair<double, double> c, std::string name) {
          return phase(mat, Circle{radius, point(c)}, std::move(name));
        },
        py::arg("material"), py::arg("radius"), py::arg("center") = std::pair{0.5, 0.5}, py::arg("name") = "circle");
  m.def("annulus",
        [=](Material mat, double inner, double outer, std::pair<double, double> c, std::string name) {
          return phase(mat, Annulus{inner, outer, point(c)}, std::move(name));
        },
        py::arg("material"), py::arg("inner"), py::arg("outer"), py::arg("center") = std::pair{0.5, 0.5},
        py::arg("name") = "annulus");
  m.def("layer",
        [=](Material mat, double width, int normal, double center, std::string name) {
          if (normal != 1 && normal != 2) throw ConfigError("normal must be 1 or 2");
          return phase(mat, Layer{normal == 1 ? Axis::x1 : Axis::x2, width, center}, std::move(name));
        },
        py::arg("material"), py::arg("width"), py::arg("normal") = 2, py::arg("center") = 0.5,
        py::arg("name") = "layer");

  py::class_<Lattice>(m, "Lattice")
      .def(py::init<double, double, std::vector<Phase>>(), py::arg("a1"), py::arg("a2"), py::arg("phases"))
      .def_property_readonly("a1", &Lattice::a1)
      .def_property_readonly("a2", &Lattice::a2)
      .def("filling_fractions",
           [](const Lattice& l) { return std::vector<double>(l.filling_fractions().begin(), l.filling_fractions().end()); })
      .def("fourfold_symmetric", &Lattice::fourfold_symmetric)
      .def("moments", [](const Lattice& l) {
        const Moments mo = cell_moments(l);
        py::dict d;
        d["mean_mu"] = mo.mean_mu;
        d["mean_mu2"] = mo.mean_mu2;
        d["mean_rho"] = mo.mean_rho;
        d["mu_min"] = mo.mu_min;
        d["mu_max"] = mo.mu_max;
        return d;
      });

  m.def("effective_speed",
        [](const Lattice& l, int j, int m_, const std::string& mu0, double kappa_deg, const std::string& path) {
          const auto r = effective_speed_numeric(l, Direction::from_degrees(kappa_deg), series(j, m_, mu0, path));
          py::dict d;
          d["speed"] = r.speed;
          d["mu_eff"] = r.mu_eff;
          d["M"] = r.M;
          d["mu0"] = r.series.mu0;
          d["terms"] = r.series.terms;
          return d;
        },
        py::arg("lattice"), py::arg("j") = 12, py::arg("m") = 150, py::arg("mu0") = "mid",
        py::arg("kappa_deg") = 0.0, py::arg("path") = "conv",
        "Neumann-series effective speed, m/s, with the series terms.");

  m.def("dense_speed",
        [](const Lattice& l, int j, double kappa_deg) {
          const Moments mo = cell_moments(l);
          const double M = dense_M(mu_table(l, j), ReciprocalGrid(j, l.a1(), l.a2()), Direction::from_degrees(kappa_deg));
          return std::sqrt(std::max(mo.mean_mu - M, 0.0) / mo.mean_rho);
        },
        py::arg("lattice"), py::arg("j") = 4, py::arg("kappa_deg") = 0.0);

  m.def("pwe_speed", [](const Lattice& l) { return std::sqrt(pwe_estimate_c2(cell_moments(l))); }, py::arg("lattice"));
  m.def("pwe_bounds",
        [](const Lattice& l) {
          const auto b = pwe_bounds(cell_moments(l));
          std::optional<double> lo;
          if (b.lower) lo = std::sqrt(*b.lower);
          return std::pair<std::optional<double>, double>{lo, std::sqrt(b.upper)};
        },
        py::arg("lattice"), "(lower, upper) speed bounds, m/s; lower is None when mu_min = 0.");

  m.def("mm_speeds",
        [](const Lattice& l, double kappa_deg) {
          const MMReport r = mm_estimate(l);
          const Direction k = Direction::from_degrees(kappa_deg);
          return std::pair<double, double>{r.c_mm(k), r.c_mmtilde(k)};
        },
        py::arg("lattice"), py::arg("kappa_deg") = 0.0, "(c_MM, c_MMtilde), m/s.");

  m.def("mst_speed",
        [](Material matrix, Material inclusion, double f, double mean_rho) {
          return std::sqrt(mst_two_phase(matrix, inclusion, f, mean_rho));
        },
        py::arg("matrix"), py::arg("inclusion"), py::arg("f"), py::arg("mean_rho"));
  m.def("keller_residual",
        [](const std::string& est, double mu1, double mu2, double f) {
          DualityEstimator e;
          if (est == "mst") e = DualityEstimator::mst;
          else if (est == "pwe") e = DualityEstimator::pwe;
          else if (est == "mm") e = DualityEstimator::mm;
          else if (est == "mmtilde") e = DualityEstimator::mmtilde;
          else throw ConfigError("estimator must be mst, pwe, mm or mmtilde");
          return keller_residual(e, mu1, mu2, f);
        },
        py::arg("estimator"), py::arg("mu1"), py::arg("mu2"), py::arg("f"));

  m.def("estimate",
        [](const Lattice& l, int j, int m_, const std::string& mu0, double kappa_deg, const std::string& path) {
          const double f = 1.0 - l.filling_fractions()[0];
          return to_dict(estimate(l, declared(l), f, Direction::from_degrees(kappa_deg), series(j, m_, mu0, path)));
        },
        py::arg("lattice"), py::arg("j") = 12, py::arg("m") = 150, py::arg("mu0") = "mid",
        py::arg("kappa_deg") = 0.0, py::arg("path") = "conv", "Every estimator on one lattice, as a CSV row dict.");

  m.def("sweep",
        [](const std::string& config_path) {
          const Config c = load_config(config_path);
          if (!c.sweep) throw ConfigError("config has no 'sweep' block");
          py::list rows;
          for (double f : c.sweep->grid()) {
            const SweepPoint p = sweep_point(c, *c.sweep, f);
            rows.append(to_dict(estimate(p.lattice, p.roles, f, Direction::from_degrees(c.kappa_deg), c.series)));
          }
          return rows;
        },
        py::arg("config_path"));

  m.def("theta",
        [](const Lattice& l, int j, const std::string& mu0) {
          const FourierTable t = mu_table(l, j);
          return convergence_report(t, parse_mu0(mu0).resolve(cell_moments(l))).theta;
        },
        py::arg("lattice"), py::arg("j") = 12, py::arg("mu0") = "mean");

  m.def("psi_hat", &psi_hat, py::arg("n"), py::arg("k"));
  m.def("fft_available", &fft_available);
}
