#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zvar/bipotential.hpp"
#include "zvar/ensemble.hpp"
#include "zvar/errors.hpp"
#include "zvar/harness.hpp"
#include "zvar/kernel.hpp"
#include "zvar/roots.hpp"
#include "zvar/variance.hpp"

namespace py = pybind11;
using namespace zvar;

namespace {

AffinePoint to_point(const std::vector<Cx>& coords) { return AffinePoint(coords); }

std::vector<Cx> point_list(const ZeroSet& zs, int coord) {
  std::vector<Cx> out;
  out.reserve(zs.points.size());
  for (const AffinePoint& p : zs.points) out.push_back(p.coords[size_t(coord)]);
  return out;
}

}  // namespace

PYBIND11_MODULE(zvar, m) {
  m.doc() = "Number variance of zeros of Gaussian random polynomial systems on CP^m";

  py::register_exception<QuadratureError>(m, "QuadratureError");
  py::register_exception<SolverAbortError>(m, "SolverAbortError");
  py::register_exception<DiagonalEvaluationError>(m, "DiagonalEvaluationError");

  py::class_<Domain>(m, "Domain")
      .def_static("disk", [](std::complex<double> c, double r) { return Domain::disk(c, r); },
                  py::arg("center"), py::arg("radius"))
      .def_static("annulus",
                  [](std::complex<double> c, double ri, double ro) {
                    return Domain::annulus(c, ri, ro);
                  },
                  py::arg("center"), py::arg("r_inner"), py::arg("r_outer"))
      .def_static("rectangle",
                  [](std::complex<double> lo, std::complex<double> hi) {
                    return Domain::rectangle(lo, hi);
                  },
                  py::arg("lo"), py::arg("hi"))
      .def_static("ball", [](int mm, double r) { return Domain::ball(mm, r); }, py::arg("m"),
                  py::arg("radius"))
      .def_property_readonly("dim", &Domain::dim)
      .def("__repr__", &Domain::describe);

  m.def("fs_volume_density",
        [](const std::vector<Cx>& z) { return fs_volume_density(to_point(z)); }, py::arg("z"));
  m.def("domain_volume", &domain_volume, py::arg("domain"));
  m.def("boundary_volume", &boundary_volume, py::arg("domain"));
  m.def("contains", [](const Domain& U, const std::vector<Cx>& z) { return contains(U, to_point(z)); },
        py::arg("domain"), py::arg("z"));

  py::class_<RandomPolynomial>(m, "RandomPolynomial")
      .def_property_readonly("m", &RandomPolynomial::m)
      .def_property_readonly("degree", &RandomPolynomial::degree)
      .def_property_readonly("coeffs", [](const RandomPolynomial& p) { return p.coeffs(); });

  m.def("sample",
        [](int mm, int N, std::uint64_t seed, std::uint64_t stream) {
          return sample(mm, N, {seed, stream});
        },
        py::arg("m"), py::arg("degree"), py::arg("seed"), py::arg("stream") = 0);
  m.def("evaluate",
        [](const RandomPolynomial& p, const std::vector<Cx>& z) { return evaluate(p, to_point(z)); },
        py::arg("poly"), py::arg("z"));
  m.def("log_weight",
        [](int N, const std::vector<int>& J) { return log_weight(N, MultiIndex(J)); },
        py::arg("degree"), py::arg("J"));

  m.def("all_roots",
        [](const RandomPolynomial& p) { return point_list(all_roots(p), 0); }, py::arg("poly"),
        "All roots of an m = 1 polynomial.");
  m.def("count_zeros_contour", &count_zeros_contour, py::arg("poly"), py::arg("domain"));
  m.def("count_in_disk",
        [](const RandomPolynomial& p, const Domain& U) {
          return count_in_domain(all_roots(p), U);
        },
        py::arg("poly"), py::arg("domain"), "Enumerate roots and count those inside the domain.");
  m.def("solve_system_2d",
        [](const RandomPolynomial& p1, const RandomPolynomial& p2) {
          const ZeroSet zs = solve_system_2d(p1, p2);
          std::vector<std::pair<Cx, Cx>> out;
          out.reserve(zs.points.size());
          for (const AffinePoint& p : zs.points) out.emplace_back(p.coords[0], p.coords[1]);
          return out;
        },
        py::arg("p1"), py::arg("p2"));

  m.def("lambda_n",
        [](const std::vector<Cx>& z, const std::vector<Cx>& w, int N) {
          return lambda_n(to_point(z), to_point(w), N);
        },
        py::arg("z"), py::arg("w"), py::arg("degree"));
  m.def("p_n",
        [](const std::vector<Cx>& z, const std::vector<Cx>& w, int N) {
          return p_n(to_point(z), to_point(w), N);
        },
        py::arg("z"), py::arg("w"), py::arg("degree"));
  m.def("grad_lambda",
        [](const std::vector<Cx>& z, const std::vector<Cx>& w, int N) {
          const KernelEval ke = grad_lambda(to_point(z), to_point(w), N);
          return py::make_tuple(ke.lambda, ke.grad_zbar, ke.grad_wbar);
        },
        py::arg("z"), py::arg("w"), py::arg("degree"));
  m.def("fs_distance",
        [](const std::vector<Cx>& z, const std::vector<Cx>& w) {
          return fs_distance(to_point(z), to_point(w));
        },
        py::arg("z"), py::arg("w"));

  m.def("gtilde", &gtilde, py::arg("t"));
  m.def("g_moment", &g_moment, py::arg("t"));
  m.def("f_deriv", &f_deriv, py::arg("lam"), py::arg("order"));
  m.def("q_n",
        [](const std::vector<Cx>& z, const std::vector<Cx>& w, int N) {
          return q_n(to_point(z), to_point(w), N);
        },
        py::arg("z"), py::arg("w"), py::arg("degree"));
  m.def("k21_density",
        [](Cx z, Cx w, int N) { return k21_density(z, w, N); }, py::arg("z"), py::arg("w"),
        py::arg("degree"));
  m.def("zero_intensity", &zero_intensity, py::arg("z"), py::arg("degree"));

  m.def("n_coeff", &n_coeff, py::arg("m"), py::arg("j"));
  m.def("bose_integral", &bose_integral, py::arg("m"), py::arg("j"));
  m.def("nu_constant", &nu_constant, py::arg("m"), py::arg("k"));
  m.def("nu_m1_closed", &nu_m1_closed, py::arg("m"));
  m.def("predicted_variance", &predicted_variance, py::arg("m"), py::arg("k"), py::arg("degree"),
        py::arg("domain"));
  m.def("variance_boundary_exact", &variance_boundary_exact, py::arg("domain"), py::arg("degree"));
  m.def("variance_bulk_exact", &variance_bulk_exact, py::arg("domain"), py::arg("degree"));

  m.def("expected_count", &expected_count, py::arg("m"), py::arg("degree"), py::arg("domain"));
  m.def("mc_bipotential_check",
        [](double t, long trials, std::uint64_t seed) {
          const McEstimate est = mc_bipotential_check(t, trials, {seed, 0});
          return py::make_tuple(est.estimate, est.se);
        },
        py::arg("t"), py::arg("trials"), py::arg("seed") = 0);
  m.def("run_counting_experiment",
        [](int mm, int N, const Domain& U, long trials, std::uint64_t seed, int workers) {
          ExperimentConfig cfg;
          cfg.m = mm;
          cfg.k = mm;
          cfg.degrees = {N};
          cfg.domain = U;
          cfg.trials = trials;
          cfg.master_seed = seed;
          cfg.workers = workers;
          cfg.with_exact_variance = (mm == 1);
          const DegreeRecord r = run_counting_experiment(cfg).records.at(0);
          py::dict d;
          d["N"] = r.N;
          d["trials"] = r.trials;
          d["mean_count"] = r.mean_count;
          d["se_mean"] = r.se_mean;
          d["var_count"] = r.var_count;
          d["se_var"] = r.se_var;
          d["rejected_trials"] = r.rejected_trials;
          d["expected_count_exact"] = r.expected_count_exact;
          d["predicted_variance"] = r.predicted_variance;
          d["exact_variance"] = r.exact_variance;
          return d;
        },
        py::arg("m"), py::arg("degree"), py::arg("domain"), py::arg("trials"), py::arg("seed"),
        py::arg("workers") = 1);

  m.attr("__version__") = "0.1.0";
}
