#include "rcpkit/ensembles.hpp"
#include "rcpkit/error.hpp"
#include "rcpkit/orthant.hpp"
#include "rcpkit/pushbroom.hpp"
#include "rcpkit/rcpcalc.hpp"
#include "rcpkit/report.hpp"
#include "rcpkit/ripcalc.hpp"
#include "rcpkit/spectra.hpp"
#include "rcpkit/wishstat.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>

namespace py = pybind11;
using namespace rcpkit;

namespace {

// Structured results travel as the same JSON the CLI writes.
py::object to_python(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::tuple interval(const BoundInterval& b) { return py::make_tuple(b.lower, b.upper); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Restricted isometry and conformal property toolkit";
  m.attr("__version__") = RCPKIT_VERSION;

  // Error kind is prefixed to the message; the Python type derives from ValueError.
  static py::handle error = py::exception<Error>(m, "Error", PyExc_ValueError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error.ptr(), (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  m.def("gaussian_matrix", [](Index M, Index N, std::uint64_t seed) { return gen_gaussian_matrix(M, N, seed).entries; },
        py::arg("M"), py::arg("N"), py::arg("seed"));
  m.def("bernoulli01_matrix",
        [](Index M, Index N, std::uint64_t seed, bool normalize) {
          return gen_bernoulli01_matrix(M, N, seed, normalize).entries;
        },
        py::arg("M"), py::arg("N"), py::arg("seed"), py::arg("normalize") = false);
  m.def("sparse_signal", [](Index N, Index K, std::uint64_t seed) { return gen_sparse_signal(N, K, seed).values; },
        py::arg("N"), py::arg("K"), py::arg("seed"));
  m.def("dct_basis", [](Index N) { return dct_basis(N).entries; }, py::arg("N"));
  m.def("synthetic_image",
        [](Index N, Index L, double smoothness, std::uint64_t seed, bool zero_band) {
          return gen_synthetic_image(N, L, smoothness, seed, {.zero_band = zero_band});
        },
        py::arg("N"), py::arg("L"), py::arg("smoothness"), py::arg("seed"), py::arg("zero_band") = false);

  m.def("eig_sym",
        [](const Matrix& G) {
          const GramSpectrum s = eig_sym(G);
          return py::make_tuple(s.eigenvalues, s.eigenvectors);
        },
        py::arg("G"), "Descending eigenvalues and matching eigenvector columns.");
  m.def("ric_support", [](const Matrix& phi, const Support& I) { return ric_support(phi, I).delta; }, py::arg("phi"),
        py::arg("I"));
  m.def("ric_exact",
        [](const Matrix& phi, Index K, unsigned threads) { return to_python(to_json(ric_exact(phi, K, {.threads = threads}))); },
        py::arg("phi"), py::arg("K"), py::arg("threads") = 1);
  m.def("ric_monte_carlo",
        [](const Matrix& phi, Index K, std::int64_t trials, std::uint64_t seed) {
          return to_python(to_json(ric_monte_carlo(phi, K, trials, seed)));
        },
        py::arg("phi"), py::arg("K"), py::arg("trials"), py::arg("seed"));
  m.def("roc_exact",
        [](const Matrix& phi, Index K, Index K_prime) { return to_python(to_json(roc_exact(phi, K, K_prime))); },
        py::arg("phi"), py::arg("K"), py::arg("K_prime"));

  m.def("pair_geometry",
        [](const Matrix& phi, const Vector& xu, const Vector& xv) { return to_python(to_json(pair_geometry(phi, xu, xv))); },
        py::arg("phi"), py::arg("x_u"), py::arg("x_v"));
  m.def("jl_epsilon", [](const Matrix& phi, const std::vector<Vector>& pts) { return jl_epsilon(phi, pts); },
        py::arg("phi"), py::arg("points"));
  m.def("rcp_jl_bounds", [](double xi, double c, double d, double e) { return interval(rcp_jl_bounds(xi, c, d, e)); },
        py::arg("xi"), py::arg("cos_alpha"), py::arg("delta_max"), py::arg("epsilon"));
  m.def("rcp_jl_bounds_rigorous",
        [](double xi, double c, double d, double e) { return interval(rcp_jl_bounds_rigorous(xi, c, d, e)); },
        py::arg("xi"), py::arg("cos_alpha"), py::arg("delta_max"), py::arg("epsilon"));
  m.def("rcp_ip_bounds", [](double c, double dk) { return interval(rcp_ip_bounds(c, dk)); }, py::arg("cos_alpha"),
        py::arg("delta_k"));
  m.def("rcp_orthogonal_bounds", [](double dk, double dm) { return interval(rcp_orthogonal_bounds(dk, dm)); },
        py::arg("delta_k"), py::arg("delta_max"));
  m.def("rcp_orthogonal_bounds_rigorous",
        [](double dk, double dm) { return interval(rcp_orthogonal_bounds_rigorous(dk, dm)); }, py::arg("delta_k"),
        py::arg("delta_max"));
  m.def("sandwich_holds", [](const Matrix& phi, const Vector& xu, const Vector& xv) { return sandwich_check(phi, xu, xv).holds; },
        py::arg("phi"), py::arg("x_u"), py::arg("x_v"));

  m.def("orthant",
        [](const Matrix& phi, const Vector& xu, const Vector& xv) {
          const Support I = support_union(support_of(xu), support_of(xv));
          const GramSpectrum s = ric_support(phi, I).spectrum;
          const RotatedPair p = rotate_pair(s, xu, xv, I);
          const OrthantRatio r = orthant_ratio(p);
          nlohmann::json j = {{"support", to_json(I)}, {"ratio", to_json(r)}};
          if (p.k1() > 0) j["minus_term"] = to_json(minus_term_diag(s, p, r.cos_alpha));
          return to_python(j);
        },
        py::arg("phi"), py::arg("x_u"), py::arg("x_v"),
        "Orthant ratio and minus-term diagnostics on the joint support.");

  m.def("transform_eigenvalue", &transform_eigenvalue, py::arg("lam"), py::arg("M"), py::arg("supp_size"));
  m.def("run_campaign",
        [](Index M, Index N, Index supp, std::int64_t trials, std::uint64_t seed, unsigned threads) {
          const EigenCampaign c = run_campaign(M, N, supp, trials, seed, threads);
          return py::make_tuple(c.samples, c.transformed);
        },
        py::arg("M"), py::arg("N"), py::arg("supp_size"), py::arg("trials"), py::arg("seed"), py::arg("threads") = 1,
        "Eigenvalues (trial-major) and their transformed values.");
  m.def("ks_test",
        [](std::vector<double> xs, double alpha) {
          std::sort(xs.begin(), xs.end());
          return to_python(to_json(ks_test(xs, alpha)));
        },
        py::arg("samples"), py::arg("alpha") = 0.01);
  m.def("jb_test", [](const std::vector<double>& xs, double alpha) { return to_python(to_json(jb_test(xs, alpha))); },
        py::arg("samples"), py::arg("alpha") = 0.01);

  m.def("pushbroom_mu",
        [](const Matrix& phi, const Matrix& X) {
          const PushbroomRun run = run_pushbroom(X, custom_matrix(phi), std::nullopt);
          return py::make_tuple(run.curve(CurveLabel::mu_X).values, run.curve(CurveLabel::mu_Y).values);
        },
        py::arg("phi"), py::arg("X"), "Adjacent-column cosines of the scene and of its measurements.");
  m.def("ensemble_mu_correlation",
        [](Index count, Index N, Index M, Index k_min, Index k_max, std::uint64_t seed) {
          return ensemble_experiment(count, N, M, k_min, k_max, seed).mu_correlation;
        },
        py::arg("count"), py::arg("N"), py::arg("M"), py::arg("k_min"), py::arg("k_max"), py::arg("seed"));
}
