// Python bindings for the estimators, tensor pipeline, and generators.

#include "hpca/bench.hpp"
#include "hpca/estimators.hpp"
#include "hpca/linalg.hpp"
#include "hpca/synthgen.hpp"
#include "hpca/tensor.hpp"

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>

namespace py = pybind11;
using namespace hpca;

namespace {

Tensor3 tensor_from_numpy(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 3) {
    throw DimensionError("expected a 3-d array");
  }
  Tensor3 t(a.shape(0), a.shape(1), a.shape(2));
  auto view = a.unchecked<3>();
  for (Index i = 0; i < t.dim(1); ++i) {
    for (Index j = 0; j < t.dim(2); ++j) {
      for (Index k = 0; k < t.dim(3); ++k) {
        t(i, j, k) = view(i, j, k);
      }
    }
  }
  return t;
}

py::array_t<double> tensor_to_numpy(const Tensor3& t) {
  py::array_t<double> out({t.dim(1), t.dim(2), t.dim(3)});
  auto view = out.mutable_unchecked<3>();
  for (Index i = 0; i < t.dim(1); ++i) {
    for (Index j = 0; j < t.dim(2); ++j) {
      for (Index k = 0; k < t.dim(3); ++k) {
        view(i, j, k) = t(i, j, k);
      }
    }
  }
  return out;
}

OrthonormalBasis basis_of(const Matrix& m) { return OrthonormalBasis(m); }

py::dict schedule_dict(const DeflationSchedule& s) {
  py::dict d;
  d["breakpoints"] = s.breakpoints;
  d["iters"] = s.iters;
  d["gap_const"] = s.gap_const;
  d["gap_fraction_denominator"] = s.gap_fraction_denominator;
  return d;
}

InitMethod init_from_name(const std::string& name) {
  if (name == "deflated") return InitMethod::deflated;
  if (name == "hetero") return InitMethod::heteropca;
  if (name == "diag-del") return InitMethod::diag_deleted;
  if (name == "svd") return InitMethod::svd;
  throw ContractError("unknown init method '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Subspace estimation under heteroskedastic noise";

  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
  py::register_exception<SingularityError>(m, "SingularityError", PyExc_ArithmeticError);
  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);

  // projections and decompositions
  m.def("diag_project", &diag_project, py::arg("m"));
  m.def("offdiag_project", &offdiag_project, py::arg("m"));
  m.def(
      "top_r_eigs",
      [](const Matrix& mat, Index r) {
        const SpectrumDecomposition dec = top_r_eigs(mat, r);
        return py::make_tuple(dec.values, dec.basis.matrix());
      },
      py::arg("m"), py::arg("r"),
      "Top-r eigenpairs by magnitude: (values, basis)");
  m.def(
      "thin_svd",
      [](const Matrix& mat, Index r) {
        const ThinSvd svd = thin_svd(mat, r);
        return py::make_tuple(svd.left.matrix(), svd.values, svd.right.matrix());
      },
      py::arg("m"), py::arg("r"), "Leading r singular triplets: (U, s, V)");
  m.def("sign_matrix", &sign_matrix, py::arg("h"));
  m.def(
      "optimal_rotation",
      [](const Matrix& u, const Matrix& ustar) {
        return optimal_rotation(basis_of(u), basis_of(ustar));
      },
      py::arg("u"), py::arg("ustar"));
  m.def(
      "dist_spectral",
      [](const Matrix& u, const Matrix& ustar) {
        return dist_spectral(basis_of(u), basis_of(ustar));
      },
      py::arg("u"), py::arg("ustar"));
  m.def(
      "dist_two_inf",
      [](const Matrix& u, const Matrix& ustar) {
        return dist_two_inf(basis_of(u), basis_of(ustar));
      },
      py::arg("u"), py::arg("ustar"));
  m.def(
      "incoherence", [](const Matrix& u) { return incoherence(basis_of(u)); },
      py::arg("u"));

  // estimators
  m.def("gram_offdiag", &gram_offdiag, py::arg("y"));
  m.def(
      "vanilla_svd_estimate",
      [](const Matrix& y, Index r) { return vanilla_svd_estimate(y, r).basis.matrix(); },
      py::arg("y"), py::arg("r"));
  m.def(
      "diag_deleted_estimate",
      [](const Matrix& y, Index r) { return diag_deleted_estimate(y, r).basis.matrix(); },
      py::arg("y"), py::arg("r"));
  m.def(
      "heteropca",
      [](const Matrix& gram_in, Index r, int t_max) {
        const HeteroPcaResult res = heteropca(gram_in, r, t_max);
        return py::make_tuple(res.gram, res.basis.matrix());
      },
      py::arg("gram_in"), py::arg("r"), py::arg("t_max") = 100,
      "Iterative diagonal imputation: (gram, basis)");
  m.def("select_rank", &select_rank, py::arg("gram_prev"), py::arg("r_prev"), py::arg("r"),
        py::arg("gap_const") = 4.0);
  m.def(
      "deflated_heteropca",
      [](const Matrix& y, Index r, const std::vector<int>& iters, double gap_const) {
        DeflatedOptions opts;
        opts.iters = iters;
        opts.gap_const = gap_const;
        const EstimatorResult res = deflated_heteropca(y, r, opts);
        py::dict out;
        out["basis"] = res.basis.matrix();
        out["schedule"] = schedule_dict(*res.schedule);
        out["gram"] = *res.gram;
        return out;
      },
      py::arg("y"), py::arg("r"), py::arg("iters") = std::vector<int>{},
      py::arg("gap_const") = 4.0,
      "Deflated estimation; returns dict with basis, schedule, gram");

  // tensor pipeline
  m.def(
      "matricize",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& x, int mode) {
        return matricize(tensor_from_numpy(x), mode);
      },
      py::arg("x"), py::arg("mode"));
  m.def(
      "dematricize",
      [](const Matrix& mat, int mode, std::array<Index, 3> dims) {
        return tensor_to_numpy(dematricize(mat, mode, dims));
      },
      py::arg("m"), py::arg("mode"), py::arg("dims"));
  m.def(
      "mode_product",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& g, int mode,
         const Matrix& v) { return tensor_to_numpy(mode_product(tensor_from_numpy(g), mode, v)); },
      py::arg("g"), py::arg("mode"), py::arg("v"));
  m.def(
      "tensor_frob",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& x) {
        return tensor_frob(tensor_from_numpy(x));
      },
      py::arg("x"));
  m.def(
      "hooi",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& y,
         std::array<Index, 3> ranks, const std::string& init, const std::vector<int>& init_iters,
         int t_max, double gap_const) {
        HooiOptions opts;
        opts.init = init_from_name(init);
        opts.init_iters = init_iters;
        opts.t_max = t_max;
        opts.gap_const = gap_const;
        const HooiResult res = hooi(tensor_from_numpy(y), ranks, opts);
        return py::make_tuple(res.bases[0].matrix(), res.bases[1].matrix(),
                              res.bases[2].matrix(), tensor_to_numpy(res.xhat));
      },
      py::arg("y"), py::arg("ranks"), py::arg("init") = "deflated",
      py::arg("init_iters") = std::vector<int>{}, py::arg("t_max") = 50,
      py::arg("gap_const") = 4.0, "HOOI with the chosen initializer: (U1, U2, U3, xhat)");

  // generators
  m.def(
      "gen_low_rank",
      [](Index n1, Index n2, const Vector& singular_values, std::uint64_t seed) {
        MatrixModelSpec spec;
        spec.n1 = n1;
        spec.n2 = n2;
        spec.r = singular_values.size();
        spec.singular_values = singular_values;
        spec.seed = seed;
        const LowRankSignal s = gen_low_rank(spec);
        return py::make_tuple(s.xstar, s.ustar.matrix(), s.vstar.matrix());
      },
      py::arg("n1"), py::arg("n2"), py::arg("singular_values"), py::arg("seed"),
      "(xstar, ustar, vstar)");
  m.def(
      "gen_hetero_noise",
      [](Index n1, Index n2, double omega, std::uint64_t seed) {
        const HeteroNoise noise = gen_hetero_noise(n1, n2, omega, seed);
        return py::make_tuple(noise.e, noise.omega_rows);
      },
      py::arg("n1"), py::arg("n2"), py::arg("omega"), py::arg("seed"),
      "(e, omega_rows)");
  m.def(
      "noise_params",
      [](const Matrix& variances) {
        const NoiseParams p = noise_params(variances);
        return py::make_tuple(p.omega_max, p.omega_row, p.omega_col);
      },
      py::arg("variance_matrix"), "(omega_max, omega_row, omega_col)");
  m.def(
      "gen_factor_model",
      [](Index d, Index n, const Vector& eigenvalues, double omega, std::uint64_t seed) {
        const FactorSample s = gen_factor_model(d, n, eigenvalues.size(), eigenvalues, omega, seed);
        return py::make_tuple(s.y, s.ustar.matrix());
      },
      py::arg("d"), py::arg("n"), py::arg("eigenvalues"), py::arg("omega"), py::arg("seed"),
      "(y, ustar)");
  m.def(
      "gen_poisson_pca",
      [](Index n1, Index n2, Index r, double lambda_scale, std::uint64_t seed) {
        const PoissonSample s = gen_poisson_pca(n1, n2, r, lambda_scale, seed);
        return py::make_tuple(s.y, s.xstar, s.ustar.matrix());
      },
      py::arg("n1"), py::arg("n2"), py::arg("r"), py::arg("lambda_scale"), py::arg("seed"),
      "(y, xstar, ustar)");
  m.def(
      "gen_tensor_model",
      [](Index n, Index r, double kappa, double omega, std::uint64_t seed) {
        const TensorSample s = gen_tensor_model(n, r, kappa, omega, seed);
        return py::make_tuple(tensor_to_numpy(s.y), tensor_to_numpy(s.xstar),
                              s.factors.bases[0].matrix(), s.factors.bases[1].matrix(),
                              s.factors.bases[2].matrix());
      },
      py::arg("n"), py::arg("r"), py::arg("kappa"), py::arg("omega"), py::arg("seed"),
      "(y, xstar, u1, u2, u3)");

  // harness
  m.def(
      "run_sweep_file",
      [](const std::string& config_path, int jobs) {
        const SweepResult result = run_sweep(parse_experiment_file(config_path), jobs);
        return format_csv(result);
      },
      py::arg("config_path"), py::arg("jobs") = 1,
      "Run a sweep config and return the CSV text");

  m.attr("__version__") = "0.1.0";
}
