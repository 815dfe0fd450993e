#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "paley/block_circulant.hpp"
#include "paley/character_sums.hpp"
#include "paley/fk_optimizer.hpp"
#include "paley/graph_matrices.hpp"
#include "paley/pseudomoments.hpp"
#include "paley/sdp.hpp"
#include "paley/sweep.hpp"
#include "paley/verify.hpp"

namespace py = pybind11;
using namespace paley;

PYBIND11_MODULE(_paley_sos, m) {
    m.doc() = "Degree-4 sum-of-squares experiments on Paley graphs";

    py::class_<PrimeContext>(m, "PrimeContext")
        .def(py::init<int64_t>())
        .def_property_readonly("p", &PrimeContext::p)
        .def_property_readonly("generator", &PrimeContext::generator)
        .def("legendre", &PrimeContext::legendre)
        .def("additive_character", &PrimeContext::additive_character)
        .def("mult_character", &PrimeContext::mult_character);
    m.def("make_context", &make_context, py::arg("p"));
    m.def("paley_primes", &paley_primes, py::arg("lo"), py::arg("hi"));

    m.def("gauss_sum", &gauss_sum);
    m.def("kloosterman", &kloosterman, py::arg("ctx"), py::arg("k"), py::arg("a"));
    m.def("kloosterman_table", [](const PrimeContext& ctx, int k) {
        return build_kloosterman(ctx, k).values;
    });
    m.def("weil_check", [](const PrimeContext& ctx, const std::vector<int64_t>& coeffs) {
        WeilCheck w = weil_check(ctx, coeffs);
        return py::make_tuple(w.sum, w.degree, w.is_square_form, w.bound_holds);
    });
    m.def("twisted_moment", py::overload_cast<const PrimeContext&, int64_t>(&twisted_moment));
    m.def("twisted_moment_general", &twisted_moment_general);
    m.def("charsum_pair", &charsum_pair);

    py::class_<PaleyGraph>(m, "PaleyGraph")
        .def_property_readonly("p", &PaleyGraph::p)
        .def("adjacent", &PaleyGraph::adjacent)
        .def("adjacency_matrix", &PaleyGraph::adjacency_matrix)
        .def("seidel_matrix", &PaleyGraph::seidel_matrix);
    m.def("build_paley", py::overload_cast<int64_t>(&build_paley));
    m.def("strong_regularity", [](const PaleyGraph& g) {
        StrongRegularity sr = strong_regularity(g);
        return py::make_tuple(sr.lambda, sr.mu, sr.holds);
    });
    m.def("spectra", [](const PaleyGraph& g) {
        Spectra sp = spectra(g);
        return py::make_tuple(sp.adjacency_eigs, sp.seidel_eigs);
    });
    m.def("clique_number", py::overload_cast<const PaleyGraph&>(&clique_number));
    m.def("classical_bounds", [](int64_t p) {
        ClassicalBounds b = classical_bounds(p);
        return py::make_tuple(b.hoffman, b.hansen_podolskii);
    });

    m.def("shape_names", []() {
        std::vector<std::string> names;
        for (Shape s : all_shapes()) names.push_back(shape_name(s));
        return names;
    });
    m.def("build_graph_matrix", [](const PaleyGraph& g, const std::string& name) {
        return build_graph_matrix(g, shape_from_name(name)).data;
    });
    m.def("build_projections", [](int64_t p) {
        SubspaceProjections proj = build_projections(p);
        return py::make_tuple(proj.p0, proj.p1, proj.p2);
    });
    m.def("shape_norm", [](const PaleyGraph& g, const std::string& name, double tol) {
        return shape_norm(g, shape_from_name(name), tol).value;
    });
    m.def("restricted_norm", [](const PaleyGraph& g, const std::string& name, int i, int j,
                                double tol) {
        return restricted_norm(g, shape_from_name(name), i, j, tol).value;
    });
    m.def("diamond_matrix", [](const PaleyGraph& g) { return diamond_matrix(g).data; });
    m.def("exact_decomposition_check", [](const PaleyGraph& g, const std::string& name) {
        return exact_decomposition_check(g, shape_from_name(name));
    });
    m.def("schur_decomposition_residual", [](const PaleyGraph& g, double a1, double a2,
                                             double a3, double a4) {
        SchurResiduals r = schur_decomposition_residual(g, FkParams{a1, a2, a3, a4});
        return py::make_tuple(r.h22, r.h21h12, r.h21h12_printed);
    });

    m.def("t441_norm_via_slices", &t441_norm_via_slices);
    m.def("slice_spectra", [](const PaleyGraph& g) {
        return slice_spectra(reorder_t441(g));
    });
    m.def("charsum1_matrix", &charsum1_matrix);

    m.def("theorem_alphas", [](double c, int64_t p) {
        FkParams a = theorem_alphas(c, p);
        return py::make_tuple(a.a1, a.a2, a.a3, a.a4);
    });
    m.def("assemble_M", [](const PaleyGraph& g, double a1, double a2, double a3, double a4) {
        return assemble_M(g, FkParams{a1, a2, a3, a4}).data;
    });
    m.def("min_eigenvalue", [](const MatrixXd& mat) { return min_eigenvalue(mat).value; });
    m.def("fk4_value", [](const PaleyGraph& g, double tol) {
        FkResult r = fk4_value(g, tol);
        return py::make_tuple(r.value, r.lower, r.upper, r.converged);
    });
    m.def("u_quadratic_report", [](const PaleyGraph& g) {
        UQuadraticReport r = u_quadratic_forms(g);
        py::dict d;
        d["u_norm2"] = r.u_norm2;
        d["u_low_norm2"] = r.u_low_norm2;
        d["closed_form_residual"] = r.closed_form_residual;
        d["char_sum_lhs"] = r.char_sum_lhs;
        d["char_sum_rhs"] = r.char_sum_rhs;
        d["identity_rel_err"] = r.identity_rel_err;
        return d;
    });

    m.def("sos2_value", [](const PaleyGraph& g, double tol) { return sos2_value(g, tol); });
    m.def("sos4_value", [](const PaleyGraph& g, double tol, int max_iter) {
        SdpOptions o;
        o.tol = tol;
        o.max_iter = max_iter;
        o.rho = 0.5;
        o.adapt = false;
        SdpSolution s = solve(build_sos4(g), o);
        return py::make_tuple(s.value, s.status == SdpStatus::Optimal);
    });

    m.def("fit_power_law", [](const std::vector<std::tuple<int64_t, double>>& pts) {
        std::vector<SweepRecord> recs;
        for (auto& [p, v] : pts) recs.push_back({p, "q", v, 0.0, "ok"});
        PowerFit f = fit_power_law(recs);
        return py::make_tuple(f.a, f.b, f.r_squared, f.n_points);
    });

    m.def("run_verify", [](const std::string& suite, int64_t pmin, int64_t pmax) {
        VerifyReport rep = run_verify(suite, pmin, pmax);
        return rep.ok();
    });
}
