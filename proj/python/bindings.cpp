#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coles/diagnostics.hpp"
#include "coles/error.hpp"
#include "coles/evaluation.hpp"
#include "coles/graph.hpp"
#include "coles/io.hpp"
#include "coles/losses.hpp"
#include "coles/negative_sampling.hpp"
#include "coles/parallel.hpp"
#include "coles/solver.hpp"
#include "coles/synthetic.hpp"

namespace py = pybind11;
using namespace coles;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

DenseMat to_dense(const Array& a)
{
    if (a.ndim() == 1) {
        const auto n = static_cast<std::size_t>(a.shape(0));
        return DenseMat(n, 1, std::vector<double>(a.data(), a.data() + n));
    }
    if (a.ndim() != 2)
        throw InvalidArgument("expected a 1-D or 2-D array");
    const auto r = static_cast<std::size_t>(a.shape(0));
    const auto c = static_cast<std::size_t>(a.shape(1));
    return DenseMat(r, c, std::vector<double>(a.data(), a.data() + r * c));
}

Array to_numpy(const DenseMat& m)
{
    Array out({m.rows(), m.cols()});
    std::copy(m.data().begin(), m.data().end(), out.mutable_data());
    return out;
}

std::vector<Vec> rows_of(const Array& a)
{
    const DenseMat m = to_dense(a);
    std::vector<Vec> out;
    for (std::size_t i = 0; i < m.rows(); ++i)
        out.emplace_back(m.row(i).begin(), m.row(i).end());
    return out;
}

ContrastiveBatch make_batch(const std::vector<double>& anchor, const std::vector<Vec>& pos,
                            const std::vector<Vec>& neg, double eta)
{
    return ContrastiveBatch{anchor, pos, neg, eta};
}

SparseSym from_edges(std::size_t n, const py::array_t<std::int64_t, py::array::c_style | py::array::forcecast>& e)
{
    if (e.ndim() != 2 || (e.shape(0) > 0 && e.shape(1) != 2))
        throw InvalidArgument("edges must have shape (m, 2)");
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    const auto* p = e.data();
    for (py::ssize_t i = 0; i < e.shape(0); ++i) {
        if (p[2 * i] < 0 || p[2 * i + 1] < 0)
            throw InvalidArgument("node ids must be non-negative");
        pairs.emplace_back(static_cast<std::uint32_t>(p[2 * i]), static_cast<std::uint32_t>(p[2 * i + 1]));
    }
    return adjacency_from_edges(n, pairs);
}

} // namespace

PYBIND11_MODULE(_coles, m)
{
    m.doc() = "Closed-form contrastive Laplacian eigenmaps for linear graph networks";

    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    m.def("set_num_threads", &set_num_threads, py::arg("threads"));

    py::class_<SparseSym>(m, "SparseSym")
        .def_property_readonly("n", &SparseSym::n)
        .def_property_readonly("nnz", &SparseSym::nnz)
        .def("edge_count", &SparseSym::edge_count)
        .def("at", &SparseSym::at)
        .def("to_dense", [](const SparseSym& s) { return to_numpy(s.to_dense()); })
        .def("csr", [](const SparseSym& s) {
            return py::make_tuple(py::array_t<std::size_t>(s.row_ptr().size(), s.row_ptr().data()),
                                  py::array_t<std::uint32_t>(s.cols().size(), s.cols().data()),
                                  py::array_t<double>(s.values().size(), s.values().data()));
        })
        .def("__eq__", [](const SparseSym& a, const SparseSym& b) { return a == b; });

    m.def("adjacency_from_edges", &from_edges, py::arg("n"), py::arg("edges"));
    m.def("load_edge_list",
          [](const std::string& path, std::optional<std::size_t> num_nodes, bool allow_isolated) {
              return load_edge_list(path, EdgeListOptions{num_nodes, allow_isolated});
          },
          py::arg("path"), py::arg("num_nodes") = py::none(), py::arg("allow_isolated") = true);
    m.def("save_edge_list", [](const SparseSym& s, const std::string& p) { save_edge_list(s, p); });
    m.def("add_self_loops", &add_self_loops);
    m.def("degree_normalize", &degree_normalize);
    m.def("laplacian", &laplacian);
    m.def("normalized_adjacency", &normalized_adjacency, py::arg("adj"), py::arg("self_loops") = true);
    m.def("spmm", [](const SparseSym& s, const Array& x) { return to_numpy(spmm(s, to_dense(x))); });

    m.def("sgc_filter", [](const SparseSym& w, const Array& x, std::size_t k) {
        return to_numpy(sgc_filter(w, to_dense(x), k));
    }, py::arg("w"), py::arg("x"), py::arg("k_steps"));
    m.def("s2gc_filter", [](const SparseSym& w, const Array& x, std::size_t k, double alpha) {
        return to_numpy(s2gc_filter(w, to_dense(x), k, alpha));
    }, py::arg("w"), py::arg("x"), py::arg("k_steps"), py::arg("alpha"));

    py::enum_<NegativeMode>(m, "NegativeMode")
        .value("per_node", NegativeMode::per_node)
        .value("erdos_renyi", NegativeMode::erdos_renyi);
    py::class_<NegSampleConfig>(m, "NegSampleConfig")
        .def(py::init<>())
        .def_readwrite("kappa", &NegSampleConfig::kappa)
        .def_readwrite("per_node", &NegSampleConfig::per_node)
        .def_readwrite("mode", &NegSampleConfig::mode)
        .def_readwrite("p_prime", &NegSampleConfig::p_prime)
        .def_readwrite("eta_prime", &NegSampleConfig::eta_prime)
        .def_readwrite("seed", &NegSampleConfig::seed);
    m.def("sample_negative_graph", &sample_negative_graph, py::arg("n"), py::arg("cfg"), py::arg("k"));
    m.def("sample_negative_graphs", &sample_negative_graphs, py::arg("n"), py::arg("cfg"));
    m.def("build_delta_w", [](const SparseSym& w, const std::vector<SparseSym>& negs, double eta) {
        return build_delta_w(w, negs, eta);
    }, py::arg("w_pos"), py::arg("w_negs"), py::arg("eta_prime"));
    m.def("psd_margin", [](const SparseSym& l, const std::vector<SparseSym>& negs, double eta) {
        const auto e = psd_margin(l, negs, eta);
        return py::make_tuple(e.value, e.converged);
    }, py::arg("l_pos"), py::arg("l_negs"), py::arg("eta_prime"));

    py::enum_<FilterKind>(m, "FilterKind")
        .value("identity", FilterKind::identity)
        .value("sgc", FilterKind::sgc)
        .value("s2gc", FilterKind::s2gc);
    py::class_<FilterConfig>(m, "FilterConfig")
        .def(py::init<>())
        .def_readwrite("kind", &FilterConfig::kind)
        .def_readwrite("k_steps", &FilterConfig::k_steps)
        .def_readwrite("alpha", &FilterConfig::alpha);
    py::enum_<EigenMethod>(m, "EigenMethod")
        .value("automatic", EigenMethod::automatic)
        .value("jacobi", EigenMethod::jacobi)
        .value("tridiagonal", EigenMethod::tridiagonal);
    py::class_<ColesConfig>(m, "ColesConfig")
        .def(py::init<>())
        .def_readwrite("dim", &ColesConfig::dim)
        .def_readwrite("filter", &ColesConfig::filter)
        .def_readwrite("negatives", &ColesConfig::negatives)
        .def_readwrite("beta", &ColesConfig::beta)
        .def_readwrite("tau", &ColesConfig::tau)
        .def_readwrite("eigen_method", &ColesConfig::eigen_method);
    py::class_<EmbeddingResult>(m, "EmbeddingResult")
        .def_property_readonly("projection", [](const EmbeddingResult& r) { return to_numpy(r.projection); })
        .def_property_readonly("embedding", [](const EmbeddingResult& r) { return to_numpy(r.embedding); })
        .def_readonly("eigenvalues", &EmbeddingResult::eigenvalues)
        .def_readonly("objective", &EmbeddingResult::objective)
        .def_readonly("converged", &EmbeddingResult::converged)
        .def_readonly("nonpositive_eigenvalues", &EmbeddingResult::nonpositive_eigenvalues);

    m.def("build_quadratic_form", [](const Array& fx, const SparseSym& dw) {
        return to_numpy(build_quadratic_form(to_dense(fx), dw));
    });
    m.def("sym_eig", [](const Array& a, double tol) {
        const auto r = sym_eig(to_dense(a), tol);
        return py::make_tuple(r.eigenvalues, to_numpy(r.eigenvectors), r.converged);
    }, py::arg("m"), py::arg("tol") = 1e-12);
    m.def("sym_eig_tridiagonal", [](const Array& a, std::size_t top) {
        const auto r = sym_eig_tridiagonal(to_dense(a), top);
        return py::make_tuple(r.eigenvalues, to_numpy(r.eigenvectors), r.converged);
    }, py::arg("m"), py::arg("top") = 0);
    m.def("solve_linear_coles", [](const Array& x, const SparseSym& w, const ColesConfig& cfg) {
        return solve_linear_coles(to_dense(x), w, cfg);
    }, py::arg("x"), py::arg("w_pos"), py::arg("cfg"));
    m.def("solve_linear_coles_delta", [](const Array& x, const SparseSym& w, const SparseSym& dw,
                                         const FilterConfig& f, std::size_t dim) {
        return solve_linear_coles(to_dense(x), w, dw, f, dim);
    }, py::arg("x"), py::arg("w_pos"), py::arg("delta_w"), py::arg("filter"), py::arg("dim"));
    m.def("assemble_delta_w", &assemble_delta_w);
    m.def("coles_objective", [](const Array& y, const SparseSym& dw) { return coles_objective(to_dense(y), dw); });
    m.def("orthogonality_penalty", [](const Array& y) { return orthogonality_penalty(to_dense(y)); });
    m.def("general_objective", [](const Array& y, const SparseSym& dw, double beta) {
        return general_objective(to_dense(y), dw, beta);
    });

    m.def("sampled_nce_sigmoid", [](const std::vector<double>& v, const std::vector<Vec>& pos,
                                    const std::vector<Vec>& neg, double eta) {
        return sampled_nce_sigmoid(make_batch(v, pos, neg, eta));
    }, py::arg("anchor"), py::arg("positives"), py::arg("negatives"), py::arg("eta") = 1.0);
    m.def("coles_pointwise", [](const std::vector<double>& v, const std::vector<Vec>& pos,
                                const std::vector<Vec>& neg, double eta) {
        return coles_pointwise(make_batch(v, pos, neg, eta));
    }, py::arg("anchor"), py::arg("positives"), py::arg("negatives"), py::arg("eta") = 1.0);
    m.def("block_form", [](const std::vector<double>& v, const std::vector<Vec>& pos,
                           const std::vector<Vec>& neg) {
        const auto b = block_form(make_batch(v, pos, neg, 1.0));
        return py::make_tuple(b.mu_plus, b.mu_minus, b.loss);
    });
    m.def("graph_block_loss", [](const Array& y, const SparseSym& w, const std::vector<SparseSym>& negs,
                                 double eta) { return graph_block_loss(to_dense(y), w, negs, eta); });
    m.def("generalized_mean", [](const std::vector<double>& v, double p) { return generalized_mean(v, p); });
    m.def("align_uniform", [](const std::vector<double>& v, const std::vector<double>& u,
                              const std::vector<Vec>& neg, double p, bool softmax, bool normalize,
                              double tau) {
        AlignUniformOptions o;
        o.mode = softmax ? UniformityMode::softmax : UniformityMode::generalized_mean;
        o.normalize = normalize;
        o.tau = tau;
        const auto r = align_uniform(make_batch(v, {u}, neg, 1.0), p, o);
        return py::make_tuple(r.align, r.uniform, r.total);
    }, py::arg("anchor"), py::arg("positive"), py::arg("negatives"), py::arg("p"),
       py::arg("softmax") = false, py::arg("normalize") = true, py::arg("tau") = 1.0);

    m.def("silverman_bandwidth", [](const std::vector<double>& s) { return silverman_bandwidth(s); });
    m.def("parzen_density", [](const std::vector<double>& s, double h, const std::vector<double>& g) {
        return parzen_density(s, h, g);
    });
    m.def("js_divergence", [](const std::vector<double>& p, const std::vector<double>& q, double h,
                              std::size_t points) { return js_divergence(p, q, h, points); },
          py::arg("p"), py::arg("q"), py::arg("bandwidth"), py::arg("grid_points") = 512);
    m.def("wasserstein1", [](const std::vector<double>& p, const std::vector<double>& q) {
        return wasserstein1(p, q);
    });
    m.def("lipschitz_check", [](const std::vector<double>& u, const std::vector<double>& up,
                                const std::vector<double>& v) {
        const auto r = lipschitz_check(u, up, v);
        return py::make_tuple(r.lhs, r.rhs, r.holds);
    });
    m.def("homophily", [](const SparseSym& a, const std::vector<int>& labels, bool weighted) {
        return homophily(a, labels, weighted ? HomophilyForm::weighted : HomophilyForm::neighbor_fraction);
    }, py::arg("adj"), py::arg("labels"), py::arg("weighted") = false);
    m.def("expected_negative_homophily", [](const std::vector<double>& p) {
        return expected_negative_homophily(p);
    });
    m.def("separation", &separation);

    py::class_<Split>(m, "Split")
        .def_readonly("train", &Split::train)
        .def_readonly("val", &Split::val)
        .def_readonly("test", &Split::test);
    m.def("random_split", [](const std::vector<int>& labels, std::size_t per_class, std::size_t val_size,
                             std::uint64_t seed, std::uint64_t index) {
        return random_split(labels, SplitSpec{per_class, val_size, 0, seed, index});
    }, py::arg("labels"), py::arg("per_class"), py::arg("val_size") = 500, py::arg("seed") = 0,
       py::arg("index") = 0);
    py::class_<LogRegModel>(m, "LogRegModel")
        .def("predict", [](const LogRegModel& model, const Array& x) { return model.predict(to_dense(x)); })
        .def("probabilities", [](const LogRegModel& model, const Array& x) {
            return to_numpy(model.probabilities(to_dense(x)));
        })
        .def_readonly("loss_history", &LogRegModel::loss_history);
    m.def("logreg_fit", [](const Array& x, const std::vector<int>& labels, double l2, double lr,
                           std::size_t epochs) {
        return logreg_fit(to_dense(x), labels, LogRegConfig{l2, lr, epochs, true});
    }, py::arg("x"), py::arg("labels"), py::arg("l2") = 1e-4, py::arg("lr") = 0.1, py::arg("epochs") = 500);
    m.def("kmeans", [](const Array& y, std::size_t k, std::uint64_t seed) {
        const auto r = kmeans(to_dense(y), k, KMeansConfig{10, 300, seed});
        return py::make_tuple(r.assignment, r.inertia);
    }, py::arg("y"), py::arg("k"), py::arg("seed") = 0);
    m.def("score", [](const std::vector<int>& pred, const std::vector<int>& truth, bool clustering) {
        const auto s = score(pred, truth, clustering ? ScoreMode::clustering : ScoreMode::classification);
        py::dict d;
        d["accuracy"] = s.accuracy;
        d["macro_f1"] = s.macro_f1;
        d["micro_f1"] = s.micro_f1;
        d["nmi"] = s.nmi;
        return d;
    }, py::arg("pred"), py::arg("truth"), py::arg("clustering") = false);

    m.def("generate_sbm", [](std::size_t classes, std::size_t per_block, double p_in, double p_out,
                             std::size_t feature_dim, double mean_sep, double noise_sigma,
                             std::uint64_t seed) {
        const auto g = generate_sbm(SbmSpec{classes, per_block, p_in, p_out, feature_dim, mean_sep,
                                            noise_sigma, seed});
        return py::make_tuple(g.adjacency, to_numpy(g.features), g.labels);
    }, py::arg("classes") = 3, py::arg("per_block") = 100, py::arg("p_in") = 0.1,
       py::arg("p_out") = 0.01, py::arg("feature_dim") = 16, py::arg("mean_sep") = 1.0,
       py::arg("noise_sigma") = 2.0, py::arg("seed") = 0);

    m.def("read_clsm", [](const std::string& p) { return to_numpy(read_clsm(p)); });
    m.def("write_clsm", [](const Array& a, const std::string& p) { write_clsm(to_dense(a), p); });
    m.def("read_csv", [](const std::string& p) { return to_numpy(read_csv(p)); });
    m.def("write_csv", [](const Array& a, const std::string& p) { write_csv(to_dense(a), p); });
}
