#include "coles/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Dense>
#include <lapacke.h>

#include "coles/error.hpp"
#include "coles/graph.hpp"

namespace coles {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void ColesConfig::validate(std::size_t n, std::size_t d) const
{
    if (dim == 0 || dim > d)
        throw InvalidArgument("embedding dimension must be in [1, " + std::to_string(d) +
                              "], got " + std::to_string(dim));
    if (!(beta >= 0.0))
        throw InvalidArgument("beta must be >= 0");
    if (!(tau > 0.0))
        throw InvalidArgument("tau must be > 0");
    filter.validate();
    negatives.validate(n);
}

DenseMat build_quadratic_form(const DenseMat& fx, const SparseSym& delta_w)
{
    if (fx.rows() != delta_w.n())
        throw InvalidArgument("build_quadratic_form: features have " +
                              std::to_string(fx.rows()) + " rows but delta_w is " +
                              std::to_string(delta_w.n()) + "x" + std::to_string(delta_w.n()));
    const DenseMat t = spmm(delta_w, fx);
    const std::size_t d = fx.cols();
    const std::size_t n = fx.rows();
    const auto idx = [](std::size_t v) { return static_cast<Eigen::Index>(v); };
    const Eigen::Map<const RowMajor> fx_e(fx.data().data(), idx(n), idx(d));
    const Eigen::Map<const RowMajor> t_e(t.data().data(), idx(n), idx(d));
    DenseMat m(d, d);
    Eigen::Map<RowMajor>(m.data().data(), idx(d), idx(d)).noalias() = fx_e.transpose() * t_e;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            const double s = 0.5 * (m(i, j) + m(j, i));
            m(i, j) = s;
            m(j, i) = s;
        }
    return m;
}

namespace {

void check_symmetric(const DenseMat& m)
{
    if (m.rows() != m.cols())
        throw InvalidArgument("sym_eig: matrix is not square");
    const std::size_t d = m.rows();
    double scale = 1.0;
    for (double v : m.data())
        scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            if (std::abs(m(i, j) - m(j, i)) > 1e-9 * scale)
                throw InvalidArgument("sym_eig: matrix is not symmetric at (" +
                                      std::to_string(i) + ", " + std::to_string(j) + ")");
    if (!m.all_finite())
        throw InvalidArgument("sym_eig: non-finite entry");
}

// Sorts eigenpairs descending (stable on ties) and signs each vector so its
// largest-magnitude entry is positive.
template <typename Value, typename Vector>
void finish_eigenpairs(SymEigResult& result, std::size_t d, std::size_t k, Value value, Vector vec)
{
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return value(x) > value(y); });
    result.eigenvalues.resize(k);
    result.eigenvectors = DenseMat(d, k);
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t src = order[j];
        result.eigenvalues[j] = value(src);
        std::size_t argmax = 0;
        for (std::size_t r = 1; r < d; ++r)
            if (std::abs(vec(r, src)) > std::abs(vec(argmax, src)))
                argmax = r;
        const double sign = vec(argmax, src) < 0.0 ? -1.0 : 1.0;
        for (std::size_t r = 0; r < d; ++r)
            result.eigenvectors(r, j) = sign * vec(r, src);
    }
}

} // namespace

SymEigResult sym_eig(const DenseMat& m, double tol, std::size_t max_sweeps)
{
    check_symmetric(m);
    const std::size_t d = m.rows();
    DenseMat a = m;
    DenseMat v = DenseMat::identity(d);
    const double target = tol * frobenius_norm(m);

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i + 1; j < d; ++j)
                s += a(i, j) * a(i, j);
        return std::sqrt(2.0 * s);
    };

    SymEigResult result;
    while (true) {
        if (off_norm() <= target) {
            result.converged = true;
            break;
        }
        if (result.sweeps == max_sweeps)
            break;
        ++result.sweeps;
        for (std::size_t p = 0; p + 1 < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0)
                    continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e150)
                    t = 0.5 / theta;
                else
                    t = (theta >= 0.0 ? 1.0 : -1.0) /
                        (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                a(p, p) -= t * apq;
                a(q, q) += t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t r = 0; r < d; ++r) {
                    if (r == p || r == q)
                        continue;
                    const double arp = a(r, p);
                    const double arq = a(r, q);
                    const double np = c * arp - s * arq;
                    const double nq = s * arp + c * arq;
                    a(r, p) = np;
                    a(p, r) = np;
                    a(r, q) = nq;
                    a(q, r) = nq;
                }
                for (std::size_t r = 0; r < d; ++r) {
                    auto row = v.row(r);
                    const double vrp = row[p];
                    const double vrq = row[q];
                    row[p] = c * vrp - s * vrq;
                    row[q] = s * vrp + c * vrq;
                }
            }
        }
    }

    finish_eigenpairs(result, d, d, [&](std::size_t i) { return a(i, i); },
                      [&](std::size_t r, std::size_t c) { return v(r, c); });
    return result;
}

SymEigResult sym_eig_tridiagonal(const DenseMat& m, std::size_t top)
{
    check_symmetric(m);
    const std::size_t d = m.rows();
    if (top > d)
        throw InvalidArgument("sym_eig_tridiagonal: requested " + std::to_string(top) +
                              " eigenpairs of a " + std::to_string(d) + "x" + std::to_string(d) +
                              " matrix");
    const std::size_t k = top == 0 ? d : top;
    SymEigResult result;
    if (d == 0) {
        result.converged = true;
        return result;
    }
    const auto n = static_cast<lapack_int>(d);
    const auto kk = static_cast<lapack_int>(k);
    std::vector<double> a(m.data().begin(), m.data().end());
    std::vector<double> w(d);
    std::vector<double> z(d * k);
    std::vector<lapack_int> support(2 * k);
    lapack_int found = 0;
    // Indices are 1-based and ascending, so the top k are n-k+1..n.
    const lapack_int info =
        LAPACKE_dsyevr(LAPACK_ROW_MAJOR, 'V', k == d ? 'A' : 'I', 'U', n, a.data(), n, 0.0, 0.0,
                       n - kk + 1, n, 0.0, &found, w.data(), z.data(), kk, support.data());
    if (info < 0)
        throw InvalidArgument("sym_eig_tridiagonal: LAPACK rejected argument " +
                              std::to_string(-info));
    result.converged = info == 0 && found == kk;
    if (!result.converged)
        throw NumericalError("sym_eig_tridiagonal: LAPACK dsyevr failed (info " +
                             std::to_string(info) + ")");
    finish_eigenpairs(result, d, k, [&](std::size_t i) { return w[i]; },
                      [&](std::size_t r, std::size_t c) { return z[r * k + c]; });
    return result;
}

EigenMethod parse_eigen_method(const std::string& name)
{
    if (name == "auto")
        return EigenMethod::automatic;
    if (name == "jacobi")
        return EigenMethod::jacobi;
    if (name == "tridiagonal")
        return EigenMethod::tridiagonal;
    throw InvalidArgument("unknown eigensolver '" + name + "' (expected auto, jacobi or tridiagonal)");
}

std::string to_string(EigenMethod method)
{
    switch (method) {
    case EigenMethod::automatic: return "auto";
    case EigenMethod::jacobi: return "jacobi";
    case EigenMethod::tridiagonal: return "tridiagonal";
    }
    return "auto";
}

EmbeddingResult solve_linear_coles(const DenseMat& x, const SparseSym& w_pos,
                                   const SparseSym& delta_w, const FilterConfig& filter,
                                   std::size_t dim, EigenMethod method)
{
    if (dim == 0 || dim > x.cols())
        throw InvalidArgument("embedding dimension must be in [1, " + std::to_string(x.cols()) +
                              "], got " + std::to_string(dim));
    if (delta_w.n() != x.rows())
        throw InvalidArgument("solve_linear_coles: delta_w size does not match feature rows");
    const DenseMat fx = apply_filter(w_pos, x, filter);
    const DenseMat m = build_quadratic_form(fx, delta_w);
    const bool jacobi = method == EigenMethod::jacobi ||
                        (method == EigenMethod::automatic && m.rows() <= kJacobiMaxDim);
    const SymEigResult eig = jacobi ? sym_eig(m) : sym_eig_tridiagonal(m, dim);

    EmbeddingResult out;
    out.converged = eig.converged;
    const std::size_t d = x.cols();
    out.projection = DenseMat(dim, d);
    out.eigenvalues.assign(eig.eigenvalues.begin(), eig.eigenvalues.begin() + dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < d; ++c)
            out.projection(r, c) = eig.eigenvectors(c, r);
    out.nonpositive_eigenvalues =
        std::any_of(out.eigenvalues.begin(), out.eigenvalues.end(), [](double l) { return l <= 0.0; });

    const auto idx = [](std::size_t v) { return static_cast<Eigen::Index>(v); };
    const Eigen::Map<const RowMajor> fx_e(fx.data().data(), idx(x.rows()), idx(d));
    const Eigen::Map<const RowMajor> p_e(out.projection.data().data(), idx(dim), idx(d));
    const Eigen::Map<const RowMajor> m_e(m.data().data(), idx(d), idx(d));
    out.embedding = DenseMat(x.rows(), dim);
    Eigen::Map<RowMajor>(out.embedding.data().data(), idx(x.rows()), idx(dim)).noalias() =
        fx_e * p_e.transpose();
    // trace(P M P^T)
    const RowMajor pm = p_e * m_e;
    const double trace = pm.cwiseProduct(p_e).sum();
    out.objective = trace;
    return out;
}

SparseSym assemble_delta_w(const SparseSym& w_pos, const NegSampleConfig& negatives)
{
    if (negatives.kappa == 0 || negatives.eta_prime == 0.0)
        return w_pos;
    const auto negs = sample_negative_graphs(w_pos.n(), negatives);
    return build_delta_w(w_pos, negs, negatives.eta_prime);
}

EmbeddingResult solve_linear_coles(const DenseMat& x, const SparseSym& w_pos,
                                   const ColesConfig& cfg)
{
    if (w_pos.n() != x.rows())
        throw InvalidArgument("solve_linear_coles: graph has " + std::to_string(w_pos.n()) +
                              " nodes but features have " + std::to_string(x.rows()) + " rows");
    cfg.validate(x.rows(), x.cols());
    const SparseSym delta_w = assemble_delta_w(w_pos, cfg.negatives);
    return solve_linear_coles(x, w_pos, delta_w, cfg.filter, cfg.dim, cfg.eigen_method);
}

double coles_objective(const DenseMat& y, const SparseSym& delta_w)
{
    if (y.rows() != delta_w.n())
        throw InvalidArgument("coles_objective: embedding rows do not match delta_w");
    const DenseMat wy = spmm(delta_w, y);
    double trace = 0.0;
    for (std::size_t i = 0; i < y.rows(); ++i)
        trace += dot(y.row(i), wy.row(i));
    return trace;
}

double orthogonality_penalty(const DenseMat& y)
{
    const DenseMat gram = matmul_tn(y, y);
    double s = 0.0;
    for (std::size_t i = 0; i < gram.rows(); ++i)
        for (std::size_t j = 0; j < gram.cols(); ++j) {
            const double e = gram(i, j) - (i == j ? 1.0 : 0.0);
            s += e * e;
        }
    return s;
}

double general_objective(const DenseMat& y, const SparseSym& delta_w, double beta)
{
    if (beta == 0.0)
        return coles_objective(y, delta_w);
    return coles_objective(y, delta_w) - beta * orthogonality_penalty(y);
}

} // namespace coles
