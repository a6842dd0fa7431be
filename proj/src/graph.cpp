#include "coles/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <string>

#include "coles/error.hpp"
#include "coles/parallel.hpp"

namespace coles {

void LabeledGraph::validate() const
{
    if (adjacency.n() != features.rows() || adjacency.n() != labels.size())
        throw InvalidArgument("LabeledGraph: adjacency has " + std::to_string(adjacency.n()) +
                              " nodes, features " + std::to_string(features.rows()) +
                              " rows, labels " + std::to_string(labels.size()) + " entries");
    num_classes();
}

int LabeledGraph::num_classes() const
{
    if (labels.empty())
        return 0;
    const int max_label = *std::max_element(labels.begin(), labels.end());
    std::vector<bool> seen(static_cast<std::size_t>(std::max(max_label, 0)) + 1, false);
    for (int l : labels) {
        if (l < 0)
            throw InvalidArgument("LabeledGraph: negative label " + std::to_string(l));
        seen[static_cast<std::size_t>(l)] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
        throw InvalidArgument("LabeledGraph: labels do not cover a contiguous range");
    return max_label + 1;
}

namespace {

bool parse_id(std::string_view token, std::uint64_t& out)
{
    if (token.empty())
        return false;
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, out);
    return ec == std::errc() && ptr == end;
}

std::vector<std::string_view> split_ws(std::string_view line)
{
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])))
            ++j;
        if (j > i)
            tokens.push_back(line.substr(i, j - i));
        i = j;
    }
    return tokens;
}

} // namespace

SparseSym adjacency_from_edges(std::size_t n,
                               std::span<const std::pair<std::uint32_t, std::uint32_t>> edges)
{
    std::vector<std::pair<std::uint32_t, std::uint32_t>> both;
    both.reserve(edges.size() * 2);
    for (auto [u, v] : edges) {
        if (u == v)
            throw InvalidArgument("adjacency_from_edges: self-loop at node " + std::to_string(u));
        if (u >= n || v >= n)
            throw InvalidArgument("adjacency_from_edges: node id out of range");
        both.emplace_back(u, v);
        both.emplace_back(v, u);
    }
    std::sort(both.begin(), both.end());
    both.erase(std::unique(both.begin(), both.end()), both.end());
    std::vector<std::size_t> row_ptr(n + 1, 0);
    std::vector<std::uint32_t> cols;
    cols.reserve(both.size());
    for (auto [u, v] : both) {
        ++row_ptr[u + 1];
        cols.push_back(v);
    }
    for (std::size_t i = 0; i < n; ++i)
        row_ptr[i + 1] += row_ptr[i];
    std::vector<double> values(cols.size(), 1.0);
    return SparseSym(n, std::move(row_ptr), std::move(cols), std::move(values));
}

SparseSym load_edge_list(const std::filesystem::path& path, const EdgeListOptions& options)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open edge list " + path.string());
    constexpr std::uint64_t max_id = std::numeric_limits<std::uint32_t>::max() - 1;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::uint64_t max_seen = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto tokens = split_ws(line);
        if (tokens.empty() || tokens.front().front() == '#')
            continue;
        std::uint64_t u = 0;
        std::uint64_t v = 0;
        const auto where = [&] { return path.string() + ":" + std::to_string(line_no); };
        if (tokens.size() != 2 || !parse_id(tokens[0], u) || !parse_id(tokens[1], v)) {
            // from_chars reports overflow separately; surface it as such.
            std::uint64_t probe = 0;
            for (auto t : tokens) {
                const auto r = std::from_chars(t.data(), t.data() + t.size(), probe);
                if (r.ec == std::errc::result_out_of_range)
                    throw IoError(where() + ": node id overflow");
            }
            throw IoError(where() + ": malformed line, expected two non-negative integers");
        }
        if (u > max_id || v > max_id)
            throw IoError(where() + ": node id overflow");
        if (u == v)
            throw IoError(where() + ": self-loop in input");
        edges.emplace_back(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
        max_seen = std::max({max_seen, u, v});
    }
    if (edges.empty())
        throw IoError("edge list " + path.string() + " contains no edges");
    std::size_t n = static_cast<std::size_t>(max_seen) + 1;
    if (options.num_nodes) {
        if (*options.num_nodes < n)
            throw IoError("edge list " + path.string() + " references node " +
                          std::to_string(max_seen) + " but only " +
                          std::to_string(*options.num_nodes) + " nodes were declared");
        n = *options.num_nodes;
    }
    SparseSym adj = adjacency_from_edges(n, edges);
    if (!options.allow_isolated)
        for (std::size_t i = 0; i < n; ++i)
            if (adj.row_cols(i).empty())
                throw IoError("edge list " + path.string() + ": node " + std::to_string(i) +
                              " is isolated (enable self-loops to accept it)");
    return adj;
}

void save_edge_list(const SparseSym& adj, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write edge list " + path.string());
    for (std::size_t i = 0; i < adj.n(); ++i)
        for (auto j : adj.row_cols(i))
            if (j > i)
                out << i << ' ' << j << '\n';
    if (!out)
        throw IoError("write failed for " + path.string());
}

SparseSym add_self_loops(const SparseSym& adj)
{
    const std::size_t n = adj.n();
    std::vector<std::size_t> row_ptr(n + 1, 0);
    std::vector<std::uint32_t> cols;
    std::vector<double> values;
    cols.reserve(adj.nnz() + n);
    values.reserve(adj.nnz() + n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto c = adj.row_cols(i);
        const auto v = adj.row_values(i);
        bool placed = false;
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (c[k] == i)
                throw InvalidArgument("add_self_loops: node " + std::to_string(i) +
                                      " already has a diagonal entry");
            if (!placed && c[k] > i) {
                cols.push_back(static_cast<std::uint32_t>(i));
                values.push_back(1.0);
                placed = true;
            }
            cols.push_back(c[k]);
            values.push_back(v[k]);
        }
        if (!placed) {
            cols.push_back(static_cast<std::uint32_t>(i));
            values.push_back(1.0);
        }
        row_ptr[i + 1] = cols.size();
    }
    return SparseSym(n, std::move(row_ptr), std::move(cols), std::move(values));
}

SparseSym degree_normalize(const SparseSym& adj)
{
    const auto degree = adj.row_sums();
    std::vector<double> inv_sqrt(degree.size());
    for (std::size_t i = 0; i < degree.size(); ++i) {
        if (!(degree[i] > 0.0))
            throw InvalidArgument("degree_normalize: node " + std::to_string(i) +
                                  " has non-positive degree");
        inv_sqrt[i] = 1.0 / std::sqrt(degree[i]);
    }
    std::vector<double> values(adj.nnz());
    for (std::size_t i = 0; i < adj.n(); ++i) {
        const auto c = adj.row_cols(i);
        const auto v = adj.row_values(i);
        const std::size_t base = adj.row_ptr()[i];
        for (std::size_t k = 0; k < c.size(); ++k) {
            // Computed as w / sqrt(d_i d_j) with the product in a fixed
            // order so (i, j) and (j, i) agree bit for bit.
            const double di = degree[std::min<std::size_t>(i, c[k])];
            const double dj = degree[std::max<std::size_t>(i, c[k])];
            values[base + k] = v[k] / std::sqrt(di * dj);
        }
    }
    return SparseSym(adj.n(), adj.row_ptr(), adj.cols(), std::move(values));
}

SparseSym laplacian(const SparseSym& w)
{
    // The diagonal is always stored, even when it is exactly zero.
    const std::size_t n = w.n();
    std::vector<std::size_t> row_ptr(n + 1, 0);
    std::vector<std::uint32_t> cols;
    std::vector<double> values;
    for (std::size_t i = 0; i < n; ++i) {
        const auto c = w.row_cols(i);
        const auto v = w.row_values(i);
        bool placed = false;
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (!placed && c[k] >= i) {
                cols.push_back(static_cast<std::uint32_t>(i));
                values.push_back(c[k] == i ? 1.0 - v[k] : 1.0);
                placed = true;
                if (c[k] == i)
                    continue;
            }
            cols.push_back(c[k]);
            values.push_back(-v[k]);
        }
        if (!placed) {
            cols.push_back(static_cast<std::uint32_t>(i));
            values.push_back(1.0);
        }
        row_ptr[i + 1] = cols.size();
    }
    return SparseSym(n, std::move(row_ptr), std::move(cols), std::move(values));
}

SparseSym normalized_adjacency(const SparseSym& adj, bool self_loops)
{
    return self_loops ? degree_normalize(add_self_loops(adj)) : degree_normalize(adj);
}

SparseSym linear_combination(std::span<const SparseSym* const> mats,
                             std::span<const double> coeffs)
{
    if (mats.size() != coeffs.size())
        throw InvalidArgument("linear_combination: matrix and coefficient counts differ");
    if (mats.empty())
        throw InvalidArgument("linear_combination: no matrices");
    const std::size_t n = mats.front()->n();
    for (const auto* m : mats)
        if (m->n() != n)
            throw InvalidArgument("linear_combination: dimension mismatch (" +
                                  std::to_string(m->n()) + " vs " + std::to_string(n) + ")");
    std::vector<std::size_t> row_ptr(n + 1, 0);
    std::vector<std::uint32_t> cols;
    std::vector<double> values;
    std::vector<double> acc(n, 0.0);
    std::vector<char> touched(n, 0);
    std::vector<std::uint32_t> pattern;
    for (std::size_t i = 0; i < n; ++i) {
        pattern.clear();
        for (std::size_t m = 0; m < mats.size(); ++m) {
            const auto c = mats[m]->row_cols(i);
            const auto v = mats[m]->row_values(i);
            for (std::size_t k = 0; k < c.size(); ++k) {
                if (!touched[c[k]]) {
                    touched[c[k]] = 1;
                    pattern.push_back(c[k]);
                }
                acc[c[k]] += coeffs[m] * v[k];
            }
        }
        std::sort(pattern.begin(), pattern.end());
        for (auto j : pattern) {
            if (acc[j] != 0.0) {
                cols.push_back(j);
                values.push_back(acc[j]);
            }
            acc[j] = 0.0;
            touched[j] = 0;
        }
        row_ptr[i + 1] = cols.size();
    }
    return SparseSym(n, std::move(row_ptr), std::move(cols), std::move(values));
}

DenseMat spmm(const SparseSym& s, const DenseMat& x)
{
    if (s.n() != x.rows())
        throw InvalidArgument("spmm: sparse matrix is " + std::to_string(s.n()) +
                              "x" + std::to_string(s.n()) + " but dense operand has " +
                              std::to_string(x.rows()) + " rows");
    DenseMat out(x.rows(), x.cols());
    parallel_for(s.n(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            auto dst = out.row(i);
            const auto c = s.row_cols(i);
            const auto v = s.row_values(i);
            for (std::size_t k = 0; k < c.size(); ++k) {
                const auto src = x.row(c[k]);
                const double w = v[k];
                for (std::size_t j = 0; j < dst.size(); ++j)
                    dst[j] += w * src[j];
            }
        }
    });
    return out;
}

std::vector<double> spmv(const SparseSym& s, std::span<const double> v)
{
    if (s.n() != v.size())
        throw InvalidArgument("spmv: dimension mismatch");
    std::vector<double> out(s.n(), 0.0);
    for (std::size_t i = 0; i < s.n(); ++i) {
        const auto c = s.row_cols(i);
        const auto w = s.row_values(i);
        double acc = 0.0;
        for (std::size_t k = 0; k < c.size(); ++k)
            acc += w[k] * v[c[k]];
        out[i] = acc;
    }
    return out;
}

} // namespace coles
