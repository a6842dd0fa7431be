#include "coles/datasets.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "coles/error.hpp"

namespace coles {

bool has_linqs(const std::filesystem::path& dir, const std::string& name)
{
    return std::filesystem::exists(dir / (name + ".content")) &&
           std::filesystem::exists(dir / (name + ".cites"));
}

LabeledGraph load_linqs(const std::filesystem::path& dir, const std::string& name)
{
    const auto content_path = dir / (name + ".content");
    const auto cites_path = dir / (name + ".cites");
    std::ifstream content(content_path);
    if (!content)
        throw IoError("cannot open " + content_path.string());

    std::unordered_map<std::string, std::uint32_t> index;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> class_names;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(content, line)) {
        ++line_no;
        std::istringstream ss(line);
        std::vector<std::string> tokens;
        for (std::string t; ss >> t;)
            tokens.push_back(t);
        if (tokens.empty())
            continue;
        if (tokens.size() < 3)
            throw IoError(content_path.string() + ":" + std::to_string(line_no) +
                          ": expected id, features and class");
        std::vector<double> feats;
        feats.reserve(tokens.size() - 2);
        for (std::size_t k = 1; k + 1 < tokens.size(); ++k) {
            double v = 0.0;
            const auto& t = tokens[k];
            const auto r = std::from_chars(t.data(), t.data() + t.size(), v);
            if (r.ec != std::errc() || r.ptr != t.data() + t.size())
                throw IoError(content_path.string() + ":" + std::to_string(line_no) +
                              ": invalid feature value '" + t + "'");
            feats.push_back(v);
        }
        if (!rows.empty() && feats.size() != rows.front().size())
            throw IoError(content_path.string() + ":" + std::to_string(line_no) +
                          ": inconsistent feature count");
        if (!index.emplace(tokens.front(), static_cast<std::uint32_t>(rows.size())).second)
            throw IoError(content_path.string() + ":" + std::to_string(line_no) +
                          ": duplicate node id " + tokens.front());
        rows.push_back(std::move(feats));
        class_names.push_back(tokens.back());
    }
    if (rows.empty())
        throw IoError(content_path.string() + " holds no nodes");

    std::vector<std::string> sorted = class_names;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::map<std::string, int> class_id;
    for (std::size_t c = 0; c < sorted.size(); ++c)
        class_id[sorted[c]] = static_cast<int>(c);

    LabeledGraph g;
    const std::size_t n = rows.size();
    const std::size_t d = rows.front().size();
    g.features = DenseMat(n, d);
    g.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::copy(rows[i].begin(), rows[i].end(), g.features.row(i).begin());
        g.labels[i] = class_id[class_names[i]];
    }

    std::ifstream cites(cites_path);
    if (!cites)
        throw IoError("cannot open " + cites_path.string());
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    while (std::getline(cites, line)) {
        std::istringstream ss(line);
        std::string a, b;
        if (!(ss >> a >> b))
            continue;
        const auto ia = index.find(a);
        const auto ib = index.find(b);
        if (ia == index.end() || ib == index.end() || ia->second == ib->second)
            continue;
        edges.emplace_back(ia->second, ib->second);
    }
    g.adjacency = adjacency_from_edges(n, edges);
    g.validate();
    return g;
}

} // namespace coles
