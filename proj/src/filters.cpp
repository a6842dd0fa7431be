#include "coles/filters.hpp"

#include "coles/error.hpp"
#include "coles/graph.hpp"

namespace coles {

void FilterConfig::validate() const
{
    if (kind != FilterKind::identity && k_steps < 1)
        throw InvalidArgument("k_steps must be >= 1 for the " + to_string(kind) + " filter");
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw InvalidArgument("alpha must lie in [0, 1], got " + std::to_string(alpha));
}

FilterKind parse_filter_kind(const std::string& name)
{
    if (name == "sgc")
        return FilterKind::sgc;
    if (name == "s2gc")
        return FilterKind::s2gc;
    if (name == "identity")
        return FilterKind::identity;
    throw InvalidArgument("unknown filter '" + name + "' (expected sgc, s2gc or identity)");
}

std::string to_string(FilterKind kind)
{
    switch (kind) {
    case FilterKind::sgc:
        return "sgc";
    case FilterKind::s2gc:
        return "s2gc";
    case FilterKind::identity:
        return "identity";
    }
    return "unknown";
}

namespace {
void check_dims(const SparseSym& w, const DenseMat& x, const char* who)
{
    if (w.n() != x.rows())
        throw InvalidArgument(std::string(who) + ": graph has " + std::to_string(w.n()) +
                              " nodes but features have " + std::to_string(x.rows()) + " rows");
}
} // namespace

DenseMat sgc_filter(const SparseSym& w, const DenseMat& x, std::size_t k_steps)
{
    check_dims(w, x, "sgc_filter");
    DenseMat state = x;
    for (std::size_t k = 0; k < k_steps; ++k)
        state = spmm(w, state);
    return state;
}

DenseMat s2gc_filter(const SparseSym& w, const DenseMat& x, std::size_t k_steps, double alpha)
{
    check_dims(w, x, "s2gc_filter");
    if (k_steps == 0)
        throw InvalidArgument("s2gc_filter: k_steps must be >= 1");
    DenseMat state = x;
    DenseMat acc(x.rows(), x.cols());
    for (std::size_t k = 1; k <= k_steps; ++k) {
        state = spmm(w, state);
        auto a = acc.data();
        const auto s = state.data();
        for (std::size_t i = 0; i < a.size(); ++i)
            a[i] += s[i];
    }
    const double scale = (1.0 - alpha) / static_cast<double>(k_steps);
    DenseMat out(x.rows(), x.cols());
    auto o = out.data();
    const auto xs = x.data();
    const auto a = acc.data();
    for (std::size_t i = 0; i < o.size(); ++i)
        o[i] = alpha * xs[i] + scale * a[i];
    return out;
}

DenseMat apply_filter(const SparseSym& w, const DenseMat& x, const FilterConfig& cfg)
{
    cfg.validate();
    switch (cfg.kind) {
    case FilterKind::identity:
        check_dims(w, x, "apply_filter");
        return x;
    case FilterKind::sgc:
        return sgc_filter(w, x, cfg.k_steps);
    case FilterKind::s2gc:
        return s2gc_filter(w, x, cfg.k_steps, cfg.alpha);
    }
    return x;
}

} // namespace coles
