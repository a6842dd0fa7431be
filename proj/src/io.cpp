#include "coles/io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "coles/error.hpp"

namespace coles {

namespace {

constexpr std::array<char, 4> kMagic = {'C', 'L', 'S', 'M'};

template <typename T>
void put_le(std::string& buf, T value)
{
    using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
    const U bits = std::bit_cast<U>(value);
    for (std::size_t b = 0; b < sizeof(U); ++b)
        buf.push_back(static_cast<char>((bits >> (8 * b)) & 0xFF));
}

template <typename T>
T get_le(const unsigned char* p)
{
    using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
    U bits = 0;
    for (std::size_t b = 0; b < sizeof(U); ++b)
        bits |= static_cast<U>(p[b]) << (8 * b);
    return std::bit_cast<T>(bits);
}

std::string read_all(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

std::string format_double(double v)
{
    std::array<char, 32> buf{};
    const auto r = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), r.ptr);
}

void write_clsm(const DenseMat& m, const std::filesystem::path& path)
{
    std::string buf(kMagic.begin(), kMagic.end());
    buf.reserve(24 + 8 * m.size());
    put_le<std::uint32_t>(buf, kClsmVersion);
    put_le<std::uint64_t>(buf, m.rows());
    put_le<std::uint64_t>(buf, m.cols());
    for (double v : m.data())
        put_le<double>(buf, v);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot write " + path.string());
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out)
        throw IoError("write failed for " + path.string());
}

DenseMat read_clsm(const std::filesystem::path& path)
{
    const std::string raw = read_all(path);
    constexpr std::size_t header = 4 + 4 + 8 + 8;
    if (raw.size() < header || std::memcmp(raw.data(), kMagic.data(), 4) != 0)
        throw IoError(path.string() + ": not a CLSM file");
    const auto* p = reinterpret_cast<const unsigned char*>(raw.data());
    const auto version = get_le<std::uint32_t>(p + 4);
    if (version != kClsmVersion)
        throw IoError(path.string() + ": unsupported CLSM version " + std::to_string(version));
    const auto rows = get_le<std::uint64_t>(p + 8);
    const auto cols = get_le<std::uint64_t>(p + 16);
    if (cols != 0 && rows > (raw.size() - header) / 8 / cols)
        throw IoError(path.string() + ": truncated CLSM payload");
    if (raw.size() != header + 8 * rows * cols)
        throw IoError(path.string() + ": CLSM payload length does not match header");
    std::vector<double> data(rows * cols);
    for (std::size_t i = 0; i < data.size(); ++i)
        data[i] = get_le<double>(p + header + 8 * i);
    DenseMat m(rows, cols, std::move(data));
    if (!m.all_finite())
        throw IoError(path.string() + ": non-finite value in matrix");
    return m;
}

void write_csv(const DenseMat& m, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw IoError("cannot write " + path.string());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const auto r = m.row(i);
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (j)
                out << ',';
            out << format_double(r[j]);
        }
        out << '\n';
    }
    if (!out)
        throw IoError("write failed for " + path.string());
}

DenseMat read_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path.string());
    std::vector<double> data;
    std::size_t cols = 0;
    std::size_t rows = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::size_t count = 0;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            std::string_view token(line.data() + start,
                                   (comma == std::string::npos ? line.size() : comma) - start);
            while (!token.empty() && token.front() == ' ')
                token.remove_prefix(1);
            while (!token.empty() && token.back() == ' ')
                token.remove_suffix(1);
            double v = 0.0;
            const auto r = std::from_chars(token.data(), token.data() + token.size(), v);
            if (r.ec != std::errc() || r.ptr != token.data() + token.size() || !std::isfinite(v))
                throw IoError(path.string() + ":" + std::to_string(line_no) +
                              ": invalid number '" + std::string(token) + "'");
            data.push_back(v);
            ++count;
            if (comma == std::string::npos)
                break;
            start = comma + 1;
        }
        if (rows == 0)
            cols = count;
        else if (count != cols)
            throw IoError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                          std::to_string(cols) + " columns, found " + std::to_string(count));
        ++rows;
    }
    return DenseMat(rows, cols, std::move(data));
}

DenseMat read_matrix(const std::filesystem::path& path)
{
    if (path.extension() == ".csv")
        return read_csv(path);
    return read_clsm(path);
}

std::vector<int> read_labels(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path.string());
    std::vector<int> labels;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view t(line);
        while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front())))
            t.remove_prefix(1);
        while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back())))
            t.remove_suffix(1);
        if (t.empty() || t.front() == '#')
            continue;
        int v = 0;
        const auto r = std::from_chars(t.data(), t.data() + t.size(), v);
        if (r.ec != std::errc() || r.ptr != t.data() + t.size() || v < 0)
            throw IoError(path.string() + ":" + std::to_string(line_no) +
                          ": expected a non-negative integer label");
        labels.push_back(v);
    }
    return labels;
}

void write_labels(const std::vector<int>& labels, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw IoError("cannot write " + path.string());
    for (int l : labels)
        out << l << '\n';
}

} // namespace coles
