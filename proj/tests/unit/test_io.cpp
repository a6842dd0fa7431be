#include <doctest.h>

#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>

#include "coles/error.hpp"
#include "coles/io.hpp"
#include "helpers.hpp"

using namespace coles;
namespace fs = std::filesystem;

namespace {

fs::path tmp(const std::string& name)
{
    const auto dir = fs::temp_directory_path() / "coles_test_io";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

} // namespace

TEST_CASE("clsm round trip is exact")
{
    auto m = testutil::random_dense(7, 3, 4);
    m(0, 0) = std::numeric_limits<double>::denorm_min();
    m(1, 1) = -0.0;
    const auto p = tmp("m.clsm");
    write_clsm(m, p);
    const auto back = read_clsm(p);
    CHECK(back.rows() == 7);
    CHECK(back.cols() == 3);
    for (std::size_t i = 0; i < m.size(); ++i)
        CHECK(std::bit_cast<std::uint64_t>(back.data()[i]) == std::bit_cast<std::uint64_t>(m.data()[i]));
}

TEST_CASE("clsm header layout")
{
    DenseMat m(1, 2, std::vector<double>{1.0, 2.0});
    const auto p = tmp("h.clsm");
    write_clsm(m, p);
    const auto bytes = slurp(p);
    REQUIRE(bytes.size() == 4 + 4 + 8 + 8 + 16);
    CHECK(bytes.substr(0, 4) == "CLSM");
    CHECK(static_cast<unsigned char>(bytes[4]) == 1);
    CHECK(static_cast<unsigned char>(bytes[8]) == 1);
    CHECK(static_cast<unsigned char>(bytes[16]) == 2);
    // 1.0 little-endian: 00 .. 00 f0 3f
    CHECK(static_cast<unsigned char>(bytes[24 + 7]) == 0x3f);
    CHECK(static_cast<unsigned char>(bytes[24 + 6]) == 0xf0);
}

TEST_CASE("clsm rejects corrupt files")
{
    const auto p = tmp("bad.clsm");
    std::ofstream(p, std::ios::binary) << "XXXX";
    CHECK_THROWS_AS(read_clsm(p), IoError);
    DenseMat m(2, 2, 1.0);
    write_clsm(m, p);
    fs::resize_file(p, fs::file_size(p) - 3);
    CHECK_THROWS_AS(read_clsm(p), IoError);
    CHECK_THROWS_AS(read_clsm(tmp("missing.clsm")), IoError);
}

TEST_CASE("csv round trip is exact")
{
    const auto m = testutil::random_dense(5, 4, 9);
    const auto p = tmp("m.csv");
    write_csv(m, p);
    CHECK(read_csv(p) == m);
    CHECK(read_matrix(p) == m);
}

TEST_CASE("csv errors")
{
    const auto p = tmp("ragged.csv");
    std::ofstream(p) << "1,2\n3\n";
    CHECK_THROWS_AS(read_csv(p), IoError);
    const auto q = tmp("text.csv");
    std::ofstream(q) << "1,abc\n";
    CHECK_THROWS_AS(read_csv(q), IoError);
}

TEST_CASE("labels round trip")
{
    const std::vector<int> labels = {0, 2, 1, 1, 0};
    const auto p = tmp("labels.txt");
    write_labels(labels, p);
    CHECK(read_labels(p) == labels);
}

TEST_CASE("format_double is shortest round-trip")
{
    CHECK(format_double(0.1) == "0.1");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}
