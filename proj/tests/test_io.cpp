#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "psical/io.hpp"

using namespace psical;

namespace {

std::filesystem::path tmpdir() {
  auto p = std::filesystem::temp_directory_path() / "psical_io_test";
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("gsf1 layout is exactly as documented") {
  Grid g = make_grid_1d(0.5, 8.0, 4);  // count 4 is the minimum
  std::vector<cplx> vals = {{1.0, -2.0}, {0.0, 0.5}, {3.25, 0.0}, {-1.0, 1.0}};
  Field f(g, {AxisRole::Frequency}, vals);
  auto path = (tmpdir() / "layout.gsf").string();
  write_gsf1(path, f);

  std::ifstream is(path, std::ios::binary);
  std::vector<char> bytes((std::istreambuf_iterator<char>(is)),
                          std::istreambuf_iterator<char>());
  // magic + u32 dim + (f64 + f64 + u32 + u8) + 4 complex values
  CHECK(bytes.size() == 4 + 4 + (8 + 8 + 4 + 1) + 4 * 16);
  CHECK(std::string(bytes.data(), 4) == "GSF1");
  std::uint32_t dim;
  std::memcpy(&dim, bytes.data() + 4, 4);
  CHECK(dim == 1);
  double center;
  std::memcpy(&center, bytes.data() + 8, 8);
  CHECK(center == 0.5);
  CHECK(bytes[4 + 4 + 20] == 1);  // role byte: frequency
  double re0;
  std::memcpy(&re0, bytes.data() + 4 + 4 + 21, 8);
  CHECK(re0 == 1.0);
}

TEST_CASE("gsf1 roundtrip preserves grid, roles and values") {
  Grid g = make_cube_grid(2, 6.0, 16);
  Field f = Field::sample(g, {AxisRole::Space, AxisRole::Frequency},
                          [](std::span<const double> p) {
                            return cplx{std::sin(p[0]), std::cos(p[1])};
                          });
  auto path = (tmpdir() / "roundtrip.gsf").string();
  write_gsf1(path, f);
  Field back = read_gsf1(path);
  CHECK(back.grid() == f.grid());
  CHECK(back.roles() == f.roles());
  CHECK(max_abs_diff(back, f) == 0.0);
}

TEST_CASE("gsm1 roundtrip") {
  Grid g = make_grid_1d(0.0, 8.0, 16);
  std::vector<cplx> m(16 * 16);
  for (std::size_t i = 0; i < m.size(); ++i)
    m[i] = cplx{static_cast<double>(i), -0.5 * static_cast<double>(i % 7)};
  OperatorMatrix M(g, g, m);
  auto path = (tmpdir() / "mat.gsm").string();
  write_gsm1(path, M);
  OperatorMatrix back = read_gsm1(path);
  CHECK(back.rows() == 16);
  CHECK(back.cols() == 16);
  CHECK(back.target_grid() == g);
  CHECK(max_abs_diff(back, M) == 0.0);
}

TEST_CASE("stft sidecar roundtrip") {
  Grid g = make_grid_1d(0.0, 8.0, 32);
  Field phi = gaussian_window(g);
  StftData V = stft(phi, phi);
  auto dir = tmpdir();
  write_stft((dir / "v.gsf").string(), (dir / "w.gsf").string(),
             (dir / "v.json").string(), V);
  StftData back = read_stft((dir / "v.json").string());
  CHECK(back.window_l2 == V.window_l2);
  CHECK(max_abs_diff(back.values, V.values) == 0.0);
  Field rec = istft(back);
  Field diff = rec;
  diff -= phi;
  CHECK(diff.l2_norm() < 1e-10);
}

TEST_CASE("corrupt files are io errors") {
  auto dir = tmpdir();
  auto path = (dir / "bad.gsf").string();
  {
    std::ofstream os(path, std::ios::binary);
    os << "GSXX garbage";
  }
  CHECK_THROWS_AS((void)read_gsf1(path), Error);
  CHECK_THROWS_AS((void)read_gsf1((dir / "missing.gsf").string()), Error);

  // truncated payload
  Grid g = make_grid_1d(0.0, 8.0, 16);
  Field f = Field::zeros(g, {AxisRole::Space});
  auto tpath = (dir / "trunc.gsf").string();
  write_gsf1(tpath, f);
  std::filesystem::resize_file(tpath, 40);
  CHECK_THROWS_AS((void)read_gsf1(tpath), Error);
}
