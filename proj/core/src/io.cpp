#include "psical/io.hpp"

#include <cstring>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

namespace psical {

namespace {

void put_u32(std::ostream& os, std::uint32_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}
void put_f64(std::ostream& os, double v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}
void put_u8(std::ostream& os, std::uint8_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t get_u32(std::istream& is) {
  std::uint32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  require(bool(is), ErrorCode::Io, "read: truncated file");
  return v;
}
double get_f64(std::istream& is) {
  double v = 0;
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  require(bool(is), ErrorCode::Io, "read: truncated file");
  return v;
}
std::uint8_t get_u8(std::istream& is) {
  std::uint8_t v = 0;
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  require(bool(is), ErrorCode::Io, "read: truncated file");
  return v;
}

void write_axes(std::ostream& os, const Grid& g, const std::vector<AxisRole>& roles) {
  put_u32(os, static_cast<std::uint32_t>(g.dim()));
  for (std::size_t a = 0; a < g.dim(); ++a) {
    put_f64(os, g.axis(a).center);
    put_f64(os, g.axis(a).halfwidth);
    put_u32(os, g.axis(a).count);
    put_u8(os, static_cast<std::uint8_t>(roles[a]));
  }
}

std::pair<Grid, std::vector<AxisRole>> read_axes(std::istream& is) {
  std::uint32_t dim = get_u32(is);
  require(dim >= 1 && dim <= 16, ErrorCode::Io, "read: implausible axis count");
  std::vector<Axis> axes(dim);
  std::vector<AxisRole> roles(dim);
  for (std::uint32_t a = 0; a < dim; ++a) {
    axes[a].center = get_f64(is);
    axes[a].halfwidth = get_f64(is);
    axes[a].count = get_u32(is);
    std::uint8_t role = get_u8(is);
    require(role <= 1, ErrorCode::Io, "read: bad axis role byte");
    roles[a] = static_cast<AxisRole>(role);
    require(axes[a].count >= 4 && axes[a].count % 2 == 0 && axes[a].halfwidth > 0.0,
            ErrorCode::Io, "read: invalid axis record");
  }
  return {Grid(std::move(axes)), std::move(roles)};
}

void check_magic(std::istream& is, const char* magic) {
  char m[4];
  is.read(m, 4);
  require(bool(is) && std::memcmp(m, magic, 4) == 0, ErrorCode::Io,
          std::string("read: bad magic, expected ") + magic);
}

}  // namespace

void write_gsf1(const std::string& path, const Field& f) {
  std::ofstream os(path, std::ios::binary);
  require(bool(os), ErrorCode::Io, "write_gsf1: cannot open " + path);
  os.write("GSF1", 4);
  write_axes(os, f.grid(), f.roles());
  for (const cplx& v : f.values()) {
    put_f64(os, v.real());
    put_f64(os, v.imag());
  }
  require(bool(os), ErrorCode::Io, "write_gsf1: write failure on " + path);
}

Field read_gsf1(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  require(bool(is), ErrorCode::Io, "read_gsf1: cannot open " + path);
  check_magic(is, "GSF1");
  auto [grid, roles] = read_axes(is);
  std::vector<cplx> vals(grid.size());
  for (cplx& v : vals) {
    double re = get_f64(is);
    double im = get_f64(is);
    v = cplx{re, im};
  }
  return Field(std::move(grid), std::move(roles), std::move(vals));
}

void write_gsm1(const std::string& path, const OperatorMatrix& m) {
  std::ofstream os(path, std::ios::binary);
  require(bool(os), ErrorCode::Io, "write_gsm1: cannot open " + path);
  os.write("GSM1", 4);
  put_u32(os, static_cast<std::uint32_t>(m.rows()));
  put_u32(os, static_cast<std::uint32_t>(m.cols()));
  std::vector<AxisRole> troles(m.target_grid().dim(), AxisRole::Space);
  std::vector<AxisRole> sroles(m.source_grid().dim(), AxisRole::Space);
  write_axes(os, m.target_grid(), troles);
  write_axes(os, m.source_grid(), sroles);
  for (const cplx& v : m.entries()) {
    put_f64(os, v.real());
    put_f64(os, v.imag());
  }
  require(bool(os), ErrorCode::Io, "write_gsm1: write failure on " + path);
}

OperatorMatrix read_gsm1(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  require(bool(is), ErrorCode::Io, "read_gsm1: cannot open " + path);
  check_magic(is, "GSM1");
  std::uint32_t rows = get_u32(is);
  std::uint32_t cols = get_u32(is);
  auto [tgrid, troles] = read_axes(is);
  auto [sgrid, sroles] = read_axes(is);
  require(tgrid.size() == rows && sgrid.size() == cols, ErrorCode::Io,
          "read_gsm1: grid sizes disagree with matrix shape");
  std::vector<cplx> vals(static_cast<std::size_t>(rows) * cols);
  for (cplx& v : vals) {
    double re = get_f64(is);
    double im = get_f64(is);
    v = cplx{re, im};
  }
  return OperatorMatrix(std::move(tgrid), std::move(sgrid), std::move(vals));
}

void write_stft(const std::string& values_path, const std::string& window_path,
                const std::string& sidecar_path, const StftData& v) {
  write_gsf1(values_path, v.values);
  write_gsf1(window_path, v.window);
  nlohmann::ordered_json j;
  j["values"] = std::filesystem::path(values_path).filename().string();
  j["window"] = std::filesystem::path(window_path).filename().string();
  j["window_l2"] = v.window_l2;
  std::ofstream os(sidecar_path);
  require(bool(os), ErrorCode::Io, "write_stft: cannot open " + sidecar_path);
  os << j.dump(2) << "\n";
}

StftData read_stft(const std::string& sidecar_path) {
  std::ifstream is(sidecar_path);
  require(bool(is), ErrorCode::Io, "read_stft: cannot open " + sidecar_path);
  nlohmann::json j = nlohmann::json::parse(is, nullptr, false);
  require(!j.is_discarded(), ErrorCode::Io, "read_stft: sidecar parse error");
  auto dir = std::filesystem::path(sidecar_path).parent_path();
  StftData v;
  v.values = read_gsf1((dir / j.at("values").get<std::string>()).string());
  v.window = read_gsf1((dir / j.at("window").get<std::string>()).string());
  v.window_l2 = j.at("window_l2").get<double>();
  return v;
}

}  // namespace psical
