#include "hoelderlab/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "json.hpp"

namespace hoelderlab {

namespace {

std::uint64_t to_little_endian(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) return v;
  std::uint64_t r = 0;
  for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xFF) << (8 * (7 - i));
  return r;
}

}  // namespace

std::filesystem::path gfld_header_path(const std::filesystem::path& path) {
  std::filesystem::path p = path;
  p += ".json";
  return p;
}

void write_gfld(const std::filesystem::path& path, const GridField& field) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    for (double v : field.values()) {
      std::uint64_t bits = to_little_endian(std::bit_cast<std::uint64_t>(v));
      out.write(reinterpret_cast<const char*>(&bits), sizeof bits);
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
  }
  const nlohmann::ordered_json header = {
      {"dim", field.dim()}, {"n", field.n()}, {"dtype", "f64-le"}, {"layout", "row-major"}};
  std::ofstream hdr(gfld_header_path(path), std::ios::trunc);
  if (!hdr) throw std::runtime_error("cannot open header for " + path.string());
  hdr << header.dump(2) << '\n';
}

GridField read_gfld(const std::filesystem::path& path) {
  std::ifstream hdr(gfld_header_path(path));
  if (!hdr) throw InvalidArgument("missing .gfld header sidecar for " + path.string());
  nlohmann::json header;
  try {
    hdr >> header;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("malformed .gfld header: " + std::string(e.what()));
  }
  if (!header.is_object() || !header.contains("dim") || !header.contains("n"))
    throw InvalidArgument(".gfld header must contain dim and n");
  if (header.value("dtype", "") != "f64-le") throw InvalidArgument(".gfld dtype must be f64-le");
  if (header.value("layout", "") != "row-major") throw InvalidArgument(".gfld layout must be row-major");
  const int dim = header.at("dim").get<int>();
  const int n = header.at("n").get<int>();
  GridField field(dim, n);

  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open .gfld payload " + path.string());
  for (double& v : field.values()) {
    std::uint64_t bits = 0;
    if (!in.read(reinterpret_cast<char*>(&bits), sizeof bits)) throw InvalidArgument(".gfld payload truncated");
    v = std::bit_cast<double>(to_little_endian(bits));
  }
  if (in.peek() != std::char_traits<char>::eof()) throw InvalidArgument(".gfld payload longer than n^dim values");
  field.check_finite();
  return field;
}

}  // namespace hoelderlab
