#include "diffmix/field_io.hpp"

#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace diffmix {
namespace {

std::string fmt(double v) { return format_number(v); }

void write_header(std::ostream& os, const SpectralGrid& g, double t, const std::string& extra) {
  os << "# X=" << fmt(g.half_width()) << ",N=" << g.size() << ",t=" << fmt(t);
  if (!extra.empty()) os << ',' << extra;
  os << '\n';
}

std::map<std::string, std::string> parse_header(const std::string& line) {
  std::map<std::string, std::string> kv;
  std::string body = line.substr(1);
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    kv[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
  }
  return kv;
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_field_csv(std::ostream& os, const Field& f, const std::string& extra_header) {
  write_header(os, f.grid(), f.time(), extra_header);
  os << "x,value\n";
  for (std::size_t i = 0; i < f.size(); ++i) os << fmt(f.x(i)) << ',' << fmt(f[i]) << '\n';
}

void write_complex_csv(std::ostream& os, const SpectralGrid& grid, double time,
                       std::span<const std::complex<double>> values, const std::string& extra_header) {
  if (values.size() != grid.size()) throw std::invalid_argument("write_complex_csv: size mismatch");
  write_header(os, grid, time, extra_header);
  os << "x,re,im\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    os << fmt(grid.node(i)) << ',' << fmt(values[i].real()) << ',' << fmt(values[i].imag()) << '\n';
  }
}

Field read_field_csv(std::istream& is) {
  std::string line;
  std::map<std::string, std::string> header;
  bool have_header = false;
  std::vector<double> values;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (!have_header) {
        header = parse_header(line);
        have_header = true;
      }
      continue;
    }
    if (line.rfind("x,", 0) == 0) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error("read_field_csv: malformed row: " + line);
    values.push_back(std::stod(line.substr(comma + 1)));
  }
  if (!have_header || !header.contains("X") || !header.contains("N")) {
    throw std::runtime_error("read_field_csv: missing '# X=..,N=..' header");
  }
  const SpectralGrid g(std::stod(header["X"]), std::stoul(header["N"]));
  const double t = header.contains("t") ? std::stod(header["t"]) : 1.0;
  if (values.size() != g.size()) throw std::runtime_error("read_field_csv: row count does not match N");
  return Field(g, std::move(values), t);
}

}  // namespace diffmix
