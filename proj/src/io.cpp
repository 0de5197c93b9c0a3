#include "fracdim2d/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace fracdim2d::io {

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

void write_csv(std::ostream& os, const GridSamples& g) {
  const auto& s = g.spec();
  const auto xs = s.xs();
  const auto ys = s.ys();
  os << "x,y,value\n";
  for (std::size_t i = 0; i < s.m(); ++i) {
    for (std::size_t j = 0; j < s.n(); ++j) {
      os << format_real(xs[i]) << ',' << format_real(ys[j]) << ',' << format_real(g.at(i, j)) << '\n';
    }
  }
}

namespace {

double parse_real(const std::string& field, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != field.size()) {
    throw IoError("line " + std::to_string(line) + ": not a number: '" + field + "'");
  }
  return v;
}

bool close(double u, double v, double scale) { return std::fabs(u - v) <= 1e-12 * scale; }

}  // namespace

GridSamples read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw IoError("empty CSV input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x,y,value") throw IoError("CSV header must be 'x,y,value'");

  std::vector<double> xs, ys, vs;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string fx, fy, fv;
    if (!std::getline(ss, fx, ',') || !std::getline(ss, fy, ',') || !std::getline(ss, fv)) {
      throw IoError("line " + std::to_string(lineno) + ": expected 3 fields");
    }
    xs.push_back(parse_real(fx, lineno));
    ys.push_back(parse_real(fy, lineno));
    vs.push_back(parse_real(fv, lineno));
  }
  if (vs.size() < 4) throw IoError("CSV grid needs at least 2x2 nodes");

  std::size_t n = 0;
  while (n < xs.size() && xs[n] == xs[0]) ++n;
  if (n < 2 || vs.size() % n != 0) throw IoError("CSV rows are not a row-major rectangular grid");
  const std::size_t m = vs.size() / n;
  const Box rect(xs.front(), xs.back(), ys.front(), ys.back());
  const GridSpec spec(rect, m, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t k = i * n + j;
      if (!close(xs[k], spec.x(i), rect.width()) || !close(ys[k], spec.y(j), rect.height())) {
        throw IoError("CSV node " + std::to_string(k) + " is off the uniform grid");
      }
    }
  }
  return GridSamples(spec, std::move(vs));
}

void write_json(std::ostream& os, const GridSamples& g) {
  const auto& s = g.spec();
  // Values are written by hand so the digits match the CSV form exactly.
  os << "{\"rect\":{\"a\":" << format_real(s.rect().a) << ",\"b\":" << format_real(s.rect().b)
     << ",\"c\":" << format_real(s.rect().c) << ",\"d\":" << format_real(s.rect().d) << "},\"m\":" << s.m()
     << ",\"n\":" << s.n() << ",\"values\":[";
  const auto v = g.values();
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) os << ',';
    os << format_real(v[k]);
  }
  os << "]}\n";
}

GridSamples read_json(std::istream& is) {
  nlohmann::json j;
  try {
    is >> j;
    const auto& r = j.at("rect");
    const Box rect(r.at("a").get<double>(), r.at("b").get<double>(), r.at("c").get<double>(),
                   r.at("d").get<double>());
    const GridSpec spec(rect, j.at("m").get<std::size_t>(), j.at("n").get<std::size_t>());
    return GridSamples(spec, j.at("values").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed grid JSON: ") + e.what());
  }
}

void save(const std::string& path, const GridSamples& g) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open '" + path + "' for writing", "out");
  if (path.ends_with(".json")) {
    write_json(os, g);
  } else {
    write_csv(os, g);
  }
  if (!os) throw IoError("write to '" + path + "' failed", "out");
}

GridSamples load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open '" + path + "'");
  return path.ends_with(".json") ? read_json(is) : read_csv(is);
}

}  // namespace fracdim2d::io
