#include "rho/catalog.hpp"

#include <sstream>

namespace rho {

namespace {

std::string sanitize_int(long v) {
  return v < 0 ? "m" + std::to_string(-v) : std::to_string(v);
}

// Splits "name:param"; has_param false when there is no colon.
struct EntryName {
  std::string base;
  bool has_param = false;
  long param = 0;
};

EntryName split_name(const std::string& name) {
  EntryName e;
  auto pos = name.find(':');
  if (pos == std::string::npos) {
    e.base = name;
    return e;
  }
  e.base = name.substr(0, pos);
  std::string tail = name.substr(pos + 1);
  try {
    size_t used = 0;
    e.param = std::stol(tail, &used);
    if (used != tail.size()) throw std::invalid_argument("");
    e.has_param = true;
  } catch (...) {
    throw UnknownCatalogEntry("malformed catalog parameter in '" + name + "'");
  }
  return e;
}

std::string su6_source() {
  return
      "model su6_su3su3 {\n"
      "  gen y4 : 4\n"
      "  gen y6 : 6\n"
      "  gen x7 : 7 d = y4^2\n"
      "  gen x9 : 9 d = 2 y4*y6\n"
      "  gen x11 : 11 d = y6^2\n"
      "  top 19\n"
      "}\n";
}

std::string yamaguchi_source() {
  return
      "model yamaguchi14 {\n"
      "  gen x : 2\n"
      "  gen y : 3\n"
      "  gen z : 3 d = x^2\n"
      "  gen a : 4 d = x*y\n"
      "  gen b : 5 d = x*a + y*z\n"
      "  gen c : 7 d = a^2 + 2 y*b\n"
      "  top 14\n"
      "}\n";
}

std::string bazaikin_source(long l) {
  std::ostringstream os;
  os << "model bazaikin_" << sanitize_int(l) << " {\n"
     << "  gen x2 : 2\n"
     << "  gen y5 : 5 d = x2^3\n"
     << "  gen y9 : 9";
  if (l != 0) os << " d = " << l << " x2^5";
  os << "\n  top 13\n}\n";
  return os.str();
}

std::string eschenburg_source() {
  return
      "model eschenburg {\n"
      "  gen x2 : 2\n"
      "  gen y3 : 3 d = x2^2\n"
      "  gen y5 : 5\n"
      "  top 7\n"
      "}\n";
}

std::string sphere_source(long n) {
  if (n < 2) throw UnknownCatalogEntry("sphere:n requires n >= 2");
  std::ostringstream os;
  os << "model sphere_" << n << " {\n";
  if (n % 2) {
    os << "  gen x" << n << " : " << n << "\n";
  } else {
    os << "  gen x" << n << " : " << n << "\n"
       << "  gen y" << 2 * n - 1 << " : " << 2 * n - 1 << " d = x" << n << "^2\n";
  }
  os << "  top " << n << "\n}\n";
  return os.str();
}

std::string cpn_source(long n) {
  if (n < 1) throw UnknownCatalogEntry("cpn:n requires n >= 1");
  std::ostringstream os;
  os << "model cpn_" << n << " {\n"
     << "  gen u : 2\n"
     << "  gen v : " << 2 * n + 1 << " d = u^" << n + 1 << "\n"
     << "  top " << 2 * n << "\n}\n";
  return os.str();
}

std::string su2_u1_source() {
  return
      "biquotient su2_u1 {\n"
      "  bh u : 2\n"
      "  q q3 : 3 dbar = u^2\n"
      "}\n";
}

}  // namespace

std::string catalog_source(const std::string& name) {
  EntryName e = split_name(name);
  if (e.base == "su6_su3su3" && !e.has_param) return su6_source();
  if (e.base == "yamaguchi14" && !e.has_param) return yamaguchi_source();
  if (e.base == "bazaikin") return bazaikin_source(e.has_param ? e.param : 0);
  if (e.base == "eschenburg" && !e.has_param) return eschenburg_source();
  if (e.base == "sphere" && e.has_param) return sphere_source(e.param);
  if (e.base == "cpn" && e.has_param) return cpn_source(e.param);
  if (e.base == "su2_u1" && !e.has_param) return su2_u1_source();
  std::string names;
  for (const auto& n : catalog_names()) names += (names.empty() ? "" : ", ") + n;
  throw UnknownCatalogEntry("unknown catalog entry '" + name + "'; available: " + names);
}

ModelFile catalog(const std::string& name) { return parse_model(catalog_source(name)); }

std::vector<std::string> catalog_names() {
  return {"su6_su3su3", "yamaguchi14", "bazaikin[:l]", "eschenburg",
          "sphere:n",   "cpn:n",       "su2_u1"};
}

std::vector<std::string> catalog_instances() {
  return {"su6_su3su3", "yamaguchi14", "bazaikin:0", "bazaikin:1", "eschenburg",
          "sphere:2",   "sphere:3",    "sphere:5",   "cpn:2",      "cpn:3",
          "su2_u1"};
}

}  // namespace rho
