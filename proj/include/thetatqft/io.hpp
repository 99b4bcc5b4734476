#pragma once

// JSON reading and writing.
//
// Scalar:     {"level": N, "halfN": 0|1, "coeffs": [[k, "num", "den"], ...], "float": [re, im]}
//             value = N^{halfN/2} sum num/den zeta^k, zeta = e^{pi i/(4N)}
// Cobordism:  {"N": .., "bottom": {"genera": [..], "lagrangian": ..}, "top": {..},
//              "components": [{"role": .., "graph": i, "handle": j, "multiplicity": m}], "B": [[..]], "weight": n}
//             "lagrangian" lists spanning vectors (a_1..a_g, b_1..b_g) of one component, or one such list per
//             component; omitted means span(b). Closed manifolds omit "bottom" and "top".
// Mapping class: {"genus": g, "word": [["Ta1", 1], ["phi", -1], ..], "weight": n}

#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "thetatqft/cobordism.hpp"
#include "thetatqft/mcg.hpp"

namespace thetatqft {

using json = nlohmann::json;

inline json scalar_to_json(const Scalar& s, int level) {
  json j;
  j["level"] = level;
  auto c = s.is_zero() ? CanonicalScalar{level, 0, {}} : s.canonical();
  j["halfN"] = c.half_n;
  json coeffs = json::array();
  for (size_t k = 0; k < c.coeffs.size(); ++k) {
    if (c.coeffs[k] == 0) continue;
    coeffs.push_back({static_cast<long long>(k), c.coeffs[k].get_num().get_str(), c.coeffs[k].get_den().get_str()});
  }
  j["coeffs"] = coeffs;
  auto z = s.is_zero() ? std::complex<double>(0, 0) : s.to_complex();
  j["float"] = {z.real(), z.imag()};
  return j;
}

inline Scalar scalar_from_json(const json& j) {
  try {
    const int N = j.at("level").get<int>();
    const int h = j.value("halfN", 0);
    Scalar s(N);
    for (const auto& t : j.at("coeffs")) {
      mpq_class q(mpz_class(t.at(1).get<std::string>()), mpz_class(t.at(2).get<std::string>()));
      q.canonicalize();
      s += Scalar::rational(N, q).times_zeta(t.at(0).get<long long>());
    }
    return s.times_sqrt_n(h);
  } catch (const json::exception& e) {
    throw ParseError(std::string("scalar: ") + e.what());
  }
}

// Rounded to the tolerance grid so that values within tolerance of zero print as 0.
inline double snap(double x, double tol) {
  if (std::abs(x) < tol) return 0.0;
  return x;
}

inline json scalar_to_float_json(const Scalar& s, double tol) {
  auto z = s.is_zero() ? std::complex<double>(0, 0) : s.to_complex();
  return json::array({snap(z.real(), tol), snap(z.imag(), tol)});
}

inline json scalar_out(const Scalar& s, int level, bool exact, double tol) {
  return exact ? scalar_to_json(s, level) : scalar_to_float_json(s, tol);
}

inline json matrix_to_json(const ScalarMatrix& m, bool exact, double tol) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(scalar_out(m(r, c), m.level(), exact, tol));
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------- input

inline long long get_int(const json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + ": expected an integer");
  return j.get<long long>();
}

inline IntMatrix int_matrix_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + ": expected an array of rows");
  const int n = static_cast<int>(j.size());
  int cols = -1;
  for (const auto& r : j) {
    if (!r.is_array()) throw ParseError(std::string(what) + ": expected an array of rows");
    if (cols == -1) cols = static_cast<int>(r.size());
    if (static_cast<int>(r.size()) != cols) throw ParseError(std::string(what) + ": ragged rows");
  }
  IntMatrix m(n, cols < 0 ? 0 : cols);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < cols; ++k) m(i, k) = get_int(j[i][k], what);
  return m;
}

inline AbelianLinkData link_from_json(const json& j) {
  AbelianLinkData d;
  const json comps = j.value("components", json::array());
  if (!comps.is_array()) throw ParseError("components: expected an array");
  for (const auto& c : comps) {
    if (!c.is_object() || !c.contains("role")) throw ParseError("component: expected an object with a role");
    Component x;
    x.role = parse_role(c.at("role").get<std::string>());
    if (c.contains("graph")) x.graph = static_cast<int>(get_int(c["graph"], "graph"));
    if (c.contains("handle")) x.handle = static_cast<int>(get_int(c["handle"], "handle"));
    if (c.contains("multiplicity")) x.multiplicity = get_int(c["multiplicity"], "multiplicity");
    d.comps.push_back(x);
  }
  d.B = j.contains("B") ? int_matrix_from_json(j["B"], "B") : IntMatrix(0, 0);
  if (d.B.rows() != d.size() || d.B.cols() != d.size())
    throw ParseError("B must be square with one row per component");
  if (!d.B.is_symmetric()) throw ParseError("B must be symmetric");
  return d;
}

inline json link_to_json(const AbelianLinkData& d) {
  json comps = json::array();
  for (const auto& c : d.comps) {
    json x{{"role", role_name(c.role)}};
    if (c.role == Role::CoreBottom || c.role == Role::CoreTop) {
      x["graph"] = c.graph;
      x["handle"] = c.handle;
    }
    if (c.role == Role::Embedded) x["multiplicity"] = c.multiplicity;
    comps.push_back(x);
  }
  json B = json::array();
  for (int i = 0; i < d.size(); ++i) {
    json row = json::array();
    for (int k = 0; k < d.size(); ++k) row.push_back(d.B(i, k));
    B.push_back(row);
  }
  return {{"components", comps}, {"B", B}};
}

inline RatMatrix span_from_vectors(const json& vecs, int g) {
  std::vector<std::vector<mpq_class>> cols;
  for (const auto& v : vecs) {
    if (!v.is_array() || static_cast<int>(v.size()) != 2 * g)
      throw ParseError("lagrangian vectors must have length 2g");
    std::vector<mpq_class> c;
    for (const auto& x : v) c.push_back(mpq_class(static_cast<long>(get_int(x, "lagrangian"))));
    cols.push_back(c);
  }
  return column_basis(RatMatrix::from_columns(2 * g, cols));
}

inline ExtendedSurface surface_from_json(const json& j) {
  if (!j.is_object() || !j.contains("genera")) throw ParseError("surface: expected an object with genera");
  std::vector<int> genera;
  for (const auto& g : j["genera"]) {
    long long v = get_int(g, "genera");
    if (v < 0) throw ParseError("genera must be nonnegative");
    genera.push_back(static_cast<int>(v));
  }
  ExtendedSurface s = ExtendedSurface::standard(genera);
  if (!j.contains("lagrangian")) return s;
  const json& L = j["lagrangian"];
  if (!L.is_array()) throw ParseError("lagrangian: expected an array");
  // one component given as a list of vectors, or a list per component
  bool per_component = !L.empty() && L[0].is_array() && !L[0].empty() && L[0][0].is_array();
  if (per_component || (L.empty() && genera.size() != 1)) {
    if (L.size() != genera.size()) throw ParseError("lagrangian: one entry per boundary component");
    for (size_t i = 0; i < genera.size(); ++i) s.lagrangians[i] = span_from_vectors(L[i], genera[i]);
  } else {
    if (genera.size() != 1) throw ParseError("lagrangian: give one list of vectors per boundary component");
    s.lagrangians[0] = span_from_vectors(L, genera[0]);
  }
  for (size_t i = 0; i < genera.size(); ++i)
    if (genera[i] > 0 && !is_lagrangian(s.lagrangians[i])) throw ParseError("lagrangian marking is not Lagrangian");
  return s;
}

inline FramedCobordism cobordism_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("cobordism: expected an object");
  FramedCobordism M;
  M.link = link_from_json(j);
  M.bottom = j.contains("bottom") ? surface_from_json(j["bottom"]) : ExtendedSurface::standard({});
  M.top = j.contains("top") ? surface_from_json(j["top"]) : ExtendedSurface::standard({});
  M.weight = j.contains("weight") ? get_int(j["weight"], "weight") : 0;
  M.pieces = j.contains("pieces") ? static_cast<int>(get_int(j["pieces"], "pieces")) : 1;
  try {
    validate(M);
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
  return M;
}

inline json cobordism_to_json(const FramedCobordism& M) {
  json j = link_to_json(M.link);
  auto surf = [](const ExtendedSurface& s) {
    json L = json::array();
    for (size_t i = 0; i < s.genera.size(); ++i) {
      json vecs = json::array();
      const RatMatrix& m = s.lagrangians[i];
      for (int c = 0; c < m.cols(); ++c) {
        json v = json::array();
        for (int r = 0; r < m.rows(); ++r) {
          if (m(r, c).get_den() != 1) throw DomainError("only integer Lagrangian spans can be written");
          v.push_back(m(r, c).get_num().get_si());
        }
        vecs.push_back(v);
      }
      L.push_back(vecs);
    }
    return json{{"genera", s.genera}, {"lagrangian", L}};
  };
  if (!M.bottom.genera.empty()) j["bottom"] = surf(M.bottom);
  if (!M.top.genera.empty()) j["top"] = surf(M.top);
  j["weight"] = M.weight;
  if (M.pieces != 1) j["pieces"] = M.pieces;
  return j;
}

inline ExtendedMappingClass mapping_class_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("mapping class: expected an object");
  const long long g = j.contains("genus") ? get_int(j["genus"], "genus") : 1;
  if (g < 0) throw ParseError("genus must be nonnegative");
  const long long n = j.contains("weight") ? get_int(j["weight"], "weight") : 0;
  ExtendedMappingClass x = ExtendedMappingClass::identity(static_cast<int>(g), n);
  const json word = j.value("word", json::array());
  if (!word.is_array()) throw ParseError("word: expected an array");
  for (const auto& t : word) {
    std::string name;
    long long power = 1;
    if (t.is_string()) {
      name = t.get<std::string>();
    } else if (t.is_array() && t.size() == 2 && t[0].is_string()) {
      name = t[0].get<std::string>();
      power = get_int(t[1], "word power");
    } else {
      throw ParseError("word entries are \"name\" or [\"name\", +-1]");
    }
    if (power != 1 && power != -1) throw ParseError("word power must be +1 or -1");
    for (const auto& l : generator_letters(static_cast<int>(g), name, static_cast<int>(power))) {
      x.sp = x.sp * transvection(l.cls, l.sign);
      x.curves.push_back(l);
    }
  }
  return x;
}

}  // namespace thetatqft
