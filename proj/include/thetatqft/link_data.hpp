#pragma once

// Abelian surgery data: a component table plus the full symmetric linking matrix,
// framings on the diagonal. Cores stand for the circles of the bottom/top ribbon graphs.

#include <algorithm>
#include <string>
#include <vector>

#include "thetatqft/errors.hpp"
#include "thetatqft/matrix.hpp"

namespace thetatqft {

enum class Role { CoreBottom, CoreTop, Surgery, Embedded };

inline const char* role_name(Role r) {
  switch (r) {
    case Role::CoreBottom: return "core-bottom";
    case Role::CoreTop: return "core-top";
    case Role::Surgery: return "surgery";
    case Role::Embedded: return "embedded";
  }
  return "?";
}

inline Role parse_role(const std::string& s) {
  if (s == "core-bottom") return Role::CoreBottom;
  if (s == "core-top") return Role::CoreTop;
  if (s == "surgery") return Role::Surgery;
  if (s == "embedded") return Role::Embedded;
  throw ParseError("unknown component role '" + s + "'");
}

struct Component {
  Role role = Role::Surgery;
  int graph = 0;   // boundary component, for cores
  int handle = 0;  // handle within that component, for cores
  long long multiplicity = 1;  // for embedded components

  friend bool operator==(const Component& a, const Component& b) {
    return a.role == b.role && a.graph == b.graph && a.handle == b.handle && a.multiplicity == b.multiplicity;
  }
};

struct AbelianLinkData {
  std::vector<Component> comps;
  IntMatrix B;

  int size() const { return static_cast<int>(comps.size()); }

  std::vector<int> indices(Role r) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
      if (comps[i].role == r) out.push_back(i);
    return out;
  }

  // Appends a component; `row` holds its linking numbers with the existing components.
  int add(const Component& c, const std::vector<long long>& row, long long framing) {
    const int n = size();
    if (static_cast<int>(row.size()) != n) throw DomainError("add component: row length mismatch");
    IntMatrix nb(n + 1, n + 1);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) nb(i, j) = B(i, j);
    for (int i = 0; i < n; ++i) nb(i, n) = nb(n, i) = row[i];
    nb(n, n) = framing;
    B = nb;
    comps.push_back(c);
    return n;
  }

  IntMatrix submatrix(const std::vector<int>& idx) const {
    IntMatrix m(static_cast<int>(idx.size()), static_cast<int>(idx.size()));
    for (size_t i = 0; i < idx.size(); ++i)
      for (size_t j = 0; j < idx.size(); ++j) m(i, j) = B(idx[i], idx[j]);
    return m;
  }

  void validate() const {
    if (B.rows() != size() || B.cols() != size()) throw DomainError("linking matrix size does not match component table");
    if (!B.is_symmetric()) throw DomainError("linking matrix is not symmetric");
    for (const auto& c : comps) {
      if (c.graph < 0 || c.handle < 0) throw DomainError("negative graph/handle index");
    }
  }

  // Cores unframed and unlinked within each graph.
  bool has_standard_cores() const {
    for (int i = 0; i < size(); ++i) {
      if (comps[i].role != Role::CoreBottom && comps[i].role != Role::CoreTop) continue;
      if (B(i, i) != 0) return false;
      for (int j = 0; j < size(); ++j)
        if (j != i && comps[j].role == comps[i].role && comps[j].graph == comps[i].graph && B(i, j) != 0)
          return false;
    }
    return true;
  }

  friend bool operator==(const AbelianLinkData& a, const AbelianLinkData& b) {
    return a.comps == b.comps && a.B == b.B;
  }
};

// Block sum of two link tables, second one shifted by the given graph offsets.
inline AbelianLinkData link_union(const AbelianLinkData& x, const AbelianLinkData& y, int bottom_graph_offset,
                                  int top_graph_offset) {
  AbelianLinkData r = x;
  const int n = x.size(), m = y.size();
  IntMatrix nb(n + m, n + m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) nb(i, j) = x.B(i, j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) nb(n + i, n + j) = y.B(i, j);
  r.B = nb;
  for (Component c : y.comps) {
    if (c.role == Role::CoreBottom) c.graph += bottom_graph_offset;
    if (c.role == Role::CoreTop) c.graph += top_graph_offset;
    r.comps.push_back(c);
  }
  return r;
}

// (k1): isolated unknot with framing +-1.
inline AbelianLinkData kirby_k1(const AbelianLinkData& d, int sign) {
  if (sign != 1 && sign != -1) throw DomainError("kirby_k1: sign must be +-1");
  AbelianLinkData r = d;
  r.add(Component{Role::Surgery}, std::vector<long long>(d.size(), 0), sign);
  return r;
}

// Inverse of k1: removes an isolated +-1 framed surgery component.
inline AbelianLinkData kirby_k1_remove(const AbelianLinkData& d, int i) {
  if (i < 0 || i >= d.size()) throw DomainError("kirby_k1_remove: index out of range");
  if (d.comps[i].role != Role::Surgery || (d.B(i, i) != 1 && d.B(i, i) != -1))
    throw DomainError("kirby_k1_remove: not a +-1 framed surgery component");
  for (int j = 0; j < d.size(); ++j)
    if (j != i && d.B(i, j) != 0) throw DomainError("kirby_k1_remove: component is linked");
  AbelianLinkData r;
  std::vector<int> keep;
  for (int j = 0; j < d.size(); ++j)
    if (j != i) keep.push_back(j);
  r.B = d.submatrix(keep);
  for (int j : keep) r.comps.push_back(d.comps[j]);
  return r;
}

// Slides component i over surgery component j: i becomes i + s*j in homology, B -> E^T B E.
inline AbelianLinkData slide(const AbelianLinkData& d, int i, int j, int s) {
  if (i == j) throw DomainError("slide: indices must be distinct");
  if (i < 0 || j < 0 || i >= d.size() || j >= d.size()) throw DomainError("slide: index out of range");
  if (d.comps[j].role != Role::Surgery) throw DomainError("slide: can only slide over a surgery component");
  if (s != 1 && s != -1) throw DomainError("slide: sign must be +-1");
  IntMatrix E = IntMatrix::identity(d.size());
  E(j, i) = s;
  AbelianLinkData r = d;
  r.B = E.transpose() * d.B * E;
  return r;
}

// (k2): handle slide of one surgery component over another.
inline AbelianLinkData kirby_k2(const AbelianLinkData& d, int i, int j, int s) {
  if (i < 0 || i >= d.size() || d.comps[i].role != Role::Surgery)
    throw DomainError("kirby_k2: slid component must be surgery");
  return slide(d, i, j, s);
}

// Slides a core (graph edge) or an embedded component over surgery component j.
inline AbelianLinkData slide_edge(const AbelianLinkData& d, int i, int j, int s) {
  if (i < 0 || i >= d.size() || d.comps[i].role == Role::Surgery)
    throw DomainError("slide_edge: slid component must be a core or embedded");
  return slide(d, i, j, s);
}

inline AbelianLinkData reverse_orientation(const AbelianLinkData& d, int i) {
  if (i < 0 || i >= d.size()) throw DomainError("reverse_orientation: index out of range");
  AbelianLinkData r = d;
  for (int j = 0; j < d.size(); ++j)
    if (j != i) r.B(i, j) = r.B(j, i) = -d.B(i, j);
  return r;
}

}  // namespace thetatqft
