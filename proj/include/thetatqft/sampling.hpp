#pragma once

// Random inputs for the randomized suites.

#include <random>
#include <vector>

#include "thetatqft/cobordism.hpp"

namespace thetatqft {

inline IntMatrix random_symplectic(int g, std::mt19937_64& rng, int length = 6) {
  IntMatrix m = IntMatrix::identity(2 * g);
  if (g == 0) return m;
  std::uniform_int_distribution<int> kind(0, 2), handle(0, g - 1), sgn(0, 1);
  for (int k = 0; k < length; ++k) {
    const int i = handle(rng);
    std::vector<long long> c(2 * g, 0);
    switch (kind(rng)) {
      case 0: c[i] = 1; break;
      case 1: c[g + i] = 1; break;
      default:
        c[i] = 1;
        c[(i + 1) % g] += 1;
        if (g == 1) c = {1, 1};
        break;
    }
    m = m * transvection(c, sgn(rng) ? 1 : -1);
  }
  return m;
}

inline ExtendedSurface random_marking(const std::vector<int>& genera, std::mt19937_64& rng) {
  ExtendedSurface s = ExtendedSurface::standard(genera);
  for (size_t i = 0; i < genera.size(); ++i)
    s.lagrangians[i] = act(random_symplectic(genera[i], rng), standard_lagrangian(genera[i]));
  return s;
}

// Random word in the named generators, with weight.
inline ExtendedMappingClass random_mapping_class(int g, std::mt19937_64& rng, int maxlen = 4) {
  if (g == 0) return ExtendedMappingClass::identity(0, 0);
  std::vector<std::string> names;
  for (int i = 1; i <= g; ++i) {
    names.push_back("Ta" + std::to_string(i));
    names.push_back("Tb" + std::to_string(i));
    names.push_back("phi" + std::to_string(i));
    if (i < g) names.push_back("Tc" + std::to_string(i));
  }
  std::uniform_int_distribution<int> pick(0, static_cast<int>(names.size()) - 1), len(0, maxlen), sgn(0, 1), w(-3, 3);
  ExtendedMappingClass x = ExtendedMappingClass::identity(g, w(rng));
  const int L = len(rng);
  for (int k = 0; k < L; ++k) x = emcg_compose(x, generator(g, names[pick(rng)], sgn(rng) ? 1 : -1));
  return x;
}

// Random connected presentation: cores with zero framings and no linking inside a graph,
// everything else random in [-range, range].
inline FramedCobordism random_cobordism(const std::vector<int>& bottom, const std::vector<int>& top, int surgery,
                                        int embedded, std::mt19937_64& rng, bool random_markings = false,
                                        int range = 2) {
  std::uniform_int_distribution<int> d(-range, range), w(-3, 3), mult(1, 2);
  AbelianLinkData link;
  for (size_t gr = 0; gr < bottom.size(); ++gr)
    for (int h = 0; h < bottom[gr]; ++h) link.comps.push_back(Component{Role::CoreBottom, int(gr), h});
  for (size_t gr = 0; gr < top.size(); ++gr)
    for (int h = 0; h < top[gr]; ++h) link.comps.push_back(Component{Role::CoreTop, int(gr), h});
  for (int k = 0; k < surgery; ++k) link.comps.push_back(Component{Role::Surgery});
  for (int k = 0; k < embedded; ++k) link.comps.push_back(Component{Role::Embedded, 0, 0, mult(rng)});
  const int n = link.size();
  link.B = IntMatrix(n, n);
  auto is_core = [&](int i) { return link.comps[i].role == Role::CoreBottom || link.comps[i].role == Role::CoreTop; };
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      if (is_core(i) && (i == j || (is_core(j) && link.comps[i].role == link.comps[j].role &&
                                    link.comps[i].graph == link.comps[j].graph)))
        continue;
      link.B(i, j) = link.B(j, i) = d(rng);
    }
  FramedCobordism M{link, ExtendedSurface::standard(bottom), ExtendedSurface::standard(top), w(rng), 1};
  if (random_markings) {
    M.bottom = random_marking(bottom, rng);
    M.top = random_marking(top, rng);
  }
  return M;
}

// Closed surgery link with embedded components.
inline AbelianLinkData random_closed_link(int surgery, int embedded, std::mt19937_64& rng, int range = 3) {
  FramedCobordism M = random_cobordism({}, {}, surgery, embedded, rng, false, range);
  return M.link;
}

}  // namespace thetatqft
