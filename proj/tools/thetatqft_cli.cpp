// thetatqft: command-line front end.
//   thetatqft invariant   --input closed.json [--N 4]
//   thetatqft cobordism   --input cob.json
//   thetatqft mcg-rep     --input word.json
//   thetatqft heisenberg  [--input elements.json] [--genus g] --N 4
//   thetatqft theta-check [--input period.json] [--N 2]
//   thetatqft selftest    [--seed S] [--threads K]
// Exit codes: 1 parse error, 2 guard violation, 3 internal inconsistency.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "thetatqft/acceptance.hpp"
#include "thetatqft/io.hpp"

using namespace thetatqft;

namespace {

struct Options {
  std::optional<int> N;
  std::string input;
  std::string format = "exact";
  double tolerance = 1e-9;
  int threads = 1;
  unsigned long long seed = 20261018;
  int genus = 1;
};

json read_input(const Options& o, bool required) {
  if (o.input.empty()) {
    if (required) throw ParseError("--input is required");
    return json::object();
  }
  std::stringstream buf;
  if (o.input == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(o.input);
    if (!in) throw ParseError("cannot open " + o.input);
    buf << in.rdbuf();
  }
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

// flag wins over the input field
int level(const Options& o, const json& in, std::optional<int> fallback = std::nullopt) {
  int N;
  if (o.N) {
    N = *o.N;
  } else if (in.contains("N")) {
    N = static_cast<int>(get_int(in["N"], "N"));
  } else if (fallback) {
    N = *fallback;
  } else {
    throw ParseError("level N not given (use --N or an \"N\" field)");
  }
  if (N < 2 || N % 2) throw GuardError("N must be even and at least 2");
  if (N > 64) throw GuardError("N > 64 is outside the supported range");
  return N;
}

bool exact(const Options& o) { return o.format == "exact"; }

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

json vector_to_json(const ThetaVector& v, const Options& o) {
  json out = json::array();
  for (int i = 0; i < v.dim(); ++i) {
    if (v[i].is_zero()) continue;
    out.push_back({{"index", multi_index(i, v.genus, v.level)}, {"coeff", scalar_out(v[i], v.level, exact(o), o.tolerance)}});
  }
  return out;
}

int cmd_invariant(const Options& o) {
  json in = read_input(o, true);
  const int N = level(o, in);
  FramedCobordism M = cobordism_from_json(in);
  if (M.bottom.total_genus() || M.top.total_genus() || !M.bottom.genera.empty() || !M.top.genera.empty())
    throw ParseError("invariant: input has boundary; use the cobordism command");
  Scalar z = closed_invariant(M.link, M.weight, N);
  print({{"command", "invariant"}, {"N", N}, {"value", scalar_out(z, N, exact(o), o.tolerance)}});
  return 0;
}

int cmd_cobordism(const Options& o) {
  json in = read_input(o, true);
  const int N = level(o, in);
  FramedCobordism M = cobordism_from_json(in);
  ScalarMatrix Z = z_matrix(M, N, o.threads);
  print({{"command", "cobordism"},
         {"N", N},
         {"effective_weight", effective_weight(M)},
         {"rows", Z.rows()},
         {"cols", Z.cols()},
         {"matrix", matrix_to_json(Z, exact(o), o.tolerance)}});
  return 0;
}

int cmd_mcg(const Options& o) {
  json in = read_input(o, true);
  const int N = level(o, in);
  ExtendedMappingClass x = mapping_class_from_json(in);
  if (int_pow(N, 2 * x.genus) > 1'000'000) throw GuardError("mcg-rep: N^{2g} exceeds 1e6 entries");
  ScalarMatrix F = rep_F(x, N);
  json out{{"command", "mcg-rep"}, {"N", N}, {"genus", x.genus}, {"weight", x.weight}, {"sigma_star", x.genus ? sigma_star(x.genus, x.curves) : 0}};
  out["matrix"] = matrix_to_json(F, exact(o), o.tolerance);
  if (in.contains("apply")) {
    std::vector<long long> mu;
    for (const auto& v : in["apply"]) mu.push_back(get_int(v, "apply"));
    if (static_cast<int>(mu.size()) != x.genus) throw ParseError("apply: index must have length genus");
    out["vector"] = vector_to_json(F.apply(ThetaVector::basis(x.genus, N, mu)), o);
  }
  print(out);
  return 0;
}

int cmd_heisenberg(const Options& o) {
  json in = read_input(o, false);
  const int N = level(o, in);
  const int g = in.contains("genus") ? static_cast<int>(get_int(in["genus"], "genus")) : o.genus;
  if (g < 1) throw ParseError("genus must be positive");
  if (int_pow(N, 2 * g) > 1'000'000) throw GuardError("heisenberg: N^{2g} exceeds 1e6 entries");
  std::vector<std::pair<std::string, HeisElement>> elems;
  if (in.contains("elements")) {
    for (const auto& e : in["elements"]) {
      HeisElement x{std::vector<long long>(g, 0), std::vector<long long>(g, 0), 0};
      auto vec = [&](const char* key, std::vector<long long>& v) {
        if (!e.contains(key)) return;
        if (static_cast<int>(e[key].size()) != g) throw ParseError(std::string(key) + " must have length genus");
        for (int i = 0; i < g; ++i) v[i] = get_int(e[key][i], key);
      };
      vec("p", x.p);
      vec("q", x.q);
      if (e.contains("k")) x.k = get_int(e["k"], "k");
      elems.push_back({e.value("name", std::string("element")), x});
    }
  } else {
    for (int i = 0; i < g; ++i) {
      HeisElement a{std::vector<long long>(g, 0), std::vector<long long>(g, 0), 0};
      a.p[i] = 1;
      elems.push_back({"a" + std::to_string(i + 1), a});
      HeisElement b{std::vector<long long>(g, 0), std::vector<long long>(g, 0), 0};
      b.q[i] = 1;
      elems.push_back({"b" + std::to_string(i + 1), b});
    }
    elems.push_back({"center", HeisElement{std::vector<long long>(g, 0), std::vector<long long>(g, 0), 1}});
  }
  json out{{"command", "heisenberg"}, {"N", N}, {"genus", g}};
  json ops = json::array();
  for (const auto& [name, x] : elems) {
    MonomialOp m = schrodinger(x, N);
    std::vector<long long> ph;
    for (long long p : m.phase) ph.push_back(floor_mod(p, 2 * N));
    ops.push_back({{"name", name},
                   {"p", x.p},
                   {"q", x.q},
                   {"k", x.k},
                   {"target", m.target},
                   {"phase_t", ph},
                   {"matrix", matrix_to_json(m.dense(), exact(o), o.tolerance)}});
  }
  out["operators"] = ops;
  print(out);
  return 0;
}

int cmd_theta(const Options& o) {
  json in = read_input(o, false);
  std::vector<int> levels;
  if (o.N || in.contains("N"))
    levels.push_back(level(o, in));
  else
    levels = {2, 4};
  std::vector<PeriodMatrix> periods;
  if (in.contains("period_matrix")) {
    std::vector<std::vector<cplx>> pi;
    for (const auto& row : in["period_matrix"]) {
      std::vector<cplx> r;
      for (const auto& e : row) {
        if (!e.is_array() || e.size() != 2) throw ParseError("period_matrix entries are [re, im]");
        r.push_back(cplx(e[0].get<double>(), e[1].get<double>()));
      }
      pi.push_back(r);
    }
    try {
      periods.emplace_back(pi);
    } catch (const DomainError& e) {
      throw ParseError(e.what());
    }
  } else {
    periods.emplace_back(std::vector<std::vector<cplx>>{{cplx(0, 1)}});
    periods.emplace_back(std::vector<std::vector<cplx>>{{cplx(0, 2)}});
  }
  const int grid = in.contains("grid") ? static_cast<int>(get_int(in["grid"], "grid")) : 200;
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  json results = json::array();
  bool ok = true;
  for (const auto& P : periods)
    for (int N : levels) {
      const int g = P.genus();
      if (g > 2) throw GuardError("theta-check: genus > 2 not supported");
      double worst_q = 0, worst_g = 0;
      const long long dim = int_pow(N, g);
      for (int trial = 0; trial < 5; ++trial) {
        CVec z(g);
        for (auto& c : z) c = cplx(u(rng), u(rng));
        for (long long m = 0; m < dim; ++m)
          for (int k = 0; k < 2 * g; ++k)
            worst_q = std::max(worst_q, quasi_periodicity_residual(multi_index(m, g, N), P, z, N, k, 30));
      }
      auto G = theta_gram(P, N, g == 1 ? grid : std::min(grid, 14), g == 1 ? 20 : 6);
      for (long long a = 0; a < dim; ++a)
        for (long long b = 0; b < dim; ++b) worst_g = std::max(worst_g, std::abs(G[a][b] - (a == b ? 1.0 : 0.0)));
      const bool pass = worst_q < 1e-10 && worst_g < 1e-6;
      ok = ok && pass;
      json pm = json::array();
      for (int i = 0; i < g; ++i) {
        json row = json::array();
        for (int j = 0; j < g; ++j) row.push_back({P(i, j).real(), P(i, j).imag()});
        pm.push_back(row);
      }
      results.push_back({{"N", N},
                         {"period_matrix", pm},
                         {"quasi_periodicity_residual", worst_q},
                         {"gram_deviation", worst_g},
                         {"pass", pass}});
    }
  print({{"command", "theta-check"}, {"results", results}, {"pass", ok}});
  return ok ? 0 : 3;
}

int cmd_selftest(const Options& o) {
  int failed = 0;
  run_acceptance(o.seed, o.threads, [&](const CriterionResult& r) {
    std::printf("[%s] %2d %s: %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str());
    std::fflush(stdout);
    failed += !r.pass;
  });
  std::printf("%d/12 criteria passed\n", 12 - failed);
  return failed ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Abelian theta-function TQFT: closed invariants, cobordism maps, mapping class representations"};
  app.require_subcommand(1);
  Options o;
  int N = 0;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--N", N, "level (even, >= 2); overrides the input field");
    sub->add_option("--input", o.input, "input JSON file, or - for stdin");
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"exact", "float"}));
    sub->add_option("--tolerance", o.tolerance, "float output: values below this print as 0");
    sub->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "seed for randomized checks");
  };
  auto* inv = app.add_subcommand("invariant", "closed 3-manifold invariant");
  auto* cob = app.add_subcommand("cobordism", "matrix of a framed cobordism");
  auto* mcg = app.add_subcommand("mcg-rep", "representation of an extended mapping class word");
  auto* hei = app.add_subcommand("heisenberg", "Schroedinger representation matrices");
  auto* the = app.add_subcommand("theta-check", "numerical theta-function checks");
  auto* st = app.add_subcommand("selftest", "run the acceptance suite");
  for (auto* s : {inv, cob, mcg, hei, the, st}) common(s);
  hei->add_option("--genus", o.genus, "genus for the default generators");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  for (auto* s : {inv, cob, mcg, hei, the, st})
    if (s->count("--N")) o.N = N;

  try {
    if (*inv) return cmd_invariant(o);
    if (*cob) return cmd_cobordism(o);
    if (*mcg) return cmd_mcg(o);
    if (*hei) return cmd_heisenberg(o);
    if (*the) return cmd_theta(o);
    if (*st) return cmd_selftest(o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 1;
  } catch (const GuardError& e) {
    std::cerr << "guard: " << e.what() << "\n";
    return 2;
  } catch (const ConsistencyError& e) {
    std::cerr << "consistency error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
