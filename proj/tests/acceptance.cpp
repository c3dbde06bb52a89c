// Acceptance suite: one PASS/FAIL line per criterion. argv[1] is the CLI binary.

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "ekpdim/cover.hpp"
#include "ekpdim/error.hpp"
#include "ekpdim/exactnum.hpp"
#include "ekpdim/kronecker.hpp"
#include "ekpdim/linrep.hpp"
#include "ekpdim/orbits.hpp"
#include "ekpdim/quiver.hpp"
#include "ekpdim/theorems.hpp"

using namespace ekpdim;
using json = nlohmann::json;

namespace {

// Wall-clock limits per criterion, in seconds.
constexpr double kOrbitLimit = 1.0;
constexpr double kSpotLimit = 1.0;
constexpr double kSuiteLimit = 60.0;

std::string cli;
const std::string fixtures = EKPDIM_FIXTURES;

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct Captured {
  int status;
  std::string out;
};

Captured run(const std::string& args) {
  const std::string cmd = "\"" + cli + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

DimVector dim_of(const json& pair) {
  return {BigInt(pair.at(0).get<std::string>()), BigInt(pair.at(1).get<std::string>())};
}

std::vector<BigRat> unit(long r, std::size_t i) {
  std::vector<BigRat> e(static_cast<std::size_t>(r), BigRat(0));
  e[i] = 1;
  return e;
}

Outcome orbit_reproduction(double& seconds) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const Captured c = run("orbit --r 3 30 31 --ql 1 --format json");
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(c.status == 0, "orbit exited with " + std::to_string(c.status));
  if (!o.ok) return o;
  const json j = json::parse(c.out);
  const std::vector<DimVector> expected{{2814, 7367}, {411, 1075}, {63, 158}, {30, 31},
                                        {147, 59},    {999, 382},  {6846, 2615}};
  std::vector<DimVector> window;
  for (const auto& e : j.at("window")) window.push_back(dim_of(e.at("dim")));
  o.require(window == expected, "orbit window differs");
  o.require(j.at("q") == "-929", "q differs");
  o.require(dim_of(j.at("delta")) == DimVector{999, 382}, "delta differs");
  o.require(j.at("m") == 5, "m differs");
  o.require(j.contains("w_bound") && j.at("w_bound") == 5, "W bound differs");
  o.require(seconds < kOrbitLimit, "runtime over limit");
  return o;
}

Outcome spot_values() {
  Outcome o;
  const QuadNum L = lr(3);
  o.require(q_r(3, {30, 31}) == -929, "q(30,31)");
  o.require(q_r(3, {14, 36}) == -20, "q(14,36)");
  o.require(q_r(3, {14, 36}) + 22 == 2, "q + |14 - 36|");
  o.require(ekp_or_eip_dim(3, {14, 36}), "q + |a - b| >= 1 at (14,36)");
  o.require(floor_times_lr(3, 3) == 7, "floor(3 L_3)");
  o.require(floor_times_lr(2, 3) == 5, "floor(2 L_3)");
  o.require(quad_sign(L * BigRat(2) - BigRat(5) - BigRat(1, 2)) == -1, "sign(2 L_3 - 5 - 1/2)");
  return o;
}

Outcome verification_suite(double& seconds, unsigned jobs) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  std::vector<CheckResult> results;
  for (long r : {3, 4, 5}) results.push_back(check_distance_bound(r, 10'000, jobs));
  for (long r : {3, 4}) results.push_back(check_average_split(r, 40, 2, jobs));
  results.push_back(check_filtration_sweep(3, 30, jobs));
  for (long r : {3, 4, 5}) results.push_back(check_descent_step(r, 1'000, jobs));
  for (long r : {3, 4}) {
    results.push_back(check_inverse_shift_imaginary(r, 500, jobs));
    results.push_back(check_maximality_dichotomy(r, 500, jobs));
  }
  results.push_back(check_shift_identities(6, 1'000, 1));
  results.push_back(check_aux_tits_sweep(6, 50, jobs));
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const auto& res : results) {
    o.require(res.passed(), res.name + " r=" + std::to_string(res.r) + " has a counterexample");
    o.require(res.cases > 0 || res.name == "descent", res.name + " tested nothing");
  }
  o.require(seconds < kSuiteLimit, "runtime over limit");
  return o;
}

Outcome sum_identities() {
  Outcome o;
  for (long r = 3; r <= 6; ++r)
    for (unsigned l = 1; l <= 20; ++l) {
      o.require(verify_a_identity(r, l), "A identity r=" + std::to_string(r) + " l=" + std::to_string(l));
      o.require(verify_a_bound(r, l), "A bound r=" + std::to_string(r) + " l=" + std::to_string(l));
    }
  std::mt19937_64 rng(2024);
  int sampled = 0;
  while (sampled < 100) {
    const long r = 3 + static_cast<long>(rng() % 4);
    const DimVector d{static_cast<long>(rng() % 2000) + 1, static_cast<long>(rng() % 2000) + 1};
    if (classify(r, d) != RootClass::Imaginary) continue;
    ++sampled;
    for (unsigned l = 1; l <= 10; ++l) o.require(verify_sum_identity(r, d, l), "sum identity");
  }
  return o;
}

Outcome root_cross_oracle() {
  Outcome o;
  for (long r = 2; r <= 5; ++r) {
    const Quiver q = Quiver::kronecker(r);
    for (long a = 0; a <= 200; ++a)
      for (long b = 0; b <= 200; ++b) {
        const RootClass c = classify(r, {a, b});
        const RootType t = positive_root_type(q, {BigInt(a), BigInt(b)});
        const RootType expected = is_real(c) ? RootType::Real
                                  : c == RootClass::Imaginary ? RootType::Imaginary
                                                              : RootType::NotRoot;
        o.require(t == expected, "disagreement at r=" + std::to_string(r) + " (" + std::to_string(a) + "," +
                                     std::to_string(b) + ")");
        if (t != RootType::NotRoot) o.require(q_r(r, {a, b}) <= 1, "Kac bound violated");
      }
  }
  return o;
}

Outcome representation_engine() {
  Outcome o;
  auto load = [](const std::string& name) {
    std::ifstream in(fixtures + "/" + name);
    return KronRep::from_json(json::parse(in));
  };
  const auto left = is_ekp_rep(load("intro_left.json"));
  o.require(left.holds && left.exact, "left intro fixture is not EKP");
  const KronRep right_rep = load("intro_right.json");
  const auto right = is_ekp_rep(right_rep);
  o.require(!right.holds && right.witness.has_value(), "right intro fixture has no witness");
  if (right.witness)
    o.require(rank(specialize(right_rep, *right.witness), right_rep.field()) < right_rep.d1(), "witness is not a kernel");

  int indecomposable = 0;
  for (const auto& c : enumerate_small(3, 1, 2, 2))
    if (c.indecomposable) {
      ++indecomposable;
      o.require(!is_ekp_rep(c.representative).holds, "indecomposable (1,2) class with equal kernels");
    }
  o.require(indecomposable == 7, "expected 7 indecomposable classes, found " + std::to_string(indecomposable));

  const FieldSpec f3 = FieldSpec::prime(3);
  const auto points = projective_points(3, 3);
  std::vector<KronRep> xs;
  for (const auto& alpha : points) xs.push_back(make_x_alpha(3, alpha, f3));
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t d1 = 1 + seed % 3;
    const KronRep m = random_rep(3, d1, d1 + (seed / 3) % 4, f3, seed);
    for (std::size_t k = 0; k < points.size(); ++k) {
      const bool hom_zero = hom_dim(xs[k], m) == 0;
      const bool full_rank = rank(specialize(m, points[k]), f3) == m.d1();
      o.require(hom_zero == full_rank, "Hom criterion fails for seed " + std::to_string(seed));
    }
    if (is_ekp_rep(m).holds) o.require(westwick_necessary(3, m.dim()), "EKP rep violates Westwick");
  }
  return o;
}

Outcome cover_module() {
  Outcome o;
  auto load = [](const std::string& name) {
    std::ifstream in(fixtures + "/" + name);
    return CoverFragment::from_json(json::parse(in));
  };
  const CoverFragment shifted = tau_inv_dim(load("star_2_111.json"));
  std::map<std::pair<int, long>, int> table;  // (is_sink, dim) -> count
  for (const auto& v : shifted.vertices) ++table[{v.parity == Parity::Sink, v.dim.get_si()}];
  o.require(shifted.vertex(0).dim == 1, "center dimension");
  o.require(table == std::map<std::pair<int, long>, int>{{{0, 1}, 7}, {{1, 1}, 12}, {{1, 2}, 3}}, "dimension table");

  int commuted = 0;
  int persisted = 0;
  for (std::uint64_t seed = 0; seed < 5000 && (commuted < 50 || persisted < 50); ++seed) {
    const long r = 3 + static_cast<long>(seed % 2);
    const CoverFragment f = random_fragment(r, 2 + seed % 9, 1 + static_cast<long>(seed % 3), seed);
    CoverFragment out;
    try {
      out = tau_inv_dim(f);
    } catch (const PreconditionError&) {
      continue;
    }
    ++commuted;
    o.require(pushdown_dim(out) == coxeter_inv(r, pushdown_dim(f)), "push-down does not commute");
    if (has_thin_sink_branch(f)) {
      ++persisted;
      o.require(has_thin_sink_branch(out).has_value(), "thin sink branch lost");
    }
  }
  o.require(commuted >= 50 && persisted >= 50, "too few random fragments");

  const FieldSpec f5 = FieldSpec::prime(5);
  const CoverFragment thin = load("thin_star.json");
  o.require(pushdown_dim(thin) == DimVector{1, 3}, "thin star push-down dimension");
  o.require(is_ekp_rep(pushdown_rep(thin, f5)).holds, "thin star push-down is not EKP");
  const CoverFragment xi = load("x_i.json");
  o.require(pushdown_dim(xi) == DimVector{1, 2}, "X_i push-down dimension");
  o.require(!is_ekp_rep(pushdown_rep(xi, f5)).holds, "X_i push-down is EKP");
  o.require(hom_dim(pushdown_rep(xi, f5), make_x_alpha(3, unit(3, 0), f5)) == 1, "X_i is not X_{e_1}");
  return o;
}

Outcome determinism() {
  Outcome o;
  const std::string fx = fixtures + "/";
  const std::vector<std::string> commands{
      "classify --r 3 30 31",
      "classify --r 3 1 3",
      "orbit --r 3 30 31 --ql 1",
      "orbit --r 4 5 7 --back 5 --fwd 5",
      "rep check " + fx + "intro_left.json",
      "rep check " + fx + "intro_right.json",
      "rep hom " + fx + "xalpha_e1.json " + fx + "intro_left.json",
      "--r 3 rep xalpha --alpha 1,2,3",
      "--r 4 rep xalpha --alpha 0,1,1,2 --rational",
      "cover tauinv " + fx + "star_2_111.json",
      "cover pushdown " + fx + "thin_star.json",
      "cover pushdown " + fx + "x_i.json",
      "cover thinbranch " + fx + "thin_star.json",
      "verify --suite distance --r 3 --bound 2000",
      "verify --suite shift-identities --samples 200 --seed 7",
      "--jobs 3 verify --suite all --r 3 --bound 200",
      "--r 5 seq 12",
  };
  for (const auto& cmd : commands) {
    const Captured a = run(cmd + " --format json");
    const Captured b = run(cmd + " --format json");
    o.require(a.status == 0, "'" + cmd + "' exited with " + std::to_string(a.status));
    o.require(a.status == b.status && a.out == b.out, "'" + cmd + "' is not reproducible");
    o.require(json::accept(a.out), "'" + cmd + "' did not emit JSON");
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path to ekpdim>\n";
    return 2;
  }
  cli = argv[1];
  const unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  int failures = 0;
  auto report = [&](int id, const std::string& name, const std::function<Outcome()>& body) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = body();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.ok ? "PASS" : "FAIL") << "  " << id << "  " << name;
    std::printf("  (%.2fs)", s);
    if (!o.ok) std::cout << "  " << o.detail;
    std::cout << std::endl;
    failures += !o.ok;
  };
  double orbit_s = 0;
  double suite_s = 0;
  report(1, "orbit reproduction for (30,31), r = 3", [&] { return orbit_reproduction(orbit_s); });
  report(2, "quadratic-form spot values", [&] {
    const auto start = std::chrono::steady_clock::now();
    Outcome o = spot_values();
    o.require(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() < kSpotLimit,
              "runtime over limit");
    return o;
  });
  report(3, "theorem verification suite", [&] { return verification_suite(suite_s, jobs); });
  report(4, "A-sequence and sum identities", sum_identities);
  report(5, "root classification cross-oracle", root_cross_oracle);
  report(6, "representation engine", representation_engine);
  report(7, "cover module", cover_module);
  report(8, "CLI determinism", determinism);
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
