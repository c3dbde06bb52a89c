// ekpdim: command-line front end.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "ekpdim/cover.hpp"
#include "ekpdim/error.hpp"
#include "ekpdim/exactnum.hpp"
#include "ekpdim/kronecker.hpp"
#include "ekpdim/linrep.hpp"
#include "ekpdim/orbits.hpp"
#include "ekpdim/theorems.hpp"

using namespace ekpdim;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCounterexample = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitFormat = 4;
constexpr int kExitCap = 5;
constexpr int kSchemaVersion = 1;

struct Globals {
  std::optional<long> r;
  std::string format = "human";
  unsigned jobs = 0;
  std::uint64_t seed = 0;

  bool as_json() const { return format == "json"; }
  long r_or(long fallback) const { return r.value_or(fallback); }
  unsigned workers() const { return jobs > 0 ? jobs : std::max(1u, std::thread::hardware_concurrency()); }
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

BigInt parse_int(const std::string& text) {
  BigInt v;
  const bool ok = !text.empty() && v.set_str(text, 10) == 0;
  if (!ok) throw UsageError("not an integer: '" + text + "'");
  return v;
}

json big(const BigInt& v) { return v.get_str(); }
json dim_json(const DimVector& d) { return json::array({big(d.d1), big(d.d2)}); }

json rat_list(const std::vector<BigRat>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

std::string rat_text(const std::vector<BigRat>& v) {
  std::string out = "(";
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + to_string(v[k]);
  return out + ")";
}

json envelope(const std::string& command) { return {{"schema_version", kSchemaVersion}, {"command", command}}; }

void emit(const Globals& g, const json& j, const std::string& human) {
  if (g.as_json())
    std::cout << j.dump(2) << '\n';
  else
    std::cout << human;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  out << j.dump(2) << '\n';
}

long require_r(const Globals& g, long minimum = 1) {
  if (!g.r) throw UsageError("--r is required");
  if (*g.r < minimum) throw PreconditionError("r must be at least " + std::to_string(minimum));
  return *g.r;
}

FieldSpec field_from(std::uint64_t p, bool rational) {
  if (rational) return FieldSpec::rationals();
  try {
    return FieldSpec::prime(p);
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  }
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

// ---------------------------------------------------------------- classify

int cmd_classify(const Globals& g, const std::vector<std::string>& args) {
  const long r = require_r(g);
  const DimVector d{parse_int(args.at(0)), parse_int(args.at(1))};
  const RootClass c = classify(r, d);
  const BigInt q = q_r(r, d);
  json j = envelope("classify");
  j["r"] = r;
  j["d"] = dim_json(d);
  j["class"] = to_string(c);
  j["q"] = big(q);
  std::ostringstream h;
  h << "d = " << d << ", r = " << r << "\n"
    << "class: " << to_string(c) << "\n"
    << "q = " << q.get_str() << "\n";
  if (is_root(c)) {
    j["ekp"] = ekp_dim(r, d);
    j["eip"] = eip_dim(r, d);
    j["ekp_or_eip"] = ekp_or_eip_dim(r, d);
    h << "ekp = " << yes_no(ekp_dim(r, d)) << ", eip = " << yes_no(eip_dim(r, d)) << "\n";
  } else {
    j["ekp"] = nullptr;
    j["eip"] = nullptr;
    j["ekp_or_eip"] = nullptr;
  }
  j["westwick"] = westwick_necessary(r, d);
  h << "westwick necessary condition: " << yes_no(westwick_necessary(r, d)) << "\n";
  emit(g, j, h.str());
  return kExitPass;
}

// ---------------------------------------------------------------- orbit

int cmd_orbit(const Globals& g, const std::vector<std::string>& args, std::size_t back, std::size_t fwd,
              std::optional<std::int64_t> ql, std::uint64_t cap) {
  const long r = require_r(g);
  const DimVector seed{parse_int(args.at(0)), parse_int(args.at(1))};
  if (ql && *ql < 1) throw PreconditionError("quasi-length must be at least 1");
  const OrbitReport report = orbit_report(r, seed, back, fwd, cap);
  json j = envelope("orbit");
  j["r"] = r;
  j["seed"] = dim_json(seed);
  j["q"] = big(report.q_value);
  j["delta"] = dim_json(report.boundary.delta);
  j["m"] = report.boundary.m;
  json window = json::array();
  std::ostringstream h;
  h << "orbit of " << seed << " under Phi_" << r << ", q = " << report.q_value.get_str() << "\n";
  for (const auto& e : report.window) {
    window.push_back({{"offset", e.offset}, {"dim", dim_json(e.dim)}, {"ekp", e.ekp}, {"eip", e.eip}});
    h << "  Phi^" << e.offset << ": " << e.dim << (e.ekp ? "  EKP" : "") << (e.eip ? "  EIP" : "") << "\n";
  }
  j["window"] = window;
  h << "delta = " << report.boundary.delta << "\nm = " << report.boundary.m << "\n";
  if (ql) {
    const std::int64_t w = static_cast<std::int64_t>(report.boundary.m) - *ql + 1;
    j["ql"] = *ql;
    j["w_bound"] = w;
    h << "W bound at ql = " << *ql << ": " << w << "\n";
  }
  emit(g, j, h.str());
  return kExitPass;
}

// ---------------------------------------------------------------- rep

json verdict_json(const RankVerdict& v) {
  json j{{"holds", v.holds}, {"exact", v.exact}, {"tested", v.tested}};
  j["witness"] = v.witness ? rat_list(*v.witness) : json(nullptr);
  return j;
}

std::string verdict_text(const std::string& name, const RankVerdict& v) {
  std::string out = name + " = " + yes_no(v.holds);
  if (v.witness) out += ", witness alpha = " + rat_text(*v.witness);
  if (!v.exact) out += " (randomized, not exact)";
  return out + "\n";
}

int cmd_rep_check(const Globals& g, const std::string& path) {
  const KronRep m = KronRep::from_json(read_json_file(path));
  const RankVerdict ekp = is_ekp_rep(m, g.seed);
  const RankVerdict eip = is_eip_rep(m, g.seed);
  json j = envelope("rep check");
  j["r"] = m.r();
  j["field"] = m.field().name();
  j["d"] = dim_json(m.dim());
  j["ekp"] = verdict_json(ekp);
  j["eip"] = verdict_json(eip);
  j["brick"] = end_is_brick(m);
  std::ostringstream h;
  h << "representation of dimension " << m.dim() << " over " << m.field().name() << "\n"
    << verdict_text("EKP", ekp) << verdict_text("EIP", eip) << "End one-dimensional: " << yes_no(end_is_brick(m))
    << "\n";
  emit(g, j, h.str());
  return kExitPass;
}

int cmd_rep_hom(const Globals& g, const std::string& px, const std::string& py) {
  const KronRep x = KronRep::from_json(read_json_file(px));
  const KronRep y = KronRep::from_json(read_json_file(py));
  const std::size_t hom = hom_dim(x, y);
  const BigInt ext = ext_dim(x, y);
  json j = envelope("rep hom");
  j["hom"] = hom;
  j["ext"] = big(ext);
  emit(g, j, "dim Hom = " + std::to_string(hom) + "\ndim Ext = " + ext.get_str() + "\n");
  return kExitPass;
}

int cmd_rep_xalpha(const Globals& g, const std::string& alpha_text, const FieldSpec& field, const std::string& out) {
  const long r = require_r(g, 2);
  std::vector<BigRat> alpha;
  std::stringstream ss(alpha_text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      alpha.push_back(parse_rational(item));
    } catch (const FormatError&) {
      throw UsageError("alpha entries must be rationals: '" + item + "'");
    }
  }
  const KronRep x = make_x_alpha(r, alpha, field);
  if (!out.empty()) write_json_file(out, x.to_json());
  json j = envelope("rep xalpha");
  j["alpha"] = rat_list(alpha);
  j["representation"] = x.to_json();
  if (!out.empty()) j["written"] = out;
  std::ostringstream h;
  h << "X_alpha for alpha = " << rat_text(alpha) << ", dimension " << x.dim() << " over " << field.name() << "\n";
  if (out.empty())
    h << x.to_json().dump(2) << "\n";
  else
    h << "written to " << out << "\n";
  emit(g, j, h.str());
  return kExitPass;
}

// ---------------------------------------------------------------- cover

std::string fragment_text(const CoverFragment& f) {
  std::ostringstream h;
  for (const auto& v : f.vertices)
    h << "  " << (v.parity == Parity::Source ? "source " : "sink   ") << v.id << ": dim " << v.dim.get_str() << "\n";
  for (const auto& e : f.edges) h << "  " << e.from << " -> " << e.to << " color " << e.color << "\n";
  return h.str();
}

int cmd_cover_tauinv(const Globals& g, const std::string& path, const std::string& out) {
  const CoverFragment f = CoverFragment::from_json(read_json_file(path));
  const CoverFragment t = tau_inv_dim(f);
  if (!out.empty()) write_json_file(out, t.to_json());
  json j = envelope("cover tauinv");
  j["fragment"] = t.to_json();
  j["pushdown"] = dim_json(pushdown_dim(t));
  if (!out.empty()) j["written"] = out;
  std::ostringstream h;
  h << "tau^{-1} dimension function (" << t.vertices.size() << " vertices, push-down " << pushdown_dim(t) << "):\n"
    << fragment_text(t);
  if (!out.empty()) h << "written to " << out << "\n";
  emit(g, j, h.str());
  return kExitPass;
}

int cmd_cover_pushdown(const Globals& g, const std::string& path, const FieldSpec& field) {
  const CoverFragment f = CoverFragment::from_json(read_json_file(path));
  const DimVector d = pushdown_dim(f);
  json j = envelope("cover pushdown");
  j["d"] = dim_json(d);
  std::ostringstream h;
  h << "push-down dimension " << d << "\n";
  bool has_maps = true;
  for (const auto& e : f.edges)
    if (!e.map && sgn(f.vertex(e.from).dim) > 0 && sgn(f.vertex(e.to).dim) > 0) has_maps = false;
  if (has_maps && !f.vertices.empty()) {
    const KronRep m = pushdown_rep(f, field);
    const RankVerdict ekp = is_ekp_rep(m, g.seed);
    j["representation"] = m.to_json();
    j["ekp"] = verdict_json(ekp);
    j["all_edges_injective"] = all_edges_injective(f, field);
    j["structural_maps_injective"] = in_inj(f, field);
    h << verdict_text("EKP over " + field.name(), ekp)
      << "every structural map injective: " << yes_no(in_inj(f, field)) << "\n";
  }
  emit(g, j, h.str());
  return kExitPass;
}

int cmd_cover_thinbranch(const Globals& g, const std::string& path) {
  const CoverFragment f = CoverFragment::from_json(read_json_file(path));
  const auto branch = has_thin_sink_branch(f);
  json j = envelope("cover thinbranch");
  if (branch)
    j["branch"] = {{"source", branch->source}, {"sink", branch->sink}};
  else
    j["branch"] = nullptr;
  emit(g, j,
       branch ? "thin sink branch: " + std::to_string(branch->source) + " -> " + std::to_string(branch->sink) + "\n"
              : "no thin sink branch\n");
  return kExitPass;
}

// ---------------------------------------------------------------- verify

struct VerifyOptions {
  std::string suite = "all";
  std::optional<std::int64_t> bound;
  std::uint64_t samples = 1000;
  unsigned parts = 2;
  bool timing = false;
};

const std::vector<std::string> kSuites = {"distance",      "average",    "filtration",       "descent",
                                          "inverse-shift", "maximality", "shift-identities", "aux"};

std::vector<CheckResult> run_suite(const Globals& g, const VerifyOptions& o, const std::string& suite) {
  const unsigned jobs = g.workers();
  auto rs = [&](std::vector<long> defaults) { return g.r ? std::vector<long>{*g.r} : defaults; };
  std::vector<CheckResult> out;
  if (suite == "distance")
    for (long r : rs({3, 4, 5})) out.push_back(check_distance_bound(r, o.bound.value_or(10'000), jobs));
  if (suite == "average")
    for (long r : rs({3, 4})) out.push_back(check_average_split(r, 40, o.parts, jobs));
  if (suite == "filtration")
    for (long r : rs({3})) out.push_back(check_filtration_sweep(r, 30, jobs));
  if (suite == "descent")
    for (long r : rs({3, 4, 5})) out.push_back(check_descent_step(r, o.bound.value_or(1'000), jobs));
  if (suite == "inverse-shift")
    for (long r : rs({3, 4})) out.push_back(check_inverse_shift_imaginary(r, o.bound.value_or(500), jobs));
  if (suite == "maximality")
    for (long r : rs({3, 4})) out.push_back(check_maximality_dichotomy(r, o.bound.value_or(500), jobs));
  if (suite == "shift-identities") out.push_back(check_shift_identities(g.r_or(6), o.samples, g.seed));
  if (suite == "aux") out.push_back(check_aux_tits_sweep(g.r_or(6), 50, jobs));
  return out;
}

int cmd_verify(const Globals& g, const VerifyOptions& o) {
  std::vector<std::string> suites;
  if (o.suite == "all")
    suites = kSuites;
  else if (std::find(kSuites.begin(), kSuites.end(), o.suite) != kSuites.end())
    suites = {o.suite};
  else
    throw UsageError("unknown suite '" + o.suite + "'");
  std::vector<CheckResult> results;
  for (const auto& s : suites)
    for (auto& r : run_suite(g, o, s)) results.push_back(std::move(r));

  bool all_pass = true;
  json j = envelope("verify");
  json list = json::array();
  std::ostringstream h;
  for (const auto& r : results) {
    all_pass = all_pass && r.passed();
    list.push_back(to_json(r, o.timing));
    h << (r.passed() ? "PASS " : "FAIL ") << r.name;
    if (r.r) h << " r=" << r.r;
    h << "  [" << r.range << "]  cases=" << r.cases;
    if (o.timing) h << "  " << r.elapsed.count() << "s";
    if (!r.passed()) {
      h << "  counterexample:";
      for (const auto& v : *r.counterexample) h << ' ' << v.get_str();
    }
    h << "\n";
  }
  j["results"] = list;
  j["passed"] = all_pass;
  emit(g, j, h.str());
  return all_pass ? kExitPass : kExitCounterexample;
}

// ---------------------------------------------------------------- seq

int cmd_seq(const Globals& g, std::size_t n) {
  const long r = require_r(g);
  const auto values = a_seq(r, n);
  json j = envelope("seq");
  j["r"] = r;
  json list = json::array();
  std::ostringstream h;
  for (std::size_t k = 0; k < values.size(); ++k) {
    list.push_back(big(values[k]));
    h << "A_" << (k + 1) << " = " << values[k].get_str() << "\n";
  }
  j["values"] = list;
  emit(g, j, h.str());
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equal kernels and equal images dimension vectors of generalized Kronecker quivers"};
  app.fallthrough();
  app.require_subcommand(1, 1);

  Globals g;
  app.add_option("--r", g.r, "number of arrows of the Kronecker quiver");
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"human", "json"}));
  app.add_option("--jobs", g.jobs, "worker threads for verification sweeps (0 = all cores)");
  app.add_option("--seed", g.seed, "seed for randomized steps");

  std::vector<std::string> pair;
  auto* classify_cmd = app.add_subcommand("classify", "root class, q value and EKP/EIP flags of (a, b)");
  classify_cmd->add_option("dims", pair, "a b")->expected(2)->required();

  std::vector<std::string> orbit_seed;
  std::size_t back = 3;
  std::size_t fwd = 3;
  std::optional<std::int64_t> ql;
  std::uint64_t cap = kDefaultOrbitStepCap;
  auto* orbit_cmd = app.add_subcommand("orbit", "Coxeter orbit window, delta and m of an imaginary root");
  orbit_cmd->add_option("seed", orbit_seed, "a b")->expected(2)->required();
  orbit_cmd->add_option("--back", back, "orbit steps under Phi^{-1}");
  orbit_cmd->add_option("--fwd", fwd, "orbit steps under Phi");
  orbit_cmd->add_option("--ql", ql, "quasi-length for the W bound");
  orbit_cmd->add_option("--cap", cap, "maximum orbit steps while locating delta and m");

  auto* rep_cmd = app.add_subcommand("rep", "representation-level checks");
  rep_cmd->require_subcommand(1, 1);
  std::string rep_file;
  auto* rep_check = rep_cmd->add_subcommand("check", "equal kernels / equal images tests");
  rep_check->add_option("file", rep_file)->required();
  std::string hom_x;
  std::string hom_y;
  auto* rep_hom = rep_cmd->add_subcommand("hom", "dimensions of Hom and Ext");
  rep_hom->add_option("x", hom_x)->required();
  rep_hom->add_option("y", hom_y)->required();
  std::string alpha_text;
  std::string out_path;
  std::uint64_t p = 5;
  bool rational = false;
  auto* rep_xalpha = rep_cmd->add_subcommand("xalpha", "build X_alpha");
  rep_xalpha->add_option("--alpha", alpha_text, "comma-separated coordinates")->required();
  rep_xalpha->add_option("-o,--output", out_path, "write the representation here");
  for (auto* sub : {rep_xalpha}) {
    sub->add_option("--p", p, "prime field characteristic");
    sub->add_flag("--rational", rational, "work over Q");
  }

  auto* cover_cmd = app.add_subcommand("cover", "operations on fragments of the universal cover");
  cover_cmd->require_subcommand(1, 1);
  std::string frag_file;
  auto* cover_tauinv = cover_cmd->add_subcommand("tauinv", "dimension function of tau^{-1}");
  cover_tauinv->add_option("file", frag_file)->required();
  cover_tauinv->add_option("-o,--output", out_path, "write the new fragment here");
  auto* cover_pushdown = cover_cmd->add_subcommand("pushdown", "push-down to Gamma_r");
  cover_pushdown->add_option("file", frag_file)->required();
  cover_pushdown->add_option("--p", p, "prime field characteristic for edge maps");
  cover_pushdown->add_flag("--rational", rational, "edge maps over Q");
  auto* cover_thin = cover_cmd->add_subcommand("thinbranch", "find a thin sink branch");
  cover_thin->add_option("file", frag_file)->required();

  VerifyOptions vo;
  auto* verify_cmd = app.add_subcommand("verify", "exhaustive verification sweeps");
  verify_cmd->add_option("--suite", vo.suite, "all or one of: distance average filtration descent inverse-shift "
                                              "maximality shift-identities aux");
  verify_cmd->add_option("--bound", vo.bound, "upper end of the linear sweeps");
  verify_cmd->add_option("--samples", vo.samples, "random pairs per r for the shift identities");
  verify_cmd->add_option("--parts", vo.parts, "number of parts for the average split check (2 or 3)");
  verify_cmd->add_flag("--timing", vo.timing, "report elapsed times");

  std::size_t seq_n = 10;
  auto* seq_cmd = app.add_subcommand("seq", "the sequence A_i(r)");
  seq_cmd->add_option("n", seq_n, "number of terms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*classify_cmd) return cmd_classify(g, pair);
    if (*orbit_cmd) return cmd_orbit(g, orbit_seed, back, fwd, ql, cap);
    if (*rep_check) return cmd_rep_check(g, rep_file);
    if (*rep_hom) return cmd_rep_hom(g, hom_x, hom_y);
    if (*rep_xalpha) return cmd_rep_xalpha(g, alpha_text, field_from(p, rational), out_path);
    if (*cover_tauinv) return cmd_cover_tauinv(g, frag_file, out_path);
    if (*cover_pushdown) return cmd_cover_pushdown(g, frag_file, field_from(p, rational));
    if (*cover_thin) return cmd_cover_thinbranch(g, frag_file);
    if (*verify_cmd) return cmd_verify(g, vo);
    if (*seq_cmd) return cmd_seq(g, seq_n);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const FormatError& e) {
    std::cerr << "input format: " << e.what() << "\n";
    return kExitFormat;
  } catch (const CapExceeded& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kExitCap;
  }
  return kExitUsage;
}
