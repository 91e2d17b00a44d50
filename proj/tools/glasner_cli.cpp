// Command-line surface for the library: exponential sums and their
// envelopes, modulus decomposition, power-full enumeration, torus density
// certification, dilation search and the bound calculators. Output is a
// single JSON record (sorted keys, deterministic); tabular subcommands can
// emit CSV instead.
//
// Exit codes: 0 success, 2 invalid input, 3 budget exhausted.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "glasner/glasner.hpp"

namespace {

using nlohmann::json;

std::uint64_t term_budget_from_env() {
  const char* v = std::getenv("GLASNER_BUDGET");
  if (v == nullptr) return glasner::kDefaultTermBudget;
  const std::string text(v);
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("GLASNER_BUDGET: expected a positive integer, got \"" +
                                text + "\"");
  }
  return std::stoull(text);
}

std::vector<long long> parse_coeff_list(const std::string& text) {
  std::vector<long long> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    if (item.empty() || item.find_first_not_of("+-0123456789") != std::string::npos) {
      throw std::invalid_argument("--f: expected comma-separated integers, got \"" + text +
                                  "\"");
    }
    try {
      out.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw std::invalid_argument("--f: coefficient \"" + item + "\" does not fit in 64 bits");
    }
    pos = comma + 1;
  }
  return out;
}

json rat_json(const glasner::Rat& r) { return r.str(); }

json point_json(const glasner::TorusPoint& p) {
  json out = json::array();
  for (const auto& c : p.coords) out.push_back(rat_json(c));
  return out;
}

class RecordPrinter {
 public:
  explicit RecordPrinter(bool timing) : timing_(timing) {}

  void start() { begin_ = std::chrono::steady_clock::now(); }

  void emit(const std::string& command, json inputs, json results) const {
    json record{{"command", command},
                {"inputs", std::move(inputs)},
                {"results", std::move(results)}};
    if (timing_) {
      const auto end = std::chrono::steady_clock::now();
      record["timing_ms"] =
          std::chrono::duration<double, std::milli>(end - begin_).count();
    }
    std::cout << record.dump(2) << "\n";
  }

 private:
  bool timing_ = false;
  std::chrono::steady_clock::time_point begin_;
};

json decomposition_json(const glasner::ModulusDecomposition& dec) {
  json out;
  if (dec.degree == 2) {
    out["q2"] = dec.cube_free;
    out["q2full"] = dec.full;
  } else {
    out["q2"] = dec.cube_free;
    for (const auto& [i, v] : dec.exact_power) out["q" + std::to_string(i)] = v;
    out["q" + std::to_string(dec.degree)] = dec.full;
  }
  return out;
}

json extremal_row_json(std::uint64_t q, int e, const glasner::ExtremalResult& r) {
  json row{{"q", q},
           {"e", e},
           {"max_abs", r.max_abs},
           {"argmax", r.argmax},
           {"evaluated", r.evaluated},
           {"hua", r.report.hua},
           {"refined", r.report.refined}};
  if (r.report.weil) row["weil"] = *r.report.weil;
  return row;
}

std::string join_coeffs(const std::vector<long long>& f) {
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i > 0) out += ';';
    out += std::to_string(f[i]);
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Complete rational exponential sums, refined bound envelopes, and "
               "eps-dense dilation search on the d-torus"};
  app.require_subcommand(1);

  bool timing = false;
  int threads = 1;
  app.add_flag("--timing", timing, "Append timing_ms to the output record");
  app.add_option("--threads", threads, "Worker count for parallelizable subcommands")
      ->check(CLI::Range(1, 256));

  // ------------------------------------------------------------------ expsum
  auto* expsum = app.add_subcommand("expsum", "Complete rational exponential sums");
  expsum->require_subcommand(1);

  struct {
    int e = 1;
    std::uint64_t q = 1;
    std::string coeffs;
    std::string method = "auto";
  } ev;
  auto* expsum_eval = expsum->add_subcommand("eval", "Evaluate S_{e,q}(f) and its envelopes");
  expsum_eval->add_option("--e", ev.e, "Degree e >= 1")->required()->check(CLI::Range(1, 64));
  expsum_eval->add_option("--q", ev.q, "Modulus q >= 1")->required();
  expsum_eval->add_option("--f", ev.coeffs, "Coefficients f_1,...,f_e (comma separated)")
      ->required();
  expsum_eval->add_option("--method", ev.method, "auto | direct | crt")
      ->check(CLI::IsMember({"auto", "direct", "crt"}));

  struct {
    std::uint64_t q = 1;
    std::uint64_t q_to = 0;
    int e = 1;
    std::string mode = "exhaustive";
    std::uint64_t samples = 10000;
    std::uint64_t seed = 0;
    std::string format = "json";
  } ex;
  auto* expsum_extremal =
      expsum->add_subcommand("extremal", "Maximal |S_{e,q}(f)| over q-primitive f");
  expsum_extremal->add_option("--q", ex.q, "Modulus (sweep start)")->required();
  expsum_extremal->add_option("--q-to", ex.q_to, "Optional sweep end (inclusive)");
  expsum_extremal->add_option("--e", ex.e, "Degree e >= 1")->required()->check(CLI::Range(1, 64));
  expsum_extremal->add_option("--mode", ex.mode, "exhaustive | random")
      ->check(CLI::IsMember({"exhaustive", "random"}));
  expsum_extremal->add_option("--samples", ex.samples, "Random-mode sample count");
  expsum_extremal->add_option("--seed", ex.seed, "Random-mode seed (default 0)");
  expsum_extremal->add_option("--format", ex.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));

  // ----------------------------------------------------------------- modulus
  auto* modulus = app.add_subcommand("modulus", "Power-structure split of a modulus");
  modulus->require_subcommand(1);
  struct {
    std::uint64_t q = 1;
    int e = 2;
  } md;
  auto* modulus_decompose =
      modulus->add_subcommand("decompose", "Split q into cube-free / i-full / e-full parts");
  modulus_decompose->add_option("--q", md.q, "Modulus q >= 1")->required();
  modulus_decompose->add_option("--e", md.e, "Degree e >= 2")->required()->check(CLI::Range(2, 64));

  // --------------------------------------------------------------- powerfull
  auto* powerfull = app.add_subcommand("powerfull", "nu-th power full integers");
  powerfull->require_subcommand(1);
  struct {
    int nu = 2;
    std::uint64_t lo = 1;
    std::uint64_t hi = 1;
    std::string format = "json";
  } pf;
  auto* powerfull_list = powerfull->add_subcommand("list", "Enumerate nu-full integers in [lo, hi]");
  powerfull_list->add_option("--nu", pf.nu, "nu >= 2")->required()->check(CLI::Range(2, 64));
  powerfull_list->add_option("--lo", pf.lo, "Range start (default 1)");
  powerfull_list->add_option("--hi", pf.hi, "Range end")->required();
  powerfull_list->add_option("--format", pf.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  auto* powerfull_count = powerfull->add_subcommand("count", "Count nu-full integers in [lo, hi]");
  powerfull_count->add_option("--nu", pf.nu, "nu >= 2")->required()->check(CLI::Range(2, 64));
  powerfull_count->add_option("--lo", pf.lo, "Range start (default 1)");
  powerfull_count->add_option("--hi", pf.hi, "Range end")->required();

  // ------------------------------------------------------------------- torus
  auto* torus = app.add_subcommand("torus", "Rational point sets on the torus");
  torus->require_subcommand(1);
  struct {
    std::string set_path;
    double eps = 0.0;
    double mesh = 0.0;
  } td;
  auto* torus_density = torus->add_subcommand("density", "Certify eps-density of a point set");
  torus_density->add_option("--set", td.set_path, "Point set JSON file")->required();
  torus_density->add_option("--eps", td.eps, "Density threshold")->required();
  torus_density->add_option("--mesh", td.mesh, "Initial probe spacing (default eps/4)");

  // ----------------------------------------------------------------- glasner
  auto* glasner_cmd = app.add_subcommand("glasner", "Dilation machinery");
  glasner_cmd->require_subcommand(1);

  struct {
    std::string matrix_path;
    std::string set_path;
    double eps = 0.0;
    long long n_max = 1;
  } gs;
  auto* glasner_search_cmd =
      glasner_cmd->add_subcommand("search", "Minimal n with A(n)X eps-dense");
  glasner_search_cmd->add_option("--matrix", gs.matrix_path, "Matrix JSON file")->required();
  glasner_search_cmd->add_option("--set", gs.set_path, "Point set JSON file")->required();
  glasner_search_cmd->add_option("--eps", gs.eps, "Density threshold")->required();
  glasner_search_cmd->add_option("--nmax", gs.n_max, "Scan n = 1..nmax")->required();

  struct {
    std::string set_path;
  } gh;
  auto* glasner_hq = glasner_cmd->add_subcommand("hq", "Pair-denominator histogram h_q");
  glasner_hq->add_option("--set", gh.set_path, "Point set JSON file")->required();

  struct {
    std::string matrix_path;
    std::string set_path;
    double eps = 0.0;
    std::string strategy = "first-pair";
  } gf;
  auto* glasner_functional =
      glasner_cmd->add_subcommand("functional", "Both sides of the bad-set inequality");
  glasner_functional->add_option("--matrix", gf.matrix_path, "Matrix JSON file")->required();
  glasner_functional->add_option("--set", gf.set_path, "Point set JSON file")->required();
  glasner_functional->add_option("--eps", gf.eps, "Density threshold")->required();
  glasner_functional->add_option("--strategy", gf.strategy, "first-pair | max-over-pairs")
      ->check(CLI::IsMember({"first-pair", "max-over-pairs"}));

  struct {
    std::string matrix_path;
    int box = 8;
  } gc;
  auto* glasner_check =
      glasner_cmd->add_subcommand("check-matrix", "Bounded nondegeneracy scan");
  glasner_check->add_option("--matrix", gc.matrix_path, "Matrix JSON file")->required();
  glasner_check->add_option("--box", gc.box, "Scan u, v in [-box, box]^d (default 8)")
      ->check(CLI::Range(1, 64));

  // ------------------------------------------------------------------ bounds
  auto* bounds = app.add_subcommand("bounds", "Threshold envelopes");
  bounds->require_subcommand(1);
  struct {
    int d = 1;
    int e = 2;
    double big_h = 1.0;
    double eps = 0.5;
    double c = 1.0;
  } bk;
  auto* bounds_k = bounds->add_subcommand("k", "Prior and improved threshold envelopes");
  bounds_k->add_option("--d", bk.d, "Dimension d >= 1")->required()->check(CLI::Range(1, 64));
  bounds_k->add_option("--e", bk.e, "Degree e >= 2")->required()->check(CLI::Range(2, 64));
  bounds_k->add_option("--H", bk.big_h, "Coefficient height H >= 1")->required();
  bounds_k->add_option("--eps", bk.eps, "0 < eps <= 1")->required();
  bounds_k->add_option("--C", bk.c, "Constant in R = C H eps^{-2de-1} (default 1)");

  struct {
    int d = 1;
    int e = 2;
    double big_h = 1.0;
    double eps = 0.5;
    double big_r = 1.0;
    double k = 1.0;
  } bp;
  auto* bounds_pipeline =
      bounds->add_subcommand("pipeline", "Numeric values of the S1/S2 split");
  bounds_pipeline->add_option("--d", bp.d, "Dimension d >= 1")->required()->check(CLI::Range(1, 64));
  bounds_pipeline->add_option("--e", bp.e, "Degree e >= 2")->required()->check(CLI::Range(2, 64));
  bounds_pipeline->add_option("--H", bp.big_h, "Coefficient height H >= 1")->required();
  bounds_pipeline->add_option("--eps", bp.eps, "0 < eps <= 1")->required();
  bounds_pipeline->add_option("--R", bp.big_r, "Cut point R > 0")->required();
  bounds_pipeline->add_option("--k", bp.k, "Set size k > 0")->required();

  // The global --timing/--threads flags may also be given after a
  // subcommand; unmatched flags still bubble to the top and are rejected.
  for (auto* sub : app.get_subcommands(nullptr)) {
    sub->fallthrough();
    for (auto* nested : sub->get_subcommands(nullptr)) nested->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help text or the parse error
    return code == 0 ? 0 : 2;
  }

  RecordPrinter printer(timing);
  printer.start();

  if (expsum_eval->parsed()) {
    glasner::SumSpec spec{ev.e, ev.q, parse_coeff_list(ev.coeffs)};
    spec.validate();
    std::complex<double> value;
    if (ev.method == "direct") {
      value = glasner::eval_direct(spec);
    } else if (ev.method == "crt") {
      value = glasner::eval_crt(spec, glasner::factorize(spec.modulus));
    } else {
      value = glasner::eval_sum(spec);
    }
    json results{{"real", value.real()},
                 {"imag", value.imag()},
                 {"abs", std::abs(value)},
                 {"content", glasner::q_content(spec.coeffs, spec.modulus)},
                 {"reduced_degree", glasner::reduced_degree(spec.coeffs, spec.modulus)}};
    if (spec.degree >= 2) {
      results["hua"] = glasner::hua_bound(spec.modulus, spec.degree);
      results["refined"] =
          glasner::refined_bound(glasner::decompose_modulus(spec.modulus, spec.degree));
    }
    if (const auto weil = glasner::weil_bound(spec)) results["weil"] = *weil;
    printer.emit("expsum eval",
                 json{{"e", ev.e}, {"q", ev.q}, {"f", spec.coeffs}, {"method", ev.method}},
                 results);
    return 0;
  }

  if (expsum_extremal->parsed()) {
    const std::uint64_t q_end = ex.q_to == 0 ? ex.q : ex.q_to;
    if (q_end < ex.q) throw std::invalid_argument("--q-to must be >= --q");
    std::vector<std::pair<std::uint64_t, glasner::ExtremalResult>> rows;
    for (std::uint64_t q = ex.q; q <= q_end; ++q) {
      rows.emplace_back(q, ex.mode == "exhaustive"
                               ? glasner::extremal_search_exhaustive(q, ex.e)
                               : glasner::extremal_search_random(q, ex.e, ex.samples, ex.seed));
    }
    if (ex.format == "csv") {
      std::cout << "q,e,max_abs,argmax,hua,refined,evaluated\n";
      for (const auto& [q, r] : rows) {
        std::cout << q << ',' << ex.e << ',' << r.max_abs << ',' << join_coeffs(r.argmax)
                  << ',' << r.report.hua << ',' << r.report.refined << ',' << r.evaluated
                  << "\n";
      }
      return 0;
    }
    json out = json::array();
    for (const auto& [q, r] : rows) out.push_back(extremal_row_json(q, ex.e, r));
    printer.emit("expsum extremal",
                 json{{"q", ex.q},
                      {"q_to", q_end},
                      {"e", ex.e},
                      {"mode", ex.mode},
                      {"samples", ex.samples},
                      {"seed", ex.seed}},
                 json{{"rows", out}});
    return 0;
  }

  if (modulus_decompose->parsed()) {
    const auto dec = glasner::decompose_modulus(md.q, md.e);
    json results = decomposition_json(dec);
    results["hua"] = glasner::hua_bound(md.q, md.e);
    results["refined"] = glasner::refined_bound(dec);
    printer.emit("modulus decompose", json{{"q", md.q}, {"e", md.e}}, results);
    return 0;
  }

  if (powerfull_list->parsed() || powerfull_count->parsed()) {
    const auto set = glasner::enumerate_power_full(pf.nu, pf.lo, pf.hi);
    const double normalized = static_cast<double>(set.members.size()) /
                              std::pow(static_cast<double>(pf.hi), 1.0 / pf.nu);
    if (powerfull_list->parsed()) {
      if (pf.format == "csv") {
        std::cout << "member\n";
        for (const auto m : set.members) std::cout << m << "\n";
        return 0;
      }
      printer.emit("powerfull list", json{{"nu", pf.nu}, {"lo", pf.lo}, {"hi", pf.hi}},
                   json{{"count", set.members.size()},
                        {"normalized", normalized},
                        {"members", set.members}});
    } else {
      printer.emit("powerfull count", json{{"nu", pf.nu}, {"lo", pf.lo}, {"hi", pf.hi}},
                   json{{"count", set.members.size()}, {"normalized", normalized}});
    }
    return 0;
  }

  if (torus_density->parsed()) {
    const auto s = glasner::load_point_set(td.set_path);
    if (!(td.eps > 0.0)) throw std::invalid_argument("--eps must be positive");
    double mesh = td.mesh > 0.0 ? td.mesh : td.eps / 4.0;
    glasner::DensityCertificate cert;
    int rounds = 0;
    for (;; ++rounds) {
      cert = glasner::is_eps_dense(s, td.eps, mesh);
      if (cert.verdict != glasner::Verdict::Unknown || rounds >= glasner::kMaxMeshRefinements) {
        break;
      }
      mesh /= 2.0;
    }
    json results{{"verdict", glasner::to_string(cert.verdict)},
                 {"worst_distance", cert.worst_distance},
                 {"mesh", cert.mesh},
                 {"rounds", rounds}};
    if (cert.covering_radius) {
      results["covering_radius"] = rat_json(*cert.covering_radius);
      results["covering_radius_value"] = cert.covering_radius->to_double();
    }
    if (cert.witness) results["witness"] = point_json(*cert.witness);
    printer.emit("torus density",
                 json{{"set", td.set_path}, {"eps", td.eps}, {"mesh", mesh}}, results);
    return 0;
  }

  if (glasner_search_cmd->parsed()) {
    const auto a = glasner::load_poly_matrix(gs.matrix_path);
    const auto s = glasner::load_point_set(gs.set_path);
    const auto result = glasner::glasner_search(a, s, gs.eps, gs.n_max, threads);
    json trace = json::array();
    for (const auto& row : result.trace) {
      json r{{"n", row.n},
             {"verdict", glasner::to_string(row.verdict)},
             {"distance", row.distance},
             {"support", row.support}};
      if (row.radius) r["covering_radius"] = rat_json(*row.radius);
      trace.push_back(std::move(r));
    }
    json results{{"minimal_n", result.minimal_n ? json(*result.minimal_n) : json(nullptr)},
                 {"unknown_present", result.unknown_present},
                 {"trace", trace}};
    printer.emit("glasner search",
                 json{{"matrix", gs.matrix_path},
                      {"set", gs.set_path},
                      {"eps", gs.eps},
                      {"nmax", gs.n_max}},
                 results);
    return 0;
  }

  if (glasner_hq->parsed()) {
    const auto s = glasner::load_point_set(gh.set_path);
    const auto h = glasner::hq_histogram(s);
    json entries = json::array();
    for (const auto& [q, count] : h.entries) entries.push_back(json::array({q, count}));
    printer.emit("glasner hq", json{{"set", gh.set_path}},
                 json{{"k", h.k}, {"total", h.k * h.k}, {"entries", entries}});
    return 0;
  }

  if (glasner_functional->parsed()) {
    const auto a = glasner::load_poly_matrix(gf.matrix_path);
    const auto s = glasner::load_point_set(gf.set_path);
    const auto strategy = gf.strategy == "first-pair" ? glasner::BVectorStrategy::FirstPair
                                                      : glasner::BVectorStrategy::MaxOverPairs;
    const auto report = glasner::bad_set_functional(s, a, gf.eps, strategy,
                                                    term_budget_from_env());
    json rows = json::array();
    for (const auto& row : report.rows) {
      rows.push_back(json{{"q", row.q}, {"h_q", row.h_q}, {"b", row.b}, {"sum_abs", row.sum_abs}});
    }
    printer.emit("glasner functional",
                 json{{"matrix", gf.matrix_path},
                      {"set", gf.set_path},
                      {"eps", gf.eps},
                      {"strategy", gf.strategy}},
                 json{{"lhs", report.lhs},
                      {"rhs", report.rhs},
                      {"sum_term", report.sum_term},
                      {"trailing_term", report.trailing_term},
                      {"M", report.box_m},
                      {"rows", rows}});
    return 0;
  }

  if (glasner_check->parsed()) {
    const auto a = glasner::load_poly_matrix(gc.matrix_path);
    const auto report = glasner::check_nondegenerate(a, gc.box);
    json results{{"degree", report.degree},
                 {"height", report.height},
                 {"constant_terms_zero", report.constant_terms_zero},
                 {"box", report.box}};
    if (report.witness) {
      results["witness"] = json{{"u", report.witness->first}, {"v", report.witness->second}};
    } else {
      results["witness"] = nullptr;
    }
    printer.emit("glasner check-matrix", json{{"matrix", gc.matrix_path}, {"box", gc.box}},
                 results);
    return 0;
  }

  if (bounds_k->parsed()) {
    json results{{"prior", glasner::k_bound_prior(bk.d, bk.e, bk.big_h, bk.eps)},
                 {"new", glasner::k_bound_new(bk.d, bk.e, bk.big_h, bk.eps)},
                 {"r_opt", glasner::r_opt(bk.d, bk.e, bk.big_h, bk.eps, bk.c)},
                 {"M", static_cast<long long>(std::floor(bk.d / bk.eps))}};
    printer.emit("bounds k",
                 json{{"d", bk.d}, {"e", bk.e}, {"H", bk.big_h}, {"eps", bk.eps}, {"C", bk.c}},
                 results);
    return 0;
  }

  if (bounds_pipeline->parsed()) {
    const auto report =
        glasner::proof_pipeline_report(bp.d, bp.e, bp.big_h, bp.eps, bp.big_r, bp.k);
    printer.emit("bounds pipeline",
                 json{{"d", bp.d},
                      {"e", bp.e},
                      {"H", bp.big_h},
                      {"eps", bp.eps},
                      {"R", bp.big_r},
                      {"k", bp.k}},
                 json{{"M", report.box_m},
                      {"s1_envelope", report.s1_envelope},
                      {"s2_envelope", report.s2_envelope},
                      {"trailing_term", report.trailing_term},
                      {"combined", report.combined}});
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const glasner::budget_error& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
