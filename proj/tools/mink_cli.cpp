// Command-line front end: classify events/pairs/lines/maps, certify
// candidate transformations against translated hyperboloids or forward
// shells, decompose maps, run the property suites, emit witness
// hyperboloids and render scene figures.
//
// Exit codes: 0 affirmative/PASS, 1 negative/REFUTED, 2 usage or input
// error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mink/certify.hpp"
#include "mink/json_io.hpp"
#include "mink/svg.hpp"

namespace {

using namespace mink;

struct Options {
  int n = 3;
  std::string backend = "rational";
  std::uint64_t seed = 0;
  long trials = 1000;
  int e_min = -8;
  int e_max = 8;
  double tolerance = kDefaultTolerance;
  std::string out;
  std::string input;
  std::string surface = "hyperboloid";
  std::string suite = "all";
  int witness_e = 0;
};

void emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream f(opt.out);
  if (!f) fail(Errc::parse_error, "cannot write '" + opt.out + "'");
  f << text << "\n";
}

void emit_json(const Options& opt, const json& doc) {
  emit(opt, doc.dump(2));
}

int run_classify(const Options& opt) {
  json j = load_json_file(opt.input);
  std::string type = j.value("type", std::string());
  std::string scalar = file_scalar_kind(j);
  auto classify_with = [&](auto tag) -> json {
    using S = decltype(tag);
    double tol = opt.tolerance;
    if (type == "event")
      return json{{"type", "event"},
                  {"result", to_string(classify_vector(
                                 vec_from_json<S>(j.at("event")), tol))}};
    if (type == "pair")
      return json{{"type", "pair"},
                  {"result", to_string(classify_pair(
                                 vec_from_json<S>(j.at("events")[0]),
                                 vec_from_json<S>(j.at("events")[1]), tol))}};
    if (type == "line")
      return json{{"type", "line"},
                  {"result", to_string(classify_line(line_from_json<S>(j), tol))}};
    if (type == "map")
      return json{{"type", "map"},
                  {"result", to_string(classify_transform(
                                 affine_from_json<S>(j), tol))}};
    fail(Errc::parse_error,
         "input \"type\" must be event, pair, line or map");
  };
  json result = scalar == "rational" ? classify_with(Rational())
                                     : classify_with(double());
  std::cerr << result["result"].get<std::string>() << "\n";
  emit_json(opt, result);
  return 0;
}

template <class S>
Report<S> certify_dispatch(const Options& opt, const CandidateMap<S>& f,
                           int n) {
  if (opt.surface == "hyperboloid")
    return certify_hyperboloid_preservation(f, n, opt.trials, opt.seed,
                                            opt.tolerance);
  if (opt.surface == "forward")
    return certify_forward_preservation(f, n, opt.trials, opt.seed,
                                        opt.tolerance);
  if (opt.surface == "corollary")
    return check_corollary(f, opt.e_min, opt.e_max, n, opt.trials, opt.seed,
                           opt.tolerance);
  fail(Errc::parse_error,
       "--surface must be hyperboloid, forward or corollary");
}

int run_certify(const Options& opt) {
  json j = load_json_file(opt.input);
  std::string scalar = file_scalar_kind(j);
  json doc;
  Verdict verdict;
  if (scalar == "rational") {
    auto f = CandidateMap<Rational>::affine(affine_from_json<Rational>(j));
    int n = static_cast<int>(f.affine_form()->dim()) - 1;
    Report<Rational> r = certify_dispatch(opt, f, n);
    verdict = r.verdict;
    doc = report_to_json(r);
  } else {
    auto f = CandidateMap<double>::affine(affine_from_json<double>(j));
    int n = static_cast<int>(f.affine_form()->dim()) - 1;
    Report<double> r = certify_dispatch(opt, f, n);
    verdict = r.verdict;
    doc = report_to_json(r);
  }
  doc["note"] = "PASS is sampling-based evidence, not a proof";
  std::cerr << doc["verdict"].get<std::string>() << "\n";
  emit_json(opt, doc);
  return verdict == Verdict::Pass ? 0 : 1;
}

int run_decompose(const Options& opt) {
  json j = load_json_file(opt.input);
  std::string scalar = file_scalar_kind(j);
  try {
    json doc;
    if (scalar == "rational") {
      AffineMap<Rational> f = affine_from_json<Rational>(j);
      try {
        Decomposition<Rational> d = decompose(f, opt.tolerance);
        doc = decomposition_to_json(d, scalar_to_json(rat(0)));
      } catch (const MinkError& e) {
        if (e.code() != Errc::irrational_square_root) throw;
        // irrational dilation factor: deliver the factors in float64
        AffineMap<double> fd = to_double_map(f);
        Decomposition<double> d = decompose(fd, opt.tolerance);
        AffineMap<double> g = recompose(d);
        double res = std::max((g.A - fd.A).cwiseAbs().maxCoeff(),
                              (g.b - fd.b).cwiseAbs().maxCoeff());
        doc = decomposition_to_json(d, json(res));
        doc["scalar"] = "float64";
      }
    } else {
      AffineMap<double> f = affine_from_json<double>(j);
      Decomposition<double> d = decompose(f, opt.tolerance);
      AffineMap<double> g = recompose(d);
      double res = std::max((g.A - f.A).cwiseAbs().maxCoeff(),
                            (g.b - f.b).cwiseAbs().maxCoeff());
      doc = decomposition_to_json(d, json(res));
    }
    emit_json(opt, doc);
    return 0;
  } catch (const MinkError& e) {
    if (e.code() == Errc::not_in_extended_group ||
        e.code() == Errc::residual_not_identity) {
      std::cerr << "not decomposable: " << e.what() << "\n";
      return 1;
    }
    throw;
  }
}

int run_prove(const Options& opt) {
  std::vector<std::string> names;
  if (opt.suite == "all") {
    for (const auto& [name, fn] : suite_registry()) names.push_back(name);
  } else {
    names.push_back(opt.suite);
  }
  json all = json::array();
  bool ok = true;
  std::printf("%-22s %-6s %-10s %-8s %s\n", "suite", "n", "verdict", "trials",
              "elapsed_ms");
  for (const auto& name : names) {
    SuiteReport r = run_property_suite(name, opt.n, opt.trials, opt.seed);
    std::printf("%-22s %-6d %-10s %-8ld %.1f\n", name.c_str(), opt.n,
                to_string(r.verdict), r.trials, r.elapsed_ms);
    all.push_back(report_to_json(r));
    ok = ok && r.verdict == Verdict::Pass;
  }
  if (!opt.out.empty()) emit_json(opt, all);
  return ok ? 0 : 1;
}

int run_witness(const Options& opt) {
  json j = load_json_file(opt.input);
  if (!j.contains("events") || j["events"].size() != 2)
    fail(Errc::parse_error, "witness input needs \"events\": [u, w]");
  std::string scalar = file_scalar_kind(j);
  try {
    json doc;
    if (scalar == "rational") {
      Vec<Rational> u = vec_from_json<Rational>(j["events"][0]);
      Vec<Rational> w = vec_from_json<Rational>(j["events"][1]);
      Hyperboloid<QuadExt> h = hyperboloid_through_pair(u, w, opt.witness_e,
                                                        opt.tolerance);
      bool exact = true;
      for (Index i = 0; i < h.center.size(); ++i)
        exact = exact && h.center(i).is_rational();
      if (exact) {
        Vec<Rational> c(h.center.size());
        for (Index i = 0; i < c.size(); ++i) c(i) = h.center(i).rational_part();
        doc = hyperboloid_to_json(Hyperboloid<Rational>{
            c, h.radius.rational_part()});
        doc["scalar"] = "rational";
      } else {
        doc = hyperboloid_to_json(Hyperboloid<double>{
            to_double_vec(h.center), h.radius.to_double()});
        doc["scalar"] = "float64";
      }
    } else {
      Vec<double> u = vec_from_json<double>(j["events"][0]);
      Vec<double> w = vec_from_json<double>(j["events"][1]);
      Hyperboloid<double> h =
          hyperboloid_through_pair(u, w, opt.witness_e, opt.tolerance);
      doc = hyperboloid_to_json(h);
      doc["scalar"] = "float64";
    }
    doc["exponent"] = opt.witness_e;
    emit_json(opt, doc);
    return 0;
  } catch (const MinkError& e) {
    if (e.code() == Errc::light_like_pair) {
      std::cerr << "light-like pair: no hyperboloid contains both points\n";
      return 1;
    }
    if (e.code() == Errc::infeasible_exponent) {
      std::cerr << "infeasible exponent: " << e.what() << "\n";
      return 1;
    }
    throw;
  }
}

int run_plot(const Options& opt) {
  json scene = load_json_file(opt.input);
  emit(opt, render_scene(scene));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Minkowski space-time geometry and certification"};
  app.require_subcommand(1);
  Options opt;
  if (const char* env = std::getenv("MINK_SEED"))
    opt.seed = std::strtoull(env, nullptr, 10);

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--n", opt.n, "space dimension (1..8)")
        ->check(CLI::Range(1, 8));
    cmd->add_option("--backend", opt.backend,
                    "scalar backend: rational|float64");
    cmd->add_option("--seed", opt.seed, "random seed (env MINK_SEED)");
    cmd->add_option("--trials", opt.trials, "sampling trials")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--e-min", opt.e_min, "smallest dyadic exponent");
    cmd->add_option("--e-max", opt.e_max, "largest dyadic exponent");
    cmd->add_option("--tolerance", opt.tolerance,
                    "relative tolerance (float64 backend)");
    cmd->add_option("--out", opt.out, "write the JSON/SVG output here");
  };

  CLI::App* classify = app.add_subcommand(
      "classify", "causal class of an event/pair/line, or transform class");
  classify->add_option("input", opt.input, "input JSON file")->required();
  add_common(classify);

  CLI::App* certify = app.add_subcommand(
      "certify", "sampling certification of translate preservation");
  certify->add_option("input", opt.input, "candidate map JSON file")
      ->required();
  certify->add_option("--surface", opt.surface,
                      "hyperboloid | forward | corollary");
  add_common(certify);

  CLI::App* decompose_cmd = app.add_subcommand(
      "decompose", "translation/Lorentz/dilation/rotation factorization");
  decompose_cmd->add_option("input", opt.input, "candidate map JSON file")
      ->required();
  add_common(decompose_cmd);

  CLI::App* prove =
      app.add_subcommand("prove", "run the registered property suites");
  prove->add_option("--suite", opt.suite, "suite name or 'all'");
  add_common(prove);

  CLI::App* witness = app.add_subcommand(
      "witness", "standard hyperboloid through two given events");
  witness->add_option("input", opt.input, "JSON file with \"events\": [u, w]")
      ->required();
  witness->add_option("--e", opt.witness_e, "dyadic radius exponent");
  add_common(witness);

  CLI::App* plot =
      app.add_subcommand("plot", "render a scene file to SVG (x1-t section)");
  plot->add_option("input", opt.input, "scene JSON file")->required();
  add_common(plot);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(classify)) return run_classify(opt);
    if (app.got_subcommand(certify)) return run_certify(opt);
    if (app.got_subcommand(decompose_cmd)) return run_decompose(opt);
    if (app.got_subcommand(prove)) return run_prove(opt);
    if (app.got_subcommand(witness)) return run_witness(opt);
    if (app.got_subcommand(plot)) return run_plot(opt);
  } catch (const mink::MinkError& e) {
    if (e.code() == mink::Errc::unknown_suite) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
