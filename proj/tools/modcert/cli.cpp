#include "modcert/cli.hpp"

#include "modcert/certificate.hpp"
#include "modcert/distribution_io.hpp"
#include "modcert/entropy.hpp"
#include "modcert/fe.hpp"
#include "modcert/modgroup.hpp"
#include "modcert/projective.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

namespace modcert::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kVersion = "modcert 0.1.0";

// Input problems detected after argument parsing; reported with kUsage.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << content;
}

std::string read_file(const std::string& path) {
  try {
    return read_text_file(path);
  } catch (const std::runtime_error& e) {
    throw InputError(e.what());
  }
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (!tok.empty()) out.push_back(parse_rational(tok));
  }
  return out;
}

struct Options {
  // certify / verify / orbit / decompose
  std::string positional;
  std::string out_path;
  bool no_shorten = false;
  // batch
  long max_den = 0;
  long signed_bound = 0;
  std::string extra;
  unsigned threads = 1;
  // entropy / residual
  std::string alpha = "2";
  double base = 0.0;
  bool exact = false;
  double tol = 1e-12;
  std::string eq = "main";
  std::string u = "s_alpha";
  std::string lambda = "1";
  std::string slope = "2";
  std::string eps = "1/1000";
  std::string shape = "sym";
  std::string table;
  std::size_t grid = 100;
};

int cmd_certify(const Options& o, std::ostream& out, std::ostream& err) {
  const Rational r = parse_rational(o.positional);
  CertifyOptions opts;
  opts.shorten = !o.no_shorten;
  const Certificate c = generate_certificate(r, opts);
  const std::string json = to_json(c, 2);
  if (!o.out_path.empty()) write_file(o.out_path, json + "\n");
  out << json << '\n';
  err << "certificate for " << to_string(r) << ": " << c.word.size() << " letters\n";
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  const Certificate c = certificate_from_json(read_file(o.positional));
  const Verdict v = verify_certificate(c);
  ordered_json j;
  j["target"] = to_string(c.target);
  j["verdict"] = v.valid() ? "VALID" : "INVALID";
  if (!v.valid()) {
    j["reason"] = v.reason;
    if (v.index) j["index"] = *v.index;
  }
  out << j.dump(2) << '\n';
  err << (v.valid() ? "VALID" : "INVALID: " + v.reason) << '\n';
  return v.valid() ? kOk : kCheckFailed;
}

int cmd_batch(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.max_den < 1) throw InputError("--max-den must be at least 1");
  BatchOptions opts;
  opts.max_denominator = o.max_den;
  opts.signed_bound = o.signed_bound;
  opts.extra_targets = parse_rational_list(o.extra);
  opts.threads = o.threads;
  opts.certify.shorten = !o.no_shorten;
  const BatchReport report = batch_certify(opts);
  if (!o.out_path.empty()) write_file(o.out_path, report.to_csv());

  ordered_json j;
  j["targets"] = report.entries.size();
  j["valid"] = report.valid;
  j["invalid"] = report.invalid;
  j["max_word_length"] = report.max_word_length;
  j["total_word_length"] = report.total_word_length;
  j["failures"] = ordered_json::array();
  for (const auto& e : report.entries) {
    if (!e.verdict.valid()) j["failures"].push_back({{"target", to_string(e.target)}, {"reason", e.verdict.reason}});
  }
  out << j.dump(2) << '\n';
  err << report.valid << "/" << report.entries.size() << " targets certified, max word length "
      << report.max_word_length << '\n';
  return report.all_valid() ? kOk : kCheckFailed;
}

int cmd_decompose(const Options& o, std::ostream& out, std::ostream&) {
  const GroupElement g = parse_group_element(o.positional);
  const GeneratorWord st = decompose_st(g);
  const GeneratorWord ab = rewrite_st_to_ab(st);
  ordered_json j;
  j["element"] = g.to_string();
  j["determinant"] = g.determinant();
  j["st_word"] = st.to_string();
  j["st_length"] = st.size();
  j["ab_word"] = ab.to_string();
  j["ab_length"] = ab.size();
  j["st_product_matches"] = st.evaluate() == g;
  j["ab_product_matches"] = ab.evaluate() == g;
  out << j.dump(2) << '\n';
  return (st.evaluate() == g && ab.evaluate() == g) ? kOk : kCheckFailed;
}

int cmd_identities(const Options&, std::ostream& out, std::ostream& err) {
  const auto checks = check_matrix_identities();
  ordered_json j = ordered_json::array();
  std::size_t passed = 0;
  for (const auto& c : checks) {
    j.push_back({{"identity", c.name}, {"computed", c.computed}, {"expected", c.expected}, {"pass", c.pass}});
    err << (c.pass ? "pass  " : "FAIL  ") << c.name << '\n';
    passed += c.pass ? 1 : 0;
  }
  out << j.dump(2) << '\n';
  err << passed << "/" << checks.size() << " identities hold\n";
  return passed == checks.size() ? kOk : kCheckFailed;
}

int cmd_orbit(const Options& o, std::ostream& out, std::ostream&) {
  const ProjectivePoint target = parse_point(o.positional);
  const GroupElement g = bezout_element(target);
  const ProjectivePoint image = apply_homography(g, ProjectivePoint::zero());
  ordered_json j;
  j["target"] = to_string(target);
  j["element"] = g.to_string();
  j["determinant"] = g.determinant();
  j["image_of_zero"] = to_string(image);
  out << j.dump(2) << '\n';
  return image == target ? kOk : kCheckFailed;
}

std::string chain_order_key(ChainOrder order) {
  return order == ChainOrder::XFirst ? "chain_rule_residual_x_first" : "chain_rule_residual_y_first";
}

int cmd_entropy(const Options& o, std::ostream& out, std::ostream& err) {
  const std::string text = read_file(o.positional);
  const DataFormat format = format_for_path(o.positional);
  const Alpha alpha = Alpha::parse(o.alpha);
  const bool joint = looks_like_joint(text, format);
  ordered_json j;
  j["alpha"] = o.alpha;
  j["mode"] = o.exact ? "exact" : "float";
  bool pass = true;

  if (o.exact) {
    if (!alpha.integer() || *alpha.integer() < 2) throw InputError("--exact needs an integer alpha >= 2");
    const unsigned k = *alpha.integer();
    if (joint) {
      const RationalJoint p = load_joint_exact(text, format);
      j["joint_entropy"] = to_string(tsallis_entropy(p.flatten(), k));
      j["marginal_x_entropy"] = to_string(tsallis_entropy(marginalize(p, Axis::Row), k));
      j["marginal_y_entropy"] = to_string(tsallis_entropy(marginalize(p, Axis::Col), k));
      for (ChainOrder order : {ChainOrder::XFirst, ChainOrder::YFirst}) {
        const Rational r = chain_rule_residual(p, k, order);
        j[chain_order_key(order)] = to_string(r);
        pass = pass && r.get_d() <= o.tol;
      }
    } else {
      j["entropy"] = to_string(tsallis_entropy(load_distribution_exact(text, format), k));
    }
  } else {
    auto entropy = [&](const RealDistribution& p) {
      if (alpha.is_one() && o.base > 0.0) return shannon_entropy(p, o.base);
      return generalized_entropy(p, alpha);
    };
    if (joint) {
      const RealJoint p = load_joint_real(text, format);
      j["joint_entropy"] = entropy(p.flatten());
      j["marginal_x_entropy"] = entropy(marginalize(p, Axis::Row));
      j["marginal_y_entropy"] = entropy(marginalize(p, Axis::Col));
      for (ChainOrder order : {ChainOrder::XFirst, ChainOrder::YFirst}) {
        const double r = o.base > 0.0 && alpha.is_one()
                             ? chain_rule_residual(p, alpha, order, entropy)
                             : chain_rule_residual(p, alpha, order);
        j[chain_order_key(order)] = r;
        pass = pass && r <= o.tol;
      }
    } else {
      j["entropy"] = entropy(load_distribution_real(text, format));
    }
  }
  if (joint) j["pass"] = pass;
  out << j.dump(2) << '\n';
  if (joint) err << (pass ? "chain rule holds" : "chain rule residual exceeds tolerance") << '\n';
  return pass ? kOk : kCheckFailed;
}

CandidateFunction make_candidate(const Options& o, const Alpha& alpha) {
  const Rational lambda = parse_rational(o.lambda);
  if (o.u == "s_alpha") return candidates::solution(alpha, lambda);
  if (o.u == "linear") return candidates::linear(lambda);
  if (o.u == "s1_plus_linear") return candidates::shannon_plus_linear(lambda.get_d(), parse_rational(o.slope).get_d());
  if (o.u == "quartic") return candidates::symmetric_quartic();
  if (o.u == "perturbed") {
    const CandidateFunction shape = o.shape == "asym" ? candidates::polynomial({0, 0, 1}, "x^2")
                                                      : candidates::polynomial({0, 1, -1}, "x*(1-x)");
    return candidates::perturbed(candidates::solution(alpha, lambda), parse_rational(o.eps), shape);
  }
  if (o.u == "table") {
    if (o.table.empty()) throw InputError("--u table needs --table FILE");
    return candidates::load_tabulated(read_file(o.table), o.table);
  }
  throw InputError("unknown candidate '" + o.u + "'");
}

int exact_lemmas(const Options& o, const CandidateFunction& u, unsigned alpha, ordered_json& j, std::ostream& out,
                 std::ostream& err) {
  Rational worst = 0;
  j["mode"] = "exact";
  j["reports"] = ordered_json::array();
  for (const auto& r : interval_lemma_residuals_exact(u, alpha, o.grid)) {
    j["reports"].push_back(
        {{"label", r.id}, {"points", r.points}, {"max_residual", to_string(r.max_residual)}, {"argmax", to_string(r.argmax)}});
    worst = std::max(worst, r.max_residual);
  }
  const bool pass = worst.get_d() <= o.tol;
  j["max_residual"] = to_string(worst);
  j["pass"] = pass;
  out << j.dump(2) << '\n';
  err << "max exact lemma residual " << to_string(worst) << (pass ? " (pass)" : " (FAIL)") << '\n';
  return pass ? kOk : kCheckFailed;
}

int cmd_residual(const Options& o, std::ostream& out, std::ostream& err) {
  const Alpha alpha = Alpha::parse(o.alpha);
  const CandidateFunction u = make_candidate(o, alpha);
  ordered_json j;
  j["eq"] = o.eq;
  j["u"] = u.name;
  j["alpha"] = o.alpha;
  j["tolerance"] = o.tol;

  if (o.exact) {
    if (o.eq == "h") throw InputError("--exact supports --eq main|fundamental|lemmas");
    if (!alpha.integer()) throw InputError("--exact needs an integer alpha");
    if (!u.has_exact()) throw InputError("candidate '" + u.name + "' has no exact form");
    if (o.eq == "lemmas") return exact_lemmas(o, u, *alpha.integer(), j, out, err);
    const ExactScanResult r =
        scan_grid_exact(o.eq == "main" ? ResidualKind::Main : ResidualKind::Fundamental, u, *alpha.integer(), o.grid);
    const bool pass = r.max_residual.get_d() <= o.tol;
    j["mode"] = "exact";
    j["points"] = r.points;
    j["max_residual"] = to_string(r.max_residual);
    j["argmax"] = {{"x", to_string(r.argmax_x)}, {"y", to_string(r.argmax_y)}};
    j["pass"] = pass;
    out << j.dump(2) << '\n';
    err << "max exact residual " << to_string(r.max_residual) << (pass ? " (pass)" : " (FAIL)") << '\n';
    return pass ? kOk : kCheckFailed;
  }

  std::vector<ResidualReport> reports;
  if (o.eq == "main" || o.eq == "fundamental") {
    GridSpec grid;
    grid.n = o.grid;
    reports.push_back(scan_grid(o.eq == "main" ? ResidualKind::Main : ResidualKind::Fundamental, u, alpha, grid));
  } else if (o.eq == "h") {
    GridSpec grid;
    grid.n = o.grid;
    reports.push_back(scan_grid(ResidualKind::HFirst, u, alpha, grid));
    reports.push_back(scan_grid(ResidualKind::HSecond, u, alpha, grid));
  } else if (o.eq == "lemmas") {
    reports = interval_lemma_residuals(u, alpha, o.grid);
  } else {
    throw InputError("--eq must be main, fundamental, h or lemmas");
  }

  double worst = 0.0;
  j["mode"] = "float";
  j["reports"] = ordered_json::array();
  std::string csv;
  for (const auto& r : reports) {
    j["reports"].push_back(ordered_json::parse(r.summary_json(-1)));
    worst = std::max(worst, r.max_relative);
    csv += reports.size() > 1 ? "# " + r.label + "\n" + r.to_csv() : r.to_csv();
  }
  const bool pass = worst <= o.tol;
  j["max_relative"] = worst;
  j["pass"] = pass;
  if (!o.out_path.empty()) write_file(o.out_path, csv);
  out << j.dump(2) << '\n';
  err << "max relative residual " << worst << (pass ? " (pass)" : " (FAIL)") << '\n';
  return pass ? kOk : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Modular-group certificates and entropy functional-equation checks", "modcert"};
  app.require_subcommand(0, 1);
  bool version = false;
  app.add_flag("--version", version, "Print the version banner");

  Options o;
  std::function<int(const Options&, std::ostream&, std::ostream&)> handler;
  auto verb = [&](const std::string& name, const std::string& help, auto fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->callback([&handler, fn] { handler = fn; });
    return sub;
  };

  auto* certify = verb("certify", "Build a certificate for a nonzero rational", cmd_certify);
  certify->add_option("rational", o.positional, "Target, e.g. 7/3")->required();
  certify->add_option("--out", o.out_path, "Also write the certificate JSON to a file");
  certify->add_flag("--no-shorten", o.no_shorten, "Keep the repaired word without prefix shortening");

  auto* verify = verb("verify", "Verify a certificate JSON file", cmd_verify);
  verify->add_option("file", o.positional, "Certificate JSON")->required();

  auto* batch = verb("batch", "Certify every reduced fraction in (0,1] up to a denominator", cmd_batch);
  batch->add_option("--max-den", o.max_den, "Largest denominator")->required();
  batch->add_option("--signed-bound", o.signed_bound, "Also certify 0 < |p/q| <= bound");
  batch->add_option("--extra", o.extra, "Comma-separated extra targets");
  batch->add_option("--threads", o.threads, "Worker threads");
  batch->add_option("--out", o.out_path, "CSV report path");
  batch->add_flag("--no-shorten", o.no_shorten, "Keep repaired words without prefix shortening");

  auto* decompose = verb("decompose", "Write a matrix as S/T and A/B words", cmd_decompose);
  decompose->add_option("matrix", o.positional, "[[a,b],[c,d]] with determinant 1")->required();

  verb("identities", "Check the matrix identities relating A, B, P, S and T", cmd_identities);

  auto* orbit = verb("orbit", "Bezout element carrying 0 to a point", cmd_orbit);
  orbit->add_option("point", o.positional, "p/q or inf")->required();

  auto* entropy = verb("entropy", "Entropies and chain-rule residuals of a distribution file", cmd_entropy);
  entropy->add_option("file", o.positional, "JSON or CSV distribution / joint")->required();
  entropy->add_option("--alpha", o.alpha, "Entropy degree (1 = Shannon)");
  entropy->add_option("--base", o.base, "Log base for Shannon entropy (default e)");
  entropy->add_flag("--exact", o.exact, "Rational arithmetic (integer alpha >= 2)");
  entropy->add_option("--tol", o.tol, "Residual tolerance");

  auto* residual = verb("residual", "Scan functional-equation residuals of a candidate", cmd_residual);
  residual->add_option("--eq", o.eq, "main | fundamental | h | lemmas")
      ->check(CLI::IsMember({"main", "fundamental", "h", "lemmas"}));
  residual->add_option("--u", o.u, "s_alpha | linear | s1_plus_linear | quartic | perturbed | table")
      ->check(CLI::IsMember({"s_alpha", "linear", "s1_plus_linear", "quartic", "perturbed", "table"}));
  residual->add_option("--alpha", o.alpha, "Exponent alpha");
  residual->add_option("--grid", o.grid, "Grid resolution");
  residual->add_option("--lambda", o.lambda, "Scale of s_alpha, slope of linear, A of A*s_1 + B*x");
  residual->add_option("--slope", o.slope, "B of A*s_1 + B*x");
  residual->add_option("--eps", o.eps, "Perturbation size for --u perturbed");
  residual->add_option("--shape", o.shape, "sym: x(1-x), asym: x^2")->check(CLI::IsMember({"sym", "asym"}));
  residual->add_option("--table", o.table, "CSV of x,u samples for --u table");
  residual->add_option("--tol", o.tol, "Relative tolerance");
  residual->add_flag("--exact", o.exact, "Exact rational scan");
  residual->add_option("--out", o.out_path, "Write per-point residuals as CSV");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  if (version) {
    out << kVersion << '\n';
    return kOk;
  }
  if (!handler) {
    err << app.help();
    return kUsage;
  }
  try {
    return handler(o, out, err);
  } catch (const InvalidDistribution& e) {
    err << "error: " << e.what() << '\n';
    return kCheckFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace modcert::cli
