#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <string>

#include "nfr/catalog.hpp"
#include "nfr/dims.hpp"
#include "nfr/heuristic.hpp"
#include "nfr/parse.hpp"
#include "nfr/verify.hpp"

namespace {

using nlohmann::ordered_json;

struct Options {
  std::string data;
  std::string format = "plain";
  std::size_t prec = 200;
  long pmax = 200;
};

nfr::Catalog load(const Options& o) {
  return nfr::Catalog::load(o.data.empty() ? nfr::default_data_dir() : std::filesystem::path(o.data));
}

ordered_json series_json(const nfr::QSeries& g) {
  ordered_json arr = ordered_json::array();
  for (const auto& c : g.coeffs()) arr.push_back(nfr::to_string(c));
  return arr;
}

int cmd_expand(const Options& o, const std::string& label, const std::string& expr) {
  const std::string name = label.empty() ? expr : label;
  const nfr::QSeries g = label.empty() ? nfr::Evaluator(o.prec).evaluate(nfr::parse_expression(expr))
                                       : nfr::expand_form(load(o).form(label), o.prec);
  if (o.format == "json") {
    std::cout << ordered_json{{"name", name}, {"precision", o.prec}, {"coefficients", series_json(g)}}.dump() << "\n";
  } else {
    std::cout << name << " = " << nfr::format_sparse(g) << "\n";
  }
  return 0;
}

int cmd_verify(const Options& o, const std::string& suite) {
  nfr::Catalog cat = load(o);
  auto reports = nfr::run_suites(cat, suite, nfr::VerifyOptions{o.prec, o.pmax});
  std::size_t failures = 0;
  ordered_json out = ordered_json::array();
  for (const auto& r : reports) {
    failures += r.failed();
    if (o.format == "json") {
      ordered_json checks = ordered_json::array();
      for (const auto& c : r.checks) {
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"known_issue", c.known_issue}, {"detail", c.detail}});
      }
      out.push_back({{"suite", r.suite}, {"passed", r.passed()}, {"failed", r.failed()}, {"known", r.known()}, {"checks", checks}});
      continue;
    }
    for (const auto& c : r.checks) {
      const char* tag = c.passed ? "ok  " : (c.known_issue ? "KNOWN" : "FAIL");
      std::cout << "[" << r.suite << "] " << tag << " " << c.name;
      if (!c.detail.empty()) std::cout << " -- " << c.detail;
      std::cout << "\n";
    }
  }
  if (o.format == "json") {
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& r : reports) {
      std::cout << r.suite << ": " << r.passed() << " passed, " << r.failed() << " failed";
      if (r.known()) std::cout << ", " << r.known() << " known issue(s)";
      std::cout << "\n";
    }
  }
  return failures == 0 ? 0 : 1;
}

int cmd_dims(const Options& o, std::optional<int> level, int kmax) {
  const int levels[] = {1, 2, 3, 4, 6, 8};
  ordered_json out = ordered_json::array();
  for (int N : levels) {
    if (level && *level != N) continue;
    for (const auto& eps : nfr::sign_vectors(N)) {
      std::vector<long> dims;
      for (int k = 2; k <= kmax; k += 2) dims.push_back(nfr::dim_new_signed_exact(N, k, eps));
      const std::string signs = nfr::format_signs(eps);
      const std::string m = nfr::to_string(nfr::mass(N, eps));
      if (o.format == "json") {
        out.push_back({{"N", N}, {"eps", signs}, {"mass", m}, {"dims", dims}});
        continue;
      }
      std::cout << N << (signs.empty() ? "" : " " + signs) << "  m=" << m << " ";
      for (long d : dims) std::cout << " " << d;
      std::cout << "\n";
    }
  }
  if (level && std::find(std::begin(levels), std::end(levels), *level) == std::end(levels)) {
    throw CLI::ValidationError("--level", "supported levels are 1, 2, 3, 4, 6, 8");
  }
  if (o.format == "json") std::cout << out.dump() << "\n";
  return 0;
}

int cmd_heuristic(const Options& o, bool figure2, int r, int s, std::optional<int> k) {
  if (figure2) {
    auto pts = nfr::quadratic_points(nfr::Rational(32));
    auto count = nfr::count_quadratics(nfr::Rational(32));
    if (o.format == "json") {
      ordered_json arr = ordered_json::array();
      for (const auto& p : pts) arr.push_back({p.b, p.c, p.split});
      std::cout << ordered_json{{"total", count.total}, {"split", count.split}, {"points", arr}}.dump() << "\n";
    } else {
      std::cout << "total " << count.total << ", split " << count.split << "\n";
      for (const auto& p : pts) std::cout << p.b << " " << p.c << (p.split ? " split" : "") << "\n";
    }
    return 0;
  }
  if (!k) throw CLI::ValidationError("--k", "give --k or --figure2");
  const double pr = nfr::pr_of_weight(r, s, *k);
  if (o.format == "json") {
    std::cout << ordered_json{{"r", r}, {"s", s}, {"k", *k}, {"probability", pr}}.dump() << "\n";
  } else {
    std::cout << "Pr_" << r << "," << s << "(" << *k << ") = " << pr << "\n";
  }
  return 0;
}

int cmd_galrep(const Options& o, const std::string& poly_label, const std::string& form_label) {
  nfr::Catalog cat = load(o);
  const nfr::ProjPolyRecord* poly = nullptr;
  for (const auto& p : cat.polys().polys)
    if (p.label == poly_label) poly = &p;
  if (!poly) throw std::out_of_range("unknown polynomial: " + poly_label);
  if (form_label.empty()) {
    for (const auto& [lambda, ps] : nfr::observed_patterns(*poly, o.pmax)) {
      std::cout << lambda.to_string() << ":";
      for (long p : ps) std::cout << " " << p;
      std::cout << "\n";
    }
    return 0;
  }
  const auto& form = cat.form(form_label);
  auto g = nfr::expand_form(form, static_cast<std::size_t>(o.pmax) + 1);
  auto v = nfr::match_form_to_poly(g, form.level, form.weight, *poly, cat.polys().table, o.pmax);
  if (o.format == "json") {
    ordered_json j{{"result", nfr::to_string(v.result)}, {"checked", v.checked}, {"skipped", v.skipped}};
    if (v.failing_prime) j["failing_prime"] = *v.failing_prime;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << form_label << " vs " << poly_label << ": " << nfr::to_string(v.result) << " (" << v.checked.size()
              << " primes checked)";
    if (v.failing_prime) std::cout << ", fails at p=" << *v.failing_prime << " s=" << v.failing_s << " lambda=" << v.failing_pattern;
    std::cout << "\n";
  }
  return v.result == nfr::MatchResult::Consistent ? 0 : 1;
}

int cmd_catalog(const Options& o, std::optional<int> N, std::optional<int> k, std::optional<int> x, bool forms) {
  nfr::Catalog cat = load(o);
  if (x) {
    if (!k) throw CLI::ValidationError("--summatory", "needs --weight");
    std::cout << cat.summatory(*k, *x) << "\n";
    return 0;
  }
  if (forms) {
    for (const auto* f : cat.query_forms(N, k, std::nullopt)) {
      std::cout << f->label << "  N=" << f->level << " k=" << f->weight << " eps=" << (f->eps.empty() ? "none" : f->eps)
                << "  a_" << f->hecke_prime << "=" << f->eigenvalue.get_str() << "\n";
    }
    return 0;
  }
  ordered_json arr = ordered_json::array();
  for (const auto& row : cat.query(N, k)) {
    if (o.format == "json") {
      arr.push_back({{"N", row.N}, {"k", row.k}, {"count", row.count}, {"unforced", row.unforced}});
    } else if (row.count > 0 || (N && k)) {
      std::cout << "N=" << row.N << " k=" << row.k << " count=" << row.count << " unforced=" << row.unforced << "\n";
    }
  }
  if (o.format == "json") std::cout << arr.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rational newforms of small level: expansions, dimensions, heuristics and Galois matching"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--data", o.data, "Directory holding the JSON data files");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"plain", "json"}))->capture_default_str();
  app.add_option("--prec", o.prec, "Series precision (number of coefficients)")->check(CLI::Range(2, 100000))->capture_default_str();
  app.add_option("--pmax", o.pmax, "Largest prime used for Galois matching")->check(CLI::Range(2, 100000))->capture_default_str();
  app.fallthrough();

  std::string label, expr;
  auto* expand = app.add_subcommand("expand", "Print the q-expansion of a cataloged form or an expression");
  auto* lab = expand->add_option("--label", label, "Newform label, e.g. Delta_22_3_plus_a");
  expand->add_option("--expr", expr, "Expression in the named generators, e.g. \"E4^3 - E6^2\"")->excludes(lab);
  expand->require_option(1);

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "Run the verification suites");
  verify->add_option("--suite", suite)->check(CLI::IsMember({"rings", "dims", "heuristic", "galrep", "all"}))->capture_default_str();

  std::optional<int> level;
  int kmax = 50;
  auto* dims = app.add_subcommand("dims", "Signed new-space dimensions and masses");
  dims->add_option("--level", level);
  dims->add_option("--kmax", kmax)->check(CLI::Range(2, 1000))->capture_default_str();

  bool figure2 = false;
  int r = 1, s = 1;
  std::optional<int> k;
  auto* heur = app.add_subcommand("heuristic", "Split probabilities and the quadratic lattice count");
  heur->add_flag("--figure2", figure2, "Count quadratics with w = 2^(5/2) and list the points");
  heur->add_option("--r", r)->check(CLI::PositiveNumber)->capture_default_str();
  heur->add_option("--s", s)->check(CLI::PositiveNumber)->capture_default_str();
  heur->add_option("--k", k, "Weight");

  std::string poly, form;
  auto* gal = app.add_subcommand("galrep", "Factorization patterns of a polynomial, or its match with a form");
  gal->add_option("--poly", poly)->required();
  gal->add_option("--form", form);

  std::optional<int> cN, ck, cx;
  bool list_forms = false;
  auto* cat = app.add_subcommand("catalog", "Query Table 1 counts and cataloged forms");
  cat->add_option("--level", cN);
  cat->add_option("--weight", ck);
  cat->add_option("--summatory", cx, "Sum of counts over N <= x at --weight");
  cat->add_flag("--forms", list_forms, "List cataloged newforms instead of counts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*expand) return cmd_expand(o, label, expr);
    if (*verify) return cmd_verify(o, suite);
    if (*dims) return cmd_dims(o, level, kmax);
    if (*heur) return cmd_heuristic(o, figure2, r, s, k);
    if (*gal) return cmd_galrep(o, poly, form);
    if (*cat) return cmd_catalog(o, cN, ck, cx, list_forms);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const nfr::SchemaError& e) {
    std::cerr << "nfr: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "nfr: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
