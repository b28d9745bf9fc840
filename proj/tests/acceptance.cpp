// One PASS/FAIL line per acceptance criterion. The exit status is nonzero
// when any criterion has a failure that is not tied to an erratum in the data.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "nfr/catalog.hpp"
#include "nfr/dims.hpp"
#include "nfr/heuristic.hpp"
#include "nfr/verify.hpp"

using namespace nfr;

namespace {

struct Criterion {
  int number;
  std::string title;
  std::vector<CheckResult> checks;
  bool declared_out_of_scope = false;
  std::string note;

  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += !c.passed;
    return n;
  }
  bool only_known() const {
    for (const auto& c : checks)
      if (!c.passed && !c.known_issue) return false;
    return true;
  }
};

CheckResult check(std::string name, bool ok, std::string detail = {}) {
  return CheckResult{std::move(name), ok, std::move(detail), false};
}

// printed digits: the value rounded or truncated to the last printed place
bool matches_printed(double value, double printed, double place) {
  const double scaled = value / place;
  return std::llround(scaled) == std::llround(printed / place) ||
         static_cast<long long>(std::floor(scaled)) == std::llround(printed / place);
}

bool two_figures(double value, double printed) {
  const double e = std::floor(std::log10(printed));
  return matches_printed(value, printed, std::pow(10.0, e - 1));
}

Criterion identities(const Catalog& cat, const std::vector<QSeries>& ex) {
  Criterion c{1, "ring identities hold exactly to precision 200", {}};
  Evaluator ev(200);
  const auto& ids = cat.identities();
  for (const auto& id : ids.identities) c.checks.push_back(check_identity(id, ev));
  for (const auto& pf : ids.printed_forms) {
    for (std::size_t i = 0; i < cat.forms().size(); ++i)
      if (cat.forms()[i].label == pf.form) c.checks.push_back(check_printed_form(pf, ex[i], ev));
  }
  for (const auto& e : ids.expansions) c.checks.push_back(check_expansion(e, ev));
  c.checks.push_back(check_level4_shift(cat, ex, ev));
  c.checks.push_back(check_level8_isolation(cat));
  c.note = std::to_string(ids.identities.size()) + " identities, " + std::to_string(ids.printed_forms.size()) +
           " printed constructions, " + std::to_string(ids.expansions.size()) + " printed expansions";
  return c;
}

Criterion eigenforms(const Catalog& cat, const std::vector<QSeries>& ex) {
  Criterion c{2, "every cataloged newform is a T_p eigenform for p <= 50", {}};
  for (std::size_t i = 0; i < cat.forms().size(); ++i) c.checks.push_back(check_eigenform(cat.forms()[i], ex[i], 50));
  c.note = std::to_string(cat.forms().size()) + " forms";
  return c;
}

Criterion table2(const Catalog& cat) {
  Criterion c{3, "signed new-space dimensions and masses reproduce the stored table", {}};
  const auto& t = cat.table2();
  std::size_t cells = 0, nonzero = 0;
  for (const auto& row : t.rows) {
    const SignVector eps = parse_signs(row.eps);
    const std::string where = "N=" + std::to_string(row.N) + (row.eps.empty() ? "" : " " + row.eps);
    c.checks.push_back(check("mass " + where, mass(row.N, eps) == row.mass, to_string(mass(row.N, eps))));
    for (std::size_t i = 0; i < row.dims.size(); ++i) {
      const long got = dim_new_signed_exact(row.N, t.weights[i], eps);
      ++cells;
      nonzero += row.dims[i] != 0;
      if (got != row.dims[i])
        c.checks.push_back(check("dim " + where + " k=" + std::to_string(t.weights[i]), false,
                                 std::to_string(got) + " vs " + std::to_string(row.dims[i])));
    }
  }
  c.checks.push_back(check("cells compared", cells > 0, std::to_string(cells)));
  c.note = std::to_string(cells) + " cells (" + std::to_string(nonzero) + " nonzero), " + std::to_string(t.rows.size()) +
           " masses";
  return c;
}

Criterion heuristics() {
  Criterion c{4, "heuristic volumes, lattice count and split probabilities", {}};
  const double w = std::pow(2.0, 2.5);
  const double v2 = volume(2, w);
  c.checks.push_back(check("V_2(2^(5/2)) = 1930.9", std::fabs(v2 - 1930.9) <= 0.05, std::to_string(v2)));
  const QuadraticCount q = count_quadratics(Rational(32));
  c.checks.push_back(check("count_quadratics = (1951, 276)", q.total == 1951 && q.split == 276,
                           std::to_string(q.total) + ", " + std::to_string(q.split)));
  for (auto [k, printed, place] : {std::tuple{6, 13.3, 0.1}, std::tuple{16, 0.4, 0.1}, std::tuple{22, 0.05, 0.01}}) {
    const double pct = 100 * pr_of_weight(1, 1, k);
    c.checks.push_back(check("Pr_1,1(" + std::to_string(k) + ")", matches_printed(pct, printed, place),
                             std::to_string(pct) + "%"));
  }
  const double p12 = pr_of_weight(1, 12, 10), p83 = pr_of_weight(1, 83, 4);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", p12);
  c.checks.push_back(check("Pr_1,12(10) = 2.2e-16", two_figures(p12, 2.2e-16), buf));
  std::snprintf(buf, sizeof buf, "%.3g", p83);
  c.checks.push_back(check("Pr_1,83(4) = 3.4e-37", two_figures(p83, 3.4e-37), buf));
  return c;
}

Criterion congruences(const Catalog& cat, const std::vector<QSeries>& ex) {
  Criterion c{5, "congruences of the pairs and the mod-7 chains", {}};
  for (const auto& rec : cat.identities().congruences)
    if (rec.kind != "twist") c.checks.push_back(check_congruence(rec, cat, ex));
  return c;
}

Criterion galois(const Catalog& cat, const std::vector<QSeries>& ex) {
  Criterion c{6, "Galois matching, degenerate certification and the N = 8 disambiguation", {}};
  std::size_t assignments = 0;
  for (auto& g : check_governance(cat, ex, 200))
    for (auto& r : g.checks) {
      assignments += r.name.find(" governs ") != std::string::npos;
      c.checks.push_back(std::move(r));
    }
  for (auto& r : check_weight_bijection(cat, ex)) c.checks.push_back(std::move(r));
  for (const auto& rec : cat.identities().congruences)
    if (rec.kind == "twist") c.checks.push_back(check_congruence(rec, cat, ex));
  c.note = std::to_string(assignments) + " polynomial assignments";
  return c;
}

Criterion euler(const Catalog& cat, const std::vector<QSeries>& ex) {
  Criterion c{7, "Euler products rebuild every form to precision 200", {}};
  for (std::size_t i = 0; i < cat.forms().size(); ++i) c.checks.push_back(check_multiplicative(cat.forms()[i], ex[i]));
  const QSeries& delta = ex.at(0);
  c.checks.push_back(check("Delta a_6 = -6048", cat.forms()[0].label == "Delta_12_1" && delta[6] == -6048,
                           delta[6].get_str()));
  return c;
}

Criterion extended(const Catalog& cat) {
  Criterion c{8, "extended-cutoff statistics and large-level Hecke factorizations", {}};
  c.declared_out_of_scope = true;
  c.note = std::to_string(cat.table1().extended.size()) +
           " extended rows stored as given data; recomputing them needs a newform search at levels near 1000";
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  const auto start = std::chrono::steady_clock::now();
  const bool verbose = argc > 1 && std::string(argv[1]) == "-v";
  Catalog cat = Catalog::load(default_data_dir());
  const std::vector<QSeries> ex = expand_catalog(cat, 200);

  std::vector<Criterion> all;
  all.push_back(identities(cat, ex));
  all.push_back(eigenforms(cat, ex));
  all.push_back(table2(cat));
  all.push_back(heuristics());
  all.push_back(congruences(cat, ex));
  all.push_back(galois(cat, ex));
  all.push_back(euler(cat, ex));
  all.push_back(extended(cat));

  bool regression = false;
  for (const auto& c : all) {
    const char* tag = c.declared_out_of_scope ? "NOT REPRODUCIBLE (declared)" : (c.failures() == 0 ? "PASS" : "FAIL");
    std::cout << tag << "  " << c.number << ". " << c.title;
    if (!c.declared_out_of_scope) std::cout << " [" << c.checks.size() - c.failures() << "/" << c.checks.size() << "]";
    if (!c.note.empty()) std::cout << " -- " << c.note;
    std::cout << "\n";
    for (const auto& r : c.checks) {
      if (r.passed && !verbose) continue;
      std::cout << "      " << (r.passed ? "ok   " : (r.known_issue ? "KNOWN" : "FAIL ")) << " " << r.name;
      if (!r.detail.empty()) std::cout << " -- " << r.detail;
      std::cout << "\n";
    }
    if (c.failures() > 0 && !c.only_known()) regression = true;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << "elapsed " << secs << " s" << (secs < 60 ? "" : " (over the 60 s budget)") << "\n";
  return regression || secs >= 60 ? 1 : 0;
}
