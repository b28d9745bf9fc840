// Searches every signed new space at N in {1, 2, 3, 4, 6, 8}, 2 <= k <= 50
// for rational newforms and writes them as a forms file.
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "nfr/catalog.hpp"
#include "nfr/dims.hpp"
#include "nfr/newspace.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Derive the rational newforms of the supported levels"};
  std::string out = "forms.json";
  int max_weight = 50;
  app.add_option("-o,--output", out, "Output file");
  app.add_option("--max-weight", max_weight, "Largest weight searched");
  CLI11_PARSE(app, argc, argv);

  nfr::FormsFile file;
  file.description =
      "Rational newforms of S_k^new(N)^eps for N in {1,2,3,4,6,8} and k <= 50, each written as a polynomial in "
      "the level's generators times its cusp generator; eigenvalue is the T_p eigenvalue used to split the space.";
  for (int N : {1, 2, 3, 4, 6, 8}) {
    for (const auto& eps : nfr::sign_vectors(N)) {
      for (int k = 2; k <= max_weight; k += 2) {
        auto forms = nfr::find_rational_newforms(N, k, eps);
        for (std::size_t i = 0; i < forms.size(); ++i) {
          const auto& f = forms[i];
          if (f.eigenvalue.get_den() != 1) {
            std::cerr << "non-integral eigenvalue at N=" << N << " k=" << k << "\n";
            return 1;
          }
          std::string suffix = forms.size() > 1 ? std::string(1, static_cast<char>('a' + i)) : "";
          nfr::NewformRecord rec;
          rec.label = nfr::newform_label(k, N, eps, suffix);
          rec.level = N;
          rec.weight = k;
          rec.eps = nfr::format_signs(eps);
          rec.hecke_prime = f.hecke_prime;
          rec.eigenvalue = f.eigenvalue.get_num();
          rec.expression = f.expression;
          file.forms.push_back(std::move(rec));
          std::cerr << file.forms.back().label << "  T_" << f.hecke_prime << " = " << f.eigenvalue.get_str() << "\n";
        }
      }
    }
  }
  std::ofstream(out, std::ios::binary) << nfr::serialize(file);
  std::cerr << file.forms.size() << " forms written to " << out << "\n";
  return 0;
}
