#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nfr/galrep.hpp"
#include "nfr/number.hpp"
#include "nfr/qseries.hpp"
#include "nfr/rings.hpp"

namespace nfr {

/// Malformed data file: carries the file, the JSON pointer of the offending
/// field and (when known) its line.
struct SchemaError : std::runtime_error {
  SchemaError(std::string file, std::string pointer, long line, const std::string& what);
  std::string file;
  std::string pointer;
  long line;
};

// ---------------------------------------------------------------------------
// Table of twist-class counts

struct Table1Row {
  int N = 0;
  int k = 0;
  int count = 0;
  int unforced = 0;  // 0, 1 or 2
};

/// Extended-cutoff statistics per weight; given data that this library
/// cannot recompute.
struct Table1Extended {
  int k = 0;
  long count = 0;       // number of classes found with N <= cutoff
  long last_level = 0;  // largest N with a class
  long cutoff = 0;
};

struct Table1 {
  std::string description;
  int max_level = 30;
  int max_weight = 50;
  std::vector<Table1Row> rows;  // nonzero cells only
  std::vector<Table1Extended> extended;
};

// ---------------------------------------------------------------------------
// Signed new-space dimensions

struct Table2Row {
  int N = 0;
  std::string eps;
  Rational mass;
  std::vector<long> dims;      // weights 2, 4, ..., 50
  std::vector<int> rational;   // rational newforms per cell
};

struct Table2 {
  std::string description;
  std::vector<int> weights;
  std::vector<Table2Row> rows;
};

// ---------------------------------------------------------------------------
// Newforms, identities, congruences

struct NewformRecord {
  std::string label;
  int level = 0;
  int weight = 0;
  std::string eps;
  long hecke_prime = 0;
  Integer eigenvalue;
  Expression expression;
};

struct FormsFile {
  std::string description;
  std::vector<NewformRecord> forms;
};

/// lhs = rhs as series; "expected" is "zero" (the difference vanishes) or
/// "nonzero" (a printed relation that is known to fail).
struct IdentityRecord {
  std::string label;
  int level = 0;
  Expression lhs;
  Expression rhs;
  std::string expected = "zero";
  std::string note;
};

/// A printed construction of a cataloged form plus printed leading terms.
struct PrintedForm {
  std::string label;
  std::string form;
  Expression expression;
  std::vector<std::pair<long, Integer>> prefix;
};

/// Printed leading coefficients of a series.
struct ExpansionRecord {
  std::string label;
  Expression expression;
  std::vector<std::pair<long, Integer>> prefix;
};

struct CongruenceRecord {
  std::string label;
  std::string kind;  // "pair", "chain" or "twist"
  std::vector<std::string> forms;
  Integer modulus;
  long bound = 0;               // pair: printed coefficient bound
  std::vector<long> residues;   // chain: printed residues of q^0..q^n
  std::vector<long> primes;     // twist: primes of the printed tuple
  std::vector<std::string> printed;  // twist: printed entries ("+-1", "0", ...)
  int character = 0;            // twist: discriminant of the twisting character
};

struct IdentitiesFile {
  std::string description;
  std::vector<IdentityRecord> identities;
  std::vector<PrintedForm> printed_forms;
  std::vector<ExpansionRecord> expansions;
  std::vector<CongruenceRecord> congruences;
};

struct PolysFile {
  std::string description;
  CorrespondenceTable table;
  std::vector<ProjPolyRecord> polys;
};

// ---------------------------------------------------------------------------
// Loading and byte-stable serialization

Table1 parse_table1(const std::string& text, const std::string& file = "table1.json");
Table2 parse_table2(const std::string& text, const std::string& file = "table2.json");
FormsFile parse_forms(const std::string& text, const std::string& file = "forms.json");
IdentitiesFile parse_identities(const std::string& text, const std::string& file = "identities.json");
PolysFile parse_polys(const std::string& text, const std::string& file = "polys.json");

std::string serialize(const Table1& t);
std::string serialize(const Table2& t);
std::string serialize(const FormsFile& f);
std::string serialize(const IdentitiesFile& f);
std::string serialize(const PolysFile& f);

std::string read_file(const std::filesystem::path& path);

/// Default data directory: $NFR_DATA_DIR if set, else the compiled-in path.
std::filesystem::path default_data_dir();

class Catalog {
 public:
  static Catalog load(const std::filesystem::path& dir);

  const Table1& table1() const { return table1_; }
  const Table2& table2() const { return table2_; }
  const std::vector<NewformRecord>& forms() const { return forms_.forms; }
  const IdentitiesFile& identities() const { return identities_; }
  const PolysFile& polys() const { return polys_; }

  /// Throws std::out_of_range for unknown labels.
  const NewformRecord& form(const std::string& label) const;
  bool has_form(const std::string& label) const;

  /// Zero-filled Table 1 cells with N <= max_level, k <= max_weight.
  std::vector<Table1Row> query(std::optional<int> N, std::optional<int> k) const;
  std::vector<const NewformRecord*> query_forms(std::optional<int> N, std::optional<int> k,
                                                std::optional<std::string> eps) const;

  /// sum over N <= x of |Q_k(N)|; throws std::out_of_range beyond max_level.
  long summatory(int k, int x) const;

 private:
  Table1 table1_;
  Table2 table2_;
  FormsFile forms_;
  IdentitiesFile identities_;
  PolysFile polys_;
};

/// Expansions of many cataloged forms at one precision, computed in parallel
/// with one evaluator per worker.
std::vector<QSeries> expand_forms(const std::vector<const NewformRecord*>& forms, std::size_t precision);
QSeries expand_form(const NewformRecord& form, std::size_t precision);

/// A twist class with its minimal-level representative.
struct TwistClass {
  std::string representative;
  long level = 0;
  long multiplicity = 0;  // t(level)
};
TwistClass make_twist_class(const NewformRecord& rep);

/// Label for a derived newform: Delta_<k>_<N>[_plus|_minus...][_a|_b].
std::string newform_label(int k, int N, const SignVector& eps, std::string_view suffix = "");

}  // namespace nfr
