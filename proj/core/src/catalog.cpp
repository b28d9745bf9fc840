#include "nfr/catalog.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "nfr/arith.hpp"

#ifndef NFR_DEFAULT_DATA_DIR
#define NFR_DEFAULT_DATA_DIR "data"
#endif

namespace nfr {

using ojson = nlohmann::ordered_json;

SchemaError::SchemaError(std::string f, std::string ptr, long ln, const std::string& what)
    : std::runtime_error(f + (ln > 0 ? ":" + std::to_string(ln) : std::string()) + ": " +
                         (ptr.empty() ? std::string() : ptr + ": ") + what),
      file(std::move(f)),
      pointer(std::move(ptr)),
      line(ln) {}

namespace {

// ---------------------------------------------------------------------------
// Reading

class Reader {
 public:
  Reader(std::string file, const std::string& text) : file_(std::move(file)), text_(text) {
    try {
      root_ = ojson::parse(text);
    } catch (const ojson::parse_error& e) {
      throw SchemaError(file_, "", line_at(e.byte), e.what());
    }
    if (!root_.is_object()) fail("", "top level must be an object");
  }

  const ojson& root() const { return root_; }

  [[noreturn]] void fail(const std::string& ptr, const std::string& what) const {
    throw SchemaError(file_, ptr, line_of(ptr), what);
  }

  void check_keys(const ojson& obj, std::initializer_list<const char*> keys, const std::string& ptr) const {
    if (!obj.is_object()) fail(ptr, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; })) {
        fail(ptr + "/" + it.key(), "unknown field");
      }
    }
    for (const char* k : keys) {
      if (!obj.contains(k)) fail(ptr + "/" + k, "missing field");
    }
  }

  const ojson& at(const ojson& obj, const char* key, const std::string& ptr) const {
    if (!obj.is_object() || !obj.contains(key)) fail(ptr + "/" + key, "missing field");
    return obj.at(key);
  }

  long integer(const ojson& v, const std::string& ptr) const {
    if (!v.is_number_integer()) fail(ptr, "expected an integer");
    return v.get<long>();
  }
  std::string string(const ojson& v, const std::string& ptr) const {
    if (!v.is_string()) fail(ptr, "expected a string");
    return v.get<std::string>();
  }
  bool boolean(const ojson& v, const std::string& ptr) const {
    if (!v.is_boolean()) fail(ptr, "expected a boolean");
    return v.get<bool>();
  }
  const ojson& array(const ojson& v, const std::string& ptr) const {
    if (!v.is_array()) fail(ptr, "expected an array");
    return v;
  }
  Rational rational(const ojson& v, const std::string& ptr) const {
    try {
      return parse_rational(string(v, ptr));
    } catch (const std::invalid_argument& e) {
      fail(ptr, e.what());
    }
  }
  Integer big(const ojson& v, const std::string& ptr) const {
    Rational r = rational(v, ptr);
    if (r.get_den() != 1) fail(ptr, "expected an integer string");
    return r.get_num();
  }

  SignVector signs(const ojson& v, const std::string& ptr) const {
    try {
      return parse_signs(string(v, ptr));
    } catch (const std::invalid_argument& e) {
      fail(ptr, e.what());
    }
  }

  Expression expression(const ojson& v, const std::string& ptr) const {
    Expression e;
    const auto& factors = array(v, ptr);
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const std::string fp = ptr + "/" + std::to_string(i);
      Polynomial poly;
      const auto& terms = array(factors[i], fp);
      for (std::size_t j = 0; j < terms.size(); ++j) {
        const std::string tp = fp + "/" + std::to_string(j);
        const auto& t = array(terms[j], tp);
        if (t.size() != 2) fail(tp, "term must be [coefficient, monomial]");
        Term term{rational(t[0], tp + "/0"), {}};
        const auto& mono = array(t[1], tp + "/1");
        for (std::size_t m = 0; m < mono.size(); ++m) {
          const std::string mp = tp + "/1/" + std::to_string(m);
          const auto& pw = array(mono[m], mp);
          if (pw.size() != 2) fail(mp, "power must be [symbol, exponent]");
          std::string name = string(pw[0], mp + "/0");
          if (!is_known_symbol(name)) fail(mp + "/0", "unknown symbol '" + name + "'");
          const long ex = integer(pw[1], mp + "/1");
          if (ex < 1) fail(mp + "/1", "exponent must be positive");
          term.mono.powers.emplace_back(std::move(name), static_cast<int>(ex));
        }
        poly.terms.push_back(std::move(term));
      }
      e.factors.push_back(std::move(poly));
    }
    return e;
  }

  std::vector<std::pair<long, Integer>> prefix(const ojson& v, const std::string& ptr) const {
    std::vector<std::pair<long, Integer>> out;
    const auto& arr = array(v, ptr);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string p = ptr + "/" + std::to_string(i);
      const auto& pair = array(arr[i], p);
      if (pair.size() != 2) fail(p, "prefix entries are [exponent, coefficient]");
      out.emplace_back(integer(pair[0], p + "/0"), big(pair[1], p + "/1"));
    }
    return out;
  }

  template <class T, class F>
  std::vector<T> rows(const char* key, F&& each) const {
    std::vector<T> out;
    const std::string ptr = std::string("/") + key;
    const auto& arr = array(at(root_, key, ""), ptr);
    for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(each(arr[i], ptr + "/" + std::to_string(i)));
    return out;
  }

 private:
  long line_at(std::size_t byte) const {
    byte = std::min(byte, text_.size());
    return 1 + static_cast<long>(std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
  }

  // Files keep one top-level key per line and one array element per line.
  long line_of(const std::string& ptr) const {
    if (ptr.empty()) return 0;
    std::size_t slash = ptr.find('/', 1);
    const std::string key = ptr.substr(1, slash == std::string::npos ? std::string::npos : slash - 1);
    const std::string needle = "\n  \"" + key + "\":";
    std::size_t pos = text_.find(needle);
    if (pos == std::string::npos) return 0;
    long line = line_at(pos + 1);
    if (slash == std::string::npos) return line;
    std::size_t next = ptr.find('/', slash + 1);
    const std::string idx = ptr.substr(slash + 1, next == std::string::npos ? std::string::npos : next - slash - 1);
    if (idx.empty() || !std::all_of(idx.begin(), idx.end(), ::isdigit)) return line;
    return line + 1 + std::stol(idx);
  }

  std::string file_;
  const std::string& text_;
  ojson root_;
};

// ---------------------------------------------------------------------------
// Writing

bool all_objects(const ojson& v) {
  return v.is_array() && !v.empty() && std::all_of(v.begin(), v.end(), [](const ojson& e) { return e.is_object(); });
}

std::string write_document(const ojson& top) {
  std::string out = "{\n";
  std::size_t i = 0;
  for (auto it = top.begin(); it != top.end(); ++it, ++i) {
    out += "  " + ojson(it.key()).dump() + ": ";
    const ojson& v = it.value();
    if (all_objects(v)) {
      out += "[\n";
      for (std::size_t j = 0; j < v.size(); ++j) out += "    " + v[j].dump() + (j + 1 < v.size() ? ",\n" : "\n");
      out += "  ]";
    } else {
      out += v.dump();
    }
    out += i + 1 < top.size() ? ",\n" : "\n";
  }
  return out + "}\n";
}

ojson to_json(const Expression& e) {
  ojson factors = ojson::array();
  for (const auto& f : e.factors) {
    ojson terms = ojson::array();
    for (const auto& t : f.terms) {
      ojson mono = ojson::array();
      for (const auto& [name, ex] : t.mono.powers) mono.push_back(ojson::array({name, ex}));
      terms.push_back(ojson::array({t.coeff.get_str(), mono}));
    }
    factors.push_back(terms);
  }
  return factors;
}

ojson to_json(const std::vector<std::pair<long, Integer>>& prefix) {
  ojson arr = ojson::array();
  for (const auto& [n, c] : prefix) arr.push_back(ojson::array({n, c.get_str()}));
  return arr;
}

}  // namespace

// ---------------------------------------------------------------------------

Table1 parse_table1(const std::string& text, const std::string& file) {
  Reader r(file, text);
  r.check_keys(r.root(), {"description", "max_level", "max_weight", "rows", "extended"}, "");
  Table1 t;
  t.description = r.string(r.root()["description"], "/description");
  t.max_level = static_cast<int>(r.integer(r.root()["max_level"], "/max_level"));
  t.max_weight = static_cast<int>(r.integer(r.root()["max_weight"], "/max_weight"));
  t.rows = r.rows<Table1Row>("rows", [&](const ojson& o, const std::string& p) {
    r.check_keys(o, {"N", "k", "count", "unforced"}, p);
    Table1Row row{static_cast<int>(r.integer(o["N"], p + "/N")), static_cast<int>(r.integer(o["k"], p + "/k")),
                  static_cast<int>(r.integer(o["count"], p + "/count")),
                  static_cast<int>(r.integer(o["unforced"], p + "/unforced"))};
    if (row.N < 1 || row.N > t.max_level) r.fail(p + "/N", "level outside 1.." + std::to_string(t.max_level));
    if (row.k < 2 || row.k > t.max_weight || row.k % 2) r.fail(p + "/k", "weight must be even in 2..max_weight");
    if (row.count < 0) r.fail(p + "/count", "count must be non-negative");
    if (row.unforced < 0 || row.unforced > 2) r.fail(p + "/unforced", "unforced must be 0, 1 or 2");
    if (row.unforced > row.count) r.fail(p + "/unforced", "unforced exceeds count");
    return row;
  });
  t.extended = r.rows<Table1Extended>("extended", [&](const ojson& o, const std::string& p) {
    r.check_keys(o, {"k", "count", "last_level", "cutoff"}, p);
    return Table1Extended{static_cast<int>(r.integer(o["k"], p + "/k")), r.integer(o["count"], p + "/count"),
                          r.integer(o["last_level"], p + "/last_level"), r.integer(o["cutoff"], p + "/cutoff")};
  });
  return t;
}

std::string serialize(const Table1& t) {
  ojson top;
  top["description"] = t.description;
  top["max_level"] = t.max_level;
  top["max_weight"] = t.max_weight;
  ojson rows = ojson::array();
  for (const auto& row : t.rows) rows.push_back({{"N", row.N}, {"k", row.k}, {"count", row.count}, {"unforced", row.unforced}});
  top["rows"] = rows;
  ojson ext = ojson::array();
  for (const auto& e : t.extended)
    ext.push_back({{"k", e.k}, {"count", e.count}, {"last_level", e.last_level}, {"cutoff", e.cutoff}});
  top["extended"] = ext;
  return write_document(top);
}

Table2 parse_table2(const std::string& text, const std::string& file) {
  Reader r(file, text);
  r.check_keys(r.root(), {"description", "weights", "rows"}, "");
  Table2 t;
  t.description = r.string(r.root()["description"], "/description");
  const auto& w = r.array(r.root()["weights"], "/weights");
  for (std::size_t i = 0; i < w.size(); ++i) t.weights.push_back(static_cast<int>(r.integer(w[i], "/weights/" + std::to_string(i))));
  t.rows = r.rows<Table2Row>("rows", [&](const ojson& o, const std::string& p) {
    r.check_keys(o, {"N", "eps", "m", "dims", "rational"}, p);
    Table2Row row;
    row.N = static_cast<int>(r.integer(o["N"], p + "/N"));
    row.eps = r.string(o["eps"], p + "/eps");
    r.signs(o["eps"], p + "/eps");
    row.mass = r.rational(o["m"], p + "/m");
    const auto& d = r.array(o["dims"], p + "/dims");
    const auto& q = r.array(o["rational"], p + "/rational");
    if (d.size() != t.weights.size()) r.fail(p + "/dims", "expected one entry per weight");
    if (q.size() != t.weights.size()) r.fail(p + "/rational", "expected one entry per weight");
    for (std::size_t i = 0; i < d.size(); ++i) {
      row.dims.push_back(r.integer(d[i], p + "/dims/" + std::to_string(i)));
      row.rational.push_back(static_cast<int>(r.integer(q[i], p + "/rational/" + std::to_string(i))));
      if (row.rational.back() > row.dims.back()) r.fail(p + "/rational/" + std::to_string(i), "exceeds the dimension");
    }
    return row;
  });
  return t;
}

std::string serialize(const Table2& t) {
  ojson top;
  top["description"] = t.description;
  top["weights"] = t.weights;
  ojson rows = ojson::array();
  for (const auto& row : t.rows)
    rows.push_back({{"N", row.N}, {"eps", row.eps}, {"m", row.mass.get_str()}, {"dims", row.dims}, {"rational", row.rational}});
  top["rows"] = rows;
  return write_document(top);
}

FormsFile parse_forms(const std::string& text, const std::string& file) {
  Reader r(file, text);
  r.check_keys(r.root(), {"description", "forms"}, "");
  FormsFile f;
  f.description = r.string(r.root()["description"], "/description");
  f.forms = r.rows<NewformRecord>("forms", [&](const ojson& o, const std::string& p) {
    r.check_keys(o, {"label", "N", "k", "eps", "hecke_prime", "eigenvalue", "expression"}, p);
    NewformRecord rec;
    rec.label = r.string(o["label"], p + "/label");
    rec.level = static_cast<int>(r.integer(o["N"], p + "/N"));
    rec.weight = static_cast<int>(r.integer(o["k"], p + "/k"));
    rec.eps = r.string(o["eps"], p + "/eps");
    if (!is_supported_level(rec.level)) r.fail(p + "/N", "unsupported level");
    if (r.signs(o["eps"], p + "/eps").size() != factorize(rec.level).size()) r.fail(p + "/eps", "wrong number of signs");
    rec.hecke_prime = r.integer(o["hecke_prime"], p + "/hecke_prime");
    rec.eigenvalue = r.big(o["eigenvalue"], p + "/eigenvalue");
    rec.expression = r.expression(o["expression"], p + "/expression");
    try {
      if (expression_weight(rec.expression) != rec.weight) r.fail(p + "/expression", "weight differs from k");
    } catch (const std::invalid_argument& e) {
      r.fail(p + "/expression", e.what());
    }
    return rec;
  });
  return f;
}

std::string serialize(const FormsFile& f) {
  ojson top;
  top["description"] = f.description;
  ojson rows = ojson::array();
  for (const auto& rec : f.forms) {
    rows.push_back({{"label", rec.label},
                    {"N", rec.level},
                    {"k", rec.weight},
                    {"eps", rec.eps},
                    {"hecke_prime", rec.hecke_prime},
                    {"eigenvalue", rec.eigenvalue.get_str()},
                    {"expression", to_json(rec.expression)}});
  }
  top["forms"] = rows;
  return write_document(top);
}

IdentitiesFile parse_identities(const std::string& text, const std::string& file) {
  Reader r(file, text);
  r.check_keys(r.root(), {"description", "identities", "printed_forms", "expansions", "congruences"}, "");
  IdentitiesFile f;
  f.description = r.string(r.root()["description"], "/description");
  f.identities = r.rows<IdentityRecord>("identities", [&](const ojson& o, const std::string& p) {
    r.check_keys(o, {"label", "N", "lhs", "rhs", "expected", "note"}, p);
    IdentityRecord rec;
    rec.label = r.string(o["label"], p + "/label");
    rec.level = static_cast<int>(r.integer(o["N"], p + "/N"));
    rec.lhs = r.expression(o["lhs"], p + "/lhs");
    rec.rhs = r.expression(o["rhs"], p + "/rhs");
    rec.expected = r.string(o["expected"], p + "/expected");
    if (rec.expected != "zero" && rec.expected != "nonzero") r.fail(p + "/expected", "must be \"zero\" or \"nonzero\"");
    rec.note = r.string(o["note"], p + "/note");
    return rec;
  });
  f.printed_forms = r.rows<PrintedForm>("printed_forms", [&](const ojson& o, const std::string& p) {
    r.check_keys(o, {"label", "form", "expression", "prefix"}, p);
    return PrintedForm{r.string(o["label"], p + "/label"), r.string(o["form"], p + "/form"),
                       r.expression(o["expression"], p + "/expression"), r.prefix(o["prefix"], p + "/prefix")};
  });
  f.expansions = r.rows<ExpansionRecord>("expansions", [&](const ojson& o, const std::string& p) {
    r.check_keys(o, {"label", "expression", "prefix"}, p);
    return ExpansionRecord{r.string(o["label"], p + "/label"), r.expression(o["expression"], p + "/expression"),
                           r.prefix(o["prefix"], p + "/prefix")};
  });
  f.congruences = r.rows<CongruenceRecord>("congruences", [&](const ojson& o, const std::string& p) {
    CongruenceRecord rec;
    rec.label = r.string(r.at(o, "label", p), p + "/label");
    rec.kind = r.string(r.at(o, "kind", p), p + "/kind");
    if (rec.kind == "pair") {
      r.check_keys(o, {"label", "kind", "forms", "modulus", "bound"}, p);
      rec.bound = r.integer(o["bound"], p + "/bound");
    } else if (rec.kind == "chain") {
      r.check_keys(o, {"label", "kind", "forms", "modulus", "residues"}, p);
      const auto& res = r.array(o["residues"], p + "/residues");
      for (std::size_t i = 0; i < res.size(); ++i) rec.residues.push_back(r.integer(res[i], p + "/residues/" + std::to_string(i)));
    } else if (rec.kind == "twist") {
      r.check_keys(o, {"label", "kind", "forms", "modulus", "character", "primes", "printed"}, p);
      rec.character = static_cast<int>(r.integer(o["character"], p + "/character"));
      const auto& pr = r.array(o["primes"], p + "/primes");
      const auto& pt = r.array(o["printed"], p + "/printed");
      if (pr.size() != pt.size()) r.fail(p + "/printed", "one entry per prime expected");
      for (std::size_t i = 0; i < pr.size(); ++i) {
        rec.primes.push_back(r.integer(pr[i], p + "/primes/" + std::to_string(i)));
        rec.printed.push_back(r.string(pt[i], p + "/printed/" + std::to_string(i)));
      }
    } else {
      r.fail(p + "/kind", "must be pair, chain or twist");
    }
    const auto& forms = r.array(o["forms"], p + "/forms");
    for (std::size_t i = 0; i < forms.size(); ++i) rec.forms.push_back(r.string(forms[i], p + "/forms/" + std::to_string(i)));
    rec.modulus = r.big(o["modulus"], p + "/modulus");
    return rec;
  });
  return f;
}

std::string serialize(const IdentitiesFile& f) {
  ojson top;
  top["description"] = f.description;
  ojson ids = ojson::array();
  for (const auto& rec : f.identities) {
    ids.push_back({{"label", rec.label},
                   {"N", rec.level},
                   {"lhs", to_json(rec.lhs)},
                   {"rhs", to_json(rec.rhs)},
                   {"expected", rec.expected},
                   {"note", rec.note}});
  }
  top["identities"] = ids;
  ojson printed = ojson::array();
  for (const auto& rec : f.printed_forms) {
    printed.push_back(
        {{"label", rec.label}, {"form", rec.form}, {"expression", to_json(rec.expression)}, {"prefix", to_json(rec.prefix)}});
  }
  top["printed_forms"] = printed;
  ojson exps = ojson::array();
  for (const auto& rec : f.expansions)
    exps.push_back({{"label", rec.label}, {"expression", to_json(rec.expression)}, {"prefix", to_json(rec.prefix)}});
  top["expansions"] = exps;
  ojson cong = ojson::array();
  for (const auto& rec : f.congruences) {
    ojson o;
    o["label"] = rec.label;
    o["kind"] = rec.kind;
    o["forms"] = rec.forms;
    o["modulus"] = rec.modulus.get_str();
    if (rec.kind == "pair") {
      o["bound"] = rec.bound;
    } else if (rec.kind == "chain") {
      o["residues"] = rec.residues;
    } else {
      o["character"] = rec.character;
      o["primes"] = rec.primes;
      o["printed"] = rec.printed;
    }
    cong.push_back(o);
  }
  top["congruences"] = cong;
  return write_document(top);
}

PolysFile parse_polys(const std::string& text, const std::string& file) {
  Reader r(file, text);
  r.check_keys(r.root(), {"description", "correspondence", "polys"}, "");
  PolysFile f;
  f.description = r.string(r.root()["description"], "/description");
  struct Column {
    int ell;
    long s;
    std::vector<Partition> patterns;
  };
  auto cols = r.rows<Column>("correspondence", [&](const ojson& o, const std::string& p) {
    r.check_keys(o, {"ell", "s", "patterns"}, p);
    Column c{static_cast<int>(r.integer(o["ell"], p + "/ell")), r.integer(o["s"], p + "/s"), {}};
    const auto& pats = r.array(o["patterns"], p + "/patterns");
    for (std::size_t i = 0; i < pats.size(); ++i) {
      const std::string pp = p + "/patterns/" + std::to_string(i);
      std::vector<int> parts;
      for (const auto& x : r.array(pats[i], pp)) parts.push_back(static_cast<int>(r.integer(x, pp)));
      Partition part = make_partition(parts);
      if (part.total() != c.ell + 1) r.fail(pp, "pattern must sum to l + 1");
      c.patterns.push_back(part);
    }
    return c;
  });
  for (std::size_t i = 0; i < cols.size(); ++i) {
    auto& v = f.table.by_ell[cols[i].ell];
    if (cols[i].s != static_cast<long>(v.size())) r.fail("/correspondence/" + std::to_string(i) + "/s", "columns must be listed in order s = 0, 1, ...");
    v.push_back(cols[i].patterns);
  }
  f.polys = r.rows<ProjPolyRecord>("polys", [&](const ojson& o, const std::string& p) {
    r.check_keys(o, {"ell", "N", "label", "coeffs", "disc", "governs", "selector", "erratum", "note"}, p);
    ProjPolyRecord rec;
    rec.ell = static_cast<int>(r.integer(o["ell"], p + "/ell"));
    rec.level = static_cast<int>(r.integer(o["N"], p + "/N"));
    rec.label = r.string(o["label"], p + "/label");
    const auto& cs = r.array(o["coeffs"], p + "/coeffs");
    for (std::size_t i = 0; i < cs.size(); ++i) rec.coeffs.emplace_back(r.integer(cs[i], p + "/coeffs/" + std::to_string(i)));
    if (rec.degree() != rec.ell + 1) r.fail(p + "/coeffs", "degree must be l + 1");
    const auto& d = r.array(o["disc"], p + "/disc");
    if (d.empty()) r.fail(p + "/disc", "expected [[p, e], ..., sign]");
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
      const std::string dp = p + "/disc/" + std::to_string(i);
      const auto& pe = r.array(d[i], dp);
      if (pe.size() != 2) r.fail(dp, "expected [prime, exponent]");
      rec.disc_factors.emplace_back(r.integer(pe[0], dp + "/0"), static_cast<int>(r.integer(pe[1], dp + "/1")));
    }
    rec.disc_sign = static_cast<int>(r.integer(d.back(), p + "/disc/" + std::to_string(d.size() - 1)));
    if (rec.disc_sign != 1 && rec.disc_sign != -1) r.fail(p + "/disc", "last entry must be the sign +1 or -1");
    rec.governs = static_cast<int>(r.integer(o["governs"], p + "/governs"));
    rec.selector = r.string(o["selector"], p + "/selector");
    rec.erratum = r.boolean(o["erratum"], p + "/erratum");
    rec.note = r.string(o["note"], p + "/note");
    return rec;
  });
  return f;
}

std::string serialize(const PolysFile& f) {
  ojson top;
  top["description"] = f.description;
  ojson cols = ojson::array();
  for (const auto& [ell, columns] : f.table.by_ell) {
    for (std::size_t s = 0; s < columns.size(); ++s) {
      ojson pats = ojson::array();
      for (const auto& part : columns[s]) pats.push_back(part.parts);
      cols.push_back({{"ell", ell}, {"s", s}, {"patterns", pats}});
    }
  }
  top["correspondence"] = cols;
  ojson polys = ojson::array();
  for (const auto& rec : f.polys) {
    ojson coeffs = ojson::array();
    for (const auto& c : rec.coeffs) coeffs.push_back(to_long(c));
    ojson disc = ojson::array();
    for (auto [p, e] : rec.disc_factors) disc.push_back(ojson::array({p, e}));
    disc.push_back(rec.disc_sign);
    polys.push_back({{"ell", rec.ell},
                     {"N", rec.level},
                     {"label", rec.label},
                     {"coeffs", coeffs},
                     {"disc", disc},
                     {"governs", rec.governs},
                     {"selector", rec.selector},
                     {"erratum", rec.erratum},
                     {"note", rec.note}});
  }
  top["polys"] = polys;
  return write_document(top);
}

// ---------------------------------------------------------------------------

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("NFR_DATA_DIR"); env && *env) return env;
  return NFR_DEFAULT_DATA_DIR;
}

Catalog Catalog::load(const std::filesystem::path& dir) {
  auto load = [&](const char* name, auto parse) { return parse(read_file(dir / name), (dir / name).string()); };
  Catalog c;
  c.table1_ = load("table1.json", parse_table1);
  c.table2_ = load("table2.json", parse_table2);
  c.forms_ = load("forms.json", parse_forms);
  c.identities_ = load("identities.json", parse_identities);
  c.polys_ = load("polys.json", parse_polys);
  for (const auto& pf : c.identities_.printed_forms) {
    if (!c.has_form(pf.form)) throw SchemaError((dir / "identities.json").string(), "/printed_forms", 0, "unknown form " + pf.form);
  }
  for (const auto& cg : c.identities_.congruences) {
    for (const auto& f : cg.forms) {
      if (!c.has_form(f)) throw SchemaError((dir / "identities.json").string(), "/congruences", 0, "unknown form " + f);
    }
  }
  return c;
}

const NewformRecord& Catalog::form(const std::string& label) const {
  for (const auto& f : forms_.forms) {
    if (f.label == label) return f;
  }
  throw std::out_of_range("unknown newform label: " + label);
}

bool Catalog::has_form(const std::string& label) const {
  return std::any_of(forms_.forms.begin(), forms_.forms.end(), [&](const auto& f) { return f.label == label; });
}

std::vector<Table1Row> Catalog::query(std::optional<int> N, std::optional<int> k) const {
  std::map<std::pair<int, int>, Table1Row> cells;
  for (const auto& row : table1_.rows) cells[{row.N, row.k}] = row;
  std::vector<Table1Row> out;
  for (int n = 1; n <= table1_.max_level; ++n) {
    if (N && *N != n) continue;
    for (int w = 2; w <= table1_.max_weight; w += 2) {
      if (k && *k != w) continue;
      auto it = cells.find({n, w});
      out.push_back(it != cells.end() ? it->second : Table1Row{n, w, 0, 0});
    }
  }
  return out;
}

std::vector<const NewformRecord*> Catalog::query_forms(std::optional<int> N, std::optional<int> k,
                                                       std::optional<std::string> eps) const {
  std::vector<const NewformRecord*> out;
  for (const auto& f : forms_.forms) {
    if (N && f.level != *N) continue;
    if (k && f.weight != *k) continue;
    if (eps && f.eps != *eps) continue;
    out.push_back(&f);
  }
  return out;
}

long Catalog::summatory(int k, int x) const {
  if (x > table1_.max_level) {
    throw std::out_of_range("summatory: stored data stops at N = " + std::to_string(table1_.max_level));
  }
  long total = 0;
  for (const auto& row : table1_.rows) {
    if (row.k == k && row.N <= x) total += row.count;
  }
  return total;
}

QSeries expand_form(const NewformRecord& form, std::size_t precision) {
  Evaluator ev(precision);
  return ev.evaluate(form.expression);
}

std::vector<QSeries> expand_forms(const std::vector<const NewformRecord*>& forms, std::size_t precision) {
  std::vector<std::optional<QSeries>> slots(forms.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    std::map<int, Evaluator> evaluators;  // shared generator caches per level
    for (std::size_t i = next++; i < forms.size(); i = next++) {
      auto it = evaluators.try_emplace(forms[i]->level, precision).first;
      slots[i] = it->second.evaluate(forms[i]->expression);
    }
  };
  const std::size_t n = std::min<std::size_t>(forms.size(), std::max(1U, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::vector<QSeries> out;
  out.reserve(forms.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

TwistClass make_twist_class(const NewformRecord& rep) { return {rep.label, rep.level, t_multiplicity(rep.level)}; }

std::string newform_label(int k, int N, const SignVector& eps, std::string_view suffix) {
  std::string out = "Delta_" + std::to_string(k) + "_" + std::to_string(N);
  for (int e : eps) out += e > 0 ? "_plus" : "_minus";
  if (!suffix.empty()) out += "_" + std::string(suffix);
  return out;
}

}  // namespace nfr
