#include "meetjoin/io.hpp"

#include "meetjoin/error.hpp"
#include "meetjoin/numtheory.hpp"

#include <yaml-cpp/yaml.h>

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace meetjoin {

namespace {

std::string where(const std::string& source, const YAML::Node& node) {
  return source + ":" + std::to_string(node.Mark().line + 1);
}

std::string where(const std::string& source, const YAML::Mark& mark) {
  return source + ":" + std::to_string(mark.line + 1);
}

YAML::Node load(std::string_view text, const std::string& source) {
  try {
    return YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ParseError(where(source, e.mark) + ": " + e.msg);
  }
}

template <class T>
T scalar(const YAML::Node& node, const std::string& source, const char* what) {
  if (!node.IsScalar()) throw ParseError(where(source, node) + ": " + what + " must be a scalar");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ParseError(where(source, node) + ": bad " + what + " '" + node.Scalar() + "'");
  }
}

Natural positive(const YAML::Node& node, const std::string& source, const char* what) {
  const long long v = scalar<long long>(node, source, what);
  if (v <= 0) throw ParseError(where(source, node) + ": " + what + " must be a positive integer");
  return static_cast<Natural>(v);
}

PosetInput divisor_input(std::vector<Natural> generators, const YAML::Node& root, const std::string& source,
                         bool generators_are_set) {
  Natural l = 1;
  for (Natural g : generators) l = lcm(l, g);
  const Natural top[] = {l};
  DivisorLattice lattice = divisor_down_set(top);
  if (root["set"] || !generators_are_set) {
    std::vector<Index> members;
    if (root["set"]) {
      for (const auto& item : root["set"]) {
        const Natural v = positive(item, source, "set member");
        if (l % v != 0) throw ParseError(where(source, item) + ": " + std::to_string(v) + " is not in the lattice");
        members.push_back(lattice.index_of(v));
      }
    } else {
      for (Index k = 0; k < lattice.size(); ++k) members.push_back(k);
    }
    Subset set(lattice.poset, std::move(members));
    return PosetInput{lattice.poset, std::move(set)};
  }
  Subset set = lattice.subset(generators);
  return PosetInput{lattice.poset, std::move(set)};
}

} // namespace

PosetInput parse_poset_text(std::string_view text, const std::string& source) {
  const YAML::Node root = load(text, source);
  if (!root.IsMap()) throw ParseError(source + ": expected a mapping with n and relation");

  try {
    if (const YAML::Node d = root["divisors_of"]) {
      return divisor_input({positive(d, source, "divisors_of")}, root, source, false);
    }
    if (const YAML::Node g = root["generated_by"]) {
      if (!g.IsSequence() || g.size() == 0) throw ParseError(where(source, g) + ": generated_by must be a nonempty list");
      std::vector<Natural> gens;
      for (const auto& item : g) gens.push_back(positive(item, source, "generator"));
      return divisor_input(std::move(gens), root, source, true);
    }
  } catch (const DuplicateError& e) {
    throw ParseError(source + ": " + e.what());
  }

  const YAML::Node nn = root["n"];
  if (!nn) throw ParseError(source + ": missing field 'n'");
  const long long n_signed = scalar<long long>(nn, source, "n");
  if (n_signed < 0) throw ParseError(where(source, nn) + ": n must be nonnegative");
  const std::size_t n = static_cast<std::size_t>(n_signed);

  std::vector<OrderPair> relation;
  if (const YAML::Node rel = root["relation"]) {
    if (!rel.IsSequence()) throw ParseError(where(source, rel) + ": relation must be a list of pairs");
    for (const auto& pair : rel) {
      if (!pair.IsSequence() || pair.size() != 2) throw ParseError(where(source, pair) + ": expected a pair [i, j]");
      const long long a = scalar<long long>(pair[0], source, "element index");
      const long long b = scalar<long long>(pair[1], source, "element index");
      if (a < 1 || b < 1 || static_cast<std::size_t>(a) > n || static_cast<std::size_t>(b) > n)
        throw ParseError(where(source, pair) + ": pair [" + std::to_string(a) + ", " + std::to_string(b) +
                         "] is outside 1.." + std::to_string(n));
      relation.emplace_back(static_cast<Index>(a - 1), static_cast<Index>(b - 1));
    }
  }

  std::vector<std::string> labels;
  if (const YAML::Node ls = root["labels"]) {
    if (!ls.IsSequence()) throw ParseError(where(source, ls) + ": labels must be a list");
    std::map<std::string, std::size_t> seen;
    for (const auto& item : ls) {
      labels.push_back(scalar<std::string>(item, source, "label"));
      if (!seen.emplace(labels.back(), item.Mark().line).second)
        throw DuplicateError(where(source, item) + ": label '" + labels.back() + "' appears twice");
    }
    if (labels.size() != n)
      throw ParseError(where(source, ls) + ": " + std::to_string(labels.size()) + " labels for " +
                       std::to_string(n) + " elements");
  }

  auto poset = std::make_shared<const FinitePoset>(build_poset(n, relation, std::move(labels)));
  if (const YAML::Node s = root["set"]) {
    if (!s.IsSequence()) throw ParseError(where(source, s) + ": set must be a list of labels");
    std::vector<Index> members;
    for (const auto& item : s) {
      const std::string name = scalar<std::string>(item, source, "set member");
      const auto idx = poset->find_label(name);
      if (!idx) throw ParseError(where(source, item) + ": unknown element '" + name + "'");
      members.push_back(*idx);
    }
    try {
      return PosetInput{poset, Subset(poset, std::move(members))};
    } catch (const DuplicateError& e) {
      throw DuplicateError(where(source, s) + ": " + e.what());
    }
  }
  return PosetInput{poset, Subset::whole(poset)};
}

PosetInput parse_poset_file(const std::string& path) { return parse_poset_text(read_file(path), path); }

PosetFunction parse_function_text(std::string_view text, std::shared_ptr<const FinitePoset> poset,
                                  const std::string& source) {
  const YAML::Node root = load(text, source);
  std::vector<std::optional<Rational>> values(poset->size());
  if (root.IsNull()) return PosetFunction(std::move(poset), std::move(values));
  if (!root.IsMap()) throw ParseError(source + ": expected a mapping from element label to value");

  std::vector<std::size_t> line_of(poset->size(), 0);
  for (const auto& kv : root) {
    const std::string name = scalar<std::string>(kv.first, source, "label");
    const auto idx = poset->find_label(name);
    if (!idx) throw ParseError(where(source, kv.first) + ": unknown element '" + name + "'");
    if (values[*idx])
      throw DuplicateError(where(source, kv.first) + ": value for '" + name + "' already given on line " +
                           std::to_string(line_of[*idx]));
    const std::string raw = scalar<std::string>(kv.second, source, "value");
    try {
      values[*idx] = parse_rational(raw);
    } catch (const ParseError& e) {
      throw ParseError(where(source, kv.second) + ": " + e.what());
    }
    line_of[*idx] = kv.first.Mark().line + 1;
  }
  return PosetFunction(std::move(poset), std::move(values));
}

PosetFunction parse_function_table(const std::string& path, std::shared_ptr<const FinitePoset> poset) {
  return parse_function_text(read_file(path), std::move(poset), path);
}

PosetFunction parse_function_table(const std::string& path, const Subset& cover) {
  PosetFunction f = parse_function_table(path, cover.parent());
  try {
    (void)f.restrict_to(cover);
  } catch (const MissingValueError& e) {
    throw MissingValueError(path + ": " + e.what());
  }
  return f;
}

namespace {

std::string cell(const Rational& q) { return to_string(q); }

std::string cell(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <class T>
std::string csv_of(const DenseMatrix<T>& m, const std::vector<std::string>& labels) {
  if (labels.size() != m.rows()) throw IndexError("label count does not match matrix size");
  std::ostringstream out;
  out << "element";
  for (const auto& l : labels) out << ',' << l;
  out << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << labels[i];
    for (std::size_t j = 0; j < m.cols(); ++j) out << ',' << cell(m(i, j));
    out << '\n';
  }
  return out.str();
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

} // namespace

std::string matrix_csv(const SymMatrix& m, const std::vector<std::string>& labels) { return csv_of(m, labels); }
std::string matrix_csv(const RealMatrix& m, const std::vector<std::string>& labels) { return csv_of(m, labels); }

ParsedMatrixCsv parse_matrix_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  ParsedMatrixCsv out;
  std::vector<std::vector<Rational>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split(line);
    if (line_no == 1) {
      if (fields.empty() || fields[0] != "element") throw ParseError("line 1: expected header 'element,...'");
      out.labels.assign(fields.begin() + 1, fields.end());
      continue;
    }
    if (fields.size() != out.labels.size() + 1)
      throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(out.labels.size() + 1) +
                       " fields");
    std::vector<Rational> row;
    for (std::size_t j = 1; j < fields.size(); ++j) {
      try {
        row.push_back(parse_rational(fields[j]));
      } catch (const ParseError&) {
        try {
          std::size_t used = 0;
          const double x = std::stod(fields[j], &used);
          if (used != fields[j].size()) throw ParseError("trailing characters");
          row.push_back(from_double(x));
        } catch (const std::exception&) {
          throw ParseError("line " + std::to_string(line_no) + ": bad entry '" + fields[j] + "'");
        }
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.size() != out.labels.size()) throw ParseError("matrix is not square");
  out.matrix = rows.empty() ? SymMatrix() : SymMatrix::from_rows(rows);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << contents;
  if (!out) throw IoError("write to '" + path + "' failed");
}

} // namespace meetjoin
