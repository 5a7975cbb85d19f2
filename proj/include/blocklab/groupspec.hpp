#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "blocklab/constructions.hpp"

namespace blocklab {

/// A constructor expression: Tag(arg, ...) with integer or nested group args.
struct ConstructExpr {
  std::string tag;
  std::vector<i64> int_args;
  std::vector<ConstructExpr> group_args; // for DirectProduct / Wreath bases
  bool is_int = false;                   // leaf integer argument
  i64 int_value = 0;

  static ConstructExpr integer(i64 v) {
    ConstructExpr e;
    e.is_int = true;
    e.int_value = v;
    return e;
  }
};

/// A parsed group specification: either explicit generators in cycle
/// notation, or a constructor expression.
struct GroupSpec {
  std::string name;
  bool has_generators = false;
  int degree = 0;
  std::vector<std::vector<std::vector<int>>> generator_cycles; // per gen, 1-based cycles
  bool has_construct = false;
  ConstructExpr construct;
  std::vector<std::string> tags;
};

namespace spec_detail {

struct Cursor {
  const std::string& text;
  std::size_t pos = 0;
  int line = 1;
  int col = 1;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " +
                     msg);
  }
  char peek() const { return pos < text.size() ? text[pos] : '\0'; }
  char get() {
    char c = text[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }
  void skip_spaces() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) get();
  }
};

inline i64 parse_int(Cursor& c) {
  c.skip_spaces();
  bool neg = false;
  if (c.peek() == '-') {
    neg = true;
    c.get();
  }
  if (!std::isdigit(static_cast<unsigned char>(c.peek()))) c.fail("expected an integer");
  i64 v = 0;
  while (std::isdigit(static_cast<unsigned char>(c.peek()))) v = v * 10 + (c.get() - '0');
  return neg ? -v : v;
}

inline std::string parse_word(Cursor& c) {
  c.skip_spaces();
  std::string w;
  while (std::isalnum(static_cast<unsigned char>(c.peek())) || c.peek() == '_' ||
         c.peek() == '.' || c.peek() == '-')
    w.push_back(c.get());
  if (w.empty()) c.fail("expected a word");
  return w;
}

inline ConstructExpr parse_construct(Cursor& c);

inline ConstructExpr parse_construct_arg(Cursor& c) {
  c.skip_spaces();
  if (std::isdigit(static_cast<unsigned char>(c.peek())) || c.peek() == '-')
    return ConstructExpr::integer(parse_int(c));
  return parse_construct(c);
}

inline ConstructExpr parse_construct(Cursor& c) {
  ConstructExpr e;
  c.skip_spaces();
  std::string tag;
  while (std::isalnum(static_cast<unsigned char>(c.peek())) || c.peek() == '_')
    tag.push_back(c.get());
  if (tag.empty()) c.fail("expected a constructor tag");
  e.tag = tag;
  c.skip_spaces();
  if (c.peek() == '(') {
    c.get();
    c.skip_spaces();
    if (c.peek() != ')') {
      for (;;) {
        ConstructExpr arg = parse_construct_arg(c);
        if (arg.is_int)
          e.int_args.push_back(arg.int_value);
        else
          e.group_args.push_back(std::move(arg));
        c.skip_spaces();
        if (c.peek() == ',') {
          c.get();
          continue;
        }
        break;
      }
    }
    c.skip_spaces();
    if (c.peek() != ')') c.fail("expected ')' in constructor arguments");
    c.get();
  }
  return e;
}

inline void emit_construct(const ConstructExpr& e, std::ostream& os) {
  os << e.tag;
  if (e.int_args.empty() && e.group_args.empty()) return;
  os << '(';
  bool first = true;
  for (const auto& g : e.group_args) {
    if (!first) os << ',';
    emit_construct(g, os);
    first = false;
  }
  for (i64 v : e.int_args) {
    if (!first) os << ',';
    os << v;
    first = false;
  }
  os << ')';
}

} // namespace spec_detail

/// Semantic validation of a constructor expression; names the violated
/// constraint. Mirrors the builders without constructing the groups.
inline void validate_construct(const ConstructExpr& e) {
  auto want_ints = [&](std::size_t n) {
    if (e.int_args.size() != n || !e.group_args.empty())
      throw ParseError(e.tag + ": expected " + std::to_string(n) + " integer argument(s)");
  };
  if (e.tag == "Cyclic" || e.tag == "Sym" || e.tag == "Alt") {
    want_ints(1);
    if (e.int_args[0] < 1) throw ParseError(e.tag + "(n): n must be >= 1");
  } else if (e.tag == "Dihedral") {
    want_ints(1);
    if (e.int_args[0] < 3) throw ParseError("Dihedral(n): n must be >= 3");
  } else if (e.tag == "Frobenius") {
    want_ints(2);
    i64 p = e.int_args[0], f = e.int_args[1];
    if (!is_prime(p)) throw ParseError("Frobenius(p,e): p must be prime");
    if (f < 1 || (p - 1) % f != 0) throw ParseError("Frobenius(p,e): e must divide p-1");
  } else if (e.tag == "SemidirectCyclic") {
    want_ints(3);
    i64 n = e.int_args[0], f = e.int_args[1], j = e.int_args[2];
    if (n < 2) throw ParseError("SemidirectCyclic(n,e,j): n must be >= 2");
    i64 jm = ((j % n) + n) % n;
    if (gcd_i64(jm, n) != 1) throw ParseError("SemidirectCyclic(n,e,j): j must be a unit mod n");
    if (mult_order(jm, n) != f)
      throw ParseError("SemidirectCyclic(n,e,j): j must have multiplicative order exactly e");
  } else if (e.tag == "PSL2") {
    want_ints(1);
    if (!is_prime(e.int_args[0])) throw ParseError("PSL2(q): q must be prime");
  } else if (e.tag == "DirectProduct") {
    if (e.int_args.empty() && e.group_args.empty())
      throw ParseError("DirectProduct: needs at least one factor");
    for (i64 v : e.int_args)
      if (v < 1) throw ParseError("DirectProduct: cyclic factor must be >= 1");
    for (const auto& g : e.group_args) validate_construct(g);
  } else if (e.tag == "Wreath") {
    if (e.group_args.size() != 1 || e.int_args.size() != 1)
      throw ParseError("Wreath(base,k): expected a group base and an integer k");
    if (e.int_args[0] < 1) throw ParseError("Wreath(base,k): k must be >= 1");
    validate_construct(e.group_args[0]);
  } else {
    throw ParseError("unknown constructor tag '" + e.tag + "'");
  }
}

inline PermutationGroup build_construct(const ConstructExpr& e) {
  validate_construct(e);
  if (e.tag == "Cyclic") return cyclic_group(e.int_args[0]);
  if (e.tag == "Sym") return symmetric_group(e.int_args[0]);
  if (e.tag == "Alt") return alternating_group(e.int_args[0]);
  if (e.tag == "Dihedral") return dihedral_group(e.int_args[0]);
  if (e.tag == "Frobenius") return frobenius_group(e.int_args[0], e.int_args[1]);
  if (e.tag == "SemidirectCyclic")
    return semidirect_cyclic(e.int_args[0], e.int_args[1], e.int_args[2]);
  if (e.tag == "PSL2") return psl2(e.int_args[0]);
  if (e.tag == "DirectProduct") {
    std::vector<PermutationGroup> factors;
    for (const auto& g : e.group_args) factors.push_back(build_construct(g));
    for (i64 v : e.int_args) factors.push_back(cyclic_group(v));
    return direct_product(factors);
  }
  if (e.tag == "Wreath") return wreath_cyclic(build_construct(e.group_args[0]), e.int_args[0]);
  throw ParseError("unknown constructor tag '" + e.tag + "'");
}

/// Parses the line-oriented spec grammar:
///   name <id> / degree <n> / gen (<pts>)... / construct <Tag>(<params>) /
///   tag <word>; '#' comments.
inline GroupSpec parse_spec(const std::string& text) {
  GroupSpec spec;
  spec_detail::Cursor c{text};
  bool saw_name = false;
  while (c.pos < text.size()) {
    c.skip_spaces();
    if (c.peek() == '\0') break;
    if (c.peek() == '\n' || c.peek() == '\r') {
      c.get();
      continue;
    }
    if (c.peek() == '#') {
      while (c.pos < text.size() && c.peek() != '\n') c.get();
      continue;
    }
    std::string key = spec_detail::parse_word(c);
    if (key == "name") {
      if (saw_name) c.fail("duplicate 'name'");
      spec.name = spec_detail::parse_word(c);
      saw_name = true;
    } else if (key == "degree") {
      i64 d = spec_detail::parse_int(c);
      if (d < 1 || d > 100000) c.fail("degree out of range");
      spec.degree = static_cast<int>(d);
    } else if (key == "gen") {
      if (spec.has_construct) c.fail("'gen' cannot be combined with 'construct'");
      if (spec.degree == 0) c.fail("'degree' must precede 'gen'");
      std::vector<std::vector<int>> cycles;
      c.skip_spaces();
      if (c.peek() != '(') c.fail("expected '(' after gen");
      while (c.peek() == '(') {
        c.get();
        std::vector<int> cyc;
        for (;;) {
          c.skip_spaces();
          if (c.peek() == ')') {
            c.get();
            break;
          }
          i64 pt = spec_detail::parse_int(c);
          if (pt < 1 || pt > spec.degree) c.fail("point out of range 1..degree");
          cyc.push_back(static_cast<int>(pt));
        }
        if (!cyc.empty()) cycles.push_back(std::move(cyc));
        c.skip_spaces();
      }
      // Validates bijectivity and repeated points.
      try {
        Permutation::from_cycles(spec.degree, cycles);
      } catch (const DomainError& e) {
        c.fail(e.what());
      }
      spec.generator_cycles.push_back(std::move(cycles));
      spec.has_generators = true;
    } else if (key == "construct") {
      if (spec.has_generators) c.fail("'construct' cannot be combined with 'gen'");
      if (spec.has_construct) c.fail("duplicate 'construct'");
      spec.construct = spec_detail::parse_construct(c);
      try {
        validate_construct(spec.construct);
      } catch (const ParseError& e) {
        c.fail(e.what());
      }
      spec.has_construct = true;
    } else if (key == "tag") {
      spec.tags.push_back(spec_detail::parse_word(c));
    } else {
      c.fail("unknown keyword '" + key + "'");
    }
    c.skip_spaces();
    if (c.peek() != '\0' && c.peek() != '\n' && c.peek() != '\r' && c.peek() != '#')
      c.fail("trailing text on line");
  }
  if (!saw_name) throw ParseError("spec is missing 'name'");
  if (!spec.has_generators && !spec.has_construct)
    throw ParseError("spec needs either generators or a constructor");
  return spec;
}

/// Canonical re-emission; parse-emit round trips normalize whitespace only.
inline std::string emit_spec(const GroupSpec& spec) {
  std::ostringstream os;
  os << "name " << spec.name << "\n";
  if (spec.has_construct) {
    os << "construct ";
    spec_detail::emit_construct(spec.construct, os);
    os << "\n";
  } else {
    os << "degree " << spec.degree << "\n";
    for (const auto& cycles : spec.generator_cycles) {
      os << "gen ";
      if (cycles.empty()) os << "()";
      for (const auto& cyc : cycles) {
        os << '(';
        for (std::size_t i = 0; i < cyc.size(); ++i) os << (i ? " " : "") << cyc[i];
        os << ')';
      }
      os << "\n";
    }
  }
  for (const auto& t : spec.tags) os << "tag " << t << "\n";
  return os.str();
}

inline PermutationGroup build_group(const GroupSpec& spec) {
  if (spec.has_construct) return build_construct(spec.construct);
  std::vector<Permutation> gens;
  for (const auto& cycles : spec.generator_cycles)
    gens.push_back(Permutation::from_cycles(spec.degree, cycles));
  return PermutationGroup(spec.degree, std::move(gens));
}

inline GroupSpec parse_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open spec file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_spec(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

} // namespace blocklab
