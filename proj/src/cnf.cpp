#include "bdim/cnf.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "bdim/error.hpp"

namespace bdim {

namespace {

void add_trivial_contradiction(CnfInstance& cnf) {
  const int a = static_cast<int>(++cnf.variable_count);
  cnf.varmap.push_back(VarMeaning{});
  cnf.clauses.push_back({a});
  cnf.clauses.push_back({-a});
}

}  // namespace

CnfInstance encode_bdim_sat(const Poset& p, unsigned d, const std::optional<TruthTable>& fixed_phi, VerifyMode mode,
                            const EncodeGuards& guards) {
  const auto n = p.size();
  if (!guards.force && (d > guards.max_orders || n > guards.max_elements)) {
    throw Error(ErrorCode::GuardExceeded, "encoding limited to d <= " + std::to_string(guards.max_orders) +
                                              " and |P| <= " + std::to_string(guards.max_elements) +
                                              " (override with force)");
  }
  if (d > TruthTable::kMaxArity) throw Error(ErrorCode::GuardExceeded, "d exceeds the truth-table arity cap");
  if (fixed_phi && fixed_phi->arity() != d) {
    throw Error(ErrorCode::FixedPhiArityMismatch,
                "fixed phi has arity " + std::to_string(fixed_phi->arity()) + ", expected " + std::to_string(d));
  }

  const RealizerVarLayout layout{n, d, !fixed_phi.has_value()};
  CnfInstance cnf;
  cnf.variable_count = layout.variable_count();
  cnf.varmap.reserve(cnf.variable_count);
  for (unsigned i = 0; i < d; ++i) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = x + 1; y < n; ++y) {
        VarMeaning v;
        v.kind = VarMeaning::Kind::Order;
        v.order = i;
        v.x = static_cast<std::uint32_t>(x);
        v.y = static_cast<std::uint32_t>(y);
        cnf.varmap.push_back(v);
      }
    }
  }
  if (layout.free_phi) {
    for (std::uint32_t t = 0; t < (1U << d); ++t) {
      VarMeaning v;
      v.kind = VarMeaning::Kind::Phi;
      v.tuple = t;
      cnf.varmap.push_back(v);
    }
  }

  // Transitivity: before(x,y) & before(y,z) -> before(x,z).
  for (unsigned i = 0; i < d; ++i) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (y == x) continue;
        for (std::size_t z = 0; z < n; ++z) {
          if (z == x || z == y) continue;
          cnf.clauses.push_back({-layout.before(i, x, y), -layout.before(i, y, z), layout.before(i, x, z)});
        }
      }
    }
  }

  // Linking: if pair (x,y) produces tuple t then phi(t) = leq(x,y). For x != y,
  // e_i = before_i(x,y), so the literal falsifying coordinate i is its opposite.
  bool contradiction = false;
  const std::uint32_t tuples = 1U << d;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      const bool answer = p.leq(x, y);
      for (std::uint32_t t = 0; t < tuples; ++t) {
        if (fixed_phi && (*fixed_phi)[t] == answer) continue;
        std::vector<int> clause;
        clause.reserve(d + 1);
        for (unsigned i = 0; i < d; ++i) {
          const int lit = layout.before(i, x, y);
          clause.push_back(((t >> i) & 1U) ? -lit : lit);
        }
        if (!fixed_phi) {
          clause.push_back(answer ? layout.phi_var(t) : -layout.phi_var(t));
        } else if (clause.empty()) {
          contradiction = true;
          continue;
        }
        cnf.clauses.push_back(std::move(clause));
      }
    }
  }

  if (mode == VerifyMode::ReflexiveInclusive && n > 0) {
    const std::uint32_t ones = tuples - 1;
    if (!fixed_phi) {
      cnf.clauses.push_back({layout.phi_var(ones)});
    } else if (!(*fixed_phi)[ones]) {
      contradiction = true;
    }
  }
  if (contradiction) add_trivial_contradiction(cnf);
  return cnf;
}

std::optional<std::size_t> first_falsified_clause(const CnfInstance& cnf, const std::vector<bool>& assignment) {
  for (std::size_t c = 0; c < cnf.clauses.size(); ++c) {
    bool satisfied = false;
    for (int lit : cnf.clauses[c]) {
      const auto v = static_cast<std::size_t>(lit > 0 ? lit : -lit);
      const bool value = v < assignment.size() && assignment[v];
      if (value == (lit > 0)) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) return c;
  }
  return std::nullopt;
}

void write_dimacs(const CnfInstance& cnf, std::ostream& out) {
  out << "p cnf " << cnf.variable_count << ' ' << cnf.clauses.size() << '\n';
  for (const auto& clause : cnf.clauses) {
    for (int lit : clause) out << lit << ' ';
    out << "0\n";
  }
}

CnfInstance read_dimacs(std::istream& in) {
  CnfInstance cnf;
  std::string line;
  bool have_header = false;
  std::size_t declared_clauses = 0;
  std::vector<int> current;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c' || line[0] == '%') continue;
    std::istringstream ls(line);
    if (line[0] == 'p') {
      std::string p, fmt;
      long long vars = -1, clauses = -1;
      if (!(ls >> p >> fmt >> vars >> clauses) || fmt != "cnf" || vars < 0 || clauses < 0) {
        throw Error(ErrorCode::ParseError, "bad DIMACS header: " + line);
      }
      cnf.variable_count = static_cast<std::uint32_t>(vars);
      declared_clauses = static_cast<std::size_t>(clauses);
      have_header = true;
      continue;
    }
    if (!have_header) throw Error(ErrorCode::ParseError, "clause before DIMACS header");
    long long lit = 0;
    while (ls >> lit) {
      if (lit == 0) {
        if (current.empty()) throw Error(ErrorCode::ParseError, "empty clause in DIMACS input");
        cnf.clauses.push_back(std::move(current));
        current.clear();
      } else {
        if (static_cast<unsigned long long>(lit < 0 ? -lit : lit) > cnf.variable_count) {
          throw Error(ErrorCode::ParseError, "literal " + std::to_string(lit) + " exceeds variable count");
        }
        current.push_back(static_cast<int>(lit));
      }
    }
    if (!ls.eof()) throw Error(ErrorCode::ParseError, "non-numeric token in clause line: " + line);
  }
  if (!have_header) throw Error(ErrorCode::ParseError, "missing DIMACS header");
  if (!current.empty()) throw Error(ErrorCode::ParseError, "unterminated final clause");
  if (cnf.clauses.size() != declared_clauses) {
    throw Error(ErrorCode::ParseError, "header declares " + std::to_string(declared_clauses) + " clauses, found " +
                                           std::to_string(cnf.clauses.size()));
  }
  cnf.varmap.assign(cnf.variable_count, VarMeaning{});
  return cnf;
}

void write_varmap(const CnfInstance& cnf, std::ostream& out) {
  for (std::size_t k = 0; k < cnf.varmap.size(); ++k) {
    const auto& v = cnf.varmap[k];
    out << "var " << (k + 1) << ' ';
    switch (v.kind) {
      case VarMeaning::Kind::Order:
        out << "order " << (v.order + 1) << " before " << v.x << ' ' << v.y << '\n';
        break;
      case VarMeaning::Kind::Phi:
        out << "phi " << v.tuple << '\n';
        break;
      case VarMeaning::Kind::Auxiliary:
        out << "aux\n";
        break;
    }
  }
}

void read_varmap(std::istream& in, CnfInstance& cnf) {
  cnf.varmap.assign(cnf.variable_count, VarMeaning{});
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c' || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag, kind;
    std::size_t k = 0;
    if (!(ls >> tag >> k >> kind) || tag != "var" || k < 1 || k > cnf.variable_count) {
      throw Error(ErrorCode::ParseError, "bad varmap line: " + line);
    }
    VarMeaning v;
    if (kind == "order") {
      unsigned i = 0;
      std::string before;
      if (!(ls >> i >> before >> v.x >> v.y) || i < 1 || before != "before" || v.x >= v.y) {
        throw Error(ErrorCode::ParseError, "bad order record: " + line);
      }
      v.kind = VarMeaning::Kind::Order;
      v.order = i - 1;
    } else if (kind == "phi") {
      if (!(ls >> v.tuple)) throw Error(ErrorCode::ParseError, "bad phi record: " + line);
      v.kind = VarMeaning::Kind::Phi;
    } else if (kind != "aux") {
      throw Error(ErrorCode::ParseError, "unknown varmap kind: " + kind);
    }
    cnf.varmap[k - 1] = v;
  }
}

}  // namespace bdim
