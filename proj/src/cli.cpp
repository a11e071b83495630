#include "bdim/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "bdim/bounds.hpp"
#include "bdim/error.hpp"
#include "bdim/io.hpp"
#include "bdim/search.hpp"

namespace bdim::cli {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::IoError:
    case ErrorCode::SizeMismatch:
    case ErrorCode::CycleDetected:
    case ErrorCode::IndexOutOfRange:
      return kIo;
    case ErrorCode::GuardExceeded:
    case ErrorCode::SizeCap:
    case ErrorCode::SolverLaunchFailed:
    case ErrorCode::UnparseableOutput:
    case ErrorCode::ModelCheckFailed:
      return kSolver;
    case ErrorCode::DecodeInconsistent:
    case ErrorCode::PreconditionFailed:
      return kFailed;
    case ErrorCode::BadParameter:
    case ErrorCode::BadArity:
    case ErrorCode::BadPartition:
    case ErrorCode::NotAnExtension:
    case ErrorCode::NotDistinguishing:
    case ErrorCode::FixedPhiArityMismatch:
      return kUsage;
  }
  return kUsage;
}

VerifyMode parse_mode(const std::string& s) {
  if (s == "reflexive") return VerifyMode::ReflexiveInclusive;
  if (s == "distinct") return VerifyMode::DistinctOnly;
  throw Error(ErrorCode::BadParameter, "--mode must be reflexive or distinct");
}

// "a" or "a:b", inclusive.
std::pair<unsigned, unsigned> parse_range(const std::string& s) {
  const auto colon = s.find(':');
  try {
    if (colon == std::string::npos) {
      const auto v = static_cast<unsigned>(std::stoul(s));
      return {v, v};
    }
    return {static_cast<unsigned>(std::stoul(s.substr(0, colon))),
            static_cast<unsigned>(std::stoul(s.substr(colon + 1)))};
  } catch (const std::exception&) {
    throw Error(ErrorCode::BadParameter, "bad range '" + s + "' (expected a or a:b)");
  }
}

std::optional<TruthTable> parse_phi_choice(const std::string& s, unsigned d) {
  if (s == "free") return std::nullopt;
  if (s == "and") return and_function(d);
  if (s == "threshold") return threshold_at_most_one_zero(d);
  if (!s.empty() && s.find_first_not_of("01") == std::string::npos) {
    auto t = TruthTable::from_bit_string(s);
    if (t.arity() != d) throw Error(ErrorCode::FixedPhiArityMismatch, "--phi table length must be 2^d");
    return t;
  }
  throw Error(ErrorCode::BadParameter, "--phi must be free, and, threshold, or a 0/1 table");
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  f << content;
  if (!f) throw Error(ErrorCode::IoError, "cannot write " + path);
}

std::string describe(const Poset& p, std::size_t x) { return std::to_string(x) + " " + p.label(x); }

int report_verify(const Poset& p, const BooleanRealizer& r, const VerifyOutcome& outcome, VerifyMode mode,
                  std::ostream& out) {
  if (outcome.ok()) {
    out << "verified: OK\n";
  } else {
    out << "verified: FAILED\n";
  }
  out << "elements: " << p.size() << "\n";
  out << "orders: " << r.dimension() << "\n";
  out << "ordered pairs checked: " << outcome.pairs_checked << "\n";
  if (mode == VerifyMode::DistinctOnly) {
    out << "all-ones check: skipped (distinct mode)\n";
  } else if (outcome.ok()) {
    out << "all-ones check: passed\n";
  }
  if (!outcome.ok()) {
    const auto& c = *outcome.counterexample;
    if (c.x == c.y) {
      out << "counterexample: phi(all-ones) = 0 violates reflexivity\n";
    } else {
      out << "counterexample: x = " << describe(p, c.x) << ", y = " << describe(p, c.y) << "\n";
    }
    out << "tuple: " << c.tuple.to_string() << "\n";
    out << "expected: " << c.expected << " got: " << c.got << "\n";
  }
  return outcome.ok() ? kSuccess : kFailed;
}

DistinguishingSet parse_d_spec(const std::string& spec, const std::string& poset_spec) {
  if (spec == "singletons") {
    if (poset_spec.rfind("boolean:", 0) == 0) {
      return singletons_of_grid(static_cast<unsigned>(std::stoul(poset_spec.substr(8))), 2);
    }
    if (poset_spec.rfind("grid:", 0) == 0) {
      const auto rest = poset_spec.substr(5);
      const auto x = rest.find('x');
      return singletons_of_grid(static_cast<unsigned>(std::stoul(rest.substr(0, x))),
                                static_cast<unsigned>(std::stoul(rest.substr(x + 1))));
    }
    throw Error(ErrorCode::BadParameter, "--D singletons needs a boolean: or grid: poset");
  }
  DistinguishingSet d;
  if (spec.empty() || spec == "none") return d;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      d.members.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
    } catch (const std::exception&) {
      throw Error(ErrorCode::BadParameter, "bad --D element '" + tok + "'");
    }
  }
  return d;
}

std::string render_signature(const Signature& s) {
  std::string r = "(";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) r += ',';
    r += std::to_string(s[i]);
  }
  return r + ")";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Boolean realizers of finite posets: build, verify, bound, and search"};
  app.require_subcommand(1);

  std::string poset_spec, realizer_spec, mode_flag = "reflexive", out_path, d_spec = "singletons";
  unsigned threads = 1;
  bool force = false;

  auto* verify_cmd = app.add_subcommand("verify", "Check a realizer against a poset over all ordered pairs");
  verify_cmd->add_option("poset", poset_spec, "Poset spec or file")->required();
  verify_cmd->add_option("realizer", realizer_spec, "builtin:b6, builtin:upper:<n>, builtin:grid:<n>x<m> or file")
      ->required();
  verify_cmd->add_option("--mode", mode_flag, "reflexive|distinct");
  verify_cmd->add_option("--threads", threads, "Worker threads");

  unsigned upper_n = 0;
  auto* build_cmd = app.add_subcommand("build-upper", "Build and verify the ceil(5n/6)-order realizer of B_n");
  build_cmd->add_option("n", upper_n, "Lattice order")->required();
  build_cmd->add_option("--out", out_path, "Realizer output file (stdout if omitted)");
  build_cmd->add_option("--threads", threads, "Worker threads for re-verification");

  std::string n_range = "1:13", m_range = "2";
  auto* bounds_cmd = app.add_subcommand("bounds", "Print counting lower bounds for M(n,m)");
  bounds_cmd->add_option("--n", n_range, "n or a:b");
  bounds_cmd->add_option("--m", m_range, "m or a:b");

  auto* sig_cmd = app.add_subcommand("signatures", "Check injectivity of signatures over a reference set");
  sig_cmd->add_option("poset", poset_spec)->required();
  sig_cmd->add_option("realizer", realizer_spec)->required();
  sig_cmd->add_option("--D", d_spec, "singletons, none, or comma-separated indices");
  sig_cmd->add_option("--threads", threads);

  std::string what;
  unsigned d_max = 0;
  auto* exact_cmd = app.add_subcommand("exact", "Exact dimension or Boolean dimension by brute force");
  exact_cmd->add_option("poset", poset_spec)->required();
  exact_cmd->add_option("what", what, "dim|bdim")->required()->check(CLI::IsMember({"dim", "bdim"}));
  exact_cmd->add_option("--d-max", d_max, "Largest d to try");
  exact_cmd->add_option("--mode", mode_flag);
  exact_cmd->add_flag("--force", force, "Override size guards");

  unsigned sat_d = 0;
  std::string phi_flag = "free", engine_flag = "internal", solver_cmd;
  std::uint64_t conflict_limit = 0;
  auto* sat_cmd = app.add_subcommand("sat", "Search for a d-order realizer via SAT");
  sat_cmd->add_option("poset", poset_spec)->required();
  sat_cmd->add_option("--d", sat_d, "Number of orders")->required();
  sat_cmd->add_option("--phi", phi_flag, "free|and|threshold|<bits>");
  sat_cmd->add_option("--engine", engine_flag, "internal|external|emit")
      ->check(CLI::IsMember({"internal", "external", "emit"}));
  sat_cmd->add_option("--solver", solver_cmd, "External solver command with {cnf}");
  sat_cmd->add_option("--out", out_path, "Realizer file (internal/external) or DIMACS file (emit)");
  sat_cmd->add_option("--mode", mode_flag);
  sat_cmd->add_option("--conflict-limit", conflict_limit, "Internal solver conflict budget (0 = none)");
  sat_cmd->add_flag("--force", force);

  std::string cnf_path, varmap_path, model_path;
  auto* decode_cmd = app.add_subcommand("decode", "Decode an external solver model into a verified realizer");
  decode_cmd->add_option("poset", poset_spec)->required();
  decode_cmd->add_option("cnf", cnf_path)->required();
  decode_cmd->add_option("model", model_path, "SAT-competition output")->required();
  decode_cmd->add_option("--varmap", varmap_path, "Varmap sidecar (default <cnf>.varmap)");
  decode_cmd->add_option("--d", sat_d)->required();
  decode_cmd->add_option("--phi", phi_flag);
  decode_cmd->add_option("--mode", mode_flag);
  decode_cmd->add_option("--out", out_path);

  std::string dump_spec;
  auto* dump_cmd = app.add_subcommand("dump", "Print a built-in realizer or a poset in its text format");
  dump_cmd->add_option("spec", dump_spec)->required();

  auto* solve_cmd = app.add_subcommand("dimacs-solve", "Run the internal solver on a DIMACS file");
  solve_cmd->add_option("cnf", cnf_path)->required();
  solve_cmd->add_option("--conflict-limit", conflict_limit);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    const auto start = Clock::now();
    const VerifyMode mode = parse_mode(mode_flag);

    if (*verify_cmd) {
      const Poset p = load_poset_spec(poset_spec);
      const BooleanRealizer r = load_realizer_spec(realizer_spec);
      const auto loaded = Clock::now();
      const auto outcome = verify(p, r, {mode, threads});
      err << "verify time: " << std::fixed << std::setprecision(3) << elapsed_ms(loaded) << " ms\n";
      return report_verify(p, r, outcome, mode, out);
    }

    if (*build_cmd) {
      const BooleanRealizer r = upper_bound_realizer(upper_n);
      const Poset p = boolean_lattice(upper_n);
      const auto outcome = verify(p, r, {VerifyMode::ReflexiveInclusive, threads});
      if (out_path.empty()) {
        write_realizer(r, out);
      } else {
        write_text_file(out_path, serialize_realizer(r));
        out << "n: " << upper_n << "\nd: " << r.dimension() << "\nceil(5n/6): " << five_sixths_ceiling(upper_n)
            << "\nverified: " << (outcome.ok() ? "OK" : "FAILED") << "\n";
      }
      err << "build+verify time: " << std::fixed << std::setprecision(3) << elapsed_ms(start) << " ms\n";
      return outcome.ok() ? kSuccess : kFailed;
    }

    if (*bounds_cmd) {
      const auto [n_lo, n_hi] = parse_range(n_range);
      const auto [m_lo, m_hi] = parse_range(m_range);
      out << std::setw(4) << "n" << std::setw(8) << "m" << std::setw(8) << "|D|" << std::setw(14) << "raw_bound"
          << std::setw(15) << "integer_bound" << std::setw(10) << "formula" << std::setw(12) << "min_m" << "\n";
      for (unsigned n = n_lo; n <= n_hi; ++n) {
        std::string min_m = "-";
        if (n >= 2 && n <= 16) min_m = std::to_string(min_multiplicity_for_target(n, n));
        for (unsigned m = m_lo; m <= m_hi; ++m) {
          const auto b = mn_lower_bound(n, m);
          std::ostringstream raw;
          raw << std::fixed << std::setprecision(6) << b.raw_value;
          out << std::setw(4) << n << std::setw(8) << m << std::setw(8) << std::uint64_t{n} * (m - (m > 0))
              << std::setw(14) << raw.str() << std::setw(15) << b.integer_bound << std::setw(10) << b.formula
              << std::setw(12) << min_m << "\n";
        }
      }
      return kSuccess;
    }

    if (*sig_cmd) {
      const auto d = parse_d_spec(d_spec, poset_spec);
      const Poset p = load_poset_spec(poset_spec);
      const BooleanRealizer r = load_realizer_spec(realizer_spec);
      if (r.ground_size() != p.size()) throw Error(ErrorCode::SizeMismatch, "realizer and poset sizes differ");
      const auto sigs = signature_map(r.orders(), d, threads);
      const auto collision = find_signature_collision(sigs);
      if (d.size() == 0) {
        out << "signatures: degenerate (reference set is empty; every signature is all zeros)\n";
        return collision ? kFailed : kSuccess;
      }
      if (!collision) {
        out << "signatures: injective (" << sigs.size() << " distinct)\n";
        return kSuccess;
      }
      const auto [x, y] = *collision;
      out << "signatures: collision\n";
      out << "  x = " << describe(p, x) << " signature " << render_signature(sigs[x]) << "\n";
      out << "  y = " << describe(p, y) << " signature " << render_signature(sigs[y]) << "\n";
      return kFailed;
    }

    if (*exact_cmd) {
      const Poset p = load_poset_spec(poset_spec);
      if (what == "dim") {
        const unsigned limit = d_max ? d_max : static_cast<unsigned>(std::max<std::size_t>(1, p.size()));
        const auto res = exact_dim(p, limit, {10, 2000, force});
        if (!res.dimension) {
          out << "dim: > " << limit << "\n";
          return kFailed;
        }
        out << "dim: " << *res.dimension << "\n";
        for (std::size_t i = 0; i < res.witness.size(); ++i) {
          out << "extension " << (i + 1) << ":";
          for (auto e : res.witness[i].sequence()) out << ' ' << e;
          out << "\n";
        }
      } else {
        const unsigned limit = d_max ? d_max : 3;
        const auto res = exact_bdim(p, limit, mode, {5, 3, force, true});
        if (!res.dimension) {
          out << "bdim: > " << limit << "\n";
          return kFailed;
        }
        out << "bdim: " << *res.dimension << "\n";
        write_realizer(*res.witness, out);
      }
      err << "search time: " << std::fixed << std::setprecision(3) << elapsed_ms(start) << " ms\n";
      return kSuccess;
    }

    if (*sat_cmd) {
      const Poset p = load_poset_spec(poset_spec);
      const auto fixed = parse_phi_choice(phi_flag, sat_d);
      SearchEngine engine;
      if (engine_flag == "internal") {
        engine = SearchEngine::internal(conflict_limit);
      } else if (engine_flag == "external") {
        if (solver_cmd.empty()) throw Error(ErrorCode::BadParameter, "--engine external needs --solver");
        engine = SearchEngine::external(solver_cmd);
      } else {
        if (out_path.empty()) throw Error(ErrorCode::BadParameter, "--engine emit needs --out");
        engine = SearchEngine::emit_only(out_path);
      }
      EncodeGuards guards;
      guards.force = force;
      const auto report = search_realizer(p, sat_d, fixed, engine, mode, guards);
      out << "variables: " << report.variable_count << "\nclauses: " << report.clause_count << "\n";
      if (engine.kind == SearchEngine::Kind::EmitOnly) {
        out << "dimacs: " << report.dimacs_path << "\nvarmap: " << report.varmap_path << "\n";
        return kSuccess;
      }
      out << "status: " << to_string(report.status) << "\n";
      err << "solve time: " << std::fixed << std::setprecision(3) << elapsed_ms(start) << " ms\n";
      switch (report.status) {
        case SatStatus::Sat:
          out << "realizer: verified (d = " << report.realizer->dimension() << ")\n";
          if (!out_path.empty()) {
            write_text_file(out_path, serialize_realizer(*report.realizer));
          } else {
            write_realizer(*report.realizer, out);
          }
          return kSuccess;
        case SatStatus::Unsat:
          out << "unsat answer: " << (report.verified ? "complete internal search" : "unverified (external solver)")
              << "\n";
          return kFailed;
        case SatStatus::Unknown:
          return kSolver;
      }
    }

    if (*decode_cmd) {
      const Poset p = load_poset_spec(poset_spec);
      const auto fixed = parse_phi_choice(phi_flag, sat_d);
      std::ifstream cnf_in(cnf_path);
      if (!cnf_in) throw Error(ErrorCode::IoError, "cannot open " + cnf_path);
      CnfInstance cnf = read_dimacs(cnf_in);
      const auto vm_path = varmap_path.empty() ? cnf_path + ".varmap" : varmap_path;
      std::ifstream vm_in(vm_path);
      if (!vm_in) throw Error(ErrorCode::IoError, "cannot open " + vm_path);
      read_varmap(vm_in, cnf);
      std::ifstream model_in(model_path);
      if (!model_in) throw Error(ErrorCode::IoError, "cannot open " + model_path);
      std::stringstream model;
      model << model_in.rdbuf();
      const auto sat = interpret_solver_output(cnf, model.str());
      out << "status: " << to_string(sat.status) << "\n";
      if (sat.status != SatStatus::Sat) return sat.status == SatStatus::Unsat ? kFailed : kSolver;
      const auto r = decode_model(cnf, sat.assignment, p, sat_d, fixed, mode);
      out << "realizer: verified (d = " << r.dimension() << ")\n";
      if (!out_path.empty()) {
        write_text_file(out_path, serialize_realizer(r));
      } else {
        write_realizer(r, out);
      }
      return kSuccess;
    }

    if (*dump_cmd) {
      if (is_builtin_realizer_spec(dump_spec)) {
        write_realizer(load_realizer_spec(dump_spec), out);
      } else {
        write_poset(load_poset_spec(dump_spec), out);
      }
      return kSuccess;
    }

    if (*solve_cmd) {
      std::ifstream in(cnf_path);
      if (!in) throw Error(ErrorCode::IoError, "cannot open " + cnf_path);
      const CnfInstance cnf = read_dimacs(in);
      const auto result = internal_sat_solve(cnf, conflict_limit);
      out << format_solver_output(result, cnf.variable_count);
      return result.status == SatStatus::Unknown ? kSolver : kSuccess;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return status_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace bdim::cli
