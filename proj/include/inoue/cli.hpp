#pragma once

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "inoue/census.hpp"
#include "inoue/equivalence.hpp"
#include "inoue/surface_json.hpp"

namespace inoue {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;  // definite negative, or bad input / usage
inline constexpr int kExitUnknown = 2;   // a bounded search was inconclusive

namespace detail {

inline ojson issues_to_json(const std::vector<Issue>& issues) {
  ojson a = ojson::array();
  for (const auto& i : issues) a.push_back({{"field", i.field}, {"reason", i.clause}});
  return a;
}

inline ojson quad_to_json(const QuadExt& x) { return {{"exact", x.str()}, {"value", x.to_double()}}; }

inline ojson verdict_to_json(const Verdict& v) {
  ojson j;
  j["verdict"] = to_string(v.kind);
  if (v.witness) j["witness"] = witness_to_json(*v.witness);
  if (!v.obstruction.empty()) j[v.kind == VerdictKind::Unknown ? "reason" : "obstruction"] = v.obstruction;
  if (v.kind == VerdictKind::Unknown) j["bound"] = v.bound;
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

inline ojson bihol_to_json(const BiholResult& b) {
  ojson j;
  j["K"] = matrix_to_json(b.K);
  j["eta"] = {to_json_int(b.l1), to_json_int(b.l2)};
  j["v2"] = {to_json_int(b.v2[0]), to_json_int(b.v2[1])};
  j["map"] = {{"c", quad_to_json(b.map.c)}, {"d", quad_to_json(b.map.d)}, {"e", quad_to_json(b.map.e)},
              {"f", quad_to_json(b.map.f)}, {"g", quad_to_json(b.map.g)}};
  if (!b.t_matches) j["target_t"] = {quad_to_json(b.t_re), quad_to_json(b.t_im)};
  j["max_deviation"] = b.max_deviation;
  return j;
}

inline int exit_for(VerdictKind v) {
  return v == VerdictKind::Equivalent ? kExitOk : v == VerdictKind::NotEquivalent ? kExitNegative : kExitUnknown;
}

}  // namespace detail

/// Entry point of the inoue tool; returns the process exit code. Reports go to `out`
/// as JSON (census may use CSV), diagnostics to `err`.
inline int cli_dispatch(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Inoue surfaces: validation, homotopy equivalence, biholomorphisms, census"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::string file_a, file_b, bounds_spec;
  long bound = 0, eta_bound = 0;

  auto* validate_cmd = app.add_subcommand("validate", "Check a surface file against the defining conditions");
  validate_cmd->add_option("FILE", file_a, "surface JSON")->required();

  auto* equiv_cmd = app.add_subcommand("equiv", "Decide homotopy equivalence of two surfaces");
  equiv_cmd->add_option("A", file_a, "surface JSON")->required();
  equiv_cmd->add_option("B", file_b, "surface JSON")->required();
  equiv_cmd->add_option("--bound", bound, "coefficient box for conjugator searches")->check(CLI::PositiveNumber);

  auto* bihol_cmd = app.add_subcommand("bihol", "Construct a biholomorphism / deformation certificate");
  bihol_cmd->add_option("A", file_a, "surface JSON")->required();
  bihol_cmd->add_option("B", file_b, "surface JSON")->required();
  bihol_cmd->add_option("--eta-bound", eta_bound, "box for (l1, l2)")->check(CLI::PositiveNumber);

  auto* reps_cmd = app.add_subcommand("reps", "List the deformation representatives of a surface");
  reps_cmd->add_option("FILE", file_a, "surface JSON")->required();

  auto* fp_cmd = app.add_subcommand("fingerprint", "Center class and commutativity of Gamma");
  fp_cmd->add_option("FILE", file_a, "surface JSON")->required();

  CensusConfig cfg;
  std::vector<std::string> kinds;
  std::string out_path, format = "json";
  std::size_t verify_samples = 0;
  unsigned seed = 1;
  auto* census_cmd = app.add_subcommand("census", "Partition a parameter box into homotopy classes");
  census_cmd->add_option("--nmax", cfg.nmax, "bound on |matrix entries|")->required()->check(CLI::PositiveNumber);
  census_cmd->add_option("--pmax", cfg.pmax, "bound on |p|, |q|")->required()->check(CLI::PositiveNumber);
  census_cmd->add_option("--rmax", cfg.rmax, "bound on |r|")->required()->check(CLI::PositiveNumber);
  census_cmd->add_option("--kinds", kinds, "subset of S0,S+,S- (default S+,S-)")
      ->delimiter(',')
      ->check(CLI::IsMember({"S0", "S+", "S-"}));
  census_cmd->add_option("--out", out_path, "write the report here instead of stdout");
  census_cmd->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  census_cmd->add_option("--jobs", cfg.jobs, "worker threads (0 = all cores)");
  census_cmd->add_option("--verify-samples", verify_samples, "re-check this many sampled pairs per kind");
  census_cmd->add_option("--seed", seed, "seed for --verify-samples");

  app.add_option("--bounds", bounds_spec, "search bounds, e.g. conj=64,eta=8,s0=6 (default: $INOUE_DEFAULT_BOUNDS)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitNegative;
  }

  try {
    SearchBounds b = SearchBounds::parse(bounds_spec, SearchBounds::from_env());
    if (bound > 0) b.conjugator = b.s0 = bound;
    if (eta_bound > 0) b.eta = eta_bound;

    if (*validate_cmd) {
      ojson j;
      try {
        SurfaceDescriptor d = parse_surface_file(file_a);
        j["valid"] = true;
        j["surface"] = surface_to_json(d);
        out << j.dump(2) << "\n";
        return kExitOk;
      } catch (const ValidationError& e) {
        j["valid"] = false;
        j["error"] = "validation";
        j["issues"] = detail::issues_to_json(e.issues());
      } catch (const SchemaError& e) {
        j["valid"] = false;
        j["error"] = "schema";
        j["issues"] = detail::issues_to_json(e.issues());
      }
      out << j.dump(2) << "\n";
      return kExitNegative;
    }

    if (*equiv_cmd) {
      Verdict v = decide_homotopy(parse_surface_file(file_a), parse_surface_file(file_b), b);
      out << detail::verdict_to_json(v).dump(2) << "\n";
      return detail::exit_for(v.kind);
    }

    if (*bihol_cmd) {
      DeformationVerdict dv = deformation_class(parse_surface_file(file_a), parse_surface_file(file_b), b);
      ojson j;
      j["outcome"] = to_string(dv.outcome);
      j["homotopy"] = detail::verdict_to_json(dv.homotopy);
      j["chain"] = dv.chain;
      if (dv.bihol) j["biholomorphism"] = detail::bihol_to_json(*dv.bihol);
      out << j.dump(2) << "\n";
      switch (dv.outcome) {
        case DeformationOutcome::SameClass: return kExitOk;
        case DeformationOutcome::Distinct: return kExitNegative;
        default: return kExitUnknown;
      }
    }

    if (*reps_cmd) {
      SurfaceDescriptor d = parse_surface_file(file_a);
      auto reps = enumerate_representatives(d);
      ojson j;
      j["input"] = surface_to_json(d);
      j["count"] = reps.size();
      j["representatives"] = ojson::array();
      for (const auto& r : reps) j["representatives"].push_back(surface_to_json(r));
      out << j.dump(2) << "\n";
      return kExitOk;
    }

    if (*fp_cmd) {
      SurfaceDescriptor d = parse_surface_file(file_a);
      GroupDescriptor G = group_of(d);
      Fingerprint fp = fingerprint(G);
      ojson j;
      j["kind"] = to_string(d.kind);
      j["center"] = to_string(fp.center);
      j["gamma_abelian"] = fp.gamma_abelian;
      j["relations_hold"] = all_passed(relation_check(G));
      out << j.dump(2) << "\n";
      return kExitOk;
    }

    if (*census_cmd) {
      cfg.bounds = b;
      if (!kinds.empty()) {
        cfg.kinds.clear();
        for (const auto& k : kinds) cfg.kinds.push_back(kind_from_string(k));
      }
      cfg.format = format == "csv" ? ReportFormat::Csv : ReportFormat::Json;
      CensusReport report = run_census(cfg);
      std::string text = cfg.format == ReportFormat::Csv ? census_to_csv(report) : census_to_json(report).dump(2) + "\n";
      if (out_path.empty()) {
        out << text;
      } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!(f << text)) {
          err << "error: cannot write '" << out_path << "'\n";
          return kExitNegative;
        }
      }
      if (verify_samples > 0) {
        SampleCheck sc = verify_census_samples(report, verify_samples, seed);
        for (const auto& f : sc.failures) err << "sample check failed: " << f << "\n";
        if (!sc.failures.empty()) return kExitNegative;
      }
      if (report.unknown_verdicts() > 0) {
        err << report.unknown_verdicts() << " pair(s) left undecided; raise --bounds to resolve\n";
        return kExitUnknown;
      }
      return kExitOk;
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNegative;
  } catch (const SchemaError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNegative;
  } catch (const MalformedInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitNegative;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNegative;
  }
  return kExitNegative;
}

}  // namespace inoue
