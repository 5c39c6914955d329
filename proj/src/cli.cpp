#include "rootcert/cli.hpp"

#include <cstdio>
#include <optional>

#include <CLI11.hpp>

#include "rootcert/serialize.hpp"
#include "rootcert/solve.hpp"

namespace rootcert::cli {

namespace {

enum ExitCode {
  kOk = 0,
  kNotConverged = 2,
  kUnknown = 3,
  kUsage = 4,
  kDomain = 5
};

std::string num17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Interval parse_bracket(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos)
    throw CLI::ValidationError("--bracket", "expected the form a,b");
  try {
    double lo = std::stod(text.substr(0, comma));
    double hi = std::stod(text.substr(comma + 1));
    return {lo, hi};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--bracket", "expected the form a,b");
  }
}

int exit_for(const Termination& t) {
  switch (t.kind) {
    case TerminationKind::Converged: return kOk;
    case TerminationKind::DomainError: return kDomain;
    default: return kNotConverged;
  }
}

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::Certified: return kOk;
    case Verdict::Refuted: return kNotConverged;
    case Verdict::Unknown: return kUnknown;
  }
  return kUnknown;
}

void emit_trace(const IterationTrace& trace, const std::string& format,
                std::ostream& out) {
  if (format == "json") {
    out << trace_to_json(trace).dump(2) << "\n";
  } else if (format == "csv") {
    out << trace_to_csv(trace);
  } else {
    out << trace_to_table(trace);
  }
}

void emit_certificate(const Certificate& cert, const std::string& format,
                      std::ostream& out) {
  if (format == "json") {
    out << certificate_to_json(cert).dump(2) << "\n";
    return;
  }
  if (format == "csv") {
    out << "theorem,verdict,interval_lo,interval_hi,effort\n"
        << to_string(cert.theorem) << ',' << to_string(cert.verdict) << ','
        << num17(cert.interval.lo) << ',' << num17(cert.interval.hi) << ','
        << cert.effort << "\n";
    return;
  }
  out << "theorem: " << to_string(cert.theorem) << "\n"
      << "interval: [" << num17(cert.interval.lo) << ", "
      << num17(cert.interval.hi) << "]\n"
      << "root: [" << num17(cert.root.interval.lo) << ", "
      << num17(cert.root.interval.hi) << "]\n"
      << "verdict: " << to_string(cert.verdict) << "\n";
  for (const auto& c : cert.conditions) {
    out << "  " << c.name << " (" << to_string(c.relation)
        << "): " << to_string(c.verdict);
    if (c.witness) out << "  witness=" << num17(*c.witness);
    out << "\n";
  }
  out << "effort: " << cert.effort
      << "  blind_spot_width: " << num17(cert.blind_spot_width) << "\n";
}

struct CommonOpts {
  std::string expr;
  std::string format = "table";
};

void add_format_flag(CLI::App* cmd, std::string& format) {
  cmd->add_option("--out,-o", format, "output format")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();
}

void add_solver_flags(CLI::App* cmd, SolverConfig& cfg) {
  cmd->add_option("--max-iter", cfg.max_iter)->capture_default_str();
  cmd->add_option("--xtol", cfg.xtol)->capture_default_str();
  cmd->add_option("--ftol", cfg.ftol)->capture_default_str();
  cmd->add_option("--cycle-window", cfg.cycle_window)->capture_default_str();
  cmd->add_option("--cycle-tol", cfg.cycle_tol)->capture_default_str();
  cmd->add_option("--derivative-floor", cfg.derivative_floor)
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"certified one-dimensional root finding"};
  app.require_subcommand(1);

  // diff
  auto* diff = app.add_subcommand("diff", "symbolic derivative");
  std::string diff_expr;
  int diff_order = 1;
  diff->add_option("--expr", diff_expr)->required();
  diff->add_option("--order", diff_order)
      ->check(CLI::Range(0, 8))
      ->capture_default_str();

  // eval
  auto* ev = app.add_subcommand("eval", "evaluate at a point");
  std::string eval_expr;
  double eval_x = 0.0;
  ev->add_option("--expr", eval_expr)->required();
  ev->add_option("--x", eval_x)->required();

  // isolate
  auto* iso = app.add_subcommand("isolate", "bracketted root enclosure");
  std::string iso_expr, iso_bracket, iso_format = "table";
  double iso_tol = 1e-12;
  iso->add_option("--expr", iso_expr)->required();
  iso->add_option("--bracket", iso_bracket)->required();
  iso->add_option("--root-tol", iso_tol)->capture_default_str();
  add_format_flag(iso, iso_format);

  // certify
  auto* cert = app.add_subcommand("certify", "verify convergence hypotheses");
  std::string cert_expr, cert_bracket, cert_side = "both",
              cert_kind = "theorem", cert_format = "table";
  double cert_tol = 1e-12;
  int cert_budget = 4096;
  cert->add_option("--expr", cert_expr)->required();
  cert->add_option("--bracket", cert_bracket)->required();
  cert->add_option("--side", cert_side)
      ->check(CLI::IsMember({"left", "right", "both"}))
      ->capture_default_str();
  cert->add_option("--kind", cert_kind)
      ->check(CLI::IsMember({"theorem", "lemma"}))
      ->capture_default_str();
  cert->add_option("--budget", cert_budget)->capture_default_str();
  cert->add_option("--root-tol", cert_tol)->capture_default_str();
  add_format_flag(cert, cert_format);

  // solve
  auto* slv = app.add_subcommand("solve", "iterate from a starting point");
  std::string slv_expr, slv_method = "newton", slv_domain, slv_format = "table";
  double slv_x0 = 0.0;
  SolverConfig slv_cfg;
  slv->add_option("--expr", slv_expr)->required();
  slv->add_option("--x0", slv_x0)->required();
  slv->add_option("--method", slv_method)
      ->check(CLI::IsMember({"newton", "mean"}))
      ->capture_default_str();
  slv->add_option("--domain", slv_domain, "restrict iterates to a,b");
  add_solver_flags(slv, slv_cfg);
  add_format_flag(slv, slv_format);

  // certified-solve
  auto* cs = app.add_subcommand("certified-solve",
                                "certify a side of the bracket, then solve");
  std::string cs_expr, cs_bracket, cs_format = "table";
  SolverConfig cs_cfg;
  double cs_tol = 1e-12;
  int cs_budget = 4096;
  cs->add_option("--expr", cs_expr)->required();
  cs->add_option("--bracket", cs_bracket)->required();
  cs->add_option("--budget", cs_budget)->capture_default_str();
  cs->add_option("--root-tol", cs_tol)->capture_default_str();
  cs->add_flag("--advisory", cs_cfg.advisory,
               "iterate even without a certificate");
  add_solver_flags(cs, cs_cfg);
  add_format_flag(cs, cs_format);

  try {
    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help
      out << app.help();
      return kOk;
    }
    err << e.what() << "\n";
    return kUsage;
  }

  try {
    if (diff->parsed()) {
      Expression e = Expression::parse(diff_expr);
      for (int i = 0; i < diff_order; ++i) e = e.differentiate();
      out << e.format() << "\n";
      return kOk;
    }

    if (ev->parsed()) {
      Expression e = Expression::parse(eval_expr);
      out << num17(e.eval(eval_x)) << "\n";
      return kOk;
    }

    if (iso->parsed()) {
      Expression e = Expression::parse(iso_expr);
      RootEnclosure enc = isolate_root(e, parse_bracket(iso_bracket), iso_tol);
      if (iso_format == "json") {
        out << enclosure_to_json(enc).dump(2) << "\n";
      } else if (iso_format == "csv") {
        out << "lo,hi,sign_left,sign_right,width\n"
            << num17(enc.interval.lo) << ',' << num17(enc.interval.hi) << ','
            << enc.sign_left << ',' << enc.sign_right << ','
            << num17(enc.width()) << "\n";
      } else {
        out << "root in [" << num17(enc.interval.lo) << ", "
            << num17(enc.interval.hi) << "]  signs " << enc.sign_left << "/"
            << enc.sign_right << "  width " << num17(enc.width()) << "\n";
      }
      return kOk;
    }

    if (cert->parsed()) {
      Expression e = Expression::parse(cert_expr);
      Interval bracket = parse_bracket(cert_bracket);
      Expression target =
          cert_kind == "lemma" ? make_sub(e, make_variable()) : e;
      RootEnclosure enc = isolate_root(target, bracket, cert_tol);
      std::vector<Certificate> certs;
      auto certify_side = [&](Side side) {
        double outer = side == Side::Left ? bracket.lo : bracket.hi;
        if (cert_kind == "lemma")
          certs.push_back(
              check_lemma_conditions(e, side, outer, enc, cert_budget));
        else
          certs.push_back(check_theorem(e, side, outer, enc, cert_budget));
      };
      if (cert_side != "right" && bracket.lo < enc.interval.lo)
        certify_side(Side::Left);
      if (cert_side != "left" && enc.interval.hi < bracket.hi)
        certify_side(Side::Right);
      if (certs.empty()) {
        err << "no side of the bracket leaves room to certify\n";
        return kUsage;
      }
      if (cert_format == "json") {
        Json arr = Json::array();
        for (const auto& c : certs) arr.push_back(certificate_to_json(c));
        out << (certs.size() == 1 ? certificate_to_json(certs[0]).dump(2)
                                  : arr.dump(2))
            << "\n";
      } else {
        for (const auto& c : certs) emit_certificate(c, cert_format, out);
      }
      int best = kNotConverged;
      for (const auto& c : certs) best = std::min(best, exit_for(c.verdict));
      return best;
    }

    if (slv->parsed()) {
      Expression e = Expression::parse(slv_expr);
      std::optional<Interval> domain;
      if (!slv_domain.empty()) domain = parse_bracket(slv_domain);
      IterationTrace trace = slv_method == "mean"
                                 ? mean_iterate_solve(e, slv_x0, slv_cfg, domain)
                                 : newton_solve(e, slv_x0, slv_cfg, domain);
      emit_trace(trace, slv_format, out);
      return exit_for(trace.termination);
    }

    if (cs->parsed()) {
      Expression e = Expression::parse(cs_expr);
      CertifiedResult result = certified_solve(e, parse_bracket(cs_bracket),
                                               cs_cfg, cs_budget, cs_tol);
      if (cs_format == "json") {
        Json j;
        j["certificate"] = certificate_to_json(result.certificate);
        j["trace"] = trace_to_json(result.trace);
        j["advisory"] = result.advisory;
        out << j.dump(2) << "\n";
      } else {
        emit_certificate(result.certificate, cs_format, out);
        emit_trace(result.trace, cs_format, out);
        if (result.advisory) out << "advisory: true\n";
      }
      if (result.certificate.verdict == Verdict::Certified)
        return exit_for(result.trace.termination);
      return exit_for(result.certificate.verdict);
    }
  } catch (const SyntaxError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const MultipleVariablesError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NonConstantExponentError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const NoSignChangeError& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  }
  return kUsage;
}

}  // namespace rootcert::cli
