#include "rootcert/serialize.hpp"

#include <cstdio>

namespace rootcert {

namespace {

std::string num17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json termination_to_json(const Termination& t) {
  Json j;
  j["kind"] = to_string(t.kind);
  if (t.kind == TerminationKind::CycleDetected) {
    j["period"] = t.period;
    j["cycle_points"] = t.cycle_points;
  }
  if (!t.detail.empty()) j["detail"] = t.detail;
  return j;
}

}  // namespace

Json trace_to_json(const IterationTrace& trace) {
  Json j;
  j["method"] = to_string(trace.method);
  j["x0"] = trace.x0;
  j["iterates"] = trace.iterates;
  j["residuals"] = trace.residuals;
  j["termination"] = termination_to_json(trace.termination);
  j["iterations"] = trace.iterations;
  j["final"] = trace.final;
  return j;
}

Json enclosure_to_json(const RootEnclosure& enc) {
  Json j;
  j["interval"] = {{"lo", enc.interval.lo}, {"hi", enc.interval.hi}};
  j["sign_left"] = enc.sign_left;
  j["sign_right"] = enc.sign_right;
  j["width"] = enc.width();
  return j;
}

Json certificate_to_json(const Certificate& cert) {
  Json j;
  j["theorem"] = to_string(cert.theorem);
  j["interval"] = {{"lo", cert.interval.lo}, {"hi", cert.interval.hi}};
  j["root"] = {{"lo", cert.root.interval.lo}, {"hi", cert.root.interval.hi}};
  j["verdict"] = to_string(cert.verdict);
  Json conds = Json::array();
  for (const auto& c : cert.conditions) {
    Json jc;
    jc["name"] = c.name;
    jc["relation"] = to_string(c.relation);
    jc["verdict"] = to_string(c.verdict);
    if (c.witness) jc["witness"] = *c.witness;
    conds.push_back(std::move(jc));
  }
  j["conditions"] = std::move(conds);
  j["effort"] = cert.effort;
  j["blind_spot_width"] = cert.blind_spot_width;
  return j;
}

std::string trace_to_csv(const IterationTrace& trace) {
  std::string out = "n,x,f\n";
  for (std::size_t i = 0; i < trace.iterates.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += num17(trace.iterates[i]);
    out += ',';
    out += num17(trace.residuals[i]);
    out += '\n';
  }
  return out;
}

std::string trace_to_table(const IterationTrace& trace) {
  std::string out;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%4s  %-25s %-25s\n", "n", "x", "f");
  out += buf;
  for (std::size_t i = 0; i < trace.iterates.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%4zu  %-25.17g %-25.17g\n", i,
                  trace.iterates[i], trace.residuals[i]);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "termination: %s  iterations: %d  final: %.17g\n",
                to_string(trace.termination.kind), trace.iterations,
                trace.final);
  out += buf;
  return out;
}

}  // namespace rootcert
