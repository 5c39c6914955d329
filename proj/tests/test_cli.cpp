#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rootcert/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> argv) {
  std::ostringstream out, err;
  int code = rootcert::cli::run(argv, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json load_schema(const std::string& name) {
  std::ifstream in(std::string(DOCS_DIR) + "/" + name);
  REQUIRE(in.good());
  return nlohmann::json::parse(in);
}

// minimal validator for the draft-07 subset the shipped schemas use:
// type, required, properties, items, enum
void validate(const nlohmann::json& value, const nlohmann::json& schema,
              const std::string& path) {
  CAPTURE(path);
  if (schema.contains("type")) {
    const std::string t = schema["type"];
    bool ok = (t == "object" && value.is_object()) ||
              (t == "array" && value.is_array()) ||
              (t == "string" && value.is_string()) ||
              (t == "number" && value.is_number()) ||
              (t == "integer" && value.is_number_integer()) ||
              (t == "boolean" && value.is_boolean());
    REQUIRE(ok);
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& v : schema["enum"]) found |= v == value;
    CHECK(found);
  }
  if (schema.contains("required"))
    for (const auto& key : schema["required"])
      CHECK(value.contains(key.get<std::string>()));
  if (schema.contains("properties"))
    for (const auto& [key, sub] : schema["properties"].items())
      if (value.contains(key)) validate(value[key], sub, path + "." + key);
  if (schema.contains("items") && value.is_array()) {
    int i = 0;
    for (const auto& item : value)
      validate(item, schema["items"], path + "[" + std::to_string(i++) + "]");
  }
}

}  // namespace

TEST_CASE("eval prints the value with full precision") {
  Run r = cli({"eval", "--expr", "x^3-2*x+2", "--x", "-2"});
  CHECK(r.code == 0);
  CHECK(r.out == "-2\n");
}

TEST_CASE("diff prints the simplified derivative") {
  Run r = cli({"diff", "--expr", "x^3-2*x+2"});
  CHECK(r.code == 0);
  CHECK(r.out == "3*x^2-2\n");
  Run r2 = cli({"diff", "--expr", "x^3-2*x+2", "--order", "2"});
  CHECK(r2.code == 0);
  CHECK(r2.out == "6*x\n");
  Run r0 = cli({"diff", "--expr", "sin(x)", "--order", "0"});
  CHECK(r0.out == "sin(x)\n");
}

TEST_CASE("solve emits a JSON trace with the documented fields") {
  Run r = cli({"solve", "--expr", "x^3-2*x+2", "--x0", "-400", "--out",
               "json"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["method"] == "Newton");
  CHECK(j["x0"] == -400.0);
  CHECK(j["termination"]["kind"] == "Converged");
  REQUIRE(j["iterates"].is_array());
  REQUIRE(j["residuals"].is_array());
  CHECK(j["iterates"].size() == j["residuals"].size());
  CHECK(j["iterations"].get<int>() + 1 ==
        static_cast<int>(j["iterates"].size()));
  CHECK(j["iterates"][0] == -400.0);
  CHECK(j["final"].get<double>() ==
        doctest::Approx(-1.7692923542386314).epsilon(1e-15));
}

TEST_CASE("solve reports a detected cycle with exit code 2") {
  Run r = cli({"solve", "--expr", "if(x<=0, x^2+x, x^2-x)", "--x0",
               "-0.333333333333333333", "--out", "json"});
  CHECK(r.code == 2);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["termination"]["kind"] == "CycleDetected");
  CHECK(j["termination"]["period"] == 2);
  REQUIRE(j["termination"]["cycle_points"].size() == 2);
}

TEST_CASE("solve with the mean method converges on cos") {
  Run r = cli({"solve", "--expr", "cos(x)", "--x0", "0", "--method", "mean",
               "--out", "json"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["method"] == "MeanIterate");
  CHECK(j["final"].get<double>() ==
        doctest::Approx(0.7390851332151607).epsilon(1e-12));
}

TEST_CASE("solve csv output has a header and one row per iterate") {
  Run r = cli({"solve", "--expr", "x^2+x", "--x0", "-0.333333333333333333",
               "--out", "csv"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "n,x,f");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows >= 2);
}

TEST_CASE("isolate emits the enclosure") {
  Run r = cli({"isolate", "--expr", "x^3-2*x+2", "--bracket", "-2,0", "--out",
               "json"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  double lo = j["interval"]["lo"].get<double>();
  double hi = j["interval"]["hi"].get<double>();
  CHECK(lo <= -1.7692923542386314);
  CHECK(hi >= -1.7692923542386327);
  CHECK(hi - lo <= 1e-12);
  CHECK(j["sign_left"] != j["sign_right"]);
}

TEST_CASE("certify reports verdicts and exit codes") {
  Run left = cli({"certify", "--expr", "x^3-2*x+2", "--bracket", "-5,0",
                  "--side", "left", "--out", "json"});
  CHECK(left.code == 0);
  auto jl = nlohmann::json::parse(left.out);
  CHECK(jl["theorem"] == "Theorem1");
  CHECK(jl["verdict"] == "Certified");
  REQUIRE(jl["conditions"].size() == 4);
  for (const auto& c : jl["conditions"]) CHECK(c["verdict"] == "Certified");

  Run bad = cli({"certify", "--expr", "x^2+x", "--bracket", "-0.5,0.3",
                 "--side", "left", "--out", "json"});
  CHECK(bad.code == 2);
  auto jb = nlohmann::json::parse(bad.out);
  CHECK(jb["verdict"] == "Refuted");
  CHECK(jb["conditions"][0]["name"] == "C1");
  double w = jb["conditions"][0]["witness"].get<double>();
  CHECK(w > -0.5);
  CHECK(w < 0.0);
}

TEST_CASE("certify lemma conditions for cos") {
  Run r = cli({"certify", "--expr", "cos(x)", "--bracket", "0,1", "--side",
               "left", "--kind", "lemma", "--out", "json"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["theorem"] == "Lemma1");
  CHECK(j["verdict"] == "Certified");
}

TEST_CASE("certified-solve bundles certificate and trace") {
  Run r = cli({"certified-solve", "--expr", "x^3-2*x+2", "--bracket", "-5,0",
               "--out", "json"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["certificate"]["verdict"] == "Certified");
  CHECK(j["trace"]["termination"]["kind"] == "Converged");
  CHECK(j["advisory"] == false);

  Run refused = cli({"certified-solve", "--expr", "sin(x)", "--bracket",
                     "2.6,3.6", "--out", "json"});
  CHECK(refused.code == 2);
  auto jr = nlohmann::json::parse(refused.out);
  CHECK(jr["trace"]["termination"]["kind"] == "Refused");

  Run adv = cli({"certified-solve", "--expr", "sin(x)", "--bracket", "2.6,3.6",
                 "--advisory", "--out", "json"});
  auto ja = nlohmann::json::parse(adv.out);
  CHECK(ja["advisory"] == true);
  CHECK(ja["trace"]["termination"]["kind"] == "Converged");
}

TEST_CASE("usage errors exit 4") {
  CHECK(cli({}).code == 4);
  CHECK(cli({"solve", "--x0", "1"}).code == 4);          // missing --expr
  CHECK(cli({"solve", "--expr", "x+", "--x0", "1"}).code == 4);
  CHECK(cli({"solve", "--expr", "x+y", "--x0", "1"}).code == 4);
  CHECK(cli({"solve", "--expr", "x^x", "--x0", "1"}).code == 4);
  CHECK(cli({"eval", "--expr", "x", "--x", "1", "--bogus"}).code == 4);
  CHECK(cli({"isolate", "--expr", "x", "--bracket", "nope"}).code == 4);
}

TEST_CASE("domain and bracketing errors exit 5") {
  CHECK(cli({"eval", "--expr", "log(x)", "--x", "-1"}).code == 5);
  CHECK(cli({"isolate", "--expr", "x^2", "--bracket", "-1,1"}).code == 5);
}

TEST_CASE("help exits 0") {
  Run r = cli({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("solve") != std::string::npos);
}

TEST_CASE("JSON outputs validate against the shipped schemas") {
  auto trace_schema = load_schema("trace.schema.json");
  auto cert_schema = load_schema("certificate.schema.json");

  for (auto argv : std::vector<std::vector<std::string>>{
           {"solve", "--expr", "x^3-2*x+2", "--x0", "-400", "--out", "json"},
           {"solve", "--expr", "if(x<=0, x^2+x, x^2-x)", "--x0",
            "-0.333333333333333333", "--out", "json"},
           {"solve", "--expr", "cos(x)", "--x0", "0", "--method", "mean",
            "--out", "json"}}) {
    Run r = cli(argv);
    validate(nlohmann::json::parse(r.out), trace_schema, "trace");
  }

  for (auto argv : std::vector<std::vector<std::string>>{
           {"certify", "--expr", "x^3-2*x+2", "--bracket", "-5,0", "--side",
            "left", "--out", "json"},
           {"certify", "--expr", "x^2+x", "--bracket", "-0.5,0.3", "--side",
            "left", "--out", "json"},
           {"certify", "--expr", "cos(x)", "--bracket", "0,1", "--side",
            "left", "--kind", "lemma", "--out", "json"}}) {
    Run r = cli(argv);
    validate(nlohmann::json::parse(r.out), cert_schema, "certificate");
  }

  Run cs = cli({"certified-solve", "--expr", "x^3-2*x+2", "--bracket", "-5,0",
                "--out", "json"});
  auto j = nlohmann::json::parse(cs.out);
  validate(j["certificate"], cert_schema, "bundle.certificate");
  validate(j["trace"], trace_schema, "bundle.trace");
}

TEST_CASE("output is byte-identical across runs") {
  std::vector<std::string> argv = {"certified-solve", "--expr", "x^3-2*x+2",
                                   "--bracket", "-5,0", "--out", "json"};
  Run a = cli(argv);
  Run b = cli(argv);
  CHECK(a.code == b.code);
  CHECK(a.out == b.out);

  std::vector<std::string> argv2 = {"solve", "--expr", "cos(x)-x", "--x0",
                                    "1", "--out", "csv"};
  CHECK(cli(argv2).out == cli(argv2).out);
}
