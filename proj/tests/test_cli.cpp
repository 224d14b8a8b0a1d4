#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "prn/commands.hpp"

using namespace prn;
using Catch::Matchers::ContainsSubstring;

namespace {

const std::string kQuad = std::string(MODELS_DIR) + "/quad.prn";

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string golden(const std::string& name) { return slurp(std::string(GOLDEN_DIR) + "/" + name); }

struct RunResult {
  int code;
  std::string out;
};

// spawns the real binary; stdout captured, stderr dropped
RunResult run_binary(const std::string& args) {
  const std::string out_path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                               "/prnreduce_test_out.txt";
  const std::string cmd = std::string(PRNREDUCE_BIN) + " " + args + " > " + out_path + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  std::remove(out_path.c_str());
  return r;
}

// minimal structural validator for the subset of JSON Schema the reports use:
// type, required, properties, items
bool validates(const Json& schema, const Json& doc, std::string& why) {
  if (schema.contains("type")) {
    const std::string t = schema["type"];
    const bool ok = (t == "object" && doc.is_object()) || (t == "array" && doc.is_array()) ||
                    (t == "string" && doc.is_string()) || (t == "integer" && doc.is_number_integer()) ||
                    (t == "value" && (doc.is_number_integer() || doc.is_string()));
    if (!ok) {
      why = "expected " + t + ", got " + doc.dump();
      return false;
    }
  }
  if (schema.contains("required"))
    for (const auto& key : schema["required"]) {
      if (!doc.contains(key.get<std::string>())) {
        why = "missing key " + key.get<std::string>();
        return false;
      }
    }
  if (schema.contains("properties"))
    for (const auto& [key, sub] : schema["properties"].items()) {
      if (doc.contains(key) && !validates(sub, doc[key], why)) {
        why = key + ": " + why;
        return false;
      }
    }
  if (schema.contains("items"))
    for (const auto& item : doc) {
      if (!validates(schema["items"], item, why)) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("reduce command reproduces the golden report byte for byte") {
  cli::ReduceOptions opt;
  opt.model_path = kQuad;
  opt.json_path = "-";
  std::ostringstream out;
  REQUIRE(cli::cmd_reduce(opt, out) == cli::kOk);
  REQUIRE(out.str() == golden("reduce_quad.json"));
}

TEST_CASE("every report kind fits its committed schema") {
  const auto schema = Json::parse(golden("report.schema.json"));
  std::string why;

  SECTION("reduce") {
    cli::ReduceOptions opt;
    opt.model_path = kQuad;
    opt.json_path = "-";
    std::ostringstream out;
    cli::cmd_reduce(opt, out);
    INFO(why);
    REQUIRE(validates(schema["reduce"], Json::parse(out.str()), why));
  }
  SECTION("cover") {
    for (const char* name : {"cover_rise_quad.json", "cover_fall_quad.json"}) {
      INFO(name << ": " << why);
      REQUIRE(validates(schema["cover"], Json::parse(golden(name)), why));
    }
  }
  SECTION("traces") {
    INFO(why);
    REQUIRE(validates(schema["traces"], Json::parse(golden("traces_quad.json")), why));
  }
}

TEST_CASE("reduce human summary lists the key numbers") {
  cli::ReduceOptions opt;
  opt.model_path = kQuad;
  std::ostringstream out;
  REQUIRE(cli::cmd_reduce(opt, out) == cli::kOk);
  REQUIRE_THAT(out.str(), ContainsSubstring("objectives: 8"));
  REQUIRE_THAT(out.str(), ContainsSubstring("valid transitions: 7"));
  REQUIRE_THAT(out.str(), ContainsSubstring("activation limits: a=1 b=1 c=1 d=-inf"));
  REQUIRE_THAT(out.str(), ContainsSubstring("inhibition limits: a=+inf b=0 c=0 d=+inf"));
  REQUIRE_THAT(out.str(), ContainsSubstring("enabled transitions: 15 -> 7"));
}

TEST_CASE("cover command matches both golden reports") {
  for (auto [change, file] : {std::pair{"0:1", "cover_rise_quad.json"}, std::pair{"1:0", "cover_fall_quad.json"}}) {
    cli::CoverOptions opt;
    opt.model_path = kQuad;
    opt.component = "a";
    opt.change = change;
    opt.json_path = "-";
    std::ostringstream out;
    REQUIRE(cli::cmd_cover(opt, out) == cli::kOk);
    REQUIRE(out.str() == golden(file));
  }
}

TEST_CASE("oracle trace listing matches the golden report") {
  cli::OracleOptions opt;
  opt.model_path = kQuad;
  opt.max_len = 6;
  opt.json_path = "-";
  std::ostringstream out;
  REQUIRE(cli::cmd_oracle(opt, out) == cli::kOk);
  REQUIRE(out.str() == golden("traces_quad.json"));
}

TEST_CASE("reach reports the state counts before and after reduction") {
  cli::ReachOptions opt;
  opt.model_path = kQuad;
  std::ostringstream out;
  REQUIRE(cli::cmd_reach(opt, out) == cli::kOk);
  REQUIRE_THAT(out.str(), ContainsSubstring("states before reduction: 16"));
  REQUIRE_THAT(out.str(), ContainsSubstring("states after reduction: 8"));
  REQUIRE_THAT(out.str(), ContainsSubstring("verdict: reached"));

  opt.reduce_first = false;
  std::ostringstream out2;
  REQUIRE(cli::cmd_reach(opt, out2) == cli::kOk);
  REQUIRE_THAT(out2.str(), ContainsSubstring("states explored: 16"));
}

TEST_CASE("reach verdicts map to exit codes") {
  SECTION("unreached goal: the ladder saturates below the reporter threshold") {
    cli::ReachOptions opt;
    opt.model_path = std::string(MODELS_DIR) + "/ladder.prn";
    std::ostringstream out;
    REQUIRE(cli::cmd_reach(opt, out) == cli::kUnreached);
    REQUIRE_THAT(out.str(), ContainsSubstring("verdict: unreached"));

    opt.initial = "u=2,v=0";  // starting at the top level flips the verdict
    std::ostringstream out2;
    REQUIRE(cli::cmd_reach(opt, out2) == cli::kOk);
    REQUIRE_THAT(out2.str(), ContainsSubstring("verdict: reached"));
  }
  SECTION("budget exhaustion") {
    cli::ReachOptions opt;
    opt.model_path = kQuad;
    opt.budget = 1;
    std::ostringstream out;
    REQUIRE(cli::cmd_reach(opt, out) == cli::kUnknown);
    REQUIRE_THAT(out.str(), ContainsSubstring("verdict: unknown"));
  }
}

TEST_CASE("overrides replace the file's initial state and goal") {
  cli::ReachOptions opt;
  opt.model_path = kQuad;
  opt.initial = "a=1,b=0,c=0,d=0";
  opt.goal = "a=1";
  std::ostringstream out;
  REQUIRE(cli::cmd_reach(opt, out) == cli::kOk);
  REQUIRE_THAT(out.str(), ContainsSubstring("initial: ⟨a=1 b=0 c=0 d=0⟩"));
}

TEST_CASE("input errors name the problem and use exit code 3") {
  std::ostringstream sink;

  cli::ReduceOptions bad_goal;
  bad_goal.model_path = kQuad;
  bad_goal.goal = "zz=1";
  REQUIRE_THROWS_WITH(cli::cmd_reduce(bad_goal, sink), ContainsSubstring("unknown component 'zz'"));

  cli::CoverOptions bad_change;
  bad_change.model_path = kQuad;
  bad_change.component = "a";
  bad_change.change = "0:2";
  REQUIRE_THROWS_WITH(cli::cmd_cover(bad_change, sink), ContainsSubstring("not a unit step"));

  cli::ReduceOptions missing;
  missing.model_path = "does_not_exist.prn";
  try {
    cli::cmd_reduce(missing, sink);
    FAIL("expected CliError");
  } catch (const cli::CliError& e) {
    REQUIRE(e.code == cli::kInputError);
  }
}

TEST_CASE("JSON model input is accepted through --format json") {
  const ModelFile m = parse_model(slurp(kQuad));
  const std::string json_path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                                "/prnreduce_test_quad.json";
  {
    std::ofstream f(json_path, std::ios::binary);
    f << print_model_json(m);
  }
  cli::ReduceOptions opt;
  opt.model_path = json_path;
  opt.format = "json";
  opt.json_path = "-";
  std::ostringstream out;
  REQUIRE(cli::cmd_reduce(opt, out) == cli::kOk);
  // identical report except for the model name derived from the file name
  auto doc = Json::parse(out.str());
  auto want = Json::parse(golden("reduce_quad.json"));
  doc["model"] = want["model"];
  REQUIRE(doc == want);
  std::remove(json_path.c_str());
}

TEST_CASE("oracle finds all three traces by length 4 and none at length 1") {
  cli::OracleOptions opt;
  opt.model_path = kQuad;
  opt.max_len = 4;
  std::ostringstream out;
  REQUIRE(cli::cmd_oracle(opt, out) == cli::kOk);
  REQUIRE_THAT(out.str(), ContainsSubstring("minimal traces (max length 4): 3"));

  opt.max_len = 1;
  std::ostringstream out1;
  REQUIRE(cli::cmd_oracle(opt, out1) == cli::kOk);
  REQUIRE_THAT(out1.str(), ContainsSubstring("minimal traces (max length 1): 0"));
}

TEST_CASE("oracle on an unenumerable space advises the bounds-based search") {
  // no declared sets, so the oracle must enumerate; the cap stops it
  const std::string path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                           "/prnreduce_test_wide.prn";
  {
    std::ofstream f(path);
    f << "component a 1\ncomponent b 1\ncomponent c 1\n";
    for (const char* v : {"a", "b", "c"})
      for (const char* u : {"a", "b", "c"}) f << "influence " << u << " -> " << v << "\n";
    f << "initial a=0,b=0,c=0\ngoal a=1\n";
  }
  cli::OracleOptions opt;
  opt.model_path = path;
  opt.enumeration_cap = 1000;  // 256^3 admissible tables blow straight past this
  std::ostringstream out;
  try {
    cli::cmd_oracle(opt, out);
    FAIL("expected CliError");
  } catch (const cli::CliError& e) {
    REQUIRE(e.code == cli::kInputError);
    REQUIRE_THAT(e.what(), ContainsSubstring("too large to enumerate"));
    REQUIRE_THAT(e.what(), ContainsSubstring("'reach'"));
  }
  std::remove(path.c_str());
}

TEST_CASE("cover prints an empty listing when nothing enables the change") {
  cli::CoverOptions opt;
  opt.model_path = std::string(MODELS_DIR) + "/ladder.prn";
  opt.component = "u";
  opt.change = "1:2";  // u's table caps at 1, no regulator state enables this
  std::ostringstream out;
  REQUIRE(cli::cmd_cover(opt, out) == cli::kOk);
  REQUIRE_THAT(out.str(), ContainsSubstring("members: 0"));
  REQUIRE_THAT(out.str(), ContainsSubstring("spec count: 0"));
}

TEST_CASE("approx mode limits are never tighter than exact mode") {
  auto limits_of = [](const std::string& mode) {
    cli::ReduceOptions opt;
    opt.model_path = kQuad;
    opt.mode = mode;
    opt.json_path = "-";
    std::ostringstream out;
    REQUIRE(cli::cmd_reduce(opt, out) == cli::kOk);
    return Json::parse(out.str())["limits"];
  };
  const Json exact = limits_of("exact");
  const Json approx = limits_of("approx");

  auto as_value = [](const Json& v, Value neg, Value pos) -> Value {
    if (v.is_string()) return v == "-inf" ? neg : pos;
    return v.get<Value>();
  };
  for (std::size_t c = 0; c < exact["activation"].size(); ++c) {
    const auto& pe = exact["activation"][c]["per_state"];
    const auto& pa = approx["activation"][c]["per_state"];
    for (std::size_t w = 0; w < pe.size(); ++w)
      REQUIRE(as_value(pa[w]["limit"], kNegInf, kPosInf) >= as_value(pe[w]["limit"], kNegInf, kPosInf));
    const auto& qe = exact["inhibition"][c]["per_state"];
    const auto& qa = approx["inhibition"][c]["per_state"];
    for (std::size_t w = 0; w < qe.size(); ++w)
      REQUIRE(as_value(qa[w]["limit"], kNegInf, kPosInf) <= as_value(qe[w]["limit"], kNegInf, kPosInf));
  }
}

TEST_CASE("binary: exit codes and golden JSON through a real process") {
  REQUIRE(run_binary("reduce " + kQuad + " --json -").out == golden("reduce_quad.json"));
  REQUIRE(run_binary("reach " + kQuad).code == 0);
  REQUIRE(run_binary("reach " + std::string(MODELS_DIR) + "/ladder.prn").code == 1);
  REQUIRE(run_binary("reach " + kQuad + " --budget 1").code == 2);
  REQUIRE(run_binary("reduce " + kQuad + " --goal zz=1").code == 3);
  REQUIRE(run_binary("cover " + kQuad + " --component a --change 1:0 --json -").out ==
          golden("cover_fall_quad.json"));
  REQUIRE(run_binary("totally-bogus-subcommand").code == 3);
  REQUIRE(run_binary("reach " + kQuad + " --reduce sideways").code == 3);
  REQUIRE(run_binary("--help").code == 0);
}

TEST_CASE("binary: identical seeds give identical campaign reports") {
  const auto a = run_binary("oracle --campaign 10 --seed 42 --max-len 6");
  const auto b = run_binary("oracle --campaign 10 --seed 42 --max-len 6");
  REQUIRE(a.code == 0);
  REQUIRE(a.out == b.out);
  REQUIRE_THAT(a.out, ContainsSubstring("violations: 0"));
}

TEST_CASE("binary: DOT export writes a well-formed graph") {
  const std::string dot_path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                               "/prnreduce_test.dot";
  REQUIRE(run_binary("reach " + kQuad + " --dot " + dot_path).code == 0);
  const std::string dot = slurp(dot_path);
  REQUIRE_THAT(dot, ContainsSubstring("digraph dynamics {"));
  REQUIRE_THAT(dot, ContainsSubstring("\"⟨a=0 b=0 c=0 d=0⟩\" -> \"⟨a=0 b=1 c=0 d=0⟩\" [label=\"b+\"]"));
  std::remove(dot_path.c_str());
}
