#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "curvefrob/cli.hpp"
#include "schema_validator.hpp"

using namespace curvefrob;
using testutil::SchemaValidator;

namespace {

const char* kA3 = R"({"weights":{"x":"1","y":"3/2"},"f":"x","g":"x^3 + y^2"})";
const char* kNode = R"({"weights":{"x":"1","y":"1"},"f":"x + y","g":"x*y"})";

CliResult run(std::vector<std::string> args, std::string stdin_content = "") {
    return run_cli(args, [stdin_content] { return stdin_content; });
}

SchemaValidator report_schema() {
    std::ifstream in(std::string(CURVEFROB_REPO_DIR) + "/schema/report.schema.json");
    REQUIRE(in.good());
    return SchemaValidator(Json::parse(in));
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("spectrum section of A_3 is the golden array") {
    CliResult r = run({"spectrum"}, kA3);
    CHECK(r.exit_code == 0);
    CHECK(r.out == "[[\"0\",\"1\"],[\"1/2\",\"1\"],[\"1\",\"1\"]]\n");
}

TEST_CASE("problem documents can come from files") {
    CliResult r = run({"spectrum", std::string(CURVEFROB_REPO_DIR) + "/data/ak3.json"});
    CHECK(r.exit_code == 0);
    CHECK(r.out == "[[\"0\",\"1\"],[\"1/2\",\"1\"],[\"1\",\"1\"]]\n");
    CliResult missing = run({"spectrum", "/nonexistent/input.json"});
    CHECK(missing.exit_code == 3);
}

TEST_CASE("exit code contract") {
    CHECK(run({"bogus"}).exit_code == 2);
    CHECK(run({}).exit_code == 2);
    CHECK(run({"analyze", "--bad-flag"}, kA3).exit_code == 2);
    CHECK(run({"analyze", "--seed"}, kA3).exit_code == 2);
    CHECK(run({"ak"}).exit_code == 2);
    CHECK(run({"ak", "1"}).exit_code == 2);
    CHECK(run({"ak", "four"}).exit_code == 2);
    CHECK(run({"analyze"}, "{not json").exit_code == 3);
    CHECK(run({"analyze"}, R"({"weights":{"x":"1"},"f":"x","g":"x*y"})").exit_code == 3);
    CHECK(run({"analyze"}, R"({"weights":{"x":"1","y":"1"},"f":"x","g":"x + y^2"})").exit_code ==
          3);
    CHECK(run({"analyze"}, R"({"weights":{"x":"1","y":"1"},"f":"x","g":"x^2 + z"})").exit_code ==
          3);
    CHECK(run({"verify"}, kNode).exit_code == 0);
    CHECK(run({"analyze"}, kA3).exit_code == 0);
    CHECK(run({"ak", "4"}).exit_code == 0);
    // t samples must be nonzero rationals
    CHECK(run({"verify", "--t-samples", "1,0"}, kNode).exit_code == 3);
    CHECK(run({"verify", "--t-samples", "1,junk"}, kNode).exit_code == 3);
    CHECK(run({"verify", "--seed", "-1"}, kNode).exit_code == 2);
}

TEST_CASE("explicit t samples are used verbatim and echoed") {
    CliResult r = run({"verify", "--t-samples", "1,1/3"}, kNode);
    CHECK(r.exit_code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["input"]["t_samples"] == Json::parse(R"(["1","1/3"])"));
}

TEST_CASE("a failing check drives exit code 1") {
    // u = (0, -1) cancels f = x + y down to x, whose critical scheme on the
    // fibre xy = 1 is empty: the strict u-sample probe must fail
    CliResult r = run({"verify"},
                      R"({"weights":{"x":"1","y":"1"},"f":"x + y","g":"x*y","u_samples":[["0","-1"]]})");
    CHECK(r.exit_code == 1);
    Json j = Json::parse(r.out);
    CHECK(j["summary"]["failed"] != "0");
}

TEST_CASE("validation errors carry machine-readable codes") {
    CliResult r = run({"analyze"}, R"({"weights":{"x":"1","y":"1"},"f":"x","g":"x + y^2"})");
    CHECK(r.exit_code == 3);
    Json j = Json::parse(r.out);
    CHECK(j["error"]["code"] == "SmoothCurve");
    CliResult r2 =
        run({"analyze"}, R"json({"weights":{"x":"1","y":"1"},"f":"x","g":"x*(x + y)"})json");
    Json j2 = Json::parse(r2.out);
    CHECK(j2["error"]["code"] == "NonIsolated");
}

TEST_CASE("ak compares the closed form against the pipeline") {
    CliResult r = run({"ak", "4"});
    CHECK(r.exit_code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["match"] == true);
    CHECK(j["diff"].empty());
    CHECK(j["oracle"] == Json::parse(R"([["0","2"],["1","2"]])"));
    CHECK(j["oracle"] == j["pipeline"]);
}

TEST_CASE("verify emits a pass/fail summary with exit code 0 on success") {
    CliResult r = run({"verify", "--seed", "7"}, kNode);
    CHECK(r.exit_code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["summary"]["failed"] == "0");
    CHECK(j["summary"]["total"] == j["summary"]["passed"]);
    bool saw_fail = false;
    for (const Json& c : j["checks"]) saw_fail = saw_fail || !c["pass"].get<bool>();
    CHECK_FALSE(saw_fail);
}

TEST_CASE("byte determinism for identical input and seed") {
    CliResult a = run({"verify", "--seed", "7"}, kNode);
    CliResult b = run({"verify", "--seed", "7"}, kNode);
    CHECK(a.out == b.out);
    CliResult c = run({"analyze", "--seed", "3"}, kA3);
    CliResult d = run({"analyze", "--seed", "3"}, kA3);
    CHECK(c.out == d.out);
}

TEST_CASE("emitted reports parse back to the same JSON value") {
    for (const CliResult& r :
         {run({"analyze"}, kA3), run({"verify"}, kNode), run({"connection"}, kA3),
          run({"frobenius"}, kA3), run({"ak", "3"})}) {
        REQUIRE(r.exit_code == 0);
        Json parsed = Json::parse(r.out);
        CHECK(parsed.dump() + "\n" == r.out);
    }
}

TEST_CASE("an empty check list serializes as []") {
    CHECK(json_checks({}).dump() == "[]");
}

TEST_CASE("--pretty changes the bytes but not the value") {
    CliResult compact = run({"analyze"}, kA3);
    CliResult pretty = run({"analyze", "--pretty"}, kA3);
    CHECK(compact.out != pretty.out);
    CHECK(Json::parse(compact.out) == Json::parse(pretty.out));
}

TEST_CASE("--output writes the report to a file") {
    std::string path = "/tmp/curvefrob_test_output.json";
    std::remove(path.c_str());
    CliResult r = run({"spectrum", "--output", path}, kA3);
    CHECK(r.exit_code == 0);
    CHECK(r.out.empty());
    CHECK(slurp(path) == "[[\"0\",\"1\"],[\"1/2\",\"1\"],[\"1\",\"1\"]]\n");
    std::remove(path.c_str());
    CliResult bad = run({"spectrum", "--output", "/nonexistent/dir/out.json"}, kA3);
    CHECK(bad.exit_code == 2);
}

TEST_CASE("every emitted report validates against the published schema") {
    SchemaValidator schema = report_schema();
    for (const CliResult& r :
         {run({"analyze"}, kA3), run({"verify"}, kNode), run({"spectrum"}, kA3),
          run({"connection"}, kA3), run({"frobenius"}, kA3), run({"ak", "5"}),
          run({"analyze"}, R"({"weights":{"x":"1","y":"1"},"f":"x","g":"x + y^2"})")}) {
        Json j = Json::parse(r.out);
        CHECK(schema.validate(j));
    }
    // sanity: the validator does reject malformed documents
    CHECK_FALSE(schema.validate(Json::parse(R"({"unexpected":"shape"})")));
}

TEST_CASE("problem documents validate against the problem schema") {
    std::ifstream in(std::string(CURVEFROB_REPO_DIR) + "/schema/problem.schema.json");
    REQUIRE(in.good());
    SchemaValidator schema{Json::parse(in)};
    for (const char* doc : {kA3, kNode}) CHECK(schema.validate(Json::parse(doc)));
    for (const char* name : {"ak3", "node", "p23", "smooth_invalid"}) {
        std::ifstream f(std::string(CURVEFROB_REPO_DIR) + "/data/" + name + ".json");
        REQUIRE(f.good());
        CHECK(schema.validate(Json::parse(f)));
    }
    CHECK_FALSE(schema.validate(Json::parse(R"({"weights":{"x":"1","y":"1"},"f":"x"})")));
    CHECK_FALSE(
        schema.validate(Json::parse(R"({"weights":{"x":"1","y":"0.5"},"f":"x","g":"x*y"})")));
}

TEST_CASE("u_samples are validated and probed") {
    // wrong length
    CliResult bad = run({"verify"},
                        R"({"weights":{"x":"1","y":"1"},"f":"x + y","g":"x*y","u_samples":[["1"]]})");
    CHECK(bad.exit_code == 3);
    // mu = 2 here, so vectors of length 2 are accepted and produce one extra
    // check per sample
    CliResult ok = run({"verify"},
                       R"({"weights":{"x":"1","y":"1"},"f":"x + y","g":"x*y","u_samples":[["0","1/2"]]})");
    CHECK(ok.exit_code == 0);
    Json j = Json::parse(ok.out);
    bool found = false;
    for (const Json& c : j["checks"]) found = found || c["name"] == "fibre_semisimplicity_u1";
    CHECK(found);
}

TEST_CASE("seed in the document is used unless overridden") {
    CliResult doc_seed = run({"verify"}, R"({"weights":{"x":"1","y":"1"},"f":"x + y","g":"x*y","seed":7})");
    CliResult flag_seed = run({"verify", "--seed", "7"}, kNode);
    CHECK(doc_seed.out == flag_seed.out);
    CliResult other = run({"verify", "--seed", "8"}, kNode);
    CHECK(doc_seed.out != other.out);
}
