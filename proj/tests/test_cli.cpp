#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "mscs/acceptance.hpp"
#include "mscs/cli.hpp"
#include "mscs/document.hpp"
#include "mscs/random_params.hpp"

using namespace mscs;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> const& args) {
  std::ostringstream out, err;
  auto const code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(std::string const& name) {
  auto dir = std::filesystem::temp_directory_path()
             / ("mscs-cli-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir / name;
}

bool contains(std::string const& hay, std::string const& needle) {
  return hay.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("generate from flags matches the library") {
  auto const r = cli({"generate", "--lambda", "6", "-p", "3", "-m", "3", "-s",
                      "2", "--perm", "2,3", "--const", "5", "--verify"});
  REQUIRE(r.code == exit_ok);
  CHECK(parse_document(r.out) == make_document(example1_params()));

  auto const t3 = cli({"generate", "--construction", "theorem3", "--lambda", "6",
                       "-p", "3", "-m", "3", "-s", "1", "--perm", "2,3,1",
                       "--linear", "2,5,1", "--ext-p", "2", "--ext-linear", "3"});
  REQUIRE(t3.code == exit_ok);
  CHECK(parse_document(t3.out).set == make_document(example2_params()).set);

  auto const t2 = cli({"generate", "--lambda", "6", "-p", "2,3", "-m", "1,1"});
  REQUIRE(t2.code == exit_ok);
  CHECK(parse_document(t2.out).set == make_document(gcs6_params()).set);
}

TEST_CASE("generate rejects bad parameters with a usage exit") {
  auto const r = cli({"generate", "--lambda", "4", "-p", "4", "-m", "2"});
  CHECK(r.code == exit_usage);
  CHECK(contains(r.err, "p must be prime"));

  CHECK(cli({"generate", "--lambda", "6", "-p", "3,3", "-m", "1,1"}).code
        == exit_usage);
  CHECK(cli({"generate", "--lambda", "6", "-p", "3", "-m", "2", "--perm", "1,1"})
          .code
        == exit_usage);
  CHECK(cli({"generate", "--lambda", "6", "-p", "3", "-m", "x"}).code
        == exit_usage);
  CHECK(cli({"generate", "-p", "3", "-m", "2"}).code == exit_usage);
  CHECK(cli({"bogus"}).code == exit_usage);
  CHECK(cli({}).code == exit_usage);
}

TEST_CASE("random generation is reproducible for a seed") {
  std::vector<std::string> args{"generate", "--lambda", "12", "-p", "2,3",
                                "-m", "3,2", "-s", "2,1", "--random", "--seed",
                                "77", "--verify"};
  auto const a = cli(args);
  auto const b = cli(args);
  REQUIRE(a.code == exit_ok);
  CHECK(a.out == b.out);
  args[11] = "78";
  auto const c = cli(args);
  REQUIRE(c.code == exit_ok);
  CHECK(c.out != a.out);
}

TEST_CASE("generate from a parameter file") {
  auto const params = scratch("params.json");
  {
    std::ofstream out{params};
    out << construction_to_json(Construction{example2_params()}).dump();
  }
  auto const doc = scratch("from_params.json");
  auto const r = cli({"generate", "--params", params.string(), "-o", doc.string()});
  REQUIRE(r.code == exit_ok);
  CHECK(read_document(doc) == make_document(example2_params()));
}

TEST_CASE("verify reports passing and failing claims") {
  auto const doc = scratch("ex1.json");
  write_document(make_document(example1_params()), doc);

  auto const ok = cli({"verify", doc.string()});
  CHECK(ok.code == exit_ok);
  CHECK(contains(ok.out, "MSCS S=3: PASS"));
  CHECK(contains(ok.out, "ZCS Z=24: PASS"));

  auto const gcs = cli({"verify", doc.string(), "--claim", "GCS"});
  CHECK(gcs.code == exit_verification_failed);
  CHECK(contains(gcs.out, "failing shifts: 1 2\n"));

  auto const js = cli({"verify", doc.string(), "--claim", "GCS", "--format", "json"});
  CHECK(js.code == exit_verification_failed);
  auto const j = nlohmann::json::parse(js.out);
  CHECK(j["passed"] == false);
  CHECK(j["claims"][0]["failing_shifts"] == nlohmann::json{1, 2});

  auto const mscs2 = cli({"verify", doc.string(), "--claim", "MSCS", "--value", "2"});
  CHECK(mscs2.code == exit_verification_failed);

  CHECK(cli({"verify", doc.string(), "--claim", "MSCS"}).code == exit_usage);
  CHECK(cli({"verify", scratch("missing.json").string()}).code == exit_usage);
}

TEST_CASE("pmepr writes the IAPR table") {
  auto const doc = scratch("ex2.json");
  auto const csv = scratch("ex2.csv");
  write_document(make_document(example2_params()), doc);
  auto const r = cli({"pmepr", doc.string(), "--oversampling", "8",
                      "--iapr-out", csv.string()});
  REQUIRE(r.code == exit_ok);
  CHECK(contains(r.out, "bound M*S = 6"));
  CHECK(contains(r.out, "satisfied"));

  std::ifstream in{csv};
  std::string line;
  std::getline(in, line);
  CHECK(line == "# df_t,seq0,seq1,seq2");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    REQUIRE(std::count(line.begin(), line.end(), ',') == 3);
    ++rows;
  }
  CHECK(rows == 8 * 54);

  CHECK(cli({"pmepr", doc.string(), "--oversampling", "0"}).code == exit_usage);
}

TEST_CASE("pmepr flags a set that does not meet its claimed bound") {
  // a single all-zero sequence claiming S = 1 peaks at L
  SequenceSet const bad{{PhaseSequence{2, {0, 0, 0, 0}}},
                        SetMetadata{"external", {{ClaimKind::gcs, 1}}}};
  auto const doc = scratch("bad.json");
  write_document(SetDocument{bad, nullptr}, doc);
  auto const r = cli({"pmepr", doc.string()});
  CHECK(r.code == exit_verification_failed);
  CHECK(contains(r.err, "not an MSCS"));
}

TEST_CASE("acceptance run detects a corrupted fixture") {
  auto options = AcceptanceOptions::reduced();
  options.theorem1_draws = 2;
  options.multi_prime_draws = 3;
  options.kronecker_pairs = 2;
  options.corrupt_example1 = true;
  auto const results = run_acceptance(options, nullptr);
  REQUIRE(results.size() == 9);
  CHECK_FALSE(results[0].passed);
  CHECK_FALSE(results[1].passed);
  CHECK_FALSE(all_passed(results));
  for (std::size_t i = 2; i < results.size(); ++i)
    CHECK_MESSAGE(results[i].passed, results[i].detail);
}

TEST_CASE("pmepr of a length-1 sequence is 1") {
  SequenceSet const one{{PhaseSequence{4, {1}}}};
  auto const doc = scratch("one.json");
  write_document(SetDocument{one, nullptr}, doc);
  auto const r = cli({"pmepr", doc.string()});
  CHECK(r.code == exit_ok);
  CHECK(contains(r.out, "set PMEPR 1 "));
  CHECK(contains(r.out, "bound: none"));
}
