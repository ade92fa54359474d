#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <unistd.h>

#include "mscs/constructions.hpp"
#include "mscs/document.hpp"
#include "mscs/random_params.hpp"

using namespace mscs;

namespace {

std::filesystem::path temp_file(std::string const& name) {
  return std::filesystem::temp_directory_path()
         / ("mscs-doc-" + std::to_string(::getpid()) + "-" + name);
}

} // namespace

TEST_CASE("document round trip for each construction") {
  std::vector<Construction> const cases = {example1_params(), gcs6_params(),
                                           example2_params()};
  for (auto const& c : cases) {
    auto const doc = make_document(c);
    auto const text = serialize(doc);
    auto const back = parse_document(text);
    CHECK(back == doc);
    CHECK(serialize(back) == text);
    // the parameter record rebuilds the same set
    CHECK(build_set(construction_from_json(back.parameters)) == doc.set);
  }
}

TEST_CASE("random parameter records round trip") {
  Rng rng{47};
  for (int trial = 0; trial < 30; ++trial) {
    Theorem2Params p{12, {random_block(rng, 2, 3, 1 + trial % 3, 12),
                          random_block(rng, 3, 2, 1 + trial % 2, 12)}, false};
    Construction const c = p;
    auto const j = construction_to_json(c);
    CHECK(construction_to_json(construction_from_json(j)) == j);
    CHECK(build_set(construction_from_json(j)) == build_set(c));
  }
}

TEST_CASE("head terms survive a round trip") {
  auto p = example1_params();
  p.block.head_terms = {{2, {{{0, 1}, 2}}}};
  Construction const c = p;
  CHECK(build_set(construction_from_json(construction_to_json(c)))
        == build_set(c));
}

TEST_CASE("files on disk") {
  auto const path = temp_file("ex1.json");
  auto const doc = make_document(example1_params());
  write_document(doc, path);
  CHECK(read_document(path) == doc);

  // truncated file
  auto const text = serialize(doc);
  {
    std::ofstream out{path};
    out << text.substr(0, text.size() / 2);
  }
  CHECK_THROWS_AS(read_document(path), document_error);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_document(path), document_error);
}

TEST_CASE("malformed documents are rejected") {
  auto const good = nlohmann::json::parse(serialize(make_document(example1_params())));
  auto reject = [](nlohmann::json const& j) {
    CHECK_THROWS_AS(parse_document(j.dump()), document_error);
  };
  CHECK_NOTHROW(parse_document(good.dump()));

  auto j = good;
  j["schema"] = 99;
  reject(j);

  j = good;
  j["sequences"][0][3] = 6;  // outside Z_6
  reject(j);

  j = good;
  j["sequences"][1].erase(0);
  reject(j);

  j = good;
  j["size"] = 4;
  reject(j);

  j = good;
  j.erase("lambda");
  reject(j);

  j = good;
  j["claims"][0]["kind"] = "XYZ";
  reject(j);

  j = good;
  j["claims"][0]["value"] = 0;
  reject(j);

  CHECK_THROWS_AS(parse_document("not json"), document_error);
  CHECK_THROWS_AS(construction_from_json({{"construction", "theorem9"}}),
                  document_error);
  CHECK_THROWS_AS(construction_from_json({{"construction", "theorem1"}}),
                  document_error);
}

TEST_CASE("external sets carry no parameters") {
  SequenceSet const set{{PhaseSequence{2, {0, 0}}, PhaseSequence{2, {0, 1}}},
                        SetMetadata{"external", {{ClaimKind::gcs, 1}}}};
  SetDocument const doc{set, nullptr};
  auto const back = parse_document(serialize(doc));
  CHECK(back.set == set);
  CHECK(back.parameters.is_null());
}
