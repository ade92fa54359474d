#include "mscs/document.hpp"

#include <fstream>
#include <sstream>

namespace mscs {

using nlohmann::json;

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};

json block_to_json(PrimeBlockParams const& b) {
  json j{{"p", b.p}, {"m", b.m}, {"s", b.s}, {"perm", b.permutation},
         {"linear", b.linear}, {"const", b.constant}};
  if (!b.head_table.empty())
    j["head"] = b.head_table;
  if (!b.head_terms.empty()) {
    auto& terms = j["head_terms"] = json::array();
    for (auto const& t : b.head_terms) {
      json vars = json::array();
      for (auto const& f : t.factors)
        vars.push_back({f.variable.position, f.power});
      terms.push_back({{"coef", t.coefficient}, {"vars", vars}});
    }
  }
  return j;
}

PrimeBlockParams block_from_json(json const& j) {
  PrimeBlockParams b;
  b.p = j.at("p").get<int>();
  b.m = j.at("m").get<int>();
  b.s = j.value("s", 1);
  b.permutation = j.contains("perm") ? j.at("perm").get<std::vector<int>>()
                                     : identity_permutation(b.s, b.m);
  b.linear = j.value("linear", std::vector<std::int64_t>{});
  b.constant = j.value("const", std::int64_t{0});
  b.head_table = j.value("head", std::vector<std::int64_t>{});
  if (j.contains("head_terms")) {
    for (auto const& t : j.at("head_terms")) {
      Term term{t.at("coef").get<std::int64_t>(), {}};
      for (auto const& v : t.at("vars"))
        term.factors.push_back(
          {Variable{0, v.at(0).get<int>()}, v.at(1).get<int>()});
      b.head_terms.push_back(std::move(term));
    }
  }
  return b;
}

json blocks_to_json(Theorem2Params const& p) {
  json blocks = json::array();
  for (auto const& b : p.blocks)
    blocks.push_back(block_to_json(b));
  return blocks;
}

Theorem2Params multi_from_json(json const& j) {
  Theorem2Params p;
  p.modulus = j.at("lambda").get<int>();
  for (auto const& b : j.at("blocks"))
    p.blocks.push_back(block_from_json(b));
  p.allow_repeated_primes = j.value("allow_repeated_primes", false);
  return p;
}

std::vector<Claim> claims_from_json(json const& j) {
  std::vector<Claim> claims;
  for (auto const& c : j) {
    auto const value = c.at("value").get<std::int64_t>();
    if (value < 1)
      throw document_error{"claim value must be >= 1"};
    claims.push_back({claim_kind_from_string(c.at("kind").get<std::string>()),
                      static_cast<std::size_t>(value)});
  }
  return claims;
}

} // namespace

std::string construction_name(Construction const& c) {
  return std::visit(overloaded{
                      [](Theorem1Params const&) { return "theorem1"; },
                      [](Theorem2Params const&) { return "theorem2"; },
                      [](Theorem3Params const&) { return "theorem3"; },
                    },
                    c);
}

SequenceSet build_set(Construction const& c) {
  return std::visit(
    overloaded{
      [](Theorem1Params const& p) { return theorem1_set(p); },
      [](Theorem2Params const& p) { return theorem2_set(p); },
      [](Theorem3Params const& p) { return theorem3_set(p); },
    },
    c);
}

json construction_to_json(Construction const& c) {
  return std::visit(
    overloaded{
      [](Theorem1Params const& p) {
        auto j = block_to_json(p.block);
        j["construction"] = "theorem1";
        j["lambda"] = p.modulus;
        return j;
      },
      [](Theorem2Params const& p) {
        json j{{"construction", "theorem2"},
               {"lambda", p.modulus},
               {"blocks", blocks_to_json(p)}};
        if (p.allow_repeated_primes)
          j["allow_repeated_primes"] = true;
        return j;
      },
      [](Theorem3Params const& p) {
        return json{{"construction", "theorem3"},
                    {"lambda", p.base.modulus},
                    {"blocks", blocks_to_json(p.base)},
                    {"ext_p", p.extension.p},
                    {"ext_linear", p.extension.linear},
                    {"ext_const", p.extension.constant}};
      },
    },
    c);
}

Construction construction_from_json(json const& j) {
  try {
    auto const name = j.value("construction", std::string{"theorem1"});
    if (name == "theorem1")
      return Theorem1Params{j.at("lambda").get<int>(), block_from_json(j)};
    if (name == "theorem2")
      return multi_from_json(j);
    if (name == "theorem3") {
      Theorem3Params p;
      p.base = multi_from_json(j);
      p.extension.p = j.at("ext_p").get<int>();
      p.extension.linear = j.value("ext_linear", std::int64_t{0});
      p.extension.constant = j.value("ext_const", std::int64_t{0});
      return p;
    }
    throw document_error{"unknown construction '" + name + "'"};
  } catch (json::exception const& e) {
    throw document_error{std::string{"bad parameter record: "} + e.what()};
  }
}

SetDocument make_document(Construction const& c) {
  return SetDocument{build_set(c), construction_to_json(c)};
}

std::string serialize(SetDocument const& doc) {
  auto const& set = doc.set;
  json claims = json::array();
  for (auto const& c : set.metadata().claims)
    claims.push_back({{"kind", to_string(c.kind)}, {"value", c.value}});
  json provenance{{"construction", set.metadata().construction}};
  if (!doc.parameters.is_null())
    provenance["parameters"] = doc.parameters;

  // one line per key, one line per sequence
  std::ostringstream out;
  out << "{\n";
  out << "  \"schema\": " << document_schema_version << ",\n";
  out << "  \"lambda\": " << set.modulus() << ",\n";
  out << "  \"length\": " << set.length() << ",\n";
  out << "  \"size\": " << set.size() << ",\n";
  out << "  \"claims\": " << claims.dump() << ",\n";
  out << "  \"provenance\": " << provenance.dump() << ",\n";
  out << "  \"sequences\": [\n";
  for (std::size_t i = 0; i < set.size(); ++i) {
    out << "    " << json(set[i].values()).dump();
    out << (i + 1 < set.size() ? ",\n" : "\n");
  }
  out << "  ]\n}\n";
  return out.str();
}

SetDocument parse_document(std::string const& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (json::parse_error const& e) {
    throw document_error{std::string{"parse error: "} + e.what()};
  }
  try {
    if (j.at("schema").get<int>() != document_schema_version)
      throw document_error{"unsupported schema version"};
    auto const lam = j.at("lambda").get<int>();
    auto const len = j.at("length").get<std::size_t>();
    auto const size = j.at("size").get<std::size_t>();
    auto const& rows = j.at("sequences");
    if (!rows.is_array() || rows.size() != size)
      throw document_error{"sequences must hold 'size' rows"};
    std::vector<PhaseSequence> seqs;
    for (auto const& row : rows) {
      auto values = row.get<std::vector<int>>();
      if (values.size() != len)
        throw document_error{"sequence row length differs from 'length'"};
      seqs.emplace_back(lam, std::move(values));
    }
    SetMetadata meta;
    auto const& prov = j.at("provenance");
    meta.construction = prov.at("construction").get<std::string>();
    meta.claims = claims_from_json(j.at("claims"));
    json params = prov.contains("parameters") ? prov.at("parameters") : json{};
    return SetDocument{SequenceSet{std::move(seqs), std::move(meta)},
                       std::move(params)};
  } catch (json::exception const& e) {
    throw document_error{std::string{"malformed set document: "} + e.what()};
  } catch (parameter_error const& e) {
    throw document_error{std::string{"invalid set document: "} + e.what()};
  }
}

void write_document(SetDocument const& doc, std::filesystem::path const& path) {
  std::ofstream out{path, std::ios::binary};
  if (!out)
    throw document_error{"cannot open '" + path.string() + "' for writing"};
  out << serialize(doc);
  if (!out)
    throw document_error{"failed writing '" + path.string() + "'"};
}

SetDocument read_document(std::filesystem::path const& path) {
  std::ifstream in{path, std::ios::binary};
  if (!in)
    throw document_error{"cannot open '" + path.string() + "'"};
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

} // namespace mscs
