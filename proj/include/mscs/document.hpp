#ifndef MSCS_DOCUMENT_HPP
#define MSCS_DOCUMENT_HPP

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "mscs/constructions.hpp"
#include "mscs/seqcore.hpp"

namespace mscs {

class document_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int document_schema_version = 1;

using Construction = std::variant<Theorem1Params, Theorem2Params,
                                  Theorem3Params>;

std::string construction_name(Construction const& c);
SequenceSet build_set(Construction const& c);

/// Parameter records use the same key names as the generate flags.
nlohmann::json construction_to_json(Construction const& c);
Construction construction_from_json(nlohmann::json const& j);

/// A sequence set plus its provenance record, as stored on disk.
struct SetDocument {
  SequenceSet set;
  /// Full parameter record of the construction, null for external sets.
  nlohmann::json parameters;

  friend bool operator==(SetDocument const&, SetDocument const&) = default;
};

SetDocument make_document(Construction const& c);

std::string serialize(SetDocument const& doc);
SetDocument parse_document(std::string const& text);

void write_document(SetDocument const& doc, std::filesystem::path const& path);
SetDocument read_document(std::filesystem::path const& path);

} // namespace mscs

#endif
