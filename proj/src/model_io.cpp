#include "evlogic/model_io.hpp"

#include <fstream>
#include <sstream>

#include "evlogic/errors.hpp"

namespace evlogic {

namespace {

using nlohmann::json;

std::vector<std::string> string_array(const json& j, const std::string& where) {
  if (!j.is_array()) throw ModelError(where + ": expected an array of strings");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) throw ModelError(where + ": expected an array of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

}  // namespace

ModelDocument model_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModelError(std::string("malformed model JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ModelError("model document must be a JSON object");
  for (const auto& [key, _] : doc.items())
    if (key != "worlds" && key != "evidence" && key != "valuation")
      throw ModelError("unexpected field '" + key + "' in model document");
  if (!doc.contains("worlds")) throw ModelError("model document lacks 'worlds'");

  ModelDocument m;
  m.worlds = string_array(doc["worlds"], "worlds");

  if (doc.contains("evidence")) {
    if (!doc["evidence"].is_object()) throw ModelError("'evidence' must be an object");
    for (const auto& [id, value] : doc["evidence"].items()) {
      const std::string where = "evidence '" + id + "'";
      if (value.is_object()) {
        if (!value.contains("pairs") || value.size() != 1)
          throw ModelError(where + ": relation object must hold exactly 'pairs'");
        std::vector<std::pair<std::string, std::string>> pairs;
        for (const auto& p : value["pairs"]) {
          auto ends = string_array(p, where + " pair");
          if (ends.size() != 2) throw ModelError(where + ": each pair must have two worlds");
          pairs.emplace_back(ends[0], ends[1]);
        }
        auto [partition, errors] = partition_from_pairs(m.worlds, pairs);
        if (!errors.empty()) {
          std::ostringstream os;
          os << where << " is not an equivalence relation:";
          for (const auto& e : errors) os << "\n  " << e;
          throw ModelError(os.str());
        }
        m.evidence.emplace(id, std::move(partition));
      } else if (value.is_array()) {
        Partition blocks;
        for (const auto& b : value) blocks.push_back(string_array(b, where + " block"));
        m.evidence.emplace(id, std::move(blocks));
      } else {
        throw ModelError(where + ": expected an array of blocks or a pairs object");
      }
    }
  }

  if (doc.contains("valuation")) {
    if (!doc["valuation"].is_object()) throw ModelError("'valuation' must be an object");
    for (const auto& [atom, ws] : doc["valuation"].items()) {
      if (!is_identifier(atom)) throw ModelError("valuation key '" + atom + "' is not an atom name");
      m.valuation.emplace(atom, string_array(ws, "valuation '" + atom + "'"));
    }
  }
  return m;
}

ModelDocument load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

nlohmann::json model_to_json(const ModelDocument& m) {
  json j;
  j["worlds"] = m.worlds;
  j["evidence"] = json::object();
  for (const auto& [id, blocks] : m.evidence) j["evidence"][id] = blocks;
  j["valuation"] = json::object();
  for (const auto& [atom, ws] : m.valuation) j["valuation"][atom] = ws;
  return j;
}

}  // namespace evlogic
