#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "evlogic/finite_model.hpp"

namespace evlogic {

/// Reads a model document. Evidence values are arrays of blocks, or
/// {"pairs": [[a, b], ...]} holding an explicit equivalence relation.
/// Throws ModelError on malformed JSON, schema mismatches or relations that
/// are not equivalences.
ModelDocument model_from_json(std::string_view text);
ModelDocument load_model(const std::filesystem::path& path);

nlohmann::json model_to_json(const ModelDocument& m);

}  // namespace evlogic
