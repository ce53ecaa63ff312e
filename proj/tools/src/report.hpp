#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "sbvecm/subspace.hpp"

namespace sbvecm::cli {

using Json = nlohmann::ordered_json;

Json to_json(const Matrix& m);
Json to_json(const CMatrix& m);  // {"re": ..., "im": ...}
Json to_json(const Vector& v);
Json to_json(const ModelSpec& s);
Json to_json(const SpaceSummary& s);
Json config_json(const RunConfig& cfg);

// "key = value" lines for embedding in CSV comments.
std::vector<std::string> config_comments(const RunConfig& cfg, const std::string& command);

void write_json(const Json& j, const std::filesystem::path& path);

// Header row plus numeric rows, preceded by '#' comment lines.
void write_table_csv(const std::filesystem::path& path, const std::vector<std::string>& comments,
                     const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows);

std::string format_double(double v);

}  // namespace sbvecm::cli
