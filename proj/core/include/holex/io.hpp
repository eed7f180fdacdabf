#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "holex/common.hpp"

namespace holex {

using Json = nlohmann::json;

// Shortest text that keeps 17 significant digits; every number in JSON and
// CSV output goes through here.
std::string format_g17(double value);

// JSON serialization with format_g17 applied to every floating-point leaf.
std::string dump_json(const Json& value, int indent = 2);
// Same, on a single line; used for comment-embedded manifests.
std::string dump_json_line(const Json& value);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// Minimal CSV assembly; the writer quotes nothing, so fields must stay free
// of commas and newlines.
class CsvBuilder {
 public:
  explicit CsvBuilder(std::vector<std::string> header);
  void comment(const std::string& line);  // '#'-prefixed preamble line
  void row(const std::vector<std::string>& fields);
  const std::string& text() const { return text_; }

 private:
  std::size_t columns_;
  std::string text_;
};

}  // namespace holex
