#include "holex/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace holex {

std::string format_g17(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

namespace {

void dump_into(const Json& value, int indent, int depth, std::string& out) {
  const std::string pad(std::size_t(indent) * depth, ' ');
  const std::string pad_in(std::size_t(indent) * (depth + 1), ' ');
  switch (value.type()) {
    case Json::value_t::object: {
      if (value.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, item] : value.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in + Json(key).dump() + ": ";
        dump_into(item, indent, depth + 1, out);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (value.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& item : value) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        dump_into(item, indent, depth + 1, out);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_g17(value.get<double>());
      return;
    default:
      out += value.dump();
      return;
  }
}

}  // namespace

std::string dump_json(const Json& value, int indent) {
  std::string out;
  dump_into(value, indent, 0, out);
  out += "\n";
  return out;
}

namespace {

void dump_line_into(const Json& value, std::string& out) {
  switch (value.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, item] : value.items()) {
        if (!first) out += ',';
        first = false;
        out += Json(key).dump() + ":";
        dump_line_into(item, out);
      }
      out += '}';
      return;
    }
    case Json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& item : value) {
        if (!first) out += ',';
        first = false;
        dump_line_into(item, out);
      }
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      out += format_g17(value.get<double>());
      return;
    default:
      out += value.dump();
      return;
  }
}

}  // namespace

std::string dump_json_line(const Json& value) {
  std::string out;
  dump_line_into(value, out);
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream stream(path, std::ios::binary);
  if (!stream) throw ValidationError("cannot open for writing: " + path);
  stream << content;
  if (!stream) throw ValidationError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) throw ValidationError("cannot open for reading: " + path);
  std::ostringstream buffer;
  buffer << stream.rdbuf();
  return buffer.str();
}

CsvBuilder::CsvBuilder(std::vector<std::string> header) : columns_(header.size()) {
  if (header.empty()) throw ValidationError("CSV needs at least one column");
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) text_ += ',';
    text_ += header[i];
  }
  text_ += '\n';
}

void CsvBuilder::comment(const std::string& line) {
  // Comments go before the header so column-oriented readers can drop a
  // fixed prefix.
  text_.insert(0, "# " + line + "\n");
}

void CsvBuilder::row(const std::vector<std::string>& fields) {
  if (fields.size() != columns_) throw ValidationError("CSV row width mismatch");
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) text_ += ',';
    text_ += fields[i];
  }
  text_ += '\n';
}

}  // namespace holex
