#include "clearnet/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <utility>

#include "clearnet/error.hpp"
#include "json.hpp"

namespace clearnet {

namespace {

using Json = nlohmann::ordered_json;

struct Line {
  std::size_t number = 0;  // 1-based
  std::string_view text;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const std::size_t end = text.find('\n');
    std::string_view line = text.substr(0, end);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back({number, line});
    if (end == std::string_view::npos) break;
    text.remove_prefix(end + 1);
  }
  // Blank lines carry no data.
  std::erase_if(lines, [](const Line& l) {
    return std::all_of(l.text.begin(), l.text.end(),
                       [](unsigned char c) { return std::isspace(c) != 0; });
  });
  return lines;
}

struct Cell {
  std::size_t column = 0;  // 1-based
  std::string_view text;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<Cell> split_cells(std::string_view line) {
  std::vector<Cell> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = line.find(',', start);
    cells.push_back({start + 1, trim(line.substr(start, end - start))});
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return cells;
}

std::optional<double> to_number(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

bool row_is_numeric(const std::vector<Cell>& cells) {
  return std::all_of(cells.begin(), cells.end(),
                     [](const Cell& c) { return to_number(c.text).has_value(); });
}

std::vector<double> numeric_row(const Line& line, const std::vector<Cell>& cells) {
  std::vector<double> out;
  out.reserve(cells.size());
  for (const Cell& c : cells) {
    const auto v = to_number(c.text);
    if (!v) {
      throw ParseError("row " + std::to_string(line.number) + ": '" + std::string(c.text) +
                           "' is not a number",
                       line.number, c.column);
    }
    out.push_back(*v);
  }
  return out;
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text,
                                                    std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

Vector json_vector(const Json& node, const char* key) {
  if (!node.is_array()) {
    throw Error(ErrorCode::ValidationError, std::string(key) + " must be an array");
  }
  Vector v(static_cast<Index>(node.size()));
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (!node[i].is_number()) {
      throw Error(ErrorCode::ValidationError,
                  std::string(key) + "[" + std::to_string(i) + "] must be a number",
                  static_cast<std::ptrdiff_t>(i));
    }
    v[static_cast<Index>(i)] = node[i].get<double>();
  }
  return v;
}

Json json_array(const Vector& v) {
  Json arr = Json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

}  // namespace

FileFormat detect_format(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".json") return FileFormat::Json;
  if (ext == ".csv") return FileFormat::Csv;
  throw Error(ErrorCode::IoError,
              "cannot infer format of '" + path.string() + "'; use .json or .csv");
}

SystemDocument parse_system_json(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, column] = line_and_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError("malformed JSON", line, column);
  }
  if (!root.is_object()) {
    throw Error(ErrorCode::ValidationError, "top-level JSON value must be an object");
  }

  SystemDocument doc;
  if (!root.contains("liabilities")) {
    throw Error(ErrorCode::ValidationError, "liabilities required");
  }
  const Json& rows = root["liabilities"];
  if (!rows.is_array()) {
    throw Error(ErrorCode::ValidationError, "liabilities must be an array of rows");
  }
  const auto n = static_cast<Index>(rows.size());
  doc.liabilities = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    const Vector row = json_vector(rows[static_cast<std::size_t>(i)], "liabilities row");
    if (row.size() != n) {
      throw Error(ErrorCode::ValidationError,
                  "liabilities row " + std::to_string(i) + " has " +
                      std::to_string(row.size()) + " entries, expected " + std::to_string(n),
                  i);
    }
    doc.liabilities.row(i) = row.transpose();
  }

  if (!root.contains("pre_shock_assets")) {
    throw Error(ErrorCode::ValidationError, "pre_shock_assets required");
  }
  doc.pre_shock_assets = json_vector(root["pre_shock_assets"], "pre_shock_assets");
  if (root.contains("external_assets") && !root["external_assets"].is_null()) {
    doc.external_assets = json_vector(root["external_assets"], "external_assets");
  }
  if (root.contains("names") && !root["names"].is_null()) {
    const Json& names = root["names"];
    if (!names.is_array()) throw Error(ErrorCode::ValidationError, "names must be an array");
    for (const Json& name : names) {
      if (!name.is_string()) throw Error(ErrorCode::ValidationError, "names must be strings");
      doc.names.push_back(name.get<std::string>());
    }
    if (static_cast<Index>(doc.names.size()) + 1 == n) doc.names.emplace_back(kSinkLabel);
    if (static_cast<Index>(doc.names.size()) != n || doc.names.back() != kSinkLabel) {
      throw Error(ErrorCode::ValidationError,
                  "names must label every bank, optionally followed by \"SINK\"");
    }
  }
  return doc;
}

std::string serialize_system_json(const SystemDocument& document) {
  Json root = Json::object();
  if (!document.names.empty()) root["names"] = document.names;
  Json rows = Json::array();
  for (Index i = 0; i < document.liabilities.rows(); ++i) {
    rows.push_back(json_array(document.liabilities.row(i).transpose()));
  }
  root["liabilities"] = std::move(rows);
  root["pre_shock_assets"] = json_array(document.pre_shock_assets);
  if (document.external_assets) root["external_assets"] = json_array(*document.external_assets);
  return root.dump(2) + "\n";
}

Matrix parse_matrix_csv(std::string_view text, std::vector<std::string>* header) {
  const std::vector<Line> lines = split_lines(text);
  std::size_t first = 0;
  if (!lines.empty()) {
    const auto cells = split_cells(lines.front().text);
    if (!row_is_numeric(cells)) {
      if (header) {
        header->clear();
        for (const Cell& c : cells) header->emplace_back(c.text);
      }
      first = 1;
    }
  }

  std::vector<std::vector<double>> rows;
  std::size_t width = 0;
  for (std::size_t k = first; k < lines.size(); ++k) {
    const auto cells = split_cells(lines[k].text);
    if (rows.empty()) {
      width = cells.size();
    } else if (cells.size() != width) {
      throw ParseError("row " + std::to_string(lines[k].number) + " has " +
                           std::to_string(cells.size()) + " fields, expected " +
                           std::to_string(width),
                       lines[k].number, lines[k].text.size() + 1);
    }
    rows.push_back(numeric_row(lines[k], cells));
  }

  if (rows.size() != width) {
    throw Error(ErrorCode::ValidationError,
                "liability matrix must be square, got " + std::to_string(rows.size()) +
                    "x" + std::to_string(width));
  }
  const auto n = static_cast<Index>(width);
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

Vector parse_vector_csv(std::string_view text) {
  const std::vector<Line> lines = split_lines(text);
  std::vector<double> values;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const auto cells = split_cells(lines[k].text);
    if (cells.size() != 1) {
      throw ParseError("row " + std::to_string(lines[k].number) + " has " +
                           std::to_string(cells.size()) + " fields, expected 1",
                       lines[k].number, lines[k].text.size() + 1);
    }
    if (k == 0 && !row_is_numeric(cells)) continue;  // header
    values.push_back(numeric_row(lines[k], cells).front());
  }
  return Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
}

SystemDocument to_document(const FinancialSystem& system, std::vector<std::string> names) {
  SystemDocument doc;
  if (!names.empty() && static_cast<Index>(names.size()) + 1 == system.size()) {
    names.emplace_back(kSinkLabel);
  }
  doc.names = std::move(names);
  doc.liabilities = system.liabilities();
  doc.pre_shock_assets = system.pre_shock_assets();
  if (system.external_assets() != system.pre_shock_assets()) {
    doc.external_assets = system.external_assets();
  }
  return doc;
}

FinancialSystem to_system(const SystemDocument& document) {
  try {
    return build_system(document.liabilities, document.pre_shock_assets,
                        document.external_assets);
  } catch (const Error& e) {
    throw Error(ErrorCode::ValidationError, e.what(), e.index());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::IoError, "write to '" + path.string() + "' failed");
}

SystemDocument load_document(const std::filesystem::path& path,
                             std::optional<FileFormat> format,
                             const std::optional<std::filesystem::path>& assets_path) {
  const FileFormat fmt = format ? *format : detect_format(path);
  const std::string text = read_text_file(path);
  std::optional<Vector> assets;
  if (assets_path) assets = parse_vector_csv(read_text_file(*assets_path));

  if (fmt == FileFormat::Json) {
    SystemDocument doc = parse_system_json(text);
    if (assets) doc.external_assets = std::move(assets);
    return doc;
  }

  SystemDocument doc;
  std::vector<std::string> header;
  doc.liabilities = parse_matrix_csv(text, &header);
  if (!header.empty()) {
    if (static_cast<Index>(header.size()) != doc.liabilities.rows()) {
      throw Error(ErrorCode::ValidationError, "header must label every column");
    }
    header.back() = std::string(kSinkLabel);
    doc.names = std::move(header);
  }
  if (!assets) {
    throw Error(ErrorCode::ValidationError,
                "pre_shock_assets required: supply a one-column assets CSV");
  }
  doc.pre_shock_assets = std::move(*assets);
  return doc;
}

FinancialSystem load_system(const std::filesystem::path& path,
                            std::optional<FileFormat> format,
                            const std::optional<std::filesystem::path>& assets_path) {
  return to_system(load_document(path, format, assets_path));
}

}  // namespace clearnet
