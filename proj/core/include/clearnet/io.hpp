#ifndef CLEARNET_IO_HPP
#define CLEARNET_IO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clearnet/system.hpp"

namespace clearnet {

inline constexpr std::string_view kSinkLabel = "SINK";

enum class FileFormat { Csv, Json };

/// On-disk form of a system. The sink is stored explicitly as the last
/// row/column; `names`, when present, has one label per node ending in
/// "SINK".
struct SystemDocument {
  std::vector<std::string> names;
  Matrix liabilities;
  Vector pre_shock_assets;
  std::optional<Vector> external_assets;
};

/// By extension: ".json" or ".csv" (case-insensitive). IoError otherwise.
FileFormat detect_format(const std::filesystem::path& path);

/// JSON schema:
///   {"names": [...], "liabilities": [[...], ...],
///    "pre_shock_assets": [...], "external_assets": [...]}
/// `names` and `external_assets` are optional. Syntax errors raise
/// ParseError with line/column; schema errors raise ValidationError.
SystemDocument parse_system_json(std::string_view text);

/// Deterministic: fixed key order, shortest round-trip decimal form for
/// every double, two-space indentation, trailing newline.
std::string serialize_system_json(const SystemDocument& document);

/// Square numeric matrix, comma separated. A first row that does not parse
/// as numbers is taken as a header and returned through `header`.
Matrix parse_matrix_csv(std::string_view text,
                        std::vector<std::string>* header = nullptr);

/// One number per line, with an optional non-numeric header line.
Vector parse_vector_csv(std::string_view text);

SystemDocument to_document(const FinancialSystem& system,
                           std::vector<std::string> names = {});

/// Validates through build_system; failures are rethrown as
/// ValidationError carrying the original message and index.
FinancialSystem to_system(const SystemDocument& document);

/// Reads a system file. For CSV, `assets_path` supplies the pre-shock
/// assets (which also serve as external assets) and is required. For JSON
/// it optionally overrides the external assets.
SystemDocument load_document(const std::filesystem::path& path,
                             std::optional<FileFormat> format = std::nullopt,
                             const std::optional<std::filesystem::path>& assets_path = std::nullopt);

FinancialSystem load_system(const std::filesystem::path& path,
                            std::optional<FileFormat> format = std::nullopt,
                            const std::optional<std::filesystem::path>& assets_path = std::nullopt);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace clearnet

#endif  // CLEARNET_IO_HPP
