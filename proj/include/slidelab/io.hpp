#pragma once

// CSV and JSON output. Numbers in CSV carry 12 significant digits.

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace slidelab::io {

using Cell = std::variant<double, std::int64_t, std::string_view>;

std::string format_number(double v);

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string_view> header);
  explicit CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
  void row(std::initializer_list<Cell> cells);
  void row(const std::vector<Cell>& cells);
  std::size_t rows() const { return rows_; }

 private:
  void write(const Cell* begin, const Cell* end);
  std::ofstream out_;
  std::filesystem::path path_;
  std::size_t columns_ = 0;
  std::size_t rows_ = 0;
};

/// Creates the directory and checks that a file can be written there.
/// Throws ConfigError otherwise.
void prepare_output_dir(const std::filesystem::path& dir);

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& doc);

/// 16 lowercase hex digits.
std::string hex_hash(std::uint64_t h);

}  // namespace slidelab::io
