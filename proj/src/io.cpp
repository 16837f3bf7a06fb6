#include "slidelab/io.hpp"

#include "slidelab/errors.hpp"

#include <fmt/format.h>

#include <cmath>

namespace slidelab::io {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.12g}", v);
}

CsvWriter::CsvWriter(const std::filesystem::path& path,
                     std::initializer_list<std::string_view> header)
    : CsvWriter(path, std::vector<std::string>(header.begin(), header.end())) {}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : out_(path), path_(path), columns_(header.size()) {
  if (!out_) throw ConfigError(fmt::format("cannot write '{}'", path.string()));
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out_ << ',';
    out_ << header[i];
  }
  out_ << '\n';
}

void CsvWriter::row(std::initializer_list<Cell> cells) { write(cells.begin(), cells.end()); }

void CsvWriter::row(const std::vector<Cell>& cells) {
  write(cells.data(), cells.data() + cells.size());
}

void CsvWriter::write(const Cell* begin, const Cell* end) {
  if (static_cast<std::size_t>(end - begin) != columns_) {
    throw std::logic_error(fmt::format("{}: row has {} cells, header has {}", path_.string(),
                                       end - begin, columns_));
  }
  for (const Cell* c = begin; c != end; ++c) {
    if (c != begin) out_ << ',';
    if (const auto* d = std::get_if<double>(c)) {
      out_ << format_number(*d);
    } else if (const auto* i = std::get_if<std::int64_t>(c)) {
      out_ << *i;
    } else {
      out_ << std::get<std::string_view>(*c);
    }
  }
  out_ << '\n';
  ++rows_;
  if (!out_) throw NumericalError(fmt::format("write to '{}' failed", path_.string()));
}

void prepare_output_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw ConfigError(fmt::format("cannot create output directory '{}': {}", dir.string(),
                                  ec.message()));
  }
  const auto probe = dir / ".slidelab_write_probe";
  {
    std::ofstream f(probe);
    if (!f) throw ConfigError(fmt::format("output directory '{}' is not writable", dir.string()));
  }
  std::filesystem::remove(probe, ec);
}

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& doc) {
  std::ofstream out(path);
  if (!out) throw ConfigError(fmt::format("cannot write '{}'", path.string()));
  out << doc.dump(2) << '\n';
}

std::string hex_hash(std::uint64_t h) { return fmt::format("{:016x}", h); }

}  // namespace slidelab::io
