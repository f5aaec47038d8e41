#pragma once

// Interferogram files. CSV: '#key=value' metadata lines, then the header
// "chi_rad,counts,sigma" and one row per point. JSON: meta object plus
// parallel arrays.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"
#include "qcc/synth.hpp"

namespace qcc {

/// Malformed interferogram input. `line()` is 1-based, 0 when not tied to a line.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::size_t line = 0);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

std::string to_csv(const Interferogram& ifg);
Interferogram from_csv(std::string_view text);

nlohmann::ordered_json to_json(const Interferogram& ifg);
Interferogram interferogram_from_json(const nlohmann::json& j);

/// Format chosen by extension (.json) or, failing that, by content.
Interferogram read_interferogram(const std::filesystem::path& path);
/// Throws std::runtime_error when the file cannot be written.
void write_interferogram(const std::filesystem::path& path, const Interferogram& ifg, bool json);

/// Writes `text` to `path`, creating parent directories.
void write_text_file(const std::filesystem::path& path, std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace qcc
