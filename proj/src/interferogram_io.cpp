#include "qcc/interferogram_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace qcc {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_cell(std::string_view cell, std::size_t line, const char* column) {
  cell = trim(cell);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw FormatError(fmt::format("line {}: column {} is not a number: '{}'", line, column, cell), line);
  }
  return v;
}

std::uint64_t parse_seed(std::string_view s, std::size_t line) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw FormatError(fmt::format("line {}: bad seed '{}'", line, s), line);
  }
  return v;
}

}  // namespace

FormatError::FormatError(const std::string& what, std::size_t line)
    : std::runtime_error(what), line_(line) {}

std::string to_csv(const Interferogram& ifg) {
  std::string out;
  out += "#scenario=" + ifg.meta.scenario + "\n";
  out += "#stream=" + ifg.meta.stream + "\n";
  out += fmt::format("#seed={}\n", ifg.meta.seed);
  out += "#config_hash=" + ifg.meta.config_hash + "\n";
  out += std::string("#noise=") + (ifg.meta.counts ? "on" : "off") + "\n";
  out += "chi_rad,counts,sigma\n";
  for (std::size_t i = 0; i < ifg.size(); ++i) {
    out += fmt::format("{:.17g},{:.17g},{:.17g}\n", ifg.chi[i], ifg.value[i], ifg.sigma[i]);
  }
  return out;
}

Interferogram from_csv(std::string_view text) {
  Interferogram ifg;
  bool header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;

    if (line.front() == '#') {
      const std::size_t eq = line.find('=');
      if (eq == std::string_view::npos) continue;  // free comment
      const std::string_view key = trim(line.substr(1, eq - 1));
      const std::string_view value = trim(line.substr(eq + 1));
      if (key == "scenario") ifg.meta.scenario = value;
      else if (key == "stream") ifg.meta.stream = value;
      else if (key == "seed") ifg.meta.seed = parse_seed(value, line_no);
      else if (key == "config_hash") ifg.meta.config_hash = value;
      else if (key == "noise") {
        if (value != "on" && value != "off") {
          throw FormatError(fmt::format("line {}: noise must be on or off", line_no), line_no);
        }
        ifg.meta.counts = value == "on";
      }
      continue;
    }
    if (!header) {
      if (line != "chi_rad,counts,sigma") {
        throw FormatError(fmt::format("line {}: expected header 'chi_rad,counts,sigma'", line_no), line_no);
      }
      header = true;
      continue;
    }
    const std::size_t c1 = line.find(',');
    const std::size_t c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string_view::npos || line.find(',', c2 + 1) != std::string_view::npos) {
      throw FormatError(fmt::format("line {}: expected 3 comma-separated columns", line_no), line_no);
    }
    ifg.chi.push_back(parse_cell(line.substr(0, c1), line_no, "chi_rad"));
    ifg.value.push_back(parse_cell(line.substr(c1 + 1, c2 - c1 - 1), line_no, "counts"));
    ifg.sigma.push_back(parse_cell(line.substr(c2 + 1), line_no, "sigma"));
    if (!(ifg.sigma.back() > 0.0)) {
      throw FormatError(fmt::format("line {}: sigma must be positive", line_no), line_no);
    }
    if (ifg.meta.counts && (ifg.value.back() < 0.0 || ifg.value.back() != std::floor(ifg.value.back()))) {
      throw FormatError(fmt::format("line {}: counts must be non-negative integers", line_no), line_no);
    }
  }
  if (!header) throw FormatError("missing header 'chi_rad,counts,sigma'");
  try {
    ifg.validate();
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return ifg;
}

nlohmann::ordered_json to_json(const Interferogram& ifg) {
  nlohmann::ordered_json j;
  j["meta"] = {{"scenario", ifg.meta.scenario},
               {"stream", ifg.meta.stream},
               {"seed", ifg.meta.seed},
               {"config_hash", ifg.meta.config_hash},
               {"noise", ifg.meta.counts ? "on" : "off"}};
  j["chi_rad"] = ifg.chi;
  j["counts"] = ifg.value;
  j["sigma"] = ifg.sigma;
  return j;
}

Interferogram interferogram_from_json(const nlohmann::json& j) {
  Interferogram ifg;
  try {
    const auto& m = j.at("meta");
    ifg.meta.scenario = m.at("scenario").get<std::string>();
    ifg.meta.stream = m.value("stream", ifg.meta.scenario);
    ifg.meta.seed = m.at("seed").get<std::uint64_t>();
    ifg.meta.config_hash = m.value("config_hash", std::string{});
    const std::string noise = m.value("noise", std::string("off"));
    if (noise != "on" && noise != "off") throw FormatError("meta.noise must be on or off");
    ifg.meta.counts = noise == "on";
    ifg.chi = j.at("chi_rad").get<std::vector<double>>();
    ifg.value = j.at("counts").get<std::vector<double>>();
    ifg.sigma = j.at("sigma").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad interferogram JSON: ") + e.what());
  }
  try {
    ifg.validate();
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return ifg;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

Interferogram read_interferogram(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  const std::string_view body = trim(text);
  if (path.extension() == ".json" || (!body.empty() && body.front() == '{')) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw FormatError(std::string("bad interferogram JSON: ") + e.what());
    }
    return interferogram_from_json(j);
  }
  return from_csv(text);
}

void write_interferogram(const std::filesystem::path& path, const Interferogram& ifg, bool json) {
  write_text_file(path, json ? to_json(ifg).dump(2) + "\n" : to_csv(ifg));
}

}  // namespace qcc
