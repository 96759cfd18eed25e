#include "helson/report_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "helson/errors.hpp"

namespace helson {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string c;
  while (std::getline(ss, c, sep)) cells.push_back(c);
  return cells;
}

bool is_number(const std::string& s) {
  if (s.empty()) return false;
  char* end = nullptr;
  std::strtod(s.c_str(), &end);
  return end && *end == '\0';
}

}  // namespace

Spectrum read_spectrum_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ContractError("cannot open " + path);
  std::string first;
  std::getline(is, first);
  if (!first.empty() && first.back() == '\r') first.pop_back();
  if (first.rfind("n,lambda_plus", 0) == 0) {
    std::stringstream rest;
    rest << first << '\n' << is.rdbuf();
    return read_spectrum_csv(rest);
  }
  Spectrum s;
  auto take = [&](const std::string& line, bool header_ok) {
    if (line.empty()) return;
    const auto cells = split(line, ',');
    const std::string& v = cells.size() >= 2 ? cells[1] : cells[0];
    if (!is_number(v)) {
      if (header_ok) return;
      throw ContractError(path + ": not a number: '" + v + "'");
    }
    s.lambda_plus.push_back(std::stod(v));
  };
  take(first, true);
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    take(line, false);
  }
  if (s.lambda_plus.empty()) throw ContractError(path + ": no values");
  s.meta.dim = s.lambda_plus.size();
  return s;
}

std::vector<double> primary_sequence(const Spectrum& s) {
  return s.lambda_plus.empty() ? s.singular : s.lambda_plus;
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ContractError("cannot open " + path);
  try {
    return nlohmann::json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw ContractError(path + ": " + e.what());
  }
}

void write_file_atomic(const std::string& path, const std::function<void(std::ostream&)>& body) {
  const std::string partial = path + ".partial";
  {
    std::ofstream os(partial);
    if (!os) throw ContractError("cannot write " + partial);
    body(os);
    if (!os) throw ContractError("write failed: " + partial);
  }
  std::filesystem::rename(partial, path);
}

void parse_window(const std::string& text, std::size_t* n0, std::size_t* n1) {
  const auto pos = text.find(':');
  if (pos == std::string::npos) throw ContractError("window must be n0:n1, got '" + text + "'");
  try {
    std::size_t used = 0;
    const std::string a = text.substr(0, pos), b = text.substr(pos + 1);
    *n0 = std::stoul(a, &used);
    if (used != a.size()) throw std::invalid_argument(a);
    *n1 = std::stoul(b, &used);
    if (used != b.size()) throw std::invalid_argument(b);
  } catch (const std::logic_error&) {
    throw ContractError("window must be n0:n1, got '" + text + "'");
  }
  if (*n0 < 1 || *n1 <= *n0) throw ContractError("window needs 1 <= n0 < n1");
}

}  // namespace helson
