#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "helson/eigen.hpp"

namespace helson {

/// Reads a spectrum file. Accepts the `n,lambda_plus,lambda_minus,s_n`
/// schema, a two-column `n,value` file (header optional) or one value per
/// line.
Spectrum read_spectrum_file(const std::string& path);

/// Sequence used by fit and schatten: lambda_plus, else s_n.
std::vector<double> primary_sequence(const Spectrum& s);

nlohmann::json read_json_file(const std::string& path);

/// Writes via `<path>.partial` and renames on success, so an interrupted
/// run leaves only the partial file.
void write_file_atomic(const std::string& path, const std::function<void(std::ostream&)>& body);

/// Parses "n0:n1".
void parse_window(const std::string& text, std::size_t* n0, std::size_t* n1);

}  // namespace helson
