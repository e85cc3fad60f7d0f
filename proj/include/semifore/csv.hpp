#pragma once

#include <string>
#include <vector>

namespace semifore::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column lookup by header name; throws ValidationError when absent.
  std::size_t column(const std::string& name) const;
};

// Comma-separated, first line is the header. Double-quoted cells may embed
// commas and doubled quotes (needed for the JSON hyperparameter column);
// unquoted cells are whitespace-trimmed. CRLF and a trailing newline are
// tolerated; ragged rows raise ValidationError with the 1-based line number.
Table read_file(const std::string& path);
Table read_string(const std::string& text, const std::string& origin = "<string>");

std::string to_string(const Table& table);
void write_file(const std::string& path, const Table& table);

double parse_double(const std::string& cell, const std::string& context);
int parse_int(const std::string& cell, const std::string& context);

// Shortest decimal form that parses back bit-exactly; every numeric CSV
// surface uses it so written files survive round-trips unchanged.
std::string format_double(double v);

}  // namespace semifore::csv
