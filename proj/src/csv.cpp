#include "semifore/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "semifore/errors.hpp"

namespace semifore::csv {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return s.substr(b, e - b);
}

// Minimal RFC-4180 cell splitting: a cell wrapped in double quotes may hold
// commas; a doubled quote inside is a literal quote. Unquoted cells are
// whitespace-trimmed.
std::vector<std::string> split_line(const std::string& line,
                                    const std::string& where) {
  std::vector<std::string> cells;
  std::size_t i = 0;
  const std::size_t n = line.size();
  while (true) {
    std::string cell;
    while (i < n && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i < n && line[i] == '"') {
      ++i;
      bool closed = false;
      while (i < n) {
        if (line[i] == '"') {
          if (i + 1 < n && line[i + 1] == '"') {
            cell.push_back('"');
            i += 2;
            continue;
          }
          ++i;
          closed = true;
          break;
        }
        cell.push_back(line[i]);
        ++i;
      }
      if (!closed) throw ValidationError(where + ": unterminated quoted cell");
      while (i < n && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      if (i < n && line[i] != ',') {
        throw ValidationError(where + ": garbage after quoted cell");
      }
    } else {
      while (i < n && line[i] != ',') {
        cell.push_back(line[i]);
        ++i;
      }
      cell = trim(cell);
    }
    cells.push_back(std::move(cell));
    if (i >= n) break;
    ++i;  // skip the comma
    if (i >= n) {
      cells.emplace_back();
      break;
    }
  }
  return cells;
}

std::string quote_if_needed(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

Table parse_stream(std::istream& in, const std::string& origin) {
  Table table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split_line(line, origin + ":" + std::to_string(line_no));
    if (table.header.empty()) {
      table.header = std::move(cells);
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw ValidationError(origin + ":" + std::to_string(line_no) +
                            ": expected " + std::to_string(table.header.size()) +
                            " cells, got " + std::to_string(cells.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  if (table.header.empty()) {
    throw ValidationError(origin + ": empty CSV (no header)");
  }
  return table;
}

}  // namespace

std::size_t Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw ValidationError("missing CSV column '" + name + "'");
}

Table read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open CSV file: " + path);
  return parse_stream(in, path);
}

Table read_string(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  return parse_stream(in, origin);
}

std::string to_string(const Table& table) {
  std::ostringstream out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i > 0) out << ',';
    out << quote_if_needed(table.header[i]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << ',';
      out << quote_if_needed(row[i]);
    }
    out << '\n';
  }
  return out.str();
}

void write_file(const std::string& path, const Table& table) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ValidationError("cannot write CSV file: " + path);
  out << to_string(table);
  if (!out) throw ValidationError("write failed for CSV file: " + path);
}

double parse_double(const std::string& cell, const std::string& context) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (cell.empty() || end != cell.c_str() + cell.size() || errno == ERANGE) {
    throw ValidationError(context + ": not a number: '" + cell + "'");
  }
  return v;
}

int parse_int(const std::string& cell, const std::string& context) {
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(cell.c_str(), &end, 10);
  if (cell.empty() || end != cell.c_str() + cell.size() || errno == ERANGE ||
      v < INT32_MIN || v > INT32_MAX) {
    throw ValidationError(context + ": not an integer: '" + cell + "'");
  }
  return static_cast<int>(v);
}


std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  double back = 0.0;
  std::sscanf(buf, "%lf", &back);
  if (back == v) {
    for (int prec = 1; prec <= 16; ++prec) {
      char probe[40];
      std::snprintf(probe, sizeof(probe), "%.*g", prec, v);
      std::sscanf(probe, "%lf", &back);
      if (back == v) return probe;
    }
  }
  return buf;
}

}  // namespace semifore::csv
