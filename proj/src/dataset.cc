/*
 * Copyright 2026 The shrq Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "shrq/dataset.h"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <string_view>

#include "shrq/errors.h"

namespace shrq {
namespace {

std::string Trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> SplitCells(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(Trim(cell));
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

template <typename T>
bool ParseInt(const std::string& s, T& out) {
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

[[noreturn]] void RowError(size_t row, const std::string& what) {
  throw Error(ErrorCode::kIngestion, "row " + std::to_string(row) + ": " + what);
}

}  // namespace

Dataset ParseCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::kIngestion, "row 1: missing header");
  }
  std::vector<std::string> header = SplitCells(line);
  if (header.size() < 2 || header[0] != "id") {
    RowError(1, "header must be id,x1,...,xd");
  }
  for (size_t i = 1; i < header.size(); ++i) {
    if (header[i] != "x" + std::to_string(i)) {
      RowError(1, "expected column 'x" + std::to_string(i) + "', got '" +
                      header[i] + "'");
    }
  }
  const size_t d = header.size() - 1;
  Dataset data;
  size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (Trim(line).empty()) continue;
    std::vector<std::string> cells = SplitCells(line);
    if (cells.size() != d + 1) {
      RowError(row, "expected " + std::to_string(d + 1) + " cells, got " +
                        std::to_string(cells.size()));
    }
    Record rec;
    if (!ParseInt(cells[0], rec.id)) {
      RowError(row, "id '" + cells[0] + "' is not a non-negative integer");
    }
    rec.coords.resize(d);
    for (size_t i = 0; i < d; ++i) {
      if (!ParseInt(cells[i + 1], rec.coords[i])) {
        RowError(row, "cell x" + std::to_string(i + 1) + " = '" + cells[i + 1] +
                          "' is not an integer");
      }
    }
    data.push_back(std::move(rec));
  }
  return data;
}

Dataset LoadCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIngestion, "cannot open dataset " + path);
  return ParseCsv(in);
}

void WriteCsv(const Dataset& data, std::ostream& out) {
  size_t d = data.empty() ? 0 : data.front().coords.size();
  out << "id";
  for (size_t i = 1; i <= d; ++i) out << ",x" << i;
  out << "\n";
  for (const Record& r : data) {
    out << r.id;
    for (int64_t x : r.coords) out << "," << x;
    out << "\n";
  }
}

void NormalizeDataset(Dataset& data, size_t d, uint64_t x_max, int64_t offset) {
  for (Record& r : data) {
    if (r.coords.size() != d) {
      throw Error(ErrorCode::kIngestion,
                  "record " + std::to_string(r.id) + " has " +
                      std::to_string(r.coords.size()) + " coordinates, key has d = " +
                      std::to_string(d));
    }
    for (size_t i = 0; i < d; ++i) {
      int64_t x = r.coords[i] + offset;
      if (x < 0 || static_cast<uint64_t>(x) > x_max) {
        throw Error(ErrorCode::kIngestion,
                    "record " + std::to_string(r.id) + ": coordinate x" +
                        std::to_string(i + 1) + " = " + std::to_string(r.coords[i]) +
                        " is outside the domain [" + std::to_string(-offset) +
                        ", " + std::to_string(static_cast<int64_t>(x_max) - offset) +
                        "]");
      }
      r.coords[i] = x;
    }
  }
}

void RequireUniqueIds(const Dataset& data) {
  std::set<uint64_t> seen;
  for (const Record& r : data) {
    if (!seen.insert(r.id).second) {
      throw Error(ErrorCode::kSetup, "duplicate record id " + std::to_string(r.id));
    }
  }
}

}  // namespace shrq
