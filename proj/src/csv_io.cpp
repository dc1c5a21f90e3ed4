// Copyright 2026 The gidl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "gidl/data.hpp"

namespace gidl {

namespace {

std::vector<double> parse_row(std::string_view line, const std::string& path, std::size_t line_no) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    std::string_view field = line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) field.remove_suffix(1);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double v = 0.0;
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, v);
    if (field.empty() || ec != std::errc() || ptr != end) {
      throw DataError(path + ":" + std::to_string(line_no) + ": cannot parse '" + std::string(field) + "' as a number");
    }
    values.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return values;
}

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open " + tmp + " for writing");
    out << content;
    if (!out) throw DataError("write failed for " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw DataError("cannot move " + tmp + " to " + path + ": " + ec.message());
}

void append_number(std::string& out, double v) {
  char buf[40];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
  out.append(buf, static_cast<std::size_t>(len));
}

}  // namespace

Mat read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    rows.push_back(parse_row(line, path, line_no));
    if (rows.back().size() != rows.front().size()) {
      throw DataError(path + ":" + std::to_string(line_no) + ": expected " + std::to_string(rows.front().size()) +
                      " columns, found " + std::to_string(rows.back().size()));
    }
  }
  if (rows.empty()) throw DataError(path + ": no data rows");
  Mat m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  }
  return m;
}

void write_csv(const std::string& path, const Mat& rows) {
  std::string out;
  out.reserve(static_cast<std::size_t>(rows.size()) * 24);
  for (Index i = 0; i < rows.rows(); ++i) {
    for (Index j = 0; j < rows.cols(); ++j) {
      if (j > 0) out.push_back(',');
      append_number(out, rows(i, j));
    }
    out.push_back('\n');
  }
  atomic_write(path, out);
}

Vec read_series(const std::string& path) {
  const Mat m = read_csv(path);
  if (m.cols() == 1) return m.col(0);
  if (m.rows() == 1) return m.row(0).transpose();
  throw DataError(path + ": expected a single column of samples");
}

Dataset dataset_from_rows(const Mat& rows) {
  Dataset data;
  data.reserve(static_cast<std::size_t>(rows.rows()));
  for (Index i = 0; i < rows.rows(); ++i) data.emplace_back(rows.row(i).transpose());
  return data;
}

Mat rows_from_dataset(const Dataset& data) {
  if (data.empty()) return Mat();
  Mat rows(static_cast<Index>(data.size()), data.front().size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data[i].cols() != 1) throw DimensionError("rows_from_dataset: samples must be vectors");
    rows.row(static_cast<Index>(i)) = data[i].col(0).transpose();
  }
  return rows;
}

Dataset dataset_from_flat(const Mat& rows, Index d, Index r) {
  if (rows.cols() != d * r) throw DataError("matrix dataset: rows have " + std::to_string(rows.cols()) +
                                            " entries, expected d*r = " + std::to_string(d * r));
  Dataset data;
  for (Index i = 0; i < rows.rows(); ++i) {
    Mat y(d, r);
    for (Index a = 0; a < d; ++a) {
      for (Index b = 0; b < r; ++b) y(a, b) = rows(i, a * r + b);
    }
    data.push_back(std::move(y));
  }
  return data;
}

Mat flat_from_dataset(const Dataset& data) {
  if (data.empty()) return Mat();
  const Index d = data.front().rows();
  const Index r = data.front().cols();
  Mat rows(static_cast<Index>(data.size()), d * r);
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (Index a = 0; a < d; ++a) {
      for (Index b = 0; b < r; ++b) rows(static_cast<Index>(i), a * r + b) = data[i](a, b);
    }
  }
  return rows;
}

std::string sidecar_path(const std::string& data_path) { return data_path + ".json"; }

void write_sidecar(const std::string& path, const MatrixShape& shape) {
  const nlohmann::json j = {{"d", shape.d}, {"r", shape.r}, {"n", shape.n}};
  atomic_write(path, j.dump(2) + "\n");
}

MatrixShape read_sidecar(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open sidecar " + path);
  try {
    const nlohmann::json j = nlohmann::json::parse(in);
    return MatrixShape{j.at("d").get<Index>(), j.at("r").get<Index>(), j.at("n").get<Index>()};
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path + ": " + e.what());
  }
}

Dataset read_dataset(const std::string& path, const GroupModel& g) {
  const Mat rows = read_csv(path);
  if (g.kind() == GroupKind::Orthogonal) {
    const std::string side = sidecar_path(path);
    if (std::filesystem::exists(side)) {
      const MatrixShape shape = read_sidecar(side);
      if (shape.d != g.dim() || shape.r != g.cols() || shape.n != rows.rows()) {
        throw DataError(side + ": shape " + std::to_string(shape.d) + "x" + std::to_string(shape.r) + " with " +
                        std::to_string(shape.n) + " samples does not match " + g.name() + " with " +
                        std::to_string(rows.rows()) + " rows");
      }
    }
    return dataset_from_flat(rows, g.dim(), g.cols());
  }
  if (rows.cols() != g.dim()) {
    throw DataError(path + ": rows have " + std::to_string(rows.cols()) + " entries, expected " +
                    std::to_string(g.dim()));
  }
  return dataset_from_rows(rows);
}

void write_dataset(const std::string& path, const Dataset& data) {
  if (!data.empty() && data.front().cols() > 1) {
    write_csv(path, flat_from_dataset(data));
    write_sidecar(sidecar_path(path), {data.front().rows(), data.front().cols(), static_cast<Index>(data.size())});
  } else {
    write_csv(path, rows_from_dataset(data));
  }
}

GeneratorSet read_generators(const std::string& path, const GroupModel& g) {
  GeneratorSet gens;
  gens.atoms = read_dataset(path, g);
  return gens;
}

void write_generators(const std::string& path, const GeneratorSet& gens) {
  const Dataset& atoms = gens.atoms;
  if (!atoms.empty() && atoms.front().cols() > 1) {
    write_csv(path, flat_from_dataset(atoms));
  } else {
    write_csv(path, rows_from_dataset(atoms));
  }
}

Mat read_mask(const std::string& path) {
  const Mat m = read_csv(path);
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0.0 && m(i, j) != 1.0) {
        throw DataError(path + ":" + std::to_string(i + 1) + ": mask entries must be 0 or 1");
      }
    }
  }
  return m;
}

}  // namespace gidl
