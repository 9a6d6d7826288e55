// Copyright 2026 The coevgan Authors.
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

#include "coevgan/logs.h"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "coevgan/wire.h"

namespace coevgan {
namespace {

std::string Num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream OpenForWrite(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void CheckWritten(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

const char* const kCsvHeader =
    "iteration,cell,frechet_proxy,tvd,mode_coverage,generator_fitness,"
    "discriminator_fitness,learning_rate_g,learning_rate_d,mixture_score,"
    "fetches,fetch_bytes,stale_neighbors,replacements,wall_seconds,"
    "cpu_seconds";

std::string CsvRow(const IterationRecord& r) {
  std::ostringstream o;
  o << r.iteration << ',' << r.cell.row << ':' << r.cell.col << ','
    << Num(r.frechet_proxy) << ',' << Num(r.tvd) << ',' << r.mode_coverage
    << ',' << Num(r.generator_fitness) << ',' << Num(r.discriminator_fitness)
    << ',' << Num(r.learning_rate_g) << ',' << Num(r.learning_rate_d) << ','
    << Num(r.mixture_score) << ',' << r.fetches << ',' << r.fetch_bytes << ','
    << r.stale_neighbors << ',' << r.replacements << ','
    << Num(r.wall_seconds) << ',' << Num(r.cpu_seconds);
  return o.str();
}

void WriteCellCsv(const std::filesystem::path& path,
                  const std::vector<IterationRecord>& history) {
  std::ofstream out = OpenForWrite(path);
  out << kCsvHeader << '\n';
  for (const IterationRecord& r : history) out << CsvRow(r) << '\n';
  CheckWritten(out, path);
}

std::vector<IterationRecord> ReadCellCsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string line;
  std::getline(in, line);
  if (line != kCsvHeader) {
    throw std::runtime_error("unexpected CSV header in " + path.string());
  }
  std::vector<IterationRecord> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    if (f.size() != 16) {
      throw std::runtime_error("malformed CSV row in " + path.string());
    }
    IterationRecord r;
    r.iteration = std::stoi(f[0]);
    const std::size_t colon = f[1].find(':');
    r.cell = {std::stoi(f[1].substr(0, colon)),
              std::stoi(f[1].substr(colon + 1))};
    r.frechet_proxy = std::stod(f[2]);
    r.tvd = std::stod(f[3]);
    r.mode_coverage = std::stoi(f[4]);
    r.generator_fitness = std::stod(f[5]);
    r.discriminator_fitness = std::stod(f[6]);
    r.learning_rate_g = std::stod(f[7]);
    r.learning_rate_d = std::stod(f[8]);
    r.mixture_score = std::stod(f[9]);
    r.fetches = std::stoi(f[10]);
    r.fetch_bytes = std::stoll(f[11]);
    r.stale_neighbors = std::stoi(f[12]);
    r.replacements = std::stoi(f[13]);
    r.wall_seconds = std::stod(f[14]);
    r.cpu_seconds = std::stod(f[15]);
    rows.push_back(r);
  }
  return rows;
}

void EmitLogs(const std::filesystem::path& dir, const GridSpec& grid,
              const std::vector<CellResult>& results, RunReport& report) {
  std::error_code ec;
  std::filesystem::create_directories(dir / "cells", ec);
  if (ec) {
    throw std::runtime_error("cannot create " + (dir / "cells").string() +
                             ": " + ec.message());
  }

  report.csv_paths.clear();
  int max_iteration = 0;
  std::map<CellId, const CellResult*> by_cell;
  for (const CellResult& r : results) {
    by_cell[r.cell] = &r;
    const std::filesystem::path p =
        dir / "cells" /
        ("cell_" + std::to_string(r.cell.row) + "_" +
         std::to_string(r.cell.col) + ".csv");
    WriteCellCsv(p, r.history);
    report.csv_paths.push_back(p.string());
    if (!r.history.empty()) {
      max_iteration = std::max(max_iteration, r.history.back().iteration);
    }
  }

  Json iterations = Json::array();
  for (int t = 1; t <= max_iteration; ++t) {
    Json rows = Json::array();
    for (int row = 0; row < grid.rows; ++row) {
      Json cols = Json::array();
      for (int col = 0; col < grid.cols; ++col) {
        auto it = by_cell.find({row, col});
        Json score = nullptr;
        if (it != by_cell.end()) {
          const auto& h = it->second->history;
          if (t <= static_cast<int>(h.size()) && h[t - 1].iteration == t) {
            score = h[t - 1].frechet_proxy;
          }
        }
        cols.push_back(score);
      }
      rows.push_back(std::move(cols));
    }
    iterations.push_back({{"iteration", t}, {"scores", std::move(rows)}});
  }
  const std::filesystem::path grid_path = dir / "grid_scores.json";
  {
    std::ofstream out = OpenForWrite(grid_path);
    out << Json{{"rows", grid.rows},
                {"cols", grid.cols},
                {"iterations", std::move(iterations)}}
               .dump(1)
        << '\n';
    CheckWritten(out, grid_path);
  }
  report.grid_scores_path = grid_path.string();

  report.winner_samples_path.clear();
  if (report.winner()) {
    auto it = by_cell.find(*report.winner());
    if (it != by_cell.end()) {
      const std::filesystem::path p = dir / "winner_samples.txt";
      std::ofstream out = OpenForWrite(p);
      const Batch& s = it->second->samples;
      for (Eigen::Index i = 0; i < s.rows(); ++i) {
        for (Eigen::Index k = 0; k < s.cols(); ++k) {
          out << (k ? " " : "") << Num(s(i, k));
        }
        out << '\n';
      }
      CheckWritten(out, p);
      report.winner_samples_path = p.string();
    }
  }

  const std::filesystem::path report_path = dir / "report.json";
  std::ofstream out = OpenForWrite(report_path);
  out << ToJson(report).dump(2) << '\n';
  CheckWritten(out, report_path);
}

}  // namespace coevgan
