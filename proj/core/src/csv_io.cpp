#include "majdyn/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace majdyn::io {

namespace fs = std::filesystem;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

double parse_double(std::string_view s, const std::string& context) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw std::runtime_error(context + ": cannot parse number '" +
                             std::string(s) + "'");
  }
  return v;
}

struct DensityFile {
  std::vector<double> centers;
  std::vector<double> values;
};

DensityFile read_two_columns(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open '" + path.string() + "'");
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error(path.string() + ": empty file");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x_center,value") {
    throw std::runtime_error(path.string() +
                             ": expected header 'x_center,value', got '" +
                             line + "'");
  }
  DensityFile out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                               ": expected two comma-separated columns");
    }
    const std::string ctx = path.string() + ":" + std::to_string(lineno);
    out.centers.push_back(parse_double({line.data(), comma}, ctx));
    out.values.push_back(
        parse_double({line.data() + comma + 1, line.size() - comma - 1}, ctx));
  }
  if (out.centers.size() < 2) {
    throw std::runtime_error(path.string() + ": need at least 2 cells");
  }
  return out;
}

Grid validated_grid(const fs::path& path, const std::vector<double>& centers) {
  const int n = static_cast<int>(centers.size());
  const Grid grid(n);
  for (int i = 0; i < n; ++i) {
    const double expected = grid.center(i);
    if (std::abs(centers[i] - expected) > 1e-12 * std::max(1.0, expected)) {
      throw std::runtime_error(
          path.string() + ": non-uniform x_center at row " +
          std::to_string(i + 1) + " (got " + format_double(centers[i]) +
          ", expected " + format_double(expected) + ")");
    }
  }
  return grid;
}

void write_two_columns(const fs::path& path, const Grid& grid,
                       std::span<const double> values) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
  out << "x_center,value\n";
  for (int i = 0; i < grid.n_cells(); ++i) {
    out << format_double(grid.center(i)) << ',' << format_double(values[i])
        << '\n';
  }
  if (!out) {
    throw std::runtime_error("write failed for '" + path.string() + "'");
  }
}

// Minimal '*' glob on one path component.
bool glob_match(std::string_view pattern, std::string_view name) {
  if (pattern.empty()) return name.empty();
  if (pattern.front() == '*') {
    for (std::size_t k = 0; k <= name.size(); ++k) {
      if (glob_match(pattern.substr(1), name.substr(k))) return true;
    }
    return false;
  }
  if (name.empty() || pattern.front() != name.front()) return false;
  return glob_match(pattern.substr(1), name.substr(1));
}

double time_from_filename(const fs::path& path) {
  const std::string stem = path.stem().string();
  if (stem.rfind("t_", 0) != 0) {
    throw std::runtime_error("'" + path.string() +
                             "': snapshot files must be named t_<time>.csv");
  }
  return parse_double(std::string_view(stem).substr(2), path.string());
}

}  // namespace

void write_density(const fs::path& path, const Density& d) {
  write_two_columns(path, d.grid(), d.values());
}

Density read_density(const fs::path& path) {
  DensityFile f = read_two_columns(path);
  const Grid grid = validated_grid(path, f.centers);
  return Density(grid, std::move(f.values));
}

Observable read_observable(const fs::path& path, std::string id) {
  DensityFile f = read_two_columns(path);
  const Grid grid = validated_grid(path, f.centers);
  return Observable{std::move(id), grid, std::move(f.values)};
}

void save_trajectory(const Trajectory& traj, const fs::path& dir) {
  fs::create_directories(dir);
  for (const auto& snap : traj.snapshots()) {
    write_density(dir / ("t_" + format_double(snap.t) + ".csv"), snap.p);
  }
}

Trajectory load_trajectory(const std::string& dir_or_glob) {
  fs::path input(dir_or_glob);
  fs::path dir;
  std::string pattern;
  if (fs::is_directory(input)) {
    dir = input;
    pattern = "t_*.csv";
  } else if (dir_or_glob.find('*') != std::string::npos) {
    dir = input.parent_path().empty() ? fs::path(".") : input.parent_path();
    pattern = input.filename().string();
  } else if (fs::is_regular_file(input)) {
    dir = input.parent_path().empty() ? fs::path(".") : input.parent_path();
    pattern = input.filename().string();
  } else {
    throw std::runtime_error("load_trajectory: '" + dir_or_glob +
                             "' is not a directory, file or glob");
  }

  std::vector<std::pair<double, fs::path>> files;
  if (!fs::is_directory(dir)) {
    throw std::runtime_error("load_trajectory: no such directory '" +
                             dir.string() + "'");
  }
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (!glob_match(pattern, name)) continue;
    files.emplace_back(time_from_filename(entry.path()), entry.path());
  }
  if (files.empty()) {
    throw std::runtime_error("load_trajectory: no snapshot files match '" +
                             dir_or_glob + "'");
  }
  // Order by parsed time, never by filename.
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < files.size(); ++i) {
    if (files[i].first <= files[i - 1].first) {
      throw std::runtime_error(
          "load_trajectory: snapshot times are not strictly increasing (" +
          files[i - 1].second.string() + ", " + files[i].second.string() + ")");
    }
  }

  Trajectory traj(TrajectorySource::file);
  for (const auto& [t, path] : files) traj.append(t, read_density(path));
  return traj;
}

void write_lambda_csv(const fs::path& path,
                      const std::vector<LambdaRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << "t,phi_id,lambda,lambda_prime_rhs\n";
  for (const auto& r : rows) {
    out << format_double(r.t) << ',' << r.phi_id << ','
        << format_double(r.lambda) << ',';
    if (r.lambda_prime) out << format_double(*r.lambda_prime);
    out << '\n';
  }
}

void write_bound_csv(const fs::path& path, const std::vector<BoundRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << "t,phi_id,lhs,rhs,holds\n";
  for (const auto& r : rows) {
    out << format_double(r.t) << ',' << r.phi_id << ','
        << format_double(r.lhs) << ',' << format_double(r.rhs) << ','
        << (r.holds ? '1' : '0') << '\n';
  }
}

void write_report_csv(const fs::path& path, const ChainReport& report) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << "check,t1,t2,phi_id,value,pass\n";
  for (const auto& r : report.records) {
    out << r.check << ',';
    if (!std::isnan(r.t1)) out << format_double(r.t1);
    out << ',';
    if (!std::isnan(r.t2)) out << format_double(r.t2);
    out << ',' << r.phi_id << ',' << format_double(r.value) << ','
        << (r.pass ? '1' : '0') << '\n';
  }
}

void write_correlations_csv(const fs::path& path, const MixingReport& report) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << "n,pair_id,value,limit,abs_err\n";
  for (const auto& pair : report.pairs) {
    for (std::size_t n = 0; n < pair.corr.size(); ++n) {
      out << n << ',' << pair.pair_id << ',' << format_double(pair.corr[n])
          << ',' << format_double(pair.limit) << ','
          << format_double(std::abs(pair.corr[n] - pair.limit)) << '\n';
    }
  }
}

}  // namespace majdyn::io
