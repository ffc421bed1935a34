#include "fmb/io/formats.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fmb/error.hpp"

namespace fmb::io {

std::string format_sig6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string format_full(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<epipolar::PointMatch> parse_matches(std::istream& in) {
  std::vector<epipolar::PointMatch> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream ls(line);
    double x1, y1, x2, y2;
    if (!(ls >> x1 >> y1 >> x2 >> y2)) {
      fail(ErrorCode::ParseError,
           "line " + std::to_string(lineno) + ": expected 4 numbers");
    }
    std::string rest;
    if (ls >> rest) {
      fail(ErrorCode::ParseError,
           "line " + std::to_string(lineno) + ": trailing tokens");
    }
    if (!std::isfinite(x1) || !std::isfinite(y1) || !std::isfinite(x2) ||
        !std::isfinite(y2)) {
      fail(ErrorCode::ParseError,
           "line " + std::to_string(lineno) + ": non-finite coordinate");
    }
    epipolar::PointMatch m;
    m.q = {x1, y1, 1.0};
    m.qp = {x2, y2, 1.0};
    out.push_back(m);
  }
  if (out.size() < 8) {
    fail(ErrorCode::TooFewMatches, "need at least 8 matches, got " +
                                       std::to_string(out.size()));
  }
  return out;
}

std::vector<epipolar::PointMatch> parse_matches_text(const std::string& text) {
  std::istringstream in(text);
  return parse_matches(in);
}

std::vector<epipolar::PointMatch> load_matches(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open matches file: " + path);
  return parse_matches(in);
}

void write_matches(std::ostream& os, const std::vector<epipolar::PointMatch>& m) {
  for (const epipolar::PointMatch& pm : m) {
    os << format_full(pm.q[0]) << " " << format_full(pm.q[1]) << " "
       << format_full(pm.qp[0]) << " " << format_full(pm.qp[1]) << "\n";
  }
}

void write_fmatrix(std::ostream& os, const la::Mat3& f) {
  for (int i = 0; i < 3; ++i) {
    os << format_full(f(i, 0)) << " " << format_full(f(i, 1)) << " "
       << format_full(f(i, 2)) << "\n";
  }
}

la::Mat3 read_fmatrix(std::istream& in) {
  la::Mat3 f;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (!(in >> f(i, j))) {
        fail(ErrorCode::ParseError, "F file: expected 9 numbers");
      }
    }
  }
  return f;
}

la::Mat3 load_fmatrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open F file: " + path);
  return read_fmatrix(in);
}

void write_report_csv(std::ostream& os,
                      const std::vector<multiview::EvaluationReport>& reports) {
  os << "method,e_init,e_ba,iterations,time_s\n";
  for (const auto& r : reports) {
    os << multiview::to_string(r.method) << "," << format_sig6(r.e_init) << ","
       << format_sig6(r.e_ba) << "," << r.iterations << ","
       << format_sig6(r.time_s) << "\n";
  }
}

void write_sweep_csv(std::ostream& os, const sim::SweepTable& table) {
  os << "grid_value,method,mean_e_init,mean_e_ba,mean_iters,failures,trials\n";
  for (const sim::SweepCell& c : table) {
    os << format_sig6(c.grid_value) << ",eightpoint,"
       << format_sig6(c.eightpoint.mean_e_init) << ","
       << format_sig6(c.eightpoint.mean_e_ba) << ","
       << format_sig6(c.eightpoint.mean_iters) << "," << c.eightpoint.failures
       << "," << c.trials << "\n";
    os << format_sig6(c.grid_value) << ",global,"
       << format_sig6(c.global.mean_e_init) << ","
       << format_sig6(c.global.mean_e_ba) << ","
       << format_sig6(c.global.mean_iters) << "," << c.global.failures << ","
       << c.trials << "\n";
  }
}

std::string format_report_table(
    const std::vector<multiview::EvaluationReport>& reports) {
  const multiview::EvaluationReport* r8 = nullptr;
  const multiview::EvaluationReport* rg = nullptr;
  for (const auto& r : reports) {
    if (r.method == multiview::Method::EightPoint) r8 = &r;
    if (r.method == multiview::Method::Global) rg = &r;
  }
  auto cell = [](const multiview::EvaluationReport* r, int what) {
    if (r == nullptr) return std::string("-");
    switch (what) {
      case 0: return format_sig6(r->e_init);
      case 1: return format_sig6(r->e_ba);
      case 2: return std::to_string(r->iterations);
      default: return format_sig6(r->time_s);
    }
  };
  std::ostringstream os;
  os << "e_Init 8pt | e_Init Gp | e_BA 8pt | e_BA Gp | Iter 8pt | Iter Gp | "
        "Time 8pt (s) | Time Gp (s)\n";
  os << cell(r8, 0) << " | " << cell(rg, 0) << " | " << cell(r8, 1) << " | "
     << cell(rg, 1) << " | " << cell(r8, 2) << " | " << cell(rg, 2) << " | "
     << cell(r8, 3) << " | " << cell(rg, 3) << "\n";
  return os.str();
}

}  // namespace fmb::io
