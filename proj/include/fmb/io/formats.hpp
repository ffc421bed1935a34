#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fmb/epipolar/types.hpp"
#include "fmb/multiview/multiview.hpp"
#include "fmb/sim/sweep.hpp"

namespace fmb::io {

// Match file: one "x1 y1 x2 y2" per line, '#' comments and blank lines
// skipped. Throws ParseError with the line number on malformed lines and
// TooFewMatches when fewer than 8 matches remain.
std::vector<epipolar::PointMatch> parse_matches(std::istream& in);
std::vector<epipolar::PointMatch> parse_matches_text(const std::string& text);
std::vector<epipolar::PointMatch> load_matches(const std::string& path);
void write_matches(std::ostream& os, const std::vector<epipolar::PointMatch>& m);

// F file: 3 lines of 3 whitespace-separated floats, 17 significant digits.
void write_fmatrix(std::ostream& os, const la::Mat3& f);
la::Mat3 read_fmatrix(std::istream& in);
la::Mat3 load_fmatrix(const std::string& path);

// Evaluation report CSV: header then one row per method,
// method,e_init,e_ba,iterations,time_s.
void write_report_csv(std::ostream& os,
                      const std::vector<multiview::EvaluationReport>& reports);

// Sweep CSV: grid_value,method,mean_e_init,mean_e_ba,mean_iters,failures,trials.
void write_sweep_csv(std::ostream& os, const sim::SweepTable& table);

// Human-readable evaluation table mirroring the benchmark column layout:
// e_Init 8pt | e_Init Gp | e_BA 8pt | e_BA Gp | Iter 8pt | Iter Gp | ...
std::string format_report_table(
    const std::vector<multiview::EvaluationReport>& reports);

std::string format_sig6(double v);
std::string format_full(double v);  // 17 significant digits

}  // namespace fmb::io
