#include <cstdio>
#include <ostream>

#include "fmb/sdp/problem.hpp"

namespace fmb::sdp {

namespace {

void put(std::ostream& os, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  os << buf;
}

}  // namespace

void dump_sdp(const SdpProblem& prob, std::ostream& os) {
  os << "sdp-dump 1\n";
  os << "vars " << prob.num_vars << "\n";
  os << "cost";
  for (int j = 0; j < prob.num_vars; ++j) {
    if (prob.cost[j] != 0.0) {
      os << " " << j << ":";
      put(os, prob.cost[j]);
    }
  }
  os << "\n";
  os << "blocks " << prob.blocks.size() << "\n";
  for (const Block& b : prob.blocks) {
    os << "block " << b.dim << " " << b.terms.size() << " " << b.constant.size()
       << "\n";
    for (const BlockEntry& e : b.constant) {
      os << "const " << e.row << " " << e.col << " ";
      put(os, e.value);
      os << "\n";
    }
    for (const auto& [var, entries] : b.terms) {
      for (const BlockEntry& e : entries) {
        os << var << " " << e.row << " " << e.col << " ";
        put(os, e.value);
        os << "\n";
      }
    }
  }
  os << "equalities " << prob.equalities.size() << "\n";
  for (const EqRow& row : prob.equalities) {
    os << "eq ";
    put(os, row.rhs);
    for (const auto& [j, c] : row.coeffs) {
      os << " " << j << ":";
      put(os, c);
    }
    os << "\n";
  }
}

}  // namespace fmb::sdp
