#ifndef ANISOEST_EXPERIMENTS_HPP
#define ANISOEST_EXPERIMENTS_HPP

#include <string>
#include <vector>

#include "anisoest/estimator.hpp"

namespace anisoest {

struct RunOptions {
  SolveOptions solve;
  EstimatorOptions est;
  Diagonal diagonal = Diagonal::NE;
  bool with_strips = false;
};

struct CaseReport {
  std::string problem;
  double param = 0.0;  // a for sine, eps otherwise
  int N = 0, M = 0;
  SolveStats stats;
  double error = 0.0;
  OscNorms osc;
  EstimatorReport global;
  std::vector<EstimatorReport> strips;  // N+1 entries when requested
};

/// Full pipeline: tensor mesh with the problem's y-extent, solve, error and
/// oscillation norms, estimator report, optional per-strip reports.
CaseReport run_case(const TestProblem& pb, int N, int M, const RunOptions& opts = {});

/// Bounds-checked access; requires run_case(..., with_strips = true).
const EstimatorReport& strip_report(const CaseReport& rep, int i);

enum class TableScale { desk, full };

struct TableRow {
  std::string problem;
  double param = 0.0;
  int N = 0, M = 0;
  CaseReport rep;
};

struct TableReport {
  int id = 0;
  TableScale scale = TableScale::desk;
  std::vector<TableRow> rows;
};

/// The three benchmark tables:
///   1: sine, a in {1,3} x N in {20,40,80} x M/N in {2,8,32,128}
///   2: layer, eps in {1/4,1/8,1/16} x N in {320,640}, M = 2N
///   3: oblique, eps in {1/16,1/32,1/64} x N = M in {160,320,640}
/// Desk scale drops the N=80, M=128N row of table 1. Rows may run in
/// parallel; ANISOBENCH_THREADS caps the worker count.
TableReport reproduce_table(int id, TableScale scale, const RunOptions& opts = {});

}  // namespace anisoest

#endif
