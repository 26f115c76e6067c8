#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bk/bktable.hpp"

namespace bk {

class golden_parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One parsed line of a golden table file:
//   u [natural] | u/4 | u-1 | u+1 | -N_u*q_u | shat-ord2(iota) | s' | m-1[flag]
struct GoldenRow {
  uint64_t u = 0;
  bool natural_mark = false;
  std::string fact_u4, fact_um1, fact_up1;
  std::string minus_Nq;
  long shat_minus_iota = 0;
  int s_prime = 0;
  int m_minus_1 = 0;
  RowFlag flag = RowFlag::none;
  int line = 0;
};

std::vector<GoldenRow> parse_golden(std::istream& in);
std::vector<GoldenRow> parse_golden_file(const std::string& path);

GoldenRow render_golden(const BkRow& row);
std::string golden_line(const GoldenRow& row);

// Field-by-field diff; empty result means the tables agree. Golden rows
// with no computed counterpart (and vice versa) are reported too.
std::vector<std::string> golden_compare(const std::vector<BkRow>& rows,
                                        const std::vector<GoldenRow>& golden);

}  // namespace bk
