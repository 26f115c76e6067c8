#include "bk/golden.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace bk {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string flag_suffix(RowFlag f) {
  switch (f) {
    case RowFlag::zero_star: return "*";
    case RowFlag::one_plus: return "+";
    default: return "";
  }
}

}  // namespace

std::vector<GoldenRow> parse_golden(std::istream& in) {
  std::vector<GoldenRow> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(t);
    std::string cell;
    while (std::getline(ss, cell, '|')) cells.push_back(trim(cell));
    if (cells.size() != 8)
      throw golden_parse_error("golden line " + std::to_string(lineno) +
                               ": expected 8 columns, got " +
                               std::to_string(cells.size()));
    GoldenRow r;
    r.line = lineno;
    try {
      std::stringstream uc(cells[0]);
      std::string utok, mark;
      uc >> utok >> mark;
      r.u = std::stoull(utok);
      if (mark == "natural")
        r.natural_mark = true;
      else if (!mark.empty())
        throw golden_parse_error("bad u-column marker '" + mark + "'");
      r.fact_u4 = cells[1];
      r.fact_um1 = cells[2];
      r.fact_up1 = cells[3];
      r.minus_Nq = cells[4];
      r.shat_minus_iota = std::stol(cells[5]);
      r.s_prime = std::stoi(cells[6]);
      std::string m1 = cells[7];
      if (!m1.empty() && m1.back() == '*') {
        r.flag = RowFlag::zero_star;
        m1.pop_back();
      } else if (!m1.empty() && m1.back() == '+') {
        r.flag = RowFlag::one_plus;
        m1.pop_back();
      }
      r.m_minus_1 = std::stoi(m1);
    } catch (const golden_parse_error&) {
      throw;
    } catch (const std::exception& e) {
      throw golden_parse_error("golden line " + std::to_string(lineno) + ": " +
                               e.what());
    }
    rows.push_back(r);
  }
  return rows;
}

std::vector<GoldenRow> parse_golden_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw golden_parse_error("cannot open golden file " + path);
  return parse_golden(f);
}

GoldenRow render_golden(const BkRow& row) {
  GoldenRow g;
  g.u = row.u;
  g.natural_mark = row.natural_mark;
  auto fmt = [](const Factorization& f) {
    RatFactors rf;
    for (auto& [p, e] : f.factors) rf.emplace_back(p, e);
    return format_factors(rf);
  };
  g.fact_u4 = fmt(row.fact_u4);
  g.fact_um1 = fmt(row.fact_um1);
  g.fact_up1 = fmt(row.fact_up1);
  g.minus_Nq = format_factors(row.minus_Nq_fact);
  g.shat_minus_iota = row.shat_minus_iota;
  g.s_prime = row.s_prime;
  g.m_minus_1 = row.m_minus_1;
  g.flag = row.flag;
  return g;
}

std::string golden_line(const GoldenRow& g) {
  std::string s = std::to_string(g.u);
  if (g.natural_mark) s += " natural";
  s += " | " + g.fact_u4 + " | " + g.fact_um1 + " | " + g.fact_up1 + " | " +
       g.minus_Nq + " | " + std::to_string(g.shat_minus_iota) + " | " +
       std::to_string(g.s_prime) + " | " + std::to_string(g.m_minus_1) +
       flag_suffix(g.flag);
  return s;
}

std::vector<std::string> golden_compare(const std::vector<BkRow>& rows,
                                        const std::vector<GoldenRow>& golden) {
  std::vector<std::string> diffs;
  std::map<uint64_t, const GoldenRow*> gmap;
  for (auto& g : golden) gmap[g.u] = &g;
  std::map<uint64_t, const BkRow*> rmap;
  for (auto& r : rows) rmap[r.u] = &r;

  for (auto& r : rows) {
    auto it = gmap.find(r.u);
    if (it == gmap.end()) {
      diffs.push_back("u=" + std::to_string(r.u) + ": computed but absent from golden");
      continue;
    }
    const GoldenRow& g = *it->second;
    GoldenRow c = render_golden(r);
    auto field = [&](const std::string& name, const std::string& got,
                     const std::string& want) {
      if (got != want)
        diffs.push_back("u=" + std::to_string(r.u) + " line " +
                        std::to_string(g.line) + " " + name + ": computed '" +
                        got + "' vs golden '" + want + "'");
    };
    field("natural", c.natural_mark ? "natural" : "-", g.natural_mark ? "natural" : "-");
    field("u/4", c.fact_u4, g.fact_u4);
    field("u-1", c.fact_um1, g.fact_um1);
    field("u+1", c.fact_up1, g.fact_up1);
    field("-Nq", c.minus_Nq, g.minus_Nq);
    field("shat-ord2iota", std::to_string(c.shat_minus_iota),
          std::to_string(g.shat_minus_iota));
    field("s'", std::to_string(c.s_prime), std::to_string(g.s_prime));
    field("m-1", std::to_string(c.m_minus_1) + flag_suffix(c.flag),
          std::to_string(g.m_minus_1) + flag_suffix(g.flag));
  }
  for (auto& g : golden)
    if (!rmap.count(g.u))
      diffs.push_back("u=" + std::to_string(g.u) + " line " +
                      std::to_string(g.line) + ": in golden but not computed");
  return diffs;
}

}  // namespace bk
