// bk2: invariants of the curves y^2 = x(x+1)(x+u^2) around L(E_u,2) --
// table rows, Selmer 2-torsion, tame-symbol checks, class-number analogue.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bk/bktable.hpp"
#include "bk/funcfield.hpp"
#include "bk/golden.hpp"

using json = nlohmann::json;
using namespace bk;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitHypothesis = 2;
constexpr int kExitGoldenDiff = 3;

json factors_json(const RatFactors& f) {
  json a = json::array();
  for (auto& [p, e] : f) a.push_back({p, e});
  return a;
}

RatFactors plain_factors(const Factorization& f) {
  RatFactors rf;
  for (auto& [p, e] : f.factors) rf.emplace_back(p, e);
  return rf;
}

std::string flag_str(RowFlag f) {
  switch (f) {
    case RowFlag::zero_star: return "0*";
    case RowFlag::one_plus: return "1+";
    default: return "";
  }
}

json row_json(const BkRow& r) {
  return json{{"u", r.u},
              {"u4_factors", factors_json(plain_factors(r.fact_u4))},
              {"um1_factors", factors_json(plain_factors(r.fact_um1))},
              {"up1_factors", factors_json(plain_factors(r.fact_up1))},
              {"natural_mark", r.natural_mark},
              {"conductor", r.conductor},
              {"minus_Nq", r.minus_Nq.get_str()},
              {"minus_Nq_factors", factors_json(r.minus_Nq_fact)},
              {"ord2_q", r.ord2_q},
              {"shat_minus_iota", r.shat_minus_iota},
              {"s_prime", r.s_prime},
              {"m_minus_1", r.m_minus_1},
              {"flag", flag_str(r.flag)},
              {"sign_of_fe", r.sign_of_fe},
              {"terms_used", r.terms_used}};
}

void print_markdown_header() {
  std::cout << "| u | u/4 | u-1 | u+1 | -N_u*q_u | shat-ord2(iota) | s' | m-1 |\n"
            << "|---|-----|-----|-----|----------|-----------------|----|-----|\n";
}

std::string m1_cell(const BkRow& r) {
  std::string s = std::to_string(r.m_minus_1);
  if (r.flag == RowFlag::zero_star) s += "*";
  if (r.flag == RowFlag::one_plus) s += "+";
  return s;
}

void print_row(const BkRow& r, const std::string& format, bool header) {
  GoldenRow g = render_golden(r);
  if (format == "json") {
    std::cout << row_json(r).dump(2) << "\n";
  } else if (format == "csv") {
    if (header)
      std::cout << "u,natural,u4,um1,up1,minus_Nq,shat_minus_iota,s_prime,m_minus_1,flag\n";
    std::cout << r.u << "," << (r.natural_mark ? "natural" : "") << ","
              << g.fact_u4 << "," << g.fact_um1 << "," << g.fact_up1 << ","
              << g.minus_Nq << "," << r.shat_minus_iota << "," << r.s_prime
              << "," << r.m_minus_1 << "," << flag_str(r.flag) << "\n";
  } else {
    if (header) print_markdown_header();
    std::cout << "| " << r.u << (r.natural_mark ? " natural" : "") << " | "
              << g.fact_u4 << " | " << g.fact_um1 << " | " << g.fact_up1
              << " | " << g.minus_Nq << " | " << r.shat_minus_iota << " | "
              << r.s_prime << " | " << m1_cell(r) << " |\n";
  }
}

std::string point_str(const RationalPoint& P) {
  if (P.at_infinity) return "O";
  return "(" + P.x.get_str() + "," + P.y.get_str() + ")";
}

int workers_from_env() {
  const char* w = std::getenv("BK2_WORKERS");
  if (!w) return 0;
  return std::atoi(w);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2-part data for L(E_u,2) on y^2 = x(x+1)(x+u^2)"};
  app.require_subcommand(1);

  int prec_digits = 25;
  std::string format = "markdown";
  app.add_option("--prec", prec_digits, "working precision in decimal digits")
      ->check(CLI::Range(15, 200));
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"markdown", "csv", "json"}));

  long u_row = 0, u_sel = 0, u_sym = 0, u_quad = 0, u_lv = 0;
  auto* cmd_row = app.add_subcommand("row", "one assembled table row");
  cmd_row->add_option("--u", u_row, "curve parameter")->required();

  uint64_t from = 4, to = 348;
  std::string golden_path;
  bool long_run = false;
  auto* cmd_table = app.add_subcommand("table", "rows for a range of u");
  cmd_table->add_option("--from", from, "lower end of the range")->required();
  cmd_table->add_option("--to", to, "upper end of the range")->required();
  cmd_table->add_option("--golden", golden_path, "golden table to diff against");
  cmd_table->add_flag("--long-run", long_run, "allow conductors above 10^9");

  auto* cmd_selmer = app.add_subcommand("selmer", "Selmer 2-torsion pairs (D,D')");
  cmd_selmer->add_option("--u", u_sel, "curve parameter")->required();

  auto* cmd_sym = app.add_subcommand("symbol-check", "tame symbols and pullbacks");
  cmd_sym->add_option("--u", u_sym, "curve parameter")->required();

  auto* cmd_quad = app.add_subcommand("quadratic", "class-number analogue for Q(sqrt(u^2-4))");
  cmd_quad->add_option("--u", u_quad, "field parameter")->required();

  auto* cmd_lv = app.add_subcommand("lvalue", "L(E_u,2) and q_u");
  cmd_lv->add_option("--u", u_lv, "curve parameter")->required();

  CLI11_PARSE(app, argc, argv);
  Precision prec{prec_digits};

  try {
    if (cmd_row->parsed()) {
      BkRow r = build_row((uint64_t)u_row, prec);
      print_row(r, format, true);
      return kExitOk;
    }

    if (cmd_table->parsed()) {
      ScanResult res = scan(from, to, prec, long_run, workers_from_env());
      if (format == "json") {
        json out;
        out["rows"] = json::array();
        for (auto& r : res.rows) out["rows"].push_back(row_json(r));
        out["skipped"] = json::array();
        for (auto& [u, why] : res.skipped) out["skipped"].push_back({{"u", u}, {"reason", why}});
        std::cout << out.dump(2) << "\n";
      } else {
        bool first = true;
        for (auto& r : res.rows) {
          print_row(r, format, first);
          first = false;
        }
        for (auto& [u, why] : res.skipped)
          std::cerr << "skipped u=" << u << ": " << why << "\n";
      }
      if (!golden_path.empty()) {
        auto diffs = golden_compare(res.rows, parse_golden_file(golden_path));
        for (auto& d : diffs) std::cerr << "diff: " << d << "\n";
        if (!diffs.empty()) return kExitGoldenDiff;
        std::cerr << "golden: match (" << res.rows.size() << " rows)\n";
      }
      return kExitOk;
    }

    if (cmd_selmer->parsed()) {
      auto sets = selmer_sets((uint64_t)u_sel);
      auto pairs = selmer_pairs((uint64_t)u_sel);
      if (format == "json") {
        json out{{"u", u_sel}, {"S", sets.S}, {"S_prime", sets.S_prime},
                 {"s_prime_u", s_prime_u((uint64_t)u_sel)}};
        out["pairs"] = json::array();
        for (auto& p : pairs) out["pairs"].push_back({p.D, p.D_prime});
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << "u = " << u_sel << "\nS = {";
        for (size_t i = 0; i < sets.S.size(); ++i)
          std::cout << (i ? ", " : "") << sets.S[i];
        std::cout << "}\nS' = {";
        for (size_t i = 0; i < sets.S_prime.size(); ++i)
          std::cout << (i ? ", " : "") << sets.S_prime[i];
        std::cout << "}\npairs (D, D'):\n";
        for (auto& p : pairs)
          std::cout << "  (" << p.D << ", " << p.D_prime << ")\n";
        std::cout << "s'_u = " << s_prime_u((uint64_t)u_sel) << "\n";
      }
      return kExitOk;
    }

    if (cmd_sym->parsed()) {
      CurveFamily E{mpq_class(u_sym)};
      AlphaReport rep = verify_alpha(E);
      SymbolList alpha = alpha_symbol(E);
      RationalPoint P(0, 0), Q(-E.u * E.u, 0);
      auto pb_P = pullback_at(P, alpha);
      auto pb_Q = pullback_at(Q, alpha);
      bool iso = isogeny_identity(E);
      bool rel = pullback_symbol_relation(E);
      auto pb_str = [](const K2QElement& e) {
        if (e.empty()) return std::string("0");
        std::string s;
        for (auto& t : e) {
          if (!s.empty()) s += " + ";
          s += "{" + t.a.get_str() + "," + t.b.get_str() + "}";
          if (t.multiplicity != 1) s += "x" + std::to_string(t.multiplicity);
        }
        return s;
      };
      if (format == "json") {
        json out{{"u", u_sym},
                 {"all_tame_symbols_trivial", rep.all_trivial},
                 {"product_formula", rep.product_formula_ok},
                 {"isogeny_identity", iso},
                 {"pullback_symbol_relation", rel},
                 {"pullback_at_00", pb_str(pb_P)},
                 {"pullback_at_minus_u2_0", pb_str(pb_Q)}};
        out["tame_symbols"] = json::array();
        for (auto& e : rep.entries)
          out["tame_symbols"].push_back(
              {{"point", point_str(e.point)}, {"value", e.tame_value.get_str()}});
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << "u = " << u_sym << "\ntame symbols of {v,w} + {-1,h}:\n";
        for (auto& e : rep.entries)
          std::cout << "  T at " << point_str(e.point) << " = "
                    << e.tame_value.get_str() << "\n";
        std::cout << "all trivial: " << (rep.all_trivial ? "yes" : "NO")
                  << "\nproduct formula: " << (rep.product_formula_ok ? "ok" : "FAIL")
                  << "\npullback at (0,0): " << pb_str(pb_P)
                  << "\npullback at (-u^2,0): " << pb_str(pb_Q)
                  << "\nisogeny identity X+Y+1/X+1/Y = 4u: " << (iso ? "ok" : "FAIL")
                  << "\nsymbol relation {-vw,v/w} = 2{v,1/w}+2{-v,v}: "
                  << (rel ? "ok" : "FAIL") << "\n";
      }
      if (!rep.all_trivial || !rep.product_formula_ok || !iso || !rel)
        return kExitInternal;
      return kExitOk;
    }

    if (cmd_quad->parsed()) {
      uint64_t d = (uint64_t)u_quad * (uint64_t)u_quad - 4;
      long h = class_number(u_quad, prec);
      Real L1 = dirichlet_L1(d, prec);
      Real F1 = quadratic_F1(u_quad, prec);
      if (format == "json") {
        json out{{"u", u_quad}, {"d", d}, {"class_number", h},
                 {"L_chi_d_1", L1.str(prec.decimal_digits)},
                 {"F1", F1.str(prec.decimal_digits)}};
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << "u = " << u_quad << ", d = u^2-4 = " << d << "\n"
                  << "L(chi_d, 1) = " << L1.str(prec.decimal_digits) << "\n"
                  << "F1(u)       = " << F1.str(prec.decimal_digits) << "\n"
                  << "class number h = " << h << "\n";
      }
      return kExitOk;
    }

    if (cmd_lv->parsed()) {
      CurveFamily E{mpq_class(u_lv)};
      QuResult qu = compute_qu(E, prec);
      Real F = regulator_F(E.u, prec);
      if (format == "json") {
        json out;
        out["u"] = u_lv;
        out["conductor"] = conductor(E);
        out["L2"] = qu.lvalue.value.str(prec.decimal_digits);
        out["F"] = F.str(prec.decimal_digits);
        out["q_u"] = qu.q_u.get_str();
        out["minus_Nq"] = qu.minus_Nq.get_str();
        out["sign_of_fe"] = qu.lvalue.sign_of_fe;
        out["terms_used"] = qu.lvalue.terms_used;
        out["split_consistency_error"] = qu.lvalue.split_consistency_error.str(3);
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << "u = " << u_lv << ", N = " << conductor(E) << "\n"
                  << "L(E_u,2) = " << qu.lvalue.value.str(prec.decimal_digits) << "\n"
                  << "F(u)     = " << F.str(prec.decimal_digits) << "\n"
                  << "q_u = L/((2 pi i)^2 F) = " << qu.q_u.get_str() << "\n"
                  << "-N_u q_u = " << qu.minus_Nq.get_str() << "\n"
                  << "sign of functional equation: " << qu.lvalue.sign_of_fe << "\n"
                  << "terms used: " << qu.lvalue.terms_used
                  << ", split consistency error: "
                  << qu.lvalue.split_consistency_error.str(3) << "\n";
      }
      return kExitOk;
    }
  } catch (const hypothesis_error& e) {
    std::cerr << "hypothesis violation: " << e.what() << "\n";
    return kExitHypothesis;
  } catch (const domain_error& e) {
    std::cerr << "hypothesis violation: " << e.what() << "\n";
    return kExitHypothesis;
  } catch (const golden_parse_error& e) {
    std::cerr << "golden parse error: " << e.what() << "\n";
    return kExitGoldenDiff;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
