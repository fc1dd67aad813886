#include "mes/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "mes/goncharov.hpp"
#include "mes/ihara.hpp"
#include "mes/mes.hpp"
#include "mes/mzv.hpp"
#include "mes/polyspaces.hpp"
#include "mes/qseries.hpp"
#include "mes/ranks.hpp"
#include "mes/relations.hpp"

namespace mes {

namespace {

using json = nlohmann::ordered_json;

class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int decimal_digits(unsigned P) { return static_cast<int>(std::floor(P * 0.30102999566)); }

std::string dec(const Real& x, unsigned P) { return to_decimal(x, decimal_digits(P)); }

json helem_json(const HElem& h) {
  json arr = json::array();
  for (const auto& [w, c] : h) {
    const std::string label = in_h1(w) && !w.empty() ? index_string(word_index(w)) : w;
    arr.push_back({{"word", w}, {"index", label}, {"coeff", c.get_str()}});
  }
  return arr;
}

json rat_series_json(const RatSeries& s) {
  json c = json::array();
  for (const auto& x : s.coeffs()) c.push_back(x.get_str());
  return c;
}

json complex_series_json(const CSeries& s, unsigned P) {
  json c = json::array();
  for (const auto& x : s.coeffs()) c.push_back({dec(x.re, P), dec(x.im, P)});
  return c;
}

json poly_json(const HomPoly& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({e, c.get_str()});
  return {{"d", p.d()}, {"w", p.w()}, {"terms", terms}, {"text", to_string(p)}};
}

json matrix_json(const RatMatrix& m) {
  json rows = json::array();
  for (size_t i = 0; i < m.rows; ++i) {
    json r = json::array();
    for (size_t j = 0; j < m.cols; ++j) r.push_back(m(i, j).get_str());
    rows.push_back(r);
  }
  return rows;
}

json report_json(const RelationReport& r) {
  json c = json::array();
  if (r.exact)
    for (const auto& x : r.coefficients) c.push_back(x.get_str());
  else
    for (const auto& x : r.numeric_coefficients) c.push_back(dec(x, r.P));
  json j = {{"labels", r.labels}, {"coefficients", c},  {"residual", to_decimal(r.residual, 6)},
            {"method", r.method}, {"exact", r.exact},   {"N", r.N},
            {"P", r.P}};
  if (r.method == "pinned") {
    json solved = json::array();
    for (const auto& x : r.numeric_coefficients) solved.push_back(dec(x, r.P));
    j["solved_coefficients"] = solved;
  }
  return j;
}

json ncseries_json(const NCSeries<Rational>& s) {
  json arr = json::array();
  for (const auto& [w, c] : s.terms()) arr.push_back({w, c.get_str()});
  return arr;
}

SpaceKind parse_kind(const std::string& s) {
  if (s == "W") return SpaceKind::W;
  if (s == "FShPol" || s == "fsh") return SpaceKind::FShPol;
  if (s == "OddPeriod" || s == "odd") return SpaceKind::OddPeriod;
  throw std::invalid_argument("unknown space kind: " + s);
}

// "G:4;G:1,3;E:4;dE:2;S:2,2" -> family of normalized series.
SeriesFamily parse_family(MesEngine& e, const std::string& spec) {
  SeriesFamily F;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ';')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("family item needs kind:index, got " + item);
    const std::string kind = item.substr(0, colon);
    const Index k = parse_index(item.substr(colon + 1));
    if (kind == "G")
      F.add("G(" + index_string(k) + ")", e.G(k));
    else if (kind == "S")
      F.add("S(" + index_string(k) + ")", e.S(k));
    else if (kind == "E" && k.size() == 1)
      F.add("E(" + index_string(k) + ")", e.eisenstein(k[0]));
    else if (kind == "dE" && k.size() == 1)
      F.add("E'(" + index_string(k) + ")", e.eisenstein(k[0]).derivative());
    else if (kind == "dG")
      F.add("G'(" + index_string(k) + ")", e.G(k).derivative());
    else
      throw std::invalid_argument("unknown family kind: " + kind);
  }
  return F;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  CLI::App app{"Multiple Eisenstein series toolkit"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--n", cfg.N, "q-expansion truncation")->check(CLI::PositiveNumber);
  app.add_option("--prec", cfg.P, "precision in bits")->check(CLI::Range(64u, 1u << 20))->envname("MES_PRECISION");
  app.add_option("--tol-exp", cfg.tol_exp, "tolerance 2^-e");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--out", cfg.out, "write JSON to this file");
  app.add_flag("--pretty", cfg.pretty, "indented output");

  std::string a, b, word, index, poly, kind = "W", direction = "fsh-lsh", family, series, name;
  int depth = 1, weight = 0, max_weight = 0, kk = 0, j = 0, aa = 0, trunc = 4, r = 0, s = 0, split = 0;
  long bound = 1000000000;
  json result;
  std::function<void()> action;

  auto sub = [&](CLI::App* parent, const std::string& n, const std::string& d) {
    auto* c = parent->add_subcommand(n, d);
    c->fallthrough();
    return c;
  };
  auto engine_run = [&](const std::function<void(MesEngine&)>& f) {
    MzvContext ctx(cfg.P);
    MesEngine e(ctx, cfg.N);
    f(e);
  };
  auto tol = [&]() { return pow2(-cfg.tol_exp); };

  // words
  auto* words = sub(&app, "words", "word algebra");
  words->require_subcommand(1);
  for (const std::string op : {"shuffle", "stuffle"}) {
    auto* c = sub(words, op, op + " product of two indices");
    c->add_option("--a", a, "first index, e.g. 2,3")->required();
    c->add_option("--b", b, "second index")->required();
    c->callback([&, op]() {
      action = [&, op]() {
        const Index x = parse_index(a), y = parse_index(b);
        const HElem h = op == "shuffle" ? shuffle(index_word(x), index_word(y)) : stuffle(index_word(x), index_word(y));
        result = {{"op", op}, {"a", a}, {"b", b}, {"terms", helem_json(h)}};
      };
    });
  }
  {
    auto* c = sub(words, "reg0", "regularization to H^1 of a word in 0/1 letters");
    c->add_option("--word", word, "word such as 0110")->required();
    c->callback([&]() {
      action = [&]() {
        if (!is_letter_word(word)) throw std::invalid_argument("word must consist of 0 and 1");
        result = {{"op", "reg0"}, {"word", word}, {"terms", helem_json(reg0(word))}};
      };
    });
  }

  // coproduct
  {
    auto* c = sub(&app, "coproduct", "reduced Goncharov coproduct of e_k");
    c->add_option("--index", index, "index, e.g. 2,2,3")->required();
    c->callback([&]() {
      action = [&]() {
        json arr = json::array();
        for (const auto& [uv, coeff] : delta_g1(parse_index(index)))
          arr.push_back({{"left", uv.first.empty() ? "" : index_string(word_index(uv.first))},
                         {"right", uv.second.empty() ? "" : index_string(word_index(uv.second))},
                         {"coeff", coeff.get_str()}});
        result = {{"index", index}, {"terms", arr}};
      };
    });
  }

  // ihara
  auto* ihara = sub(&app, "ihara", "Ihara group law on random group-like series");
  ihara->require_subcommand(1);
  for (const std::string op : {"compose", "inverse", "check"}) {
    auto* c = sub(ihara, op, op);
    c->add_option("--trunc", trunc, "degree truncation")->check(CLI::Range(1, 8));
    c->callback([&, op]() {
      action = [&, op]() {
        std::mt19937_64 rng(cfg.seed);
        const auto A = random_grouplike(trunc, rng);
        const auto B = random_grouplike(trunc, rng);
        if (op == "compose") {
          result = {{"A", ncseries_json(A)}, {"B", ncseries_json(B)}, {"AoB", ncseries_json(ihara_compose(A, B))}};
        } else if (op == "inverse") {
          const auto X = ihara_inverse(A);
          const auto one = NCSeries<Rational>::one(trunc, Rational(0));
          const bool ok = ihara_compose(A, X).terms() == one.terms();
          result = {{"A", ncseries_json(A)}, {"inverse", ncseries_json(X)}, {"verified", ok}};
          if (!ok) throw VerificationFailure("ihara inverse failed");
        } else {
          size_t bad = 0, total = 0;
          for (int n = 0; n <= trunc; ++n)
            for (const auto& w : n == 0 ? std::vector<Word>{""} : words_of_length(n)) {
              const auto [l, rr] = goncharov_vs_ihara(A, B, w);
              ++total;
              if (l != rr) ++bad;
            }
          result = {{"words", total}, {"mismatches", bad}, {"verified", bad == 0}};
          if (bad) throw VerificationFailure("duality check failed");
        }
      };
    });
  }

  // qexp
  auto* qexp = sub(&app, "qexp", "q-expansions");
  qexp->require_subcommand(1);
  for (const std::string op : {"g", "gsh", "mes", "smes"}) {
    auto* c = sub(qexp, op, op);
    c->add_option("--index", index, "index")->required();
    c->callback([&, op]() {
      action = [&, op]() {
        const Index k = parse_index(index);
        json head = {{"kind", op}, {"index", index_string(k)}, {"weight", mes::weight(k)}, {"N", cfg.N}};
        if (op == "g" || op == "gsh") {
          head["normalized"] = true;
          head["coefficients"] = rat_series_json(op == "g" ? gtilde(k, cfg.N) : gtilde_shuffle(k, cfg.N));
          result = head;
          return;
        }
        engine_run([&](MesEngine& e) {
          head["normalized"] = true;
          head["P"] = cfg.P;
          head["coefficients"] = complex_series_json(op == "mes" ? e.G(k) : e.S(k), cfg.P);
        });
        result = head;
      };
    });
  }

  // mzv
  auto* mzvc = sub(&app, "mzv", "multiple zeta values");
  mzvc->require_subcommand(1);
  for (const std::string op : {"eval", "sym"}) {
    auto* c = sub(mzvc, op, op);
    c->add_option("--index", index, "index")->required();
    c->callback([&, op]() {
      action = [&, op]() {
        MzvContext ctx(cfg.P);
        const Index k = parse_index(index);
        const Real v = op == "eval" ? mzv(k, ctx) : mzv_sym(k, ctx);
        result = {{"kind", op}, {"index", index_string(k)}, {"P", cfg.P}, {"value", dec(v, cfg.P)}};
      };
    });
  }

  // lsh
  auto* lsh = sub(&app, "lsh", "linear shuffle spaces");
  lsh->require_subcommand(1);
  {
    auto* c = sub(lsh, "basis", "echelon basis of LSh^(d)_w");
    c->add_option("--depth", depth, "d")->check(CLI::PositiveNumber);
    c->add_option("--weight", weight, "polynomial degree w")->required()->check(CLI::NonNegativeNumber);
    c->callback([&]() {
      action = [&]() {
        json arr = json::array();
        for (const auto& p : lsh_basis(depth, weight)) arr.push_back(poly_json(p));
        result = {{"depth", depth}, {"w", weight}, {"basis", arr}};
      };
    });
  }
  {
    auto* c = sub(lsh, "dims", "dim LSh^(d)_{k-d} for k = d..max-weight");
    c->add_option("--depth", depth, "d")->check(CLI::PositiveNumber);
    c->add_option("--max-weight", max_weight, "largest k")->required();
    c->callback([&]() {
      action = [&]() {
        json arr = json::array();
        for (int k = depth; k <= max_weight; ++k) arr.push_back({{"k", k}, {"dim", lsh_dim(depth, k - depth)}});
        result = {{"depth", depth}, {"dims", arr}};
      };
    });
  }

  // spaces
  auto* spaces = sub(&app, "spaces", "two-variable polynomial spaces");
  spaces->require_subcommand(1);
  {
    auto* c = sub(spaces, "basis", "basis of W, FShPol or OddPeriod");
    c->add_option("--kind", kind, "W | FShPol | OddPeriod");
    c->add_option("--weight", weight, "degree w")->required()->check(CLI::NonNegativeNumber);
    c->callback([&]() {
      action = [&]() {
        json arr = json::array();
        for (const auto& p : special_space_basis(parse_kind(kind), weight)) arr.push_back(poly_json(p));
        result = {{"kind", kind}, {"w", weight}, {"basis", arr}};
      };
    });
  }
  {
    auto* c = sub(spaces, "iso", "isomorphism between FSh^pol and LSh^(2) (odd w)");
    c->add_option("--poly", poly, "polynomial in X, Y")->required();
    c->add_option("--direction", direction, "fsh-lsh | lsh-fsh");
    c->callback([&]() {
      action = [&]() {
        IsoDirection dir;
        if (direction == "fsh-lsh")
          dir = IsoDirection::FshToLsh;
        else if (direction == "lsh-fsh")
          dir = IsoDirection::LshToFsh;
        else
          throw std::invalid_argument("direction must be fsh-lsh or lsh-fsh");
        const HomPoly p = parse_xy(poly);
        result = {{"direction", direction}, {"input", poly_json(p)}, {"image", poly_json(fsh_lsh_iso(p, dir))}};
      };
    });
  }

  // ranks
  auto* ranks = sub(&app, "ranks", "appendix matrices and binomial identities");
  ranks->require_subcommand(1);
  {
    auto* c = sub(ranks, "appendix", "row reduction of S_k");
    c->add_option("--k", kk, "odd weight >= 5")->required();
    c->callback([&]() {
      action = [&]() {
        const auto red = appendix_reduction(kk);
        result = {{"k", kk},
                  {"C", matrix_json(matrix_C(kk))},
                  {"S", matrix_json(matrix_S(kk))},
                  {"rank_S", rank(matrix_S(kk))},
                  {"reduced", matrix_json(red.reduced)},
                  {"T", matrix_json(red.T)},
                  {"correction", red.correction.get_str()},
                  {"ok", red.ok}};
        if (!red.ok) throw VerificationFailure("appendix reduction failed");
      };
    });
  }
  {
    auto* c = sub(ranks, "binom", "both sides of the binomial identity");
    c->add_option("--j", j, "j")->required()->check(CLI::NonNegativeNumber);
    c->add_option("--a", aa, "a")->required()->check(CLI::NonNegativeNumber);
    c->callback([&]() {
      action = [&]() {
        const auto [l, rr] = binom_identity(j, aa);
        result = {{"j", j}, {"a", aa}, {"lhs", l.get_str()}, {"rhs", rr.get_str()}, {"equal", l == rr}};
        if (l != rr) throw VerificationFailure("binomial identity failed");
      };
    });
  }

  // relations
  auto* rel = sub(&app, "relations", "ranks and relations among q-series");
  rel->require_subcommand(1);
  {
    auto* c = sub(rel, "rank", "numeric rank of a family");
    c->add_option("--family", family, "smes | adm | depth2 | triple")->required();
    c->add_option("--weight", weight, "weight")->required()->check(CLI::PositiveNumber);
    c->callback([&]() {
      action = [&]() {
        engine_run([&](MesEngine& e) {
          SeriesFamily F;
          if (family == "smes")
            F = smes_family(e, weight);
          else if (family == "adm")
            F = admissible_mes_family(e, weight);
          else if (family == "depth2")
            F = depth2_smes_family(e, weight);
          else if (family == "triple")
            F = triple_smes_family(e, weight);
          else
            throw std::invalid_argument("unknown family " + family);
          result = {{"family", family}, {"weight", weight}, {"size", F.size()}, {"rank", numeric_rank(F, cfg.P)}};
        });
      };
    });
  }
  {
    auto* c = sub(rel, "upper-bound", "symbolic upper bound from linear shuffle and reversal");
    c->add_option("--weight", weight, "weight")->required()->check(CLI::PositiveNumber);
    c->callback([&]() {
      action = [&]() { result = {{"weight", weight}, {"upper_bound", symbolic_upper_bound(weight)}}; };
    });
  }
  {
    auto* c = sub(rel, "find", "integer relation among series, e.g. \"G:4;G:1,3\"");
    c->add_option("--series", series, "items kind:index separated by ';' (kinds G, S, E, dE, dG)")->required();
    c->add_option("--bound", bound, "coefficient height bound");
    c->callback([&]() {
      action = [&]() {
        engine_run([&](MesEngine& e) {
          const auto F = parse_family(e, series);
          try {
            result = report_json(integer_relation(F, cfg.P, Integer(bound)));
          } catch (const NoRelationError& ex) {
            result = {{"labels", F.labels}, {"error", ex.what()}};
            throw VerificationFailure(ex.what());
          }
        });
      };
    });
  }
  {
    auto* c = sub(rel, "cusp", "cusp forms in symmetric triple Eisenstein series");
    c->add_option("--weight", weight, "even weight >= 10")->required();
    c->callback([&]() {
      action = [&]() {
        engine_run([&](MesEngine& e) {
          json reps = json::array();
          for (const auto& rr : cusp_expression(e, weight)) reps.push_back(report_json(rr));
          result = {{"weight", weight}, {"reports", reps}};
          if (weight == 12) {
            const auto p = pinned_delta_check(e);
            result["pinned"] = report_json(p);
            if (!(p.residual < tol())) throw VerificationFailure("pinned expression residual too large");
          }
        });
      };
    });
  }
  {
    auto* c = sub(rel, "theorem12", "depth-two dimension and basis check");
    c->add_option("--weight", weight, "weight >= 3")->required();
    c->callback([&]() {
      action = [&]() {
        engine_run([&](MesEngine& e) {
          const auto t = theorem12_check(e, weight, cfg.P);
          result = {{"weight", weight},          {"expected", t.expected},
                    {"numeric", t.numeric},      {"basis_rank", t.basis_rank},
                    {"max_residual", to_decimal(t.max_residual, 6)}, {"ok", t.ok}};
          if (!t.ok) throw VerificationFailure("theorem check failed");
        });
      };
    });
  }

  // verify
  {
    auto* c = sub(&app, "verify", "named identity checks");
    c->add_option("name", name,
                  "g4-double-shuffle | g5-double-shuffle | kaneko-sum | kaneko-even-sum | depth2 | smes22 | "
                  "reversal | linear-shuffle | imaginary-part")
        ->required();
    c->add_option("--weight", weight, "weight for the sum formulas and imaginary parts");
    c->add_option("--r", r, "r for depth2; l for imaginary-part");
    c->add_option("--s", s, "s for depth2");
    c->add_option("--index", index, "index for reversal and linear-shuffle");
    c->add_option("--split", split, "split position for linear-shuffle");
    c->callback([&]() {
      action = [&]() {
        engine_run([&](MesEngine& e) {
          Real dev;
          if (name == "g4-double-shuffle")
            dev = check_g4_double_shuffle(e);
          else if (name == "g5-double-shuffle")
            dev = check_g5_double_shuffle(e);
          else if (name == "kaneko-sum")
            dev = check_kaneko_sum(e, weight);
          else if (name == "kaneko-even-sum")
            dev = check_kaneko_even_sum(e, weight);
          else if (name == "depth2")
            dev = check_depth2_closed_form(e, r, s);
          else if (name == "smes22")
            dev = check_smes_22(e);
          else if (name == "reversal")
            dev = check_reversal(e, parse_index(index));
          else if (name == "linear-shuffle")
            dev = check_linear_shuffle(e, parse_index(index), static_cast<size_t>(split));
          else if (name == "imaginary-part")
            dev = check_imaginary_part(e, weight, r);
          else
            throw std::invalid_argument("unknown identity " + name);
          const bool ok = dev < tol();
          result = {{"identity", name}, {"deviation", to_decimal(dev, 6)}, {"tol_exp", cfg.tol_exp}, {"ok", ok}};
          if (!ok) throw VerificationFailure("identity deviation above tolerance");
        });
      };
    });
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return 2;
  }

  int code = 0;
  try {
    if (!action) throw std::invalid_argument("no action selected");
    action();
  } catch (const VerificationFailure& e) {
    err << "verification failed: " << e.what() << "\n";
    code = 1;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const std::out_of_range& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  const std::string text = result.dump(cfg.pretty ? 2 : -1) + "\n";
  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out);
    if (!f) {
      err << "cannot open " << cfg.out << "\n";
      return 2;
    }
    f << text;
  } else {
    out << text;
  }
  return code;
}

}  // namespace mes
